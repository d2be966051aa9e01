//! Command-line front end. Evaluations print JSON lines or CSV to stdout,
//! diagnostics go to stderr, and the process exit code is one of
//! [`EXIT_OK`], [`EXIT_VERIFY_FAILED`], [`EXIT_USAGE`] or [`EXIT_NUMERIC`].

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::Error;
use crate::numbers::{
    bernoulli_number, euler_number, euler_polynomial, gamma_residue, laguerre_diagonal, monomial_sum, parse_rational,
    BernoulliVariant,
};
use crate::oracle::{
    quad_alpha_zero_limit, quad_expectation_kappa, quad_expectation_s, quad_transform, quad_transform_limit,
    quad_wigner, QuadratureSpec, SOperator, DEFAULT_LADDER,
};
use crate::partitions::{enumerate_partitions, faa_weight};
use crate::physics::{expectation_mu, expectation_pi, expectation_pi2, uncertainty, wigner, QuantumIndices};
use crate::transform::{eval_alpha_zero, eval_transform, eval_zero_zero, TransformParams};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable holding the worker-thread count for grid sweeps.
pub const THREADS_ENV: &str = "GAMMA_FOURIER_THREADS";

/// Largest number of points accepted by `--lambda-grid` and `--l-max`.
const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "gamma-fourier", version, about = "Fourier transforms of gamma-function products and their applications")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F_m(λ) = ∫ s^m Γ(α - is) Γ(β + is) e^{-iλs} ds.
    Transform(TransformArgs),
    /// Exact rational number sequences.
    #[command(subcommand)]
    Numbers(NumbersCommand),
    /// Expectation values, uncertainty products and Wigner functions.
    #[command(subcommand)]
    Physics(PhysicsCommand),
    /// Run the cross-check suite and print a pass/fail table.
    Verify(VerifyArgs),
    /// List the partitions of m with their part counts and weights.
    Partitions(PartitionsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long)]
    pub m: u32,
    /// Single λ value.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "lambda_grid", required_unless_present = "lambda_grid")]
    pub lambda: Option<f64>,
    /// Inclusive λ sweep written start:stop:step.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_grid: Option<String>,
    /// Also evaluate the defining integral by quadrature.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// B_{m+1} from the shifted sum.
    Shifted,
    /// B_m from the direct sum.
    Direct,
}

#[derive(Debug, Subcommand)]
pub enum NumbersCommand {
    /// Bernoulli numbers for m = 1..=max.
    Bernoulli {
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Direct)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Euler numbers for m = 0..=max.
    Euler {
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Euler polynomials E_m(β) for m = 0..=max with β = num/den in (0, 1).
    EulerPoly {
        #[arg(long)]
        max: u32,
        #[arg(long)]
        beta: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Residue of Γ at -m.
    Residue {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Partition-sum reconstruction of β^m for m = 0..=max.
    Monomial {
        #[arg(long)]
        max: u32,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Diagonal Laguerre values L_m^{(-m)}(β) for m = 0..=max.
    LaguerreDiag {
        #[arg(long)]
        max: u32,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Observable {
    Mu,
    Pi,
}

#[derive(Debug, Subcommand)]
pub enum PhysicsCommand {
    /// ⟨μ^q⟩ or ⟨π^q⟩ for q ∈ {1, 2}.
    Expectation {
        #[arg(long, value_enum, default_value_t = Observable::Mu)]
        observable: Observable,
        #[arg(long, default_value_t = 1)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
        /// Also evaluate by direct quadrature.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Δμ·Δπ at one l, or for l = 0..=l-max.
    Uncertainty {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "l_max", required_unless_present = "l_max")]
        l: Option<f64>,
        #[arg(long)]
        l_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Wigner function W(x, p).
    Wigner {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        /// Also evaluate the defining integral by quadrature.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Fast,
    Slow,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
    pub suite: SuiteArg,
    /// Lower bound applied to every numeric tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Exit 0 when the only failures are checks whose bound is known to be
    /// unattainable.
    #[arg(long)]
    pub allow_known_failures: bool,
}

#[derive(Debug, Args)]
pub struct PartitionsArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    ExactRational,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::ExactRational => "exact_rational",
        }
    }
}

/// Named input values, serialized as a JSON object in insertion order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Inputs(pub Vec<(&'static str, Value)>);

impl Serialize for Inputs {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// One evaluated value with the inputs that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub inputs: Inputs,
    pub value_re: f64,
    pub value_im: f64,
    pub method: Method,
    pub achieved_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_im: Option<f64>,
}

impl OutputRecord {
    fn closed(inputs: Inputs, value: Complex64) -> Self {
        Self {
            inputs,
            value_re: value.re,
            value_im: value.im,
            method: Method::ClosedForm,
            achieved_tol: None,
            oracle_re: None,
            oracle_im: None,
        }
    }

    fn with_oracle(mut self, oracle: Complex64, achieved_tol: Option<f64>) -> Self {
        self.oracle_re = Some(oracle.re);
        self.oracle_im = Some(oracle.im);
        self.achieved_tol = achieved_tol;
        self
    }
}

/// Exact rational result row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalRecord {
    pub inputs: Inputs,
    pub value: String,
    pub numerator: String,
    pub denominator: String,
    pub method: Method,
}

impl RationalRecord {
    fn new(inputs: Inputs, v: &BigRational) -> Self {
        Self {
            inputs,
            value: v.to_string(),
            numerator: v.numer().to_string(),
            denominator: v.denom().to_string(),
            method: Method::ExactRational,
        }
    }
}

/// One partition of m.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionRecord {
    pub m: u32,
    pub multiplicities: Vec<u32>,
    pub parts: u32,
    pub weight: String,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Pole(_) | Error::Divergent(_) | Error::Resource(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses "start:stop:step" into the inclusive list of grid values.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Usage(format!("grid must be start:stop:step, got {spec:?}"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step == 0.0 || (stop - start) * step < 0.0 {
        return Err(CliError::Usage(format!("step must be nonzero and point from start to stop in {spec:?}")));
    }
    let span = (stop - start) / step;
    if span >= MAX_GRID_POINTS as f64 {
        return Err(CliError::Usage(format!("grid {spec:?} has more than {MAX_GRID_POINTS} points")));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

fn num(v: impl Into<Value>) -> Value {
    v.into()
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => {
            let inner: Vec<String> = xs.iter().map(csv_cell).collect();
            format!("\"({})\"", inner.join(","))
        }
        other => other.to_string(),
    }
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| Value::from(x).to_string()).unwrap_or_default()
}

/// CSV columns: the input names, then
/// value_re,value_im,method,achieved_tol,oracle_re,oracle_im.
fn write_output(out: &mut dyn Write, records: &[OutputRecord], format: Format, input_names: &[&str]) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            writeln!(
                out,
                "{},value_re,value_im,method,achieved_tol,oracle_re,oracle_im",
                input_names.join(",")
            )?;
            for r in records {
                let inputs: Vec<String> = r.inputs.0.iter().map(|(_, v)| csv_cell(v)).collect();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    inputs.join(","),
                    Value::from(r.value_re),
                    Value::from(r.value_im),
                    r.method.as_str(),
                    opt_cell(r.achieved_tol),
                    opt_cell(r.oracle_re),
                    opt_cell(r.oracle_im)
                )?;
            }
        }
    }
    Ok(())
}

/// CSV columns: the input names, then value,numerator,denominator,method.
fn write_rational(out: &mut dyn Write, records: &[RationalRecord], format: Format, input_names: &[&str]) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            writeln!(out, "{},value,numerator,denominator,method", input_names.join(","))?;
            for r in records {
                let inputs: Vec<String> = r.inputs.0.iter().map(|(_, v)| csv_cell(v)).collect();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    inputs.join(","),
                    r.value,
                    r.numerator,
                    r.denominator,
                    r.method.as_str()
                )?;
            }
        }
    }
    Ok(())
}

/// Evaluates one transform point, routing α = 0 and β = 0 to the limit forms.
pub fn transform_record(alpha: f64, beta: f64, m: u32, lambda: f64, oracle: bool) -> crate::Result<OutputRecord> {
    let inputs = Inputs(vec![
        ("alpha", num(alpha)),
        ("beta", num(beta)),
        ("m", num(m)),
        ("lambda", num(lambda)),
    ]);
    if !(alpha.is_finite() && beta.is_finite() && lambda.is_finite()) || alpha < 0.0 || beta < 0.0 {
        return Err(Error::Domain(format!(
            "need finite alpha, beta >= 0 and finite lambda, got ({alpha}, {beta}, {lambda})"
        )));
    }
    let reflect = |v: Complex64| if m.is_multiple_of(2) { v } else { -v };
    let record = match (alpha == 0.0, beta == 0.0) {
        (true, true) => {
            let rec = OutputRecord::closed(inputs, eval_zero_zero(m, lambda)?);
            if oracle {
                rec.with_oracle(quad_transform_limit(m, lambda, &DEFAULT_LADDER)?, None)
            } else {
                rec
            }
        }
        (true, false) => {
            let rec = OutputRecord::closed(inputs, eval_alpha_zero(beta, m, lambda)?);
            if oracle {
                rec.with_oracle(quad_alpha_zero_limit(beta, m, lambda, &DEFAULT_LADDER)?, None)
            } else {
                rec
            }
        }
        (false, true) => {
            let rec = OutputRecord::closed(inputs, reflect(eval_alpha_zero(alpha, m, -lambda)?));
            if oracle {
                let q = quad_alpha_zero_limit(alpha, m, -lambda, &DEFAULT_LADDER)?;
                rec.with_oracle(reflect(q), None)
            } else {
                rec
            }
        }
        (false, false) => {
            let p = TransformParams::new(alpha, beta, m, lambda)?;
            let rec = OutputRecord::closed(inputs, eval_transform(&p)?);
            if oracle {
                let q = quad_transform(&p, &QuadratureSpec::default())?;
                rec.with_oracle(q.value, Some(q.error))
            } else {
                rec
            }
        }
    };
    Ok(record)
}

fn cmd_transform(args: &TransformArgs, out: &mut dyn Write) -> CliResult<()> {
    let lambdas = match (&args.lambda_grid, args.lambda) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(l)) => vec![l],
        (None, None) => return Err(CliError::Usage("one of --lambda or --lambda-grid is required".into())),
    };
    let records = lambdas
        .par_iter()
        .map(|&l| transform_record(args.alpha, args.beta, args.m, l, args.oracle))
        .collect::<crate::Result<Vec<_>>>()?;
    write_output(out, &records, args.format, &["alpha", "beta", "m", "lambda"])?;
    Ok(())
}

fn variant(v: VariantArg) -> BernoulliVariant {
    match v {
        VariantArg::Shifted => BernoulliVariant::Shifted,
        VariantArg::Direct => BernoulliVariant::Direct,
    }
}

fn rational_beta(s: &str) -> CliResult<BigRational> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("--beta: {e}")))
}

fn cmd_numbers(cmd: &NumbersCommand, out: &mut dyn Write) -> CliResult<()> {
    let seq = |range: std::ops::RangeInclusive<u32>, f: &(dyn Fn(u32) -> crate::Result<BigRational> + Sync)| {
        range
            .into_par_iter()
            .map(|m| Ok(RationalRecord::new(Inputs(vec![("m", num(m))]), &f(m)?)))
            .collect::<crate::Result<Vec<_>>>()
    };
    let with_beta = |mut records: Vec<RationalRecord>, beta: &BigRational| {
        for r in &mut records {
            r.inputs.0.push(("beta", Value::String(beta.to_string())));
        }
        records
    };
    let (records, format, names): (Vec<RationalRecord>, Format, &[&str]) = match cmd {
        NumbersCommand::Bernoulli { max, variant: v, format } => {
            if *max == 0 {
                return Err(CliError::Usage("--max must be at least 1".into()));
            }
            let v = variant(*v);
            let mut records = seq(1..=*max, &|m| bernoulli_number(m, v))?;
            if v == BernoulliVariant::Shifted {
                // label rows by the index of the Bernoulli number they hold
                for r in &mut records {
                    let m = r.inputs.0[0].1.as_u64().unwrap_or(0);
                    r.inputs.0[0].1 = num(m + 1);
                }
            }
            (records, *format, &["m"])
        }
        NumbersCommand::Euler { max, format } => (seq(0..=*max, &euler_number)?, *format, &["m"]),
        NumbersCommand::EulerPoly { max, beta, format } => {
            let b = rational_beta(beta)?;
            let records = seq(0..=*max, &|m| euler_polynomial(m, &b))?;
            (with_beta(records, &b), *format, &["m", "beta"])
        }
        NumbersCommand::Residue { m, format } => (seq(*m..=*m, &gamma_residue)?, *format, &["m"]),
        NumbersCommand::Monomial { max, beta, format } => {
            let b = rational_beta(beta)?;
            let records = seq(0..=*max, &|m| monomial_sum(m, &b))?;
            (with_beta(records, &b), *format, &["m", "beta"])
        }
        NumbersCommand::LaguerreDiag { max, beta, format } => {
            let b = rational_beta(beta)?;
            let records = seq(0..=*max, &|m| laguerre_diagonal(m, &b))?;
            (with_beta(records, &b), *format, &["m", "beta"])
        }
    };
    write_rational(out, &records, format, names)?;
    Ok(())
}

fn expectation_record(observable: Observable, q: u32, n: u32, l: f64, oracle: bool) -> crate::Result<OutputRecord> {
    let name = match observable {
        Observable::Mu => "mu",
        Observable::Pi => "pi",
    };
    let inputs = Inputs(vec![
        ("observable", Value::String(name.into())),
        ("q", num(q)),
        ("n", num(n)),
        ("l", num(l)),
    ]);
    let real = |v: f64| Complex64::new(v, 0.0);
    let rec = match (observable, q) {
        (Observable::Mu, 1 | 2) => {
            let rec = OutputRecord::closed(inputs, real(expectation_mu(q, n, l)?));
            if oracle {
                rec.with_oracle(real(quad_expectation_kappa(n, l, q)?), None)
            } else {
                rec
            }
        }
        (Observable::Pi, 1) => {
            let rec = OutputRecord::closed(inputs, expectation_pi(n, l)?);
            if oracle {
                rec.with_oracle(quad_expectation_s(n, l, SOperator::Pi)?, None)
            } else {
                rec
            }
        }
        (Observable::Pi, 2) => {
            let rec = OutputRecord::closed(inputs, real(expectation_pi2(n, l)?));
            if oracle {
                rec.with_oracle(quad_expectation_s(n, l, SOperator::Pi2)?, None)
            } else {
                rec
            }
        }
        _ => return Err(Error::Domain(format!("q must be 1 or 2, got {q}"))),
    };
    Ok(rec)
}

fn cmd_physics(cmd: &PhysicsCommand, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        PhysicsCommand::Expectation {
            observable,
            q,
            n,
            l,
            oracle,
            format,
        } => {
            let rec = expectation_record(*observable, *q, *n, *l, *oracle)?;
            write_output(out, &[rec], *format, &["observable", "q", "n", "l"])?;
        }
        PhysicsCommand::Uncertainty { n, l, l_max, format } => {
            let ls: Vec<f64> = match (l, l_max) {
                (Some(l), _) => vec![*l],
                (None, Some(max)) => {
                    if *max as usize >= MAX_GRID_POINTS {
                        return Err(CliError::Usage(format!("--l-max must be below {MAX_GRID_POINTS}")));
                    }
                    (0..=*max).map(f64::from).collect()
                }
                (None, None) => return Err(CliError::Usage("one of --l or --l-max is required".into())),
            };
            let records = ls
                .par_iter()
                .map(|&l| {
                    let u = uncertainty(*n, l)?;
                    let inputs = Inputs(vec![("n", num(*n)), ("l", num(l))]);
                    Ok(OutputRecord::closed(inputs, Complex64::new(u.product(), 0.0)))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            write_output(out, &records, *format, &["n", "l"])?;
        }
        PhysicsCommand::Wigner {
            n,
            l,
            a,
            x,
            p,
            oracle,
            format,
        } => {
            let idx = QuantumIndices::new(*n, *l, *a)?;
            let inputs = Inputs(vec![
                ("n", num(*n)),
                ("l", num(*l)),
                ("a", num(*a)),
                ("x", num(*x)),
                ("p", num(*p)),
            ]);
            let mut rec = OutputRecord::closed(inputs, Complex64::new(wigner(&idx, *x, *p)?, 0.0));
            if *oracle {
                rec = rec.with_oracle(Complex64::new(quad_wigner(&idx, *x, *p)?, 0.0), None);
            }
            write_output(out, &[rec], *format, &["n", "l", "a", "x", "p"])?;
        }
    }
    Ok(())
}

fn cmd_partitions(args: &PartitionsArgs, out: &mut dyn Write) -> CliResult<()> {
    let records: Vec<PartitionRecord> = enumerate_partitions(args.m)?
        .iter()
        .map(|p| PartitionRecord {
            m: args.m,
            multiplicities: p.multiplicities(),
            parts: p.parts(),
            weight: faa_weight(p).to_string(),
        })
        .collect();
    match args.format {
        Format::Json => {
            for r in &records {
                serde_json::to_writer(&mut *out, r).map_err(io::Error::from)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            writeln!(out, "m,multiplicities,parts,weight")?;
            for r in &records {
                let mult: Vec<String> = r.multiplicities.iter().map(u32::to_string).collect();
                writeln!(out, "{},\"({})\",{},{}", r.m, mult.join(","), r.parts, r.weight)?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    if let Some(t) = args.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let opts = VerifyOptions {
        suite: match args.suite {
            SuiteArg::Fast => Suite::Fast,
            SuiteArg::Slow => Suite::Slow,
        },
        tol_floor: args.tol,
    };
    let reports = verify::run(&opts);
    for r in &reports {
        write!(out, "{r}")?;
    }
    let failed: Vec<_> = reports.iter().flat_map(|r| r.checks.iter()).filter(|c| !c.passed).collect();
    let unexpected = failed.iter().filter(|c| !c.known_unattainable).count();
    let known = failed.len() - unexpected;
    writeln!(
        out,
        "{} of {} criteria pass; {unexpected} unexpected and {known} known-unattainable check failures",
        reports.iter().filter(|r| r.passed()).count(),
        reports.len()
    )?;
    let ok = unexpected == 0 && (known == 0 || args.allow_known_failures);
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a pool built earlier in the same process keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Runs a parsed command, writing results to `out`, and returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Transform(a) => cmd_transform(a, out).map(|()| EXIT_OK),
        Command::Numbers(c) => cmd_numbers(c, out).map(|()| EXIT_OK),
        Command::Physics(c) => cmd_physics(c, out).map(|()| EXIT_OK),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Partitions(a) => cmd_partitions(a, out).map(|()| EXIT_OK),
    });
    match result.and_then(|code| out.flush().map(|()| code).map_err(CliError::from)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:1:0.5").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("-1:-2:-0.5").unwrap(), vec![-1.0, -1.5, -2.0]);
        assert_eq!(parse_grid("0:0.3:0.1").unwrap().len(), 4);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1:-1").is_err());
        assert!(parse_grid("0:1e9:1e-3").is_err());
    }

    #[test]
    fn boundary_routing() {
        let r = transform_record(0.0, 0.0, 2, 0.0, false).unwrap();
        assert!((r.value_re - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        let a = transform_record(1.3, 0.0, 3, 0.4, false).unwrap();
        let b = transform_record(0.0, 1.3, 3, -0.4, false).unwrap();
        assert_eq!((a.value_re, a.value_im), (-b.value_re, -b.value_im));
        assert!(transform_record(-1.0, 1.0, 0, 0.0, false).is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::Domain("x".into())).exit_code(), EXIT_USAGE);
        let e = Error::NonConvergence {
            estimate: 0.0,
            error: 1.0,
            subdivisions: 3,
        };
        assert_eq!(CliError::from(e).exit_code(), EXIT_NUMERIC);
    }
}
