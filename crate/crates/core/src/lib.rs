//! Closed-form Fourier transforms of s^m Γ(α - is) Γ(β + is), their
//! number-theoretic corollaries and phase-space applications, each backed by
//! an independent brute-force oracle.
//!
//! ```
//! use gamma_fourier::transform::{eval_transform, TransformParams};
//!
//! let p = TransformParams::new(0.5, 0.5, 4, 0.0).unwrap();
//! let v = eval_transform(&p).unwrap();
//! assert!((v.re - 5.0 * std::f64::consts::PI / 16.0).abs() < 1e-14);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod numbers;
pub mod oracle;
pub mod partitions;
pub mod physics;
pub mod specfun;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use specfun::ComplexValue;
