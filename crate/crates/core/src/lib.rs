//! Resultants of homogeneous polynomial systems computed from generalized
//! traces.
//!
//! For a system `x_i^{r_i} - f_i(x)` the logarithm of the resultant expands
//! into multigraded traces `T_{k_1..k_n}(f)`, each obtained by pairing the
//! differential operators `f_i(d/dA_{i1}, .., d/dA_{in})^{k_i}` with
//! `tr A^m`. Exponentiating that series (a multi-Schur polynomial) yields the
//! resultant as an explicit polynomial in the coefficients.
//!
//! * [`poly`]: exact rational polynomial arithmetic, the value domain.
//! * [`system`]: homogeneous polynomials, systems, degree data, JSON.
//! * [`trace`]: the trace engine (operator expansion, closed-walk counts).
//! * [`schur`]: ordered partitions, lattice paths, (multi-)Schur polynomials.
//! * [`resultant`]: assembly, determinant case and independent oracles.

pub mod error;
pub mod poly;
pub mod resultant;
pub mod schur;
pub mod system;
pub mod trace;

pub use error::{Error, Result};
pub use poly::{MPoly, Rational, Symbol};
