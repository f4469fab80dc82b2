//! Generalized traces `T_{k_1..k_n}(f)` and `T_k(f)`.
//!
//! `T_kvec` pairs the operators `f_i(d/dA_{i1}, .., d/dA_{in})^{k_i}` with
//! `tr A^m`, `m = sum r_i k_i`. Because `(d/dx)^a x^b` at `0` is `a!` when
//! `a = b` and zero otherwise, only exponent matrices `E` whose row `i` is
//! an exponent vector of `f_i^{k_i}` and which occur in `tr A^m` contribute,
//! each with weight `walk_count(E) * prod E_ij!`.

mod engine;
mod naive;
mod rows;
mod walks;

pub use engine::{
    aggregated_trace, candidate_estimate, gradings_below, gradings_of_total, multigraded_trace,
    TraceEngine, TracePlan, TraceTable, DEFAULT_BUDGET,
};
pub use naive::naive_trace_oracle;
pub use rows::{row_operator_expansion, row_operator_powers, RowOperatorExpansion};
pub use walks::{closed_walk_matrices, factorial, trace_power, walk_count, ExponentMatrix};

use num_bigint::BigUint;

use crate::poly::Rational;

/// Coefficient `r / (r k)!` of `z^k` in the shift series `S_r(z)`.
pub fn shift_coefficient(r: u32, k: u32) -> Rational {
    Rational::new(BigUint::from(r).into(), factorial(r * k).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn shift_series_coefficients() {
        assert_eq!(shift_coefficient(2, 2), rat(1, 12));
        assert_eq!(shift_coefficient(2, 3), rat(1, 360));
        assert_eq!(shift_coefficient(3, 1), rat(1, 2));
        assert_eq!(shift_coefficient(3, 2), rat(1, 240));
        assert_eq!(shift_coefficient(1, 4), rat(1, 24));
        assert_eq!(shift_coefficient(2, 0), rat(2, 1));
        for r in 1..=5 {
            for k in 0..=6 {
                let back = shift_coefficient(r, k) * Rational::from_integer(factorial(r * k).into());
                assert_eq!(back, Rational::from_integer(r.into()));
            }
        }
    }
}
