//! Traces by literal differentiation of `tr A^m`, for cross-checking.

use num_bigint::BigUint;
use num_traits::One;
use rustc_hash::FxHashMap;

use super::rows::row_operator_expansion;
use super::walks::{factorial, trace_power};
use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational, Symbol};
use crate::system::PolySystem;

const MAX_M: u32 = 10;
const MAX_N: usize = 3;

/// `T_kvec` as `prod r_i / (prod (r_i k_i)! * m) * f_1^(k_1)..f_n^(k_n) tr A^m`
/// at `A = 0`, where row `i`'s operator substitutes `d/dA_{ij}` for `x_j`.
/// Limited to `m <= 10`, `n <= 3`.
pub fn naive_trace_oracle(system: &PolySystem, kvec: &[u32]) -> Result<MPoly> {
    let n = system.n();
    if kvec.len() != n || kvec.iter().all(|&k| k == 0) {
        return Err(Error::invalid(format!("invalid grading vector {kvec:?}")));
    }
    let sums: Vec<u32> = system.degrees().iter().zip(kvec).map(|(r, k)| r * k).collect();
    let m: u32 = sums.iter().sum();
    if m > MAX_M || n > MAX_N {
        return Err(Error::BudgetExceeded {
            what: "naive differentiation oracle (m <= 10, n <= 3)".into(),
            estimate: (n as u128).pow(m),
            cap: (MAX_N as u128).pow(MAX_M),
            grading: Some(kvec.to_vec()),
        });
    }
    let mut current = trace_power(n as u32, m, u128::MAX)?;
    for (i, (p, &k)) in system.polys().iter().zip(kvec).enumerate() {
        if k == 0 {
            continue;
        }
        let ids: Vec<_> = (0..n).map(|j| Symbol::matrix(i as u32 + 1, j as u32 + 1).id()).collect();
        let mut derived: FxHashMap<Vec<u32>, MPoly> = FxHashMap::default();
        let mut next = MPoly::zero();
        for (e, c) in row_operator_expansion(p, k).entries() {
            let d = derived.entry(e.clone()).or_insert_with(|| {
                let mut q = current.clone();
                for (j, &times) in e.iter().enumerate() {
                    for _ in 0..times {
                        q = q.derivative_id(ids[j]);
                    }
                }
                q
            });
            next.add_product(c, d, &Rational::one());
        }
        current = next;
    }
    let at_zero = MPoly::from_terms(current.iter().filter(|(mono, _)| {
        mono.factors().iter().all(|f| !matches!(f.0.symbol(), Symbol::Matrix { .. }))
    }).map(|(mono, c)| (mono.clone(), c.clone())));
    let num: BigUint = system.degrees().iter().map(|&r| BigUint::from(r)).product();
    let den: BigUint = sums.iter().map(|&s| factorial(s)).product::<BigUint>() * m;
    Ok(at_zero.scale(&Rational::new(num.into(), den.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        let q = PolySystem::symbolic(&[2, 2]).unwrap();
        assert_eq!(naive_trace_oracle(&q, &[1, 1]).unwrap(), p("2*f1_22*f2_11 + f1_12*f2_12"));
        assert_eq!(naive_trace_oracle(&q, &[2, 0]).unwrap(), p("f1_11^2"));
        let l = PolySystem::symbolic(&[1, 1]).unwrap();
        assert_eq!(naive_trace_oracle(&l, &[1, 0]).unwrap(), p("f1_1"));
    }

    #[test]
    fn refuses_beyond_cap() {
        let q = PolySystem::symbolic(&[3, 3]).unwrap();
        assert!(naive_trace_oracle(&q, &[2, 2]).unwrap_err().is_budget());
        let big = PolySystem::symbolic(&[1, 1, 1, 1]).unwrap();
        assert!(naive_trace_oracle(&big, &[1, 0, 0, 0]).unwrap_err().is_budget());
    }
}
