//! Schur polynomials `P_k{t}` and multi-Schur polynomials `P_kvec{t}`: the
//! coefficients of `exp(sum_k t_k z^k)`, single- or multigraded.

mod partitions;

pub use partitions::{lattice_paths, ordered_partitions, LatticePath, OrderedPartitions, VectorPartition};

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational, Symbol};
use crate::trace::factorial;

/// Largest component sum the literal partition sum is run for.
pub const ENUMERATE_CAP: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchurMethod {
    /// Literal sum over ordered partitions.
    Enumerate,
    /// `k P_k = sum_i i t_i P_{k-i}` (or its multigraded analogue).
    #[default]
    Recurrence,
}

/// Arguments `t_kvec`, keyed by nonzero grading vector. Scalar Schur
/// polynomials use vectors of length 1.
pub type TArgs = BTreeMap<Vec<u32>, MPoly>;

/// `t_g := t{g}` symbols for every nonzero `g <= target`.
pub fn symbolic_args(target: &[u32]) -> TArgs {
    crate::trace::gradings_below(target)
        .into_iter()
        .map(|g| {
            let s = MPoly::var(&Symbol::t(&g));
            (g, s)
        })
        .collect()
}

fn arg<'a>(t: &'a TArgs, g: &[u32]) -> Result<&'a MPoly> {
    t.get(g).ok_or_else(|| Error::MissingArgument { index: g.to_vec() })
}

fn inverse_factorial(m: usize) -> Rational {
    Rational::new(BigUint::one().into(), factorial(m as u32).into())
}

/// `P_k{t}` for scalar `k`; `P_0 = 1`.
pub fn schur_poly(k: u32, t: &BTreeMap<u32, MPoly>, method: SchurMethod) -> Result<MPoly> {
    let args: TArgs = t.iter().map(|(&i, p)| (vec![i], p.clone())).collect();
    multi_schur(&[k], &args, method)
}

/// `P_target{t}`: the `target` component of `exp(sum_g t_g z^g)`. The empty
/// or zero target gives 1.
pub fn multi_schur(target: &[u32], t: &TArgs, method: SchurMethod) -> Result<MPoly> {
    if target.iter().all(|&k| k == 0) {
        return Ok(MPoly::one());
    }
    match method {
        SchurMethod::Enumerate => enumerate(target, t),
        SchurMethod::Recurrence => Ok(series_exp(target, t)?.remove(target).expect("target computed")),
    }
}

fn enumerate(target: &[u32], t: &TArgs) -> Result<MPoly> {
    let size: u32 = target.iter().sum();
    if size > ENUMERATE_CAP {
        return Err(Error::BudgetExceeded {
            what: "ordered-partition enumeration".into(),
            estimate: size.into(),
            cap: ENUMERATE_CAP.into(),
            grading: Some(target.to_vec()),
        });
    }
    let mut out = MPoly::zero();
    for p in ordered_partitions(target) {
        let mut term = MPoly::one();
        for part in &p.parts {
            term = &term * arg(t, part)?;
        }
        out.add_scaled(&term, &inverse_factorial(p.len()));
    }
    Ok(out)
}

/// `P_v` for every `0 <= v <= target`, from
/// `v_j P_v = sum_{0 < i <= v, i_j > 0} i_j t_i P_{v-i}` with `j` the first
/// nonzero coordinate of `v`.
pub fn series_exp(target: &[u32], t: &TArgs) -> Result<BTreeMap<Vec<u32>, MPoly>> {
    let grid = crate::trace::gradings_below(target);
    for g in &grid {
        arg(t, g)?;
    }
    let mut p: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
    p.insert(vec![0; target.len()], MPoly::one());
    // lexicographic order visits every v - i before v
    for v in &grid {
        let j = v.iter().position(|&x| x > 0).expect("nonzero");
        let mut acc = MPoly::zero();
        for i in crate::trace::gradings_below(v) {
            if i[j] == 0 {
                continue;
            }
            let ti = &t[&i];
            if ti.is_zero() {
                continue;
            }
            let rest: Vec<u32> = v.iter().zip(&i).map(|(a, b)| a - b).collect();
            let prev = &p[&rest];
            acc.add_product(ti, prev, &Rational::from_integer(i[j].into()));
        }
        p.insert(v.clone(), acc.scale(&Rational::new(1.into(), v[j].into())));
    }
    Ok(p)
}
