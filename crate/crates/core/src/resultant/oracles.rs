//! Determinants and the two-polynomial Sylvester resultant.

use std::collections::BTreeMap;

use num_traits::One;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational};
use crate::schur::{schur_poly, SchurMethod};
use crate::system::{HomogeneousPoly, PolySystem};

fn check_square(m: &[Vec<MPoly>]) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("matrix must be square and nonempty"));
    }
    Ok(n)
}

fn mat_mul(a: &[Vec<MPoly>], b: &[Vec<MPoly>]) -> Vec<Vec<MPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = MPoly::zero();
                    for (k, row) in b.iter().enumerate() {
                        acc.add_product(&a[i][k], &row[j], &Rational::one());
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `tr M, tr M^2, .., tr M^n`.
pub fn power_traces(m: &[Vec<MPoly>], up_to: u32) -> Result<Vec<MPoly>> {
    let n = check_square(m)?;
    let mut power = m.to_vec();
    let mut out = Vec::with_capacity(up_to as usize);
    for k in 1..=up_to {
        if k > 1 {
            power = mat_mul(&power, m);
        }
        out.push((0..n).map(|i| power[i][i].clone()).sum());
    }
    Ok(out)
}

/// `det M = (-1)^n P_n{t_k := -tr M^k / k}`, i.e.
/// `sum_m (-1)^{m+n} / m! sum_{k_1+..+k_m = n} prod_j tr M^{k_j} / k_j`.
pub fn determinant_special(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = check_square(m)? as u32;
    let traces = power_traces(m, n)?;
    let t: BTreeMap<u32, MPoly> = traces
        .into_iter()
        .enumerate()
        .map(|(i, tr)| {
            let k = i as u32 + 1;
            (k, tr.scale(&-Rational::new(1.into(), k.into())))
        })
        .collect();
    let p = schur_poly(n, &t, SchurMethod::Recurrence)?;
    Ok(if n.is_multiple_of(2) { p } else { -p })
}

/// Permutation-sum determinant.
pub fn leibniz_determinant(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = check_square(m)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = MPoly::zero();
    permute(&mut perm, 0, true, m, &mut out);
    Ok(out)
}

fn permute(perm: &mut Vec<usize>, pos: usize, even: bool, m: &[Vec<MPoly>], out: &mut MPoly) {
    if pos == perm.len() {
        let mut term = MPoly::one();
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &m[i][j];
            if term.is_zero() {
                return;
            }
        }
        if even {
            *out += &term;
        } else {
            *out -= &term;
        }
        return;
    }
    for k in pos..perm.len() {
        perm.swap(pos, k);
        permute(perm, pos + 1, even == (k == pos), m, out);
        perm.swap(pos, k);
    }
}

/// Determinant by cofactor expansion down the rows, memoised on the set of
/// columns already used. Division-free, so it works over symbols.
pub fn minor_expansion_determinant(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = check_square(m)?;
    if n > 24 {
        return Err(Error::invalid("cofactor expansion limited to 24 columns"));
    }
    let mut memo: FxHashMap<u32, MPoly> = FxHashMap::default();
    Ok(expand(m, 0, &mut memo))
}

fn expand(m: &[Vec<MPoly>], used: u32, memo: &mut FxHashMap<u32, MPoly>) -> MPoly {
    let n = m.len();
    let row = used.count_ones() as usize;
    if row == n {
        return MPoly::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut out = MPoly::zero();
    let mut free_before = 0;
    for c in 0..n {
        if used & (1 << c) != 0 {
            continue;
        }
        if !m[row][c].is_zero() {
            let minor = expand(m, used | (1 << c), memo);
            let sign = if free_before % 2 == 0 { Rational::one() } else { -Rational::one() };
            out.add_product(&m[row][c], &minor, &sign);
        }
        free_before += 1;
    }
    memo.insert(used, out.clone());
    out
}

/// Matrix `M_ij` = coefficient of `x_j` in `f_i`, for all-linear systems.
pub fn coefficient_matrix(system: &PolySystem) -> Result<Vec<Vec<MPoly>>> {
    if system.degrees().iter().any(|&r| r != 1) {
        return Err(Error::invalid("coefficient matrix needs all degrees equal to 1"));
    }
    let n = system.n() as u32;
    Ok(system
        .polys()
        .iter()
        .map(|p| (1..=n).map(|j| p.coeff(&[j])).collect())
        .collect())
}

/// Coefficients `a_0..a_r` of `x_1^{r-j} x_2^j` in a binary form.
fn binary_coeffs(p: &HomogeneousPoly) -> Vec<MPoly> {
    let r = p.degree() as usize;
    (0..=r)
        .map(|j| {
            let mut idx = vec![1u32; r - j];
            idx.extend(std::iter::repeat_n(2, j));
            p.coeff(&idx)
        })
        .collect()
}

/// The `(r_1 + r_2) x (r_1 + r_2)` Sylvester matrix of two binary forms,
/// coefficients ordered by descending power of `x_1`.
pub fn sylvester_matrix(f: &HomogeneousPoly, g: &HomogeneousPoly) -> Result<Vec<Vec<MPoly>>> {
    if f.nvars() != 2 || g.nvars() != 2 {
        return Err(Error::invalid("the Sylvester resultant needs two forms in two variables"));
    }
    let (r1, r2) = (f.degree() as usize, g.degree() as usize);
    let size = r1 + r2;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(binary_coeffs(f), r2), (binary_coeffs(g), r1)] {
        for s in 0..shifts {
            let mut row = vec![MPoly::zero(); size];
            for (j, c) in coeffs.iter().enumerate() {
                row[s + j] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant of the Sylvester matrix of a two-polynomial system.
pub fn sylvester_resultant(system: &PolySystem) -> Result<MPoly> {
    if system.n() != 2 {
        return Err(Error::invalid(format!(
            "the Sylvester resultant is defined for n = 2, got n = {}",
            system.n()
        )));
    }
    minor_expansion_determinant(&sylvester_matrix(system.poly(0), system.poly(1))?)
}

/// `+1` or `-1` when `a = +-b` with `b != 0`; `None` otherwise.
pub fn relative_sign(a: &MPoly, b: &MPoly) -> Option<i8> {
    if b.is_zero() {
        return None;
    }
    if a == b {
        Some(1)
    } else if *a == -b {
        Some(-1)
    } else {
        None
    }
}
