//! Homogeneous polynomials, n-polynomial systems and their degree data.

mod json;
mod random;

pub use json::{from_json, to_json, to_json_value, Mode};
pub use random::{force_common_root, random_dense, random_rational, random_wide_rational};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational, Symbol};

/// All sorted multi-indices of length `r` over `1..=n`, in lexicographic order.
pub fn multi_indices(n: u32, r: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, r: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r as usize {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(n, r, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, 1, &mut Vec::with_capacity(r as usize), &mut out);
    out
}

/// Exponent vector `(e_1..e_n)` of the monomial `x_{i_1}..x_{i_r}`.
pub fn index_exponents(n: u32, index: &[u32]) -> Vec<u32> {
    let mut e = vec![0; n as usize];
    for &i in index {
        e[(i - 1) as usize] += 1;
    }
    e
}

/// A homogeneous polynomial of degree `degree` in `nvars` variables, stored
/// as one coefficient per monomial (sorted multi-index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    nvars: u32,
    degree: u32,
    coeffs: BTreeMap<Vec<u32>, MPoly>,
}

impl HomogeneousPoly {
    /// Zero polynomial; coefficients are added with [`HomogeneousPoly::set`].
    pub fn new(nvars: u32, degree: u32) -> Result<Self> {
        if nvars == 0 || degree == 0 {
            return Err(Error::invalid("number of variables and degree must be positive"));
        }
        Ok(HomogeneousPoly { nvars, degree, coeffs: BTreeMap::new() })
    }

    /// Polynomial number `poly` (1-based) of a generic system: every slot
    /// carries its own coefficient symbol.
    pub fn symbolic(poly: u32, nvars: u32, degree: u32) -> Result<Self> {
        let mut p = HomogeneousPoly::new(nvars, degree)?;
        for idx in multi_indices(nvars, degree) {
            let s = Symbol::coeff(poly, &idx)?;
            p.coeffs.insert(idx, MPoly::var(&s));
        }
        Ok(p)
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Sets the coefficient of the monomial with multi-index `index`, which
    /// must already be sorted.
    pub fn set(&mut self, index: &[u32], coeff: MPoly) -> Result<()> {
        self.check_index(index)?;
        if coeff.is_zero() {
            self.coeffs.remove(index);
        } else {
            self.coeffs.insert(index.to_vec(), coeff);
        }
        Ok(())
    }

    pub(crate) fn add_to(&mut self, index: &[u32], coeff: &MPoly) -> Result<()> {
        let mut sorted = index.to_vec();
        sorted.sort_unstable();
        let cur = self.coeff(&sorted);
        self.set(&sorted, &cur + coeff)
    }

    fn check_index(&self, index: &[u32]) -> Result<()> {
        if index.len() != self.degree as usize {
            return Err(Error::invalid(format!(
                "multi-index {index:?} has length {}, expected degree {}",
                index.len(),
                self.degree
            )));
        }
        if let Some(&bad) = index.iter().find(|&&i| i == 0 || i > self.nvars) {
            return Err(Error::invalid(format!("index {bad} out of range 1..={}", self.nvars)));
        }
        if index.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!("multi-index {index:?} is not sorted")));
        }
        Ok(())
    }

    pub fn coeff(&self, index: &[u32]) -> MPoly {
        self.coeffs.get(index).cloned().unwrap_or_default()
    }

    /// Nonzero coefficients in index order.
    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<u32>, &MPoly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient is a rational constant.
    pub fn is_numeric(&self) -> bool {
        self.coeffs.values().all(MPoly::is_constant)
    }

    /// True when this is exactly the generic polynomial number `poly`.
    pub fn is_symbolic_form(&self, poly: u32) -> bool {
        HomogeneousPoly::symbolic(poly, self.nvars, self.degree).is_ok_and(|s| &s == self)
    }

    pub fn scale(&self, factor: &Rational) -> HomogeneousPoly {
        let mut out = HomogeneousPoly::new(self.nvars, self.degree).expect("valid shape");
        if !factor.is_zero() {
            for (idx, c) in &self.coeffs {
                out.coeffs.insert(idx.clone(), c.scale(factor));
            }
        }
        out
    }
}

/// Exact value of a numeric homogeneous polynomial at `point`.
pub fn evaluate_poly(p: &HomogeneousPoly, point: &[Rational]) -> Result<Rational> {
    if point.len() != p.nvars as usize {
        return Err(Error::invalid(format!(
            "point has {} coordinates, polynomial has {} variables",
            point.len(),
            p.nvars
        )));
    }
    let mut acc = Rational::zero();
    for (idx, c) in p.coeffs() {
        let c = c.as_constant().ok_or_else(|| Error::SymbolicCoefficient(c.to_string()))?;
        let term = idx
            .iter()
            .fold(c, |v, &i| v * &point[(i - 1) as usize]);
        acc += term;
    }
    Ok(acc)
}

/// `n` homogeneous polynomials in `n` variables with degrees `(r_1..r_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    degrees: Vec<u32>,
    polys: Vec<HomogeneousPoly>,
}

impl PolySystem {
    pub fn new(polys: Vec<HomogeneousPoly>) -> Result<Self> {
        let n = polys.len();
        if n == 0 {
            return Err(Error::invalid("a system needs at least one polynomial"));
        }
        if let Some(p) = polys.iter().find(|p| p.nvars as usize != n) {
            return Err(Error::invalid(format!(
                "system of {n} polynomials needs {n} variables, found a polynomial in {}",
                p.nvars
            )));
        }
        let degrees = polys.iter().map(|p| p.degree).collect();
        Ok(PolySystem { degrees, polys })
    }

    /// The generic system: every coefficient is a distinct symbol.
    pub fn symbolic(degrees: &[u32]) -> Result<Self> {
        let n = u32::try_from(degrees.len()).map_err(|_| Error::invalid("too many polynomials"))?;
        if n == 0 {
            return Err(Error::invalid("a system needs at least one polynomial"));
        }
        let polys = degrees
            .iter()
            .enumerate()
            .map(|(i, &r)| HomogeneousPoly::symbolic(i as u32 + 1, n, r))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(polys)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn polys(&self) -> &[HomogeneousPoly] {
        &self.polys
    }

    pub fn poly(&self, i: usize) -> &HomogeneousPoly {
        &self.polys[i]
    }

    pub fn is_numeric(&self) -> bool {
        self.polys.iter().all(HomogeneousPoly::is_numeric)
    }

    /// Copy with polynomial `i` (0-based) replaced.
    pub fn with_poly(&self, i: usize, p: HomogeneousPoly) -> Result<Self> {
        let mut polys = self.polys.clone();
        polys[i] = p;
        PolySystem::new(polys)
    }

    /// Coefficient symbols of polynomial `i` (0-based) in the generic system.
    pub fn is_coeff_of(s: &Symbol, i: usize) -> bool {
        matches!(s, Symbol::Coeff { poly, .. } if *poly as usize == i + 1)
    }
}

/// `d_i = (r_1..r_n) / r_i` and `d = sum d_i`: the resultant's degree in
/// each polynomial's coefficients and in total.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DegreeData {
    pub d_vec: Vec<u32>,
    pub d_total: u32,
}

pub fn degree_data(degrees: &[u32]) -> Result<DegreeData> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::invalid("degrees must be a nonempty list of positive integers"));
    }
    let overflow = || Error::invalid(format!("degree product of {degrees:?} overflows"));
    let d_vec = (0..degrees.len())
        .map(|i| {
            degrees
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .try_fold(1u32, |acc, (_, &r)| acc.checked_mul(r))
                .ok_or_else(overflow)
        })
        .collect::<Result<Vec<u32>>>()?;
    let d_total = d_vec.iter().try_fold(0u32, |acc, &d| acc.checked_add(d)).ok_or_else(overflow)?;
    Ok(DegreeData { d_vec, d_total })
}

/// Number of coefficient slots `C(n+r-1, r)` of a degree-`r` form in `n` variables.
pub fn slot_count(n: u32, r: u32) -> u128 {
    (1..=u128::from(r)).fold(1u128, |acc, i| acc * (u128::from(n) - 1 + i) / i)
}
