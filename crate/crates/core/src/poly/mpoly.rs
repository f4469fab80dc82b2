use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use super::monomial::{canonical_cmp, Monomial};
use super::symbol::{resolve_all, SymId, Symbol};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so the empty polynomial is `0` and
/// structural equality is mathematical equality.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: FxHashMap<Monomial, Rational>,
}

/// Selector for [`MPoly::arith`].
#[derive(Debug, Clone)]
pub enum ArithOp<'a> {
    Add(&'a MPoly),
    Mul(&'a MPoly),
    Neg,
    Scale(&'a Rational),
    Pow(i64),
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        MPoly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(s: &Symbol) -> Self {
        MPoly::term(Monomial::var(s.id(), 1), Rational::one())
    }

    pub fn var_id(id: SymId) -> Self {
        MPoly::term(Monomial::var(id, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = FxHashMap::default();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Number of stored monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`MPoly::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial, `None` if any symbol occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn symbols(&self) -> FxHashSet<SymId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|f| f.0))
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &MPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    /// `self += factor * a * b` without materialising the product.
    pub fn add_product(&mut self, a: &MPoly, b: &MPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        for (ma, ca) in &small.terms {
            let scaled = ca * factor;
            for (mb, cb) in &large.terms {
                self.add_term(ma.mul(mb), &scaled * cb);
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> MPoly {
        if factor.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Single entry point for the ring operations; `Pow` rejects negative exponents.
    pub fn arith(&self, op: ArithOp<'_>) -> Result<MPoly> {
        Ok(match op {
            ArithOp::Add(b) => self + b,
            ArithOp::Mul(b) => self * b,
            ArithOp::Neg => -self,
            ArithOp::Scale(q) => self.scale(q),
            ArithOp::Pow(e) => {
                let e = u32::try_from(e)
                    .map_err(|_| Error::invalid(format!("exponent {e} is not a nonnegative integer")))?;
                self.pow(e)
            }
        })
    }

    pub fn derivative(&self, s: &Symbol) -> MPoly {
        self.derivative_id(s.id())
    }

    pub fn derivative_id(&self, id: SymId) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(id) {
                out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Substitutes polynomials for some symbols; unassigned symbols stay symbolic.
    pub fn evaluate(&self, assignment: &FxHashMap<SymId, MPoly>) -> MPoly {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut powers: FxHashMap<(SymId, u32), MPoly> = FxHashMap::default();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (hit, rest) = m.partition(|id| assignment.contains_key(&id));
            let mut acc = MPoly::term(rest, c.clone());
            for &(id, e) in hit.factors() {
                let p = powers
                    .entry((id, e))
                    .or_insert_with(|| assignment[&id].pow(e));
                acc = &acc * p;
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    /// Convenience wrapper over [`MPoly::evaluate`] keyed by full symbols.
    pub fn substitute(&self, assignment: &[(Symbol, MPoly)]) -> MPoly {
        let map = assignment.iter().map(|(s, p)| (s.id(), p.clone())).collect();
        self.evaluate(&map)
    }

    /// Sum of the terms whose weighted multidegree equals `target`.
    ///
    /// `weight` gives each symbol's grading vector; every occurring symbol
    /// must have one, of the same length as `target`.
    pub fn graded_component(
        &self,
        weight: impl Fn(&Symbol) -> Option<Vec<u32>>,
        target: &[u32],
    ) -> Result<MPoly> {
        let table = resolve_all(self.symbols());
        let mut weights: FxHashMap<SymId, Vec<u32>> = FxHashMap::default();
        for (id, s) in &table {
            let w = weight(s).ok_or_else(|| Error::invalid(format!("symbol {s} has no weight")))?;
            if w.len() != target.len() {
                return Err(Error::invalid(format!(
                    "weight of {s} has length {}, target has length {}",
                    w.len(),
                    target.len()
                )));
            }
            weights.insert(*id, w);
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut deg = vec![0u32; target.len()];
            for &(id, e) in m.factors() {
                for (d, w) in deg.iter_mut().zip(&weights[&id]) {
                    *d += w * e;
                }
            }
            if deg == target {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Degree in the symbols selected by `pred`, over all terms: `(min, max)`.
    pub fn degree_range(&self, pred: impl Fn(&Symbol) -> bool) -> Option<(u32, u32)> {
        let table = resolve_all(self.symbols());
        let selected: FxHashSet<SymId> = table.iter().filter(|(_, s)| pred(s)).map(|(id, _)| *id).collect();
        self.terms
            .keys()
            .map(|m| {
                m.factors()
                    .iter()
                    .filter(|f| selected.contains(&f.0))
                    .map(|f| f.1)
                    .sum::<u32>()
            })
            .fold(None, |acc, d| match acc {
                None => Some((d, d)),
                Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
            })
    }

    /// Terms in canonical order with resolved symbols.
    pub fn canonical_terms(&self) -> Vec<(Vec<(Symbol, u32)>, Rational)> {
        let table = resolve_all(self.symbols());
        let mut out: Vec<(Vec<(Symbol, u32)>, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut f: Vec<(Symbol, u32)> =
                    m.factors().iter().map(|&(id, e)| (table[&id].clone(), e)).collect();
                f.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                (f, c.clone())
            })
            .collect();
        out.sort_unstable_by(|a, b| canonical_cmp(&a.0, &b.0));
        out
    }

    /// Sum of absolute values of the coefficients.
    pub fn coefficient_mass(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).fold(Rational::zero(), |a, b| a + b)
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        out.add_product(self, rhs, &Rational::one());
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> Self {
        MPoly::constant(c)
    }
}

impl From<&Symbol> for MPoly {
    fn from(s: &Symbol) -> Self {
        MPoly::var(s)
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn a(i: u32, j: u32) -> MPoly {
        MPoly::var(&Symbol::matrix(i, j))
    }

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_is_empty() {
        let x = a(1, 1);
        let z = &x + &(-&x);
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn zeroth_power_is_one() {
        let f = p("f1_1*A1_1 + f1_2*A1_2");
        assert_eq!(f.arith(ArithOp::Pow(0)).unwrap(), MPoly::one());
        assert!(f.arith(ArithOp::Pow(-1)).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let (x1, x2) = (a(1, 1), a(2, 2));
        let lhs = &(&x1 + &x2) * &(&x1 - &x2);
        assert_eq!(lhs, p("A1_1^2 - A2_2^2"));
        assert_eq!(lhs.arith(ArithOp::Neg).unwrap(), p("A2_2^2 - A1_1^2"));
        assert_eq!(x1.arith(ArithOp::Scale(&rat(1, 2))).unwrap(), p("1/2*A1_1"));
        assert_eq!(x1.arith(ArithOp::Add(&x2)).unwrap(), p("A2_2 + A1_1"));
        assert_eq!(x1.arith(ArithOp::Mul(&x2)).unwrap(), p("A1_1*A2_2"));
    }

    #[test]
    fn derivative_of_trace_square() {
        let tr2 = p("A1_1^2 + 2*A1_2*A2_1 + A2_2^2");
        assert_eq!(tr2.derivative(&Symbol::matrix(1, 1)), p("2*A1_1"));
        assert!(p("7/3").derivative(&Symbol::matrix(1, 1)).is_zero());
        assert!(p("A1_1^2").derivative(&Symbol::matrix(1, 2)).is_zero());
    }

    #[test]
    fn evaluate_restrictions() {
        let tr2 = p("A1_1^2 + 2*A1_2*A2_1 + A2_2^2");
        let zero: Vec<_> = [(1, 1), (1, 2), (2, 1), (2, 2)]
            .iter()
            .map(|&(i, j)| (Symbol::matrix(i, j), MPoly::zero()))
            .collect();
        assert!(tr2.substitute(&zero).is_zero());

        let det = p("f1_1*f2_2 - f1_2*f2_1");
        let s = |i, j| Symbol::coeff(i, &[j]).unwrap();
        let v = det.substitute(&[
            (s(1, 1), MPoly::one()),
            (s(1, 2), MPoly::zero()),
            (s(2, 1), MPoly::zero()),
            (s(2, 2), MPoly::one()),
        ]);
        assert_eq!(v, MPoly::one());
    }

    #[test]
    fn partial_evaluation_keeps_free_symbols() {
        let q = p("A1_1*A1_2 + A2_2");
        let r = q.substitute(&[(Symbol::matrix(1, 1), p("2 + A2_1"))]);
        assert_eq!(r, p("2*A1_2 + A2_1*A1_2 + A2_2"));
    }

    #[test]
    fn graded_component_of_exponential_expansion() {
        let e = p("1 - t1 + 1/2*t1^2 - 1/2*t2");
        let w = |s: &Symbol| match s {
            Symbol::TVar(g) => Some(vec![g[0]]),
            _ => None,
        };
        assert_eq!(e.graded_component(w, &[2]).unwrap(), p("1/2*t1^2 - 1/2*t2"));
        assert!(e.graded_component(w, &[7]).unwrap().is_zero());
        let total: MPoly = (0..3).map(|k| e.graded_component(w, &[k]).unwrap()).sum();
        assert_eq!(total, e);
        assert!(p("A1_1").graded_component(w, &[1]).is_err());
    }

    #[test]
    fn degree_range_by_namespace() {
        let q = p("f1_1^2*f2_1 + f1_2*f2_2^3");
        let in_first = |s: &Symbol| matches!(s, Symbol::Coeff { poly: 1, .. });
        assert_eq!(q.degree_range(in_first), Some((1, 2)));
        assert_eq!(q.total_degree(), Some(4));
    }
}
