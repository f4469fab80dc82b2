use std::cmp::Ordering;

use smallvec::SmallVec;

use super::symbol::{SymId, Symbol};

/// Power product of interned symbols. Factors are kept sorted by handle and
/// never carry a zero exponent; the empty monomial is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(SymId, u32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(id: SymId, exp: u32) -> Self {
        let mut m = Monomial::one();
        if exp > 0 {
            m.0.push((id, exp));
        }
        m
    }

    /// Builds from arbitrary factors, merging repeats and dropping zero exponents.
    pub fn from_factors(factors: impl IntoIterator<Item = (SymId, u32)>) -> Self {
        let mut v: SmallVec<[(SymId, u32); 6]> = factors.into_iter().filter(|f| f.1 > 0).collect();
        v.sort_unstable_by_key(|f| f.0);
        let mut out: SmallVec<[(SymId, u32); 6]> = SmallVec::with_capacity(v.len());
        for (id, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == id => last.1 += e,
                _ => out.push((id, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(SymId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, id: SymId) -> u32 {
        self.0
            .binary_search_by_key(&id, |f| f.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(SymId, u32); 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes one power of `id`, returning the exponent it had.
    pub(crate) fn lower(&self, id: SymId) -> Option<(u32, Monomial)> {
        let pos = self.0.binary_search_by_key(&id, |f| f.0).ok()?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    /// Splits off the factors selected by `pred`, returning (selected, rest).
    pub(crate) fn partition(&self, mut pred: impl FnMut(SymId) -> bool) -> (Monomial, Monomial) {
        let mut hit = SmallVec::new();
        let mut rest = SmallVec::new();
        for &f in &self.0 {
            if pred(f.0) {
                hit.push(f);
            } else {
                rest.push(f);
            }
        }
        (Monomial(hit), Monomial(rest))
    }
}

/// Canonical order of resolved monomials (factors sorted by symbol): total
/// degree ascending, then lexicographic with the earliest symbol most
/// significant and higher powers first.
pub(crate) fn canonical_cmp(a: &[(Symbol, u32)], b: &[(Symbol, u32)]) -> Ordering {
    let da: u32 = a.iter().map(|f| f.1).sum();
    let db: u32 = b.iter().map(|f| f.1).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.0.cmp(&y.0) {
                Ordering::Less => return Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
                Ordering::Equal => match y.1.cmp(&x.1) {
                    Ordering::Equal => {}
                    other => return other,
                },
            }
        }
        b.len().cmp(&a.len())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: Symbol) -> SymId {
        s.id()
    }

    #[test]
    fn merge_and_degree() {
        let x = id(Symbol::matrix(1, 1));
        let y = id(Symbol::matrix(1, 2));
        let m = Monomial::from_factors([(x, 1), (y, 2), (x, 1), (y, 0)]);
        assert_eq!(m.degree(), 4);
        assert_eq!(m.exponent(x), 2);
        let p = m.mul(&Monomial::var(y, 3));
        assert_eq!(p.exponent(y), 5);
        let (e, low) = p.lower(x).unwrap();
        assert_eq!(e, 2);
        assert_eq!(low.exponent(x), 1);
        assert!(Monomial::var(x, 0).is_one());
    }

    #[test]
    fn canonical_order_matches_lex_with_first_symbol_dominant() {
        let a = Symbol::t(&[1]);
        let b = Symbol::t(&[2]);
        let t1t2 = vec![(a.clone(), 1), (b.clone(), 1)];
        let t1cubed = vec![(a.clone(), 3)];
        let t3 = vec![(Symbol::t(&[3]), 1)];
        assert_eq!(canonical_cmp(&t3, &t1t2), Ordering::Less);
        assert_eq!(canonical_cmp(&t1t2, &t1cubed), Ordering::Less);
        let a2 = vec![(a.clone(), 2)];
        let b2 = vec![(b.clone(), 2)];
        let ab = vec![(a, 1), (b, 1)];
        assert_eq!(canonical_cmp(&a2, &ab), Ordering::Less);
        assert_eq!(canonical_cmp(&ab, &b2), Ordering::Less);
    }
}
