//! Multinomial expansion of `f_i(y_1, .., y_n)^k` in formal row variables.

use std::collections::BTreeMap;

use num_traits::One;

use crate::poly::{MPoly, Rational};
use crate::system::{index_exponents, HomogeneousPoly};

/// Coefficients of `f^k` keyed by the exponent vector of `y_1..y_n`. Read
/// with `y_j = d/dA_{ij}` this is the operator `f_i(d/dA_i.)^k` acting on row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOperatorExpansion {
    power: u32,
    entries: BTreeMap<Vec<u32>, MPoly>,
}

impl RowOperatorExpansion {
    pub fn power(&self) -> u32 {
        self.power
    }

    /// Coefficient of `y^e`; zero when absent.
    pub fn coeff(&self, e: &[u32]) -> Option<&MPoly> {
        self.entries.get(e)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &MPoly)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiplies by one more factor of `p`.
    fn times(&self, p: &HomogeneousPoly) -> RowOperatorExpansion {
        let n = p.nvars();
        let factors: Vec<(Vec<u32>, &MPoly)> =
            p.coeffs().map(|(idx, c)| (index_exponents(n, idx), c)).collect();
        let mut entries: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
        for (e, c) in &self.entries {
            for (g, d) in &factors {
                let key: Vec<u32> = e.iter().zip(g).map(|(a, b)| a + b).collect();
                entries.entry(key).or_default().add_product(c, d, &Rational::one());
            }
        }
        entries.retain(|_, c| !c.is_zero());
        RowOperatorExpansion { power: self.power + 1, entries }
    }
}

/// `p^k` as a polynomial in formal row variables; `k = 0` gives `{0 -> 1}`.
pub fn row_operator_expansion(p: &HomogeneousPoly, k: u32) -> RowOperatorExpansion {
    row_operator_powers(p, k).pop().expect("at least the zeroth power")
}

/// Expansions of `p^0, p^1, .., p^k`.
pub fn row_operator_powers(p: &HomogeneousPoly, k: u32) -> Vec<RowOperatorExpansion> {
    let mut entries = BTreeMap::new();
    entries.insert(vec![0; p.nvars() as usize], MPoly::one());
    let mut out = vec![RowOperatorExpansion { power: 0, entries }];
    for _ in 0..k {
        let next = out.last().expect("nonempty").times(p);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::PolySystem;

    #[test]
    fn binary_quadratic() {
        let s = PolySystem::symbolic(&[2, 2]).unwrap();
        let f = s.poly(0);
        let one = row_operator_expansion(f, 1);
        let shown: Vec<(Vec<u32>, String)> = one.entries().map(|(e, c)| (e.clone(), c.to_string())).collect();
        assert_eq!(
            shown,
            [(vec![0, 2], "f1_22".to_string()), (vec![1, 1], "f1_12".into()), (vec![2, 0], "f1_11".into())]
        );
        let two = row_operator_expansion(f, 2);
        assert_eq!(two.coeff(&[2, 2]).unwrap().to_string(), "2*f1_11*f1_22 + f1_12^2");
        assert_eq!(two.len(), 5);
        let zero = row_operator_expansion(f, 0);
        assert_eq!(zero.len(), 1);
        assert_eq!(zero.coeff(&[0, 0]), Some(&MPoly::one()));
    }

    #[test]
    fn numeric_and_zero_polynomials() {
        let mut p = HomogeneousPoly::new(2, 1).unwrap();
        p.set(&[1], MPoly::one()).unwrap();
        p.set(&[2], MPoly::from_int(-1)).unwrap();
        assert_eq!(row_operator_expansion(&p, 2).len(), 3);
        let z = HomogeneousPoly::new(2, 3).unwrap();
        assert!(row_operator_expansion(&z, 2).is_empty());
    }
}
