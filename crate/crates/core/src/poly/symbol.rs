//! Namespaced variables and the process-wide symbol table.
//!
//! Polynomials store compact [`SymId`] handles; the full [`Symbol`] is only
//! consulted when ordering terms canonically or rendering text.

use std::fmt;

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// A variable of the polynomial ring. All indices are 1-based.
///
/// The derived ordering is the canonical symbol order: namespace first
/// (coefficients, then matrix entries, then t-variables), then indices
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Coefficient of polynomial `poly` at the sorted multi-index `index`.
    Coeff { poly: u32, index: Vec<u32> },
    /// Entry `A_{row,col}` of the auxiliary matrix.
    Matrix { row: u32, col: u32 },
    /// Abstract Schur argument `t_k` (scalar grading) or `t_{k1..kn}`.
    TVar(Vec<u32>),
}

impl Symbol {
    /// Coefficient symbol; the multi-index is sorted into canonical form.
    pub fn coeff(poly: u32, index: &[u32]) -> Result<Self> {
        if poly == 0 || index.contains(&0) {
            return Err(Error::invalid("coefficient symbol indices are 1-based"));
        }
        let mut index = index.to_vec();
        index.sort_unstable();
        Ok(Symbol::Coeff { poly, index })
    }

    pub fn matrix(row: u32, col: u32) -> Self {
        debug_assert!(row > 0 && col > 0);
        Symbol::Matrix { row, col }
    }

    pub fn t(grading: &[u32]) -> Self {
        Symbol::TVar(grading.to_vec())
    }

    pub fn id(&self) -> SymId {
        intern(self)
    }
}

fn write_index(f: &mut fmt::Formatter<'_>, index: &[u32]) -> fmt::Result {
    if index.iter().all(|&i| i < 10) {
        for i in index {
            write!(f, "{i}")?;
        }
    } else {
        for (pos, i) in index.iter().enumerate() {
            if pos > 0 {
                f.write_str(".")?;
            }
            write!(f, "{i}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Coeff { poly, index } => {
                write!(f, "f{poly}_")?;
                write_index(f, index)
            }
            Symbol::Matrix { row, col } => write!(f, "A{row}_{col}"),
            Symbol::TVar(g) => {
                f.write_str("t")?;
                for (pos, k) in g.iter().enumerate() {
                    if pos > 0 {
                        f.write_str("_")?;
                    }
                    write!(f, "{k}")?;
                }
                Ok(())
            }
        }
    }
}

/// Interned handle for a [`Symbol`]. Handle order is insertion order, not
/// canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymId(u32);

impl SymId {
    pub fn symbol(self) -> Symbol {
        TABLE.read().symbols[self.0 as usize].clone()
    }
}

impl From<&Symbol> for SymId {
    fn from(s: &Symbol) -> Self {
        intern(s)
    }
}

impl From<Symbol> for SymId {
    fn from(s: Symbol) -> Self {
        intern(&s)
    }
}

#[derive(Default)]
struct SymbolTable {
    symbols: Vec<Symbol>,
    ids: FxHashMap<Symbol, SymId>,
}

static TABLE: Lazy<RwLock<SymbolTable>> = Lazy::new(|| RwLock::new(SymbolTable::default()));

fn intern(s: &Symbol) -> SymId {
    if let Some(&id) = TABLE.read().ids.get(s) {
        return id;
    }
    let mut table = TABLE.write();
    if let Some(&id) = table.ids.get(s) {
        return id;
    }
    let id = SymId(u32::try_from(table.symbols.len()).expect("symbol table overflow"));
    table.symbols.push(s.clone());
    table.ids.insert(s.clone(), id);
    id
}

/// Resolves many handles under a single lock acquisition.
pub(crate) fn resolve_all(ids: impl IntoIterator<Item = SymId>) -> FxHashMap<SymId, Symbol> {
    let table = TABLE.read();
    ids.into_iter()
        .map(|id| (id, table.symbols[id.0 as usize].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_index_is_sorted() {
        let s = Symbol::coeff(2, &[2, 1, 1]).unwrap();
        assert_eq!(s, Symbol::Coeff { poly: 2, index: vec![1, 1, 2] });
        assert_eq!(s.to_string(), "f2_112");
    }

    #[test]
    fn namespace_order() {
        let c = Symbol::coeff(9, &[9]).unwrap();
        let a = Symbol::matrix(1, 1);
        let t = Symbol::t(&[1]);
        assert!(c < a && a < t);
        assert!(Symbol::coeff(1, &[2, 2]).unwrap() < Symbol::coeff(2, &[1, 1]).unwrap());
        assert!(Symbol::coeff(1, &[1, 2]).unwrap() < Symbol::coeff(1, &[2, 2]).unwrap());
    }

    #[test]
    fn interning_is_stable() {
        let s = Symbol::matrix(3, 2);
        assert_eq!(s.id(), s.clone().id());
        assert_eq!(s.id().symbol(), s);
        assert_eq!(s.to_string(), "A3_2");
        assert_eq!(Symbol::t(&[2, 1]).to_string(), "t2_1");
        assert_eq!(Symbol::coeff(1, &[10, 2]).unwrap().to_string(), "f1_2.10");
    }

    #[test]
    fn zero_index_rejected() {
        assert!(Symbol::coeff(0, &[1]).is_err());
        assert!(Symbol::coeff(1, &[0]).is_err());
    }
}
