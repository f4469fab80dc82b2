#![allow(dead_code)]

use std::collections::BTreeMap;

use tracelog::poly::{int, MPoly, Rational, Symbol};
use tracelog::schur::{schur_poly, SchurMethod};

const GOLDENS: &str = include_str!("../data/goldens.txt");

/// Named reference polynomials from `tests/data/goldens.txt`.
pub fn golden(name: &str) -> MPoly {
    let mut lines = GOLDENS.lines();
    while let Some(line) = lines.next() {
        if line.strip_prefix("== ") == Some(name) {
            let body = lines.next().unwrap_or_else(|| panic!("golden `{name}` has no body"));
            return body.parse().unwrap_or_else(|e| panic!("golden `{name}` does not parse: {e}"));
        }
    }
    panic!("no golden named `{name}`")
}

pub fn golden_names() -> Vec<&'static str> {
    GOLDENS.lines().filter_map(|l| l.strip_prefix("== ")).collect()
}

pub fn p(s: &str) -> MPoly {
    s.parse().unwrap_or_else(|e| panic!("`{s}`: {e}"))
}

/// `(-1)^d P_d{t_k := -t_k / k}` written in the symbols `t1, t2, ..`.
pub fn determinant_from_traces(d: u32) -> MPoly {
    let t: BTreeMap<u32, MPoly> = (1..=d)
        .map(|k| (k, MPoly::var(&Symbol::t(&[k])).scale(&-Rational::new(1.into(), k.into()))))
        .collect();
    let pd = schur_poly(d, &t, SchurMethod::Recurrence).unwrap();
    if d.is_multiple_of(2) {
        pd
    } else {
        pd.scale(&-int(1))
    }
}

/// Splits `p` by total degree.
pub fn components_by_degree(p: &MPoly) -> BTreeMap<u32, MPoly> {
    let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
    for (m, c) in p.iter() {
        out.entry(m.degree()).or_insert_with(MPoly::zero).add_term(m.clone(), c.clone());
    }
    out
}

/// Every degree vector with `n <= max_n` entries in `1..=max_r`.
pub fn degree_vectors(max_n: usize, max_r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut d = vec![1u32; n];
        loop {
            out.push(d.clone());
            let Some(i) = d.iter().position(|&r| r < max_r) else { break };
            d[..i].iter_mut().for_each(|r| *r = 1);
            d[i] += 1;
        }
    }
    out
}
