//! Multigraded traces by exponent-matrix enumeration.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use parking_lot::Mutex;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::rows::{row_operator_powers, RowOperatorExpansion};
use super::walks::{factorial, walk_count, ExponentMatrix};
use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational};
use crate::system::PolySystem;

/// Default cap on the number of exponent-matrix candidates per trace.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// The system-independent part of one trace `T_k`: every balanced,
/// connected exponent matrix `E` with row sums `r_i k_i`, and its weight
///
/// `prod r_i / prod (r_i k_i)! / m * walk_count(E) * prod E_ij!`.
///
/// The trace of a concrete system is `sum_E weight * prod_i c_i(E row i)`
/// with `c_i` the coefficients of `f_i^{k_i}` in row variables.
#[derive(Debug, Clone)]
pub struct TracePlan {
    n: usize,
    kvec: Vec<u32>,
    /// Row-major entries of `E`, sorted lexicographically.
    terms: Vec<(Vec<u32>, Rational)>,
    candidates: u128,
}

/// Number of exponent vectors of length `n` summing to `s`.
fn compositions(n: usize, s: u32) -> u128 {
    let (top, k) = (u128::from(s) + n as u128 - 1, n as u128 - 1);
    (1..=k).fold(1u128, |acc, i| acc.saturating_mul(top - k + i) / i)
}

/// Predicted size of the candidate enumeration for `kvec`.
pub fn candidate_estimate(degrees: &[u32], kvec: &[u32]) -> u128 {
    let n = degrees.len();
    degrees
        .iter()
        .zip(kvec)
        .fold(1u128, |acc, (&r, &k)| acc.saturating_mul(compositions(n, r * k)))
}

fn check_grading(degrees: &[u32], kvec: &[u32]) -> Result<()> {
    if kvec.len() != degrees.len() {
        return Err(Error::invalid(format!(
            "grading vector {kvec:?} has {} entries, the system has {} polynomials",
            kvec.len(),
            degrees.len()
        )));
    }
    if kvec.iter().all(|&k| k == 0) {
        return Err(Error::invalid("the zero grading vector has no trace (t_0 = 0 by convention)"));
    }
    Ok(())
}

impl TracePlan {
    pub fn build(degrees: &[u32], kvec: &[u32], cap: u128) -> Result<Self> {
        check_grading(degrees, kvec)?;
        let candidates = candidate_estimate(degrees, kvec);
        if candidates > cap {
            return Err(Error::BudgetExceeded {
                what: "trace exponent-matrix enumeration".into(),
                estimate: candidates,
                cap,
                grading: Some(kvec.to_vec()),
            });
        }
        let n = degrees.len();
        let sums: Vec<u32> = degrees.iter().zip(kvec).map(|(r, k)| r * k).collect();
        let m: u32 = sums.iter().sum();
        let mut prefactor = Rational::from_integer(degrees.iter().map(|&r| BigUint::from(r)).product::<BigUint>().into());
        let denom: BigUint = sums.iter().map(|&s| factorial(s)).product::<BigUint>() * m;
        prefactor /= Rational::from_integer(denom.into());

        let mut terms = Vec::new();
        let mut e = ExponentMatrix::zero(n);
        let mut cols = vec![0u32; n];
        let mut visit = |e: &ExponentMatrix| {
            if !e.is_connected() {
                return;
            }
            let w = walk_count(e);
            if w.is_zero() {
                return;
            }
            let w = Rational::from_integer((w * e.factorial_product()).into()) * &prefactor;
            let entries = (0..n).flat_map(|i| e.row(i).to_vec()).collect();
            terms.push((entries, w));
        };
        enumerate_rows(&mut e, 0, &sums, &mut cols, &mut visit);
        Ok(TracePlan { n, kvec: kvec.to_vec(), terms, candidates })
    }

    pub fn kvec(&self) -> &[u32] {
        &self.kvec
    }

    /// Number of contributing exponent matrices.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Size of the enumeration the plan was built from.
    pub fn candidates(&self) -> u128 {
        self.candidates
    }

    pub fn terms(&self) -> impl Iterator<Item = (ExponentMatrix, &Rational)> {
        let n = self.n;
        self.terms.iter().map(move |(entries, w)| {
            let rows: Vec<Vec<u32>> = entries.chunks(n).map(<[u32]>::to_vec).collect();
            (ExponentMatrix::from_rows(&rows).expect("square"), w)
        })
    }

    /// Evaluates against row expansions; `rows[i]` must be `f_i^{k_i}`.
    pub fn evaluate(&self, rows: &[&RowOperatorExpansion]) -> MPoly {
        debug_assert!(rows.iter().zip(&self.kvec).all(|(r, &k)| r.power() == k));
        self.eval_level(0, &self.terms, rows)
    }

    /// Terms sharing the first `level` rows are grouped (they are sorted), so
    /// each row coefficient multiplies the sum over all completions once.
    fn eval_level(&self, level: usize, terms: &[(Vec<u32>, Rational)], rows: &[&RowOperatorExpansion]) -> MPoly {
        let n = self.n;
        let span = level * n..(level + 1) * n;
        let mut out = MPoly::zero();
        let mut start = 0;
        while start < terms.len() {
            let key = &terms[start].0[span.clone()];
            let end = start + terms[start..].iter().take_while(|t| &t.0[span.clone()] == key).count();
            if let Some(c) = rows[level].coeff(key) {
                if level + 1 == n {
                    for (_, w) in &terms[start..end] {
                        out.add_scaled(c, w);
                    }
                } else {
                    let inner = self.eval_level(level + 1, &terms[start..end], rows);
                    out.add_product(c, &inner, &Rational::one());
                }
            }
            start = end;
        }
        out
    }
}

/// Fills rows `i..` of `e` with the given row sums, keeping every column
/// sum at most its target; the last row is forced by the column targets.
fn enumerate_rows(
    e: &mut ExponentMatrix,
    i: usize,
    sums: &[u32],
    cols: &mut [u32],
    visit: &mut impl FnMut(&ExponentMatrix),
) {
    let n = sums.len();
    if i + 1 == n {
        for j in 0..n {
            e.set(i, j, sums[j] - cols[j]);
        }
        visit(e);
        return;
    }
    fill_row(e, i, 0, sums[i], sums, cols, visit);
}

fn fill_row(
    e: &mut ExponentMatrix,
    i: usize,
    j: usize,
    left: u32,
    sums: &[u32],
    cols: &mut [u32],
    visit: &mut impl FnMut(&ExponentMatrix),
) {
    let n = sums.len();
    if j + 1 == n {
        if cols[j] + left > sums[j] {
            return;
        }
        e.set(i, j, left);
        cols[j] += left;
        enumerate_rows(e, i + 1, sums, cols, visit);
        cols[j] -= left;
        return;
    }
    let most = left.min(sums[j] - cols[j]);
    for v in 0..=most {
        e.set(i, j, v);
        cols[j] += v;
        fill_row(e, i, j + 1, left - v, sums, cols, visit);
        cols[j] -= v;
    }
}

/// Traces `T_k` keyed by grading vector, plus the aggregated `T_k` by total degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceTable {
    multi: BTreeMap<Vec<u32>, MPoly>,
    single: BTreeMap<u32, MPoly>,
}

impl TraceTable {
    pub fn get(&self, kvec: &[u32]) -> Option<&MPoly> {
        self.multi.get(kvec)
    }

    pub fn aggregated(&self, k: u32) -> Option<&MPoly> {
        self.single.get(&k)
    }

    pub fn multigraded(&self) -> &BTreeMap<Vec<u32>, MPoly> {
        &self.multi
    }

    pub fn aggregated_all(&self) -> &BTreeMap<u32, MPoly> {
        &self.single
    }

    pub fn insert(&mut self, kvec: Vec<u32>, t: MPoly) {
        self.multi.insert(kvec, t);
    }

    /// Fills `T_k = k * sum_{|kvec| = k} T_kvec` for every `k` whose
    /// gradings are all present.
    pub fn aggregate(&mut self, n: usize, kmax: u32) {
        for k in 1..=kmax {
            let gradings = gradings_of_total(n, k);
            if gradings.iter().all(|g| self.multi.contains_key(g)) {
                let mut t = MPoly::zero();
                for g in &gradings {
                    t += &self.multi[g];
                }
                self.single.insert(k, t.scale(&Rational::from_integer(k.into())));
            }
        }
    }
}

/// Nonzero gradings `kvec` with `kvec <= bound` componentwise, in lexicographic order.
pub fn gradings_below(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&k| k > 0));
    out
}

/// Gradings of length `n` with entries summing to `k`, in lexicographic order.
pub fn gradings_of_total(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Computes traces for one degree vector, caching the system-independent
/// plans so that many systems with the same degrees share them.
#[derive(Debug)]
pub struct TraceEngine {
    degrees: Vec<u32>,
    cap: u128,
    plans: Mutex<FxHashMap<Vec<u32>, Arc<TracePlan>>>,
}

impl TraceEngine {
    pub fn new(degrees: &[u32], cap: u128) -> Result<Self> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::invalid("degrees must be a nonempty list of positive integers"));
        }
        if cap == 0 {
            return Err(Error::invalid("trace budget must be at least 1"));
        }
        Ok(TraceEngine { degrees: degrees.to_vec(), cap, plans: Mutex::new(FxHashMap::default()) })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    /// Refuses up front if any of `gradings` is over budget, naming the
    /// largest offender.
    pub fn check_budget(&self, gradings: &[Vec<u32>]) -> Result<()> {
        let worst = gradings
            .iter()
            .map(|g| (candidate_estimate(&self.degrees, g), g))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)));
        match worst {
            Some((est, g)) if est > self.cap => Err(Error::BudgetExceeded {
                what: "trace exponent-matrix enumeration".into(),
                estimate: est,
                cap: self.cap,
                grading: Some(g.clone()),
            }),
            _ => Ok(()),
        }
    }

    pub fn plan(&self, kvec: &[u32]) -> Result<Arc<TracePlan>> {
        if let Some(p) = self.plans.lock().get(kvec) {
            return Ok(p.clone());
        }
        let plan = Arc::new(TracePlan::build(&self.degrees, kvec, self.cap)?);
        self.plans.lock().insert(kvec.to_vec(), plan.clone());
        Ok(plan)
    }

    fn check_system(&self, system: &PolySystem) -> Result<()> {
        if system.degrees() != self.degrees.as_slice() {
            return Err(Error::invalid(format!(
                "system degrees {:?} do not match the engine's {:?}",
                system.degrees(),
                self.degrees
            )));
        }
        Ok(())
    }

    pub fn trace(&self, system: &PolySystem, kvec: &[u32]) -> Result<MPoly> {
        self.check_system(system)?;
        check_grading(&self.degrees, kvec)?;
        let plan = self.plan(kvec)?;
        let rows: Vec<RowOperatorExpansion> = system
            .polys()
            .iter()
            .zip(kvec)
            .map(|(p, &k)| row_operator_powers(p, k).pop().expect("nonempty"))
            .collect();
        Ok(plan.evaluate(&rows.iter().collect::<Vec<_>>()))
    }

    /// All traces for `gradings`, evaluated on `jobs` worker threads.
    pub fn table(&self, system: &PolySystem, gradings: &[Vec<u32>], jobs: usize) -> Result<TraceTable> {
        self.check_system(system)?;
        for g in gradings {
            check_grading(&self.degrees, g)?;
        }
        self.check_budget(gradings)?;
        let n = self.degrees.len();
        let kmax: Vec<u32> = (0..n).map(|i| gradings.iter().map(|g| g[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<RowOperatorExpansion>> =
            system.polys().iter().zip(&kmax).map(|(p, &k)| row_operator_powers(p, k)).collect();
        let one = |g: &Vec<u32>| -> Result<(Vec<u32>, MPoly)> {
            let plan = self.plan(g)?;
            let rows: Vec<&RowOperatorExpansion> = (0..n).map(|i| &powers[i][g[i] as usize]).collect();
            Ok((g.clone(), plan.evaluate(&rows)))
        };
        let computed: Vec<(Vec<u32>, MPoly)> = if jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
            pool.install(|| gradings.par_iter().map(one).collect::<Result<Vec<_>>>())?
        } else {
            gradings.iter().map(one).collect::<Result<Vec<_>>>()?
        };
        let mut table = TraceTable::default();
        for (g, t) in computed {
            table.insert(g, t);
        }
        Ok(table)
    }
}

/// `T_kvec(f)` with the default budget.
pub fn multigraded_trace(system: &PolySystem, kvec: &[u32]) -> Result<MPoly> {
    TraceEngine::new(system.degrees(), DEFAULT_BUDGET)?.trace(system, kvec)
}

/// `T_k(f) = k * sum_{|kvec| = k} T_kvec(f)` with the default budget.
pub fn aggregated_trace(system: &PolySystem, k: u32) -> Result<MPoly> {
    if k == 0 {
        return Err(Error::invalid("aggregated traces start at k = 1"));
    }
    let engine = TraceEngine::new(system.degrees(), DEFAULT_BUDGET)?;
    let gradings = gradings_of_total(system.n(), k);
    let mut table = engine.table(system, &gradings, 1)?;
    table.aggregate(system.n(), k);
    Ok(table.aggregated(k).cloned().expect("all gradings computed"))
}
