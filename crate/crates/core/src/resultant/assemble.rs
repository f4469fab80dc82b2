//! Resultants assembled from trace tables.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational};
use crate::schur::{multi_schur, schur_poly, SchurMethod, TArgs};
use crate::system::{degree_data, DegreeData, PolySystem};
use crate::trace::{gradings_below, gradings_of_total, TraceEngine, TraceTable, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GradingMode {
    /// `R = (-1)^d P_d{t_k := -T_k / k}`.
    Single,
    /// `R = (-1)^{sum d_i} P_dvec{t_kvec := -T_kvec}`.
    #[default]
    Multi,
}

#[derive(Debug, Clone)]
pub struct ResultantOptions {
    pub mode: GradingMode,
    pub budget: u128,
    pub jobs: usize,
    pub schur_method: SchurMethod,
}

impl Default for ResultantOptions {
    fn default() -> Self {
        ResultantOptions { mode: GradingMode::Multi, budget: DEFAULT_BUDGET, jobs: 1, schur_method: SchurMethod::Recurrence }
    }
}

/// What the trace stage did.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub traces: usize,
    pub budget: u128,
    /// Largest candidate enumeration among the traces, with its grading.
    pub max_candidates: u128,
    pub max_candidates_grading: Vec<u32>,
    /// Total number of monomials over all traces.
    pub trace_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantResult {
    pub value: MPoly,
    pub degree_data: DegreeData,
    pub grading_mode: GradingMode,
    pub term_count: usize,
    pub trace_report: TraceReport,
}

/// Gradings whose traces `mode` needs.
pub fn required_gradings(degrees: &[u32], mode: GradingMode) -> Result<Vec<Vec<u32>>> {
    let dd = degree_data(degrees)?;
    Ok(match mode {
        GradingMode::Multi => gradings_below(&dd.d_vec),
        GradingMode::Single => (1..=dd.d_total).flat_map(|k| gradings_of_total(degrees.len(), k)).collect(),
    })
}

fn report(engine: &TraceEngine, table: &TraceTable) -> TraceReport {
    let (max_candidates, max_candidates_grading) = table
        .multigraded()
        .keys()
        .map(|g| (crate::trace::candidate_estimate(engine.degrees(), g), g.clone()))
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .unwrap_or_default();
    TraceReport {
        traces: table.multigraded().len(),
        budget: engine.cap(),
        max_candidates,
        max_candidates_grading,
        trace_terms: table.multigraded().values().map(MPoly::len).sum(),
    }
}

fn sign(d: u32) -> Rational {
    if d.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn resultant(system: &PolySystem, mode: GradingMode) -> Result<ResultantResult> {
    resultant_with(system, &ResultantOptions { mode, ..Default::default() })
}

pub fn resultant_with(system: &PolySystem, opts: &ResultantOptions) -> Result<ResultantResult> {
    let engine = TraceEngine::new(system.degrees(), opts.budget)?;
    resultant_using(&engine, system, opts)
}

/// As [`resultant_with`], reusing `engine`'s cached trace plans.
pub fn resultant_using(engine: &TraceEngine, system: &PolySystem, opts: &ResultantOptions) -> Result<ResultantResult> {
    let dd = degree_data(system.degrees())?;
    let gradings = required_gradings(system.degrees(), opts.mode)?;
    let mut table = engine.table(system, &gradings, opts.jobs)?;
    let value = match opts.mode {
        GradingMode::Multi => {
            let t: TArgs = table.multigraded().iter().map(|(g, p)| (g.clone(), -p)).collect();
            multi_schur(&dd.d_vec, &t, opts.schur_method)?.scale(&sign(dd.d_total))
        }
        GradingMode::Single => {
            table.aggregate(system.n(), dd.d_total);
            let t = single_args(&table, dd.d_total)?;
            schur_poly(dd.d_total, &t, opts.schur_method)?.scale(&sign(dd.d_total))
        }
    };
    Ok(ResultantResult {
        term_count: value.len(),
        trace_report: report(engine, &table),
        value,
        degree_data: dd,
        grading_mode: opts.mode,
    })
}

/// `t_k := -T_k / k` for `k = 1..=depth`.
fn single_args(table: &TraceTable, depth: u32) -> Result<BTreeMap<u32, MPoly>> {
    (1..=depth)
        .map(|k| {
            let tk = table
                .aggregated(k)
                .ok_or_else(|| Error::invalid(format!("aggregated trace T_{k} missing")))?;
            Ok((k, tk.scale(&-Rational::new(1.into(), k.into()))))
        })
        .collect()
}

/// `exp(-sum_kvec T_kvec)` truncated to total degree `depth` in the
/// coefficients: the expansion of the resultant of `x_i^{r_i} - f_i`.
pub fn deformed_expansion(system: &PolySystem, depth: u32, budget: u128) -> Result<MPoly> {
    let engine = TraceEngine::new(system.degrees(), budget)?;
    let gradings: Vec<Vec<u32>> = (1..=depth).flat_map(|k| gradings_of_total(system.n(), k)).collect();
    let mut table = engine.table(system, &gradings, 1)?;
    table.aggregate(system.n(), depth);
    let t = single_args(&table, depth)?;
    let mut t_full: TArgs = t.into_iter().map(|(k, p)| (vec![k], p)).collect();
    t_full.retain(|g, _| g[0] >= 1);
    let parts = crate::schur::series_exp(&[depth], &t_full)?;
    Ok(parts.into_values().sum())
}

/// `R(I - f)` up to the resultant's degree `d`; its degree-`d` part is
/// `(-1)^d R(f)` and its constant term is 1.
pub fn deformed_resultant(system: &PolySystem) -> Result<MPoly> {
    let dd = degree_data(system.degrees())?;
    deformed_expansion(system, dd.d_total, DEFAULT_BUDGET)
}

/// Exact value of the resultant at a numeric system, by running the whole
/// pipeline over rational constants.
pub fn solvability_probe(system: &PolySystem) -> Result<Rational> {
    let engine = TraceEngine::new(system.degrees(), DEFAULT_BUDGET)?;
    probe_using(&engine, system)
}

pub fn probe_using(engine: &TraceEngine, system: &PolySystem) -> Result<Rational> {
    if !system.is_numeric() {
        return Err(Error::invalid("the solvability probe needs a numeric system"));
    }
    let r = resultant_using(engine, system, &ResultantOptions { budget: engine.cap(), ..Default::default() })?;
    r.value
        .as_constant()
        .ok_or_else(|| Error::SymbolicCoefficient(r.value.to_string()))
}
