//! The `check` subcommand: small oracle cross-checks, one line per case.

use num_traits::Zero;
use serde_json::{json, Value};

use tracelog::poly::Rational;
use tracelog::resultant::{
    coefficient_matrix, deformed_expansion, determinant_special, leibniz_determinant, probe_using, relative_sign,
    resultant, sylvester_resultant, GradingMode,
};
use tracelog::system::{degree_data, force_common_root, random_dense, PolySystem};
use tracelog::trace::{gradings_below, multigraded_trace, naive_trace_oracle, TraceEngine, DEFAULT_BUDGET};

use crate::{document, Doc};

type Outcome = Result<String, String>;
type Case = (&'static str, String, Box<dyn Fn() -> Outcome>);

fn symbolic(degrees: &[u32]) -> Result<PolySystem, String> {
    PolySystem::symbolic(degrees).map_err(|e| e.to_string())
}

fn value(degrees: &[u32], mode: GradingMode) -> Result<tracelog::MPoly, String> {
    resultant(&symbolic(degrees)?, mode).map(|r| r.value).map_err(|e| e.to_string())
}

fn sylvester(degrees: &[u32]) -> Outcome {
    let r = value(degrees, GradingMode::Multi)?;
    let s = sylvester_resultant(&symbolic(degrees)?).map_err(|e| e.to_string())?;
    match relative_sign(&r, &s) {
        Some(eps) => Ok(format!("sign {eps:+}")),
        None => Err("differs from the Sylvester determinant beyond sign".into()),
    }
}

fn determinant(n: usize) -> Outcome {
    let s = symbolic(&vec![1; n])?;
    let m = coefficient_matrix(&s).map_err(|e| e.to_string())?;
    let r = value(&vec![1; n], GradingMode::Multi)?;
    let special = determinant_special(&m).map_err(|e| e.to_string())?;
    let leibniz = leibniz_determinant(&m).map_err(|e| e.to_string())?;
    if r == special && r == leibniz {
        Ok(format!("{} terms", r.len()))
    } else {
        Err("resultant, trace determinant and Leibniz determinant disagree".into())
    }
}

fn modes(degrees: &[u32]) -> Outcome {
    if value(degrees, GradingMode::Single)? == value(degrees, GradingMode::Multi)? {
        Ok("single = multi".into())
    } else {
        Err("single and multi modes disagree".into())
    }
}

fn naive(degrees: &[u32], max_m: u32) -> Outcome {
    let s = symbolic(degrees)?;
    let bound: Vec<u32> = degrees.iter().map(|r| max_m / r).collect();
    let mut count = 0;
    for k in gradings_below(&bound) {
        let m: u32 = degrees.iter().zip(&k).map(|(r, k)| r * k).sum();
        if m > max_m {
            continue;
        }
        let a = multigraded_trace(&s, &k).map_err(|e| e.to_string())?;
        let b = naive_trace_oracle(&s, &k).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("grading {k:?} differs from the naive oracle"));
        }
        count += 1;
    }
    Ok(format!("{count} gradings"))
}

fn probes(degrees: &[u32], samples: u64, seed: u64) -> Outcome {
    let engine = TraceEngine::new(degrees, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let root: Vec<Rational> = (1..=degrees.len() as i64).map(|i| Rational::from_integer(i.into())).collect();
    for s in seed..seed + samples {
        let forced = force_common_root(degrees, &root, s).map_err(|e| e.to_string())?;
        let v = probe_using(&engine, &forced).map_err(|e| e.to_string())?;
        if !v.is_zero() {
            return Err(format!("forced-root system with seed {s} gives {v}"));
        }
        let dense = random_dense(degrees, s).map_err(|e| e.to_string())?;
        if probe_using(&engine, &dense).map_err(|e| e.to_string())?.is_zero() {
            return Err(format!("dense system with seed {s} gives 0"));
        }
    }
    Ok(format!("{samples} forced roots vanish, {samples} dense systems do not"))
}

fn deformed(degrees: &[u32]) -> Outcome {
    let d = degree_data(degrees).map_err(|e| e.to_string())?.d_total;
    let e = deformed_expansion(&symbolic(degrees)?, d + 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    if let Some(k) = e.iter().map(|(m, _)| m.degree()).find(|&k| k > d) {
        return Err(format!("component of degree {k} > {d}"));
    }
    let constant = e.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c.clone());
    if constant != Some(Rational::from_integer(1.into())) {
        return Err("constant term is not 1".into());
    }
    Ok(format!("polynomial of degree {d}"))
}

pub(crate) fn run(samples: u64, seed: u64, json_out: bool) -> (Doc, usize) {
    let mut cases: Vec<Case> = Vec::new();
    for d in [[1, 1], [1, 2], [2, 2], [2, 3], [3, 3]] {
        cases.push(("sylvester", format!("{d:?}"), Box::new(move || sylvester(&d))));
    }
    for n in 1..=3 {
        cases.push(("determinant", format!("n = {n}"), Box::new(move || determinant(n))));
    }
    for d in [&[1u32, 1][..], &[2, 2], &[1, 1, 1], &[1, 2]] {
        cases.push(("modes", format!("{d:?}"), Box::new(move || modes(d))));
    }
    for d in [&[2u32, 2][..], &[2, 3], &[1, 1, 1], &[1, 2, 2]] {
        cases.push(("naive-trace", format!("{d:?}"), Box::new(move || naive(d, 7))));
    }
    for d in [&[1u32, 1][..], &[2, 2], &[2, 3], &[1, 1, 1]] {
        cases.push(("probe", format!("{d:?}"), Box::new(move || probes(d, samples, seed))));
    }
    for d in [&[1u32, 1][..], &[2, 2]] {
        cases.push(("deformed", format!("{d:?}"), Box::new(move || deformed(d))));
    }

    let mut failed = 0;
    let mut lines = Vec::new();
    let mut results = Vec::new();
    for (suite, case, f) in &cases {
        let outcome = f();
        let passed = outcome.is_ok();
        if !passed {
            failed += 1;
        }
        let detail = outcome.unwrap_or_else(|e| e);
        lines.push(format!("{} {suite} {case}: {detail}", if passed { "PASS" } else { "FAIL" }));
        results.push(json!({"suite": suite, "case": case, "passed": passed, "detail": detail}));
    }
    let doc = if json_out {
        Doc::Json(document(
            "check",
            json!({"passed": failed == 0, "failed": failed, "results": Value::Array(results)}),
        ))
    } else {
        Doc::Text(lines.join("\n"))
    };
    (doc, failed)
}
