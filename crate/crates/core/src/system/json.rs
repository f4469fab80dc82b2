//! JSON interchange for [`PolySystem`].
//!
//! ```json
//! {"n": 2, "degrees": [2, 2], "mode": "numeric",
//!  "polynomials": [{"monomials": [{"index": [1, 1], "coeff": "3/2"}]},
//!                  {"symbolic": true}]}
//! ```
//!
//! Coefficients are strings in the canonical polynomial text form, so exact
//! rationals never pass through floating point. Omitted monomials are zero.
//! A `{"symbolic": true}` entry stands for the generic polynomial; in
//! `symbolic` mode the whole `polynomials` array may be omitted.

use serde::{Deserialize, Serialize};

use super::{HomogeneousPoly, PolySystem};
use crate::error::{Error, Result};
use crate::poly::MPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Numeric,
    Mixed,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    n: u32,
    degrees: Vec<u32>,
    mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polynomials: Option<Vec<PolyDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    symbolic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    monomials: Option<Vec<MonomialDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialDoc {
    index: Vec<u32>,
    coeff: String,
}

pub fn from_json(text: &str) -> Result<PolySystem> {
    let doc: SystemDoc =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed system document: {e}")))?;
    if doc.n as usize != doc.degrees.len() {
        return Err(Error::invalid(format!(
            "n = {} but {} degrees were given",
            doc.n,
            doc.degrees.len()
        )));
    }
    let Some(polys) = doc.polynomials else {
        return match doc.mode {
            Mode::Symbolic => PolySystem::symbolic(&doc.degrees),
            m => Err(Error::invalid(format!("mode {m:?} requires a `polynomials` array"))),
        };
    };
    if polys.len() != doc.degrees.len() {
        return Err(Error::invalid(format!(
            "{} polynomials given for {} degrees",
            polys.len(),
            doc.degrees.len()
        )));
    }
    let mut out = Vec::with_capacity(polys.len());
    for (i, (pd, &r)) in polys.into_iter().zip(&doc.degrees).enumerate() {
        let label = i + 1;
        let p = match (pd.symbolic, pd.monomials) {
            (true, None) => {
                if doc.mode == Mode::Numeric {
                    return Err(Error::invalid(format!("polynomial {label} is symbolic in numeric mode")));
                }
                HomogeneousPoly::symbolic(label as u32, doc.n, r)?
            }
            (true, Some(_)) => {
                return Err(Error::invalid(format!(
                    "polynomial {label} is marked symbolic and also lists monomials"
                )))
            }
            (false, monomials) => {
                if doc.mode == Mode::Symbolic {
                    return Err(Error::invalid(format!(
                        "polynomial {label} lists monomials in symbolic mode"
                    )));
                }
                let mut p = HomogeneousPoly::new(doc.n, r)?;
                for m in monomials.unwrap_or_default() {
                    if p.coeffs.contains_key(&m.index) {
                        return Err(Error::invalid(format!(
                            "polynomial {label} repeats index {:?}",
                            m.index
                        )));
                    }
                    let c: MPoly = m.coeff.parse()?;
                    if doc.mode == Mode::Numeric && !c.is_constant() {
                        return Err(Error::invalid(format!(
                            "polynomial {label}: coefficient `{}` is not a rational",
                            m.coeff
                        )));
                    }
                    p.set(&m.index, c)
                        .map_err(|e| Error::invalid(format!("polynomial {label}: {e}")))?;
                }
                p
            }
        };
        out.push(p);
    }
    PolySystem::new(out)
}

pub fn to_json_value(system: &PolySystem) -> serde_json::Value {
    let all_symbolic = system
        .polys()
        .iter()
        .enumerate()
        .all(|(i, p)| p.is_symbolic_form(i as u32 + 1));
    let n = system.n() as u32;
    let doc = if all_symbolic {
        SystemDoc { n, degrees: system.degrees().to_vec(), mode: Mode::Symbolic, polynomials: None }
    } else {
        let mode = if system.is_numeric() { Mode::Numeric } else { Mode::Mixed };
        let polynomials = system
            .polys()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if mode == Mode::Mixed && p.is_symbolic_form(i as u32 + 1) {
                    PolyDoc { symbolic: true, monomials: None }
                } else {
                    let monomials = p
                        .coeffs()
                        .map(|(idx, c)| MonomialDoc { index: idx.clone(), coeff: c.to_string() })
                        .collect();
                    PolyDoc { symbolic: false, monomials: Some(monomials) }
                }
            })
            .collect();
        SystemDoc { n, degrees: system.degrees().to_vec(), mode, polynomials: Some(polynomials) }
    };
    serde_json::to_value(doc).expect("system document serializes")
}

pub fn to_json(system: &PolySystem) -> String {
    to_json_value(system).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn symbolic_doc_without_polynomials() {
        let s = from_json(r#"{"n":2,"degrees":[1,1],"mode":"symbolic"}"#).unwrap();
        assert_eq!(s, PolySystem::symbolic(&[1, 1]).unwrap());
        assert_eq!(to_json(&s), r#"{"n":2,"degrees":[1,1],"mode":"symbolic"}"#);
    }

    #[test]
    fn numeric_rational_coefficient() {
        let s = from_json(
            r#"{"n":2,"degrees":[2,1],"mode":"numeric","polynomials":[
                {"monomials":[{"index":[1,1],"coeff":"3/2"}]},
                {"monomials":[{"index":[2],"coeff":"-1"}]}]}"#,
        )
        .unwrap();
        assert_eq!(s.poly(0).coeff(&[1, 1]).as_constant(), Some(rat(3, 2)));
        assert!(s.poly(0).coeff(&[1, 2]).is_zero());
        assert_eq!(from_json(&to_json(&s)).unwrap(), s);
    }

    #[test]
    fn mixed_round_trip() {
        let s = from_json(
            r#"{"n":2,"degrees":[1,2],"mode":"mixed","polynomials":[
                {"symbolic":true},
                {"monomials":[{"index":[1,2],"coeff":"2*f1_1 + 1/3"}]}]}"#,
        )
        .unwrap();
        assert!(s.poly(0).is_symbolic_form(1));
        assert_eq!(from_json(&to_json(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_invalid_documents() {
        let cases = [
            r#"{"n":2,"degrees":[1,1],"mode":"symbolic""#,
            r#"{"n":3,"degrees":[1,1],"mode":"symbolic"}"#,
            r#"{"n":2,"degrees":[2,2],"mode":"numeric","polynomials":[{"monomials":[{"index":[2,1],"coeff":"1"}]},{}]}"#,
            r#"{"n":2,"degrees":[2,2],"mode":"numeric","polynomials":[{"monomials":[{"index":[1,3],"coeff":"1"}]},{}]}"#,
            r#"{"n":2,"degrees":[2,2],"mode":"numeric","polynomials":[{"monomials":[{"index":[1],"coeff":"1"}]},{}]}"#,
            r#"{"n":2,"degrees":[1,1],"mode":"numeric","polynomials":[{"monomials":[{"index":[1],"coeff":"f1_1"}]},{}]}"#,
            r#"{"n":2,"degrees":[1,1],"mode":"numeric","polynomials":[{"monomials":[{"index":[1],"coeff":"0.5"}]},{}]}"#,
            r#"{"n":2,"degrees":[1,1],"mode":"numeric"}"#,
            r#"{"n":2,"degrees":[1,1],"mode":"numeric","polynomials":[{}]}"#,
            r#"{"n":2,"degrees":[1,1],"mode":"numeric","extra":1}"#,
            r#"{"n":2,"degrees":[1,1],"mode":"numeric","polynomials":[{"monomials":[{"index":[1],"coeff":"1"},{"index":[1],"coeff":"2"}]},{}]}"#,
        ];
        for c in cases {
            assert!(from_json(c).is_err(), "accepted {c}");
        }
    }
}
