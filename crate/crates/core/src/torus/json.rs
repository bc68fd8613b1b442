//! JSON form of torus chains and bi-chains, with rationals as `"num/den"`
//! strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::format_err;
use crate::rational::{format_q, parse_q};
use crate::torus::bichain::{BiChain, BiTerm};
use crate::torus::simplex::{AffineSimplex, LoopFamily, TorusChain};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    winding: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BiTermJson {
    coef: i64,
    left: FamilyJson,
    right: FamilyJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BiChainJson {
    n: usize,
    terms: Vec<BiTermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainTermJson {
    coef: i64,
    family: FamilyJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainJson {
    n: usize,
    degree: usize,
    terms: Vec<ChainTermJson>,
}

fn family_from_json(n: usize, f: FamilyJson) -> Result<LoopFamily> {
    let vertices = f
        .vertices
        .iter()
        .map(|v| v.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let base = AffineSimplex::new(vertices).map_err(|e| Error::Format(e.to_string()))?;
    if base.ambient() != n {
        return Err(Error::Format(format!(
            "vertex of length {} on T^{n}",
            base.ambient()
        )));
    }
    let winding = f.winding.unwrap_or_else(|| vec![0; n]);
    LoopFamily::new(base, winding).map_err(|e| Error::Format(e.to_string()))
}

fn family_to_json(f: &LoopFamily) -> FamilyJson {
    FamilyJson {
        vertices: f
            .base
            .vertices
            .iter()
            .map(|v| v.iter().map(format_q).collect())
            .collect(),
        winding: f.winding.iter().any(|&w| w != 0).then(|| f.winding.clone()),
    }
}

pub fn parse_bichain(text: &str) -> Result<BiChain> {
    let raw: BiChainJson = serde_json::from_str(text).map_err(format_err)?;
    if raw.n == 0 {
        return Err(Error::Format("torus dimension must be positive".into()));
    }
    let mut b = BiChain::zero(raw.n);
    for t in raw.terms {
        b.add(BiTerm {
            coef: t.coef,
            left: family_from_json(raw.n, t.left)?,
            right: family_from_json(raw.n, t.right)?,
        })?;
    }
    Ok(b)
}

pub fn bichain_to_json(b: &BiChain) -> String {
    let raw = BiChainJson {
        n: b.n(),
        terms: b
            .terms()
            .map(|t| BiTermJson {
                coef: t.coef,
                left: family_to_json(&t.left),
                right: family_to_json(&t.right),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

pub fn parse_torus_chain(text: &str) -> Result<TorusChain> {
    let raw: ChainJson = serde_json::from_str(text).map_err(format_err)?;
    if raw.n == 0 {
        return Err(Error::Format("torus dimension must be positive".into()));
    }
    let mut c = TorusChain::zero(raw.n, raw.degree);
    for t in raw.terms {
        let f = family_from_json(raw.n, t.family)?;
        c.add(t.coef, f).map_err(|e| Error::Format(e.to_string()))?;
    }
    Ok(c)
}

pub fn torus_chain_to_json(c: &TorusChain) -> String {
    let raw = ChainJson {
        n: c.n(),
        degree: c.degree(),
        terms: c
            .terms()
            .map(|(f, coef)| ChainTermJson {
                coef,
                family: family_to_json(f),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const CROSSING: &str = r#"{
        "n": 1,
        "terms": [
            {"coef": 1, "left": {"vertices": [["0"], ["2/3"]]}, "right": {"vertices": [["1/3"], ["5/6"]], "winding": [1]}}
        ]
    }"#;

    #[test]
    fn round_trip() {
        let b = parse_bichain(CROSSING).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(parse_bichain(&bichain_to_json(&b)).unwrap(), b);
    }

    #[test]
    fn malformed_input_is_a_format_error() {
        for bad in [
            "{",
            r#"{"n": 1, "terms": [{"coef": 1, "left": {"vertices": [["x"]]}, "right": {"vertices": [["0"]]}}]}"#,
            r#"{"n": 2, "terms": [{"coef": 1, "left": {"vertices": [["0"]]}, "right": {"vertices": [["0"]]}}]}"#,
            r#"{"n": 1, "terms": [], "extra": 0}"#,
        ] {
            assert!(parse_bichain(bad).unwrap_err().is_format(), "{bad}");
        }
    }
}
