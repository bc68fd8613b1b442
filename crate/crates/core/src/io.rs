//! JSON input and output for complexes.

use serde::{Deserialize, Serialize};

use crate::chain::{OrientationCharacter, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: Vec<u32>,
    simplices: Vec<Vec<Vec<u32>>>,
    #[serde(default)]
    signs: Vec<(usize, usize, i8)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

pub(crate) fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

/// A complex read from a file, with its sign data if any was given.
#[derive(Clone, Debug)]
pub struct LoadedComplex {
    pub name: Option<String>,
    pub complex: SimplicialComplex,
    /// `None` when the file lists no signs.
    pub character: Option<OrientationCharacter>,
}

/// Reads `{vertices, simplices, signs}`. A sign entry
/// `[simplex, face, ±1]` indexes simplices in the order listed, counting
/// through dimension 0 first, then 1, and so on.
pub fn parse_complex(text: &str) -> Result<LoadedComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(format_err)?;
    let listed: Vec<Simplex> = file.simplices.iter().flatten().cloned().collect();
    let mut incidences = Vec::with_capacity(file.signs.len());
    for &(s, i, sign) in &file.signs {
        let simplex = listed.get(s).ok_or_else(|| {
            Error::Format(format!(
                "sign entry refers to simplex {s} of {}",
                listed.len()
            ))
        })?;
        if sign != 1 && sign != -1 {
            return Err(Error::Format(format!("sign {sign} is not +1 or -1")));
        }
        incidences.push((simplex.clone(), i, sign));
    }
    let complex = SimplicialComplex::new(file.vertices, file.simplices)?;
    let character = if file.signs.is_empty() {
        None
    } else {
        Some(OrientationCharacter::from_incidences(
            &complex,
            &incidences,
        )?)
    };
    Ok(LoadedComplex {
        name: file.name,
        complex,
        character,
    })
}

/// Writes a complex in canonical order, listing only the `-1` signs.
pub fn complex_to_json(
    name: &str,
    k: &SimplicialComplex,
    w: Option<&OrientationCharacter>,
) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!(
        "  \"name\": {},\n",
        serde_json::to_string(name).unwrap()
    ));
    out.push_str(&format!(
        "  \"vertices\": {},\n",
        serde_json::to_string(k.vertices()).unwrap()
    ));
    out.push_str("  \"simplices\": [\n");
    let top = k.dim().map_or(0, |d| d + 1);
    for d in 0..top {
        let sep = if d + 1 == top { "" } else { "," };
        out.push_str(&format!(
            "    {}{sep}\n",
            serde_json::to_string(k.simplices(d)).unwrap()
        ));
    }
    out.push_str("  ]");
    if let Some(w) = w {
        let mut signs = Vec::new();
        let mut offset = 0;
        for d in 0..top {
            if d > 0 {
                for idx in 0..k.count(d) {
                    for i in 0..=d {
                        if w.sign(d, idx, i) == -1 {
                            signs.push((offset + idx, i, -1));
                        }
                    }
                }
            }
            offset += k.count(d);
        }
        out.push_str(&format!(
            ",\n  \"signs\": {}",
            serde_json::to_string(&signs).unwrap()
        ));
    }
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_with_signs() {
        let k = crate::catalog::projective_plane();
        let w = OrientationCharacter::from_local_orientations(&k).unwrap();
        let text = complex_to_json("rp2", &k, Some(&w));
        let back = parse_complex(&text).unwrap();
        assert_eq!(back.complex, k);
        assert_eq!(back.character.unwrap(), w);
        assert_eq!(back.name.as_deref(), Some("rp2"));
    }

    #[test]
    fn sign_index_follows_input_order() {
        // Global index 2 is the edge, counted after the two vertices.
        let text = r#"{"vertices":[0,1],"simplices":[[[1],[0]],[[0,1]]],"signs":[[2,0,-1]]}"#;
        let k = parse_complex(text).unwrap();
        let w = k.character.unwrap();
        assert_eq!(w.sign(1, 0, 0), -1);
        assert_eq!(w.sign(1, 0, 1), 1);
    }

    #[test]
    fn malformed_input_is_a_format_error() {
        assert!(parse_complex("{").unwrap_err().is_format());
        assert!(
            parse_complex(r#"{"vertices":[0],"simplices":[[[0]]],"extra":1}"#)
                .unwrap_err()
                .is_format()
        );
        let bad_sign = r#"{"vertices":[0,1],"simplices":[[[0],[1]],[[0,1]]],"signs":[[2,0,2]]}"#;
        assert!(parse_complex(bad_sign).unwrap_err().is_format());
    }

    #[test]
    fn missing_face_is_structural() {
        let text = r#"{"vertices":[0,1],"simplices":[[[0]],[[0,1]]]}"#;
        assert!(matches!(parse_complex(text), Err(Error::Structure(_))));
    }
}
