use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::{GroupSummary, HomologySummary};
use crate::error::{Error, Result};
use crate::io::format_err;

/// Which ring a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    /// `H_*(M; Z_or)`.
    Base,
    /// `H_*(UM; Z)`.
    UnitTangent,
}

/// The `index`-th canonical generator of `H_degree`, written `m2.0` or
/// `u3.1` with the unregraded degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub space: Space,
    pub degree: usize,
    pub index: usize,
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.space {
            Space::Base => 'm',
            Space::UnitTangent => 'u',
        };
        write!(f, "{c}{}.{}", self.degree, self.index)
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("not a generator name: {s:?}"));
        let space = match s.chars().next() {
            Some('m') => Space::Base,
            Some('u') => Space::UnitTangent,
            _ => return Err(bad()),
        };
        let (d, i) = s[1..].split_once('.').ok_or_else(bad)?;
        Ok(GeneratorId {
            space,
            degree: d.parse().map_err(|_| bad())?,
            index: i.parse().map_err(|_| bad())?,
        })
    }
}

fn group_list<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<HomologySummary, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    let degrees = raw
        .iter()
        .map(|s| s.parse::<GroupSummary>())
        .collect::<Result<Vec<_>>>()
        .map_err(serde::de::Error::custom)?;
    Ok(HomologySummary { degrees })
}

fn opt_group_list<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Option<HomologySummary>, D::Error> {
    group_list(d).map(Some)
}

fn write_groups<S: serde::Serializer>(
    h: &HomologySummary,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(h.degrees.iter().map(|g| g.to_string()))
}

fn write_opt_groups<S: serde::Serializer>(
    h: &Option<HomologySummary>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    write_groups(h.as_ref().expect("skipped when absent"), s)
}

/// A linear combination of generators of one degree, by name.
pub type Combination = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GysinEntry {
    pub source: String,
    pub value: Combination,
}

/// A closed manifold all of whose primitive geodesics are simple closed
/// loops of one length, described by its homology data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossSpec {
    pub name: String,
    pub n: usize,
    pub orientable: bool,
    /// Index of a primitive closed geodesic.
    pub alpha1: usize,
    /// `H_*(M; Z_or)` in degrees `0..=n`.
    #[serde(deserialize_with = "group_list", serialize_with = "write_groups")]
    pub hm: HomologySummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<i64>,
    /// `H_*(UM; Z)` in degrees `0..2n`.
    #[serde(
        default,
        deserialize_with = "opt_group_list",
        serialize_with = "write_opt_groups",
        skip_serializing_if = "Option::is_none"
    )]
    pub hum: Option<HomologySummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gysin_module: Vec<GysinEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub m_products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub um_products: Vec<ProductEntry>,
}

impl CrossSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: CrossSpec = serde_json::from_str(text).map_err(format_err)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n < 2 {
            return Err(Error::Structure(format!(
                "{}: dimension {n} is not supported, the iterates of a geodesic on a circle do not form a unit tangent bundle",
                self.name
            )));
        }
        if self.hm.degrees.len() != n + 1 {
            return Err(Error::Structure(format!(
                "{}: hm must list degrees 0..={n}",
                self.name
            )));
        }
        if self.hm.get(n) != GroupSummary::free(1) {
            return Err(Error::Structure(format!(
                "{}: H_{n}(M; Z_or) must be Z",
                self.name
            )));
        }
        if self.orientable {
            if self.hm.get(0) != GroupSummary::free(1) {
                return Err(Error::Structure(format!(
                    "{}: H_0 of a connected manifold is Z",
                    self.name
                )));
            }
            // Poincaré duality: free ranks symmetric, torsion T_k = T_{n-1-k}.
            for k in 0..=n {
                if self.hm.get(k).free_rank != self.hm.get(n - k).free_rank {
                    return Err(Error::Structure(format!(
                        "{}: hm violates duality in degree {k}",
                        self.name
                    )));
                }
                if k < n && self.hm.get(k).torsion != self.hm.get(n - 1 - k).torsion {
                    return Err(Error::Structure(format!(
                        "{}: hm torsion violates duality in degree {k}",
                        self.name
                    )));
                }
            }
        }
        if self.euler.is_none() && self.hum.is_none() {
            return Err(Error::MissingData(format!(
                "{}: either euler or hum is required",
                self.name
            )));
        }
        if let Some(h) = &self.hum {
            if h.degrees.len() != 2 * n {
                return Err(Error::Structure(format!(
                    "{}: hum must list degrees 0..{}",
                    self.name,
                    2 * n
                )));
            }
            if h.get(0) != GroupSummary::free(1) || h.get(2 * n - 1).free_rank == 0 {
                return Err(Error::Structure(format!(
                    "{}: the unit tangent bundle must be connected and orientable",
                    self.name
                )));
            }
        }
        if let Some(chi) = self.euler {
            if !self.orientable {
                return Err(Error::Structure(format!(
                    "{}: an Euler number needs an orientable manifold",
                    self.name
                )));
            }
            let alternating: i64 = self
                .hm
                .degrees
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    if k % 2 == 0 {
                        g.free_rank as i64
                    } else {
                        -(g.free_rank as i64)
                    }
                })
                .sum();
            if alternating != chi {
                return Err(Error::Structure(format!(
                    "{}: euler {chi} differs from the alternating rank sum {alternating}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Generators of `H_k` of the given space, in canonical order.
    pub fn orders(&self, space: Space, k: usize) -> Vec<u64> {
        match space {
            Space::Base => self.hm.get(k).orders(),
            Space::UnitTangent => self
                .hum
                .as_ref()
                .map(|h| h.get(k).orders())
                .unwrap_or_default(),
        }
    }
}

/// `α_p = pα₁ + (p-1)(n-1)` for `p >= 1`, and `α₀ = 0`.
pub fn bott_index(spec: &CrossSpec, p: usize) -> usize {
    if p == 0 {
        0
    } else {
        p * spec.alpha1 + (p - 1) * (spec.n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: usize, alpha1: usize) -> CrossSpec {
        let mut hm = vec![GroupSummary::default(); n + 1];
        hm[0] = GroupSummary::free(1);
        hm[n] = GroupSummary::free(1);
        CrossSpec {
            name: format!("S{n}"),
            n,
            orientable: true,
            alpha1,
            hm: HomologySummary { degrees: hm },
            euler: Some(if n % 2 == 0 { 2 } else { 0 }),
            hum: None,
            gysin_module: Vec::new(),
            m_products: Vec::new(),
            um_products: Vec::new(),
        }
    }

    #[test]
    fn bott_indices() {
        assert_eq!(bott_index(&sphere(3, 2), 0), 0);
        assert_eq!(bott_index(&sphere(3, 2), 3), 10);
        assert_eq!(bott_index(&sphere(2, 1), 1), 1);
    }

    #[test]
    fn json_round_trip() {
        let s = sphere(2, 1);
        let back = CrossSpec::parse(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn circle_is_rejected() {
        let mut s = sphere(2, 1);
        s.n = 1;
        s.hm.degrees.pop();
        assert!(matches!(s.validate(), Err(Error::Structure(_))));
    }

    #[test]
    fn generator_names() {
        let g: GeneratorId = "u3.1".parse().unwrap();
        assert_eq!(g.space, Space::UnitTangent);
        assert_eq!(g.to_string(), "u3.1");
        assert!("x1.0".parse::<GeneratorId>().is_err());
    }
}
