use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::complex::ChainComplexZ;
use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, IntMatrix};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_m`
/// with `d₁ | d₂ | … | d_m` and every `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSummary {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupSummary {
    pub fn free(rank: usize) -> Self {
        GroupSummary {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => Self::free(1),
            1 => Self::default(),
            d => GroupSummary {
                free_rank: 0,
                torsion: vec![d],
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic generators in the canonical presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Orders of the canonical generators, free ones first (order 0).
    pub fn orders(&self) -> Vec<u64> {
        let mut v = vec![0; self.free_rank];
        v.extend(&self.torsion);
        v
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|&d| d >= 2) && self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// Direct sum, returned in canonical (invariant factor) form.
    pub fn direct_sum(&self, other: &GroupSummary) -> GroupSummary {
        let mut all = self.torsion.clone();
        all.extend(&other.torsion);
        GroupSummary {
            free_rank: self.free_rank + other.free_rank,
            torsion: invariant_factors(&all),
        }
    }
}

/// Rewrites a list of cyclic orders as invariant factors.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let n = orders.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, &d) in orders.iter().enumerate() {
        m[(i, i)] = i64::try_from(d).expect("torsion order out of range");
    }
    smith_normal_form(&m)
        .diagonal()
        .into_iter()
        .filter(|&d| d >= 2)
        .map(|d| d as u64)
        .collect()
}

impl fmt::Display for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

impl std::str::FromStr for GroupSummary {
    type Err = Error;

    /// Parses the `Display` form: `0`, `Z`, `Z^2+Z/2`, `Z/2+Z/4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Format(format!("not a group: {s:?}"));
        if s == "0" {
            return Ok(GroupSummary::default());
        }
        let mut free_rank = 0;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                free_rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free_rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: u64 = d.parse().map_err(|_| bad())?;
                if d < 2 {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(GroupSummary {
            free_rank,
            torsion: invariant_factors(&orders),
        })
    }
}

/// Per-degree groups, indexed from degree 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologySummary {
    pub degrees: Vec<GroupSummary>,
}

impl HomologySummary {
    pub fn get(&self, k: usize) -> GroupSummary {
        self.degrees.get(k).cloned().unwrap_or_default()
    }

    pub fn free_ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.free_rank).collect()
    }
}

/// `ker(out) / im(inc)` with a chosen cyclic basis.
///
/// Generators are listed free first, then torsion in divisibility order.
/// `coordinates` inverts `representative` modulo the boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    ambient: usize,
    out: IntMatrix,
    generators: Vec<Vec<i64>>,
    orders: Vec<u64>,
    to_coords: IntMatrix,
}

impl Subquotient {
    /// `out` has `ambient` columns; `inc` has `ambient` rows and satisfies `out·inc = 0`.
    pub fn new(out: &IntMatrix, inc: &IntMatrix) -> Self {
        let ambient = out.cols();
        debug_assert_eq!(inc.rows(), ambient);
        let s1 = smith_normal_form(out);
        let r = s1.rank();
        // Coordinates on the kernel lattice spanned by columns r.. of V.
        let ker_coords = s1.v_inv.row_slice(r);
        let b = ker_coords.mul(inc);
        let s2 = smith_normal_form(&b);
        let diag = s2.diagonal();
        let kdim = ambient - r;
        let mut entries: Vec<(u64, usize)> = Vec::new();
        for i in 0..kdim {
            let d = diag.get(i).copied().unwrap_or(0);
            if d != 1 {
                entries.push((d as u64, i));
            }
        }
        // Free first, then torsion ascending (SNF order already ascending).
        entries.sort_by_key(|&(d, i)| (d != 0, i));
        let mut generators = Vec::with_capacity(entries.len());
        let mut rows = Vec::with_capacity(entries.len());
        for &(_, i) in &entries {
            let col = s2.u_inv.column(i);
            let g: Vec<i64> = (0..ambient)
                .map(|a| (0..kdim).map(|j| s1.v[(a, r + j)] * col[j]).sum())
                .collect();
            generators.push(g);
            let urow = s2.u.row(i);
            let row: Vec<i64> = (0..ambient)
                .map(|a| (0..kdim).map(|j| urow[j] * ker_coords[(j, a)]).sum())
                .collect();
            rows.push(row);
        }
        let to_coords = if rows.is_empty() {
            IntMatrix::zeros(0, ambient)
        } else {
            IntMatrix::from_rows(&rows)
        };
        Subquotient {
            ambient,
            out: out.clone(),
            generators,
            orders: entries.iter().map(|&(d, _)| d).collect(),
            to_coords,
        }
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            free_rank: self.orders.iter().filter(|&&d| d == 0).count(),
            torsion: self.orders.iter().copied().filter(|&d| d != 0).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Order of each generator; 0 for free generators.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generator(&self, i: usize) -> &[i64] {
        &self.generators[i]
    }

    /// Reduces coordinates modulo the torsion orders.
    pub fn normalize(&self, coords: &mut [i64]) {
        for (c, &d) in coords.iter_mut().zip(&self.orders) {
            if d != 0 {
                *c = c.rem_euclid(d as i64);
            }
        }
    }

    /// Coordinates of the class of a cycle.
    pub fn coordinates(&self, z: &[i64]) -> Result<Vec<i64>> {
        if z.len() != self.ambient {
            return Err(Error::Structure(format!(
                "chain has {} entries, expected {}",
                z.len(),
                self.ambient
            )));
        }
        if self.out.mul_vec(z).iter().any(|&x| x != 0) {
            return Err(Error::NotACycle("nonzero boundary".into()));
        }
        let mut c = self.to_coords.mul_vec(z);
        self.normalize(&mut c);
        Ok(c)
    }

    /// A cycle representing the class with the given coordinates.
    pub fn representative(&self, coords: &[i64]) -> Vec<i64> {
        let mut z = vec![0i64; self.ambient];
        for (g, &c) in self.generators.iter().zip(coords) {
            if c != 0 {
                for (a, &x) in z.iter_mut().zip(g) {
                    *a += c * x;
                }
            }
        }
        z
    }
}

/// Homology or cohomology of a chain complex with a basis in every degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degrees: Vec<Subquotient>,
}

impl GradedBasis {
    pub fn summary(&self) -> HomologySummary {
        HomologySummary {
            degrees: self.degrees.iter().map(Subquotient::summary).collect(),
        }
    }

    pub fn degree(&self, k: usize) -> &Subquotient {
        &self.degrees[k]
    }
}

pub fn homology_basis(c: &ChainComplexZ) -> GradedBasis {
    let degrees = (0..c.ranks.len())
        .map(|k| Subquotient::new(&c.boundary(k), &c.boundary(k + 1)))
        .collect();
    GradedBasis { degrees }
}

pub fn cohomology_basis(c: &ChainComplexZ) -> GradedBasis {
    let degrees = (0..c.ranks.len())
        .map(|k| {
            let inc = if k == 0 {
                IntMatrix::zeros(c.ranks[0], 0)
            } else {
                c.coboundary(k - 1)
            };
            Subquotient::new(&c.coboundary(k), &inc)
        })
        .collect();
    GradedBasis { degrees }
}

pub fn homology(c: &ChainComplexZ) -> HomologySummary {
    homology_basis(c).summary()
}

pub fn cohomology(c: &ChainComplexZ) -> HomologySummary {
    cohomology_basis(c).summary()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::complex::{validate_complex, OrientationCharacter, SimplicialComplex};

    #[test]
    fn sphere_homology() {
        let k = SimplicialComplex::from_facets(&[
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        let c = validate_complex(&k, &OrientationCharacter::trivial(&k)).unwrap();
        let h = homology(&c);
        assert_eq!(
            h.degrees,
            vec![
                GroupSummary::free(1),
                GroupSummary::default(),
                GroupSummary::free(1)
            ]
        );
        assert_eq!(cohomology(&c), h);
    }

    #[test]
    fn group_strings() {
        for text in ["0", "Z", "Z^3", "Z/2", "Z+Z/2+Z/4"] {
            let g: GroupSummary = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
        }
        let g: GroupSummary = "Z/2+Z/3".parse().unwrap();
        assert_eq!(g, GroupSummary::cyclic(6));
        assert!("Z/1".parse::<GroupSummary>().is_err());
        assert!("Q".parse::<GroupSummary>().is_err());
    }

    #[test]
    fn torsion_coordinates_reduce() {
        // Z --2--> Z: a single Z/2.
        let out = IntMatrix::zeros(0, 1);
        let inc = IntMatrix::from_rows(&[vec![2]]);
        let s = Subquotient::new(&out, &inc);
        assert_eq!(s.summary(), GroupSummary::cyclic(2));
        assert_eq!(s.coordinates(&[3]).unwrap(), vec![1]);
        assert_eq!(s.coordinates(&[4]).unwrap(), vec![0]);
    }

    #[test]
    fn representative_roundtrip() {
        // Z^3 with boundaries spanned by (2,2,0): Z^2 + Z/2.
        let out = IntMatrix::zeros(0, 3);
        let inc = IntMatrix::from_rows(&[vec![2], vec![2], vec![0]]);
        let s = Subquotient::new(&out, &inc);
        assert_eq!(s.summary().free_rank, 2);
        assert_eq!(s.summary().torsion, vec![2]);
        for coords in [vec![1, 0, 0], vec![0, -3, 1], vec![5, 2, 1]] {
            let z = s.representative(&coords);
            let mut want = coords.clone();
            s.normalize(&mut want);
            assert_eq!(s.coordinates(&z).unwrap(), want);
        }
    }

    #[test]
    fn display_groups() {
        assert_eq!(GroupSummary::default().to_string(), "0");
        assert_eq!(
            GroupSummary {
                free_rank: 2,
                torsion: vec![2, 4]
            }
            .to_string(),
            "Z^2+Z/2+Z/4"
        );
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
    }
}
