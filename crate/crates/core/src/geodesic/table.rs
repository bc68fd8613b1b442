use std::collections::BTreeMap;

use serde::Serialize;

use crate::chain::{GroupSummary, HomologySummary};
use crate::error::Result;
use crate::geodesic::gysin::{gysin_unit_tangent_homology, UnitTangentHomology};
use crate::geodesic::page::{page_entries, Entry};
use crate::geodesic::spec::{bott_index, CrossSpec};

/// One total degree of the associated graded of `H_*(Λ; ev₀*(Z_or))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub degree: usize,
    pub group: GroupSummary,
    /// Columns `p` of the filtration contributing a nonzero group.
    pub columns: Vec<usize>,
}

/// Truncated series with coefficients in finitely generated groups: the
/// free rank series and, per prime power, the count of cyclic summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupSeries {
    pub free: Vec<usize>,
    pub torsion: BTreeMap<u64, Vec<usize>>,
}

impl GroupSeries {
    fn zero(len: usize) -> Self {
        GroupSeries {
            free: vec![0; len],
            torsion: BTreeMap::new(),
        }
    }

    fn add_group(&mut self, k: usize, g: &GroupSummary) {
        let len = self.free.len();
        if k >= len {
            return;
        }
        self.free[k] += g.free_rank;
        for &d in &g.torsion {
            for q in prime_powers(d) {
                self.torsion.entry(q).or_insert_with(|| vec![0; len])[k] += 1;
            }
        }
    }

    fn of(h: &HomologySummary, len: usize) -> Self {
        let mut s = Self::zero(len);
        for (k, g) in h.degrees.iter().enumerate() {
            s.add_group(k, g);
        }
        s
    }

    /// `self · Σ_e t^e` for the given exponents, truncated.
    fn times_monomials(&self, exponents: &[usize]) -> Self {
        let len = self.free.len();
        let shift = |v: &[usize]| {
            let mut out = vec![0; len];
            for &e in exponents {
                for (k, &c) in v.iter().enumerate() {
                    if k + e < len {
                        out[k + e] += c;
                    }
                }
            }
            out
        };
        GroupSeries {
            free: shift(&self.free),
            torsion: self.torsion.iter().map(|(&d, v)| (d, shift(v))).collect(),
        }
    }

    fn plus(&self, other: &Self) -> Self {
        let add =
            |a: &[usize], b: &[usize]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        let mut torsion = self.torsion.clone();
        for (&d, v) in &other.torsion {
            let e = torsion.entry(d).or_insert_with(|| vec![0; v.len()]);
            *e = add(e, v);
        }
        torsion.retain(|_, v| v.iter().any(|&c| c != 0));
        GroupSeries {
            free: add(&self.free, &other.free),
            torsion,
        }
    }

    fn normalized(mut self) -> Self {
        self.torsion.retain(|_, v| v.iter().any(|&c| c != 0));
        self
    }
}

fn prime_powers(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= d {
        let mut q = 1;
        while d % f == 0 {
            d /= f;
            q *= f;
        }
        if q > 1 {
            out.push(q);
        }
        f += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    /// Read off the table.
    pub table: GroupSeries,
    /// `P_M(t) + Σ_{p≥1} t^{α_p} P_UM(t)`.
    pub formula: GroupSeries,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedTable {
    pub name: String,
    pub max_degree: usize,
    pub rows: Vec<TableRow>,
    pub series: SeriesCheck,
    /// Whether the rows equal the sums of `E^∞` entries along total degree.
    pub matches_page: bool,
}

fn contributions(
    spec: &CrossSpec,
    um: &UnitTangentHomology,
    k: usize,
) -> Vec<(usize, GroupSummary)> {
    let mut out = Vec::new();
    if k <= spec.n {
        out.push((0, spec.hm.get(k)));
    }
    let mut p = 1;
    loop {
        let a = bott_index(spec, p);
        if a > k {
            break;
        }
        out.push((p, um.groups.get(k - a)));
        p += 1;
    }
    out
}

/// Sums of page entries along total degree `k = p + q + n`, from a page
/// whose columns reach far enough.
fn from_page(
    spec: &CrossSpec,
    entries: &BTreeMap<(usize, i64), Entry>,
    max_degree: usize,
) -> Vec<GroupSummary> {
    let mut rows = vec![GroupSummary::default(); max_degree + 1];
    for (&(p, q), e) in entries {
        let k = p as i64 + q + spec.n as i64;
        if (0..=max_degree as i64).contains(&k) {
            let mut g = GroupSummary::default();
            for &d in &e.orders {
                g = g.direct_sum(&GroupSummary::cyclic(d));
            }
            rows[k as usize] = rows[k as usize].direct_sum(&g);
        }
    }
    rows
}

/// The associated graded of loop homology by total (unregraded) degree up
/// to `max_degree`, with the contributing filtration columns.
pub fn loop_homology_table(spec: &CrossSpec, max_degree: usize) -> Result<GradedTable> {
    let um = gysin_unit_tangent_homology(spec)?;
    let len = max_degree + 1;
    let mut rows = Vec::with_capacity(len);
    let mut table = GroupSeries::zero(len);
    for k in 0..=max_degree {
        let mut group = GroupSummary::default();
        let mut columns = Vec::new();
        for (p, g) in contributions(spec, &um, k) {
            if !g.is_zero() {
                columns.push(p);
                group = group.direct_sum(&g);
            }
        }
        table.add_group(k, &group);
        rows.push(TableRow {
            degree: k,
            group,
            columns,
        });
    }
    let table = table.normalized();
    let alphas: Vec<usize> = (1..)
        .map(|p| bott_index(spec, p))
        .take_while(|&a| a <= max_degree)
        .collect();
    let formula = GroupSeries::of(&spec.hm, len)
        .plus(&GroupSeries::of(&um.groups, len).times_monomials(&alphas))
        .normalized();
    // Enough columns that every α_p <= max_degree is present.
    let pmax = alphas.len().max(1);
    let entries = page_entries(spec, &um, pmax);
    let summed = from_page(spec, &entries, max_degree);
    let matches_page = rows.iter().zip(&summed).all(|(r, g)| r.group == *g);
    Ok(GradedTable {
        name: spec.name.clone(),
        max_degree,
        series: SeriesCheck {
            holds: table == formula,
            table,
            formula,
        },
        rows,
        matches_page,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> CrossSpec {
        CrossSpec {
            name: "S2".into(),
            n: 2,
            orientable: true,
            alpha1: 1,
            hm: HomologySummary {
                degrees: vec![
                    GroupSummary::free(1),
                    GroupSummary::default(),
                    GroupSummary::free(1),
                ],
            },
            euler: Some(2),
            hum: None,
            gysin_module: Vec::new(),
            m_products: Vec::new(),
            um_products: Vec::new(),
        }
    }

    #[test]
    fn s2_table() {
        let t = loop_homology_table(&s2(), 6).unwrap();
        let free: Vec<usize> = t.rows.iter().map(|r| r.group.free_rank).collect();
        assert_eq!(free, vec![1; 7]);
        let torsion: Vec<usize> = t
            .rows
            .iter()
            .filter(|r| r.group.torsion == vec![2])
            .map(|r| r.degree)
            .collect();
        assert_eq!(torsion, vec![2, 4, 6]);
        assert!(t.series.holds);
        assert!(t.matches_page);
    }

    #[test]
    fn degree_zero_only() {
        let t = loop_homology_table(&s2(), 0).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].group, GroupSummary::free(1));
        assert_eq!(t.rows[0].columns, vec![0]);
    }
}
