use crate::chain::{GroupSummary, HomologySummary};
use crate::error::{Error, Result};
use crate::geodesic::spec::{CrossSpec, GeneratorId, Space};

/// `H_*(UM; Z)` with the Gysin morphism `H_k(M; Z_or) → H_{k+n-1}(UM; Z)`
/// on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitTangentHomology {
    pub groups: HomologySummary,
    /// `gysin[k][i]`: coordinates of the image of the `i`-th generator of
    /// `H_k(M)`, or `None` when neither the sequence nor the input fixes it.
    pub gysin: Vec<Vec<Option<Vec<i64>>>>,
}

impl UnitTangentHomology {
    pub fn image(&self, k: usize, i: usize) -> Result<&[i64]> {
        self.gysin[k][i].as_deref().ok_or_else(|| {
            Error::MissingData(format!(
                "Gysin image of {} is not determined; supply it in gysin_module",
                GeneratorId {
                    space: Space::Base,
                    degree: k,
                    index: i
                }
            ))
        })
    }
}

/// Short exact pieces `0 → sub_j → H_j(UM) → quot_j → 0` of the Gysin
/// sequence with Euler number `χ`.
fn pieces(hm: &HomologySummary, n: usize, chi: i64) -> Vec<(GroupSummary, GroupSummary)> {
    (0..2 * n)
        .map(|j| {
            // sub: coker of ∩e : H_{j+1}(M) → H_{j+1-n}(M), nonzero only from H_n to H_0.
            let sub = if j + 1 < n {
                GroupSummary::default()
            } else if j + 1 == n {
                GroupSummary::cyclic(chi.unsigned_abs())
            } else {
                hm.get(j + 1 - n)
            };
            // quot: ker of ∩e : H_j(M) → H_{j-n}(M).
            let quot = if j == n {
                if chi == 0 {
                    GroupSummary::free(1)
                } else {
                    GroupSummary::default()
                }
            } else {
                hm.get(j)
            };
            (sub, quot)
        })
        .collect()
}

/// Index of the `i`-th generator of `sub` inside the canonical generators of
/// `sub ⊕ quot` when `quot` is free: sub free, quot free, sub torsion.
fn sub_position(sub: &GroupSummary, quot: &GroupSummary, i: usize) -> usize {
    if i < sub.free_rank {
        i
    } else {
        i + quot.free_rank
    }
}

fn solve(spec: &CrossSpec, chi: i64) -> Result<UnitTangentHomology> {
    let n = spec.n;
    let mut degrees = Vec::with_capacity(2 * n);
    let mut gysin: Vec<Vec<Option<Vec<i64>>>> = (0..=n)
        .map(|k| vec![None; spec.hm.get(k).generator_count()])
        .collect();
    for (j, (sub, quot)) in pieces(&spec.hm, n, chi).into_iter().enumerate() {
        if !sub.is_zero() && !quot.torsion.is_empty() {
            return Err(Error::ExtensionAmbiguity {
                degree: j,
                detail: format!("0 -> {sub} -> H_{j}(UM) -> {quot} -> 0 need not split"),
            });
        }
        let group = sub.direct_sum(&quot);
        if j + 1 >= n {
            let k = j + 1 - n;
            let width = group.generator_count();
            for (i, slot) in gysin[k].iter_mut().enumerate() {
                let mut image = vec![0; width];
                if k == 0 {
                    // H_0(M) = Z onto Z/χ.
                    if !sub.is_zero() {
                        image[sub_position(&sub, &quot, 0)] = 1;
                    }
                } else {
                    image[sub_position(&sub, &quot, i)] = 1;
                }
                *slot = Some(image);
            }
        }
        degrees.push(group);
    }
    Ok(UnitTangentHomology {
        groups: HomologySummary { degrees },
        gysin,
    })
}

fn parse_combination(
    value: &std::collections::BTreeMap<String, i64>,
    space: Space,
    degree: usize,
    orders: &[u64],
) -> Result<Vec<i64>> {
    let mut out = vec![0; orders.len()];
    for (name, &c) in value {
        let g: GeneratorId = name.parse()?;
        if g.space != space || g.degree != degree || g.index >= orders.len() {
            return Err(Error::Structure(format!(
                "{name} is not a generator of the target group"
            )));
        }
        out[g.index] += c;
    }
    reduce(&mut out, orders);
    Ok(out)
}

pub(crate) fn reduce(coords: &mut [i64], orders: &[u64]) {
    for (c, &d) in coords.iter_mut().zip(orders) {
        if d != 0 {
            *c = c.rem_euclid(d as i64);
        }
    }
}

/// Reads the supplied Gysin images, filling in the forced ones: the unit
/// goes to the unit and anything landing in a zero group goes to zero.
fn supplied(spec: &CrossSpec, groups: &HomologySummary) -> Result<Vec<Vec<Option<Vec<i64>>>>> {
    let n = spec.n;
    let mut gysin: Vec<Vec<Option<Vec<i64>>>> = (0..=n)
        .map(|k| {
            let target = groups.get(k + n - 1).generator_count();
            (0..spec.hm.get(k).generator_count())
                .map(|i| {
                    if target == 0 {
                        Some(Vec::new())
                    } else if k == n && i == 0 {
                        let mut v = vec![0; target];
                        v[0] = 1;
                        Some(v)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    for entry in &spec.gysin_module {
        let g: GeneratorId = entry.source.parse()?;
        if g.space != Space::Base || g.degree > n || g.index >= gysin[g.degree].len() {
            return Err(Error::Structure(format!(
                "{} is not a generator of H_*(M)",
                entry.source
            )));
        }
        let target = g.degree + n - 1;
        let value = parse_combination(
            &entry.value,
            Space::UnitTangent,
            target,
            &groups.get(target).orders(),
        )?;
        if let Some(old) = &gysin[g.degree][g.index] {
            if *old != value {
                return Err(Error::Structure(format!(
                    "gysin_module contradicts the forced image of {g}"
                )));
            }
        }
        gysin[g.degree][g.index] = Some(value);
    }
    Ok(gysin)
}

/// `H_*(UM)` and the Gysin morphism, solved from the Gysin sequence when
/// `M` is orientable with known Euler number, and otherwise read from the
/// supplied groups and module table.
pub fn gysin_unit_tangent_homology(spec: &CrossSpec) -> Result<UnitTangentHomology> {
    spec.validate()?;
    match (spec.orientable, spec.euler) {
        (true, Some(chi)) => {
            let solved = solve(spec, chi)?;
            if let Some(h) = &spec.hum {
                if *h != solved.groups {
                    return Err(Error::Structure(format!(
                        "{}: supplied hum differs from the Gysin solution",
                        spec.name
                    )));
                }
            }
            let given = supplied(spec, &solved.groups)?;
            for (k, row) in given.iter().enumerate() {
                for (i, g) in row.iter().enumerate() {
                    if let (Some(a), Some(b)) = (g, &solved.gysin[k][i]) {
                        if a != b {
                            return Err(Error::Structure(format!(
                                "gysin_module contradicts the Gysin sequence at m{k}.{i}"
                            )));
                        }
                    }
                }
            }
            Ok(solved)
        }
        _ => {
            let groups = spec.hum.clone().ok_or_else(|| {
                Error::MissingData(format!(
                    "{}: H_*(UM) is required for a non-orientable manifold or unknown Euler number",
                    spec.name
                ))
            })?;
            let gysin = supplied(spec, &groups)?;
            Ok(UnitTangentHomology { groups, gysin })
        }
    }
}

/// Alternating sum of rational ranks along the Gysin sequence; zero for an
/// exact sequence.
pub fn gysin_rank_defect(spec: &CrossSpec, um: &HomologySummary) -> i64 {
    let n = spec.n;
    let mut terms = Vec::new();
    for j in (0..=2 * n).rev() {
        terms.push(um.get(j).free_rank as i64);
        terms.push(spec.hm.get(j).free_rank as i64);
        terms.push(if j >= n {
            spec.hm.get(j - n).free_rank as i64
        } else {
            0
        });
    }
    terms
        .iter()
        .enumerate()
        .map(|(i, r)| if i % 2 == 0 { *r } else { -r })
        .sum()
}
