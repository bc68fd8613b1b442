use std::collections::BTreeSet;

use strop_core::catalog::{bundled_cross, BUNDLED_CROSS};
use strop_core::chain::GroupSummary;
use strop_core::geodesic::{
    bott_index, build_page1, check_differential, collapse_to_infinity, differential,
    differential_d1, gysin_rank_defect, gysin_unit_tangent_homology, loop_homology_table,
    t_bidegree, thom_row, CrossSpec, PageIndex, Vanishing,
};
use strop_core::Error;

fn spec(name: &str) -> CrossSpec {
    CrossSpec::parse(bundled_cross(name).unwrap()).unwrap()
}

#[test]
fn unit_tangent_homology_from_gysin() {
    let s2 = gysin_unit_tangent_homology(&spec("S2")).unwrap();
    let want: Vec<GroupSummary> = ["Z", "Z/2", "0", "Z"]
        .iter()
        .map(|g| g.parse().unwrap())
        .collect();
    assert_eq!(s2.groups.degrees, want);
    let s3 = gysin_unit_tangent_homology(&spec("S3")).unwrap();
    assert_eq!(s3.groups.free_ranks(), vec![1, 0, 1, 1, 0, 1]);
    assert!(s3.groups.degrees.iter().all(|g| g.torsion.is_empty()));
    for (name, _) in BUNDLED_CROSS {
        let s = spec(name);
        let um = gysin_unit_tangent_homology(&s).unwrap();
        assert_eq!(gysin_rank_defect(&s, &um.groups), 0, "{name}");
    }
}

#[test]
fn t_powers_sit_where_the_thom_shift_puts_them() {
    for name in ["S2", "S3"] {
        let s = spec(name);
        let n = s.n as i64;
        let page = build_page1(&s, 8).unwrap();
        let (tp, tq) = t_bidegree(&s);
        assert_eq!((tp, tq), (1, s.alpha1 as i64 + n - 2));
        for p in 1..=8usize {
            // Index of the p-fold iterate, written out directly.
            let alpha = (p * s.alpha1 + (p - 1) * (s.n - 1)) as i64;
            assert_eq!(bott_index(&s, p) as i64, alpha);
            let t = page.t_power(p);
            assert_eq!((t.p, t.q), (p, p as i64 * tq), "{name}, p = {p}");
            assert_eq!(t.coords.first(), Some(&1), "{name}: T^{p} is missing");
            assert_eq!(
                thom_row(&s, p, 2 * s.n - 1),
                p as i64 * tq,
                "{name}, p = {p}"
            );
            if p < 8 {
                let t1 = page.t_power(1);
                assert_eq!(
                    page.product(&page.t_power(p), &t1).unwrap(),
                    Some(page.t_power(p + 1))
                );
            }
        }
    }
}

#[test]
fn column_one_of_the_two_sphere() {
    let s = spec("S2");
    let page = build_page1(&s, 1).unwrap();
    let col1: Vec<(i64, Vec<u64>)> = page
        .entries
        .iter()
        .filter(|((p, _), _)| *p == 1)
        .map(|((_, q), e)| (*q, e.orders.clone()))
        .collect();
    assert_eq!(col1, vec![(-2, vec![0]), (-1, vec![2]), (1, vec![0])]);
    let totals: Vec<i64> = col1.iter().map(|(q, _)| 1 + q + 2).collect();
    assert_eq!(totals, vec![1, 2, 4]);
    assert_eq!(page.entries[&(0, 0)].orders, vec![0]);
    assert_eq!(page.unit().coords, vec![1]);
}

#[test]
fn first_differential_vanishes_for_the_stated_reasons() {
    for name in ["S2", "S3", "S4", "RP2"] {
        let page = build_page1(&spec(name), 6).unwrap();
        let d = differential_d1(&page).unwrap();
        assert!(d.is_zero(), "{name}");
        check_differential(&page, &d).unwrap();
        let t = page.t_power(1);
        assert!(d.apply(&page, &t).unwrap().is_zero());
        for ((p, _, _), why) in &d.reasons {
            let want = match p {
                0 => Vanishing::OutOfRange,
                1 => Vanishing::DirectFactor,
                _ => Vanishing::Derivation,
            };
            assert_eq!(*why, want, "{name}, column {p}");
        }
        // d¹(xy) = 0 for generators x, y with d¹x = d¹y = 0.
        let gens: Vec<_> = page.generators().collect();
        for a in &gens {
            for b in &gens {
                if let Some(ab) = page.product(a, b).unwrap() {
                    if let Some(dab) = d.apply(&page, &ab) {
                        assert!(dab.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn higher_differentials_vanish() {
    let page = build_page1(&spec("S3"), 5).unwrap();
    for r in 2..=5 {
        let d = differential(&page, r).unwrap();
        assert!(d.is_zero());
        check_differential(&page, &d).unwrap();
        assert!(d
            .reasons
            .iter()
            .all(|((p, _, _), why)| (*p < r) == (*why == Vanishing::OutOfRange)));
    }
    assert!(matches!(differential(&page, 0), Err(Error::Structure(_))));
}

#[test]
fn infinity_page_equals_the_first() {
    for (name, _) in BUNDLED_CROSS {
        let e1 = build_page1(&spec(name), 5).unwrap();
        let inf = collapse_to_infinity(&e1).unwrap();
        assert_eq!(inf.page, PageIndex::Infinity);
        assert_eq!(inf.entries, e1.entries, "{name}");
        let gens: Vec<_> = e1.generators().collect();
        for a in &gens {
            for b in &gens {
                assert_eq!(
                    inf.product(a, b).unwrap(),
                    e1.product(a, b).unwrap(),
                    "{name}"
                );
            }
        }
    }
}

/// Per-degree (free rank, torsion orders) of the associated graded, summed
/// straight from the group lists and the iterate indices.
fn assembled(s: &CrossSpec, um: &[&str], max: usize) -> Vec<(usize, Vec<u64>)> {
    let mut out = vec![(0, Vec::new()); max + 1];
    let mut add = |k: usize, g: &str| {
        if k > max {
            return;
        }
        let g: GroupSummary = g.parse().unwrap();
        out[k].0 += g.free_rank;
        out[k].1.extend(g.torsion);
    };
    for (k, g) in s.hm.degrees.iter().enumerate() {
        add(k, &g.to_string());
    }
    for p in 1.. {
        let a = p * s.alpha1 + (p - 1) * (s.n - 1);
        if a > max {
            break;
        }
        for (j, g) in um.iter().enumerate() {
            add(a + j, g);
        }
    }
    for row in &mut out {
        row.1.sort();
    }
    out
}

fn table_rows(s: &CrossSpec, max: usize) -> Vec<(usize, Vec<u64>)> {
    let t = loop_homology_table(s, max).unwrap();
    assert!(t.series.holds, "{}", s.name);
    assert!(t.matches_page, "{}", s.name);
    t.rows
        .iter()
        .map(|r| {
            let mut tors = r.group.torsion.clone();
            tors.sort();
            (r.group.free_rank, tors)
        })
        .collect()
}

#[test]
fn two_sphere_table_through_degree_twenty() {
    let s = spec("S2");
    let rows = table_rows(&s, 20);
    assert_eq!(rows, assembled(&s, &["Z", "Z/2", "0", "Z"], 20));
    for (k, (free, tors)) in rows.iter().enumerate() {
        assert_eq!(*free, 1, "degree {k}");
        let want: Vec<u64> = if k >= 2 && k % 2 == 0 {
            vec![2]
        } else {
            vec![]
        };
        assert_eq!(*tors, want, "degree {k}");
    }
}

#[test]
fn three_sphere_table_through_degree_twenty() {
    let s = spec("S3");
    let rows = table_rows(&s, 20);
    assert_eq!(rows, assembled(&s, &["Z", "0", "Z", "Z", "0", "Z"], 20));
    let mut pattern: BTreeSet<usize> = [0, 3].into();
    for p in 1..=6 {
        for e in [0, 2, 3, 5] {
            pattern.insert(4 * p - 2 + e);
        }
    }
    let nonzero: BTreeSet<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.0 > 0)
        .map(|(k, _)| k)
        .collect();
    assert_eq!(nonzero, pattern.into_iter().filter(|&k| k <= 20).collect());
    assert!(rows.iter().all(|r| r.1.is_empty()));
}

#[test]
fn other_catalog_tables() {
    let s4 = spec("S4");
    assert_eq!(
        table_rows(&s4, 20),
        assembled(&s4, &["Z", "0", "0", "Z/2", "0", "0", "0", "Z"], 20)
    );
    let rp2 = spec("RP2");
    assert_eq!(
        table_rows(&rp2, 20),
        assembled(&rp2, &["Z", "Z/4", "0", "Z"], 20)
    );
}

#[test]
fn table_does_not_depend_on_the_window() {
    let s = spec("S3");
    let long = loop_homology_table(&s, 20).unwrap();
    let short = loop_homology_table(&s, 11).unwrap();
    assert_eq!(short.rows[..], long.rows[..12]);
    assert_eq!(loop_homology_table(&s, 20).unwrap(), long);
    let zero = loop_homology_table(&s, 0).unwrap();
    assert_eq!(zero.rows.len(), 1);
    assert_eq!(zero.rows[0].columns, vec![0]);
}

#[test]
fn unforced_products_must_be_supplied() {
    let mut s = spec("S3");
    s.um_products.clear();
    assert!(matches!(build_page1(&s, 2), Err(Error::MissingData(_))));
    let mut rp2 = spec("RP2");
    rp2.gysin_module.clear();
    assert!(matches!(build_page1(&rp2, 2), Err(Error::MissingData(_))));
    let mut bad = spec("S2");
    bad.euler = Some(0);
    assert!(matches!(
        CrossSpec::parse(&bad.to_json()),
        Err(Error::Structure(_))
    ));
}
