//! One PASS/FAIL line per acceptance criterion, with wall time against the
//! limit where one applies. Exits nonzero if any line fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    check_ring_laws, fundamental_cycle, generators_agree, geometric_class, loop_classes,
    loop_product, negate, radius, Realization,
};
use strop_core::catalog::{
    bundled_cross, klein_bottle, projective_plane, projective_space3, sphere, GridTorus,
};
use strop_core::chain::{
    cohomology, homology, validate_complex, GroupSummary, HomologySummary, OrientationCharacter,
    SimplicialComplex,
};
use strop_core::geodesic::{
    bott_index, build_page1, collapse_to_infinity, differential_d1, gysin_unit_tangent_homology,
    loop_homology_table, t_bidegree, thom_row, CrossSpec, Vanishing,
};
use strop_core::rational::q_frac;
use strop_core::torus::random::{random_bichain, random_cycle, random_loop_cycle};
use strop_core::torus::{
    chain_intersection, compose_loops, derivation_check, is_transverse, loop_class_torus,
    perturb_translate, perturb_translate_detailed, BiChain, TorusModel,
};
use strop_core::{ClosedManifold, DoldSign, IntersectionRing};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn groups(list: &[&str]) -> HomologySummary {
    HomologySummary {
        degrees: list
            .iter()
            .map(|g| g.parse::<GroupSummary>().unwrap())
            .collect(),
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn twisted_homology() -> Outcome {
    let cases: [(&str, SimplicialComplex, Option<&[&str]>); 3] = [
        ("RP2", projective_plane(), Some(&["Z/2", "0", "Z"])),
        ("RP3", projective_space3(), None),
        (
            "Klein bottle",
            klein_bottle(3).map_err(|e| e.to_string())?,
            Some(&["Z/2", "Z", "Z"]),
        ),
    ];
    for (name, k, want) in cases {
        let w = OrientationCharacter::from_local_orientations(&k).map_err(|e| e.to_string())?;
        let twisted = homology(&validate_complex(&k, &w).map_err(|e| e.to_string())?);
        let plain_chains =
            validate_complex(&k, &OrientationCharacter::trivial(&k)).map_err(|e| e.to_string())?;
        let mut dual = cohomology(&plain_chains).degrees;
        dual.reverse();
        ensure(twisted.degrees == dual, || {
            format!("{name}: {twisted:?} is not the dual {dual:?}")
        })?;
        match want {
            Some(list) => ensure(twisted == groups(list), || {
                format!("{name}: got {twisted:?}")
            })?,
            None => {
                let plain = homology(&plain_chains);
                ensure(twisted == plain, || {
                    format!("{name}: twisted differs from untwisted")
                })?;
            }
        }
    }
    Ok("RP2, RP3, Klein bottle match duality and the expected groups".into())
}

fn torus_ring() -> Outcome {
    let model = TorusModel::new(2).map_err(|e| e.to_string())?;
    let r = model.ring();
    let h1 = r.basis(-1).map_err(|e| e.to_string())?;
    let (a, b) = (&h1[0], &h1[1]);
    let unit = r.unit();
    let prod = |x, y| r.product(x, y).map_err(|e| e.to_string());
    let mut all = h1.clone();
    all.extend(r.basis(-2).map_err(|e| e.to_string())?);
    all.push(unit.clone());
    for x in &all {
        ensure(prod(&unit, x)? == *x && prod(x, &unit)? == *x, || {
            format!("unit fails on {x:?}")
        })?;
    }
    let ab = prod(a, b)?;
    ensure(prod(b, a)? == r.scale(-1, &ab).unwrap(), || {
        "a·b ≠ -b·a".into()
    })?;
    ensure(prod(a, a)?.is_zero() && prod(b, b)?.is_zero(), || {
        "a·a or b·b is nonzero".into()
    })?;
    ensure(ab.coords.len() == 1 && ab.coords[0].abs() == 1, || {
        format!("a·b = {ab:?}")
    })?;
    let pairs = generators_agree(&model, Realization::Straight)?;
    Ok(format!(
        "ring laws hold; {pairs} basis pairs agree geometrically"
    ))
}

fn oracle(n: usize, count: usize, seed: u64) -> Result<(), String> {
    let model = TorusModel::new(n).map_err(|e| e.to_string())?;
    let ring = model.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(n - p..=n);
        let u = random_cycle(&mut rng, n, p);
        let v = random_cycle(&mut rng, n, q);
        let geometric = geometric_class(&u, &v, i as u64);
        let x = model.class_of_chain(&u).map_err(|e| e.to_string())?;
        let y = model.class_of_chain(&v).map_err(|e| e.to_string())?;
        let xy = ring.product(&x, &y).map_err(|e| e.to_string())?;
        let algebraic = model.periods_of_class(&xy).map_err(|e| e.to_string())?;
        ensure(geometric == algebraic, || {
            format!("T{n} pair {i} ({p}, {q}): geometric {geometric:?}, algebraic {algebraic:?}")
        })?;
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    oracle(2, 50, 1)?;
    oracle(3, 20, 2)?;
    Ok("50 pairs on T2 and 20 on T3 agree".into())
}

fn derivation_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for n in 1..=3usize {
        for i in 0..20u64 {
            let p = rng.gen_range(0..=n);
            let q = rng.gen_range(n.saturating_sub(p).max(usize::from(p == 0))..=n);
            let b = perturb_translate(&random_bichain(&mut rng, n, p, q, 2), i, &q_frac(1, 20))
                .map_err(|e| e.to_string())?;
            let report = derivation_check(&b).map_err(|e| e.to_string())?;
            ensure(report.holds, || {
                format!("n = {n}, ({p}, {q}): {:?}", report.mismatch)
            })?;
            checked += 1;
        }
    }
    let mut cycles = 0;
    for n in 1..=3usize {
        for p in 0..=n {
            for q in n - p..=n {
                let u = random_loop_cycle(&mut rng, n, p);
                let v = random_loop_cycle(&mut rng, n, q);
                let b = perturb_translate(&BiChain::product(&u, &v).unwrap(), 9, &radius())
                    .map_err(|e| e.to_string())?;
                let w = compose_loops(&chain_intersection(&b).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                ensure(w.is_cycle(), || {
                    format!("T{n} ({p}, {q}): intersection of bi-cycles has a boundary")
                })?;
                cycles += 1;
            }
        }
    }
    Ok(format!(
        "{checked} bi-chains satisfy the identity; {cycles} bi-cycle intersections are cycles"
    ))
}

fn seed_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..10 {
        let n: usize = if i < 6 { 2 } else { 3 };
        let p = rng.gen_range(n.div_ceil(2)..=n);
        let u = if p == n {
            let offset: Vec<_> = (0..n).map(|_| q_frac(rng.gen_range(0..97), 97)).collect();
            fundamental_cycle(&offset).with_winding(&vec![-1; n])
        } else {
            random_loop_cycle(&mut rng, n, p)
        };
        let v = if i % 2 == 0 {
            u.clone()
        } else {
            u.with_winding(&vec![1; n])
        };
        let b = BiChain::product(&u, &v).unwrap();
        ensure(!is_transverse(&b), || {
            format!("bi-cycle {i} is already transverse")
        })?;
        let mut first = None;
        for seed in 0..10 {
            let moved =
                perturb_translate_detailed(&b, seed, &radius()).map_err(|e| e.to_string())?;
            let w = compose_loops(&chain_intersection(&moved.chain).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let class = loop_class_torus(&w).map_err(|e| e.to_string())?;
            match &first {
                None => first = Some(class),
                Some(c) => ensure(*c == class, || {
                    format!("bi-cycle {i}: seed {seed} gives {class:?}, seed 0 {c:?}")
                })?,
            }
        }
    }
    Ok("10 bi-cycles, 10 seeds each, identical classes".into())
}

fn loop_product_laws() -> Outcome {
    let n = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..12u64 {
        let p = rng.gen_range(1..=n);
        let q = rng.gen_range(1..=n);
        let u = random_loop_cycle(&mut rng, n, p);
        let v = random_loop_cycle(&mut rng, n, q);
        let w = |c: &strop_core::torus::TorusChain| c.terms().next().unwrap().0.winding.clone();
        let sum: Vec<i64> = w(&u).iter().zip(&w(&v)).map(|(a, b)| a + b).collect();
        let prod = loop_product(&u, &v, i);
        ensure(loop_classes(&prod).keys().all(|k| *k == sum), || {
            format!("pair {i}: windings do not add")
        })?;
    }
    let unit = fundamental_cycle(&common::point(&[(1, 7), (2, 11)]));
    for i in 0..10u64 {
        let k = rng.gen_range(0..=n);
        let x = random_loop_cycle(&mut rng, n, k);
        let want = loop_classes(&x);
        ensure(loop_classes(&loop_product(&unit, &x, i)) == want, || {
            format!("left unit fails in degree {k}")
        })?;
        ensure(loop_classes(&loop_product(&x, &unit, i)) == want, || {
            format!("right unit fails in degree {k}")
        })?;
    }
    for i in 0..16u64 {
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(n - p..=n);
        let u = random_loop_cycle(&mut rng, n, p);
        let v = random_loop_cycle(&mut rng, n, q);
        let uv = loop_classes(&loop_product(&u, &v, i));
        let vu = loop_classes(&loop_product(&v, &u, i));
        let s = sign((p as i64 - n as i64) * (q as i64 - n as i64));
        let want = if s == 1 { vu } else { negate(&vu) };
        ensure(uv == want, || {
            format!("({p}, {q}): commutativity sign fails")
        })?;
    }
    let mut triples = 0;
    while triples < 12 {
        let d: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=n)).collect();
        if d.iter().sum::<usize>() < 2 * n {
            continue;
        }
        let [a, b, c] = [0, 1, 2].map(|i| random_loop_cycle(&mut rng, n, d[i]));
        let seed = triples as u64;
        let left = loop_classes(&loop_product(&loop_product(&a, &b, seed), &c, seed + 100));
        let right = loop_classes(&loop_product(&a, &loop_product(&b, &c, seed), seed + 100));
        ensure(left == right, || {
            format!("degrees {d:?}: associativity fails")
        })?;
        triples += 1;
    }
    Ok(format!(
        "windings add on 12 pairs, unit on 10, sign on 16, associativity on {triples} triples"
    ))
}

fn spectral_sequence() -> Outcome {
    let spec =
        |name: &str| CrossSpec::parse(bundled_cross(name).unwrap()).map_err(|e| e.to_string());
    for name in ["S2", "S3"] {
        let s = spec(name)?;
        let (n, a1) = (s.n as i64, s.alpha1 as i64);
        let page = build_page1(&s, 8).map_err(|e| e.to_string())?;
        ensure(t_bidegree(&s) == (1, a1 + n - 2), || {
            format!("{name}: T bidegree {:?}", t_bidegree(&s))
        })?;
        for p in 1..=8usize {
            let alpha = p as i64 * a1 + (p as i64 - 1) * (n - 1);
            let t = page.t_power(p);
            ensure(
                bott_index(&s, p) as i64 == alpha
                    && t.coords.first() == Some(&1)
                    && (t.p, t.q) == (p, p as i64 * (a1 + n - 2))
                    && thom_row(&s, p, 2 * s.n - 1) == t.q,
                || format!("{name}: T^{p} placement disagrees with the iterate index {alpha}"),
            )?;
        }
        let d1 = differential_d1(&page).map_err(|e| e.to_string())?;
        let dt = d1.apply(&page, &page.t_power(1)).unwrap();
        ensure(dt.is_zero() && d1.is_zero(), || {
            format!("{name}: d1 is nonzero")
        })?;
        ensure(
            d1.reasons
                .iter()
                .filter(|((p, _, _), _)| *p == 1)
                .all(|(_, v)| *v == Vanishing::DirectFactor),
            || format!("{name}: d1 on column 1 is not forced by the splitting"),
        )?;
        let inf = collapse_to_infinity(&page).map_err(|e| e.to_string())?;
        ensure(inf.entries == page.entries, || {
            format!("{name}: E-infinity differs from E1")
        })?;
        let table = loop_homology_table(&s, 20).map_err(|e| e.to_string())?;
        ensure(table.series.holds && table.matches_page, || {
            format!("{name}: series identity fails")
        })?;
    }
    let s2 = gysin_unit_tangent_homology(&spec("S2")?).map_err(|e| e.to_string())?;
    ensure(s2.groups == groups(&["Z", "Z/2", "0", "Z"]), || {
        format!("H(US2) = {:?}", s2.groups)
    })?;
    let s3 = gysin_unit_tangent_homology(&spec("S3")?).map_err(|e| e.to_string())?;
    ensure(s3.groups == groups(&["Z", "0", "Z", "Z", "0", "Z"]), || {
        format!("H(US3) = {:?}", s3.groups)
    })?;
    // Nonzero degrees of the three-sphere table.
    let t = loop_homology_table(&spec("S3")?, 20).map_err(|e| e.to_string())?;
    let nonzero: BTreeSet<usize> = t
        .rows
        .iter()
        .filter(|r| !r.group.is_zero())
        .map(|r| r.degree)
        .collect();
    let mut pattern: BTreeSet<usize> = [0, 3].into();
    for p in 1..=6 {
        pattern.extend(
            [0, 2, 3, 5]
                .map(|e| 4 * p - 2 + e)
                .into_iter()
                .filter(|&k| k <= 20),
        );
    }
    ensure(nonzero == pattern, || {
        format!("S3 nonzero degrees {nonzero:?}")
    })?;
    Ok("S2 and S3: T placement for p <= 8, d1 = 0, E-inf = E1, series through degree 20".into())
}

fn ring(k: SimplicialComplex, dold: DoldSign) -> Result<IntersectionRing, String> {
    let m = ClosedManifold::from_complex(k).map_err(|e| e.to_string())?;
    IntersectionRing::with_dold_sign(m, dold).map_err(|e| e.to_string())
}

fn dold_sign() -> Outcome {
    check_ring_laws(&ring(
        GridTorus::new(2, 3).unwrap().complex,
        DoldSign::Enabled,
    )?)?;
    check_ring_laws(&ring(sphere(2), DoldSign::Enabled)?)?;
    check_ring_laws(&ring(
        GridTorus::new(3, 3).unwrap().complex,
        DoldSign::Enabled,
    )?)?;
    match check_ring_laws(&ring(
        GridTorus::new(3, 3).unwrap().complex,
        DoldSign::Disabled,
    )?) {
        Ok(()) => Err("T3 ring laws still hold without the sign".into()),
        Err(why) => Ok(format!(
            "laws hold on T2, S2, T3 with the sign; without it on T3: {why}"
        )),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        (
            "twisted homology",
            twisted_homology,
            Some(Duration::from_secs(1)),
        ),
        (
            "T2 intersection ring",
            torus_ring,
            Some(Duration::from_secs(1)),
        ),
        (
            "oracle equivalence",
            oracle_equivalence,
            Some(Duration::from_secs(30)),
        ),
        ("derivation identity", derivation_identity, None),
        ("seed independence", seed_independence, None),
        ("loop product on T2", loop_product_laws, None),
        (
            "spectral sequence",
            spectral_sequence,
            Some(Duration::from_secs(5)),
        ),
        ("Dold sign", dold_sign, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let over = limit.is_some_and(|l| took > l);
        let budget = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
        let (status, detail) = match (&outcome, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("over the time limit: {msg}")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {} {name}: {detail} [{:.2?}{budget}]", i + 1, took);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
