//! The invariant suite behind `strop verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strop_core::catalog::{bundled, bundled_cross, BUNDLED, BUNDLED_CROSS};
use strop_core::chain::{cohomology, GradedClass};
use strop_core::geodesic::{
    build_page1, check_differential, collapse_to_infinity, differential_d1, loop_homology_table,
    CrossSpec,
};
use strop_core::io::parse_complex;
use strop_core::rational::q_frac;
use strop_core::torus::random::{random_bichain, random_cycle, random_loop_cycle};
use strop_core::torus::{
    chain_intersection, compose_loops, derivation_check, homology_class_torus, loop_class_torus,
    perturb_translate, total_boundary, BiChain, TorusModel,
};
use strop_core::{
    homology, validate_complex, ClosedManifold, IntersectionRing, OrientationCharacter,
};

use crate::report::Report;

type Check = Result<String, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn boundaries_square_to_zero() -> Check {
    let mut checked = 0;
    for (name, text) in BUNDLED {
        let k = parse_complex(text).map_err(err)?;
        let mut characters = vec![OrientationCharacter::trivial(&k.complex)];
        characters.extend(k.character);
        for w in &characters {
            let c = validate_complex(&k.complex, w).map_err(err)?;
            for d in 1..c.top() {
                ensure(c.boundary(d).mul(&c.boundary(d + 1)).is_zero(), || {
                    format!("{name}: boundary squares to nonzero in degree {}", d + 1)
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes and characters"))
}

fn duality() -> Check {
    for (name, _) in BUNDLED {
        let k = parse_complex(bundled(name).unwrap()).map_err(err)?.complex;
        let w = OrientationCharacter::from_local_orientations(&k).map_err(err)?;
        let twisted = homology(&validate_complex(&k, &w).map_err(err)?);
        let plain = validate_complex(&k, &OrientationCharacter::trivial(&k)).map_err(err)?;
        let mut dual = cohomology(&plain).degrees;
        dual.reverse();
        ensure(twisted.degrees == dual, || {
            format!("{name}: twisted homology is not dual to cohomology")
        })?;
    }
    Ok(format!("{} closed manifolds", BUNDLED.len()))
}

fn ring_laws(r: &IntersectionRing) -> Result<(), String> {
    let n = r.dim() as i64;
    let mut classes: Vec<GradedClass> = Vec::new();
    for d in -n..=0 {
        classes.extend(r.basis(d).map_err(err)?);
    }
    let unit = r.unit();
    for x in &classes {
        let left = r.product(&unit, x).map_err(err)?;
        let right = r.product(x, &unit).map_err(err)?;
        ensure(&left == x && &right == x, || {
            format!("unit law fails on {x:?}")
        })?;
    }
    for x in &classes {
        for y in &classes {
            if x.degree + y.degree < -n {
                continue;
            }
            let xy = r.product(x, y).map_err(err)?;
            let yx = r.product(y, x).map_err(err)?;
            let sign = if (x.degree * y.degree) % 2 == 0 {
                1
            } else {
                -1
            };
            ensure(xy == r.scale(sign, &yx).map_err(err)?, || {
                format!("commutativity fails on {x:?}, {y:?}")
            })?;
            for z in &classes {
                if x.degree + y.degree + z.degree < -n {
                    continue;
                }
                let a = r.product(&xy, z).map_err(err)?;
                let b = r.product(x, &r.product(y, z).map_err(err)?).map_err(err)?;
                ensure(a == b, || {
                    format!("associativity fails on {x:?}, {y:?}, {z:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn intersection_rings() -> Check {
    let names = ["s2", "t2", "rp2", "klein", "t3"];
    for name in names {
        let k = parse_complex(bundled(name).unwrap()).map_err(err)?.complex;
        let ring =
            IntersectionRing::new(ClosedManifold::from_complex(k).map_err(err)?).map_err(err)?;
        ring_laws(&ring).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(names.join(","))
}

fn total_boundary_squares(rng: &mut ChaCha8Rng) -> Check {
    let count = 20;
    for i in 0..count {
        let n = rng.gen_range(1..=3);
        let (p, q) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let b = random_bichain(rng, n, p, q, 2);
        ensure(total_boundary(&total_boundary(&b)).is_empty(), || {
            format!("bi-chain {i} on T^{n}")
        })?;
    }
    Ok(format!("{count} random bi-chains"))
}

fn derivation(rng: &mut ChaCha8Rng, seed: u64) -> Check {
    let count = 15;
    for i in 0..count {
        let n = rng.gen_range(1..=3usize);
        let p = rng.gen_range(1..=n);
        let q = rng.gen_range((n - p).max(1)..=n);
        let b = random_bichain(rng, n, p, q, 2);
        let b = perturb_translate(&b, seed.wrapping_add(i), &q_frac(1, 20)).map_err(err)?;
        let report = derivation_check(&b).map_err(err)?;
        ensure(report.holds, || {
            format!(
                "bi-chain {i} on T^{n}: {}",
                report.mismatch.unwrap_or_default()
            )
        })?;
    }
    Ok(format!("{count} perturbed bi-chains"))
}

fn bicycles(rng: &mut ChaCha8Rng, seed: u64) -> Check {
    let radius = q_frac(1, 50);
    let count = 4;
    for i in 0..count {
        let n = if i < 3 { 2 } else { 3 };
        let p = rng.gen_range(1..=n);
        let u = random_loop_cycle(rng, n, p);
        let q = rng.gen_range(n - p..=n);
        let v = random_loop_cycle(rng, n, q);
        let b = BiChain::product(&u, &v).map_err(err)?;
        let mut classes = Vec::new();
        for s in 0..4u64 {
            let moved = perturb_translate(&b, seed.wrapping_add(s), &radius).map_err(err)?;
            let t = chain_intersection(&moved).map_err(err)?;
            if t.degree < 0 {
                continue;
            }
            let w = compose_loops(&t).map_err(err)?;
            ensure(w.is_cycle(), || {
                format!("bi-cycle {i}: intersection has boundary")
            })?;
            classes.push(loop_class_torus(&w).map_err(err)?);
        }
        ensure(classes.windows(2).all(|c| c[0] == c[1]), || {
            format!("bi-cycle {i}: class depends on the seed")
        })?;
    }
    Ok(format!("{count} bi-cycles, 4 seeds each"))
}

fn cup_against_geometry(rng: &mut ChaCha8Rng, seed: u64) -> Check {
    let model = TorusModel::new(2).map_err(err)?;
    let ring = model.ring();
    let count = 10;
    for i in 0..count {
        let p = rng.gen_range(0..=2);
        let q = rng.gen_range(2 - p..=2);
        let u = random_cycle(rng, 2, p);
        let v = random_cycle(rng, 2, q);
        let b = perturb_translate(
            &BiChain::product(&u, &v).map_err(err)?,
            seed,
            &q_frac(1, 50),
        )
        .map_err(err)?;
        let geometric =
            homology_class_torus(&chain_intersection(&b).map_err(err)?.chain().map_err(err)?)
                .map_err(err)?;
        let x = model.class_of_chain(&u).map_err(err)?;
        let y = model.class_of_chain(&v).map_err(err)?;
        let algebraic = model
            .periods_of_class(&ring.product(&x, &y).map_err(err)?)
            .map_err(err)?;
        ensure(geometric == algebraic, || {
            format!("pair {i}: geometric {geometric:?}, cup product {algebraic:?}")
        })?;
    }
    Ok(format!("{count} cycle pairs on T2"))
}

fn pages() -> Check {
    for (name, _) in BUNDLED_CROSS {
        let spec = CrossSpec::parse(bundled_cross(name).unwrap()).map_err(err)?;
        let page = build_page1(&spec, 6).map_err(err)?;
        page.check_ring_axioms()
            .map_err(|e| format!("{name}: {e}"))?;
        let d1 = differential_d1(&page).map_err(err)?;
        check_differential(&page, &d1).map_err(|e| format!("{name}: {e}"))?;
        ensure(d1.is_zero(), || format!("{name}: d1 is nonzero"))?;
        let inf = collapse_to_infinity(&page).map_err(err)?;
        ensure(inf.entries == page.entries, || {
            format!("{name}: E-inf differs from E1")
        })?;
        let table = loop_homology_table(&spec, 12).map_err(err)?;
        ensure(table.series.holds && table.matches_page, || {
            format!("{name}: table disagrees with the series")
        })?;
    }
    Ok(format!("{} catalog entries", BUNDLED_CROSS.len()))
}

/// Runs every check; the flag is false when any fails.
pub(crate) fn suite(seed: u64) -> (Report, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results: Vec<(&str, Check)> = vec![
        ("boundary-squares-to-zero", boundaries_square_to_zero()),
        ("poincare-duality", duality()),
        ("intersection-ring-laws", intersection_rings()),
        (
            "total-boundary-squares-to-zero",
            total_boundary_squares(&mut rng),
        ),
        ("derivation-identity", derivation(&mut rng, seed)),
        ("bicycle-seed-independence", bicycles(&mut rng, seed)),
        (
            "cup-product-vs-geometry",
            cup_against_geometry(&mut rng, seed),
        ),
        ("page-consistency", pages()),
    ];
    let mut r = Report::new("verify", seed, &["check", "status", "detail"]);
    let mut ok = true;
    for (name, res) in results {
        let (status, detail) = match res {
            Ok(d) => ("PASS", d),
            Err(d) => {
                ok = false;
                ("FAIL", d)
            }
        };
        r.row([name, status, &detail]);
    }
    r.fact("checks", r.rows.len());
    (r, ok)
}
