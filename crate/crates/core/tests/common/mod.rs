#![allow(dead_code)]

use std::collections::BTreeMap;

use strop_core::chain::{GradedClass, IntersectionRing};
use strop_core::rational::{q, q_frac, Q};
use strop_core::torus::random::image_cube;
use strop_core::torus::{
    chain_intersection, compose_loops, homology_class_torus, loop_class_torus, perturb_translate,
    AffineSimplex, BiChain, TorusChain, TorusModel,
};

pub type LoopClasses = BTreeMap<Vec<i64>, Vec<i64>>;

pub fn radius() -> Q {
    q_frac(1, 50)
}

/// Intersection of two cycles, as periods of the left image.
pub fn geometric_class(u: &TorusChain, v: &TorusChain, seed: u64) -> Vec<i64> {
    let b = perturb_translate(&BiChain::product(u, v).unwrap(), seed, &radius()).unwrap();
    homology_class_torus(&chain_intersection(&b).unwrap().chain().unwrap()).unwrap()
}

/// Loop product of two loop-family cycles at chain level.
pub fn loop_product(u: &TorusChain, v: &TorusChain, seed: u64) -> TorusChain {
    let b = perturb_translate(&BiChain::product(u, v).unwrap(), seed, &radius()).unwrap();
    compose_loops(&chain_intersection(&b).unwrap()).unwrap()
}

pub fn loop_classes(c: &TorusChain) -> LoopClasses {
    loop_class_torus(c).unwrap()
}

pub fn negate(c: &LoopClasses) -> LoopClasses {
    c.iter()
        .map(|(w, x)| (w.clone(), x.iter().map(|v| -v).collect()))
        .collect()
}

/// The fundamental cycle of `Tⁿ` as constant loops, based at `offset`.
pub fn fundamental_cycle(offset: &[Q]) -> TorusChain {
    let n = offset.len();
    let frame: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    image_cube(offset, &frame)
}

pub fn point(coords: &[(i64, i64)]) -> Vec<Q> {
    coords.iter().map(|&(a, b)| q_frac(a, b)).collect()
}

pub fn origin(n: usize) -> Vec<Q> {
    vec![q(0); n]
}

/// How basis classes of `Tⁿ` are turned into affine cycles.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    /// The simplicial representative on the grid.
    Grid,
    /// A point, a straight loop or the unit cube with the class's periods,
    /// based at `offset`.
    Straight,
}

fn straight(model: &TorusModel, x: &GradedClass, offset: &[Q]) -> TorusChain {
    let n = model.n();
    let k = (x.degree + n as i64) as usize;
    let periods = model.periods_of_class(x).unwrap();
    if k == 0 {
        return TorusChain::from_simplices(
            n,
            0,
            [(periods[0], AffineSimplex::point(offset.to_vec()))],
        )
        .unwrap();
    }
    if k == n {
        return fundamental_cycle(offset).scaled(periods[0]);
    }
    assert_eq!(
        k, 1,
        "straight representatives exist here for degrees 0, 1 and n"
    );
    let end: Vec<Q> = offset
        .iter()
        .zip(&periods)
        .map(|(o, &p)| o + q(p))
        .collect();
    TorusChain::from_simplices(
        n,
        1,
        [(1, AffineSimplex::new(vec![offset.to_vec(), end]).unwrap())],
    )
    .unwrap()
}

/// Cup/PD product against the geometric product on every pair of basis
/// classes of `Tⁿ`.
pub fn generators_agree(model: &TorusModel, how: Realization) -> Result<usize, String> {
    let n = model.n() as i64;
    let ring = model.ring();
    let mut checked = 0;
    for d1 in -n..=0 {
        for d2 in -n - d1..=0 {
            for x in ring.basis(d1).unwrap() {
                for y in ring.basis(d2).unwrap() {
                    let (u, v) = match how {
                        Realization::Grid => (
                            model.realize((d1 + n) as usize, &ring.representative(&x).unwrap()),
                            model.realize((d2 + n) as usize, &ring.representative(&y).unwrap()),
                        ),
                        Realization::Straight => (
                            straight(model, &x, &point(&[(1, 7), (2, 11), (3, 19)][..model.n()])),
                            straight(model, &y, &point(&[(3, 13), (5, 17), (7, 23)][..model.n()])),
                        ),
                    };
                    let geometric = geometric_class(&u, &v, checked as u64);
                    let algebraic = model
                        .periods_of_class(&ring.product(&x, &y).unwrap())
                        .unwrap();
                    if geometric != algebraic {
                        return Err(format!(
                            "{x:?} · {y:?}: geometric {geometric:?}, algebraic {algebraic:?}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

pub fn all_classes(r: &IntersectionRing) -> Vec<GradedClass> {
    let n = r.dim() as i64;
    let mut out = Vec::new();
    for d in -n..=0 {
        let basis = r.basis(d).unwrap();
        out.extend(basis.iter().cloned());
        // A few sums exercise bilinearity.
        if basis.len() >= 2 {
            out.push(r.add(&basis[0], &basis[1]).unwrap());
        }
    }
    out
}

/// Unit, graded commutativity and associativity on basis classes and a few
/// sums.
pub fn check_ring_laws(r: &IntersectionRing) -> Result<(), String> {
    let n = r.dim() as i64;
    let unit = r.unit();
    let classes = all_classes(r);
    for x in &classes {
        if &r.product(&unit, x).unwrap() != x || &r.product(x, &unit).unwrap() != x {
            return Err(format!("unit law fails on {x:?}"));
        }
    }
    for x in &classes {
        for y in &classes {
            if x.degree + y.degree < -n {
                continue;
            }
            let xy = r.product(x, y).unwrap();
            let yx = r.product(y, x).unwrap();
            let sign = if (x.degree * y.degree) % 2 == 0 {
                1
            } else {
                -1
            };
            if xy != r.scale(sign, &yx).unwrap() {
                return Err(format!("commutativity fails on {x:?}, {y:?}"));
            }
            for z in &classes {
                if x.degree + y.degree + z.degree < -n {
                    continue;
                }
                let left = r.product(&xy, z).unwrap();
                let right = r.product(x, &r.product(y, z).unwrap()).unwrap();
                if left != right {
                    return Err(format!("associativity fails on {x:?}, {y:?}, {z:?}"));
                }
            }
        }
    }
    Ok(())
}
