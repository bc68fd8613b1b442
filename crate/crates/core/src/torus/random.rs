//! Seeded random cycles and bi-chains on the torus, for tests and benches.

use rand::Rng;

use crate::rational::{q, q_frac, rank, Q};
use crate::torus::bichain::{BiChain, BiTerm};
use crate::torus::simplex::{permutation_sign, AffineSimplex, LoopFamily, TorusChain};

/// Denominator of random vertex coordinates.
const GRID: i64 = 97;

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in all_permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| q_frac(rng.gen_range(0..GRID), GRID))
        .collect()
}

/// An `n × k` integer matrix of rank `k` with small entries.
fn random_frame<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<Vec<i64>> {
    loop {
        let cols: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect())
            .collect();
        let rows: Vec<Vec<Q>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| q(x)).collect())
            .collect();
        if k == 0 || rank(&rows) == k {
            return cols;
        }
    }
}

/// The image of the unit `k`-cube under `x ↦ offset + Mx`, triangulated by
/// the Kuhn simplices with the signs that make it a cycle on the torus.
pub fn image_cube(offset: &[Q], frame: &[Vec<i64>]) -> TorusChain {
    let n = offset.len();
    let k = frame.len();
    let mut c = TorusChain::zero(n, k);
    for perm in all_permutations(k) {
        let mut cur = offset.to_vec();
        let mut vertices = vec![cur.clone()];
        for &axis in &perm {
            for (x, &d) in cur.iter_mut().zip(&frame[axis]) {
                *x += q(d);
            }
            vertices.push(cur.clone());
        }
        c.add(
            permutation_sign(&perm),
            LoopFamily::constant(AffineSimplex { vertices }),
        )
        .expect("cube simplices have the cube's dimension");
    }
    c
}

/// A random `k`-cycle on `Tⁿ`: an embedded image of the `k`-cube plus the
/// boundary of a random `(k+1)`-simplex when there is room for one.
pub fn random_cycle<R: Rng>(rng: &mut R, n: usize, k: usize) -> TorusChain {
    let offset = random_point(rng, n);
    let frame = random_frame(rng, n, k);
    let mut c = image_cube(&offset, &frame);
    if rng.gen_bool(0.5) {
        c = c.scaled(-1);
    }
    if k < n {
        let base = random_point(rng, n);
        let vertices = (0..k + 2)
            .map(|_| {
                base.iter()
                    .map(|x| x + q_frac(rng.gen_range(-GRID / 2..=GRID / 2), GRID))
                    .collect()
            })
            .collect();
        let filler =
            TorusChain::from_simplices(n, k + 1, [(1, AffineSimplex { vertices })]).expect("shape");
        c.add_chain(1, &filler.boundary()).expect("same degree");
    }
    c
}

/// A random `k`-cycle of loop families with one winding vector.
pub fn random_loop_cycle<R: Rng>(rng: &mut R, n: usize, k: usize) -> TorusChain {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    random_cycle(rng, n, k).with_winding(&w)
}

/// A random `k`-simplex on `Tⁿ` with vertices near a random point.
pub fn random_simplex<R: Rng>(rng: &mut R, n: usize, k: usize) -> AffineSimplex {
    let base = random_point(rng, n);
    AffineSimplex {
        vertices: (0..=k)
            .map(|_| {
                base.iter()
                    .map(|x| x + q_frac(rng.gen_range(-GRID..=GRID), GRID))
                    .collect()
            })
            .collect(),
    }
}

/// A bi-chain of `terms` random `(p, q)` bi-simplices with random windings
/// and coefficients.
pub fn random_bichain<R: Rng>(rng: &mut R, n: usize, p: usize, q: usize, terms: usize) -> BiChain {
    let mut b = BiChain::zero(n);
    for _ in 0..terms {
        let wl = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        let wr = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        let coef = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        b.add(BiTerm {
            coef,
            left: LoopFamily {
                base: random_simplex(rng, n, p),
                winding: wl,
            },
            right: LoopFamily {
                base: random_simplex(rng, n, q),
                winding: wr,
            },
        })
        .expect("same torus");
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::classes::homology_class_torus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cubes_are_cycles_with_minor_periods() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 0..=3 {
            let offset = random_point(&mut rng, 3);
            let frame = random_frame(&mut rng, 3, k);
            let c = image_cube(&offset, &frame);
            assert!(c.is_cycle(), "k = {k}");
            let periods = homology_class_torus(&c).unwrap();
            if k == 3 {
                let m: Vec<Vec<Q>> = frame
                    .iter()
                    .map(|c| c.iter().map(|&x| q(x)).collect())
                    .collect();
                assert_eq!(q(periods[0]), crate::rational::determinant(&m));
            }
        }
    }

    #[test]
    fn random_cycles_are_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            for k in 0..=n {
                assert!(random_cycle(&mut rng, n, k).is_cycle());
            }
        }
    }
}
