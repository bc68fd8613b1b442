use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{
    ceil_i64, feasible_nonnegative, floor_i64, format_q, null_space, q, q_frac, rank, Q,
};
use crate::torus::bichain::{BiChain, BiTerm};

/// Resampling budget of `perturb_translate`.
pub const RETRY_CAP: usize = 32;

/// A face of `Δᵖ × Δᵠ`, given by the vertices it keeps in each factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.left.len() + self.right.len() - 2
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}x{:?}", self.left, self.right)
    }
}

/// The first place where a bi-chain fails to be transverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityWitness {
    pub term: usize,
    pub face: Face,
    pub translate: Vec<i64>,
    pub rank: usize,
}

impl fmt::Display for TransversalityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "term {} face {} (dimension {}, rank {}) meets the diagonal at translate {:?}",
            self.term,
            self.face,
            self.face.dim(),
            self.rank,
            self.translate
        )
    }
}

/// Lifted vertex data of one bi-simplex, with the difference map
/// `(λ, μ) ↦ Σ λ_a U_a - Σ μ_b V_b`.
#[derive(Clone, Debug)]
pub(crate) struct TermGeometry {
    pub n: usize,
    pub u: Vec<Vec<Q>>,
    pub v: Vec<Vec<Q>>,
    /// `diff[a][b] = U_a - V_b`.
    diff: Vec<Vec<Vec<Q>>>,
}

impl TermGeometry {
    pub fn new(t: &BiTerm) -> Self {
        let u = &t.left.base.vertices;
        let v = &t.right.base.vertices;
        let diff = u
            .iter()
            .map(|a| {
                v.iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| x - y).collect())
                    .collect()
            })
            .collect();
        TermGeometry {
            n: t.left.base.ambient(),
            u: u.clone(),
            v: v.clone(),
            diff,
        }
    }

    pub fn p(&self) -> usize {
        self.u.len() - 1
    }

    pub fn q(&self) -> usize {
        self.v.len() - 1
    }

    /// Images `U_a - V_b` of the vertices of a face.
    pub fn face_points(&self, face: &Face) -> Vec<Vec<Q>> {
        let mut out = Vec::with_capacity(face.left.len() * face.right.len());
        for &a in &face.left {
            for &b in &face.right {
                out.push(self.diff[a][b].clone());
            }
        }
        out
    }

    /// Rank of the linear part of the difference map on a face.
    pub fn face_rank(&self, face: &Face) -> usize {
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let a0 = &self.u[face.left[0]];
        for &a in &face.left[1..] {
            rows.push(self.u[a].iter().zip(a0).map(|(x, y)| x - y).collect());
        }
        let b0 = &self.v[face.right[0]];
        for &b in &face.right[1..] {
            rows.push(self.v[b].iter().zip(b0).map(|(x, y)| x - y).collect());
        }
        if rows.is_empty() {
            0
        } else {
            rank(&rows)
        }
    }

    /// Whether some point of the face maps to the translate `k`.
    pub fn meets(&self, face: &Face, k: &[i64]) -> bool {
        let cols = face.left.len() + face.right.len();
        let mut a = vec![vec![Q::zero(); cols]; self.n + 2];
        for (j, &ai) in face.left.iter().enumerate() {
            for i in 0..self.n {
                a[i][j] = self.u[ai][i].clone();
            }
            a[self.n][j] = q(1);
        }
        for (j, &bi) in face.right.iter().enumerate() {
            let c = face.left.len() + j;
            for i in 0..self.n {
                a[i][c] = -self.v[bi][i].clone();
            }
            a[self.n + 1][c] = q(1);
        }
        let mut b: Vec<Q> = k.iter().map(|&x| q(x)).collect();
        b.push(q(1));
        b.push(q(1));
        feasible_nonnegative(&a, &b)
    }
}

/// Nonempty subsets of `0..m`, in order of their bitmask.
pub(crate) fn subsets(m: usize) -> Vec<Vec<usize>> {
    (1u32..(1u32 << m))
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

pub(crate) fn faces(p: usize, q: usize) -> Vec<Face> {
    let mut out = Vec::new();
    for left in subsets(p + 1) {
        for right in subsets(q + 1) {
            out.push(Face {
                left: left.clone(),
                right,
            });
        }
    }
    out
}

/// Integer points of the bounding box of a point set.
pub(crate) fn lattice_box(points: &[Vec<Q>]) -> Vec<Vec<i64>> {
    let n = points[0].len();
    let mut ranges = Vec::with_capacity(n);
    for i in 0..n {
        let lo = points.iter().map(|p| ceil_i64(&p[i])).min().unwrap();
        let hi = points.iter().map(|p| floor_i64(&p[i])).max().unwrap();
        if lo > hi {
            return Vec::new();
        }
        ranges.push((lo, hi));
    }
    let mut out = vec![Vec::new()];
    for (lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Integer points of the affine hull of `points` inside their bounding box.
fn candidate_translates(points: &[Vec<Q>]) -> Vec<Vec<i64>> {
    let n = points[0].len();
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let normals = null_space(&diffs, n);
    let offsets: Vec<Q> = normals
        .iter()
        .map(|y| {
            y.iter()
                .zip(&points[0])
                .fold(Q::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect();
    lattice_box(points)
        .into_iter()
        .filter(|k| {
            normals.iter().zip(&offsets).all(|(y, c)| {
                let v = y
                    .iter()
                    .zip(k)
                    .fold(Q::zero(), |acc, (a, &b)| acc + a * q(b));
                v == *c
            })
        })
        .collect()
}

fn term_witness(index: usize, g: &TermGeometry) -> Option<TransversalityWitness> {
    let (p, qd, n) = (g.p(), g.q(), g.n);
    let low = (n - 1).min(p + qd);
    for face in faces(p, qd) {
        let d = face.dim();
        let r = if d == low || d >= n {
            g.face_rank(&face)
        } else {
            continue;
        };
        if r >= n {
            continue;
        }
        let points = g.face_points(&face);
        for k in candidate_translates(&points) {
            if g.meets(&face, &k) {
                return Some(TransversalityWitness {
                    term: index,
                    face,
                    translate: k,
                    rank: r,
                });
            }
        }
    }
    None
}

/// Whether every term meets the diagonal transversally on every face of
/// `Δᵖ × Δᵠ`, and where it first fails if not. Terms are numbered in the
/// canonical order of the bi-chain.
pub fn transversality_witness(b: &BiChain) -> Option<TransversalityWitness> {
    b.terms()
        .enumerate()
        .find_map(|(i, t)| term_witness(i, &TermGeometry::new(&t)))
}

pub fn is_transverse(b: &BiChain) -> bool {
    transversality_witness(b).is_none()
}

/// A transverse translate of a bi-chain.
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub chain: BiChain,
    pub shift: Vec<Q>,
    pub attempts: usize,
}

/// Moves every left factor by one common vector `s` with
/// `max |s_i| <= radius`, trying `s = 0` first and then seeded random
/// shifts until the result is transverse.
pub fn perturb_translate_detailed(b: &BiChain, seed: u64, radius: &Q) -> Result<Perturbation> {
    if radius.is_negative() {
        return Err(Error::Structure("negative perturbation radius".into()));
    }
    let n = b.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    let attempts = if radius.is_zero() { 1 } else { RETRY_CAP };
    for attempt in 0..attempts {
        let shift: Vec<Q> = if attempt == 0 {
            vec![Q::zero(); n]
        } else {
            (0..n)
                .map(|_| radius * q_frac(rng.gen_range(-SHIFT_GRID..=SHIFT_GRID), SHIFT_GRID))
                .collect()
        };
        let moved = b.translate_left(&shift);
        match transversality_witness(&moved) {
            None => {
                return Ok(Perturbation {
                    chain: moved,
                    shift,
                    attempts: attempt + 1,
                })
            }
            Some(w) => last = Some(w),
        }
    }
    Err(Error::PerturbationFailure {
        attempts,
        radius: format_q(radius),
        reason: match last {
            Some(w) => format!("still not transverse: {w}"),
            None => "no attempt made".into(),
        },
    })
}

/// Shifts are multiples of `radius / SHIFT_GRID`; a prime keeps them away
/// from the small denominators of typical input.
const SHIFT_GRID: i64 = 4099;

pub fn perturb_translate(b: &BiChain, seed: u64, radius: &Q) -> Result<BiChain> {
    perturb_translate_detailed(b, seed, radius).map(|p| p.chain)
}
