use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{determinant, inverse, q, rank, Q};
use crate::torus::bichain::{BiChain, BiTerm};
use crate::torus::simplex::{AffineSimplex, LoopFamily, TorusChain};
use crate::torus::transverse::{faces, lattice_box, transversality_witness, Face, TermGeometry};

/// A point of `Δᵖ × Δᵠ` in barycentric coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiPoint {
    pub left: Vec<Q>,
    pub right: Vec<Q>,
}

/// One oriented simplex of the diagonal preimage `W` of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub term: usize,
    pub translate: Vec<i64>,
    pub points: Vec<BiPoint>,
    /// Orientation of the piece times `(-1)^{n(n-q)}`.
    pub sign: i64,
    pub coef: i64,
    /// The piece pushed forward by the left factor.
    pub image: AffineSimplex,
    pub left_winding: Vec<i64>,
    pub right_winding: Vec<i64>,
}

/// The triangulated, signed preimage of the diagonal of a transverse bi-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransverseIntersection {
    pub n: usize,
    /// `p + q - n`; negative when every preimage is empty.
    pub degree: i64,
    pub pieces: Vec<Piece>,
}

pub fn dold_sign(n: usize, q: usize) -> i64 {
    if (n * (n - q.min(n))) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Orders preimage vertices by their image in both factors, so that a face
/// shared by two terms is triangulated the same way from either side.
fn vertex_key(g: &TermGeometry, pt: &BiPoint) -> (Vec<Q>, Vec<Q>, BiPoint) {
    let image = |verts: &[Vec<Q>], w: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); g.n];
        for (x, v) in w.iter().zip(verts) {
            for (o, c) in out.iter_mut().zip(v) {
                *o += x * c;
            }
        }
        out
    };
    (image(&g.u, &pt.left), image(&g.v, &pt.right), pt.clone())
}

struct Triangulator<'a> {
    coords: &'a [Vec<Q>],
    memo: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

impl Triangulator<'_> {
    fn affine_dim(&self, set: &[usize]) -> usize {
        if set.len() <= 1 {
            return 0;
        }
        let base = &self.coords[set[0]];
        let rows: Vec<Vec<Q>> = set[1..]
            .iter()
            .map(|&i| {
                self.coords[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        rank(&rows)
    }

    /// Pulling triangulation of the polytope spanned by `set` (sorted
    /// vertex indices, least first), whose faces are cut out by coordinate
    /// hyperplanes.
    fn run(&mut self, set: &[usize], d: usize) -> Vec<Vec<usize>> {
        if let Some(t) = self.memo.get(set) {
            return t.clone();
        }
        let out = if d == 0 {
            vec![vec![set[0]]]
        } else {
            let apex = set[0];
            let width = self.coords[apex].len();
            let mut facets = BTreeSet::new();
            for c in 0..width {
                let g: Vec<usize> = set
                    .iter()
                    .copied()
                    .filter(|&i| self.coords[i][c].is_zero())
                    .collect();
                if g.is_empty() || g.contains(&apex) || g.len() == set.len() {
                    continue;
                }
                if self.affine_dim(&g) == d - 1 {
                    facets.insert(g);
                }
            }
            let mut out = Vec::new();
            for g in facets {
                for s in self.run(&g, d - 1) {
                    let mut simplex = Vec::with_capacity(d + 1);
                    simplex.push(apex);
                    simplex.extend(s);
                    out.push(simplex);
                }
            }
            out
        };
        self.memo.insert(set.to_vec(), out.clone());
        out
    }
}

/// Preimage vertices of every translate: for faces of dimension `n` with a
/// bijective difference map, the unique solution when it is interior.
fn preimage_vertices(g: &TermGeometry) -> BTreeMap<Vec<i64>, Vec<BiPoint>> {
    let (p, qd, n) = (g.p(), g.q(), g.n);
    let mut out: BTreeMap<Vec<i64>, Vec<BiPoint>> = BTreeMap::new();
    for face in faces(p, qd).into_iter().filter(|f: &Face| f.dim() == n) {
        let size = n + 2;
        let mut m = vec![vec![Q::zero(); size]; size];
        for (j, &a) in face.left.iter().enumerate() {
            for i in 0..n {
                m[i][j] = g.u[a][i].clone();
            }
            m[n][j] = Q::one();
        }
        for (j, &b) in face.right.iter().enumerate() {
            let c = face.left.len() + j;
            for i in 0..n {
                m[i][c] = -g.v[b][i].clone();
            }
            m[n + 1][c] = Q::one();
        }
        let Some(inv) = inverse(&m) else { continue };
        let points = g.face_points(&face);
        for k in lattice_box(&points) {
            // inv · (k, 1, 1)
            let sol: Vec<Q> = inv
                .iter()
                .map(|row| {
                    let mut acc = &row[n] + &row[n + 1];
                    for i in 0..n {
                        if k[i] != 0 {
                            acc += &row[i] * q(k[i]);
                        }
                    }
                    acc
                })
                .collect();
            if sol.iter().any(|x| !x.is_positive()) {
                continue;
            }
            let mut left = vec![Q::zero(); p + 1];
            let mut right = vec![Q::zero(); qd + 1];
            for (j, &a) in face.left.iter().enumerate() {
                left[a] = sol[j].clone();
            }
            for (j, &b) in face.right.iter().enumerate() {
                right[b] = sol[face.left.len() + j].clone();
            }
            out.entry(k).or_default().push(BiPoint { left, right });
        }
    }
    out
}

/// Right inverse `Gᵀ(GGᵀ)⁻¹` of the differential of `(λ, μ) ↦ v(μ) - u(λ)`
/// in the coordinates `(λ₁..λ_p, μ₁..μ_q)`: its columns are normal vectors
/// mapping to the standard basis.
fn normal_frame(g: &TermGeometry) -> Option<Vec<Vec<Q>>> {
    let (p, qd, n) = (g.p(), g.q(), g.n);
    let width = p + qd;
    let mut dg = vec![vec![Q::zero(); width]; n];
    for a in 1..=p {
        for i in 0..n {
            dg[i][a - 1] = &g.u[0][i] - &g.u[a][i];
        }
    }
    for b in 1..=qd {
        for i in 0..n {
            dg[i][p + b - 1] = &g.v[b][i] - &g.v[0][i];
        }
    }
    let mut gram = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = (0..width).fold(Q::zero(), |acc, c| acc + &dg[i][c] * &dg[j][c]);
        }
    }
    let gi = inverse(&gram)?;
    // (width × n) = dgᵀ · gi
    Some(
        (0..width)
            .map(|c| {
                (0..n)
                    .map(|j| (0..n).fold(Q::zero(), |acc, i| acc + &dg[i][c] * &gi[i][j]))
                    .collect()
            })
            .collect(),
    )
}

fn local(pt: &BiPoint) -> Vec<Q> {
    pt.left[1..]
        .iter()
        .chain(pt.right[1..].iter())
        .cloned()
        .collect()
}

fn intersect_term(index: usize, t: &BiTerm) -> Result<Vec<Piece>> {
    let g = TermGeometry::new(t);
    let (p, qd, n) = (g.p(), g.q(), g.n);
    if p + qd < n {
        return Ok(Vec::new());
    }
    let d = p + qd - n;
    let vertices = preimage_vertices(&g);
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    let frame = normal_frame(&g)
        .ok_or_else(|| Error::NotTransverse(format!("term {index}: difference map is not onto")))?;
    let dold = dold_sign(n, qd);
    let mut pieces = Vec::new();
    for (k, mut pts) in vertices {
        pts.sort_by_cached_key(|pt| vertex_key(&g, pt));
        let coords: Vec<Vec<Q>> = pts
            .iter()
            .map(|pt| pt.left.iter().chain(&pt.right).cloned().collect())
            .collect();
        let mut tri = Triangulator {
            coords: &coords,
            memo: HashMap::new(),
        };
        let all: Vec<usize> = (0..pts.len()).collect();
        if tri.affine_dim(&all) != d {
            return Err(Error::NotTransverse(format!(
                "term {index}: preimage at translate {k:?} has the wrong dimension"
            )));
        }
        for simplex in tri.run(&all, d) {
            let base = local(&pts[simplex[0]]);
            let width = p + qd;
            let mut m = vec![vec![Q::zero(); width]; width];
            for (col, &vi) in simplex[1..].iter().enumerate() {
                for (r, x) in local(&pts[vi]).iter().enumerate() {
                    m[r][col] = x - &base[r];
                }
            }
            for (j, f) in (0..n).map(|j| (j, d + j)) {
                for r in 0..width {
                    m[r][f] = frame[r][j].clone();
                }
            }
            let det = determinant(&m);
            if det.is_zero() {
                return Err(Error::NotTransverse(format!(
                    "term {index}: degenerate preimage piece"
                )));
            }
            let orientation = if det.is_positive() { 1 } else { -1 };
            let points: Vec<BiPoint> = simplex.iter().map(|&i| pts[i].clone()).collect();
            let image = AffineSimplex {
                vertices: points.iter().map(|pt| t.left.base.at(&pt.left)).collect(),
            };
            pieces.push(Piece {
                term: index,
                translate: k.clone(),
                points,
                sign: orientation * dold,
                coef: t.coef,
                image,
                left_winding: t.left.winding.clone(),
                right_winding: t.right.winding.clone(),
            });
        }
    }
    Ok(pieces)
}

/// Total degree `p + q` shared by all terms.
fn total_degree(b: &BiChain) -> Result<Option<usize>> {
    let mut degrees = b.terms().map(|t| t.left.dim() + t.right.dim());
    let Some(first) = degrees.next() else {
        return Ok(None);
    };
    if degrees.any(|d| d != first) {
        return Err(Error::Degree(
            "bi-chain terms have different total degrees".into(),
        ));
    }
    Ok(Some(first))
}

fn intersect_unchecked(b: &BiChain, degree: i64) -> Result<TransverseIntersection> {
    let mut pieces = Vec::new();
    for (i, t) in b.terms().enumerate() {
        pieces.extend(intersect_term(i, &t)?);
    }
    Ok(TransverseIntersection {
        n: b.n(),
        degree,
        pieces,
    })
}

/// `W` for every term: the preimage of the diagonal, triangulated and
/// oriented so that `W` followed by the normal co-oriented by `v - u`
/// is the product orientation, times the sign `(-1)^{n(n-q)}`.
pub fn chain_intersection(b: &BiChain) -> Result<TransverseIntersection> {
    if let Some(w) = transversality_witness(b) {
        return Err(Error::NotTransverse(w.to_string()));
    }
    let degree = match total_degree(b)? {
        Some(t) => t as i64 - b.n() as i64,
        None => 0,
    };
    intersect_unchecked(b, degree)
}

impl TransverseIntersection {
    fn collect(&self, compose: bool) -> Option<TorusChain> {
        if self.degree < 0 {
            return None;
        }
        let mut c = TorusChain::zero(self.n, self.degree as usize);
        for piece in &self.pieces {
            let winding = if compose {
                piece
                    .left_winding
                    .iter()
                    .zip(&piece.right_winding)
                    .map(|(a, b)| a + b)
                    .collect()
            } else {
                vec![0; self.n]
            };
            c.add(
                piece.coef * piece.sign,
                LoopFamily {
                    base: piece.image.clone(),
                    winding,
                },
            )
            .expect("pieces have the output degree");
        }
        Some(c)
    }

    /// The intersection pushed forward to the torus by the left factor.
    pub fn chain(&self) -> Result<TorusChain> {
        self.collect(false).ok_or_else(|| {
            Error::Degree(format!("intersection degree {} is negative", self.degree))
        })
    }
}

/// Loop composition over `W`: each piece carries the left base and the sum
/// of both windings.
pub fn compose_loops(t: &TransverseIntersection) -> Result<TorusChain> {
    t.collect(true)
        .ok_or_else(|| Error::Degree(format!("intersection degree {} is negative", t.degree)))
}

/// Both sides of `∂(ξ·η) = (∂ξ)·η + (-1)^{n-p} ξ·(∂η)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationReport {
    pub lhs: Option<TorusChain>,
    pub rhs: Option<TorusChain>,
    pub holds: bool,
    pub mismatch: Option<String>,
}

pub fn derivation_check(b: &BiChain) -> Result<DerivationReport> {
    let whole = chain_intersection(b)?;
    let n = b.n();
    let lower = whole.degree - 1;
    let sign = |p: usize| if (n + p) % 2 == 0 { 1 } else { -1 };
    let mut faces = b.left_boundary();
    let right = b.right_boundary();
    for t in right.terms() {
        let p = t.left.dim();
        faces
            .add(BiTerm {
                coef: sign(p) * t.coef,
                ..t
            })
            .expect("same torus");
    }
    let rhs = intersect_unchecked(&faces, lower)?.collect(true);
    let lhs = whole
        .collect(true)
        .map(|c| c.boundary())
        .filter(|_| lower >= 0);
    let (holds, mismatch) = match (&lhs, &rhs) {
        (Some(l), Some(r)) => {
            if l == r {
                (true, None)
            } else {
                let first = l
                    .terms()
                    .find(|(s, c)| r.terms().all(|(s2, c2)| s2 != *s || c2 != *c))
                    .map(|(s, c)| format!("{c} x {s:?} on the boundary side"))
                    .or_else(|| {
                        r.terms()
                            .find(|(s, c)| l.terms().all(|(s2, c2)| s2 != *s || c2 != *c))
                            .map(|(s, c)| format!("{c} x {s:?} on the face side"))
                    });
                (false, first)
            }
        }
        (None, None) => (true, None),
        _ => (false, Some("degree mismatch".into())),
    };
    // When the boundary degree is negative the face side must be empty.
    let holds = holds && (lower >= 0 || faces_empty(&faces, lower)?);
    Ok(DerivationReport {
        lhs,
        rhs,
        holds,
        mismatch,
    })
}

fn faces_empty(b: &BiChain, degree: i64) -> Result<bool> {
    Ok(intersect_unchecked(b, degree)?.pieces.is_empty())
}
