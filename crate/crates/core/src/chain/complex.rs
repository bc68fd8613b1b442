use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::snf::IntMatrix;

/// Vertex tuple of a simplex, strictly increasing.
pub type Simplex = Vec<u32>;

/// A finite abstract simplicial complex with every simplex listed
/// explicitly. Simplices are kept in lexicographic order per dimension, so
/// indices do not depend on the order in which the input listed them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<u32>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from per-dimension simplex lists, checking that
    /// tuples are strictly increasing, unique, and closed under faces.
    pub fn new(vertices: Vec<u32>, simplices: Vec<Vec<Simplex>>) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structure("duplicate vertex identifier".into()));
        }
        let mut simplices = simplices;
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        let mut index = Vec::with_capacity(simplices.len());
        for (k, list) in simplices.iter_mut().enumerate() {
            for s in list.iter() {
                if s.len() != k + 1 {
                    return Err(Error::Structure(format!(
                        "simplex {s:?} listed in dimension {k} has {} vertices",
                        s.len()
                    )));
                }
                if s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Structure(format!(
                        "vertex tuple {s:?} is not strictly increasing"
                    )));
                }
            }
            list.sort();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Structure(format!("duplicate simplex {:?}", w[0])));
            }
            index.push(
                list.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect(),
            );
        }
        let complex = SimplicialComplex {
            vertices,
            simplices,
            index,
        };
        complex.check_closure()?;
        Ok(complex)
    }

    /// The closure of a list of maximal simplices (vertex lists in any order).
    pub fn from_facets(facets: &[Vec<u32>]) -> Result<Self> {
        let mut by_dim: Vec<std::collections::BTreeSet<Simplex>> = Vec::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Structure(format!("facet {f:?} repeats a vertex")));
            }
            let n = f.len();
            if n == 0 {
                continue;
            }
            // Every nonempty subset, by bitmask.
            for mask in 1u32..(1u32 << n) {
                let s: Simplex = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                let d = s.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, Default::default);
                }
                by_dim[d].insert(s);
            }
        }
        let vertices = by_dim
            .first()
            .map_or(Vec::new(), |v| v.iter().map(|s| s[0]).collect());
        Self::new(
            vertices,
            by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        )
    }

    fn check_closure(&self) -> Result<()> {
        if let Some(v0) = self.simplices.first() {
            for s in v0 {
                if self.vertices.binary_search(&s[0]).is_err() {
                    return Err(Error::Structure(format!("vertex {} is not declared", s[0])));
                }
            }
        }
        for k in 1..self.simplices.len() {
            for s in &self.simplices[k] {
                for i in 0..=k {
                    let f = face_of(s, i);
                    if !self.index[k - 1].contains_key(&f) {
                        return Err(Error::Structure(format!(
                            "face {f:?} of simplex {s:?} is missing"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, k: usize, i: usize) -> &Simplex {
        &self.simplices[k][i]
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Index of the `i`-th face (vertex `i` deleted) of simplex `idx` in dimension `k`.
    pub fn face_index(&self, k: usize, idx: usize, i: usize) -> usize {
        let f = face_of(&self.simplices[k][idx], i);
        self.index[k - 1][&f]
    }

    /// For each `(n-1)`-simplex, the top simplices containing it together
    /// with the position of the deleted vertex.
    pub fn cofaces_of_ridges(&self) -> Vec<Vec<(usize, usize)>> {
        let Some(n) = self.dim().filter(|&n| n > 0) else {
            return Vec::new();
        };
        let mut out = vec![Vec::new(); self.count(n - 1)];
        for t in 0..self.count(n) {
            for i in 0..=n {
                out[self.face_index(n, t, i)].push((t, i));
            }
        }
        out
    }
}

pub fn face_of(s: &[u32], i: usize) -> Simplex {
    s.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect()
}

/// Signs `ε(σ, F_i σ)` on every codimension-one incidence of a complex.
/// The all-`+1` character gives the ordinary boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationCharacter {
    /// `signs[k][idx][i]` for the `i`-th face of simplex `idx` of dimension `k >= 1`.
    signs: Vec<Vec<Vec<i8>>>,
}

impl OrientationCharacter {
    pub fn trivial(k: &SimplicialComplex) -> Self {
        let signs = (0..k.simplices.len())
            .map(|d| vec![vec![1i8; if d == 0 { 0 } else { d + 1 }]; k.count(d)])
            .collect();
        OrientationCharacter { signs }
    }

    /// A character given by explicit `(simplex, face position, sign)`
    /// incidences; unlisted incidences default to `+1`.
    pub fn from_incidences(
        k: &SimplicialComplex,
        incidences: &[(Simplex, usize, i8)],
    ) -> Result<Self> {
        let mut w = Self::trivial(k);
        for (s, i, sign) in incidences {
            let d = s.len().wrapping_sub(1);
            let idx = k
                .index_of(s)
                .ok_or_else(|| Error::Structure(format!("sign given for unknown simplex {s:?}")))?;
            if d == 0 || *i > d {
                return Err(Error::Structure(format!("simplex {s:?} has no face {i}")));
            }
            if *sign != 1 && *sign != -1 {
                return Err(Error::Structure(format!("sign {sign} is not +1 or -1")));
            }
            w.signs[d][idx][*i] = *sign;
        }
        Ok(w)
    }

    /// The orientation character of a closed pseudomanifold, read off from
    /// local orientations: each simplex is charted by its open star,
    /// oriented by propagation from the first top simplex around it, and
    /// the sign of an incidence compares the two star orientations on the
    /// smaller star.
    pub fn from_local_orientations(k: &SimplicialComplex) -> Result<Self> {
        let n = k
            .dim()
            .ok_or_else(|| Error::NotManifold("empty complex".into()))?;
        let ridges = k.cofaces_of_ridges();
        if let Some((r, c)) = ridges.iter().enumerate().find(|(_, c)| c.len() != 2) {
            return Err(Error::NotManifold(format!(
                "ridge {:?} has {} cofaces",
                k.simplex(n - 1, r),
                c.len()
            )));
        }
        // Top simplices containing each simplex.
        let mut star: Vec<Vec<Vec<usize>>> =
            (0..=n).map(|d| vec![Vec::new(); k.count(d)]).collect();
        for t in 0..k.count(n) {
            let top = k.simplex(n, t);
            let m = top.len();
            for mask in 1u32..(1u32 << m) {
                let s: Simplex = (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| top[i])
                    .collect();
                let d = s.len() - 1;
                star[d][k.index_of(&s).unwrap()].push(t);
            }
        }
        // Star orientation of each simplex relative to each top simplex of its star.
        let mut star_sign: Vec<Vec<BTreeMap<usize, i8>>> =
            (0..=n).map(|d| vec![BTreeMap::new(); k.count(d)]).collect();
        for d in 0..=n {
            for idx in 0..k.count(d) {
                let tops = &star[d][idx];
                let Some(&root) = tops.iter().min() else {
                    return Err(Error::NotManifold(format!(
                        "simplex {:?} lies in no top simplex",
                        k.simplex(d, idx)
                    )));
                };
                let s = k.simplex(d, idx).clone();
                let signs = &mut star_sign[d][idx];
                signs.insert(root, 1);
                let mut queue = VecDeque::from([root]);
                while let Some(t) = queue.pop_front() {
                    let st = signs[&t];
                    for i in 0..=n {
                        let ridge = k.face_index(n, t, i);
                        if !s.iter().all(|v| k.simplex(n - 1, ridge).contains(v)) {
                            continue;
                        }
                        for &(t2, i2) in &ridges[ridge] {
                            if t2 == t {
                                continue;
                            }
                            let want = -st * if (i + i2) % 2 == 0 { 1 } else { -1 };
                            match signs.get(&t2) {
                                Some(&have) if have != want => {
                                    return Err(Error::NotManifold(format!(
                                        "star of {s:?} is not orientable"
                                    )))
                                }
                                Some(_) => {}
                                None => {
                                    signs.insert(t2, want);
                                    queue.push_back(t2);
                                }
                            }
                        }
                    }
                }
                if signs.len() != tops.len() {
                    return Err(Error::NotManifold(format!(
                        "star of {s:?} is not connected through ridges"
                    )));
                }
            }
        }
        let mut w = Self::trivial(k);
        for d in 1..=n {
            for idx in 0..k.count(d) {
                let root = *star_sign[d][idx].keys().next().unwrap();
                for i in 0..=d {
                    let f = k.face_index(d, idx, i);
                    w.signs[d][idx][i] = star_sign[d - 1][f][&root];
                }
            }
        }
        Ok(w)
    }

    pub fn sign(&self, k: usize, idx: usize, i: usize) -> i64 {
        i64::from(self.signs[k][idx][i])
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().flatten().flatten().all(|&s| s == 1)
    }

    /// Transport sign from a simplex to its back face `[v_j .. v_k]`,
    /// deleting the leading vertex `j` times.
    pub fn back_transport(
        &self,
        c: &SimplicialComplex,
        k: usize,
        idx: usize,
        j: usize,
    ) -> (usize, i64) {
        let (mut d, mut cur, mut sign) = (k, idx, 1);
        for _ in 0..j {
            sign *= self.sign(d, cur, 0);
            cur = c.face_index(d, cur, 0);
            d -= 1;
        }
        (cur, sign)
    }

    /// Transport sign from a simplex to its front face `[v_0 .. v_{k-j}]`,
    /// deleting the trailing vertex `j` times.
    pub fn front_transport(
        &self,
        c: &SimplicialComplex,
        k: usize,
        idx: usize,
        j: usize,
    ) -> (usize, i64) {
        let (mut d, mut cur, mut sign) = (k, idx, 1);
        for _ in 0..j {
            sign *= self.sign(d, cur, d);
            cur = c.face_index(d, cur, d);
            d -= 1;
        }
        (cur, sign)
    }
}

/// Graded free abelian groups with integer boundary matrices;
/// `boundaries[k]` maps degree `k` to degree `k - 1` (`boundaries[0]` has no rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// `∂_k`, or an empty map outside the complex.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        match self.boundaries.get(k) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.ranks.get(k - 1).copied().unwrap_or(0), 0),
        }
    }

    /// Coboundary `δ^k : C^k -> C^{k+1}` (the transpose of `∂_{k+1}`).
    pub fn coboundary(&self, k: usize) -> IntMatrix {
        match self.boundaries.get(k + 1) {
            Some(m) => m.transpose(),
            None => IntMatrix::zeros(0, self.ranks.get(k).copied().unwrap_or(0)),
        }
    }
}

/// Builds the twisted boundary `∂σ = Σ ε (-1)^i F_i σ` and checks `∂∂ = 0`.
pub fn validate_complex(k: &SimplicialComplex, w: &OrientationCharacter) -> Result<ChainComplexZ> {
    k.check_closure()?;
    let top = k.dim().map_or(0, |d| d + 1);
    if w.signs.len() != top || (0..top).any(|d| w.signs[d].len() != k.count(d)) {
        return Err(Error::Structure(
            "orientation character does not match the complex".into(),
        ));
    }
    let ranks: Vec<usize> = (0..top).map(|d| k.count(d)).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks.first().copied().unwrap_or(0))];
    for d in 1..top {
        let mut m = IntMatrix::zeros(ranks[d - 1], ranks[d]);
        for idx in 0..ranks[d] {
            for i in 0..=d {
                let f = k.face_index(d, idx, i);
                let alt = if i % 2 == 0 { 1 } else { -1 };
                m[(f, idx)] += w.sign(d, idx, i) * alt;
            }
        }
        boundaries.push(m);
    }
    for d in 2..top {
        let sq = boundaries[d - 1].mul(&boundaries[d]);
        if let Some(col) = (0..sq.cols()).find(|&c| sq.column(c).iter().any(|&x| x != 0)) {
            return Err(Error::SignCocycle(format!(
                "simplex {:?}",
                k.simplex(d, col)
            )));
        }
    }
    Ok(ChainComplexZ { ranks, boundaries })
}
