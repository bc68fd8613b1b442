//! Generators for the bundled triangulations, and the bundled data files.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::chain::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Boundary of the standard `(n+1)`-simplex, a triangulated `n`-sphere.
pub fn sphere(n: usize) -> SimplicialComplex {
    let all: Vec<u32> = (0..=n as u32 + 1).collect();
    let facets: Vec<Vec<u32>> = (0..all.len())
        .map(|skip| all.iter().copied().filter(|&v| v != skip as u32).collect())
        .collect();
    SimplicialComplex::from_facets(&facets).expect("sphere is well formed")
}

/// The six-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    let facets = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    SimplicialComplex::from_facets(&facets.map(|f| f.to_vec())).expect("RP2 is well formed")
}

/// `RP³` as the barycentric subdivision of the boundary of the 4-dimensional
/// cross-polytope modulo the antipodal map.
pub fn projective_space3() -> SimplicialComplex {
    // Faces of the cross-polytope boundary as sign vectors in {-1,0,1}^4.
    let mut faces: Vec<[i8; 4]> = Vec::new();
    for code in 0..81u32 {
        let mut s = [0i8; 4];
        let mut c = code;
        for x in &mut s {
            *x = (c % 3) as i8 - 1;
            c /= 3;
        }
        let size = s.iter().filter(|&&x| x != 0).count();
        if (1..=4).contains(&size) {
            faces.push(s);
        }
    }
    let canonical = |s: [i8; 4]| -> [i8; 4] {
        let lead = *s.iter().find(|&&x| x != 0).unwrap();
        if lead > 0 {
            s
        } else {
            s.map(|x| -x)
        }
    };
    let classes: BTreeSet<[i8; 4]> = faces.iter().map(|&s| canonical(s)).collect();
    let id: HashMap<[i8; 4], u32> = classes
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i as u32))
        .collect();
    let mut facets = BTreeSet::new();
    for &top in faces.iter().filter(|s| s.iter().all(|&x| x != 0)) {
        // Flags of faces inside `top`: orderings of its coordinates.
        for perm in permutations(4) {
            let mut f = [0i8; 4];
            let mut flag = Vec::with_capacity(4);
            for &c in &perm {
                f[c] = top[c];
                flag.push(id[&canonical(f)]);
            }
            flag.sort_unstable();
            facets.insert(flag);
        }
    }
    let facets: Vec<Vec<u32>> = facets.into_iter().collect();
    SimplicialComplex::from_facets(&facets).expect("RP3 is well formed")
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A Kuhn triangulation of the flat torus `Rⁿ/Zⁿ` on an `m × … × m` grid,
/// with a lift to `Rⁿ` of every simplex. Lifted coordinates are integers
/// to be divided by `m`.
#[derive(Clone, Debug)]
pub struct GridTorus {
    pub n: usize,
    pub m: i64,
    pub complex: SimplicialComplex,
    /// `lifts[k][idx]`: one lifted position per vertex, in vertex order.
    pub lifts: Vec<Vec<Vec<Vec<i64>>>>,
}

impl GridTorus {
    pub fn new(n: usize, m: i64) -> Result<Self> {
        if n == 0 || m < 3 {
            return Err(Error::Structure(
                "grid torus needs n >= 1 and m >= 3".into(),
            ));
        }
        let vid = |p: &[i64]| -> u32 {
            p.iter()
                .rev()
                .fold(0i64, |acc, &x| acc * m + x.rem_euclid(m)) as u32
        };
        let mut lifted: BTreeMap<Simplex, Vec<Vec<i64>>> = BTreeMap::new();
        let mut facets = Vec::new();
        let cells = m.pow(n as u32);
        for cell in 0..cells {
            let base: Vec<i64> = (0..n).map(|j| cell / m.pow(j as u32) % m).collect();
            for perm in permutations(n) {
                let mut pts = vec![base.clone()];
                let mut cur = base.clone();
                for &axis in &perm {
                    cur[axis] += 1;
                    pts.push(cur.clone());
                }
                let mut tagged: Vec<(u32, Vec<i64>)> =
                    pts.iter().map(|p| (vid(p), p.clone())).collect();
                tagged.sort();
                if tagged.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::Structure("grid too small".into()));
                }
                let m_vertices = tagged.len();
                for mask in 1u32..(1u32 << m_vertices) {
                    let sub: Vec<&(u32, Vec<i64>)> = (0..m_vertices)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| &tagged[i])
                        .collect();
                    let s: Simplex = sub.iter().map(|t| t.0).collect();
                    lifted
                        .entry(s)
                        .or_insert_with(|| sub.iter().map(|t| t.1.clone()).collect());
                }
                facets.push(tagged.into_iter().map(|t| t.0).collect::<Vec<_>>());
            }
        }
        let complex = SimplicialComplex::from_facets(&facets)?;
        let expected_tops = cells as usize * permutations(n).len();
        if complex.count(n) != expected_tops {
            return Err(Error::Structure(
                "grid too small: simplices were identified".into(),
            ));
        }
        let lifts = (0..=n)
            .map(|k| {
                complex
                    .simplices(k)
                    .iter()
                    .map(|s| lifted[s].clone())
                    .collect()
            })
            .collect();
        Ok(GridTorus {
            n,
            m,
            complex,
            lifts,
        })
    }
}

/// Klein bottle on an `m × m` grid: `(x, y) ~ (x + 1, y) ~ (-x, y + 1)`.
pub fn klein_bottle(m: u32) -> Result<SimplicialComplex> {
    let id = |i: i64, j: i64| -> u32 {
        let (i, j) = if j.rem_euclid(2 * m as i64) >= m as i64 {
            (-i, j)
        } else {
            (i, j)
        };
        (j.rem_euclid(m as i64) * m as i64 + i.rem_euclid(m as i64)) as u32
    };
    let mut facets = Vec::new();
    for j in 0..m as i64 {
        for i in 0..m as i64 {
            let pts = |di: i64, dj: i64| id(i + di, j + dj);
            facets.push(vec![pts(0, 0), pts(1, 0), pts(1, 1)]);
            facets.push(vec![pts(0, 0), pts(0, 1), pts(1, 1)]);
        }
    }
    let k = SimplicialComplex::from_facets(&facets)?;
    if k.count(2) != 2 * (m * m) as usize {
        return Err(Error::Structure(
            "grid too small: triangles were identified".into(),
        ));
    }
    Ok(k)
}

/// Bundled simplicial complexes by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("s2", include_str!("../catalog/s2.json")),
    ("s3", include_str!("../catalog/s3.json")),
    ("t2", include_str!("../catalog/t2.json")),
    ("t3", include_str!("../catalog/t3.json")),
    ("rp2", include_str!("../catalog/rp2.json")),
    ("rp3", include_str!("../catalog/rp3.json")),
    ("klein", include_str!("../catalog/klein.json")),
];

/// Bundled specs of manifolds whose geodesics all close up with one length.
pub const BUNDLED_CROSS: &[(&str, &str)] = &[
    ("S2", include_str!("../catalog/cross/S2.json")),
    ("S3", include_str!("../catalog/cross/S3.json")),
    ("S4", include_str!("../catalog/cross/S4.json")),
    ("RP2", include_str!("../catalog/cross/RP2.json")),
];

/// Names are matched case-insensitively.
pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, s)| *s)
}

pub fn bundled_cross(name: &str) -> Option<&'static str> {
    BUNDLED_CROSS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, s)| *s)
}
