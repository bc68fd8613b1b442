use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{floor_i64, q, Q};

/// An affine simplex in `Rⁿ`, read modulo `Zⁿ` as a simplex on the flat torus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineSimplex {
    pub vertices: Vec<Vec<Q>>,
}

impl AffineSimplex {
    pub fn new(vertices: Vec<Vec<Q>>) -> Result<Self> {
        let n = vertices
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Structure("simplex without vertices".into()))?;
        if n == 0 || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::Structure(
                "vertex lifts must share a positive ambient dimension".into(),
            ));
        }
        Ok(AffineSimplex { vertices })
    }

    pub fn point(p: Vec<Q>) -> Self {
        AffineSimplex { vertices: vec![p] }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn face(&self, i: usize) -> AffineSimplex {
        let mut vertices = self.vertices.clone();
        vertices.remove(i);
        AffineSimplex { vertices }
    }

    pub fn translated(&self, s: &[Q]) -> AffineSimplex {
        AffineSimplex {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(s).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    /// The point with the given barycentric coordinates.
    pub fn at(&self, bary: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.ambient()];
        for (w, v) in bary.iter().zip(&self.vertices) {
            if w.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o += w * x;
            }
        }
        out
    }

    /// Representative up to integer translation and vertex reordering:
    /// the lexicographically least vertex list whose first vertex lies in
    /// `[0,1)ⁿ`, with the sign of the reordering. `None` when two vertices
    /// coincide, which makes the simplex zero in the alternating chain group.
    pub fn canonical(&self) -> Option<(AffineSimplex, i64)> {
        let m = self.vertices.len();
        for i in 0..m {
            for j in i + 1..m {
                if self.vertices[i] == self.vertices[j] {
                    return None;
                }
            }
        }
        let mut best: Option<(Vec<Vec<Q>>, Vec<usize>)> = None;
        for first in 0..m {
            let shift: Vec<Q> = self.vertices[first]
                .iter()
                .map(|x| -q(floor_i64(x)))
                .collect();
            let moved: Vec<Vec<Q>> = self
                .vertices
                .iter()
                .map(|v| v.iter().zip(&shift).map(|(a, b)| a + b).collect())
                .collect();
            let mut order: Vec<usize> = (0..m).filter(|&j| j != first).collect();
            order.sort_by(|&a, &b| moved[a].cmp(&moved[b]));
            order.insert(0, first);
            let key: Vec<Vec<Q>> = order.iter().map(|&j| moved[j].clone()).collect();
            if best.as_ref().map_or(true, |(b, _)| key < *b) {
                best = Some((key, order));
            }
        }
        let (vertices, order) = best.expect("nonempty simplex");
        Some((AffineSimplex { vertices }, permutation_sign(&order)))
    }
}

pub fn permutation_sign(order: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A family of closed geodesics `(x, θ) ↦ base(x) + θ·winding`; winding
/// zero gives constant loops, i.e. the plain simplex `base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopFamily {
    pub base: AffineSimplex,
    pub winding: Vec<i64>,
}

impl LoopFamily {
    pub fn new(base: AffineSimplex, winding: Vec<i64>) -> Result<Self> {
        if winding.len() != base.ambient() {
            return Err(Error::Structure(
                "winding length differs from the torus dimension".into(),
            ));
        }
        Ok(LoopFamily { base, winding })
    }

    pub fn constant(base: AffineSimplex) -> Self {
        let n = base.ambient();
        LoopFamily {
            base,
            winding: vec![0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn face(&self, i: usize) -> LoopFamily {
        LoopFamily {
            base: self.base.face(i),
            winding: self.winding.clone(),
        }
    }

    pub fn translated(&self, s: &[Q]) -> LoopFamily {
        LoopFamily {
            base: self.base.translated(s),
            winding: self.winding.clone(),
        }
    }

    pub fn canonical(&self) -> Option<(LoopFamily, i64)> {
        let (base, sign) = self.base.canonical()?;
        Some((
            LoopFamily {
                base,
                winding: self.winding.clone(),
            },
            sign,
        ))
    }
}

/// An integral chain of loop families on `Tⁿ`, homogeneous in degree and
/// kept in canonical form, so equal chains compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusChain {
    n: usize,
    degree: usize,
    terms: BTreeMap<LoopFamily, i64>,
}

impl TorusChain {
    pub fn zero(n: usize, degree: usize) -> Self {
        TorusChain {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (i64, LoopFamily)>,
    ) -> Result<Self> {
        let mut c = Self::zero(n, degree);
        for (coef, s) in terms {
            c.add(coef, s)?;
        }
        Ok(c)
    }

    /// Plain simplices, as constant loop families.
    pub fn from_simplices(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (i64, AffineSimplex)>,
    ) -> Result<Self> {
        Self::from_terms(
            n,
            degree,
            terms.into_iter().map(|(c, s)| (c, LoopFamily::constant(s))),
        )
    }

    pub fn add(&mut self, coef: i64, s: LoopFamily) -> Result<()> {
        if s.base.ambient() != self.n || s.dim() != self.degree {
            return Err(Error::Structure(format!(
                "a {}-simplex in R^{} does not belong to a {}-chain on T^{}",
                s.dim(),
                s.base.ambient(),
                self.degree,
                self.n
            )));
        }
        if coef == 0 {
            return Ok(());
        }
        let Some((key, sign)) = s.canonical() else {
            return Ok(());
        };
        let total = self.terms.get(&key).copied().unwrap_or(0) + sign * coef;
        if total == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, total);
        }
        Ok(())
    }

    pub fn add_chain(&mut self, coef: i64, other: &TorusChain) -> Result<()> {
        for (s, &c) in &other.terms {
            self.add(coef * c, s.clone())?;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LoopFamily, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn scaled(&self, c: i64) -> TorusChain {
        let mut out = Self::zero(self.n, self.degree);
        if c != 0 {
            out.terms = self
                .terms
                .iter()
                .map(|(s, &x)| (s.clone(), c * x))
                .collect();
        }
        out
    }

    pub fn boundary(&self) -> TorusChain {
        if self.degree == 0 {
            return Self::zero(self.n, 0);
        }
        let mut out = Self::zero(self.n, self.degree - 1);
        for (s, &c) in &self.terms {
            for i in 0..=self.degree {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                out.add(sign * c, s.face(i))
                    .expect("faces have matching dimensions");
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_empty()
    }

    pub fn translated(&self, s: &[Q]) -> TorusChain {
        let mut out = Self::zero(self.n, self.degree);
        for (f, &c) in &self.terms {
            out.add(c, f.translated(s)).expect("same shape");
        }
        out
    }

    /// The same chain with every winding replaced by `winding`.
    pub fn with_winding(&self, winding: &[i64]) -> TorusChain {
        let mut out = Self::zero(self.n, self.degree);
        for (f, &c) in &self.terms {
            out.add(
                c,
                LoopFamily {
                    base: f.base.clone(),
                    winding: winding.to_vec(),
                },
            )
            .expect("same shape");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn simplex(pts: &[&[(i64, i64)]]) -> AffineSimplex {
        AffineSimplex::new(
            pts.iter()
                .map(|p| p.iter().map(|&(a, b)| q_frac(a, b)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_forgets_translation_and_order() {
        let a = simplex(&[&[(1, 3)], &[(2, 1)]]);
        let b = simplex(&[&[(7, 3)], &[(4, 1)]]);
        let c = simplex(&[&[(2, 1)], &[(1, 3)]]);
        let (ka, sa) = a.canonical().unwrap();
        let (kb, sb) = b.canonical().unwrap();
        let (kc, sc) = c.canonical().unwrap();
        assert_eq!((ka.clone(), sa), (kb, sb));
        assert_eq!((ka, sa), (kc, -sc));
        assert!(simplex(&[&[(1, 2)], &[(1, 2)]]).canonical().is_none());
    }

    #[test]
    fn chain_cancellation() {
        let a = simplex(&[&[(0, 1)], &[(1, 2)]]);
        let b = simplex(&[&[(1, 2)], &[(0, 1)]]);
        let c = TorusChain::from_simplices(1, 1, [(1, a), (1, b)]).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn unit_loop_is_a_cycle() {
        let e = simplex(&[&[(0, 1)], &[(1, 1)]]);
        let c = TorusChain::from_simplices(1, 1, [(1, e.clone())]).unwrap();
        assert!(c.is_cycle());
        let half = simplex(&[&[(0, 1)], &[(1, 2)]]);
        assert!(!TorusChain::from_simplices(1, 1, [(1, half)])
            .unwrap()
            .is_cycle());
    }
}
