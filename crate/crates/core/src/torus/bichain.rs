use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::torus::simplex::{LoopFamily, TorusChain};

/// One term `coef · (left × right)` of a bi-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiTerm {
    pub coef: i64,
    pub left: LoopFamily,
    pub right: LoopFamily,
}

impl BiTerm {
    pub fn degrees(&self) -> (usize, usize) {
        (self.left.dim(), self.right.dim())
    }
}

/// A formal integral combination of products of simplices on `Tⁿ × Tⁿ`,
/// kept in canonical form (both factors canonical, terms sorted, no
/// zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiChain {
    n: usize,
    terms: BTreeMap<(LoopFamily, LoopFamily), i64>,
}

impl BiChain {
    pub fn zero(n: usize) -> Self {
        BiChain {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = BiTerm>) -> Result<Self> {
        let mut b = Self::zero(n);
        for t in terms {
            b.add(t)?;
        }
        Ok(b)
    }

    /// `u × v` for chains `u`, `v`.
    pub fn product(u: &TorusChain, v: &TorusChain) -> Result<Self> {
        if u.n() != v.n() {
            return Err(Error::Structure(
                "factors live on tori of different dimension".into(),
            ));
        }
        let mut b = Self::zero(u.n());
        for (l, a) in u.terms() {
            for (r, c) in v.terms() {
                b.add(BiTerm {
                    coef: a * c,
                    left: l.clone(),
                    right: r.clone(),
                })?;
            }
        }
        Ok(b)
    }

    pub fn add(&mut self, t: BiTerm) -> Result<()> {
        if t.left.base.ambient() != self.n || t.right.base.ambient() != self.n {
            return Err(Error::Structure(format!(
                "bi-simplex does not live on T^{}",
                self.n
            )));
        }
        if t.coef == 0 {
            return Ok(());
        }
        let (Some((l, sl)), Some((r, sr))) = (t.left.canonical(), t.right.canonical()) else {
            return Ok(());
        };
        let key = (l, r);
        let total = self.terms.get(&key).copied().unwrap_or(0) + t.coef * sl * sr;
        if total == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, total);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = BiTerm> + '_ {
        self.terms.iter().map(|((l, r), &c)| BiTerm {
            coef: c,
            left: l.clone(),
            right: r.clone(),
        })
    }

    /// Degrees `(p, q)` when every term has the same ones.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|(l, r)| (l.dim(), r.dim()));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `∂₁`: boundary in the left factor, without sign.
    pub fn left_boundary(&self) -> BiChain {
        let mut out = Self::zero(self.n);
        for ((l, r), &c) in &self.terms {
            if l.dim() == 0 {
                continue;
            }
            for i in 0..=l.dim() {
                let s = if i % 2 == 0 { 1 } else { -1 };
                out.add(BiTerm {
                    coef: s * c,
                    left: l.face(i),
                    right: r.clone(),
                })
                .expect("same torus");
            }
        }
        out
    }

    /// `∂₂`: boundary in the right factor, without sign.
    pub fn right_boundary(&self) -> BiChain {
        let mut out = Self::zero(self.n);
        for ((l, r), &c) in &self.terms {
            if r.dim() == 0 {
                continue;
            }
            for i in 0..=r.dim() {
                let s = if i % 2 == 0 { 1 } else { -1 };
                out.add(BiTerm {
                    coef: s * c,
                    left: l.clone(),
                    right: r.face(i),
                })
                .expect("same torus");
            }
        }
        out
    }

    /// Multiplies each term by `sign(p, q)` of its own bidegree.
    pub fn signed_by(&self, sign: impl Fn(usize, usize) -> i64) -> BiChain {
        let mut out = Self::zero(self.n);
        for ((l, r), &c) in &self.terms {
            out.terms
                .insert((l.clone(), r.clone()), c * sign(l.dim(), r.dim()));
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn plus(&self, other: &BiChain) -> BiChain {
        let mut out = self.clone();
        for t in other.terms() {
            out.add(t).expect("same torus");
        }
        out
    }

    /// Every left factor moved by `s`.
    pub fn translate_left(&self, s: &[Q]) -> BiChain {
        let mut out = Self::zero(self.n);
        for ((l, r), &c) in &self.terms {
            out.add(BiTerm {
                coef: c,
                left: l.translated(s),
                right: r.clone(),
            })
            .expect("same torus");
        }
        out
    }
}

/// `D(u × v) = ∂u × v + (-1)^p u × ∂v`.
pub fn total_boundary(b: &BiChain) -> BiChain {
    let first = b.left_boundary();
    // Faces of the right factor carry the sign of the left degree.
    let mut second = BiChain::zero(b.n());
    for ((l, r), &c) in &b.terms {
        let p = l.dim();
        let sign = if p % 2 == 0 { 1 } else { -1 };
        if r.dim() == 0 {
            continue;
        }
        for i in 0..=r.dim() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            second
                .add(BiTerm {
                    coef: sign * s * c,
                    left: l.clone(),
                    right: r.face(i),
                })
                .expect("same torus");
        }
    }
    first.plus(&second)
}
