use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{determinant, Q};
use crate::torus::simplex::{AffineSimplex, TorusChain};

/// `k`-subsets of `0..n` in lexicographic order.
pub fn coordinate_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `∫_σ dx_I` for an affine simplex: the minor of its edge vectors on the
/// coordinates `I`, over `k!`.
fn period(s: &AffineSimplex, subset: &[usize]) -> Q {
    let k = subset.len();
    if k == 0 {
        return Q::one();
    }
    let base = &s.vertices[0];
    let rows: Vec<Vec<Q>> = s.vertices[1..]
        .iter()
        .map(|v| subset.iter().map(|&i| &v[i] - &base[i]).collect())
        .collect();
    let fact: i64 = (1..=k as i64).product();
    determinant(&rows) / Q::from_integer(fact.into())
}

fn integral_periods(sums: Vec<Q>) -> Result<Vec<i64>> {
    sums.into_iter()
        .map(|x| {
            if !x.is_integer() {
                return Err(Error::NotACycle(format!("period {x} is not an integer")));
            }
            x.to_integer()
                .to_i64()
                .ok_or_else(|| Error::Structure("period overflows i64".into()))
        })
        .collect()
}

/// Periods of a cycle against the coordinate forms `dx_I`, `I` running over
/// the `k`-subsets of the coordinates in lexicographic order. These are the
/// coordinates of its class in `H_k(Tⁿ) ≅ Z^(n choose k)`. Windings are
/// ignored.
pub fn homology_class_torus(c: &TorusChain) -> Result<Vec<i64>> {
    if !c.is_cycle() {
        return Err(Error::NotACycle(format!(
            "{}-chain on T^{} has nonzero boundary",
            c.degree(),
            c.n()
        )));
    }
    let subsets = coordinate_subsets(c.n(), c.degree());
    let mut sums = vec![Q::zero(); subsets.len()];
    for (s, coef) in c.terms() {
        for (sum, subset) in sums.iter_mut().zip(&subsets) {
            *sum += period(&s.base, subset) * Q::from_integer(coef.into());
        }
    }
    integral_periods(sums)
}

/// The class of a chain of loop families on the free loop space of `Tⁿ`:
/// the torus class of each winding component. Components with zero class
/// are dropped.
pub fn loop_class_torus(c: &TorusChain) -> Result<BTreeMap<Vec<i64>, Vec<i64>>> {
    let mut parts: BTreeMap<Vec<i64>, TorusChain> = BTreeMap::new();
    for (s, coef) in c.terms() {
        parts
            .entry(s.winding.clone())
            .or_insert_with(|| TorusChain::zero(c.n(), c.degree()))
            .add(coef, s.clone())?;
    }
    let mut out = BTreeMap::new();
    for (w, part) in parts {
        let class = homology_class_torus(&part)?;
        if class.iter().any(|x| !x.is_zero()) {
            out.insert(w, class);
        }
    }
    Ok(out)
}

/// Greatest common divisor of a period vector; `0` for the zero class.
pub fn divisibility(class: &[i64]) -> i64 {
    class.iter().fold(0i64, |g, &x| g.gcd(&x))
}
