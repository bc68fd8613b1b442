//! Exact rational scalars and the small dense linear algebra the torus
//! engine needs: rank, determinant, square solves and LP feasibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"-n"` or `"n/d"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Format(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Floor as a machine integer.
pub fn floor_i64(x: &Q) -> i64 {
    i64::try_from(x.floor().to_integer()).expect("coordinate out of i64 range")
}

pub fn ceil_i64(x: &Q) -> i64 {
    i64::try_from(x.ceil().to_integer()).expect("coordinate out of i64 range")
}

/// Each row scaled by the least common multiple of its denominators, with
/// the scale factors.
fn integer_rows(rows: &[Vec<Q>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    rows.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = r.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            (ints, l)
        })
        .unzip()
}

/// Fraction-free Gauss-Jordan elimination in place. Every pivot entry ends
/// up equal to the returned value and every division is exact. Returns the
/// pivot columns, the common pivot value and the parity of the row swaps.
fn integer_jordan(m: &mut [Vec<BigInt>], stop: usize) -> (Vec<usize>, BigInt, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut odd = false;
    let mut r = 0;
    for c in 0..stop.min(cols) {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(r, p);
            odd = !odd;
        }
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("row r exists");
        let pivot = pivot_row[c].clone();
        for row in head.iter_mut().chain(below.iter_mut()) {
            let f = std::mem::take(&mut row[c]);
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let mut x = &pivot * &row[j];
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    x -= &f * &pivot_row[j];
                }
                row[j] = if prev.is_one() { x } else { x / &prev };
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (pivots, prev, odd)
}

/// Reduced row-echelon form in place; returns the pivot columns.
fn echelon(m: &mut [Vec<Q>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let (mut ints, _) = integer_rows(m);
    let (pivots, d, _) = integer_jordan(&mut ints, cols);
    for (row, ints) in m.iter_mut().zip(ints) {
        for (x, v) in row.iter_mut().zip(ints) {
            *x = Q::new(v, d.clone());
        }
    }
    pivots
}

/// A basis of `{ y : rows · y = 0 }`.
pub fn null_space(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![Q::zero(); cols];
            y[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                y[pc] = -m[r][f].clone();
            }
            y
        })
        .collect()
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

pub fn determinant(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let (mut ints, scales) = integer_rows(rows);
    let (pivots, d, odd) = integer_jordan(&mut ints, n);
    if pivots.len() < n {
        return Q::zero();
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let det = Q::new(d, scale);
    if odd {
        -det
    } else {
        det
    }
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(rows: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = rows.len();
    // S·M = N with S diagonal, so M⁻¹ = N⁻¹·S.
    let (ints, scales) = integer_rows(rows);
    let mut aug: Vec<Vec<BigInt>> = ints
        .into_iter()
        .zip(&scales)
        .enumerate()
        .map(|(i, (mut row, s))| {
            row.extend((0..n).map(|j| if i == j { s.clone() } else { BigInt::zero() }));
            row
        })
        .collect();
    let (pivots, d, _) = integer_jordan(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(
        aug.into_iter()
            .map(|r| {
                r[n..]
                    .iter()
                    .map(|x| Q::new(x.clone(), d.clone()))
                    .collect()
            })
            .collect(),
    )
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Whether `{ z >= 0 : A z = b }` is nonempty, decided by a phase-one
/// simplex with Bland's rule (exact, so it terminates without cycling).
pub fn feasible_nonnegative(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // Tableau: [A | I | b], rows normalised to b >= 0, artificial basis.
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row: Vec<Q> = a[i]
                .iter()
                .map(|x| if flip { -x } else { x.clone() })
                .collect();
            row.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let width = n + m;
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (minimise the artificial sum).
    loop {
        let mut cost = vec![Q::zero(); width + 1];
        for j in n..n + m {
            cost[j] = Q::one();
        }
        for (i, &bi) in basis.iter().enumerate() {
            if bi >= n {
                for j in 0..=width {
                    cost[j] -= &t[i][j];
                }
            }
        }
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            // Optimal: objective value is -cost[width].
            return cost[width].is_zero();
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded direction cannot occur for a phase-one problem.
            unreachable!("phase-one simplex is bounded below by zero");
        };
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=width {
                    let s = &t[r][j] * &f;
                    t[i][j] -= s;
                }
            }
        }
        basis[r] = enter;
    }
}
