//! Dense integer matrices and the Smith normal form.
//!
//! All arithmetic is checked; an overflow aborts with a panic naming the
//! operation rather than producing a wrong answer.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

#[inline]
fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("integer overflow in exact matrix arithmetic")
}

#[inline]
fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("integer overflow in exact matrix arithmetic")
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other[(k, c)];
                    if b != 0 {
                        out[(r, c)] = add(out[(r, c)], mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| **a != 0 && **b != 0)
                    .fold(0, |acc, (a, b)| add(acc, mul(*a, *b)))
            })
            .collect()
    }

    /// Rows `start..` as a new matrix.
    pub fn row_slice(&self, start: usize) -> IntMatrix {
        let rows = self.rows.saturating_sub(start);
        IntMatrix {
            rows,
            cols: self.cols,
            data: self.data[start.min(self.rows) * self.cols..].to_vec(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|r| self.row(r).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[i] += c * row[j]
    fn add_row(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 {
            return;
        }
        for k in 0..self.cols {
            let v = self.data[j * self.cols + k];
            if v != 0 {
                let t = &mut self.data[i * self.cols + k];
                *t = add(*t, mul(c, v));
            }
        }
    }

    /// col[i] += c * col[j]
    fn add_col(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 {
            return;
        }
        for r in 0..self.rows {
            let v = self.data[r * self.cols + j];
            if v != 0 {
                let t = &mut self.data[r * self.cols + i];
                *t = add(*t, mul(c, v));
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            self.data[i * self.cols + k] = -self.data[i * self.cols + k];
        }
    }

    fn negate_col(&mut self, i: usize) {
        for r in 0..self.rows {
            self.data[r * self.cols + i] = -self.data[r * self.cols + i];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and forming a divisibility chain. The inverses of `U`
/// and `V` are tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&x| x != 0).count()
    }
}

struct Tracker {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, i: usize, j: usize, c: i64) {
        self.a.add_row(i, j, c);
        self.u.add_row(i, j, c);
        self.u_inv.add_col(j, i, -c);
    }

    fn add_col(&mut self, i: usize, j: usize, c: i64) {
        self.a.add_col(i, j, c);
        self.v.add_col(i, j, c);
        self.v_inv.add_row(j, i, -c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a nonzero entry of least absolute value in the
    /// trailing block starting at `(t, t)`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i64)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let x = self.a[(r, c)].abs();
                if x != 0 && best.map_or(true, |(_, _, b)| x < b) {
                    best = Some((r, c, x));
                    if x == 1 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }
}

/// Smith normal form by repeated least-pivot elimination.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut t = Tracker {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };

    for k in 0..m.min(n) {
        let Some((r, c)) = t.min_pivot(k) else { break };
        t.swap_rows(k, r);
        t.swap_cols(k, c);
        loop {
            // Clear column k below and row k to the right of the pivot. Any
            // nonzero remainder is smaller than the pivot and replaces it.
            let mut dirty = false;
            for i in k + 1..m {
                let x = t.a[(i, k)];
                if x != 0 {
                    let q = x.div_euclid(t.a[(k, k)]);
                    t.add_row(i, k, -q);
                    if t.a[(i, k)] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..n {
                let x = t.a[(k, j)];
                if x != 0 {
                    let q = x.div_euclid(t.a[(k, k)]);
                    t.add_col(j, k, -q);
                    if t.a[(k, j)] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (r, c) = pivot_in_cross(&t.a, k);
                t.swap_rows(k, r);
                t.swap_cols(k, c);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let p = t.a[(k, k)];
            let offending = (k + 1..m).find(|&i| (k + 1..n).any(|j| t.a[(i, j)] % p != 0));
            match offending {
                Some(i) => t.add_row(k, i, 1),
                None => break,
            }
        }
        if t.a[(k, k)] < 0 {
            t.negate_row(k);
        }
    }

    SmithDecomposition {
        u: t.u,
        u_inv: t.u_inv,
        d: t.a,
        v: t.v,
        v_inv: t.v_inv,
    }
}

/// Least nonzero entry among column `k` and row `k` at or beyond the pivot.
fn pivot_in_cross(a: &IntMatrix, k: usize) -> (usize, usize) {
    let mut best = (k, k, a[(k, k)].abs());
    for i in k + 1..a.rows() {
        let x = a[(i, k)].abs();
        if x != 0 && (best.2 == 0 || x < best.2) {
            best = (i, k, x);
        }
    }
    for j in k + 1..a.cols() {
        let x = a[(k, j)].abs();
        if x != 0 && (best.2 == 0 || x < best.2) {
            best = (k, j, x);
        }
    }
    (best.0, best.1)
}

/// An integer solution of `A z = b`, if one exists.
pub fn solve_integer_system(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    // U A V = D, so A z = b  <=>  D (V^-1 z) = U b.
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![0i64; a.cols()];
    for (i, &rhs) in ub.iter().enumerate() {
        let d = diag.get(i).copied().unwrap_or(0);
        if d == 0 {
            if rhs != 0 {
                return None;
            }
        } else if rhs % d != 0 {
            return None;
        } else {
            y[i] = rhs / d;
        }
    }
    Some(snf.v.mul_vec(&y))
}
