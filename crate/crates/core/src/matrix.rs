//! Dense integer matrices with exact determinants and row-lattice normal forms.

use std::fmt;

use dashu_int::ops::{DivRemEuclid, ExtendedGcd};
use dashu_int::IBig;

use crate::error::{Error, Result};

/// Arbitrary-precision integer used for every matrix entry and coefficient.
pub type Int = IBig;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::ONE;
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    r.len(),
                    cols
                )));
            }
        }
        let nrows = rows.len();
        for r in rows {
            data.extend(r);
        }
        Ok(IntMatrix { rows: nrows, cols, data })
    }

    /// Convenience constructor from machine integers. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Int::from(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, or `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| i64::try_from(x).ok()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        Ok(bareiss_determinant(self.to_rows()))
    }

    /// Leading principal minors `det A[1..k, 1..k]` for k = 1..n.
    pub fn leading_principal_minors(&self) -> Result<Vec<Int>> {
        if self.rows != self.cols {
            return Err(Error::Shape("minors of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok((1..=self.rows)
            .map(|k| bareiss_determinant(self.select(&idx[..k], &idx[..k]).to_rows()))
            .collect())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn bareiss_determinant(mut a: Vec<Vec<Int>>) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::ONE;
    }
    let mut sign = Int::ONE;
    let mut prev = Int::ONE;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Int::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row-style Hermite normal form `H = U A` with `U` unimodular.
///
/// Nonzero rows of `H` come first, pivots are positive and entries above a
/// pivot are reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct RowHermite {
    pub h: IntMatrix,
    pub transform: IntMatrix,
    pub pivots: Vec<usize>,
}

impl RowHermite {
    pub fn new(a: &IntMatrix) -> Self {
        let m = a.rows;
        let n = a.cols;
        let mut h = a.to_rows();
        let mut u = IntMatrix::identity(m).to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                if h[r][c].is_zero() {
                    h.swap(r, i);
                    u.swap(r, i);
                    continue;
                }
                let (g, s, t) = (&h[r][c]).gcd_ext(&h[i][c]);
                let g = Int::from(g);
                let x = &h[r][c] / &g;
                let y = &h[i][c] / &g;
                combine_rows(&mut h, r, i, &s, &t, &x, &y);
                combine_rows(&mut u, r, i, &s, &t, &x, &y);
            }
            if h[r][c].is_zero() {
                continue;
            }
            if h[r][c] < Int::ZERO {
                negate_row(&mut h[r]);
                negate_row(&mut u[r]);
            }
            for i in 0..r {
                let (q, _) = (&h[i][c]).div_rem_euclid(&h[r][c]);
                if !q.is_zero() {
                    sub_multiple(&mut h, i, r, &q);
                    sub_multiple(&mut u, i, r, &q);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowHermite {
            h: IntMatrix::from_rows(h, n).expect("shape preserved"),
            transform: IntMatrix::from_rows(u, m).expect("shape preserved"),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `y` (over the rows of `H`) with `y H = v`, if `v` lies in
    /// the row lattice.
    pub fn solve_in_h(&self, v: &[Int]) -> Option<Vec<Int>> {
        let mut rest = v.to_vec();
        let mut y = vec![Int::ZERO; self.h.rows];
        for (r, &c) in self.pivots.iter().enumerate() {
            let p = self.h.get(r, c);
            let (q, rem) = (&rest[c]).div_rem_euclid(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, x) in rest.iter_mut().enumerate() {
                    *x -= &q * self.h.get(r, j);
                }
                y[r] = q;
            }
        }
        rest.iter().all(|x| x.is_zero()).then_some(y)
    }

    /// Coefficients `z` over the rows of the original matrix with `z A = v`.
    pub fn solve(&self, v: &[Int]) -> Option<Vec<Int>> {
        let y = self.solve_in_h(v)?;
        let m = self.transform.rows;
        let mut z = vec![Int::ZERO; m];
        for (r, yr) in y.iter().enumerate() {
            if yr.is_zero() {
                continue;
            }
            for (j, zj) in z.iter_mut().enumerate() {
                *zj += yr * self.transform.get(r, j);
            }
        }
        Some(z)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.solve_in_h(v).is_some()
    }
}

fn combine_rows(a: &mut [Vec<Int>], r: usize, i: usize, s: &Int, t: &Int, x: &Int, y: &Int) {
    let len = a[r].len();
    for j in 0..len {
        let ar = a[r][j].clone();
        let ai = a[i][j].clone();
        a[r][j] = s * &ar + t * &ai;
        a[i][j] = x * &ai - y * &ar;
    }
}

fn negate_row(row: &mut [Int]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn sub_multiple(a: &mut [Vec<Int>], target: usize, src: usize, q: &Int) {
    let len = a[src].len();
    for j in 0..len {
        let d = q * &a[src][j];
        a[target][j] -= d;
    }
}
