//! Extended skew-symmetrizable exchange matrices and their mutations.
//!
//! Indices are 0-based throughout the library API; the text format and all
//! error values use 1-based indices.

use std::fmt;

use dashu_int::ops::{Gcd, UnsignedAbs};
use dashu_int::UBig;
use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::matrix::{Int, IntMatrix, RowHermite};

/// An `m x n` integer matrix whose top `n x n` block is skew-symmetrizable.
/// Rows `n..m` are frozen (coefficient) rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedExchangeMatrix {
    n: usize,
    b: IntMatrix,
}

impl ExtendedExchangeMatrix {
    /// Validates shape, zero diagonal and skew-symmetrizability of the top block.
    pub fn new(b: IntMatrix, n: usize) -> Result<Self> {
        if b.cols() != n {
            return Err(Error::Shape(format!("expected {} columns, found {}", n, b.cols())));
        }
        if b.rows() < n {
            return Err(Error::Shape(format!("{} rows is fewer than {} columns", b.rows(), n)));
        }
        let m = ExtendedExchangeMatrix { n, b };
        skew_symmetrizer(&m.top())?;
        Ok(m)
    }

    /// Square exchange matrix (no frozen rows) from machine integers.
    pub fn square<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let b = IntMatrix::from_i64(rows);
        let n = b.rows();
        if b.cols() != n && n > 0 {
            return Err(Error::Shape("matrix is not square".into()));
        }
        Self::new(b, n)
    }

    /// Extended matrix with `rows.len() - n` frozen rows, from machine integers.
    pub fn extended<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let b = IntMatrix::from_i64(rows);
        let n = b.cols();
        Self::new(b, n)
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn from_parts_unchecked(b: IntMatrix, n: usize) -> Self {
        ExtendedExchangeMatrix { n, b }
    }

    pub fn n_mutable(&self) -> usize {
        self.n
    }

    pub fn n_rows(&self) -> usize {
        self.b.rows()
    }

    pub fn n_frozen(&self) -> usize {
        self.b.rows() - self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        self.b.get(i, j)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    /// The principal `n x n` part.
    pub fn top(&self) -> IntMatrix {
        let idx: Vec<usize> = (0..self.n).collect();
        self.b.select(&idx, &idx)
    }

    pub fn top_matrix(&self) -> ExtendedExchangeMatrix {
        ExtendedExchangeMatrix { n: self.n, b: self.top() }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Largest `|b_ij b_ji|` over the top block, with the first pair attaining it.
    pub fn max_pair_product(&self) -> (Int, usize, usize) {
        let mut best = (Int::ZERO, 0, 0);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let p = (self.get(i, j) * self.get(j, i)).unsigned_abs();
                let p = Int::from(p);
                if p > best.0 {
                    best = (p, i, j);
                }
            }
        }
        best
    }

    fn check_mutable(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k + 1, bound: self.n });
        }
        Ok(())
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_mutable(k)?;
        Ok(self.mutate_unchecked(k))
    }

    pub(crate) fn mutate_unchecked(&self, k: usize) -> Self {
        let m = self.b.rows();
        let n = self.n;
        let mut out = self.b.clone();
        for i in 0..m {
            let bik = self.b.get(i, k);
            for j in 0..n {
                if i == k || j == k {
                    out.set(i, j, -self.b.get(i, j));
                    continue;
                }
                if bik.is_zero() {
                    continue;
                }
                let bkj = self.b.get(k, j);
                let pos_ik = *bik > Int::ZERO;
                let pos_kj = *bkj > Int::ZERO;
                if !bkj.is_zero() && pos_ik == pos_kj {
                    let prod = bik * bkj;
                    let v = if pos_ik { self.b.get(i, j) + prod } else { self.b.get(i, j) - prod };
                    out.set(i, j, v);
                }
            }
        }
        ExtendedExchangeMatrix { n, b: out }
    }

    /// Applies mutations in order.
    pub fn mutate_seq(&self, ks: &[usize]) -> Result<Self> {
        let mut cur = self.clone();
        for &k in ks {
            cur = cur.mutate(k)?;
        }
        Ok(cur)
    }

    /// Restriction to the row set `idx` and column set `idx ∩ [0, n)`.
    pub fn restrict(&self, idx: &[usize]) -> Result<Self> {
        if idx.is_empty() {
            return Err(Error::Precondition("restriction to an empty index set".into()));
        }
        let mut rows: Vec<usize> = idx.to_vec();
        rows.sort_unstable();
        rows.dedup();
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.n_rows()) {
            return Err(Error::IndexOutOfRange { index: bad + 1, bound: self.n_rows() });
        }
        let cols: Vec<usize> = rows.iter().copied().filter(|&i| i < self.n).collect();
        Ok(ExtendedExchangeMatrix { n: cols.len(), b: self.b.select(&rows, &cols) })
    }

    /// Simultaneous relabeling of mutable indices: new index `p` takes old
    /// index `perm[p]`. Frozen rows keep their positions.
    pub fn permute_mutable(&self, perm: &[usize]) -> Self {
        let m = self.n_rows();
        let n = self.n;
        let mut rows: Vec<usize> = perm.to_vec();
        rows.extend(n..m);
        ExtendedExchangeMatrix { n, b: self.b.select(&rows, perm) }
    }

    /// Freezes the mutable indices in `f`: their columns are removed and their
    /// rows are appended after the existing frozen rows, in increasing order.
    pub fn freeze(&self, f: &[usize]) -> Result<Self> {
        for &k in f {
            self.check_mutable(k)?;
        }
        let keep: Vec<usize> = (0..self.n).filter(|k| !f.contains(k)).collect();
        let mut newly: Vec<usize> = f.to_vec();
        newly.sort_unstable();
        newly.dedup();
        let mut rows = keep.clone();
        rows.extend(self.n..self.n_rows());
        rows.extend(newly);
        Ok(ExtendedExchangeMatrix { n: keep.len(), b: self.b.select(&rows, &keep) })
    }

    /// Deletes the frozen rows in `f`.
    pub fn drop_frozen(&self, f: &[usize]) -> Result<Self> {
        for &i in f {
            if i < self.n || i >= self.n_rows() {
                return Err(Error::Precondition(format!("{} is not a frozen index", i + 1)));
            }
        }
        let rows: Vec<usize> = (0..self.n_rows()).filter(|i| !f.contains(i)).collect();
        let cols: Vec<usize> = (0..self.n).collect();
        Ok(ExtendedExchangeMatrix { n: self.n, b: self.b.select(&rows, &cols) })
    }

    /// Cartan counterpart: `a_ii = 2`, `a_ij = -|b_ij|`.
    pub fn cartan_counterpart(&self) -> IntMatrix {
        let n = self.n;
        let mut a = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j { Int::from(2) } else { -Int::from(self.get(i, j).unsigned_abs()) };
                a.set(i, j, v);
            }
        }
        a
    }

    pub fn skew_symmetrizer(&self) -> Result<Vec<Int>> {
        skew_symmetrizer(&self.top())
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::of_matrix(&self.top())
    }

    /// True iff the rows span the whole lattice `Z^n`.
    pub fn full_z_rank(&self) -> bool {
        let h = RowHermite::new(&self.b);
        h.rank() == self.n && (0..self.n).all(|r| h.h.get(r, h.pivots[r]).is_one())
    }

    /// Text format v1: `m n`, then `m` rows of `n` integers.
    pub fn to_v1(&self) -> String {
        format!("{} {}\n{}", self.n_rows(), self.n, self.b)
    }

    /// Parses text format v1; `#` lines and blank lines are ignored.
    pub fn parse_v1(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let dims = parse_ints(header)?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("header must be `m n`, found `{header}`")));
        }
        let (m, n) = (to_usize(&dims[0])?, to_usize(&dims[1])?);
        let mut rows = Vec::with_capacity(m);
        for line in lines {
            rows.push(parse_ints(line)?);
        }
        if rows.len() != m {
            return Err(Error::Parse(format!("expected {} rows, found {}", m, rows.len())));
        }
        let b = IntMatrix::from_rows(rows, n).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(b, n)
    }
}

impl fmt::Display for ExtendedExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_v1())
    }
}

fn parse_ints(line: &str) -> Result<Vec<Int>> {
    line.split_whitespace()
        .map(|t| t.parse::<Int>().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
        .collect()
}

fn to_usize(x: &Int) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Parse(format!("bad dimension `{x}`")))
}

/// Minimal positive `d` with `d_i b_ij = -d_j b_ji`, normalized to gcd 1 on
/// each connected component of the diagram.
pub fn skew_symmetrizer(b: &IntMatrix) -> Result<Vec<Int>> {
    let n = b.rows();
    if b.cols() != n {
        return Err(Error::Shape("skew-symmetrizer needs a square matrix".into()));
    }
    for i in 0..n {
        if !b.get(i, i).is_zero() {
            return Err(Error::NotSkewSymmetrizable { i: i + 1, j: i + 1 });
        }
        for j in i + 1..n {
            let (x, y) = (b.get(i, j), b.get(j, i));
            let ok = (x.is_zero() && y.is_zero())
                || (!x.is_zero() && !y.is_zero() && (*x > Int::ZERO) != (*y > Int::ZERO));
            if !ok {
                return Err(Error::NotSkewSymmetrizable { i: i + 1, j: j + 1 });
            }
        }
    }
    let mut d: Vec<Option<RBig>> = vec![None; n];
    let mut out = vec![Int::ZERO; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(RBig::ONE);
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            let di = d[i].clone().expect("assigned");
            for j in 0..n {
                if b.get(i, j).is_zero() {
                    continue;
                }
                // d_j = d_i |b_ij| / |b_ji|
                let ratio = RBig::from_parts(
                    Int::from(b.get(i, j).unsigned_abs()),
                    b.get(j, i).unsigned_abs(),
                );
                let dj = &di * ratio;
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                    }
                    Some(existing) if *existing != dj => {
                        let (a, c) = if i < j { (i, j) } else { (j, i) };
                        return Err(Error::NotSkewSymmetrizable { i: a + 1, j: c + 1 });
                    }
                    Some(_) => {}
                }
            }
        }
        let mut lcm = UBig::ONE;
        for &v in &comp {
            let den = d[v].as_ref().expect("assigned").denominator().clone();
            let g = (&lcm).gcd(&den);
            lcm = &lcm / g * den;
        }
        let lcm = Int::from(lcm);
        let mut scaled: Vec<Int> = Vec::with_capacity(comp.len());
        for &v in &comp {
            let r = d[v].as_ref().expect("assigned");
            scaled.push(r.numerator() * &lcm / Int::from(r.denominator().clone()));
        }
        let mut g = UBig::ZERO;
        for s in &scaled {
            g = (&g).gcd(s.unsigned_abs());
        }
        let g = Int::from(g);
        for (&v, s) in comp.iter().zip(scaled) {
            out[v] = s / &g;
        }
    }
    Ok(out)
}

/// Directed edge of a diagram: `from -> to` with `b_{from,to} > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramEdge {
    pub from: usize,
    pub to: usize,
    /// `|b_{from,to} b_{to,from}|`
    pub weight: Int,
    /// `|b_{from,to}|`
    pub forward: Int,
    /// `|b_{to,from}|`
    pub backward: Int,
}

/// Weighted directed graph of an exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub n: usize,
    pub edges: Vec<DiagramEdge>,
}

/// The orientation convention: an arrow `i -> j` exactly when `b_ij > 0`.
#[inline]
pub fn arrow_points_forward(bij: &Int) -> bool {
    *bij > Int::ZERO
}

impl Diagram {
    pub fn of_matrix(b: &IntMatrix) -> Self {
        let n = b.rows();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && arrow_points_forward(b.get(i, j)) {
                    let forward = Int::from(b.get(i, j).unsigned_abs());
                    let backward = Int::from(b.get(j, i).unsigned_abs());
                    edges.push(DiagramEdge { from: i, to: j, weight: &forward * &backward, forward, backward });
                }
            }
        }
        Diagram { n, edges }
    }

    /// Edge joining `i` and `j` in either direction.
    pub fn edge(&self, i: usize, j: usize) -> Option<&DiagramEdge> {
        self.edges
            .iter()
            .find(|e| (e.from == i && e.to == j) || (e.from == j && e.to == i))
    }

    /// Undirected adjacency lists in increasing order.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// True iff every row of `sub` is an integer combination of rows of `sup`.
pub fn rows_in_z_span(sub: &IntMatrix, sup: &IntMatrix) -> Result<bool> {
    if sub.cols() != sup.cols() {
        return Err(Error::Shape(format!(
            "column counts differ: {} vs {}",
            sub.cols(),
            sup.cols()
        )));
    }
    let h = RowHermite::new(sup);
    Ok((0..sub.rows()).all(|i| h.contains(sub.row(i))))
}

/// Integer matrix `Psi = [[Id, 0], [Psi1, Psi2]]` with `Psi * circ = bar`, if any.
///
/// Frozen rows of `bar` are expressed through the frozen rows of `circ` when
/// possible, and through all rows otherwise.
pub fn psi_factor(
    circ: &ExtendedExchangeMatrix,
    bar: &ExtendedExchangeMatrix,
) -> Result<Option<IntMatrix>> {
    let n = circ.n_mutable();
    if bar.n_mutable() != n || circ.top() != bar.top() {
        return Err(Error::Precondition("top n x n blocks differ".into()));
    }
    let m = circ.n_rows();
    let mbar = bar.n_rows();
    let cols: Vec<usize> = (0..n).collect();
    let frozen_rows: Vec<usize> = (n..m).collect();
    let frozen = RowHermite::new(&circ.matrix().select(&frozen_rows, &cols));
    let all = RowHermite::new(circ.matrix());
    let mut psi = IntMatrix::zeros(mbar, m);
    for i in 0..n {
        psi.set(i, i, Int::ONE);
    }
    for r in n..mbar {
        let target = bar.matrix().row(r);
        let coeffs = if let Some(z) = frozen.solve(target) {
            let mut full = vec![Int::ZERO; m];
            for (t, zt) in z.into_iter().enumerate() {
                full[n + t] = zt;
            }
            full
        } else if let Some(z) = all.solve(target) {
            z
        } else {
            return Ok(None);
        };
        for (j, c) in coeffs.into_iter().enumerate() {
            psi.set(r, j, c);
        }
    }
    Ok(Some(psi))
}
