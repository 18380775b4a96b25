//! Dynkin diagrams, quasi-Cartan companions and finite-type recognition.

use std::fmt;
use std::str::FromStr;

use dashu_int::ops::UnsignedAbs;

use crate::error::{Error, Result};
use crate::exchange::{Diagram, ExtendedExchangeMatrix};
use crate::explore::{explore_matrix_class, ExploreOptions};
use crate::matrix::{Int, IntMatrix};

/// Connected Dynkin diagram label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinLabel {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl DynkinLabel {
    /// Validated constructor for the series; `C(2)` is normalized to `B(2)`.
    pub fn series(letter: char, n: usize) -> Result<Self> {
        let bad = || Error::Precondition(format!("no Dynkin type {letter}{n}"));
        Ok(match (letter.to_ascii_uppercase(), n) {
            ('A', n) if n >= 1 => DynkinLabel::A(n),
            ('B', n) if n >= 2 => DynkinLabel::B(n),
            ('C', 2) => DynkinLabel::B(2),
            ('C', n) if n >= 3 => DynkinLabel::C(n),
            ('D', n) if n >= 4 => DynkinLabel::D(n),
            ('E', 6) => DynkinLabel::E6,
            ('E', 7) => DynkinLabel::E7,
            ('E', 8) => DynkinLabel::E8,
            ('F', 4) => DynkinLabel::F4,
            ('G', 2) => DynkinLabel::G2,
            _ => return Err(bad()),
        })
    }

    pub fn rank(&self) -> usize {
        match *self {
            DynkinLabel::A(n) | DynkinLabel::B(n) | DynkinLabel::C(n) | DynkinLabel::D(n) => n,
            DynkinLabel::E6 => 6,
            DynkinLabel::E7 => 7,
            DynkinLabel::E8 => 8,
            DynkinLabel::F4 => 4,
            DynkinLabel::G2 => 2,
        }
    }

    pub fn coxeter_number(&self) -> u64 {
        match *self {
            DynkinLabel::A(n) => n as u64 + 1,
            DynkinLabel::B(n) | DynkinLabel::C(n) => 2 * n as u64,
            DynkinLabel::D(n) => 2 * n as u64 - 2,
            DynkinLabel::E6 => 12,
            DynkinLabel::E7 => 18,
            DynkinLabel::E8 => 30,
            DynkinLabel::F4 => 12,
            DynkinLabel::G2 => 6,
        }
    }

    pub fn exponents(&self) -> Vec<u64> {
        match *self {
            DynkinLabel::A(n) => (1..=n as u64).collect(),
            DynkinLabel::B(n) | DynkinLabel::C(n) => (0..n as u64).map(|i| 2 * i + 1).collect(),
            DynkinLabel::D(n) => {
                let mut e: Vec<u64> = (0..n as u64 - 1).map(|i| 2 * i + 1).collect();
                e.push(n as u64 - 1);
                e.sort_unstable();
                e
            }
            DynkinLabel::E6 => vec![1, 4, 5, 7, 8, 11],
            DynkinLabel::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            DynkinLabel::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            DynkinLabel::F4 => vec![1, 5, 7, 11],
            DynkinLabel::G2 => vec![1, 5],
        }
    }

    /// Number of seeds `prod (e_i + h + 1) / (e_i + 1)` and of cluster
    /// variables `n (h + 2) / 2`.
    pub fn counts(&self) -> (Int, Int) {
        let h = self.coxeter_number();
        let mut num = Int::ONE;
        let mut den = Int::ONE;
        for e in self.exponents() {
            num *= Int::from(e + h + 1);
            den *= Int::from(e + 1);
        }
        let vars = Int::from(self.rank() as u64 * (h + 2) / 2);
        (num / den, vars)
    }
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinLabel::A(n) => write!(f, "A{n}"),
            DynkinLabel::B(n) => write!(f, "B{n}"),
            DynkinLabel::C(n) => write!(f, "C{n}"),
            DynkinLabel::D(n) => write!(f, "D{n}"),
            DynkinLabel::E6 => f.write_str("E6"),
            DynkinLabel::E7 => f.write_str("E7"),
            DynkinLabel::E8 => f.write_str("E8"),
            DynkinLabel::F4 => f.write_str("F4"),
            DynkinLabel::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for DynkinLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty Dynkin label".into()))?;
        let n: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad Dynkin label '{s}'")))?;
        DynkinLabel::series(letter, n)
    }
}

/// A (possibly decomposable) Dynkin type: a sorted multiset of labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DynkinType(Vec<DynkinLabel>);

impl DynkinType {
    pub fn new(mut labels: Vec<DynkinLabel>) -> Self {
        labels.sort();
        DynkinType(labels)
    }

    pub fn components(&self) -> &[DynkinLabel] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(DynkinLabel::rank).sum()
    }
}

impl From<DynkinLabel> for DynkinType {
    fn from(l: DynkinLabel) -> Self {
        DynkinType(vec![l])
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts labels joined by `+`, e.g. `A1+A2`.
    fn from_str(s: &str) -> Result<Self> {
        let labels = s.split('+').map(str::parse).collect::<Result<Vec<DynkinLabel>>>()?;
        Ok(DynkinType::new(labels))
    }
}

/// Seeds multiply and cluster variables add across components.
pub fn count_type(t: &DynkinType) -> (Int, Int) {
    t.components().iter().fold((Int::ONE, Int::ZERO), |(s, v), l| {
        let (ls, lv) = l.counts();
        (s * ls, v + lv)
    })
}

fn abs(x: &Int) -> Int {
    Int::from(x.unsigned_abs())
}

/// Recognizes a Dynkin diagram, component by component.
pub fn match_dynkin(d: &Diagram) -> Option<DynkinType> {
    let labels = d.components().iter().map(|c| match_component(d, c)).collect::<Option<Vec<_>>>()?;
    Some(DynkinType::new(labels))
}

fn match_component(d: &Diagram, comp: &[usize]) -> Option<DynkinLabel> {
    let k = comp.len();
    let edges: Vec<_> = d.edges.iter().filter(|e| comp.contains(&e.from)).collect();
    if edges.len() + 1 != k {
        return None;
    }
    let adj = d.neighbors();
    let heavy: Vec<_> = edges.iter().filter(|e| !e.weight.is_one()).collect();
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    if heavy.is_empty() {
        if branch.is_empty() {
            return Some(DynkinLabel::A(k));
        }
        if branch.len() > 1 || adj[branch[0]].len() > 3 {
            return None;
        }
        let c = branch[0];
        let mut arms: Vec<usize> = adj[c].iter().map(|&w| arm_length(&adj, c, w)).collect();
        arms.sort_unstable();
        return match (arms[0], arms[1], arms[2]) {
            (1, 1, _) => Some(DynkinLabel::D(k)),
            (1, 2, 2) => Some(DynkinLabel::E6),
            (1, 2, 3) => Some(DynkinLabel::E7),
            (1, 2, 4) => Some(DynkinLabel::E8),
            _ => None,
        };
    }
    if heavy.len() > 1 || !branch.is_empty() {
        return None;
    }
    let e = heavy[0];
    if e.weight == Int::from(3) {
        return (k == 2).then_some(DynkinLabel::G2);
    }
    if e.weight != Int::from(2) {
        return None;
    }
    if k == 2 {
        return Some(DynkinLabel::B(2));
    }
    let path = path_order(&adj, comp);
    let pos = path.iter().position(|&v| v == e.from || v == e.to)?;
    if k == 4 && pos == 1 {
        return Some(DynkinLabel::F4);
    }
    let (end, next) = if pos == 0 {
        (path[0], path[1])
    } else if pos == k - 2 {
        (path[k - 1], path[k - 2])
    } else {
        return None;
    };
    // |b_{end,next}|: type B has the larger entry on the end vertex
    let from_end = if e.from == end { &e.forward } else { &e.backward };
    debug_assert!(e.from == next || e.to == next);
    Some(if *from_end == Int::from(2) { DynkinLabel::B(k) } else { DynkinLabel::C(k) })
}

fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        match adj[cur].iter().find(|&&w| w != prev) {
            Some(&next) if adj[cur].len() == 2 => {
                prev = cur;
                cur = next;
                len += 1;
            }
            _ => return len,
        }
    }
}

fn path_order(adj: &[Vec<usize>], comp: &[usize]) -> Vec<usize> {
    let start = comp.iter().copied().find(|&v| adj[v].len() <= 1).unwrap_or(comp[0]);
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    path
}

/// Induced cycle of a diagram, listed in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordlessCycle {
    pub vertices: Vec<usize>,
    /// `forward[t]`: the edge between `vertices[t]` and `vertices[t+1]`
    /// (cyclically) points from the former to the latter.
    pub forward: Vec<bool>,
}

impl ChordlessCycle {
    pub fn is_cyclically_oriented(&self) -> bool {
        self.forward.iter().all(|&f| f) || self.forward.iter().all(|&f| !f)
    }

    /// Unordered vertex pairs of the cycle edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.vertices.len();
        (0..k).map(|t| (self.vertices[t], self.vertices[(t + 1) % k])).collect()
    }
}

/// All chordless cycles, each once, starting at its smallest vertex.
pub fn chordless_cycles(d: &Diagram) -> Vec<ChordlessCycle> {
    let n = d.n;
    let mut adjm = vec![vec![false; n]; n];
    for e in &d.edges {
        adjm[e.from][e.to] = true;
        adjm[e.to][e.from] = true;
    }
    let adj = d.neighbors();
    let mut out = Vec::new();
    for s in 0..n {
        let mut path = vec![s];
        extend_cycle(&adj, &adjm, &mut path, &mut out);
    }
    out.into_iter()
        .map(|vertices: Vec<usize>| {
            let k = vertices.len();
            let forward = (0..k)
                .map(|t| d.edges.iter().any(|e| e.from == vertices[t] && e.to == vertices[(t + 1) % k]))
                .collect();
            ChordlessCycle { vertices, forward }
        })
        .collect()
}

fn extend_cycle(adj: &[Vec<usize>], adjm: &[Vec<bool>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().expect("nonempty");
    for &w in &adj[last] {
        if w <= s || path.contains(&w) {
            continue;
        }
        let internal = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
        if internal.iter().any(|&u| adjm[w][u]) {
            continue;
        }
        if path.len() >= 2 && adjm[w][s] {
            if path[1] < w {
                let mut c = path.clone();
                c.push(w);
                out.push(c);
            }
            continue;
        }
        path.push(w);
        extend_cycle(adj, adjm, path, out);
        path.pop();
    }
}

/// Symmetrizable matrix with `a_ii = 2`, `|a_ij| = |b_ij|` and
/// `sign a_ij = sign a_ji`, symmetrized by `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiCartanCompanion {
    pub a: IntMatrix,
    pub d: Vec<Int>,
}

impl QuasiCartanCompanion {
    /// The companion taking the sign of `b_ij` above the diagonal.
    pub fn upper_signed(b: &ExtendedExchangeMatrix) -> Result<Self> {
        let d = b.skew_symmetrizer()?;
        let n = b.n_mutable();
        let mut a = IntMatrix::zeros(n, n);
        for i in 0..n {
            a.set(i, i, Int::from(2));
            for j in i + 1..n {
                let bij = b.get(i, j);
                let sign = if *bij < Int::ZERO { -Int::ONE } else { Int::ONE };
                a.set(i, j, bij.clone());
                a.set(j, i, sign * abs(b.get(j, i)));
            }
        }
        Ok(QuasiCartanCompanion { a, d })
    }

    /// The symmetric matrix `D A`.
    pub fn symmetrized(&self) -> IntMatrix {
        let n = self.a.rows();
        let mut s = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                s.set(i, j, &self.d[i] * self.a.get(i, j));
            }
        }
        s
    }

    /// Positive definiteness of `D A` via exact leading principal minors.
    pub fn is_positive(&self) -> bool {
        let minors = self.symmetrized().leading_principal_minors().expect("square");
        minors.iter().all(|m| *m > Int::ZERO)
    }

    /// `prod (-a_ij) < 0` over the edges of the cycle.
    pub fn satisfies_sign_condition(&self, c: &ChordlessCycle) -> bool {
        let positive = c.edges().iter().filter(|&&(i, j)| *self.a.get(i, j) > Int::ZERO).count();
        positive % 2 == 1
    }
}

/// Quasi-Cartan companion satisfying the sign condition on every chordless
/// cycle, or `None` when some chordless cycle is not cyclically oriented or
/// the sign system is inconsistent.
///
/// Spanning-tree edges (BFS from the smallest vertex of each component) get
/// negative entries; free signs of the remaining edges are negative too.
pub fn signed_companion(b: &ExtendedExchangeMatrix) -> Result<Option<QuasiCartanCompanion>> {
    let top = b.top_matrix();
    let d = top.skew_symmetrizer()?;
    let diagram = top.diagram();
    let cycles = chordless_cycles(&diagram);
    if cycles.iter().any(|c| !c.is_cyclically_oriented()) {
        return Ok(None);
    }
    let n = top.n_mutable();
    let adj = diagram.neighbors();
    let mut in_tree = vec![vec![false; n]; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[v][w] = true;
                    in_tree[w][v] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    // unknowns: non-tree edges (i < j); x = 1 means a positive entry
    let mut var_of = vec![vec![usize::MAX; n]; n];
    let mut nvars = 0;
    for e in &diagram.edges {
        let (i, j) = (e.from.min(e.to), e.from.max(e.to));
        if !in_tree[i][j] && var_of[i][j] == usize::MAX {
            var_of[i][j] = nvars;
            var_of[j][i] = nvars;
            nvars += 1;
        }
    }
    let rows: Vec<(Vec<bool>, bool)> = cycles
        .iter()
        .map(|c| {
            let mut row = vec![false; nvars];
            for (i, j) in c.edges() {
                if var_of[i][j] != usize::MAX {
                    row[var_of[i][j]] ^= true;
                }
            }
            (row, true)
        })
        .collect();
    let Some(x) = solve_gf2(rows, nvars) else {
        return Ok(None);
    };
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        a.set(i, i, Int::from(2));
        for j in 0..n {
            if i == j || top.get(i, j).is_zero() {
                continue;
            }
            let positive = var_of[i][j] != usize::MAX && x[var_of[i][j]];
            let m = abs(top.get(i, j));
            a.set(i, j, if positive { m } else { -m });
        }
    }
    let comp = QuasiCartanCompanion { a, d };
    if !cycles.iter().all(|c| comp.satisfies_sign_condition(c)) {
        return Err(Error::Internal("sign system solution fails a cycle".into()));
    }
    Ok(Some(comp))
}

/// Gaussian elimination over GF(2); free variables are set to 0.
fn solve_gf2(mut rows: Vec<(Vec<bool>, bool)>, nvars: usize) -> Option<Vec<bool>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[c]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[c] {
                for (x, y) in row.0.iter_mut().zip(&pivot.0) {
                    *x ^= *y;
                }
                row.1 ^= pivot.1;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row.1) {
        return None;
    }
    let mut x = vec![false; nvars];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

/// Every chordless cycle is cyclically oriented and a sign-consistent
/// quasi-Cartan companion is positive.
pub fn finite_type_criterion(b: &ExtendedExchangeMatrix) -> Result<bool> {
    Ok(signed_companion(b)?.is_some_and(|a| a.is_positive()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Finite(DynkinType),
    Infinite,
}

/// Cartan-Killing type of the top block: each component is checked by the
/// criterion, then its mutation class is searched for a Dynkin member.
pub fn identify_type(b: &ExtendedExchangeMatrix) -> Result<Classification> {
    let top = b.top_matrix();
    top.skew_symmetrizer()?;
    let mut labels = Vec::new();
    for comp in top.diagram().components() {
        let sub = top.restrict(&comp)?;
        if !finite_type_criterion(&sub)? {
            return Ok(Classification::Infinite);
        }
        let found = match match_dynkin(&sub.diagram()) {
            Some(t) => t,
            None => {
                let class = explore_matrix_class(&sub, &ExploreOptions::default())?;
                if !class.report.status.is_closed() {
                    return Err(Error::Internal(format!(
                        "class of a finite-type component ended with {}",
                        class.report.status.name()
                    )));
                }
                class
                    .members
                    .iter()
                    .find_map(|m| match_dynkin(&m.matrix.diagram()))
                    .ok_or_else(|| Error::Internal("finite-type class without a Dynkin member".into()))?
            }
        };
        labels.extend_from_slice(found.components());
    }
    Ok(Classification::Finite(DynkinType::new(labels)))
}

/// Extended Dynkin tree diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineLabel {
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    /// Weights 3 and `a` along a 3-vertex chain.
    G2(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Dynkin(DynkinLabel),
    ExtendedDynkin(AffineLabel),
    /// Three chains `A_p`, `A_q`, `A_r` joined at an extra vertex.
    T { p: usize, q: usize, r: usize },
    /// Branches `A_{p-1}`, `A_{q-1}`, `A_{r-1}` on consecutive vertices of a
    /// cyclically oriented `(s+3)`-cycle.
    S { p: usize, q: usize, r: usize, s: usize },
    /// `b_{i,i+1} = -1`, `b_{i,i+2} = 1` for `i < j`, skew-symmetric.
    Q(usize),
}

/// Builds a square matrix from weighted edges `(i, j, b_ij, b_ji)`.
fn from_edges(n: usize, edges: &[(usize, usize, i64, i64)]) -> ExtendedExchangeMatrix {
    let mut b = IntMatrix::zeros(n, n);
    for &(i, j, x, y) in edges {
        b.set(i, j, Int::from(x));
        b.set(j, i, Int::from(y));
    }
    ExtendedExchangeMatrix::new(b, n).expect("generated matrices are skew-symmetrizable")
}

fn chain(vertices: &[usize]) -> Vec<(usize, usize, i64, i64)> {
    vertices.windows(2).map(|w| (w[0], w[1], 1, -1)).collect()
}

/// Tree with chains of lengths `arms` hanging off vertex 0.
fn star(arms: &[usize]) -> (usize, Vec<(usize, usize, i64, i64)>) {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next, 1, -1));
            prev = next;
            next += 1;
        }
    }
    (next, edges)
}

fn set_weight(edges: &mut [(usize, usize, i64, i64)], i: usize, j: usize, x: i64, y: i64) {
    let e = edges.iter_mut().find(|e| e.0 == i && e.1 == j).expect("edge exists");
    e.2 = x;
    e.3 = y;
}

/// Generated matrix; tree edges point towards the larger index.
pub fn make_generator(g: &Generator) -> Result<ExtendedExchangeMatrix> {
    let invalid = |what: &str| Err(Error::Precondition(format!("invalid parameters for {what}")));
    Ok(match *g {
        Generator::Dynkin(l) => {
            let n = l.rank();
            let path: Vec<usize> = (0..n).collect();
            let mut edges = chain(&path);
            match l {
                DynkinLabel::A(_) => {}
                DynkinLabel::B(_) => set_weight(&mut edges, 0, 1, 2, -1),
                DynkinLabel::C(_) => set_weight(&mut edges, 0, 1, 1, -2),
                DynkinLabel::D(n) => {
                    edges = chain(&path[..n - 1]);
                    edges.push((n - 3, n - 1, 1, -1));
                }
                DynkinLabel::E6 => return make_generator(&Generator::T { p: 1, q: 2, r: 2 }),
                DynkinLabel::E7 => return make_generator(&Generator::T { p: 1, q: 2, r: 3 }),
                DynkinLabel::E8 => return make_generator(&Generator::T { p: 1, q: 2, r: 4 }),
                DynkinLabel::F4 => set_weight(&mut edges, 1, 2, 2, -1),
                DynkinLabel::G2 => set_weight(&mut edges, 0, 1, 3, -1),
            }
            from_edges(n, &edges)
        }
        Generator::ExtendedDynkin(a) => match a {
            AffineLabel::B(n) if n >= 3 => {
                let mut edges = vec![(0, 2, 1, -1), (1, 2, 1, -1)];
                edges.extend(chain(&(2..=n).collect::<Vec<_>>()));
                set_weight(&mut edges, n - 1, n, 2, -1);
                from_edges(n + 1, &edges)
            }
            AffineLabel::C(n) if n >= 2 => {
                let mut edges = chain(&(0..=n).collect::<Vec<_>>());
                set_weight(&mut edges, 0, 1, 2, -1);
                set_weight(&mut edges, n - 1, n, 2, -1);
                from_edges(n + 1, &edges)
            }
            AffineLabel::D(n) if n >= 4 => {
                let mut edges = vec![(0, 2, 1, -1), (1, 2, 1, -1)];
                edges.extend(chain(&(2..=n - 2).collect::<Vec<_>>()));
                edges.push((n - 2, n - 1, 1, -1));
                edges.push((n - 2, n, 1, -1));
                from_edges(n + 1, &edges)
            }
            AffineLabel::E6 => make_generator(&Generator::T { p: 2, q: 2, r: 2 })?,
            AffineLabel::E7 => make_generator(&Generator::T { p: 3, q: 1, r: 3 })?,
            AffineLabel::E8 => make_generator(&Generator::T { p: 2, q: 1, r: 5 })?,
            AffineLabel::F4 => {
                let mut edges = chain(&[0, 1, 2, 3, 4]);
                set_weight(&mut edges, 1, 2, 2, -1);
                from_edges(5, &edges)
            }
            AffineLabel::G2(w) if (1..=3).contains(&w) => {
                from_edges(3, &[(0, 1, 3, -1), (1, 2, i64::from(w), -1)])
            }
            _ => return invalid("extended Dynkin diagram"),
        },
        Generator::T { p, q, r } => {
            let (n, edges) = star(&[p, q, r]);
            from_edges(n, &edges)
        }
        Generator::S { p, q, r, s } => {
            if p == 0 || q == 0 || r == 0 {
                return invalid("S diagram");
            }
            let c = s + 3;
            let mut edges: Vec<(usize, usize, i64, i64)> = (0..c).map(|t| (t, (t + 1) % c, 1, -1)).collect();
            let mut next = c;
            for (root, len) in [(0, p - 1), (1, q - 1), (2, r - 1)] {
                let mut prev = root;
                for _ in 0..len {
                    edges.push((prev, next, 1, -1));
                    prev = next;
                    next += 1;
                }
            }
            from_edges(next, &edges)
        }
        Generator::Q(n) => {
            let mut edges = Vec::new();
            for i in 0..n {
                if i + 1 < n {
                    edges.push((i, i + 1, -1, 1));
                }
                if i + 2 < n {
                    edges.push((i, i + 2, 1, -1));
                }
            }
            from_edges(n, &edges)
        }
    })
}

/// Reverses the edges `{i, j}` listed in `flip`: `b_ij` and `b_ji` change sign.
pub fn reorient(b: &ExtendedExchangeMatrix, flip: &[(usize, usize)]) -> Result<ExtendedExchangeMatrix> {
    let mut m = b.matrix().clone();
    for &(i, j) in flip {
        m.set(i, j, -m.get(i, j).clone());
        m.set(j, i, -m.get(j, i).clone());
    }
    ExtendedExchangeMatrix::new(m, b.n_mutable())
}

/// Every orientation of the diagram of `b` (top block), `2^edges` matrices.
pub fn all_orientations(b: &ExtendedExchangeMatrix) -> Result<Vec<ExtendedExchangeMatrix>> {
    let edges: Vec<(usize, usize)> = b.diagram().edges.iter().map(|e| (e.from, e.to)).collect();
    if edges.len() > 20 {
        return Err(Error::Precondition("too many edges to enumerate orientations".into()));
    }
    (0u32..1 << edges.len())
        .map(|mask| {
            let flip: Vec<(usize, usize)> =
                edges.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, &e)| e).collect();
            reorient(b, &flip)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b3_and_c3_are_told_apart() {
        let b = ExtendedExchangeMatrix::square(&[[0, -2, 0], [1, 0, -1], [0, 1, 0]]).unwrap();
        let c = ExtendedExchangeMatrix::square(&[[0, -1, 0], [2, 0, -1], [0, 1, 0]]).unwrap();
        assert_eq!(match_dynkin(&b.diagram()), Some(DynkinLabel::B(3).into()));
        assert_eq!(match_dynkin(&c.diagram()), Some(DynkinLabel::C(3).into()));
    }

    #[test]
    fn gf2_detects_inconsistency() {
        let rows = vec![(vec![true, true], true), (vec![true, true], false)];
        assert_eq!(solve_gf2(rows, 2), None);
    }

    #[test]
    fn labels_parse_and_print() {
        let t: DynkinType = "A2+A1".parse().unwrap();
        assert_eq!(t.to_string(), "A1+A2");
        assert_eq!("C2".parse::<DynkinLabel>().unwrap(), DynkinLabel::B(2));
        assert!("D3".parse::<DynkinLabel>().is_err());
    }
}
