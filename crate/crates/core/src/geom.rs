//! Triangulation models for the finite types A, B, C and D.
//!
//! Polygon vertices are labeled `1..=N` clockwise. In the punctured polygon a
//! non-radius arc is stored as an ordered pair `(from, to)`: the arc together
//! with the clockwise boundary run `from, from + 1, ..., to` encloses the side
//! that does not contain the puncture. Arcs crossing the cut (which runs from
//! the puncture to the side `{n, 1}`) are exactly those whose run wraps past `n`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exchange::ExtendedExchangeMatrix;
use crate::Int;

fn invalid(msg: impl Into<String>) -> Error {
    Error::Precondition(format!("invalid triangulation: {}", msg.into()))
}

/// All `size`-subsets of `0..compat.len()` that are pairwise compatible, in
/// lexicographic order.
fn cliques_of_size(compat: &[Vec<bool>], size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, compat: &[Vec<bool>], size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..compat.len() {
            if compat.len() - v < size - cur.len() {
                break;
            }
            if cur.iter().all(|&u| compat[u][v]) {
                cur.push(v);
                rec(v + 1, compat, size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, compat, size, &mut Vec::new(), &mut out);
    out
}

/// Adds the clockwise pair `x -> y` of a triangle to a matrix with `n` columns.
fn add_pair(rows: &mut [Vec<i64>], n: usize, x: usize, y: usize) {
    if y < n {
        rows[x][y] += 1;
    }
    if x < n {
        rows[y][x] -= 1;
    }
}

// ---------------------------------------------------------------------------
// Unpunctured polygons

/// Triangulation of the convex polygon `P_N`; diagonal `k` carries label `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonTriangulation {
    vertices: usize,
    diagonals: Vec<(usize, usize)>,
}

fn diagonals_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn all_diagonals(vertices: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=vertices {
        for b in a + 2..=vertices {
            if !(a == 1 && b == vertices) {
                out.push((a, b));
            }
        }
    }
    out
}

impl PolygonTriangulation {
    pub fn new(vertices: usize, diagonals: Vec<(usize, usize)>) -> Result<Self> {
        if vertices < 3 {
            return Err(invalid(format!("a polygon needs at least 3 vertices, got {vertices}")));
        }
        let diagonals: Vec<_> = diagonals.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        for &(a, b) in &diagonals {
            if a < 1 || b > vertices || b < a + 2 || (a == 1 && b == vertices) {
                return Err(invalid(format!("{a}-{b} is not a diagonal of P_{vertices}")));
            }
        }
        for (k, &d) in diagonals.iter().enumerate() {
            for &e in &diagonals[k + 1..] {
                if d == e {
                    return Err(invalid(format!("{}-{} repeated", d.0, d.1)));
                }
                if diagonals_cross(d, e) {
                    return Err(invalid(format!("{}-{} crosses {}-{}", d.0, d.1, e.0, e.1)));
                }
            }
        }
        if diagonals.len() != vertices - 3 {
            return Err(invalid(format!("expected {} diagonals, got {}", vertices - 3, diagonals.len())));
        }
        Ok(PolygonTriangulation { vertices, diagonals })
    }

    /// The fan at vertex 1 of `P_{n+3}`, with diagonal `l` joining `1` and `l + 2`.
    pub fn fan(n: usize) -> Self {
        PolygonTriangulation { vertices: n + 3, diagonals: (1..=n).map(|l| (1, l + 2)).collect() }
    }

    /// Every triangulation of `P_{n+3}`, diagonals sorted.
    pub fn all(n: usize) -> Vec<Self> {
        let diags = all_diagonals(n + 3);
        let compat: Vec<Vec<bool>> =
            diags.iter().map(|&d| diags.iter().map(|&e| !diagonals_cross(d, e)).collect()).collect();
        cliques_of_size(&compat, n)
            .into_iter()
            .map(|c| PolygonTriangulation { vertices: n + 3, diagonals: c.iter().map(|&i| diags[i]).collect() })
            .collect()
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices - 3
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    /// Same diagonals, sorted.
    pub fn canonical(&self) -> Self {
        let mut diagonals = self.diagonals.clone();
        diagonals.sort_unstable();
        PolygonTriangulation { vertices: self.vertices, diagonals }
    }

    /// Row of the side or diagonal `{a, b}` in the extended matrix.
    fn edge_row(&self, a: usize, b: usize) -> Option<usize> {
        let (a, b) = (a.min(b), a.max(b));
        let n = self.rank();
        if b == a + 1 {
            return Some(n + a - 1);
        }
        if a == 1 && b == self.vertices {
            return Some(2 * n + 2);
        }
        self.diagonals.iter().position(|&d| d == (a, b))
    }

    /// The diagonal replacing `d`; the new diagonal keeps the label of `d`.
    pub fn flip(&self, d: (usize, usize)) -> Result<Self> {
        let d = (d.0.min(d.1), d.0.max(d.1));
        let k = self
            .diagonals
            .iter()
            .position(|&e| e == d)
            .ok_or_else(|| Error::Precondition(format!("{}-{} is not in the triangulation", d.0, d.1)))?;
        let (a, b) = d;
        let apex = |range: Vec<usize>| {
            range.into_iter().find(|&c| self.edge_row(a, c).is_some() && self.edge_row(c, b).is_some())
        };
        let inner = apex((a + 1..b).collect());
        let outer = apex((b + 1..=self.vertices).chain(1..a).collect());
        match (inner, outer) {
            (Some(c), Some(e)) => {
                let mut diagonals = self.diagonals.clone();
                diagonals[k] = (c.min(e), c.max(e));
                Ok(PolygonTriangulation { vertices: self.vertices, diagonals })
            }
            _ => Err(Error::Internal(format!("no quadrilateral around {a}-{b}"))),
        }
    }

    /// Triangles as increasing vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let v = self.vertices;
        let mut out = Vec::new();
        for a in 1..=v {
            for b in a + 1..=v {
                if self.edge_row(a, b).is_none() {
                    continue;
                }
                for c in b + 1..=v {
                    if self.edge_row(b, c).is_some() && self.edge_row(a, c).is_some() {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Maps vertex `i` to `i + k` (mod N).
    pub fn rotate(&self, k: usize) -> Self {
        let v = self.vertices;
        let r = |i: usize| (i - 1 + k) % v + 1;
        let diagonals = self.diagonals.iter().map(|&(a, b)| (r(a).min(r(b)), r(a).max(r(b)))).collect();
        PolygonTriangulation { vertices: v, diagonals }
    }

    /// Invariant under the half-turn of a polygon with an even number of vertices.
    pub fn is_centrally_symmetric(&self) -> bool {
        if self.vertices % 2 == 1 {
            return false;
        }
        let set: HashSet<_> = self.diagonals.iter().copied().collect();
        self.rotate(self.vertices / 2).diagonals.iter().all(|d| set.contains(d))
    }
}

impl fmt::Display for PolygonTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The `(2n+3) x n` matrix of a triangulation of `P_{n+3}`, or its top `n x n`
/// block when `boundary` is false. The side `{l, l+1}` is row `n + l` (1-based)
/// and the side `{1, n+3}` is the last row.
pub fn polygon_matrix(t: &PolygonTriangulation, boundary: bool) -> ExtendedExchangeMatrix {
    let n = t.rank();
    let mut rows = vec![vec![0i64; n]; 2 * n + 3];
    for [a, b, c] in t.triangles() {
        // clockwise sides: {a,b} -> {b,c} -> {c,a}
        let x = t.edge_row(a, b).unwrap();
        let y = t.edge_row(b, c).unwrap();
        let z = t.edge_row(a, c).unwrap();
        add_pair(&mut rows, n, x, y);
        add_pair(&mut rows, n, y, z);
        add_pair(&mut rows, n, z, x);
    }
    if !boundary {
        rows.truncate(n);
    }
    ExtendedExchangeMatrix::extended(&rows).expect("triangulation matrices are skew-symmetric")
}

pub fn polygon_flip(t: &PolygonTriangulation, d: (usize, usize)) -> Result<PolygonTriangulation> {
    t.flip(d)
}

/// Centrally symmetric triangulations of `P_{2n+2}`.
pub fn central_triangulations(n: usize) -> Vec<PolygonTriangulation> {
    PolygonTriangulation::all(2 * n - 1).into_iter().filter(|t| t.is_centrally_symmetric()).collect()
}

/// Flip of a half-turn orbit of diagonals (a diameter or a pair).
pub fn central_flip(t: &PolygonTriangulation, d: (usize, usize)) -> Result<PolygonTriangulation> {
    let partner = {
        let h = t.vertices / 2;
        let r = |i: usize| (i - 1 + h) % t.vertices + 1;
        let (a, b) = (r(d.0), r(d.1));
        (a.min(b), a.max(b))
    };
    let once = t.flip(d)?;
    if partner == (d.0.min(d.1), d.0.max(d.1)) {
        Ok(once)
    } else {
        once.flip(partner)
    }
}

// ---------------------------------------------------------------------------
// Once-punctured polygons

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Plain,
    Notched,
}

impl Tag {
    pub fn flipped(self) -> Tag {
        match self {
            Tag::Plain => Tag::Notched,
            Tag::Notched => Tag::Plain,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TaggedArc {
    /// Non-radius arc enclosing the clockwise run `from..=to` away from the puncture.
    Chord { from: usize, to: usize },
    Radius { vertex: usize, tag: Tag },
}

/// Number of vertices on the clockwise run `from..=to`.
fn run_len(from: usize, to: usize, n: usize) -> usize {
    (to + n - from) % n + 1
}

/// Boundary sides `{l, l+1}` on the run, as a bit mask over `l - 1`.
fn run_mask(from: usize, to: usize, n: usize) -> u64 {
    let mut m = 0;
    for step in 0..run_len(from, to, n) - 1 {
        m |= 1 << ((from - 1 + step) % n);
    }
    m
}

fn strictly_inside(v: usize, from: usize, to: usize, n: usize) -> bool {
    let off = (v + n - from) % n;
    off > 0 && off < run_len(from, to, n) - 1
}

impl TaggedArc {
    pub fn is_radius(&self) -> bool {
        matches!(self, TaggedArc::Radius { .. })
    }

    fn check(&self, n: usize) -> Result<()> {
        match *self {
            TaggedArc::Chord { from, to } => {
                if !(1..=n).contains(&from) || !(1..=n).contains(&to) || from == to {
                    return Err(invalid(format!("{self} is not an arc of P*_{n}")));
                }
                if run_len(from, to, n) < 3 {
                    return Err(invalid(format!("{self} cuts out an unpunctured digon")));
                }
            }
            TaggedArc::Radius { vertex, .. } => {
                if !(1..=n).contains(&vertex) {
                    return Err(invalid(format!("{self} is not an arc of P*_{n}")));
                }
            }
        }
        Ok(())
    }

    /// Whether the arc crosses the cut from the puncture to the side `{n, 1}`.
    pub fn crosses_cut(&self) -> bool {
        matches!(*self, TaggedArc::Chord { from, to } if to < from)
    }
}

impl fmt::Display for TaggedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaggedArc::Chord { from, to } => write!(f, "{from}-{to}"),
            TaggedArc::Radius { vertex, tag: Tag::Plain } => write!(f, "p-{vertex}:plain"),
            TaggedArc::Radius { vertex, tag: Tag::Notched } => write!(f, "p-{vertex}:notched"),
        }
    }
}

impl FromStr for TaggedArc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad tagged arc '{s}'"));
        if let Some(rest) = s.strip_prefix("p-") {
            let (v, tag) = rest.split_once(':').unwrap_or((rest, "plain"));
            let tag = match tag {
                "plain" => Tag::Plain,
                "notched" => Tag::Notched,
                _ => return Err(bad()),
            };
            return Ok(TaggedArc::Radius { vertex: v.parse().map_err(|_| bad())?, tag });
        }
        let (a, b) = s.split_once('-').ok_or_else(bad)?;
        Ok(TaggedArc::Chord { from: a.parse().map_err(|_| bad())?, to: b.parse().map_err(|_| bad())? })
    }
}

/// All tagged arcs of `P*_n`, sorted.
pub fn tagged_arcs(n: usize) -> Vec<TaggedArc> {
    let mut out = Vec::new();
    for from in 1..=n {
        for len in 3..=n {
            out.push(TaggedArc::Chord { from, to: (from - 1 + len - 1) % n + 1 });
        }
    }
    for vertex in 1..=n {
        out.push(TaggedArc::Radius { vertex, tag: Tag::Plain });
        out.push(TaggedArc::Radius { vertex, tag: Tag::Notched });
    }
    out.sort();
    out
}

/// Non-crossing of the untagged arcs, except that plain and notched radii at
/// different vertices never go together.
pub fn tagged_compatible(a: &TaggedArc, b: &TaggedArc, n: usize) -> bool {
    use TaggedArc::*;
    match (*a, *b) {
        (Chord { from: f1, to: t1 }, Chord { from: f2, to: t2 }) => {
            let (m1, m2) = (run_mask(f1, t1, n), run_mask(f2, t2, n));
            m1 & m2 == 0 || m1 & m2 == m1 || m1 & m2 == m2
        }
        (Chord { from, to }, Radius { vertex, .. }) | (Radius { vertex, .. }, Chord { from, to }) => {
            !strictly_inside(vertex, from, to, n)
        }
        (Radius { vertex: v1, tag: g1 }, Radius { vertex: v2, tag: g2 }) => v1 == v2 || g1 == g2,
    }
}

/// The three kinds of tagged triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PuncturedFlavor {
    AllPlain,
    AllNotched,
    /// Plain and notched copies of one radius inside a punctured digon.
    DigonMixed,
}

/// Tagged triangulation of `P*_n`; arc `k` carries label `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TaggedTriangulation {
    n: usize,
    arcs: Vec<TaggedArc>,
}

impl TaggedTriangulation {
    pub fn new(n: usize, arcs: Vec<TaggedArc>) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("punctured polygons need at least 2 vertices, got {n}")));
        }
        for a in &arcs {
            a.check(n)?;
        }
        for (k, a) in arcs.iter().enumerate() {
            for b in &arcs[k + 1..] {
                if a == b {
                    return Err(invalid(format!("{a} repeated")));
                }
                if !tagged_compatible(a, b, n) {
                    return Err(invalid(format!("{a} and {b} are not compatible")));
                }
            }
        }
        if arcs.len() != n {
            return Err(invalid(format!("expected {n} tagged arcs, got {}", arcs.len())));
        }
        Ok(TaggedTriangulation { n, arcs })
    }

    /// All plain radii, radius `k` ending at vertex `k`.
    pub fn t_circ(n: usize) -> Self {
        TaggedTriangulation { n, arcs: (1..=n).map(|vertex| TaggedArc::Radius { vertex, tag: Tag::Plain }).collect() }
    }

    /// Every tagged triangulation of `P*_n`, arcs sorted.
    pub fn all(n: usize) -> Vec<Self> {
        let arcs = tagged_arcs(n);
        let compat: Vec<Vec<bool>> =
            arcs.iter().map(|a| arcs.iter().map(|b| a != b && tagged_compatible(a, b, n)).collect()).collect();
        cliques_of_size(&compat, n)
            .into_iter()
            .map(|c| TaggedTriangulation { n, arcs: c.iter().map(|&i| arcs[i]).collect() })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[TaggedArc] {
        &self.arcs
    }

    pub fn canonical(&self) -> Self {
        let mut arcs = self.arcs.clone();
        arcs.sort_unstable();
        TaggedTriangulation { n: self.n, arcs }
    }

    pub fn flavor(&self) -> PuncturedFlavor {
        let tags: HashSet<Tag> = self
            .arcs
            .iter()
            .filter_map(|a| match a {
                TaggedArc::Radius { tag, .. } => Some(*tag),
                _ => None,
            })
            .collect();
        match (tags.contains(&Tag::Plain), tags.contains(&Tag::Notched)) {
            (true, true) => PuncturedFlavor::DigonMixed,
            (false, true) => PuncturedFlavor::AllNotched,
            _ => PuncturedFlavor::AllPlain,
        }
    }

    /// Replaces `gamma` by the unique other tagged arc; the label is kept.
    pub fn flip(&self, gamma: &TaggedArc) -> Result<Self> {
        let k = self
            .arcs
            .iter()
            .position(|a| a == gamma)
            .ok_or_else(|| Error::Precondition(format!("{gamma} is not in the triangulation")))?;
        let rest: Vec<&TaggedArc> = self.arcs.iter().filter(|a| *a != gamma).collect();
        let candidates: Vec<TaggedArc> = tagged_arcs(self.n)
            .into_iter()
            .filter(|c| c != gamma && !rest.contains(&c) && rest.iter().all(|r| tagged_compatible(c, r, self.n)))
            .collect();
        match candidates.as_slice() {
            [c] => {
                let mut arcs = self.arcs.clone();
                arcs[k] = *c;
                Ok(TaggedTriangulation { n: self.n, arcs })
            }
            _ => Err(Error::Internal(format!("flip of {gamma} has {} candidates", candidates.len()))),
        }
    }

    /// Swaps plain and notched on every radius.
    pub fn retag(&self) -> Self {
        let arcs = self
            .arcs
            .iter()
            .map(|a| match *a {
                TaggedArc::Radius { vertex, tag } => TaggedArc::Radius { vertex, tag: tag.flipped() },
                c => c,
            })
            .collect();
        TaggedTriangulation { n: self.n, arcs }
    }

    /// Row of the chord or boundary side on the run `from..=to`.
    fn edge_row(&self, from: usize, to: usize) -> Option<usize> {
        let n = self.n;
        if run_len(from, to, n) == 2 {
            return Some(n + from - 1);
        }
        self.arcs.iter().position(|a| *a == TaggedArc::Chord { from, to })
    }
}

impl fmt::Display for TaggedTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The `2n x n` matrix of a tagged triangulation: arcs first, then the side
/// `{l, l+1}` in row `n + l` (1-based) with `{n, 1}` last.
pub fn tagged_matrix(t: &TaggedTriangulation) -> Result<ExtendedExchangeMatrix> {
    let n = t.n;
    let mut rows = vec![vec![0i64; n]; 2 * n];
    // triangles away from the puncture, found from their outer side
    for (z, arc) in t.arcs.iter().enumerate() {
        if let TaggedArc::Chord { from, to } = *arc {
            for step in 1..run_len(from, to, n) - 1 {
                let b = (from - 1 + step) % n + 1;
                if let (Some(x), Some(y)) = (t.edge_row(from, b), t.edge_row(b, to)) {
                    add_pair(&mut rows, n, x, y);
                    add_pair(&mut rows, n, y, z);
                    add_pair(&mut rows, n, z, x);
                }
            }
        }
    }
    let mut radii: Vec<(usize, usize)> = t
        .arcs
        .iter()
        .enumerate()
        .filter_map(|(k, a)| match a {
            TaggedArc::Radius { vertex, .. } => Some((*vertex, k)),
            _ => None,
        })
        .collect();
    radii.sort_unstable();
    let missing = |a: usize, b: usize| Error::Internal(format!("no side from {a} to {b} around the puncture"));
    if t.flavor() == PuncturedFlavor::DigonMixed {
        // both radii take the arrows of the loop around the puncture
        let i = radii[0].0;
        let j = (1..=n)
            .find(|&j| j != i && t.edge_row(i, j).is_some() && t.edge_row(j, i).is_some())
            .ok_or_else(|| Error::Internal(format!("no punctured digon at {i}")))?;
        let (alpha, beta) = (t.edge_row(i, j).unwrap(), t.edge_row(j, i).unwrap());
        add_pair(&mut rows, n, alpha, beta);
        for &(_, r) in &radii {
            add_pair(&mut rows, n, beta, r);
            add_pair(&mut rows, n, r, alpha);
        }
    } else {
        for (s, &(vi, ri)) in radii.iter().enumerate() {
            let (vj, rj) = radii[(s + 1) % radii.len()];
            let sigma = t.edge_row(vi, vj).ok_or_else(|| missing(vi, vj))?;
            add_pair(&mut rows, n, sigma, rj);
            add_pair(&mut rows, n, rj, ri);
            add_pair(&mut rows, n, ri, sigma);
        }
    }
    ExtendedExchangeMatrix::extended(&rows)
}

type LambdaTable = HashMap<Vec<TaggedArc>, Vec<[i64; 2]>>;

/// Rows of the two eigenvalue coefficients for every tagged triangulation of
/// `P*_n`, carried by mutation from the all-plain triangulation.
fn lambda_table(n: usize) -> Result<Arc<LambdaTable>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LambdaTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let start = TaggedTriangulation::t_circ(n);
    let mut init = vec![[0i64; 2]; n];
    init[0][0] = -1;
    init[n - 1][1] = 1;
    let mut table = LambdaTable::new();
    table.insert(start.arcs.clone(), init);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let full = with_lambda(&t, &table[&t.arcs])?;
        for k in 0..n {
            let next = t.flip(&t.arcs[k])?;
            let rows = full.mutate(k)?.matrix().to_i64_rows().ok_or_else(|| Error::Internal("entry overflow".into()))?;
            let key = next.canonical();
            if table.contains_key(&key.arcs) {
                continue;
            }
            let vals = key
                .arcs
                .iter()
                .map(|a| {
                    let c = next.arcs.iter().position(|b| b == a).unwrap();
                    [rows[2 * n][c], rows[2 * n + 1][c]]
                })
                .collect();
            table.insert(key.arcs.clone(), vals);
            queue.push_back(key);
        }
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert(n, table.clone());
    Ok(table)
}

/// `t` must be canonical; `vals` follow its arc order.
fn with_lambda(t: &TaggedTriangulation, vals: &[[i64; 2]]) -> Result<ExtendedExchangeMatrix> {
    let base = tagged_matrix(t)?.matrix().to_i64_rows().ok_or_else(|| Error::Internal("entry overflow".into()))?;
    let mut rows = base;
    rows.push(vals.iter().map(|v| v[0]).collect());
    rows.push(vals.iter().map(|v| v[1]).collect());
    ExtendedExchangeMatrix::extended(&rows)
}

/// [`tagged_matrix`] with the two extra rows of the eigenvalue coefficients
/// `lambda` and `lambda-bar` appended.
pub fn tagged_matrix_bullet(t: &TaggedTriangulation) -> Result<ExtendedExchangeMatrix> {
    let table = lambda_table(t.n)?;
    let key = t.canonical();
    let vals = table.get(&key.arcs).ok_or_else(|| Error::Internal(format!("{t} unreachable by flips")))?;
    let ordered: Vec<[i64; 2]> = t.arcs.iter().map(|a| vals[key.arcs.iter().position(|b| b == a).unwrap()]).collect();
    with_lambda(t, &ordered)
}

pub fn tagged_flip(t: &TaggedTriangulation, gamma: &TaggedArc) -> Result<TaggedTriangulation> {
    t.flip(gamma)
}

/// Tagged triangulations of `P*_{n+1}` fixed by swapping every tag.
pub fn tag_symmetric_triangulations(n: usize) -> Vec<TaggedTriangulation> {
    TaggedTriangulation::all(n + 1).into_iter().filter(|t| t.flavor() == PuncturedFlavor::DigonMixed).collect()
}

/// Flip of a tag-swap orbit: a chord alone, or both radii of the digon.
pub fn tag_symmetric_flip(t: &TaggedTriangulation, gamma: &TaggedArc) -> Result<TaggedTriangulation> {
    match *gamma {
        TaggedArc::Radius { vertex, tag } => {
            let once = t.flip(gamma)?;
            once.flip(&TaggedArc::Radius { vertex, tag: tag.flipped() })
        }
        _ => t.flip(gamma),
    }
}

/// Counts of non-radius arcs not crossing the cut, those crossing it, and radii.
pub fn arc_census(n: usize) -> (usize, usize, usize) {
    let arcs = tagged_arcs(n);
    let crossing = arcs.iter().filter(|a| a.crosses_cut()).count();
    let radii = arcs.iter().filter(|a| a.is_radius()).count();
    (arcs.len() - crossing - radii, crossing, radii)
}

// ---------------------------------------------------------------------------
// Counting

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangulationModel {
    /// Triangulations of `P_{n+3}`.
    PolygonA(usize),
    /// Tagged triangulations of `P*_n`.
    TaggedD(usize),
    /// Centrally symmetric triangulations of `P_{2n+2}`.
    CentralC(usize),
    /// Tag-symmetric triangulations of `P*_{n+1}`.
    TagSymB(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationCount {
    pub enumerated: usize,
    pub closed_form: Int,
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::ZERO;
    }
    let mut acc = Int::ONE;
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

pub fn catalan(k: u64) -> Int {
    binomial(2 * k, k) / Int::from(k + 1)
}

/// Closed-form seed count for type `D_n`.
pub fn d_count(n: u64) -> Int {
    Int::from(3 * n - 2) * binomial(2 * n - 2, n - 1) / Int::from(n)
}

impl TriangulationModel {
    pub fn closed_form(&self) -> Int {
        match *self {
            TriangulationModel::PolygonA(n) => catalan(n as u64 + 1),
            TriangulationModel::TaggedD(n) => d_count(n as u64),
            TriangulationModel::CentralC(n) | TriangulationModel::TagSymB(n) => binomial(2 * n as u64, n as u64),
        }
    }
}

/// Enumerates the model and compares with the closed form; a mismatch is an
/// internal error.
pub fn count_triangulations(model: TriangulationModel) -> Result<TriangulationCount> {
    let enumerated = match model {
        TriangulationModel::PolygonA(n) => PolygonTriangulation::all(n).len(),
        TriangulationModel::TaggedD(n) if n >= 2 => TaggedTriangulation::all(n).len(),
        TriangulationModel::CentralC(n) if n >= 1 => central_triangulations(n).len(),
        TriangulationModel::TagSymB(n) if n >= 1 => tag_symmetric_triangulations(n).len(),
        _ => return Err(Error::Precondition(format!("{model:?} is outside the model's range"))),
    };
    let closed_form = model.closed_form();
    if closed_form != Int::from(enumerated) {
        return Err(Error::Internal(format!("{model:?}: enumerated {enumerated}, closed form {closed_form}")));
    }
    Ok(TriangulationCount { enumerated, closed_form })
}

/// Checks `d_n = sum_{k=0}^{n-3} a_k d_{n-1-k} + 2 a_{n-1}` for `3 <= n <= big_n`,
/// where `a_k` counts type `A_k` seeds and `d_2 = 4`.
pub fn dn_recurrence_check(big_n: usize) -> bool {
    let a = |k: usize| catalan(k as u64 + 1);
    let mut d: Vec<Int> = vec![Int::ZERO, Int::ZERO, Int::from(4)];
    for n in 3..=big_n {
        let mut v = Int::from(2) * a(n - 1);
        for k in 0..=n - 3 {
            v += a(k) * &d[n - 1 - k];
        }
        if v != d_count(n as u64) {
            return false;
        }
        d.push(v);
    }
    true
}

// ---------------------------------------------------------------------------
// Flip graphs

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlipGraph {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl FlipGraph {
    fn build<T: Clone + Eq + std::hash::Hash>(
        nodes: Vec<T>,
        label: impl Fn(&T) -> String,
        neighbors: impl Fn(&T) -> Result<Vec<T>>,
    ) -> Result<Self> {
        let index: HashMap<T, usize> = nodes.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut edges = Vec::new();
        for (i, t) in nodes.iter().enumerate() {
            for u in neighbors(t)? {
                let j = *index.get(&u).ok_or_else(|| Error::Internal("flip leaves the model".into()))?;
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        Ok(FlipGraph { labels: nodes.iter().map(label).collect(), edges })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.labels.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().iter().all(|&d| d == k)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  t{i} [label=\"{l}\"];\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  t{a} -- t{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn polygon_flip_graph(n: usize) -> Result<FlipGraph> {
    FlipGraph::build(PolygonTriangulation::all(n), |t| t.to_string(), |t| {
        t.diagonals().iter().map(|&d| Ok(t.flip(d)?.canonical())).collect()
    })
}

pub fn tagged_flip_graph(n: usize) -> Result<FlipGraph> {
    FlipGraph::build(TaggedTriangulation::all(n), |t| t.to_string(), |t| {
        t.arcs().iter().map(|a| Ok(t.flip(a)?.canonical())).collect()
    })
}

pub fn central_flip_graph(n: usize) -> Result<FlipGraph> {
    FlipGraph::build(central_triangulations(n), |t| t.to_string(), |t| {
        let mut out: Vec<PolygonTriangulation> =
            t.diagonals().iter().map(|&d| Ok(central_flip(t, d)?.canonical())).collect::<Result<_>>()?;
        out.sort_by_key(|u| u.diagonals.clone());
        out.dedup();
        Ok(out)
    })
}

pub fn tag_symmetric_flip_graph(n: usize) -> Result<FlipGraph> {
    FlipGraph::build(tag_symmetric_triangulations(n), |t| t.to_string(), |t| {
        let mut out: Vec<TaggedTriangulation> =
            t.arcs().iter().map(|a| Ok(tag_symmetric_flip(t, a)?.canonical())).collect::<Result<_>>()?;
        out.sort_by_key(|u| u.arcs.clone());
        out.dedup();
        Ok(out)
    })
}
