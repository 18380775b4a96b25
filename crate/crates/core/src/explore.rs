//! Breadth-first enumeration of matrix mutation classes and seed patterns.
//!
//! Matrices are deduplicated up to simultaneous permutation of the mutable
//! indices (quiver isomorphism for skew-symmetric input); seeds up to
//! unlabeled-seed equality. Each BFS level is expanded in parallel and merged
//! sequentially in frontier order, so reports do not depend on scheduling.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::canon::canonical_order;
use crate::error::{Error, Result};
use crate::exchange::ExtendedExchangeMatrix;
use crate::laurent::LaurentPolynomial;
use crate::matrix::{Int, IntMatrix};
use crate::seed::{exponent_u32, Seed};

/// Default bound on the number of distinct canonical forms visited.
pub const DEFAULT_MAX_COUNT: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct ExploreOptions {
    /// Stop after this many BFS levels.
    pub max_depth: Option<usize>,
    /// Stop once this many distinct canonical forms have been found.
    pub max_count: usize,
    /// Matrix classes only: stop at the first member with `|b_ij b_ji| >= 4`.
    pub abort_on_2_infinite: bool,
    /// Seed patterns only: count labeled seeds instead of unlabeled ones.
    pub labeled: bool,
    /// Seed patterns only: keep every visited seed in the result.
    pub keep_seeds: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            max_depth: None,
            max_count: DEFAULT_MAX_COUNT,
            abort_on_2_infinite: true,
            labeled: false,
            keep_seeds: false,
            threads: None,
        }
    }
}

impl ExploreOptions {
    pub fn without_abort() -> Self {
        ExploreOptions { abort_on_2_infinite: false, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExplorationStatus {
    Closed,
    /// A member with `|b_ij b_ji| = product >= 4` was reached at `depth`.
    /// `i`, `j` are 1-based labels of that member as reached by its word.
    AbortedInfiniteWitness { i: usize, j: usize, product: Int, depth: usize },
    DepthCapped,
    CountCapped,
}

impl ExplorationStatus {
    pub fn is_closed(&self) -> bool {
        matches!(self, ExplorationStatus::Closed)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExplorationStatus::Closed => "Closed",
            ExplorationStatus::AbortedInfiniteWitness { .. } => "AbortedInfiniteWitness",
            ExplorationStatus::DepthCapped => "DepthCapped",
            ExplorationStatus::CountCapped => "CountCapped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationReport {
    pub status: ExplorationStatus,
    /// Number of distinct matrices or seeds found.
    pub count: usize,
    /// Number of distinct mutable cluster variables (seed patterns only).
    pub variables: Option<usize>,
    /// `depth_profile[d]` counts everything reachable with at most `d` mutations.
    pub depth_profile: Vec<usize>,
}

/// Canonical representative of `b` under permutations of its mutable indices,
/// together with the order used: row `p` of the result is row `order[p]` of `b`.
pub fn canonical_matrix(b: &ExtendedExchangeMatrix) -> (ExtendedExchangeMatrix, Vec<usize>) {
    let n = b.n_mutable();
    let order = canonical_order(n, b.n_rows(), |i, j| if j < n { b.get(i, j).clone() } else { Int::ZERO });
    (b.permute_mutable(&order), order)
}

/// One member of an explored matrix class.
#[derive(Clone, Debug)]
pub struct ClassMember {
    /// Canonical representative.
    pub matrix: ExtendedExchangeMatrix,
    /// Mutation word (0-based directions) reaching this member from the input.
    pub word: Vec<usize>,
    /// `labels[p]` is the index in `input.mutate_seq(word)` of canonical index `p`.
    pub labels: Vec<usize>,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct MatrixClass {
    pub report: ExplorationReport,
    pub members: Vec<ClassMember>,
}

impl MatrixClass {
    pub fn contains(&self, b: &ExtendedExchangeMatrix) -> Option<&ClassMember> {
        let (c, _) = canonical_matrix(b);
        self.members.iter().find(|m| m.matrix == c)
    }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn witness_of(b: &ExtendedExchangeMatrix) -> Option<(Int, usize, usize)> {
    let (p, i, j) = b.max_pair_product();
    (p >= Int::from(4)).then_some((p, i, j))
}

/// BFS over the mutation class of `b` up to permutation of mutable indices.
pub fn explore_matrix_class(b: &ExtendedExchangeMatrix, opts: &ExploreOptions) -> Result<MatrixClass> {
    b.skew_symmetrizer()?;
    with_pool(opts.threads, || matrix_bfs(b, opts))
}

fn matrix_bfs(b: &ExtendedExchangeMatrix, opts: &ExploreOptions) -> MatrixClass {
    let n = b.n_mutable();
    let (c0, order0) = canonical_matrix(b);
    let mut members = vec![ClassMember { matrix: c0.clone(), word: Vec::new(), labels: order0, depth: 0 }];
    let mut seen: FxHashMap<ExtendedExchangeMatrix, usize> = FxHashMap::default();
    seen.insert(c0, 0);
    let mut profile = vec![1];
    let finish = |status, members: Vec<ClassMember>, profile| MatrixClass {
        report: ExplorationReport { status, count: members.len(), variables: None, depth_profile: profile },
        members,
    };
    if opts.abort_on_2_infinite {
        if let Some((product, i, j)) = witness_of(b) {
            let status = ExplorationStatus::AbortedInfiniteWitness { i: i + 1, j: j + 1, product, depth: 0 };
            return finish(status, members, profile);
        }
    }
    let mut frontier = vec![0usize];
    let mut depth = 0;
    loop {
        if frontier.is_empty() {
            return finish(ExplorationStatus::Closed, members, profile);
        }
        if opts.max_depth.is_some_and(|d| depth >= d) {
            return finish(ExplorationStatus::DepthCapped, members, profile);
        }
        let children: Vec<Vec<(ExtendedExchangeMatrix, Vec<usize>)>> = frontier
            .par_iter()
            .map(|&idx| {
                let m = &members[idx].matrix;
                (0..n)
                    .map(|k| {
                        let (c, order) = canonical_matrix(&m.mutate_unchecked(k));
                        (c, order)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&parent, kids) in frontier.iter().zip(children) {
            for (k, (c, order)) in kids.into_iter().enumerate() {
                if seen.contains_key(&c) {
                    continue;
                }
                let p = &members[parent];
                let actual_k = p.labels[k];
                let mut word = p.word.clone();
                word.push(actual_k);
                // canonical p -> index order[p] of mu_k(parent canonical) -> parent label
                let labels: Vec<usize> = order.iter().map(|&q| p.labels[q]).collect();
                let idx = members.len();
                seen.insert(c.clone(), idx);
                let witness = if opts.abort_on_2_infinite { witness_of(&c) } else { None };
                members.push(ClassMember { matrix: c, word, labels, depth: depth + 1 });
                next.push(idx);
                if let Some((product, i, j)) = witness {
                    profile.push(members.len());
                    let lab = &members[idx].labels;
                    let (i, j) = (lab[i].min(lab[j]) + 1, lab[i].max(lab[j]) + 1);
                    let status = ExplorationStatus::AbortedInfiniteWitness { i, j, product, depth: depth + 1 };
                    return finish(status, members, profile);
                }
                if members.len() >= opts.max_count {
                    profile.push(members.len());
                    return finish(ExplorationStatus::CountCapped, members, profile);
                }
            }
        }
        profile.push(members.len());
        frontier = next;
        depth += 1;
    }
}

/// Result of the finite-type decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteTypeDecision {
    Finite { class_size: usize },
    /// 1-based pair in `b.mutate_seq(word)` with `|b_ij b_ji| = product >= 4`.
    Infinite { i: usize, j: usize, product: Int, word: Vec<usize> },
    Unknown,
}

/// Decides finite type by exploring the class of the top block of `b`.
///
/// A seeded random mutation walk looks for a witness first; the BFS, which
/// is complete, only runs when the walk finds none.
pub fn decide_finite_type(b: &ExtendedExchangeMatrix, opts: &ExploreOptions) -> Result<FiniteTypeDecision> {
    b.skew_symmetrizer()?;
    if let Some(found) = random_witness(&b.top_matrix(), WALK_STEPS) {
        return Ok(found);
    }
    let opts = ExploreOptions { abort_on_2_infinite: true, ..opts.clone() };
    let class = explore_matrix_class(&b.top_matrix(), &opts)?;
    Ok(match class.report.status {
        ExplorationStatus::Closed => FiniteTypeDecision::Finite { class_size: class.report.count },
        ExplorationStatus::AbortedInfiniteWitness { i, j, product, .. } => {
            let word = class.members.last().map(|m| m.word.clone()).unwrap_or_default();
            FiniteTypeDecision::Infinite { i, j, product, word }
        }
        _ => FiniteTypeDecision::Unknown,
    })
}

const WALK_STEPS: usize = 20_000;

/// Random walk in the mutation graph of a square `b`, stopping at the first
/// pair with `|b_ij b_ji| >= 4`. Entries stay below 16 in absolute value until
/// then, so plain `i64` arithmetic is safe.
fn random_witness(b: &ExtendedExchangeMatrix, steps: usize) -> Option<FiniteTypeDecision> {
    let n = b.n_mutable();
    let mut m = b.matrix().to_i64_rows()?;
    let witness = |m: &[Vec<i64>]| {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| (m[i][j] * m[j][i]).abs() >= 4)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x2f1);
    let mut word = Vec::new();
    let mut last = usize::MAX;
    for _ in 0..steps {
        if let Some((i, j)) = witness(&m) {
            let product = Int::from((m[i][j] * m[j][i]).abs());
            return Some(FiniteTypeDecision::Infinite { i: i + 1, j: j + 1, product, word });
        }
        if n < 2 {
            return None;
        }
        let mut k = rng.gen_range(0..n - 1);
        if k >= last {
            k += 1;
        }
        let col: Vec<i64> = (0..n).map(|i| m[i][k]).collect();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    continue;
                }
                let (a, c) = (col[i], m[k][j]);
                if a * c > 0 {
                    m[i][j] += a.signum() * a.abs() * c.abs();
                }
            }
        }
        for i in 0..n {
            m[i][k] = -m[i][k];
            m[k][i] = -m[k][i];
        }
        word.push(k);
        last = k;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `b1.mutate_seq(word)` equals `b2` after relabeling.
    Yes { word: Vec<usize> },
    No,
    Unknown,
}

/// Whether `b2` lies in the mutation class of `b1` up to relabeling.
pub fn mutation_equivalent(
    b1: &ExtendedExchangeMatrix,
    b2: &ExtendedExchangeMatrix,
    opts: &ExploreOptions,
) -> Result<Equivalence> {
    if b1.n_mutable() != b2.n_mutable() || b1.n_rows() != b2.n_rows() {
        return Ok(Equivalence::No);
    }
    let opts = ExploreOptions { abort_on_2_infinite: false, ..opts.clone() };
    let class = explore_matrix_class(b1, &opts)?;
    Ok(match class.contains(b2) {
        Some(m) => Equivalence::Yes { word: m.word.clone() },
        None if class.report.status.is_closed() => Equivalence::No,
        None => Equivalence::Unknown,
    })
}

/// Witness for an embedding: `Q` is isomorphic to the full subquiver on
/// `subset` (1-based) of `R.mutate_seq(word)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub subset: Vec<usize>,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingResult {
    Embeddable(Embedding),
    NotEmbeddable,
    Unknown,
}

/// Searches the mutation class of `r` for a member with a full subquiver
/// (restriction to mutable indices) isomorphic to `q`.
pub fn is_embeddable(q: &Quiver, r: &Quiver, opts: &ExploreOptions) -> Result<EmbeddingResult> {
    let qm = q.to_matrix().top_matrix();
    let rm = r.to_matrix().top_matrix();
    let k = qm.n_mutable();
    if k > rm.n_mutable() {
        return Ok(EmbeddingResult::NotEmbeddable);
    }
    let (target, _) = canonical_matrix(&qm);
    let opts = ExploreOptions { abort_on_2_infinite: false, ..opts.clone() };
    let class = explore_matrix_class(&rm, &opts)?;
    for m in &class.members {
        for subset in subsets(rm.n_mutable(), k) {
            let sub = m.matrix.restrict(&subset)?;
            if canonical_matrix(&sub).0 == target {
                let mut labels: Vec<usize> = subset.iter().map(|&p| m.labels[p] + 1).collect();
                labels.sort_unstable();
                return Ok(EmbeddingResult::Embeddable(Embedding { subset: labels, word: m.word.clone() }));
            }
        }
    }
    Ok(if class.report.status.is_closed() { EmbeddingResult::NotEmbeddable } else { EmbeddingResult::Unknown })
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A quiver with `n_total - n_mutable` frozen vertices placed last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n_mutable: usize,
    n_total: usize,
    arrows: BTreeMap<(usize, usize), u64>,
}

impl Quiver {
    pub fn new(n_mutable: usize, n_total: usize) -> Self {
        Quiver { n_mutable, n_total, arrows: BTreeMap::new() }
    }

    /// Builds from `(from, to, multiplicity)` triples (0-based), cancelling
    /// opposite arrows pairwise.
    pub fn from_arrows(n_mutable: usize, n_total: usize, arrows: &[(usize, usize, u64)]) -> Result<Self> {
        let mut q = Quiver::new(n_mutable, n_total);
        for &(a, b, m) in arrows {
            q.add_arrows(a, b, m)?;
        }
        Ok(q)
    }

    pub fn add_arrows(&mut self, from: usize, to: usize, mult: u64) -> Result<()> {
        for v in [from, to] {
            if v >= self.n_total {
                return Err(Error::IndexOutOfRange { index: v + 1, bound: self.n_total });
            }
        }
        if from == to {
            return Err(Error::Precondition(format!("loop at vertex {}", from + 1)));
        }
        if from >= self.n_mutable && to >= self.n_mutable {
            return Err(Error::Precondition("arrow between frozen vertices".into()));
        }
        let back = self.arrows.remove(&(to, from)).unwrap_or(0);
        let fwd = self.arrows.remove(&(from, to)).unwrap_or(0) + mult;
        if fwd > back {
            self.arrows.insert((from, to), fwd - back);
        } else if back > fwd {
            self.arrows.insert((to, from), back - fwd);
        }
        Ok(())
    }

    pub fn n_mutable(&self) -> usize {
        self.n_mutable
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn arrows(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.arrows
    }

    /// Requires the top block to be skew-symmetric.
    pub fn from_matrix(b: &ExtendedExchangeMatrix) -> Result<Self> {
        if !b.is_skew_symmetric() {
            return Err(Error::Precondition("matrix is not skew-symmetric".into()));
        }
        let n = b.n_mutable();
        let mut q = Quiver::new(n, b.n_rows());
        for i in 0..b.n_rows() {
            for j in 0..n {
                let v = b.get(i, j);
                let too_large = |_| Error::Precondition("arrow multiplicity too large".into());
                if *v > Int::ZERO {
                    q.arrows.insert((i, j), u64::try_from(v).map_err(too_large)?);
                } else if *v < Int::ZERO && i >= n {
                    q.arrows.insert((j, i), u64::try_from(&-v.clone()).map_err(too_large)?);
                }
            }
        }
        Ok(q)
    }

    pub fn to_matrix(&self) -> ExtendedExchangeMatrix {
        let n = self.n_mutable;
        let mut b = IntMatrix::zeros(self.n_total, n);
        for (&(a, c), &m) in &self.arrows {
            let m = Int::from(m);
            if c < n {
                b.set(a, c, b.get(a, c) + &m);
            }
            if a < n {
                b.set(c, a, b.get(c, a) - &m);
            }
        }
        ExtendedExchangeMatrix::from_parts_unchecked(b, n)
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        Quiver::from_matrix(&self.to_matrix().mutate(k)?)
    }

    pub fn canonical(&self) -> CanonicalQuiver {
        CanonicalQuiver(canonical_matrix(&self.to_matrix()).0)
    }
}

/// Certificate of a quiver up to isomorphism fixing frozen vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalQuiver(pub ExtendedExchangeMatrix);

/// Identifier of an interned Laurent polynomial.
pub type VarId = u32;

/// A seed stored with interned cluster entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeedRecord {
    pub matrix: ExtendedExchangeMatrix,
    pub cluster: Vec<VarId>,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct SeedPattern {
    pub report: ExplorationReport,
    /// Interned polynomials; `SeedRecord::cluster` indexes into this table.
    pub table: Vec<LaurentPolynomial>,
    /// Ids of the distinct mutable cluster variables, sorted by polynomial order.
    pub mutable_variables: Vec<VarId>,
    /// Visited seeds in BFS order (only with `keep_seeds`).
    pub seeds: Vec<SeedRecord>,
}

impl SeedPattern {
    pub fn variables(&self) -> Vec<&LaurentPolynomial> {
        self.mutable_variables.iter().map(|&v| &self.table[v as usize]).collect()
    }

    pub fn seed(&self, rec: &SeedRecord) -> Seed {
        let cluster = rec.cluster.iter().map(|&v| self.table[v as usize].clone()).collect();
        Seed::new(rec.matrix.clone(), cluster).expect("recorded seeds are well formed")
    }

    /// Edges of the exchange graph on the kept seeds: two seeds are adjacent
    /// when their mutable clusters share all but one variable.
    pub fn exchange_edges(&self) -> Vec<(usize, usize)> {
        let n = self.seeds.first().map_or(0, |s| s.matrix.n_mutable());
        let mut by_facet: FxHashMap<Vec<VarId>, Vec<usize>> = FxHashMap::default();
        for (s, rec) in self.seeds.iter().enumerate() {
            let mut vars = rec.cluster[..n].to_vec();
            vars.sort_unstable();
            for skip in 0..n {
                let mut facet = vars.clone();
                facet.remove(skip);
                by_facet.entry(facet).or_default().push(s);
            }
        }
        let mut edges: Vec<(usize, usize)> = by_facet
            .into_values()
            .flat_map(|group| {
                let mut pairs = Vec::new();
                for (a, &s) in group.iter().enumerate() {
                    for &t in &group[a + 1..] {
                        pairs.push((s.min(t), s.max(t)));
                    }
                }
                pairs
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }
}

/// Exchange relation signature: the variable being replaced and the two
/// monomials as sorted `(id, exponent)` lists.
type ExchangeKey = (VarId, Vec<(VarId, u32)>, Vec<(VarId, u32)>);

type SeedKey = (Vec<VarId>, ExtendedExchangeMatrix);

struct Interner {
    table: Vec<LaurentPolynomial>,
    index: FxHashMap<LaurentPolynomial, VarId>,
    relations: FxHashMap<ExchangeKey, VarId>,
}

impl Interner {
    fn intern(&mut self, p: LaurentPolynomial) -> VarId {
        if let Some(&id) = self.index.get(&p) {
            return id;
        }
        let id = self.table.len() as VarId;
        self.index.insert(p.clone(), id);
        self.table.push(p);
        id
    }
}

enum NewVar {
    Known(VarId),
    Computed(LaurentPolynomial),
}

struct Child {
    matrix: ExtendedExchangeMatrix,
    cluster: Vec<VarId>,
    k: usize,
    relation: ExchangeKey,
    new_var: NewVar,
}

fn exchange_key(b: &ExtendedExchangeMatrix, k: usize, cluster: &[VarId]) -> Result<ExchangeKey> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, &v) in cluster.iter().enumerate() {
        let bik = b.get(i, k);
        if bik.is_zero() {
            continue;
        }
        let e = exponent_u32(bik)?;
        if *bik > Int::ZERO {
            plus.push((v, e));
        } else {
            minus.push((v, e));
        }
    }
    plus.sort_unstable();
    minus.sort_unstable();
    Ok((cluster[k], plus, minus))
}

fn monomial_of(table: &[LaurentPolynomial], factors: &[(VarId, u32)], nvars: usize) -> Result<LaurentPolynomial> {
    let mut acc = LaurentPolynomial::one(nvars);
    for &(v, e) in factors {
        acc = acc.try_mul(&table[v as usize].try_pow(e)?)?;
    }
    Ok(acc)
}

fn compute_exchange(table: &[LaurentPolynomial], key: &ExchangeKey) -> Result<LaurentPolynomial> {
    let nvars = table[key.0 as usize].nvars();
    let numerator = monomial_of(table, &key.1, nvars)?.try_add(&monomial_of(table, &key.2, nvars)?)?;
    numerator.exact_div(&table[key.0 as usize]).map_err(|e| match e {
        Error::NotDivisible => Error::Internal("Laurent phenomenon violated".into()),
        other => other,
    })
}

/// Canonical key of an interned seed: mutable entries sorted by polynomial
/// order, ties broken by the smallest permuted matrix.
fn seed_key(table: &[LaurentPolynomial], matrix: &ExtendedExchangeMatrix, cluster: &[VarId]) -> SeedKey {
    let n = matrix.n_mutable();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| table[cluster[a] as usize].cmp(&table[cluster[b] as usize]));
    let has_ties = order.windows(2).any(|w| cluster[w[0]] == cluster[w[1]]);
    let build = |perm: &[usize]| {
        let mut ids: Vec<VarId> = perm.iter().map(|&i| cluster[i]).collect();
        ids.extend_from_slice(&cluster[n..]);
        (ids, matrix.permute_mutable(perm))
    };
    if !has_ties {
        return build(&order);
    }
    // equal entries can be permuted freely; pick the smallest matrix
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if cluster[g[0]] == cluster[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut perms = vec![Vec::new()];
    for g in groups {
        let mut next = Vec::new();
        for prefix in &perms {
            for p in crate::seed::permutations(&g) {
                let mut v: Vec<usize> = prefix.clone();
                v.extend(p);
                next.push(v);
            }
        }
        perms = next;
    }
    perms.iter().map(|p| build(p)).min().expect("at least one ordering")
}

/// BFS over the seed pattern of `s0`, deduplicating unlabeled seeds.
pub fn explore_seed_pattern(s0: &Seed, opts: &ExploreOptions) -> Result<SeedPattern> {
    with_pool(opts.threads, || seed_bfs(s0, opts))?
}

fn seed_bfs(s0: &Seed, opts: &ExploreOptions) -> Result<SeedPattern> {
    let n = s0.n_mutable();
    let mut interner = Interner { table: Vec::new(), index: FxHashMap::default(), relations: FxHashMap::default() };
    let cluster0: Vec<VarId> = s0.cluster().iter().map(|p| interner.intern(p.clone())).collect();
    let key_of = |table: &[LaurentPolynomial], m: &ExtendedExchangeMatrix, c: &[VarId]| -> SeedKey {
        if opts.labeled {
            (c.to_vec(), m.clone())
        } else {
            seed_key(table, m, c)
        }
    };
    let mut seen: FxHashSet<SeedKey> = FxHashSet::default();
    seen.insert(key_of(&interner.table, s0.matrix(), &cluster0));
    let mut mutable_vars: FxHashSet<VarId> = cluster0[..n].iter().copied().collect();
    let mut kept = Vec::new();
    let root = SeedRecord { matrix: s0.matrix().clone(), cluster: cluster0, depth: 0 };
    if opts.keep_seeds {
        kept.push(root.clone());
    }
    let mut frontier = vec![root];
    let mut profile = vec![1usize];
    let mut count = 1usize;
    let mut depth = 0;
    let status = loop {
        if frontier.is_empty() {
            break ExplorationStatus::Closed;
        }
        if opts.max_depth.is_some_and(|d| depth >= d) {
            break ExplorationStatus::DepthCapped;
        }
        // expand in parallel against a read-only snapshot of the caches
        let table = &interner.table;
        let relations = &interner.relations;
        let children: Vec<Result<Vec<Child>>> = frontier
            .par_iter()
            .map(|rec| {
                (0..n)
                    .map(|k| {
                        let relation = exchange_key(&rec.matrix, k, &rec.cluster)?;
                        let new_var = match relations.get(&relation) {
                            Some(&id) => NewVar::Known(id),
                            None => NewVar::Computed(compute_exchange(table, &relation)?),
                        };
                        Ok(Child {
                            matrix: rec.matrix.mutate_unchecked(k),
                            cluster: rec.cluster.clone(),
                            k,
                            relation,
                            new_var,
                        })
                    })
                    .collect()
            })
            .collect();
        // intern new variables in frontier order
        let mut resolved: Vec<Child> = Vec::with_capacity(frontier.len() * n);
        for kids in children {
            for mut child in kids? {
                let id = match std::mem::replace(&mut child.new_var, NewVar::Known(0)) {
                    NewVar::Known(id) => id,
                    NewVar::Computed(p) => {
                        let id = interner.intern(p);
                        interner.relations.insert(child.relation.clone(), id);
                        id
                    }
                };
                child.cluster[child.k] = id;
                resolved.push(child);
            }
        }
        let table = &interner.table;
        let keys: Vec<SeedKey> = resolved.par_iter().map(|c| key_of(table, &c.matrix, &c.cluster)).collect();
        let mut next = Vec::new();
        let mut capped = false;
        for (child, key) in resolved.into_iter().zip(keys) {
            if !seen.insert(key) {
                continue;
            }
            count += 1;
            mutable_vars.insert(child.cluster[child.k]);
            let rec = SeedRecord { matrix: child.matrix, cluster: child.cluster, depth: depth + 1 };
            if opts.keep_seeds {
                kept.push(rec.clone());
            }
            next.push(rec);
            if count >= opts.max_count {
                capped = true;
                break;
            }
        }
        profile.push(count);
        if capped {
            break ExplorationStatus::CountCapped;
        }
        frontier = next;
        depth += 1;
    };
    let table = interner.table;
    let mut vars: Vec<VarId> = mutable_vars.into_iter().collect();
    vars.sort_by(|&a, &b| table[a as usize].cmp(&table[b as usize]));
    Ok(SeedPattern {
        report: ExplorationReport { status, count, variables: Some(vars.len()), depth_profile: profile },
        table,
        mutable_variables: vars,
        seeds: kept,
    })
}
