//! Folding exchange matrices and seeds by a group acting on the vertices.
//!
//! The group is given by generating permutations of `0..m`. Orbits are
//! ordered mutable first, each block by smallest element; this is the row
//! order of folded matrices and the variable order of folded seeds.

use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::canon::canonical_order;
use crate::error::{Error, Result};
use crate::exchange::ExtendedExchangeMatrix;
use crate::explore::{explore_seed_pattern, ExploreOptions, SeedPattern};
use crate::matrix::{Int, IntMatrix};
use crate::seed::Seed;

/// A permutation group on `0..m`, by generators, with its orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexGroupAction {
    m: usize,
    generators: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl VertexGroupAction {
    /// Validates that every generator is a permutation of `0..m`.
    pub fn new(m: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for (t, g) in generators.iter().enumerate() {
            let mut hit = vec![false; m];
            if g.len() != m {
                return Err(Error::Shape(format!("generator {} has {} entries, expected {m}", t + 1, g.len())));
            }
            for &x in g {
                if x >= m || hit[x] {
                    return Err(Error::Precondition(format!("generator {} is not a permutation", t + 1)));
                }
                hit[x] = true;
            }
        }
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for g in &generators {
            for (i, &gi) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, gi));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); m];
        for i in 0..m {
            let r = find(&mut parent, i);
            by_root[r].push(i);
        }
        let orbits: Vec<Vec<usize>> = by_root.into_iter().filter(|o| !o.is_empty()).collect();
        let mut orbit_of = vec![0; m];
        for (k, o) in orbits.iter().enumerate() {
            for &i in o {
                orbit_of[i] = k;
            }
        }
        Ok(VertexGroupAction { m, generators, orbit_of, orbits })
    }

    /// Builds from 1-based generator images, as in `"2 1 3"`.
    pub fn from_one_based(m: usize, generators: &[Vec<usize>]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&x| x.checked_sub(1).ok_or_else(|| Error::Parse("vertex labels start at 1".into())))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, gens)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Orbits sorted by smallest element.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn same_orbit(&self, i: usize, j: usize) -> bool {
        self.orbit_of[i] == self.orbit_of[j]
    }

    /// Orbits in folded order for `n` mutable indices: orbits meeting
    /// `0..n` first.
    pub fn folded_orbits(&self, n: usize) -> Vec<Vec<usize>> {
        let (mut mutable, frozen): (Vec<_>, Vec<_>) = self.orbits.iter().cloned().partition(|o| o[0] < n);
        mutable.extend(frozen);
        mutable
    }
}

/// First failed condition of admissibility (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// (1) `i ~ i2` with exactly one of them mutable.
    MixedOrbit { i: usize, i2: usize },
    /// (2) `b_ij != b_{g(i), g(j)}` for generator `g`.
    NotInvariant { i: usize, j: usize, generator: usize },
    /// (3) mutable `i ~ i2` with `b_{i,i2} != 0`.
    ConnectedOrbit { i: usize, i2: usize },
    /// (4) `i ~ i2`, `j` mutable, `b_ij b_{i2,j} < 0`.
    OppositeSigns { i: usize, i2: usize, j: usize },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::MixedOrbit { .. } => 1,
            Violation::NotInvariant { .. } => 2,
            Violation::ConnectedOrbit { .. } => 3,
            Violation::OppositeSigns { .. } => 4,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MixedOrbit { i, i2 } => {
                write!(f, "condition 1: {i} and {i2} share an orbit but only one is mutable")
            }
            Violation::NotInvariant { i, j, generator } => {
                write!(f, "condition 2: entry ({i},{j}) is not invariant under generator {generator}")
            }
            Violation::ConnectedOrbit { i, i2 } => {
                write!(f, "condition 3: {i} and {i2} share an orbit and are joined")
            }
            Violation::OppositeSigns { i, i2, j } => {
                write!(f, "condition 4: {i} and {i2} share an orbit and b_{i}{j}, b_{i2}{j} have opposite signs")
            }
        }
    }
}

fn check_size(b: &ExtendedExchangeMatrix, g: &VertexGroupAction) -> Result<()> {
    if g.m != b.n_rows() {
        return Err(Error::Shape(format!("group acts on {} vertices, matrix has {} rows", g.m, b.n_rows())));
    }
    Ok(())
}

/// Checks the four admissibility conditions. A connected orbit (3) is
/// reported before a failure of invariance (2), which it usually implies.
pub fn check_admissible(b: &ExtendedExchangeMatrix, g: &VertexGroupAction) -> Result<std::result::Result<(), Violation>> {
    check_size(b, g)?;
    Ok(first_violation(b, g).map_or(Ok(()), Err))
}

pub fn is_admissible(b: &ExtendedExchangeMatrix, g: &VertexGroupAction) -> Result<bool> {
    Ok(check_admissible(b, g)?.is_ok())
}

fn first_violation(b: &ExtendedExchangeMatrix, g: &VertexGroupAction) -> Option<Violation> {
    let n = b.n_mutable();
    let m = b.n_rows();
    for o in &g.orbits {
        let mutable = o[0] < n;
        if let Some(&other) = o.iter().find(|&&i| (i < n) != mutable) {
            return Some(Violation::MixedOrbit { i: o[0] + 1, i2: other + 1 });
        }
    }
    for o in g.orbits.iter().filter(|o| o[0] < n) {
        for &i in o {
            for &i2 in o {
                if i < i2 && !b.get(i, i2).is_zero() {
                    return Some(Violation::ConnectedOrbit { i: i + 1, i2: i2 + 1 });
                }
            }
        }
    }
    for (t, gen) in g.generators.iter().enumerate() {
        for i in 0..m {
            for j in 0..n {
                if b.get(i, j) != b.get(gen[i], gen[j]) {
                    return Some(Violation::NotInvariant { i: i + 1, j: j + 1, generator: t + 1 });
                }
            }
        }
    }
    for o in &g.orbits {
        for &i in o {
            for &i2 in o {
                if i >= i2 {
                    continue;
                }
                for j in 0..n {
                    if (b.get(i, j) * b.get(i2, j)) < Int::ZERO {
                        return Some(Violation::OppositeSigns { i: i + 1, i2: i2 + 1, j: j + 1 });
                    }
                }
            }
        }
    }
    None
}

/// A folded matrix with the orbit labeling its rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedMatrix {
    pub matrix: ExtendedExchangeMatrix,
    pub orbits: Vec<Vec<usize>>,
}

/// `b^G_IJ = sum_{i in I} b_ij` for any `j` in `J`.
pub fn fold_matrix(b: &ExtendedExchangeMatrix, g: &VertexGroupAction) -> Result<FoldedMatrix> {
    if let Err(v) = check_admissible(b, g)? {
        return Err(Error::NotAdmissible(v));
    }
    let orbits = g.folded_orbits(b.n_mutable());
    let n_mut = orbits.iter().filter(|o| o[0] < b.n_mutable()).count();
    let mut out = IntMatrix::zeros(orbits.len(), n_mut);
    for (r, big_i) in orbits.iter().enumerate() {
        for (c, big_j) in orbits[..n_mut].iter().enumerate() {
            let j = big_j[0];
            let s = big_i.iter().fold(Int::ZERO, |acc, &i| acc + b.get(i, j));
            out.set(r, c, s);
        }
    }
    let matrix = ExtendedExchangeMatrix::new(out, n_mut)
        .map_err(|e| Error::Internal(format!("folded matrix is not skew-symmetrizable: {e}")))?;
    Ok(FoldedMatrix { matrix, orbits })
}

/// Result of a composite orbit mutation, with the admissibility of the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMutation {
    pub matrix: ExtendedExchangeMatrix,
    pub admissible: std::result::Result<(), Violation>,
}

/// `mu_K`: mutation at every vertex of the mutable orbit with folded index `k`.
pub fn orbit_mutate(b: &ExtendedExchangeMatrix, g: &VertexGroupAction, k: usize) -> Result<OrbitMutation> {
    check_size(b, g)?;
    let orbits = g.folded_orbits(b.n_mutable());
    let orbit = orbits.get(k).ok_or(Error::IndexOutOfRange { index: k + 1, bound: orbits.len() })?;
    if orbit[0] >= b.n_mutable() {
        return Err(Error::Precondition(format!("orbit {} is frozen", k + 1)));
    }
    if orbit.iter().any(|&i| i >= b.n_mutable()) {
        return Err(Error::NotAdmissible(Violation::MixedOrbit { i: orbit[0] + 1, i2: orbit[orbit.len() - 1] + 1 }));
    }
    for &i in orbit {
        for &j in orbit {
            if i < j && !b.get(i, j).is_zero() {
                return Err(Error::NotAdmissible(Violation::ConnectedOrbit { i: i + 1, i2: j + 1 }));
            }
        }
    }
    let mut out = b.clone();
    for &i in orbit {
        out = out.mutate_unchecked(i);
    }
    let admissible = first_violation(&out, g).map_or(Ok(()), Err);
    Ok(OrbitMutation { matrix: out, admissible })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Foldability {
    /// Every quiver reached by orbit mutations is admissible; `count` of them
    /// up to equivariant isomorphism.
    Foldable { count: usize },
    /// The orbit word (folded 0-based indices) reaching an inadmissible quiver.
    Counterexample { word: Vec<usize>, violation: Violation },
    Unknown,
}

type Certificate = (ExtendedExchangeMatrix, Vec<Vec<usize>>);

/// Canonical form up to relabelings of mutable vertices that commute with
/// the generators.
fn equivariant_certificate(b: &ExtendedExchangeMatrix, g: &VertexGroupAction) -> Certificate {
    let n = b.n_mutable();
    let gens = &g.generators;
    let order = canonical_order(n, b.n_rows(), |i, j| {
        let entry = if j < n { b.get(i, j).clone() } else { Int::ZERO };
        let mask: u64 = gens.iter().enumerate().filter(|(_, p)| p[i] == j).fold(0, |acc, (t, _)| acc | 1 << (t % 64));
        (entry, mask)
    });
    let mut pos: Vec<usize> = (0..b.n_rows()).collect();
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut full = order.clone();
    full.extend(n..b.n_rows());
    let conj = gens.iter().map(|p| full.iter().map(|&v| pos[p[v]]).collect()).collect();
    (b.permute_mutable(&order), conj)
}

/// BFS over orbit-mutation words, deduplicated up to equivariant isomorphism.
pub fn global_foldability(
    b: &ExtendedExchangeMatrix,
    g: &VertexGroupAction,
    opts: &ExploreOptions,
) -> Result<Foldability> {
    if let Err(v) = check_admissible(b, g)? {
        return Err(Error::NotAdmissible(v));
    }
    let n_orbits = g.folded_orbits(b.n_mutable()).iter().filter(|o| o[0] < b.n_mutable()).count();
    let mut seen: FxHashSet<Certificate> = FxHashSet::default();
    seen.insert(equivariant_certificate(b, g));
    let mut frontier: Vec<(ExtendedExchangeMatrix, Vec<usize>)> = vec![(b.clone(), Vec::new())];
    let mut depth = 0;
    while !frontier.is_empty() {
        if opts.max_depth.is_some_and(|d| depth >= d) {
            return Ok(Foldability::Unknown);
        }
        let children: Vec<Vec<(OrbitMutation, Certificate)>> = frontier
            .par_iter()
            .map(|(m, _)| {
                (0..n_orbits)
                    .map(|k| {
                        let r = orbit_mutate(m, g, k).expect("admissible quivers have disconnected orbits");
                        let cert = equivariant_certificate(&r.matrix, g);
                        (r, cert)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for ((_, word), kids) in frontier.iter().zip(children) {
            for (k, (r, cert)) in kids.into_iter().enumerate() {
                let mut w = word.clone();
                w.push(k);
                if let Err(violation) = r.admissible {
                    return Ok(Foldability::Counterexample { word: w, violation });
                }
                if seen.insert(cert) {
                    if seen.len() >= opts.max_count {
                        return Ok(Foldability::Unknown);
                    }
                    next.push((r.matrix, w));
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(Foldability::Foldable { count: seen.len() })
}

/// Folds a seed: substitutes `x_i -> x_[i]` (one variable per orbit, in
/// folded order) and checks that every orbit carries one common entry.
pub fn fold_seed(seed: &Seed, g: &VertexGroupAction) -> Result<Seed> {
    let folded = fold_matrix(seed.matrix(), g)?;
    let orbit_index = {
        let mut idx = vec![0; g.m];
        for (k, o) in folded.orbits.iter().enumerate() {
            for &i in o {
                idx[i] = k;
            }
        }
        idx
    };
    let nv = folded.orbits.len();
    let mut cluster = Vec::with_capacity(nv);
    for o in &folded.orbits {
        let image = |i: usize| seed.cluster()[i].map_variables(nv, |v| Some(orbit_index[v]));
        let first = image(o[0])?;
        for &i in &o[1..] {
            if image(i)? != first {
                return Err(Error::Precondition(format!(
                    "entries {} and {} of one orbit differ after identification",
                    o[0] + 1,
                    i + 1
                )));
            }
        }
        cluster.push(first);
    }
    Seed::new(folded.matrix, cluster)
}

/// Applies an orbit word to the initial unfolded seed and folds the result.
pub fn fold_after_orbit_mutations(b: &ExtendedExchangeMatrix, g: &VertexGroupAction, word: &[usize]) -> Result<Seed> {
    let orbits = g.folded_orbits(b.n_mutable());
    let mut s = Seed::initial(b.clone());
    for &k in word {
        let orbit = orbits.get(k).ok_or(Error::IndexOutOfRange { index: k + 1, bound: orbits.len() })?;
        for &i in orbit {
            s = s.mutate(i)?;
        }
    }
    fold_seed(&s, g)
}

/// The seed pattern of the folded initial seed; requires global foldability.
pub fn fold_seed_pattern(b: &ExtendedExchangeMatrix, g: &VertexGroupAction, opts: &ExploreOptions) -> Result<SeedPattern> {
    match global_foldability(b, g, opts)? {
        Foldability::Foldable { .. } => {}
        Foldability::Counterexample { word, violation } => {
            let w: Vec<String> = word.iter().map(|k| (k + 1).to_string()).collect();
            return Err(Error::Precondition(format!(
                "not globally foldable: orbit word {} gives {violation}",
                w.join(" ")
            )));
        }
        Foldability::Unknown => return Err(Error::Precondition("global foldability undecided within the cap".into())),
    }
    let initial = fold_seed(&Seed::initial(b.clone()), g)?;
    explore_seed_pattern(&initial, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbits_are_sorted() {
        let g = VertexGroupAction::new(4, vec![vec![2, 1, 0, 3]]).unwrap();
        assert_eq!(g.orbits(), &[vec![0, 2], vec![1], vec![3]]);
        assert!(VertexGroupAction::new(3, vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn joined_swap_fails_condition_three() {
        let b = ExtendedExchangeMatrix::square(&[[0, 1], [-1, 0]]).unwrap();
        let g = VertexGroupAction::new(2, vec![vec![1, 0]]).unwrap();
        let v = check_admissible(&b, &g).unwrap().unwrap_err();
        assert_eq!(v, Violation::ConnectedOrbit { i: 1, i2: 2 });
    }
}
