//! Seeds: an extended cluster of Laurent polynomials together with an
//! extended exchange matrix, and the transformations acting on them.
//!
//! Cluster entries are Laurent polynomials in a fixed ambient ring, normally
//! the ring of the initial extended cluster.

use std::fmt;

use crate::error::{Error, Result};
use crate::exchange::ExtendedExchangeMatrix;
use crate::laurent::LaurentPolynomial;
use crate::matrix::Int;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    matrix: ExtendedExchangeMatrix,
    cluster: Vec<LaurentPolynomial>,
}

impl Seed {
    /// The initial seed: `cluster[i] = x_{i+1}` in `m` variables.
    pub fn initial(matrix: ExtendedExchangeMatrix) -> Self {
        let m = matrix.n_rows();
        let cluster = (0..m).map(|i| LaurentPolynomial::var(m, i)).collect();
        Seed { matrix, cluster }
    }

    pub fn new(matrix: ExtendedExchangeMatrix, cluster: Vec<LaurentPolynomial>) -> Result<Self> {
        if cluster.len() != matrix.n_rows() {
            return Err(Error::Shape(format!(
                "{} cluster entries for {} rows",
                cluster.len(),
                matrix.n_rows()
            )));
        }
        if let Some(first) = cluster.first() {
            if cluster.iter().any(|p| p.nvars() != first.nvars()) {
                return Err(Error::Shape("cluster entries live in different rings".into()));
            }
        }
        Ok(Seed { matrix, cluster })
    }

    pub fn matrix(&self) -> &ExtendedExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPolynomial] {
        &self.cluster
    }

    pub fn n_mutable(&self) -> usize {
        self.matrix.n_mutable()
    }

    /// Seed mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let matrix = self.matrix.mutate(k)?;
        let (plus, minus) = exchange_monomials(&self.matrix, k, &self.cluster)?;
        let numerator = plus.try_add(&minus)?;
        let new = numerator.exact_div(&self.cluster[k]).map_err(|e| match e {
            Error::NotDivisible => Error::Internal(format!(
                "Laurent phenomenon violated while mutating at {}",
                k + 1
            )),
            other => other,
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Seed { matrix, cluster })
    }

    pub fn mutate_seq(&self, ks: &[usize]) -> Result<Self> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Freezes the mutable indices in `f` (see [`ExtendedExchangeMatrix::freeze`]
    /// for the resulting order of rows).
    pub fn freeze(&self, f: &[usize]) -> Result<Self> {
        let matrix = self.matrix.freeze(f)?;
        let n = self.n_mutable();
        let mut newly: Vec<usize> = f.to_vec();
        newly.sort_unstable();
        newly.dedup();
        let mut order: Vec<usize> = (0..n).filter(|k| !f.contains(k)).collect();
        order.extend(n..self.matrix.n_rows());
        order.extend(newly);
        let cluster = order.iter().map(|&i| self.cluster[i].clone()).collect();
        Ok(Seed { matrix, cluster })
    }

    /// Restricted seed on the index set `idx`.
    ///
    /// Requires `b_ik = 0` whenever `i` is outside `idx` and `k` is a mutable
    /// index inside it.
    pub fn restrict(&self, idx: &[usize]) -> Result<Self> {
        let mut rows: Vec<usize> = idx.to_vec();
        rows.sort_unstable();
        rows.dedup();
        let m = self.matrix.n_rows();
        if let Some(&bad) = rows.iter().find(|&&i| i >= m) {
            return Err(Error::IndexOutOfRange { index: bad + 1, bound: m });
        }
        for &k in rows.iter().filter(|&&k| k < self.n_mutable()) {
            for i in (0..m).filter(|i| !rows.contains(i)) {
                if !self.matrix.get(i, k).is_zero() {
                    return Err(Error::RestrictionViolation { i: i + 1, k: k + 1 });
                }
            }
        }
        let matrix = self.matrix.restrict(&rows)?;
        let cluster = rows.iter().map(|&i| self.cluster[i].clone()).collect();
        Ok(Seed { matrix, cluster })
    }

    /// Removes the frozen indices in `f` and sets their variables to 1.
    ///
    /// Each frozen entry in `f` must be a single ambient variable.
    pub fn trivialize(&self, f: &[usize]) -> Result<Self> {
        let n = self.n_mutable();
        let m = self.matrix.n_rows();
        let mut dropped_vars = Vec::new();
        for &i in f {
            if i < n || i >= m {
                return Err(Error::Precondition(format!("{} is not a frozen index", i + 1)));
            }
            dropped_vars.push(ambient_variable(&self.cluster[i]).ok_or_else(|| {
                Error::Precondition(format!("frozen entry {} is not a variable", i + 1))
            })?);
        }
        let matrix = self.matrix.drop_frozen(f)?;
        let nvars = self.cluster[0].nvars();
        let mut cluster = Vec::with_capacity(matrix.n_rows());
        for (i, p) in self.cluster.iter().enumerate() {
            if f.contains(&i) {
                continue;
            }
            cluster.push(p.map_variables(nvars, |v| (!dropped_vars.contains(&v)).then_some(v))?);
        }
        Ok(Seed { matrix, cluster })
    }

    /// Canonical representative of the unlabeled seed.
    pub fn canonicalize(&self) -> CanonicalSeed {
        let n = self.n_mutable();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.cluster[a].cmp(&self.cluster[b]));
        let mut best: Option<Seed> = None;
        for perm in tie_permutations(&order, |a, b| self.cluster[a] == self.cluster[b]) {
            let cand = self.relabel(&perm);
            if best.as_ref().is_none_or(|b| cand.matrix < b.matrix) {
                best = Some(cand);
            }
        }
        CanonicalSeed(best.unwrap_or_else(|| self.clone()))
    }

    /// Relabels mutable indices: new index `p` takes old index `perm[p]`.
    pub fn relabel(&self, perm: &[usize]) -> Seed {
        let n = self.n_mutable();
        let matrix = self.matrix.permute_mutable(perm);
        let mut cluster: Vec<LaurentPolynomial> = perm.iter().map(|&i| self.cluster[i].clone()).collect();
        cluster.extend(self.cluster[n..].iter().cloned());
        Seed { matrix, cluster }
    }

    /// Matrix block in format v1 followed by one polynomial per line.
    pub fn to_text(&self) -> String {
        let mut s = self.matrix.to_v1();
        for p in &self.cluster {
            s.push_str(&p.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A seed in canonical form: two seeds related by a permutation of mutable
/// indices have equal canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalSeed(pub Seed);

impl CanonicalSeed {
    pub fn seed(&self) -> &Seed {
        &self.0
    }
}

/// The two exchange monomials `prod_{b_ik > 0} x_i^{b_ik}` and
/// `prod_{b_ik < 0} x_i^{-b_ik}` over the full extended cluster.
pub fn exchange_monomials(
    b: &ExtendedExchangeMatrix,
    k: usize,
    cluster: &[LaurentPolynomial],
) -> Result<(LaurentPolynomial, LaurentPolynomial)> {
    let nvars = cluster[0].nvars();
    let mut plus = LaurentPolynomial::one(nvars);
    let mut minus = LaurentPolynomial::one(nvars);
    for (i, x) in cluster.iter().enumerate() {
        let bik = b.get(i, k);
        if bik.is_zero() {
            continue;
        }
        let e = exponent_u32(bik)?;
        let factor = x.try_pow(e)?;
        if *bik > Int::ZERO {
            plus = plus.try_mul(&factor)?;
        } else {
            minus = minus.try_mul(&factor)?;
        }
    }
    Ok((plus, minus))
}

pub(crate) fn exponent_u32(x: &Int) -> Result<u32> {
    let a = if *x < Int::ZERO { -x.clone() } else { x.clone() };
    u32::try_from(&a).map_err(|_| Error::Precondition(format!("exponent {x} too large")))
}

fn ambient_variable(p: &LaurentPolynomial) -> Option<usize> {
    if !p.is_monomial() {
        return None;
    }
    let (m, c) = &p.terms()[0];
    if !c.is_one() {
        return None;
    }
    let nz: Vec<usize> = m.exps().iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i).collect();
    (nz.len() == 1 && m.exps()[nz[0]] == 1).then(|| nz[0])
}

/// All orderings obtained from `sorted` by permuting within maximal runs of
/// equal elements.
fn tie_permutations(sorted: &[usize], eq: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in sorted {
        match groups.last_mut() {
            Some(g) if eq(g[0], i) => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut out = vec![Vec::new()];
    for g in groups {
        let perms = permutations(&g);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for p in &perms {
                let mut v = prefix.clone();
                v.extend_from_slice(p);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_exchange() {
        let s = Seed::initial(ExtendedExchangeMatrix::square(&[[0]]).unwrap());
        let t = s.mutate(0).unwrap();
        assert_eq!(t.cluster()[0].to_string(), "2*x1^-1");
    }

    #[test]
    fn a2_is_five_periodic() {
        let s = Seed::initial(ExtendedExchangeMatrix::square(&[[0, 1], [-1, 0]]).unwrap());
        let t = s.mutate_seq(&[0, 1, 0, 1, 0]).unwrap();
        assert_eq!(t.canonicalize(), s.canonicalize());
    }

    #[test]
    fn restriction_names_the_offending_entry() {
        let s = Seed::initial(ExtendedExchangeMatrix::square(&[[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap());
        assert_eq!(s.restrict(&[0, 1]), Err(Error::RestrictionViolation { i: 3, k: 2 }));
    }
}
