//! Canonical labeling of small edge-labeled digraphs under permutations of
//! the mutable vertices, with frozen vertices fixed pointwise.
//!
//! The certificate is the lexicographically smallest encoding over all
//! admissible orderings. Vertex invariants (iterated neighbourhood
//! signatures) restrict the orderings, vertices chosen so far split the
//! remaining cells, and interchangeable twins are tried only once.

use std::cmp::Ordering;

/// Returns `order` with `order[p]` the vertex placed at position `p`.
///
/// `key(i, j)` describes the ordered pair `(i, j)` for all vertices
/// `0..n_total`; vertices `n_mut..n_total` are frozen.
pub fn canonical_order<K, F>(n_mut: usize, n_total: usize, key: F) -> Vec<usize>
where
    K: Ord + Clone,
    F: Fn(usize, usize) -> K,
{
    if n_mut <= 1 {
        return (0..n_mut).collect();
    }
    let mut table: Vec<Vec<K>> = Vec::with_capacity(n_total);
    for i in 0..n_total {
        table.push((0..n_total).map(|j| key(i, j)).collect());
    }
    let g = Graph { n_mut, n_total, table };
    let cells = g.initial_cells();
    let twins = g.twins();
    let mut search = Search { g: &g, twins, best: None, best_order: Vec::new() };
    let mut prefix = Vec::with_capacity(n_mut);
    let mut enc = Vec::new();
    search.dfs(cells, &mut prefix, &mut enc, Ordering::Equal);
    search.best_order
}

struct Graph<K> {
    n_mut: usize,
    n_total: usize,
    table: Vec<Vec<K>>,
}

impl<K: Ord + Clone> Graph<K> {
    fn k(&self, i: usize, j: usize) -> &K {
        &self.table[i][j]
    }

    /// Ordered partition of the mutable vertices by refined invariants.
    fn initial_cells(&self) -> Vec<Vec<usize>> {
        let n = self.n_mut;
        // base signature: loop entry and frozen neighbourhood, then the
        // multiset of labels towards mutable vertices
        let mut color: Vec<usize> = {
            let sigs: Vec<(Vec<K>, Vec<(K, K)>)> = (0..n)
                .map(|v| {
                    let mut fixed = vec![self.k(v, v).clone()];
                    for f in n..self.n_total {
                        fixed.push(self.k(f, v).clone());
                        fixed.push(self.k(v, f).clone());
                    }
                    let mut multi: Vec<(K, K)> = (0..n)
                        .filter(|&w| w != v)
                        .map(|w| (self.k(v, w).clone(), self.k(w, v).clone()))
                        .collect();
                    multi.sort();
                    (fixed, multi)
                })
                .collect();
            ranks(&sigs)
        };
        let mut classes = count_distinct(&color);
        loop {
            let sigs: Vec<(usize, Vec<(usize, K, K)>)> = (0..n)
                .map(|v| {
                    let mut multi: Vec<(usize, K, K)> = (0..n)
                        .filter(|&w| w != v)
                        .map(|w| (color[w], self.k(v, w).clone(), self.k(w, v).clone()))
                        .collect();
                    multi.sort();
                    (color[v], multi)
                })
                .collect();
            let next = ranks(&sigs);
            let c = count_distinct(&next);
            color = next;
            if c == classes {
                break;
            }
            classes = c;
        }
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); classes];
        for v in 0..n {
            cells[color[v]].push(v);
        }
        cells
    }

    /// `twins[u][w]`: swapping `u` and `w` is an automorphism.
    fn twins(&self) -> Vec<Vec<bool>> {
        let n = self.n_mut;
        let mut t = vec![vec![false; n]; n];
        for u in 0..n {
            for w in u + 1..n {
                let ok = self.k(u, u) == self.k(w, w)
                    && self.k(u, w) == self.k(w, u)
                    && (0..self.n_total)
                        .filter(|&x| x != u && x != w)
                        .all(|x| self.k(u, x) == self.k(w, x) && self.k(x, u) == self.k(x, w));
                t[u][w] = ok;
                t[w][u] = ok;
            }
        }
        t
    }

    /// Encoding block contributed by `v` placed after `prefix`.
    fn block(&self, v: usize, prefix: &[usize]) -> Vec<K> {
        let mut b = Vec::with_capacity(2 * prefix.len() + 1 + 2 * (self.n_total - self.n_mut));
        b.push(self.k(v, v).clone());
        for &u in prefix {
            b.push(self.k(v, u).clone());
            b.push(self.k(u, v).clone());
        }
        for f in self.n_mut..self.n_total {
            b.push(self.k(f, v).clone());
            b.push(self.k(v, f).clone());
        }
        b
    }
}

struct Search<'a, K> {
    g: &'a Graph<K>,
    twins: Vec<Vec<bool>>,
    best: Option<Vec<K>>,
    best_order: Vec<usize>,
}

impl<K: Ord + Clone> Search<'_, K> {
    fn dfs(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>, enc: &mut Vec<K>, state: Ordering) {
        let Some(first) = cells.iter().position(|c| !c.is_empty()) else {
            if state == Ordering::Less || self.best.is_none() {
                self.best = Some(enc.clone());
                self.best_order = prefix.clone();
            }
            return;
        };
        let candidates = cells[first].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if tried.iter().any(|&u| self.twins[u][v]) {
                continue;
            }
            tried.push(v);
            let block = self.g.block(v, prefix);
            let start = enc.len();
            let mut st = state;
            if st == Ordering::Equal {
                if let Some(best) = &self.best {
                    st = block.as_slice().cmp(&best[start..start + block.len()]);
                    if st == Ordering::Greater {
                        continue;
                    }
                }
            }
            enc.extend(block);
            prefix.push(v);
            let next = self.split(&cells, v);
            self.dfs(next, prefix, enc, st);
            prefix.pop();
            enc.truncate(start);
        }
    }

    /// Removes `v` and splits every cell by the labels of pairs with `v`.
    fn split(&self, cells: &[Vec<usize>], v: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(cells.len() + 1);
        for cell in cells {
            let mut members: Vec<(K, K, usize)> = cell
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| (self.g.k(u, v).clone(), self.g.k(v, u).clone(), u))
                .collect();
            if members.is_empty() {
                continue;
            }
            members.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
            let mut cur: Vec<usize> = Vec::new();
            for idx in 0..members.len() {
                if idx > 0 && (&members[idx].0, &members[idx].1) != (&members[idx - 1].0, &members[idx - 1].1) {
                    out.push(std::mem::take(&mut cur));
                }
                cur.push(members[idx].2);
            }
            out.push(cur);
        }
        out
    }
}

fn ranks<T: Ord>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<&T> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(&s).expect("present")).collect()
}

fn count_distinct(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn encode(b: &[Vec<i64>], order: &[usize]) -> Vec<i64> {
        order.iter().flat_map(|&i| order.iter().map(move |&j| b[i][j])).collect()
    }

    #[test]
    fn relabeled_cycles_share_a_certificate() {
        let cyc = vec![vec![0, 1, 0, -1], vec![-1, 0, 1, 0], vec![0, -1, 0, 1], vec![1, 0, -1, 0]];
        let perm = [2, 0, 3, 1];
        let relabeled: Vec<Vec<i64>> =
            (0..4).map(|i| (0..4).map(|j| cyc[perm[i]][perm[j]]).collect()).collect();
        let o1 = canonical_order(4, 4, |i, j| cyc[i][j]);
        let o2 = canonical_order(4, 4, |i, j| relabeled[i][j]);
        assert_eq!(encode(&cyc, &o1), encode(&relabeled, &o2));
    }

    #[test]
    fn zero_matrix_is_cheap() {
        let z = vec![vec![0i64; 12]; 12];
        let o = canonical_order(12, 12, |i, j| z[i][j]);
        assert_eq!(o.len(), 12);
    }
}
