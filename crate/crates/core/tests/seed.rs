mod common;

use cluster_core::exchange::rows_in_z_span;
use cluster_core::explore::{explore_seed_pattern, ExploreOptions};
use cluster_core::{Error, ExtendedExchangeMatrix, LaurentPolynomial, Seed};
use dashu_ratio::RBig;
use proptest::prelude::*;

fn sq<R: AsRef<[i64]>>(rows: &[R]) -> ExtendedExchangeMatrix {
    ExtendedExchangeMatrix::square(rows).unwrap()
}

fn ext<R: AsRef<[i64]>>(rows: &[R]) -> ExtendedExchangeMatrix {
    ExtendedExchangeMatrix::extended(rows).unwrap()
}

fn lp(s: &str, n: usize) -> LaurentPolynomial {
    LaurentPolynomial::parse(s, n).unwrap()
}

fn eval(p: &LaurentPolynomial, pt: &[RBig]) -> RBig {
    let mut total = RBig::ZERO;
    for (m, c) in p.terms() {
        let mut v = RBig::from(c.clone());
        for (x, &e) in pt.iter().zip(m.exps()) {
            v *= x.pow(e as isize);
        }
        total += v;
    }
    total
}

/// Frozen rows paired with their cluster entries, as a sorted list.
fn frozen_part(s: &Seed) -> Vec<(Vec<i64>, String)> {
    let rows = s.matrix().matrix().to_i64_rows().unwrap();
    let mut out: Vec<_> = (s.n_mutable()..rows.len()).map(|i| (rows[i].clone(), s.cluster()[i].to_string())).collect();
    out.sort();
    out
}

/// Every word over `0..n` of length at most `len`.
fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for k in 0..n {
                if w.last() != Some(&k) {
                    let mut v: Vec<usize> = w.clone();
                    v.push(k);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn rank_one_exchange() {
    let s = Seed::initial(sq(&[[0]]));
    assert_eq!(s.mutate(0).unwrap().cluster()[0], lp("2*x1^-1", 1));
    assert_eq!(s.mutate(1), Err(Error::IndexOutOfRange { index: 2, bound: 1 }));
}

#[test]
fn a2_variables_are_five_periodic() {
    let want = [
        lp("x1", 2),
        lp("x2", 2),
        lp("x1^-1*x2 + x1^-1", 2),
        lp("x1^-1*x2^-1 + x2^-1 + x1^-1", 2),
        lp("x1*x2^-1 + x2^-1", 2),
    ];
    // Oracle: x_{t-1} x_{t+1} = x_t + 1 at a rational point.
    let pt = [RBig::from_parts(3.into(), 7u8.into()), RBig::from_parts((-5).into(), 2u8.into())];
    let mut numeric = vec![pt[0].clone(), pt[1].clone()];
    for t in 1..12 {
        let next = (&numeric[t] + RBig::ONE) / &numeric[t - 1];
        numeric.push(next);
    }
    let mut s = Seed::initial(sq(&[[0, 1], [-1, 0]]));
    let mut seen = vec![s.cluster()[0].clone(), s.cluster()[1].clone()];
    for t in 0..10 {
        s = s.mutate(t % 2).unwrap();
        seen.push(s.cluster()[t % 2].clone());
    }
    for (t, p) in seen.iter().enumerate() {
        assert_eq!(p, &want[t % 5], "x_{}", t + 1);
        assert_eq!(eval(p, &pt), numeric[t], "x_{}", t + 1);
    }
}

#[test]
fn rank_two_relations_with_a_double_arrow() {
    let s = Seed::initial(sq(&[[0, 1], [-2, 0]]));
    let x1 = &s.cluster()[0];
    let x2 = &s.cluster()[1];
    let m1 = s.mutate(0).unwrap();
    assert_eq!(x1 * &m1.cluster()[0], lp("x2^2 + 1", 2));
    let m2 = s.mutate(1).unwrap();
    assert_eq!(x2 * &m2.cluster()[1], lp("x1 + 1", 2));
}

#[test]
fn frozen_entries_never_change() {
    let s = Seed::initial(ext(&[[0, 1], [-1, 0], [1, -1], [0, 2]]));
    let t = s.mutate_seq(&[0, 1, 0, 1, 1, 0]).unwrap();
    assert_eq!(t.cluster()[2..], s.cluster()[2..]);
}

#[test]
fn freezing_examples() {
    let s = Seed::initial(sq(&[[0, 1, 0], [-1, 0, 1], [0, -1, 0]]));
    let all = s.freeze(&[0, 1, 2]).unwrap();
    assert_eq!(all.n_mutable(), 0);
    assert!(all.mutate(0).is_err());
    assert_eq!(s.freeze(&[0]).unwrap().freeze(&[0]).unwrap(), s.freeze(&[0, 1]).unwrap());
    // Freezing in the other order only permutes the coefficient rows.
    let other = s.freeze(&[1]).unwrap().freeze(&[0]).unwrap();
    assert_eq!(frozen_part(&other), frozen_part(&s.freeze(&[0, 1]).unwrap()));
    let both = s.freeze(&[0, 2]).unwrap();
    assert_eq!(both.cluster(), [lp("x2", 3), lp("x1", 3), lp("x3", 3)]);
    assert_eq!(*both.matrix(), ext(&[[0], [1], [-1]]));
}

#[test]
fn restriction_examples() {
    let s = Seed::initial(ext(&[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0], [2, -1, 0, 0]]));
    assert_eq!(s.restrict(&[0, 1, 2, 3, 4]).unwrap(), s);
    let part = s.restrict(&[0, 1, 4]).unwrap();
    assert_eq!(*part.matrix(), ext(&[[0, 1], [-1, 0], [2, -1]]));
    assert_eq!(part.cluster(), [lp("x1", 5), lp("x2", 5), lp("x5", 5)]);
    let path = Seed::initial(sq(&[[0, 1, 0], [-1, 0, 1], [0, -1, 0]]));
    assert_eq!(path.restrict(&[0, 1]), Err(Error::RestrictionViolation { i: 3, k: 2 }));
}

#[test]
fn trivialization_examples() {
    let s = Seed::initial(ext(&[[0, 1], [-1, 0], [1, 0], [0, 0]]));
    assert_eq!(s.trivialize(&[]).unwrap(), s);
    let t = s.trivialize(&[3]).unwrap();
    assert_eq!(*t.matrix(), ext(&[[0, 1], [-1, 0], [1, 0]]));
    assert_eq!(t.mutate(0).unwrap().cluster()[0], s.mutate(0).unwrap().cluster()[0]);
    let u = s.trivialize(&[2]).unwrap();
    assert_eq!(u.mutate(0).unwrap().cluster()[0], lp("x1^-1*x2 + x1^-1", 4));
    assert!(matches!(s.trivialize(&[0]), Err(Error::Precondition(_))));
}

#[test]
fn canonical_form_examples() {
    let s = Seed::initial(ext(&[[0, 1, -1], [-1, 0, 2], [1, -2, 0], [1, 0, 1]]));
    let t = s.mutate_seq(&[2, 0]).unwrap();
    assert_eq!(t.relabel(&[1, 0, 2]).canonicalize(), t.canonicalize());
    let a2 = Seed::initial(sq(&[[0, 1], [-1, 0]]));
    let back = a2.mutate_seq(&[0, 1, 0, 1, 0]).unwrap();
    assert_ne!(back, a2);
    assert_eq!(back.relabel(&[1, 0]), a2);
    assert_eq!(back.canonicalize(), a2.canonicalize());
}

#[test]
fn explored_seeds_have_one_canonical_form_per_orbit() {
    let opts = ExploreOptions { keep_seeds: true, ..ExploreOptions::default() };
    let b = sq(&[[0, 1, 0, 0], [-1, 0, -1, 0], [0, 1, 0, 1], [0, 0, -1, 0]]);
    let pattern = explore_seed_pattern(&Seed::initial(b), &opts).unwrap();
    assert_eq!(pattern.report.count, 42);
    let seed = pattern.seed(&pattern.seeds[17]);
    let target = seed.canonicalize();
    let mut perm: Vec<usize> = (0..4).collect();
    for r in 0..100usize {
        perm.swap(r % 4, (r * 7 + 3) % 4);
        perm.rotate_left(r % 3);
        assert_eq!(seed.relabel(&perm).canonicalize(), target);
    }
}

#[test]
fn seed_serialization() {
    let s = Seed::initial(ext(&[[0, 1], [-2, 0], [1, 0]])).mutate(0).unwrap();
    assert_eq!(s.to_text(), "3 2\n0 -1\n2 0\n-1 1\nx1^-1*x2^2 + x1^-1*x3\nx2\nx3\n");
}

#[test]
fn equal_seeds_with_coefficients_force_equal_coefficient_free_seeds() {
    for c in 1..=3 {
        let reference = ext(&[[0, 1], [-c, 0], [1, 0]]);
        let derived = reference.top_matrix();
        assert!(reference.full_z_rank());
        assert!(rows_in_z_span(derived.matrix(), reference.matrix()).unwrap());
        let s_ref = Seed::initial(reference);
        let s_der = Seed::initial(derived);
        let ws = words(2, 9);
        let canon_ref: Vec<_> = ws.iter().map(|w| s_ref.mutate_seq(w).unwrap().canonicalize()).collect();
        let canon_der: Vec<_> = ws.iter().map(|w| s_der.mutate_seq(w).unwrap().canonicalize()).collect();
        let mut coincidences = 0;
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                if canon_ref[i] == canon_ref[j] {
                    coincidences += 1;
                    assert_eq!(canon_der[i], canon_der[j], "c={c} words {:?} {:?}", ws[i], ws[j]);
                }
            }
        }
        assert!(coincidences > 0);
    }
}

/// A seed together with a subset `idx` satisfying the restriction condition:
/// entries linking mutable indices in `idx` to indices outside it are zeroed.
fn restrictable(b: &ExtendedExchangeMatrix, mask: u32) -> (ExtendedExchangeMatrix, Vec<usize>) {
    let n = b.n_mutable();
    let m = b.n_rows();
    let mut idx: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
    if !idx.iter().any(|&i| i < n) {
        idx.insert(0, 0);
    }
    let mut rows = b.matrix().to_i64_rows().unwrap();
    for &k in idx.iter().filter(|&&k| k < n) {
        for i in (0..m).filter(|i| !idx.contains(i)) {
            rows[i][k] = 0;
            if i < n {
                rows[k][i] = 0;
            }
        }
    }
    (ExtendedExchangeMatrix::extended(&rows).unwrap(), idx)
}

proptest! {
    #![proptest_config(common::config(128))]

    #[test]
    fn seed_mutation_is_an_involution((b, word) in common::matrix_and_word(4, 2, 2, 1, 4), k in 0usize..4) {
        let s = Seed::initial(b).mutate_seq(&word).unwrap();
        let k = k % s.n_mutable();
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn laurent_phenomenon_holds_along_random_words((b, word) in common::matrix_and_word(4, 2, 2, 1, 6)) {
        // Any inexact division would surface as an error here.
        let s = Seed::initial(b).mutate_seq(&word).unwrap();
        prop_assert_eq!(s.cluster().len(), s.matrix().n_rows());
    }

    #[test]
    fn freezing_commutes_with_mutation(
        (b, word) in common::matrix_and_word(4, 2, 2, 1, 3),
        mask in 0u32..16,
        k in 0usize..4,
    ) {
        let s = Seed::initial(b).mutate_seq(&word).unwrap();
        let n = s.n_mutable();
        let k = k % n;
        let f: Vec<usize> = (0..n).filter(|&i| i != k && mask & (1 << i) != 0).collect();
        let k_new = k - f.iter().filter(|&&i| i < k).count();
        let lhs = s.mutate(k).unwrap().freeze(&f).unwrap();
        let rhs = s.freeze(&f).unwrap().mutate(k_new).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn freezing_order_is_immaterial((b, _) in common::matrix_and_word(4, 1, 2, 1, 0), mask in 0u32..16) {
        let s = Seed::initial(b);
        let n = s.n_mutable();
        let f: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let mut one_by_one = s.clone();
        for (done, &i) in f.iter().enumerate() {
            one_by_one = one_by_one.freeze(&[i - done]).unwrap();
        }
        prop_assert_eq!(one_by_one, s.freeze(&f).unwrap());
    }

    #[test]
    fn restriction_commutes_with_mutation(
        (b, word) in common::matrix_and_word(4, 2, 2, 1, 3),
        mask in 0u32..64,
        k in 0usize..4,
    ) {
        let (b, idx) = restrictable(&b, mask);
        let n = b.n_mutable();
        let inside: Vec<usize> = idx.iter().copied().filter(|&i| i < n).collect();
        let k = inside[k % inside.len()];
        let pos = idx.iter().position(|&i| i == k).unwrap();
        let s = Seed::initial(b);
        let word: Vec<usize> = word.into_iter().filter(|w| inside.contains(w)).collect();
        let s = s.mutate_seq(&word).unwrap();
        let lhs = s.mutate(k).unwrap().restrict(&idx).unwrap();
        let rhs = s.restrict(&idx).unwrap().mutate(pos).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trivialization_commutes_with_mutation(
        (b, word) in common::matrix_and_word(4, 3, 2, 1, 3),
        mask in 0u32..8,
        k in 0usize..4,
    ) {
        let s = Seed::initial(b).mutate_seq(&word).unwrap();
        let n = s.n_mutable();
        let m = s.matrix().n_rows();
        let k = k % n;
        let f: Vec<usize> = (n..m).filter(|&i| mask & (1 << (i - n)) != 0).collect();
        let lhs = s.mutate(k).unwrap().trivialize(&f).unwrap();
        let rhs = s.trivialize(&f).unwrap().mutate(k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_is_invariant_and_idempotent(
        (b, word) in common::matrix_and_word(4, 2, 2, 1, 4),
        perm in common::permutation(4),
    ) {
        let s = Seed::initial(b).mutate_seq(&word).unwrap();
        let n = s.n_mutable();
        let perm: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
        let c = s.canonicalize();
        prop_assert_eq!(s.relabel(&perm).canonicalize(), c.clone());
        prop_assert_eq!(c.seed().canonicalize(), c);
    }
}
