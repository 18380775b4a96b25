//! Shared strategies for the property suites.
#![allow(dead_code)]

use cluster_core::{ExtendedExchangeMatrix, Int, IntMatrix, LaurentPolynomial, Monomial};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Fixed seed and no regression files, so runs are reproducible.
pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Skew-symmetrizable `m x n` matrix built from a random symmetrizer.
///
/// `n` mutable indices in `1..=max_n`, up to `max_frozen` frozen rows,
/// symmetrizer entries in `1..=max_d`, multipliers in `-t..=t`.
pub fn matrix(max_n: usize, max_frozen: usize, max_d: i64, t: i64) -> impl Strategy<Value = ExtendedExchangeMatrix> {
    (1..=max_n, 0..=max_frozen).prop_flat_map(move |(n, f)| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(1..=max_d, n),
            prop::collection::vec(-t..=t, pairs),
            prop::collection::vec(-t..=t, f * n),
        )
            .prop_map(move |(d, upper, frozen)| build(n, f, &d, &upper, &frozen))
    })
}

pub fn build(n: usize, f: usize, d: &[i64], upper: &[i64], frozen: &[i64]) -> ExtendedExchangeMatrix {
    let mut rows = vec![vec![0i64; n]; n + f];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let t = *it.next().unwrap();
            let g = gcd(d[i], d[j]);
            rows[i][j] = t * d[j] / g;
            rows[j][i] = -t * d[i] / g;
        }
    }
    for (r, chunk) in frozen.chunks(n.max(1)).enumerate().take(f) {
        rows[n + r].copy_from_slice(chunk);
    }
    ExtendedExchangeMatrix::extended(&rows).expect("built to be skew-symmetrizable")
}

/// Matrix together with a mutation word over its mutable indices.
pub fn matrix_and_word(
    max_n: usize,
    max_frozen: usize,
    max_d: i64,
    t: i64,
    len: usize,
) -> impl Strategy<Value = (ExtendedExchangeMatrix, Vec<usize>)> {
    matrix(max_n, max_frozen, max_d, t).prop_flat_map(move |b| {
        let n = b.n_mutable();
        (Just(b), prop::collection::vec(0..n, 0..=len))
    })
}

pub fn int_matrix(rows: usize, cols: usize, t: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-t..=t, cols), rows).prop_map(|r| IntMatrix::from_i64(&r))
}

/// Laurent polynomial in `nvars` variables with up to `terms` terms,
/// exponents in `-e..=e` and coefficients in `-c..=c`.
pub fn laurent(nvars: usize, terms: usize, e: i64, c: i64) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(-e..=e, nvars), -c..=c), 0..=terms).prop_map(move |ts| {
        LaurentPolynomial::from_terms(nvars, ts.into_iter().map(|(x, k)| (Monomial::new(x), Int::from(k))))
    })
}

pub fn nonzero_laurent(nvars: usize, terms: usize, e: i64, c: i64) -> impl Strategy<Value = LaurentPolynomial> {
    laurent(nvars, terms, e, c).prop_filter("nonzero", |p| !p.is_zero())
}

/// A permutation of `0..n`.
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
