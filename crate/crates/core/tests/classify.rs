use cluster_core::classify::*;
use cluster_core::explore::{decide_finite_type, mutation_equivalent, Equivalence, ExploreOptions, FiniteTypeDecision};
use cluster_core::{ExtendedExchangeMatrix, Int};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sq<R: AsRef<[i64]>>(rows: &[R]) -> ExtendedExchangeMatrix {
    ExtendedExchangeMatrix::square(rows).unwrap()
}

fn binom(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn label(s: &str) -> DynkinLabel {
    s.parse().unwrap()
}

#[test]
fn exponent_data_is_consistent() {
    for n in 1..=12 {
        for l in [DynkinLabel::series('A', n), DynkinLabel::series('B', n), DynkinLabel::series('C', n), DynkinLabel::series('D', n)]
            .into_iter()
            .flatten()
            .chain([DynkinLabel::E6, DynkinLabel::E7, DynkinLabel::E8, DynkinLabel::F4, DynkinLabel::G2])
        {
            let e = l.exponents();
            assert_eq!(e.len(), l.rank());
            assert_eq!(2 * e.iter().sum::<u64>(), l.rank() as u64 * l.coxeter_number(), "{l}");
        }
    }
}

#[test]
fn closed_forms_reproduce_the_table() {
    let big = |x: u128| Int::from(x);
    for n in 1..=8u64 {
        let a = label(&format!("A{n}")).counts();
        assert_eq!(a, (big(binom(2 * n + 2, n + 1) / (n as u128 + 2)), big((n * (n + 3) / 2) as u128)));
        if n >= 2 {
            let bc = (big(binom(2 * n, n)), big((n * (n + 1)) as u128));
            assert_eq!(label(&format!("B{n}")).counts(), bc);
            if n >= 3 {
                assert_eq!(label(&format!("C{n}")).counts(), bc);
            }
        }
        if n >= 4 {
            let seeds = (3 * n as u128 - 2) * binom(2 * n - 2, n - 1) / n as u128;
            assert_eq!(label(&format!("D{n}")).counts(), (big(seeds), big((n * n) as u128)));
        }
    }
    for (l, s, v) in [("E6", 833, 42), ("E7", 4160, 70), ("E8", 25080, 128), ("F4", 105, 28), ("G2", 8, 8)] {
        assert_eq!(label(l).counts(), (Int::from(s), Int::from(v)), "{l}");
    }
    assert_eq!(label("A2").counts().0, Int::from(5));
    assert_eq!(count_type(&"A1+A1".parse().unwrap()), (Int::from(4), Int::from(4)));
}

#[test]
fn generated_dynkin_diagrams_are_recognized() {
    for s in ["A1", "A5", "B2", "B4", "C3", "C5", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
        let l = label(s);
        let b = make_generator(&Generator::Dynkin(l)).unwrap();
        assert_eq!(match_dynkin(&b.diagram()), Some(l.into()), "{s}");
        for o in all_orientations(&b).unwrap() {
            assert_eq!(match_dynkin(&o.diagram()), Some(l.into()), "{s}");
            assert!(finite_type_criterion(&o).unwrap(), "{s}");
        }
    }
    let t122 = make_generator(&Generator::T { p: 1, q: 2, r: 2 }).unwrap();
    assert_eq!(match_dynkin(&t122.diagram()), Some(DynkinLabel::E6.into()));
    let cycle4 = sq(&[[0, 1, 0, -1], [-1, 0, 1, 0], [0, -1, 0, 1], [1, 0, -1, 0]]);
    assert_eq!(match_dynkin(&cycle4.diagram()), None);
}

#[test]
fn chordless_cycle_examples() {
    let tree = make_generator(&Generator::Dynkin(DynkinLabel::E8)).unwrap();
    assert!(chordless_cycles(&tree.diagram()).is_empty());
    for n in 3..=10 {
        let q = make_generator(&Generator::Q(n)).unwrap();
        let cycles = chordless_cycles(&q.diagram());
        let mut sets: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| {
                let mut v = c.vertices.clone();
                v.sort_unstable();
                v
            })
            .collect();
        sets.sort();
        let expected: Vec<Vec<usize>> = (0..n - 2).map(|i| vec![i, i + 1, i + 2]).collect();
        assert_eq!(sets, expected);
        assert!(cycles.iter().all(|c| c.is_cyclically_oriented()));
    }
    let bent = sq(&[[0, 1, 0, 1], [-1, 0, 1, 0], [0, -1, 0, 1], [-1, 0, -1, 0]]);
    let cycles = chordless_cycles(&bent.diagram());
    assert_eq!(cycles.len(), 1);
    assert!(!cycles[0].is_cyclically_oriented());
    assert_eq!(signed_companion(&bent).unwrap(), None);
}

#[test]
fn companions() {
    let tree = make_generator(&Generator::Dynkin(DynkinLabel::D(5))).unwrap();
    assert_eq!(signed_companion(&tree).unwrap().unwrap().a, tree.cartan_counterpart());
    let q = make_generator(&Generator::Q(6)).unwrap();
    let a6 = QuasiCartanCompanion::upper_signed(&q).unwrap();
    for c in chordless_cycles(&q.diagram()) {
        assert!(a6.satisfies_sign_condition(&c));
    }
    let two = QuasiCartanCompanion { a: cluster_core::IntMatrix::from_i64(&[[2, -1], [-1, 2]]), d: vec![Int::ONE, Int::ONE] };
    assert!(two.is_positive());
}

/// Coefficients of `(1+x)(1+x+x^2)(1+x^2)(1+x^3)/(1-x^12)` up to `x^len`.
fn det_series(len: usize) -> Vec<i64> {
    let mut num = vec![1i64];
    for f in [vec![1, 1], vec![1, 1, 1], vec![1, 0, 1], vec![1, 0, 0, 1]] {
        let mut next = vec![0; num.len() + f.len() - 1];
        for (i, a) in num.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        num = next;
    }
    (0..=len).map(|n| (0..=n).step_by(12).map(|k| num.get(n - k).copied().unwrap_or(0)).sum()).collect()
}

#[test]
fn q_n_determinants_follow_the_series() {
    let series = det_series(24);
    for n in 1..=24 {
        let q = make_generator(&Generator::Q(n)).unwrap();
        let delta = QuasiCartanCompanion::upper_signed(&q).unwrap().a.determinant().unwrap();
        assert_eq!(delta, Int::from(series[n]), "n = {n}");
        // the constructed companion differs by simultaneous sign changes
        let signed = signed_companion(&q).unwrap().unwrap();
        assert_eq!(signed.a.determinant().unwrap(), delta);
        assert_eq!(finite_type_criterion(&q).unwrap(), n <= 8, "n = {n}");
    }
    assert_eq!(&series[1..=8], &[2, 3, 4, 4, 4, 3, 2, 1]);
}

#[test]
fn q_n_types() {
    let expected = ["A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8"];
    for (n, t) in (1..=8).zip(expected) {
        let q = make_generator(&Generator::Q(n)).unwrap();
        assert_eq!(identify_type(&q).unwrap(), Classification::Finite(label(t).into()), "n = {n}");
    }
    let q9 = make_generator(&Generator::Q(9)).unwrap();
    assert_eq!(identify_type(&q9).unwrap(), Classification::Infinite);
}

#[test]
fn cycles_and_blocks() {
    for n in 3..=7 {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            rows[i][(i + 1) % n] = 1;
            rows[(i + 1) % n][i] = -1;
        }
        let want = if n == 3 { label("A3") } else { DynkinLabel::D(n) };
        assert_eq!(identify_type(&sq(&rows)).unwrap(), Classification::Finite(want.into()));
    }
    let block = sq(&[[0, 0, 0], [0, 0, 1], [0, -1, 0]]);
    assert_eq!(identify_type(&block).unwrap(), Classification::Finite("A1+A2".parse().unwrap()));
    assert!(!finite_type_criterion(&sq(&[[0, 2], [-2, 0]])).unwrap());
}

fn affine_list() -> Vec<AffineLabel> {
    let mut v = Vec::new();
    for n in 3..=8 {
        v.push(AffineLabel::B(n));
    }
    for n in 2..=8 {
        v.push(AffineLabel::C(n));
    }
    for n in 4..=8 {
        v.push(AffineLabel::D(n));
    }
    v.extend([AffineLabel::E6, AffineLabel::E7, AffineLabel::E8, AffineLabel::F4]);
    v.extend((1..=3).map(AffineLabel::G2));
    v
}

#[test]
fn extended_dynkin_trees_are_minimal_infinite() {
    for a in affine_list() {
        let b = make_generator(&Generator::ExtendedDynkin(a)).unwrap();
        assert!(b.n_mutable() <= 9);
        assert!(match_dynkin(&b.diagram()).is_none(), "{a:?}");
        assert!(!finite_type_criterion(&b).unwrap(), "{a:?}");
        let n = b.n_mutable();
        for mask in 1u32..(1 << n) - 1 {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let sub = b.restrict(&idx).unwrap();
            assert!(finite_type_criterion(&sub).unwrap(), "{a:?} on {idx:?}");
        }
    }
}

#[test]
fn crown_diagram_matches_tree() {
    let s = make_generator(&Generator::S { p: 2, q: 2, r: 1, s: 2 }).unwrap();
    let t = make_generator(&Generator::T { p: 2, q: 2, r: 2 }).unwrap();
    assert_eq!(s.n_mutable(), 7);
    let opts = ExploreOptions::without_abort();
    assert!(matches!(mutation_equivalent(&s, &t, &opts).unwrap(), Equivalence::Yes { .. }));
    let big = make_generator(&Generator::S { p: 4, q: 3, r: 2, s: 5 }).unwrap();
    assert_eq!(big.n_mutable(), 14);
    assert_eq!(chordless_cycles(&big.diagram()).len(), 1);
}

/// Small skew-symmetrizable matrices: `b_ij = t d_j / g`, `b_ji = -t d_i / g`
/// with `g = gcd(d_i, d_j)`.
fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ExtendedExchangeMatrix {
    let d: Vec<i64> = (0..n).map(|_| [1, 1, 1, 2, 3][rng.gen_range(0..5)]).collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let t: i64 = rng.gen_range(-1..=1);
            let g = gcd(d[i], d[j]);
            rows[i][j] = t * d[j] / g;
            rows[j][i] = -t * d[i] / g;
        }
    }
    sq(&rows)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn decided_finite(b: &ExtendedExchangeMatrix) -> bool {
    match decide_finite_type(b, &ExploreOptions::default()).unwrap() {
        FiniteTypeDecision::Finite { .. } => true,
        FiniteTypeDecision::Infinite { .. } => false,
        FiniteTypeDecision::Unknown => panic!("exploration capped for {b:?}"),
    }
}

#[test]
fn criterion_agrees_with_exploration_on_random_rank_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let b = random_matrix(&mut rng, 4);
        assert_eq!(finite_type_criterion(&b).unwrap(), decided_finite(&b), "{b:?}");
    }
}

#[test]
fn identify_type_is_mutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 40 {
        let b = random_matrix(&mut rng, 5);
        if let Classification::Finite(t) = identify_type(&b).unwrap() {
            let k = rng.gen_range(0..5);
            assert_eq!(identify_type(&b.mutate(k).unwrap()).unwrap(), Classification::Finite(t));
            checked += 1;
        }
    }
}
