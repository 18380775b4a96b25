use cluster_core::explore::*;
use cluster_core::{ExtendedExchangeMatrix, Seed};

fn sq<R: AsRef<[i64]>>(rows: &[R]) -> ExtendedExchangeMatrix {
    ExtendedExchangeMatrix::square(rows).unwrap()
}

fn pattern(b: ExtendedExchangeMatrix) -> ExplorationReport {
    explore_seed_pattern(&Seed::initial(b), &ExploreOptions::default()).unwrap().report
}

fn path(n: usize) -> ExtendedExchangeMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n - 1 {
        rows[i][i + 1] = 1;
        rows[i + 1][i] = -1;
    }
    sq(&rows)
}

pub fn e8_grid() -> ExtendedExchangeMatrix {
    sq(&[
        [0, 1, 0, 0, 1, -1, 0, 0],
        [-1, 0, 1, 0, 0, 1, -1, 0],
        [0, -1, 0, 1, 0, 0, 1, -1],
        [0, 0, -1, 0, 0, 0, 0, 1],
        [-1, 0, 0, 0, 0, 1, 0, 0],
        [1, -1, 0, 0, -1, 0, 1, 0],
        [0, 1, -1, 0, 0, -1, 0, 1],
        [0, 0, 1, -1, 0, 0, -1, 0],
    ])
}

#[test]
fn rank_two_with_one_frozen_row() {
    for (c, seeds) in [(1, 5), (2, 6), (3, 8)] {
        let b = ExtendedExchangeMatrix::extended(&[[0, 1], [-c, 0], [1, 0]]).unwrap();
        let r = pattern(b);
        assert_eq!(r.status, ExplorationStatus::Closed);
        assert_eq!(r.count, seeds, "c = {c}");
    }
}

#[test]
fn a3_seeds_and_variables() {
    let r = pattern(path(3));
    assert_eq!((r.count, r.variables), (14, Some(9)));
    assert_eq!(r.depth_profile.last(), r.depth_profile.iter().rev().nth(1));
}

#[test]
fn a3_class_has_four_quivers() {
    let c = explore_matrix_class(&path(3), &ExploreOptions::default()).unwrap();
    assert!(c.report.status.is_closed());
    assert_eq!(c.report.count, 4);
}

#[test]
fn kronecker_aborts_at_depth_zero() {
    let c = explore_matrix_class(&sq(&[[0, 2], [-2, 0]]), &ExploreOptions::default()).unwrap();
    match c.report.status {
        ExplorationStatus::AbortedInfiniteWitness { i, j, product, depth } => {
            assert_eq!((i, j, depth), (1, 2, 0));
            assert_eq!(product, 4.into());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn arborizable_subquiver_class() {
    // acyclic triangle 1->2, 2->3, 1->3
    let b = sq(&[[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]);
    let c = explore_matrix_class(&b, &ExploreOptions::without_abort()).unwrap();
    assert!(c.report.status.is_closed());
    assert_eq!(c.report.count, 2);
    let cyclic_double = sq(&[[0, -1, 2], [1, 0, -1], [-2, 1, 0]]);
    assert!(c.contains(&cyclic_double).is_some());
    for m in &c.members {
        let edges = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| !m.matrix.get(i, j).is_zero());
        assert_eq!(edges.count(), 3, "both members are triangles, neither is a tree");
    }
}

#[test]
fn e8_grid_profile_prefix() {
    let opts = ExploreOptions { max_depth: Some(4), ..ExploreOptions::default() };
    let r = explore_seed_pattern(&Seed::initial(e8_grid()), &opts).unwrap().report;
    assert_eq!(r.depth_profile, vec![1, 9, 50, 196, 614]);
    assert_eq!(r.status, ExplorationStatus::DepthCapped);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let b = e8_grid();
    let run = |t| {
        let opts = ExploreOptions { max_depth: Some(3), threads: Some(t), ..ExploreOptions::default() };
        let p = explore_seed_pattern(&Seed::initial(b.clone()), &opts).unwrap();
        let vars: Vec<_> = p.variables().into_iter().cloned().collect();
        (p.report, vars)
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn labeled_seeds_are_counted_separately() {
    let opts = ExploreOptions { labeled: true, ..ExploreOptions::default() };
    let r = explore_seed_pattern(&Seed::initial(path(2)), &opts).unwrap().report;
    // five unlabeled seeds, each appearing with both labelings
    assert_eq!(r.count, 10);
}

#[test]
fn embedding_queries() {
    let a3 = Quiver::from_matrix(&path(3)).unwrap();
    let a2 = Quiver::from_matrix(&path(2)).unwrap();
    let point = Quiver::new(1, 1);
    let kron = Quiver::from_arrows(2, 2, &[(0, 1, 2)]).unwrap();
    let opts = ExploreOptions::default();
    assert!(matches!(is_embeddable(&point, &a3, &opts).unwrap(), EmbeddingResult::Embeddable(_)));
    match is_embeddable(&a2, &a3, &opts).unwrap() {
        EmbeddingResult::Embeddable(e) => {
            assert_eq!(e.subset.len(), 2);
            let reached = path(3).mutate_seq(&e.word).unwrap();
            let idx: Vec<usize> = e.subset.iter().map(|i| i - 1).collect();
            let sub = reached.restrict(&idx).unwrap();
            assert_eq!(Quiver::from_matrix(&sub).unwrap().canonical(), a2.canonical());
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(is_embeddable(&kron, &a3, &opts).unwrap(), EmbeddingResult::NotEmbeddable);
}

#[test]
fn mutation_equivalence() {
    let b = path(4);
    let opts = ExploreOptions::default();
    assert!(matches!(mutation_equivalent(&b, &b.mutate(1).unwrap(), &opts).unwrap(), Equivalence::Yes { .. }));
    // other orientation of the same path
    let other = sq(&[[0, -1, 0, 0], [1, 0, 1, 0], [0, -1, 0, -1], [0, 0, 1, 0]]);
    match mutation_equivalent(&b, &other, &opts).unwrap() {
        Equivalence::Yes { word } => {
            let (c1, _) = canonical_matrix(&b.mutate_seq(&word).unwrap());
            assert_eq!(c1, canonical_matrix(&other).0);
        }
        e => panic!("unexpected {e:?}"),
    }
    assert_eq!(mutation_equivalent(&path(2), &sq(&[[0, 2], [-2, 0]]), &opts).unwrap(), Equivalence::No);
}

#[test]
fn decide_on_small_examples() {
    let opts = ExploreOptions::default();
    assert_eq!(decide_finite_type(&path(3), &opts).unwrap(), FiniteTypeDecision::Finite { class_size: 4 });
    let markov = sq(&[[0, 2, -2], [-2, 0, 2], [2, -2, 0]]);
    assert!(matches!(decide_finite_type(&markov, &opts).unwrap(), FiniteTypeDecision::Infinite { .. }));
}

#[test]
fn infinite_witnesses_replay_exactly() {
    use cluster_core::classify::{make_generator, AffineLabel, Generator};
    let opts = ExploreOptions::default();
    let mut cases: Vec<ExtendedExchangeMatrix> =
        [AffineLabel::E8, AffineLabel::D(6), AffineLabel::C(4), AffineLabel::G2(2)]
            .into_iter()
            .map(|a| make_generator(&Generator::ExtendedDynkin(a)).unwrap())
            .collect();
    cases.push(make_generator(&Generator::Q(9)).unwrap());
    for b in cases {
        let FiniteTypeDecision::Infinite { i, j, product, word } = decide_finite_type(&b, &opts).unwrap() else {
            panic!("{b:?} not decided infinite");
        };
        let m = b.mutate_seq(&word).unwrap();
        let (i, j) = (i - 1, j - 1);
        let p = m.matrix().get(i, j) * m.matrix().get(j, i);
        assert_eq!(-p, product);
        assert!(product >= cluster_core::Int::from(4));
    }
}

#[test]
fn exchange_graph_of_a3_is_three_regular() {
    let opts = ExploreOptions { keep_seeds: true, ..ExploreOptions::default() };
    let p = explore_seed_pattern(&Seed::initial(path(3)), &opts).unwrap();
    let edges = p.exchange_edges();
    assert_eq!(edges.len(), 14 * 3 / 2);
    let mut deg = vec![0; p.seeds.len()];
    for (a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    assert!(deg.iter().all(|&d| d == 3));
}
