use cluster_core::explore::{explore_seed_pattern, ExploreOptions};
use cluster_core::folding::{fold_seed_pattern, VertexGroupAction};
use cluster_core::geom::*;
use cluster_core::{ExtendedExchangeMatrix, Int, IntMatrix, Seed};

#[test]
fn fan_matrix_matches_the_displayed_shape() {
    for n in 1..=6 {
        let b = polygon_matrix(&PolygonTriangulation::fan(n), true);
        assert_eq!((b.n_rows(), b.n_mutable()), (2 * n + 3, n));
        for i in 0..n {
            for j in 0..n {
                let want = if j == i + 1 { -1 } else if i == j + 1 { 1 } else { 0 };
                assert_eq!(*b.get(i, j), Int::from(want));
            }
        }
        assert_eq!(*b.get(n, 0), Int::from(-1));
        assert_eq!(*b.get(n + 1, 0), Int::from(1));
        assert!(b.full_z_rank());
    }
}

#[test]
fn polygon_square_part_entries() {
    for t in PolygonTriangulation::all(4) {
        let b = polygon_matrix(&t, false);
        assert!(b.is_skew_symmetric());
        assert!(b.top().to_i64_rows().unwrap().iter().flatten().all(|v| v.abs() <= 1));
    }
}

#[test]
fn hexagon_flips_are_mutations() {
    let all = PolygonTriangulation::all(3);
    assert_eq!(all.len(), 14);
    for t in &all {
        let b = polygon_matrix(t, true);
        for (k, &d) in t.diagonals().iter().enumerate() {
            let u = polygon_flip(t, d).unwrap();
            assert_eq!(polygon_flip(&u, u.diagonals()[k]).unwrap(), *t);
            assert_eq!(polygon_matrix(&u, true), b.mutate(k).unwrap());
        }
    }
    let g = polygon_flip_graph(3).unwrap();
    assert_eq!(g.labels.len(), 14);
    assert!(g.is_regular(3) && g.is_connected());
}

#[test]
fn flip_outside_triangulation_is_rejected() {
    let t = PolygonTriangulation::fan(3);
    assert!(matches!(polygon_flip(&t, (2, 4)), Err(cluster_core::Error::Precondition(_))));
    assert!(PolygonTriangulation::new(6, vec![(1, 4), (2, 5), (1, 3)]).is_err());
}

#[test]
fn fan_patterns_match_the_polygon() {
    for n in 1..=5 {
        let b = polygon_matrix(&PolygonTriangulation::fan(n), true);
        let r = explore_seed_pattern(&Seed::initial(b), &ExploreOptions::default()).unwrap().report;
        let count = count_triangulations(TriangulationModel::PolygonA(n)).unwrap();
        assert_eq!(r.count, count.enumerated);
        assert_eq!(r.variables, Some(n * (n + 3) / 2));
    }
}

#[test]
fn t_circ_bullet_matrix() {
    let t = TaggedTriangulation::t_circ(5);
    let b = tagged_matrix_bullet(&t).unwrap();
    let want = IntMatrix::from_i64(&[
        [0, -1, 0, 0, 1],
        [1, 0, -1, 0, 0],
        [0, 1, 0, -1, 0],
        [0, 0, 1, 0, -1],
        [-1, 0, 0, 1, 0],
        [-1, 1, 0, 0, 0],
        [0, -1, 1, 0, 0],
        [0, 0, -1, 1, 0],
        [0, 0, 0, -1, 1],
        [1, 0, 0, 0, -1],
        [-1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1],
    ]);
    assert_eq!(b.matrix(), &want);
    assert!(b.full_z_rank());
    let base = tagged_matrix(&t).unwrap();
    assert!(!base.full_z_rank());
    for row in base.matrix().to_i64_rows().unwrap() {
        assert_eq!(row.iter().sum::<i64>(), 0);
    }
}

#[test]
fn small_punctured_counts() {
    for (n, d) in [(2, 4), (3, 14), (4, 50), (5, 182)] {
        let all = TaggedTriangulation::all(n);
        assert_eq!(all.len(), d);
        for t in &all {
            assert_eq!(t.arcs().len(), n);
        }
    }
}

#[test]
fn tagged_flips_are_mutations() {
    for n in 2..=5 {
        for t in TaggedTriangulation::all(n) {
            let b = tagged_matrix_bullet(&t).unwrap();
            for (k, a) in t.arcs().iter().enumerate() {
                let u = tagged_flip(&t, a).unwrap();
                assert_eq!(tagged_flip(&u, &u.arcs()[k]).unwrap(), t);
                assert_eq!(tagged_matrix_bullet(&u).unwrap(), b.mutate(k).unwrap(), "{t} at {a}");
            }
        }
    }
}

#[test]
fn tagged_flip_graphs_are_connected_and_regular() {
    for n in 2..=5 {
        let g = tagged_flip_graph(n).unwrap();
        assert_eq!(g.labels.len(), TaggedTriangulation::all(n).len());
        assert!(g.is_regular(n) && g.is_connected(), "n = {n}");
    }
    let flavors: Vec<_> = TaggedTriangulation::all(3).iter().map(|t| t.flavor()).collect();
    assert!(flavors.contains(&PuncturedFlavor::AllNotched) && flavors.contains(&PuncturedFlavor::DigonMixed));
}

#[test]
fn type_d_engine_agreement() {
    for n in [4, 5] {
        let b = tagged_matrix_bullet(&TaggedTriangulation::t_circ(n)).unwrap();
        let r = explore_seed_pattern(&Seed::initial(b), &ExploreOptions::default()).unwrap().report;
        assert_eq!(r.count, count_triangulations(TriangulationModel::TaggedD(n)).unwrap().enumerated);
        assert_eq!(r.variables, Some(n * n));
    }
}

#[test]
fn arc_census_adds_up() {
    for n in 3..=9 {
        let (plain, crossing, radii) = arc_census(n);
        assert_eq!(2 * plain, n * n - 3 * n + 2);
        assert_eq!(2 * crossing, n * n - n - 2);
        assert_eq!(radii, 2 * n);
        assert_eq!(tagged_arcs(n).len(), n * n);
    }
}

#[test]
fn counts_agree_with_closed_forms() {
    for n in 1..=5 {
        count_triangulations(TriangulationModel::PolygonA(n)).unwrap();
        count_triangulations(TriangulationModel::CentralC(n)).unwrap();
        count_triangulations(TriangulationModel::TagSymB(n)).unwrap();
    }
    for n in 2..=6 {
        count_triangulations(TriangulationModel::TaggedD(n)).unwrap();
    }
    assert_eq!(count_triangulations(TriangulationModel::PolygonA(3)).unwrap().enumerated, 14);
    assert_eq!(count_triangulations(TriangulationModel::TaggedD(4)).unwrap().enumerated, 50);
    assert_eq!(count_triangulations(TriangulationModel::CentralC(3)).unwrap().enumerated, 20);
    assert_eq!(count_triangulations(TriangulationModel::TagSymB(3)).unwrap().enumerated, 20);
    assert!(count_triangulations(TriangulationModel::TaggedD(1)).is_err());
}

#[test]
fn symmetric_flip_graphs() {
    for n in 1..=4 {
        let c = central_flip_graph(n).unwrap();
        assert!(c.is_regular(n) && c.is_connected(), "C{n}");
        let b = tag_symmetric_flip_graph(n).unwrap();
        assert!(b.is_regular(n) && b.is_connected(), "B{n}");
    }
}

#[test]
fn d_recurrence() {
    // oracle: the recurrence evaluated by hand for n = 3, 4
    assert_eq!(d_count(3), Int::from(4 + 2 * 5));
    assert_eq!(d_count(4), Int::from(14 + 2 * 4 + 2 * 14));
    assert!(dn_recurrence_check(3));
    assert!(dn_recurrence_check(10));
}

/// Path `n', ..., 2', 1, 2, ..., n` oriented towards `1`.
fn symmetric_a(n: usize) -> (ExtendedExchangeMatrix, VertexGroupAction) {
    let m = 2 * n - 1;
    let mut rows = vec![vec![0i64; m]; m];
    let mut g: Vec<usize> = (0..m).collect();
    for i in 2..=n {
        let (a, a2) = (i - 1, n + i - 2);
        let (p, p2) = if i == 2 { (0, 0) } else { (i - 2, n + i - 3) };
        for (x, y) in [(a, p), (a2, p2)] {
            rows[x][y] = 1;
            rows[y][x] = -1;
        }
        g.swap(a, a2);
    }
    (ExtendedExchangeMatrix::square(&rows).unwrap(), VertexGroupAction::new(m, vec![g]).unwrap())
}

#[test]
fn folded_type_c_matches_central_model() {
    for n in 2..=4 {
        let (b, g) = symmetric_a(n);
        let p = fold_seed_pattern(&b, &g, &ExploreOptions::default()).unwrap();
        assert_eq!(p.report.count, count_triangulations(TriangulationModel::CentralC(n)).unwrap().enumerated);
        assert_eq!(p.report.variables, Some(n * n + n));
    }
}

#[test]
fn dot_export() {
    let dot = polygon_flip_graph(1).unwrap().to_dot("flips");
    assert_eq!(dot, "graph flips {\n  t0 [label=\"1-3\"];\n  t1 [label=\"2-4\"];\n  t0 -- t1;\n}\n");
}
