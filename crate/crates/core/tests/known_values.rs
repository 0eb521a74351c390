//! Every method against textbook values that do not come from this crate:
//! gambler's-ruin and symmetry arguments, Cayley's formula, series/parallel
//! resistances.

mod common;

use hitlab::generators::Family;
use hitlab::graph::DEFAULT_PATH_CAP;
use hitlab::hitting::{hit_montecarlo, ExactMethod, FloatMethod, HittingEngine};
use hitlab::linalg::{ratio, tau};
use hitlab::{BigInt, BigRational, Graph};

use common::family;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Asserts `H(x, y) = want` by every exact and float method.
fn assert_hit(g: &Graph, x: usize, y: usize, want: &BigRational) {
    let mut engine = HittingEngine::new(g, DEFAULT_PATH_CAP).unwrap();
    for m in ExactMethod::ALL {
        assert_eq!(&engine.exact(x, y, m).unwrap(), want, "{} ({x},{y})", m.name());
    }
    let w = hitlab::linalg::rational_to_f64(want);
    for m in FloatMethod::ALL {
        let v = engine.float(x, y, m).unwrap();
        assert!((v - w).abs() <= 1e-9 * w.max(1.0), "{} ({x},{y}): {v} vs {w}", m.name());
    }
}

#[test]
fn path_gamblers_ruin() {
    // from one end: (n-1)^2; one step to the right of i: 2i + 1
    for n in 2..=9usize {
        let g = family(Family::Path { n });
        assert_hit(&g, 0, n - 1, &ratio((n - 1) * (n - 1)));
        for i in 0..n - 1 {
            assert_hit(&g, i, i + 1, &ratio(2 * i + 1));
        }
    }
}

#[test]
fn cycle_distance_product() {
    // H(0, k) = k (n - k)
    for n in 3..=9usize {
        let g = family(Family::Cycle { n });
        for k in 0..n {
            assert_hit(&g, 0, k, &ratio(k * (n - k)));
        }
    }
}

#[test]
fn complete_graph_geometric() {
    // each step hits y with probability 1/(n-1)
    for n in 2..=7usize {
        let g = family(Family::Complete { n });
        assert_hit(&g, 0, n - 1, &ratio(n - 1));
    }
}

#[test]
fn star_center_and_leaves() {
    // k leaves: leaf -> center 1; center -> leaf 2k - 1; leaf -> leaf 2k
    for n in 3..=8usize {
        let k = n - 1;
        let g = family(Family::Star { n });
        assert_hit(&g, 1, 0, &ratio(1u32));
        assert_hit(&g, 0, 1, &ratio(2 * k - 1));
        assert_hit(&g, 1, 2, &ratio(2 * k));
    }
}

#[test]
fn lollipop_examples() {
    // H(x_1, y_N) on L_{N,N} is N^3 + N - 1
    for (n, want) in [(2usize, 9i64), (3, 29), (4, 67), (5, 129)] {
        let g = family(Family::Lollipop { m: n, n });
        assert_hit(&g, 0, 2 * n - 1, &q(want, 1));
    }
}

#[test]
fn k4_minus_edge() {
    // 0 and 1 have degree 3, 2 and 3 are the non-adjacent pair.
    // Into 3: h0 = h1 = 1 + (h1 + h2) / 3, h2 = 1 + h0, so h0 = 4, h2 = 5.
    // Into 0: h2 = h3 = 1 + h1 / 2, h1 = 1 + 2 h2 / 3, so h1 = 5/2, h2 = 9/4.
    let g = Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], 4).unwrap();
    assert_hit(&g, 2, 3, &q(5, 1));
    assert_hit(&g, 0, 3, &q(4, 1));
    assert_hit(&g, 1, 0, &q(5, 2));
    assert_hit(&g, 2, 0, &q(9, 4));
}

#[test]
fn spanning_tree_counts() {
    // Cayley n^(n-2), cycles n, trees 1, K_{2,3} = 2^2 * 3^1
    for n in 2..=8u32 {
        let k = family(Family::Complete { n: n as usize });
        assert_eq!(tau(&k.to_multigraph()).unwrap(), BigInt::from(n).pow(n - 2));
    }
    for n in 3..=8 {
        assert_eq!(tau(&family(Family::Cycle { n }).to_multigraph()).unwrap(), BigInt::from(n));
    }
    let t = family(Family::RandomTree { n: 9, seed: 4 });
    assert_eq!(tau(&t.to_multigraph()).unwrap(), BigInt::from(1));
    let k23 = Graph::from_edge_list(&[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], 5).unwrap();
    assert_eq!(tau(&k23.to_multigraph()).unwrap(), BigInt::from(12));
}

#[test]
fn petersen_graph() {
    // 2000 spanning trees. Edge-transitive, so by Foster each edge has
    // resistance (n-1)/m and commute time 2(n-1) = 18; vertex-transitivity
    // splits it evenly.
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    let g = Graph::from_edge_list(&edges, 10).unwrap();
    assert_eq!(tau(&g.to_multigraph()).unwrap(), BigInt::from(2000));
    assert_hit(&g, 0, 1, &q(9, 1));
}

#[test]
fn resistances_series_parallel() {
    let c6 = family(Family::Cycle { n: 6 });
    let mut engine = HittingEngine::new(&c6, 0).unwrap();
    // arcs of 2 and 4 in parallel
    assert_eq!(engine.resistance(0, 2).unwrap(), q(4, 3));
    let p5 = family(Family::Path { n: 5 });
    let mut engine = HittingEngine::new(&p5, 0).unwrap();
    assert_eq!(engine.resistance(0, 4).unwrap(), q(4, 1));
    let k5 = family(Family::Complete { n: 5 });
    assert_eq!(hitlab::hitting::resistance(&k5, 1, 3).unwrap(), q(2, 5));
    assert_eq!(hitlab::hitting::commute(&k5, 1, 3).unwrap(), q(8, 1));
}

#[test]
fn monte_carlo_near_textbook_value() {
    let g = family(Family::Cycle { n: 8 });
    let est = hit_montecarlo(&g, 0, 4, 50_000, 11).unwrap();
    assert!((est.mean - 16.0).abs() <= 4.0 * est.stderr, "{est:?}");
    assert_eq!(est, hit_montecarlo(&g, 0, 4, 50_000, 11).unwrap());
    assert_ne!(est.mean, hit_montecarlo(&g, 0, 4, 50_000, 12).unwrap().mean);
}
