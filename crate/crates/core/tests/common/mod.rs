//! Graph corpora shared by the integration tests.
#![allow(dead_code)]

use hitlab::generators::{generate_family, Family};
use hitlab::Graph;

pub fn family(f: Family) -> Graph {
    generate_family(&f).expect("valid family")
}

/// Connected random graph for `seed`, with `n` drawn from `sizes` and the
/// chord probability cycling through a few densities.
pub fn random_connected(seed: u64, sizes: std::ops::RangeInclusive<usize>) -> Graph {
    let span = (sizes.end() - sizes.start() + 1) as u64;
    let n = sizes.start() + (seed % span) as usize;
    let p = [0.15, 0.3, 0.5, 0.8][(seed / span % 4) as usize];
    family(Family::RandomConnected { n, p, seed })
}

/// Every named family with at most `max_n` vertices.
pub fn named_families(max_n: usize) -> Vec<(String, Graph)> {
    let mut fams = Vec::new();
    for n in 1..=max_n {
        fams.push(Family::Path { n });
        fams.push(Family::Complete { n });
        fams.push(Family::Star { n });
        if n >= 3 {
            fams.push(Family::Cycle { n });
        }
    }
    for m in 2..max_n {
        for n in 1..=max_n - m {
            fams.push(Family::Lollipop { m, n });
        }
    }
    fams.into_iter().map(|f| (f.to_string(), family(f))).collect()
}

/// Named families plus `count` seeded random connected graphs, n <= `max_n`.
pub fn sweep(max_n: usize, count: u64) -> Vec<(String, Graph)> {
    let mut graphs = named_families(max_n);
    for seed in 0..count {
        graphs.push((format!("random seed {seed}"), random_connected(seed, 2..=max_n)));
    }
    graphs
}
