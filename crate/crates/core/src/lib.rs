//! Hitting times of simple random walks on graphs, computed exactly by
//! several independent routes and cross-checked against each other.
//!
//! The exact routes are a first-step linear solve, a sum of spanning-tree
//! counts over simple paths, the vertex-weighted invariants `R` and `Z`,
//! and effective resistances. Two floating-point routes go through the
//! spectrum of the normalized Laplacian, and a seeded Monte Carlo estimate
//! rounds things off.
//!
//! ```
//! use hitlab::generators::{generate_family, Family};
//! use hitlab::hitting::{hit_exact, ExactMethod};
//! use hitlab::graph::DEFAULT_PATH_CAP;
//!
//! let g = generate_family(&Family::Lollipop { m: 3, n: 3 }).unwrap();
//! let h = hit_exact(&g, 0, 5, ExactMethod::Spanning, DEFAULT_PATH_CAP).unwrap();
//! assert_eq!(h, hitlab::BigRational::from_integer(29.into()));
//! ```

// Index loops read better than iterator chains in the matrix code.
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hitting;
pub mod invariants;
pub mod linalg;

pub use error::{Error, Result};
pub use graph::{Graph, MultiGraph, SimplePath, WeightedGraph};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
