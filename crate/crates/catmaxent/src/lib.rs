//! Maximum-entropy modeling for categorical tuple spaces.
//!
//! Given a set of *pattern constraints* — assignments of values to attribute
//! subsets, each paired with a target probability — this crate fits the
//! exponential-form maximum-entropy distribution over the full categorical
//! tuple space, optionally constrained by per-attribute marginal frequencies.
//! Inference never enumerates tuples: the constraint set induces a partition
//! of the space into *blocks* (sets of tuples that satisfy the same
//! constraints), organized as a DAG under a containment partial order so that
//! block sizes and masses follow from inclusion–exclusion.
//!
//! On top of the fitted model the crate provides:
//!
//! - pattern-probability queries for arbitrary ad-hoc patterns ([`MaxEntModel::query`]),
//! - greedy constraint selection scored by a two-state KL heuristic with a
//!   BIC stopping rule ([`selection::select`]),
//! - reproducible synthetic-population sampling ([`sampler::sample`]),
//! - evaluation utilities: an approximate KL divergence over pattern sets, an
//!   independence baseline, a synthetic benchmark generator, and a brute-force
//!   reference fitter for enumerable spaces ([`eval`]).
//!
//! ## Quick example
//!
//! ```
//! use catmaxent::{AttributeDef, FitOptions, Pattern, PatternConstraint, Schema};
//!
//! let schema = Schema::new(vec![
//!     AttributeDef::new("age", ["young", "old"]),
//!     AttributeDef::new("income", ["low", "high"]),
//!     AttributeDef::new("region", ["north", "south"]),
//! ]).unwrap();
//! let pattern = Pattern::from_labels(&schema, [("age", "young"), ("income", "high")]).unwrap();
//! let constraint = PatternConstraint::new(pattern.clone(), 0.15).unwrap();
//!
//! let (model, report) = catmaxent::fit(&schema, &[constraint], None, &FitOptions::default()).unwrap();
//! assert!(report.converged);
//! let p = model.query(&pattern).unwrap();
//! assert!((p - 0.15).abs() < 1e-6);
//! ```
//!
//! The `examples/` directory walks through each capability; the `catmaxent`
//! binary wraps the same calls behind `fit`, `select`, `sample`, `query`,
//! `evaluate`, and `benchmark` subcommands.

#![forbid(unsafe_code)]

pub mod block_graph;
mod error;
pub mod eval;
pub mod io;
pub mod model;
pub mod sampler;
pub mod schema;
pub mod selection;

pub use error::{Error, Result};
pub use model::{fit, FitOptions, FitReport, MaxEntModel};
pub use schema::{
    validate_constraint_set, AttributeDef, Pattern, PatternConstraint, Schema, Tuple, TupleDataset,
};
