//! Cost-optimal sensor placement and communication topology design for
//! distributed estimation of structurally full-rank linear systems.
//!
//! The design problem separates into two parts:
//!
//! - **sensing**: give each sensor one state to measure so that every parent
//!   SCC of the system digraph is measured, at minimum total measurement
//!   cost. This is a linear sum assignment over sensors and parent SCCs
//!   ([`sensing`]).
//! - **networking**: pick a strongly connected set of links from the
//!   candidate sensor network at minimum cost. Exact by spanning tree for
//!   undirected networks, a branching-union 2-approximation for directed
//!   ones ([`network`]).
//!
//! [`structural`] holds the graph checks that justify the split, and
//! [`verification`] tests the resulting designs on random numerical
//! realizations.
//!
//! ```
//! use sensornet::graph::json::parse_instance;
//! use sensornet::pipeline::{design, DesignOptions};
//!
//! let text = r#"{"n": 2, "m": 2, "A": [[1, 1], [2, 2]],
//!   "c": [{"sensor": 1, "state": 1, "cost": 1}, {"sensor": 1, "state": 2, "cost": 4},
//!         {"sensor": 2, "state": 1, "cost": 3}, {"sensor": 2, "state": 2, "cost": 1}],
//!   "net": {"undirected": true, "links": [{"from": 1, "to": 2, "cost": 2},
//!                                         {"from": 2, "to": 1, "cost": 2}]}}"#;
//! let instance = parse_instance(text).unwrap();
//! let outcome = design(&instance, DesignOptions::default()).unwrap();
//! assert_eq!(outcome.design.sensing_cost, 2.0);
//! assert_eq!(outcome.design.networking_cost, 4.0);
//! ```

pub mod error;
pub mod gen;
pub mod graph;
pub mod network;
pub mod pipeline;
pub mod seed;
pub mod sensing;
pub mod structural;
pub mod verification;

pub use error::{Error, Result};
