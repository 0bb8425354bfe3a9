//! Exact eccentric connectivity index computations on small graphs.
//!
//! The index of a connected graph is `ξᶜ(G) = Σ ε(v)·deg(v)` over its
//! vertices. This crate computes it with integer arithmetic, builds the
//! path, volcano, broom and lollipop families, evaluates the closed forms
//! for paths and volcano graphs, and checks the volcano lower bound
//! `ξᶜ(G) >= ξᶜ(V_{n,d})` exhaustively over small connected graphs and
//! trees.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod indices;
pub mod io;
pub mod structure;

pub use error::{Error, Result};
pub use graph::Graph;
pub use indices::{eci, eci_path_closed_form, eci_volcano_closed_form, EciValue};
