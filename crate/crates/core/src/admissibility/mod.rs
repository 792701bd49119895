//! Flourished graphs, admissibility and the GKdim of spaces with blocks.
//!
//! Every `≈`-component is classified on its own and the results are added.
//! A component with blocks is admissible when clauses (a)–(i) hold; its
//! GKdim is then `2|J|` plus the exact values of its T3 connections,
//! or a lower bound when those values are not supplied.

mod check;
mod gkdim;
mod graph;
mod patterns;

pub use crate::gkdim::{GKDim, GKValue};
pub use check::{
    check_admissible, classify, gkdim_blocky, gkdim_space, ComponentKind, ComponentVerdict, TableMatch, Verdict,
    Violation, UNKNOWN_FINITE_DIAGONAL,
};
pub use gkdim::Contributions;
pub use graph::{flourish, Connection, Copies, DiagComponent, EdgeLabel, FlEdge, FlNode, FlourishedGraph, NodeKind};
pub use patterns::{GhostCondition, PatternRow, PatternTable, RCondition, SmallGraph, Table};
