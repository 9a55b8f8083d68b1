//! Finite-scale workbench for Turán and Zarankiewicz problems of degenerate graphs and
//! 3-graphs: finite fields and norm graphs, expansion patterns, exact containment search,
//! exact extremal-number solvers, d-full extraction, and the boundedness experiments built
//! on top of them.

pub mod bitset;
pub mod constructions;
pub mod ff;
pub mod fullness;
pub mod harness;
pub mod hypergraph;
pub mod io;
pub mod par;
pub mod patterns;
pub mod solvers;
