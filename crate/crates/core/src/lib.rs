//! s-shunt intersection graphs.
//!
//! For a simple graph `G` and `s >= 1`, the s-shunt intersection graph
//! `A_s(G)` has one vertex per s-arc on distinct vertices that can be
//! shunted one step along an `(s + 1)`-arc on distinct vertices, and joins
//! two such arcs when they share a host vertex.
//!
//! The crate builds these graphs ([`ssi`]), evaluates closed-form
//! predictions of their order, size and degrees ([`formulas`]), and checks a
//! catalogue of structural claims about them against arbitrary hosts and
//! exhaustive corpora ([`theorems`], [`harness`]).

pub mod arcs;
pub mod detour;
pub mod domination;
pub mod formulas;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod iso;
pub mod ssi;
pub mod theorems;

pub use arcs::{Arc, ShuntDigraph};
pub use detour::DetourProfile;
pub use graph::{DegreeProfile, Graph, GraphError, Regularity, TriangleProfile};
pub use ssi::{build_ssi, SsiGraph};
pub use theorems::{TheoremId, Verdict, VerificationReport, Witness};
