//! Combinatorial Heisenberg group actions on SU(2) conformal blocks of
//! trivalent graphs.
//!
//! Admissible weights are stored in doubled units `a = 2j`, so every
//! quantity the library computes is an exact integer or a GF(2) value.

pub mod cocycle;
pub mod embedding;
pub mod fixtures;
pub mod gf2;
pub mod graph;
pub mod heisenberg;
pub mod lattice;
pub mod nonplanar;
pub mod orbit;
pub mod verlinde;
pub mod weights;
