//! Exact verification of degenerations between low-dimensional Jordan
//! algebras: structure constants, invariants, degeneration witnesses,
//! non-degeneration certificates, second cohomology and degeneration graphs.

pub mod exact;
pub mod algebra;
pub mod cohomology;
pub mod invariants;
pub mod random;
pub mod degeneration;
pub mod nondegeneration;
pub mod graph;
