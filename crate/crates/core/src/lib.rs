//! Spectral certificates for spanning-tree packing with an extra forest,
//! checked against exact combinatorial oracles.

pub mod certify;
pub mod connectivity;
pub mod graph;
pub mod harness;
pub mod packing;
pub mod quotient;
pub mod rational;
pub mod spectra;
