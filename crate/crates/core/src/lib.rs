//! Exact-arithmetic homology of chain-map towers.
//!
//! The crate computes integral homology of bounded chain complexes, mapping
//! cones with the sign convention d(l, m) = (d l, -d m + f l), coherent
//! morphisms of chain maps and their induced cone maps, finite truncations of
//! inverse sequences with their shift-difference maps, strong homology groups
//! with the sigma/boundary exact sequences, and lim / lim^1 of towers of
//! finitely generated abelian groups including Mittag-Leffler detection.
//! Everything runs over arbitrary-precision integers and every structural
//! identity is machine-verified at construction time.

pub mod algebra;
pub mod chain;
pub mod generators;
pub mod io;
pub mod limits;
pub mod report;
pub mod simplicial;
pub mod tower;
