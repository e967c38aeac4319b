//! Chain complexes, chain maps, homotopies, the mapping cone with the
//! convention d(l, m) = (d l, -d m + f l), and coherent morphisms with their
//! induced cone maps and homotopies.

pub mod coherent;
pub mod complex;
pub mod cone;
pub mod homology;

pub use coherent::{
    compose_coherent, cone_functor_homotopy, cone_functor_map, CoherenceError,
    CoherentChainHomotopy, CoherentChainMorphism,
};
pub use complex::{
    direct_sum, summand_offsets, ChainComplex, ChainError, ChainHomotopy, ChainMap, Degree,
};
pub use cone::{cone_les, mapping_cone, MappingCone};
pub use homology::{
    connecting_hom, homology, homology_table, induced_between, induced_on_homology, is_acyclic,
    HomologyBasis, LongExactSequence,
};
