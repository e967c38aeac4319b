//! Coherent morphisms of chain maps and coherent homotopies between them,
//! with the functor they induce on mapping cones.
//!
//! A coherent morphism Phi: f -> g between chain maps f: L -> M and
//! g: P -> Q is a pair of chain maps phi1: L -> P, phi2: M -> Q plus a
//! homotopy phi12 between g.phi1 and phi2.f. The orientation used throughout
//! is
//!
//!   d phi12 + phi12 d = g phi1 - phi2 f,
//!
//! i.e. phi12 runs from phi2.f to g.phi1; this is the unique orientation for
//! which the induced cone map (l, m) |-> (phi1 l, phi2 m + phi12 l) commutes
//! with the cone differentials, and the constructors verify that identity
//! rather than assume it.
//!
//! A coherent homotopy D = (D1, D2, D12) between Phi and Psi consists of
//! homotopies D1: phi1 => psi1, D2: phi2 => psi2 and a degree-two corrector
//! satisfying d D12 - D12 d = g D1 - D2 f + phi12 - psi12. Its induced cone
//! homotopy (l, m) |-> (D1 l, -D2 m + D12 l) runs from Phi's cone map to
//! Psi's cone map: d D# + D# d = Psi# - Phi#.

use super::complex::{ChainError, ChainHomotopy, ChainMap, Degree};
use super::cone::MappingCone;
use crate::algebra::IntMatrix;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoherenceError {
    #[error("component endpoints do not match the two chain maps")]
    EndpointMismatch,
    #[error("the homotopy witness fails its identity: {0}")]
    IncoherentMorphism(ChainError),
    #[error("the degree-two corrector fails its identity at degree {0}")]
    IncoherentHomotopy(Degree),
}

/// A coherent morphism Phi: f -> g of chain maps.
#[derive(Clone, Debug)]
pub struct CoherentChainMorphism {
    f: ChainMap,
    g: ChainMap,
    phi1: ChainMap,
    phi2: ChainMap,
    phi12: ChainHomotopy,
}

impl CoherentChainMorphism {
    /// Build and verify a coherent morphism. `phi12_comps` are the witness
    /// components (degree n -> matrix Q_{n+1} x L_n); the coherence identity
    /// d phi12 + phi12 d = g phi1 - phi2 f is checked.
    pub fn new(
        f: ChainMap,
        g: ChainMap,
        phi1: ChainMap,
        phi2: ChainMap,
        phi12_comps: BTreeMap<Degree, IntMatrix>,
    ) -> Result<Self, CoherenceError> {
        if phi1.source() != f.source()
            || phi1.target() != g.source()
            || phi2.source() != f.target()
            || phi2.target() != g.target()
        {
            return Err(CoherenceError::EndpointMismatch);
        }
        let from = phi2.compose(&f).map_err(CoherenceError::IncoherentMorphism)?;
        let to = g.compose(&phi1).map_err(CoherenceError::IncoherentMorphism)?;
        let phi12 =
            ChainHomotopy::new(from, to, phi12_comps).map_err(CoherenceError::IncoherentMorphism)?;
        Ok(CoherentChainMorphism { f, g, phi1, phi2, phi12 })
    }

    /// Strict morphism: the square commutes on the nose, witness zero.
    pub fn strict(
        f: ChainMap,
        g: ChainMap,
        phi1: ChainMap,
        phi2: ChainMap,
    ) -> Result<Self, CoherenceError> {
        Self::new(f, g, phi1, phi2, BTreeMap::new())
    }

    pub fn identity(f: &ChainMap) -> Self {
        Self::strict(
            f.clone(),
            f.clone(),
            ChainMap::identity(f.source()),
            ChainMap::identity(f.target()),
        )
        .expect("identity square commutes")
    }

    pub fn f(&self) -> &ChainMap {
        &self.f
    }

    pub fn g(&self) -> &ChainMap {
        &self.g
    }

    pub fn phi1(&self) -> &ChainMap {
        &self.phi1
    }

    pub fn phi2(&self) -> &ChainMap {
        &self.phi2
    }

    pub fn phi12(&self) -> &ChainHomotopy {
        &self.phi12
    }

    pub fn is_strict(&self) -> bool {
        let src = self.f.source();
        (src.lo() - 1..=src.hi() + 1).all(|n| self.phi12.component(n).is_zero())
    }
}

/// The chain map C(f) -> C(g) induced by a coherent morphism:
/// (l, m) |-> (phi1 l, phi2 m + phi12 l). Commutation with the cone
/// differentials is verified by construction of the returned ChainMap.
pub fn cone_functor_map(phi: &CoherentChainMorphism) -> ChainMap {
    let cf = MappingCone::new(phi.f());
    let cg = MappingCone::new(phi.g());
    let mut comps = BTreeMap::new();
    let lo = cf.complex().lo().min(cg.complex().lo());
    let hi = cf.complex().hi().max(cg.complex().hi());
    for n in lo..=hi {
        let a = phi.phi1.component(n - 1);
        let b = phi.phi2.component(n);
        let c = phi.phi12.component(n - 1);
        let block = IntMatrix::from_blocks(
            &[cg.source_rank_at(n), cg.target_rank_at(n)],
            &[cf.source_rank_at(n), cf.target_rank_at(n)],
            &[vec![Some(&a), None], vec![Some(&c), Some(&b)]],
        );
        comps.insert(n, block);
    }
    ChainMap::new(cf.complex().clone(), cg.complex().clone(), comps)
        .expect("induced cone map commutes with the cone differentials")
}

/// A coherent homotopy D between coherent morphisms Phi, Psi: f -> g.
#[derive(Clone, Debug)]
pub struct CoherentChainHomotopy {
    phi: CoherentChainMorphism,
    psi: CoherentChainMorphism,
    d1: ChainHomotopy,
    d2: ChainHomotopy,
    d12: BTreeMap<Degree, IntMatrix>,
}

impl CoherentChainHomotopy {
    pub fn new(
        phi: CoherentChainMorphism,
        psi: CoherentChainMorphism,
        d1_comps: BTreeMap<Degree, IntMatrix>,
        d2_comps: BTreeMap<Degree, IntMatrix>,
        d12: BTreeMap<Degree, IntMatrix>,
    ) -> Result<Self, CoherenceError> {
        if phi.f != psi.f || phi.g != psi.g {
            return Err(CoherenceError::EndpointMismatch);
        }
        let d1 = ChainHomotopy::new(phi.phi1.clone(), psi.phi1.clone(), d1_comps)
            .map_err(CoherenceError::IncoherentMorphism)?;
        let d2 = ChainHomotopy::new(phi.phi2.clone(), psi.phi2.clone(), d2_comps)
            .map_err(CoherenceError::IncoherentMorphism)?;
        let h = CoherentChainHomotopy { phi, psi, d1, d2, d12 };
        h.check_degree_two_identity()?;
        Ok(h)
    }

    fn d12_component(&self, n: Degree) -> IntMatrix {
        let l = self.phi.f.source();
        let q = self.phi.g.target();
        self.d12
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(q.rank(n + 2), l.rank(n)))
    }

    /// d D12 - D12 d = g D1 - D2 f + phi12 - psi12, degree by degree.
    fn check_degree_two_identity(&self) -> Result<(), CoherenceError> {
        let l = self.phi.f.source();
        let q = self.phi.g.target();
        let g = &self.phi.g;
        let f = &self.phi.f;
        let lo = l.lo().min(q.lo()) - 2;
        let hi = l.hi().max(q.hi()) + 2;
        for n in lo..=hi {
            let lhs = q
                .differential(n + 2)
                .mul(&self.d12_component(n))
                .sub(&self.d12_component(n - 1).mul(&l.differential(n)));
            let rhs = g
                .component(n + 1)
                .mul(&self.d1.component(n))
                .sub(&self.d2.component(n).mul(&f.component(n)))
                .add(&self.phi.phi12.component(n))
                .sub(&self.psi.phi12.component(n));
            if lhs != rhs {
                return Err(CoherenceError::IncoherentHomotopy(n));
            }
        }
        Ok(())
    }

    pub fn phi(&self) -> &CoherentChainMorphism {
        &self.phi
    }

    pub fn psi(&self) -> &CoherentChainMorphism {
        &self.psi
    }

    pub fn d1(&self) -> &ChainHomotopy {
        &self.d1
    }

    pub fn d2(&self) -> &ChainHomotopy {
        &self.d2
    }
}

/// The cone homotopy induced by a coherent homotopy:
/// (l, m) |-> (D1 l, -D2 m + D12 l), a homotopy from cone_functor_map(Phi)
/// to cone_functor_map(Psi). The identity d D# + D# d = Psi# - Phi# is
/// verified by the ChainHomotopy constructor.
pub fn cone_functor_homotopy(d: &CoherentChainHomotopy) -> ChainHomotopy {
    let from = cone_functor_map(&d.phi);
    let to = cone_functor_map(&d.psi);
    let cf = MappingCone::new(d.phi.f());
    let cg = MappingCone::new(d.phi.g());
    let mut comps = BTreeMap::new();
    let lo = cf.complex().lo().min(cg.complex().lo()) - 1;
    let hi = cf.complex().hi().max(cg.complex().hi()) + 1;
    for n in lo..=hi {
        let a = d.d1.component(n - 1);
        let b = d.d2.component(n).neg();
        let c = d.d12_component(n - 1);
        let block = IntMatrix::from_blocks(
            &[cg.source_rank_at(n + 1), cg.target_rank_at(n + 1)],
            &[cf.source_rank_at(n), cf.target_rank_at(n)],
            &[vec![Some(&a), None], vec![Some(&c), Some(&b)]],
        );
        comps.insert(n, block);
    }
    ChainHomotopy::new(from, to, comps)
        .expect("induced cone homotopy satisfies d D + D d = Psi# - Phi#")
}

/// Composite of coherent morphisms (psi: g -> h) after (phi: f -> g), with
/// corrector psi12 . phi1 + psi2 . phi12. The coherence identity of the
/// composite is re-verified by the constructor.
pub fn compose_coherent(
    psi: &CoherentChainMorphism,
    phi: &CoherentChainMorphism,
) -> Result<CoherentChainMorphism, CoherenceError> {
    if psi.f != phi.g {
        return Err(CoherenceError::EndpointMismatch);
    }
    let theta1 = psi.phi1.compose(&phi.phi1).map_err(CoherenceError::IncoherentMorphism)?;
    let theta2 = psi.phi2.compose(&phi.phi2).map_err(CoherenceError::IncoherentMorphism)?;
    let l = phi.f.source();
    let s = psi.g.target();
    let mut corrector = BTreeMap::new();
    for n in l.lo().min(s.lo()) - 1..=l.hi().max(s.hi()) + 1 {
        let a = psi.phi12.component(n).mul(&phi.phi1.component(n));
        let b = psi.phi2.component(n + 1).mul(&phi.phi12.component(n));
        corrector.insert(n, a.add(&b));
    }
    CoherentChainMorphism::new(phi.f.clone(), psi.g.clone(), theta1, theta2, corrector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::complex::fixtures::{circle, circle_degree_two, point};
    use crate::chain::complex::ChainComplex;
    use crate::chain::homology::induced_on_homology;

    /// A nonstrict coherent morphism on rank-1 two-term complexes where the
    /// square commutes only up to homotopy.
    fn rank_one_nonstrict() -> CoherentChainMorphism {
        // f = id on (Z -2-> Z), g = id on the same; phi1 = id perturbed by a
        // homotopy so the square commutes only up to the corrector.
        let c = ChainComplex::two_term(1, IntMatrix::from_rows(&[&[2]])).unwrap();
        let f = ChainMap::identity(&c);
        let g = f.clone();
        // homotopy k: degree 0 -> degree 1, k = [3]
        let mut k = BTreeMap::new();
        k.insert(0, IntMatrix::from_rows(&[&[3]]));
        let h = ChainHomotopy::from_components(&ChainMap::identity(&c), k).unwrap();
        let phi1 = h.to_map().clone();
        let phi2 = ChainMap::identity(&c);
        // corrector: g . k witnesses phi2 f => g phi1
        let mut w = BTreeMap::new();
        w.insert(0, h.component(0));
        CoherentChainMorphism::new(f, g, phi1, phi2, w).unwrap()
    }

    #[test]
    fn identity_morphism_induces_identity_cone_map() {
        let f = circle_degree_two();
        let phi = CoherentChainMorphism::identity(&f);
        let m = cone_functor_map(&phi);
        for n in m.source().support() {
            assert!(m.component(n).is_identity());
        }
    }

    #[test]
    fn strict_morphism_gives_block_diagonal() {
        // inclusion of f = id_point into g = id_(point + circle)
        let p = point();
        let s = p.direct_sum(&circle());
        let f = ChainMap::identity(&p);
        let g = ChainMap::identity(&s);
        let incl = ChainMap::from_fn(p.clone(), s.clone(), |n| {
            IntMatrix::from_fn(s.rank(n), p.rank(n), |i, j| {
                if i == j {
                    crate::algebra::Int::from(1)
                } else {
                    crate::algebra::Int::from(0)
                }
            })
        })
        .unwrap();
        let phi = CoherentChainMorphism::strict(f, g, incl.clone(), incl).unwrap();
        assert!(phi.is_strict());
        let m = cone_functor_map(&phi);
        // the corrector block is zero
        assert_eq!(m.component(1).take_rows(1, 5).column(0), vec![crate::algebra::Int::from(0); 4]);
    }

    #[test]
    fn nonstrict_morphism_still_induces_chain_map() {
        let phi = rank_one_nonstrict();
        assert!(!phi.is_strict());
        // constructor of the returned ChainMap verifies commutation
        let _ = cone_functor_map(&phi);
    }

    #[test]
    fn wrong_witness_is_rejected() {
        let c = ChainComplex::two_term(1, IntMatrix::from_rows(&[&[2]])).unwrap();
        let f = ChainMap::identity(&c);
        let mut k = BTreeMap::new();
        k.insert(0, IntMatrix::from_rows(&[&[3]]));
        let h = ChainHomotopy::from_components(&ChainMap::identity(&c), k).unwrap();
        let phi1 = h.to_map().clone();
        // claim strictness although the square only commutes up to homotopy
        let bad = CoherentChainMorphism::strict(f.clone(), f, phi1, ChainMap::identity(&c));
        assert!(matches!(bad, Err(CoherenceError::IncoherentMorphism(_))));
    }

    #[test]
    fn zero_coherent_homotopy() {
        let f = circle_degree_two();
        let phi = CoherentChainMorphism::identity(&f);
        let d = CoherentChainHomotopy::new(
            phi.clone(),
            phi,
            BTreeMap::new(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let h = cone_functor_homotopy(&d);
        for n in -1..=3 {
            assert!(h.component(n).is_zero());
        }
    }

    #[test]
    fn compose_with_identity_is_identity() {
        let phi = rank_one_nonstrict();
        let idg = CoherentChainMorphism::identity(phi.g());
        let idf = CoherentChainMorphism::identity(phi.f());
        let left = compose_coherent(&idg, &phi).unwrap();
        let right = compose_coherent(&phi, &idf).unwrap();
        for n in -1..=2 {
            assert_eq!(left.phi1().component(n), phi.phi1().component(n));
            assert_eq!(left.phi12().component(n), phi.phi12().component(n));
            assert_eq!(right.phi12().component(n), phi.phi12().component(n));
        }
    }

    #[test]
    fn functoriality_on_cone_maps_is_exact() {
        let phi = rank_one_nonstrict();
        let psi = rank_one_nonstrict();
        let comp = compose_coherent(&psi, &phi).unwrap();
        let lhs = cone_functor_map(&comp);
        let rhs = cone_functor_map(&psi).compose(&cone_functor_map(&phi)).unwrap();
        for n in -1..=3 {
            assert_eq!(lhs.component(n), rhs.component(n));
        }
    }

    #[test]
    fn homotopic_morphisms_induce_equal_maps_on_cone_homology() {
        // perturb the identity coherent morphism by arbitrary (D1, D2, D12)
        let f = circle_degree_two();
        let phi = CoherentChainMorphism::identity(&f);
        let c = f.source().clone();
        let mut d1 = BTreeMap::new();
        d1.insert(0, IntMatrix::from_rows(&[&[1, -2, 0], &[0, 1, 1], &[2, 0, 1]]));
        let h1 = ChainHomotopy::from_components(phi.phi1(), d1.clone()).unwrap();
        let psi1 = h1.to_map().clone();
        // build psi12 so the coherence identity holds:
        // psi12 = g D1 - D2 f + phi12 - (d D12 - D12 d) with D2 = 0, D12 = 0
        let g = phi.g().clone();
        let mut psi12 = BTreeMap::new();
        for n in -1..=2 {
            psi12.insert(n, g.component(n + 1).mul(&h1.component(n)));
        }
        let psi =
            CoherentChainMorphism::new(f.clone(), g, psi1, phi.phi2().clone(), psi12).unwrap();
        let d = CoherentChainHomotopy::new(
            phi.clone(),
            psi.clone(),
            d1,
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let _ = cone_functor_homotopy(&d);
        let mp = cone_functor_map(&phi);
        let mq = cone_functor_map(&psi);
        for n in c.lo()..=c.hi() + 1 {
            let a = induced_on_homology(&mp, n);
            let b = induced_on_homology(&mq, n);
            assert!(a.equals(&b), "induced maps differ in degree {n}");
        }
    }
}
