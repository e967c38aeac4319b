//! Finite truncations of inverse sequences of chain complexes and of chain
//! maps: product complexes, the shift-difference maps, the sigma/boundary
//! short exact sequence with its exactness certificate, strong homology
//! groups, the long exact sequence, and morphisms of map towers.
//!
//! Truncation convention: a tower X_1 <- X_2 <- ... <- X_N has its
//! shift-difference map go from the product over levels 1..N to the product
//! over levels 1..N-1, with no wrap-around term at level N. This keeps the
//! map degreewise surjective with kernel the last level, which is the finite
//! analogue of the infinite construction (lim = last level, lim^1 = 0).

use crate::algebra::{kernel_basis, lattices_equal, FgAbGroup, Homomorphism, IntMatrix};
use crate::chain::{
    connecting_hom, direct_sum, induced_between, mapping_cone, summand_offsets, ChainComplex,
    ChainMap, Degree, HomologyBasis, LongExactSequence, MappingCone,
};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("tower needs at least {needed} levels, got {got}")]
    TowerTooShort { needed: usize, got: usize },
    #[error("bond {0} endpoints do not match adjacent levels")]
    BondMismatch(usize),
    #[error("towers have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("level map {0} square with the bonds does not commute")]
    SquareMismatch(usize),
    #[error("level {0} morphism data is inconsistent")]
    LevelMorphism(usize),
}

/// A finite inverse sequence of chain complexes X_1 <- X_2 <- ... <- X_N.
/// bonds[i]: levels[i+1] -> levels[i].
#[derive(Clone, Debug)]
pub struct Tower {
    levels: Vec<ChainComplex>,
    bonds: Vec<ChainMap>,
}

impl Tower {
    pub fn new(levels: Vec<ChainComplex>, bonds: Vec<ChainMap>) -> Result<Self, TowerError> {
        assert!(!levels.is_empty(), "a tower has at least one level");
        if bonds.len() + 1 != levels.len() {
            return Err(TowerError::LengthMismatch(levels.len(), bonds.len() + 1));
        }
        for (i, b) in bonds.iter().enumerate() {
            if b.source() != &levels[i + 1] || b.target() != &levels[i] {
                return Err(TowerError::BondMismatch(i));
            }
        }
        Ok(Tower { levels, bonds })
    }

    /// The constant tower on one complex with identity bonds.
    pub fn constant(c: &ChainComplex, n: usize) -> Self {
        assert!(n >= 1);
        Tower {
            levels: vec![c.clone(); n],
            bonds: vec![ChainMap::identity(c); n - 1],
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self, i: usize) -> &ChainComplex {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[ChainComplex] {
        &self.levels
    }

    pub fn bond(&self, i: usize) -> &ChainMap {
        &self.bonds[i]
    }

    pub fn bonds(&self) -> &[ChainMap] {
        &self.bonds
    }

    /// The truncation to the first k levels (k >= 1).
    pub fn truncate(&self, k: usize) -> Tower {
        assert!(k >= 1 && k <= self.len());
        Tower {
            levels: self.levels[..k].to_vec(),
            bonds: self.bonds[..k - 1].to_vec(),
        }
    }
}

/// The product complex over all levels of the truncation, one block per
/// level in order.
pub fn product_complex(t: &Tower) -> ChainComplex {
    direct_sum(t.levels())
}

/// The shift-difference chain map of a tower:
/// (c_1, ..., c_N) |-> (p_i(c_{i+1}) - c_i)_{i=1..N-1},
/// from the product over levels 1..N to the product over levels 1..N-1.
pub fn shift_difference(t: &Tower) -> Result<ChainMap, TowerError> {
    let n = t.len();
    if n < 2 {
        return Err(TowerError::TowerTooShort { needed: 2, got: n });
    }
    let source = product_complex(t);
    let target = product_complex(&t.truncate(n - 1));
    let mut comps = BTreeMap::new();
    let lo = source.lo().min(target.lo());
    let hi = source.hi().max(target.hi());
    for deg in lo..=hi {
        let src_offs = summand_offsets(t.levels(), deg);
        let tgt_offs = summand_offsets(&t.levels()[..n - 1], deg);
        let mut m = IntMatrix::zero(target.rank(deg), source.rank(deg));
        for i in 0..n - 1 {
            // -identity on block (i, i)
            for r in 0..t.level(i).rank(deg) {
                m[(tgt_offs[i] + r, src_offs[i] + r)] = -crate::algebra::Int::from(1);
            }
            // bond component on block (i, i+1)
            let b = t.bond(i).component(deg);
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    if !b[(r, c)].is_zero() {
                        m[(tgt_offs[i] + r, src_offs[i + 1] + c)] = b[(r, c)].clone();
                    }
                }
            }
        }
        comps.insert(deg, m);
    }
    ChainMap::new(source, target, comps).map_err(|_| TowerError::BondMismatch(0))
}

/// A levelwise map of towers f_i: X_i -> X'_i whose squares with the bonds
/// commute on the nose (checked).
#[derive(Clone, Debug)]
pub struct MapTower {
    domain: Tower,
    codomain: Tower,
    maps: Vec<ChainMap>,
}

impl MapTower {
    pub fn new(domain: Tower, codomain: Tower, maps: Vec<ChainMap>) -> Result<Self, TowerError> {
        if domain.len() != codomain.len() {
            return Err(TowerError::LengthMismatch(domain.len(), codomain.len()));
        }
        if maps.len() != domain.len() {
            return Err(TowerError::LengthMismatch(maps.len(), domain.len()));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.source() != domain.level(i) || f.target() != codomain.level(i) {
                return Err(TowerError::SquareMismatch(i));
            }
        }
        for i in 0..domain.len() - 1 {
            let left = maps[i].compose(domain.bond(i)).expect("endpoints checked");
            let right = codomain.bond(i).compose(&maps[i + 1]).expect("endpoints checked");
            if left != right {
                return Err(TowerError::SquareMismatch(i));
            }
        }
        Ok(MapTower { domain, codomain, maps })
    }

    /// The constant map tower on a single chain map with identity bonds.
    pub fn constant(f: &ChainMap, n: usize) -> Self {
        MapTower {
            domain: Tower::constant(f.source(), n),
            codomain: Tower::constant(f.target(), n),
            maps: vec![f.clone(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn domain(&self) -> &Tower {
        &self.domain
    }

    pub fn codomain(&self) -> &Tower {
        &self.codomain
    }

    pub fn level_map(&self, i: usize) -> &ChainMap {
        &self.maps[i]
    }

    pub fn truncate(&self, k: usize) -> MapTower {
        MapTower {
            domain: self.domain.truncate(k),
            codomain: self.codomain.truncate(k),
            maps: self.maps[..k].to_vec(),
        }
    }

    /// The tower of levelwise mapping cones C(f_i) with the strict cone
    /// bonds (l, m) |-> (p l, p' m).
    pub fn cone_tower(&self) -> Tower {
        let cones: Vec<MappingCone> = self.maps.iter().map(mapping_cone).collect();
        let levels: Vec<ChainComplex> = cones.iter().map(|c| c.complex().clone()).collect();
        let mut bonds = Vec::new();
        for i in 0..self.len() - 1 {
            let src = &cones[i + 1];
            let tgt = &cones[i];
            let p = self.domain.bond(i);
            let q = self.codomain.bond(i);
            let mut comps = BTreeMap::new();
            let lo = src.complex().lo().min(tgt.complex().lo());
            let hi = src.complex().hi().max(tgt.complex().hi());
            for n in lo..=hi {
                let a = p.component(n - 1);
                let b = q.component(n);
                let m = IntMatrix::from_blocks(
                    &[tgt.source_rank_at(n), tgt.target_rank_at(n)],
                    &[src.source_rank_at(n), src.target_rank_at(n)],
                    &[vec![Some(&a), None], vec![None, Some(&b)]],
                );
                comps.insert(n, m);
            }
            bonds.push(
                ChainMap::new(src.complex().clone(), tgt.complex().clone(), comps)
                    .expect("strict cone bond is a chain map"),
            );
        }
        Tower::new(levels, bonds).expect("cone tower endpoints line up")
    }
}

/// The pair shift-difference map on the product of levelwise cones,
/// acting blockwise on cone coordinates. Equals the shift-difference of the
/// cone tower.
pub fn pair_shift_difference(f: &MapTower) -> Result<ChainMap, TowerError> {
    shift_difference(&f.cone_tower())
}

/// Strong homology of a map tower: H_{n+1} of the cone of the pair
/// shift-difference map.
pub fn strong_homology(f: &MapTower, n: Degree) -> Result<FgAbGroup, TowerError> {
    Ok(strong_homology_basis(f, n)?.group)
}

pub(crate) fn strong_homology_basis(f: &MapTower, n: Degree) -> Result<HomologyBasis, TowerError> {
    let pp = pair_shift_difference(f)?;
    let cone = mapping_cone(&pp);
    Ok(HomologyBasis::new(cone.complex(), n + 1))
}

/// Strong homology of a tower of complexes: H_{n+1} of the cone of its
/// shift-difference map.
pub fn tower_strong_homology(t: &Tower, n: Degree) -> Result<FgAbGroup, TowerError> {
    let p = shift_difference(t)?;
    let cone = mapping_cone(&p);
    Ok(crate::chain::homology(cone.complex(), n + 1))
}

/// The short exact sequence of cones
/// 0 -> C(P') -sigma-> C(P, P') -boundary-> C(P).shift(1) -> 0
/// together with the degreewise exactness certificate.
#[derive(Clone, Debug)]
pub struct SigmaPartialSes {
    pub sigma: ChainMap,
    pub partial: ChainMap,
    pub certificate: SesCertificate,
}

/// The four checks of the exactness proof, degree by degree: sigma mono,
/// boundary epi, boundary . sigma = 0, ker boundary = im sigma. All are
/// exact lattice statements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesCertificate {
    pub degrees: Vec<Degree>,
    pub sigma_injective: Vec<bool>,
    pub partial_surjective: Vec<bool>,
    pub composite_zero: Vec<bool>,
    pub kernel_equals_image: Vec<bool>,
}

impl SesCertificate {
    pub fn all_pass(&self) -> bool {
        self.sigma_injective.iter().all(|&b| b)
            && self.partial_surjective.iter().all(|&b| b)
            && self.composite_zero.iter().all(|&b| b)
            && self.kernel_equals_image.iter().all(|&b| b)
    }
}

/// Build the sigma / boundary maps for a map tower.
///
/// sigma embeds the codomain-cone coordinates into the pair-cone with the
/// alternating signs ((0, (-1)^n a), (0, (-1)^{n+1} b)) in total degree n;
/// this is the unique sign choice making the embedding a chain map for this
/// cone convention, and its image is the plain coordinate embedding in every
/// degree. The boundary map is the coordinate projection onto the
/// domain-cone, realized as a chain map to the shift by one.
pub fn sigma_partial_ses(f: &MapTower) -> Result<SigmaPartialSes, TowerError> {
    let n_levels = f.len();
    if n_levels < 2 {
        return Err(TowerError::TowerTooShort { needed: 2, got: n_levels });
    }
    let p = shift_difference(f.domain())?;
    let p_prime = shift_difference(f.codomain())?;
    let pp = pair_shift_difference(f)?;

    let cone_p = mapping_cone(&p);
    let cone_p_prime = mapping_cone(&p_prime);
    let cone_pp = mapping_cone(&pp);

    let sigma = build_sigma(f, &cone_p_prime, &cone_pp);
    let partial = build_partial(f, &cone_pp, &cone_p);

    let lo = cone_pp.complex().lo() - 1;
    let hi = cone_pp.complex().hi() + 1;
    let mut cert = SesCertificate {
        degrees: (lo..=hi).collect(),
        sigma_injective: Vec::new(),
        partial_surjective: Vec::new(),
        composite_zero: Vec::new(),
        kernel_equals_image: Vec::new(),
    };
    for deg in lo..=hi {
        let s = sigma.component(deg);
        let b = partial.component(deg);
        cert.sigma_injective.push(kernel_basis(&s).cols() == 0);
        cert.partial_surjective.push(crate::algebra::cokernel(&b).is_trivial());
        cert.composite_zero.push(b.mul(&s).is_zero());
        let ker = kernel_basis(&b);
        cert.kernel_equals_image.push(lattices_equal(&ker, &s));
    }
    Ok(SigmaPartialSes { sigma, partial, certificate: cert })
}

/// Per-level (offset, domain_rank, codomain_rank) of the cone-coordinate
/// blocks of K(f) at total degree m, over the first `levels` levels.
fn cone_block_layout(f: &MapTower, levels: usize, m: Degree) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(levels);
    let mut off = 0;
    for i in 0..levels {
        let dr = f.domain().level(i).rank(m - 1);
        let cr = f.codomain().level(i).rank(m);
        out.push((off, dr, cr));
        off += dr + cr;
    }
    out
}

fn build_sigma(f: &MapTower, cone_p_prime: &MappingCone, cone_pp: &MappingCone) -> ChainMap {
    let n_levels = f.len();
    let mut comps = BTreeMap::new();
    let lo = cone_pp.complex().lo().min(cone_p_prime.complex().lo());
    let hi = cone_pp.complex().hi().max(cone_p_prime.complex().hi());
    for deg in lo..=hi {
        let mut m = IntMatrix::zero(cone_pp.complex().rank(deg), cone_p_prime.complex().rank(deg));
        let sign_first = if deg.rem_euclid(2) == 0 { 1i64 } else { -1i64 };
        // first slot: K(X')_{deg-1} over levels 1..N -> K(f)_{deg-1} over levels 1..N
        let src_first_offs = summand_offsets(f.codomain().levels(), deg - 1);
        let tgt_first_layout = cone_block_layout(f, n_levels, deg - 1);
        for i in 0..n_levels {
            let rk = f.codomain().level(i).rank(deg - 1);
            let (toff, dr, _) = tgt_first_layout[i];
            for r in 0..rk {
                m[(toff + dr + r, src_first_offs[i] + r)] = crate::algebra::Int::from(sign_first);
            }
        }
        // second slot: K(X')_deg over levels 1..N-1 -> K(f)_deg over levels 1..N-1
        let src_second_base: usize =
            f.codomain().levels().iter().map(|c| c.rank(deg - 1)).sum();
        let tgt_second_base: usize = (0..n_levels)
            .map(|i| f.domain().level(i).rank(deg - 2) + f.codomain().level(i).rank(deg - 1))
            .sum();
        let src_second_offs = summand_offsets(&f.codomain().levels()[..n_levels - 1], deg);
        let tgt_second_layout = cone_block_layout(f, n_levels - 1, deg);
        for i in 0..n_levels - 1 {
            let rk = f.codomain().level(i).rank(deg);
            let (toff, dr, _) = tgt_second_layout[i];
            for r in 0..rk {
                m[(tgt_second_base + toff + dr + r, src_second_base + src_second_offs[i] + r)] =
                    crate::algebra::Int::from(-sign_first);
            }
        }
        comps.insert(deg, m);
    }
    ChainMap::new(cone_p_prime.complex().clone(), cone_pp.complex().clone(), comps)
        .expect("sign-corrected sigma is a chain map")
}

fn build_partial(f: &MapTower, cone_pp: &MappingCone, cone_p: &MappingCone) -> ChainMap {
    let n_levels = f.len();
    let shifted = cone_p.complex().shift(1);
    let mut comps = BTreeMap::new();
    let lo = cone_pp.complex().lo().min(shifted.lo());
    let hi = cone_pp.complex().hi().max(shifted.hi());
    for deg in lo..=hi {
        // target degree deg of the shift = cone_p degree deg-1:
        //   (K(X)_{deg-2} over 1..N | K(X)_{deg-1} over 1..N-1)
        let mut m = IntMatrix::zero(shifted.rank(deg), cone_pp.complex().rank(deg));
        // first slot: project K(f)_{deg-1} (levels 1..N) onto its domain parts
        let src_first_layout = cone_block_layout(f, n_levels, deg - 1);
        let tgt_first_offs = summand_offsets(f.domain().levels(), deg - 2);
        for i in 0..n_levels {
            let rk = f.domain().level(i).rank(deg - 2);
            let (soff, _, _) = src_first_layout[i];
            for r in 0..rk {
                m[(tgt_first_offs[i] + r, soff + r)] = crate::algebra::Int::from(1);
            }
        }
        // second slot: project K(f)_deg (levels 1..N-1) onto domain parts
        let src_second_base: usize = (0..n_levels)
            .map(|i| f.domain().level(i).rank(deg - 2) + f.codomain().level(i).rank(deg - 1))
            .sum();
        let tgt_second_base: usize =
            f.domain().levels().iter().map(|c| c.rank(deg - 2)).sum();
        let src_second_layout = cone_block_layout(f, n_levels - 1, deg);
        let tgt_second_offs = summand_offsets(&f.domain().levels()[..n_levels - 1], deg - 1);
        for i in 0..n_levels - 1 {
            let rk = f.domain().level(i).rank(deg - 1);
            let (soff, _, _) = src_second_layout[i];
            for r in 0..rk {
                m[(tgt_second_base + tgt_second_offs[i] + r, src_second_base + soff + r)] =
                    crate::algebra::Int::from(1);
            }
        }
        comps.insert(deg, m);
    }
    ChainMap::new(cone_pp.complex().clone(), shifted, comps)
        .expect("coordinate projection commutes with the cone differentials")
}

/// The long exact sequence
///   ... -> Hs_n(X') -sigma*-> Hs_n(f) -partial*-> Hs_{n-1}(X) -E-> Hs_{n-1}(X') -> ...
/// where Hs_n(X') = H_{n+1}(C(P')), Hs_n(f) = H_{n+1}(C(P,P')) and
/// Hs_{n-1}(X) = H_n(C(P)); E is the snake connecting map of the SES.
pub fn long_exact_sequence(
    f: &MapTower,
    degrees: std::ops::RangeInclusive<Degree>,
) -> Result<LongExactSequence, TowerError> {
    let ses = sigma_partial_ses(f)?;
    let cone_p_prime = ses.sigma.source().clone();
    let cone_pp = ses.sigma.target().clone();
    let shifted_cone_p = ses.partial.target().clone();

    let mut labels = Vec::new();
    let mut groups = Vec::new();
    let mut maps = Vec::new();
    let hi = *degrees.end();
    let lo = *degrees.start();
    for n in (lo..=hi).rev() {
        let h_xp = HomologyBasis::new(&cone_p_prime, n + 1);
        let h_f = HomologyBasis::new(&cone_pp, n + 1);
        let h_x = HomologyBasis::new(&shifted_cone_p, n + 1);
        if groups.is_empty() {
            labels.push(format!("Hs_{}(codomain)", n));
            groups.push(h_xp.group.clone());
        }
        maps.push(induced_between(&ses.sigma.component(n + 1), &h_xp, &h_f));
        labels.push(format!("Hs_{}(pair)", n));
        groups.push(h_f.group.clone());
        maps.push(induced_between(&ses.partial.component(n + 1), &h_f, &h_x));
        labels.push(format!("Hs_{}(domain)", n - 1));
        groups.push(h_x.group.clone());
        maps.push(connecting_hom(&ses.sigma, &ses.partial, n + 1));
        labels.push(format!("Hs_{}(codomain)", n - 1));
        groups.push(HomologyBasis::new(&cone_p_prime, n).group.clone());
    }
    Ok(LongExactSequence::new(labels, groups, maps))
}

/// A morphism of map towers: levelwise pairs (phi_i, phi'_i) with optional
/// per-level correctors w_i witnessing the square g_i phi_i ~ phi'_i f_i up
/// to homotopy, strictly commuting with the bonds (including the corrector
/// compatibility q'_i w_{i+1} = w_i p_i needed for the induced map on the
/// big cones).
#[derive(Clone, Debug)]
pub struct TowerMorphism {
    source: MapTower,
    target: MapTower,
    domain_maps: Vec<ChainMap>,
    codomain_maps: Vec<ChainMap>,
    correctors: Vec<BTreeMap<Degree, IntMatrix>>,
}

impl TowerMorphism {
    pub fn new(
        source: MapTower,
        target: MapTower,
        domain_maps: Vec<ChainMap>,
        codomain_maps: Vec<ChainMap>,
        correctors: Option<Vec<BTreeMap<Degree, IntMatrix>>>,
    ) -> Result<Self, TowerError> {
        let n = source.len();
        if target.len() != n {
            return Err(TowerError::LengthMismatch(n, target.len()));
        }
        if domain_maps.len() != n || codomain_maps.len() != n {
            return Err(TowerError::LengthMismatch(domain_maps.len(), n));
        }
        let correctors = correctors.unwrap_or_else(|| vec![BTreeMap::new(); n]);
        if correctors.len() != n {
            return Err(TowerError::LengthMismatch(correctors.len(), n));
        }
        let m = TowerMorphism { source, target, domain_maps, codomain_maps, correctors };
        for i in 0..n {
            m.level_morphism(i).map_err(|_| TowerError::LevelMorphism(i))?;
        }
        for i in 0..n - 1 {
            let a = m.domain_maps[i]
                .compose(m.source.domain().bond(i))
                .map_err(|_| TowerError::SquareMismatch(i))?;
            let b = m
                .target
                .domain()
                .bond(i)
                .compose(&m.domain_maps[i + 1])
                .map_err(|_| TowerError::SquareMismatch(i))?;
            if a != b {
                return Err(TowerError::SquareMismatch(i));
            }
            let a = m.codomain_maps[i]
                .compose(m.source.codomain().bond(i))
                .map_err(|_| TowerError::SquareMismatch(i))?;
            let b = m
                .target
                .codomain()
                .bond(i)
                .compose(&m.codomain_maps[i + 1])
                .map_err(|_| TowerError::SquareMismatch(i))?;
            if a != b {
                return Err(TowerError::SquareMismatch(i));
            }
            // corrector compatibility with the bonds
            let p = m.source.domain().bond(i);
            let q_prime = m.target.codomain().bond(i);
            let lo = p.source().lo() - 1;
            let hi = p.source().hi() + 1;
            for deg in lo..=hi {
                let left = q_prime
                    .component(deg + 1)
                    .mul(&m.corrector_component(i + 1, deg));
                let right = m.corrector_component(i, deg).mul(&p.component(deg));
                if left != right {
                    return Err(TowerError::SquareMismatch(i));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(f: &MapTower) -> Self {
        let n = f.len();
        TowerMorphism {
            source: f.clone(),
            target: f.clone(),
            domain_maps: (0..n).map(|i| ChainMap::identity(f.domain().level(i))).collect(),
            codomain_maps: (0..n).map(|i| ChainMap::identity(f.codomain().level(i))).collect(),
            correctors: vec![BTreeMap::new(); n],
        }
    }

    pub fn source(&self) -> &MapTower {
        &self.source
    }

    pub fn target(&self) -> &MapTower {
        &self.target
    }

    pub fn domain_map(&self, i: usize) -> &ChainMap {
        &self.domain_maps[i]
    }

    pub fn codomain_map(&self, i: usize) -> &ChainMap {
        &self.codomain_maps[i]
    }

    fn corrector_component(&self, i: usize, deg: Degree) -> IntMatrix {
        self.correctors[i].get(&deg).cloned().unwrap_or_else(|| {
            IntMatrix::zero(
                self.target.codomain().level(i).rank(deg + 1),
                self.source.domain().level(i).rank(deg),
            )
        })
    }

    /// The level-i coherent morphism f_i -> g_i.
    pub fn level_morphism(
        &self,
        i: usize,
    ) -> Result<crate::chain::CoherentChainMorphism, crate::chain::CoherenceError> {
        crate::chain::CoherentChainMorphism::new(
            self.source.level_map(i).clone(),
            self.target.level_map(i).clone(),
            self.domain_maps[i].clone(),
            self.codomain_maps[i].clone(),
            self.correctors[i].clone(),
        )
    }

    /// The induced chain map on the products of the first `levels` levelwise
    /// cones.
    pub fn product_cone_map(&self, levels: usize) -> ChainMap {
        let src_tower = self.source.truncate(levels).cone_tower();
        let tgt_tower = self.target.truncate(levels).cone_tower();
        let src = product_complex(&src_tower);
        let tgt = product_complex(&tgt_tower);
        let level_maps: Vec<ChainMap> = (0..levels)
            .map(|i| {
                crate::chain::cone_functor_map(
                    &self.level_morphism(i).expect("validated at construction"),
                )
            })
            .collect();
        let mut comps = BTreeMap::new();
        let lo = src.lo().min(tgt.lo());
        let hi = src.hi().max(tgt.hi());
        for deg in lo..=hi {
            let blocks: Vec<IntMatrix> = level_maps.iter().map(|m| m.component(deg)).collect();
            let refs: Vec<&IntMatrix> = blocks.iter().collect();
            comps.insert(deg, IntMatrix::block_diagonal(&refs));
        }
        ChainMap::new(src, tgt, comps).expect("levelwise cone maps commute with cone-tower bonds")
    }

    /// The induced chain map between the cones of the pair shift-difference
    /// maps (the big cones whose homology is strong homology).
    pub fn big_cone_map(&self) -> Result<ChainMap, TowerError> {
        let n = self.source.len();
        if n < 2 {
            return Err(TowerError::TowerTooShort { needed: 2, got: n });
        }
        let full = self.product_cone_map(n);
        let trunc = self.product_cone_map(n - 1);
        let src_cone = mapping_cone(&pair_shift_difference(&self.source)?);
        let tgt_cone = mapping_cone(&pair_shift_difference(&self.target)?);
        let mut comps = BTreeMap::new();
        let lo = src_cone.complex().lo().min(tgt_cone.complex().lo());
        let hi = src_cone.complex().hi().max(tgt_cone.complex().hi());
        for deg in lo..=hi {
            let a = full.component(deg - 1);
            let b = trunc.component(deg);
            let m = IntMatrix::from_blocks(
                &[tgt_cone.source_rank_at(deg), tgt_cone.target_rank_at(deg)],
                &[src_cone.source_rank_at(deg), src_cone.target_rank_at(deg)],
                &[vec![Some(&a), None], vec![None, Some(&b)]],
            );
            comps.insert(deg, m);
        }
        ChainMap::new(src_cone.complex().clone(), tgt_cone.complex().clone(), comps)
            .map_err(|_| TowerError::SquareMismatch(0))
    }

    /// The induced map on strong homology in degree n.
    pub fn induced(&self, n: Degree) -> Result<Homomorphism, TowerError> {
        let big = self.big_cone_map()?;
        Ok(crate::chain::induced_on_homology(&big, n + 1))
    }
}

/// The finite-truncation oracle: H_{n+1}(cone(shift_difference(T))) is
/// isomorphic to H_n of the last level. Returns both sides for comparison.
pub fn finite_truncation_oracle(
    t: &Tower,
    n: Degree,
) -> Result<(FgAbGroup, FgAbGroup), TowerError> {
    let lhs = tower_strong_homology(t, n)?;
    let rhs = crate::chain::homology(t.level(t.len() - 1), n);
    Ok((lhs, rhs))
}
