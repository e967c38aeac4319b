//! Finitely generated abelian groups presented by integer relation matrices,
//! homomorphisms between them, and the subquotient calculus used to realize
//! homology groups and exactness certificates.
//!
//! A group is Z^ambient / column-lattice(relations). Canonical invariants
//! (free rank plus a divisibility chain of torsion coefficients) are computed
//! once at construction; equality of groups means equality of invariants,
//! while homomorphism equality is congruence modulo the target relations.

use super::matrix::{
    kernel_basis, lattice_contains, lattices_equal, smith_normal_form, Int, IntMatrix,
    LinearSolver,
};
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("relation/operand shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("column lattice is not contained in the subgroup lattice")]
    ContainmentViolation,
    #[error("matrix does not descend to the quotients (relations not preserved)")]
    NotWellDefined,
    #[error("homomorphism endpoints do not match")]
    EndpointMismatch,
}

/// Canonical invariants: torsion coefficients d1 | d2 | ... (each > 1)
/// followed by the free rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupInvariants {
    pub torsion: Vec<Int>,
    pub free_rank: usize,
}

impl GroupInvariants {
    pub fn trivial() -> Self {
        GroupInvariants { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Number of elements for finite groups; None when the free rank is positive.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        let mut n = Int::one();
        for d in &self.torsion {
            n *= d;
        }
        Some(n)
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{}", d)).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Finitely generated abelian group Z^ambient / lat(relations).
///
/// `canon_proj` and `canon_lift` translate between ambient generator
/// coordinates and the canonical decomposition (torsion generators in
/// divisibility order, then free generators).
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    invariants: GroupInvariants,
    canon_proj: IntMatrix,
    canon_lift: IntMatrix,
}

impl FgAbGroup {
    pub fn new(ambient_rank: usize, relations: IntMatrix) -> Result<Self, GroupError> {
        if relations.rows() != ambient_rank {
            return Err(GroupError::ShapeMismatch(format!(
                "relations have {} rows, ambient rank is {}",
                relations.rows(),
                ambient_rank
            )));
        }
        let snf = smith_normal_form(&relations);
        let mut kept = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..snf.rank {
            let d = snf.d[(i, i)].clone();
            if d > Int::one() {
                kept.push(i);
                torsion.push(d);
            }
        }
        let free_rank = ambient_rank - snf.rank;
        for i in snf.rank..ambient_rank {
            kept.push(i);
        }
        let canon_proj = IntMatrix::from_fn(kept.len(), ambient_rank, |i, j| snf.u[(kept[i], j)].clone());
        let canon_lift = snf.u_inv.select_columns(&kept);
        Ok(FgAbGroup {
            ambient_rank,
            relations,
            invariants: GroupInvariants { torsion, free_rank },
            canon_proj,
            canon_lift,
        })
    }

    pub fn trivial() -> Self {
        Self::new(0, IntMatrix::zero(0, 0)).unwrap()
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zero(rank, 0)).unwrap()
    }

    /// Cyclic group Z/d (d = 0 gives Z).
    pub fn cyclic(d: i64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[&[d]])).unwrap()
    }

    pub fn direct_sum(groups: &[&FgAbGroup]) -> Self {
        let rels: Vec<&IntMatrix> = groups.iter().map(|g| &g.relations).collect();
        let ambient = groups.iter().map(|g| g.ambient_rank).sum();
        Self::new(ambient, IntMatrix::block_diagonal(&rels)).unwrap()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariants(&self) -> &GroupInvariants {
        &self.invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_trivial()
    }

    /// Number of canonical generators (torsion + free).
    pub fn canonical_rank(&self) -> usize {
        self.invariants.torsion.len() + self.invariants.free_rank
    }

    /// Same ambient rank and identical relation lattice: the two values are
    /// interchangeable as homomorphism endpoints, not merely isomorphic.
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        self.ambient_rank == other.ambient_rank && lattices_equal(&self.relations, &other.relations)
    }

    /// Is `v` in the relation lattice (i.e. zero in the group)?
    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        LinearSolver::new(&self.relations).contains(v)
    }
}

/// Isomorphism as abstract groups: equality of canonical invariants.
impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.invariants == other.invariants
    }
}
impl Eq for FgAbGroup {}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.invariants.fmt(f)
    }
}

/// The quotient Z^rows(M) / lat(M) with canonical invariants.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    FgAbGroup::new(m.rows(), m.clone()).unwrap()
}

/// A subquotient lat(K)/lat(I) together with the embedding of its chosen
/// generators into the ambient lattice. The group's ambient coordinates are
/// the columns of `basis`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub basis: IntMatrix,
    pub group: FgAbGroup,
}

impl Subquotient {
    /// Express an ambient vector lying in lat(K) in basis coordinates.
    pub fn coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        LinearSolver::new(&self.basis).solve(v)
    }
}

/// Presentation of lat(K)/lat(I): a saturated-free basis B of lat(K) is
/// extracted via SNF, relations are lat(I) rewritten in that basis.
/// Fails with ContainmentViolation when lat(I) is not inside lat(K).
pub fn subquotient_presentation(k: &IntMatrix, i: &IntMatrix) -> Result<Subquotient, GroupError> {
    if k.rows() != i.rows() {
        return Err(GroupError::ShapeMismatch(format!(
            "ambient ranks differ: {} vs {}",
            k.rows(),
            i.rows()
        )));
    }
    let snf = smith_normal_form(k);
    let r = snf.rank;
    // basis = first r columns of u_inv scaled by the invariant factors
    let basis = IntMatrix::from_fn(k.rows(), r, |row, col| {
        &snf.u_inv[(row, col)] * &snf.d[(col, col)]
    });
    // Express I in the basis: solve basis * X = I using the SNF of K directly.
    let ui = snf.u.mul(i);
    let mut x = IntMatrix::zero(r, i.cols());
    for j in 0..i.cols() {
        for row in 0..k.rows() {
            let e = &ui[(row, j)];
            if row < r {
                let d = &snf.d[(row, row)];
                if (e % d).is_zero() {
                    x[(row, j)] = e / d;
                } else {
                    return Err(GroupError::ContainmentViolation);
                }
            } else if !e.is_zero() {
                return Err(GroupError::ContainmentViolation);
            }
        }
    }
    let group = FgAbGroup::new(r, x)?;
    Ok(Subquotient { basis, group })
}

/// Canonical invariants of lat(K)/lat(I).
pub fn subquotient(k: &IntMatrix, i: &IntMatrix) -> Result<FgAbGroup, GroupError> {
    Ok(subquotient_presentation(k, i)?.group)
}

/// A homomorphism between presented groups, stored on ambient generators.
/// Well-definedness (relations map into the target relation lattice) is
/// checked at construction.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl Homomorphism {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, GroupError> {
        if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
            return Err(GroupError::ShapeMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ambient_rank(),
                source.ambient_rank()
            )));
        }
        let image_of_relations = matrix.mul(source.relations());
        if !lattice_contains(target.relations(), &image_of_relations) {
            return Err(GroupError::NotWellDefined);
        }
        Ok(Homomorphism { source, target, matrix })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ambient_rank()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zero(target.ambient_rank(), source.ambient_rank()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// self o other (apply `other` first).
    pub fn compose(&self, other: &Homomorphism) -> Result<Homomorphism, GroupError> {
        if !other.target.same_presentation(&self.source) {
            return Err(GroupError::EndpointMismatch);
        }
        Ok(Homomorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn negate(&self) -> Homomorphism {
        Homomorphism { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.neg() }
    }

    /// Equality as maps of quotients: the difference lands in the target
    /// relation lattice columnwise.
    pub fn equals(&self, other: &Homomorphism) -> bool {
        self.source.same_presentation(&other.source)
            && self.target.same_presentation(&other.target)
            && {
                let diff = self.matrix.sub(&other.matrix);
                lattice_contains(self.target.relations(), &diff)
            }
    }

    pub fn is_zero_map(&self) -> bool {
        lattice_contains(self.target.relations(), &self.matrix)
    }

    /// The kernel as an abstract group: {x : h(x) in rel_target} / rel_source.
    pub fn kernel_group(&self) -> FgAbGroup {
        let preimage = self.kernel_lattice();
        subquotient(&preimage, self.source.relations()).expect("kernel contains source relations")
    }

    /// Generators of the full preimage lattice {x in Z^src : h(x) in lat(rel_target)}.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let stacked = self.matrix.hstack(self.target.relations());
        let k = kernel_basis(&stacked);
        k.take_rows(0, self.source.ambient_rank())
    }

    pub fn cokernel_group(&self) -> FgAbGroup {
        let rel = self.matrix.hstack(self.target.relations());
        FgAbGroup::new(self.target.ambient_rank(), rel).unwrap()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel_group().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The matrix rewritten on canonical generators, torsion rows reduced
    /// into [0, d).
    pub fn canonical_matrix(&self) -> IntMatrix {
        let m = self.target.canon_proj.mul(&self.matrix).mul(&self.source.canon_lift);
        let tor = self.target.invariants().torsion.clone();
        IntMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            if i < tor.len() {
                let d = &tor[i];
                let e = &m[(i, j)] % d;
                if e.is_negative() {
                    e + d
                } else {
                    e
                }
            } else {
                m[(i, j)].clone()
            }
        })
    }
}

/// Exactness of A -f-> B -g-> C at B: checks g o f = 0 and ker g = im f as
/// sublattices of B's ambient space (both taken together with B's relations).
pub fn exact_at(f: &Homomorphism, g: &Homomorphism) -> bool {
    assert!(
        f.target.same_presentation(&g.source),
        "exactness asked at mismatched presentations"
    );
    let composite = g.matrix.mul(&f.matrix);
    if !lattice_contains(g.target.relations(), &composite) {
        return false;
    }
    let ker = g.kernel_lattice();
    let im = f.matrix.hstack(f.target.relations());
    lattices_equal(&ker, &im)
}

/// The map induced on subquotients by an ambient matrix `f` that carries
/// lat(src_k) into lat(tgt_k) and lat(src_i) into lat(tgt_i).
pub fn induced_hom(
    f: &IntMatrix,
    src_k: &IntMatrix,
    src_i: &IntMatrix,
    tgt_k: &IntMatrix,
    tgt_i: &IntMatrix,
) -> Result<Homomorphism, GroupError> {
    let src = subquotient_presentation(src_k, src_i)?;
    let tgt = subquotient_presentation(tgt_k, tgt_i)?;
    if f.cols() != src_k.rows() || f.rows() != tgt_k.rows() {
        return Err(GroupError::ShapeMismatch(format!(
            "f is {}x{}, ambient ranks are {} -> {}",
            f.rows(),
            f.cols(),
            src_k.rows(),
            tgt_k.rows()
        )));
    }
    let mapped = f.mul(&src.basis);
    let y = LinearSolver::new(&tgt.basis)
        .solve_matrix(&mapped)
        .ok_or(GroupError::NotWellDefined)?;
    Homomorphism::new(src.group, tgt.group, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(torsion: &[i64], free: usize) -> GroupInvariants {
        GroupInvariants {
            torsion: torsion.iter().map(|&d| Int::from(d)).collect(),
            free_rank: free,
        }
    }

    #[test]
    fn cokernel_of_times_two_is_z2() {
        let g = cokernel(&IntMatrix::from_rows(&[&[2]]));
        assert_eq!(g.invariants(), &inv(&[2], 0));
    }

    #[test]
    fn cokernel_of_empty_relations_is_free() {
        let g = cokernel(&IntMatrix::zero(1, 0));
        assert_eq!(g.invariants(), &inv(&[], 1));
    }

    #[test]
    fn cokernel_discards_unit_factors() {
        let g = cokernel(&IntMatrix::diagonal(&[1, 4]));
        assert_eq!(g.invariants(), &inv(&[4], 0));
    }

    #[test]
    fn subquotient_index_four() {
        // Z^2 / 2Z^2 = Z/2 + Z/2
        let k = IntMatrix::identity(2);
        let i = IntMatrix::diagonal(&[2, 2]);
        let g = subquotient(&k, &i).unwrap();
        assert_eq!(g.invariants(), &inv(&[2, 2], 0));
    }

    #[test]
    fn subquotient_by_self_is_trivial() {
        let k = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let g = subquotient(&k, &k).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn subquotient_no_relations_is_free() {
        let k = IntMatrix::from_rows(&[&[1]]);
        let i = IntMatrix::zero(1, 0);
        let g = subquotient(&k, &i).unwrap();
        assert_eq!(g.invariants(), &inv(&[], 1));
    }

    #[test]
    fn subquotient_detects_containment_violation() {
        let k = IntMatrix::from_rows(&[&[2], &[0]]);
        let i = IntMatrix::from_rows(&[&[1], &[0]]);
        assert_eq!(subquotient(&k, &i), Err(GroupError::ContainmentViolation));
    }

    #[test]
    fn hom_identity_and_zero() {
        let g = FgAbGroup::cyclic(4);
        let id = Homomorphism::identity(&g);
        assert!(id.is_isomorphism());
        let z = Homomorphism::zero(&g, &g);
        assert!(z.is_zero_map());
        assert!(!z.is_injective());
    }

    #[test]
    fn hom_well_definedness_checked() {
        // x -> x does not descend Z/2 -> Z/4, but x -> 2x does.
        let z2 = FgAbGroup::cyclic(2);
        let z4 = FgAbGroup::cyclic(4);
        let bad = Homomorphism::new(z2.clone(), z4.clone(), IntMatrix::identity(1));
        assert_eq!(bad.unwrap_err(), GroupError::NotWellDefined);
        let good = Homomorphism::new(z2, z4, IntMatrix::from_rows(&[&[2]]));
        assert!(good.is_ok());
    }

    #[test]
    fn hom_equality_mod_relations() {
        let z2 = FgAbGroup::cyclic(2);
        let a = Homomorphism::new(z2.clone(), z2.clone(), IntMatrix::from_rows(&[&[1]])).unwrap();
        let b = Homomorphism::new(z2.clone(), z2.clone(), IntMatrix::from_rows(&[&[3]])).unwrap();
        assert!(a.equals(&b));
        let z = Homomorphism::zero(&z2, &z2);
        assert!(!a.equals(&z));
    }

    #[test]
    fn kernel_and_cokernel_of_times_two_on_z() {
        let z = FgAbGroup::free(1);
        let h = Homomorphism::new(z.clone(), z.clone(), IntMatrix::from_rows(&[&[2]])).unwrap();
        assert!(h.kernel_group().is_trivial());
        assert_eq!(h.cokernel_group().invariants(), &inv(&[2], 0));
    }

    #[test]
    fn kernel_of_projection_z_to_z2() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let h = Homomorphism::new(z, z2, IntMatrix::identity(1)).unwrap();
        // kernel is 2Z inside Z, abstractly Z
        assert_eq!(h.kernel_group().invariants(), &inv(&[], 1));
        assert!(h.is_surjective());
    }

    #[test]
    fn induced_hom_examples() {
        // identity on equal subquotients
        let k = IntMatrix::identity(2);
        let i = IntMatrix::diagonal(&[2, 2]);
        let f = IntMatrix::identity(2);
        let h = induced_hom(&f, &k, &i, &k, &i).unwrap();
        assert!(h.equals(&Homomorphism::identity(h.source())));

        // x2 on Z with no relations
        let k1 = IntMatrix::identity(1);
        let i0 = IntMatrix::zero(1, 0);
        let f2 = IntMatrix::from_rows(&[&[2]]);
        let h = induced_hom(&f2, &k1, &i0, &k1, &i0).unwrap();
        assert_eq!(h.matrix(), &IntMatrix::from_rows(&[&[2]]));

        // x3 from (Z, im 0) to (Z, im 3Z) induces the zero map to Z/3
        let i3 = IntMatrix::from_rows(&[&[3]]);
        let f3 = IntMatrix::from_rows(&[&[3]]);
        let h = induced_hom(&f3, &k1, &i0, &k1, &i3).unwrap();
        assert_eq!(h.target().invariants(), &inv(&[3], 0));
        assert!(h.is_zero_map());
    }

    #[test]
    fn induced_hom_respects_composition() {
        let k = IntMatrix::identity(1);
        let i = IntMatrix::from_rows(&[&[12]]);
        let f = IntMatrix::from_rows(&[&[2]]);
        let g = IntMatrix::from_rows(&[&[3]]);
        let hf = induced_hom(&f, &k, &i, &k, &i).unwrap();
        let hg = induced_hom(&g, &k, &i, &k, &i).unwrap();
        let hgf = induced_hom(&g.mul(&f), &k, &i, &k, &i).unwrap();
        assert!(hg.compose(&hf).unwrap().equals(&hgf));
    }

    #[test]
    fn exactness_of_short_sequence() {
        // 0 -> Z -x2-> Z -> Z/2 -> 0
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let f = Homomorphism::new(z.clone(), z.clone(), IntMatrix::from_rows(&[&[2]])).unwrap();
        let g = Homomorphism::new(z.clone(), z2, IntMatrix::identity(1)).unwrap();
        assert!(exact_at(&f, &g));
        // not exact if the first map is x4
        let f4 = Homomorphism::new(z.clone(), z, IntMatrix::from_rows(&[&[4]])).unwrap();
        assert!(!exact_at(&f4, &g));
    }

    #[test]
    fn direct_sum_invariants() {
        let a = FgAbGroup::cyclic(2);
        let b = FgAbGroup::cyclic(4);
        let c = FgAbGroup::free(1);
        let s = FgAbGroup::direct_sum(&[&a, &b, &c]);
        assert_eq!(s.invariants(), &inv(&[2, 4], 1));
    }

    #[test]
    fn canonical_matrix_reduces_torsion_rows() {
        let z4 = FgAbGroup::cyclic(4);
        let h = Homomorphism::new(z4.clone(), z4, IntMatrix::from_rows(&[&[7]])).unwrap();
        assert_eq!(h.canonical_matrix(), IntMatrix::from_rows(&[&[3]]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(2).to_string(), "Z^2");
        let g = FgAbGroup::new(2, IntMatrix::diagonal(&[2, 0])).unwrap();
        assert_eq!(g.to_string(), "Z/2 + Z");
    }
}
