//! Homology of bounded complexes as presented abelian groups, the maps
//! induced by chain maps, the snake-lemma connecting homomorphism, and a
//! container for long exact sequences with positionwise exactness checks.

use super::complex::{ChainComplex, ChainMap, Degree};
use crate::algebra::{
    exact_at, kernel_basis, FgAbGroup, Homomorphism, Int, IntMatrix, LinearSolver,
};

/// Presentation of H_n(C): a saturated basis of the cycle lattice plus the
/// boundary lattice rewritten in that basis. The group's ambient generators
/// are the columns of `cycle_basis`, so two calls on the same complex and
/// degree produce interchangeable presentations (the construction is
/// deterministic).
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: Degree,
    pub cycle_basis: IntMatrix,
    pub group: FgAbGroup,
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex, n: Degree) -> Self {
        let cycles = kernel_basis(&c.differential(n));
        let boundaries = c.differential(n + 1);
        // Boundaries are cycles and the cycle basis is saturated, so the
        // rewrite always succeeds on a valid complex.
        let x = LinearSolver::new(&cycles)
            .solve_matrix(&boundaries)
            .expect("boundaries lie in the cycle lattice");
        let group = FgAbGroup::new(cycles.cols(), x).expect("presentation shapes agree");
        HomologyBasis { degree: n, cycle_basis: cycles, group }
    }

    /// Coordinates of the homology class of a cycle. None when `v` is not a
    /// cycle in this degree.
    pub fn class_of(&self, c: &ChainComplex, v: &[Int]) -> Option<Vec<Int>> {
        let dv = c
            .differential(self.degree)
            .mul(&IntMatrix::from_column(v));
        if !dv.is_zero() {
            return None;
        }
        LinearSolver::new(&self.cycle_basis).solve(v)
    }
}

/// H_n(C) with canonical invariants. Degrees outside the support give the
/// trivial group.
pub fn homology(c: &ChainComplex, n: Degree) -> FgAbGroup {
    HomologyBasis::new(c, n).group
}

/// All homology groups over the support of the complex.
pub fn homology_table(c: &ChainComplex) -> Vec<(Degree, FgAbGroup)> {
    c.support().map(|n| (n, homology(c, n))).collect()
}

pub fn is_acyclic(c: &ChainComplex) -> bool {
    c.support().all(|n| homology(c, n).is_trivial())
}

/// The map H_n(f): H_n(source) -> H_n(target).
pub fn induced_on_homology(f: &ChainMap, n: Degree) -> Homomorphism {
    let src = HomologyBasis::new(f.source(), n);
    let tgt = HomologyBasis::new(f.target(), n);
    induced_between(&f.component(n), &src, &tgt)
}

/// The map on homology induced by a raw degree-n matrix that carries cycles
/// to cycles and boundaries to boundaries. Used for maps that are only
/// chain maps up to sign conventions (cone inclusions) where the induced
/// map is still well defined; well-definedness is verified, not assumed.
pub fn induced_between(matrix: &IntMatrix, src: &HomologyBasis, tgt: &HomologyBasis) -> Homomorphism {
    let mapped = matrix.mul(&src.cycle_basis);
    let y = LinearSolver::new(&tgt.cycle_basis)
        .solve_matrix(&mapped)
        .expect("image of a cycle must be a cycle");
    Homomorphism::new(src.group.clone(), tgt.group.clone(), y)
        .expect("map must send boundaries to boundaries")
}

/// Connecting homomorphism of a degreewise-short-exact sequence of complexes
/// 0 -> A -inc-> B -proj-> Q -> 0, from H_n(Q) to H_{n-1}(A).
///
/// Requires integral lifts: proj must be degreewise surjective over Z and
/// inc degreewise injective with ker proj = im inc (which the callers
/// certify separately). Panics if a lift fails, since that falsifies the
/// exactness certificate.
pub fn connecting_hom(inc: &ChainMap, proj: &ChainMap, n: Degree) -> Homomorphism {
    let a = inc.source();
    let b = inc.target();
    let q = proj.target();
    assert_eq!(proj.source(), b, "SES middle complexes differ");
    let hq = HomologyBasis::new(q, n);
    let ha = HomologyBasis::new(a, n - 1);
    let proj_solver = LinearSolver::new(&proj.component(n));
    let inc_solver = LinearSolver::new(&inc.component(n - 1));
    let db = b.differential(n);
    let mut cols = IntMatrix::zero(ha.group.ambient_rank(), hq.group.ambient_rank());
    for j in 0..hq.cycle_basis.cols() {
        let qcol = hq.cycle_basis.column(j);
        let lift = proj_solver.solve(&qcol).expect("projection is surjective");
        let w = db.mul(&IntMatrix::from_column(&lift)).column(0);
        let a_chain = inc_solver.solve(&w).expect("boundary of lift lies in the subcomplex");
        let coords = ha
            .class_of(a, &a_chain)
            .expect("pulled-back chain is a cycle");
        for i in 0..coords.len() {
            cols[(i, j)] = coords[i].clone();
        }
    }
    Homomorphism::new(hq.group, ha.group, cols).expect("connecting map is well defined")
}

/// A long exact sequence materialized as groups and maps, with labels for
/// reports. maps[i] goes from groups[i] to groups[i+1].
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub labels: Vec<String>,
    pub groups: Vec<FgAbGroup>,
    pub maps: Vec<Homomorphism>,
}

impl LongExactSequence {
    pub fn new(labels: Vec<String>, groups: Vec<FgAbGroup>, maps: Vec<Homomorphism>) -> Self {
        assert_eq!(labels.len(), groups.len());
        assert_eq!(maps.len() + 1, groups.len().max(1));
        LongExactSequence { labels, groups, maps }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Consecutive composites vanish.
    pub fn composites_zero(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[1].compose(&w[0]).map(|c| c.is_zero_map()).unwrap_or(false))
    }

    /// Exactness at interior position i (0 < i < len-1).
    pub fn exact_at(&self, i: usize) -> bool {
        assert!(i > 0 && i + 1 < self.groups.len(), "interior positions only");
        exact_at(&self.maps[i - 1], &self.maps[i])
    }

    pub fn is_exact(&self) -> bool {
        (1..self.groups.len().saturating_sub(1)).all(|i| self.exact_at(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupInvariants;
    use num_traits::Signed;
    use crate::chain::complex::fixtures::{circle, circle_degree_two, point};
    use crate::chain::complex::ChainComplex;

    fn inv(torsion: &[i64], free: usize) -> GroupInvariants {
        GroupInvariants {
            torsion: torsion.iter().map(|&d| Int::from(d)).collect(),
            free_rank: free,
        }
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        assert_eq!(homology(&c, 0).invariants(), &inv(&[], 1));
        assert_eq!(homology(&c, 1).invariants(), &inv(&[], 1));
        assert!(homology(&c, 2).is_trivial());
        assert!(homology(&c, -1).is_trivial());
    }

    #[test]
    fn point_homology() {
        let p = point();
        assert_eq!(homology(&p, 0).invariants(), &inv(&[], 1));
        assert!(homology(&p, 1).is_trivial());
    }

    #[test]
    fn acyclic_two_term() {
        let c = ChainComplex::two_term(1, IntMatrix::identity(1)).unwrap();
        assert!(is_acyclic(&c));
    }

    #[test]
    fn identity_induces_identity() {
        let c = circle();
        let f = ChainMap::identity(&c);
        let h = induced_on_homology(&f, 1);
        assert!(h.equals(&Homomorphism::identity(h.source())));
    }

    #[test]
    fn degree_two_induces_times_two_on_h1() {
        let f = circle_degree_two();
        let h = induced_on_homology(&f, 1);
        assert_eq!(h.source().invariants(), &inv(&[], 1));
        let m = h.canonical_matrix();
        assert_eq!(m.rows(), 1);
        assert_eq!(m[(0, 0)].clone().abs(), Int::from(2));
    }

    #[test]
    fn map_to_acyclic_induces_zero() {
        let c = circle();
        let acyclic = ChainComplex::two_term(1, IntMatrix::identity(3)).unwrap();
        let f = ChainMap::zero(&c, &acyclic);
        let h = induced_on_homology(&f, 1);
        assert!(h.is_zero_map());
        assert!(h.target().is_trivial());
    }

    #[test]
    fn mod4_homology_of_two_term() {
        let c = ChainComplex::two_term(1, IntMatrix::from_rows(&[&[4]])).unwrap();
        assert_eq!(homology(&c, 0).invariants(), &inv(&[4], 0));
        assert!(homology(&c, 1).is_trivial());
    }
}
