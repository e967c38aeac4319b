//! Bounded chain complexes of free abelian groups, chain maps and chain
//! homotopies. All structural identities (dd = 0, commutation, the homotopy
//! identity) are verified at construction; a value of one of these types is
//! always valid.

use crate::algebra::{Int, IntMatrix};
use std::collections::BTreeMap;
use thiserror::Error;

pub type Degree = i32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("differential shape mismatch at degree {0}")]
    DifferentialShape(Degree),
    #[error("dd != 0 at degree {0}")]
    NotAComplex(Degree),
    #[error("chain map does not commute with differentials at degree {0}")]
    NotAChainMap(Degree),
    #[error("chain map component shape mismatch at degree {0}")]
    ComponentShape(Degree),
    #[error("homotopy identity fails at degree {0}")]
    NotAHomotopy(Degree),
    #[error("endpoints mismatch: {0}")]
    EndpointMismatch(String),
}

/// A bounded chain complex: finitely many nonzero degrees, integer
/// differentials with dd = 0. Degrees outside the stored range have rank 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: Degree,
    ranks: Vec<usize>,
    // diffs[k]: d_{lo+k+1}: C_{lo+k+1} -> C_{lo+k}; empty when ranks.len() < 2
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(lo: Degree, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self, ChainError> {
        if ranks.is_empty() {
            return Ok(ChainComplex { lo: 0, ranks: vec![], diffs: vec![] });
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(ChainError::DifferentialShape(lo));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(ChainError::DifferentialShape(lo + k as Degree + 1));
            }
        }
        let c = ChainComplex { lo, ranks, diffs };
        for n in c.lo..=c.hi() {
            let dd = c.differential(n).mul(&c.differential(n + 1));
            if !dd.is_zero() {
                return Err(ChainError::NotAComplex(n + 1));
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        ChainComplex { lo: 0, ranks: vec![], diffs: vec![] }
    }

    /// One free generator sitting in a single degree.
    pub fn single(degree: Degree, rank: usize) -> Self {
        ChainComplex::new(degree, vec![rank], vec![]).unwrap()
    }

    /// Two-term complex Z^r -(m)-> Z^s placed in degrees (top, top-1).
    pub fn two_term(top: Degree, m: IntMatrix) -> Result<Self, ChainError> {
        let (s, r) = (m.rows(), m.cols());
        ChainComplex::new(top - 1, vec![s, r], vec![m])
    }

    pub fn is_zero_complex(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn lo(&self) -> Degree {
        self.lo
    }

    pub fn hi(&self) -> Degree {
        self.lo + self.ranks.len() as Degree - 1
    }

    /// Degrees worth inspecting, with one step of slack on both sides.
    pub fn support(&self) -> std::ops::RangeInclusive<Degree> {
        if self.ranks.is_empty() {
            0..=0
        } else {
            self.lo..=self.hi()
        }
    }

    pub fn rank(&self, n: Degree) -> usize {
        if self.ranks.is_empty() || n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    /// d_n: C_n -> C_{n-1}, materialized with correct shape for every degree.
    pub fn differential(&self, n: Degree) -> IntMatrix {
        if !self.ranks.is_empty() && n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            IntMatrix::zero(self.rank(n - 1), self.rank(n))
        }
    }

    /// Reindex by +k: (shift(k))_n = C_{n-k}, same differentials.
    pub fn shift(&self, k: Degree) -> ChainComplex {
        ChainComplex { lo: self.lo + k, ranks: self.ranks.clone(), diffs: self.diffs.clone() }
    }

    pub fn negate_differentials(&self) -> ChainComplex {
        ChainComplex {
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.neg()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        direct_sum(&[self.clone(), other.clone()])
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }
}

/// Direct sum of finitely many complexes, generators ordered summand by
/// summand inside every degree.
pub fn direct_sum(parts: &[ChainComplex]) -> ChainComplex {
    let nonzero: Vec<&ChainComplex> = parts.iter().filter(|c| !c.ranks.is_empty()).collect();
    if nonzero.is_empty() {
        return ChainComplex::zero();
    }
    let lo = nonzero.iter().map(|c| c.lo()).min().unwrap();
    let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
    let ranks: Vec<usize> = (lo..=hi).map(|n| parts.iter().map(|c| c.rank(n)).sum()).collect();
    let diffs: Vec<IntMatrix> = (lo + 1..=hi)
        .map(|n| {
            let blocks: Vec<IntMatrix> = parts.iter().map(|c| c.differential(n)).collect();
            let refs: Vec<&IntMatrix> = blocks.iter().collect();
            IntMatrix::block_diagonal(&refs)
        })
        .collect();
    ChainComplex::new(lo, ranks, diffs).expect("direct sum of valid complexes is valid")
}

/// Offsets of each summand's generators inside the direct sum at degree n.
pub fn summand_offsets(parts: &[ChainComplex], n: Degree) -> Vec<usize> {
    let mut offs = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for c in parts {
        offs.push(acc);
        acc += c.rank(n);
    }
    offs
}

/// A degree-preserving map of complexes commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: BTreeMap<Degree, IntMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        comps: BTreeMap<Degree, IntMatrix>,
    ) -> Result<Self, ChainError> {
        for (&n, m) in &comps {
            if m.rows() != target.rank(n) || m.cols() != source.rank(n) {
                return Err(ChainError::ComponentShape(n));
            }
        }
        let f = ChainMap { source, target, comps };
        let lo = f.source.lo().min(f.target.lo());
        let hi = f.source.hi().max(f.target.hi());
        for n in lo..=hi + 1 {
            let lhs = f.target.differential(n).mul(&f.component(n));
            let rhs = f.component(n - 1).mul(&f.source.differential(n));
            if lhs != rhs {
                return Err(ChainError::NotAChainMap(n));
            }
        }
        Ok(f)
    }

    /// Build from a closure giving the component in each degree of the
    /// combined support.
    pub fn from_fn(
        source: ChainComplex,
        target: ChainComplex,
        mut f: impl FnMut(Degree) -> IntMatrix,
    ) -> Result<Self, ChainError> {
        let mut comps = BTreeMap::new();
        if !(source.ranks.is_empty() && target.ranks.is_empty()) {
            let lo = source.lo().min(target.lo());
            let hi = source.hi().max(target.hi());
            for n in lo..=hi {
                comps.insert(n, f(n));
            }
        }
        ChainMap::new(source, target, comps)
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let mut comps = BTreeMap::new();
        for n in c.support() {
            comps.insert(n, IntMatrix::identity(c.rank(n)));
        }
        ChainMap { source: c.clone(), target: c.clone(), comps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: Degree) -> IntMatrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(self.target.rank(n), self.source.rank(n)))
    }

    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap, ChainError> {
        if other.target != self.source {
            return Err(ChainError::EndpointMismatch("compose".into()));
        }
        let mut comps = BTreeMap::new();
        let keys: std::collections::BTreeSet<Degree> =
            self.comps.keys().chain(other.comps.keys()).cloned().collect();
        for n in keys {
            comps.insert(n, self.component(n).mul(&other.component(n)));
        }
        Ok(ChainMap { source: other.source.clone(), target: self.target.clone(), comps })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap, ChainError> {
        if self.source != other.source || self.target != other.target {
            return Err(ChainError::EndpointMismatch("add".into()));
        }
        let keys: std::collections::BTreeSet<Degree> =
            self.comps.keys().chain(other.comps.keys()).cloned().collect();
        let mut comps = BTreeMap::new();
        for n in keys {
            comps.insert(n, self.component(n).add(&other.component(n)));
        }
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap, ChainError> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(&n, m)| (n, m.neg())).collect(),
        }
    }

    /// The same map viewed between reindexed complexes.
    pub fn shift(&self, k: Degree) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps: self.comps.iter().map(|(&n, m)| (n + k, m.clone())).collect(),
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    /// Apply to a chain vector in degree n.
    pub fn apply(&self, n: Degree, v: &[Int]) -> Vec<Int> {
        self.component(n).mul(&IntMatrix::from_column(v)).column(0)
    }
}

/// A chain homotopy H with dH + Hd = to - from; component(n) maps degree n
/// to degree n + 1.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    from_map: ChainMap,
    to_map: ChainMap,
    comps: BTreeMap<Degree, IntMatrix>,
}

impl ChainHomotopy {
    pub fn new(
        from_map: ChainMap,
        to_map: ChainMap,
        comps: BTreeMap<Degree, IntMatrix>,
    ) -> Result<Self, ChainError> {
        if from_map.source != to_map.source || from_map.target != to_map.target {
            return Err(ChainError::EndpointMismatch("homotopy endpoints".into()));
        }
        for (&n, m) in &comps {
            if m.rows() != from_map.target.rank(n + 1) || m.cols() != from_map.source.rank(n) {
                return Err(ChainError::ComponentShape(n));
            }
        }
        let h = ChainHomotopy { from_map, to_map, comps };
        let src = &h.from_map.source;
        let tgt = &h.from_map.target;
        let lo = src.lo().min(tgt.lo()) - 1;
        let hi = src.hi().max(tgt.hi()) + 1;
        for n in lo..=hi {
            let lhs = tgt
                .differential(n + 1)
                .mul(&h.component(n))
                .add(&h.component(n - 1).mul(&src.differential(n)));
            let rhs = h.to_map.component(n).sub(&h.from_map.component(n));
            if lhs != rhs {
                return Err(ChainError::NotAHomotopy(n));
            }
        }
        Ok(h)
    }

    /// The zero homotopy from a map to itself.
    pub fn zero(f: &ChainMap) -> ChainHomotopy {
        ChainHomotopy { from_map: f.clone(), to_map: f.clone(), comps: BTreeMap::new() }
    }

    /// Declare arbitrary components H and return the homotopy from `f` to
    /// the chain map f + dH + Hd it produces. This is the universal way to
    /// generate valid homotopies.
    pub fn from_components(f: &ChainMap, comps: BTreeMap<Degree, IntMatrix>) -> Result<Self, ChainError> {
        let src = f.source();
        let tgt = f.target();
        for (&n, m) in &comps {
            if m.rows() != tgt.rank(n + 1) || m.cols() != src.rank(n) {
                return Err(ChainError::ComponentShape(n));
            }
        }
        let lookup = |n: Degree| {
            comps
                .get(&n)
                .cloned()
                .unwrap_or_else(|| IntMatrix::zero(tgt.rank(n + 1), src.rank(n)))
        };
        let mut to_comps = BTreeMap::new();
        let keys: Vec<Degree> = if src.ranks.is_empty() && tgt.ranks.is_empty() {
            vec![]
        } else {
            (src.lo().min(tgt.lo())..=src.hi().max(tgt.hi())).collect()
        };
        for n in keys {
            let bump = tgt
                .differential(n + 1)
                .mul(&lookup(n))
                .add(&lookup(n - 1).mul(&src.differential(n)));
            to_comps.insert(n, f.component(n).add(&bump));
        }
        let to_map = ChainMap::new(src.clone(), tgt.clone(), to_comps)?;
        ChainHomotopy::new(f.clone(), to_map, comps)
    }

    pub fn from_map(&self) -> &ChainMap {
        &self.from_map
    }

    pub fn to_map(&self) -> &ChainMap {
        &self.to_map
    }

    pub fn component(&self, n: Degree) -> IntMatrix {
        self.comps.get(&n).cloned().unwrap_or_else(|| {
            IntMatrix::zero(self.from_map.target.rank(n + 1), self.from_map.source.rank(n))
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Simplicial circle with 3 vertices and 3 edges: d(e_i) = v_{i+1} - v_i.
    pub fn circle() -> ChainComplex {
        let d1 = IntMatrix::from_rows(&[&[-1, 0, 1], &[1, -1, 0], &[0, 1, -1]]);
        ChainComplex::new(0, vec![3, 3], vec![d1]).unwrap()
    }

    pub fn point() -> ChainComplex {
        ChainComplex::single(0, 1)
    }

    /// Degree-2 chain self-map of the circle: constant on vertices, doubles
    /// the fundamental class.
    pub fn circle_degree_two() -> ChainMap {
        let c = circle();
        let f0 = IntMatrix::from_rows(&[&[1, 1, 1], &[0, 0, 0], &[0, 0, 0]]);
        // edges e0, e1 each wrap once around the whole circle, e2 collapses
        let f1 = IntMatrix::from_rows(&[&[1, 1, 0], &[1, 1, 0], &[1, 1, 0]]);
        let mut comps = BTreeMap::new();
        comps.insert(0, f0);
        comps.insert(1, f1);
        ChainMap::new(c.clone(), c, comps).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::identity(1);
        let d2 = IntMatrix::identity(1);
        let e = ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2]);
        assert!(matches!(e, Err(ChainError::NotAComplex(_))));
    }

    #[test]
    fn circle_shape() {
        let c = circle();
        assert_eq!(c.rank(0), 3);
        assert_eq!(c.rank(1), 3);
        assert_eq!(c.rank(2), 0);
        assert_eq!(c.rank(-1), 0);
        assert_eq!(c.differential(5).rows(), 0);
        assert_eq!(c.differential(1).rows(), 3);
    }

    #[test]
    fn identity_and_zero_maps_are_valid() {
        let c = circle();
        let id = ChainMap::identity(&c);
        assert_eq!(id.component(1), IntMatrix::identity(3));
        let z = ChainMap::zero(&c, &point());
        assert!(z.is_zero_map());
    }

    #[test]
    fn rejects_non_chain_map() {
        let c = circle();
        let mut comps = BTreeMap::new();
        comps.insert(0, IntMatrix::identity(3));
        comps.insert(1, IntMatrix::from_rows(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(matches!(
            ChainMap::new(c.clone(), c, comps),
            Err(ChainError::NotAChainMap(_))
        ));
    }

    #[test]
    fn degree_two_map_is_a_chain_map() {
        let f = circle_degree_two();
        assert_eq!(f.component(1).cols(), 3);
    }

    #[test]
    fn shift_reindexes() {
        let c = circle().shift(1);
        assert_eq!(c.rank(1), 3);
        assert_eq!(c.rank(2), 3);
        assert_eq!(c.rank(0), 0);
    }

    #[test]
    fn direct_sum_ranks() {
        let s = direct_sum(&[circle(), point()]);
        assert_eq!(s.rank(0), 4);
        assert_eq!(s.rank(1), 3);
    }

    #[test]
    fn homotopy_generation_from_components() {
        let c = circle();
        let f = ChainMap::identity(&c);
        let mut comps = BTreeMap::new();
        comps.insert(0, IntMatrix::from_rows(&[&[1, 0, 0], &[0, 2, 0], &[-1, 0, 3]]));
        let h = ChainHomotopy::from_components(&f, comps).unwrap();
        assert_eq!(h.from_map().component(0), IntMatrix::identity(3));
        // to_map differs from f by dH + Hd, still a chain map by construction
        assert_ne!(h.to_map().component(0), IntMatrix::identity(3));
    }

    #[test]
    fn zero_complex_edge_cases() {
        let z = ChainComplex::zero();
        assert_eq!(z.rank(0), 0);
        let id = ChainMap::identity(&z);
        assert!(id.is_zero_map());
        let h = ChainHomotopy::zero(&id);
        assert_eq!(h.component(0).rows(), 0);
    }
}
