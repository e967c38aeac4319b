//! Dense matrices over the integers with exact arithmetic.
//!
//! Every homological computation in this crate reduces to Smith normal form,
//! kernel lattices and lattice membership over Z, all of which live here.
//! Entries are arbitrary-precision; empty (0 x n, n x 0) matrices are
//! first-class since bounded complexes produce them at their ends.

use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Test helper: build from machine-integer rows.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| Int::from(rows[i][j]))
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = Int::from(d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(k, x)| {
                if k / self.cols == k % self.cols {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in mul: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn column_matrix(&self, j: usize) -> IntMatrix {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn from_column(col: &[Int]) -> IntMatrix {
        Self::from_fn(col.len(), 1, |i, _| col[i].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn take_rows(&self, lo: usize, hi: usize) -> IntMatrix {
        Self::from_fn(hi - lo, self.cols, |i, j| self[(lo + i, j)].clone())
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "col mismatch in vstack");
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    /// Assemble a matrix from a grid of blocks. Row heights / column widths
    /// are dictated by `row_sizes` / `col_sizes`; `blocks[i][j]` may be None
    /// for a zero block.
    pub fn from_blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<&IntMatrix>>],
    ) -> Self {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Self::zero(rows, cols);
        let mut roff = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut coff = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!((b.rows, b.cols), (rs, cs), "block ({bi},{bj}) shape mismatch");
                    for i in 0..rs {
                        for j in 0..cs {
                            out[(roff + i, coff + j)] = b[(i, j)].clone();
                        }
                    }
                }
                coff += cs;
            }
            roff += rs;
        }
        out
    }

    pub fn block_diagonal(blocks: &[&IntMatrix]) -> Self {
        let row_sizes: Vec<usize> = blocks.iter().map(|b| b.rows).collect();
        let col_sizes: Vec<usize> = blocks.iter().map(|b| b.cols).collect();
        let grid: Vec<Vec<Option<&IntMatrix>>> = (0..blocks.len())
            .map(|i| {
                (0..blocks.len())
                    .map(|j| if i == j { Some(blocks[i]) } else { None })
                    .collect()
            })
            .collect();
        Self::from_blocks(&row_sizes, &col_sizes, &grid)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += q * row_b
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for j in 0..self.cols {
            let t = &self[(b, j)] * q;
            self[(a, j)] += t;
        }
    }

    /// col_a += q * col_b
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let t = &self[(i, b)] * q;
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let t = -self[(i, a)].clone();
            self[(i, a)] = t;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Used as an
    /// independent check on the unimodularity of SNF transforms and for
    /// lattice indices.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match pivot {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = &t / &prev;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `d = u * m * v` with unimodular `u`, `v` and their
/// tracked inverses. `d` is diagonal with nonnegative entries forming a
/// divisibility chain d1 | d2 | ...
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn diagonal_entries(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Position of the entry of smallest nonzero absolute value in the trailing
/// block, scanning row-major so ties break deterministically.
fn min_abs_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<Int> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            match &best_abs {
                Some(b) if ax >= *b => {}
                _ => {
                    best_abs = Some(ax);
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// Smith normal form. Pivoting picks the smallest nonzero absolute value
/// with row-major tie-breaking so the output is reproducible bit for bit.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row ops applied to `a` are mirrored on u; the inverse op lands on
    // u_inv from the other side. Same for columns with v.
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for r in t + 1..rows {
                if a[(r, t)].is_zero() {
                    continue;
                }
                let q = &a[(r, t)] / &a[(t, t)];
                if !q.is_zero() {
                    let nq = -q.clone();
                    a.add_row_multiple(r, t, &nq);
                    u.add_row_multiple(r, t, &nq);
                    u_inv.add_col_multiple(t, r, &q);
                }
                if !a[(r, t)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A residue strictly smaller than the pivot exists; rotate it up.
                let (pi, pj) = min_abs_pivot(&a, t).expect("residue exists");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
                continue;
            }
            // Clear row t right of the pivot.
            for c in t + 1..cols {
                if a[(t, c)].is_zero() {
                    continue;
                }
                let q = &a[(t, c)] / &a[(t, t)];
                if !q.is_zero() {
                    let nq = -q.clone();
                    a.add_col_multiple(c, t, &nq);
                    v.add_col_multiple(c, t, &nq);
                    v_inv.add_row_multiple(t, c, &q);
                }
                if !a[(t, c)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_abs_pivot(&a, t).expect("residue exists");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
                continue;
            }
            // Pivot row/column clean. Enforce divisibility of the trailing block.
            let mut fixed = true;
            'scan: for r in t + 1..rows {
                for c in t + 1..cols {
                    if (&a[(r, c)] % &a[(t, t)]).is_zero() {
                        continue;
                    }
                    let one = Int::one();
                    a.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                    let neg_one = -Int::one();
                    u_inv.add_col_multiple(r, t, &neg_one);
                    fixed = false;
                    break 'scan;
                }
            }
            if fixed {
                break;
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_col(t);
            v.negate_col(t);
            v_inv.negate_row(t);
        }
        t += 1;
    }

    SmithDecomposition { u, u_inv, d: a, v, v_inv, rank: t }
}

/// Columns form a basis of ker(M) as a saturated sublattice of Z^cols.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank..m.cols()).collect();
    snf.v.select_columns(&idx)
}

/// Solver for `M x = b` over the integers, reusing one SNF for many
/// right-hand sides. Also answers column-lattice membership.
pub struct LinearSolver {
    snf: SmithDecomposition,
    rows: usize,
    cols: usize,
}

impl LinearSolver {
    pub fn new(m: &IntMatrix) -> Self {
        LinearSolver { snf: smith_normal_form(m), rows: m.rows(), cols: m.cols() }
    }

    pub fn rank(&self) -> usize {
        self.snf.rank
    }

    /// A particular integral solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let bm = IntMatrix::from_column(b);
        let ub = self.snf.u.mul(&bm);
        let mut y = vec![Int::zero(); self.cols];
        for i in 0..self.rows {
            let bi = &ub[(i, 0)];
            if i < self.snf.rank {
                let d = &self.snf.d[(i, i)];
                if (bi % d).is_zero() {
                    y[i] = bi / d;
                } else {
                    return None;
                }
            } else if !bi.is_zero() {
                return None;
            }
        }
        let x = self.snf.v.mul(&IntMatrix::from_column(&y));
        Some(x.column(0))
    }

    pub fn contains(&self, b: &[Int]) -> bool {
        self.solve(b).is_some()
    }

    /// Columnwise solve `M X = B`; None if any column has no integral solution.
    pub fn solve_matrix(&self, b: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(b.rows(), self.rows, "rhs rows mismatch");
        let mut out = IntMatrix::zero(self.cols, b.cols());
        for j in 0..b.cols() {
            let x = self.solve(&b.column(j))?;
            for i in 0..self.cols {
                out[(i, j)] = x[i].clone();
            }
        }
        Some(out)
    }
}

/// Solve `M x = b` once (see [`LinearSolver`] for batched use).
pub fn solve(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    LinearSolver::new(m).solve(b)
}

/// Do the column lattices of `a` and `b` coincide? Both are generating sets
/// of sublattices of the same ambient Z^rows; equality is mutual membership.
pub fn lattices_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows(), "ambient rank mismatch");
    let sa = LinearSolver::new(a);
    let sb = LinearSolver::new(b);
    (0..b.cols()).all(|j| sa.contains(&b.column(j)))
        && (0..a.cols()).all(|j| sb.contains(&a.column(j)))
}

/// Is lat(inner) contained in lat(outer)?
pub fn lattice_contains(outer: &IntMatrix, inner: &IntMatrix) -> bool {
    assert_eq!(outer.rows(), inner.rows(), "ambient rank mismatch");
    let s = LinearSolver::new(outer);
    (0..inner.cols()).all(|j| s.contains(&inner.column(j)))
}
