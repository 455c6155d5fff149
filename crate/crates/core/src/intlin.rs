//! Exact integer linear algebra: Smith normal form, kernels, cokernel
//! presentations. Everything is computed over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::Index;

use crate::fgab::FgAbGroup;

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from a flat row-major entry list.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match {}x{}",
            entries.len(),
            rows,
            cols
        );
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            for e in row {
                entries.push(e.clone().into());
            }
        }
        IntMatrix::new(nrows, ncols, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix::new(rows, cols, entries)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Square matrix with the given diagonal, zero elsewhere.
    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.at(i, k) * other.at(k, j);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, indices.len(), |i, j| {
            self.at(i, indices[j]).clone()
        })
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(indices.len(), self.cols, |i, j| {
            self.at(indices[i], j).clone()
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Panics on non-square input.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    a.set(i, j, &num / &prev);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        sign * a.at(n - 1, n - 1).clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += q * row_k
    fn add_row_multiple(&mut self, i: usize, k: usize, q: &BigInt) {
        for c in 0..self.cols {
            let delta = q * self.at(k, c);
            let cur = self.at(i, c).clone();
            self.set(i, c, cur + delta);
        }
    }

    /// col_j += q * col_k
    fn add_col_multiple(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in 0..self.rows {
            let delta = q * self.at(r, k);
            let cur = self.at(r, j).clone();
            self.set(r, j, cur + delta);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let cur = self.at(i, c).clone();
            self.set(i, c, -cur);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.at(i, j)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form `U * M * V = S` with `U`, `V` unimodular and `S`
/// diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// The diagonal of `S`: nonnegative, d1 | d2 | ..., zeros trailing.
    pub diag: Vec<BigInt>,
}

/// Smith normal form together with the inverses of the transforms,
/// accumulated during the reduction. `u_inv * S * v_inv = M`.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

impl SnfDecomposition {
    pub fn result(&self) -> SnfResult {
        SnfResult {
            u: self.u.clone(),
            s: self.s.clone(),
            v: self.v.clone(),
            diag: self.diag.clone(),
        }
    }
}

/// Computes the Smith normal form of `m`.
pub fn snf(m: &IntMatrix) -> SnfResult {
    snf_extended(m).result()
}

/// Smith normal form with transform inverses.
///
/// Pivots on a smallest-magnitude nonzero entry of the remaining
/// submatrix to limit coefficient growth.
pub fn snf_extended(m: &IntMatrix) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Elementary operations applied to S are mirrored on U (rows) or V
    // (cols), with the inverse operation applied to u_inv / v_inv so that
    // u_inv * S * v_inv = M stays true throughout.
    let mut t = 0;
    let steps = rows.min(cols);
    'pivot: while t < steps {
        let pivot_pos = smallest_nonzero(&s, t);
        let (pi, pj) = match pivot_pos {
            Some(p) => p,
            None => break,
        };
        if pi != t {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
        }
        if pj != t {
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }

        // Euclidean reduction of column t and row t by the pivot.  Any
        // nonzero remainder means a smaller entry appeared, so re-pivot.
        let mut dirty = false;
        for i in t + 1..rows {
            if s.at(i, t).is_zero() {
                continue;
            }
            let q = -(s.at(i, t) / s.at(t, t));
            s.add_row_multiple(i, t, &q);
            u.add_row_multiple(i, t, &q);
            u_inv.add_col_multiple(t, i, &(-&q));
            if !s.at(i, t).is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..cols {
            if s.at(t, j).is_zero() {
                continue;
            }
            let q = -(s.at(t, j) / s.at(t, t));
            s.add_col_multiple(j, t, &q);
            v.add_col_multiple(j, t, &q);
            v_inv.add_row_multiple(t, j, &(-&q));
            if !s.at(t, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue 'pivot;
        }

        // Pivot row/column are clear; make the pivot divide everything in
        // the remaining submatrix before moving on (ensures the chain).
        for i in t + 1..rows {
            for j in t + 1..cols {
                if (s.at(i, j) % s.at(t, t)).is_zero() {
                    continue;
                }
                let one = BigInt::one();
                s.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                u_inv.add_col_multiple(i, t, &(-&one));
                continue 'pivot;
            }
        }
        t += 1;
    }

    // Normalize signs on the diagonal.
    for i in 0..steps {
        if s.at(i, i).is_negative() {
            s.negate_row(i);
            u.negate_row(i);
            // negating a row is its own inverse; mirror as a column negation
            for r in 0..rows {
                let cur = u_inv.at(r, i).clone();
                u_inv.set(r, i, -cur);
            }
        }
    }

    let diag: Vec<BigInt> = (0..steps).map(|i| s.at(i, i).clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    SnfDecomposition {
        u,
        u_inv,
        s,
        v,
        v_inv,
        diag,
        rank,
    }
}

fn smallest_nonzero(s: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_mag: Option<BigInt> = None;
    for i in from..s.rows() {
        for j in from..s.cols() {
            let e = s.at(i, j);
            if e.is_zero() {
                continue;
            }
            let mag = e.abs();
            if best_mag.as_ref().is_none_or(|b| mag < *b) {
                best = Some((i, j));
                best_mag = Some(mag);
            }
        }
    }
    best
}

/// Rank of `m` over the integers (= over the rationals).
pub fn rank(m: &IntMatrix) -> usize {
    snf_extended(m).rank
}

/// Basis of the integer null space `{x : Mx = 0}` as matrix columns.
///
/// The number of columns is `cols(M) - rank(M)`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let d = snf_extended(m);
    // M (V e_j) = U^-1 S e_j = 0 exactly for the columns past the rank.
    let free: Vec<usize> = (d.rank..m.cols()).collect();
    d.v.select_columns(&free)
}

/// Canonical form of the quotient `Z^rows / (column span of M)`.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let d = snf_extended(m);
    let rank = m.rows() - d.rank;
    let torsion: Vec<BigInt> = d
        .diag
        .iter()
        .filter(|e| !e.is_zero() && !e.is_one())
        .cloned()
        .collect();
    FgAbGroup::new(rank, torsion)
}

/// Solves `M x = b` over the integers, if a solution exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows(), "rhs length mismatch");
    let d = snf_extended(m);
    let z = d.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, zi) in z.iter().enumerate() {
        if i < d.diag.len() && !d.diag[i].is_zero() {
            if !(zi % &d.diag[i]).is_zero() {
                return None;
            }
            y[i] = zi / &d.diag[i];
        } else if !zi.is_zero() {
            return None;
        }
    }
    Some(d.v.mul_vec(&y))
}

/// A basis (as columns) of the lattice spanned by the columns of `m`.
pub fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let d = snf_extended(m);
    // im(M) = u_inv . im(S), so the nonzero diagonal picks the basis.
    IntMatrix::from_fn(m.rows(), d.rank, |i, j| d.u_inv.at(i, j) * &d.diag[j])
}

/// Whether `x` lies in the column lattice of `basis`.
pub fn lattice_contains(basis: &IntMatrix, x: &[BigInt]) -> bool {
    solve(basis, x).is_some()
}

/// Basis of `{x : F x ∈ column lattice of L}`.
///
/// `F` is n'×n, `L` is n'×t; the result is a basis of a sublattice of Z^n.
pub fn preimage_lattice(f: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    assert_eq!(f.rows(), l.rows(), "ambient dimension mismatch");
    // (x, y) with F x = L y  <=>  [F | -L] (x; y) = 0
    let neg_l = IntMatrix::from_fn(l.rows(), l.cols(), |i, j| -l.at(i, j));
    let stacked = f.hstack(&neg_l);
    let ker = kernel_basis(&stacked);
    let projected = ker.select_rows(&(0..f.cols()).collect::<Vec<_>>());
    column_lattice_basis(&projected)
}
