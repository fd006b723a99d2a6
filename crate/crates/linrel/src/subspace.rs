//! Exact matrices over `Q(i)` and subspaces kept in a canonical form.
//!
//! A [`Subspace`] stores a reduced row-echelon basis of itself: pivot
//! columns strictly increase, every pivot entry is `1`, pivot columns are
//! zero elsewhere, and no zero rows are kept. RREF bases are unique per row
//! space, so structural equality of subspaces is mathematical equality, and
//! re-canonicalizing or permuting spanning vectors cannot change the stored
//! form.

use std::ops::Index;

use num::{One, Zero};
use thiserror::Error;

use crate::exact::GaussianRational;

type Q = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector length {found} does not match dimension {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("matrix shape mismatch: {context} ({left} vs {right})")]
    ShapeMismatch { context: &'static str, left: usize, right: usize },
}

/// Dense row-major matrix over `Q(i)`. Zero-row and zero-column shapes are
/// legal everywhere; they show up as degenerate pencil blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; `cols` is explicit so an empty row list is
    /// unambiguous.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Result<Self, SubspaceError> {
        for row in &rows {
            if row.len() != cols {
                return Err(SubspaceError::VectorLength { expected: cols, found: row.len() });
            }
        }
        let nrows = rows.len();
        Ok(Matrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Q]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] * s)
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix addition shape");
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] + &rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix subtraction shape");
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] - &rhs[(r, c)])
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = &out[(r, c)] + &(a * &rhs[(k, c)]);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// `self * v` for a column vector given as a slice.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() {
                        acc = &acc + &(&self[(r, c)] * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols, "matrix power needs a square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row count");
        Matrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column count");
        Matrix::from_fn(self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                rhs[(r - self.rows, c)].clone()
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot_row = (row..self.rows).find(|&r| !self[(r, col)].is_zero());
            let Some(pr) = pivot_row else { continue };
            self.swap_rows(row, pr);
            let inv = self[(row, col)].inv().expect("pivot entry is nonzero");
            for c in col..self.cols {
                let v = &self[(row, c)] * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    let v = &self[(r, c)] - &(&factor * &self[(row, c)]);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref_in_place().len()
    }

    /// Basis of `{x : self * x = 0}` in the standard free-column form.
    pub fn null_space_basis(&self) -> Vec<Vec<Q>> {
        let mut work = self.clone();
        let pivots = work.rref_in_place();
        let pivot_in_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_in_col[free].is_some() {
                continue;
            }
            let mut x = vec![Q::zero(); self.cols];
            x[free] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -&work[(r, free)];
            }
            basis.push(x);
        }
        basis
    }

    /// Exact determinant by fraction-full elimination.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut sign_flip = false;
        let mut det = Q::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work[(r, col)].is_zero());
            let Some(pr) = pivot_row else { return Q::zero() };
            if pr != col {
                work.swap_rows(col, pr);
                sign_flip = !sign_flip;
            }
            let pivot = work[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot entry is nonzero");
            for r in col + 1..n {
                if work[(r, col)].is_zero() {
                    continue;
                }
                let factor = &work[(r, col)] * &inv;
                for c in col..n {
                    let v = &work[(r, c)] - &(&factor * &work[(col, c)]);
                    work.set(r, c, v);
                }
            }
        }
        if sign_flip {
            -det
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| aug[(r, n + c)].clone()))
    }

    /// One exact solution of `self * x = b`, if the system is consistent
    /// (free variables are set to zero).
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let rhs = Matrix::from_rows(self.rows, vec![b.to_vec()]).expect("shape checked").transpose();
        let mut aug = self.hstack(&rhs);
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Image `{self * u : u in space}` as a subspace of the codomain.
    pub fn image(&self, space: &Subspace) -> Result<Subspace, SubspaceError> {
        if self.cols != space.ambient_dim() {
            return Err(SubspaceError::ShapeMismatch {
                context: "image: matrix columns vs ambient dimension",
                left: self.cols,
                right: space.ambient_dim(),
            });
        }
        let rows: Vec<Vec<Q>> = space.basis_vectors().map(|u| self.apply(u)).collect();
        Subspace::span(self.rows, rows)
    }

    /// Preimage `{x : self * x in space}` as a subspace of the domain.
    pub fn preimage(&self, space: &Subspace) -> Result<Subspace, SubspaceError> {
        if self.rows != space.ambient_dim() {
            return Err(SubspaceError::ShapeMismatch {
                context: "preimage: matrix rows vs ambient dimension",
                left: self.rows,
                right: space.ambient_dim(),
            });
        }
        let constraints = space.constraint_matrix();
        let composed = constraints.mul(self);
        Subspace::span(self.cols, composed.null_space_basis())
    }
}

/// How two subspaces of a common ambient space relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOrder {
    Equal,
    LeftInsideRight,
    RightInsideLeft,
    Incomparable,
}

/// A linear subspace of `Q(i)^n`, stored by its unique RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    /// Canonicalize a spanning set. Zero vectors and dependent vectors are
    /// harmless; vectors of the wrong length are an error.
    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Result<Self, SubspaceError> {
        let m = Matrix::from_rows(ambient, vectors)?;
        Ok(Self::from_matrix_rows(m))
    }

    /// Canonicalize the row space of a matrix.
    pub fn from_matrix_rows(mut m: Matrix) -> Self {
        let pivots = m.rref_in_place();
        let dim = pivots.len();
        let basis = Matrix::from_fn(dim, m.cols(), |r, c| m[(r, c)].clone());
        Subspace { ambient: m.cols(), basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Q]> {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient != other.ambient {
            return Err(SubspaceError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool, SubspaceError> {
        if v.len() != self.ambient {
            return Err(SubspaceError::VectorLength { expected: self.ambient, found: v.len() });
        }
        let mut rem = v.to_vec();
        for row in self.basis.row_vectors() {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            let coeff = rem[pivot_col].clone();
            if coeff.is_zero() {
                continue;
            }
            for (r, b) in rem.iter_mut().zip(row.iter()) {
                *r = &*r - &(&coeff * b);
            }
        }
        Ok(rem.iter().all(Q::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        self.check_ambient(other)?;
        for row in self.basis.row_vectors() {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn compare(&self, other: &Subspace) -> Result<SubspaceOrder, SubspaceError> {
        let left_in_right = self.is_subspace_of(other)?;
        let right_in_left = other.is_subspace_of(self)?;
        Ok(match (left_in_right, right_in_left) {
            (true, true) => SubspaceOrder::Equal,
            (true, false) => SubspaceOrder::LeftInsideRight,
            (false, true) => SubspaceOrder::RightInsideLeft,
            (false, false) => SubspaceOrder::Incomparable,
        })
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix_rows(self.basis.vstack(&other.basis)))
    }

    /// Zassenhaus block elimination: reduce rows `[u|u]` and `[v|0]`; the
    /// right halves of rows whose left half vanished span the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Matrix::zeros(other.basis.rows(), n));
        let mut block = top.vstack(&bottom);
        block.rref_in_place();
        let mut rows = Vec::new();
        for row in block.row_vectors() {
            let left_zero = row[..n].iter().all(Q::is_zero);
            let right_nonzero = row[n..].iter().any(|x| !x.is_zero());
            if left_zero && right_nonzero {
                rows.push(row[n..].to_vec());
            }
        }
        Subspace::span(n, rows)
    }

    /// External direct product: `self x other` inside `Q(i)^(n1+n2)`.
    pub fn product(&self, other: &Subspace) -> Subspace {
        let n1 = self.ambient;
        let n2 = other.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis_vectors() {
            let mut row = u.to_vec();
            row.extend(std::iter::repeat_with(Q::zero).take(n2));
            rows.push(row);
        }
        for v in other.basis_vectors() {
            let mut row: Vec<Q> = std::iter::repeat_with(Q::zero).take(n1).collect();
            row.extend_from_slice(v);
            rows.push(row);
        }
        Subspace::span(n1 + n2, rows).expect("product rows have the right length")
    }

    /// Rows spanning `{c : b . c = 0 for every basis vector b}`; the space
    /// is exactly the solution set of these constraints.
    pub(crate) fn constraint_matrix(&self) -> Matrix {
        let rows = self.basis.null_space_basis();
        Matrix::from_rows(self.ambient, rows).expect("null space vectors have ambient length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn vecq(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&n| q(n)).collect()
    }

    fn mat(cols: usize, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(cols, rows.iter().map(|r| vecq(r)).collect()).unwrap()
    }

    fn space(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(ambient, rows.iter().map(|r| vecq(r)).collect()).unwrap()
    }

    #[test]
    fn canonicalize_reduces_dependent_spanning_set() {
        let s = space(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &mat(3, &[&[1, 0, -1], &[0, 1, 1]]));
    }

    #[test]
    fn canonicalize_of_zero_vectors_keeps_ambient() {
        let s = space(4, &[&[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient_dim(), 4);
        assert_eq!(s, Subspace::zero(4));
    }

    #[test]
    fn span_rejects_wrong_length() {
        let err = Subspace::span(3, vec![vecq(&[1, 2])]).unwrap_err();
        assert_eq!(err, SubspaceError::VectorLength { expected: 3, found: 2 });
    }

    #[test]
    fn intersection_of_line_and_plane() {
        let line = space(3, &[&[1, 1, 0]]);
        let plane = space(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(line.intersect(&plane).unwrap(), line);
    }

    #[test]
    fn intersection_with_zero_is_zero() {
        let s = space(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(s.intersect(&Subspace::zero(2)).unwrap(), Subspace::zero(2));
    }

    #[test]
    fn sum_and_ambient_mismatch() {
        let a = space(2, &[&[1, 0]]);
        let b = space(3, &[&[1, 0, 0]]);
        assert!(matches!(a.sum(&b), Err(SubspaceError::AmbientMismatch { .. })));
    }

    #[test]
    fn image_and_preimage_of_nilpotent_shift() {
        let m = mat(2, &[&[0, 1], &[0, 0]]);
        let u = space(2, &[&[1, 0]]);
        assert_eq!(m.image(&u).unwrap(), Subspace::zero(2));
        assert_eq!(m.preimage(&u).unwrap(), Subspace::full(2));
    }

    #[test]
    fn preimage_of_zero_is_null_space() {
        let m = mat(2, &[&[1, 0]]);
        let ker = m.preimage(&Subspace::zero(1)).unwrap();
        assert_eq!(ker, space(2, &[&[0, 1]]));
    }

    #[test]
    fn compare_detects_incomparable_lines() {
        let a = space(2, &[&[1, 1]]);
        let b = space(2, &[&[1, 0]]);
        assert_eq!(a.compare(&b).unwrap(), SubspaceOrder::Incomparable);
        assert_eq!(a.compare(&a).unwrap(), SubspaceOrder::Equal);
        let plane = Subspace::full(2);
        assert_eq!(a.compare(&plane).unwrap(), SubspaceOrder::LeftInsideRight);
        assert_eq!(plane.compare(&a).unwrap(), SubspaceOrder::RightInsideLeft);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::identity(3).det(), Q::one());
        assert_eq!(mat(2, &[&[0, 1], &[1, 0]]).det(), q(-1));
        assert_eq!(mat(2, &[&[1, 2], &[2, 4]]).det(), q(0));
        assert_eq!(mat(3, &[&[1, 0, 1], &[2, 1, 3], &[4, 4, 9]]).det(), q(1));
        assert_eq!(Matrix::zeros(0, 0).det(), Q::one());
    }

    #[test]
    fn zero_shaped_matrices_are_supported() {
        let wide = Matrix::zeros(0, 3);
        assert_eq!(wide.rank(), 0);
        assert_eq!(wide.null_space_basis().len(), 3);
        let tall = Matrix::zeros(3, 0);
        assert_eq!(tall.rank(), 0);
        assert!(tall.null_space_basis().is_empty());
        let s = Subspace::from_matrix_rows(wide);
        assert_eq!(s, Subspace::zero(3));
        assert_eq!(Subspace::full(0).dim(), 0);
    }

    #[test]
    fn solve_finds_particular_solution() {
        let m = mat(3, &[&[1, 0, 1], &[0, 1, 1]]);
        let x = m.solve(&vecq(&[2, 3])).unwrap();
        assert_eq!(m.apply(&x), vecq(&[2, 3]));
        assert!(m.solve(&vecq(&[1, 1])).is_some());
        let inconsistent = mat(1, &[&[0], &[1]]);
        assert!(inconsistent.solve(&vecq(&[1, 0])).is_none());
    }

    fn arb_q() -> impl Strategy<Value = Q> {
        (-3i64..=3, 1i64..=2).prop_map(|(n, d)| Q::from_parts(n, d, 0, 1))
    }

    fn arb_vector(n: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec(arb_q(), n)
    }

    fn arb_space(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(arb_vector(n), 0..=n + 1)
            .prop_map(move |vs| Subspace::span(n, vs).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonicalize_is_order_invariant(vs in proptest::collection::vec(arb_vector(3), 1..4)) {
            let s1 = Subspace::span(3, vs.clone()).unwrap();
            let mut rev = vs;
            rev.reverse();
            let s2 = Subspace::span(3, rev).unwrap();
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn canonicalize_is_idempotent(s in arb_space(4)) {
            let again = Subspace::span(4, s.basis_vectors().map(|r| r.to_vec()).collect()).unwrap();
            prop_assert_eq!(again, s);
        }

        #[test]
        fn dimension_formula(u in arb_space(4), v in arb_space(4)) {
            let sum = u.sum(&v).unwrap();
            let meet = u.intersect(&v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), sum.dim() + meet.dim());
            prop_assert!(meet.is_subspace_of(&u).unwrap());
            prop_assert!(meet.is_subspace_of(&v).unwrap());
            prop_assert!(u.is_subspace_of(&sum).unwrap());
        }

        #[test]
        fn modular_law(v in arb_space(4), w in arb_space(4), picks in proptest::collection::vec(any::<bool>(), 4)) {
            // U is spanned by a subset of W's basis, so U <= W by construction.
            let u_rows: Vec<Vec<Q>> = w
                .basis_vectors()
                .zip(picks.iter().cycle())
                .filter(|(_, &keep)| keep)
                .map(|(r, _)| r.to_vec())
                .collect();
            let u = Subspace::span(4, u_rows).unwrap();
            let lhs = u.sum(&v.intersect(&w).unwrap()).unwrap();
            let rhs = u.sum(&v).unwrap().intersect(&w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn intersection_by_membership(u in arb_space(3), v in arb_space(3)) {
            let meet = u.intersect(&v).unwrap();
            for row in meet.basis_vectors() {
                prop_assert!(u.contains(row).unwrap());
                prop_assert!(v.contains(row).unwrap());
            }
        }

        #[test]
        fn inverse_round_trip(rows in proptest::collection::vec(arb_vector(3), 3)) {
            let m = Matrix::from_rows(3, rows).unwrap();
            if let Some(inv) = m.inverse() {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(3));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(3));
            } else {
                prop_assert!(m.rank() < 3);
            }
        }

        #[test]
        fn null_space_vectors_are_in_kernel(rows in proptest::collection::vec(arb_vector(4), 0..4)) {
            let m = Matrix::from_rows(4, rows).unwrap();
            for x in m.null_space_basis() {
                prop_assert!(m.apply(&x).iter().all(Q::is_zero));
            }
            prop_assert_eq!(m.rank() + m.null_space_basis().len(), 4);
        }
    }
}
