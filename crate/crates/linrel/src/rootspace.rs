//! Root spaces, singular chains, and Jordan chains of linear relations.
//!
//! For a relation `A` and a finite `lambda`, the root space at `lambda` is
//! the union of the kernels `ker (A - lambda)^i`; at infinity it is the
//! union of the multivalued parts `mul A^i`. Both unions are increasing and
//! stabilize after at most `space_dim` steps, so they are computed by exact
//! iteration. The singular chain space is the intersection of the root
//! spaces at `0` and at infinity; its nonzero elements are exactly the
//! entries of chains that start and end at `0`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Zero};
use thiserror::Error;

use crate::exact::{GaussianRational, Rational, ScalarParseError};
use crate::relation::LinearRelation;
use crate::subspace::{Matrix, Subspace};

type Q = GaussianRational;

/// A point of the extended scalar plane `Q(i) u {infinity}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedScalar {
    Finite(GaussianRational),
    Infinity,
}

impl ExtendedScalar {
    pub fn zero() -> Self {
        ExtendedScalar::Finite(Q::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtendedScalar::Finite(Q::from_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedScalar::Finite(_))
    }
}

impl fmt::Display for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedScalar::Finite(q) => write!(f, "{}", q),
            ExtendedScalar::Infinity => write!(f, "inf"),
        }
    }
}

/// `inf` for the point at infinity, otherwise the scalar grammar.
impl FromStr for ExtendedScalar {
    type Err = ScalarParseError;
    fn from_str(s: &str) -> Result<Self, ScalarParseError> {
        if s == "inf" {
            Ok(ExtendedScalar::Infinity)
        } else {
            s.parse::<GaussianRational>().map(ExtendedScalar::Finite)
        }
    }
}

/// Non-decreasing list of block sizes (each at least 1).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(mut entries: Vec<usize>) -> Result<Self, RootSpaceError> {
        if entries.contains(&0) {
            return Err(RootSpaceError::ZeroMultiIndexEntry);
        }
        entries.sort_unstable();
        Ok(MultiIndex { entries })
    }

    pub fn empty() -> Self {
        MultiIndex { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all block sizes.
    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSpaceError {
    #[error("multi-index entries must be at least 1")]
    ZeroMultiIndexEntry,
    #[error("chain needs at least {needed} vectors, found {found}")]
    ChainTooShort { needed: usize, found: usize },
    #[error("chain vector {index} has length {found}, expected {expected}")]
    ChainVectorLength { index: usize, expected: usize, found: usize },
}

/// What kind of chain a [`Chain`] is, fixing which membership equations
/// [`Chain::verify`] checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainKind {
    /// `(x_i, x_{i-1} + lambda x_i) in A` for `i = 1..n`, with `x_0 = 0`;
    /// the endpoint is `x_n`.
    JordanFinite(GaussianRational),
    /// `(0, y_1) in A` and `(y_i, y_{i+1}) in A`; the endpoint is the last
    /// vector.
    JordanInfinite,
    /// `(0, u_k), (u_k, u_{k-1}), ..., (u_2, u_1), (u_1, 0) in A`, stored
    /// ascending as `u_1, ..., u_k`.
    Singular,
}

/// An ordered list of vectors satisfying chain membership equations in a
/// relation; see [`ChainKind`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    kind: ChainKind,
    space_dim: usize,
    vectors: Vec<Vec<Q>>,
}

impl Chain {
    pub fn new(kind: ChainKind, space_dim: usize, vectors: Vec<Vec<Q>>) -> Self {
        Chain { kind, space_dim, vectors }
    }

    pub fn kind(&self) -> &ChainKind {
        &self.kind
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Check every membership equation of the chain, endpoints included.
    pub fn verify(&self, a: &LinearRelation) -> bool {
        if a.space_dim() != self.space_dim {
            return false;
        }
        let zero = vec![Q::zero(); self.space_dim];
        let holds = |x: &[Q], y: &[Q]| a.contains_pair(x, y).expect("chain vector lengths match");
        match &self.kind {
            ChainKind::JordanFinite(lambda) => {
                let mut prev = zero;
                for x in &self.vectors {
                    let target: Vec<Q> =
                        prev.iter().zip(x.iter()).map(|(p, xi)| p + &(lambda * xi)).collect();
                    if !holds(x, &target) {
                        return false;
                    }
                    prev = x.clone();
                }
                true
            }
            ChainKind::JordanInfinite => {
                let mut prev = zero;
                for y in &self.vectors {
                    if !holds(&prev, y) {
                        return false;
                    }
                    prev = y.clone();
                }
                true
            }
            ChainKind::Singular => {
                if self.vectors.is_empty() {
                    return false;
                }
                if !holds(&self.vectors[0], &zero) {
                    return false;
                }
                for pair in self.vectors.windows(2) {
                    if !holds(&pair[1], &pair[0]) {
                        return false;
                    }
                }
                holds(&zero, self.vectors.last().expect("nonempty"))
            }
        }
    }
}

fn stabilize(space_dim: usize, mut step: impl FnMut(&Subspace) -> Subspace) -> Subspace {
    let mut current = Subspace::zero(space_dim);
    for _ in 0..=space_dim + 1 {
        let next = step(&current);
        if next == current {
            return current;
        }
        current = next;
    }
    unreachable!("increasing subspace chain must stabilize within space_dim steps");
}

/// Root space of `A` at a finite or infinite point.
///
/// Uses `ker (A - lambda)^{i+1} = {x : exists y in ker (A - lambda)^i with
/// (x, y) in A - lambda}` (and the mirrored recursion through images for
/// the multivalued parts at infinity), iterating until two consecutive
/// terms agree.
pub fn root_space(a: &LinearRelation, at: &ExtendedScalar) -> Subspace {
    match at {
        ExtendedScalar::Finite(lambda) => {
            let shifted = a.shift(lambda);
            stabilize(a.space_dim(), |s| {
                shifted.preimage_of(s).expect("ambient dimensions agree")
            })
        }
        ExtendedScalar::Infinity => {
            stabilize(a.space_dim(), |s| a.image_of(s).expect("ambient dimensions agree"))
        }
    }
}

/// The singular chain space: the intersection of the root spaces at `0`
/// and at infinity.
pub fn singular_chain_space(a: &LinearRelation) -> Subspace {
    let at_zero = root_space(a, &ExtendedScalar::zero());
    let at_infinity = root_space(a, &ExtendedScalar::Infinity);
    at_zero.intersect(&at_infinity).expect("same ambient space")
}

/// The increasing kernel chain of `A - lambda` (or the multivalued chain of
/// `A` at infinity) up to and including the stabilized space. Index `i`
/// holds the `i`-th term, starting from the zero subspace.
fn structure_chain(a: &LinearRelation, at: &ExtendedScalar) -> Vec<Subspace> {
    let m = a.space_dim();
    let mut chain = vec![Subspace::zero(m)];
    loop {
        let prev = chain.last().expect("chain starts nonempty");
        let next = match at {
            ExtendedScalar::Finite(lambda) => {
                a.shift(lambda).preimage_of(prev).expect("ambient dimensions agree")
            }
            ExtendedScalar::Infinity => a.image_of(prev).expect("ambient dimensions agree"),
        };
        if &next == prev {
            return chain;
        }
        assert!(chain.len() <= m + 1, "kernel chain failed to stabilize");
        chain.push(next);
    }
}

/// A Jordan chain of minimal length whose endpoint is `x`, or `None` when
/// `x` is outside the root space at the given point.
///
/// For finite `lambda` the chain `x_1, ..., x_n = x` satisfies
/// `(x_i, x_{i-1} + lambda x_i) in A` with `x_0 = 0`; at infinity it is a
/// chain `y_1, ..., y_n = x` with `(0, y_1) in A` and `(y_i, y_{i+1}) in A`.
/// When the singular chain space is trivial the chain is unique and the
/// solution set at every descent step is asserted zero-dimensional.
pub fn jordan_chain(a: &LinearRelation, at: &ExtendedScalar, x: &[Q]) -> Option<Chain> {
    assert_eq!(x.len(), a.space_dim(), "endpoint must live in the relation's space");
    let (worker, kind) = match at {
        ExtendedScalar::Finite(lambda) => {
            (a.shift(lambda), ChainKind::JordanFinite(lambda.clone()))
        }
        // A chain at infinity in A is a chain at 0 in the inverse, read
        // through swapped pairs.
        ExtendedScalar::Infinity => (a.inverse(), ChainKind::JordanInfinite),
    };
    let vectors = descend_kernel_chain(a, &worker, x)?;
    let chain = Chain::new(kind, a.space_dim(), vectors);
    assert!(chain.verify(a), "constructed Jordan chain must satisfy its membership equations");
    Some(chain)
}

/// Solve the descent `(x_{i+1}, x_i) in B`, `x_i in ker B^i` from the
/// minimal `n` with `x in ker B^n` down to `x_1`; returns `x_1, ..., x_n`.
fn descend_kernel_chain(a: &LinearRelation, b: &LinearRelation, x: &[Q]) -> Option<Vec<Vec<Q>>> {
    let m = b.space_dim();
    let kernels = structure_chain(b, &ExtendedScalar::zero());
    let n = kernels.iter().position(|k| k.contains(x).expect("length checked"))?;
    // The uniqueness cross-check needs the chain space and multivalued
    // part only once a descent step actually runs; length-one chains skip
    // both computations.
    let mut uniqueness: Option<Option<Subspace>> = None;
    let mut rev = vec![x.to_vec()];
    let mut current = x.to_vec();
    for i in (1..n).rev() {
        // Pairs of B with second component inside ker B^i.
        let band = Subspace::full(m).product(&kernels[i]);
        let slice = b.graph().intersect(&band).expect("same ambient");
        let first_halves = Matrix::from_rows(
            m,
            slice.basis_vectors().map(|row| row[..m].to_vec()).collect(),
        )
        .expect("graph rows have length 2m")
        .transpose();
        let coeffs = first_halves
            .solve(&current)
            .expect("kernel recursion guarantees a predecessor");
        let mut next = vec![Q::zero(); m];
        for (c, row) in coeffs.iter().zip(slice.basis_vectors()) {
            if c.is_zero() {
                continue;
            }
            for j in 0..m {
                next[j] = &next[j] + &(c * &row[m + j]);
            }
        }
        let mul_b = uniqueness
            .get_or_insert_with(|| singular_chain_space(a).is_zero().then(|| b.mul()));
        if let Some(mul_b) = mul_b {
            let freedom = mul_b.intersect(&kernels[i]).expect("same ambient");
            assert!(
                freedom.is_zero(),
                "chain step must be unique when the singular chain space is trivial"
            );
        }
        rev.push(next.clone());
        current = next;
    }
    rev.reverse();
    Some(rev)
}

/// A singular chain through a nonzero element of the singular chain space,
/// or `None` when that space is trivial.
///
/// The element's Jordan chain at `0` provides the tail that descends to
/// `(u_1, 0)`, its Jordan chain at infinity the head rising from
/// `(0, u_k)`; spliced at the element they form the full chain. Every
/// membership equation is checked before returning.
pub fn extract_singular_chain(a: &LinearRelation) -> Option<Chain> {
    let rc = singular_chain_space(a);
    if rc.is_zero() {
        return None;
    }
    let u = rc.basis_vectors().next().expect("nonzero space has a basis vector").to_vec();
    let tail = jordan_chain(a, &ExtendedScalar::zero(), &u)
        .expect("element of the singular chain space lies in the root space at 0");
    let head = jordan_chain(a, &ExtendedScalar::Infinity, &u)
        .expect("element of the singular chain space lies in the root space at infinity");
    let mut vectors = tail.vectors().to_vec();
    vectors.extend(head.vectors().iter().rev().skip(1).cloned());
    let chain = Chain::new(ChainKind::Singular, a.space_dim(), vectors);
    assert!(chain.verify(a), "spliced singular chain must satisfy its membership equations");
    for v in chain.vectors() {
        assert!(
            rc.contains(v).expect("length checked"),
            "singular chain entries lie in the singular chain space"
        );
    }
    Some(chain)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

fn binomial_q(n: usize, k: usize) -> Q {
    Q::from_rational(Rational::from_integer(binomial(n, k)))
}

fn check_chain_lengths(vectors: &[Vec<Q>]) -> Result<usize, RootSpaceError> {
    let dim = vectors.first().map(|v| v.len()).unwrap_or(0);
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(RootSpaceError::ChainVectorLength {
                index,
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(dim)
}

/// Rebases a chain `(0, x_1), (x_1, x_2), ..., (x_{n-1}, x_n)` of
/// `A - lambda` into one of `A` with the same final pair. The output
/// `z_1, ..., z_{n-1}` satisfies `(0, z_1), (z_1, z_2), ...,
/// (z_{n-1}, x_n) in A`, starts at `z_1 = x_1`, and spans the same subspace
/// as `x_1, ..., x_{n-1}`; the transform is unitriangular:
///
/// `z_m = sum_{i=1}^{m} C(n-i-1, n-m-1) (-lambda)^{m-i} x_i`.
pub fn shift_chain_transform(
    lambda: &Q,
    vectors: &[Vec<Q>],
) -> Result<Vec<Vec<Q>>, RootSpaceError> {
    let n = vectors.len();
    if n < 2 {
        return Err(RootSpaceError::ChainTooShort { needed: 2, found: n });
    }
    let dim = check_chain_lengths(vectors)?;
    let minus_lambda = -lambda;
    let mut out = Vec::with_capacity(n - 1);
    for m in 1..n {
        let mut z = vec![Q::zero(); dim];
        for i in 1..=m {
            let coeff = &binomial_q(n - i - 1, n - m - 1) * &minus_lambda.pow(m - i);
            if coeff.is_zero() {
                continue;
            }
            for (zj, xj) in z.iter_mut().zip(vectors[i - 1].iter()) {
                *zj = &*zj + &(&coeff * xj);
            }
        }
        out.push(z);
    }
    Ok(out)
}

/// Extends a terminating chain `(x_0, x_1), ..., (x_k, 0)` of `A - lambda`
/// (equivalently `(x_i, lambda x_i + x_{i+1}) in A` with `x_i = 0` past
/// `k`) to the infinite chain of `A` it generates, truncated at index `s`:
///
/// `z_m = sum_{i=0}^{m} C(m, i) lambda^{m-i} x_i`,
///
/// with `(z_m, z_{m+1}) in A` for all `m` and `z_0 = x_0`.
pub fn jordan_extend_transform(
    lambda: &Q,
    vectors: &[Vec<Q>],
    s: usize,
) -> Result<Vec<Vec<Q>>, RootSpaceError> {
    if vectors.is_empty() {
        return Err(RootSpaceError::ChainTooShort { needed: 1, found: 0 });
    }
    let dim = check_chain_lengths(vectors)?;
    let k = vectors.len() - 1;
    let mut out = Vec::with_capacity(s + 1);
    for m in 0..=s {
        let mut z = vec![Q::zero(); dim];
        for (i, x) in vectors.iter().enumerate().take(m.min(k) + 1) {
            let coeff = &binomial_q(m, i) * &lambda.pow(m - i);
            if coeff.is_zero() {
                continue;
            }
            for (zj, xj) in z.iter_mut().zip(x.iter()) {
                *zj = &*zj + &(&coeff * xj);
            }
        }
        out.push(z);
    }
    Ok(out)
}

/// The confluent Vandermonde-type matrix with `s + 1` rows: one column
/// group per `(lambda_r, k_r)` block, the group being `(s+1) x (k_r+1)`
/// with entry `C(m, i) lambda_r^{m-i}` at row `m`, column `i <= m`, and `0`
/// above the diagonal. When `s + 1` equals the total number of columns and
/// the `lambda_r` are pairwise distinct, the matrix is invertible and its
/// determinant is `prod_{i<j} (lambda_i - lambda_j)^{(k_i+1)(k_j+1)}` up to
/// sign.
pub fn confluent_vandermonde(s: usize, blocks: &[(Q, usize)]) -> Matrix {
    let total_cols: usize = blocks.iter().map(|(_, k)| k + 1).sum();
    let mut w = Matrix::zeros(s + 1, total_cols);
    let mut col = 0;
    for (lambda, k) in blocks {
        for i in 0..=*k {
            for m in i..=s {
                w.set(m, col + i, &binomial_q(m, i) * &lambda.pow(m - i));
            }
        }
        col += k + 1;
    }
    w
}
