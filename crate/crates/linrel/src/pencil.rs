//! Matrix pencils `sE - F`, the linear relations they span, and exact
//! extraction of their Kronecker block structure.
//!
//! A pencil decomposes, under two-sided invertible equivalence, into a
//! regular finite part (an invertible-`E` pencil carrying the finite
//! eigenvalues), nilpotent blocks `sN - I` (the eigenvalue at infinity),
//! and singular column/row blocks `sK - L` and their transposes. The block
//! sizes are equivalence invariants; they are recovered here from kernel
//! dimensions of exact block Toeplitz systems, and the regular part is
//! reconstructed as a quotient between two canonical subspace pairs.

use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::exact::GaussianRational;
use crate::poly;
use crate::relation::LinearRelation;
use crate::rootspace::{root_space, singular_chain_space, ExtendedScalar, MultiIndex};
use crate::spectrum;
use crate::subspace::{Matrix, Subspace};

type Q = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error("E is {e_rows}x{e_cols} but F is {f_rows}x{f_cols}")]
    ShapeMismatch { e_rows: usize, e_cols: usize, f_rows: usize, f_cols: usize },
    #[error("transform {name} must be {expected}x{expected}, found {rows}x{cols}")]
    TransformShape { name: &'static str, expected: usize, rows: usize, cols: usize },
    #[error("transform {name} is singular")]
    SingularTransform { name: &'static str },
}

/// A pair of equally shaped matrices, read as the pencil `sE - F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPencil {
    e: Matrix,
    f: Matrix,
}

impl MatrixPencil {
    pub fn new(e: Matrix, f: Matrix) -> Result<Self, PencilError> {
        if e.rows() != f.rows() || e.cols() != f.cols() {
            return Err(PencilError::ShapeMismatch {
                e_rows: e.rows(),
                e_cols: e.cols(),
                f_rows: f.rows(),
                f_cols: f.cols(),
            });
        }
        Ok(MatrixPencil { e, f })
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn rows(&self) -> usize {
        self.e.rows()
    }

    pub fn cols(&self) -> usize {
        self.e.cols()
    }

    pub fn transpose(&self) -> MatrixPencil {
        MatrixPencil { e: self.e.transpose(), f: self.f.transpose() }
    }
}

/// The relation `{(Ez, Fz) : z}` spanned by the columns of the pencil.
pub fn pencil_to_relation(p: &MatrixPencil) -> LinearRelation {
    let m = p.rows();
    let generators: Vec<(Vec<Q>, Vec<Q>)> = (0..p.cols())
        .map(|j| {
            let x = (0..m).map(|i| p.e[(i, j)].clone()).collect();
            let y = (0..m).map(|i| p.f[(i, j)].clone()).collect();
            (x, y)
        })
        .collect();
    LinearRelation::from_generators(m, &generators).expect("columns have the row count as length")
}

/// The canonical pencil representation of a relation: one column per graph
/// basis vector, its first half in `E` and second half in `F`. Inverse to
/// [`pencil_to_relation`] up to column span.
pub fn relation_to_pencil(a: &LinearRelation) -> MatrixPencil {
    let m = a.space_dim();
    let rows: Vec<&[Q]> = a.graph().basis_vectors().collect();
    let mut e = Matrix::zeros(m, rows.len());
    let mut f = Matrix::zeros(m, rows.len());
    for (j, row) in rows.iter().enumerate() {
        for i in 0..m {
            e.set(i, j, row[i].clone());
            f.set(i, j, row[m + i].clone());
        }
    }
    MatrixPencil { e, f }
}

/// The equivalence invariants of a pencil: the regular finite part (up to
/// equivalence), the nilpotent block sizes, and the two families of
/// singular block parameters. A singular column block with parameter `k`
/// has shape `(k-1) x k`, so `k = 1` denotes a zero-row block.
#[derive(Debug, Clone)]
pub struct KroneckerStructure {
    n0: usize,
    regular: MatrixPencil,
    alpha: MultiIndex,
    epsilon: MultiIndex,
    eta: MultiIndex,
}

impl KroneckerStructure {
    /// Dimension of the regular finite part.
    pub fn n0(&self) -> usize {
        self.n0
    }

    /// The regular finite subpencil `(E_r, F_r)`, `E_r` invertible,
    /// determined up to two-sided equivalence.
    pub fn regular(&self) -> &MatrixPencil {
        &self.regular
    }

    pub fn alpha(&self) -> &MultiIndex {
        &self.alpha
    }

    pub fn epsilon(&self) -> &MultiIndex {
        &self.epsilon
    }

    pub fn eta(&self) -> &MultiIndex {
        &self.eta
    }

    /// Row count of any pencil with this structure.
    pub fn rows(&self) -> usize {
        self.n0 + self.alpha.total() + (self.epsilon.total() - self.epsilon.len())
            + self.eta.total()
    }

    /// Column count of any pencil with this structure.
    pub fn cols(&self) -> usize {
        self.n0 + self.alpha.total() + self.epsilon.total()
            + (self.eta.total() - self.eta.len())
    }

    /// Dimension of the singular chain space of the spanned relation.
    pub fn singular_chain_dim(&self) -> usize {
        self.epsilon.total() - self.epsilon.len()
    }

    /// Dimension of the root space at infinity of the spanned relation.
    pub fn infinity_root_dim(&self) -> usize {
        self.alpha.total() + self.singular_chain_dim()
    }

    /// Monic characteristic polynomial of the regular part, ascending
    /// coefficients; an equivalence invariant (unlike the subpencil
    /// itself).
    pub fn regular_charpoly(&self) -> Vec<Q> {
        poly::pencil_charpoly(&self.regular.e, &self.regular.f)
            .monic()
            .coeffs()
            .to_vec()
    }
}

/// Rank of `sE - F` over the rational function field. `rank(lambda E - F)`
/// attains it except at the (at most `min(m, d)`) zeros of a maximal
/// minor, so the maximum over `min(m, d) + 1` distinct sample points is
/// exact.
fn normal_rank(p: &MatrixPencil) -> usize {
    let bound = p.rows().min(p.cols());
    let mut best = 0;
    for k in 0..=bound as i64 {
        let at = p.e.scale(&Q::from_int(k)).sub(&p.f);
        best = best.max(at.rank());
        if best == bound {
            break;
        }
    }
    best
}

/// Climb `L_0 = ker F`, `L_{p+1} = F^{-1}(E L_p)`. Inside `L_p` the kernel
/// of `E` has one dimension per singular column block with parameter
/// `k <= p + 1` and no other block type contributes, so the increments of
/// `dim L_p - dim (E L_p)` list the parameters. `block_count` (the column
/// count minus the normal rank) tells the climb when to stop.
fn column_minimal_indices(p: &MatrixPencil, block_count: usize) -> MultiIndex {
    let mut entries = Vec::new();
    let mut level = Subspace::span(p.cols(), p.f.null_space_basis())
        .expect("kernel vectors have the domain length");
    let mut met_prev = 0;
    for step in 0..p.cols().min(p.rows() + 1) {
        let image = p.e.image(&level).expect("pencil matrices share a domain");
        let met = level.dim() - image.dim();
        for _ in 0..met - met_prev {
            entries.push(step + 1);
        }
        if entries.len() == block_count {
            break;
        }
        met_prev = met;
        level = p.f.preimage(&image).expect("pencil matrices share a codomain");
    }
    assert_eq!(entries.len(), block_count, "ladder must recover every singular block");
    MultiIndex::new(entries).expect("block parameters are positive")
}

/// Climb `M_1 = ker E`, `M_{j+1} = E^{-1}(F M_j)`. A nilpotent block of
/// size `a` contributes `min(j, a)` dimensions to `M_j`, a singular column
/// block with parameter `k` contributes `min(j, k)`, and regular or row
/// blocks none; discounting the already-known column parameters leaves the
/// counts of nilpotent blocks of size at least `j`.
fn nilpotent_indices(p: &MatrixPencil, epsilon: &MultiIndex) -> MultiIndex {
    let mut increments = Vec::new();
    let mut level = Subspace::span(p.cols(), p.e.null_space_basis())
        .expect("kernel vectors have the domain length");
    let mut dim_prev = 0;
    for j in 1..=p.rows().min(p.cols()) + 1 {
        let columns_reaching = epsilon.entries().iter().filter(|&&k| k >= j).count();
        let inc = level.dim() - dim_prev - columns_reaching;
        if inc == 0 {
            break;
        }
        increments.push(inc);
        dim_prev = level.dim();
        let image = p.f.image(&level).expect("pencil matrices share a domain");
        level = p.e.preimage(&image).expect("pencil matrices share a codomain");
    }
    let mut entries = Vec::new();
    for (idx, &inc) in increments.iter().enumerate() {
        let next = increments.get(idx + 1).copied().unwrap_or(0);
        for _ in 0..inc - next {
            entries.push(idx + 1);
        }
    }
    MultiIndex::new(entries).expect("block sizes are positive")
}

fn extend_basis(small: &Subspace, big: &Subspace) -> Vec<Vec<Q>> {
    let mut current = small.clone();
    let mut extension = Vec::new();
    for row in big.basis_vectors() {
        if !current.contains(row).expect("same ambient space") {
            extension.push(row.to_vec());
            let line = Subspace::span(current.ambient_dim(), vec![row.to_vec()])
                .expect("row has ambient length");
            current = current.sum(&line).expect("same ambient space");
        }
    }
    assert_eq!(small.dim() + extension.len(), big.dim(), "extension spans the larger space");
    extension
}

/// The regular finite part as a quotient: `X` is the largest subspace with
/// `FX ⊆ EX`, `X_s` its intersection with the span of all chains at
/// infinity, and the induced maps of `E` and `F` from `X/X_s` to
/// `(EX + FX)/(EX_s + FX_s)` form an invertible-`E` pencil equivalent to
/// the finite Kronecker blocks.
fn regular_quotient(p: &MatrixPencil) -> (usize, MatrixPencil) {
    let d = p.cols();
    let mut x = Subspace::full(d);
    loop {
        let next = p.f.preimage(&p.e.image(&x).expect("ambient match")).expect("ambient match");
        if next == x {
            break;
        }
        x = next;
    }
    let mut w = Subspace::zero(d);
    loop {
        let next = p.e.preimage(&p.f.image(&w).expect("ambient match")).expect("ambient match");
        if next == w {
            break;
        }
        w = next;
    }
    let xs = x.intersect(&w).expect("same ambient space");
    let image_sum = |s: &Subspace| {
        p.e.image(s)
            .expect("ambient match")
            .sum(&p.f.image(s).expect("ambient match"))
            .expect("same ambient space")
    };
    let y = image_sum(&x);
    let ys = image_sum(&xs);
    let n0 = x.dim() - xs.dim();
    assert_eq!(y.dim() - ys.dim(), n0, "quotient dimensions must agree");

    let x_ext = extend_basis(&xs, &x);
    let y_ext = extend_basis(&ys, &y);
    let mut columns: Vec<Vec<Q>> = ys.basis_vectors().map(|r| r.to_vec()).collect();
    columns.extend(y_ext.iter().cloned());
    let coord = Matrix::from_rows(p.rows(), columns)
        .expect("basis vectors have the ambient length")
        .transpose();
    let ys_dim = ys.dim();
    let mut e_r = Matrix::zeros(n0, n0);
    let mut f_r = Matrix::zeros(n0, n0);
    let fill = |mat: &Matrix, out: &mut Matrix| {
        for (j, b) in x_ext.iter().enumerate() {
            let coords = coord.solve(&mat.apply(b)).expect("image lies in the sum space");
            for i in 0..n0 {
                out.set(i, j, coords[ys_dim + i].clone());
            }
        }
    };
    fill(&p.e, &mut e_r);
    fill(&p.f, &mut f_r);
    assert!(!e_r.det().is_zero(), "regular part must have invertible E");
    (n0, MatrixPencil { e: e_r, f: f_r })
}

/// Exact Kronecker block data of an arbitrary pencil. The multi-indices
/// and the equivalence class of the regular part are invariant under
/// two-sided invertible transformations.
pub fn kronecker_structure(p: &MatrixPencil) -> KroneckerStructure {
    let rank = normal_rank(p);
    let epsilon = column_minimal_indices(p, p.cols() - rank);
    let eta = column_minimal_indices(&p.transpose(), p.rows() - rank);
    let alpha = nilpotent_indices(p, &epsilon);
    let (n0, regular) = regular_quotient(p);
    let structure = KroneckerStructure { n0, regular, alpha, epsilon, eta };
    assert_eq!(structure.rows(), p.rows(), "row bookkeeping must close");
    assert_eq!(structure.cols(), p.cols(), "column bookkeeping must close");
    structure
}

/// Recipe for a pencil with fully known structure: Jordan blocks for the
/// finite spectrum, nilpotent and singular block parameters, and the
/// invertible transforms `W`, `T` that conjugate the generated pencil back
/// to block-diagonal form (the generated pencil is `W^{-1} . blocks .
/// T^{-1}`, so `W(sE - F)T` is canonical and target subspaces pull back
/// through `W`).
#[derive(Debug, Clone)]
pub struct KcfSpec {
    pub jordan_blocks: Vec<(Q, usize)>,
    pub alpha: MultiIndex,
    pub epsilon: MultiIndex,
    pub eta: MultiIndex,
    pub w: Matrix,
    pub t: Matrix,
}

impl KcfSpec {
    pub fn rows(&self) -> usize {
        self.jordan_total() + self.alpha.total()
            + (self.epsilon.total() - self.epsilon.len())
            + self.eta.total()
    }

    pub fn cols(&self) -> usize {
        self.jordan_total() + self.alpha.total() + self.epsilon.total()
            + (self.eta.total() - self.eta.len())
    }

    fn jordan_total(&self) -> usize {
        self.jordan_blocks.iter().map(|(_, size)| size).sum()
    }

    /// Block-diagonal matrix of all Jordan blocks.
    fn finite_matrix(&self) -> Matrix {
        let n0 = self.jordan_total();
        let mut a0 = Matrix::zeros(n0, n0);
        let mut offset = 0;
        for (lambda, size) in &self.jordan_blocks {
            for i in 0..*size {
                a0.set(offset + i, offset + i, lambda.clone());
                if i + 1 < *size {
                    a0.set(offset + i + 1, offset + i, Q::from_int(1));
                }
            }
            offset += size;
        }
        a0
    }

    /// The block-diagonal canonical pencil `(E_c, F_c)`.
    fn canonical_matrices(&self) -> (Matrix, Matrix) {
        let (m, d) = (self.rows(), self.cols());
        let mut e = Matrix::zeros(m, d);
        let mut f = Matrix::zeros(m, d);
        let mut r = 0;
        let mut c = 0;
        for (lambda, size) in &self.jordan_blocks {
            for i in 0..*size {
                e.set(r + i, c + i, Q::from_int(1));
                f.set(r + i, c + i, lambda.clone());
                if i + 1 < *size {
                    f.set(r + i + 1, c + i, Q::from_int(1));
                }
            }
            r += size;
            c += size;
        }
        for &a in self.alpha.entries() {
            for i in 0..a {
                f.set(r + i, c + i, Q::from_int(1));
                if i + 1 < a {
                    e.set(r + i + 1, c + i, Q::from_int(1));
                }
            }
            r += a;
            c += a;
        }
        for &k in self.epsilon.entries() {
            for i in 0..k - 1 {
                e.set(r + i, c + i, Q::from_int(1));
                f.set(r + i, c + i + 1, Q::from_int(1));
            }
            r += k - 1;
            c += k;
        }
        for &h in self.eta.entries() {
            for i in 0..h - 1 {
                e.set(r + i, c + i, Q::from_int(1));
                f.set(r + i + 1, c + i, Q::from_int(1));
            }
            r += h;
            c += h - 1;
        }
        debug_assert_eq!(r, m);
        debug_assert_eq!(c, d);
        (e, f)
    }
}

/// Build the pencil a spec describes together with its ground-truth
/// structure. Errors when `W` or `T` has the wrong shape or is singular.
pub fn kcf_generate(spec: &KcfSpec) -> Result<(MatrixPencil, KroneckerStructure), PencilError> {
    assert!(
        spec.jordan_blocks.iter().all(|(_, size)| *size >= 1),
        "Jordan blocks have positive size"
    );
    let (e_c, f_c) = spec.canonical_matrices();
    let (m, d) = (e_c.rows(), e_c.cols());
    for (name, mat, expected) in [("W", &spec.w, m), ("T", &spec.t, d)] {
        if mat.rows() != expected || mat.cols() != expected {
            return Err(PencilError::TransformShape {
                name,
                expected,
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
    }
    let w_inv = spec.w.inverse().ok_or(PencilError::SingularTransform { name: "W" })?;
    let t_inv = spec.t.inverse().ok_or(PencilError::SingularTransform { name: "T" })?;
    let pencil = MatrixPencil {
        e: w_inv.mul(&e_c).mul(&t_inv),
        f: w_inv.mul(&f_c).mul(&t_inv),
    };
    let n0 = spec.jordan_total();
    let ground = KroneckerStructure {
        n0,
        regular: MatrixPencil { e: Matrix::identity(n0), f: spec.finite_matrix() },
        alpha: spec.alpha.clone(),
        epsilon: spec.epsilon.clone(),
        eta: spec.eta.clone(),
    };
    Ok((pencil, ground))
}

/// Which structural formula a verification entry checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KcfClause {
    SingularChainSpace,
    InfinityRootSpace,
    FiniteRootSpaces,
    ProperSpectrum,
}

impl fmt::Display for KcfClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            KcfClause::SingularChainSpace => "singular chain space",
            KcfClause::InfinityRootSpace => "root space at infinity",
            KcfClause::FiniteRootSpaces => "finite root spaces",
            KcfClause::ProperSpectrum => "proper point spectrum",
        };
        write!(f, "{}", name)
    }
}

#[derive(Debug, Clone)]
pub struct ClauseCheck {
    pub clause: KcfClause,
    pub holds: bool,
    pub detail: String,
}

/// Outcome of checking the structural subspace formulas on a generated
/// pencil.
#[derive(Debug, Clone)]
pub struct KcfVerification {
    checks: Vec<ClauseCheck>,
}

impl KcfVerification {
    pub fn checks(&self) -> &[ClauseCheck] {
        &self.checks
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> Vec<&ClauseCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

impl fmt::Display for KcfVerification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(
                f,
                "{}: {} ({})",
                check.clause,
                if check.holds { "ok" } else { "FAILED" },
                check.detail
            )?;
        }
        Ok(())
    }
}

/// Check the root-space formulas of a pencil generated from `spec`
/// against direct relation iteration: the singular chain space, the root
/// space at infinity, the finite root spaces (at every generated
/// eigenvalue plus two non-eigenvalues), and the proper point spectrum are
/// all expressed through the block coordinates pulled back by `W`.
pub fn verify_kcf_subspaces(p: &MatrixPencil, spec: &KcfSpec) -> KcfVerification {
    let a = pencil_to_relation(p);
    let m = spec.rows();
    assert_eq!(p.rows(), m, "pencil must come from the spec");
    let n0 = spec.jordan_total();
    let alpha_rows = spec.alpha.total();
    let eps_rows = spec.epsilon.total() - spec.epsilon.len();

    // Rows of the canonical form group as finite | nilpotent | singular
    // columns | singular rows; the theorem's right-hand sides live there.
    let block_space = |finite: &Subspace, with_alpha: bool| -> Subspace {
        let mut generators: Vec<Vec<Q>> = Vec::new();
        for v in finite.basis_vectors() {
            let mut g = vec![Q::zero(); m];
            g[..n0].clone_from_slice(v);
            generators.push(g);
        }
        let mut unit = |index: usize| {
            let mut g = vec![Q::zero(); m];
            g[index] = Q::from_int(1);
            generators.push(g);
        };
        if with_alpha {
            for i in 0..alpha_rows {
                unit(n0 + i);
            }
        }
        for i in 0..eps_rows {
            unit(n0 + alpha_rows + i);
        }
        Subspace::span(m, generators).expect("generators have ambient length")
    };
    let pull_back = |target: &Subspace| spec.w.preimage(target).expect("W is m x m");

    let compare = |clause: KcfClause, lhs: &Subspace, rhs: &Subspace| ClauseCheck {
        clause,
        holds: lhs == rhs,
        detail: format!("computed dim {}, formula dim {}", lhs.dim(), rhs.dim()),
    };

    let mut checks = Vec::new();
    let zero_finite = Subspace::zero(n0);

    let rc = singular_chain_space(&a);
    checks.push(compare(
        KcfClause::SingularChainSpace,
        &rc,
        &pull_back(&block_space(&zero_finite, false)),
    ));

    let rinf = root_space(&a, &ExtendedScalar::Infinity);
    checks.push(compare(
        KcfClause::InfinityRootSpace,
        &rinf,
        &pull_back(&block_space(&zero_finite, true)),
    ));

    let a0 = spec.finite_matrix();
    let mut points: Vec<Q> = Vec::new();
    for (lambda, _) in &spec.jordan_blocks {
        if !points.contains(lambda) {
            points.push(lambda.clone());
        }
    }
    let eigen_count = points.len();
    let mut probe = 0i64;
    while points.len() < eigen_count + 2 {
        let candidate = Q::from_int(probe);
        if !points.contains(&candidate) {
            points.push(candidate);
        }
        probe += 1;
    }
    let mut finite_ok = true;
    let mut finite_detail = Vec::new();
    for lambda in &points {
        let lhs = root_space(&a, &ExtendedScalar::Finite(lambda.clone()));
        let shifted = a0.sub(&Matrix::identity(n0).scale(lambda));
        let finite_part = Subspace::span(n0, shifted.pow(n0).null_space_basis())
            .expect("kernel vectors have length n0");
        let rhs = pull_back(&block_space(&finite_part, false));
        if lhs != rhs {
            finite_ok = false;
        }
        finite_detail.push(format!("{}: dim {} vs {}", lambda, lhs.dim(), rhs.dim()));
    }
    checks.push(ClauseCheck {
        clause: KcfClause::FiniteRootSpaces,
        holds: finite_ok,
        detail: finite_detail.join("; "),
    });

    let report = spectrum::proper_point_spectrum(&a);
    let mut expected: Vec<(ExtendedScalar, usize)> = points[..eigen_count]
        .iter()
        .map(|lambda| {
            let algebraic: usize = spec
                .jordan_blocks
                .iter()
                .filter(|(l, _)| l == lambda)
                .map(|(_, size)| size)
                .sum();
            (ExtendedScalar::Finite(lambda.clone()), algebraic + eps_rows)
        })
        .collect();
    if alpha_rows > 0 {
        expected.push((ExtendedScalar::Infinity, alpha_rows + eps_rows));
    }
    expected.sort();
    checks.push(ClauseCheck {
        clause: KcfClause::ProperSpectrum,
        holds: report.proper_eigenvalues == expected,
        detail: format!(
            "reported {} eigenvalue(s), expected {}",
            report.proper_eigenvalues.len(),
            expected.len()
        ),
    });

    KcfVerification { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{rel, relation_strategy, vecq};
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn mat(cols: usize, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(cols, rows.iter().map(|r| vecq(r)).collect()).unwrap()
    }

    fn pencil(cols: usize, e: &[&[i64]], f: &[&[i64]]) -> MatrixPencil {
        MatrixPencil::new(mat(cols, e), mat(cols, f)).unwrap()
    }

    fn spec_with_identity(
        jordan: Vec<(Q, usize)>,
        alpha: Vec<usize>,
        epsilon: Vec<usize>,
        eta: Vec<usize>,
    ) -> KcfSpec {
        let mut spec = KcfSpec {
            jordan_blocks: jordan,
            alpha: MultiIndex::new(alpha).unwrap(),
            epsilon: MultiIndex::new(epsilon).unwrap(),
            eta: MultiIndex::new(eta).unwrap(),
            w: Matrix::identity(0),
            t: Matrix::identity(0),
        };
        spec.w = Matrix::identity(spec.rows());
        spec.t = Matrix::identity(spec.cols());
        spec
    }

    #[test]
    fn pencil_shape_mismatch_is_rejected() {
        let err = MatrixPencil::new(Matrix::zeros(1, 2), Matrix::zeros(2, 2)).unwrap_err();
        assert!(matches!(err, PencilError::ShapeMismatch { .. }));
    }

    #[test]
    fn relation_of_identity_pencil_is_the_graph() {
        let m = mat(2, &[&[0, 1], &[0, 0]]);
        let p = MatrixPencil::new(Matrix::identity(2), m.clone()).unwrap();
        assert_eq!(pencil_to_relation(&p), LinearRelation::from_matrix(&m));
    }

    #[test]
    fn relation_of_wide_pencil_is_everything() {
        let p = pencil(2, &[&[1, 0]], &[&[0, 1]]);
        let a = pencil_to_relation(&p);
        assert_eq!(a.graph(), &Subspace::full(2));
    }

    #[test]
    fn relation_of_zero_e_pencil_is_purely_multivalued() {
        let p = MatrixPencil::new(Matrix::zeros(2, 2), Matrix::identity(2)).unwrap();
        let a = pencil_to_relation(&p);
        assert_eq!(a, rel(2, &[(&[0, 0], &[1, 0]), (&[0, 0], &[0, 1])]));
    }

    #[test]
    fn nilpotent_pencil_structure() {
        let e = mat(2, &[&[0, 0], &[1, 0]]);
        let p = MatrixPencil::new(e, Matrix::identity(2)).unwrap();
        let s = kronecker_structure(&p);
        assert_eq!(s.n0(), 0);
        assert_eq!(s.alpha().entries(), &[2]);
        assert!(s.epsilon().is_empty());
        assert!(s.eta().is_empty());
    }

    #[test]
    fn wide_singular_pencil_structure() {
        let p = pencil(2, &[&[1, 0]], &[&[0, 1]]);
        let s = kronecker_structure(&p);
        assert_eq!(s.epsilon().entries(), &[2]);
        assert_eq!(s.n0(), 0);
        assert!(s.alpha().is_empty());
        assert!(s.eta().is_empty());
        assert_eq!(s.singular_chain_dim(), 1);
    }

    #[test]
    fn identity_pencil_is_fully_regular() {
        let p = MatrixPencil::new(Matrix::identity(3), Matrix::identity(3)).unwrap();
        let s = kronecker_structure(&p);
        assert_eq!(s.n0(), 3);
        assert!(s.alpha().is_empty() && s.epsilon().is_empty() && s.eta().is_empty());
        // det(sE_r - F_r) ~ (s-1)^3 = s^3 - 3s^2 + 3s - 1.
        assert_eq!(s.regular_charpoly(), vecq(&[-1, 3, -3, 1]));
    }

    #[test]
    fn degenerate_shapes() {
        let tall = MatrixPencil::new(Matrix::zeros(2, 0), Matrix::zeros(2, 0)).unwrap();
        let s = kronecker_structure(&tall);
        assert_eq!(s.eta().entries(), &[1, 1]);
        assert_eq!((s.n0(), s.alpha().len(), s.epsilon().len()), (0, 0, 0));

        let wide = MatrixPencil::new(Matrix::zeros(0, 2), Matrix::zeros(0, 2)).unwrap();
        let s = kronecker_structure(&wide);
        assert_eq!(s.epsilon().entries(), &[1, 1]);
        assert_eq!(s.singular_chain_dim(), 0);
    }

    #[test]
    fn generate_frozen_examples() {
        let (p, ground) = kcf_generate(&spec_with_identity(
            vec![(q(3), 1)],
            vec![],
            vec![],
            vec![],
        ))
        .unwrap();
        assert_eq!(p.e(), &Matrix::identity(1));
        assert_eq!(p.f(), &mat(1, &[&[3]]));
        assert_eq!(ground.n0(), 1);

        let (p, ground) = kcf_generate(&spec_with_identity(vec![], vec![], vec![2], vec![]))
            .unwrap();
        assert_eq!(p.e(), &mat(2, &[&[1, 0]]));
        assert_eq!(p.f(), &mat(2, &[&[0, 1]]));
        assert_eq!(ground.epsilon().entries(), &[2]);

        let (p, _) = kcf_generate(&spec_with_identity(vec![], vec![1], vec![], vec![])).unwrap();
        assert_eq!(p.e(), &mat(1, &[&[0]]));
        assert_eq!(p.f(), &mat(1, &[&[1]]));
    }

    #[test]
    fn generate_rejects_bad_transforms() {
        let mut spec = spec_with_identity(vec![(q(1), 1)], vec![], vec![], vec![]);
        spec.w = Matrix::zeros(1, 1);
        assert_eq!(
            kcf_generate(&spec).unwrap_err(),
            PencilError::SingularTransform { name: "W" }
        );
        spec.w = Matrix::identity(2);
        assert!(matches!(
            kcf_generate(&spec).unwrap_err(),
            PencilError::TransformShape { name: "W", .. }
        ));
    }

    #[test]
    fn generated_structure_is_recovered() {
        let spec = spec_with_identity(
            vec![(q(2), 2)],
            vec![1],
            vec![2],
            vec![2],
        );
        let (p, ground) = kcf_generate(&spec).unwrap();
        let s = kronecker_structure(&p);
        assert_eq!(s.n0(), ground.n0());
        assert_eq!(s.alpha(), ground.alpha());
        assert_eq!(s.epsilon(), ground.epsilon());
        assert_eq!(s.eta(), ground.eta());
        assert_eq!(s.regular_charpoly(), ground.regular_charpoly());
    }

    #[test]
    fn verification_of_frozen_examples() {
        // Pure singular column block: the whole space is singular chains.
        let spec = spec_with_identity(vec![], vec![], vec![2], vec![]);
        let (p, _) = kcf_generate(&spec).unwrap();
        let report = verify_kcf_subspaces(&p, &spec);
        assert!(report.all_hold(), "{}", report);
        let a = pencil_to_relation(&p);
        assert_eq!(singular_chain_space(&a), Subspace::full(1));

        // Single Jordan block: the root space at its eigenvalue is full.
        let spec = spec_with_identity(vec![(q(5), 2)], vec![], vec![], vec![]);
        let (p, _) = kcf_generate(&spec).unwrap();
        let report = verify_kcf_subspaces(&p, &spec);
        assert!(report.all_hold(), "{}", report);
        let a = pencil_to_relation(&p);
        assert_eq!(root_space(&a, &ExtendedScalar::Finite(q(5))), Subspace::full(2));
        assert_eq!(root_space(&a, &ExtendedScalar::Finite(q(4))), Subspace::zero(2));

        // Pure nilpotent block: everything sits at infinity.
        let spec = spec_with_identity(vec![], vec![1], vec![], vec![]);
        let (p, _) = kcf_generate(&spec).unwrap();
        let report = verify_kcf_subspaces(&p, &spec);
        assert!(report.all_hold(), "{}", report);
        let a = pencil_to_relation(&p);
        assert_eq!(root_space(&a, &ExtendedScalar::Infinity), Subspace::full(1));
        let spectrum_report = spectrum::proper_point_spectrum(&a);
        assert_eq!(
            spectrum_report.proper_eigenvalues,
            vec![(ExtendedScalar::Infinity, 1)]
        );
    }

    #[test]
    fn verification_of_mixed_structure() {
        let spec = spec_with_identity(
            vec![(q(2), 2), (Q::from_parts(0, 1, 1, 1), 1)],
            vec![2],
            vec![1, 2],
            vec![2],
        );
        let (p, ground) = kcf_generate(&spec).unwrap();
        let report = verify_kcf_subspaces(&p, &spec);
        assert!(report.all_hold(), "{}", report);
        let s = kronecker_structure(&p);
        assert_eq!(s.alpha(), ground.alpha());
        assert_eq!(s.epsilon(), ground.epsilon());
        assert_eq!(s.eta(), ground.eta());
        assert_eq!(s.n0(), ground.n0());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn relation_pencil_round_trip(a in relation_strategy(3)) {
            let p = relation_to_pencil(&a);
            prop_assert_eq!(pencil_to_relation(&p), a);
        }

        #[test]
        fn structure_dimension_formulas_match_relation_iteration(
            rows_e in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 2),
            rows_f in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 2),
        ) {
            let e = Matrix::from_rows(3, rows_e.iter().map(|r| vecq(r)).collect()).unwrap();
            let f = Matrix::from_rows(3, rows_f.iter().map(|r| vecq(r)).collect()).unwrap();
            let p = MatrixPencil::new(e, f).unwrap();
            let s = kronecker_structure(&p);
            let a = pencil_to_relation(&p);
            prop_assert_eq!(singular_chain_space(&a).dim(), s.singular_chain_dim());
            prop_assert_eq!(
                root_space(&a, &ExtendedScalar::Infinity).dim(),
                s.infinity_root_dim()
            );
        }
    }
}
