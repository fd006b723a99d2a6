//! Exact computational toolkit for linear relations (multivalued linear
//! operators) on finite-dimensional spaces over the Gaussian rationals.
//!
//! The crate builds up in layers:
//!
//! * [`exact`] — scalar arithmetic in `Q(i)`, exact and canonical;
//! * [`subspace`] — matrices and subspaces in reduced row-echelon form,
//!   with sums, intersections, images and preimages;
//! * [`relation`] — linear relations as subspaces of `H x H`, with the
//!   operator calculus (inverse, shift, scaling, composition, powers);
//! * [`rootspace`] — root spaces at finite and infinite eigenvalues,
//!   singular chains, Jordan chains, and chain transforms;
//! * [`spectrum`] — eigenvalues, the proper point spectrum, and linear
//!   independence certificates;
//! * [`pencil`] — matrix pencils, their Kronecker structure, and the
//!   relation they span.
//!
//! Everything is computed exactly; there is no floating point and no
//! tolerance anywhere in the crate.

pub mod exact;
pub mod pencil;
mod poly;
pub mod relation;
mod roots;
pub mod rootspace;
pub mod spectrum;
pub mod subspace;

#[cfg(test)]
mod test_util;

pub use exact::{ExactError, GaussianRational, Rational, ScalarParseError};
pub use pencil::{
    kcf_generate, kronecker_structure, pencil_to_relation, relation_to_pencil,
    verify_kcf_subspaces, ClauseCheck, KcfClause, KcfSpec, KcfVerification, KroneckerStructure,
    MatrixPencil, PencilError,
};
pub use relation::{LinearRelation, RelationError, RelationParts};
pub use rootspace::{
    confluent_vandermonde, extract_singular_chain, jordan_chain, jordan_extend_transform,
    root_space, shift_chain_transform, singular_chain_space, Chain, ChainKind, ExtendedScalar,
    MultiIndex, RootSpaceError,
};
pub use spectrum::{
    independence_certificate, is_eigenvalue, is_proper_eigenvalue, proper_point_spectrum,
    IndependenceEvidence, SpectrumError, SpectrumReport,
};
pub use subspace::{Matrix, Subspace, SubspaceError};
