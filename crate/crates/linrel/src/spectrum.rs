//! Eigenvalues of linear relations and the proper point spectrum.
//!
//! Every scalar is an eigenvalue of a relation whose singular chain space
//! is nonzero, so plain eigenvalues carry no information there. A point is
//! a *proper* eigenvalue when its root space is strictly larger than the
//! singular chain space; the proper point spectrum is always finite (at
//! most `space_dim` points) and is computed exactly from the regular part
//! of the canonical pencil of the relation.

use thiserror::Error;

use crate::exact::GaussianRational;
use crate::pencil::{kronecker_structure, relation_to_pencil};
use crate::poly::Poly;
use crate::relation::LinearRelation;
use crate::roots::gaussian_rational_roots;
use crate::rootspace::{root_space, singular_chain_space, ExtendedScalar};
use crate::subspace::Matrix;

type Q = GaussianRational;

/// Whether `at` is an eigenvalue: some nonzero `x` with `(x, λx)` in the
/// relation, or a nonzero `(0, y)` for the point at infinity.
pub fn is_eigenvalue(a: &LinearRelation, at: &ExtendedScalar) -> bool {
    match at {
        ExtendedScalar::Finite(lambda) => !a.shift(lambda).ker().is_zero(),
        ExtendedScalar::Infinity => !a.mul().is_zero(),
    }
}

/// Whether the root space at `at` exceeds the singular chain space.
pub fn is_proper_eigenvalue(a: &LinearRelation, at: &ExtendedScalar) -> bool {
    root_space(a, at).dim() > singular_chain_space(a).dim()
}

/// The proper point spectrum of a relation, with exact bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Dimension of the singular chain space.
    pub singular_chain_dim: usize,
    /// All proper eigenvalues, sorted, each with the dimension of its root
    /// space.
    pub proper_eigenvalues: Vec<(ExtendedScalar, usize)>,
    /// True when every scalar (and infinity) is an eigenvalue, i.e. the
    /// singular chain space is nonzero.
    pub full_spectrum_flag: bool,
    /// Ascending coefficients of the monic factor of the regular
    /// characteristic polynomial that has no roots in the scalar field;
    /// `[1]` when the polynomial splits completely.
    pub residual_polynomial: Vec<Q>,
}

/// Compute the proper point spectrum exactly. Finite proper eigenvalues
/// are the scalar-field roots of the characteristic polynomial of the
/// regular part; infinity is proper exactly when a nilpotent block is
/// present.
pub fn proper_point_spectrum(a: &LinearRelation) -> SpectrumReport {
    let structure = kronecker_structure(&relation_to_pencil(a));
    let charpoly = Poly::new(structure.regular_charpoly());
    let (roots, residual) = gaussian_rational_roots(&charpoly);

    let at_zero = root_space(a, &ExtendedScalar::zero());
    let at_infinity = root_space(a, &ExtendedScalar::Infinity);
    let singular_chain_dim =
        at_zero.intersect(&at_infinity).expect("same ambient space").dim();
    assert_eq!(
        singular_chain_dim,
        structure.singular_chain_dim(),
        "chain space dimension must match the pencil block data"
    );

    let mut proper_eigenvalues: Vec<(ExtendedScalar, usize)> = Vec::new();
    for (lambda, multiplicity) in roots {
        let at = ExtendedScalar::Finite(lambda);
        let dim = if at == ExtendedScalar::zero() {
            at_zero.dim()
        } else {
            root_space(a, &at).dim()
        };
        assert_eq!(
            dim,
            multiplicity + singular_chain_dim,
            "root space must be the algebraic multiplicity above the chain space"
        );
        proper_eigenvalues.push((at, dim));
    }
    if structure.alpha().total() > 0 {
        let dim = at_infinity.dim();
        assert_eq!(dim, structure.infinity_root_dim());
        proper_eigenvalues.push((ExtendedScalar::Infinity, dim));
    }
    proper_eigenvalues.sort();
    assert!(
        proper_eigenvalues.len() <= a.space_dim(),
        "a relation admits at most space_dim proper eigenvalues"
    );

    SpectrumReport {
        singular_chain_dim,
        proper_eigenvalues,
        full_spectrum_flag: singular_chain_dim > 0,
        residual_polynomial: residual.coeffs().to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("vector {index} has length {found}, expected {expected}")]
    VectorLength { index: usize, expected: usize, found: usize },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("vector {index} is not in the root space at its point")]
    OutsideRootSpace { index: usize },
    #[error("vector {index} lies in the singular chain space")]
    InsideSingularChainSpace { index: usize },
}

/// Witness that root-space vectors at distinct points are independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceEvidence {
    pub rank: usize,
    pub count: usize,
}

/// Validate a selection of pairwise-distinct points with one vector from
/// each root space, each outside the singular chain space, and certify
/// that the vectors are linearly independent (their stacked rank equals
/// their count — this always holds, and is asserted).
pub fn independence_certificate(
    a: &LinearRelation,
    selection: &[(ExtendedScalar, Vec<Q>)],
) -> Result<IndependenceEvidence, SpectrumError> {
    let m = a.space_dim();
    for (index, (_, x)) in selection.iter().enumerate() {
        if x.len() != m {
            return Err(SpectrumError::VectorLength { index, expected: m, found: x.len() });
        }
    }
    for (second, (at, _)) in selection.iter().enumerate() {
        for (first, (earlier, _)) in selection.iter().enumerate().take(second) {
            if earlier == at {
                return Err(SpectrumError::DuplicatePoint { first, second });
            }
        }
    }
    let chain_space = singular_chain_space(a);
    for (index, (at, x)) in selection.iter().enumerate() {
        if !root_space(a, at).contains(x).expect("length checked") {
            return Err(SpectrumError::OutsideRootSpace { index });
        }
        if chain_space.contains(x).expect("length checked") {
            return Err(SpectrumError::InsideSingularChainSpace { index });
        }
    }
    let stacked =
        Matrix::from_rows(m, selection.iter().map(|(_, x)| x.clone()).collect())
            .expect("lengths checked");
    let evidence = IndependenceEvidence { rank: stacked.rank(), count: selection.len() };
    assert_eq!(
        evidence.rank, evidence.count,
        "root-space vectors at distinct points are independent"
    );
    Ok(evidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{rel, relation_strategy, scalar_strategy, vecq};
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn fin(n: i64) -> ExtendedScalar {
        ExtendedScalar::Finite(q(n))
    }

    #[test]
    fn eigenvalues_of_diagonal_graph() {
        let a = rel(2, &[(&[1, 0], &[1, 0]), (&[0, 1], &[0, 2])]);
        assert!(is_eigenvalue(&a, &fin(1)));
        assert!(is_eigenvalue(&a, &fin(2)));
        assert!(!is_eigenvalue(&a, &fin(3)));
        assert!(!is_eigenvalue(&a, &ExtendedScalar::Infinity));
        assert!(is_proper_eigenvalue(&a, &fin(1)));
        assert!(!is_proper_eigenvalue(&a, &fin(3)));

        let report = proper_point_spectrum(&a);
        assert_eq!(report.singular_chain_dim, 0);
        assert!(!report.full_spectrum_flag);
        assert_eq!(report.proper_eigenvalues, vec![(fin(1), 1), (fin(2), 1)]);
        assert_eq!(report.residual_polynomial, vecq(&[1]));
    }

    #[test]
    fn flip_relation_has_full_spectrum_but_no_proper_points() {
        // (e1, 0) and (0, e1): every scalar is an eigenvalue, none proper.
        let a = rel(1, &[(&[1], &[0]), (&[0], &[1])]);
        assert!(is_eigenvalue(&a, &fin(7)));
        assert!(is_eigenvalue(&a, &ExtendedScalar::Infinity));
        assert!(!is_proper_eigenvalue(&a, &fin(7)));
        let report = proper_point_spectrum(&a);
        assert_eq!(report.singular_chain_dim, 1);
        assert!(report.full_spectrum_flag);
        assert!(report.proper_eigenvalues.is_empty());
        assert_eq!(report.residual_polynomial, vecq(&[1]));
    }

    #[test]
    fn nilpotent_graph_spectrum_is_zero_with_full_root_space() {
        let a = rel(2, &[(&[1, 0], &[0, 0]), (&[0, 1], &[1, 0])]);
        let report = proper_point_spectrum(&a);
        assert_eq!(report.proper_eigenvalues, vec![(fin(0), 2)]);
        assert!(!report.full_spectrum_flag);
    }

    #[test]
    fn multivalued_part_contributes_infinity() {
        // Graph of 0 on e1, vertical line over e2.
        let a = rel(2, &[(&[1, 0], &[0, 0]), (&[0, 0], &[0, 1])]);
        let report = proper_point_spectrum(&a);
        assert_eq!(
            report.proper_eigenvalues,
            vec![(fin(0), 1), (ExtendedScalar::Infinity, 1)]
        );
        assert_eq!(report.singular_chain_dim, 0);
    }

    #[test]
    fn irrational_rotation_leaves_residual_polynomial() {
        // Graph of [[0, -2], [1, 0]]: char poly s^2 + 2 has no roots here.
        let a = rel(2, &[(&[1, 0], &[0, 1]), (&[0, 1], &[-2, 0])]);
        let report = proper_point_spectrum(&a);
        assert!(report.proper_eigenvalues.is_empty());
        assert_eq!(report.residual_polynomial, vecq(&[2, 0, 1]));
    }

    #[test]
    fn gaussian_eigenvalues_are_found() {
        // Graph of [[0, -1], [1, 0]]: eigenvalues are i and -i.
        let a = rel(2, &[(&[1, 0], &[0, 1]), (&[0, 1], &[-1, 0])]);
        let report = proper_point_spectrum(&a);
        let i = ExtendedScalar::Finite(Q::i());
        let minus_i = ExtendedScalar::Finite(-Q::i());
        assert_eq!(report.proper_eigenvalues, vec![(minus_i, 1), (i, 1)]);
    }

    #[test]
    fn certificate_for_distinct_eigenvalues() {
        let a = rel(2, &[(&[1, 0], &[1, 0]), (&[0, 1], &[0, 2])]);
        let evidence = independence_certificate(
            &a,
            &[(fin(1), vecq(&[1, 0])), (fin(2), vecq(&[0, 3]))],
        )
        .unwrap();
        assert_eq!(evidence, IndependenceEvidence { rank: 2, count: 2 });

        let single = independence_certificate(&a, &[(fin(2), vecq(&[0, 1]))]).unwrap();
        assert_eq!(single, IndependenceEvidence { rank: 1, count: 1 });
    }

    #[test]
    fn certificate_rejects_bad_selections() {
        let a = rel(2, &[(&[1, 0], &[1, 0]), (&[0, 1], &[0, 2])]);
        assert_eq!(
            independence_certificate(&a, &[(fin(1), vecq(&[1]))]),
            Err(SpectrumError::VectorLength { index: 0, expected: 2, found: 1 })
        );
        assert_eq!(
            independence_certificate(
                &a,
                &[(fin(1), vecq(&[1, 0])), (fin(1), vecq(&[1, 0]))]
            ),
            Err(SpectrumError::DuplicatePoint { first: 0, second: 1 })
        );
        assert_eq!(
            independence_certificate(&a, &[(fin(1), vecq(&[0, 1]))]),
            Err(SpectrumError::OutsideRootSpace { index: 0 })
        );

        // In a relation with singular chains the chain space is excluded.
        let flip = rel(1, &[(&[1], &[0]), (&[0], &[1])]);
        assert_eq!(
            independence_certificate(&flip, &[(fin(4), vecq(&[1]))]),
            Err(SpectrumError::InsideSingularChainSpace { index: 0 })
        );
        // The zero vector always sits inside the chain space.
        assert_eq!(
            independence_certificate(&a, &[(fin(1), vecq(&[0, 0]))]),
            Err(SpectrumError::InsideSingularChainSpace { index: 0 })
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn report_is_consistent_with_pointwise_checks(
            a in relation_strategy(3),
            probes in proptest::collection::vec(scalar_strategy(), 16),
        ) {
            let report = proper_point_spectrum(&a);
            prop_assert!(report.proper_eigenvalues.len() <= a.space_dim());
            prop_assert_eq!(report.full_spectrum_flag, report.singular_chain_dim > 0);
            for (at, dim) in &report.proper_eigenvalues {
                prop_assert!(is_proper_eigenvalue(&a, at));
                prop_assert!(is_eigenvalue(&a, at));
                prop_assert_eq!(root_space(&a, at).dim(), *dim);
                prop_assert!(*dim > report.singular_chain_dim);
            }
            // Completeness: no probe point outside the report is proper,
            // and such points are plain eigenvalues exactly when the
            // singular chain space makes everything an eigenvalue.
            let listed: Vec<&ExtendedScalar> =
                report.proper_eigenvalues.iter().map(|(at, _)| at).collect();
            for lambda in probes {
                let at = ExtendedScalar::Finite(lambda);
                if !listed.contains(&&at) {
                    prop_assert!(!is_proper_eigenvalue(&a, &at));
                    prop_assert_eq!(is_eigenvalue(&a, &at), report.full_spectrum_flag);
                }
            }
            if !listed.contains(&&ExtendedScalar::Infinity) {
                prop_assert!(!is_proper_eigenvalue(&a, &ExtendedScalar::Infinity));
                prop_assert_eq!(
                    is_eigenvalue(&a, &ExtendedScalar::Infinity),
                    report.full_spectrum_flag
                );
            }
        }

        #[test]
        fn eigenvalue_dichotomy_under_singular_chains(
            a in relation_strategy(3),
            lambda in scalar_strategy(),
        ) {
            // With a nonzero chain space every point is an eigenvalue.
            if proper_point_spectrum(&a).full_spectrum_flag {
                prop_assert!(is_eigenvalue(&a, &ExtendedScalar::Finite(lambda)));
                prop_assert!(is_eigenvalue(&a, &ExtendedScalar::Infinity));
            }
        }
    }
}
