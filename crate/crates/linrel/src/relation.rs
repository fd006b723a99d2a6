//! Linear relations on `Q(i)^m`: subspaces of `H x H` together with the
//! operator calculus (inverse, scalar shift, scaling, composition, powers).
//!
//! A relation generalizes a linear operator by allowing multivaluedness:
//! `mul A = {y : (0, y) in A}` measures how far from single-valued it is,
//! and `ker A = {x : (x, 0) in A}` is the usual kernel. All four parts are
//! computed as exact canonical subspaces.

use num::{One, Zero};
use thiserror::Error;

use crate::exact::GaussianRational;
use crate::subspace::{Matrix, Subspace};

type Q = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("generator {index}: component has length {found}, expected {expected}")]
    GeneratorLength { index: usize, expected: usize, found: usize },
    #[error("space dimension mismatch: {left} vs {right}")]
    SpaceDimMismatch { left: usize, right: usize },
    #[error("graph lives in dimension {found}, expected {expected} (twice the space dimension)")]
    GraphAmbient { expected: usize, found: usize },
    #[error("power exponent {exponent} exceeds the cap {cap} (2 * space_dim + 2)")]
    PowerExponent { exponent: usize, cap: usize },
}

/// A linear relation in `Q(i)^m x Q(i)^m`, stored as the canonical graph
/// subspace. Pairs are written `(x, y)` with `x` the argument side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRelation {
    space_dim: usize,
    graph: Subspace,
}

/// Domain, range, kernel, and multivalued part of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationParts {
    pub dom: Subspace,
    pub ran: Subspace,
    pub ker: Subspace,
    pub mul: Subspace,
}

impl LinearRelation {
    /// Span of the given `(x, y)` pairs.
    pub fn from_generators(
        space_dim: usize,
        generators: &[(Vec<Q>, Vec<Q>)],
    ) -> Result<Self, RelationError> {
        let mut rows = Vec::with_capacity(generators.len());
        for (index, (x, y)) in generators.iter().enumerate() {
            let bad = if x.len() != space_dim {
                Some(x.len())
            } else if y.len() != space_dim {
                Some(y.len())
            } else {
                None
            };
            if let Some(found) = bad {
                return Err(RelationError::GeneratorLength {
                    index,
                    expected: space_dim,
                    found,
                });
            }
            let mut row = x.clone();
            row.extend_from_slice(y);
            rows.push(row);
        }
        let graph = Subspace::span(2 * space_dim, rows).expect("rows built to length 2m");
        Ok(LinearRelation { space_dim, graph })
    }

    /// Wrap an already-computed graph subspace.
    pub fn from_graph(space_dim: usize, graph: Subspace) -> Result<Self, RelationError> {
        if graph.ambient_dim() != 2 * space_dim {
            return Err(RelationError::GraphAmbient {
                expected: 2 * space_dim,
                found: graph.ambient_dim(),
            });
        }
        Ok(LinearRelation { space_dim, graph })
    }

    /// Graph of a (single-valued) operator given by a square matrix.
    pub fn from_matrix(m: &Matrix) -> Self {
        assert_eq!(m.rows(), m.cols(), "operator graphs need square matrices");
        let n = m.rows();
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            let mut row = e.clone();
            row.extend(m.apply(&e));
            rows.push(row);
        }
        let graph = Subspace::span(2 * n, rows).expect("rows built to length 2n");
        LinearRelation { space_dim: n, graph }
    }

    /// The identity relation `{(x, x)}`.
    pub fn identity(space_dim: usize) -> Self {
        Self::from_matrix(&Matrix::identity(space_dim))
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    pub fn contains_pair(&self, x: &[Q], y: &[Q]) -> Result<bool, RelationError> {
        if x.len() != self.space_dim || y.len() != self.space_dim {
            return Err(RelationError::GeneratorLength {
                index: 0,
                expected: self.space_dim,
                found: if x.len() != self.space_dim { x.len() } else { y.len() },
            });
        }
        let mut v = x.to_vec();
        v.extend_from_slice(y);
        Ok(self.graph.contains(&v).expect("length checked"))
    }

    pub fn dom(&self) -> Subspace {
        self.preimage_of(&Subspace::full(self.space_dim)).expect("ambient matches")
    }

    pub fn ran(&self) -> Subspace {
        self.image_of(&Subspace::full(self.space_dim)).expect("ambient matches")
    }

    pub fn ker(&self) -> Subspace {
        self.preimage_of(&Subspace::zero(self.space_dim)).expect("ambient matches")
    }

    pub fn mul(&self) -> Subspace {
        self.image_of(&Subspace::zero(self.space_dim)).expect("ambient matches")
    }

    pub fn parts(&self) -> RelationParts {
        RelationParts { dom: self.dom(), ran: self.ran(), ker: self.ker(), mul: self.mul() }
    }

    /// `{(y, x) : (x, y) in A}`.
    pub fn inverse(&self) -> LinearRelation {
        let m = self.space_dim;
        let rows = self
            .graph
            .basis_vectors()
            .map(|row| {
                let mut v = row[m..].to_vec();
                v.extend_from_slice(&row[..m]);
                v
            })
            .collect();
        let graph = Subspace::span(2 * m, rows).expect("rows keep length 2m");
        LinearRelation { space_dim: m, graph }
    }

    /// `A - lambda = {(x, y - lambda x) : (x, y) in A}`.
    pub fn shift(&self, lambda: &Q) -> LinearRelation {
        let m = self.space_dim;
        let rows = self
            .graph
            .basis_vectors()
            .map(|row| {
                let mut v = row[..m].to_vec();
                for j in 0..m {
                    v.push(&row[m + j] - &(lambda * &row[j]));
                }
                v
            })
            .collect();
        let graph = Subspace::span(2 * m, rows).expect("rows keep length 2m");
        LinearRelation { space_dim: m, graph }
    }

    /// `lambda A = {(x, lambda y) : (x, y) in A}`. With `lambda = 0` this
    /// collapses to `dom A x {0}`.
    pub fn scale(&self, lambda: &Q) -> LinearRelation {
        let m = self.space_dim;
        let rows = self
            .graph
            .basis_vectors()
            .map(|row| {
                let mut v = row[..m].to_vec();
                for j in 0..m {
                    v.push(lambda * &row[m + j]);
                }
                v
            })
            .collect();
        let graph = Subspace::span(2 * m, rows).expect("rows keep length 2m");
        LinearRelation { space_dim: m, graph }
    }

    /// Composition `self o rhs = {(x, y) : exists z, (x, z) in rhs and
    /// (z, y) in self}`; `rhs` acts first.
    ///
    /// Both graphs are lifted to triples `(x, z, y)` in `Q(i)^{3m}`, the
    /// lifts are intersected, and the result is projected to `(x, y)`.
    pub fn compose(&self, rhs: &LinearRelation) -> Result<LinearRelation, RelationError> {
        if self.space_dim != rhs.space_dim {
            return Err(RelationError::SpaceDimMismatch {
                left: self.space_dim,
                right: rhs.space_dim,
            });
        }
        let m = self.space_dim;
        let select = |first: usize, second: usize| {
            Matrix::from_fn(2 * m, 3 * m, |r, c| {
                let want = if r < m { first * m + r } else { second * m + (r - m) };
                if c == want {
                    Q::one()
                } else {
                    Q::zero()
                }
            })
        };
        let to_xz = select(0, 1);
        let to_zy = select(1, 2);
        let to_xy = select(0, 2);
        let first = to_xz.preimage(&rhs.graph).expect("lift shapes match");
        let second = to_zy.preimage(&self.graph).expect("lift shapes match");
        let lifted = first.intersect(&second).expect("same lifted ambient");
        let graph = to_xy.image(&lifted).expect("projection shapes match");
        Ok(LinearRelation { space_dim: m, graph })
    }

    /// `A^k` with `A^0 = I`. The exponent is capped at `2 * space_dim + 2`;
    /// all iterated structures stabilize well below that.
    pub fn power(&self, k: usize) -> Result<LinearRelation, RelationError> {
        let cap = 2 * self.space_dim + 2;
        if k > cap {
            return Err(RelationError::PowerExponent { exponent: k, cap });
        }
        let mut acc = LinearRelation::identity(self.space_dim);
        for _ in 0..k {
            acc = self.compose(&acc).expect("powers share the space dimension");
        }
        Ok(acc)
    }

    /// `{x : exists y in target, (x, y) in A}`.
    ///
    /// Solved in graph coordinates: a combination of the graph basis has
    /// its second half in the target exactly when the target's linear
    /// constraints annihilate it, so the result is the first-half span of
    /// one small kernel.
    pub fn preimage_of(&self, target: &Subspace) -> Result<Subspace, RelationError> {
        self.half_span_under(target, self.space_dim, 0)
    }

    /// `{y : exists x in source, (x, y) in A}`.
    pub fn image_of(&self, source: &Subspace) -> Result<Subspace, RelationError> {
        self.half_span_under(source, 0, self.space_dim)
    }

    /// Span of the halves at `keep` of all graph combinations whose half
    /// at `constrain` lies in `inside`.
    fn half_span_under(
        &self,
        inside: &Subspace,
        constrain: usize,
        keep: usize,
    ) -> Result<Subspace, RelationError> {
        if inside.ambient_dim() != self.space_dim {
            return Err(RelationError::SpaceDimMismatch {
                left: self.space_dim,
                right: inside.ambient_dim(),
            });
        }
        let m = self.space_dim;
        let g = self.graph.dim();
        let basis = self.graph.basis();
        let constrained_half =
            Matrix::from_fn(g, m, |r, j| basis[(r, constrain + j)].clone());
        let system = inside.constraint_matrix().mul(&constrained_half.transpose());
        let kept_half_t = Matrix::from_fn(m, g, |j, r| basis[(r, keep + j)].clone());
        let rows = system
            .null_space_basis()
            .into_iter()
            .map(|c| kept_half_t.apply(&c))
            .collect();
        Ok(Subspace::span(m, rows).expect("combinations have the space length"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{
        nonzero_scalar_strategy, operator_sum, rel, relation_strategy, relation_strategy_in_dim,
        vecq,
    };
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn generators_example_with_flip_pair() {
        // span{(0, e1), (e1, 0)} in dimension 2.
        let a = rel(2, &[(&[0, 0], &[1, 0]), (&[1, 0], &[0, 0])]);
        assert_eq!(a.dim(), 2);
        let parts = a.parts();
        let e1 = Subspace::span(2, vec![vecq(&[1, 0])]).unwrap();
        assert_eq!(parts.ker, e1);
        assert_eq!(parts.mul, e1);
        assert_eq!(parts.dom, e1);
        assert_eq!(parts.ran, e1);
    }

    #[test]
    fn generator_length_is_checked() {
        let err = LinearRelation::from_generators(2, &[(vecq(&[1]), vecq(&[0, 0]))]).unwrap_err();
        assert_eq!(err, RelationError::GeneratorLength { index: 0, expected: 2, found: 1 });
    }

    #[test]
    fn parts_of_nilpotent_operator_graph() {
        let m = Matrix::from_rows(2, vec![vecq(&[0, 1]), vecq(&[0, 0])]).unwrap();
        let a = LinearRelation::from_matrix(&m);
        let parts = a.parts();
        let e1 = Subspace::span(2, vec![vecq(&[1, 0])]).unwrap();
        assert_eq!(parts.ker, e1);
        assert_eq!(parts.mul, Subspace::zero(2));
        assert_eq!(parts.ran, e1);
        assert_eq!(parts.dom, Subspace::full(2));
    }

    #[test]
    fn shift_moves_eigenvalues_of_scalar_graph() {
        let a = rel(1, &[(&[1], &[2])]);
        assert_eq!(a.shift(&q(2)).ker(), Subspace::full(1));
        assert_eq!(a.inverse().shift(&Q::from_parts(1, 2, 0, 1)).ker(), Subspace::full(1));
    }

    #[test]
    fn scale_by_zero_collapses_to_domain() {
        let a = rel(2, &[(&[1, 0], &[0, 1])]);
        let scaled = a.scale(&q(0));
        assert_eq!(scaled.ran(), Subspace::zero(2));
        assert_eq!(scaled.dom(), a.dom());
        assert_eq!(scaled.ker(), a.dom());
    }

    #[test]
    fn compose_full_relation_on_line() {
        let full = rel(1, &[(&[1], &[0]), (&[0], &[1])]);
        let sq = full.compose(&full).unwrap();
        assert_eq!(sq, full);
    }

    #[test]
    fn compose_dimension_mismatch() {
        let a = LinearRelation::identity(1);
        let b = LinearRelation::identity(2);
        assert_eq!(
            a.compose(&b).unwrap_err(),
            RelationError::SpaceDimMismatch { left: 1, right: 2 }
        );
    }

    #[test]
    fn power_zero_is_identity_and_cap_is_enforced() {
        let a = rel(2, &[(&[1, 0], &[0, 1])]);
        assert_eq!(a.power(0).unwrap(), LinearRelation::identity(2));
        let err = a.power(7).unwrap_err();
        assert_eq!(err, RelationError::PowerExponent { exponent: 7, cap: 6 });
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn inverse_swaps_parts(a in relation_strategy(3)) {
            let inv = a.inverse();
            prop_assert_eq!(a.ker(), inv.mul());
            prop_assert_eq!(a.dom(), inv.ran());
            prop_assert_eq!(a.mul(), inv.ker());
            prop_assert_eq!(a.ran(), inv.dom());
            prop_assert_eq!(inv.inverse(), a);
        }

        #[test]
        fn shift_and_scale_round_trip(a in relation_strategy(3)) {
            let lambda = Q::from_parts(2, 3, -1, 1);
            prop_assert_eq!(a.shift(&lambda).shift(&-&lambda), a.clone());
            let back = a.scale(&lambda).scale(&lambda.inv().unwrap());
            prop_assert_eq!(back, a);
        }

        #[test]
        fn resolvent_identity(
            a in relation_strategy(3),
            lambda in nonzero_scalar_strategy(),
        ) {
            // (A - λ)^{-1} = -1/λ - (1/λ²)(A^{-1} - 1/λ)^{-1}, the right
            // side read as an operator sum with the scalar graph.
            let inv_l = lambda.inv().unwrap();
            let lhs = a.shift(&lambda).inverse();
            let core = a.inverse().shift(&inv_l).inverse();
            let coeff = -&(&inv_l * &inv_l);
            let scalar_graph = LinearRelation::from_matrix(
                &Matrix::identity(a.space_dim()).scale(&-&inv_l),
            );
            let rhs = operator_sum(&core.scale(&coeff), &scalar_graph);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_is_associative(
            (a, b, c) in (1usize..=2).prop_flat_map(|m| (
                relation_strategy_in_dim(m),
                relation_strategy_in_dim(m),
                relation_strategy_in_dim(m),
            )),
        ) {
            let left = a.compose(&b.compose(&c).unwrap()).unwrap();
            let right = a.compose(&b).unwrap().compose(&c).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn power_is_additive(a in relation_strategy(2), j in 0usize..=2, k in 0usize..=2) {
            let sum = a.power(j + k).unwrap();
            let split = a.power(j).unwrap().compose(&a.power(k).unwrap()).unwrap();
            prop_assert_eq!(sum, split);
        }

        #[test]
        fn identity_is_neutral(a in relation_strategy(3)) {
            let id = LinearRelation::identity(a.space_dim());
            prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
            prop_assert_eq!(id.compose(&a).unwrap(), a);
        }

        #[test]
        fn operator_composition_matches_matrix_product(
            rows_a in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 2),
            rows_b in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 2),
        ) {
            let to_mat = |rows: &Vec<Vec<i64>>| {
                Matrix::from_rows(2, rows.iter().map(|r| vecq(r)).collect()).unwrap()
            };
            let ma = to_mat(&rows_a);
            let mb = to_mat(&rows_b);
            let lhs = LinearRelation::from_matrix(&ma)
                .compose(&LinearRelation::from_matrix(&mb))
                .unwrap();
            prop_assert_eq!(lhs, LinearRelation::from_matrix(&ma.mul(&mb)));
        }
    }
}
