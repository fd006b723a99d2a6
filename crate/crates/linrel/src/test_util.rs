//! Shared helpers for unit tests: small-value constructors, proptest
//! strategies, and brute-force oracles computed along an independent route.

use num::Zero;
use proptest::prelude::*;

use crate::exact::GaussianRational;
use crate::relation::LinearRelation;
use crate::rootspace::ExtendedScalar;
use crate::subspace::{Matrix, Subspace};

type Q = GaussianRational;

pub fn vecq(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&n| Q::from_int(n)).collect()
}

pub fn rel(space_dim: usize, pairs: &[(&[i64], &[i64])]) -> LinearRelation {
    let generators: Vec<(Vec<Q>, Vec<Q>)> =
        pairs.iter().map(|(x, y)| (vecq(x), vecq(y))).collect();
    LinearRelation::from_generators(space_dim, &generators).unwrap()
}

pub fn scalar_strategy() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=2, -2i64..=2, 1i64..=2).prop_map(|(a, b, c, d)| Q::from_parts(a, b, c, d))
}

pub fn nonzero_scalar_strategy() -> impl Strategy<Value = Q> {
    scalar_strategy().prop_map(|q| if q.is_zero() { Q::from_int(1) } else { q })
}

pub fn vector_strategy(len: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(scalar_strategy(), len)
}

/// Random relations on a space of exactly `m` dimensions; generator counts
/// up to `2m` make multivalued and singular behavior common.
pub fn relation_strategy_in_dim(m: usize) -> impl Strategy<Value = LinearRelation> {
    proptest::collection::vec((vector_strategy(m), vector_strategy(m)), 0..=2 * m)
        .prop_map(move |gens| LinearRelation::from_generators(m, &gens).unwrap())
}

/// Random relations with space dimension in `1..=max_dim`.
pub fn relation_strategy(max_dim: usize) -> impl Strategy<Value = LinearRelation> {
    (1..=max_dim).prop_flat_map(relation_strategy_in_dim)
}

/// Operator sum `{(x, y + z) : (x, y) ∈ a, (x, z) ∈ b}`, needed only to
/// state the resolvent identity; deliberately not part of the public
/// operator algebra. Built by lifting both graphs to `(x, y, z)` triples
/// and projecting through the addition map.
pub fn operator_sum(a: &LinearRelation, b: &LinearRelation) -> LinearRelation {
    let m = a.space_dim();
    assert_eq!(m, b.space_dim());
    let unit = |rb: usize, cb: usize, r: usize, c: usize| {
        if r / m == rb && c / m == cb && r % m == c % m {
            Q::from_int(1)
        } else {
            Q::zero()
        }
    };
    // (x, y) x C^m already has the (x, y, z) layout; (x, z) x C^m needs
    // its last two blocks swapped.
    let a_lift = a.graph().product(&Subspace::full(m));
    let swap = Matrix::from_fn(3 * m, 3 * m, |r, c| {
        &(&unit(0, 0, r, c) + &unit(1, 2, r, c)) + &unit(2, 1, r, c)
    });
    let b_lift = swap.image(&b.graph().product(&Subspace::full(m))).unwrap();
    let add = Matrix::from_fn(2 * m, 3 * m, |r, c| {
        &(&unit(0, 0, r, c) + &unit(1, 1, r, c)) + &unit(1, 2, r, c)
    });
    let graph = add.image(&a_lift.intersect(&b_lift).unwrap()).unwrap();
    LinearRelation::from_graph(m, graph).unwrap()
}

/// Root space computed the slow way, through explicit relation powers and
/// their kernel / multivalued parts. Used as an oracle for the iterative
/// implementation.
pub fn root_space_bruteforce(a: &LinearRelation, at: &ExtendedScalar) -> Subspace {
    let m = a.space_dim();
    let mut prev = Subspace::zero(m);
    for i in 1..=m + 1 {
        let cur = match at {
            ExtendedScalar::Finite(lambda) => a.shift(lambda).power(i).unwrap().ker(),
            ExtendedScalar::Infinity => a.power(i).unwrap().mul(),
        };
        if cur == prev {
            return cur;
        }
        prev = cur;
    }
    prev
}
