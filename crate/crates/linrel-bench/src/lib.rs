//! Shared fixtures for the benchmarks: a mixed-structure pencil conjugated
//! by dense unimodular transforms, the relation it spans, and a pair of
//! overlapping subspaces. Everything is fixed so runs are comparable.

use linrel::{
    kcf_generate, pencil_to_relation, GaussianRational, KcfSpec, LinearRelation, Matrix,
    MatrixPencil, MultiIndex, Subspace,
};

type Q = GaussianRational;

/// Unimodular `n x n` matrix with entries `C(i, j)`-like growth kept small:
/// ones on and below the diagonal, alternating signs off the diagonal.
fn unimodular(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        if j > i {
            Q::from_int(0)
        } else if (i + j) % 2 == 0 {
            Q::from_int(1)
        } else {
            Q::from_int(-1)
        }
    })
}

/// A 5 x 6 pencil holding one 2-dimensional eigenvalue block, one nilpotent
/// block, and one singular column block, hidden by dense transforms.
pub fn mixed_pencil() -> MatrixPencil {
    let mut spec = KcfSpec {
        jordan_blocks: vec![(Q::from_int(1), 2)],
        alpha: MultiIndex::new(vec![2]).expect("positive entries"),
        epsilon: MultiIndex::new(vec![2]).expect("positive entries"),
        eta: MultiIndex::new(Vec::new()).expect("empty"),
        w: Matrix::identity(0),
        t: Matrix::identity(0),
    };
    spec.w = unimodular(spec.rows());
    spec.t = unimodular(spec.cols());
    let (pencil, _) = kcf_generate(&spec).expect("transforms are square and unimodular");
    pencil
}

/// The relation the mixed pencil spans.
pub fn mixed_relation() -> LinearRelation {
    pencil_to_relation(&mixed_pencil())
}

/// Two subspaces of `C^10` of dimensions 6 and 5 with a 3-dimensional meet.
pub fn overlapping_subspaces() -> (Subspace, Subspace) {
    let shared: Vec<Vec<Q>> = (0..3)
        .map(|r| (0..10).map(|c| Q::from_int(((r * c + c) % 5) as i64 - 2)).collect())
        .collect();
    let mut left = shared.clone();
    for r in 0..3 {
        left.push((0..10).map(|c| Q::from_int(((r + 1) * c % 7) as i64)).collect());
    }
    let mut right = shared;
    for r in 0..2 {
        right.push((0..10).map(|c| Q::from_int(((r + 2) * (c + 1) % 3) as i64 - 1)).collect());
    }
    let left = Subspace::span(10, left).expect("row lengths match");
    let right = Subspace::span(10, right).expect("row lengths match");
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_the_documented_shapes() {
        let p = mixed_pencil();
        assert_eq!((p.rows(), p.cols()), (5, 6));
        assert_eq!(mixed_relation().space_dim(), 5);
        let (left, right) = overlapping_subspaces();
        assert_eq!(left.dim(), 6);
        assert_eq!(right.dim(), 5);
        assert_eq!(left.intersect(&right).expect("same ambient").dim(), 3);
    }
}
