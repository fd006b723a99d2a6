//! Deterministic random instances for the verification harness.
//!
//! Every sampler takes an explicit RNG. The harness derives one RNG per
//! (seed, suite, part, trial), so any suite's instance stream can be
//! regenerated on its own — the spectrum suite replays the instances of all
//! other suites without re-running them.

use linrel::{
    jordan_chain, kcf_generate, pencil_to_relation, proper_point_spectrum, root_space,
    singular_chain_space, ExtendedScalar, GaussianRational, KcfSpec, LinearRelation, Matrix,
    MatrixPencil, MultiIndex, Subspace,
};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = GaussianRational;

/// SplitMix64 step, used to spread the stream coordinates into independent
/// ChaCha keys.
fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator for one trial of one suite part. Streams for different
/// coordinates are independent; identical coordinates replay identically.
pub fn trial_rng(seed: u64, suite: u64, part: u64, trial: u64) -> ChaCha8Rng {
    let mut key = splitmix(seed);
    for piece in [suite, part, trial] {
        key = splitmix(key ^ splitmix(piece));
    }
    ChaCha8Rng::seed_from_u64(key)
}

/// Default pool: every `a/b + (c/d)i` with `a, c` in `[-3, 3]` and `b, d`
/// in `[1, 3]`. Duplicate values act as weights.
pub fn default_scalar_pool() -> Vec<Q> {
    let mut pool = Vec::new();
    for a in -3..=3 {
        for b in 1..=3 {
            for c in -3..=3 {
                for d in 1..=3 {
                    pool.push(Q::from_parts(a, b, c, d));
                }
            }
        }
    }
    pool
}

pub fn pool_scalar(rng: &mut ChaCha8Rng, pool: &[Q]) -> Q {
    pool[rng.gen_range(0..pool.len())].clone()
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng, pool: &[Q]) -> Q {
    for _ in 0..64 {
        let q = pool_scalar(rng, pool);
        if !q.is_zero() {
            return q;
        }
    }
    Q::from_int(1)
}

/// Vector entries are zeroed with probability 1/4 on top of the pool's own
/// zeros, so sampled instances hit degenerate configurations often.
fn entry(rng: &mut ChaCha8Rng, pool: &[Q]) -> Q {
    if rng.gen_range(0..4usize) == 0 {
        Q::zero()
    } else {
        pool_scalar(rng, pool)
    }
}

pub fn vector(rng: &mut ChaCha8Rng, pool: &[Q], len: usize) -> Vec<Q> {
    (0..len).map(|_| entry(rng, pool)).collect()
}

/// A random relation on a space of exactly dimension `m`: between `0` and
/// `2m` generators, so operators, purely multivalued relations, and
/// relations with singular chains all occur with substantial frequency.
pub fn relation_in_dim(rng: &mut ChaCha8Rng, pool: &[Q], m: usize) -> LinearRelation {
    let count = rng.gen_range(0..=2 * m);
    let pairs: Vec<(Vec<Q>, Vec<Q>)> =
        (0..count).map(|_| (vector(rng, pool, m), vector(rng, pool, m))).collect();
    LinearRelation::from_generators(m, &pairs).expect("sampled generators have length m")
}

pub fn relation(rng: &mut ChaCha8Rng, pool: &[Q], max_dim: usize) -> LinearRelation {
    let m = rng.gen_range(1..=max_dim.max(1));
    relation_in_dim(rng, pool, m)
}

/// A random element of the subspace (a pool combination of its basis).
pub fn member(rng: &mut ChaCha8Rng, pool: &[Q], space: &Subspace) -> Vec<Q> {
    let mut v = vec![Q::zero(); space.ambient_dim()];
    for b in space.basis_vectors() {
        let c = pool_scalar(rng, pool);
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = &*vi + &(&c * bi);
        }
    }
    v
}

/// Candidate points for root-space sampling: the relation's own proper
/// eigenvalues (so intersections are substantial rather than vacuously
/// `{0}`), infinity, zero, and a few fresh pool scalars; deduplicated.
pub fn point_pool(rng: &mut ChaCha8Rng, pool: &[Q], a: &LinearRelation) -> Vec<ExtendedScalar> {
    let report = proper_point_spectrum(a);
    let mut points: Vec<ExtendedScalar> =
        report.proper_eigenvalues.iter().map(|(p, _)| p.clone()).collect();
    for candidate in [ExtendedScalar::Infinity, ExtendedScalar::zero()]
        .into_iter()
        .chain((0..4).map(|_| ExtendedScalar::Finite(pool_scalar(rng, pool))))
    {
        if !points.contains(&candidate) {
            points.push(candidate);
        }
    }
    points
}

/// Choose `count` distinct points, preferring the given candidates and
/// topping up with fresh integers when they run out.
pub fn distinct_points(
    rng: &mut ChaCha8Rng,
    mut candidates: Vec<ExtendedScalar>,
    count: usize,
) -> Vec<ExtendedScalar> {
    let mut chosen = Vec::with_capacity(count);
    while chosen.len() < count && !candidates.is_empty() {
        let k = rng.gen_range(0..candidates.len());
        chosen.push(candidates.swap_remove(k));
    }
    let mut fresh = 10i64;
    while chosen.len() < count {
        let p = ExtendedScalar::from_int(fresh);
        fresh += 1;
        if !chosen.contains(&p) {
            chosen.push(p);
        }
    }
    chosen
}

pub fn distinct_scalars(rng: &mut ChaCha8Rng, pool: &[Q], count: usize) -> Vec<Q> {
    let mut chosen: Vec<Q> = Vec::with_capacity(count);
    let mut attempts = 0;
    while chosen.len() < count {
        attempts += 1;
        let q = if attempts <= 200 {
            pool_scalar(rng, pool)
        } else {
            Q::from_int(10 + attempts)
        };
        if !chosen.contains(&q) {
            chosen.push(q);
        }
    }
    chosen
}

/// `mul (A - lambda) = mul A` is nonzero exactly when the first-half
/// columns of the graph basis are dependent; one small rank call, much
/// cheaper than iterating the root space of a hopeless draw.
fn has_multivalued_part(a: &LinearRelation) -> bool {
    let (g, m) = (a.dim(), a.space_dim());
    let x_half = Matrix::from_fn(g, m, |r, c| a.graph().basis()[(r, c)].clone());
    x_half.rank() < g
}

/// `ker (A - lambda)` (and with it the whole root space at `lambda`) is
/// nonzero exactly when the shifted second halves of the graph basis are
/// dependent.
fn has_kernel_at(a: &LinearRelation, lambda: &Q) -> bool {
    let (g, m) = (a.dim(), a.space_dim());
    let basis = a.graph().basis();
    let y_half = Matrix::from_fn(g, m, |r, c| &basis[(r, m + c)] - &(lambda * &basis[(r, c)]));
    y_half.rank() < g
}

/// Relation spanned by a generated pencil holding one block of the given
/// depth — a Jordan block at `lambda`, or a nilpotent block for the point
/// at infinity — conjugated by random invertible transforms.
fn deep_block_relation(
    rng: &mut ChaCha8Rng,
    pool: &[Q],
    lambda: Option<&Q>,
    depth: usize,
) -> LinearRelation {
    let (jordan_blocks, alpha) = match lambda {
        Some(l) => (vec![(l.clone(), depth)], Vec::new()),
        None => (Vec::new(), vec![depth]),
    };
    let mut spec = KcfSpec {
        jordan_blocks,
        alpha: MultiIndex::new(alpha).expect("positive size"),
        epsilon: MultiIndex::new(Vec::new()).expect("empty"),
        eta: MultiIndex::new(Vec::new()).expect("empty"),
        w: Matrix::identity(0),
        t: Matrix::identity(0),
    };
    spec.w = invertible_matrix(rng, pool, spec.rows());
    spec.t = invertible_matrix(rng, pool, spec.cols());
    let (p, _) = kcf_generate(&spec).expect("transforms are square and invertible");
    pencil_to_relation(&p)
}

/// A chain of length >= 2 ending in the given root space. Random members
/// usually have maximal depth; scanning the basis completes the search
/// (some basis vector must sit above the first level, or the space would
/// have depth 1).
fn deep_chain(
    rng: &mut ChaCha8Rng,
    pool: &[Q],
    a: &LinearRelation,
    at: &ExtendedScalar,
    space: &Subspace,
) -> Vec<Vec<Q>> {
    for _ in 0..8 {
        let x = member(rng, pool, space);
        if x.iter().all(Q::is_zero) {
            continue;
        }
        let chain = jordan_chain(a, at, &x).expect("sampled endpoint lies in the root space");
        if chain.len() >= 2 {
            return chain.vectors().to_vec();
        }
    }
    for v in space.basis_vectors() {
        let chain = jordan_chain(a, at, v).expect("basis vector lies in the root space");
        if chain.len() >= 2 {
            return chain.vectors().to_vec();
        }
    }
    unreachable!("a root space of depth >= 2 contains chain endpoints of depth >= 2");
}

/// A relation, a shift, and a forward chain of `A - lambda` at infinity
/// (`(0, x_1), (x_1, x_2), ...` all in `A - lambda`) of length at least 2.
/// Generic draws are tried first; if none of them carries a deep enough
/// multivalued part, a generated pencil with one nilpotent block supplies
/// the chain.
pub fn forward_chain(
    rng: &mut ChaCha8Rng,
    pool: &[Q],
    max_dim: usize,
) -> (LinearRelation, Q, Vec<Vec<Q>>) {
    for _ in 0..12 {
        let a = relation(rng, pool, max_dim);
        let lambda = pool_scalar(rng, pool);
        if !has_multivalued_part(&a) {
            continue;
        }
        // Chains of length >= 2 exist exactly when the second multivalued
        // level grows past the first.
        let shifted = a.shift(&lambda);
        let level1 = shifted.mul();
        let level2 = shifted.image_of(&level1).expect("ambient dimensions agree");
        if level2.dim() == level1.dim() {
            continue;
        }
        let rinf = root_space(&shifted, &ExtendedScalar::Infinity);
        let chain = deep_chain(rng, pool, &shifted, &ExtendedScalar::Infinity, &rinf);
        return (a, lambda, chain);
    }
    let depth = rng.gen_range(2..=3);
    let lambda = pool_scalar(rng, pool);
    let b = deep_block_relation(rng, pool, None, depth);
    let rinf = root_space(&b, &ExtendedScalar::Infinity);
    let chain = deep_chain(rng, pool, &b, &ExtendedScalar::Infinity, &rinf);
    // `a - lambda` equals the generated relation, re-rooting its chain.
    (b.shift(&-&lambda), lambda, chain)
}

/// A relation, a finite `lambda`, and an ascending Jordan chain
/// `x_1, ..., x_n` of `A` at `lambda` (`(x_i, x_{i-1} + lambda x_i) in A`).
/// Generic draws are tried first; a generated pencil with one deep Jordan
/// block is the fallback.
pub fn kernel_chain(
    rng: &mut ChaCha8Rng,
    pool: &[Q],
    max_dim: usize,
) -> (LinearRelation, Q, Vec<Vec<Q>>) {
    for _ in 0..12 {
        let a = relation(rng, pool, max_dim);
        let lambda = pool_scalar(rng, pool);
        if !has_kernel_at(&a, &lambda) {
            continue;
        }
        let rl = root_space(&a, &ExtendedScalar::Finite(lambda.clone()));
        let x = member(rng, pool, &rl);
        if x.iter().all(Q::is_zero) {
            continue;
        }
        let chain = jordan_chain(&a, &ExtendedScalar::Finite(lambda.clone()), &x)
            .expect("sampled endpoint lies in the root space");
        return (a, lambda, chain.vectors().to_vec());
    }
    let depth = rng.gen_range(2..=3);
    let lambda = pool_scalar(rng, pool);
    let a = deep_block_relation(rng, pool, Some(&lambda), depth);
    let at = ExtendedScalar::Finite(lambda.clone());
    let rl = root_space(&a, &at);
    let chain = deep_chain(rng, pool, &a, &at, &rl);
    (a, lambda, chain)
}

/// Block data for a square confluent Vandermonde matrix: distinct nodes,
/// orders `k_r <= 2`, total column count `sum (k_r + 1) <= 6`.
pub fn vandermonde_blocks(rng: &mut ChaCha8Rng, pool: &[Q]) -> Vec<(Q, usize)> {
    let count = rng.gen_range(1..=3);
    let lambdas = distinct_scalars(rng, pool, count);
    let mut budget = 6usize;
    let mut blocks = Vec::with_capacity(count);
    for (r, lambda) in lambdas.into_iter().enumerate() {
        let remaining = count - r;
        let max_k = (budget - remaining).min(2);
        let k = rng.gen_range(0..=max_k);
        budget -= k + 1;
        blocks.push((lambda, k));
    }
    blocks
}

/// A random invertible matrix with (sparse) pool entries; falls back to the
/// identity if 50 draws all come out singular.
pub fn invertible_matrix(rng: &mut ChaCha8Rng, pool: &[Q], n: usize) -> Matrix {
    for _ in 0..50 {
        let m = Matrix::from_fn(n, n, |_, _| entry(rng, pool));
        if !m.det().is_zero() {
            return m;
        }
    }
    Matrix::identity(n)
}

/// A random canonical-form spec: one to four blocks of any kind, capped at
/// `cap` rows and `cap` columns, with random invertible transforms.
pub fn kcf_spec(rng: &mut ChaCha8Rng, pool: &[Q], cap: usize) -> KcfSpec {
    let mut jordan = Vec::new();
    let (mut alpha, mut epsilon, mut eta) = (Vec::new(), Vec::new(), Vec::new());
    let (mut m, mut d) = (0usize, 0usize);
    for _ in 0..rng.gen_range(1..=4) {
        match rng.gen_range(0..4usize) {
            0 => {
                let s = rng.gen_range(1..=2);
                if m + s <= cap && d + s <= cap {
                    jordan.push((pool_scalar(rng, pool), s));
                    m += s;
                    d += s;
                }
            }
            1 => {
                let s = rng.gen_range(1..=2);
                if m + s <= cap && d + s <= cap {
                    alpha.push(s);
                    m += s;
                    d += s;
                }
            }
            2 => {
                let k = rng.gen_range(1..=3);
                if m + k - 1 <= cap && d + k <= cap {
                    epsilon.push(k);
                    m += k - 1;
                    d += k;
                }
            }
            _ => {
                let h = rng.gen_range(1..=3);
                if m + h <= cap && d + h - 1 <= cap {
                    eta.push(h);
                    m += h;
                    d += h - 1;
                }
            }
        }
    }
    let mut spec = KcfSpec {
        jordan_blocks: jordan,
        alpha: MultiIndex::new(alpha).expect("sizes start at 1"),
        epsilon: MultiIndex::new(epsilon).expect("sizes start at 1"),
        eta: MultiIndex::new(eta).expect("sizes start at 1"),
        w: Matrix::identity(0),
        t: Matrix::identity(0),
    };
    spec.w = invertible_matrix(rng, pool, spec.rows());
    spec.t = invertible_matrix(rng, pool, spec.cols());
    spec
}

/// A pencil and a two-sided equivalence transform of it.
pub fn equivalence_pair(rng: &mut ChaCha8Rng, pool: &[Q]) -> (MatrixPencil, MatrixPencil) {
    let base = if rng.gen_range(0..2usize) == 0 {
        let m = rng.gen_range(1..=4);
        let d = rng.gen_range(1..=4);
        MatrixPencil::new(
            Matrix::from_fn(m, d, |_, _| entry(rng, pool)),
            Matrix::from_fn(m, d, |_, _| entry(rng, pool)),
        )
        .expect("same shape")
    } else {
        kcf_generate(&kcf_spec(rng, pool, 4)).expect("sampled transforms are invertible").0
    };
    let w = invertible_matrix(rng, pool, base.rows());
    let t = invertible_matrix(rng, pool, base.cols());
    let transformed =
        MatrixPencil::new(w.mul(base.e()).mul(&t), w.mul(base.f()).mul(&t)).expect("same shape");
    (base, transformed)
}

/// A relation with known-nontrivial root spaces plus a selection of
/// `(point, vector)` pairs with each vector in `R_point \ R_c` — the
/// premises of the independence certificate.
pub fn certificate_selection(
    rng: &mut ChaCha8Rng,
    pool: &[Q],
) -> (LinearRelation, Vec<(ExtendedScalar, Vec<Q>)>) {
    let jordan_count = rng.gen_range(1..=2);
    let lambdas = distinct_scalars(rng, pool, jordan_count);
    let jordan: Vec<(Q, usize)> =
        lambdas.into_iter().map(|l| (l, rng.gen_range(1..=2))).collect();
    let alpha = if rng.gen_range(0..2usize) == 0 { vec![rng.gen_range(1..=2)] } else { vec![] };
    // k >= 2 keeps the singular chain space nontrivial in a third of the
    // instances, exercising the "strictly outside R_c" requirement.
    let epsilon = if rng.gen_range(0..3usize) == 0 { vec![rng.gen_range(2..=3)] } else { vec![] };
    let has_alpha = !alpha.is_empty();
    let mut spec = KcfSpec {
        jordan_blocks: jordan.clone(),
        alpha: MultiIndex::new(alpha).expect("sizes start at 1"),
        epsilon: MultiIndex::new(epsilon).expect("sizes start at 2"),
        eta: MultiIndex::empty(),
        w: Matrix::identity(0),
        t: Matrix::identity(0),
    };
    spec.w = invertible_matrix(rng, pool, spec.rows());
    spec.t = invertible_matrix(rng, pool, spec.cols());
    let (p, _) = kcf_generate(&spec).expect("sampled transforms are invertible");
    let a = pencil_to_relation(&p);
    let rc = singular_chain_space(&a);

    let mut points: Vec<ExtendedScalar> =
        jordan.iter().map(|(l, _)| ExtendedScalar::Finite(l.clone())).collect();
    if has_alpha {
        points.push(ExtendedScalar::Infinity);
    }
    let keep = rng.gen_range(1..=points.len());
    let chosen = distinct_points(rng, points, keep);

    let mut selection = Vec::with_capacity(chosen.len());
    for point in chosen {
        let rl = root_space(&a, &point);
        debug_assert!(rl.dim() > rc.dim(), "generated root spaces strictly contain R_c");
        let mut x = None;
        for _ in 0..20 {
            let v = member(rng, pool, &rl);
            if !rc.contains(&v).expect("same ambient space") {
                x = Some(v);
                break;
            }
        }
        let x = x.unwrap_or_else(|| {
            rl.basis_vectors()
                .find(|b| !rc.contains(b).expect("same ambient space"))
                .expect("a strictly larger subspace has a basis vector outside R_c")
                .to_vec()
        });
        selection.push((point, x));
    }
    (a, selection)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(trial: u64) -> ChaCha8Rng {
        trial_rng(7, 99, 0, trial)
    }

    #[test]
    fn trial_streams_are_independent_and_reproducible() {
        let pool = default_scalar_pool();
        let a1 = relation(&mut rng(0), &pool, 5);
        let a2 = relation(&mut rng(0), &pool, 5);
        assert_eq!(a1, a2);
        let draws: Vec<u64> = (0..32).map(|t| rng(t).gen()).collect();
        let distinct: std::collections::HashSet<_> = draws.iter().collect();
        assert_eq!(distinct.len(), draws.len());
    }

    #[test]
    fn sampled_chains_satisfy_their_contracts() {
        let pool = default_scalar_pool();
        for trial in 0..12 {
            let mut r = rng(trial);
            let (a, lambda, xs) = forward_chain(&mut r, &pool, 4);
            assert!(xs.len() >= 2);
            let shifted = a.shift(&lambda);
            let zero = vec![Q::zero(); a.space_dim()];
            assert!(shifted.contains_pair(&zero, &xs[0]).expect("lengths match"));
            for w in xs.windows(2) {
                assert!(shifted.contains_pair(&w[0], &w[1]).expect("lengths match"));
            }

            let (a, lambda, xs) = kernel_chain(&mut r, &pool, 4);
            let mut prev = vec![Q::zero(); a.space_dim()];
            for x in &xs {
                let target: Vec<Q> =
                    prev.iter().zip(x.iter()).map(|(p, xi)| p + &(&lambda * xi)).collect();
                assert!(a.contains_pair(x, &target).expect("lengths match"));
                prev = x.clone();
            }
        }
    }

    #[test]
    fn sampled_vandermonde_blocks_fit_the_budget() {
        let pool = default_scalar_pool();
        for trial in 0..40 {
            let blocks = vandermonde_blocks(&mut rng(trial), &pool);
            let total: usize = blocks.iter().map(|(_, k)| k + 1).sum();
            assert!((1..=6).contains(&total));
            for (i, (li, _)) in blocks.iter().enumerate() {
                for (lj, _) in blocks.iter().skip(i + 1) {
                    assert_ne!(li, lj);
                }
            }
        }
    }

    #[test]
    fn sampled_certificates_meet_the_preconditions() {
        let pool = default_scalar_pool();
        for trial in 0..6 {
            let (a, selection) = certificate_selection(&mut rng(trial), &pool);
            assert!(!selection.is_empty());
            let rc = singular_chain_space(&a);
            for (point, x) in &selection {
                let rl = root_space(&a, point);
                assert!(rl.contains(x).expect("ambient matches"));
                assert!(!rc.contains(x).expect("ambient matches"));
            }
        }
    }
}
