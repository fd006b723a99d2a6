//! The randomized verification harness: nine deterministic property suites
//! over sampled relations, chains, and pencils.
//!
//! Each suite derives one RNG per trial from (seed, suite id, part, trial),
//! so a run is reproducible from its config alone and the spectrum suite can
//! replay every other suite's instances. A failing check records a
//! replayable [`InputDocument`] counterexample; a panic inside a trial is
//! caught and reported the same way.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num::{One, Zero};
use rand::Rng;

use linrel::{
    confluent_vandermonde, independence_certificate, is_eigenvalue, jordan_extend_transform,
    kcf_generate, kronecker_structure, pencil_to_relation, proper_point_spectrum, root_space,
    shift_chain_transform, singular_chain_space, verify_kcf_subspaces, ExtendedScalar,
    GaussianRational, LinearRelation, Matrix, Rational, Subspace,
};

use crate::document::InputDocument;
use crate::sample::{self, trial_rng};

type Q = GaussianRational;

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_dim: usize,
    pub scalar_pool: Vec<Q>,
}

impl HarnessConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        HarnessConfig {
            trials: trials.max(1),
            seed,
            max_dim: 5,
            scalar_pool: sample::default_scalar_pool(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    PairwiseMeet,
    DisjointSumMeet,
    ForcedSum,
    ChainTransforms,
    Vandermonde,
    ShiftIdentities,
    KcfSubspaces,
    KroneckerInvariance,
    SpectrumLaws,
}

pub const ALL_SUITES: [Suite; 9] = [
    Suite::PairwiseMeet,
    Suite::DisjointSumMeet,
    Suite::ForcedSum,
    Suite::ChainTransforms,
    Suite::Vandermonde,
    Suite::ShiftIdentities,
    Suite::KcfSubspaces,
    Suite::KroneckerInvariance,
    Suite::SpectrumLaws,
];

impl Suite {
    /// Stable stream id; part of the RNG derivation, never reordered.
    fn id(self) -> u64 {
        match self {
            Suite::PairwiseMeet => 1,
            Suite::DisjointSumMeet => 2,
            Suite::ForcedSum => 3,
            Suite::ChainTransforms => 4,
            Suite::Vandermonde => 5,
            Suite::ShiftIdentities => 6,
            Suite::KcfSubspaces => 7,
            Suite::KroneckerInvariance => 8,
            Suite::SpectrumLaws => 9,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::PairwiseMeet => "pairwise-root-space-meet",
            Suite::DisjointSumMeet => "disjoint-sum-meet",
            Suite::ForcedSum => "forced-sum-membership",
            Suite::ChainTransforms => "chain-transforms",
            Suite::Vandermonde => "confluent-vandermonde",
            Suite::ShiftIdentities => "shift-inversion-identities",
            Suite::KcfSubspaces => "kcf-subspace-formulas",
            Suite::KroneckerInvariance => "kronecker-invariance",
            Suite::SpectrumLaws => "spectrum-laws",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One failed check, with enough context to replay it.
#[derive(Debug)]
pub struct Failure {
    pub trial: u64,
    pub check: String,
    pub counterexample: Option<InputDocument>,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: u64,
    pub checks: u64,
    pub failures: u64,
    /// The first few failures in trial order; `failures` counts all of them.
    pub examples: Vec<Failure>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

const MAX_STORED_FAILURES: usize = 8;

struct Recorder {
    report: SuiteReport,
    started: Instant,
}

impl Recorder {
    fn new(suite: Suite, trials: u64) -> Self {
        Recorder {
            report: SuiteReport {
                suite,
                trials,
                checks: 0,
                failures: 0,
                examples: Vec::new(),
                seconds: 0.0,
            },
            started: Instant::now(),
        }
    }

    fn check(
        &mut self,
        trial: u64,
        ok: bool,
        describe: impl FnOnce() -> String,
        doc: &dyn Fn() -> Option<InputDocument>,
    ) {
        self.report.checks += 1;
        if !ok {
            self.report.failures += 1;
            if self.report.examples.len() < MAX_STORED_FAILURES {
                self.report.examples.push(Failure {
                    trial,
                    check: describe(),
                    counterexample: doc(),
                });
            }
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.report.seconds = self.started.elapsed().as_secs_f64();
        self.report
    }
}

/// Run one trial body, converting a panic into a recorded failure so a
/// violated internal assertion still yields a counterexample document.
fn guarded(
    rec: &mut Recorder,
    trial: u64,
    doc: &dyn Fn() -> Option<InputDocument>,
    body: impl FnOnce(&mut Recorder),
) {
    let outcome = catch_unwind(AssertUnwindSafe(|| body(&mut *rec)));
    if let Err(payload) = outcome {
        let text = payload
            .downcast_ref::<&str>()
            .map(|s| (*s).to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "non-string panic payload".to_string());
        rec.check(trial, false, || format!("trial panicked: {text}"), doc);
    }
}

/// Per-suite trial counts, scaled from the configured total so that the
/// reference run (`trials = 500`) gives 500/200/200/200/100/300/100/100/100.
#[derive(Debug, Clone, Copy)]
pub struct TrialCounts {
    pub pairwise_meet: u64,
    pub disjoint_sum_meet: u64,
    pub forced_sum: u64,
    pub chain_transforms: u64,
    pub vandermonde: u64,
    pub shift_identities: u64,
    pub kcf_subspaces: u64,
    pub kronecker_invariance: u64,
    pub spectrum_laws: u64,
}

impl TrialCounts {
    pub fn for_trials(trials: u64) -> Self {
        let part = |num: u64, den: u64| (trials * num / den).max(1);
        TrialCounts {
            pairwise_meet: trials.max(1),
            disjoint_sum_meet: part(2, 5),
            forced_sum: part(2, 5),
            chain_transforms: part(2, 5),
            vandermonde: part(1, 5),
            shift_identities: part(3, 5),
            kcf_subspaces: part(1, 5),
            kronecker_invariance: part(1, 5),
            spectrum_laws: part(1, 5),
        }
    }

    pub fn for_suite(&self, suite: Suite) -> u64 {
        match suite {
            Suite::PairwiseMeet => self.pairwise_meet,
            Suite::DisjointSumMeet => self.disjoint_sum_meet,
            Suite::ForcedSum => self.forced_sum,
            Suite::ChainTransforms => self.chain_transforms,
            Suite::Vandermonde => self.vandermonde,
            Suite::ShiftIdentities => self.shift_identities,
            Suite::KcfSubspaces => self.kcf_subspaces,
            Suite::KroneckerInvariance => self.kronecker_invariance,
            Suite::SpectrumLaws => self.spectrum_laws,
        }
    }
}

/// Run every suite in order with the configured trial counts.
pub fn run_all(cfg: &HarnessConfig) -> Vec<SuiteReport> {
    let counts = TrialCounts::for_trials(cfg.trials);
    vec![
        suite_pairwise_meet(cfg, counts.pairwise_meet),
        suite_disjoint_sum_meet(cfg, counts.disjoint_sum_meet),
        suite_forced_sum(cfg, counts.forced_sum),
        suite_chain_transforms(cfg, counts.chain_transforms),
        suite_vandermonde(cfg, counts.vandermonde),
        suite_shift_identities(cfg, counts.shift_identities),
        suite_kcf_subspaces(cfg, counts.kcf_subspaces),
        suite_kronecker_invariance(cfg, counts.kronecker_invariance),
        suite_spectrum_laws(cfg, &counts),
    ]
}

fn is_subspace_of(small: &Subspace, big: &Subspace) -> bool {
    small.basis_vectors().all(|v| big.contains(v).expect("same ambient space"))
}

/// Pairwise intersections of root spaces: `R_lambda meet R_mu = R_c` for
/// three sampled pairs of distinct points, plus the containment
/// `R_c <= R_lambda`, one-extra-step stabilization of each root space,
/// `R_c(A - mu) = R_c(A)`, and `R_lambda meet R_inf = R_c`.
/// Root spaces of the same relation are queried repeatedly per trial; memoize
/// them by point so each is computed once.
fn cached_root_space(
    a: &LinearRelation,
    cache: &mut Vec<(ExtendedScalar, Subspace)>,
    point: &ExtendedScalar,
) -> Subspace {
    if let Some((_, space)) = cache.iter().find(|(p, _)| p == point) {
        return space.clone();
    }
    let space = root_space(a, point);
    cache.push((point.clone(), space.clone()));
    space
}

pub fn suite_pairwise_meet(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::PairwiseMeet, trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::PairwiseMeet.id(), 0, trial);
        let a = sample::relation(&mut rng, pool, cfg.max_dim);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            let at_zero = root_space(&a, &ExtendedScalar::zero());
            let rinf = root_space(&a, &ExtendedScalar::Infinity);
            let rc = at_zero.intersect(&rinf).expect("same ambient space");
            let mut cache = vec![
                (ExtendedScalar::zero(), at_zero),
                (ExtendedScalar::Infinity, rinf.clone()),
            ];
            let candidates = sample::point_pool(&mut rng, pool, &a);
            for _ in 0..3 {
                let pair = sample::distinct_points(&mut rng, candidates.clone(), 2);
                let spaces: Vec<Subspace> =
                    pair.iter().map(|p| cached_root_space(&a, &mut cache, p)).collect();
                let meet = spaces[0].intersect(&spaces[1]).expect("same ambient space");
                rec.check(
                    trial,
                    meet == rc,
                    || format!("R_{} meet R_{} = R_c", pair[0], pair[1]),
                    &doc,
                );
                for (point, space) in pair.iter().zip(&spaces) {
                    rec.check(
                        trial,
                        is_subspace_of(&rc, space),
                        || format!("R_c lies inside R_{point}"),
                        &doc,
                    );
                    let once_more = match point {
                        ExtendedScalar::Finite(l) => a.shift(l).preimage_of(space),
                        ExtendedScalar::Infinity => a.image_of(space),
                    }
                    .expect("same ambient space");
                    rec.check(
                        trial,
                        &once_more == space,
                        || format!("R_{point} is stable under one more iteration step"),
                        &doc,
                    );
                }
            }
            let mu = sample::pool_scalar(&mut rng, pool);
            rec.check(
                trial,
                singular_chain_space(&a.shift(&mu)) == rc,
                || format!("R_c(A - ({mu})) = R_c(A)"),
                &doc,
            );
            let lambda = sample::pool_scalar(&mut rng, pool);
            let rl = cached_root_space(&a, &mut cache, &ExtendedScalar::Finite(lambda.clone()));
            rec.check(
                trial,
                rl.intersect(&rinf).expect("same ambient space") == rc,
                || format!("R_{lambda} meet R_inf = R_c"),
                &doc,
            );
        });
    }
    rec.finish()
}

/// Disjoint sums of root spaces: for disjoint point sets of sizes up to 3,
/// `(sum of R_lambda) meet (sum of R_mu) = R_c`.
pub fn suite_disjoint_sum_meet(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::DisjointSumMeet, trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::DisjointSumMeet.id(), 0, trial);
        let a = sample::relation(&mut rng, pool, cfg.max_dim);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            let rc = singular_chain_space(&a);
            let candidates = sample::point_pool(&mut rng, pool, &a);
            let left = rng.gen_range(1..=3usize);
            let right = rng.gen_range(1..=3usize);
            let points = sample::distinct_points(&mut rng, candidates, left + right);
            let span_sum = |set: &[ExtendedScalar]| {
                set.iter().fold(Subspace::zero(a.space_dim()), |acc, p| {
                    acc.sum(&root_space(&a, p)).expect("same ambient space")
                })
            };
            let lhs = span_sum(&points[..left]);
            let rhs = span_sum(&points[left..]);
            rec.check(
                trial,
                lhs.intersect(&rhs).expect("same ambient space") == rc,
                || {
                    let names: Vec<String> = points.iter().map(|p| p.to_string()).collect();
                    format!(
                        "sum R over {{{}}} meet sum R over {{{}}} = R_c",
                        names[..left].join(", "),
                        names[left..].join(", ")
                    )
                },
                &doc,
            );
        });
    }
    rec.finish()
}

/// Forced sums: sample `x_r in R_{lambda_r}` with the sum constrained into
/// `R_mu` (or to vanish, on odd trials); every `x_r` must land in `R_c`.
pub fn suite_forced_sum(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::ForcedSum, trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::ForcedSum.id(), 0, trial);
        let a = sample::relation(&mut rng, pool, cfg.max_dim);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            let m = a.space_dim();
            let rc = singular_chain_space(&a);
            let candidates = sample::point_pool(&mut rng, pool, &a);
            let count = rng.gen_range(1..=3usize);
            let points = sample::distinct_points(&mut rng, candidates, count + 1);
            let (lambdas, mu) = (&points[..count], &points[count]);
            let zero_sum = trial % 2 == 1;

            let bases: Vec<Vec<Vec<Q>>> = lambdas
                .iter()
                .map(|p| root_space(&a, p).basis_vectors().map(<[Q]>::to_vec).collect())
                .collect();
            let mut columns: Vec<Vec<Q>> = bases.concat();
            if !zero_sum {
                for b in root_space(&a, mu).basis_vectors() {
                    columns.push(b.iter().map(|q| -q).collect());
                }
            }
            if columns.is_empty() {
                // Every sampled root space is trivial; the only instance is
                // x_r = 0, which lies in R_c vacuously.
                rec.check(trial, true, || unreachable!(), &doc);
                return;
            }
            let width = columns.len();
            let stacked =
                Matrix::from_rows(m, columns).expect("root-space vectors have length m").transpose();
            let mut coeffs = vec![Q::zero(); width];
            for null_vector in stacked.null_space_basis() {
                let c = sample::pool_scalar(&mut rng, pool);
                for (acc, entry) in coeffs.iter_mut().zip(&null_vector) {
                    *acc = &*acc + &(&c * entry);
                }
            }

            let mut offset = 0;
            let mut total = vec![Q::zero(); m];
            for (r, basis) in bases.iter().enumerate() {
                let mut x = vec![Q::zero(); m];
                for b in basis {
                    let c = &coeffs[offset];
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi = &*xi + &(c * bi);
                    }
                    offset += 1;
                }
                for (ti, xi) in total.iter_mut().zip(&x) {
                    *ti = &*ti + xi;
                }
                rec.check(
                    trial,
                    rc.contains(&x).expect("same ambient space"),
                    || format!("forced x_{r} (from R_{}) lies in R_c", lambdas[r]),
                    &doc,
                );
            }
            if zero_sum {
                debug_assert!(total.iter().all(Q::is_zero), "null-space sample must sum to zero");
            } else {
                debug_assert!(
                    root_space(&a, mu).contains(&total).expect("same ambient space"),
                    "null-space sample must sum into R_mu"
                );
            }
        });
    }
    rec.finish()
}

/// Chain transforms: shifting a forward chain re-roots it in `A` with the
/// same partial span, and a kernel chain extends to arbitrary length.
pub fn suite_chain_transforms(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::ChainTransforms, trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::ChainTransforms.id(), 0, trial);
        let (a, lambda, xs) = sample::forward_chain(&mut rng, pool, cfg.max_dim);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            let m = a.space_dim();
            let n = xs.len();
            let zs = shift_chain_transform(&lambda, &xs).expect("sampled chains have length >= 2");
            let zero = vec![Q::zero(); m];
            let holds = |x: &[Q], y: &[Q]| a.contains_pair(x, y).expect("lengths match");
            let mut member_ok = holds(&zero, &zs[0]);
            for w in zs.windows(2) {
                member_ok &= holds(&w[0], &w[1]);
            }
            member_ok &= holds(&zs[n - 2], &xs[n - 1]);
            rec.check(
                trial,
                member_ok,
                || format!("shifted chain of length {n} re-roots in A (lambda = {lambda})"),
                &doc,
            );
            let old_span = Subspace::span(m, xs[..n - 1].to_vec()).expect("vectors have length m");
            let new_span = Subspace::span(m, zs).expect("vectors have length m");
            rec.check(
                trial,
                old_span == new_span,
                || "shifted chain spans the same space as x_1..x_{n-1}".to_string(),
                &doc,
            );
        });

        let mut rng = trial_rng(cfg.seed, Suite::ChainTransforms.id(), 1, trial);
        let (a, lambda, xs) = sample::kernel_chain(&mut rng, pool, cfg.max_dim);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            let s = 2 * a.space_dim();
            let descending: Vec<Vec<Q>> = xs.iter().rev().cloned().collect();
            let zs = jordan_extend_transform(&lambda, &descending, s)
                .expect("sampled chains are nonempty");
            let ok = zs
                .windows(2)
                .all(|w| a.contains_pair(&w[0], &w[1]).expect("lengths match"));
            rec.check(
                trial,
                ok,
                || {
                    format!(
                        "extended chain of length {} stays in A (lambda = {lambda}, s = {s})",
                        xs.len()
                    )
                },
                &doc,
            );
        });
    }
    rec.finish()
}

/// Confluent Vandermonde matrices on distinct nodes are invertible with the
/// node-difference product as determinant (up to sign).
pub fn suite_vandermonde(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::Vandermonde, trials);
    let no_doc = || None;
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::Vandermonde.id(), 0, trial);
        let blocks = sample::vandermonde_blocks(&mut rng, pool);
        guarded(&mut rec, trial, &no_doc, |rec| {
            let size: usize = blocks.iter().map(|(_, k)| k + 1).sum();
            let w = confluent_vandermonde(size - 1, &blocks);
            let det = w.det();
            let mut expected = Rational::one();
            for (i, (li, ki)) in blocks.iter().enumerate() {
                for (lj, kj) in blocks.iter().skip(i + 1) {
                    let diff_norm = (li - lj).norm_sqr();
                    for _ in 0..(ki + 1) * (kj + 1) {
                        expected *= &diff_norm;
                    }
                }
            }
            let describe_blocks = || {
                let parts: Vec<String> =
                    blocks.iter().map(|(l, k)| format!("({l}, {k})")).collect();
                parts.join(", ")
            };
            rec.check(
                trial,
                !det.is_zero(),
                || format!("W invertible for blocks {}", describe_blocks()),
                &no_doc,
            );
            rec.check(
                trial,
                det.norm_sqr() == expected,
                || format!("|det W| matches the node-difference product for {}", describe_blocks()),
                &no_doc,
            );
        });
    }
    rec.finish()
}

/// Operator sum `{(x, y + z) : (x, y) in a, (x, z) in b}`. Needed only to
/// state the resolvent identity; deliberately not part of the public
/// operator algebra. Built by lifting both graphs to `(x, y, z)` triples
/// and projecting through the addition map.
fn operator_sum(a: &LinearRelation, b: &LinearRelation) -> LinearRelation {
    let m = a.space_dim();
    assert_eq!(m, b.space_dim());
    let unit = |rb: usize, cb: usize, r: usize, c: usize| {
        if r / m == rb && c / m == cb && r % m == c % m {
            Q::from_int(1)
        } else {
            Q::zero()
        }
    };
    let a_lift = a.graph().product(&Subspace::full(m));
    let swap = Matrix::from_fn(3 * m, 3 * m, |r, c| {
        &(&unit(0, 0, r, c) + &unit(1, 2, r, c)) + &unit(2, 1, r, c)
    });
    let b_lift = swap.image(&b.graph().product(&Subspace::full(m))).expect("shape matches");
    let add = Matrix::from_fn(2 * m, 3 * m, |r, c| {
        &(&unit(0, 0, r, c) + &unit(1, 1, r, c)) + &unit(1, 2, r, c)
    });
    let graph = add.image(&a_lift.intersect(&b_lift).expect("same ambient")).expect("shape");
    LinearRelation::from_graph(m, graph).expect("ambient is 2m")
}

/// Shift, scaling, and inversion identities for root spaces, and the
/// resolvent identity as an exact graph equality.
pub fn suite_shift_identities(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::ShiftIdentities, trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::ShiftIdentities.id(), 0, trial);
        let a = sample::relation(&mut rng, pool, cfg.max_dim);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            let candidates = sample::point_pool(&mut rng, pool, &a);
            let finite: Vec<Q> = candidates
                .iter()
                .filter_map(|p| match p {
                    ExtendedScalar::Finite(q) => Some(q.clone()),
                    ExtendedScalar::Infinity => None,
                })
                .collect();
            let lambda = finite[rng.gen_range(0..finite.len())].clone();
            let mu = sample::pool_scalar(&mut rng, pool);
            let nonzero = {
                let c: Vec<&Q> = finite.iter().filter(|q| !q.is_zero()).collect();
                if c.is_empty() {
                    sample::nonzero_scalar(&mut rng, pool)
                } else {
                    c[rng.gen_range(0..c.len())].clone()
                }
            };

            let at = |q: &Q| ExtendedScalar::Finite(q.clone());
            let rinf = root_space(&a, &ExtendedScalar::Infinity);
            let inverse = a.inverse();

            rec.check(
                trial,
                root_space(&a, &at(&lambda)) == root_space(&a.shift(&mu), &at(&(&lambda - &mu))),
                || format!("R_{lambda}(A) = R_{}(A - ({mu}))", &lambda - &mu),
                &doc,
            );
            rec.check(
                trial,
                root_space(&a.shift(&mu), &ExtendedScalar::Infinity) == rinf,
                || format!("R_inf(A - ({mu})) = R_inf(A)"),
                &doc,
            );
            rec.check(
                trial,
                root_space(&a.scale(&nonzero), &ExtendedScalar::Infinity) == rinf,
                || format!("R_inf(({nonzero})A) = R_inf(A)"),
                &doc,
            );
            let reciprocal = nonzero.inv().expect("nonzero scalar");
            rec.check(
                trial,
                root_space(&inverse, &at(&reciprocal)) == root_space(&a, &at(&nonzero)),
                || format!("R_{nonzero}(A) = R_{reciprocal}(A^-1)"),
                &doc,
            );
            rec.check(
                trial,
                root_space(&a, &ExtendedScalar::zero())
                    == root_space(&inverse, &ExtendedScalar::Infinity),
                || "R_0(A) = R_inf(A^-1)".to_string(),
                &doc,
            );
            rec.check(
                trial,
                rinf == root_space(&inverse, &ExtendedScalar::zero()),
                || "R_inf(A) = R_0(A^-1)".to_string(),
                &doc,
            );

            // (A - c)^{-1} = -1/c - (1/c^2)(A^{-1} - 1/c)^{-1}, with the
            // right side read as an operator sum with the scalar graph.
            let c = &nonzero;
            let inv_c = c.inv().expect("nonzero scalar");
            let lhs = a.shift(c).inverse();
            let core = inverse.shift(&inv_c).inverse();
            let coeff = -&(&inv_c * &inv_c);
            let scalar_graph =
                LinearRelation::from_matrix(&Matrix::identity(a.space_dim()).scale(&-&inv_c));
            let rhs = operator_sum(&core.scale(&coeff), &scalar_graph);
            rec.check(
                trial,
                lhs == rhs,
                || format!("resolvent identity at c = {c} holds as graph equality"),
                &doc,
            );
        });
    }
    rec.finish()
}

/// Structural subspace formulas on generated canonical-form pencils, plus
/// recovery of the generating block data.
pub fn suite_kcf_subspaces(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::KcfSubspaces, trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::KcfSubspaces.id(), 0, trial);
        let spec = sample::kcf_spec(&mut rng, pool, 8);
        let (p, ground) = kcf_generate(&spec).expect("sampled transforms are invertible");
        let doc = || Some(InputDocument::from_pencil(&p));
        guarded(&mut rec, trial, &doc, |rec| {
            let verification = verify_kcf_subspaces(&p, &spec);
            for clause in verification.checks() {
                rec.check(
                    trial,
                    clause.holds,
                    || format!("{}: {}", clause.clause, clause.detail),
                    &doc,
                );
            }
            let extracted = kronecker_structure(&p);
            let matches = extracted.n0() == ground.n0()
                && extracted.alpha() == ground.alpha()
                && extracted.epsilon() == ground.epsilon()
                && extracted.eta() == ground.eta()
                && extracted.regular_charpoly() == ground.regular_charpoly();
            rec.check(
                trial,
                matches,
                || "extracted structure equals the generating spec".to_string(),
                &doc,
            );
        });
    }
    rec.finish()
}

/// Kronecker structure is an equivalence invariant, and its indices predict
/// the singular chain and infinity root space dimensions of the relation.
pub fn suite_kronecker_invariance(cfg: &HarnessConfig, trials: u64) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::KroneckerInvariance, trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, Suite::KroneckerInvariance.id(), 0, trial);
        let (base, transformed) = sample::equivalence_pair(&mut rng, pool);
        let doc = || Some(InputDocument::from_pencil(&base));
        guarded(&mut rec, trial, &doc, |rec| {
            let s1 = kronecker_structure(&base);
            let s2 = kronecker_structure(&transformed);
            let invariant = s1.n0() == s2.n0()
                && s1.alpha() == s2.alpha()
                && s1.epsilon() == s2.epsilon()
                && s1.eta() == s2.eta()
                && s1.regular_charpoly() == s2.regular_charpoly();
            rec.check(
                trial,
                invariant,
                || "structure is invariant under two-sided equivalence".to_string(),
                &doc,
            );
            for (tag, pencil, s) in [("base", &base, &s1), ("transformed", &transformed, &s2)] {
                let a = pencil_to_relation(pencil);
                let doc_here = || Some(InputDocument::from_pencil(pencil));
                rec.check(
                    trial,
                    singular_chain_space(&a).dim() == s.singular_chain_dim(),
                    || format!("dim R_c matches the column-index count on the {tag} pencil"),
                    &doc_here,
                );
                rec.check(
                    trial,
                    root_space(&a, &ExtendedScalar::Infinity).dim() == s.infinity_root_dim(),
                    || format!("dim R_inf matches the nilpotent+column count on the {tag} pencil"),
                    &doc_here,
                );
            }
        });
    }
    rec.finish()
}

/// The relations examined by a given suite trial, regenerated from the
/// trial's own RNG stream. Used by the spectrum suite to sweep every
/// instance of the run, and by failure triage to rebuild an instance.
pub fn regenerate_relations(cfg: &HarnessConfig, suite: Suite, trial: u64) -> Vec<LinearRelation> {
    let pool = &cfg.scalar_pool;
    match suite {
        Suite::PairwiseMeet | Suite::DisjointSumMeet | Suite::ForcedSum | Suite::ShiftIdentities => {
            let mut rng = trial_rng(cfg.seed, suite.id(), 0, trial);
            vec![sample::relation(&mut rng, pool, cfg.max_dim)]
        }
        Suite::ChainTransforms => {
            let mut forward = trial_rng(cfg.seed, suite.id(), 0, trial);
            let mut kernel = trial_rng(cfg.seed, suite.id(), 1, trial);
            vec![
                sample::forward_chain(&mut forward, pool, cfg.max_dim).0,
                sample::kernel_chain(&mut kernel, pool, cfg.max_dim).0,
            ]
        }
        Suite::Vandermonde => {
            // The instance is the generated matrix; its operator graph is
            // the relation it denotes.
            let mut rng = trial_rng(cfg.seed, suite.id(), 0, trial);
            let blocks = sample::vandermonde_blocks(&mut rng, pool);
            let size: usize = blocks.iter().map(|(_, k)| k + 1).sum();
            vec![LinearRelation::from_matrix(&confluent_vandermonde(size - 1, &blocks))]
        }
        Suite::SpectrumLaws => Vec::new(),
        Suite::KcfSubspaces => {
            let mut rng = trial_rng(cfg.seed, suite.id(), 0, trial);
            let spec = sample::kcf_spec(&mut rng, pool, 8);
            let (p, _) = kcf_generate(&spec).expect("sampled transforms are invertible");
            vec![pencil_to_relation(&p)]
        }
        Suite::KroneckerInvariance => {
            let mut rng = trial_rng(cfg.seed, suite.id(), 0, trial);
            let (base, transformed) = sample::equivalence_pair(&mut rng, pool);
            vec![pencil_to_relation(&base), pencil_to_relation(&transformed)]
        }
    }
}

/// Spectrum laws: the proper point spectrum stays within `dim H` on every
/// instance of the other suites; having `m + 1` distinct finite eigenvalues
/// plus infinity is equivalent to a nontrivial singular chain space; and
/// vectors picked outside `R_c` from distinct root spaces are independent.
pub fn suite_spectrum_laws(cfg: &HarnessConfig, counts: &TrialCounts) -> SuiteReport {
    let pool = &cfg.scalar_pool;
    let mut rec = Recorder::new(Suite::SpectrumLaws, counts.spectrum_laws);

    for suite in ALL_SUITES {
        if matches!(suite, Suite::SpectrumLaws) {
            continue;
        }
        for trial in 0..counts.for_suite(suite) {
            for a in regenerate_relations(cfg, suite, trial) {
                let doc = || Some(InputDocument::from_relation(&a));
                guarded(&mut rec, trial, &doc, |rec| {
                    let report = proper_point_spectrum(&a);
                    rec.check(
                        trial,
                        report.proper_eigenvalues.len() <= a.space_dim(),
                        || format!("at most dim H proper eigenvalues on a {suite} instance"),
                        &doc,
                    );
                });
            }
        }
    }

    for trial in 0..counts.spectrum_laws {
        let mut rng = trial_rng(cfg.seed, Suite::SpectrumLaws.id(), 1, trial);
        let a = sample::relation(&mut rng, pool, cfg.max_dim);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            let m = a.space_dim();
            let finite = sample::distinct_scalars(&mut rng, pool, m + 1);
            let all_eigenvalues = finite
                .iter()
                .all(|l| is_eigenvalue(&a, &ExtendedScalar::Finite(l.clone())))
                && is_eigenvalue(&a, &ExtendedScalar::Infinity);
            let chains = !singular_chain_space(&a).is_zero();
            rec.check(
                trial,
                all_eigenvalues == chains,
                || {
                    format!(
                        "{} distinct finite eigenvalues plus infinity iff R_c is nontrivial",
                        m + 1
                    )
                },
                &doc,
            );
        });
    }

    for trial in 0..counts.spectrum_laws {
        let mut rng = trial_rng(cfg.seed, Suite::SpectrumLaws.id(), 2, trial);
        let (a, selection) = sample::certificate_selection(&mut rng, pool);
        let doc = || Some(InputDocument::from_relation(&a));
        guarded(&mut rec, trial, &doc, |rec| {
            match independence_certificate(&a, &selection) {
                Ok(evidence) => rec.check(
                    trial,
                    evidence.rank == evidence.count && evidence.count == selection.len(),
                    || format!("{} root-space vectors are independent", selection.len()),
                    &doc,
                ),
                Err(e) => rec.check(
                    trial,
                    false,
                    || format!("certificate rejected a valid selection: {e}"),
                    &doc,
                ),
            }
        });
    }

    rec.finish()
}
