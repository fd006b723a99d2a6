//! Exact roots of polynomials over the Gaussian rationals.
//!
//! Any root in `Q(i)` of a monic polynomial with Gaussian-integer
//! coefficients is itself a Gaussian integer, so root finding reduces to an
//! integral problem: make the squarefree part monic and integral, find its
//! roots in the finite field `F_{p^2} = Z[i]/p` for an inert prime `p`
//! chosen so the reduction stays squarefree, lift each modular root by
//! Newton iteration until the modulus exceeds twice the root bound, and
//! verify the balanced reconstruction exactly. Spurious modular roots are
//! eliminated by the verification step; genuine roots are never missed
//! because reduction mod `p` is injective on them (a collision would make
//! the reduction non-squarefree). Degrees one and two short-circuit
//! through the quadratic formula.

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::exact::{GaussianRational, Rational};
use crate::poly::Poly;

type Q = GaussianRational;
type Zi = (BigInt, BigInt);

/// All roots of `p` in `Q(i)` with multiplicities, sorted, together with
/// the remaining monic factor that has no roots in `Q(i)`.
pub(crate) fn gaussian_rational_roots(p: &Poly) -> (Vec<(Q, usize)>, Poly) {
    assert!(!p.is_zero(), "the zero polynomial has no root structure");
    let monic = p.monic();
    let mut distinct = match monic.degree() {
        None | Some(0) => Vec::new(),
        Some(_) => roots_of_squarefree(&monic.squarefree_part()),
    };
    distinct.sort();
    let mut residual = monic;
    let mut with_multiplicity = Vec::with_capacity(distinct.len());
    for root in distinct {
        let mut multiplicity = 0;
        loop {
            let (quotient, remainder) = residual.deflate(&root);
            if !remainder.is_zero() {
                break;
            }
            residual = quotient;
            multiplicity += 1;
        }
        assert!(multiplicity > 0, "computed root must divide the polynomial");
        with_multiplicity.push((root, multiplicity));
    }
    (with_multiplicity, residual)
}

fn roots_of_squarefree(s: &Poly) -> Vec<Q> {
    match s.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![-&s.coeffs()[0]],
        Some(2) => {
            // s^2 + bs + c with roots (-b ± sqrt(b^2 - 4c)) / 2.
            let b = &s.coeffs()[1];
            let c = &s.coeffs()[0];
            let four = Q::from_int(4);
            let disc = &(b * b) - &(&four * c);
            match disc.sqrt() {
                None => Vec::new(),
                Some(r) => {
                    let half = Q::from_parts(1, 2, 0, 1);
                    vec![&(&-b + &r) * &half, &(&-b - &r) * &half]
                }
            }
        }
        Some(_) => {
            let (zpoly, scale) = scale_to_gaussian_integers(s);
            gaussian_integer_roots(&zpoly)
                .into_iter()
                .map(|(re, im)| {
                    Q::new(Rational::new(re, scale.clone()), Rational::new(im, scale.clone()))
                })
                .collect()
        }
    }
}

/// Substitute `s = t / scale` into the monic polynomial and clear
/// denominators: the returned coefficients are Gaussian integers, ascending
/// and monic, and the roots are the original roots times `scale`.
fn scale_to_gaussian_integers(s: &Poly) -> (Vec<Zi>, BigInt) {
    let n = s.degree().expect("nonzero polynomial");
    let mut scale = BigInt::one();
    for c in s.coeffs() {
        scale = scale.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let factor = Rational::from_integer(scale.pow((n - k) as u32));
            let re = &c.re * &factor;
            let im = &c.im * &factor;
            debug_assert!(re.is_integer() && im.is_integer());
            (re.to_integer(), im.to_integer())
        })
        .collect();
    (coeffs, scale)
}

/// Roots in `Z[i]` of a monic squarefree Gaussian-integer polynomial.
fn gaussian_integer_roots(zpoly: &[Zi]) -> Vec<Zi> {
    let mut work = zpoly.to_vec();
    let mut found = Vec::new();
    if work[0].0.is_zero() && work[0].1.is_zero() {
        found.push((BigInt::zero(), BigInt::zero()));
        work.remove(0);
    }
    if work.len() <= 1 {
        return found;
    }

    let bound = root_bound(&work);
    let p = choose_inert_prime(&work);
    let field = Fq { p };
    let reduced: Vec<FqElt> = work.iter().map(|c| field.reduce_pair(c)).collect();
    for modular_root in fq_roots(&field, &reduced) {
        if let Some(candidate) = hensel_lift(&work, &field, modular_root, &bound) {
            found.push(candidate);
        }
    }
    found
}

/// `1 + max |c_k|` bounds the modulus of every root of a monic polynomial;
/// returned as an integer upper bound.
fn root_bound(zpoly: &[Zi]) -> BigInt {
    let mut max_norm = BigInt::zero();
    for (re, im) in &zpoly[..zpoly.len() - 1] {
        let norm = re * re + im * im;
        if norm > max_norm {
            max_norm = norm;
        }
    }
    max_norm.sqrt() + 2
}

fn is_prime_u64(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Smallest prime `p ≡ 3 (mod 4)` past a fixed base for which the
/// polynomial stays squarefree mod `p`. Only finitely many primes divide
/// the discriminant, so the search terminates.
fn choose_inert_prime(zpoly: &[Zi]) -> u64 {
    let mut p = 1_000_003u64;
    loop {
        if p % 4 == 3 && is_prime_u64(p) {
            let field = Fq { p };
            let reduced: Vec<FqElt> = zpoly.iter().map(|c| field.reduce_pair(c)).collect();
            let derivative = fq_derivative(&field, &reduced);
            if fq_gcd(&field, &reduced, &derivative).len() == 1 {
                return p;
            }
        }
        p += 2;
    }
}

/// Lift a simple root mod `p` to a candidate Gaussian integer and verify
/// it exactly; `None` when the modular root does not come from a true root.
fn hensel_lift(zpoly: &[Zi], field: &Fq, start: FqElt, bound: &BigInt) -> Option<Zi> {
    let derivative: Vec<Zi> = zpoly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, (re, im))| (re * BigInt::from(k), im * BigInt::from(k)))
        .collect();
    let p = BigInt::from(field.p);
    let target = bound * BigInt::from(2) + 1;
    let mut modulus = p.clone();
    let mut exponent = 1u32;
    let mut x: Zi = (BigInt::from(start.0), BigInt::from(start.1));
    while modulus < target {
        modulus = &modulus * &modulus;
        exponent *= 2;
        let value = zi_eval_mod(zpoly, &x, &modulus);
        let slope = zi_eval_mod(&derivative, &x, &modulus);
        let slope_inv = zi_inv_mod(&slope, &modulus, &p, exponent)?;
        let step = zi_mul(&value, &slope_inv);
        x = (
            (&x.0 - step.0).mod_floor(&modulus),
            (&x.1 - step.1).mod_floor(&modulus),
        );
    }
    let half = &modulus / 2;
    let balanced = |c: BigInt| if c > half { c - &modulus } else { c };
    let candidate = (balanced(x.0), balanced(x.1));
    let value = zi_eval_mod(zpoly, &candidate, &BigInt::zero());
    (value.0.is_zero() && value.1.is_zero()).then_some(candidate)
}

fn zi_mul(a: &Zi, b: &Zi) -> Zi {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// Horner evaluation; a zero modulus means exact evaluation.
fn zi_eval_mod(poly: &[Zi], x: &Zi, modulus: &BigInt) -> Zi {
    let mut acc = (BigInt::zero(), BigInt::zero());
    for c in poly.iter().rev() {
        let prod = zi_mul(&acc, x);
        acc = (prod.0 + &c.0, prod.1 + &c.1);
        if !modulus.is_zero() {
            acc = (acc.0.mod_floor(modulus), acc.1.mod_floor(modulus));
        }
    }
    acc
}

/// Inverse in `Z[i]/p^k` through the norm: `w^{-1} = conj(w)·N(w)^{-1}`,
/// with the integer inverse by Euler's theorem. `None` when the norm is
/// divisible by `p` (cannot happen for simple roots; defensive).
fn zi_inv_mod(w: &Zi, modulus: &BigInt, p: &BigInt, exponent: u32) -> Option<Zi> {
    let norm = (&w.0 * &w.0 + &w.1 * &w.1).mod_floor(modulus);
    if norm.is_multiple_of(p) {
        return None;
    }
    let phi = p.pow(exponent - 1) * (p - 1);
    let norm_inv = norm.modpow(&(phi - 1), modulus);
    Some((
        (&w.0 * &norm_inv).mod_floor(modulus),
        (-&w.1 * &norm_inv).mod_floor(modulus),
    ))
}

/// The field `F_{p^2} = F_p[i]` for a prime `p ≡ 3 (mod 4)` (so that
/// `t^2 + 1` is irreducible). Elements are pairs `(a, b)` for `a + bi`.
#[derive(Clone, Copy)]
struct Fq {
    p: u64,
}

type FqElt = (u64, u64);

impl Fq {
    fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        let digits = r.to_u64_digits().1;
        digits.first().copied().unwrap_or(0)
    }

    fn reduce_pair(&self, c: &Zi) -> FqElt {
        (self.reduce_int(&c.0), self.reduce_int(&c.1))
    }

    fn scalar_mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn scalar_pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.scalar_mul(acc, base);
            }
            base = self.scalar_mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn add(&self, a: FqElt, b: FqElt) -> FqElt {
        ((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }

    fn sub(&self, a: FqElt, b: FqElt) -> FqElt {
        ((a.0 + self.p - b.0) % self.p, (a.1 + self.p - b.1) % self.p)
    }

    fn mul(&self, a: FqElt, b: FqElt) -> FqElt {
        let re = (self.scalar_mul(a.0, b.0) + self.p - self.scalar_mul(a.1, b.1)) % self.p;
        let im = (self.scalar_mul(a.0, b.1) + self.scalar_mul(a.1, b.0)) % self.p;
        (re, im)
    }

    /// Nonzero elements have nonzero norm because `-1` is not a square
    /// mod `p ≡ 3 (mod 4)`.
    fn inv(&self, a: FqElt) -> FqElt {
        let norm = (self.scalar_mul(a.0, a.0) + self.scalar_mul(a.1, a.1)) % self.p;
        debug_assert!(norm != 0, "inverse of zero in F_q");
        let norm_inv = self.scalar_pow(norm, self.p - 2);
        (
            self.scalar_mul(a.0, norm_inv),
            self.scalar_mul((self.p - a.1) % self.p, norm_inv),
        )
    }

    fn is_zero_elt(&self, a: FqElt) -> bool {
        a.0 == 0 && a.1 == 0
    }
}

type FqPoly = Vec<FqElt>;

fn fq_trim(field: &Fq, mut f: FqPoly) -> FqPoly {
    while f.last().is_some_and(|&c| field.is_zero_elt(c)) {
        f.pop();
    }
    f
}

fn fq_derivative(field: &Fq, f: &[FqElt]) -> FqPoly {
    let d: FqPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| field.mul(((k as u64) % field.p, 0), c))
        .collect();
    fq_trim(field, d)
}

fn fq_monic(field: &Fq, f: &[FqElt]) -> FqPoly {
    match f.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = field.inv(lead);
            f.iter().map(|&c| field.mul(c, inv)).collect()
        }
    }
}

fn fq_rem(field: &Fq, a: &[FqElt], b: &[FqElt]) -> FqPoly {
    assert!(!b.is_empty(), "polynomial remainder by zero");
    let monic_b = fq_monic(field, b);
    let mut rem: FqPoly = a.to_vec();
    while rem.len() >= monic_b.len() {
        let lead = *rem.last().expect("nonempty");
        let shift = rem.len() - monic_b.len();
        for (i, &c) in monic_b.iter().enumerate() {
            let t = field.mul(lead, c);
            rem[shift + i] = field.sub(rem[shift + i], t);
        }
        rem = fq_trim(field, rem);
    }
    rem
}

fn fq_gcd(field: &Fq, a: &[FqElt], b: &[FqElt]) -> FqPoly {
    let mut x = fq_trim(field, a.to_vec());
    let mut y = fq_trim(field, b.to_vec());
    while !y.is_empty() {
        let r = fq_rem(field, &x, &y);
        x = y;
        y = r;
    }
    fq_monic(field, &x)
}

fn fq_mul(field: &Fq, a: &[FqElt], b: &[FqElt]) -> FqPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![(0u64, 0u64); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if field.is_zero_elt(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    fq_trim(field, out)
}

fn fq_powmod(field: &Fq, base: &[FqElt], mut exp: u64, modulus: &[FqElt]) -> FqPoly {
    let mut acc: FqPoly = vec![(1, 0)];
    let mut sq = fq_rem(field, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fq_rem(field, &fq_mul(field, &acc, &sq), modulus);
        }
        sq = fq_rem(field, &fq_mul(field, &sq, &sq), modulus);
        exp >>= 1;
    }
    acc
}

/// Quotient of an exact division by a monic divisor.
fn fq_divexact(field: &Fq, a: &[FqElt], monic_divisor: &[FqElt]) -> FqPoly {
    let dd = monic_divisor.len();
    debug_assert!(dd >= 1 && a.len() >= dd);
    let mut rem: FqPoly = a.to_vec();
    let mut quot = vec![(0u64, 0u64); rem.len() - dd + 1];
    for k in (0..quot.len()).rev() {
        let lead = rem[k + dd - 1];
        if !field.is_zero_elt(lead) {
            for (i, &c) in monic_divisor.iter().enumerate() {
                let t = field.mul(lead, c);
                rem[k + i] = field.sub(rem[k + i], t);
            }
            quot[k] = lead;
        }
    }
    debug_assert!(fq_trim(field, rem).is_empty(), "division was not exact");
    fq_trim(field, quot)
}

/// All roots of a squarefree monic polynomial in `F_{p^2}`: first reduce to
/// the product of the linear factors via `gcd(f, t^{p^2} - t)`, then split
/// that product with quadratic-character probes on deterministic shifts.
fn fq_roots(field: &Fq, f: &[FqElt]) -> Vec<FqElt> {
    let t = vec![(0u64, 0u64), (1, 0)];
    let frobenius = fq_powmod(field, &t, field.p * field.p, f);
    let mut linear_part = fq_gcd(field, f, &fq_trim(field, {
        let mut diff = frobenius;
        while diff.len() < 2 {
            diff.push((0, 0));
        }
        diff[1] = field.sub(diff[1], (1, 0));
        diff
    }));
    let mut roots = Vec::new();
    let mut queue = Vec::new();
    if linear_part.len() > 1 {
        linear_part = fq_monic(field, &linear_part);
        queue.push(linear_part);
    }
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut attempts = 0;
    while let Some(part) = queue.pop() {
        if part.len() == 2 {
            roots.push(field.sub((0, 0), part[0]));
            continue;
        }
        attempts += 1;
        assert!(attempts < 4096, "factor splitting failed to converge");
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = (state % field.p, (state >> 32) % field.p);
        // (t + a)^((p^2-1)/2) - 1 vanishes on about half the roots.
        let shifted = vec![a, (1, 0)];
        let probe = fq_powmod(field, &shifted, (field.p * field.p - 1) / 2, &part);
        let mut probe_minus_one = probe;
        if probe_minus_one.is_empty() {
            probe_minus_one.push((0, 0));
        }
        probe_minus_one[0] = field.sub(probe_minus_one[0], (1, 0));
        let g = fq_gcd(field, &part, &fq_trim(field, probe_minus_one));
        if g.len() <= 1 || g.len() >= part.len() {
            queue.push(part);
            continue;
        }
        let quotient = fq_divexact(field, &part, &g);
        queue.push(g);
        queue.push(quotient);
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn qi(re: i64, im: i64) -> Q {
        Q::from_parts(re, 1, im, 1)
    }

    fn product_of_linears(roots: &[Q]) -> Poly {
        let mut p = Poly::one();
        for r in roots {
            p = p.mul(&Poly::linear(r));
        }
        p
    }

    #[test]
    fn splits_rational_quadratic() {
        let p = product_of_linears(&[q(1), q(2)]);
        let (roots, residual) = gaussian_rational_roots(&p);
        assert_eq!(roots, vec![(q(1), 1), (q(2), 1)]);
        assert_eq!(residual, Poly::one());
    }

    #[test]
    fn finds_imaginary_pair() {
        let p = Poly::new(vec![q(1), q(0), q(1)]); // s^2 + 1
        let (roots, residual) = gaussian_rational_roots(&p);
        assert_eq!(roots, vec![(qi(0, -1), 1), (qi(0, 1), 1)]);
        assert_eq!(residual, Poly::one());
    }

    #[test]
    fn leaves_irrational_quadratic_alone() {
        let p = Poly::new(vec![q(-2), q(0), q(1)]); // s^2 - 2
        let (roots, residual) = gaussian_rational_roots(&p);
        assert!(roots.is_empty());
        assert_eq!(residual, p);
    }

    #[test]
    fn handles_multiplicity() {
        let i = qi(0, 1);
        let p = product_of_linears(&[i.clone(), i.clone(), i.clone()]);
        let (roots, residual) = gaussian_rational_roots(&p);
        assert_eq!(roots, vec![(i, 3)]);
        assert_eq!(residual, Poly::one());
    }

    #[test]
    fn quintic_with_mixed_roots_and_residual() {
        let complex_root = qi(1, 2);
        let rational_root = Q::from_parts(-3, 2, 0, 1);
        let mut p = product_of_linears(&[
            complex_root.clone(),
            complex_root.clone(),
            rational_root.clone(),
        ]);
        let irrational = Poly::new(vec![q(-2), q(0), q(1)]); // s^2 - 2
        p = p.mul(&irrational);
        let (roots, residual) = gaussian_rational_roots(&p);
        assert_eq!(roots, vec![(rational_root, 1), (complex_root, 2)]);
        assert_eq!(residual, irrational);
    }

    #[test]
    fn cubic_with_fractional_roots() {
        let roots_in = vec![
            Q::from_parts(22, 7, 0, 1),
            Q::from_parts(0, 1, 3, 5),
            qi(1, -1),
        ];
        let p = product_of_linears(&roots_in).scale(&qi(3, 1));
        let (roots, residual) = gaussian_rational_roots(&p);
        let mut expected: Vec<(Q, usize)> = roots_in.into_iter().map(|r| (r, 1)).collect();
        expected.sort();
        assert_eq!(roots, expected);
        assert_eq!(residual, Poly::one());
    }

    #[test]
    fn zero_roots_are_stripped() {
        // s^3 (s - 4) (s^2 + s + 1): the quadratic factor has no Q(i) roots.
        let p = Poly::new(vec![q(0), q(0), q(0), q(1)])
            .mul(&Poly::linear(&q(4)))
            .mul(&Poly::new(vec![q(1), q(1), q(1)]));
        let (roots, residual) = gaussian_rational_roots(&p);
        assert_eq!(roots, vec![(q(0), 3), (q(4), 1)]);
        assert_eq!(residual, Poly::new(vec![q(1), q(1), q(1)]));
    }
}
