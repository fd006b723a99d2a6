//! Exact univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored in ascending order; the leading coefficient is
//! never zero (the zero polynomial has an empty coefficient list).

use num::{One, Zero};

use crate::exact::GaussianRational;
use crate::subspace::Matrix;

type Q = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Q::one()] }
    }

    /// The monic linear polynomial `s - root`.
    pub fn linear(root: &Q) -> Self {
        Poly { coeffs: vec![-root, Q::one()] }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        Poly::new(out)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Q::from_int(i as i64))
            .collect();
        Poly::new(coeffs)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().expect("nonzero").inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * b);
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Synthetic division by `s - root`: the quotient and the remainder
    /// (which equals the value at `root`).
    pub fn deflate(&self, root: &Q) -> (Poly, Q) {
        if self.is_zero() {
            return (Poly::zero(), Q::zero());
        }
        let mut quot = vec![Q::zero(); self.coeffs.len() - 1];
        let mut carry = Q::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let value = c + &(&carry * root);
            if i == 0 {
                return (Poly::new(quot), value);
            }
            quot[i - 1] = value.clone();
            carry = value;
        }
        unreachable!("loop returns at index zero");
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of `s - root` over all roots, with multiplicity divided
    /// out: `self / gcd(self, self')`. Shares the roots of `self`, each
    /// exactly once.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// The unique polynomial of degree `< points.len()` through the given
    /// `(node, value)` pairs; nodes must be pairwise distinct.
    pub fn interpolate(points: &[(Q, Q)]) -> Poly {
        let mut full = Poly::one();
        for (x, _) in points {
            full = full.mul(&Poly::linear(x));
        }
        let mut out = Poly::zero();
        for (x, y) in points {
            if y.is_zero() {
                continue;
            }
            let (base, rem) = full.deflate(x);
            debug_assert!(rem.is_zero());
            let denom = base.eval(x);
            let weight = y.checked_div(&denom).expect("interpolation nodes are distinct");
            out = out.add(&base.scale(&weight));
        }
        out
    }
}

/// `det(s E - F)` for square `E`, `F`, computed exactly by evaluating the
/// determinant at `n + 1` integer nodes and interpolating.
pub(crate) fn pencil_charpoly(e: &Matrix, f: &Matrix) -> Poly {
    assert_eq!(e.rows(), e.cols(), "characteristic polynomial needs a square pencil");
    assert_eq!(e.rows(), f.rows());
    assert_eq!(e.cols(), f.cols());
    let n = e.rows();
    let points: Vec<(Q, Q)> = (0..=n as i64)
        .map(|k| {
            let s = Q::from_int(k);
            let value = e.scale(&s).sub(f).det();
            (s, value)
        })
        .collect();
    Poly::interpolate(&points)
}
