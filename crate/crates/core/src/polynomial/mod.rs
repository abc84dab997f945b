//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Houses the operator symbol `H(ξ) = Σ_{|α|=2m} a_α ξ^α`, general
//! polynomials for test functions, differentiation, operator application
//! `(-1)^m Σ a_α D^α`, and exact integration over boxes. Coefficients are
//! exact rationals end to end; floating point enters only in the sphere
//! searches.

mod parse;

pub use parse::{parse_polynomial, parse_symbol};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::optimize::{max_on_circle, min_on_circle};

/// Exponent vector α; one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The order |α| = Σ α_i.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Graded-lexicographic order: by total degree first, then lexicographic.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact rational coefficients in `n` variables.
///
/// Zero coefficients are never stored; the term map is ordered
/// graded-lexicographically, which fixes the canonical printing order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<MultiIndex, BigRational>,
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(MultiIndex::zero(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, BigRational::one())
    }

    /// The variable `x_i` (zero-based `i`).
    pub fn variable(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index out of range");
        let mut exps = vec![0; n];
        exps[i] = 1;
        let mut p = Polynomial::zero(n);
        p.add_term(MultiIndex::new(exps), BigRational::one());
        p
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|a| a.order()).max().unwrap_or(0)
    }

    /// Add `c · x^α` to the polynomial, dropping the term if it cancels.
    pub fn add_term(&mut self, alpha: MultiIndex, c: BigRational) {
        assert_eq!(alpha.len(), self.n, "multi-index length must equal n");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut out = Polynomial::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// ∂^k/∂x_axis^k, exact.
    pub fn partial(&self, axis: usize, order: u32) -> Polynomial {
        assert!(axis < self.n);
        let mut out = Polynomial::zero(self.n);
        for (a, c) in &self.terms {
            let e = a.0[axis];
            if e < order {
                continue;
            }
            // falling factorial e(e-1)...(e-order+1)
            let mut factor = BigInt::one();
            for j in 0..order {
                factor *= BigInt::from(e - j);
            }
            let mut exps = a.0.clone();
            exps[axis] = e - order;
            out.add_term(
                MultiIndex::new(exps),
                c * BigRational::from_integer(factor),
            );
        }
        out
    }

    /// D^α = ∂^{α_1}_{x_1} … ∂^{α_n}_{x_n}, exact.
    pub fn differentiate(&self, alpha: &MultiIndex) -> Result<Polynomial> {
        if alpha.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: alpha.len(),
            });
        }
        let mut out = self.clone();
        for (axis, &k) in alpha.0.iter().enumerate() {
            if k > 0 {
                out = out.partial(axis, k);
            }
        }
        Ok(out)
    }

    /// Substitute `x_axis = value`, exact; the dimension is unchanged.
    pub fn substitute(&self, axis: usize, value: &BigRational) -> Polynomial {
        assert!(axis < self.n);
        let mut out = Polynomial::zero(self.n);
        for (a, c) in &self.terms {
            let e = a.0[axis];
            let mut factor = BigRational::one();
            for _ in 0..e {
                factor *= value;
            }
            let mut exps = a.0.clone();
            exps[axis] = 0;
            out.add_term(MultiIndex::new(exps), c * factor);
        }
        out
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut sum = 0.0;
        for (a, c) in &self.terms {
            let mut term = c.to_f64().expect("rational representable as f64");
            for (x, &e) in point.iter().zip(&a.0) {
                term *= x.powi(e as i32);
            }
            sum += term;
        }
        Ok(sum)
    }

    pub fn evaluate_exact(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut sum = BigRational::zero();
        for (a, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&a.0) {
                for _ in 0..e {
                    term *= x;
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Exact integral over the box ∏ [lo_i, hi_i], monomial-wise.
    pub fn integrate_box(&self, bounds: &[(BigRational, BigRational)]) -> Result<BigRational> {
        if bounds.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: bounds.len(),
            });
        }
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            if lo > hi {
                return Err(Error::InvalidBox(i));
            }
        }
        let mut sum = BigRational::zero();
        for (a, c) in &self.terms {
            let mut term = c.clone();
            for ((lo, hi), &e) in bounds.iter().zip(&a.0) {
                let k = e + 1;
                let mut hi_pow = BigRational::one();
                let mut lo_pow = BigRational::one();
                for _ in 0..k {
                    hi_pow *= hi;
                    lo_pow *= lo;
                }
                term *= (hi_pow - lo_pow) / BigRational::from_integer(BigInt::from(k));
            }
            sum += term;
        }
        Ok(sum)
    }
}

fn format_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical printer: graded-lex descending; `parse(print(p)) == p`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, c) in self.terms.iter().rev() {
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || alpha.order() == 0 {
                factors.push(format_coeff(&abs));
            }
            for (i, &e) in alpha.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// The symbol `H(ξ) = Σ_{|α|=2m} a_α ξ^α` of a homogeneous elliptic
/// operator of order 2m with real constant coefficients.
#[derive(Clone, Debug)]
pub struct SymbolPolynomial {
    poly: Polynomial,
    m: u32,
    // f64 mirror of the term map, for the hot evaluation paths
    fterms: Vec<(Vec<u32>, f64)>,
}

impl PartialEq for SymbolPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl SymbolPolynomial {
    /// Wrap a polynomial as a symbol, checking homogeneity of even degree.
    pub fn from_polynomial(poly: Polynomial) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut degrees = poly.terms.keys().map(|a| a.order());
        let d0 = degrees.next().unwrap();
        for d in degrees {
            if d != d0 {
                return Err(Error::NonHomogeneous(d0, d));
            }
        }
        if d0 == 0 || d0 % 2 != 0 {
            return Err(Error::OddDegree(d0));
        }
        let fterms = poly
            .terms
            .iter()
            .map(|(a, c)| (a.0.clone(), c.to_f64().expect("coefficient fits f64")))
            .collect();
        Ok(SymbolPolynomial {
            m: d0 / 2,
            poly,
            fterms,
        })
    }

    /// The half-order m (the operator has order 2m).
    pub fn half_order(&self) -> u32 {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.poly.n
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// H(ξ) in floating point.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.poly.n {
            return Err(Error::DimensionMismatch {
                expected: self.poly.n,
                got: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    #[inline]
    fn eval_unchecked(&self, point: &[f64]) -> f64 {
        let mut sum = 0.0;
        for (exps, c) in &self.fterms {
            let mut term = *c;
            for (x, &e) in point.iter().zip(exps) {
                term *= x.powi(e as i32);
            }
            sum += term;
        }
        sum
    }

    /// H(cos θ, sin θ) on the unit circle; n = 2 only.
    #[inline]
    pub fn on_circle(&self, theta: f64) -> f64 {
        debug_assert_eq!(self.poly.n, 2);
        let (s, c) = theta.sin_cos();
        self.eval_unchecked(&[c, s])
    }

    /// The differential operator applied to `u`: `(-1)^m Σ a_α D^α u`, exact.
    pub fn apply_operator(&self, u: &Polynomial) -> Result<Polynomial> {
        if u.n != self.poly.n {
            return Err(Error::DimensionMismatch {
                expected: self.poly.n,
                got: u.n,
            });
        }
        let mut out = Polynomial::zero(u.n);
        for (alpha, a) in &self.poly.terms {
            let d = u.differentiate(alpha)?;
            out = out.add(&d.scale(a));
        }
        if self.m % 2 == 1 {
            out = out.neg();
        }
        Ok(out)
    }

    /// Extremes of H on the unit sphere: `(λ, Λ)` with
    /// `λ|ξ|^{2m} ≤ H(ξ) ≤ Λ|ξ|^{2m}`.
    ///
    /// n = 2 is certified: dense angular grid plus golden-section refinement.
    /// n ≥ 3 falls back to seeded random sampling with local refinement and
    /// is not certified; callers needing a guarantee should stay planar.
    pub fn min_max_on_sphere(&self, _tol: f64) -> Result<(f64, f64)> {
        match self.poly.n {
            1 => {
                let v = self.eval_unchecked(&[1.0]);
                Ok((v, v))
            }
            2 => {
                let mut f = |t: f64| self.on_circle(t);
                let (_, hi) = max_on_circle(&mut f, 4096, 1e-12);
                let (_, lo) = min_on_circle(&mut f, 4096, 1e-12);
                Ok((lo, hi))
            }
            _ => Ok(self.min_max_sampled()),
        }
    }

    /// Heuristic extremes for n ≥ 3: quasi-random sphere sampling plus a
    /// shrinking pattern search around the best candidates.
    fn min_max_sampled(&self) -> (f64, f64) {
        use rand::{Rng, SeedableRng};
        let n = self.poly.n;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
        let mut best_lo = (f64::INFINITY, vec![0.0; n]);
        let mut best_hi = (f64::NEG_INFINITY, vec![0.0; n]);
        for _ in 0..100_000 {
            let mut x: Vec<f64> = (0..n)
                .map(|_| {
                    // Box-Muller normal deviate
                    let u1: f64 = rng.random::<f64>().max(1e-12);
                    let u2: f64 = rng.random();
                    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
                })
                .collect();
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-9 {
                continue;
            }
            x.iter_mut().for_each(|v| *v /= norm);
            let h = self.eval_unchecked(&x);
            if h < best_lo.0 {
                best_lo = (h, x.clone());
            }
            if h > best_hi.0 {
                best_hi = (h, x);
            }
        }
        let refine = |start: &[f64], sign: f64| -> f64 {
            let mut x = start.to_vec();
            let mut fx = sign * self.eval_unchecked(&x);
            let mut step = 0.1;
            while step > 1e-12 {
                let mut improved = false;
                for i in 0..n {
                    for dir in [step, -step] {
                        let mut y = x.clone();
                        y[i] += dir;
                        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                        y.iter_mut().for_each(|v| *v /= norm);
                        let fy = sign * self.eval_unchecked(&y);
                        if fy > fx {
                            x = y;
                            fx = fy;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    step *= 0.5;
                }
            }
            sign * fx
        };
        (refine(&best_lo.1, -1.0), refine(&best_hi.1, 1.0))
    }

    /// Ellipticity: λ ≥ tol with λ the sphere minimum of H.
    pub fn is_elliptic(&self, tol: f64) -> Result<bool> {
        let (lo, _) = self.min_max_on_sphere(1e-10)?;
        Ok(lo >= tol)
    }

    /// Canonical text form; re-parsing yields the identical term map.
    pub fn canonical_text(&self) -> String {
        format!("{}", self.poly)
    }
}

impl fmt::Display for SymbolPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Default ellipticity tolerance; guards against grid near-misses for
/// symbols that are elliptic in exact arithmetic.
pub const ELLIPTICITY_TOL: f64 = 1e-12;
