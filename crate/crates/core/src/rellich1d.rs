//! One-dimensional Rellich machinery: the minimizer-family quotient and
//! the half-space sharpness ratio.
//!
//! The trial family is g_ε(t) = t^{s} with s = (2m−1)/2 + ε. Both quotient
//! integrals are pure powers, each equal to a coefficient over 2ε, so the
//! quotient has the closed form ∏_{j=0}^{m−1}(s−j)², which tends to A(m)
//! as ε → 0. The numeric route re-derives the same value by quadrature
//! with exact tail corrections and serves as an independent oracle
//! (see `docs/derivations.md`).

use crate::constants::rellich_constant_f64;
use crate::error::{Error, Result};
use crate::finsler::{biconjugate, finsler_f, NormTable};
use crate::polynomial::SymbolPolynomial;
use crate::quadrature::integrate_1d;

/// Trial exponent data for g_ε(t) = t^{(2m−1)/2+ε}.
#[derive(Clone, Copy, Debug)]
pub struct MinimizerFamily {
    pub m: u32,
    pub epsilon: f64,
}

impl MinimizerFamily {
    pub fn new(m: u32, epsilon: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::Invalid("m must be positive".into()));
        }
        if !(epsilon > 0.0) {
            return Err(Error::Invalid("epsilon must be positive".into()));
        }
        Ok(MinimizerFamily { m, epsilon })
    }

    /// s = (2m−1)/2 + ε.
    pub fn exponent(&self) -> f64 {
        (2.0 * self.m as f64 - 1.0) / 2.0 + self.epsilon
    }
}

/// Closed form of the quotient ∫(g_ε^{(m)})²dt / ∫ g_ε²/t^{2m} dt:
/// ∏_{j=0}^{m−1}(s−j)².
pub fn quotient_closed_form(m: u32, epsilon: f64) -> Result<f64> {
    let family = MinimizerFamily::new(m, epsilon)?;
    let s = family.exponent();
    let mut product = 1.0;
    for j in 0..m {
        let factor = s - j as f64;
        product *= factor * factor;
    }
    Ok(product)
}

/// Quadrature specification for the numeric quotient.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    /// Gauss-Legendre points per panel.
    pub order: usize,
    /// Panels per dyadic interval.
    pub panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { order: 32, panels: 2 }
    }
}

/// Numeric route for the quotient: integrate (g_ε^{(m)})² and g_ε²/t^{2m}
/// on (δ, 1) over dyadic panels, add the exact power-function tails on
/// (0, δ), and take the ratio. Must match [`quotient_closed_form`] to
/// 1e−10.
pub fn quotient_numeric(m: u32, epsilon: f64, delta: f64, spec: QuadratureSpec) -> Result<f64> {
    let family = MinimizerFamily::new(m, epsilon)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Invalid("delta must lie in (0, 1)".into()));
    }
    let s = family.exponent();
    // g_ε^{(m)}(t) = c_m t^{s−m} with c_m the falling factorial of s
    let mut c_m = 1.0;
    for j in 0..m {
        c_m *= s - j as f64;
    }
    let numerator_f = move |t: f64| (c_m * t.powf(s - m as f64)).powi(2);
    let denominator_f = move |t: f64| t.powf(2.0 * s) / t.powf(2.0 * m as f64);

    // dyadic panels [delta·2^k, delta·2^{k+1}] resolve the steep end near delta
    let dyadic = |f: &dyn Fn(f64) -> f64| -> f64 {
        let mut total = 0.0;
        let mut lo = delta;
        while lo < 1.0 {
            let hi = (2.0 * lo).min(1.0);
            total += integrate_1d(f, lo, hi, spec.order, spec.panels);
            lo = hi;
        }
        total
    };
    // exact tails: both integrands are C·t^{2ε−1} on (0, δ)
    let two_eps = 2.0 * epsilon;
    let tail_num = c_m * c_m * delta.powf(two_eps) / two_eps;
    let tail_den = delta.powf(two_eps) / two_eps;

    let numerator = dyadic(&numerator_f) + tail_num;
    let denominator = dyadic(&denominator_f) + tail_den;
    if !(denominator > 0.0) || !numerator.is_finite() {
        return Err(Error::Convergence("1-D quotient quadrature"));
    }
    Ok(numerator / denominator)
}

/// The half-space sharpness ratio (F(ν)/F**(ν))^{2m}·A(m); equals A(m)
/// exactly when F(ν) = F**(ν).
pub fn sharp_ratio_halfspace(
    symbol: &SymbolPolynomial,
    table: &NormTable,
    nu: &[f64],
) -> Result<f64> {
    table.check_symbol(symbol)?;
    let f = finsler_f(symbol, nu)?;
    let fss = biconjugate(symbol, nu, table)?;
    let two_m = 2 * symbol.half_order();
    Ok((f / fss).powi(two_m as i32) * rellich_constant_f64(symbol.half_order()))
}
