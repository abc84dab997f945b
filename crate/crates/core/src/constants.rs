//! The scalar constants attached to a symbol: the sharp one-dimensional
//! Rellich constant A(m), the comparison constant λ/Λ, the sphere-averaged
//! constants μ_H and M_H, and β-sweeps over the two example families.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finsler::{biconjugate, build_norm_table, DirectionGrid, NormTable};
use crate::optimize::{max_on_circle, min_on_circle};
use crate::parallel::{map_range, pairwise_sum};
use crate::polynomial::{parse_symbol, SymbolPolynomial, ELLIPTICITY_TOL};

const TAU: f64 = std::f64::consts::TAU;

/// A(m) = (2m-1)²(2m-3)²…1² / 4^m, exact.
pub fn rellich_constant(m: u32) -> BigRational {
    assert!(m >= 1, "m must be positive");
    let mut numer = BigInt::one();
    for j in 1..=m {
        let odd = BigInt::from(2 * j - 1);
        numer *= &odd * &odd;
    }
    BigRational::new(numer, BigInt::from(4u32).pow(m))
}

pub fn rellich_constant_f64(m: u32) -> f64 {
    rellich_constant(m).to_f64().expect("A(m) fits in f64")
}

/// Precomputed angular data for the moment integral
/// G(ξ) = ∫_{S¹} (ξ·ω)^{2m} / F*(ω)^{2m} dσ(ω), dσ normalized.
pub(crate) struct AngularMoment<'a> {
    table: &'a NormTable,
    cos: Vec<f64>,
    sin: Vec<f64>,
    inv_pow: Vec<f64>,
    two_m: i32,
}

impl<'a> AngularMoment<'a> {
    pub fn new(symbol: &SymbolPolynomial, table: &'a NormTable) -> Result<Self> {
        table.check_symbol(symbol)?;
        let two_m = 2 * symbol.half_order() as i32;
        let count = table.count;
        let mut cos = Vec::with_capacity(count);
        let mut sin = Vec::with_capacity(count);
        let mut inv_pow = Vec::with_capacity(count);
        for k in 0..count {
            let theta = TAU * k as f64 / count as f64;
            cos.push(theta.cos());
            sin.push(theta.sin());
            inv_pow.push(table.values[k].powi(-two_m));
        }
        Ok(AngularMoment {
            table,
            cos,
            sin,
            inv_pow,
            two_m,
        })
    }

    /// G(ξ) by the periodic trapezoidal rule at the table resolution.
    pub fn eval(&self, xi: [f64; 2]) -> f64 {
        let terms: Vec<f64> = (0..self.table.count)
            .map(|k| (xi[0] * self.cos[k] + xi[1] * self.sin[k]).powi(self.two_m) * self.inv_pow[k])
            .collect();
        pairwise_sum(&terms) / self.table.count as f64
    }

    /// Same integral on the half-resolution subgrid; the difference is the
    /// doubling error estimate.
    pub fn eval_coarse(&self, xi: [f64; 2]) -> f64 {
        let half = self.table.count / 2;
        let terms: Vec<f64> = (0..half)
            .map(|k| {
                let j = 2 * k;
                (xi[0] * self.cos[j] + xi[1] * self.sin[j]).powi(self.two_m) * self.inv_pow[j]
            })
            .collect();
        pairwise_sum(&terms) / half as f64
    }
}

/// The sphere-averaged moment G(ξ); the second value is the doubling error
/// estimate of the trapezoidal rule at the table resolution.
pub fn angular_moment(
    symbol: &SymbolPolynomial,
    xi: &[f64],
    table: &NormTable,
) -> Result<(f64, f64)> {
    if xi.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: xi.len(),
        });
    }
    let am = AngularMoment::new(symbol, table)?;
    let fine = am.eval([xi[0], xi[1]]);
    let coarse = am.eval_coarse([xi[0], xi[1]]);
    let err = (fine - coarse).abs();
    if err > 1e-5 * fine.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::Convergence("angular moment quadrature"));
    }
    Ok((fine, err))
}

/// The best constants μ_H and M_H sandwiching G between
/// μ_H·F**(ξ)^{2m} and M_H·H(ξ). Both ratios are 0-homogeneous, so the
/// extremization runs over the unit circle.
pub fn mu_m(
    symbol: &SymbolPolynomial,
    table: &NormTable,
    _tol: f64,
) -> Result<(f64, f64)> {
    let am = AngularMoment::new(symbol, table)?;
    let two_m = 2.0 * symbol.half_order() as f64;

    let mut mu_ratio = |theta: f64| {
        let xi = [theta.cos(), theta.sin()];
        let fss = biconjugate(symbol, &xi, table).expect("table checked");
        am.eval(xi) / fss.powf(two_m)
    };
    let (_, mu) = min_on_circle(&mut mu_ratio, 512, 1e-10);

    let mut m_ratio = |theta: f64| {
        let xi = [theta.cos(), theta.sin()];
        am.eval(xi) / symbol.on_circle(theta)
    };
    let (_, big_m) = max_on_circle(&mut m_ratio, 512, 1e-10);

    Ok((mu, big_m))
}

/// λ/Λ, the constant entering the polyharmonic comparison bound A(m)·λ/Λ.
pub fn comparison_constant(symbol: &SymbolPolynomial) -> Result<f64> {
    let (lo, hi) = symbol.min_max_on_sphere(1e-10)?;
    if lo <= 0.0 {
        return Err(Error::NotElliptic(lo));
    }
    Ok(lo / hi)
}

/// A(m)·μ_H/M_H, the uniform convex-domain constant.
pub fn theorem2_constant(symbol: &SymbolPolynomial, table: &NormTable) -> Result<f64> {
    let (mu, big_m) = mu_m(symbol, table, 1e-8)?;
    Ok(rellich_constant_f64(symbol.half_order()) * mu / big_m)
}

/// Every constant of interest for one symbol.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub symbol: String,
    pub m: u32,
    pub lambda: f64,
    #[serde(rename = "Lambda")]
    pub big_lambda: f64,
    /// λ/Λ
    pub c: f64,
    pub mu: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    /// μ_H/M_H
    pub s: f64,
    /// A(m) as an exact rational string
    pub a_m: String,
    pub a_m_f64: f64,
    /// A(m)·μ_H/M_H
    pub theorem2_constant: f64,
    /// A(m)·λ/Λ
    pub comparison_constant: f64,
    /// mean interpolation adequacy achieved by the norm table
    pub grid_tol: f64,
}

pub fn constants_report(
    symbol: &SymbolPolynomial,
    grid: &DirectionGrid,
) -> Result<ConstantsReport> {
    let (lambda, big_lambda) = symbol.min_max_on_sphere(1e-10)?;
    if lambda <= ELLIPTICITY_TOL {
        return Err(Error::NotElliptic(lambda));
    }
    let table = build_norm_table(symbol, grid)?;
    let (mu, big_m) = mu_m(symbol, &table, 1e-8)?;
    let m = symbol.half_order();
    let a = rellich_constant(m);
    let a_f = rellich_constant_f64(m);
    Ok(ConstantsReport {
        symbol: symbol.canonical_text(),
        m,
        lambda,
        big_lambda,
        c: lambda / big_lambda,
        mu,
        big_m,
        s: mu / big_m,
        a_m: format!("{}/{}", a.numer(), a.denom()),
        a_m_f64: a_f,
        theorem2_constant: a_f * mu / big_m,
        comparison_constant: a_f * lambda / big_lambda,
        grid_tol: table.achieved_tol,
    })
}

/// The two monoparametric symbol families, plus custom templates with a
/// `b` parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// ξ₁⁴ + 2β ξ₁²ξ₂² + ξ₂⁴ (m = 2)
    Example1,
    /// ξ₁⁶ + β ξ₁⁴ξ₂² + β ξ₁²ξ₂⁴ + ξ₂⁶ (m = 3)
    Example2,
    /// Any template over `x1..x9` with parameter `b`.
    Custom(String),
}

impl Family {
    pub fn template(&self) -> &str {
        match self {
            Family::Example1 => "x1^4 + 2*b*x1^2*x2^2 + x2^4",
            Family::Example2 => "x1^6 + b*x1^4*x2^2 + b*x1^2*x2^4 + x2^6",
            Family::Custom(t) => t,
        }
    }

    /// Instantiate the family at β (bound exactly as a binary rational).
    pub fn symbol(&self, beta: f64) -> Result<SymbolPolynomial> {
        let b = BigRational::from_float(beta)
            .ok_or_else(|| Error::Invalid(format!("beta {beta} is not finite")))?;
        let mut bindings = HashMap::new();
        bindings.insert("b".to_string(), b);
        parse_symbol(self.template(), &bindings)
    }
}

/// One β of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub beta: f64,
    pub lambda: f64,
    #[serde(rename = "Lambda")]
    pub big_lambda: f64,
    pub c: f64,
    pub mu: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub s: f64,
}

/// Per-β outcome; failures are collected, not fatal to the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub beta: f64,
    pub row: Option<SweepRow>,
    pub error: Option<String>,
}

/// Grid sized for sweeps: μ/M to ~1e-6 while keeping a full figure sweep
/// in seconds.
pub fn sweep_grid() -> DirectionGrid {
    DirectionGrid::new(4096, 1e-6)
        .expect("static grid")
        .with_cap(1 << 15)
}

fn sweep_row(family: &Family, beta: f64, grid: &DirectionGrid) -> Result<SweepRow> {
    let symbol = family.symbol(beta)?;
    let (lambda, big_lambda) = symbol.min_max_on_sphere(1e-10)?;
    if lambda <= ELLIPTICITY_TOL {
        return Err(Error::NotElliptic(lambda));
    }
    let table = build_norm_table(&symbol, grid)?;
    let (mu, big_m) = mu_m(&symbol, &table, 1e-8)?;
    Ok(SweepRow {
        beta,
        lambda,
        big_lambda,
        c: lambda / big_lambda,
        mu,
        big_m,
        s: mu / big_m,
    })
}

/// Compute one [`SweepRow`] per β, independently and in input order. Rows
/// are independent work items and run in parallel; the output never
/// depends on scheduling.
pub fn sweep_family(family: &Family, betas: &[f64], grid: &DirectionGrid) -> Vec<SweepPoint> {
    map_range(betas.len(), |i| {
        let beta = betas[i];
        match sweep_row(family, beta, grid) {
            Ok(row) => SweepPoint {
                beta,
                row: Some(row),
                error: None,
            },
            Err(e) => SweepPoint {
                beta,
                row: None,
                error: Some(e.to_string()),
            },
        }
    })
}

/// Log-spaced β grid over (−0.99, 100], with the collapse points β = 1 and
/// β = 3 inserted explicitly.
pub fn default_beta_grid(count: usize) -> Vec<f64> {
    let lo = (0.01f64).log10();
    let hi = (101.0f64).log10();
    let mut betas: Vec<f64> = (0..count)
        .map(|i| {
            let t = if count == 1 {
                0.0
            } else {
                i as f64 / (count - 1) as f64
            };
            -1.0 + 10f64.powf(lo + t * (hi - lo))
        })
        .collect();
    for special in [1.0, 3.0] {
        if !betas.iter().any(|&b| (b - special).abs() < 1e-12) {
            betas.push(special);
        }
    }
    betas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    betas
}

/// CSV serialization with the `beta,lambda,Lambda,c,mu,M,s` schema.
/// Failed rows are skipped (they are reported in the JSON form).
pub fn sweep_to_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("beta,lambda,Lambda,c,mu,M,s\n");
    for p in points {
        if let Some(r) = &p.row {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.beta, r.lambda, r.big_lambda, r.c, r.mu, r.big_m, r.s
            ));
        }
    }
    out
}
