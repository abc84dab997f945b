//! The Finsler norm F = H^{1/2m}, its dual F*, and the biconjugate F**.
//!
//! The dual norm is the support-function style transform
//! F*(ω) = sup_{ξ≠0} ω·ξ / F(ξ); F** is computed as the dual transform of
//! F* rather than through a convex-hull construction, so one code path
//! serves every symbol. All certified computations are planar (n = 2);
//! higher dimensions fall back to sampled, non-certified searches.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimize::{golden_max, max_on_circle};
use crate::parallel::map_range;
use crate::polynomial::SymbolPolynomial;

const TAU: f64 = std::f64::consts::TAU;

/// Relative tolerance to which each individual dual-norm value is refined.
pub const POINT_TOL: f64 = 1e-10;

/// Angular resolution request for a planar direction grid.
///
/// `count` must be a power of two (≥ 16) so the table can be refined by
/// doubling; `tol` is the target mean interpolation adequacy of the table
/// and `max_count` caps the doubling.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DirectionGrid {
    pub count: usize,
    pub tol: f64,
    pub max_count: usize,
}

impl DirectionGrid {
    pub fn new(count: usize, tol: f64) -> Result<Self> {
        if count < 16 || !count.is_power_of_two() {
            return Err(Error::Invalid(format!(
                "grid count must be a power of two >= 16, got {count}"
            )));
        }
        if tol <= 0.0 {
            return Err(Error::Invalid("grid tolerance must be positive".into()));
        }
        Ok(DirectionGrid {
            count,
            tol,
            max_count: 1 << 20,
        })
    }

    pub fn with_cap(mut self, max_count: usize) -> Self {
        self.max_count = max_count;
        self
    }
}

impl Default for DirectionGrid {
    fn default() -> Self {
        DirectionGrid {
            count: 4096,
            tol: 1e-8,
            max_count: 1 << 20,
        }
    }
}

/// F* sampled at uniform angles, with the symbol it was built for.
///
/// Immutable after construction; every stored value is individually
/// refined to [`POINT_TOL`], and `achieved_tol` records the measured mean
/// interpolation adequacy of the final grid.
#[derive(Clone, Debug, Serialize)]
pub struct NormTable {
    pub count: usize,
    pub values: Vec<f64>,
    pub achieved_tol: f64,
    pub point_tol: f64,
    pub symbol: String,
    pub half_order: u32,
}

impl NormTable {
    pub fn angle(&self, k: usize) -> f64 {
        TAU * k as f64 / self.count as f64
    }

    /// Linear interpolation of F* between grid angles.
    pub fn fstar_interp(&self, theta: f64) -> f64 {
        let t = theta.rem_euclid(TAU) / TAU * self.count as f64;
        let k = t.floor() as usize % self.count;
        let frac = t - t.floor();
        let a = self.values[k];
        let b = self.values[(k + 1) % self.count];
        a + frac * (b - a)
    }

    /// Guard against using a table with a different symbol.
    pub fn check_symbol(&self, symbol: &SymbolPolynomial) -> Result<()> {
        if self.symbol != symbol.canonical_text() {
            return Err(Error::StaleTable);
        }
        Ok(())
    }

    /// CSV dump, `angle,fstar` with one row per grid angle.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("angle,fstar\n");
        for (k, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.angle(k), v));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// F(ξ) = H(ξ)^{1/2m}; errors if H(ξ) < 0 (symbol not elliptic there).
pub fn finsler_f(symbol: &SymbolPolynomial, xi: &[f64]) -> Result<f64> {
    let h = symbol.evaluate(xi)?;
    if h < 0.0 {
        return Err(Error::NegativeSymbol);
    }
    Ok(h.powf(1.0 / (2.0 * symbol.half_order() as f64)))
}

fn dual_norm_planar(symbol: &SymbolPolynomial, omega: [f64; 2], coarse: usize) -> f64 {
    let inv_deg = 1.0 / (2.0 * symbol.half_order() as f64);
    let mut f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let num = omega[0] * c + omega[1] * s;
        let h = symbol.on_circle(theta);
        if h <= 0.0 {
            return f64::NEG_INFINITY;
        }
        num / h.powf(inv_deg)
    };
    let (_, v) = max_on_circle(&mut f, coarse, 1e-12);
    v
}

/// The dual norm F*(ω) = max_{|ξ|=1} ω·ξ/F(ξ).
///
/// Certified for n = 2 via a dense angular scan plus golden-section
/// refinement; for n ≥ 3 a seeded sampled search with local refinement is
/// used and the result is not certified.
pub fn dual_norm(symbol: &SymbolPolynomial, omega: &[f64], _tol: f64) -> Result<f64> {
    if omega.len() != symbol.dimension() {
        return Err(Error::DimensionMismatch {
            expected: symbol.dimension(),
            got: omega.len(),
        });
    }
    if omega.iter().all(|&w| w == 0.0) {
        return Err(Error::Invalid("dual norm of the zero direction".into()));
    }
    match symbol.dimension() {
        2 => {
            let v = dual_norm_planar(symbol, [omega[0], omega[1]], 512);
            if !v.is_finite() {
                return Err(Error::NotElliptic(f64::NEG_INFINITY));
            }
            Ok(v)
        }
        _ => dual_norm_sampled(symbol, omega),
    }
}

/// Non-certified sampled search for n ≥ 3.
fn dual_norm_sampled(symbol: &SymbolPolynomial, omega: &[f64]) -> Result<f64> {
    use rand::{Rng, SeedableRng};
    let n = symbol.dimension();
    let inv_deg = 1.0 / (2.0 * symbol.half_order() as f64);
    let objective = |x: &[f64]| -> f64 {
        let h = symbol.evaluate(x).unwrap_or(f64::NAN);
        if !(h > 0.0) {
            return f64::NEG_INFINITY;
        }
        let dot: f64 = omega.iter().zip(x).map(|(a, b)| a * b).sum();
        dot / h.powf(inv_deg)
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xD0A1);
    let mut best = (f64::NEG_INFINITY, vec![0.0; n]);
    for _ in 0..100_000 {
        let mut x: Vec<f64> = (0..n)
            .map(|_| {
                let u1: f64 = rng.random::<f64>().max(1e-12);
                let u2: f64 = rng.random();
                (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
            })
            .collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-9 {
            continue;
        }
        x.iter_mut().for_each(|v| *v /= norm);
        let f = objective(&x);
        if f > best.0 {
            best = (f, x);
        }
    }
    if !best.0.is_finite() {
        return Err(Error::NotElliptic(f64::NEG_INFINITY));
    }
    let mut x = best.1;
    let mut fx = best.0;
    let mut step = 0.1;
    while step > 1e-12 {
        let mut improved = false;
        for i in 0..n {
            for dir in [step, -step] {
                let mut y = x.clone();
                y[i] += dir;
                let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                y.iter_mut().for_each(|v| *v /= norm);
                let fy = objective(&y);
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
    Ok(fx)
}

/// Tabulate F* on a planar direction grid, doubling the resolution until
/// the mean interpolation error of the table drops below the grid
/// tolerance. The symbol must be elliptic.
pub fn build_norm_table(symbol: &SymbolPolynomial, grid: &DirectionGrid) -> Result<NormTable> {
    if symbol.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            got: symbol.dimension(),
            context: "norm tables are planar",
        });
    }
    let (lo, _) = symbol.min_max_on_sphere(1e-10)?;
    if lo <= 0.0 {
        return Err(Error::NotElliptic(lo));
    }

    // F is even (degree 2m), so F* is even: compute half a turn and mirror.
    let compute_half = |count: usize| -> Vec<f64> {
        let half = count / 2;
        let mut values = map_range(half, |k| {
            let theta = TAU * k as f64 / count as f64;
            dual_norm_planar(symbol, [theta.cos(), theta.sin()], 512)
        });
        values.extend_from_within(..);
        values
    };

    let mut count = grid.count;
    let mut values = compute_half(count);
    loop {
        // value at the midpoints of the current grid = odd entries of the
        // doubled grid; measure how well linear interpolation predicts them
        let doubled = compute_half(count * 2);
        let mut err_sum = 0.0;
        for k in 0..count {
            let mid = doubled[2 * k + 1];
            let lin = 0.5 * (values[k] + values[(k + 1) % count]);
            err_sum += (mid - lin).abs() / mid;
        }
        let mean_err = err_sum / count as f64;
        count *= 2;
        values = doubled;
        if mean_err <= grid.tol {
            return Ok(NormTable {
                count,
                values,
                achieved_tol: mean_err,
                point_tol: POINT_TOL,
                symbol: symbol.canonical_text(),
                half_order: symbol.half_order(),
            });
        }
        if count * 2 > grid.max_count {
            return Err(Error::Convergence("norm table refinement"));
        }
    }
}

/// F**(ξ), the dual of F*: sup over directions of ξ·ω / F*(ω).
///
/// The table provides the bracket; the final value is refined with exact
/// dual-norm evaluations, so its accuracy is [`POINT_TOL`], not the table
/// spacing. Satisfies F** ≤ F up to tolerance.
pub fn biconjugate(symbol: &SymbolPolynomial, xi: &[f64], table: &NormTable) -> Result<f64> {
    table.check_symbol(symbol)?;
    if xi.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: xi.len(),
        });
    }
    if xi[0] == 0.0 && xi[1] == 0.0 {
        return Ok(0.0);
    }
    let mut best = f64::NEG_INFINITY;
    let mut best_k = 0usize;
    for (k, v) in table.values.iter().enumerate() {
        let theta = table.angle(k);
        let g = (xi[0] * theta.cos() + xi[1] * theta.sin()) / v;
        if g > best {
            best = g;
            best_k = k;
        }
    }
    let h = TAU / table.count as f64;
    let center = best_k as f64 * h;
    let mut f = |phi: f64| {
        let (s, c) = phi.sin_cos();
        (xi[0] * c + xi[1] * s) / dual_norm_planar(symbol, [c, s], 256)
    };
    let (_, refined) = golden_max(&mut f, center - h, center + h, 1e-12);
    Ok(refined.max(best))
}
