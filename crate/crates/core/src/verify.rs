//! End-to-end numerical verification of the inequalities: pointwise
//! symbol duality, the half-space bound with constant A(m), and the
//! convex-domain bound with constant A(m)·μ_H/M_H.
//!
//! Test functions are polynomial bumps vanishing to order ≥ m at every
//! face of their support box. These lie in the form closure, where the
//! inequalities persist, and make the energy ∫u·Hu an exact rational.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constants::{mu_m, rellich_constant_f64, Family};
use crate::error::{Error, Result};
use crate::finsler::{dual_norm, NormTable};
use crate::geometry::{Domain, FinslerScaling};
use crate::parallel::map_range;
use crate::polynomial::{Polynomial, SymbolPolynomial};
use crate::quadrature::adaptive_box_2d;
use crate::rellich1d::sharp_ratio_halfspace;

/// Fixed default seed so reports are reproducible run to run.
pub const DEFAULT_SEED: u64 = 0xF1A5_1ED5;

/// A polynomial bump on a support box, vanishing to order ≥ m at every
/// face (canonical family: ∏ (x_i − a_i)^m (b_i − x_i)^m, optionally times
/// a low-degree polynomial).
#[derive(Clone, Debug)]
pub struct TestFunction {
    poly: Polynomial,
    bounds: Vec<(BigRational, BigRational)>,
    order: u32,
    /// For bumps built as ∏(x_i−a_i)^m(b_i−x_i)^m · extra, the extra
    /// factor. Lets quadrature evaluate u in product form, which stays
    /// accurate near the faces where the expanded monomials cancel
    /// catastrophically.
    extra: Option<Polynomial>,
}

impl TestFunction {
    /// Wrap a polynomial, checking symbolically that it vanishes to order
    /// at least `m` at every face of the box.
    pub fn new(
        poly: Polynomial,
        bounds: Vec<(BigRational, BigRational)>,
        m: u32,
    ) -> Result<Self> {
        if poly.dimension() != bounds.len() {
            return Err(Error::DimensionMismatch {
                expected: poly.dimension(),
                got: bounds.len(),
            });
        }
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            if lo >= hi {
                return Err(Error::InvalidBox(i));
            }
            for k in 0..m {
                let d = poly.partial(i, k);
                if !d.substitute(i, lo).is_zero() || !d.substitute(i, hi).is_zero() {
                    return Err(Error::Invalid(format!(
                        "test function does not vanish to order {m} at face x{} of the box",
                        i + 1
                    )));
                }
            }
        }
        Ok(TestFunction {
            poly,
            bounds,
            order: m,
            extra: None,
        })
    }

    /// The canonical bump ∏ (x_i − a_i)^m (b_i − x_i)^m.
    pub fn canonical_bump(bounds: Vec<(BigRational, BigRational)>, m: u32) -> Result<Self> {
        let n = bounds.len();
        TestFunction::canonical_bump_times(bounds, m, &Polynomial::one(n))
    }

    /// Canonical bump multiplied by an extra polynomial factor.
    pub fn canonical_bump_times(
        bounds: Vec<(BigRational, BigRational)>,
        m: u32,
        factor: &Polynomial,
    ) -> Result<Self> {
        let n = bounds.len();
        let mut poly = factor.clone();
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            let x = Polynomial::variable(n, i);
            let left = x.sub(&Polynomial::constant(n, lo.clone()));
            let right = Polynomial::constant(n, hi.clone()).sub(&x);
            poly = poly.mul(&left.pow(m)).mul(&right.pow(m));
        }
        let mut out = TestFunction::new(poly, bounds, m)?;
        out.extra = Some(factor.clone());
        Ok(out)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn bounds(&self) -> &[(BigRational, BigRational)] {
        &self.bounds
    }

    pub fn vanishing_order(&self) -> u32 {
        self.order
    }

    /// Scale the polynomial by an exact rational; the verification ratio
    /// is invariant under this.
    pub fn scaled(&self, c: &BigRational) -> Result<Self> {
        let mut out = TestFunction::new(self.poly.scale(c), self.bounds.clone(), self.order)?;
        out.extra = self.extra.as_ref().map(|e| e.scale(c));
        Ok(out)
    }

    fn bounds_f64(&self) -> ([f64; 2], [f64; 2]) {
        let lo = [
            self.bounds[0].0.to_f64().unwrap(),
            self.bounds[1].0.to_f64().unwrap(),
        ];
        let hi = [
            self.bounds[0].1.to_f64().unwrap(),
            self.bounds[1].1.to_f64().unwrap(),
        ];
        (lo, hi)
    }
}

/// f64 mirror of a polynomial for hot quadrature loops.
struct PolyEval {
    terms: Vec<(Vec<u32>, f64)>,
}

impl PolyEval {
    fn new(p: &Polynomial) -> Self {
        PolyEval {
            terms: p
                .terms()
                .map(|(a, c)| (a.exponents().to_vec(), c.to_f64().expect("coefficient fits f64")))
                .collect(),
        }
    }

    #[inline]
    fn eval2(&self, x: f64, y: f64) -> f64 {
        let mut sum = 0.0;
        for (exps, c) in &self.terms {
            sum += c * x.powi(exps[0] as i32) * y.powi(exps[1] as i32);
        }
        sum
    }
}

/// Exact energy ∫ u·Hu over the support box.
pub fn energy(symbol: &SymbolPolynomial, u: &TestFunction) -> Result<BigRational> {
    if u.order < symbol.half_order() {
        return Err(Error::Invalid(format!(
            "test function vanishes to order {} < m = {}",
            u.order,
            symbol.half_order()
        )));
    }
    let hu = symbol.apply_operator(&u.poly)?;
    u.poly.mul(&hu).integrate_box(&u.bounds)
}

fn check_box_inside(domain: &Domain, u: &TestFunction) -> Result<()> {
    let (lo, hi) = u.bounds_f64();
    for corner in [
        [lo[0], lo[1]],
        [hi[0], lo[1]],
        [lo[0], hi[1]],
        [hi[0], hi[1]],
    ] {
        let ok = match domain {
            Domain::HalfSpace(h) => {
                h.normal().iter().zip(&corner).map(|(a, b)| a * b).sum::<f64>() >= -1e-9
            }
            Domain::Polytope(p) => p.faces().iter().all(|f| {
                f.normal.iter().zip(&corner).map(|(a, b)| a * b).sum::<f64>() <= f.offset + 1e-9
            }),
        };
        if !ok {
            return Err(Error::OutsideDomain);
        }
    }
    Ok(())
}

fn weighted_mass_with<D: Fn(f64, f64) -> f64 + Sync>(
    symbol: &SymbolPolynomial,
    u: &TestFunction,
    dist: D,
    tol: f64,
) -> Result<(f64, f64)> {
    if symbol.dimension() != 2 || u.poly.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            got: symbol.dimension(),
            context: "weighted mass quadrature is planar",
        });
    }
    let two_m = 2 * symbol.half_order() as i32;
    let (lo, hi) = u.bounds_f64();
    // evaluate u in product form where possible: the expanded monomials of
    // u² cancel catastrophically near the faces, exactly where the 1/d^{2m}
    // weight amplifies the noise
    let u_sq: Box<dyn Fn(f64, f64) -> f64 + Sync> = match &u.extra {
        Some(extra) => {
            let extra = PolyEval::new(extra);
            let m = u.order as i32;
            Box::new(move |x: f64, y: f64| {
                let bump = ((x - lo[0]) * (hi[0] - x) * (y - lo[1]) * (hi[1] - y)).powi(m);
                let v = bump * extra.eval2(x, y);
                v * v
            })
        }
        None => {
            let u2 = PolyEval::new(&u.poly.mul(&u.poly));
            Box::new(move |x: f64, y: f64| u2.eval2(x, y))
        }
    };
    let f = move |x: f64, y: f64| u_sq(x, y) / dist(x, y).powi(two_m);
    adaptive_box_2d(&f, lo, hi, tol, 1 << 20)
}

/// ∫ u²/d_H^{2m} over the support box by adaptive tensor Gauss-Legendre
/// quadrature with dyadic subdivision toward the faces. Returns the value
/// and the error estimate.
pub fn weighted_mass(
    symbol: &SymbolPolynomial,
    table: &NormTable,
    domain: &Domain,
    u: &TestFunction,
    tol: f64,
) -> Result<(f64, f64)> {
    check_box_inside(domain, u)?;
    let scaling = FinslerScaling::new(symbol, table, domain)?;
    let domain = domain.clone();
    weighted_mass_with(symbol, u, move |x, y| scaling.distance(&domain, &[x, y]), tol)
}

/// Same integral with the Euclidean boundary distance in place of d_H.
pub fn weighted_mass_euclidean(
    symbol: &SymbolPolynomial,
    domain: &Domain,
    u: &TestFunction,
    tol: f64,
) -> Result<(f64, f64)> {
    check_box_inside(domain, u)?;
    let domain = domain.clone();
    weighted_mass_with(symbol, u, move |x, y| {
        crate::geometry::euclidean_distance(&domain, &[x, y]).unwrap_or(f64::MIN_POSITIVE)
    }, tol)
}

/// Both sides of a Rellich quotient with the bound being tested.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub symbol: String,
    pub m: u32,
    pub domain: String,
    /// exact rational ∫u·Hu
    pub energy_exact: String,
    pub energy: f64,
    pub weighted_mass: f64,
    pub mass_error: f64,
    pub ratio: f64,
    pub bound: f64,
    pub bound_name: String,
    pub margin: f64,
    pub pass: bool,
    /// (F(ν)/F**(ν))^{2m}·A(m) for half-space runs
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sharp_ratio: Option<f64>,
    /// A(m)·λ/Λ for convex runs
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stronger_bound: Option<String>,
}

/// Theorem-1 check: energy/weighted_mass ≥ A(m) on a half-space.
pub fn verify_halfspace(
    symbol: &SymbolPolynomial,
    table: &NormTable,
    hs: &crate::geometry::HalfSpace,
    u: &TestFunction,
    tol: f64,
) -> Result<QuotientReport> {
    let domain = Domain::HalfSpace(hs.clone());
    let e = energy(symbol, u)?;
    if !e.is_positive() {
        return Err(Error::Invalid("energy must be positive".into()));
    }
    let (mass, mass_err) = weighted_mass(symbol, table, &domain, u, tol)?;
    let energy_f = e.to_f64().expect("energy fits f64");
    let ratio = energy_f / mass;
    let bound = rellich_constant_f64(symbol.half_order());
    let sharp = sharp_ratio_halfspace(symbol, table, hs.normal())?;
    Ok(QuotientReport {
        symbol: symbol.canonical_text(),
        m: symbol.half_order(),
        domain: format!("halfspace nu=({}, {})", hs.normal()[0], hs.normal()[1]),
        energy_exact: format!("{}/{}", e.numer(), e.denom()),
        energy: energy_f,
        weighted_mass: mass,
        mass_error: mass_err,
        ratio,
        bound,
        bound_name: "A(m)".to_string(),
        margin: ratio - bound,
        pass: ratio >= bound - tol,
        sharp_ratio: Some(sharp),
        comparison_bound: None,
        stronger_bound: None,
    })
}

/// Theorem-2 check: energy/weighted_mass ≥ A(m)·μ_H/M_H on a convex
/// polytope, also reporting the polyharmonic comparison bound A(m)·λ/Λ.
pub fn verify_convex(
    symbol: &SymbolPolynomial,
    table: &NormTable,
    polytope: &crate::geometry::ConvexPolytope,
    u: &TestFunction,
    tol: f64,
) -> Result<QuotientReport> {
    let domain = Domain::Polytope(polytope.clone());
    let e = energy(symbol, u)?;
    if !e.is_positive() {
        return Err(Error::Invalid("energy must be positive".into()));
    }
    let (mass, mass_err) = weighted_mass(symbol, table, &domain, u, tol)?;
    let energy_f = e.to_f64().expect("energy fits f64");
    let ratio = energy_f / mass;

    let a = rellich_constant_f64(symbol.half_order());
    let (mu, big_m) = mu_m(symbol, table, 1e-8)?;
    let bound = a * mu / big_m;
    let (lambda, big_lambda) = symbol.min_max_on_sphere(1e-10)?;
    let comparison = a * lambda / big_lambda;
    let stronger = if bound >= comparison {
        "A(m)*mu/M"
    } else {
        "A(m)*lambda/Lambda"
    };
    Ok(QuotientReport {
        symbol: symbol.canonical_text(),
        m: symbol.half_order(),
        domain: format!("polytope with {} faces", polytope.faces().len()),
        energy_exact: format!("{}/{}", e.numer(), e.denom()),
        energy: energy_f,
        weighted_mass: mass,
        mass_error: mass_err,
        ratio,
        bound,
        bound_name: "A(m)*mu/M".to_string(),
        margin: ratio - bound,
        pass: ratio >= bound - tol,
        sharp_ratio: None,
        comparison_bound: Some(comparison),
        stronger_bound: Some(stronger.to_string()),
    })
}

/// Outcome of sampling the pointwise duality inequality
/// H(ξ)·F*(ω)^{2m} ≥ (ω·ξ)^{2m}.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub symbol: String,
    pub samples: usize,
    pub seed: u64,
    /// most negative relative slack observed (negative = violation)
    pub worst_slack: f64,
    pub pass: bool,
}

/// Draw seeded random (ξ, ω) pairs and check the duality inequality;
/// PASS iff no violation below −1e−9 relative slack.
pub fn symbol_duality_check(
    symbol: &SymbolPolynomial,
    samples: usize,
    seed: u64,
) -> Result<DualityReport> {
    if symbol.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            got: symbol.dimension(),
            context: "duality sampling uses the certified planar dual norm",
        });
    }
    let two_m = 2 * symbol.half_order() as i32;
    let slacks = map_range(samples, |i| {
        // per-sample stream keyed by index: deterministic and parallel-safe
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let gauss = |rng: &mut ChaCha8Rng| {
            let u1: f64 = rng.random::<f64>().max(1e-12);
            let u2: f64 = rng.random();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let xi = [gauss(&mut rng), gauss(&mut rng)];
        let omega = [gauss(&mut rng), gauss(&mut rng)];
        if (omega[0] == 0.0 && omega[1] == 0.0) || (xi[0] == 0.0 && xi[1] == 0.0) {
            return 0.0;
        }
        let h = symbol.evaluate(&xi).expect("dimension checked");
        let fstar = dual_norm(symbol, &omega, 1e-10).expect("elliptic symbol");
        let lhs = h * fstar.powi(two_m);
        let rhs = (omega[0] * xi[0] + omega[1] * xi[1]).powi(two_m);
        let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        (lhs - rhs) / scale
    });
    let worst = slacks.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    Ok(DualityReport {
        symbol: symbol.canonical_text(),
        samples,
        seed,
        worst_slack: worst,
        pass: worst >= -1e-9,
    })
}

/// Outcome of the sandwich check on F*(ξ)^{2m} for the example families.
#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub beta: f64,
    pub grid: usize,
    pub worst_lower_margin: f64,
    pub worst_upper_margin: f64,
    pub pass: bool,
}

/// Check the example-family sandwich bounds on F*(ξ)^{2m} over a
/// unit-circle grid: the factor is max{1, 2/(β+1)}, with lower coefficient
/// 1/4 for the quartic family and 1/8 for the sextic family.
pub fn remark_bounds_check(family: &Family, beta: f64, grid: usize) -> Result<RemarkReport> {
    let lower_coef = match family {
        Family::Example1 => 0.25,
        Family::Example2 => 0.125,
        Family::Custom(_) => {
            return Err(Error::Invalid(
                "remark bounds apply to the example families only".into(),
            ))
        }
    };
    if beta <= -1.0 {
        return Err(Error::NotElliptic(f64::NEG_INFINITY));
    }
    let symbol = family.symbol(beta)?;
    let two_m = 2 * symbol.half_order() as i32;
    let factor = 1f64.max(2.0 / (beta + 1.0));
    let lower = lower_coef * factor;
    let upper = factor;

    let margins = map_range(grid, |k| {
        let theta = std::f64::consts::TAU * k as f64 / grid as f64;
        let xi = [theta.cos(), theta.sin()];
        let v = dual_norm(&symbol, &xi, 1e-10)
            .expect("elliptic symbol")
            .powi(two_m);
        (v - lower, upper - v)
    });
    let worst_lower = margins.iter().map(|m| m.0).fold(f64::INFINITY, f64::min);
    let worst_upper = margins.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    Ok(RemarkReport {
        beta,
        grid,
        worst_lower_margin: worst_lower,
        worst_upper_margin: worst_upper,
        pass: worst_lower >= -1e-9 && worst_upper >= -1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finsler::{build_norm_table, DirectionGrid};
    use crate::geometry::{ConvexPolytope, HalfSpace};
    use crate::polynomial::{parse_symbol, rat};
    use std::collections::HashMap;

    fn unit_bounds() -> Vec<(BigRational, BigRational)> {
        vec![(rat(0, 1), rat(1, 1)), (rat(0, 1), rat(1, 1))]
    }

    fn bilaplacian() -> SymbolPolynomial {
        parse_symbol("x1^4 + 2*x1^2*x2^2 + x2^4", &HashMap::new()).unwrap()
    }

    #[test]
    fn energy_1d_sanity() {
        // m = 1 symbol ξ², u = x(1−x): ∫u·(−u'') = ∫(u')² = 1/3
        let symbol = parse_symbol("x1^2", &HashMap::new()).unwrap();
        let x = Polynomial::variable(1, 0);
        let u_poly = x.mul(&Polynomial::one(1).sub(&x));
        let u = TestFunction::new(u_poly, vec![(rat(0, 1), rat(1, 1))], 1).unwrap();
        assert_eq!(energy(&symbol, &u).unwrap(), rat(1, 3));
    }

    #[test]
    fn energy_matches_dirichlet_form_oracle() {
        // ∫ u·Δ²u = ∫(Δu)² when u vanishes to order 2 at all faces
        let symbol = bilaplacian();
        let u = TestFunction::canonical_bump(unit_bounds(), 2).unwrap();
        let e = energy(&symbol, &u).unwrap();

        let laplacian = parse_symbol("x1^2 + x2^2", &HashMap::new()).unwrap();
        let neg_lap_u = laplacian.apply_operator(u.polynomial()).unwrap();
        let oracle = neg_lap_u
            .mul(&neg_lap_u)
            .integrate_box(u.bounds())
            .unwrap();
        assert_eq!(e, oracle);
        assert!(e.is_positive());
    }

    #[test]
    fn test_function_rejects_wrong_vanishing_order() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        // x(1-x)y(1-y) vanishes to order 1 only
        let p = x
            .mul(&Polynomial::one(2).sub(&x))
            .mul(&y)
            .mul(&Polynomial::one(2).sub(&y));
        assert!(TestFunction::new(p.clone(), unit_bounds(), 2).is_err());
        assert!(TestFunction::new(p, unit_bounds(), 1).is_ok());
    }

    #[test]
    fn weighted_mass_self_consistent() {
        let symbol = bilaplacian();
        let table = build_norm_table(&symbol, &DirectionGrid::new(64, 1e-6).unwrap()).unwrap();
        let u = TestFunction::canonical_bump(unit_bounds(), 2).unwrap();
        let sq = Domain::Polytope(ConvexPolytope::unit_square());
        let (coarse, _) = weighted_mass(&symbol, &table, &sq, &u, 1e-4).unwrap();
        let (fine, fine_err) = weighted_mass(&symbol, &table, &sq, &u, 1e-8).unwrap();
        assert!(coarse > 0.0 && fine > 0.0);
        assert!((coarse - fine).abs() < 1e-4 * fine + fine_err);
    }

    #[test]
    fn euclidean_and_finsler_mass_agree_for_bilaplacian() {
        let symbol = bilaplacian();
        let table = build_norm_table(&symbol, &DirectionGrid::new(64, 1e-6).unwrap()).unwrap();
        let u = TestFunction::canonical_bump(unit_bounds(), 2).unwrap();
        let sq = Domain::Polytope(ConvexPolytope::unit_square());
        let (a, _) = weighted_mass(&symbol, &table, &sq, &u, 1e-7).unwrap();
        let (b, _) = weighted_mass_euclidean(&symbol, &sq, &u, 1e-7).unwrap();
        assert!((a - b).abs() < 1e-6 * a, "finsler={a} euclidean={b}");
    }

    #[test]
    fn verify_halfspace_bilaplacian() {
        let symbol = bilaplacian();
        let table = build_norm_table(&symbol, &DirectionGrid::new(256, 1e-7).unwrap()).unwrap();
        let hs = HalfSpace::new(vec![0.0, 1.0]).unwrap();
        let u = TestFunction::canonical_bump(unit_bounds(), 2).unwrap();
        let report = verify_halfspace(&symbol, &table, &hs, &u, 1e-9).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.ratio >= 9.0 / 16.0);
        assert!(report.margin > 0.0);
    }

    #[test]
    fn ratio_invariant_under_scaling() {
        let symbol = bilaplacian();
        let table = build_norm_table(&symbol, &DirectionGrid::new(64, 1e-6).unwrap()).unwrap();
        let hs = HalfSpace::new(vec![0.0, 1.0]).unwrap();
        let u = TestFunction::canonical_bump(unit_bounds(), 2).unwrap();
        let r1 = verify_halfspace(&symbol, &table, &hs, &u, 1e-9).unwrap();
        // a power-of-two scale keeps every f64 operation exactly scaled
        let u8x = u.scaled(&rat(8, 1)).unwrap();
        let r2 = verify_halfspace(&symbol, &table, &hs, &u8x, 1e-9).unwrap();
        // both integrals scale by exactly 64; the ratio is bit-identical
        assert_eq!(r1.ratio, r2.ratio);
    }

    #[test]
    fn verify_convex_unit_square_bilaplacian() {
        let symbol = bilaplacian();
        let table = build_norm_table(&symbol, &DirectionGrid::new(256, 1e-7).unwrap()).unwrap();
        let u = TestFunction::canonical_bump(unit_bounds(), 2).unwrap();
        let report = verify_convex(&symbol, &table, &ConvexPolytope::unit_square(), &u, 1e-9)
            .unwrap();
        assert!(report.pass, "{report:?}");
        // s = c = 1: both bounds coincide at 9/16
        assert!((report.bound - 9.0 / 16.0).abs() < 1e-6);
        assert!((report.comparison_bound.unwrap() - 9.0 / 16.0).abs() < 1e-9);
    }

    #[test]
    fn duality_check_bilaplacian_never_violates() {
        let report = symbol_duality_check(&bilaplacian(), 2000, DEFAULT_SEED).unwrap();
        assert!(report.pass, "worst slack {}", report.worst_slack);
        assert!(report.worst_slack >= 0.0 - 1e-12);
    }

    #[test]
    fn duality_equality_case() {
        // H_0, ξ = ω = e1: both sides equal 1
        let h0 = parse_symbol("x1^4 + x2^4", &HashMap::new()).unwrap();
        let h = h0.evaluate(&[1.0, 0.0]).unwrap();
        let fstar = dual_norm(&h0, &[1.0, 0.0], 1e-10).unwrap();
        assert!((h * fstar.powi(4) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn remark_bounds_examples() {
        let r = remark_bounds_check(&Family::Example1, 0.0, 256).unwrap();
        assert!(r.pass, "{r:?}");
        // upper bound attained at the diagonal: worst upper margin ~ 0
        assert!(r.worst_upper_margin.abs() < 1e-6);

        let r = remark_bounds_check(&Family::Example1, 1.0, 64).unwrap();
        assert!(r.pass);
        let r = remark_bounds_check(&Family::Example2, 3.0, 64).unwrap();
        assert!(r.pass);
    }
}
