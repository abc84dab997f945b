//! Independent oracles: seeded Monte-Carlo vs exact box integration, and
//! a dense brute-force recomputation of the mu/M constants that shares no
//! optimization code with the library path.

use std::f64::consts::TAU;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use finsler_rellich::constants::{mu_m, Family};
use finsler_rellich::finsler::{build_norm_table, DirectionGrid};
use finsler_rellich::polynomial::{rat, MultiIndex, Polynomial};
use finsler_rellich::SymbolPolynomial;

#[test]
fn monte_carlo_matches_exact_box_integral() {
    // p = 3x^2y - 2xy^3 + 1/2 on [0,1]x[0,2]
    let mut p = Polynomial::zero(2);
    p.add_term(MultiIndex::new(vec![2, 1]), rat(3, 1));
    p.add_term(MultiIndex::new(vec![1, 3]), rat(-2, 1));
    p.add_term(MultiIndex::new(vec![0, 0]), rat(1, 2));
    let bounds = vec![(rat(0, 1), rat(1, 1)), (rat(0, 1), rat(2, 1))];
    let exact = p.integrate_box(&bounds).unwrap().to_f64().unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(0x0BAC1E);
    let n = 400_000usize;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n {
        let x = rng.random::<f64>();
        let y = 2.0 * rng.random::<f64>();
        let v = p.evaluate_f64(&[x, y]).unwrap();
        sum += v;
        sum_sq += v * v;
    }
    let area = 2.0;
    let mean = sum / n as f64;
    let var = (sum_sq / n as f64 - mean * mean).max(0.0);
    let mc = area * mean;
    let sigma = area * (var / n as f64).sqrt();
    assert!(
        (mc - exact).abs() < 5.0 * sigma + 1e-12,
        "mc={mc} exact={exact} sigma={sigma}"
    );
}

/// Dense-grid brute force for mu and M using only the defining sup/inf
/// formulas on uniform angle grids — no golden-section, no tables, no
/// shared code with `mu_m`.
fn brute_mu_m(symbol: &SymbolPolynomial, n: usize) -> (f64, f64) {
    let m = symbol.half_order();
    let two_m = (2 * m) as i32;
    // H and F = H^{1/2m} on the circle
    let h: Vec<f64> = (0..n).map(|k| symbol.on_circle(TAU * k as f64 / n as f64)).collect();
    let f: Vec<f64> = h.iter().map(|v| v.powf(1.0 / (2.0 * m as f64))).collect();
    // cosine of angle differences, indexed by (i - j) mod n
    let cos_diff: Vec<f64> = (0..n).map(|d| (TAU * d as f64 / n as f64).cos()).collect();

    // F*(omega_j) = max_i xi_i . omega_j / F(xi_i)
    let fstar: Vec<f64> = (0..n)
        .map(|j| {
            let mut best = f64::NEG_INFINITY;
            for i in 0..n {
                let v = cos_diff[(i + n - j) % n] / f[i];
                if v > best {
                    best = v;
                }
            }
            best
        })
        .collect();
    let inv_fstar_pow: Vec<f64> = fstar.iter().map(|v| v.powi(-two_m)).collect();

    let mut mu = f64::INFINITY;
    let mut big_m = f64::NEG_INFINITY;
    for i in 0..n {
        // G(xi_i) = mean_j (xi_i . omega_j)^{2m} / F*(omega_j)^{2m}
        let mut g = 0.0;
        // F**(xi_i) = max_j xi_i . omega_j / F*(omega_j)
        let mut fss = f64::NEG_INFINITY;
        for j in 0..n {
            let c = cos_diff[(i + n - j) % n];
            g += c.powi(two_m) * inv_fstar_pow[j];
            let v = c / fstar[j];
            if v > fss {
                fss = v;
            }
        }
        g /= n as f64;
        mu = mu.min(g / fss.powi(two_m));
        big_m = big_m.max(g / h[i]);
    }
    (mu, big_m)
}

#[test]
fn mu_m_matches_brute_force() {
    for beta in [0.0, 5.0] {
        let symbol = Family::Example1.symbol(beta).unwrap();
        let table = build_norm_table(&symbol, &DirectionGrid::new(4096, 1e-6).unwrap()).unwrap();
        let (mu, big_m) = mu_m(&symbol, &table, 1e-8).unwrap();
        let (bmu, bbig_m) = brute_mu_m(&symbol, 1 << 13);
        assert!(
            (mu - bmu).abs() < 2e-3 * bmu,
            "beta={beta}: mu={mu} brute={bmu}"
        );
        assert!(
            (big_m - bbig_m).abs() < 2e-3 * bbig_m,
            "beta={beta}: M={big_m} brute={bbig_m}"
        );
    }
}

#[test]
fn brute_force_recovers_collapse_point() {
    // at beta = 1 the quartic family is the bilaplacian: mu = M = 3/8
    let symbol = Family::Example1.symbol(1.0).unwrap();
    let (mu, big_m) = brute_mu_m(&symbol, 1 << 12);
    assert!((mu - 0.375).abs() < 1e-3, "mu={mu}");
    assert!((big_m - 0.375).abs() < 1e-3, "M={big_m}");
}
