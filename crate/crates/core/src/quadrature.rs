//! Quadrature building blocks: Gauss-Legendre nodes, the periodic
//! trapezoidal rule, and adaptive tensor-product integration over boxes
//! with dyadic subdivision.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::parallel::{map_range, pairwise_sum};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_n'(x) via the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CACHE.get_or_init(|| gauss_legendre(16))
}

fn gl32() -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CACHE.get_or_init(|| gauss_legendre(32))
}

/// Composite Gauss-Legendre integral of `f` on `[a, b]` with `panels`
/// equal panels of the given order.
pub fn integrate_1d(f: &dyn Fn(f64) -> f64, a: f64, b: f64, order: usize, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut parts = Vec::with_capacity(panels);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut s = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            s += w * f(mid + half * x);
        }
        parts.push(s * half);
    }
    pairwise_sum(&parts)
}

/// Mean of uniformly sampled values of a 2π-periodic function, i.e. the
/// normalized trapezoidal rule `(1/2π)∫f dθ`. Spectrally accurate for
/// smooth integrands.
pub fn periodic_mean(values: &[f64]) -> f64 {
    pairwise_sum(values) / values.len() as f64
}

/// One rectangular cell of the adaptive scheme.
#[derive(Clone, Copy)]
struct Cell {
    lo: [f64; 2],
    hi: [f64; 2],
}

fn tensor_gl(f: &(dyn Fn(f64, f64) -> f64 + Sync), cell: &Cell, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let (nodes, weights) = rule;
    let cx = 0.5 * (cell.lo[0] + cell.hi[0]);
    let cy = 0.5 * (cell.lo[1] + cell.hi[1]);
    let hx = 0.5 * (cell.hi[0] - cell.lo[0]);
    let hy = 0.5 * (cell.hi[1] - cell.lo[1]);
    let mut sum = 0.0;
    for (xi, wi) in nodes.iter().zip(weights) {
        let x = cx + hx * xi;
        let mut row = 0.0;
        for (yj, wj) in nodes.iter().zip(weights) {
            row += wj * f(x, cy + hy * yj);
        }
        sum += wi * row;
    }
    sum * hx * hy
}

/// Adaptive tensor Gauss-Legendre integration of `f` over a 2-D box.
///
/// Each cell is estimated with a 32-point and a 16-point tensor rule and
/// refined greedily against the global error target: every round splits
/// in four the cells whose estimated error exceeds an equal per-cell
/// share of the target, so refinement concentrates along kinks and steep
/// regions without over-resolving smooth ones. Cell estimates are
/// evaluated in parallel but accumulated in a fixed order, so the result
/// is deterministic.
///
/// Returns `(value, error_estimate)`; errors out if the relative target is
/// not met within `max_cells`.
pub fn adaptive_box_2d(
    f: &(dyn Fn(f64, f64) -> f64 + Sync),
    lo: [f64; 2],
    hi: [f64; 2],
    rel_tol: f64,
    max_cells: usize,
) -> Result<(f64, f64)> {
    struct Entry {
        cell: Cell,
        value: f64,
        err: f64,
    }
    let estimate = |cells: Vec<Cell>| -> Vec<Entry> {
        let est: Vec<(f64, f64)> = map_range(cells.len(), |i| {
            let fine = tensor_gl(f, &cells[i], gl32());
            let coarse = tensor_gl(f, &cells[i], gl16());
            (fine, (fine - coarse).abs())
        });
        cells
            .into_iter()
            .zip(est)
            .map(|(cell, (value, err))| Entry { cell, value, err })
            .collect()
    };

    let mut entries = estimate(vec![Cell { lo, hi }]);
    let scale = entries[0].value.abs().max(1e-300);
    let target = rel_tol * scale;
    loop {
        let errs: Vec<f64> = entries.iter().map(|e| e.err).collect();
        let total_err = pairwise_sum(&errs);
        if total_err <= target {
            break;
        }
        // equal per-cell share; the factor 2 leaves headroom for the kept cells
        let threshold = target / (2.0 * entries.len() as f64);
        let mut keep = Vec::with_capacity(entries.len());
        let mut split = Vec::new();
        for e in entries {
            if e.err > threshold {
                split.push(e.cell);
            } else {
                keep.push(e);
            }
        }
        if split.is_empty() || keep.len() + 4 * split.len() > max_cells {
            return Err(Error::Convergence("adaptive box quadrature"));
        }
        let mut children = Vec::with_capacity(4 * split.len());
        for cell in split {
            let mx = 0.5 * (cell.lo[0] + cell.hi[0]);
            let my = 0.5 * (cell.lo[1] + cell.hi[1]);
            children.push(Cell { lo: cell.lo, hi: [mx, my] });
            children.push(Cell { lo: [mx, cell.lo[1]], hi: [cell.hi[0], my] });
            children.push(Cell { lo: [cell.lo[0], my], hi: [mx, cell.hi[1]] });
            children.push(Cell { lo: [mx, my], hi: cell.hi });
        }
        keep.extend(estimate(children));
        entries = keep;
    }

    let values: Vec<f64> = entries.iter().map(|e| e.value).collect();
    let errs: Vec<f64> = entries.iter().map(|e| e.err).collect();
    Ok((pairwise_sum(&values), pairwise_sum(&errs)))
}
