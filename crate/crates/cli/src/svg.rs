//! Hand-rolled SVG emission for sweep plots: two polylines (s solid,
//! c dashed) over a log-compressed β axis, with axes, ticks, and a
//! legend. Byte-deterministic for a given input.

use finsler_rellich::SweepPoint;
use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const ML: f64 = 70.0; // left margin
const MR: f64 = 24.0;
const MT: f64 = 34.0;
const MB: f64 = 58.0;

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}

/// Render the sweep as a standalone SVG document. The x axis is
/// log10(1 + β), which spreads the (−1, ∞) parameter range evenly; the
/// solid curve is s = μ/M and the dashed curve is c = λ/Λ.
pub fn render_sweep(points: &[SweepPoint], title: &str) -> String {
    let rows: Vec<(f64, f64, f64)> = points
        .iter()
        .filter_map(|p| p.row.as_ref())
        .map(|r| ((1.0 + r.beta).log10(), r.s, r.c))
        .collect();

    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut ymax = 1.0f64;
    for &(x, s, c) in &rows {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymax = ymax.max(s).max(c);
    }
    if rows.is_empty() {
        xmin = 0.0;
        xmax = 1.0;
    }
    if xmax - xmin < 1e-12 {
        xmax = xmin + 1.0;
    }
    let ymax = ymax * 1.05;

    let px = |x: f64| ML + (x - xmin) / (xmax - xmin) * (WIDTH - ML - MR);
    let py = |y: f64| HEIGHT - MB - y / ymax * (HEIGHT - MT - MB);

    let polyline = |pick: fn(&(f64, f64, f64)) -> f64| -> String {
        let mut s = String::new();
        for r in &rows {
            let _ = write!(s, "{},{} ", fmt(px(r.0)), fmt(py(pick(r))));
        }
        s.trim_end().to_string()
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
        fmt(0.5 * WIDTH),
        escape(title)
    );

    // axes
    let x0 = fmt(ML);
    let x1 = fmt(WIDTH - MR);
    let y0 = fmt(HEIGHT - MB);
    let y1 = fmt(MT);
    let _ = writeln!(
        out,
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        out,
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\" stroke-width=\"1\"/>"
    );

    // ticks and labels
    let n_ticks = 5usize;
    for i in 0..=n_ticks {
        let t = i as f64 / n_ticks as f64;
        let xv = xmin + t * (xmax - xmin);
        let xp = fmt(px(xv));
        let _ = writeln!(
            out,
            "  <line x1=\"{xp}\" y1=\"{y0}\" x2=\"{xp}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
            fmt(HEIGHT - MB + 5.0)
        );
        let _ = writeln!(
            out,
            "  <text x=\"{xp}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            fmt(HEIGHT - MB + 19.0),
            fmt(xv)
        );
        let yv = t * ymax;
        let yp = fmt(py(yv));
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{yp}\" x2=\"{x0}\" y2=\"{yp}\" stroke=\"black\" stroke-width=\"1\"/>",
            fmt(ML - 5.0)
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            fmt(ML - 9.0),
            fmt(py(yv) + 4.0),
            fmt(yv)
        );
    }
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">log10(1 + beta)</text>",
        fmt(0.5 * (ML + WIDTH - MR)),
        fmt(HEIGHT - 14.0)
    );
    let _ = writeln!(
        out,
        "  <text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">constant ratio</text>",
        fmt(0.5 * (MT + HEIGHT - MB)),
        fmt(0.5 * (MT + HEIGHT - MB))
    );

    // curves
    if !rows.is_empty() {
        let _ = writeln!(
            out,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.8\"/>",
            polyline(|r| r.1)
        );
        let _ = writeln!(
            out,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.8\" stroke-dasharray=\"6 4\"/>",
            polyline(|r| r.2)
        );
    }

    // legend
    let lx = WIDTH - MR - 170.0;
    let ly = MT + 12.0;
    let _ = writeln!(
        out,
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f77b4\" stroke-width=\"1.8\"/>",
        fmt(lx),
        fmt(ly),
        fmt(lx + 34.0),
        fmt(ly)
    );
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">s = mu/M</text>",
        fmt(lx + 42.0),
        fmt(ly + 4.0)
    );
    let _ = writeln!(
        out,
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d62728\" stroke-width=\"1.8\" stroke-dasharray=\"6 4\"/>",
        fmt(lx),
        fmt(ly + 20.0),
        fmt(lx + 34.0),
        fmt(ly + 20.0)
    );
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">c = lambda/Lambda</text>",
        fmt(lx + 42.0),
        fmt(ly + 24.0)
    );

    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
