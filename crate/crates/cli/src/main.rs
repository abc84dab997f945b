//! `finrel`: constants, sweeps, dual-norm tables, 1-D quotients, and
//! inequality verification for homogeneous elliptic operator symbols.

mod svg;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Deserialize;

use finsler_rellich as fr;
use fr::constants::{
    constants_report, default_beta_grid, sweep_family, sweep_to_csv, ConstantsReport, Family,
};
use fr::finsler::{biconjugate, build_norm_table, finsler_f, DirectionGrid};
use fr::geometry::{ConvexPolytope, HalfSpace};
use fr::polynomial::parse_symbol;
use fr::rellich1d::{quotient_closed_form, quotient_numeric, QuadratureSpec};
use fr::verify::{
    symbol_duality_check, verify_convex, verify_halfspace, TestFunction, DEFAULT_SEED,
};
use fr::{Error, SymbolPolynomial};

#[derive(Parser)]
#[command(
    name = "finrel",
    version,
    about = "Finsler geometry of elliptic symbols and Rellich-inequality verification"
)]
struct Cli {
    /// JSON config file; command-line flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full constants report (lambda, Lambda, c, mu, M, s, A(m))
    Constants(ConstantsArgs),
    /// Sweep the example families over beta and emit CSV (and optionally SVG)
    Sweep(SweepArgs),
    /// Verify an inequality (half-space, convex polytope, or pointwise duality)
    Verify(VerifyArgs),
    /// Dump the dual-norm table (angle, fstar, fstarstar, f)
    Dual(DualArgs),
    /// One-dimensional trial quotient: closed form vs quadrature
    Quotient1d(QuotientArgs),
}

/// Symbol selection shared by most subcommands.
#[derive(Args, Clone, Default)]
struct SymbolArgs {
    /// Polynomial symbol text, e.g. "x1^4+2*x1^2*x2^2+x2^4"
    #[arg(long)]
    symbol: Option<String>,
    /// Built-in family: example1 (quartic) or example2 (sextic)
    #[arg(long)]
    family: Option<String>,
    /// Parameter binding k=v (repeatable); v may be a float or a/b rational
    #[arg(long = "param", value_name = "K=V")]
    param: Vec<String>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[command(flatten)]
    sym: SymbolArgs,
    /// Direction-table size (power of two)
    #[arg(long)]
    grid: Option<usize>,
    /// Grid interpolation tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json (default) or csv
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    sym: SymbolArgs,
    /// Number of log-spaced beta points (default 50)
    #[arg(long)]
    count: Option<usize>,
    /// Explicit comma-separated beta list (overrides --count)
    #[arg(long, allow_hyphen_values = true)]
    betas: Option<String>,
    /// Direction-table size per beta
    #[arg(long)]
    grid: Option<usize>,
    /// Grid interpolation tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render an SVG plot to this path
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sym: SymbolArgs,
    /// Check the pointwise duality inequality by seeded sampling
    #[arg(long)]
    duality: bool,
    /// Sample count for --duality
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed for --duality
    #[arg(long)]
    seed: Option<u64>,
    /// Half-space inward normal "nx,ny"
    #[arg(long)]
    halfspace: Option<String>,
    /// Domain preset (unit-square, halfspace:nx,ny) or polytope JSON file
    #[arg(long)]
    domain: Option<String>,
    /// Quadrature relative tolerance (also the bound-comparison slack)
    #[arg(long)]
    tol: Option<f64>,
    /// Direction-table size
    #[arg(long)]
    grid: Option<usize>,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DualArgs {
    #[command(flatten)]
    sym: SymbolArgs,
    /// Table resolution (power of two)
    #[arg(long)]
    grid: Option<usize>,
    /// Grid interpolation tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv (default) or json
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct QuotientArgs {
    /// Half-order m of the operator
    #[arg(short, long)]
    m: Option<u32>,
    /// Trial-family offset epsilon > 0
    #[arg(long)]
    eps: Option<f64>,
    /// Quadrature cut point delta in (0, 1)
    #[arg(long)]
    delta: Option<f64>,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Optional values loadable from a JSON config file; flags take precedence.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    symbol: Option<String>,
    family: Option<String>,
    param: Option<HashMap<String, f64>>,
    domain: Option<String>,
    halfspace: Option<String>,
    tol: Option<f64>,
    grid: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
    out: Option<String>,
    svg: Option<String>,
    format: Option<String>,
    count: Option<usize>,
    betas: Option<Vec<f64>>,
    m: Option<u32>,
    eps: Option<f64>,
    delta: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let code = match cli.command {
        Command::Constants(a) => cmd_constants(a, &cfg),
        Command::Sweep(a) => cmd_sweep(a, &cfg),
        Command::Verify(a) => cmd_verify(a, &cfg),
        Command::Dual(a) => cmd_dual(a, &cfg),
        Command::Quotient1d(a) => cmd_quotient(a, &cfg),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::NotElliptic(_) | Error::NegativeSymbol => 3,
        Error::Convergence(_) | Error::StaleTable => 4,
        _ => 2,
    }
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, String> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))
        }
    }
}

/// Parse a parameter value: either an exact rational "a/b" or a float.
fn parse_value(text: &str) -> Result<BigRational, Error> {
    let bad = || Error::Invalid(format!("cannot parse parameter value `{text}`"));
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(BigRational::new(n.into(), d.into()))
    } else {
        let v: f64 = text.trim().parse().map_err(|_| bad())?;
        BigRational::from_float(v).ok_or_else(bad)
    }
}

impl SymbolArgs {
    fn bindings(&self, cfg: &FileConfig) -> Result<HashMap<String, BigRational>, Error> {
        let mut map = HashMap::new();
        if let Some(file_params) = &cfg.param {
            for (k, v) in file_params {
                let r = BigRational::from_float(*v)
                    .ok_or_else(|| Error::Invalid(format!("non-finite parameter {k}")))?;
                map.insert(k.clone(), r);
            }
        }
        for kv in &self.param {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("--param expects K=V, got `{kv}`")))?;
            map.insert(k.trim().to_string(), parse_value(v)?);
        }
        Ok(map)
    }

    /// Resolve to a concrete symbol.
    fn resolve(&self, cfg: &FileConfig) -> Result<SymbolPolynomial, Error> {
        let bindings = self.bindings(cfg)?;
        if let Some(text) = self.symbol.as_ref().or(cfg.symbol.as_ref()) {
            return parse_symbol(text, &bindings);
        }
        let family = self.family_choice(cfg)?;
        let beta = bindings
            .get("b")
            .map(|r| rational_to_f64(r))
            .ok_or_else(|| Error::Invalid("family symbols need --param b=<value>".into()))?;
        family.symbol(beta)
    }

    fn family_choice(&self, cfg: &FileConfig) -> Result<Family, Error> {
        let name = self
            .family
            .as_ref()
            .or(cfg.family.as_ref())
            .ok_or_else(|| Error::Invalid("provide --symbol or --family".into()))?;
        match name.to_ascii_lowercase().as_str() {
            "example1" => Ok(Family::Example1),
            "example2" => Ok(Family::Example2),
            other => Err(Error::Invalid(format!(
                "unknown family `{other}` (expected example1 or example2)"
            ))),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn direction_grid(grid: Option<usize>, tol: Option<f64>, cfg: &FileConfig) -> Result<DirectionGrid, Error> {
    let count = grid.or(cfg.grid).unwrap_or(4096);
    let tol = tol.or(cfg.tol).unwrap_or(1e-6);
    DirectionGrid::new(count, tol)
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn constants_csv(r: &ConstantsReport) -> String {
    let mut s = String::from("symbol,m,lambda,Lambda,c,mu,M,s,A_m,theorem2_constant,comparison_constant\n");
    s.push_str(&format!(
        "\"{}\",{},{},{},{},{},{},{},{},{},{}\n",
        r.symbol,
        r.m,
        r.lambda,
        r.big_lambda,
        r.c,
        r.mu,
        r.big_m,
        r.s,
        r.a_m,
        r.theorem2_constant,
        r.comparison_constant
    ));
    s
}

fn cmd_constants(a: ConstantsArgs, cfg: &FileConfig) -> Result<u8, Error> {
    let symbol = a.sym.resolve(cfg)?;
    let grid = direction_grid(a.grid, a.tol, cfg)?;
    let report = constants_report(&symbol, &grid)?;
    let format = a.format.as_deref().or(cfg.format.as_deref()).unwrap_or("json");
    let text = match format {
        "csv" => constants_csv(&report),
        "json" => format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")),
        other => return Err(Error::Invalid(format!("unknown format `{other}`"))),
    };
    let out = a.out.or_else(|| cfg.out.as_ref().map(PathBuf::from));
    if let Some(p) = &out {
        std::fs::write(p, &text)?;
    }
    print!("{text}");
    Ok(0)
}

fn cmd_sweep(a: SweepArgs, cfg: &FileConfig) -> Result<u8, Error> {
    let family = if let Some(text) = a.sym.symbol.as_ref().or(cfg.symbol.as_ref()) {
        Family::Custom(text.clone())
    } else {
        a.sym.family_choice(cfg)?
    };
    let betas: Vec<f64> = if let Some(list) = &a.betas {
        list.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Invalid(format!("bad beta `{t}`")))
            })
            .collect::<Result<_, _>>()?
    } else if let Some(list) = &cfg.betas {
        list.clone()
    } else {
        default_beta_grid(a.count.or(cfg.count).unwrap_or(50))
    };
    let grid = direction_grid(a.grid, a.tol, cfg)?.with_cap(1 << 15);

    let points = sweep_family(&family, &betas, &grid);
    let failed = points.iter().filter(|p| p.row.is_none()).count();
    for p in &points {
        if let Some(err) = &p.error {
            eprintln!("warning: beta = {}: {err}", p.beta);
        }
    }
    if failed == points.len() {
        return Err(Error::Convergence("every sweep row failed"));
    }

    let csv = sweep_to_csv(&points);
    let out = a.out.or_else(|| cfg.out.as_ref().map(PathBuf::from));
    write_or_print(out.as_deref(), &csv)?;

    let svg_path = a.svg.or_else(|| cfg.svg.as_ref().map(PathBuf::from));
    if let Some(p) = svg_path {
        let title = match &family {
            Family::Example1 => "quartic family: s and c vs beta",
            Family::Example2 => "sextic family: s and c vs beta",
            Family::Custom(_) => "custom family: s and c vs beta",
        };
        std::fs::write(&p, svg::render_sweep(&points, title))?;
    }
    Ok(0)
}

fn parse_normal(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Invalid(format!("bad normal component `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 2 {
        return Err(Error::Invalid("normal must be nx,ny".into()));
    }
    Ok(parts)
}

enum DomainChoice {
    Half(HalfSpace),
    Poly(ConvexPolytope),
}

fn resolve_domain(a: &VerifyArgs, cfg: &FileConfig) -> Result<DomainChoice, Error> {
    if let Some(n) = a.halfspace.as_ref().or(cfg.halfspace.as_ref()) {
        return Ok(DomainChoice::Half(HalfSpace::new(parse_normal(n)?)?));
    }
    let spec = a
        .domain
        .as_ref()
        .or(cfg.domain.as_ref())
        .ok_or_else(|| Error::Invalid("provide --halfspace, --domain, or --duality".into()))?;
    if spec == "unit-square" {
        return Ok(DomainChoice::Poly(ConvexPolytope::unit_square()));
    }
    if let Some(rest) = spec.strip_prefix("halfspace:") {
        return Ok(DomainChoice::Half(HalfSpace::new(parse_normal(rest)?)?));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Invalid(format!("cannot read domain `{spec}`: {e}")))?;
    Ok(DomainChoice::Poly(ConvexPolytope::from_json(&text)?))
}

/// Exact-rational bounds of a unit-size bump box centered at `c`.
fn box_around(c: [f64; 2], half: f64) -> Result<Vec<(BigRational, BigRational)>, Error> {
    let exact = |v: f64| {
        BigRational::from_float(v).ok_or_else(|| Error::Invalid("non-finite box bound".into()))
    };
    Ok(vec![
        (exact(c[0] - half)?, exact(c[0] + half)?),
        (exact(c[1] - half)?, exact(c[1] + half)?),
    ])
}

/// Support box for the canonical bump inside the domain.
fn bump_box(choice: &DomainChoice) -> Result<Vec<(BigRational, BigRational)>, Error> {
    match choice {
        DomainChoice::Half(hs) => {
            // centered at 1.5·nu, half-width 1/2: the nearest corner keeps
            // nu·x >= 1.5 − sqrt(2)/2 > 0
            let n = hs.normal();
            box_around([1.5 * n[0], 1.5 * n[1]], 0.5)
        }
        DomainChoice::Poly(p) => {
            let c = p.interior_point()?;
            let c = [c[0], c[1]];
            // largest axis box around the interior point, backed off 10%
            let fits = |h: f64| {
                [[-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0], [1.0, 1.0]]
                    .iter()
                    .all(|s| p.contains(&[c[0] + s[0] * h, c[1] + s[1] * h]))
            };
            let mut lo = 0.0;
            let mut hi = 1.0;
            while fits(hi) && hi < 1e6 {
                hi *= 2.0;
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if fits(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if lo <= 0.0 {
                return Err(Error::EmptyInterior);
            }
            box_around(c, 0.9 * lo)
        }
    }
}

fn cmd_verify(a: VerifyArgs, cfg: &FileConfig) -> Result<u8, Error> {
    let symbol = a.sym.resolve(cfg)?;
    let out = a.out.clone().or_else(|| cfg.out.as_ref().map(PathBuf::from));

    if a.duality {
        let samples = a.samples.or(cfg.samples).unwrap_or(100_000);
        let seed = a.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
        let report = symbol_duality_check(&symbol, samples, seed)?;
        let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"));
        if let Some(p) = &out {
            std::fs::write(p, &text)?;
        }
        print!("{text}");
        return Ok(if report.pass { 0 } else { 5 });
    }

    let choice = resolve_domain(&a, cfg)?;
    let grid = DirectionGrid::new(a.grid.or(cfg.grid).unwrap_or(1024), 1e-6)?;
    let table = build_norm_table(&symbol, &grid)?;
    let tol = a.tol.or(cfg.tol).unwrap_or(1e-6);
    let u = TestFunction::canonical_bump(bump_box(&choice)?, symbol.half_order())?;
    let report = match &choice {
        DomainChoice::Half(hs) => verify_halfspace(&symbol, &table, hs, &u, tol)?,
        DomainChoice::Poly(p) => verify_convex(&symbol, &table, p, &u, tol)?,
    };
    let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"));
    if let Some(p) = &out {
        std::fs::write(p, &text)?;
    }
    print!("{text}");
    Ok(if report.pass { 0 } else { 5 })
}

fn cmd_dual(a: DualArgs, cfg: &FileConfig) -> Result<u8, Error> {
    let symbol = a.sym.resolve(cfg)?;
    let grid = DirectionGrid::new(a.grid.or(cfg.grid).unwrap_or(1024), a.tol.or(cfg.tol).unwrap_or(1e-6))?;
    let table = build_norm_table(&symbol, &grid)?;

    let mut rows = Vec::with_capacity(table.count);
    for k in 0..table.count {
        let theta = table.angle(k);
        let xi = [theta.cos(), theta.sin()];
        let fstar = table.values[k];
        let fss = biconjugate(&symbol, &xi, &table)?;
        let f = finsler_f(&symbol, &xi)?;
        rows.push((theta, fstar, fss, f));
    }

    let format = a.format.as_deref().or(cfg.format.as_deref()).unwrap_or("csv");
    let text = match format {
        "csv" => {
            let mut s = String::from("angle,fstar,fstarstar,f\n");
            for (theta, fstar, fss, f) in &rows {
                s.push_str(&format!("{theta},{fstar},{fss},{f}\n"));
            }
            s
        }
        "json" => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|(theta, fstar, fss, f)| {
                    serde_json::json!({"angle": theta, "fstar": fstar, "fstarstar": fss, "f": f})
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&objs).expect("serializable"))
        }
        other => return Err(Error::Invalid(format!("unknown format `{other}`"))),
    };
    let out = a.out.or_else(|| cfg.out.as_ref().map(PathBuf::from));
    write_or_print(out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_quotient(a: QuotientArgs, cfg: &FileConfig) -> Result<u8, Error> {
    let m = a.m.or(cfg.m).unwrap_or(2);
    let eps = a.eps.or(cfg.eps).unwrap_or(0.01);
    let delta = a.delta.or(cfg.delta).unwrap_or(1e-3);
    let closed = quotient_closed_form(m, eps)?;
    let numeric = quotient_numeric(m, eps, delta, QuadratureSpec::default())?;
    let a_m = fr::rellich_constant_f64(m);
    let report = serde_json::json!({
        "m": m,
        "epsilon": eps,
        "delta": delta,
        "closed_form": closed,
        "numeric": numeric,
        "abs_difference": (closed - numeric).abs(),
        "limit_A_m": a_m,
    });
    let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"));
    let out = a.out.or_else(|| cfg.out.as_ref().map(PathBuf::from));
    write_or_print(out.as_deref(), &text)?;
    Ok(0)
}
