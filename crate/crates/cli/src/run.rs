//! Subcommands and output formatting.
//!
//! JSON outputs are `{"config": ..., "result": ...}`; CSV and table outputs start with a
//! `# config: ...` line; JSON-lines scans start with a `{"config": ..., "scan": ...}` line.
//! Only the header depends on scheduling settings such as the worker count.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{ArgMatches, Args, Parser, Subcommand};
use num_complex::Complex64;
use polyzeta::analytic::{count_zeros, localize_zeros_with};
use polyzeta::counting::{density_sweep_with, ingham_integral_with, lm_weighted_sum, mean_square_integral_series, mean_square_integral_with};
use polyzeta::gallery::{self, Params};
use polyzeta::geometry::Contour;
use polyzeta::poly::{as_analytic, PolyClass};
use polyzeta::rouche::{
    aux_monomial_target, aux_monomial_target_scaled, aux_poly_target, jet_log_solve, rouche_check, solve_theta,
    suggest_alpha, tau_scan_with, TauGrid,
};
use polyzeta::zeta::zeta;
use polyzeta::{Analytic, Circle, Composed, Polynomial, Rect, Series};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{parse_expression, parse_polynomial, CliError, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "polyzeta", version, about = "Zeros of polynomials in the derivatives of zeta")]
pub struct Cli {
    /// key=value configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Configuration override, applied after the file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Worker threads (0: one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub out: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

const GLOBAL_ARGS: &[&str] = &["config", "set", "workers", "seed", "out"];

/// A function given either as an expression over zeta or as a gallery entry.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Polynomial in D0, D1, ... (the derivatives of zeta).
    #[arg(long, conflicts_with = "gallery")]
    pub expr: Option<String>,
    /// Gallery entry name.
    #[arg(long)]
    pub gallery: Option<String>,
    /// Gallery parameter.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
}

/// Composition, centre and circle for the Rouche comparison.
#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    #[arg(long, default_value = "D1")]
    pub expr: String,
    /// Disk centre, which is also the prescribed zero of the target.
    #[arg(long, default_value = "0.75+0.5i", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value_t = 0.1)]
    pub radius: f64,
    /// Derivative order of the monomial target (default: highest derivative present).
    #[arg(long)]
    pub k: Option<usize>,
    /// Constant factor applied to the monomial target.
    #[arg(long, allow_hyphen_values = true)]
    pub amplitude: Option<String>,
    /// Circle samples (overrides rouche.samples).
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value and derivatives at a point.
    Eval {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 0)]
        derivs: usize,
    },
    /// Zero count in a rectangle or disk, optionally with locations.
    Count {
        #[command(flatten)]
        source: Source,
        /// sigma_min,sigma_max,t_min,t_max
        #[arg(long, allow_hyphen_values = true, conflicts_with = "disk")]
        rect: Option<String>,
        /// re,im,radius
        #[arg(long, allow_hyphen_values = true)]
        disk: Option<String>,
        #[arg(long)]
        localize: bool,
        /// Compare the weighted sum of real parts with its prediction for zeta^(K).
        #[arg(long, value_name = "K", requires = "localize")]
        lm: Option<u32>,
    },
    /// Counts in (sigma_1, sigma_2) x (0, T) over a grid of heights, with a line fit.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "0.51,0.99", allow_hyphen_values = true)]
        strip: String,
        #[arg(long = "T", default_value = "100,200,400")]
        heights: String,
        #[arg(long, conflicts_with = "json")]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// One Rouche certificate for the shifted composition.
    RoucheDemo {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
    },
    /// Rouche certificates over a grid of shifts, as JSON lines.
    TauScan {
        #[command(flatten)]
        target: TargetArgs,
        /// lo,hi
        #[arg(long, default_value = "0,500")]
        range: String,
        /// Grid step (overrides tau.step).
        #[arg(long)]
        step: Option<f64>,
        /// Append to this file batch by batch, resuming if it already holds a scan.
        #[arg(long, value_name = "PATH")]
        checkpoint: Option<PathBuf>,
    },
    /// Logarithm of a jet, and the theta equation of a polynomial at a centre.
    LemmaSolve {
        /// c_0,c_1,...,c_m
        #[arg(long, allow_hyphen_values = true)]
        jet: Option<String>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "expr")]
        alpha: Option<String>,
        /// Rectangle searched for a centre when --alpha is absent.
        #[arg(long, default_value = "0.51,0.99,0,100", allow_hyphen_values = true)]
        rect: String,
    },
    /// (1/T) int_0^T |f(sigma + it)|^2 dt.
    Meanvalue {
        #[command(flatten)]
        source: Source,
        /// Dirichlet series as JSON, instead of --expr/--gallery.
        #[arg(long, conflicts_with_all = ["expr", "gallery"])]
        series: Option<String>,
        #[arg(long, default_value_t = 0.75)]
        sigma: f64,
        #[arg(long = "T", default_value_t = 2000.0)]
        height: f64,
    },
    /// (1/T) int_1^T zeta^(u)(eta + it) zeta^(v)(theta - it) dt.
    Ingham {
        #[arg(long, default_value_t = 0)]
        u: u32,
        #[arg(long, default_value_t = 0)]
        v: u32,
        #[arg(long, default_value_t = 0.8)]
        eta: f64,
        #[arg(long, default_value_t = 0.8)]
        theta: f64,
        #[arg(long = "T", default_value_t = 2000.0)]
        height: f64,
    },
    /// Catalogue of example functions.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum GalleryAction {
    List,
    Describe {
        name: String,
    },
    /// Counts zeros in every claimed region.
    Check {
        name: String,
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
    /// Disk counts for vertical shifts of the remark1 entry.
    Remark1 {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        tau: Vec<f64>,
        /// Number of seeded random shifts in [0, 1000].
        #[arg(long)]
        random: Option<usize>,
    },
}

fn cj(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

/// A complex constant in expression syntax, e.g. `0.5+14.13i`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let p = parse_polynomial(text)?;
    if p.total_degree() > 0 {
        return Err(CliError::Config(format!("`{text}` is not a constant")));
    }
    match p.terms().values().next() {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some(s) => s.as_constant().ok_or_else(|| CliError::Config(format!("`{text}` is not a constant"))),
    }
}

fn parse_list(text: &str, n: Option<usize>) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = text
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| CliError::Config(format!("`{text}`: {e}"))))
        .collect::<Result<_, _>>()?;
    match n {
        Some(n) if v.len() != n => Err(CliError::Config(format!("`{text}`: expected {n} comma-separated numbers"))),
        _ => Ok(v),
    }
}

fn parse_rect(text: &str) -> Result<Rect, CliError> {
    let v = parse_list(text, Some(4))?;
    Ok(Rect::new(v[0], v[1], v[2], v[3])?)
}

fn gallery_params(raw: &[String]) -> Result<Params, CliError> {
    let mut out = Params::new();
    for kv in raw {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("`{kv}`: expected NAME=VALUE")))?;
        out.insert(k.trim().to_string(), parse_complex(v)?);
    }
    Ok(out)
}

fn is_plain_zeta(p: &Polynomial) -> bool {
    Polynomial::variable(0, 1).map(|z| z == p.trimmed()).unwrap_or(false)
}

fn resolve(source: &Source, cfg: &RunConfig) -> Result<(Analytic, Option<Polynomial>), CliError> {
    match (&source.expr, &source.gallery) {
        (Some(e), None) => {
            if !source.params.is_empty() {
                return Err(CliError::Config("--param applies to --gallery only".into()));
            }
            let f = parse_expression(e, cfg.zeta)?;
            let name = e.trim().to_string();
            Ok((as_analytic(&f).with_name(name), Some(f.poly)))
        }
        (None, Some(g)) => Ok((gallery::build_with(g, &gallery_params(&source.params)?, cfg.zeta)?, None)),
        _ => Err(CliError::Config("give exactly one of --expr or --gallery".into())),
    }
}

fn json_doc(cfg: &RunConfig, result: Value) -> String {
    let doc = json!({"config": cfg.to_json(), "result": result});
    serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
}

fn text_doc(cfg: &RunConfig, body: &str) -> String {
    format!("# config: {}\n{body}", cfg.to_json())
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn rouche_setup(t: &TargetArgs, cfg: &RunConfig) -> Result<(Composed, Analytic, Circle, Value), CliError> {
    let f = parse_expression(&t.expr, cfg.zeta)?;
    let alpha = parse_complex(&t.alpha)?;
    let disk = Circle::new(alpha, t.radius)?;
    let (a, kind) = match f.poly.classify() {
        PolyClass::MonomialWithDerivative => {
            let highest = f.poly.terms().keys().next().and_then(|d| d.iter().rposition(|&x| x > 0)).unwrap_or(1);
            let k = t.k.unwrap_or(highest);
            let a = match &t.amplitude {
                Some(amp) => aux_monomial_target_scaled(alpha, k, parse_complex(amp)?)?,
                None => aux_monomial_target(alpha, k)?,
            };
            (a, json!({"kind": "monomial", "k": k, "amplitude": t.amplitude}))
        }
        PolyClass::NonMonomial => (aux_poly_target(&f.poly, alpha)?, json!({"kind": "polynomial"})),
        PolyClass::MonomialPlain => {
            return Err(CliError::Config(
                "a single power of zeta has no nonvanishing comparison target; use a derivative or a sum".into(),
            ))
        }
    };
    let desc = json!({
        "expr": f.poly.to_string(),
        "alpha": cj(alpha),
        "radius": t.radius,
        "target": kind,
        "samples": cfg.rouche_samples,
        "zeta.truncation_N": cfg.to_json()["zeta.truncation_N"],
        "zeta.bernoulli_terms": cfg.zeta.bernoulli_terms,
    });
    Ok((f, a, disk, desc))
}

fn run_tau_scan(target: &TargetArgs, range: &str, cfg: &RunConfig, checkpoint: Option<&Path>) -> Result<(), CliError> {
    let (f, a, disk, mut desc) = rouche_setup(target, cfg)?;
    let r = parse_list(range, Some(2))?;
    let grid = TauGrid::new(r[0], r[1], cfg.tau_step)?;
    desc["range"] = json!([r[0], r[1]]);
    desc["step"] = json!(cfg.tau_step);
    desc["grid_points"] = json!(grid.len);
    let header = json!({"config": cfg.to_json(), "scan": desc});

    let mut done: Vec<String> = Vec::new();
    let mut passes: Vec<f64> = Vec::new();
    let sink: Box<dyn Write> = match checkpoint.or(cfg.output.as_deref().map(Path::new)) {
        Some(path) => {
            if let Some(cp) = checkpoint.filter(|p| p.exists()) {
                let file = BufReader::new(File::open(cp)?);
                for (n, line) in file.lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let v: Value = serde_json::from_str(&line)
                        .map_err(|e| CliError::Config(format!("checkpoint line {}: {e}", n + 1)))?;
                    if n == 0 {
                        if v.get("scan") != Some(&header["scan"]) {
                            return Err(CliError::Config("checkpoint belongs to a different scan".into()));
                        }
                    } else if v.get("tau").is_some() {
                        if v["pass"] == json!(true) {
                            passes.push(v["tau"].as_f64().unwrap_or(f64::NAN));
                        }
                        done.push(line);
                    }
                }
            }
            let mut file = OpenOptions::new().create(true).write(true).truncate(true).open(path)?;
            writeln!(file, "{header}")?;
            for line in &done {
                writeln!(file, "{line}")?;
            }
            file.flush()?;
            Box::new(file)
        }
        None => {
            let mut out = std::io::stdout();
            writeln!(out, "{header}")?;
            Box::new(out)
        }
    };
    let mut sink = sink;
    let mut io_err: Option<std::io::Error> = None;
    let scan = tau_scan_with(&f, &a, &disk, &grid, done.len(), &cfg.scan_options(), &mut |batch| {
        for c in batch {
            if c.pass {
                passes.push(c.tau);
            }
            if let Err(e) = writeln!(sink, "{}", c.to_json()) {
                io_err.get_or_insert(e);
            }
        }
        if let Err(e) = sink.flush() {
            io_err.get_or_insert(e);
        }
        Ok(())
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let total = done.len() + scan.certificates.len();
    let summary = json!({"summary": {
        "grid_points": total,
        "passes": passes.len(),
        "hit_fraction": if total == 0 { 0.0 } else { passes.len() as f64 / total as f64 },
        "pass_taus": passes,
    }});
    writeln!(sink, "{summary}")?;
    sink.flush()?;
    Ok(())
}

fn run_gallery(action: &GalleryAction, cfg: &RunConfig) -> Result<String, CliError> {
    let result = match action {
        GalleryAction::List => {
            json!(gallery::entries().iter().map(|e| json!({"name": e.name, "formula": e.formula})).collect::<Vec<_>>())
        }
        GalleryAction::Describe { name } => gallery::describe(name)?.to_json(),
        GalleryAction::Check { name, params } => {
            let entry = gallery::describe(name)?;
            let f = gallery::build_with(name, &gallery_params(params)?, cfg.zeta)?;
            let opts = cfg.count_options();
            let mut rows = Vec::new();
            let mut all = true;
            for claim in &entry.claims {
                let row = match count_zeros(&f, &claim.region.into(), &opts) {
                    Ok(r) => {
                        let holds = claim.holds(r.count);
                        all &= holds;
                        json!({"claim": claim.to_json(), "count": r.count, "holds": holds})
                    }
                    Err(e) => {
                        all = false;
                        json!({"claim": claim.to_json(), "error": e.to_string(), "holds": false})
                    }
                };
                rows.push(row);
            }
            json!({"name": entry.name, "claims": rows, "all_hold": all})
        }
        GalleryAction::Remark1 { tau, random } => {
            let mut shifts = tau.clone();
            if let Some(n) = random {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                shifts.extend((0..*n).map(|_| rng.gen_range(0.0..1000.0)));
            }
            if shifts.is_empty() {
                return Err(CliError::Config("give --tau or --random".into()));
            }
            let rows: Vec<Value> = shifts
                .iter()
                .map(|&t| match gallery::remark1_disk_check(t) {
                    Ok(r) => json!({"tau": t, "count": r.count, "pass": r.count >= 1}),
                    Err(e) => json!({"tau": t, "error": e.to_string(), "pass": false}),
                })
                .collect();
            let all = rows.iter().all(|r| r["pass"] == json!(true));
            json!({"disk": {"re": gallery::REMARK1_CENTER, "im": 0.0, "radius": gallery::REMARK1_RADIUS}, "shifts": rows, "all_pass": all})
        }
    };
    Ok(json_doc(cfg, result))
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Result<(), CliError> {
    let text = match cmd {
        Command::Eval { source, at, derivs } => {
            let (f, _) = resolve(source, cfg)?;
            let s = parse_complex(at)?;
            let d = f.derivatives(s, *derivs)?;
            json_doc(
                cfg,
                json!({"function": f.name(), "s": cj(s), "value": cj(d[0]), "derivatives": d.iter().map(|z| cj(*z)).collect::<Vec<_>>()}),
            )
        }
        Command::Count { source, rect, disk, localize, lm } => {
            let (f, _) = resolve(source, cfg)?;
            let contour: Contour<f64> = match (rect, disk) {
                (Some(r), None) => parse_rect(r)?.into(),
                (None, Some(d)) => {
                    let v = parse_list(d, Some(3))?;
                    Circle::new(Complex64::new(v[0], v[1]), v[2])?.into()
                }
                _ => return Err(CliError::Config("give exactly one of --rect or --disk".into())),
            };
            let report = match (*localize, contour) {
                (false, c) => count_zeros(&f, &c, &cfg.count_options())?,
                (true, Contour::Rect(r)) => localize_zeros_with(&f, &r, &cfg.localize_options())?,
                (true, Contour::Circle(d)) => localize_zeros_with(&f, &d.bounding_rect(), &cfg.localize_options())?,
            };
            let mut result = json!({"function": f.name(), "report": report.to_json()});
            if *localize {
                result["fully_resolved"] = json!(report.fully_resolved());
            }
            if let (Some(k), Contour::Rect(r)) = (lm, contour) {
                let (empirical, predicted) = lm_weighted_sum(*k, r.t_max, &report)?;
                let band = cfg.lm_band_factor * r.t_max.ln();
                result["lm"] = json!({
                    "k": k,
                    "T": r.t_max,
                    "empirical": empirical,
                    "predicted": predicted,
                    "band": band,
                    "within_band": (empirical - predicted).abs() <= band,
                });
            }
            json_doc(cfg, result)
        }
        Command::Sweep { source, strip, heights, table, json } => {
            let (f, _) = resolve(source, cfg)?;
            let st = parse_list(strip, Some(2))?;
            let grid = parse_list(heights, None)?;
            let sweep = density_sweep_with(&f, (st[0], st[1]), &grid, &cfg.count_options())?;
            if *json {
                json_doc(cfg, sweep.to_json())
            } else if *table {
                text_doc(cfg, &sweep.to_table())
            } else {
                text_doc(cfg, &sweep.to_csv())
            }
        }
        Command::RoucheDemo { target, tau } => {
            let (f, a, disk, desc) = rouche_setup(target, cfg)?;
            let z = as_analytic(&f.with_shift(*tau));
            let mut cert = rouche_check(&z, &a, &disk, cfg.rouche_samples)?;
            cert.tau = *tau;
            if let Some(zero) = cert.zero_inside {
                let mapped = zero.location + Complex64::new(0.0, *tau);
                cert.mapped_zero = Some(mapped);
                cert.mapped_residual = f.eval(mapped).ok().map(|v| v.norm());
            }
            json_doc(cfg, json!({"setup": desc, "target": a.name(), "certificate": cert.to_json()}))
        }
        Command::TauScan { target, range, checkpoint, .. } => {
            return run_tau_scan(target, range, cfg, checkpoint.as_deref());
        }
        Command::LemmaSolve { jet, expr, alpha, rect } => {
            if jet.is_none() && expr.is_none() {
                return Err(CliError::Config("give --jet and/or --expr".into()));
            }
            let mut result = json!({});
            if let Some(j) = jet {
                let c: Vec<Complex64> = j.split(',').map(parse_complex).collect::<Result<_, _>>()?;
                let b = jet_log_solve(&c)?;
                result["jet"] = json!(c.iter().map(|z| cj(*z)).collect::<Vec<_>>());
                result["b"] = json!(b.iter().map(|z| cj(*z)).collect::<Vec<_>>());
            }
            if let Some(e) = expr {
                let p = parse_polynomial(e)?;
                let alpha = match alpha {
                    Some(a) => parse_complex(a)?,
                    None => suggest_alpha(&p, &parse_rect(rect)?)?,
                };
                let sol = solve_theta(&p, alpha)?;
                result["theta"] = json!({
                    "polynomial": p.to_string(),
                    "alpha": cj(alpha),
                    "theta": sol.theta.iter().map(|z| cj(*z)).collect::<Vec<_>>(),
                    "residual": sol.residual,
                    "solved_for": sol.solved_for,
                    "attempt": sol.attempt,
                });
            }
            json_doc(cfg, result)
        }
        Command::Meanvalue { source, series, sigma, height } => {
            let r = if let Some(text) = series {
                let v: Value = serde_json::from_str(text).map_err(|e| CliError::Config(format!("--series: {e}")))?;
                mean_square_integral_series(&Series::from_json(&v)?, *sigma, *height, cfg.quad_tol)?
            } else {
                let (f, poly) = resolve(source, cfg)?;
                let r = mean_square_integral_with(&f, *sigma, *height, cfg.quad_tol)?;
                let zeta_k0 = source.gallery.as_deref() == Some("zeta_k")
                    && gallery_params(&source.params)?.get("k") == Some(&Complex64::new(0.0, 0.0));
                if poly.as_ref().is_some_and(is_plain_zeta) || zeta_k0 {
                    r.with_prediction(zeta(Complex64::new(2.0 * sigma, 0.0), &cfg.zeta)?)
                } else {
                    r
                }
            };
            json_doc(cfg, r.to_json())
        }
        Command::Ingham { u, v, eta, theta, height } => {
            let r = ingham_integral_with(*u, *v, *eta, *theta, *height, &cfg.zeta, cfg.quad_tol)?;
            json_doc(cfg, r.to_json())
        }
        Command::Gallery { action } => run_gallery(action, cfg)?,
    };
    emit(cfg, &text)
}

fn collect_params(m: &ArgMatches, prefix: &str, out: &mut BTreeMap<String, String>) {
    for id in m.ids() {
        let id = id.as_str();
        // argument groups from flattened structs are named after the struct
        if GLOBAL_ARGS.contains(&id) || id.starts_with(char::is_uppercase) {
            continue;
        }
        if let Ok(Some(raw)) = m.try_get_raw(id) {
            let vals: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
            if !vals.is_empty() {
                out.insert(format!("{prefix}{id}"), vals.join(" "));
            }
        }
    }
    if let Some((name, sub)) = m.subcommand() {
        collect_params(sub, &format!("{prefix}{name}."), out);
    }
}

/// Builds the configuration from `cli` (defaults, file, overrides, flags) and runs the
/// subcommand on a pool of the configured size.
pub fn dispatch(cli: &Cli, matches: &ArgMatches) -> Result<(), CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    for kv in &cli.set {
        cfg.apply_override(kv)?;
    }
    if let Some(w) = cli.workers {
        cfg.workers = w;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.output = Some(o.clone());
    }
    match &cli.command {
        Command::RoucheDemo { target, .. } | Command::TauScan { target, .. } => {
            if let Some(n) = target.samples {
                cfg.set("rouche.samples", &n.to_string())?;
            }
        }
        _ => {}
    }
    if let Command::TauScan { step: Some(s), .. } = &cli.command {
        cfg.set("tau.step", &s.to_string())?;
    }
    if let Some((name, sub)) = matches.subcommand() {
        let mut path = vec![name];
        let mut m = sub;
        while let Some((n, s)) = m.subcommand() {
            path.push(n);
            m = s;
        }
        cfg.command = path.join(" ");
        collect_params(sub, "", &mut cfg.params);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
    pool.install(|| execute(&cli.command, &cfg))
}
