//! Batch front end for the `dzeta` library: maps a [`RunConfig`] onto the
//! library operations and renders the result as text, CSV or JSON.

pub mod config;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use dzeta::approximation::{approx_thm31, approx_thm53, error_exponent_fit, ApproxReport};
use dzeta::continuation::{default_mb_x, mellin_barnes_pow, zeta2_em, zeta2_eval, zeta2_mb};
use dzeta::double_zeta::{zeta2_direct, zeta2_sq, ArgumentPair};
use dzeta::euler_constant2::gamma2_all;
use dzeta::mean_square::{
    integrate_sq, predicted_envelope, residual_exponent, riemann_sanity, run_to_csv, run_to_json, sup_scan_with_width,
    JSON_SCHEMA,
};
use dzeta::{DzetaError, EvalResult, EvalSettings};

pub use config::{parse_complex, Command, ConfigError, Format, RouteChoice, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Eval(#[from] DzetaError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 usage, 2 singular or domain rejection, 3 convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Eval(e) => match e {
                DzetaError::Pole(_) | DzetaError::Domain(_) | DzetaError::Singular(_) | DzetaError::SingularPath(_) => 2,
                DzetaError::Convergence(_) | DzetaError::InsufficientData(_) => 3,
            },
        }
    }

    /// Single line for stderr, `error kind=<kind> reason="<text>"`.
    pub fn machine_line(&self) -> String {
        let kind = match self {
            CliError::Usage(_) | CliError::Config(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Eval(e) => e.kind(),
        };
        let reason = match self {
            CliError::Eval(e) => match e {
                DzetaError::Pole(m)
                | DzetaError::Domain(m)
                | DzetaError::Singular(m)
                | DzetaError::SingularPath(m)
                | DzetaError::Convergence(m)
                | DzetaError::InsufficientData(m) => m.clone(),
            },
            other => other.to_string(),
        };
        format!("error kind={kind} reason={reason:?}")
    }
}

/// Rendered output plus the one-line summary for the terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub summary: String,
}

fn need<T: Copy>(v: Option<T>, name: &str, cmd: Command) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{cmd} needs --{name}")))
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// "a + bi" with the shortest round-trip digits.
pub fn format_value(z: Complex64) -> String {
    if z.im.is_sign_negative() && z.im != 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im.abs())
    }
}

fn cjson(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn wall(d: Duration) -> String {
    format!("{:.3}ms", d.as_secs_f64() * 1e3)
}

fn document(cmd: Command, settings: &EvalSettings, body: Value) -> String {
    let mut doc = json!({ "schema": JSON_SCHEMA, "command": cmd.as_str(), "settings": settings });
    if let (Value::Object(dst), Value::Object(src)) = (&mut doc, body) {
        dst.extend(src);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("json renders");
    s.push('\n');
    s
}

fn point_output(cmd: Command, cfg: &RunConfig, st: &EvalSettings, a: Complex64, b: Complex64, names: (&str, &str), r: &EvalResult) -> String {
    match cfg.format {
        Format::Text => format!("{} (route={})\n", format_value(r.value), r.route),
        Format::Csv => format!(
            "{0}_re,{0}_im,{1}_re,{1}_im,re,im,est_error,route,terms_used\n{2},{3},{4},{5},{6},{7},{8},{9},{10}\n",
            names.0,
            names.1,
            sci(a.re),
            sci(a.im),
            sci(b.re),
            sci(b.im),
            sci(r.value.re),
            sci(r.value.im),
            sci(r.est_error),
            r.route,
            r.terms_used
        ),
        Format::Json => document(
            cmd,
            st,
            json!({
                names.0: cjson(a),
                names.1: cjson(b),
                "value": cjson(r.value),
                "est_error": r.est_error,
                "route": r.route.as_str(),
                "terms_used": r.terms_used,
            }),
        ),
    }
}

fn run_eval(cfg: &RunConfig, st: &EvalSettings) -> Result<Output, CliError> {
    let cmd = Command::Eval;
    let p = ArgumentPair::new(need(cfg.s0, "s0", cmd)?, need(cfg.s, "s", cmd)?);
    let start = Instant::now();
    let r = match cfg.route.unwrap_or_default() {
        RouteChoice::Auto => zeta2_eval(&p, st)?,
        RouteChoice::Direct => zeta2_direct(&p, st)?,
        RouteChoice::Em => zeta2_em(&p, cfg.x.map_or(st.n_cutoff, |x| x as usize), st)?,
        RouteChoice::Mb => zeta2_mb(&p, cfg.x.unwrap_or_else(|| default_mb_x(&p, st)), st)?,
    };
    let summary = format!("eval route={} est_error={:.3e} wall={}", r.route, r.est_error, wall(start.elapsed()));
    Ok(Output { body: point_output(cmd, cfg, st, p.s0, p.s, ("s0", "s"), &r), summary })
}

fn run_zeta2sq(cfg: &RunConfig, st: &EvalSettings) -> Result<Output, CliError> {
    let cmd = Command::Zeta2Sq;
    let (s0, w) = (need(cfg.s0, "s0", cmd)?, need(cfg.w, "w", cmd)?);
    let start = Instant::now();
    let r = zeta2_sq(s0, w, st)?;
    let summary = format!("zeta2sq route={} est_error={:.3e} wall={}", r.route, r.est_error, wall(start.elapsed()));
    Ok(Output { body: point_output(cmd, cfg, st, s0, w, ("s0", "w"), &r), summary })
}

fn run_gamma2(cfg: &RunConfig, st: &EvalSettings) -> Result<Output, CliError> {
    let cmd = Command::Gamma2;
    let s0 = need(cfg.s0, "s0", cmd)?;
    let n_max = cfg.n_max.unwrap_or(10_000);
    let start = Instant::now();
    let g = gamma2_all(s0, n_max, st)?;
    let rows = [("limit", g.via_limit), ("pole", g.via_pole), ("closed", g.via_closed)];
    let body = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for (name, v) in rows {
                let _ = writeln!(s, "{name}: {}", format_value(v));
            }
            let _ = writeln!(s, "spread: {:e}", g.spread);
            s
        }
        Format::Csv => {
            let mut s = String::from("method,re,im\n");
            for (name, v) in rows {
                let _ = writeln!(s, "{name},{},{}", sci(v.re), sci(v.im));
            }
            s
        }
        Format::Json => document(
            cmd,
            st,
            json!({
                "s0": cjson(s0),
                "n_max": n_max,
                "via_limit": cjson(g.via_limit),
                "via_pole": cjson(g.via_pole),
                "via_closed": cjson(g.via_closed),
                "spread": g.spread,
                "acceleration": "generalized Richardson over N_max/2^i, i = 0..5",
            }),
        ),
    };
    let summary = format!("gamma2 spread={:.3e} wall={}", g.spread, wall(start.elapsed()));
    Ok(Output { body, summary })
}

fn run_mean_square(cfg: &RunConfig, st: &EvalSettings) -> Result<Output, CliError> {
    let cmd = Command::MeanSquare;
    let sigma = need(cfg.sigma, "sigma", cmd)?;
    let t_max = need(cfg.t_max, "T", cmd)?;
    let start = Instant::now();
    let run = if cfg.riemann.unwrap_or(false) {
        riemann_sanity(sigma, t_max, st)?
    } else {
        integrate_sq(need(cfg.s0, "s0", cmd)?, sigma, t_max, st)?
    };
    let body = match cfg.format {
        Format::Csv => run_to_csv(&run),
        Format::Json => {
            let mut s = run_to_json(&run, st);
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::from("t cumulative residual\n");
            for i in 0..run.t_grid.len() {
                let _ = writeln!(s, "{} {} {}", run.t_grid[i], run.cumulative_integral[i], run.residuals[i]);
            }
            let _ = writeln!(s, "target coefficient: {}", run.coefficient_target);
            let _ = writeln!(s, "fitted coefficient: {}", run.fitted_coefficient);
            let _ = writeln!(s, "fitted/target: {}", run.fitted_ratio());
            let _ = writeln!(s, "final ratio: {}", run.final_ratio());
            if let Ok(e) = residual_exponent(&run) {
                let _ = writeln!(s, "residual exponent: {e}");
            }
            if let Some(p) = predicted_envelope(run.s0.re, run.sigma).filter(|_| !cfg.riemann.unwrap_or(false)) {
                let _ = writeln!(s, "predicted envelope: T^{} (log T)^{}", p.exponent, p.log_power);
            }
            s
        }
    };
    let routes: Vec<String> = run.route_counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let summary = format!(
        "mean-square route={} est_error={:.3e} fitted/target={:.5} wall={}",
        if routes.is_empty() { "riemann".to_string() } else { routes.join("+") },
        run.total_error(),
        run.fitted_ratio(),
        wall(start.elapsed())
    );
    Ok(Output { body, summary })
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (points - 1) as f64).exp().round())
        .collect()
}

fn run_approx_check(cfg: &RunConfig, st: &EvalSettings) -> Result<Output, CliError> {
    let cmd = Command::ApproxCheck;
    let s0 = need(cfg.s0, "s0", cmd)?;
    let sigma = need(cfg.sigma, "sigma", cmd)?;
    let theorem = cfg.theorem.unwrap_or(31);
    let points = cfg.points.unwrap_or(9);
    if points < 2 {
        return Err(CliError::Usage("approx-check needs --points ≥ 2".into()));
    }
    let grid = log_grid(cfg.x_min.unwrap_or(100.0), cfg.x_max.unwrap_or(1e4), points);
    let start = Instant::now();
    let reports: Vec<ApproxReport> = match theorem {
        31 => {
            let p = ArgumentPair::new(s0, Complex64::new(sigma, cfg.t.unwrap_or(10.0)));
            let c = cfg.c.unwrap_or(2.0 * std::f64::consts::PI);
            grid.iter().map(|&x| approx_thm31(&p, x, c, st)).collect::<Result<_, _>>()?
        }
        53 => grid
            .iter()
            .map(|&t| approx_thm53(&ArgumentPair::new(s0, Complex64::new(sigma, t)), st))
            .collect::<Result<_, _>>()?,
        other => return Err(CliError::Usage(format!("--theorem must be 31 or 53, got {other}"))),
    };
    let slope = error_exponent_fit(&reports)?;
    let predicted = reports[0].predicted_order;
    let body = match cfg.format {
        Format::Csv => {
            let mut s = String::from("x_or_t,approx_re,approx_im,ref_re,ref_im,abs_error\n");
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    sci(r.x_or_t),
                    sci(r.approximant.re),
                    sci(r.approximant.im),
                    sci(r.reference.re),
                    sci(r.reference.im),
                    sci(r.abs_error)
                );
            }
            s
        }
        Format::Json => document(
            cmd,
            st,
            json!({
                "theorem": theorem,
                "s0": cjson(s0),
                "sigma": sigma,
                "reports": reports,
                "fitted_slope": slope,
                "predicted_order": predicted,
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{} {:e}", r.x_or_t, r.abs_error);
            }
            let _ = writeln!(s, "fitted slope: {slope}");
            let _ = writeln!(s, "predicted: exponent {} log power {}", predicted.exponent, predicted.log_power);
            s
        }
    };
    let summary = format!("approx-check theorem={theorem} slope={slope:.4} wall={}", wall(start.elapsed()));
    Ok(Output { body, summary })
}

fn run_mb_verify(cfg: &RunConfig, st: &EvalSettings) -> Result<Output, CliError> {
    let cmd = Command::MbVerify;
    let lambda = need(cfg.lambda, "lambda", cmd)?;
    let s = need(cfg.s, "s", cmd)?;
    let c = cfg.c.unwrap_or(-0.5 * s.re);
    let start = Instant::now();
    let v = mellin_barnes_pow(lambda, s, c, st)?;
    let exact = (-s * (lambda + 1.0).ln()).exp();
    let diff = (v - exact).norm();
    let body = match cfg.format {
        Format::Text => format!("{} (exact {}, |diff| {:e})\n", format_value(v), format_value(exact), diff),
        Format::Csv => format!(
            "re,im,exact_re,exact_im,abs_diff\n{},{},{},{},{}\n",
            sci(v.re),
            sci(v.im),
            sci(exact.re),
            sci(exact.im),
            sci(diff)
        ),
        Format::Json => document(
            cmd,
            st,
            json!({ "lambda": cjson(lambda), "s": cjson(s), "c": c, "value": cjson(v), "exact": cjson(exact), "abs_diff": diff }),
        ),
    };
    let summary = format!("mb-verify abs_diff={diff:.3e} wall={}", wall(start.elapsed()));
    Ok(Output { body, summary })
}

fn run_sup_scan(cfg: &RunConfig, st: &EvalSettings) -> Result<Output, CliError> {
    let cmd = Command::SupScan;
    let s0 = need(cfg.s0, "s0", cmd)?;
    let sigma = need(cfg.sigma, "sigma", cmd)?;
    let t_max = need(cfg.t_max, "T", cmd)?;
    let start = Instant::now();
    let scan = sup_scan_with_width(s0, sigma, t_max, cfg.window.unwrap_or(10.0), st)?;
    let body = match cfg.format {
        Format::Csv => {
            let mut s = String::from("t,abs\n");
            for (t, v) in &scan.maxima {
                let _ = writeln!(s, "{},{}", sci(*t), sci(*v));
            }
            s
        }
        Format::Json => document(
            cmd,
            st,
            json!({ "s0": cjson(s0), "sigma": sigma, "T": t_max, "maxima": scan.maxima, "growth_exponent": scan.growth_exponent }),
        ),
        Format::Text => {
            let mut s = String::new();
            for (t, v) in &scan.maxima {
                let _ = writeln!(s, "{t} {v}");
            }
            match scan.growth_exponent {
                Some(e) => {
                    let _ = writeln!(s, "growth exponent: {e}");
                }
                None => s.push_str("growth exponent: n/a\n"),
            }
            s
        }
    };
    let summary = format!(
        "sup-scan windows={} growth_exponent={} wall={}",
        scan.maxima.len(),
        scan.growth_exponent.map_or("n/a".to_string(), |e| format!("{e:.4}")),
        wall(start.elapsed())
    );
    Ok(Output { body, summary })
}

/// Executes the configured command.
pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    let st = cfg.settings();
    st.validate()?;
    match cfg.command()? {
        Command::Eval => run_eval(cfg, &st),
        Command::Zeta2Sq => run_zeta2sq(cfg, &st),
        Command::Gamma2 => run_gamma2(cfg, &st),
        Command::MeanSquare => run_mean_square(cfg, &st),
        Command::ApproxCheck => run_approx_check(cfg, &st),
        Command::MbVerify => run_mb_verify(cfg, &st),
        Command::SupScan => run_sup_scan(cfg, &st),
    }
}

/// Runs and writes the body to `output_path` or returns it for stdout.
pub fn run_and_emit(cfg: &RunConfig) -> Result<Output, CliError> {
    let out = run(cfg)?;
    if let Some(path) = &cfg.output_path {
        std::fs::write(path, &out.body)?;
    }
    Ok(out)
}
