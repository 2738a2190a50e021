//! Mean squares of ζ₂(s₀, σ+it) and ζ(σ+it) along vertical segments
//! t ∈ [2, T], with main-term coefficient fits, residual growth exponents
//! and window maxima.

use std::cell::{Cell, RefCell};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approximation::{log_log_slope, PredictedOrder};
use crate::continuation::{classify_region, zeta2_eval, RegionClass};
use crate::double_zeta::{zeta2_sq, ArgumentPair};
use crate::error::{DzetaError, Result};
use crate::quadrature::integrate_adaptive;
use crate::settings::{check_finite, EvalSettings, Route};
use crate::special::riemann_zeta;
use crate::sum::KahanSum;
use crate::ComplexValue;

pub const CHECKPOINTS: usize = 20;
pub const JSON_SCHEMA: &str = "dzeta/1";

/// Relative accuracy asked of each quadrature panel.
const PANEL_REL_TOL: f64 = 1e-9;

/// Leading term of the mean square: c·(t−2), or t·log t on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MainTerm {
    Linear { coefficient: f64 },
    TLogT,
}

impl MainTerm {
    /// The function whose coefficient is fitted.
    pub fn basis(&self, t: f64) -> f64 {
        match self {
            MainTerm::Linear { .. } => t - 2.0,
            MainTerm::TLogT => t * t.ln(),
        }
    }

    pub fn coefficient(&self) -> f64 {
        match self {
            MainTerm::Linear { coefficient } => *coefficient,
            MainTerm::TLogT => 1.0,
        }
    }

    pub fn at(&self, t: f64) -> f64 {
        self.coefficient() * self.basis(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluator {
    DoubleZeta,
    RiemannZeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanSquareRun {
    pub evaluator: Evaluator,
    pub s0: ComplexValue,
    pub sigma: f64,
    pub t_max: f64,
    pub t_grid: Vec<f64>,
    /// Function value at each checkpoint.
    pub values: Vec<ComplexValue>,
    pub cumulative_integral: Vec<f64>,
    /// Accumulated quadrature error estimate at each checkpoint.
    pub cumulative_error: Vec<f64>,
    pub main_term: MainTerm,
    pub coefficient_target: f64,
    pub fitted_coefficient: f64,
    pub residuals: Vec<f64>,
    pub panel_width: f64,
    pub panels: usize,
    pub evaluations: usize,
    pub route_counts: BTreeMap<String, usize>,
}

impl MeanSquareRun {
    /// I(T) divided by the main term at T.
    pub fn final_ratio(&self) -> f64 {
        let t = *self.t_grid.last().unwrap_or(&f64::NAN);
        self.cumulative_integral.last().copied().unwrap_or(f64::NAN) / self.main_term.at(t)
    }

    pub fn fitted_ratio(&self) -> f64 {
        self.fitted_coefficient / self.coefficient_target
    }

    pub fn total_error(&self) -> f64 {
        self.cumulative_error.last().copied().unwrap_or(0.0)
    }
}

/// Checkpoints Tk/20, k = 1, …, 20, keeping those above the start t = 2.
pub fn checkpoint_grid(t_max: f64) -> Vec<f64> {
    (1..=CHECKPOINTS).map(|k| t_max * k as f64 / CHECKPOINTS as f64).filter(|&t| t > 2.0).collect()
}

/// Largest panel width that resolves the oscillation up to height T.
pub fn default_panel_width(t_max: f64) -> f64 {
    std::f64::consts::PI / (t_max + 3.0).ln()
}

fn check_segment(s0: Complex64, sigma: f64, t_max: f64, settings: &EvalSettings) -> Result<()> {
    settings.validate()?;
    check_finite("s0", s0)?;
    if !sigma.is_finite() || !t_max.is_finite() {
        return Err(DzetaError::Domain("sigma and T must be finite".into()));
    }
    if (s0.re + sigma - 2.0).abs() < settings.singular_radius {
        return Err(DzetaError::SingularPath(format!(
            "segment lies on Re(s0+s) = 2 and meets the singular locus s0+s=2 (s0 = {s0}, sigma = {sigma})"
        )));
    }
    for t in [2.0, t_max] {
        let p = ArgumentPair::new(s0, Complex64::new(sigma, t));
        match classify_region(&p, settings) {
            RegionClass::OutOfDomain => {
                return Err(DzetaError::Domain(format!("no continuation route reaches s0 = {s0}, s = {}", p.s)))
            }
            RegionClass::Singular => {
                return Err(DzetaError::SingularPath(format!("segment meets a singular point at s = {}", p.s)))
            }
            _ => {}
        }
    }
    Ok(())
}

struct PanelOut {
    value: f64,
    err: f64,
    evaluations: usize,
    routes: [usize; 3],
}

fn route_index(r: Route) -> usize {
    match r {
        Route::Direct => 0,
        Route::EulerMaclaurin => 1,
        Route::MellinBarnes => 2,
    }
}

const ROUTE_NAMES: [Route; 3] = [Route::Direct, Route::EulerMaclaurin, Route::MellinBarnes];

/// Evaluates f(t) = (value, route) on the segment.
trait LineFunction: Sync {
    fn eval(&self, t: f64) -> Result<(Complex64, Option<Route>)>;
}

struct DoubleZetaLine<'a> {
    s0: Complex64,
    sigma: f64,
    settings: &'a EvalSettings,
}

impl LineFunction for DoubleZetaLine<'_> {
    fn eval(&self, t: f64) -> Result<(Complex64, Option<Route>)> {
        let r = zeta2_eval(&ArgumentPair::new(self.s0, Complex64::new(self.sigma, t)), self.settings)?;
        Ok((r.value, Some(r.route)))
    }
}

struct RiemannLine<'a> {
    sigma: f64,
    settings: &'a EvalSettings,
}

impl LineFunction for RiemannLine<'_> {
    fn eval(&self, t: f64) -> Result<(Complex64, Option<Route>)> {
        Ok((riemann_zeta(Complex64::new(self.sigma, t), self.settings)?, None))
    }
}

fn integrate_panel<L: LineFunction>(line: &L, a: f64, b: f64, tol: f64) -> Result<PanelOut> {
    let failure: RefCell<Option<DzetaError>> = RefCell::new(None);
    let routes = Cell::new([0usize; 3]);
    let f = |t: f64| {
        if failure.borrow().is_some() {
            return Complex64::new(0.0, 0.0);
        }
        match line.eval(t) {
            Ok((z, route)) => {
                if let Some(r) = route {
                    let mut c = routes.get();
                    c[route_index(r)] += 1;
                    routes.set(c);
                }
                Complex64::new(z.norm_sqr(), 0.0)
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let r = integrate_adaptive(&f, a, b, tol, 12);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(PanelOut { value: r.value.re, err: r.err, evaluations: r.evaluations, routes: routes.get() })
}

fn run_line<L: LineFunction>(
    line: &L,
    evaluator: Evaluator,
    s0: Complex64,
    sigma: f64,
    t_max: f64,
    max_width: f64,
    main_term: MainTerm,
) -> Result<MeanSquareRun> {
    if !(max_width > 0.0) {
        return Err(DzetaError::Domain(format!("panel width must be positive, got {max_width}")));
    }
    let grid = checkpoint_grid(t_max);
    let scale = main_term.coefficient().abs().max(1.0) * if evaluator == Evaluator::RiemannZeta { t_max.ln() } else { 1.0 };
    let mut panels: Vec<(usize, f64, f64)> = Vec::new();
    let mut lo = 2.0;
    for (k, &hi) in grid.iter().enumerate() {
        let count = ((hi - lo) / max_width).ceil().max(1.0) as usize;
        let w = (hi - lo) / count as f64;
        for j in 0..count {
            let a = lo + j as f64 * w;
            let b = if j + 1 == count { hi } else { a + w };
            panels.push((k, a, b));
        }
        lo = hi;
    }
    let outs: Vec<Result<PanelOut>> = panels
        .par_iter()
        .map(|&(_, a, b)| integrate_panel(line, a, b, PANEL_REL_TOL * scale * (b - a)))
        .collect();

    let mut cumulative = Vec::with_capacity(grid.len());
    let mut cumulative_error = Vec::with_capacity(grid.len());
    let mut acc = KahanSum::new();
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut routes = [0usize; 3];
    let mut next = 0;
    for (&(k, _, _), out) in panels.iter().zip(outs) {
        let out = out?;
        acc.add(out.value);
        err += out.err;
        evaluations += out.evaluations;
        for i in 0..3 {
            routes[i] += out.routes[i];
        }
        let closes = panels.get(next + 1).map_or(true, |p| p.0 != k);
        if closes {
            cumulative.push(acc.value());
            cumulative_error.push(err);
        }
        next += 1;
    }
    let values = grid
        .iter()
        .map(|&t| line.eval(t).map(|v| v.0))
        .collect::<Result<Vec<_>>>()?;
    let residuals: Vec<f64> = grid.iter().zip(&cumulative).map(|(&t, &i)| i - main_term.at(t)).collect();
    let mut route_counts = BTreeMap::new();
    for (i, r) in ROUTE_NAMES.iter().enumerate() {
        if routes[i] > 0 {
            route_counts.insert(r.as_str().to_string(), routes[i]);
        }
    }
    let mut run = MeanSquareRun {
        evaluator,
        s0,
        sigma,
        t_max,
        t_grid: grid,
        values,
        cumulative_integral: cumulative,
        cumulative_error,
        main_term,
        coefficient_target: main_term.coefficient(),
        fitted_coefficient: f64::NAN,
        residuals,
        panel_width: max_width,
        panels: panels.len(),
        evaluations,
        route_counts,
    };
    run.fitted_coefficient = coefficient_fit(&run)?;
    Ok(run)
}

/// ∫₂^t |ζ₂(s₀, σ+iu)|² du at the checkpoints, with panels no wider than
/// `max_width`.
pub fn integrate_sq_with_width(
    s0: ComplexValue,
    sigma: f64,
    t_max: f64,
    max_width: f64,
    settings: &EvalSettings,
) -> Result<MeanSquareRun> {
    check_segment(s0, sigma, t_max, settings)?;
    if t_max < 10.0 {
        return Err(DzetaError::Domain(format!("T must be at least 10, got {t_max}")));
    }
    let target = zeta2_sq(s0, Complex64::new(2.0 * sigma, 0.0), settings)?.value.re;
    let line = DoubleZetaLine { s0, sigma, settings };
    run_line(&line, Evaluator::DoubleZeta, s0, sigma, t_max, max_width, MainTerm::Linear { coefficient: target })
}

pub fn integrate_sq(s0: ComplexValue, sigma: f64, t_max: f64, settings: &EvalSettings) -> Result<MeanSquareRun> {
    integrate_sq_with_width(s0, sigma, t_max, default_panel_width(t_max), settings)
}

/// The same pipeline for ζ(σ+it); the main term is ζ(2σ)(t−2) for σ > 1/2
/// and t log t on σ = 1/2.
pub fn riemann_sanity(sigma: f64, t_max: f64, settings: &EvalSettings) -> Result<MeanSquareRun> {
    settings.validate()?;
    if !(sigma >= 0.5) || !sigma.is_finite() {
        return Err(DzetaError::Domain(format!("sigma must be at least 1/2, got {sigma}")));
    }
    if !(t_max >= 50.0) || !t_max.is_finite() {
        return Err(DzetaError::Domain(format!("T must be at least 50, got {t_max}")));
    }
    let main_term = if sigma == 0.5 {
        MainTerm::TLogT
    } else {
        MainTerm::Linear { coefficient: riemann_zeta(Complex64::new(2.0 * sigma, 0.0), settings)?.re }
    };
    let line = RiemannLine { sigma, settings };
    run_line(
        &line,
        Evaluator::RiemannZeta,
        Complex64::new(0.0, 0.0),
        sigma,
        t_max,
        default_panel_width(t_max),
        main_term,
    )
}

/// Least-squares slope of I(t) against the main-term basis over the upper
/// half of the checkpoints.
pub fn coefficient_fit(run: &MeanSquareRun) -> Result<f64> {
    let n = run.t_grid.len();
    if n < 10 || run.cumulative_integral.len() != n {
        return Err(DzetaError::InsufficientData(format!("need at least 10 checkpoints, got {n}")));
    }
    let half = n / 2;
    let x: Vec<f64> = run.t_grid[half..].iter().map(|&t| run.main_term.basis(t)).collect();
    let y = &run.cumulative_integral[half..];
    let mx = x.iter().sum::<f64>() / x.len() as f64;
    let my = y.iter().sum::<f64>() / y.len() as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    Ok(sxy / sxx)
}

fn max_form(a: PredictedOrder, b: PredictedOrder) -> PredictedOrder {
    if a.exponent > b.exponent {
        a
    } else if b.exponent > a.exponent {
        b
    } else {
        PredictedOrder { exponent: a.exponent, log_power: a.log_power.max(b.log_power) }
    }
}

/// Error envelope T^a (log T)^p of the mean-square asymptotics, or None
/// where no statement applies.
pub fn predicted_envelope(sigma0: f64, sigma: f64) -> Option<PredictedOrder> {
    let half = PredictedOrder { exponent: 0.5, log_power: 0 };
    let env = |exponent: f64, log_power: u32| Some(max_form(PredictedOrder { exponent, log_power }, half));
    if sigma0 > 1.0 && sigma > 1.0 {
        return Some(PredictedOrder { exponent: 0.0, log_power: 0 });
    }
    if !(sigma > 0.5 && sigma <= 1.0) {
        return None;
    }
    if sigma0 > 1.0 && sigma0 + sigma > 2.0 {
        return env(2.0 - 2.0 * sigma, 1);
    }
    if !(sigma0 > 0.5 && sigma0 < 1.5 && sigma0 + sigma > 1.5 && sigma0 + sigma <= 2.0) {
        return None;
    }
    if sigma0 < 1.0 && sigma < 1.0 {
        env(4.0 - 2.0 * sigma0 - 2.0 * sigma, 1)
    } else if sigma0 < 1.0 {
        env(2.0 - 2.0 * sigma0, 2)
    } else if sigma0 == 1.0 && sigma < 1.0 {
        env(2.0 - 2.0 * sigma, 3)
    } else if sigma0 == 1.0 {
        Some(half)
    } else if sigma < 1.0 {
        env(2.0 - 2.0 * sigma, 1)
    } else {
        None
    }
}

/// Growth exponent of |residual| at checkpoints t ≥ t_min, from the running
/// maximum of |residual| divided by (log t)^log_power.
pub fn residual_exponent_from(run: &MeanSquareRun, t_min: f64, log_power: u32) -> Result<f64> {
    let mut envelope = 0.0f64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &r) in run.t_grid.iter().zip(&run.residuals) {
        envelope = envelope.max(r.abs());
        if t >= t_min && envelope > 0.0 {
            xs.push(t);
            ys.push(envelope / t.ln().powi(log_power as i32));
        }
    }
    if xs.len() < 4 {
        return Err(DzetaError::InsufficientData(format!("need at least 4 checkpoints above t = {t_min}")));
    }
    Ok(log_log_slope(&xs, &ys))
}

/// Residual growth exponent over the whole grid with the log power of the
/// predicted envelope divided out.
pub fn residual_exponent(run: &MeanSquareRun) -> Result<f64> {
    let n = run.t_grid.len();
    if n < 10 || run.residuals.len() != n {
        return Err(DzetaError::InsufficientData(format!("need at least 10 checkpoints, got {n}")));
    }
    if run.t_grid[n - 1] < 10.0 * run.t_grid[0] {
        return Err(DzetaError::InsufficientData("checkpoints span less than one decade".into()));
    }
    let log_power = match run.evaluator {
        Evaluator::DoubleZeta => predicted_envelope(run.s0.re, run.sigma).map_or(0, |p| p.log_power),
        Evaluator::RiemannZeta => 0,
    };
    residual_exponent_from(run, run.t_grid[0], log_power)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupScan {
    /// (t, |ζ₂|) at the maximum of each window.
    pub maxima: Vec<(f64, f64)>,
    /// Log-log slope of the maxima against t, when at least three windows
    /// lie above t = 10.
    pub growth_exponent: Option<f64>,
}

/// Window maxima of |ζ₂(s₀, σ+it)| on [2, T], sampled finer than the
/// quadrature panels.
pub fn sup_scan_with_width(
    s0: ComplexValue,
    sigma: f64,
    t_max: f64,
    window: f64,
    settings: &EvalSettings,
) -> Result<SupScan> {
    check_segment(s0, sigma, t_max, settings)?;
    if !(t_max > 2.0) || !(window > 0.0) {
        return Err(DzetaError::Domain(format!("need T > 2 and a positive window, got T = {t_max}, window = {window}")));
    }
    let step = default_panel_width(t_max) / 8.0;
    let windows = ((t_max - 2.0) / window).ceil().max(1.0) as usize;
    let maxima: Vec<Result<(f64, f64)>> = (0..windows)
        .into_par_iter()
        .map(|w| {
            let a = 2.0 + w as f64 * window;
            let b = (a + window).min(t_max);
            let count = ((b - a) / step).ceil().max(1.0) as usize;
            let mut best = (a, -1.0);
            for j in 0..=count {
                let t = a + (b - a) * j as f64 / count as f64;
                let v = zeta2_eval(&ArgumentPair::new(s0, Complex64::new(sigma, t)), settings)?.value.norm();
                if v > best.1 {
                    best = (t, v);
                }
            }
            Ok(best)
        })
        .collect();
    let maxima = maxima.into_iter().collect::<Result<Vec<_>>>()?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = maxima.iter().filter(|m| m.0 >= 10.0).cloned().unzip();
    let growth_exponent = (xs.len() >= 3).then(|| log_log_slope(&xs, &ys));
    Ok(SupScan { maxima, growth_exponent })
}

pub fn sup_scan(s0: ComplexValue, sigma: f64, t_max: f64, settings: &EvalSettings) -> Result<SupScan> {
    sup_scan_with_width(s0, sigma, t_max, 10.0, settings)
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with columns t, re, im, abs2, cumulative, one row per checkpoint.
pub fn run_to_csv(run: &MeanSquareRun) -> String {
    let mut out = String::from("t,re,im,abs2,cumulative\n");
    for i in 0..run.t_grid.len() {
        let v = run.values[i];
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            sci(run.t_grid[i]),
            sci(v.re),
            sci(v.im),
            sci(v.norm_sqr()),
            sci(run.cumulative_integral[i])
        );
    }
    out
}

#[derive(Serialize)]
struct RunDocument<'a> {
    schema: &'static str,
    settings: &'a EvalSettings,
    run: &'a MeanSquareRun,
    final_ratio: f64,
    fitted_ratio: f64,
    residual_exponent: Option<f64>,
    predicted_envelope: Option<PredictedOrder>,
}

/// JSON document with the run, its settings and the derived fits.
pub fn run_to_json(run: &MeanSquareRun, settings: &EvalSettings) -> String {
    let predicted = match run.evaluator {
        Evaluator::DoubleZeta => predicted_envelope(run.s0.re, run.sigma),
        Evaluator::RiemannZeta => None,
    };
    let doc = RunDocument {
        schema: JSON_SCHEMA,
        settings,
        run,
        final_ratio: run.final_ratio(),
        fitted_ratio: run.fitted_ratio(),
        residual_exponent: residual_exponent(run).ok(),
        predicted_envelope: predicted,
    };
    serde_json::to_string_pretty(&doc).expect("run serializes")
}
