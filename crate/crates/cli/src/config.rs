//! Run configuration and its `key=value` text form.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("duplicate key {0:?}")]
    DuplicateKey(String),
    #[error("bad value for {key}: {value:?} ({reason})")]
    BadValue { key: String, value: String, reason: String },
    #[error("missing required key {0:?}")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Zeta2Sq,
    Gamma2,
    MeanSquare,
    ApproxCheck,
    MbVerify,
    SupScan,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Eval,
        Command::Zeta2Sq,
        Command::Gamma2,
        Command::MeanSquare,
        Command::ApproxCheck,
        Command::MbVerify,
        Command::SupScan,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Zeta2Sq => "zeta2sq",
            Command::Gamma2 => "gamma2",
            Command::MeanSquare => "mean-square",
            Command::ApproxCheck => "approx-check",
            Command::MbVerify => "mb-verify",
            Command::SupScan => "sup-scan",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Text,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

/// Which evaluator `eval` should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum RouteChoice {
    #[default]
    Auto,
    Direct,
    Em,
    Mb,
}

impl RouteChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            RouteChoice::Auto => "auto",
            RouteChoice::Direct => "direct",
            RouteChoice::Em => "em",
            RouteChoice::Mb => "mb",
        }
    }
}

impl FromStr for RouteChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(RouteChoice::Auto),
            "direct" => Ok(RouteChoice::Direct),
            "em" => Ok(RouteChoice::Em),
            "mb" => Ok(RouteChoice::Mb),
            _ => Err(format!("unknown route {s:?}")),
        }
    }
}

/// Parses "re,im" or a bare real part.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let mut parts = text.split(',');
    let re = parts.next().unwrap_or("").trim();
    let im = parts.next().map(str::trim);
    if parts.next().is_some() {
        return Err(format!("expected re,im, got {text:?}"));
    }
    let re: f64 = re.parse().map_err(|_| format!("bad real part in {text:?}"))?;
    let im: f64 = match im {
        Some(v) => v.parse().map_err(|_| format!("bad imaginary part in {text:?}"))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

pub fn format_complex(z: Complex64) -> String {
    format!("{:?},{:?}", z.re, z.im)
}

/// One invocation: the command, its arguments, output target and the
/// evaluator overrides.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub s0: Option<Complex64>,
    pub s: Option<Complex64>,
    pub w: Option<Complex64>,
    pub lambda: Option<Complex64>,
    pub sigma: Option<f64>,
    pub t_max: Option<f64>,
    pub t: Option<f64>,
    pub x: Option<f64>,
    pub c: Option<f64>,
    pub n_max: Option<usize>,
    pub route: Option<RouteChoice>,
    pub theorem: Option<u32>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub window: Option<f64>,
    pub riemann: Option<bool>,
    pub tol: Option<f64>,
    pub m_cutoff: Option<usize>,
    pub n_cutoff: Option<usize>,
    pub k_cutoff: Option<usize>,
    pub contour_half_height: Option<f64>,
    pub singular_radius: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

fn bad(key: &str, value: &str, reason: impl fmt::Display) -> ConfigError {
    ConfigError::BadValue { key: key.to_string(), value: value.to_string(), reason: reason.to_string() }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e: T::Err| bad(key, value, e))
}

impl RunConfig {
    pub fn command(&self) -> Result<Command, ConfigError> {
        self.command.ok_or(ConfigError::Missing("command"))
    }

    /// `key=value` lines in a fixed order; unset fields are omitted.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                lines.push(format!("{k}={v}"));
            }
        };
        push("command", self.command.map(|c| c.to_string()));
        push("s0", self.s0.map(format_complex));
        push("s", self.s.map(format_complex));
        push("w", self.w.map(format_complex));
        push("lambda", self.lambda.map(format_complex));
        push("sigma", self.sigma.map(|v| format!("{v:?}")));
        push("T", self.t_max.map(|v| format!("{v:?}")));
        push("t", self.t.map(|v| format!("{v:?}")));
        push("x", self.x.map(|v| format!("{v:?}")));
        push("C", self.c.map(|v| format!("{v:?}")));
        push("n_max", self.n_max.map(|v| v.to_string()));
        push("route", self.route.map(|r| r.as_str().to_string()));
        push("theorem", self.theorem.map(|v| v.to_string()));
        push("x_min", self.x_min.map(|v| format!("{v:?}")));
        push("x_max", self.x_max.map(|v| format!("{v:?}")));
        push("points", self.points.map(|v| v.to_string()));
        push("window", self.window.map(|v| format!("{v:?}")));
        push("riemann", self.riemann.map(|v| v.to_string()));
        push("tol", self.tol.map(|v| format!("{v:?}")));
        push("m_cutoff", self.m_cutoff.map(|v| v.to_string()));
        push("n_cutoff", self.n_cutoff.map(|v| v.to_string()));
        push("k_cutoff", self.k_cutoff.map(|v| v.to_string()));
        push("contour_half_height", self.contour_half_height.map(|v| format!("{v:?}")));
        push("singular_radius", self.singular_radius.map(|v| format!("{v:?}")));
        push("output_path", self.output_path.as_ref().map(|p| p.display().to_string()));
        push("format", Some(self.format.as_str().to_string()));
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    /// Reads `key=value` lines; blank lines and lines starting with `#` are
    /// skipped.
    pub fn parse_text(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen = std::collections::HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line: i + 1, text: raw.to_string() })?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(ConfigError::DuplicateKey(key.to_string()));
            }
            let cx = |v: &str| parse_complex(v).map_err(|e| bad(key, v, e));
            match key {
                "command" => cfg.command = Some(value.parse().map_err(|e: String| bad(key, value, e))?),
                "s0" => cfg.s0 = Some(cx(value)?),
                "s" => cfg.s = Some(cx(value)?),
                "w" => cfg.w = Some(cx(value)?),
                "lambda" => cfg.lambda = Some(cx(value)?),
                "sigma" => cfg.sigma = Some(parse_num(key, value)?),
                "T" => cfg.t_max = Some(parse_num(key, value)?),
                "t" => cfg.t = Some(parse_num(key, value)?),
                "x" => cfg.x = Some(parse_num(key, value)?),
                "C" => cfg.c = Some(parse_num(key, value)?),
                "n_max" => cfg.n_max = Some(parse_num(key, value)?),
                "route" => cfg.route = Some(value.parse().map_err(|e: String| bad(key, value, e))?),
                "theorem" => cfg.theorem = Some(parse_num(key, value)?),
                "x_min" => cfg.x_min = Some(parse_num(key, value)?),
                "x_max" => cfg.x_max = Some(parse_num(key, value)?),
                "points" => cfg.points = Some(parse_num(key, value)?),
                "window" => cfg.window = Some(parse_num(key, value)?),
                "riemann" => cfg.riemann = Some(parse_num(key, value)?),
                "tol" => cfg.tol = Some(parse_num(key, value)?),
                "m_cutoff" => cfg.m_cutoff = Some(parse_num(key, value)?),
                "n_cutoff" => cfg.n_cutoff = Some(parse_num(key, value)?),
                "k_cutoff" => cfg.k_cutoff = Some(parse_num(key, value)?),
                "contour_half_height" => cfg.contour_half_height = Some(parse_num(key, value)?),
                "singular_radius" => cfg.singular_radius = Some(parse_num(key, value)?),
                "output_path" => cfg.output_path = Some(PathBuf::from(value)),
                "format" => cfg.format = value.parse().map_err(|e: String| bad(key, value, e))?,
                _ => return Err(ConfigError::UnknownKey(key.to_string())),
            }
        }
        Ok(cfg)
    }

    pub fn settings(&self) -> dzeta::EvalSettings {
        let mut st = dzeta::EvalSettings::default();
        if let Some(v) = self.tol {
            st.tol = v;
        }
        if let Some(v) = self.m_cutoff {
            st.m_cutoff = v;
        }
        if let Some(v) = self.n_cutoff {
            st.n_cutoff = v;
        }
        if let Some(v) = self.k_cutoff {
            st.k_cutoff = v;
        }
        if let Some(v) = self.contour_half_height {
            st.contour_half_height = v;
        }
        if let Some(v) = self.singular_radius {
            st.singular_radius = v;
        }
        st
    }
}
