use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use dzeta_cli::{parse_complex, run_and_emit, CliError, Command, Format, RouteChoice, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "dzeta", version, about = "Euler double zeta-function: evaluation and mean-square experiments")]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,

    /// Read the run from a key=value file instead of a subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Print the run in key=value form and exit.
    #[arg(long, global = true)]
    print_config: bool,

    /// Worker threads for panel and window parallelism.
    #[arg(long, global = true, env = "DZETA_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, global = true)]
    m_cutoff: Option<usize>,

    #[arg(long, global = true)]
    n_cutoff: Option<usize>,

    #[arg(long, global = true)]
    k_cutoff: Option<usize>,

    #[arg(long, global = true)]
    contour_half_height: Option<f64>,

    #[arg(long, global = true)]
    singular_radius: Option<f64>,
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s)
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// ζ₂(s₀, s) at one point.
    Eval {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s0: Complex64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_enum, default_value_t = RouteChoice::Auto)]
        route: RouteChoice,
        /// Split point for the em and mb routes.
        #[arg(long)]
        x: Option<f64>,
    },
    /// The mean-square coefficient Σ_k |Σ_{m<k} m^{-s₀}|² k^{-w}.
    Zeta2sq {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s0: Complex64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        w: Complex64,
    },
    /// The double Euler constant γ₂(s₀) by three routes.
    Gamma2 {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s0: Complex64,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// ∫₂^T |ζ₂(s₀, σ+it)|² dt at 20 checkpoints.
    MeanSquare(LineArgs),
    /// Error of the truncated approximations over a log-spaced grid.
    ApproxCheck {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s0: Complex64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        /// 31 for the x-truncation with fixed t, 53 for the t-truncation.
        #[arg(long, default_value_t = 31)]
        theorem: u32,
        /// Height t for theorem 31.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long = "C")]
        c: Option<f64>,
        #[arg(long)]
        x_min: Option<f64>,
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Compare the Mellin–Barnes integral with (1+λ)^{-s}.
    MbVerify {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
    },
    /// Window maxima of |ζ₂(s₀, σ+it)| on [2, T].
    SupScan {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long)]
        window: Option<f64>,
    },
}

#[derive(Args, Debug)]
struct LineArgs {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    s0: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: f64,
    #[arg(long = "T")]
    t_max: f64,
    /// Use ζ(σ+it) instead of ζ₂.
    #[arg(long)]
    riemann: bool,
}

fn config_from(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::parse_text(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(cmd) = &cli.command {
        if cli.config.is_some() {
            return Err(CliError::Usage("give either --config or a subcommand, not both".into()));
        }
        match cmd {
            Cmd::Eval { s0, s, route, x } => {
                cfg.command = Some(Command::Eval);
                cfg.s0 = Some(*s0);
                cfg.s = Some(*s);
                cfg.route = Some(*route);
                cfg.x = *x;
            }
            Cmd::Zeta2sq { s0, w } => {
                cfg.command = Some(Command::Zeta2Sq);
                cfg.s0 = Some(*s0);
                cfg.w = Some(*w);
            }
            Cmd::Gamma2 { s0, n_max } => {
                cfg.command = Some(Command::Gamma2);
                cfg.s0 = Some(*s0);
                cfg.n_max = *n_max;
            }
            Cmd::MeanSquare(line) => {
                cfg.command = Some(Command::MeanSquare);
                cfg.s0 = line.s0;
                cfg.sigma = Some(line.sigma);
                cfg.t_max = Some(line.t_max);
                cfg.riemann = Some(line.riemann);
            }
            Cmd::ApproxCheck { s0, sigma, theorem, t, c, x_min, x_max, points } => {
                cfg.command = Some(Command::ApproxCheck);
                cfg.s0 = Some(*s0);
                cfg.sigma = Some(*sigma);
                cfg.theorem = Some(*theorem);
                cfg.t = *t;
                cfg.c = *c;
                cfg.x_min = *x_min;
                cfg.x_max = *x_max;
                cfg.points = *points;
            }
            Cmd::MbVerify { lambda, s, c } => {
                cfg.command = Some(Command::MbVerify);
                cfg.lambda = Some(*lambda);
                cfg.s = Some(*s);
                cfg.c = *c;
            }
            Cmd::SupScan { line, window } => {
                cfg.command = Some(Command::SupScan);
                cfg.s0 = line.s0;
                cfg.sigma = Some(line.sigma);
                cfg.t_max = Some(line.t_max);
                cfg.window = *window;
            }
        }
    } else if cli.config.is_none() {
        return Err(CliError::Usage("no subcommand given (try --help)".into()));
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.output.is_some() {
        cfg.output_path = cli.output.clone();
    }
    cfg.tol = cli.tol.or(cfg.tol);
    cfg.m_cutoff = cli.m_cutoff.or(cfg.m_cutoff);
    cfg.n_cutoff = cli.n_cutoff.or(cfg.n_cutoff);
    cfg.k_cutoff = cli.k_cutoff.or(cfg.k_cutoff);
    cfg.contour_half_height = cli.contour_half_height.or(cfg.contour_half_height);
    cfg.singular_radius = cli.singular_radius.or(cfg.singular_radius);
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error kind=usage reason=\"cannot start {n} worker threads\"");
            return ExitCode::from(1);
        }
    }
    let result = config_from(&cli).and_then(|cfg| {
        if cli.print_config {
            print!("{}", cfg.to_text());
            return Ok(None);
        }
        run_and_emit(&cfg).map(|out| Some((cfg, out)))
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some((cfg, out))) => {
            if cfg.output_path.is_none() {
                print!("{}", out.body);
            }
            eprintln!("{}", out.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.machine_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
