use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use intertwine_cli::{
    CliError, CliResult, FigureKind, FunctionInput, GroupArgs, MapCommandMode, MatrixFormat,
    Method, Session, SpectrumFormat,
};

/// Jet-indexed spectra and the intertwining functional calculus for complex matrices.
#[derive(Parser)]
#[command(name = "intertwine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Eigenvalue clustering tolerance of the float backend.
    #[arg(long, global = true, default_value_t = 1e-7)]
    eps_eig: f64,

    /// Relative singular-value threshold for float ranks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps_rank: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the (lambda, k) pairs of a matrix.
    Spectrum {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumFmt::Text)]
        format: SpectrumFmt,
    },
    /// Evaluate f(a) by Taylor jets, contour quadrature, or both.
    Apply {
        matrix: PathBuf,
        function: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Jet)]
        method: MethodArg,
        /// Quadrature nodes on the contour.
        #[arg(long, default_value_t = 1024)]
        nodes: usize,
        /// Contour radius; defaults to (rho(a) + 1) / 2.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, value_enum, default_value_t = MatrixFmt::Text)]
        format: MatrixFmt,
    },
    /// Map the spectrum through phi; verify recomputes spectrum(phi(a)).
    Map {
        matrix: PathBuf,
        function: PathBuf,
        #[arg(long, value_enum, default_value_t = MapModeArg::Split)]
        mode: MapModeArg,
    },
    /// Draw the spectrum as stems over the unit disk (.svg) or dump it (.csv).
    Figure {
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply g = (alpha, beta) in SU(1,1) to the matrix and report the spectrum of g.a.
    Mobius {
        matrix: PathBuf,
        #[command(flatten)]
        group: GroupFlags,
        #[arg(long, value_enum, default_value_t = MatrixFmt::Text)]
        format: MatrixFmt,
    },
}

#[derive(Args)]
struct GroupFlags {
    #[arg(long, allow_hyphen_values = true, requires = "beta", conflicts_with_all = ["omega", "u"])]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "alpha")]
    beta: Option<String>,
    /// Rotation angle in radians.
    #[arg(long, allow_hyphen_values = true, requires = "u")]
    omega: Option<f64>,
    /// Disk parameter, |u| < 1.
    #[arg(long, allow_hyphen_values = true, requires = "omega")]
    u: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumFmt {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFmt {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Jet,
    Contour,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapModeArg {
    Literal,
    Split,
    Verify,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn matrix_format(f: MatrixFmt) -> MatrixFormat {
    match f {
        MatrixFmt::Text => MatrixFormat::Text,
        MatrixFmt::Json => MatrixFormat::Json,
    }
}

fn run(cli: Cli, session: &mut Session) -> CliResult<()> {
    session.tol.eig = cli.eps_eig;
    session.tol.rank = cli.eps_rank;
    let load =
        |path: &Path, s: &mut Session| intertwine_cli::load_matrix(&read(path)?, &mut s.warnings);
    let function = |path: &Path| FunctionInput::from_json(&read(path)?)?.load();
    match cli.command {
        Command::Spectrum { matrix, format } => {
            let m = load(&matrix, session)?;
            let format = match format {
                SpectrumFmt::Text => SpectrumFormat::Text,
                SpectrumFmt::Json => SpectrumFormat::Json,
                SpectrumFmt::Csv => SpectrumFormat::Csv,
            };
            session.spectrum(&m, format)
        }
        Command::Apply {
            matrix,
            function: fpath,
            method,
            nodes,
            radius,
            format,
        } => {
            let m = load(&matrix, session)?;
            let f = function(&fpath)?;
            let method = match method {
                MethodArg::Jet => Method::Jet,
                MethodArg::Contour => Method::Contour,
                MethodArg::Both => Method::Both,
            };
            session.apply(&m, &f, method, nodes, radius, matrix_format(format))
        }
        Command::Map {
            matrix,
            function: fpath,
            mode,
        } => {
            let m = load(&matrix, session)?;
            let f = function(&fpath)?;
            let mode = match mode {
                MapModeArg::Literal => MapCommandMode::Literal,
                MapModeArg::Split => MapCommandMode::Split,
                MapModeArg::Verify => MapCommandMode::Verify,
            };
            session.map(&m, &f, mode)
        }
        Command::Figure { matrix, out } => {
            let kind = match out.extension().and_then(|e| e.to_str()) {
                Some(e) if e.eq_ignore_ascii_case("svg") => FigureKind::Svg,
                Some(e) if e.eq_ignore_ascii_case("csv") => FigureKind::Csv,
                _ => return Err(CliError::Usage("--out must end in .svg or .csv".into())),
            };
            let m = load(&matrix, session)?;
            let body = session.figure(&m, kind)?;
            fs::write(&out, body).map_err(|source| CliError::Io {
                path: out.clone(),
                source,
            })
        }
        Command::Mobius {
            matrix,
            group,
            format,
        } => {
            let g = match group {
                GroupFlags {
                    alpha: Some(alpha),
                    beta: Some(beta),
                    ..
                } => GroupArgs::AlphaBeta { alpha, beta },
                GroupFlags {
                    omega: Some(omega),
                    u: Some(u),
                    ..
                } => GroupArgs::OmegaU { omega, u },
                _ => {
                    return Err(CliError::Usage(
                        "give either --alpha and --beta, or --omega and --u".into(),
                    ))
                }
            };
            let m = load(&matrix, session)?;
            session.mobius(&m, &g, matrix_format(format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = Session::new();
    let result = run(cli, &mut session);
    print!("{}", session.out);
    for w in &session.warnings {
        eprintln!("warning: {w}");
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
