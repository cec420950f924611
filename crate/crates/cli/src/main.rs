use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pcone::cone::{distance, log_point, Geodesic, TangentAt};
use pcone::convexopt::{best_approximation, circumcenter, ConvexSubmanifold};
use pcone::linalg::io::{fmt_f64, to_json};
use pcone::linalg::{CMatrix, PosDefMatrix, SchattenP};
use pcone::metricprops::{curvature_estimate, curvature_limit};
use pcone::splitting::{cpr_factorize, BlockPartition};
use pcone_cli::files::{load_hermitian, load_matrix, load_pd, same_dims};
use pcone_cli::{run_suite, CliError, Format, SuiteConfig};

const SOLVER_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "pcone", version, about = "Geometry of positive-definite matrices under Schatten-p norms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two positive matrices.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "2", value_parser = parse_p)]
        p: SchattenP,
    },
    /// Point of the geodesic from A to B, or CSV samples along it.
    Geodesic {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Emit k+1 evenly spaced points on [0, 1] as CSV rows.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Tangent vector at A pointing to B.
    Logmap { a: PathBuf, b: PathBuf },
    /// Factorization g = g_A e^v u with respect to a block partition.
    Factorize {
        g: PathBuf,
        /// Blocks such as `0,1|2,3`; defaults to the diagonal partition.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, default_value = "2", value_parser = parse_p)]
        p: SchattenP,
    },
    /// Nearest point of a block-diagonal submanifold.
    Project {
        x: PathBuf,
        /// `diag` or a block partition such as `0,1|2`.
        #[arg(long, default_value = "diag")]
        submanifold: String,
        #[arg(long, default_value = "2", value_parser = parse_p)]
        p: SchattenP,
    },
    /// Center and radius of the smallest ball containing the matrices.
    Circumcenter {
        #[arg(required = true)]
        points: Vec<PathBuf>,
        #[arg(long, default_value = "2", value_parser = parse_p)]
        p: SchattenP,
    },
    /// Curvature quotient at X in the plane of the tangent vectors V and W.
    Curvature {
        x: PathBuf,
        v: PathBuf,
        w: PathBuf,
        #[arg(long, default_value = "2", value_parser = parse_p)]
        p: SchattenP,
        #[arg(long, default_value_t = 0.1)]
        r: f64,
    },
    /// Run randomized verification suites.
    Verify {
        /// `all` or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
        tol: f64,
        /// Comma-separated exponents, e.g. `1,2,3,inf`.
        #[arg(long)]
        p: Option<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
        /// Write solver traces as CSV to standard error.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

fn parse_p(s: &str) -> Result<SchattenP, String> {
    s.parse::<SchattenP>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pcone: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// `Ok(false)` means the command ran but some check failed.
fn run(cli: Cli) -> Result<bool, CliError> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let ok = match cli.command {
        Command::Dist { a, b, p } => {
            let (a, b) = load_pair(&a, &b)?;
            writeln!(out, "{}", fmt_f64(distance(&a, &b, p)?)).map_err(io_err)?;
            true
        }
        Command::Geodesic { a, b, t, samples } => {
            let (a, b) = load_pair(&a, &b)?;
            let geo = Geodesic::new(&a, &b)?;
            match samples {
                None => writeln!(out, "{}", to_json(geo.eval(t)?.as_matrix())).map_err(io_err)?,
                Some(k) => {
                    if k == 0 {
                        return Err(CliError::Usage("--samples must be at least 1".into()));
                    }
                    writeln!(out, "{}", csv_header(a.n())).map_err(io_err)?;
                    for i in 0..=k {
                        let t = i as f64 / k as f64;
                        writeln!(out, "{}", csv_row(t, geo.eval(t)?.as_matrix())).map_err(io_err)?;
                    }
                }
            }
            true
        }
        Command::Logmap { a, b } => {
            let (a, b) = load_pair(&a, &b)?;
            let v = log_point(&a, &b)?;
            writeln!(out, "{}", to_json(v.vector().as_matrix())).map_err(io_err)?;
            true
        }
        Command::Factorize { g, partition, p } => {
            let gm = load_matrix(&g)?;
            let part = match partition {
                Some(s) => parse_partition(&s)?,
                None => BlockPartition::diagonal(gm.n()),
            };
            if part.n() != gm.n() {
                return Err(CliError::Dimension(format!(
                    "partition covers {} indices but the matrix is {}x{}",
                    part.n(),
                    gm.n(),
                    gm.n()
                )));
            }
            writeln!(out, "{}", cpr_factorize(&gm, &part, p)?.to_json()).map_err(io_err)?;
            true
        }
        Command::Project { x, submanifold, p } => {
            let xm = load_pd(&x)?;
            let part = if submanifold == "diag" {
                BlockPartition::diagonal(xm.n())
            } else {
                parse_partition(&submanifold)?
            };
            if part.n() != xm.n() {
                return Err(CliError::Dimension(format!(
                    "submanifold lives in dimension {} but the matrix is {}x{}",
                    part.n(),
                    xm.n(),
                    xm.n()
                )));
            }
            let c = ConvexSubmanifold::block_diagonal(part);
            let r = best_approximation(&xm, &c, p, SOLVER_TOL)?;
            writeln!(
                out,
                "{{\"point\": {}, \"distance\": {}, \"first_order_gap\": {}, \"iterations\": {}}}",
                to_json(r.point.as_matrix()),
                fmt_f64(r.value),
                fmt_f64(r.first_order_gap),
                r.iterations
            )
            .map_err(io_err)?;
            true
        }
        Command::Circumcenter { points, p } => {
            let mut pts = Vec::with_capacity(points.len());
            for path in &points {
                pts.push(load_pd(path)?);
            }
            let dims: Vec<(&Path, usize)> =
                points.iter().map(|q| q.as_path()).zip(pts.iter().map(|m| m.n())).collect();
            same_dims(&dims)?;
            let r = circumcenter(&pts, p, SOLVER_TOL)?;
            writeln!(
                out,
                "{{\"center\": {}, \"radius\": {}, \"iterations\": {}}}",
                to_json(r.center.as_matrix()),
                fmt_f64(r.radius),
                r.iterations
            )
            .map_err(io_err)?;
            true
        }
        Command::Curvature { x, v, w, p, r } => {
            let xm = load_pd(&x)?;
            let vm = load_hermitian(&v)?;
            let wm = load_hermitian(&w)?;
            same_dims(&[(&x, xm.n()), (&v, vm.n()), (&w, wm.n())])?;
            let v = TangentAt::new(xm.clone(), vm)?;
            let w = TangentAt::new(xm.clone(), wm)?;
            let est = curvature_estimate(&xm, &v, &w, r, p)?;
            let lim = curvature_limit(&xm, &v, &w, p)?;
            writeln!(
                out,
                "{{\"r\": {}, \"estimate\": {}, \"s\": {}, \"lower_bound\": {}, \"sharp_lower_bound\": {}}}",
                fmt_f64(r),
                fmt_f64(est),
                fmt_f64(lim.s),
                fmt_f64(lim.lower_bound),
                fmt_f64(lim.sharp_lower_bound)
            )
            .map_err(io_err)?;
            true
        }
        Command::Verify {
            suite,
            n,
            trials,
            seed,
            tol,
            p,
            format,
            trace,
        } => {
            let p_values = match p {
                None => SuiteConfig::default_p_values(),
                Some(s) => s
                    .split(',')
                    .map(|t| parse_p(t).map_err(CliError::Usage))
                    .collect::<Result<_, _>>()?,
            };
            let cfg = SuiteConfig {
                seed,
                n,
                trials,
                p_values,
                tol,
                suites: SuiteConfig::parse_suites(&suite)?,
                threads: threads_from_env()?,
            };
            let format = match format {
                OutFormat::Json => Format::Json,
                OutFormat::Csv => Format::Csv,
            };
            let stderr = io::stderr();
            let mut err = stderr.lock();
            let report = run_suite(
                &cfg,
                format,
                &mut out,
                if trace { Some(&mut err as &mut dyn Write) } else { None },
            )?;
            report.pass()
        }
    };
    out.flush().map_err(io_err)?;
    Ok(ok)
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        msg: e.to_string(),
    }
}

fn load_pair(a: &Path, b: &Path) -> Result<(PosDefMatrix, PosDefMatrix), CliError> {
    let (am, bm) = (load_pd(a)?, load_pd(b)?);
    same_dims(&[(a, am.n()), (b, bm.n())])?;
    Ok((am, bm))
}

fn parse_partition(s: &str) -> Result<BlockPartition, CliError> {
    s.parse::<BlockPartition>()
        .map_err(|e| CliError::Usage(format!("bad partition {s:?}: {e}")))
}

fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var("PCONE_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("PCONE_THREADS must be a count, got {v:?}"))),
    }
}

fn csv_header(n: usize) -> String {
    let mut cols = vec!["t".to_string()];
    for plane in ["re", "im"] {
        for i in 0..n {
            for j in 0..n {
                cols.push(format!("{plane}_{i}_{j}"));
            }
        }
    }
    cols.join(",")
}

fn csv_row(t: f64, m: &CMatrix) -> String {
    let mut cols = vec![fmt_f64(t)];
    cols.extend(m.re().iter().chain(m.im()).map(|&x| fmt_f64(x)));
    cols.join(",")
}
