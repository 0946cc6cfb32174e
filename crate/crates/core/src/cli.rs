//! `qstar` command-line front end.
//!
//! Exit codes: 0 when the requested check passes, 1 when a numerical check
//! fails, 2 on usage or parameter errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    integral_means_sweep, subordination_report, verify_integral_means, IntegralMeansCheck,
    QuadratureConfig,
};
use crate::classes::{coefficient_test, extremal_function, random_member, DiscGrid};
use crate::qcore::{psi, ClassParams, DEFAULT_TRUNC, Q_NEAR_ONE};
use crate::series::PowerSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Tolerance of the `limit-check` command.
pub const LIMIT_TOL: f64 = 1e-3;

const SWEEP_RADII: [f64; 4] = [0.25, 0.5, 0.75, 0.95];
const SWEEP_ETAS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
const REALPART_RADII: [f64; 6] = [0.25, 0.5, 0.75, 0.9, 0.99, 0.999];
const REALPART_ANGLES: usize = 512;

#[derive(Parser, Debug)]
#[command(
    name = "qstar",
    version,
    about = "Numerical checks for the q-starlike class ST^λ_q(k,α)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficient membership test of a series
    Membership,
    /// Emit the extremal function f_n as series JSON
    Extremal {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Compare the integral mean of a series with that of f_2 at one (r, eta)
    IntegralMeans,
    /// Subordination constant, real-part bound, Wilf positivity and sharpness
    Subordination,
    /// Classical-limit check of the Ruscheweyh coefficients against binomials
    LimitCheck,
    /// Integral-means comparison over an (r, eta) grid
    Sweep {
        /// Number of seeded random members when no series is given
        #[arg(long, default_value_t = 10)]
        members: u64,
    },
}

#[derive(Args, Debug)]
struct Opts {
    #[arg(long, global = true, allow_negative_numbers = true)]
    q: Option<f64>,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    lambda: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    alpha: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    k: f64,
    #[arg(long, global = true, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNC)]
    trunc: usize,
    #[arg(long, global = true, default_value_t = 256)]
    nodes: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 0.8)]
    density: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Inline series JSON: {"sign":"plus"|"minus","coeffs":[a2,a3,...]}
    #[arg(long, global = true, conflicts_with = "series_file")]
    series: Option<String>,
    #[arg(long, global = true)]
    series_file: Option<PathBuf>,
    /// Compute comparisons even when the coefficient test does not certify the series
    #[arg(long, global = true)]
    allow_uncertified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Outcome {
    text: String,
    verified: bool,
}

/// Parses `args` (program name first), runs the command and writes the report
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.verified {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Usage> {
    let o = &cli.opts;
    match &cli.command {
        Command::Membership => membership(o),
        Command::Extremal { n } => extremal(o, *n),
        Command::IntegralMeans => integral_means_cmd(o),
        Command::Subordination => subordination(o),
        Command::LimitCheck => limit_check(o),
        Command::Sweep { members } => sweep(o, *members),
    }
}

fn params(o: &Opts) -> Result<ClassParams<f64>, Usage> {
    let q =
        o.q.ok_or_else(|| Usage("--q is required (0 < q < 1)".into()))?;
    Ok(ClassParams::with_trunc(q, o.lambda, o.alpha, o.k, o.trunc)?)
}

fn read_series(o: &Opts) -> Result<Option<PowerSeries<f64>>, Usage> {
    let text = match (&o.series, &o.series_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Ok(None),
    };
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Usage(format!("invalid series JSON: {e}")))
}

fn require_series(o: &Opts) -> Result<PowerSeries<f64>, Usage> {
    read_series(o)?.ok_or_else(|| Usage("--series or --series-file is required".into()))
}

fn certify(f: &PowerSeries<f64>, p: &ClassParams<f64>, o: &Opts) -> Result<(), Usage> {
    let report = coefficient_test(f, p);
    if !report.passed() && !o.allow_uncertified {
        return Err(Usage(format!(
            "series is not certified by the coefficient test (margin {}); pass --allow-uncertified to compare anyway",
            report.margin
        )));
    }
    Ok(())
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, Usage> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn membership(o: &Opts) -> Result<Outcome, Usage> {
    let p = params(o)?;
    let f = require_series(o)?;
    let report = coefficient_test(&f, &p);
    let text = match o.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut s = String::from("n,phi,contribution\n");
            for t in &report.per_term {
                let _ = writeln!(s, "{},{},{}", t.n, t.phi, t.contribution);
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "coefficient sum  {}", report.coefficient_sum);
            let _ = writeln!(s, "budget (1-alpha) {}", report.budget);
            let _ = writeln!(s, "margin           {}", report.margin);
            let _ = writeln!(s, "verdict          {:?}", report.verdict);
            s
        }
    };
    Ok(Outcome {
        text,
        verified: report.passed(),
    })
}

fn extremal(o: &Opts, n: usize) -> Result<Outcome, Usage> {
    let p = params(o)?;
    let f = extremal_function(n, &p)?.trimmed();
    let a = f.coeff(n);
    let text = match o.format {
        Format::Json => serde_json::to_string(&f)? + "\n",
        Format::Csv => format!("n,coefficient\n{n},{a}\n"),
        Format::Human => format!("f_{n}(z) = z - {a} z^{n}\n"),
    };
    Ok(Outcome {
        text,
        verified: true,
    })
}

fn render_checks(rows: &[IntegralMeansCheck<f64>], format: Format) -> Result<String, Usage> {
    Ok(match format {
        Format::Json => json(rows)?,
        Format::Csv => {
            let mut s = String::from("r,eta,lhs,rhs,margin\n");
            for c in rows {
                let _ = writeln!(s, "{},{},{},{},{}", c.r, c.eta, c.lhs, c.rhs, c.margin);
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>8} {:>6} {:>22} {:>22} {:>6}",
                "r", "eta", "lhs", "rhs", "holds"
            );
            for c in rows {
                let _ = writeln!(
                    s,
                    "{:>8} {:>6} {:>22.15e} {:>22.15e} {:>6}",
                    c.r, c.eta, c.lhs, c.rhs, c.holds
                );
            }
            s
        }
    })
}

fn integral_means_cmd(o: &Opts) -> Result<Outcome, Usage> {
    let p = params(o)?;
    let f = require_series(o)?;
    certify(&f, &p, o)?;
    let cfg = QuadratureConfig::new(o.nodes, o.r.unwrap_or(0.5), o.eta.unwrap_or(1.0))?;
    let check = verify_integral_means(&f, &p, &cfg)?;
    let text = match o.format {
        Format::Json => json(&check)?,
        _ => render_checks(std::slice::from_ref(&check), o.format)?,
    };
    Ok(Outcome {
        text,
        verified: check.holds,
    })
}

fn sweep(o: &Opts, members: u64) -> Result<Outcome, Usage> {
    let p = params(o)?;
    let radii: Vec<f64> = o.r.map_or_else(|| SWEEP_RADII.to_vec(), |r| vec![r]);
    let etas: Vec<f64> = o.eta.map_or_else(|| SWEEP_ETAS.to_vec(), |e| vec![e]);
    let series = match read_series(o)? {
        Some(f) => {
            certify(&f, &p, o)?;
            vec![f]
        }
        None => (0..members)
            .map(|i| random_member(&p, o.seed.wrapping_add(i), o.density))
            .collect::<Result<_, _>>()?,
    };
    let mut rows = Vec::new();
    for f in &series {
        rows.extend(integral_means_sweep(f, &p, &radii, &etas, o.nodes)?);
    }
    let verified = rows.iter().all(|c| c.holds);
    Ok(Outcome {
        text: render_checks(&rows, o.format)?,
        verified,
    })
}

fn subordination(o: &Opts) -> Result<Outcome, Usage> {
    let p = params(o)?;
    let f = match read_series(o)? {
        Some(f) => {
            certify(&f, &p, o)?;
            f
        }
        None => random_member(&p, o.seed, o.density)?,
    };
    let grid = DiscGrid::new(REALPART_RADII.to_vec(), REALPART_ANGLES)?;
    let report = subordination_report(&f, &p, &grid, o.r.unwrap_or(0.9999))?;
    let text = match o.format {
        Format::Json => json(&report)?,
        Format::Csv => format!(
            "constant,realpart_bound,realpart_min,wilf_min,sharpness_min\n{},{},{},{},{}\n",
            report.constant,
            report.realpart_bound,
            report.realpart_min,
            report.wilf_min,
            report.sharpness_min
        ),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "subordination constant {}", report.constant);
            let _ = writeln!(s, "real-part bound        {}", report.realpart_bound);
            let _ = writeln!(s, "sampled min Re f       {}", report.realpart_min);
            let _ = writeln!(s, "Wilf minimum           {}", report.wilf_min);
            let _ = writeln!(s, "sharpness minimum      {}", report.sharpness_min);
            s
        }
    };
    Ok(Outcome {
        text,
        verified: report.verified(),
    })
}

#[derive(Serialize)]
struct LimitRow {
    lambda: u32,
    n: u32,
    psi: f64,
    binomial: f64,
    rel_error: f64,
}

#[derive(Serialize)]
struct LimitSummary {
    q: f64,
    max_rel_error: f64,
    tolerance: f64,
    pass: bool,
}

fn binomial(n: u32, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * f64::from(n - k + j) / f64::from(j))
}

fn limit_check(o: &Opts) -> Result<Outcome, Usage> {
    let mut rows = Vec::new();
    for lambda in 0..=3u32 {
        for n in 2..=12u32 {
            let value = psi(n as usize, f64::from(lambda), Q_NEAR_ONE);
            let exact = binomial(n + lambda - 1, n - 1);
            rows.push(LimitRow {
                lambda,
                n,
                psi: value,
                binomial: exact,
                rel_error: ((value - exact) / exact).abs(),
            });
        }
    }
    let max_rel_error = rows.iter().map(|r| r.rel_error).fold(0.0, f64::max);
    let summary = LimitSummary {
        q: Q_NEAR_ONE,
        max_rel_error,
        tolerance: LIMIT_TOL,
        pass: max_rel_error < LIMIT_TOL,
    };
    let text = match o.format {
        Format::Json => json(&summary)?,
        Format::Csv => {
            let mut s = String::from("lambda,n,psi,binomial,rel_error\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.lambda, r.n, r.psi, r.binomial, r.rel_error
                );
            }
            s
        }
        Format::Human => format!(
            "q = {}\nmax relative error {:e} (tolerance {:e})\n",
            summary.q, summary.max_rel_error, summary.tolerance
        ),
    };
    Ok(Outcome {
        text,
        verified: summary.pass,
    })
}
