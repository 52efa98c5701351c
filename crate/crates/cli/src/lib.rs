//! `orbijet` command-line driver.
//!
//! Every subcommand builds a [`Report`] which is rendered as an aligned
//! table, CSV or JSON lines. Rationals print as `p/q` unless `--float` is
//! given. Values of `χ_k` are per unit degree of the adapted covering.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use orbijet_core::gysin::{gysin_coefficient, jump_data};
use orbijet_core::orbifold::{
    canonical_k, chi_k_with, chi_leading_term, cotangent_chern, cotangent_segre, stable_segre,
    ChiMode, EXACT_K_LIMIT,
};
use orbijet_core::pair_file::parse_pair;
use orbijet_core::rational::{fmt_decimal, fmt_rational, from_f64};
use orbijet_core::schur::{decompose_sym_tensor, graded_summands, schur_dimension};
use orbijet_core::threshold::{
    k3_scan, line_arrangement_threshold, min_multiplicity_for_degree, par_map, table1,
    ThresholdOutcome, ThresholdRecord,
};
use orbijet_core::{Error, GradedClass, OrbifoldPair, Order, Partition, Rational};

pub use report::{Cell, Format, Report};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Usage errors and unreadable or malformed input files.
pub const EXIT_USAGE: i32 = 2;
/// Domain and resource errors raised by a computation.
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "orbijet",
    version,
    about = "Euler characteristics of orbifold jet differentials"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Print decimals (12 significant digits) and evaluate large jet orders
    /// in floating point.
    #[arg(long, global = true)]
    pub float: bool,
    /// Worker threads for scans; output order does not depend on it.
    #[arg(long, value_name = "W", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub parallel: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PairArg {
    /// Pair description (JSON).
    #[arg(long, value_name = "FILE")]
    pub pair: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// χ_k of a pair, normalized to covering degree 1.
    Chi {
        #[command(flatten)]
        pair: PairArg,
        /// Jet orders, e.g. `2` or `1,2,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
    /// χ_k with the leading-term scale and positivity of K + Δ^(k).
    Leading {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
    /// Chern and Segre classes of the order-k cotangent bundle.
    Segre {
        #[command(flatten)]
        pair: PairArg,
        /// Jet order, or `inf` for the stable classes.
        #[arg(long)]
        k: Order,
    },
    /// K + Δ^(k) and whether it is ample.
    Canonical {
        #[command(flatten)]
        pair: PairArg,
        /// Order, or `inf` for the logarithmic part.
        #[arg(long)]
        k: Order,
    },
    /// Minimal ramification order at jet order 2 for every plane-curve degree.
    Table1,
    /// Minimal ramification order along a smooth plane curve of degree d.
    Minmult {
        #[arg(long)]
        d: u64,
        /// Scan up to this degree.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Minimal common degree for c doubled plane curves.
    Lines {
        #[arg(long)]
        c: u64,
        /// Scan up to this number of curves.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Coefficients c_m for one component on a surface with trivial
    /// canonical class, and the bound π²/(6 c_m).
    K3scan {
        #[arg(long, default_value_t = 200)]
        m_max: u64,
    },
    /// Gysin coefficient κ(λ) on an abelian variety of dimension n.
    Gysin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Partition,
    },
    /// Schur decomposition of S^{a₁} ⊗ ⋯ ⊗ S^{a_p}.
    Pieri {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Also print dimensions for rank r.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Graded pieces of the weight-n, order-k jet-differential bundle.
    Summands {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u64,
    },
}

/// Failure of a single invocation, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct Ctx {
    float: bool,
    workers: Option<usize>,
}

impl Ctx {
    fn number(&self, r: &Rational) -> Cell {
        Cell::Text(if self.float {
            fmt_decimal(r, 12)
        } else {
            fmt_rational(r)
        })
    }

    fn optional(&self, r: Option<&Rational>) -> Cell {
        r.map_or(Cell::from(""), |r| self.number(r))
    }

    fn class(&self, c: &GradedClass) -> Cell {
        Cell::Text(c.to_string())
    }

    fn mode(&self, k: u64) -> Result<ChiMode, Failure> {
        if self.float {
            Ok(ChiMode::Float)
        } else if k > EXACT_K_LIMIT {
            Err(Failure::Domain(format!(
                "k = {k} exceeds the exact limit {EXACT_K_LIMIT}; use --float"
            )))
        } else {
            Ok(ChiMode::Exact)
        }
    }
}

fn load_pair(path: &Path) -> Result<OrbifoldPair, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_pair(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn threshold_row(ctx: &Ctx, outcome: &ThresholdOutcome) -> Vec<Cell> {
    match outcome {
        ThresholdOutcome::Found(ThresholdRecord {
            parameter,
            minimal_value,
            chi_at_min,
            chi_below_min,
        }) => vec![
            Cell::from(*parameter),
            Cell::from(*minimal_value),
            ctx.number(chi_at_min),
            ctx.optional(chi_below_min.as_ref()),
        ],
        ThresholdOutcome::NoSolution { parameter, witness } => vec![
            Cell::from(*parameter),
            Cell::from("none"),
            ctx.optional(witness.as_ref()),
            Cell::from(""),
        ],
    }
}

const THRESHOLD_COLUMNS: [&str; 4] = ["parameter", "minimal_value", "chi_at_min", "chi_below_min"];

fn scan_range(from: u64, to: Option<u64>) -> Result<Vec<u64>, Failure> {
    let to = to.unwrap_or(from);
    if to < from {
        return Err(Failure::Usage(format!("empty range {from}..={to}")));
    }
    Ok((from..=to).collect())
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let ctx = Ctx {
        float: cli.float,
        workers: cli.parallel.map(|w| w as usize),
    };
    let report = match &cli.command {
        Command::Chi { pair, k } => {
            let pair = load_pair(&pair.pair)?;
            let wide = k.len() > 1;
            let mut report = Report::new(if wide { &["k", "chi_k"] } else { &["chi_k"] });
            for &k in k {
                let chi = ctx.number(&chi_k_with(&pair, k, ctx.mode(k)?)?);
                report.push(if wide {
                    vec![Cell::from(k), chi]
                } else {
                    vec![chi]
                });
            }
            report
        }
        Command::Leading { pair, k } => {
            let pair = load_pair(&pair.pair)?;
            let mut report = Report::new(&["k", "chi_k", "leading_scale", "canonical_k_positive"]);
            for &k in k {
                let r = chi_leading_term(&pair, k, ctx.mode(k)?)?;
                report.push(vec![
                    Cell::from(r.k),
                    ctx.number(&r.chi_k),
                    ctx.number(&r.leading_scale),
                    Cell::from(r.canonical_k_positive.as_str()),
                ]);
            }
            report
        }
        Command::Segre { pair, k } => {
            let pair = load_pair(&pair.pair)?;
            let (chern, segre) = match k {
                Order::Finite(0) => {
                    return Err(Failure::Domain("jet order k must be at least 1".into()))
                }
                Order::Finite(k) => (cotangent_chern(&pair, *k), cotangent_segre(&pair, *k)),
                Order::Infinite => {
                    let s = stable_segre(&pair);
                    (s.invert_unit()?, s)
                }
            };
            let mut report = Report::new(&["degree", "chern", "segre"]);
            for q in 0..=pair.dim() {
                report.push(vec![
                    Cell::from(q as u64),
                    ctx.class(&chern.component(q)),
                    ctx.class(&segre.component(q)),
                ]);
            }
            report
        }
        Command::Canonical { pair, k } => {
            let pair = load_pair(&pair.pair)?;
            if *k == Order::Finite(0) {
                return Err(Failure::Domain("order k must be at least 1".into()));
            }
            let c = canonical_k(&pair, *k);
            let mut report = Report::new(&["k", "class", "positive"]);
            report.push(vec![
                Cell::Text(k.to_string()),
                ctx.class(&c.class),
                Cell::from(c.positive.as_str()),
            ]);
            report
        }
        Command::Table1 => {
            let mut report = Report::new(&[
                "parameter",
                "range_end",
                "minimal_value",
                "chi_at_min",
                "chi_below_min",
            ]);
            for row in table1(ctx.workers)? {
                let r = &row.record;
                report.push(vec![
                    Cell::from(row.d_start),
                    row.d_end.map_or(Cell::from("inf"), Cell::from),
                    Cell::from(r.minimal_value),
                    ctx.number(&r.chi_at_min),
                    ctx.optional(r.chi_below_min.as_ref()),
                ]);
            }
            report
        }
        Command::Minmult { d, to } => {
            let ds = scan_range(*d, *to)?;
            let mut report = Report::new(&THRESHOLD_COLUMNS);
            for outcome in par_map(&ds, ctx.workers, min_multiplicity_for_degree) {
                report.push(threshold_row(&ctx, &outcome?));
            }
            report
        }
        Command::Lines { c, to } => {
            let cs = scan_range(*c, *to)?;
            let mut report = Report::new(&THRESHOLD_COLUMNS);
            for outcome in par_map(&cs, ctx.workers, line_arrangement_threshold) {
                report.push(threshold_row(&ctx, &outcome));
            }
            report
        }
        Command::K3scan { m_max } => {
            if *m_max < 2 {
                return Err(Failure::Domain("m-max must be at least 2".into()));
            }
            let mut report = Report::new(&["m", "coefficient", "ratio_bound"]);
            for row in k3_scan(*m_max, ctx.workers) {
                report.push(vec![
                    Cell::from(row.m),
                    ctx.number(&row.coefficient),
                    // the bound involves π, so it is always a decimal
                    row.ratio_bound.map_or(Cell::from(""), |b| {
                        Cell::Text(fmt_decimal(&from_f64(b), 12))
                    }),
                ]);
            }
            report
        }
        Command::Gysin { n, lambda } => {
            let data = jump_data(*n, lambda)?;
            let kappa = gysin_coefficient(*n, lambda)?;
            let jumps: Vec<String> = data.jumps.iter().map(usize::to_string).collect();
            let mut report = Report::new(&["n", "lambda", "jumps", "defect", "coefficient"]);
            report.push(vec![
                Cell::from(*n),
                Cell::Text(lambda.to_string()),
                Cell::Text(format!("{{{}}}", jumps.join(" "))),
                Cell::from(data.defect),
                ctx.number(&kappa),
            ]);
            report
        }
        Command::Pieri { degrees, r } => {
            let expansion = decompose_sym_tensor(degrees);
            let mut report = Report::new(if r.is_some() {
                &["partition", "multiplicity", "dimension"]
            } else {
                &["partition", "multiplicity"]
            });
            let mut terms: Vec<_> = expansion.terms().collect();
            terms.reverse();
            for (lambda, mult) in terms {
                let mut row = vec![Cell::Text(lambda.to_string()), Cell::from(mult)];
                if let Some(r) = r {
                    row.push(Cell::Text(schur_dimension(lambda, *r).to_string()));
                }
                report.push(row);
            }
            report
        }
        Command::Summands { pair, k, n } => {
            if *k == 0 {
                return Err(Failure::Domain("jet order k must be at least 1".into()));
            }
            let pair = load_pair(&pair.pair)?;
            let mut report = Report::new(&["weights", "summand"]);
            for s in graded_summands(&pair, *k, *n) {
                report.push(vec![
                    Cell::Text(s.weights.to_string()),
                    Cell::Text(s.to_string()),
                ]);
            }
            report
        }
    };
    Ok(report)
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes its report to `out`; diagnostics go to `err`. Returns the exit
/// status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => match report.write(cli.format, out) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "orbijet: {e}");
                1
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "orbijet: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "orbijet: {msg}");
            EXIT_DOMAIN
        }
    }
}
