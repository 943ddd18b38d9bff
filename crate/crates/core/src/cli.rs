//! Command-line front end: `analyze`, `table`, `scan`, `selftest`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a mathematical invariant
//! was violated (closed form disagreed with enumeration, and so on).

use std::ffi::OsString;
use std::fs::OpenOptions;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::catalog::{self, Filter, Format, RecordWriter, ScanOptions, ScanSummary};
use crate::codes::{self, AnalyzeOptions, DEFAULT_BRUTEFORCE_BUDGET};
use crate::gf::{nt, Field, QuadraticExtension};
use crate::recurrence::{self, CharFactorization, RecurrenceParams};
use crate::selftest;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "recur2code", version, about = "Two-weight cyclic codes from second-order recurrences")]
struct Cli {
    /// Worker threads (defaults to available parallelism)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// More detail in human-readable output
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze the code C(a,b,q)
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        /// Coefficient a, as 0, r^n or [c0,c1,...]
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Coefficient b (nonzero)
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Print one JSON record instead of the text report
        #[arg(long)]
        json: bool,
        /// Cap on q^2 * N for codeword enumeration
        #[arg(long, default_value_t = DEFAULT_BRUTEFORCE_BUDGET)]
        budget: u64,
    },
    /// Recompute one of the published tables (1, 2 or 3)
    Table { id: u32 },
    /// Analyze every pair (a, b) over a field
    Scan {
        #[command(flatten)]
        field: FieldArgs,
        /// mds, one-weight, outside-classification, irreducible, distinct, repeated
        #[arg(long = "filter")]
        filters: Vec<Filter>,
        #[arg(long, default_value = "jsonl")]
        format: Format,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-pair cap on q^2 * N for codeword enumeration
        #[arg(long, default_value_t = catalog::DEFAULT_SCAN_BUDGET)]
        budget: u64,
        /// Resume at this position of a (0 is a = 0, then r^0, r^1, ...); appends to --out
        #[arg(long, default_value_t = 0)]
        start_a: usize,
    },
    /// Run the exhaustive invariant suites for all q <= max-q
    Selftest {
        #[arg(long)]
        max_q: u64,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Field order q = p^k
    #[arg(long, required_unless_present = "p", conflicts_with = "p")]
    q: Option<u64>,
    /// Characteristic (with --k) instead of --q
    #[arg(long, requires = "k")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    k: Option<u32>,
    /// Modulus coefficients c0,...,ck (constant first) overriding the Conway polynomial
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn build(&self) -> Result<QuadraticExtension> {
        let (p, k) = match (self.q, self.p, self.k) {
            (Some(q), _, _) => nt::prime_power(q).ok_or(Error::NotPrimePower(q))?,
            (None, Some(p), Some(k)) => (p, k),
            _ => return Err(Error::Usage("give --q or both --p and --k".into())),
        };
        let field = Field::build(p, k, self.modulus.as_deref(), crate::gf::max_field_size())?;
        QuadraticExtension::new(field)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };

    let result = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, out, err)),
            Err(e) => Err(Error::Usage(format!("cannot start {n} workers: {e}"))),
        },
        None => dispatch(&cli, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_invariant_violation() {
                EXIT_INVARIANT
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    match &cli.command {
        Command::Analyze { field, a, b, json, budget } => cmd_analyze(field, a, b, *json, *budget, cli.verbose, out),
        Command::Table { id } => cmd_table(*id, out),
        Command::Scan { field, filters, format, out: path, budget, start_a } => {
            cmd_scan(field, filters, *format, path.as_ref(), *budget, *start_a, out, err)
        }
        Command::Selftest { max_q } => cmd_selftest(*max_q, out),
    }
}

fn cmd_analyze(
    field_args: &FieldArgs,
    a: &str,
    b: &str,
    json: bool,
    budget: u64,
    verbose: u8,
    out: &mut (dyn Write + Send),
) -> Result<i32> {
    let tower = field_args.build()?;
    let field = tower.base();
    let params = RecurrenceParams::parse(field, a, b)?;
    let report = codes::analyze(&tower, &params, &AnalyzeOptions { bruteforce_budget: Some(budget) })?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
        return Ok(EXIT_OK);
    }

    let fact = recurrence::classify(&tower, &params);
    writeln!(out, "C(a,b,q): q={} a={} b={} over {field}", report.q, report.a, report.b)?;
    let ext = tower.ext();
    let roots = match fact {
        CharFactorization::Irreducible { alpha, beta } => {
            format!("alpha={}, beta={} in F_{}", ext.format_element(alpha), ext.format_element(beta), ext.q())
        }
        CharFactorization::Distinct { alpha, beta } => {
            format!("alpha={}, beta={}", field.format_element(alpha), field.format_element(beta))
        }
        CharFactorization::Repeated { alpha } => format!("alpha={}", field.format_element(alpha)),
    };
    writeln!(out, "case: {} ({roots})", report.case)?;
    writeln!(out, "N={} e={} K={}", report.n, report.e, report.k)?;
    writeln!(out, "weights: {}", report.weights)?;
    writeln!(
        out,
        "d={} d_dual={} mds={} projective={} one_weight={}",
        report.d, report.d_dual, report.mds, report.projective, report.one_weight
    )?;
    if let (Some(u), Some(sub), Some(semi)) = (report.u, report.subfield, report.semiprimitive) {
        writeln!(out, "u={u} subfield={sub} semiprimitive={semi}")?;
    }
    if !report.flags.is_empty() {
        writeln!(out, "flags: {}", report.flags.join(", "))?;
    }
    if verbose > 0 {
        let code = codes::build_code(&tower, &params)?;
        let gm = codes::generator_matrix(&code)?;
        writeln!(out, "generator columns: {:?} form", gm.form)?;
        if report.n <= selftest::CHECK_POLY_MAX_N {
            let cp = codes::check_polynomials(field, &params, report.n)?;
            writeln!(out, "h = {}", cp.h.display(field))?;
            if verbose > 1 {
                writeln!(out, "g = {}", cp.g.display(field))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_table(id: u32, out: &mut (dyn Write + Send)) -> Result<i32> {
    let report = catalog::reproduce_table(id)?;
    write!(out, "{report}")?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_USAGE })
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    field_args: &FieldArgs,
    filters: &[Filter],
    format: Format,
    path: Option<&PathBuf>,
    budget: u64,
    start_a: usize,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32> {
    let tower = field_args.build()?;
    let opts = ScanOptions { analyze: AnalyzeOptions { bruteforce_budget: Some(budget) }, filters: filters.to_vec() };
    let mut summary = ScanSummary::default();

    let sink: Box<dyn Write + '_> = match path {
        Some(p) => {
            let file =
                OpenOptions::new().create(true).write(true).append(start_a > 0).truncate(start_a == 0).open(p)?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(&mut *out),
    };
    let mut writer = RecordWriter::new(sink, format, start_a == 0)?;
    catalog::scan_chunks(&tower, &opts, start_a, |_, chunk| {
        for r in &chunk {
            writer.write(r)?;
            summary.add(r);
        }
        writer.flush()
    })?;
    let bytes = writer.bytes_written();
    drop(writer);

    let report_to: &mut (dyn Write + Send) = if path.is_some() { out } else { err };
    write!(report_to, "{summary}")?;
    if let Some(p) = path {
        writeln!(report_to, "wrote {bytes} bytes to {}", p.display())?;
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(max_q: u64, out: &mut (dyn Write + Send)) -> Result<i32> {
    let bound = crate::gf::max_field_size();
    if max_q.checked_mul(max_q).is_none_or(|sq| sq > bound) {
        return Err(Error::Usage(format!("max-q {max_q} needs fields of size {max_q}^2 > bound {bound}")));
    }
    let report = selftest::run_selftest(max_q)?;
    write!(out, "{report}")?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_INVARIANT })
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let mut out = io::stdout();
    let mut err = io::stderr();
    run(std::env::args_os(), &mut out, &mut err)
}
