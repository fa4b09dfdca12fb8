use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kshoji::affine::{build_word_sequence, FlagType};
use kshoji::kostka::{kostka_table, KostkaEngine, TableRow};
use kshoji::verify::{self, Report, DEFAULT_SEED};
use kshoji::{Error, Multipartition, PseudorootSystem};

const CONVENTIONS: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "\nconventions:\n",
    "  pseudoroot colour: alpha_mn has colour ((m-1) mod r)+1 and carries t_colour\n",
    "  Euler characteristic: integrand x^(-mu) * prod (1 - t_c x_m^-1 x_n)^-1, reversed per component\n",
    "    (x_j^(s) <-> x_(N+1-j)^(s)), then Demazure-symmetrized along the staircase word\n",
    "  block intervals: D(u) = d_1+...+d_u with D(u+r) = D(u)+d; letters reduced mod d\n",
);

#[derive(Parser)]
#[command(name = "kshoji", version, long_version = CONVENTIONS)]
#[command(about = "Kostka-Shoji polynomials for multipartitions and their cross-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One polynomial K_{λμ}.
    Kostka(KostkaArgs),
    /// All dominant pairs of a given size.
    Table(TableArgs),
    /// The pseudoroot table as CSV.
    Pseudoroots(ShapeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Block words of a flag type.
    Words(WordsArgs),
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct KostkaArgs {
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Use the single-variable partition function.
    #[arg(long)]
    single: bool,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    size: i64,
    /// Number of parts per component; defaults to max(size, 1).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    /// Also compare every polynomial with its value after padding to N + 1.
    #[arg(long)]
    compare_padding: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Charge,
    Lemma31,
    Lemma32,
    Cor33,
    Triangularity,
    Positivity,
    Specialization,
    Words,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// charge: largest partition size; sweeps: largest total size.
    #[arg(long)]
    size: Option<usize>,
    /// lemma31: largest r and N.
    #[arg(long, default_value_t = 5)]
    max: usize,
    /// lemma32: largest r; cor33: shape; sweeps: largest r.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WordsArgs {
    #[arg(long)]
    r: usize,
    /// Comma-separated dimension vector; implied by --standard-flag.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long, conflicts_with_all = ["i", "a"])]
    standard_flag: Option<usize>,
    /// Comma-separated vertex sequence.
    #[arg(long, requires = "a")]
    i: Option<String>,
    /// Comma-separated step sizes.
    #[arg(long, requires = "i")]
    a: Option<String>,
    /// Check every block for reducedness; exit 1 if one fails.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    json: bool,
}

/// How a subcommand ended, short of an I/O failure.
enum Outcome {
    Ok,
    CheckFailed,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_list(s: &str) -> Result<Vec<usize>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| usage(format!("bad integer {p:?} in {s:?}")))
        })
        .collect()
}

fn check_shape(m: &Multipartition, r: Option<usize>, n: Option<usize>) -> Result<(), Error> {
    if r.is_some_and(|r| r != m.r()) || n.is_some_and(|n| n != m.n()) {
        return Err(usage(format!(
            "{m} has shape r={}, N={}, not the requested one",
            m.r(),
            m.n()
        )));
    }
    Ok(())
}

fn run_kostka(
    args: &KostkaArgs,
    out: &mut dyn Write,
) -> Result<Outcome, Box<dyn std::error::Error>> {
    let lambda: Multipartition = args.lambda.parse()?;
    let mu: Multipartition = args.mu.parse()?;
    check_shape(&lambda, args.r, args.n)?;
    check_shape(&mu, args.r, args.n)?;
    let engine = KostkaEngine::new(lambda.r(), lambda.n());
    let poly = if args.single {
        engine.kostka_single(&lambda, &mu)?
    } else {
        engine.kostka(&lambda, &mu)?.poly
    };
    let row = TableRow { lambda, mu, poly };
    if args.json {
        writeln!(out, "{}", row.to_json())?;
    } else if args.csv {
        writeln!(out, "lambda,mu,poly\n{}", row.to_csv_line())?;
    } else {
        writeln!(out, "{}", row.poly)?;
    }
    Ok(Outcome::Ok)
}

fn render_table(rows: &[TableRow], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str("lambda,mu,poly\n");
            for row in rows {
                s.push_str(&row.to_csv_line());
                s.push('\n');
            }
        }
        Format::Json => {
            s.push_str("[\n");
            for (i, row) in rows.iter().enumerate() {
                s.push_str(&row.to_json().to_string());
                s.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
            }
            s.push_str("]\n");
        }
        Format::Text => {
            for row in rows {
                s.push_str(&format!("{}  {}  {}\n", row.lambda, row.mu, row.poly));
            }
        }
    }
    s
}

fn run_table(args: &TableArgs, out: &mut dyn Write) -> Result<Outcome, Box<dyn std::error::Error>> {
    if args.r == 0 || args.size < 0 {
        return Err(usage("r must be positive and size nonnegative").into());
    }
    let n = args.n.unwrap_or(args.size.max(1) as usize);
    if n == 0 {
        return Err(usage("N must be positive").into());
    }
    let rows = kostka_table(args.r, n, args.size, args.threads as usize)?;
    let text = render_table(&rows, args.format);
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if args.compare_padding {
        let diffs = verify::compare_padding(args.r, n, args.size)?;
        // exploratory: differences are reported, not treated as failures
        eprintln!(
            "padding N={n} -> N={}: {} differing pairs",
            n + 1,
            diffs.len()
        );
        for ((l, m), (a, b)) in diffs {
            eprintln!("  {l}  {m}: {a} vs {b}");
        }
    }
    Ok(Outcome::Ok)
}

fn run_verify(
    args: &VerifyArgs,
    out: &mut dyn Write,
) -> Result<Outcome, Box<dyn std::error::Error>> {
    let threads = args.threads as usize;
    let reports: Vec<Report> = match args.suite {
        Suite::Charge => vec![verify::charge_suite(args.size.unwrap_or(6))?],
        Suite::Lemma31 => vec![verify::lemma31_suite(args.max)],
        Suite::Lemma32 => vec![verify::lemma32_suite(
            args.r.unwrap_or(3),
            args.n.unwrap_or(3),
            args.bound,
            args.max_degree.unwrap_or(4),
        )?],
        Suite::Cor33 => {
            let mu: Multipartition = match &args.mu {
                Some(s) => s.parse()?,
                None => {
                    let (r, n) = args
                        .r
                        .zip(args.n)
                        .ok_or_else(|| usage("cor33 needs --mu or both --r and --n"))?;
                    Multipartition::zero(r, n)
                }
            };
            check_shape(&mu, args.r, args.n)?;
            vec![verify::cor33_suite(&mu, args.max_degree.unwrap_or(3))?]
        }
        Suite::Triangularity | Suite::Positivity | Suite::Specialization => {
            let sweep =
                verify::property_sweep(args.r.unwrap_or(3), args.size.unwrap_or(5), threads)?;
            vec![match args.suite {
                Suite::Triangularity => sweep.triangularity,
                Suite::Positivity => sweep.positivity,
                _ => sweep.specialization,
            }]
        }
        Suite::Words => vec![verify::words_suite(args.seed, args.count, 8, 6, 3, 6)?],
    };
    let passed = reports.iter().all(Report::passed);
    for report in &reports {
        if args.json {
            writeln!(out, "{}", serde_json::to_string(report)?)?;
        } else {
            writeln!(out, "{report}")?;
        }
    }
    Ok(if passed {
        Outcome::Ok
    } else {
        Outcome::CheckFailed
    })
}

fn run_words(args: &WordsArgs, out: &mut dyn Write) -> Result<Outcome, Box<dyn std::error::Error>> {
    let ft = match (args.standard_flag, &args.i, &args.a) {
        (Some(n), _, _) => {
            let ft = FlagType::standard(args.r, n);
            if let Some(dims) = &args.dims {
                if parse_list(dims)? != ft.dims {
                    return Err(
                        usage(format!("--dims {dims} disagrees with the standard type")).into(),
                    );
                }
            }
            ft
        }
        (None, Some(i), Some(a)) => {
            let dims = args
                .dims
                .as_deref()
                .ok_or_else(|| usage("--dims is required with --i/--a"))?;
            FlagType::new(args.r, parse_list(dims)?, parse_list(i)?, parse_list(a)?)?
        }
        _ => return Err(usage("give --standard-flag N or both --i and --a").into()),
    };
    let d = ft.total_dim();
    let check = verify::check_flag_type(&ft)?;
    if args.json {
        let blocks: Vec<Value> = check
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "n": b.n,
                    "interval": [b.interval.lower, b.interval.upper],
                    "residues": b.residues,
                    "word": b.word,
                    "reduced": kshoji::affine::is_reduced(d, &b.word),
                })
            })
            .collect();
        let doc = json!({
            "flag_type": check.flag_type,
            "d": d,
            "blocks": blocks,
            "concatenation_reduced": check.concatenation_reduced,
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(
            out,
            "r={} dims={:?} i={:?} a={:?} d={d}",
            ft.r, ft.dims, ft.i_seq, ft.a_seq
        )?;
        for b in build_word_sequence(&ft)? {
            let join = |v: &[usize]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(
                out,
                "u_{}: [{}, {}] residues ({}) word ({}) reduced={}",
                b.n,
                b.interval.lower,
                b.interval.upper,
                join(&b.residues),
                join(&b.word),
                kshoji::affine::is_reduced(d, &b.word)
            )?;
        }
        writeln!(out, "concatenation reduced={}", check.concatenation_reduced)?;
    }
    if args.verify && !check.blocks_reduced {
        return Ok(Outcome::CheckFailed);
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Kostka(a) => run_kostka(a, &mut out),
        Command::Table(a) => run_table(a, &mut out),
        Command::Pseudoroots(a) => {
            if a.r == 0 || a.n == 0 {
                Err(usage("r and N must be positive").into())
            } else {
                out.write_all(PseudorootSystem::build(a.r, a.n).to_csv().as_bytes())
                    .map(|_| Outcome::Ok)
                    .map_err(Into::into)
            }
        }
        Command::Verify(a) => run_verify(a, &mut out),
        Command::Words(a) => run_words(a, &mut out),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
