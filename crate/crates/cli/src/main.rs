mod bench;
mod ingest;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wavelet_core::construct::{construct, Algorithm, ConstructionPlan};
use wavelet_core::meter::CountingAllocator;
use wavelet_core::oracle::{naive_build, OracleConfig};
use wavelet_core::structures::{StructureKind, WaveletIndex, WaveletLevels};
use wavelet_core::wt2wm::convert_wt_to_wm;
use wavelet_core::Error;

use crate::bench::{bench_one, CSV_HEADER};
use crate::ingest::{ingest, AlphabetMode, IngestedText};

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

#[derive(Parser, Debug)]
#[command(
    name = "wavelet",
    version,
    about = "Build, query and benchmark wavelet trees and wavelet matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an index file from a text.
    Build(BuildArgs),
    /// Answer one access, rank or select query on an index file.
    Query(QueryArgs),
    /// Convert a wavelet tree index into a wavelet matrix index.
    Convert(ConvertArgs),
    /// Compare a construction against the reference oracle bit for bit.
    Verify(VerifyArgs),
    /// Time constructions and write CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct TextArgs {
    /// Text file to index.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "byte")]
    alphabet: AlphabetMode,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    text: TextArgs,
    #[arg(long, value_enum, default_value = "wt")]
    structure: Structure,
    #[arg(long, value_enum, default_value = "ps")]
    algo: Algo,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Index file to write.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct QueryArgs {
    /// Index file to query.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long)]
    symbol: Option<u32>,
    #[arg(long)]
    pos: Option<usize>,
    /// 1-based occurrence number for select.
    #[arg(long)]
    ordinal: Option<usize>,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// Wavelet tree index file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    text: TextArgs,
    #[arg(long, value_enum, default_value = "wt")]
    structure: Structure,
    /// Index file to check; without it the text is rebuilt with `--algo`.
    #[arg(long, conflicts_with_all = ["algo", "threads"])]
    index: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "ps")]
    algo: Algo,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Text files; each gets its own rows.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "byte")]
    alphabet: AlphabetMode,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "wt,wm")]
    structure: Vec<Structure>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "pc,ps,levelpar,ddpc,ddps")]
    algo: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_value = "1", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Vec<u32>,
    /// Repetitions per configuration; must be odd so the median is a run.
    #[arg(long, default_value_t = 5)]
    runs: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Structure {
    Wt,
    Wm,
}

impl From<Structure> for StructureKind {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Wt => StructureKind::Tree,
            Structure::Wm => StructureKind::Matrix,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Pc,
    Ps,
    Levelpar,
    Ddpc,
    Ddps,
    Oracle,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self.algorithm() {
            Some(a) => a.as_str(),
            None => "oracle",
        }
    }

    fn algorithm(self) -> Option<Algorithm> {
        match self {
            Algo::Pc => Some(Algorithm::Pc),
            Algo::Ps => Some(Algorithm::Ps),
            Algo::Levelpar => Some(Algorithm::LevelParallelPc),
            Algo::Ddpc => Some(Algorithm::DdPc),
            Algo::Ddps => Some(Algorithm::DdPs),
            Algo::Oracle => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Access,
    Rank,
    Select,
}

/// A failed command, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Mismatch(String),
    Io(anyhow::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Format(_) => Failure::Io(e.into()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(e: impl Into<anyhow::Error>, what: impl FnOnce() -> String) -> Failure {
    Failure::Io(e.into().context(what()))
}

/// Construction of the ingested text, without rank/select support.
pub fn build_levels(
    text: &IngestedText,
    kind: StructureKind,
    algo: Algo,
    threads: usize,
) -> Result<WaveletLevels, Failure> {
    let sigma = text.structure_sigma();
    let built = match algo.algorithm() {
        Some(algorithm) => construct(&text.symbols, sigma, &ConstructionPlan::new(kind, algorithm, threads)),
        None => naive_build(&text.symbols, sigma, kind, &OracleConfig::default()),
    };
    Ok(built?)
}

fn load_text(args: &TextArgs) -> Result<IngestedText, Failure> {
    ingest(&args.input, args.alphabet).map_err(|e| io_failure(e, || format!("reading {}", args.input.display())))
}

fn load_index(path: &Path) -> Result<WaveletIndex, Failure> {
    let file = File::open(path).map_err(|e| io_failure(e, || format!("opening {}", path.display())))?;
    WaveletIndex::read_from(&mut BufReader::new(file))
        .map_err(|e| io_failure(e, || format!("loading index {}", path.display())))
}

fn save<T>(
    path: &Path,
    value: &T,
    write: impl FnOnce(&T, &mut BufWriter<File>) -> wavelet_core::Result<()>,
) -> Result<(), Failure> {
    let context = || format!("writing {}", path.display());
    let file = File::create(path).map_err(|e| io_failure(e, context))?;
    let mut out = BufWriter::new(file);
    write(value, &mut out).map_err(|e| io_failure(e, context))?;
    out.flush().map_err(|e| io_failure(e, context))
}

fn cmd_build(args: BuildArgs) -> Result<(), Failure> {
    let text = load_text(&args.text)?;
    let levels = build_levels(&text, args.structure.into(), args.algo, args.threads as usize)?;
    save(&args.output, &levels, |l, w| l.write_to(w))?;
    println!(
        "built {} n={} sigma={} levels={} with {} on {} thread(s)",
        levels.kind.as_str(),
        levels.len,
        levels.sigma,
        levels.levels.len(),
        args.algo.name(),
        args.threads
    );
    Ok(())
}

fn cmd_query(args: QueryArgs) -> Result<(), Failure> {
    let index = load_index(&args.input)?;
    let n = index.len();
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--op {:?} needs --{flag}", args.op).to_lowercase()))
    };
    let answer = match args.op {
        Op::Access => {
            let pos = need(args.pos, "pos")?;
            if pos >= n {
                return Err(Failure::Usage(format!(
                    "position {pos} is not below the text length {n}"
                )));
            }
            index.access(pos).to_string()
        }
        Op::Rank => {
            let symbol = need(args.symbol.map(|s| s as usize), "symbol")?;
            let pos = need(args.pos, "pos")?;
            if pos > n {
                return Err(Failure::Usage(format!("position {pos} exceeds the text length {n}")));
            }
            if symbol >= index.sigma().max(1) {
                "0".to_string()
            } else {
                index.rank(symbol as u32, pos).to_string()
            }
        }
        Op::Select => {
            let symbol = need(args.symbol.map(|s| s as usize), "symbol")?;
            let ordinal = need(args.ordinal, "ordinal")?;
            let found = if symbol >= index.sigma().max(1) {
                Err(Error::OccurrenceAbsent)
            } else {
                index.select(symbol as u32, ordinal)
            };
            match found {
                Ok(p) => p.to_string(),
                Err(Error::OccurrenceAbsent) => "none".to_string(),
                Err(e) => return Err(e.into()),
            }
        }
    };
    println!("{answer}");
    Ok(())
}

fn cmd_convert(args: ConvertArgs) -> Result<(), Failure> {
    let index = load_index(&args.input)?;
    let WaveletIndex::Tree(tree) = index else {
        return Err(Failure::Usage(format!(
            "{} is already a wavelet matrix",
            args.input.display()
        )));
    };
    let matrix = WaveletIndex::Matrix(convert_wt_to_wm(&tree));
    save(&args.output, &matrix, |m, w| m.write_to(w))?;
    println!("converted n={} sigma={}", matrix.len(), matrix.sigma());
    Ok(())
}

fn describe_mismatch(expected: &WaveletLevels, got: &WaveletLevels) -> Option<String> {
    if (expected.kind, expected.len, expected.sigma) != (got.kind, got.len, got.sigma) {
        return Some(format!(
            "header differs: expected {} n={} sigma={}, found {} n={} sigma={}",
            expected.kind.as_str(),
            expected.len,
            expected.sigma,
            got.kind.as_str(),
            got.len,
            got.sigma
        ));
    }
    if let Some((level, bit)) = expected.first_divergence(got) {
        return Some(format!("first divergence at level {level}, bit {bit}"));
    }
    if let Some(l) = (0..expected.zeros.len()).find(|&l| got.zeros.get(l) != Some(&expected.zeros[l])) {
        return Some(format!("zero count of level {l} differs"));
    }
    None
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let text = load_text(&args.text)?;
    let kind = args.structure.into();
    let expected = build_levels(&text, kind, Algo::Oracle, 1)?;
    let got = match &args.index {
        Some(path) => {
            let file = File::open(path).map_err(|e| io_failure(e, || format!("opening {}", path.display())))?;
            WaveletLevels::read_from(&mut BufReader::new(file))
                .map_err(|e| io_failure(e, || format!("loading index {}", path.display())))?
        }
        None => build_levels(&text, kind, args.algo, args.threads as usize)?,
    };
    match describe_mismatch(&expected, &got) {
        None => {
            println!("OK");
            Ok(())
        }
        Some(why) => Err(Failure::Mismatch(why)),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.runs == 0 || args.runs.is_multiple_of(2) {
        return Err(Failure::Usage(format!("--runs must be odd, got {}", args.runs)));
    }
    let sink: Box<dyn Write> = match &args.csv {
        Some(path) => {
            Box::new(File::create(path).map_err(|e| io_failure(e, || format!("creating {}", path.display())))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    let csv_failure = |e: csv::Error| Failure::Io(anyhow::Error::new(e).context("writing CSV"));
    csv.write_record(CSV_HEADER).map_err(csv_failure)?;
    for input in &args.input {
        let text =
            ingest(input, args.alphabet).map_err(|e| io_failure(e, || format!("reading {}", input.display())))?;
        for &structure in &args.structure {
            for &algo in &args.algo {
                for &threads in &args.threads {
                    let row = bench_one(input, &text, structure.into(), algo, threads as usize, args.runs)?;
                    eprintln!(
                        "{} {} {} p={}: {:.6}s, aux {} B, total {} B",
                        input.display(),
                        row.kind.as_str(),
                        algo.name(),
                        threads,
                        row.median_seconds,
                        row.aux_bytes,
                        row.total_bytes
                    );
                    csv.write_record(row.record()).map_err(csv_failure)?;
                }
            }
        }
    }
    csv.flush().map_err(|e| io_failure(e, || "writing CSV".to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Query(a) => cmd_query(a),
        Command::Convert(a) => cmd_convert(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Mismatch(msg) => eprintln!("MISMATCH: {msg}"),
                Failure::Io(e) => eprintln!("error: {e:#}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
