//! Command-line front end: argument types, input parsing and output records.
//!
//! Exit codes: 0 found (or selftest/bench success), 1 none, 2 usage,
//! input or internal error.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lcf::{solve_detailed, MatchResult, SolveOptions};
use crate::oracle::{hamming, lcf_k_brute};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Largest `|X| + |Y|` the oracle subcommand accepts.
pub const ORACLE_LIMIT: usize = 20_000;

#[derive(Debug, Parser)]
#[command(
    name = "lcfk",
    version,
    about = "Longest common factor with at most k mismatches",
    long_about = "Longest common factor with at most k mismatches.\n\n\
                  Coordinates are 0-based and half-open: x_end is one past the last symbol."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the solver on two sequences.
    Find(FindArgs),
    /// Run the quadratic reference on two sequences.
    Oracle(FindArgs),
    /// Check the built-in worked examples.
    Selftest,
    /// Time the solver on random inputs of doubling size.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Raw,
    Fasta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    /// Mismatch budget.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Report only factors at least this long.
    #[arg(long = "min-len", default_value_t = 1)]
    pub min_len: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long = "input-format", value_enum, default_value_t = InputFormat::Raw)]
    pub input_format: InputFormat,
    /// Worker threads for the solver.
    #[arg(long, env = "LCFK_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Fill in `elapsed_ms`; without it the field is null and output is
    /// reproducible.
    #[arg(long)]
    pub timing: bool,
    /// First sequence, or `-` for stdin.
    pub x: PathBuf,
    /// Second sequence, or `-` for stdin.
    pub y: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub sigma: u8,
    /// Smallest length; each further row doubles it.
    #[arg(long, default_value_t = 25_000)]
    pub from: usize,
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
    /// Fixed minimum length; defaults to `ceil(log2(n)^4)` per row.
    #[arg(long = "min-len")]
    pub min_len: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, env = "LCFK_THREADS", default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InputError {
    #[error("empty FASTA input")]
    EmptyFasta,
    #[error("FASTA input must start with a '>' header line")]
    MissingHeader,
    #[error("FASTA input has more than one record (second header on line {0})")]
    MultipleRecords(usize),
}

/// Raw input: the bytes as given, minus trailing line terminators.
pub fn parse_raw(bytes: &[u8]) -> Vec<u8> {
    let mut end = bytes.len();
    while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    bytes[..end].to_vec()
}

/// The sequence of a single-record FASTA file. Whitespace inside the
/// sequence is dropped; `;` lines are comments.
pub fn parse_fasta(bytes: &[u8]) -> Result<Vec<u8>, InputError> {
    let mut lines = bytes
        .split(|&b| b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
        .enumerate()
        .filter(|(_, l)| !l.iter().all(u8::is_ascii_whitespace) && !l.starts_with(b";"));
    match lines.next() {
        None => return Err(InputError::EmptyFasta),
        Some((_, l)) if !l.starts_with(b">") => return Err(InputError::MissingHeader),
        Some(_) => {}
    }
    let mut seq = Vec::new();
    for (no, line) in lines {
        if line.starts_with(b">") {
            return Err(InputError::MultipleRecords(no + 1));
        }
        seq.extend(line.iter().filter(|b| !b.is_ascii_whitespace()));
    }
    Ok(seq)
}

pub fn parse_input(bytes: &[u8], format: InputFormat) -> Result<Vec<u8>, InputError> {
    match format {
        InputFormat::Raw => Ok(parse_raw(bytes)),
        InputFormat::Fasta => parse_fasta(bytes),
    }
}

/// One output record. Absent values serialise as `null` in JSON and `-`
/// in TSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub status: &'static str,
    pub length: usize,
    pub x_start: Option<usize>,
    pub x_end: Option<usize>,
    pub y_start: Option<usize>,
    pub y_end: Option<usize>,
    pub mismatches: Vec<usize>,
    pub k: usize,
    pub min_len: usize,
    pub elapsed_ms: Option<f64>,
}

const TSV_HEADER: &str =
    "status\tlength\tx_start\tx_end\ty_start\ty_end\tmismatches\tk\tmin_len\telapsed_ms";

impl Record {
    fn none(k: usize, min_len: usize) -> Self {
        Record {
            status: "none",
            length: 0,
            x_start: None,
            x_end: None,
            y_start: None,
            y_end: None,
            mismatches: Vec::new(),
            k,
            min_len,
            elapsed_ms: None,
        }
    }

    fn found(length: usize, xs: usize, ys: usize, mismatches: Vec<usize>, k: usize, min_len: usize) -> Self {
        Record {
            status: "found",
            length,
            x_start: Some(xs),
            x_end: Some(xs + length),
            y_start: Some(ys),
            y_end: Some(ys + length),
            mismatches,
            k,
            min_len,
            elapsed_ms: None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.status == "found"
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string(self).expect("record serialises"),
            OutputFormat::Tsv => {
                let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
                let mism = if self.mismatches.is_empty() {
                    "-".to_string()
                } else {
                    let v: Vec<String> = self.mismatches.iter().map(|m| m.to_string()).collect();
                    v.join(",")
                };
                format!(
                    "{TSV_HEADER}\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    self.status,
                    self.length,
                    opt(self.x_start),
                    opt(self.x_end),
                    opt(self.y_start),
                    opt(self.y_end),
                    mism,
                    self.k,
                    self.min_len,
                    self.elapsed_ms.map_or("-".to_string(), |t| format!("{t:.3}")),
                )
            }
        }
    }
}

fn read_source(path: &Path, stdin: &mut dyn Read, used_stdin: &mut bool) -> Result<Vec<u8>, String> {
    if path.as_os_str() == "-" {
        if *used_stdin {
            return Err("stdin can be used for only one input".into());
        }
        *used_stdin = true;
        let mut buf = Vec::new();
        stdin
            .read_to_end(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

fn load(args: &FindArgs, stdin: &mut dyn Read) -> Result<(Vec<u8>, Vec<u8>), String> {
    let mut used = false;
    let mut one = |p: &Path| -> Result<Vec<u8>, String> {
        let raw = read_source(p, stdin, &mut used)?;
        parse_input(&raw, args.input_format).map_err(|e| format!("{}: {e}", p.display()))
    };
    let x = one(&args.x)?;
    let y = one(&args.y)?;
    Ok((x, y))
}

/// Runs the solver or the oracle; returns the record to print.
pub fn execute(args: &FindArgs, oracle: bool, stdin: &mut dyn Read) -> Result<Record, String> {
    if args.min_len == 0 {
        return Err(crate::Error::ZeroMinLength.to_string());
    }
    let (x, y) = load(args, stdin)?;
    crate::textindex::check_alphabet("X", &x).map_err(|e| e.to_string())?;
    crate::textindex::check_alphabet("Y", &y).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let mut record = if oracle {
        if x.len() + y.len() > ORACLE_LIMIT {
            return Err(format!(
                "oracle input too large: {} symbols in total, limit is {ORACLE_LIMIT}",
                x.len() + y.len()
            ));
        }
        let r = lcf_k_brute(&x, &y, args.k);
        if r.length >= args.min_len {
            let mism = (0..r.length)
                .filter(|&i| x[r.x_start + i] != y[r.y_start + i])
                .collect();
            Record::found(r.length, r.x_start, r.y_start, mism, args.k, args.min_len)
        } else {
            Record::none(args.k, args.min_len)
        }
    } else {
        let options = SolveOptions {
            threads: args.threads,
        };
        match solve_detailed(&x, &y, args.k, args.min_len, options)
            .map_err(|e| e.to_string())?
            .result
        {
            MatchResult::Found(m) => {
                Record::found(m.length, m.x_start, m.y_start, m.mismatches, args.k, args.min_len)
            }
            MatchResult::NotFound => Record::none(args.k, args.min_len),
        }
    };
    if args.timing {
        record.elapsed_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(record)
}

/// Named pass/fail checks over the built-in worked examples.
pub fn golden_checks() -> Vec<(&'static str, bool)> {
    use crate::coloredtrees;
    use crate::diffcover::DifferenceCover;
    use crate::errata::{generate, render_symbols};
    use crate::textindex::{SuffixRef, TextId, TextIndex};

    let mut out = Vec::new();

    let ex1 = crate::lcf::solve(b"bbaaabb", b"abababa", 1, 5);
    out.push((
        "example: bbaaabb / abababa, k=1, min-len 5 gives length 5",
        matches!(&ex1, Ok(MatchResult::Found(m)) if m.length == 5
            && hamming(&b"bbaaabb"[m.x_range()], &b"abababa"[m.y_range()]) <= 1),
    ));

    let table = (|| -> Option<bool> {
        let idx = TextIndex::build(b"abacb", b"").ok()?;
        let fam: Vec<SuffixRef> = (0..5).map(|i| SuffixRef::new(TextId::X, i)).collect();
        let trie = generate(&fam, 1, &idx).ok()?;
        let expect: [(usize, &[&str]); 5] = [
            (4, &["a", "b", "$"]),
            (3, &["ab", "cb", "$b"]),
            (2, &["abb", "acb"]),
            (1, &["aacb", "bacb", "$acb"]),
            (0, &["abacb"]),
        ];
        let contained = expect.iter().all(|&(i, want)| {
            let got: Vec<String> = trie
                .members_of(i)
                .map(|m| render_symbols(&trie.materialize(m, &idx)))
                .collect();
            want.iter().all(|w| got.iter().any(|g| g == w))
        });
        Some(contained && trie.lcp_d(fam[2], fam[3], 1).ok()? == 1)
    })();
    out.push(("errata family of abacb, k=1", table == Some(true)));

    let fig1 = DifferenceCover::from_residues(6, &[2, 3, 5]).map(|c| c.shift(3, 10));
    out.push(("difference cover {2,3,5} mod 6: h(3,10) = 5", fig1 == Ok(5)));

    let fig2 = coloredtrees::solve(&crate::gen::figure_two());
    out.push((
        "colored trees example: weight 3 via blue 4 / red 2",
        matches!(fig2, Ok(Some(a)) if a.value == 3 && a.blue == 4 && a.red == 2),
    ));
    out
}

/// `ceil(log2(n)^4)`, the long-factor regime.
pub fn long_min_len(n: usize) -> usize {
    (n.max(2) as f64).log2().powi(4).ceil() as usize
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> io::Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    writeln!(out, "n\tmin_len\tk\tlength\tms")?;
    let mut n = args.from;
    for _ in 0..args.steps {
        let l = args.min_len.unwrap_or_else(|| long_min_len(n)).clamp(1, n.max(1));
        let planted = l + (n - l) / 2;
        let (x, y) = crate::gen::planted_pair(&mut rng, n, args.sigma.max(1), planted, args.k);
        let started = Instant::now();
        let r = solve_detailed(&x, &y, args.k, l, SolveOptions { threads: args.threads });
        let ms = started.elapsed().as_secs_f64() * 1e3;
        match r {
            Ok(r) => writeln!(out, "{n}\t{l}\t{}\t{}\t{ms:.1}", args.k, r.result.length())?,
            Err(e) => {
                writeln!(out, "{n}\t{l}\t{}\terror: {e}\t{ms:.1}", args.k)?;
                return Ok(EXIT_ERROR);
            }
        }
        n *= 2;
    }
    Ok(EXIT_FOUND)
}

/// Runs one parsed command line against explicit streams.
pub fn run_with(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> io::Result<i32> {
        match &cli.command {
            Command::Find(args) | Command::Oracle(args) => {
                let oracle = matches!(cli.command, Command::Oracle(_));
                match execute(args, oracle, stdin) {
                    Ok(record) => {
                        writeln!(out, "{}", record.render(args.format))?;
                        Ok(if record.is_found() { EXIT_FOUND } else { EXIT_NONE })
                    }
                    Err(msg) => {
                        writeln!(err, "lcfk: {msg}")?;
                        Ok(EXIT_ERROR)
                    }
                }
            }
            Command::Selftest => {
                let mut report = String::new();
                let mut ok = true;
                for (name, pass) in golden_checks() {
                    ok &= pass;
                    let _ = writeln!(report, "{} {name}", if pass { "ok  " } else { "FAIL" });
                }
                out.write_all(report.as_bytes())?;
                if !ok {
                    writeln!(err, "lcfk: selftest failed")?;
                }
                Ok(if ok { EXIT_FOUND } else { EXIT_ERROR })
            }
            Command::Bench(args) => bench(args, out),
        }
    })();
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "lcfk: {e}");
        EXIT_ERROR
    })
}

/// Parses `std::env::args` and runs against the process streams.
pub fn main_exit_code() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_FOUND };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(&cli, &mut io::stdin().lock(), &mut stdout.lock(), &mut stderr.lock())
}
