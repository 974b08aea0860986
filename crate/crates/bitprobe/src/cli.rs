//! Command-line front end. Exit codes: 0 success, PASS or YES; 1 NO; 2 error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use bitprobe_core::{build_from_ordinals, query, ElementAddr, Params, Structure, TableId};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::format::{read_file, write_file};
use crate::oracle::{
    space_audit, verify_exhaustive, verify_random, write_space_csv, ExhaustiveOptions, SPACE_HEADER,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bitprobe",
    version,
    about = "Two-bitprobe membership for sets of at most four elements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the structure for a set and write it to a file.
    Build(BuildArgs),
    /// Answer a membership query with two probes.
    Query(QueryArgs),
    /// Check the scheme against brute-force ground truth.
    Verify(VerifyArgs),
    /// Print exact table sizes for a range of b.
    Stats(StatsArgs),
    /// Print a structure file's parameters and set bits.
    Dump(DumpArgs),
}

#[derive(Debug, Args)]
#[group(id = "size", required = true, multiple = false)]
pub struct SizeArgs {
    /// Block size; the universe has b^6 elements.
    #[arg(long, group = "size")]
    pub b: Option<u64>,
    /// Universe size; rounded up to the next sixth power.
    #[arg(long, group = "size")]
    pub m: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum ElementFormat {
    #[default]
    Ordinal,
    /// Also print (s,x,y,i).
    Tuple,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    /// Comma-separated element ordinals, at most four distinct.
    #[arg(long, conflicts_with = "set_file")]
    pub set: Option<String>,
    /// File of ordinals separated by commas or whitespace.
    #[arg(long)]
    pub set_file: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub element: u64,
    #[arg(long, value_enum, default_value_t)]
    pub fmt: ElementFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub b: u64,
    /// Check every subset of size at most --max-n.
    #[arg(long, conflicts_with = "trials")]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Permit exhaustive runs at b = 3.
    #[arg(long)]
    pub allow_b3: bool,
    /// Number of random subsets.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Size of each random subset.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Inclusive range LO..HI.
    #[arg(long, value_parser = parse_range)]
    pub b_range: (u64, u64),
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub fmt: ElementFormat,
}

pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Parses ordinals separated by commas and/or whitespace.
pub fn parse_set(s: &str) -> Result<Vec<u64>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|e| format!("bad ordinal {t:?}: {e}")))
        .collect()
}

fn tuple(e: &ElementAddr) -> String {
    format!(
        "(s={},x={},y={},i={})",
        e.block.s, e.block.x, e.block.y, e.i
    )
}

pub fn run(cli: Cli, out: &mut impl Write) -> u8 {
    let result = match cli.command {
        Command::Build(args) => cmd_build(args, out),
        Command::Query(args) => cmd_query(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Stats(args) => cmd_stats(args, out),
        Command::Dump(args) => cmd_dump(args, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}

type CmdResult = Result<u8, String>;

fn io_err(e: std::io::Error) -> String {
    e.to_string()
}

fn cmd_build(args: BuildArgs, out: &mut impl Write) -> CmdResult {
    let params = match (args.size.b, args.size.m) {
        (Some(b), _) => Params::new(b).map_err(|e| e.to_string())?,
        (None, Some(m)) => {
            let p = Params::for_universe(m).map_err(|e| e.to_string())?;
            if p.universe_size() != m {
                writeln!(
                    out,
                    "note: universe of {m} padded to b^6 = {} (b = {})",
                    p.universe_size(),
                    p.b()
                )
                .map_err(io_err)?;
            }
            p
        }
        (None, None) => unreachable!("clap requires --b or --m"),
    };
    let text = match (&args.set, &args.set_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        (None, None) => String::new(),
    };
    let set = parse_set(&text)?;
    let st = build_from_ordinals(&params, &set).map_err(|e| e.to_string())?;
    write_file(&args.out, &st).map_err(|e| e.to_string())?;
    writeln!(
        out,
        "wrote {}: b = {}, m = {}, |A| = {}, |B| = {}, |C| = {}, total = {} bits",
        args.out.display(),
        params.b(),
        params.universe_size(),
        st.table(TableId::A).len(),
        st.table(TableId::B).len(),
        st.table(TableId::C).len(),
        st.total_bits()
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

fn load(path: &Path) -> Result<Structure, String> {
    read_file(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_query(args: QueryArgs, out: &mut impl Write) -> CmdResult {
    let st = load(&args.input)?;
    let e = st
        .params()
        .element_from_ordinal(args.element)
        .map_err(|e| e.to_string())?;
    let answer = query(&st, &e).map_err(|e| e.to_string())?;
    if let ElementFormat::Tuple = args.fmt {
        writeln!(out, "element {} = {}", args.element, tuple(&e)).map_err(io_err)?;
    }
    writeln!(out, "{}", if answer.member { "YES" } else { "NO" }).map_err(io_err)?;
    writeln!(out, "{}", answer.trace).map_err(io_err)?;
    Ok(if answer.member { EXIT_OK } else { EXIT_NO })
}

fn cmd_verify(args: VerifyArgs, out: &mut impl Write) -> CmdResult {
    let report = if args.exhaustive {
        verify_exhaustive(
            args.b,
            ExhaustiveOptions {
                max_n: args.max_n,
                allow_b3: args.allow_b3,
                ..Default::default()
            },
        )
    } else if let Some(trials) = args.trials {
        verify_random(args.b, trials, args.seed, args.n)
    } else {
        return Err("verify needs --exhaustive or --trials".into());
    }
    .map_err(|e| e.to_string())?;

    if args.csv {
        report.write_csv(&mut *out).map_err(|e| e.to_string())?;
    } else {
        writeln!(out, "{report}").map_err(io_err)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_NO })
}

fn cmd_stats(args: StatsArgs, out: &mut impl Write) -> CmdResult {
    let (lo, hi) = args.b_range;
    let rows = space_audit(lo..=hi).map_err(|e| e.to_string())?;
    if args.csv {
        write_space_csv(&rows, &mut *out).map_err(|e| e.to_string())?;
    } else {
        writeln!(out, "{SPACE_HEADER}").map_err(io_err)?;
        for r in &rows {
            writeln!(out, "{r}").map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_dump(args: DumpArgs, out: &mut impl Write) -> CmdResult {
    let st = load(&args.input)?;
    let p = st.params();
    let mut text = String::new();
    let _ = writeln!(text, "b = {} (m = {})", p.b(), p.universe_size());
    for id in [TableId::A, TableId::B, TableId::C] {
        let t = st.table(id);
        let ones: Vec<String> = t.ones().map(|k| k.to_string()).collect();
        let _ = writeln!(
            text,
            "{id}: {} bits, {} set: [{}]",
            t.len(),
            ones.len(),
            ones.join(", ")
        );
    }
    if let ElementFormat::Tuple = args.fmt {
        let _ = writeln!(text, "A-bit blocks (routed to C):");
        for k in st.table(TableId::A).ones() {
            let blk = p.block_from_ordinal(k).map_err(|e| e.to_string())?;
            let _ = writeln!(text, "  {k} = (s={},x={},y={})", blk.s, blk.x, blk.y);
        }
    }
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(EXIT_OK)
}
