//! `romc`: compile, simulate, verify and search ROM programs.
//!
//! Exit status: 0 success or pass, 1 verification mismatch, 2 parse, arity
//! or other usage error, 3 a quantum program ended in superposition.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rom_core::boolean::{anf_of, truth_table_of};
use rom_core::counts::{count_table, format_table};
use rom_core::render::render;
use rom_core::search::{minimal_program, SearchTarget};
use rom_core::sim::EAGER_SWEEP_LIMIT;
use rom_core::synth::barrington::compile_function_barrington;
use rom_core::synth::circuit::BooleanCircuit;
use rom_core::synth::classical::compile_pair;
use rom_core::synth::quantum::{compile_function, AndStrategy};
use rom_core::verify::{verify_program, verify_with, Report, Verdict};
use rom_core::{Anf, Error, RomProgram, TruthTable, VectorFunction};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NON_CLASSICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "romc", version, about = "Compilers and simulators for ROM-based programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between truth tables and algebraic normal form.
    Anf(AnfArgs),
    /// Compile a boolean function into a program (JSON on stdout).
    Compile(CompileArgs),
    /// Check a program against the function it should compute.
    Verify(VerifyArgs),
    /// Draw a program as a text circuit diagram.
    Render(RenderArgs),
    /// Tabulate ROM-call counts of the conjunction constructions.
    Counts(CountsArgs),
    /// Find a minimum-call two-bit program for the j-way conjunction.
    Search(SearchArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct AnfInput {
    /// Truth table as 0/1 characters (entry 0 first) or 0x-prefixed hex.
    #[arg(long)]
    table: Option<String>,
    /// Monomial list such as `1,1.2`; `0` is the constant 1.
    #[arg(long, allow_hyphen_values = true)]
    monomials: Option<String>,
}

#[derive(Args)]
struct AnfArgs {
    #[command(flatten)]
    input: AnfInput,
    /// Number of ROM bits (monomial input only; defaults to the largest index).
    #[arg(long)]
    vars: Option<usize>,
    /// Print tables in hex.
    #[arg(long)]
    hex: bool,
    /// Also print the normal form as a formula.
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    /// One writable qubit.
    Quantum1,
    /// Two writable classical bits.
    Classical2,
    /// Three writable classical bits via width-5 branching programs.
    Classical3,
}

#[derive(Args)]
struct CompileArgs {
    /// Function spec: `anf:<list>` such as `anf:1,1.2` (u1 ⊕ u1u2),
    /// `table:<bits|0x..>` (entry 0 first, index u1 + 2·u2 + ...; hex packs that string four bits per digit),
    /// `and:<m>`, or `circuit:<expr>` such as `circuit:(and (not x1) x2)`.
    /// classical2 accepts a second occurrence for the second register.
    #[arg(short, long = "function", required = true)]
    functions: Vec<String>,
    #[arg(short, long, value_enum)]
    backend: Backend,
    /// Number of ROM bits; inferred from the functions when omitted.
    #[arg(long)]
    vars: Option<usize>,
    /// Balanced-tree conjunctions (default).
    #[arg(long, conflicts_with = "naive")]
    fast: bool,
    /// One-control-per-level conjunctions.
    #[arg(long)]
    naive: bool,
    /// Write the program here instead of stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Indent the JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Program JSON file; `-` or absent reads stdin.
    program: Option<PathBuf>,
    /// Expected function per writable bit, same syntax as `compile`.
    #[arg(short, long = "function", required = true)]
    functions: Vec<String>,
    /// Check this many random assignments instead of all of them.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RenderArgs {
    /// Program JSON file; `-` or absent reads stdin.
    program: Option<PathBuf>,
}

#[derive(Args)]
struct CountsArgs {
    #[arg(long, default_value_t = 8)]
    j_max: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    j: usize,
    #[arg(long, default_value_t = 12)]
    max_depth: usize,
    /// Allow the four-bit search.
    #[arg(long)]
    enable_j4: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

/// A function spec before its arity is fixed.
enum FunctionSpec {
    Anf(String),
    Table(TruthTable),
    And(usize),
    Circuit(BooleanCircuit),
}

impl FunctionSpec {
    fn parse(s: &str) -> anyhow::Result<Self> {
        let (kind, body) = s
            .split_once(':')
            .with_context(|| format!("function spec {s:?} must look like anf:..., table:..., and:<m> or circuit:..."))?;
        Ok(match kind {
            "anf" => {
                Anf::parse_list(body, None)?;
                FunctionSpec::Anf(body.to_string())
            }
            "table" => FunctionSpec::Table(TruthTable::parse(body)?),
            "and" => {
                let m: usize = body.trim().parse().with_context(|| format!("bad conjunction size {body:?}"))?;
                if m == 0 || m > 63 {
                    bail!("conjunction size must be in 1..=63, got {m}");
                }
                FunctionSpec::And(m)
            }
            "circuit" => FunctionSpec::Circuit(body.parse()?),
            other => bail!("unknown function kind {other:?}"),
        })
    }

    fn natural_arity(&self) -> usize {
        match self {
            FunctionSpec::Anf(s) => Anf::parse_list(s, None).map_or(1, |a| a.num_vars()),
            FunctionSpec::Table(t) => t.num_vars(),
            FunctionSpec::And(m) => *m,
            FunctionSpec::Circuit(c) => c.max_input(),
        }
    }

    fn to_anf(&self, j: usize) -> rom_core::Result<Anf> {
        match self {
            FunctionSpec::Anf(s) => Anf::parse_list(s, Some(j)),
            FunctionSpec::Table(t) if t.num_vars() == j => Ok(anf_of(t)),
            FunctionSpec::Table(t) => Err(Error::ArityMismatch {
                left: t.num_vars(),
                right: j,
            }),
            FunctionSpec::And(m) if *m <= j => Anf::new(j, [(1u64 << m) - 1]),
            FunctionSpec::And(m) => Err(Error::ArityMismatch { left: *m, right: j }),
            FunctionSpec::Circuit(c) if c.max_input() <= j => Ok(anf_of(&TruthTable::from_fn(j, |u| c.evaluate(u))?)),
            FunctionSpec::Circuit(c) => Err(Error::ArityMismatch {
                left: c.max_input(),
                right: j,
            }),
        }
    }
}

fn parse_specs(raw: &[String], j: Option<usize>) -> anyhow::Result<(usize, Vec<Anf>)> {
    let specs = raw.iter().map(|s| FunctionSpec::parse(s)).collect::<anyhow::Result<Vec<_>>>()?;
    let j = j.unwrap_or_else(|| specs.iter().map(FunctionSpec::natural_arity).max().unwrap_or(1));
    let anfs = specs.iter().map(|s| s.to_anf(j)).collect::<rom_core::Result<Vec<_>>>()?;
    Ok((j, anfs))
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{text}")?;
            Ok(())
        }
    }
}

fn cmd_anf(args: AnfArgs) -> anyhow::Result<u8> {
    if let Some(table) = args.input.table {
        if args.vars.is_some() {
            bail!("--vars applies to --monomials only; a table's length fixes its arity");
        }
        let a = anf_of(&TruthTable::parse(&table)?);
        println!("{}", a.to_list_string());
        if args.pretty {
            println!("{a}");
        }
    } else {
        let monomials = args.input.monomials.unwrap_or_default();
        let a = Anf::parse_list(&monomials, args.vars)?;
        let t = truth_table_of(&a)?;
        let text = if args.hex {
            t.to_hex().context("hex output needs at least 2 variables")?
        } else {
            t.to_bit_string()
        };
        println!("{text}");
        if args.pretty {
            println!("{a}");
        }
    }
    Ok(0)
}

fn cmd_compile(args: CompileArgs) -> anyhow::Result<u8> {
    let (j, anfs) = parse_specs(&args.functions, args.vars)?;
    let strategy = if args.naive { AndStrategy::Naive } else { AndStrategy::Fast };
    let program = match (args.backend, anfs.as_slice()) {
        (Backend::Quantum1, [f]) => compile_function(f, j, strategy)?,
        (Backend::Classical3, [f]) => compile_function_barrington(f, j)?,
        (Backend::Classical2, [f]) => compile_pair(f, &Anf::zero(j), j)?,
        (Backend::Classical2, [f1, f2]) => compile_pair(f1, f2, j)?,
        (Backend::Classical2, fs) => bail!("classical2 takes one or two functions, got {}", fs.len()),
        (_, fs) => bail!("this backend takes exactly one function, got {}", fs.len()),
    };
    let json = if args.pretty { program.to_json_pretty() } else { program.to_json() };
    write_output(args.out.as_deref(), &json)?;
    eprintln!("rom_calls={} gates={}", program.rom_call_count(), program.gate_count());
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<u8> {
    let program = RomProgram::from_json(&read_input(args.program.as_deref())?)?;
    let j = program.space().num_rom_bits();
    let n = program.space().num_writable();
    let (_, anfs) = parse_specs(&args.functions, Some(j))?;
    if anfs.len() > n {
        return Err(Error::ArityMismatch {
            left: anfs.len(),
            right: n,
        }
        .into());
    }
    let sampled = args.samples.is_some() || j > EAGER_SWEEP_LIMIT;
    let (verdict, checked) = if sampled {
        let samples = args.samples.unwrap_or(10_000);
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let top = program.space().num_assignments();
        let assignments: Vec<u64> = (0..samples).map(|_| rng.gen_range(0..top)).collect();
        let oracle = |u: u64| {
            anfs.iter()
                .enumerate()
                .fold(0usize, |acc, (k, a)| acc | (a.eval(u) as usize) << k)
        };
        (verify_with(&program, oracle, assignments)?, samples)
    } else {
        let tables = anfs.iter().map(truth_table_of).collect::<rom_core::Result<Vec<_>>>()?;
        let expected = VectorFunction::new(tables)?;
        (verify_program(&program, &expected)?, program.space().num_assignments())
    };
    let report = Report {
        verdict,
        num_rom_bits: j,
        num_writable: n,
        checked,
    };
    println!("{report}");
    Ok(match verdict {
        Verdict::Pass => 0,
        Verdict::Mismatch { .. } => EXIT_MISMATCH,
    })
}

fn cmd_render(args: RenderArgs) -> anyhow::Result<u8> {
    let program = RomProgram::from_json(&read_input(args.program.as_deref())?)?;
    print!("{}", render(&program));
    Ok(0)
}

fn cmd_counts(args: CountsArgs) -> anyhow::Result<u8> {
    print!("{}", format_table(&count_table(args.j_max)?));
    Ok(0)
}

fn cmd_search(args: SearchArgs) -> anyhow::Result<u8> {
    if args.j >= 4 && !args.enable_j4 {
        bail!("the search at j={} is expensive; pass --enable-j4 to run it", args.j);
    }
    let target = SearchTarget::conjunction(args.j)?;
    let result = minimal_program(&target, args.max_depth)?;
    write_output(args.out.as_deref(), &result.witness.to_json())?;
    eprintln!(
        "j={} min_rom_calls={} nodes={}",
        args.j, result.minimal_rom_calls, result.nodes_expanded
    );
    Ok(0)
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NonClassicalOutput { .. }) => EXIT_NON_CLASSICAL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Anf(a) => cmd_anf(a),
        Command::Compile(a) => cmd_compile(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Render(a) => cmd_render(a),
        Command::Counts(a) => cmd_counts(a),
        Command::Search(a) => cmd_search(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
