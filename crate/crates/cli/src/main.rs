mod verify;

use std::fmt::Display;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use openpart::counting::{np_double_sum, np_sequence, Formula};
use openpart::{
    build_vposet, count_open_partitions, decode, encode, enumerate_open_partitions,
    enumerate_triples, to_dot, Partition, Poset, PosetDoc, RenderSpec, VPoset, VTriple,
    DEFAULT_BRUTE_FORCE_CAP,
};

#[derive(Parser)]
#[command(
    name = "openpart",
    version,
    about = "Count and enumerate open partitions of V-posets"
)]
struct Cli {
    /// Largest vertex count allowed for brute-force enumeration.
    #[arg(long, global = true, env = "OPENPART_CAP")]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print NP(M, N), the number of open partitions of the V-poset.
    Count(CountArgs),
    /// Print NP(1), ..., NP(MAX).
    Sequence(SequenceArgs),
    /// Stream open partitions (or their triples) in canonical order.
    Enumerate(EnumerateArgs),
    /// Run the identity and bijection checks and print a report.
    Verify(VerifyArgs),
    /// Write a Hasse diagram as DOT.
    Render(RenderArgs),
    /// Convert an open partition (JSON) into its triple (JSON).
    Encode(ConvertArgs),
    /// Convert a triple (JSON) into its open partition (JSON).
    Decode(ConvertArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    DoubleSum,
    Squares,
    ProductMinus,
    Closed,
    BruteForce,
}

impl FormulaArg {
    fn closed_form(self) -> Option<Formula> {
        match self {
            FormulaArg::DoubleSum => Some(Formula::DoubleSum),
            FormulaArg::Squares => Some(Formula::Squares),
            FormulaArg::ProductMinus => Some(Formula::ProductMinus),
            FormulaArg::Closed => Some(Formula::Closed),
            FormulaArg::BruteForce => None,
        }
    }
}

#[derive(Args)]
struct Dims {
    /// Left chain length, root included.
    #[arg(long)]
    m: usize,
    /// Right chain length, root included.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
    m: Option<usize>,
    #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "double-sum")]
    formula: FormulaArg,
    /// Count a general poset document by brute force instead.
    #[arg(long, value_name = "FILE")]
    poset: Option<PathBuf>,
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long)]
    max: u64,
    /// Any formula except brute-force.
    #[arg(long, value_enum, default_value = "closed")]
    formula: FormulaArg,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ItemKind {
    Triples,
    Partitions,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
    m: Option<usize>,
    #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
    n: Option<usize>,
    #[arg(long = "as", value_enum, default_value = "partitions")]
    kind: ItemKind,
    /// One JSON document per line.
    #[arg(long)]
    json: bool,
    /// Enumerate the open partitions of a general poset document.
    #[arg(long, value_name = "FILE")]
    poset: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n for the formula identities.
    #[arg(long, default_value_t = 50)]
    max: u64,
    /// Largest chain length for brute-force and bijection checks.
    #[arg(long, default_value_t = 4)]
    oracle_max: usize,
    /// Random trials for the symmetric-sequence lemma.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
    m: Option<usize>,
    #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
    n: Option<usize>,
    #[arg(long, value_name = "FILE")]
    poset: Option<PathBuf>,
    /// Partition document used to color the nodes.
    #[arg(long, value_name = "FILE")]
    partition: Option<PathBuf>,
    /// Comma-separated fill colors, cycled over blocks.
    #[arg(long, value_delimiter = ',')]
    palette: Option<Vec<String>>,
    /// Output file; standard output when absent.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    #[command(flatten)]
    dims: Dims,
    /// Input document; standard input when absent or `-`.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: Display> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::Usage(err.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli.cap.unwrap_or(DEFAULT_BRUTE_FORCE_CAP);
    if cap != DEFAULT_BRUTE_FORCE_CAP {
        eprintln!(
            "warning: brute-force cap set to {cap} vertices (default {DEFAULT_BRUTE_FORCE_CAP})"
        );
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Count(args) => count(args, cap, &mut out),
        Command::Sequence(args) => sequence(args, &mut out),
        Command::Enumerate(args) => enumerate(args, cap, &mut out),
        Command::Verify(args) => run_verify(args, cap, &mut out),
        Command::Render(args) => render(args, &mut out),
        Command::Encode(args) => convert(args, true, &mut out),
        Command::Decode(args) => convert(args, false, &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Verification), _) => ExitCode::from(1),
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Ok(()), Err(err)) if err.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        (Ok(()), Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let doc: PosetDoc = serde_json::from_str(&read_input(Some(path))?)?;
    Ok(Poset::try_from(doc)?)
}

fn load_partition(text: &str, n_vertices: usize) -> Result<Partition, Failure> {
    let blocks: Vec<Vec<usize>> = serde_json::from_str(text)?;
    Ok(Partition::new(n_vertices, blocks)?)
}

fn vposet(m: Option<usize>, n: Option<usize>) -> Result<VPoset, Failure> {
    // clap guarantees both are present when no poset file is given
    Ok(build_vposet(m.unwrap_or(0), n.unwrap_or(0))?)
}

fn check_cap(n_vertices: usize, cap: usize) -> CmdResult {
    if n_vertices > cap {
        return Err(Failure::Usage(format!(
            "brute force over {n_vertices} vertices exceeds the cap of {cap} (raise it with --cap)"
        )));
    }
    Ok(())
}

fn count(args: CountArgs, cap: usize, out: &mut impl Write) -> CmdResult {
    if let Some(path) = &args.poset {
        if args.formula != FormulaArg::BruteForce && args.formula != FormulaArg::DoubleSum {
            return Err(Failure::Usage(
                "--poset supports brute-force counting only".into(),
            ));
        }
        let p = load_poset(path)?;
        check_cap(p.len(), cap)?;
        writeln!(out, "{}", count_open_partitions(&p, cap)?)?;
        return Ok(());
    }
    let v = vposet(args.m, args.n)?;
    let (m, n) = (v.m() as u64, v.n() as u64);
    let value = match args.formula {
        FormulaArg::BruteForce => {
            check_cap(v.n_vertices(), cap)?;
            count_open_partitions(v.poset(), cap)?
        }
        FormulaArg::DoubleSum => np_double_sum(m, n),
        other => {
            if m != n {
                return Err(Failure::Usage(format!(
                    "formula {} requires equal chain lengths, got m={m} n={n}",
                    other.closed_form().unwrap()
                )));
            }
            other.closed_form().unwrap().eval(n)
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn sequence(args: SequenceArgs, out: &mut impl Write) -> CmdResult {
    let formula = args
        .formula
        .closed_form()
        .ok_or_else(|| Failure::Usage("sequence does not support brute-force".into()))?;
    if args.max == 0 {
        return Err(Failure::Usage("--max must be at least 1".into()));
    }
    let values = np_sequence(args.max, formula);
    if args.json {
        let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        writeln!(out, "[{}]", items.join(","))?;
    } else {
        for v in values {
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

fn write_partition(out: &mut impl Write, pi: &Partition, json: bool) -> io::Result<()> {
    if json {
        serde_json::to_writer(&mut *out, pi)?;
        writeln!(out)
    } else {
        writeln!(out, "{pi}")
    }
}

fn format_sizes(sizes: &[usize]) -> String {
    let parts: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn enumerate(args: EnumerateArgs, cap: usize, out: &mut impl Write) -> CmdResult {
    if let Some(path) = &args.poset {
        if args.kind == ItemKind::Triples {
            return Err(Failure::Usage(
                "triples are only defined for V-posets".into(),
            ));
        }
        let p = load_poset(path)?;
        check_cap(p.len(), cap)?;
        for pi in enumerate_open_partitions(&p, cap)? {
            write_partition(out, &pi, args.json)?;
        }
        return Ok(());
    }
    let v = vposet(args.m, args.n)?;
    match args.kind {
        ItemKind::Partitions => {
            check_cap(v.n_vertices(), cap)?;
            for pi in enumerate_open_partitions(v.poset(), cap)? {
                write_partition(out, &pi, args.json)?;
            }
        }
        ItemKind::Triples => {
            for tr in enumerate_triples(&v) {
                if args.json {
                    serde_json::to_writer(&mut *out, &tr)?;
                    writeln!(out)?;
                } else {
                    writeln!(
                        out,
                        "left={} right={} t={}",
                        format_sizes(&tr.left),
                        format_sizes(&tr.right),
                        tr.t
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs, cap: usize, out: &mut impl Write) -> CmdResult {
    if args.max == 0 {
        return Err(Failure::Usage("--max must be at least 1".into()));
    }
    if args.oracle_max == 0 {
        return Err(Failure::Usage("--oracle-max must be at least 1".into()));
    }
    check_cap(2 * args.oracle_max - 1, cap)?;
    let report = verify::run(&verify::VerifyConfig {
        max_n: args.max,
        oracle_max: args.oracle_max,
        trials: args.trials,
        seed: args.seed,
        cap,
    });
    writeln!(out, "{report}")?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn render(args: RenderArgs, out: &mut impl Write) -> CmdResult {
    let poset = match &args.poset {
        Some(path) => load_poset(path)?,
        None => vposet(args.m, args.n)?.poset().clone(),
    };
    let partition = match &args.partition {
        Some(path) => Some(load_partition(&read_input(Some(path))?, poset.len())?),
        None => None,
    };
    let mut spec = RenderSpec::new(&poset);
    if let Some(pi) = &partition {
        spec = spec.with_partition(pi);
    }
    if let Some(palette) = args.palette {
        spec = spec.with_palette(palette);
    }
    let dot = to_dot(&spec)?;
    match &args.output {
        Some(path) => fs::write(path, dot)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(dot.as_bytes())?,
    }
    Ok(())
}

fn convert(args: ConvertArgs, to_triple: bool, out: &mut impl Write) -> CmdResult {
    let v = build_vposet(args.dims.m, args.dims.n)?;
    let text = read_input(args.input.as_deref())?;
    if to_triple {
        let pi = load_partition(&text, v.n_vertices())?;
        serde_json::to_writer(&mut *out, &encode(&v, &pi)?)?;
    } else {
        let tr: VTriple = serde_json::from_str(&text)?;
        serde_json::to_writer(&mut *out, &decode(&v, &tr)?)?;
    }
    writeln!(out)?;
    Ok(())
}
