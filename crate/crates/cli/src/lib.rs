//! Command-line front end for `permcover`. [`run`] takes its streams as
//! arguments so the whole surface can be tested in-process.
//!
//! Exit codes: `0` success, `1` a precondition failed (the failing predicate
//! is named on stderr), `2` malformed input or usage.

pub mod format;

use std::io::{self, Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permcover::completeness::{
    build_selection_graph, is_complete, is_minimal_complete, redundant_members, uncovered, PermSet,
    SelectionStrategy,
};
use permcover::construction::{
    enumerate_p_star, enumerate_q_star, orbit, phi, phi_inverse, q_star_level, relabel_set,
    sample_p_star, sample_permutation, sample_q_star, seeded_rng, PStarIter, QStarIter,
    ENUMERATION_MAX_N,
};
use permcover::counting::{
    count_p_star, count_q_star, family_size, gamma_i, gamma_p, transversal_count, ExactCount,
};
use permcover::oracle::{oracle_enumerate, oracle_restricted, ORACLE_MAX_N};
use permcover::{Error, Mode, Permutation};

use crate::format::{
    parse_document, parse_subset, selection_graph_to_dot, to_json, to_text, Metadata, ParseError,
    PermSetDocument,
};

/// Unbounded enumeration is refused above this many sets.
pub const ENUMERATE_REFUSAL: u64 = 1_000_000_000;

/// How many sets the restricted oracle will hold as candidates.
const RESTRICTED_CANDIDATE_CAP: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "permcover",
    version,
    about = "Construct, verify, enumerate and count minimal complete sets of permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the maximum size of a minimal complete set
    Gamma {
        n: usize,
        #[arg(long)]
        mode: Mode,
    },
    /// Print an exact count
    Count {
        n: usize,
        #[arg(long, value_enum)]
        what: CountWhat,
        /// Family level, for `family` and `transversals`
        #[arg(long)]
        c: Option<usize>,
    },
    /// Print one seeded optimal set
    Generate {
        n: usize,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shift orbit of a seeded random permutation (pair mode)
        #[arg(long, conflicts_with_all = ["relabel", "x"])]
        orbit: bool,
        /// Relabel a seeded Q* set by this permutation (pair mode)
        #[arg(long, value_name = "TAU", conflicts_with = "x")]
        relabel: Option<String>,
        /// Map a seeded Q* set through phi^-1 with this subset (pair mode)
        #[arg(long, value_name = "SUBSET")]
        x: Option<String>,
        #[command(flatten)]
        out: OutputFormat,
    },
    /// Stream every optimal set
    Enumerate {
        n: usize,
        #[arg(long)]
        mode: Mode,
        /// Stop after this many sets
        #[arg(long)]
        limit: Option<u64>,
        #[command(flatten)]
        out: OutputFormat,
    },
    /// Check that a file holds a complete (or minimal complete) set
    Verify {
        /// Path, or `-` for stdin
        file: String,
        #[arg(long)]
        minimal: bool,
    },
    /// Brute-force search, reported as JSON
    Oracle {
        n: usize,
        #[arg(long)]
        mode: Mode,
        /// Check the constructed optima against random subsets instead
        #[arg(long)]
        restricted: bool,
        #[arg(long, default_value_t = 1_000_000, requires = "restricted")]
        samples: u64,
        #[arg(long, default_value_t = 0, requires = "restricted")]
        seed: u64,
    },
    /// Critical selection graph(s) of a minimal complete set
    Graph {
        file: String,
        #[arg(long, default_value = "lex_min")]
        strategy: SelectionStrategy,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Stop after this many graphs (strategy `all`)
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Map a maximum pair-complete set to its (X, Q) pair
    Phi {
        file: String,
        #[command(flatten)]
        out: OutputFormat,
    },
    /// Map (X, Q) back to a maximum pair-complete set
    PhiInverse {
        #[arg(long, value_name = "SUBSET")]
        x: String,
        #[arg(long, value_name = "FILE")]
        q: String,
        #[command(flatten)]
        out: OutputFormat,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CountWhat {
    Qstar,
    Pstar,
    Family,
    Transversals,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DocFormat {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputFormat {
    #[arg(long, value_enum, default_value_t = DocFormat::Text)]
    format: DocFormat,
}

/// Command failures, each mapped to an exit code.
enum Failure {
    /// The input could not be read as a permutation set, subset, etc.
    Malformed(String),
    /// A named predicate does not hold.
    Precondition(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSize { .. }
            | Error::InvalidPermutation { .. }
            | Error::OutOfRange { .. }
            | Error::DegeneratePair { .. } => Failure::Malformed(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<(), Failure>;

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut ctx = Ctx {
        stdin,
        out: stdout,
        err: stderr,
    };
    let result = dispatch(cli.command, &mut ctx).and_then(|()| Ok(ctx.out.flush()?));
    match result {
        Ok(()) => 0,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            1
        }
        Err(Failure::Precondition(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            1
        }
        Err(Failure::Malformed(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> CmdResult {
    match cmd {
        Command::Gamma { n, mode } => {
            let g = match mode {
                Mode::Inversion => gamma_i(n)?,
                Mode::Pair => gamma_p(n)?,
            };
            writeln!(ctx.out, "{g}")?;
        }
        Command::Count { n, what, c } => writeln!(ctx.out, "{}", count(n, what, c)?)?,
        Command::Generate {
            n,
            mode,
            seed,
            orbit,
            relabel,
            x,
            out,
        } => {
            let (set, meta) = generate(n, mode, seed, orbit, relabel.as_deref(), x.as_deref())?;
            write_set(ctx, &set, Some(meta), out.format)?;
        }
        Command::Enumerate {
            n,
            mode,
            limit,
            out,
        } => enumerate(ctx, n, mode, limit, out.format)?,
        Command::Verify { file, minimal } => verify(ctx, &file, minimal)?,
        Command::Oracle {
            n,
            mode,
            restricted,
            samples,
            seed,
        } => oracle(ctx, n, mode, restricted, samples, seed)?,
        Command::Graph {
            file,
            strategy,
            format: GraphFormat::Dot,
            limit,
        } => graph(ctx, &file, strategy, limit)?,
        Command::Phi { file, out } => {
            let (_, p) = read_set(ctx, &file)?;
            let (x, q) = phi(&p)?;
            let x_text = join(&x, ",");
            let meta = Metadata {
                generator: Some("phi".into()),
                seed: None,
                family_c: q_star_level(&q),
            };
            match out.format {
                DocFormat::Text => {
                    writeln!(ctx.out, "# x={x_text}")?;
                    write_set(ctx, &q, Some(meta), DocFormat::Text)?;
                }
                DocFormat::Json => {
                    let doc = PermSetDocument::from_set(&q, Some(meta));
                    writeln!(ctx.out, "{{\"x\":[{x_text}],\"q\":{}}}", to_json(&doc))?;
                }
            }
        }
        Command::PhiInverse { x, q, out } => {
            let x = parse_subset(&x).map_err(|e| malformed("--x", &e))?;
            let (_, q) = read_set(ctx, &q)?;
            let p = phi_inverse(&x, &q)?;
            let meta = Metadata {
                generator: Some("phi_inverse".into()),
                ..Metadata::default()
            };
            write_set(ctx, &p, Some(meta), out.format)?;
        }
    }
    Ok(())
}

fn malformed(source: &str, e: &ParseError) -> Failure {
    Failure::Malformed(format!("{source}: {e}"))
}

fn join(values: &[usize], sep: &str) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn count(n: usize, what: CountWhat, c: Option<usize>) -> Result<ExactCount, Failure> {
    let need_c = || {
        c.ok_or_else(|| {
            Failure::Malformed(format!("`count --what {what:?}` needs --c").to_lowercase())
        })
    };
    Ok(match what {
        CountWhat::Qstar => count_q_star(n)?,
        CountWhat::Pstar => count_p_star(n)?,
        CountWhat::Family => family_size(n, need_c()?)?,
        CountWhat::Transversals => transversal_count(n, need_c()?)?,
    })
}

fn generate(
    n: usize,
    mode: Mode,
    seed: u64,
    orbit_of_random: bool,
    relabel: Option<&str>,
    x: Option<&str>,
) -> Result<(PermSet, Metadata), Failure> {
    let variant = orbit_of_random || relabel.is_some() || x.is_some();
    if mode == Mode::Inversion && variant {
        return Err(Failure::Precondition(
            "--orbit, --relabel and --x produce pair-complete sets and require --mode pair".into(),
        ));
    }
    let meta = |generator: &str, c: Option<usize>| Metadata {
        generator: Some(generator.into()),
        seed: Some(seed),
        family_c: c,
    };
    if orbit_of_random {
        let p = sample_permutation(n, &mut seeded_rng(seed))?;
        return Ok((orbit(&p), meta("orbit", None)));
    }
    if let Some(tau) = relabel {
        let tau: Permutation = tau
            .parse()
            .map_err(|e: Error| Failure::Malformed(format!("--relabel: {e}")))?;
        let q = sample_q_star(n, seed)?;
        let p = relabel_set(&tau, &q)?.with_mode(Mode::Pair);
        if !is_minimal_complete(&p) {
            // only reachable for n = 3, where Q* sets are not pair-complete
            return Err(Failure::Precondition(format!(
                "relabeled set {p} is not minimally pair-complete"
            )));
        }
        return Ok((p, meta("relabel", q_star_level(&q))));
    }
    if let Some(x) = x {
        let x = parse_subset(x).map_err(|e| malformed("--x", &e))?;
        let q = sample_q_star(n, seed)?;
        let p = phi_inverse(&x, &q)?;
        return Ok((p, meta("phi_inverse", q_star_level(&q))));
    }
    Ok(match mode {
        Mode::Inversion => {
            let q = sample_q_star(n, seed)?;
            let c = q_star_level(&q);
            (q, meta("qstar", c))
        }
        Mode::Pair => (sample_p_star(n, seed)?, meta("pstar", None)),
    })
}

fn write_set(
    ctx: &mut Ctx<'_>,
    set: &PermSet,
    meta: Option<Metadata>,
    format: DocFormat,
) -> io::Result<()> {
    let doc = PermSetDocument::from_set(set, meta);
    match format {
        DocFormat::Text => ctx.out.write_all(to_text(&doc).as_bytes()),
        DocFormat::Json => writeln!(ctx.out, "{}", to_json(&doc)),
    }
}

fn enumerate(
    ctx: &mut Ctx<'_>,
    n: usize,
    mode: Mode,
    limit: Option<u64>,
    format: DocFormat,
) -> CmdResult {
    let total = match mode {
        Mode::Inversion => count_q_star(n)?,
        Mode::Pair => count_p_star(n)?,
    };
    let huge = total.to_u64().is_none_or(|t| t > ENUMERATE_REFUSAL);
    let sets: Box<dyn Iterator<Item = PermSet>> = match (limit, mode) {
        (None, _) if huge => {
            return Err(Failure::Precondition(format!(
                "refusing to enumerate {total} sets (more than {ENUMERATE_REFUSAL}); pass --limit"
            )))
        }
        (None, Mode::Inversion) if n <= ENUMERATION_MAX_N => Box::new(enumerate_q_star(n)?),
        (None, Mode::Pair) if n <= ENUMERATION_MAX_N => Box::new(enumerate_p_star(n)?),
        (_, Mode::Inversion) => Box::new(QStarIter::unbounded(n)?),
        (_, Mode::Pair) => Box::new(PStarIter::unbounded(n)?),
    };
    let started = Instant::now();
    let mut written = 0u64;
    for set in sets.take(limit.map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX))) {
        if written > 0 && format == DocFormat::Text {
            writeln!(ctx.out)?;
        }
        write_set(ctx, &set, None, format)?;
        written += 1;
    }
    writeln!(
        ctx.err,
        "enumerated {written} of {total} sets in {:.3}s",
        started.elapsed().as_secs_f64()
    )?;
    Ok(())
}

fn read_input(ctx: &mut Ctx<'_>, file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if file == "-" {
        ctx.stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| match e.kind() {
        io::ErrorKind::InvalidData => Failure::Malformed(format!("{file}: not valid UTF-8")),
        _ => Failure::Precondition(format!("cannot read {file}: {e}")),
    })?;
    Ok(text)
}

fn read_set(ctx: &mut Ctx<'_>, file: &str) -> Result<(PermSetDocument, PermSet), Failure> {
    let text = read_input(ctx, file)?;
    let doc = parse_document(&text).map_err(|e| malformed(file, &e))?;
    let set = doc.to_set()?;
    Ok((doc, set))
}

fn verify(ctx: &mut Ctx<'_>, file: &str, minimal: bool) -> CmdResult {
    let (_, set) = read_set(ctx, file)?;
    let mode = set.mode();
    if !is_complete(&set) {
        let missing = uncovered(&set);
        let shown: Vec<String> = missing.iter().take(20).map(|p| p.to_string()).collect();
        let more = if missing.len() > shown.len() {
            format!(" (and {} more)", missing.len() - shown.len())
        } else {
            String::new()
        };
        return Err(Failure::Precondition(format!(
            "is_complete({mode}) fails: {} uncovered pair(s): {}{more}",
            missing.len(),
            shown.join(" ")
        )));
    }
    if minimal {
        let redundant = redundant_members(&set);
        if !redundant.is_empty() {
            let shown: Vec<String> = redundant.iter().map(|p| p.to_string()).collect();
            return Err(Failure::Precondition(format!(
                "is_minimal_complete({mode}) fails: redundant member(s) with no critical pair: {}",
                shown.join(" ")
            )));
        }
        writeln!(
            ctx.out,
            "minimally {mode}-complete: {} permutations of [{}]",
            set.len(),
            set.n()
        )?;
    } else {
        writeln!(
            ctx.out,
            "{mode}-complete: {} permutations of [{}]",
            set.len(),
            set.n()
        )?;
    }
    Ok(())
}

fn oracle(
    ctx: &mut Ctx<'_>,
    n: usize,
    mode: Mode,
    restricted: bool,
    samples: u64,
    seed: u64,
) -> CmdResult {
    let (json, elapsed) = if restricted {
        if n <= ORACLE_MAX_N {
            return Err(Failure::Precondition(format!(
                "--restricted is for n > {ORACLE_MAX_N}; run the full oracle instead"
            )));
        }
        let total = match mode {
            Mode::Inversion => count_q_star(n)?,
            Mode::Pair => count_p_star(n)?,
        };
        if total.to_u64().is_none_or(|t| t > RESTRICTED_CANDIDATE_CAP) {
            return Err(Failure::Precondition(format!(
                "restricted oracle needs all {total} optimal sets as candidates \
                 (limit {RESTRICTED_CANDIDATE_CAP})"
            )));
        }
        let candidates: Vec<PermSet> = match mode {
            Mode::Inversion => enumerate_q_star(n)?.collect(),
            Mode::Pair => enumerate_p_star(n)?.collect(),
        };
        let report = oracle_restricted(n, mode, &candidates, samples, seed)?;
        let passed = report.passed();
        let json = serde_json::to_string(&report).expect("report serializes");
        if !passed {
            writeln!(ctx.out, "{json}")?;
            return Err(Failure::Precondition(
                "restricted oracle found a disagreement with the constructed optima".into(),
            ));
        }
        (json, report.elapsed)
    } else {
        let report = oracle_enumerate(n, mode)?;
        let json = serde_json::to_string(&report).expect("report serializes");
        (json, report.elapsed)
    };
    writeln!(ctx.out, "{json}")?;
    writeln!(ctx.err, "oracle finished in {:.3}s", elapsed.as_secs_f64())?;
    Ok(())
}

fn graph(
    ctx: &mut Ctx<'_>,
    file: &str,
    strategy: SelectionStrategy,
    limit: Option<u64>,
) -> CmdResult {
    let (_, set) = read_set(ctx, file)?;
    if !is_minimal_complete(&set) {
        return Err(Failure::Precondition(format!(
            "is_minimal_complete({}) fails; selection graphs need a minimal complete set",
            set.mode()
        )));
    }
    let graphs = match strategy {
        SelectionStrategy::LexMin => build_selection_graph(&set, strategy)?,
        SelectionStrategy::All => {
            let all = permcover::completeness::selection_graphs_all(&set)?;
            if limit.is_none() && all.total() > ENUMERATE_REFUSAL as u128 {
                return Err(Failure::Precondition(format!(
                    "refusing to print {} selection graphs; pass --limit",
                    all.total()
                )));
            }
            let cap = limit.map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX));
            for (k, g) in all.take(cap).enumerate() {
                ctx.out
                    .write_all(selection_graph_to_dot(&g, &format!("G{k}")).as_bytes())?;
            }
            return Ok(());
        }
    };
    for g in graphs {
        ctx.out
            .write_all(selection_graph_to_dot(&g, "G").as_bytes())?;
    }
    Ok(())
}
