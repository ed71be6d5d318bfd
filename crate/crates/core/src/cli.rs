//! Command-line front end. `run` takes the full argument vector and returns
//! the process exit code: 0 on success, 1 on usage or parse errors, 2 when
//! a verification fails.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::census::{self, brute_force_layers, enumerate_normal_forms};
use crate::error::Error;
use crate::normalizer::{parse, Circuit, Normalizer};
use crate::rules::{check_fixture, parse_fixture};
use crate::stabilizer::{classify, stab_trace};
use crate::verify::{run_all, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "cliffordt", version, about = "Exact normal forms for single-qubit Clifford+T circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of a circuit
    Normalize { circuit: String },
    /// Decide whether two circuits compute the same unitary
    Equiv { first: String, second: String },
    /// Print the minimal T-count of a circuit
    Tcount { circuit: String },
    /// Print the exact unitary of a circuit as JSON
    Matrix { circuit: String },
    /// Print the stabilizer triple after each block of the normal form
    Stab { circuit: String },
    /// Number of unitaries reachable with at most n T gates
    Count {
        n: u32,
        /// Count exactly n T gates instead of at most n
        #[arg(long)]
        exact: bool,
        /// Cross-check against the brute-force closure
        #[arg(long)]
        oracle: bool,
    },
    /// Stream every normal form with at most n T gates
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dump the Clifford group or the rewrite rules
    Tables {
        #[arg(long)]
        dump_group: bool,
        #[arg(long)]
        emit_rules: bool,
        /// Compare a transcribed rule table with the generated rules
        #[arg(long, value_name = "PATH")]
        check_appendix: Option<PathBuf>,
    },
    /// Run the invariant suite
    Verify {
        #[arg(long, default_value_t = 5)]
        tmax: usize,
        #[arg(long, default_value_t = census::DEFAULT_ORACLE_LIMIT)]
        oracle_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

enum Failure {
    /// The reader went away; nothing left to report.
    ClosedPipe,
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::VerificationFailure(msg) => Failure::Verification(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if help {
                let _ = out.write_all(text.as_bytes());
                return 0;
            }
            let _ = err.write_all(text.as_bytes());
            return 1;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) | Err(Failure::ClosedPipe) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            2
        }
    }
}

fn circuit(text: &str) -> std::result::Result<Circuit, Failure> {
    Ok(parse(text)?)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Normalize { circuit: c } => {
            let c = circuit(&c)?;
            let n = Normalizer::standard();
            writeln!(out, "{}", n.render(&n.normalize(&c)))?;
        }
        Command::Equiv { first, second } => {
            let (a, b) = (circuit(&first)?, circuit(&second)?);
            let n = Normalizer::standard();
            let verdict = if n.equivalent(&a, &b) { "equivalent" } else { "inequivalent" };
            writeln!(out, "{verdict}")?;
        }
        Command::Tcount { circuit: c } => {
            let c = circuit(&c)?;
            writeln!(out, "{}", Normalizer::standard().t_count(&c))?;
        }
        Command::Matrix { circuit: c } => {
            let c = circuit(&c)?;
            writeln!(out, "{}", crate::normalizer::evaluate(&c).to_json())?;
        }
        Command::Stab { circuit: c } => {
            let c = circuit(&c)?;
            let n = Normalizer::standard();
            let nf = n.normalize(&c);
            let trace = stab_trace(&nf, n.table())?;
            for st in &trace {
                writeln!(out, "{st} class={}", classify(st))?;
            }
            let last = trace.last().expect("trace is never empty");
            writeln!(out, "final class={}", classify(last))?;
        }
        Command::Count { n, exact, oracle } => count(n, exact, oracle, out)?,
        Command::Enumerate { n, format } => enumerate(n, format, out)?,
        Command::Tables { dump_group, emit_rules, check_appendix } => {
            tables(dump_group, emit_rules, check_appendix, out)?
        }
        Command::Verify { tmax, oracle_max } => verify(tmax, oracle_max, out, err)?,
    }
    Ok(())
}

fn count(n: u32, exact: bool, oracle: bool, out: &mut dyn Write) -> Outcome {
    let closed = census::count_closed_form(n, exact);
    writeln!(out, "{closed}")?;
    if oracle {
        let norm = Normalizer::standard();
        let layers =
            brute_force_layers(n as usize, norm.table(), norm.t_matrix(), census::DEFAULT_ORACLE_LIMIT)?;
        let found: usize =
            if exact { layers.last().map_or(0, |l| l.len()) } else { layers.iter().map(|l| l.len()).sum() };
        writeln!(out, "oracle {found}")?;
        if closed != found.into() {
            return Err(Failure::Verification(format!("brute force finds {found}, closed form {closed}")));
        }
    }
    Ok(())
}

fn enumerate(n: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let norm = Normalizer::standard();
    let mut out = io::BufWriter::new(out);
    for nf in enumerate_normal_forms(n, norm.table()) {
        match format {
            Format::Text => writeln!(out, "{}", norm.render(&nf))?,
            Format::Jsonl => {
                let blocks: Vec<String> = nf.blocks.iter().map(|&b| norm.block_name(b)).collect();
                let line = json!({
                    "blocks": blocks,
                    "clifford": norm.table().word(nf.cliff),
                    "tcount": nf.t_count(),
                    "matrix": norm.nf_matrix(&nf).to_json(),
                });
                writeln!(out, "{line}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn tables(dump_group: bool, emit_rules: bool, appendix: Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    let norm = Normalizer::standard();
    let g = norm.table();
    if dump_group || (!emit_rules && appendix.is_none()) {
        for id in g.ids() {
            let tag = norm.cosets().tag(id);
            writeln!(out, "{}\t{}\t{}\t{}", id.index(), g.display_word(id), tag, g.matrix(id).to_json())?;
        }
    }
    if emit_rules {
        out.write_all(norm.rules().emit(g).as_bytes())?;
    }
    if let Some(path) = appendix {
        let text =
            std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let rows = parse_fixture(&text, g)?;
        let report = check_fixture(&rows, g, norm.cosets(), norm.rules());
        for m in &report.mismatches {
            writeln!(out, "line {}: {}: {}", m.line, m.text, m.reason)?;
        }
        writeln!(
            out,
            "{} rows, {} distinct W0, {} mismatches",
            report.rows,
            report.distinct_w0,
            report.mismatches.len()
        )?;
        if let Some(first) = report.mismatches.first() {
            return Err(Failure::Verification(format!("line {}: {}", first.line, first.reason)));
        }
    }
    Ok(())
}

fn verify(tmax: usize, oracle_max: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let opts = VerifyOptions { tmax, oracle_max, ..VerifyOptions::default() };
    let start = Instant::now();
    let checks = run_all(&opts);
    let mut first_failure = None;
    for c in &checks {
        let status = if c.passed { "ok" } else { "FAIL" };
        writeln!(out, "{status:4} {:12} {}", c.name, c.detail)?;
        if !c.passed && first_failure.is_none() {
            first_failure = Some(format!("{}: {}", c.name, c.detail));
        }
    }
    writeln!(err, "verify finished in {:.1}s", start.elapsed().as_secs_f64())?;
    match first_failure {
        Some(msg) => Err(Failure::Verification(msg)),
        None => Ok(()),
    }
}
