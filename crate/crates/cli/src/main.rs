use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hornify::marking::{
    enumerate_markings, find_marking, find_minimal_marking, find_unary_marking, format_marking, parse_marking,
    Marking, DEFAULT_ENUMERATION_CAP,
};
use hornify::ontology::{
    parse_dataset, parse_ontology, profile_of, serialize_general_ontology, serialize_ontology, Ontology,
};
use hornify::program::{parse_program, pi_translate, serialize_program, validate_program, CongruenceMode, Program};
use hornify::psi::{rewrite_ontology, RewriteError, Rewriting};
use hornify::reasoner::{check_equisat, SatReport, Verdict, DEFAULT_DEPTH};
use hornify::transpose::transpose;
use hornify::xi::xi_translate;

const EXIT_INPUT: u8 = 2;
const EXIT_NOT_MARKABLE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_DISAGREE: u8 = 5;

#[derive(Parser)]
#[command(name = "hornify", version, about = "Horn rewritings of markable DL ontologies and disjunctive programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pi,
    Xi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Translate an ontology into rules.
    Translate {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "xi")]
        mode: Mode,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a marking of a program, or of the translation of an ontology.
    Mark {
        input: PathBuf,
        /// Print every marking.
        #[arg(long)]
        all: bool,
        /// Print a subset-minimal marking.
        #[arg(long)]
        minimal: bool,
        /// Translation used for ontology input.
        #[arg(long, value_enum, default_value = "xi")]
        mode: Mode,
    },
    /// Transpose a rule file under a marking.
    Transpose {
        input: PathBuf,
        /// Comma-separated predicates, e.g. `C,Bot`.
        #[arg(long)]
        marking: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rewrite an ontology into a Horn ontology.
    Rewrite {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit normalized axioms.
        #[arg(long)]
        normalize: bool,
    },
    /// Compare satisfiability of an ontology, its translations and its rewriting with a dataset.
    Check {
        input: PathBuf,
        data: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Atom budget; defaults to HORNIFY_BUDGET or 1000000.
        #[arg(long)]
        budget: Option<usize>,
        /// Print refutations.
        #[arg(long)]
        trace: bool,
    },
    /// Markability statistics over the `.dlo` files of a directory.
    Stats {
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

/// An error with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: EXIT_INPUT, error: e.into() }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_ontology(path: &Path) -> Result<Ontology> {
    parse_ontology(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_program(path: &Path) -> Result<Program> {
    let p = parse_program(&read(path)?, CongruenceMode::default()).with_context(|| format!("{}", path.display()))?;
    if let Err(violations) = validate_program(&p) {
        let mut msg = format!("{}: invalid program", path.display());
        for v in violations {
            let _ = write!(msg, "\n  {v}");
        }
        bail!(msg);
    }
    Ok(p)
}

fn is_rules(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "rules")
}

fn translate(o: &Ontology, mode: Mode) -> Program {
    match mode {
        Mode::Pi => pi_translate(o),
        Mode::Xi => xi_translate(o),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn show_marking(m: &Marking) -> String {
    if m.is_empty() {
        "{}".to_string()
    } else {
        format_marking(m)
    }
}

fn rewrite_header(rw: &Rewriting) -> String {
    let mut out = format!("# marking: {}\n", show_marking(&rw.marking));
    let names = rw.names();
    for (f, role) in &names.successor_roles {
        let _ = writeln!(out, "# successor role {role} = {f}");
    }
    for (base, alias) in &names.inverse_aliases {
        let _ = writeln!(out, "# inverse alias {alias} = Inv({base})");
    }
    for ((a, b), role) in &names.union_roles {
        let _ = writeln!(out, "# union role {role} = {a} + {b}");
    }
    for (pred, concept) in &names.complements {
        let _ = writeln!(out, "# complement {concept} = {pred}");
    }
    out
}

fn leg(name: &str, r: Option<&SatReport>) -> String {
    match r {
        Some(r) => format!("{name}: {} (depth {}, {} atoms)\n", r.status, r.depth_used, r.atom_count),
        None => format!("{name}: skipped (not markable)\n"),
    }
}

#[derive(Serialize)]
struct StatsRow {
    file: String,
    markable_xi: bool,
    markable_pi: bool,
    horn_dl: bool,
    profile_in: String,
    profile_out: String,
    millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn stats_row(path: &Path) -> StatsRow {
    let start = Instant::now();
    let file = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let mut row = StatsRow {
        file,
        markable_xi: false,
        markable_pi: false,
        horn_dl: false,
        profile_in: String::new(),
        profile_out: String::new(),
        millis: 0,
        error: None,
    };
    match load_ontology(path) {
        Err(e) => row.error = Some(format!("{e:#}")),
        Ok(o) => {
            row.profile_in = profile_of(&o).to_string();
            let pi = pi_translate(&o);
            row.markable_pi = find_marking(&pi).is_ok();
            row.horn_dl = find_unary_marking(&pi).is_ok();
            match rewrite_ontology(&o) {
                Ok(rw) => {
                    row.markable_xi = true;
                    row.profile_out = profile_of(&rw.ontology).to_string();
                }
                Err(RewriteError::NotMarkable(_)) => {}
                Err(e) => row.error = Some(e.to_string()),
            }
        }
    }
    row.millis = start.elapsed().as_millis();
    row
}

fn stats(dir: &Path, format: Format) -> Result<String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "dlo"))
        .collect();
    files.sort();
    let rows: Vec<StatsRow> = files.par_iter().map(|p| stats_row(p)).collect();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            let mut out = String::from("file,markable_xi,markable_pi,horn_dl,profile_in,profile_out,millis\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.file, r.markable_xi, r.markable_pi, r.horn_dl, r.profile_in, r.profile_out, r.millis
                );
            }
            out
        }
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Translate { input, mode, output } => {
            let o = load_ontology(&input)?;
            emit(output.as_deref(), &serialize_program(&translate(&o, mode)))?;
        }
        Command::Mark { input, all, minimal, mode } => {
            let p = if is_rules(&input) { load_program(&input)? } else { translate(&load_ontology(&input)?, mode) };
            if all {
                let markings = enumerate_markings(&p, DEFAULT_ENUMERATION_CAP)?;
                if markings.is_empty() {
                    println!("NOT-MARKABLE");
                    return Ok(EXIT_NOT_MARKABLE);
                }
                for m in markings {
                    println!("{}", show_marking(&m));
                }
                return Ok(0);
            }
            let found = if minimal { find_minimal_marking(&p) } else { find_marking(&p) };
            match found {
                Ok(m) => println!("{}", show_marking(&m)),
                Err(_) => {
                    println!("NOT-MARKABLE");
                    return Ok(EXIT_NOT_MARKABLE);
                }
            }
        }
        Command::Transpose { input, marking, output } => {
            let p = load_program(&input)?;
            let m = parse_marking(&marking, &p)?;
            let t = transpose(&p, &m)?;
            emit(output.as_deref(), &serialize_program(&t))?;
        }
        Command::Rewrite { input, output, normalize } => {
            let o = load_ontology(&input)?;
            let rw = match rewrite_ontology(&o) {
                Ok(rw) => rw,
                Err(RewriteError::NotMarkable(e)) => {
                    return Err(Failure { code: EXIT_NOT_MARKABLE, error: e.into() });
                }
                Err(e) => return Err(e.into()),
            };
            let body = if normalize { serialize_ontology(&rw.ontology) } else { serialize_general_ontology(rw.general()) };
            emit(output.as_deref(), &(rewrite_header(&rw) + &body))?;
        }
        Command::Check { input, data, depth, budget, trace } => {
            if let Some(b) = budget {
                std::env::set_var(hornify::reasoner::BUDGET_VAR, b.to_string());
            }
            let o = load_ontology(&input)?;
            let d = parse_dataset(&read(&data)?).with_context(|| format!("{}", data.display()))?;
            let r = check_equisat(&o, &d, depth)?;
            let mut out = leg("original", Some(&r.original));
            out += &leg("via_xi", Some(&r.via_xi));
            out += &leg("rewritten", r.rewritten.as_ref());
            let _ = writeln!(out, "verdict: {}", r.verdict);
            if trace {
                for (name, l) in [("original", Some(&r.original)), ("via_xi", Some(&r.via_xi)), ("rewritten", r.rewritten.as_ref())] {
                    if let Some(t) = l.and_then(|l| l.trace.as_ref()) {
                        let _ = writeln!(out, "# refutation ({name})\n{t}");
                    }
                }
            }
            print!("{out}");
            return Ok(match r.verdict {
                Verdict::Agree => 0,
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
                Verdict::Disagree => EXIT_DISAGREE,
            });
        }
        Command::Stats { dir, format } => print!("{}", stats(&dir, format)?),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
