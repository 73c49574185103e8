//! Command line: argument parsing and the subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};
use g2coh_core::beyond::{failure_window, find_failures};
use g2coh_core::engine::EngineError;
use g2coh_core::engine::{Engine, RuleSet, SaturateOptions};
use g2coh_core::facette::signature_of;
use g2coh_core::kb::{KbError, Mode, Status, StatusTable, DEGREES};
use g2coh_core::labels::LabelTable;
use g2coh_core::lattice::pairing_vector;
use g2coh_core::ledger::{Ledger, Level};
use g2coh_core::quantum::{quantum_table, QuantumConfig};
use g2coh_core::report::{
    certified_cells, completeness_report, describe, explain, solve, validate_figures, SolveError,
};
use g2coh_core::{Weight, WeylElem, Window, RHO};

use crate::json::{export_failures, export_table};
use crate::render::{render, Format, Policy, RenderSpec};

#[derive(Debug, Parser)]
#[command(
    name = "g2coh",
    version,
    about = "Vanishing of G2 line-bundle cohomology in characteristic p and at roots of unity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Prime {
    /// The characteristic, or the order l of the root of unity with --quantum.
    #[arg(long = "p", visible_alias = "l", value_name = "N")]
    p: i64,
    /// Quantum group at a primitive l-th root of unity instead of characteristic p.
    #[arg(long)]
    quantum: bool,
    /// Ledger level.
    #[arg(long, value_enum, default_value = "l2")]
    level: LevelArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    L1,
    L2,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::L1 => Level::L1,
            LevelArg::L2 => Level::L2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Svg,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cohomology profile of one weight.
    Status {
        #[command(flatten)]
        prime: Prime,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
        #[arg(long)]
        degree: Option<u8>,
    },
    /// Saturated table as JSON.
    Table {
        #[command(flatten)]
        prime: Prime,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decorated picture of the table.
    Render {
        #[command(flatten)]
        prime: Prime,
        /// Degrees to mark, e.g. 4 or 1,2,3,4,5; empty draws the bare grid.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        degrees: Vec<u8>,
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Only these chambers, e.g. t,y,w.
        #[arg(long, value_delimiter = ',', value_parser = parse_chamber)]
        chambers: Option<Vec<WeylElem>>,
        /// Mark every non-vanishing degree, not only those beyond Bott.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Derivation tree of one cell.
    Explain {
        #[command(flatten)]
        prime: Prime,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
        #[arg(long)]
        degree: u8,
    },
    /// Checks the ledger against the rules: conflicts, open cells, pictures.
    Validate {
        #[arg(long, value_enum, default_value = "l2")]
        level: LevelArg,
        #[arg(long = "p", default_value_t = 17)]
        p: i64,
    },
    /// Alcoves with certified H^4 ≠ 0 that no Frobenius box predicts.
    Failures57 {
        #[arg(long = "p")]
        p: i64,
        /// Also write the list as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let n = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok(Weight::new(n(a)?, n(b)?))
}

fn parse_chamber(s: &str) -> Result<WeylElem, String> {
    WeylElem::parse(s).ok_or_else(|| format!("unknown Weyl group element {s:?}"))
}

/// An argument value clap accepts but the command cannot use.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage<T>(msg: String) -> anyhow::Result<T> {
    Err(Usage(msg).into())
}

/// Outcome of a subcommand that ran to completion.
enum Outcome {
    Ok,
    /// Validation found differences.
    Diff,
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Diff) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.is::<Usage>() {
                2
            } else {
                1
            }
        }
    }
}

pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

struct Setup {
    labels: LabelTable,
    ledger: Ledger,
}

impl Setup {
    fn new(level: Level) -> Setup {
        let labels = LabelTable::builtin();
        let ledger = Ledger::builtin(level, &labels);
        Setup { labels, ledger }
    }
}

fn check_p(p: i64) -> anyhow::Result<()> {
    if p <= 5 {
        return usage(format!("p must exceed 5, got {p}"));
    }
    Ok(())
}

/// A saturated table covering `P̄_2`, or the window `window` if given.
fn table(prime: &Prime, s: &Setup, window: Option<Window>) -> anyhow::Result<StatusTable> {
    check_p(prime.p)?;
    if prime.quantum {
        let cfg = QuantumConfig::new(prime.p).map_err(|e| Usage(e.to_string()))?;
        let w = window.unwrap_or(Window::ball(prime.p));
        return Ok(quantum_table(cfg, w, &s.ledger, &s.labels)?);
    }
    match window {
        None => Ok(solve(prime.p, &s.ledger, &s.labels)?),
        Some(w) => {
            let mut e = Engine::new(StatusTable::new(prime.p, Mode::Modular, w), &s.labels);
            e.set_ledger(&s.ledger.facts(&s.labels, prime.p)?)?;
            e.saturate(RuleSet::all(), &SaturateOptions::default())?;
            Ok(e.table)
        }
    }
}

/// Smallest ball around 0 that holds `λ` with two rings to spare.
fn window_for(lambda: Weight, p: i64) -> Option<Window> {
    let reach = pairing_vector(lambda + RHO)
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or(0);
    let bound = reach / p + 3;
    (bound > p + 2).then(|| Window::ball(bound))
}

fn profile_line(statuses: &[(u8, Status)]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < statuses.len() {
        let mut j = i;
        while j + 1 < statuses.len()
            && statuses[j + 1].1 == statuses[i].1
            && statuses[j + 1].0 == statuses[j].0 + 1
        {
            j += 1;
        }
        let (a, b) = (statuses[i].0, statuses[j].0);
        let s = statuses[i].1;
        parts.push(if a == b {
            format!("{a}:{s}")
        } else {
            format!("{a}..{b}:{s}")
        });
        i = j + 1;
    }
    parts.join(" ")
}

fn describe_conflict(
    e: &KbError,
    t: Option<&StatusTable>,
    labels: &LabelTable,
    p: i64,
) -> Option<String> {
    let KbError::Conflict {
        key,
        degree,
        old,
        new,
        old_prov,
        new_prov,
        ..
    } = e
    else {
        return None;
    };
    let name = describe(&key.signature(p), p, labels);
    let mut s = format!("conflict at H^{degree}({name}) {key}\n");
    for (st, prov) in [(old, old_prov), (new, new_prov)] {
        s.push_str(&format!("  {st} by {}", prov.rule));
        if let Some(c) = &prov.citation {
            s.push_str(&format!(" \"{c}\""));
        }
        if let Some(t) = t {
            let prem: Vec<String> = t
                .premise_keys(prov)
                .iter()
                .map(|(k, d)| format!("H^{d}({})", describe(&k.signature(p), p, labels)))
                .collect();
            if !prem.is_empty() {
                s.push_str(&format!(" from {}", prem.join(", ")));
            }
        }
        s.push('\n');
    }
    Some(s)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Status {
            prime,
            weight,
            degree,
        } => {
            if degree.is_some_and(|d| d as usize >= DEGREES) {
                return usage("degree must lie in 0..=6".into());
            }
            let s = Setup::new(prime.level.into());
            let window = if prime.quantum {
                window_for(weight, prime.p).map(|w| match w {
                    Window::Region { bound, chamber } => Window::Region {
                        bound: bound.max(prime.p),
                        chamber,
                    },
                    w => w,
                })
            } else {
                window_for(weight, prime.p)
            };
            let t = table(&prime, &s, window)?;
            let f = t
                .index
                .find_sig(&signature_of(weight, prime.p)?)
                .with_context(|| format!("{weight} is outside the table"))?;
            let ok = certified_cells(&t);
            let degrees: Vec<u8> = match degree {
                Some(d) => vec![d],
                None => (0..DEGREES as u8).collect(),
            };
            let statuses: Vec<(u8, Status)> = degrees
                .iter()
                .map(|&d| (d, t.get(StatusTable::cell_id(f, d))))
                .collect();
            let mut line = profile_line(&statuses);
            let advisory: Vec<String> = degrees
                .iter()
                .filter(|&&d| {
                    let c = StatusTable::cell_id(f, d);
                    t.get(c).is_decided() && !ok[c as usize]
                })
                .map(|d| d.to_string())
                .collect();
            if !advisory.is_empty() {
                line.push_str(&format!("  (uncertified: {})", advisory.join(",")));
            }
            writeln!(out, "{line}")?;
        }
        Command::Table { prime, out: path } => {
            let s = Setup::new(prime.level.into());
            let t = table(&prime, &s, None)?;
            std::fs::write(&path, export_table(&t))
                .with_context(|| format!("writing {}", path.display()))?;
            writeln!(
                out,
                "{} facettes, {} cells written to {}",
                t.facette_count(),
                t.cell_count(),
                path.display()
            )?;
        }
        Command::Render {
            prime,
            degrees,
            format,
            chambers,
            full,
            out: path,
        } => {
            if let Some(d) = degrees.iter().find(|d| **d as usize >= DEGREES) {
                return usage(format!("degree {d} is outside 0..=6"));
            }
            let s = Setup::new(prime.level.into());
            let t = table(&prime, &s, None)?;
            let format = match format {
                FormatArg::Svg => Format::Svg,
                FormatArg::Text => Format::Text,
            };
            let mut spec = RenderSpec::new(degrees, format);
            spec.chambers = chambers;
            if full {
                spec.policy = Policy::FullProfile;
            }
            std::fs::write(&path, render(&t, &s.labels, &spec))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Command::Explain {
            prime,
            weight,
            degree,
        } => {
            let s = Setup::new(prime.level.into());
            let t = table(&prime, &s, window_for(weight, prime.p))?;
            write!(out, "{}", explain(&t, &s.labels, weight, degree)?)?;
        }
        Command::Validate { level, p } => {
            check_p(p)?;
            let level: Level = level.into();
            let s = Setup::new(level);
            for e in s.ledger.withheld() {
                writeln!(
                    out,
                    "withheld {} {} H^{} {}",
                    e.id, e.selector_text, e.degree, e.status
                )?;
            }
            let t = match solve(p, &s.ledger, &s.labels) {
                Ok(t) => t,
                Err(SolveError::Engine(EngineError::Kb(e))) => {
                    let msg =
                        describe_conflict(&e, None, &s.labels, p).unwrap_or_else(|| e.to_string());
                    write!(err, "{msg}")?;
                    return Ok(Outcome::Diff);
                }
                Err(e) => return Err(e.into()),
            };
            let open = completeness_report(&t, &s.labels);
            writeln!(
                out,
                "p={p} level={level}: {} undecided cells in P2",
                open.len()
            )?;
            for u in open.iter().take(20) {
                writeln!(out, "  open H^{}({}) {}", u.degree, u.name, u.facette)?;
            }
            let report = validate_figures(&s.ledger, &s.labels, &t)?;
            write!(out, "{report}")?;
            if !report.is_clean() || (level == Level::L2 && !open.is_empty()) {
                return Ok(Outcome::Diff);
            }
        }
        Command::Failures57 { p, json } => {
            check_p(p)?;
            let s = Setup::new(Level::L2);
            let run = find_failures(p, failure_window(p), &s.ledger, &s.labels)?;
            for f in &run.failures {
                writeln!(out, "{} {}", f.alcove, f.representative)?;
            }
            if let Some(path) = json {
                std::fs::write(&path, export_failures(&run.failures))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(Outcome::Ok)
}
