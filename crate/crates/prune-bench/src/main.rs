//! Command-line driver for the pruned case-sweep analysis.
//!
//! Exit codes: 0 on success (all checks passed, for `verify`), 1 when a
//! verification check fails, 2 on usage or domain errors.

mod report;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use prunesweep::bitcase::{nth_zero_from_right, prune, CaseIndex, PruneLevel};
use prunesweep::efficiency::{collect_valid_sets, par_number, run_efficiency, SolutionSet};
use prunesweep::prunegraph::{box_bounds, build_gk, build_joined, induced_box, minimal_f, BoxId};

use report::{csv_field, CommandOutput, CommandReport, Format};
use verify::{Check, Scope, VerifyOptions};

#[derive(Parser)]
#[command(name = "prune-bench", version, about = "Worst-case analysis of pruned binary case sweeps")]
struct Cli {
    /// Worker threads for the exhaustive subset sweeps.
    #[arg(long, global = true, env = "PRUNE_BENCH_JOBS", default_value_t = 1)]
    jobs: usize,

    /// Print per-item progress to stderr during verification sweeps.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the pruning function to one case and show the digit strings.
    Prune {
        /// Case value; decimal, or binary with a 0b prefix.
        m: String,
        /// Prune level (>= 1).
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the counting sweep on one solution set.
    Run {
        /// Width of the case enumeration.
        #[arg(short)]
        n: u8,
        #[arg(long)]
        ell: u32,
        /// Comma-separated members; decimal or 0b-prefixed binary.
        #[arg(short, long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// List every valid solution set at a small width.
    Enumerate {
        #[arg(short)]
        n: u8,
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Sweep the mechanically checkable claims; nonzero exit on failure.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Prune level to check; both 1 and 2 when omitted.
        #[arg(long)]
        ell: Option<u32>,
        /// Largest block index for lemma and structure sweeps.
        #[arg(long)]
        k_max: Option<u8>,
        /// Largest width for theorem, bound and bijection sweeps.
        #[arg(long)]
        n_max: Option<u8>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Emit a block, a joined graph, or one induced box in DOT form.
    #[command(group(ArgGroup::new("which").required(true).args(["gk", "joined"])))]
    Graph {
        /// Block index k: emit G_k.
        #[arg(long)]
        gk: Option<u8>,
        /// Width n: emit the joined graph for G_2 through G_n.
        #[arg(long)]
        joined: Option<u8>,
        /// Restrict to one induced box of G_k (B1..B4).
        #[arg(long = "box", requires = "gk")]
        box_id: Option<String>,
        #[arg(long)]
        ell: u32,
        /// Blue edge weight; defaults to -k (level 1) or -1 (otherwise).
        #[arg(long, allow_hyphen_values = true)]
        blue: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Smallest ratio bound the joined graph sustains.
    Minf {
        #[arg(short)]
        n: u8,
        #[arg(long)]
        ell: u32,
        /// Search ceiling for the candidate ratio.
        #[arg(long, default_value_t = 64)]
        f_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(cli, started) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli, started: Instant) -> Result<ExitCode, String> {
    match cli.command {
        Command::Prune { m, ell, format } => {
            cmd_prune(&m, ell, format, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { n, ell, set, format } => {
            cmd_run(n, ell, &set, format, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, ell, format } => {
            cmd_enumerate(n, ell, cli.jobs, format, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            scope,
            ell,
            k_max,
            n_max,
            format,
        } => cmd_verify(scope, ell, k_max, n_max, cli.jobs, cli.verbose, format, started),
        Command::Graph {
            gk,
            joined,
            box_id,
            ell,
            blue,
            format,
        } => {
            cmd_graph(gk, joined, box_id.as_deref(), ell, blue, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Minf { n, ell, f_max, format } => {
            cmd_minf(n, ell, f_max, format, started)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn level(ell: u32) -> Result<PruneLevel, String> {
    PruneLevel::new(ell).map_err(|e| e.to_string())
}

/// Parse a case value: decimal, or binary with a 0b prefix.
fn parse_case_value(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0b") {
        Some(bits) => u64::from_str_radix(bits, 2),
        None => s.parse(),
    };
    parsed.map_err(|_| format!("not a case value: {s:?}"))
}

fn parse_members(s: &str) -> Result<Vec<u64>, String> {
    s.split(',').map(parse_case_value).collect()
}

fn parse_box(s: &str) -> Result<BoxId, String> {
    match s.to_ascii_lowercase().as_str() {
        "b1" | "1" => Ok(BoxId::B1),
        "b2" | "2" => Ok(BoxId::B2),
        "b3" | "3" => Ok(BoxId::B3),
        "b4" | "4" => Ok(BoxId::B4),
        other => Err(format!("not a box: {other:?} (expected B1..B4)")),
    }
}

fn bit_length(value: u64) -> u32 {
    (64 - value.leading_zeros()).max(1)
}

fn cmd_prune(m: &str, ell: u32, format: Format, started: Instant) -> Result<(), String> {
    let value = parse_case_value(m)?;
    let ell = level(ell)?;
    let width = bit_length(value);
    let case = CaseIndex::new(value, width as u8).map_err(|e| e.to_string())?;
    let result = prune(case, ell).map_err(|e| e.to_string())?;

    // Pad both strings far enough to show the zero that anchored the cut.
    let zero_pos = nth_zero_from_right(value, ell);
    let shown = width.max((zero_pos + 1).min(64)) as usize;
    let before = format!("{value:0>shown$b}");
    let after = format!("{:0>shown$b}", result.value());

    let mut report = CommandReport::new("prune")
        .param("m", value)
        .param("ell", ell.get());
    report.results = json!({
        "before": before,
        "after": after,
        "value": result.value(),
    });
    let table = format!("{before} -> {after} = {}\n", result.value());
    CommandOutput {
        report,
        table,
        csv: None,
    }
    .emit(format, started)
}

fn cmd_run(n: u8, ell: u32, set: &str, format: Format, started: Instant) -> Result<(), String> {
    let ell = level(ell)?;
    let members = parse_members(set)?;
    let s = SolutionSet::new(n, members).map_err(|e| e.to_string())?;
    let outcome = run_efficiency(n, ell, &s).map_err(|e| e.to_string())?;
    let valid = outcome.required == s.len();
    let f_top = n as u64 + 1;
    let par_two = par_number(&outcome, 2).map_err(|e| e.to_string())?;
    let par_top = par_number(&outcome, f_top).map_err(|e| e.to_string())?;
    let ratio = outcome.ratio();
    let trace: Vec<u64> = outcome.trace.iter().map(|c| c.value()).collect();

    let mut report = CommandReport::new("run")
        .param("n", n)
        .param("ell", ell.get())
        .param("set", json!(s.members().collect::<Vec<_>>()));
    report.results = json!({
        "r": outcome.required,
        "c": outcome.checked,
        "valid": valid,
        "ratio": ratio.map(|r| r.to_string()),
        "trace": trace,
        "par": [
            {"f": par_two.f, "p": par_two.p},
            {"f": par_top.f, "p": par_top.p},
        ],
    });

    let ratio_text = ratio.map_or_else(|| "-".to_string(), |r| r.to_string());
    let trace_text = trace
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let table = format!(
        "set: {s}\nR: {}\nC: {}\nvalid: {valid}\nratio: {ratio_text}\ntrace: {trace_text}\npar[f=2]: {}\npar[f={f_top}]: {}\n",
        outcome.required, outcome.checked, par_two.p, par_top.p
    );
    let members_text = s
        .members()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let csv = format!(
        "set,R,C,valid,ratio,par_f2,par_ftop\n{},{},{},{valid},{ratio_text},{},{}\n",
        csv_field(&members_text),
        outcome.required,
        outcome.checked,
        par_two.p,
        par_top.p
    );
    CommandOutput {
        report,
        table,
        csv: Some(csv),
    }
    .emit(format, started)
}

fn cmd_enumerate(
    n: u8,
    ell: u32,
    jobs: usize,
    format: Format,
    started: Instant,
) -> Result<(), String> {
    let ell = level(ell)?;
    let found = collect_valid_sets(n, ell, jobs).map_err(|e| e.to_string())?;

    let mut table = String::new();
    let mut csv = String::from("set,R,C,ratio\n");
    let mut rows = Vec::new();
    for (s, outcome) in &found {
        let ratio = outcome.ratio().expect("valid sets find at least one case");
        table.push_str(&format!(
            "{s} R={} C={} ratio={ratio}\n",
            outcome.required, outcome.checked
        ));
        let members_text = s
            .members()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        csv.push_str(&format!(
            "{},{},{},{ratio}\n",
            csv_field(&members_text),
            outcome.required,
            outcome.checked
        ));
        rows.push(json!({
            "set": s.members().collect::<Vec<_>>(),
            "r": outcome.required,
            "c": outcome.checked,
            "ratio": ratio.to_string(),
        }));
    }
    table.push_str(&format!("{} valid sets\n", found.len()));

    // The job count shapes execution, not results, so it is not echoed.
    let mut report = CommandReport::new("enumerate")
        .param("n", n)
        .param("ell", ell.get());
    report.results = json!({"count": found.len(), "sets": rows});
    CommandOutput {
        report,
        table,
        csv: Some(csv),
    }
    .emit(format, started)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    scope: Scope,
    ell: Option<u32>,
    k_max: Option<u8>,
    n_max: Option<u8>,
    jobs: usize,
    verbose: bool,
    format: Format,
    started: Instant,
) -> Result<ExitCode, String> {
    let levels = match ell {
        None => vec![PruneLevel::ONE, PruneLevel::TWO],
        Some(e) => vec![level(e)?],
    };
    let opts = VerifyOptions {
        levels,
        k_max,
        n_max,
        jobs,
        verbose,
    };
    let checks = verify::run_scope(scope, &opts).map_err(|e| e.to_string())?;
    let passed = checks.iter().filter(|c| c.passed).count();
    let all_passed = passed == checks.len();

    let mut table = String::new();
    for Check { name, detail, passed } in &checks {
        let status = if *passed { "pass" } else { "FAIL" };
        table.push_str(&format!("{status:<6}{name:<58}{detail}\n"));
    }
    table.push_str(&format!("{passed}/{} checks passed\n", checks.len()));

    let mut report = CommandReport::new("verify")
        .param("scope", format!("{scope:?}").to_lowercase());
    if let Some(e) = ell {
        report = report.param("ell", e);
    }
    if let Some(k) = k_max {
        report = report.param("k_max", k);
    }
    if let Some(n) = n_max {
        report = report.param("n_max", n);
    }
    report.results = json!({
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "detail": c.detail, "passed": c.passed}))
            .collect::<Vec<_>>(),
        "passed": passed,
        "total": checks.len(),
    });
    report.passed = Some(all_passed);
    CommandOutput {
        report,
        table,
        csv: None,
    }
    .emit(format, started)?;
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_graph(
    gk: Option<u8>,
    joined: Option<u8>,
    box_id: Option<&str>,
    ell: u32,
    blue: Option<i64>,
    format: Format,
) -> Result<(), String> {
    if format != Format::Dot {
        return Err("graph output supports only --format dot".to_string());
    }
    let ell = level(ell)?;
    let width = gk.or(joined).expect("clap requires one of --gk/--joined");
    let blue = blue.unwrap_or(match ell.get() {
        1 => -(width as i64),
        _ => -1,
    });
    let graph = match (gk, joined) {
        (Some(k), None) => {
            let g = build_gk(k, ell, blue).map_err(|e| e.to_string())?;
            match box_id {
                None => g,
                Some(name) => {
                    let bounds = box_bounds(k, ell).map_err(|e| e.to_string())?;
                    induced_box(&g, &bounds, parse_box(name)?).map_err(|e| e.to_string())?
                }
            }
        }
        (None, Some(n)) => build_joined(n, ell, blue).map_err(|e| e.to_string())?,
        _ => unreachable!("clap enforces exactly one of --gk/--joined"),
    };
    print!("{}", graph.to_dot());
    Ok(())
}

fn cmd_minf(n: u8, ell: u32, f_max: u64, format: Format, started: Instant) -> Result<(), String> {
    let ell = level(ell)?;
    let found = minimal_f(n, ell, f_max).map_err(|e| e.to_string())?;
    let exploratory = ell.get() >= 3;

    let mut table = match found {
        Some(f) => format!("minimal f: {f}\n"),
        None => format!("no f <= {f_max} keeps the maximum path weight at zero or below\n"),
    };
    if exploratory {
        table.push_str("note: no proven bound exists at this level; exploratory result\n");
    }

    let mut report = CommandReport::new("minf")
        .param("n", n)
        .param("ell", ell.get())
        .param("f_max", f_max);
    report.results = json!({"f": found, "exploratory": exploratory});
    CommandOutput {
        report,
        table,
        csv: None,
    }
    .emit(format, started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_values_parse_in_both_bases() {
        assert_eq!(parse_case_value("23").unwrap(), 23);
        assert_eq!(parse_case_value("0b10111").unwrap(), 23);
        assert_eq!(parse_members("6,7").unwrap(), vec![6, 7]);
        assert_eq!(parse_members("0b110, 7").unwrap(), vec![6, 7]);
        assert!(parse_case_value("x").is_err());
    }

    #[test]
    fn boxes_parse_loosely() {
        assert_eq!(parse_box("B1").unwrap(), BoxId::B1);
        assert_eq!(parse_box("b4").unwrap(), BoxId::B4);
        assert_eq!(parse_box("2").unwrap(), BoxId::B2);
        assert!(parse_box("B5").is_err());
    }
}
