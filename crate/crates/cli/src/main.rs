//! Command-line front end: enumerate complexes, run the collapse matchings
//! and their verifications, compute homology, and reproduce the full table
//! of reference values.
//!
//! Exit codes: 0 when every executed check passed, 1 for operational errors
//! (I/O, invalid parameters, budget exceeded), 2 for usage errors, 3 when a
//! verification check failed (a cycle witness, a failed restriction, or a
//! failed reproduction row).

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use domcomplex::complex::{read_cache, streaming_f_vector, write_cache};
use domcomplex::homology::{betti, RankMode};
use domcomplex::morse::{
    build_dnn2, critical_census, verify_acyclic, verify_no_outside_cycles, verify_restriction,
    verify_well_formed, write_matching, CycleReport,
};
use domcomplex::suite::all_checks;
use domcomplex::{formulas, CellTable, ComplexSpec, VertexCount, DEFAULT_CELL_BUDGET};
use report::{RunReport, SpecEcho};

#[derive(Parser)]
#[command(
    name = "domcomplex",
    version,
    about = "Complexes of graphs with bounded domination number"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Cell budget for materialized tables (also via DOMCOMPLEX_BUDGET)
    #[arg(long)]
    budget: Option<usize>,
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    jobs: Option<usize>,
    /// Print the report as JSON instead of the human table
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    #[default]
    Gf2,
    Int,
}

impl From<ModeArg> for RankMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Gf2 => RankMode::Gf2,
            ModeArg::Int => RankMode::Rational,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, f-vector and Euler characteristic of D_{n,k}
    Stats {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        k: u8,
        /// Counter-only mode: never materialize the cell table
        #[arg(long)]
        stream: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify the collapse matching of D_{n,n-2} (or D_{5,2})
    Morse {
        #[arg(long, required_unless_present = "d52")]
        n: Option<u8>,
        /// Use the two-round D_{5,2} matching instead
        #[arg(long, conflicts_with = "n")]
        d52: bool,
        /// Also verify the restriction to D_{n-1,n-3}
        #[arg(long)]
        check_restriction: bool,
        /// Write the matching as text to this path
        #[arg(long)]
        matching_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Betti numbers with the Euler-characteristic cross-check
    Homology {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        k: u8,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run the reproduction suite and print one PASS/FAIL line per row
    Reproduce {
        /// Include the heavy rows (the n=7 Euler and Betti computations)
        #[arg(long)]
        heavy: bool,
        /// List the rows without executing them
        #[arg(long)]
        list: bool,
        /// Run only rows whose id starts with this prefix (repeatable)
        #[arg(long)]
        only: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Write D_{n,k} to a cache file
    Export {
        path: PathBuf,
        #[arg(long)]
        n: u8,
        #[arg(long)]
        k: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Read a cache file, validate it, and report on the complex
    Import {
        path: PathBuf,
        /// Expected vertex count; mismatch is an error
        #[arg(long)]
        n: Option<u8>,
        /// Expected threshold; mismatch is an error
        #[arg(long)]
        k: Option<u8>,
        #[command(flatten)]
        common: Common,
    },
}

struct OpError(String);

impl<E: std::fmt::Display> From<E> for OpError {
    fn from(e: E) -> Self {
        OpError(e.to_string())
    }
}

type OpResult<T> = std::result::Result<T, OpError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            if report.pass == Some(false) {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(OpError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> OpResult<RunReport> {
    let common = match &cli.command {
        Command::Stats { common, .. }
        | Command::Morse { common, .. }
        | Command::Homology { common, .. }
        | Command::Reproduce { common, .. }
        | Command::Export { common, .. }
        | Command::Import { common, .. } => common,
    };
    if let Some(jobs) = common.jobs {
        // ignore the error if a pool already exists (e.g. repeated init in tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let budget = effective_budget(common.budget)?;
    let json = common.json;
    let out = common.out.clone();

    let start = Instant::now();
    let mut report = match cli.command {
        Command::Stats { n, k, stream, .. } => cmd_stats(n, k, stream, budget)?,
        Command::Morse {
            n,
            d52,
            check_restriction,
            matching_out,
            ..
        } => cmd_morse(n, d52, check_restriction, matching_out.as_deref(), budget)?,
        Command::Homology { n, k, mode, .. } => cmd_homology(n, k, mode, budget)?,
        Command::Reproduce {
            heavy, list, only, ..
        } => cmd_reproduce(heavy, list, &only, budget)?,
        Command::Export { path, n, k, .. } => cmd_export(&path, n, k, budget)?,
        Command::Import { path, n, k, .. } => cmd_import(&path, n, k)?,
    };
    report.wall_ms = start.elapsed().as_millis();

    if json {
        let mut text = serde_json::to_string_pretty(&report).map_err(OpError::from)?;
        text.push('\n');
        emit(&text)?;
    } else {
        emit(&report.render_human())?;
    }
    if let Some(path) = out {
        let data = serde_json::to_string_pretty(&report).map_err(OpError::from)?;
        std::fs::write(&path, data).map_err(OpError::from)?;
    }
    Ok(report)
}

/// Writes to stdout, treating a broken pipe as a normal early exit so that
/// piping into `head` and friends stays quiet.
fn emit(text: &str) -> OpResult<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(OpError::from(e)),
    }
}

fn effective_budget(flag: Option<usize>) -> OpResult<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("DOMCOMPLEX_BUDGET") {
        Ok(raw) => raw
            .parse::<usize>()
            .map_err(|_| OpError(format!("DOMCOMPLEX_BUDGET is not a cell count: `{raw}`"))),
        Err(_) => Ok(DEFAULT_CELL_BUDGET),
    }
}

fn spec_of(n: u8, k: u8) -> OpResult<ComplexSpec> {
    Ok(ComplexSpec::new(VertexCount::new(n)?, k)?)
}

fn cmd_stats(n: u8, k: u8, stream: bool, budget: usize) -> OpResult<RunReport> {
    let spec = spec_of(n, k)?;
    let results = if stream {
        let f = streaming_f_vector(spec);
        json!({
            "mode": "stream",
            "dim": f.dim(),
            "f": f.counts(),
            "euler": f.euler(),
            "total_cells": f.total(),
        })
    } else {
        let table = CellTable::enumerate_with_budget(spec, budget).map_err(|e| {
            if matches!(e, domcomplex::Error::CellBudgetExceeded { .. }) {
                OpError(format!("{e}; re-run with --stream or raise --budget"))
            } else {
                OpError::from(e)
            }
        })?;
        let stats = table.stats();
        json!({
            "mode": "table",
            "dim": stats.dim,
            "f": stats.f.counts(),
            "euler": stats.euler,
            "total_cells": stats.f.total(),
            "facets_by_dim": stats.facet_count_by_dim,
        })
    };
    Ok(RunReport {
        command: command_echo(&["stats"], &[("n", n.to_string()), ("k", k.to_string())]),
        spec: Some(SpecEcho { n, k }),
        results,
        wall_ms: 0,
        pass: None,
        human: None,
    })
}

fn cmd_morse(
    n: Option<u8>,
    d52: bool,
    check_restriction: bool,
    matching_out: Option<&Path>,
    budget: usize,
) -> OpResult<RunReport> {
    if d52 {
        return cmd_morse_d52(matching_out, budget);
    }
    let n = n.expect("clap requires --n unless --d52");
    let nn = VertexCount::new(n)?;
    if n < 4 {
        return Err(OpError("the collapse matching needs n >= 4".into()));
    }
    let dnn2 = build_dnn2(nn, budget)?;
    verify_well_formed(&dnn2.matching, &dnn2.table)?;
    let census = critical_census(&dnn2.matching, &dnn2.table);
    let acyclic_report = verify_acyclic(&dnn2.matching);
    let expected = vec![1, 0, formulas::wedge_summands(n) as usize, 0];
    let census_ok = census.counts() == expected;
    let mut results = json!({
        "census": census.to_json(acyclic_report.is_acyclic()),
        "expected_critical": expected,
        "census_matches": census_ok,
        "critical_cells": critical_cell_text(&dnn2.table, &census),
    });
    let mut pass = census_ok && acyclic_report.is_acyclic();
    if let CycleReport::Cycle(witness) = &acyclic_report {
        results["witness"] = json!(witness.to_string());
    }
    if check_restriction {
        if n < 5 {
            return Err(OpError("--check-restriction needs n >= 5".into()));
        }
        let small_n = VertexCount::new(n - 1)?;
        let small = build_dnn2(small_n, budget)?;
        let restricts = verify_restriction(&dnn2.matching, &small.matching, &small.table);
        let image: domcomplex::CellSet = small
            .table
            .iter()
            .map(|m| domcomplex::complex::embed_mask(m, small_n, nn))
            .collect();
        let outside = verify_no_outside_cycles(&dnn2.q12, &dnn2.r12, &image);
        results["restriction"] = json!({
            "restricts": restricts,
            "outside_acyclic": outside.report.is_acyclic(),
            "max_outside_path_len": outside.max_path_len,
        });
        pass = pass && restricts && outside.report.is_acyclic() && outside.max_path_len <= 2;
    }
    if let Some(path) = matching_out {
        let mut buf = Vec::new();
        write_matching(&dnn2.matching, &mut buf)?;
        std::fs::write(path, buf)?;
        results["matching_out"] = json!(path.display().to_string());
    }
    Ok(RunReport {
        command: command_echo(&["morse"], &[("n", n.to_string())]),
        spec: Some(SpecEcho { n, k: n - 2 }),
        results,
        wall_ms: 0,
        pass: Some(pass),
        human: None,
    })
}

fn cmd_morse_d52(matching_out: Option<&Path>, budget: usize) -> OpResult<RunReport> {
    let suite = domcomplex::d52::build(budget)?;
    verify_well_formed(&suite.matching, &suite.table)?;
    let census = critical_census(&suite.matching, &suite.table);
    let acyclic_report = verify_acyclic(&suite.matching);
    let expected = vec![1, 0, 0, 0, 0, 4, 0];
    let census_ok = census.counts() == expected;
    let enumeration = domcomplex::d52::enumerate_r34_matchings(&suite.r34, domcomplex::d52::n5())?;
    let mut results = json!({
        "census": census.to_json(acyclic_report.is_acyclic()),
        "expected_critical": expected,
        "census_matches": census_ok,
        "critical_cells": critical_cell_text(&suite.table, &census),
        "r34_pairings": {
            "first_edge_rule": enumeration.matchings.len(),
            "free_wellformed": enumeration.free_wellformed,
            "free_acyclic": enumeration.free_acyclic,
        },
    });
    if let CycleReport::Cycle(witness) = &acyclic_report {
        results["witness"] = json!(witness.to_string());
    }
    if let Some(path) = matching_out {
        let mut buf = Vec::new();
        write_matching(&suite.matching, &mut buf)?;
        std::fs::write(path, buf)?;
        results["matching_out"] = json!(path.display().to_string());
    }
    Ok(RunReport {
        command: "morse --d52".into(),
        spec: Some(SpecEcho { n: 5, k: 2 }),
        results,
        wall_ms: 0,
        pass: Some(census_ok && acyclic_report.is_acyclic()),
        human: None,
    })
}

fn critical_cell_text(table: &CellTable, census: &domcomplex::MorseCensus) -> Value {
    let mut map = serde_json::Map::new();
    let dim = table.dim().max(-1);
    for d in 0..=(dim.max(0) as usize) {
        let cells = census.critical(d);
        if !cells.is_empty() {
            let texts: Vec<String> = cells.iter().map(|&c| table.graph(c).to_string()).collect();
            map.insert(d.to_string(), json!(texts));
        }
    }
    Value::Object(map)
}

fn cmd_homology(n: u8, k: u8, mode: ModeArg, budget: usize) -> OpResult<RunReport> {
    let spec = spec_of(n, k)?;
    let table = CellTable::enumerate_with_budget(spec, budget)?;
    let rank_mode: RankMode = mode.into();
    let vector = betti(&table, rank_mode, budget)?;
    let euler_check = vector.euler() == table.f_vector().euler();
    let mut results = json!({
        "n": n,
        "k": k,
        "mode": match rank_mode { RankMode::Gf2 => "gf2", RankMode::Rational => "int" },
        "betti": vector.b,
        "euler_check": euler_check,
        "euler": table.f_vector().euler(),
    });
    if rank_mode == RankMode::Rational
        && table.total_cells() <= domcomplex::homology::TORSION_CELL_LIMIT
        && table.dim() >= 1
    {
        results["torsion_free"] = json!(domcomplex::homology::torsion_free(&table)?);
    }
    Ok(RunReport {
        command: command_echo(&["homology"], &[("n", n.to_string()), ("k", k.to_string())]),
        spec: Some(SpecEcho { n, k }),
        results,
        wall_ms: 0,
        pass: Some(euler_check),
        human: None,
    })
}

fn cmd_reproduce(heavy: bool, list: bool, only: &[String], budget: usize) -> OpResult<RunReport> {
    let checks: Vec<_> = all_checks()
        .into_iter()
        .filter(|c| heavy || !c.heavy)
        .filter(|c| only.is_empty() || only.iter().any(|p| c.id.starts_with(p.as_str())))
        .collect();
    if checks.is_empty() {
        return Err(OpError(format!(
            "no rows match the --only filters {only:?}"
        )));
    }
    if list {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| json!({ "id": c.id, "heavy": c.heavy, "description": c.description }))
            .collect();
        let human = checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} - {}\n",
                    if c.heavy { "[heavy]" } else { "[light]" },
                    c.id,
                    c.description
                )
            })
            .collect::<String>();
        return Ok(RunReport {
            command: command_echo(&["reproduce", "--list"], &[]),
            spec: None,
            results: json!({ "rows": rows, "count": checks.len() }),
            wall_ms: 0,
            pass: None,
            human: Some(human),
        });
    }
    let mut outcomes = Vec::with_capacity(checks.len());
    let mut human = String::new();
    for check in &checks {
        let outcome = check.run(budget);
        human.push_str(&format!(
            "[{}] {} - {} ({} ms)\n",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.id,
            outcome.detail,
            outcome.millis
        ));
        outcomes.push(outcome);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let failed = outcomes.len() - passed;
    human.push_str(&format!(
        "{} rows: {passed} passed, {failed} failed\n",
        outcomes.len()
    ));
    let results = json!({
        "rows": outcomes,
        "executed": passed + failed,
        "passed": passed,
        "failed": failed,
        "heavy_included": heavy,
    });
    Ok(RunReport {
        command: if heavy {
            "reproduce --heavy".into()
        } else {
            "reproduce".into()
        },
        spec: None,
        results,
        wall_ms: 0,
        pass: Some(failed == 0),
        human: Some(human),
    })
}

fn cmd_export(path: &Path, n: u8, k: u8, budget: usize) -> OpResult<RunReport> {
    let spec = spec_of(n, k)?;
    let table = CellTable::enumerate_with_budget(spec, budget)?;
    let mut buf = Vec::new();
    write_cache(&table, &mut buf)?;
    std::fs::write(path, &buf)?;
    Ok(RunReport {
        command: command_echo(&["export"], &[("n", n.to_string()), ("k", k.to_string())]),
        spec: Some(SpecEcho { n, k }),
        results: json!({
            "path": path.display().to_string(),
            "cells": table.total_cells(),
            "bytes": buf.len(),
        }),
        wall_ms: 0,
        pass: None,
        human: None,
    })
}

fn cmd_import(path: &Path, n: Option<u8>, k: Option<u8>) -> OpResult<RunReport> {
    let raw = std::fs::read(path)?;
    let table = read_cache(raw.as_slice())?;
    let spec = table.spec();
    if let Some(n) = n {
        if spec.n().get() != n {
            return Err(OpError(format!(
                "cache holds n={}, expected n={n}",
                spec.n().get()
            )));
        }
    }
    if let Some(k) = k {
        if spec.k() != k {
            return Err(OpError(format!(
                "cache holds k={}, expected k={k}",
                spec.k()
            )));
        }
    }
    let mut buf = Vec::new();
    write_cache(&table, &mut buf)?;
    let roundtrip_identical = buf == raw;
    let stats = table.stats();
    Ok(RunReport {
        command: command_echo(&["import"], &[]),
        spec: Some(SpecEcho {
            n: spec.n().get(),
            k: spec.k(),
        }),
        results: json!({
            "path": path.display().to_string(),
            "dim": stats.dim,
            "f": stats.f.counts(),
            "euler": stats.euler,
            "total_cells": stats.f.total(),
            "roundtrip_identical": roundtrip_identical,
        }),
        wall_ms: 0,
        pass: Some(roundtrip_identical),
        human: None,
    })
}

fn command_echo(parts: &[&str], args: &[(&str, String)]) -> String {
    let mut s = parts.join(" ");
    for (key, value) in args {
        s.push_str(&format!(" --{key} {value}"));
    }
    s
}
