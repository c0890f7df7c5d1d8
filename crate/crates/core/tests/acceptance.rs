//! The acceptance suite: every reproduced claim, one criterion per test,
//! with a pass/fail line per executed row. Run with `--nocapture` to see the
//! per-row report; the `reproduce` subcommand of the CLI prints the same
//! rows at runtime.

use domcomplex::suite::{all_checks, CheckOutcome};
use domcomplex::DEFAULT_CELL_BUDGET;

fn run_rows(criterion: &str, prefixes: &[&str]) -> Vec<CheckOutcome> {
    let checks = all_checks();
    let selected: Vec<_> = checks
        .iter()
        .filter(|c| {
            prefixes
                .iter()
                .any(|p| c.id == *p || c.id.starts_with(&format!("{p}-")))
        })
        .collect();
    assert!(
        !selected.is_empty(),
        "no rows selected for prefixes {prefixes:?}"
    );
    let mut outcomes = Vec::new();
    for check in selected {
        let outcome = check.run(DEFAULT_CELL_BUDGET);
        println!(
            "{}: {} [{}] {} ({} ms)",
            criterion,
            outcome.id,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            outcome.millis,
        );
        outcomes.push(outcome);
    }
    let failures: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.pass).collect();
    assert!(
        failures.is_empty(),
        "{criterion} failed: {:?}",
        failures
            .iter()
            .map(|o| format!("{}: {}", o.id, o.detail))
            .collect::<Vec<_>>()
    );
    outcomes
}

#[test]
fn criterion_1_f_vectors() {
    run_rows("criterion 1", &["f-vector"]);
}

#[test]
fn criterion_2_euler_characteristics() {
    run_rows("criterion 2", &["euler-series", "euler"]);
}

#[test]
fn criterion_3_morse_census() {
    run_rows("criterion 3", &["morse"]);
}

#[test]
fn criterion_4_hasse_fixture() {
    run_rows("criterion 4", &["hasse-fixture"]);
}

#[test]
fn criterion_5_restriction() {
    run_rows("criterion 5", &["restriction"]);
}

#[test]
fn criterion_6_d52_suite() {
    run_rows("criterion 6", &["d52-suite"]);
}

#[test]
fn criterion_7_homology() {
    run_rows(
        "criterion 7",
        &["betti-gf2", "betti-rational", "betti-d52", "betti"],
    );
}

#[test]
fn criterion_8_property_suites() {
    run_rows(
        "criterion 8",
        &[
            "boundary-squared",
            "face-closure",
            "monotonicity",
            "gamma-structure",
            "classification",
            "negative-controls",
        ],
    );
}

#[test]
fn criterion_9_out_of_reproduction_note() {
    run_rows("criterion 9", &["homotopy-note"]);
}

#[test]
fn every_row_of_the_table_is_covered_by_a_criterion() {
    let all: Vec<String> = all_checks().iter().map(|c| c.id.clone()).collect();
    let prefixes = [
        "f-vector",
        "euler",
        "morse",
        "hasse-fixture",
        "restriction",
        "d52-suite",
        "betti",
        "boundary-squared",
        "face-closure",
        "monotonicity",
        "gamma-structure",
        "classification",
        "negative-controls",
        "homotopy-note",
    ];
    for id in &all {
        assert!(
            prefixes
                .iter()
                .any(|p| id == p || id.starts_with(&format!("{p}-"))),
            "row {id} not covered by any criterion"
        );
    }
}
