//! The end-to-end reproduction checks.
//!
//! Every numeric claim the library is expected to reproduce is a row here:
//! closed-form f-vectors, Euler characteristics, Morse censuses with
//! acyclicity, the restriction checks, the `D_{5,2}` suite, Betti numbers,
//! and the property suites. The command-line `reproduce` subcommand and the
//! acceptance tests both drive this table.

use std::time::Instant;

use serde::Serialize;

use crate::complex::{euler_characteristic, CellSet};
use crate::formulas;
use crate::homology::{betti, RankMode, DEFAULT_RANK_BUDGET};
use crate::morse::{
    build_dnn2, critical_census, verify_acyclic, verify_no_outside_cycles, verify_restriction,
    verify_well_formed,
};
use crate::reference::{cell, cells, reference};
use crate::verify;
use crate::{ComplexSpec, VertexCount};

/// One row of the reproduction table.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub heavy: bool,
    kind: CheckKind,
}

#[derive(Clone, Debug)]
enum CheckKind {
    FVectorClosedForm { n: u8 },
    EulerSeries { n: u8 },
    EulerFrozen { n: u8, k: u8, chi: i64 },
    MorseCensus { n: u8 },
    HasseFixture,
    Restriction { n: u8 },
    D52Suite,
    BettiWedge { n: u8, mode: RankMode },
    BettiD52,
    BettiFrozen { n: u8, k: u8, b: Vec<i64> },
    BoundarySquared,
    FaceClosure,
    Monotonicity { trials: usize, seed: u64 },
    GammaStructure { n: u8 },
    Classification { n: u8 },
    NegativeControls,
    HomotopyNote,
}

/// Result of one executed row.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub description: String,
    pub heavy: bool,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

/// The full table, in presentation order.
pub fn all_checks() -> Vec<Check> {
    let r = reference();
    let mut rows = Vec::new();
    for n in 4..=8u8 {
        rows.push(Check {
            id: format!("f-vector-{n}-{}", n - 2),
            description: format!("f(D_{{{n},{}}}) equals the closed-form counts", n - 2),
            heavy: false,
            kind: CheckKind::FVectorClosedForm { n },
        });
    }
    for n in 4..=9u8 {
        rows.push(Check {
            id: format!("euler-series-{n}"),
            description: format!("chi(D_{{{n},{}}}) = N_{n} + 1, streaming", n - 2),
            heavy: false,
            kind: CheckKind::EulerSeries { n },
        });
    }
    for entry in &r.euler {
        let heavy = entry.n >= 7;
        let mut description = format!(
            "chi(D_{{{},{}}}) = {}, streaming",
            entry.n, entry.k, entry.chi
        );
        if let Some(note) = &entry.note {
            description.push_str(" [");
            description.push_str(note);
            description.push(']');
        }
        rows.push(Check {
            id: format!("euler-{}-{}", entry.n, entry.k),
            description,
            heavy,
            kind: CheckKind::EulerFrozen {
                n: entry.n,
                k: entry.k,
                chi: entry.chi,
            },
        });
    }
    for n in 4..=8u8 {
        rows.push(Check {
            id: format!("morse-{n}"),
            description: format!(
                "the D_{{{n},{}}} matching is well-formed, acyclic, census (1,0,N_{n},0)",
                n - 2
            ),
            heavy: false,
            kind: CheckKind::MorseCensus { n },
        });
    }
    rows.push(Check {
        id: "hasse-fixture-4".into(),
        description: "n = 4 matched pairs and critical 2-cells match the reference diagram".into(),
        heavy: false,
        kind: CheckKind::HasseFixture,
    });
    for n in 5..=7u8 {
        rows.push(Check {
            id: format!("restriction-{n}"),
            description: format!(
                "D_{{{n},{}}} matching restricts to D_{{{},{}}}; no outside cycles, paths <= 2",
                n - 2,
                n - 1,
                n - 3
            ),
            heavy: false,
            kind: CheckKind::Restriction { n },
        });
    }
    rows.push(Check {
        id: "d52-suite".into(),
        description: "D_{5,2}: facet tables, R34 profile, reference matching, 16 pairings".into(),
        heavy: false,
        kind: CheckKind::D52Suite,
    });
    for n in 4..=7u8 {
        rows.push(Check {
            id: format!("betti-gf2-{n}"),
            description: format!("Betti(D_{{{n},{}}}) = (1,0,N_{n},0) over GF(2)", n - 2),
            heavy: false,
            kind: CheckKind::BettiWedge {
                n,
                mode: RankMode::Gf2,
            },
        });
    }
    for n in 4..=6u8 {
        rows.push(Check {
            id: format!("betti-rational-{n}"),
            description: format!(
                "Betti(D_{{{n},{}}}) = (1,0,N_{n},0) over the rationals",
                n - 2
            ),
            heavy: false,
            kind: CheckKind::BettiWedge {
                n,
                mode: RankMode::Rational,
            },
        });
    }
    rows.push(Check {
        id: "betti-d52".into(),
        description: "Betti(D_{5,2}) = (1,0,0,0,0,4,0) in both modes".into(),
        heavy: false,
        kind: CheckKind::BettiD52,
    });
    for entry in &r.betti_findings {
        rows.push(Check {
            id: format!("betti-{}-{}", entry.n, entry.k),
            description: format!(
                "Betti(D_{{{},{}}}) over GF(2) matches the frozen finding {:?}",
                entry.n, entry.k, entry.b
            ),
            heavy: entry.n >= 7,
            kind: CheckKind::BettiFrozen {
                n: entry.n,
                k: entry.k,
                b: entry.b.clone(),
            },
        });
    }
    rows.push(Check {
        id: "boundary-squared".into(),
        description: "dd = 0 at every consecutive pair of dimensions, both modes".into(),
        heavy: false,
        kind: CheckKind::BoundarySquared,
    });
    rows.push(Check {
        id: "face-closure".into(),
        description: "every enumerated complex is closed under faces".into(),
        heavy: false,
        kind: CheckKind::FaceClosure,
    });
    rows.push(Check {
        id: "monotonicity".into(),
        description: "gamma never rises under edge addition (100000 seeded trials, n <= 8)".into(),
        heavy: false,
        kind: CheckKind::Monotonicity {
            trials: 100_000,
            seed: 0x0D0C_5EED,
        },
    });
    for n in 2..=7u8 {
        rows.push(Check {
            id: format!("gamma-structure-{n}"),
            description: format!("gamma structure facts hold for every graph on {n} vertices"),
            heavy: false,
            kind: CheckKind::GammaStructure { n },
        });
    }
    for n in 4..=7u8 {
        rows.push(Check {
            id: format!("classification-{n}"),
            description: format!(
                "2-cells of D_{{{n},{}}} are exactly 3-paths and triangles",
                n - 2
            ),
            heavy: false,
            kind: CheckKind::Classification { n },
        });
    }
    rows.push(Check {
        id: "negative-controls".into(),
        description: "the cyclic control is detected; the perturbed restriction is rejected".into(),
        heavy: false,
        kind: CheckKind::NegativeControls,
    });
    rows.push(Check {
        id: "homotopy-note".into(),
        description: "homotopy equivalences themselves are not machine-checkable; their \
                      computable footprint is covered by the morse, d52 and betti rows"
            .into(),
        heavy: false,
        kind: CheckKind::HomotopyNote,
    });
    rows
}

impl Check {
    pub fn run(&self, budget: usize) -> CheckOutcome {
        let start = Instant::now();
        let result = self.execute(budget);
        let (pass, detail) = match result {
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        CheckOutcome {
            id: self.id.clone(),
            description: self.description.clone(),
            heavy: self.heavy,
            pass,
            detail,
            millis: start.elapsed().as_millis(),
        }
    }

    fn execute(&self, budget: usize) -> std::result::Result<String, String> {
        match &self.kind {
            CheckKind::FVectorClosedForm { n } => {
                let table = enumerate(*n, n - 2, budget)?;
                let got = table.f_vector();
                let want = formulas::dnn2_f_vector(*n);
                expect(&got, &want)?;
                Ok(format!("f = {:?}", got.counts()))
            }
            CheckKind::EulerSeries { n } => {
                let spec = spec(*n, n - 2)?;
                let got = euler_characteristic(spec);
                expect(&got, &formulas::dnn2_euler(*n))?;
                Ok(format!("chi = {got}"))
            }
            CheckKind::EulerFrozen { n, k, chi } => {
                let got = euler_characteristic(spec(*n, *k)?);
                expect(&got, chi)?;
                Ok(format!("chi = {got}"))
            }
            CheckKind::MorseCensus { n } => {
                let nn = vertex(*n)?;
                let dnn2 = build_dnn2(nn, budget).map_err(|e| e.to_string())?;
                verify_well_formed(&dnn2.matching, &dnn2.table).map_err(|e| e.to_string())?;
                let report = verify_acyclic(&dnn2.matching);
                if !report.is_acyclic() {
                    return Err(format!("cycle found: {report:?}"));
                }
                let census = critical_census(&dnn2.matching, &dnn2.table);
                let want = vec![1, 0, formulas::wedge_summands(*n) as usize, 0];
                expect(&census.counts(), &want)?;
                Ok(format!("census = {:?}, acyclic", census.counts()))
            }
            CheckKind::HasseFixture => hasse_fixture(budget),
            CheckKind::Restriction { n } => restriction(*n, budget),
            CheckKind::D52Suite => d52_suite(budget),
            CheckKind::BettiWedge { n, mode } => {
                let table = enumerate(*n, n - 2, budget)?;
                let got = betti(&table, *mode, DEFAULT_RANK_BUDGET).map_err(|e| e.to_string())?;
                let want = vec![1, 0, formulas::wedge_summands(*n), 0];
                expect(&got.b, &want)?;
                Ok(format!("betti = {:?} ({mode:?})", got.b))
            }
            CheckKind::BettiD52 => {
                let table = enumerate(5, 2, budget)?;
                for mode in [RankMode::Gf2, RankMode::Rational] {
                    let got =
                        betti(&table, mode, DEFAULT_RANK_BUDGET).map_err(|e| e.to_string())?;
                    expect(&got.b, &vec![1, 0, 0, 0, 0, 4, 0])?;
                }
                Ok("betti = [1, 0, 0, 0, 0, 4, 0] in both modes".into())
            }
            CheckKind::BettiFrozen { n, k, b } => {
                let table = enumerate(*n, *k, budget)?;
                let got =
                    betti(&table, RankMode::Gf2, DEFAULT_RANK_BUDGET).map_err(|e| e.to_string())?;
                expect(&got.b, b)?;
                if got.euler() != table.f_vector().euler() {
                    return Err("betti alternating sum disagrees with chi".into());
                }
                Ok(format!("betti = {:?}", got.b))
            }
            CheckKind::BoundarySquared => {
                for (n, k) in [(4, 2), (5, 3), (6, 4), (5, 2)] {
                    let table = enumerate(n, k, budget)?;
                    for d in 2..=table.dim().max(1) as usize {
                        for mode in [RankMode::Gf2, RankMode::Rational] {
                            let ok = crate::homology::boundary_squared_is_zero(&table, d, mode)
                                .map_err(|e| e.to_string())?;
                            if !ok {
                                return Err(format!(
                                    "dd != 0 on D_{{{n},{k}}} at d={d} ({mode:?})"
                                ));
                            }
                        }
                    }
                }
                Ok("dd = 0 on D_{4,2}, D_{5,3}, D_{6,4}, D_{5,2}".into())
            }
            CheckKind::FaceClosure => {
                for (n, k) in [(4, 2), (5, 3), (6, 4), (5, 2), (6, 3)] {
                    let table = enumerate(n, k, budget)?;
                    verify::face_closure(&table)?;
                }
                Ok("closed under faces: D_{4,2}, D_{5,3}, D_{6,4}, D_{5,2}, D_{6,3}".into())
            }
            CheckKind::Monotonicity { trials, seed } => {
                verify::monotonicity_random_trials(8, *trials, *seed)?;
                Ok(format!("{trials} trials, zero violations"))
            }
            CheckKind::GammaStructure { n } => {
                verify::gamma_structure_exhaustive(*n)?;
                Ok(format!(
                    "all {} graphs pass",
                    1u64 << (*n as u64 * (*n as u64 - 1) / 2)
                ))
            }
            CheckKind::Classification { n } => {
                verify::two_cell_classification(*n)?;
                Ok("classification matches membership".into())
            }
            CheckKind::NegativeControls => {
                let (_, control) = verify::hollow_triangle_control();
                if verify_acyclic(&control).is_acyclic() {
                    return Err("cyclic control not detected".into());
                }
                let (perturbed, small, small_table) =
                    verify::perturbed_restriction_control().map_err(|e| e.to_string())?;
                if verify_restriction(&perturbed, &small, &small_table) {
                    return Err("perturbed restriction not rejected".into());
                }
                Ok("both controls fire".into())
            }
            CheckKind::HomotopyNote => Ok("informational".into()),
        }
    }
}

fn vertex(n: u8) -> std::result::Result<VertexCount, String> {
    VertexCount::new(n).map_err(|e| e.to_string())
}

fn spec(n: u8, k: u8) -> std::result::Result<ComplexSpec, String> {
    ComplexSpec::new(vertex(n)?, k).map_err(|e| e.to_string())
}

fn enumerate(n: u8, k: u8, budget: usize) -> std::result::Result<crate::CellTable, String> {
    crate::CellTable::enumerate_with_budget(spec(n, k)?, budget).map_err(|e| e.to_string())
}

fn expect<T: PartialEq + std::fmt::Debug>(got: &T, want: &T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("expected {want:?}, got {got:?}"))
    }
}

fn hasse_fixture(budget: usize) -> std::result::Result<String, String> {
    let n = vertex(4)?;
    let fixture = &reference().hasse_n4;
    let dnn2 = build_dnn2(n, budget).map_err(|e| e.to_string())?;
    let r12: Vec<u128> = dnn2.r12.iter().copied().collect();
    expect(&r12, &cells(n, &fixture.r12))?;
    let q12_pairs: Vec<(u128, u128)> = fixture
        .q12_pairs
        .iter()
        .map(|(t, s)| (cell(n, t), cell(n, s)))
        .collect();
    let mut got12 = dnn2.q12.pairs();
    got12.sort_unstable();
    let mut want12 = q12_pairs;
    want12.sort_unstable();
    expect(&got12, &want12)?;
    let q23_pairs: Vec<(u128, u128)> = fixture
        .q23_pairs
        .iter()
        .map(|(t, s)| (cell(n, t), cell(n, s)))
        .collect();
    let mut got23 = dnn2.q23.pairs();
    got23.sort_unstable();
    let mut want23 = q23_pairs;
    want23.sort_unstable();
    expect(&got23, &want23)?;
    let census = critical_census(&dnn2.matching, &dnn2.table);
    expect(&census.critical(0).to_vec(), &cells(n, &fixture.critical_0))?;
    let mut crit2 = census.critical(2).to_vec();
    crit2.sort_unstable();
    expect(&crit2, &cells(n, &fixture.critical_2))?;
    Ok("pairs and critical cells match the diagram".into())
}

fn restriction(n: u8, budget: usize) -> std::result::Result<String, String> {
    let big_n = vertex(n)?;
    let small_n = vertex(n - 1)?;
    let big = build_dnn2(big_n, budget).map_err(|e| e.to_string())?;
    let small = build_dnn2(small_n, budget).map_err(|e| e.to_string())?;
    if !verify_restriction(&big.matching, &small.matching, &small.table) {
        return Err("matching does not restrict".into());
    }
    let image: CellSet = small
        .table
        .iter()
        .map(|m| crate::complex::embed_mask(m, small_n, big_n))
        .collect();
    let report = verify_no_outside_cycles(&big.q12, &big.r12, &image);
    if !report.report.is_acyclic() {
        return Err("cycle outside the embedded subcomplex".into());
    }
    if report.max_path_len > 2 {
        return Err(format!(
            "outside path of length {} exceeds the bound 2",
            report.max_path_len
        ));
    }
    Ok(format!(
        "restricts; outside paths acyclic with max length {}",
        report.max_path_len
    ))
}

fn d52_suite(budget: usize) -> std::result::Result<String, String> {
    let r = reference();
    let n = crate::d52::n5();
    let suite = crate::d52::build(budget).map_err(|e| e.to_string())?;
    // facet tables, cell for cell
    let order: Vec<u128> = r
        .d52
        .facet_tables
        .iter()
        .map(|t| cell(n, &t.facet))
        .collect();
    let contributions = crate::d52::facet_contributions(&suite.r12, &order);
    for (fixture, got) in r.d52.facet_tables.iter().zip(&contributions) {
        expect(got, &cells(n, &fixture.cells))
            .map_err(|e| format!("facet {}: {e}", fixture.facet))?;
    }
    // R34 profile and exact contents
    let mut expected_r34: Vec<u128> = Vec::new();
    expected_r34.extend(cells(n, &r.d52.r34_dim4));
    expected_r34.extend(cells(n, &r.d52.r34_dim5));
    expected_r34.extend(cells(n, &r.d52.r34_dim6));
    expected_r34.sort_unstable();
    let got_r34: Vec<u128> = suite.r34.iter().copied().collect();
    expect(&got_r34, &expected_r34)?;
    // the reference matching is acyclic with four critical 5-cells
    if !verify_acyclic(&suite.matching).is_acyclic() {
        return Err("assembled matching has a cycle".into());
    }
    let census = critical_census(&suite.matching, &suite.table);
    expect(&census.counts(), &vec![1, 0, 0, 0, 0, 4, 0])?;
    // the pairing enumeration
    let enumeration =
        crate::d52::enumerate_r34_matchings(&suite.r34, n).map_err(|e| e.to_string())?;
    expect(
        &enumeration.matchings.len(),
        &r.d52.pairing_counts.first_edge_rule,
    )?;
    expect(
        &enumeration.free_wellformed,
        &r.d52.pairing_counts.free_wellformed,
    )?;
    expect(
        &enumeration.free_acyclic,
        &r.d52.pairing_counts.free_acyclic,
    )?;
    if !enumeration.matchings.contains(&suite.r34_matching) {
        return Err("reference matching missing from the enumeration".into());
    }
    Ok(format!(
        "tables match; census (1,0,0,0,0,4,0); {} rule pairings ({} well-formed, {} acyclic free)",
        enumeration.matchings.len(),
        enumeration.free_wellformed,
        enumeration.free_acyclic
    ))
}
