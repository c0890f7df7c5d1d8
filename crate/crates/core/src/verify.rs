//! Property checks shared by the test suite and the reproduction command.
//!
//! Each check returns `Ok(())` or a description of the first violation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::CellSet;
use crate::graph::{domination_at_least, domination_number};
use crate::morse::Matching;
use crate::{CellTable, ComplexSpec, LabeledGraph, VertexCount};

pub type CheckResult = std::result::Result<(), String>;

/// gamma can only drop when an edge is added. Random trials over all
/// `4 <= n <= max_n`, deterministic under the seed.
pub fn monotonicity_random_trials(max_n: u8, trials: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let n = VertexCount::new(rng.gen_range(4..=max_n)).expect("range is valid");
        let edge_count = n.edge_count();
        let mask: u128 = rng.gen::<u128>() & ((1u128 << edge_count) - 1);
        let absent: Vec<usize> = (0..edge_count).filter(|&t| mask >> t & 1 == 0).collect();
        if absent.is_empty() {
            continue;
        }
        let t = absent[rng.gen_range(0..absent.len())];
        let g = LabeledGraph::from_mask(n, mask).expect("mask in range");
        let bigger = LabeledGraph::from_mask(n, mask | 1u128 << t).expect("mask in range");
        let (before, after) = (domination_number(&g), domination_number(&bigger));
        if after > before {
            return Err(format!(
                "trial {trial}: gamma rose from {before} to {after} when adding an edge to {g}"
            ));
        }
    }
    Ok(())
}

/// The four structural facts about gamma, exhaustively over all graphs on
/// `n` vertices: the max-degree bound `gamma <= n - d`, the
/// characterizations of `gamma = n` and `gamma = n-1`, and `gamma = n-2`
/// for every 2-edge graph.
pub fn gamma_structure_exhaustive(n: u8) -> CheckResult {
    let nn = VertexCount::new(n).map_err(|e| e.to_string())?;
    let edge_count = nn.edge_count();
    for mask in 0..1u128 << edge_count {
        let g = LabeledGraph::from_mask(nn, mask).expect("mask in range");
        let gamma = domination_number(&g);
        let edges = g.edge_count();
        let d = g.max_degree();
        if gamma > n as usize - d {
            return Err(format!(
                "{g}: gamma {gamma} exceeds n - maxdeg = {}",
                n as usize - d
            ));
        }
        if (gamma == n as usize) != (edges == 0) {
            return Err(format!(
                "{g}: gamma = n iff edgeless violated (gamma={gamma})"
            ));
        }
        if (gamma == n as usize - 1) != (edges == 1) {
            return Err(format!(
                "{g}: gamma = n-1 iff single edge violated (gamma={gamma})"
            ));
        }
        if edges == 2 && gamma != n as usize - 2 {
            return Err(format!("{g}: two edges but gamma = {gamma}"));
        }
        // agreement of the threshold oracle with gamma, spot-checked at the
        // interesting thresholds
        for k in [n as usize - 2, n as usize - 1, n as usize] {
            if domination_at_least(&g, k) != (gamma >= k) {
                return Err(format!("{g}: threshold oracle disagrees at k={k}"));
            }
        }
    }
    Ok(())
}

/// Isomorphism type of a 3-edge graph, by its nonzero degree multiset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeEdgeShape {
    Triangle,
    Path,
    Star,
    PathPlusEdge,
    ThreeDisjointEdges,
}

pub fn three_edge_shape(g: &LabeledGraph) -> Option<ThreeEdgeShape> {
    if g.edge_count() != 3 {
        return None;
    }
    let mut degrees: Vec<usize> = (1..=g.n().get())
        .map(|v| g.degree(v))
        .filter(|&d| d > 0)
        .collect();
    degrees.sort_unstable();
    Some(match degrees.as_slice() {
        [2, 2, 2] => ThreeEdgeShape::Triangle,
        [1, 1, 2, 2] => ThreeEdgeShape::Path,
        [1, 1, 1, 3] => ThreeEdgeShape::Star,
        [1, 1, 1, 1, 2] => ThreeEdgeShape::PathPlusEdge,
        [1, 1, 1, 1, 1, 1] => ThreeEdgeShape::ThreeDisjointEdges,
        other => unreachable!("impossible 3-edge degree multiset {other:?}"),
    })
}

/// The 2-cells of `D_{n,n-2}` are exactly the 3-edge graphs shaped like a
/// 3-edge path or a triangle; checked in both directions over every 3-edge
/// graph on `n` vertices.
pub fn two_cell_classification(n: u8) -> CheckResult {
    let nn = VertexCount::new(n).map_err(|e| e.to_string())?;
    let k = n as usize - 2;
    let edge_count = nn.edge_count();
    for a in 0..edge_count {
        for b in a + 1..edge_count {
            for c in b + 1..edge_count {
                let mask = 1u128 << a | 1u128 << b | 1u128 << c;
                let g = LabeledGraph::from_mask(nn, mask).expect("mask in range");
                let shape = three_edge_shape(&g).expect("three edges");
                let allowed = matches!(shape, ThreeEdgeShape::Path | ThreeEdgeShape::Triangle);
                let is_cell = domination_at_least(&g, k);
                if allowed != is_cell {
                    return Err(format!(
                        "{g}: shape {shape:?}, membership {is_cell}, expected {allowed}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Face closure of an enumerated table: every sub-mask with at least one
/// edge is again a cell.
pub fn face_closure(table: &CellTable) -> CheckResult {
    match table.closure_violation() {
        None => Ok(()),
        Some((cell, face)) => Err(format!(
            "cell {:x} lacks face {:x} in D_{{{},{}}}",
            cell,
            face,
            table.spec().n(),
            table.spec().k()
        )),
    }
}

/// The classic non-acyclic control: the hollow triangle with each vertex
/// matched to its clockwise edge. Returns the family and the matching.
pub fn hollow_triangle_control() -> (CellSet, Matching) {
    let n = VertexCount::new(3).expect("valid");
    let v = |s: &str| {
        LabeledGraph::parse(n, s)
            .expect("fixture cells parse")
            .mask()
    };
    let (v12, v13, v23) = (v("12"), v("13"), v("23"));
    let mut m = Matching::new(n);
    m.insert_pair(v12, v12 | v13).expect("facet pair");
    m.insert_pair(v13, v13 | v23).expect("facet pair");
    m.insert_pair(v23, v12 | v23).expect("facet pair");
    let family: CellSet = [v12, v13, v23, v12 | v13, v13 | v23, v12 | v23]
        .into_iter()
        .collect();
    (family, m)
}

/// Builds the restriction negative control: the `D_{5,3}` matching with one
/// embedded 1-cell re-paired to a different cofacet. The restriction check
/// must reject it.
pub fn perturbed_restriction_control() -> crate::Result<(Matching, Matching, CellTable)> {
    let n4 = VertexCount::new(4).expect("valid");
    let n5 = VertexCount::new(5).expect("valid");
    let small = crate::morse::build_dnn2(n4, crate::DEFAULT_CELL_BUDGET)?;
    let big = crate::morse::build_dnn2(n5, crate::DEFAULT_CELL_BUDGET)?;
    let tau = LabeledGraph::parse(n5, "13|14").expect("parses").mask();
    let wrong_sigma = LabeledGraph::parse(n5, "13|14|34").expect("parses").mask();
    let displaced = big.matching.partner(wrong_sigma).unwrap_or(0);
    let mut perturbed = Matching::new(n5);
    for (t, s) in big.matching.pairs() {
        if t == tau || s == wrong_sigma || t == displaced {
            continue;
        }
        perturbed.insert_pair(t, s)?;
    }
    perturbed.insert_pair(tau, wrong_sigma)?;
    Ok((perturbed, small.matching, small.table))
}

/// Convenience: enumerate with the default budget.
pub fn enumerate(n: u8, k: u8) -> crate::Result<CellTable> {
    let spec = ComplexSpec::new(VertexCount::new(n)?, k)?;
    CellTable::enumerate(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::{verify_acyclic, verify_restriction};

    #[test]
    fn monotonicity_holds_on_a_seeded_run() {
        monotonicity_random_trials(8, 2_000, 0xD0C5).unwrap();
    }

    #[test]
    fn gamma_structure_small() {
        for n in 2..=5 {
            gamma_structure_exhaustive(n).unwrap();
        }
    }

    #[test]
    fn classification_small() {
        for n in 4..=6 {
            two_cell_classification(n).unwrap();
        }
    }

    #[test]
    fn shapes_are_recognized() {
        let n = VertexCount::new(7).unwrap();
        let shape = |s: &str| three_edge_shape(&LabeledGraph::parse(n, s).unwrap()).unwrap();
        assert_eq!(shape("12|23|13"), ThreeEdgeShape::Triangle);
        assert_eq!(shape("12|23|34"), ThreeEdgeShape::Path);
        assert_eq!(shape("12|13|14"), ThreeEdgeShape::Star);
        assert_eq!(shape("12|23|45"), ThreeEdgeShape::PathPlusEdge);
        assert_eq!(shape("12|34|56"), ThreeEdgeShape::ThreeDisjointEdges);
    }

    #[test]
    fn negative_controls_fire() {
        let (_, m) = hollow_triangle_control();
        assert!(!verify_acyclic(&m).is_acyclic());
        let (perturbed, small, small_table) = perturbed_restriction_control().unwrap();
        assert!(!verify_restriction(&perturbed, &small, &small_table));
    }
}
