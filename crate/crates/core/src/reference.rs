//! The versioned table of golden values used by the verification suite.
//!
//! Everything a check compares against that is not a closed-form formula
//! lives in `data/reference_v1.json`: frozen Euler characteristics and
//! f-vectors, the `D_{5,2}` facet-contribution tables, the remainder family
//! `R34` with its reference matching, and the `n = 4` Hasse-diagram fixture.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::{LabeledGraph, VertexCount};

const RAW: &str = include_str!("../data/reference_v1.json");

#[derive(Debug, Deserialize)]
pub struct Reference {
    pub version: u32,
    pub euler: Vec<EulerEntry>,
    pub f_vectors: Vec<FVectorEntry>,
    pub betti_findings: Vec<BettiEntry>,
    pub hasse_n4: HasseFixture,
    pub d52: D52Reference,
}

#[derive(Debug, Deserialize)]
pub struct EulerEntry {
    pub n: u8,
    pub k: u8,
    pub chi: i64,
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct FVectorEntry {
    pub n: u8,
    pub k: u8,
    pub counts: Vec<usize>,
}

#[derive(Debug, Deserialize)]
pub struct BettiEntry {
    pub n: u8,
    pub k: u8,
    pub mode: String,
    pub b: Vec<i64>,
}

#[derive(Debug, Deserialize)]
pub struct HasseFixture {
    pub q12_pairs: Vec<(String, String)>,
    pub q23_pairs: Vec<(String, String)>,
    pub critical_0: Vec<String>,
    pub critical_2: Vec<String>,
    pub r12: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct D52Reference {
    /// Facets of `D_{5,2}` meeting the remainder `R12`, in presentation
    /// order, each with the cells it contributes (cells listed under an
    /// earlier facet are omitted, so the lists partition `R12`).
    pub facet_tables: Vec<FacetTable>,
    pub r34_dim4: Vec<String>,
    pub r34_dim5: Vec<String>,
    pub r34_dim6: Vec<String>,
    /// The reference acyclic matching on `R34` (four 4->5 pairs, four
    /// 5->6 pairs, leaving four critical 5-cells).
    pub reference_matching: Vec<(String, String)>,
    pub pairing_counts: PairingCounts,
}

#[derive(Debug, Deserialize)]
pub struct FacetTable {
    pub facet: String,
    pub cells: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct PairingCounts {
    /// Matchings whose 4->5 pairs follow the first-admissible-edge rule.
    pub first_edge_rule: usize,
    /// All ways to match every 4-cell up and every 6-cell down.
    pub free_wellformed: usize,
    /// The acyclic ones among those.
    pub free_acyclic: usize,
}

/// The parsed reference table (parsed once, embedded in the binary).
pub fn reference() -> &'static Reference {
    static CELL: OnceLock<Reference> = OnceLock::new();
    CELL.get_or_init(|| {
        let r: Reference = serde_json::from_str(RAW).expect("embedded reference table is valid");
        assert_eq!(r.version, 1, "unexpected reference table version");
        r
    })
}

/// Parses a cell in the `13|14` text form into a mask over `n` labels.
pub fn cell(n: VertexCount, text: &str) -> u128 {
    LabeledGraph::parse(n, text)
        .expect("reference cells are well formed")
        .mask()
}

/// Parses a list of cells into a sorted mask vector.
pub fn cells(n: VertexCount, texts: &[String]) -> Vec<u128> {
    let mut v: Vec<u128> = texts.iter().map(|t| cell(n, t)).collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses_and_is_consistent() {
        let r = reference();
        assert_eq!(r.version, 1);
        let n5 = VertexCount::new(5).unwrap();
        // the facet tables partition an 86-cell family
        let total: usize = r.d52.facet_tables.iter().map(|t| t.cells.len()).sum();
        assert_eq!(total, 86);
        // R34 has the (4,12,4) profile and its matching uses known cells
        assert_eq!(r.d52.r34_dim4.len(), 4);
        assert_eq!(r.d52.r34_dim5.len(), 12);
        assert_eq!(r.d52.r34_dim6.len(), 4);
        assert_eq!(r.d52.reference_matching.len(), 8);
        let all: std::collections::BTreeSet<u128> = r
            .d52
            .r34_dim4
            .iter()
            .chain(&r.d52.r34_dim5)
            .chain(&r.d52.r34_dim6)
            .map(|t| cell(n5, t))
            .collect();
        assert_eq!(all.len(), 20);
        for (tau, sigma) in &r.d52.reference_matching {
            let (t, s) = (cell(n5, tau), cell(n5, sigma));
            assert!(all.contains(&t) && all.contains(&s));
            assert_eq!(s & t, t);
            assert_eq!((s ^ t).count_ones(), 1);
        }
    }
}
