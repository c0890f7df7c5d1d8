//! The `D_{5,2}` verification suite.
//!
//! `D_{5,2}` collapses onto one 0-cell and four 5-cells through two rounds of
//! inclusion-exclusion: first along the edge `12` (leaving the 86-cell
//! remainder `R12`), then along `34` inside `R12` (leaving the 20-cell
//! remainder `R34` with dimension profile (4,12,4)). A small hand-sized
//! acyclic matching finishes `R34`.

use crate::complex::{split_along_edge, CellSet, CellTable};
use crate::morse::{assemble, inclusion_exclusion_matching, verify_acyclic, Matching};
use crate::reference::{cell, reference};
use crate::{ComplexSpec, Edge, Error, Result, VertexCount};

/// The assembled `D_{5,2}` collapse and all of its strata.
#[derive(Clone, Debug)]
pub struct D52 {
    pub table: CellTable,
    pub x12: CellSet,
    pub r12: CellSet,
    pub x34: CellSet,
    pub r34: CellSet,
    pub p12: Matching,
    pub p34: Matching,
    /// The reference matching on `R34` (the reference instance).
    pub r34_matching: Matching,
    /// `p12 + p34 + r34_matching`.
    pub matching: Matching,
}

pub fn n5() -> VertexCount {
    VertexCount::new(5).expect("5 is a valid vertex count")
}

/// Builds the whole suite: enumeration, both inclusion-exclusion rounds, and
/// the reference matching on `R34`.
pub fn build(budget: usize) -> Result<D52> {
    let n = n5();
    let spec = ComplexSpec::new(n, 2)?;
    let table = CellTable::enumerate_with_budget(spec, budget)?;
    let (x12, r12) = split_along_edge(&table, Edge::new(1, 2)?)?;
    let all: CellSet = table.iter().collect();
    let p12 = inclusion_exclusion_matching(Edge::new(1, 2)?, &all, n)?;
    let p34 = inclusion_exclusion_matching(Edge::new(3, 4)?, &r12, n)?;
    let x34: CellSet = r12.iter().copied().filter(|&m| p34.is_matched(m)).collect();
    let r34: CellSet = r12.difference(&x34).copied().collect();
    let mut r34_matching = Matching::new(n);
    for (tau, sigma) in &reference().d52.reference_matching {
        r34_matching.insert_pair(cell(n, tau), cell(n, sigma))?;
    }
    let matching = assemble(&[&p12, &p34, &r34_matching])?;
    Ok(D52 {
        table,
        x12,
        r12,
        x34,
        r34,
        p12,
        p34,
        r34_matching,
        matching,
    })
}

/// Applies the presentation rule of the facet tables: for each facet in
/// order, its contribution is `faces(facet) & r12` minus everything
/// contributed earlier. The returned lists partition the union.
pub fn facet_contributions(r12: &CellSet, facet_order: &[u128]) -> Vec<Vec<u128>> {
    let mut seen = CellSet::new();
    let mut out = Vec::with_capacity(facet_order.len());
    for &facet in facet_order {
        let mut contrib: Vec<u128> = r12
            .iter()
            .copied()
            .filter(|&c| c & facet == c && !seen.contains(&c))
            .collect();
        contrib.sort_unstable();
        seen.extend(contrib.iter().copied());
        out.push(contrib);
    }
    out
}

/// The facets of the table whose faces meet `r12` at all.
pub fn facets_meeting(table: &CellTable, r12: &CellSet) -> Vec<u128> {
    table
        .facets()
        .into_iter()
        .filter(|&f| r12.iter().any(|&c| c & f == c))
        .collect()
}

/// Result of enumerating the pairings of the `(4,12,4)` family.
#[derive(Clone, Debug)]
pub struct R34Enumeration {
    /// Acyclic matchings whose 4->5 pairs follow the first-admissible-edge
    /// rule (each 4-cell takes the cofacet adding the lexicographically
    /// smallest edge). This is the reading under which exactly 16 exist.
    pub matchings: Vec<Matching>,
    /// All ways to pair every 4-cell up and every 6-cell down with distinct
    /// partners, regardless of any rule.
    pub free_wellformed: usize,
    /// The acyclic ones among `free_wellformed`.
    pub free_acyclic: usize,
}

/// Exhaustively enumerates matchings on `r34` that pair every 4-cell with a
/// 5-cofacet and every 6-cell with a 5-facet, leaving four critical 5-cells.
///
/// Returns the acyclic matchings under the first-edge rule for the 4->5
/// layer, and reports the unrestricted counts alongside; the reference count
/// of 16 holds under the first-edge reading only.
pub fn enumerate_r34_matchings(r34: &CellSet, n: VertexCount) -> Result<R34Enumeration> {
    let bottoms: Vec<u128> = r34
        .iter()
        .copied()
        .filter(|m| m.count_ones() == 5)
        .collect();
    let mids: Vec<u128> = r34
        .iter()
        .copied()
        .filter(|m| m.count_ones() == 6)
        .collect();
    let tops: Vec<u128> = r34
        .iter()
        .copied()
        .filter(|m| m.count_ones() == 7)
        .collect();
    if bottoms.len() != 4 || mids.len() != 12 || tops.len() != 4 || r34.len() != 20 {
        return Err(Error::FamilyShape(format!(
            "expected the (4,12,4) remainder family, found ({},{},{})",
            bottoms.len(),
            mids.len(),
            tops.len()
        )));
    }

    let up_candidates: Vec<Vec<u128>> = bottoms
        .iter()
        .map(|&b| mids.iter().copied().filter(|&m| m & b == b).collect())
        .collect();
    let down_candidates: Vec<Vec<u128>> = tops
        .iter()
        .map(|&t| mids.iter().copied().filter(|&m| t & m == m).collect())
        .collect();

    // first-edge rule: the cofacet adding the smallest edge index
    let rule_partner: Vec<u128> = bottoms
        .iter()
        .zip(&up_candidates)
        .map(|(&b, cands)| {
            cands
                .iter()
                .copied()
                .min_by_key(|&c| (c ^ b).trailing_zeros())
                .expect("every 4-cell has a cofacet in the family")
        })
        .collect();

    let mut free_wellformed = 0;
    let mut free_acyclic = 0;
    let mut matchings = Vec::new();

    let mut up_choice = [0usize; 4];
    'outer: loop {
        let chosen_up: Vec<u128> = (0..4).map(|i| up_candidates[i][up_choice[i]]).collect();
        let mut down_choice = [0usize; 4];
        loop {
            let chosen_down: Vec<u128> =
                (0..4).map(|i| down_candidates[i][down_choice[i]]).collect();
            let mut used = CellSet::new();
            let distinct = chosen_up
                .iter()
                .chain(chosen_down.iter())
                .all(|&c| used.insert(c));
            if distinct {
                free_wellformed += 1;
                let mut m = Matching::new(n);
                for i in 0..4 {
                    m.insert_pair(bottoms[i], chosen_up[i])?;
                }
                for i in 0..4 {
                    m.insert_pair(chosen_down[i], tops[i])?;
                }
                if verify_acyclic(&m).is_acyclic() {
                    free_acyclic += 1;
                    if chosen_up == rule_partner {
                        matchings.push(m);
                    }
                }
            }
            // advance the down odometer
            let mut i = 0;
            loop {
                if i == 4 {
                    break;
                }
                down_choice[i] += 1;
                if down_choice[i] < down_candidates[i].len() {
                    break;
                }
                down_choice[i] = 0;
                i += 1;
            }
            if i == 4 {
                break;
            }
        }
        // advance the up odometer
        let mut i = 0;
        loop {
            if i == 4 {
                break 'outer;
            }
            up_choice[i] += 1;
            if up_choice[i] < up_candidates[i].len() {
                break;
            }
            up_choice[i] = 0;
            i += 1;
        }
    }

    Ok(R34Enumeration {
        matchings,
        free_wellformed,
        free_acyclic,
    })
}
