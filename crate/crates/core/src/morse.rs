//! Discrete Morse matchings on the enumerated complexes.
//!
//! A matching pairs a cell with a cofacet one dimension up, using every cell
//! at most once. Unmatched cells are critical. A matching is acyclic when the
//! modified Hasse diagram has no closed V-path
//! `t0 -> s1 -> t1 -> ... -> sk -> tk = t0` (up-arrows along matched pairs,
//! down-arrows to a different face); acyclicity is what turns a critical-cell
//! census into a homotopy model.
//!
//! The constructors here are the specific matchings that collapse
//! `D_{n,n-2}`: inclusion-exclusion of a fixed edge, the first-admissible-edge
//! pairing of 1-cells in the remainder `R12`, and the drop-first-edge pairing
//! of 3-cells. [`build_dnn2`] assembles them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write;

use serde_json::json;

use crate::complex::{embed_mask, hex_width, x12_r12_split, CellSet, CellTable};
use crate::graph::{edge_from_index, edge_index};
use crate::{Edge, Error, LabeledGraph, Result, VertexCount};

/// A partial pairing of cells with cofacets, stored as two mutually inverse
/// maps so partner lookup is O(log) in either direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    n: VertexCount,
    up: BTreeMap<u128, u128>,
    down: BTreeMap<u128, u128>,
}

impl Matching {
    pub fn new(n: VertexCount) -> Self {
        Matching {
            n,
            up: BTreeMap::new(),
            down: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> VertexCount {
        self.n
    }

    /// Adds the pair `tau -> sigma`; `tau` must be a facet of `sigma` and
    /// neither cell may already be matched.
    pub fn insert_pair(&mut self, tau: u128, sigma: u128) -> Result<()> {
        let is_facet = tau != 0 && sigma & tau == tau && (sigma ^ tau).count_ones() == 1;
        if !is_facet {
            return Err(Error::NotAFacetPair {
                tau: self.cell_name(tau),
                sigma: self.cell_name(sigma),
            });
        }
        for cell in [tau, sigma] {
            if self.is_matched(cell) {
                return Err(Error::MatchingConflict {
                    cell: self.cell_name(cell),
                });
            }
        }
        self.up.insert(tau, sigma);
        self.down.insert(sigma, tau);
        Ok(())
    }

    pub fn is_matched(&self, cell: u128) -> bool {
        self.up.contains_key(&cell) || self.down.contains_key(&cell)
    }

    pub fn partner(&self, cell: u128) -> Option<u128> {
        self.up.get(&cell).or_else(|| self.down.get(&cell)).copied()
    }

    /// The cofacet `tau` is matched up to, if any.
    pub fn up_partner(&self, tau: u128) -> Option<u128> {
        self.up.get(&tau).copied()
    }

    pub fn pair_count(&self) -> usize {
        self.up.len()
    }

    /// Pairs `(tau, sigma)` sorted by dimension of `tau`, then mask.
    pub fn pairs(&self) -> Vec<(u128, u128)> {
        let mut pairs: Vec<_> = self.up.iter().map(|(&t, &s)| (t, s)).collect();
        pairs.sort_by_key(|&(t, _)| (t.count_ones(), t));
        pairs
    }

    fn cell_name(&self, mask: u128) -> String {
        match LabeledGraph::from_mask(self.n, mask) {
            Ok(g) => g.to_string(),
            Err(_) => format!("{mask:#x}"),
        }
    }
}

/// Pairs `s` with `s + e` whenever both lie in `family`.
///
/// On the full simplex this leaves the single 0-cell `{e}` critical (its
/// would-be partner is the empty set, which is not a cell); restricted to
/// `D_{n,n-2}` it is the matching whose unmatched cells are `{e}` and the
/// remainder family of the split along `e`.
pub fn inclusion_exclusion_matching(e: Edge, family: &CellSet, n: VertexCount) -> Result<Matching> {
    let bit = 1u128 << edge_index(e.i(), e.j(), n)?;
    let mut m = Matching::new(n);
    for &mask in family {
        if mask & bit == 0 && family.contains(&(mask | bit)) {
            m.insert_pair(mask, mask | bit)?;
        }
    }
    Ok(m)
}

/// Pairs every 1-cell of `r12` with `s + ij`, where `ij` is the first edge in
/// `(i,j)`-lexicographic order with `i < j < n` and `s + ij` again in `r12`.
///
/// An empty candidate set contradicts the structure of `R12` and is reported
/// as an error rather than skipped, since it signals an enumeration bug.
pub fn q12_matching(r12: &CellSet, n: VertexCount) -> Result<Matching> {
    let mut m = Matching::new(n);
    for &mask in r12 {
        if mask.count_ones() != 2 {
            continue;
        }
        let partner = q12_partner(mask, r12, n)?;
        m.insert_pair(mask, partner)?;
    }
    Ok(m)
}

fn q12_partner(mask: u128, r12: &CellSet, n: VertexCount) -> Result<u128> {
    for t in 0..n.edge_count() {
        let e = edge_from_index(t, n).expect("index in range");
        if e.j() == n.get() {
            continue; // the defining scan excludes edges touching the top label
        }
        if mask >> t & 1 == 1 {
            continue;
        }
        let candidate = mask | 1u128 << t;
        if r12.contains(&candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::EmptyPartnerSet {
        cell: LabeledGraph::from_mask(n, mask)
            .map(|g| g.to_string())
            .unwrap_or_default(),
    })
}

/// Pairs every 3-cell of `r12` with the 2-cell obtained by removing its first
/// edge in lexicographic order. That 2-cell is a free face: the 3-cell is its
/// only cofacet in the whole complex.
pub fn q23_matching(r12: &CellSet, n: VertexCount) -> Result<Matching> {
    let mut m = Matching::new(n);
    for &mask in r12 {
        if mask.count_ones() != 4 {
            continue;
        }
        let partner = mask & (mask - 1); // clears the lowest set bit
        if !r12.contains(&partner) {
            return Err(Error::UnknownCell {
                cell: LabeledGraph::from_mask(n, partner)
                    .map(|g| g.to_string())
                    .unwrap_or_default(),
            });
        }
        m.insert_pair(partner, mask)?;
    }
    Ok(m)
}

/// Union of matchings with pairwise disjoint domains; any cell paired twice
/// is a conflict error naming the offending cell.
pub fn assemble(parts: &[&Matching]) -> Result<Matching> {
    let n = parts
        .first()
        .map(|m| m.n())
        .unwrap_or(VertexCount::new(2).expect("2 is valid"));
    let mut out = Matching::new(n);
    for part in parts {
        for (tau, sigma) in part.pairs() {
            out.insert_pair(tau, sigma)?;
        }
    }
    Ok(out)
}

/// Checks that every matched cell belongs to the table. The facet relation
/// and dimension step are already enforced at insertion.
pub fn verify_well_formed(m: &Matching, cells: &CellTable) -> Result<()> {
    for (tau, sigma) in m.pairs() {
        for cell in [tau, sigma] {
            if !cells.contains(cell) {
                return Err(Error::UnknownCell {
                    cell: cells.graph(cell).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Per-dimension critical (unmatched) cells of a matching on a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseCensus {
    critical_by_dim: Vec<Vec<u128>>,
    matched_pairs: usize,
}

impl MorseCensus {
    pub fn counts(&self) -> Vec<usize> {
        self.critical_by_dim.iter().map(Vec::len).collect()
    }

    pub fn critical(&self, d: usize) -> &[u128] {
        self.critical_by_dim
            .get(d)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn total_critical(&self) -> usize {
        self.critical_by_dim.iter().map(Vec::len).sum()
    }

    pub fn matched_pairs(&self) -> usize {
        self.matched_pairs
    }

    /// The JSON export form:
    /// `{"critical": {"0": 1, ...}, "matched_pairs": p, "acyclic": b}`.
    pub fn to_json(&self, acyclic: bool) -> serde_json::Value {
        let critical: BTreeMap<String, usize> = self
            .counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| (d.to_string(), c))
            .collect();
        json!({
            "critical": critical,
            "matched_pairs": self.matched_pairs,
            "acyclic": acyclic,
        })
    }
}

/// Counts and lists unmatched cells of `m` per dimension of `cells`.
pub fn critical_census(m: &Matching, cells: &CellTable) -> MorseCensus {
    let dim = cells.dim().max(-1);
    let mut critical_by_dim: Vec<Vec<u128>> = vec![Vec::new(); (dim + 1) as usize];
    for mask in cells.iter() {
        if !m.is_matched(mask) {
            critical_by_dim[mask.count_ones() as usize - 1].push(mask);
        }
    }
    MorseCensus {
        critical_by_dim,
        matched_pairs: m.pair_count(),
    }
}

/// An alternating path in the modified Hasse diagram, recorded as the node
/// cells `t0..tk` and the up cells `s1..sk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPath {
    n: VertexCount,
    pub nodes: Vec<u128>,
    pub ups: Vec<u128>,
}

impl VPath {
    /// Re-validates a closed witness against raw mask arithmetic: alternating
    /// matched-up / face-down arrows, distinct intermediate nodes, closure.
    /// Independent of the search that produced it.
    pub fn validate_cycle(&self, m: &Matching) -> std::result::Result<(), String> {
        let k = self.ups.len();
        if k == 0 || self.nodes.len() != k + 1 {
            return Err("witness has wrong arity".into());
        }
        if self.nodes[0] != self.nodes[k] {
            return Err("witness is not closed".into());
        }
        let mut seen = std::collections::BTreeSet::new();
        for &t in &self.nodes[1..] {
            if !seen.insert(t) {
                return Err("intermediate nodes are not distinct".into());
            }
        }
        for step in 0..k {
            let (tau, sigma, next) = (self.nodes[step], self.ups[step], self.nodes[step + 1]);
            if m.up_partner(tau) != Some(sigma) {
                return Err(format!("step {step}: up-arrow is not a matched pair"));
            }
            let facet = next != 0 && sigma & next == next && (sigma ^ next).count_ones() == 1;
            if !facet {
                return Err(format!("step {step}: down-arrow is not a facet relation"));
            }
            if next == tau {
                return Err(format!("step {step}: down-arrow returns to its source"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for VPath {
    /// Renders `t0 -> [s1] -> t1 -> ...` with the up-cells bracketed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &node) in self.nodes.iter().enumerate() {
            let g = LabeledGraph::from_mask(self.n, node).map_err(|_| fmt::Error)?;
            write!(f, "{g}")?;
            if i < self.ups.len() {
                let s = LabeledGraph::from_mask(self.n, self.ups[i]).map_err(|_| fmt::Error)?;
                write!(f, " -> [{s}] -> ")?;
            }
        }
        Ok(())
    }
}

/// Outcome of a cycle search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleReport {
    Acyclic,
    Cycle(VPath),
}

impl CycleReport {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, CycleReport::Acyclic)
    }
}

/// Searches for a closed V-path of `m`, one dimension layer at a time.
///
/// Per layer the digraph has the matched `d`-cells as nodes and an arc
/// `t -> t'` whenever `t' != t` is a facet of the cofacet matched to `t`.
/// Depth-first search is iterative, so deep complexes cannot overflow the
/// call stack; any witness found is re-validated independently.
pub fn verify_acyclic(m: &Matching) -> CycleReport {
    let mut by_dim: BTreeMap<u32, Vec<u128>> = BTreeMap::new();
    for &tau in m.up.keys() {
        by_dim.entry(tau.count_ones()).or_default().push(tau);
    }
    for nodes in by_dim.values() {
        let arcs = |tau: u128| -> Vec<u128> {
            let sigma = m.up[&tau];
            faces_of(sigma)
                .filter(|&f| f != tau && m.up.contains_key(&f))
                .collect()
        };
        if let Some(cycle) = find_cycle(nodes, arcs) {
            let ups = cycle[..cycle.len() - 1].iter().map(|t| m.up[t]).collect();
            let witness = VPath {
                n: m.n,
                nodes: cycle,
                ups,
            };
            witness
                .validate_cycle(m)
                .expect("search produced an invalid witness");
            return CycleReport::Cycle(witness);
        }
    }
    CycleReport::Acyclic
}

fn faces_of(sigma: u128) -> impl Iterator<Item = u128> {
    let mut rest = sigma;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let bit = rest & rest.wrapping_neg();
        rest ^= bit;
        Some(sigma ^ bit)
    })
}

/// Iterative three-color DFS; returns a closed node sequence on success.
fn find_cycle<F: Fn(u128) -> Vec<u128>>(nodes: &[u128], arcs: F) -> Option<Vec<u128>> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color: HashMap<u128, u8> = nodes.iter().map(|&t| (t, WHITE)).collect();
    for &start in nodes {
        if color[&start] != WHITE {
            continue;
        }
        let mut stack: Vec<(u128, Vec<u128>, usize)> = vec![(start, arcs(start), 0)];
        color.insert(start, GRAY);
        while let Some((node, succ, next)) = stack.last_mut() {
            if *next < succ.len() {
                let target = succ[*next];
                *next += 1;
                match color.get(&target).copied() {
                    Some(GRAY) => {
                        let pos = stack
                            .iter()
                            .position(|(v, _, _)| *v == target)
                            .expect("gray nodes are on the stack");
                        let mut cycle: Vec<u128> =
                            stack[pos..].iter().map(|(v, _, _)| *v).collect();
                        cycle.push(target);
                        return Some(cycle);
                    }
                    Some(WHITE) => {
                        color.insert(target, GRAY);
                        let succ = arcs(target);
                        stack.push((target, succ, 0));
                    }
                    _ => {}
                }
            } else {
                color.insert(*node, BLACK);
                stack.pop();
            }
        }
    }
    None
}

/// Result of the restricted cycle search of [`verify_no_outside_cycles`].
#[derive(Clone, Debug)]
pub struct OutsideCycleReport {
    pub report: CycleReport,
    /// Longest V-path realizable with every cell outside the protected set;
    /// meaningful only when `report` is acyclic.
    pub max_path_len: usize,
}

/// Cycle search restricted to V-paths all of whose cells (nodes and up-cells)
/// lie in `family` but outside `inside`. Also measures the longest such path.
pub fn verify_no_outside_cycles(
    m: &Matching,
    family: &CellSet,
    inside: &CellSet,
) -> OutsideCycleReport {
    let eligible = |tau: u128| -> Option<u128> {
        if inside.contains(&tau) {
            return None;
        }
        let sigma = m.up.get(&tau)?;
        (!inside.contains(sigma)).then_some(*sigma)
    };
    let admissible = |tau: u128, sigma: u128| -> Vec<u128> {
        faces_of(sigma)
            .filter(|&f| f != tau && family.contains(&f) && !inside.contains(&f))
            .collect()
    };

    let mut by_dim: BTreeMap<u32, Vec<u128>> = BTreeMap::new();
    for &tau in m.up.keys() {
        if eligible(tau).is_some() {
            by_dim.entry(tau.count_ones()).or_default().push(tau);
        }
    }
    for nodes in by_dim.values() {
        let arcs = |tau: u128| -> Vec<u128> {
            let sigma = m.up[&tau];
            admissible(tau, sigma)
                .into_iter()
                .filter(|&f| eligible(f).is_some())
                .collect()
        };
        if let Some(cycle) = find_cycle(nodes, arcs) {
            let ups = cycle[..cycle.len() - 1].iter().map(|t| m.up[t]).collect();
            let witness = VPath {
                n: m.n,
                nodes: cycle,
                ups,
            };
            witness
                .validate_cycle(m)
                .expect("search produced an invalid witness");
            return OutsideCycleReport {
                report: CycleReport::Cycle(witness),
                max_path_len: 0,
            };
        }
    }

    // acyclic: longest-path by memoized descent over the eligible DAG
    let mut memo: HashMap<u128, usize> = HashMap::new();
    fn longest(
        tau: u128,
        m: &Matching,
        family: &CellSet,
        inside: &CellSet,
        memo: &mut HashMap<u128, usize>,
    ) -> usize {
        if let Some(&v) = memo.get(&tau) {
            return v;
        }
        let sigma = m.up[&tau];
        let mut best = 0;
        for f in faces_of(sigma) {
            if f == tau || !family.contains(&f) || inside.contains(&f) {
                continue;
            }
            let cont = if !inside.contains(&f) && m.up.get(&f).is_some_and(|s| !inside.contains(s))
            {
                longest(f, m, family, inside, memo)
            } else {
                0
            };
            best = best.max(1 + cont);
        }
        memo.insert(tau, best);
        best
    }
    let mut max_path_len = 0;
    for nodes in by_dim.values() {
        for &tau in nodes {
            max_path_len = max_path_len.max(longest(tau, m, family, inside, &mut memo));
        }
    }
    OutsideCycleReport {
        report: CycleReport::Acyclic,
        max_path_len,
    }
}

/// Does the matching on `D_{n,n-2}` restrict to the matching on
/// `D_{n-1,n-3}` under the add-isolated-vertex embedding?
///
/// True iff (a) every small pair maps to a big pair, and (b) no embedded cell
/// is big-paired with a non-embedded cell.
pub fn verify_restriction(m_big: &Matching, m_small: &Matching, small_cells: &CellTable) -> bool {
    let n_small = small_cells.n();
    let n_big = m_big.n();
    if n_big.get() != n_small.get() + 1 || m_small.n().get() != n_small.get() {
        return false;
    }
    let image: CellSet = small_cells
        .iter()
        .map(|mask| embed_mask(mask, n_small, n_big))
        .collect();
    for (tau, sigma) in m_small.pairs() {
        let t = embed_mask(tau, n_small, n_big);
        let s = embed_mask(sigma, n_small, n_big);
        if m_big.up_partner(t) != Some(s) {
            return false;
        }
    }
    for &cell in &image {
        if let Some(partner) = m_big.partner(cell) {
            if !image.contains(&partner) {
                return false;
            }
        }
    }
    true
}

/// The matching on `D_{n,n-2}` with one critical 0-cell (the edge `12`) and
/// all other critical cells 2-dimensional, together with its ingredients.
#[derive(Clone, Debug)]
pub struct Dnn2 {
    pub table: CellTable,
    pub x12: CellSet,
    pub r12: CellSet,
    pub p12: Matching,
    pub q12: Matching,
    pub q23: Matching,
    pub matching: Matching,
}

/// Builds the full `D_{n,n-2}` matching: inclusion-exclusion of `12` on the
/// whole complex, plus the two pairings on the remainder `R12`.
pub fn build_dnn2(n: VertexCount, budget: usize) -> Result<Dnn2> {
    let spec = crate::ComplexSpec::new(n, n.get() - 2)?;
    let table = CellTable::enumerate_with_budget(spec, budget)?;
    let (x12, r12) = x12_r12_split(&table)?;
    let all: CellSet = table.iter().collect();
    let p12 = inclusion_exclusion_matching(Edge::new(1, 2)?, &all, n)?;
    let q12 = q12_matching(&r12, n)?;
    let q23 = q23_matching(&r12, n)?;
    let matching = assemble(&[&p12, &q12, &q23])?;
    Ok(Dnn2 {
        table,
        x12,
        r12,
        p12,
        q12,
        q23,
        matching,
    })
}

/// Writes the matching as text: one line `d <tau-hex> <sigma-hex>` per pair,
/// sorted by dimension then mask, hex width matching the cache format.
pub fn write_matching<W: Write>(m: &Matching, mut w: W) -> Result<()> {
    let width = hex_width(m.n());
    for (tau, sigma) in m.pairs() {
        writeln!(
            w,
            "{} {tau:0width$x} {sigma:0width$x}",
            tau.count_ones() - 1
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexSpec;

    fn vc(n: u8) -> VertexCount {
        VertexCount::new(n).unwrap()
    }

    fn mask(n: u8, s: &str) -> u128 {
        LabeledGraph::parse(vc(n), s).unwrap().mask()
    }

    fn table(n: u8, k: u8) -> CellTable {
        CellTable::enumerate(ComplexSpec::new(vc(n), k).unwrap()).unwrap()
    }

    #[test]
    fn inclusion_exclusion_on_full_simplex_leaves_only_the_edge_cell() {
        // all nonempty subsets of K_4's edges
        let t = table(4, 0);
        let all: CellSet = t.iter().collect();
        let m = inclusion_exclusion_matching(Edge::new(1, 2).unwrap(), &all, vc(4)).unwrap();
        let census = critical_census(&m, &t);
        assert_eq!(census.total_critical(), 1);
        assert_eq!(census.critical(0), &[mask(4, "12")]);
        assert!(verify_acyclic(&m).is_acyclic());
    }

    #[test]
    fn p12_on_d42_leaves_r12_unmatched() {
        let t = table(4, 2);
        let (_, r12) = x12_r12_split(&t).unwrap();
        let all: CellSet = t.iter().collect();
        let m = inclusion_exclusion_matching(Edge::new(1, 2).unwrap(), &all, vc(4)).unwrap();
        let census = critical_census(&m, &t);
        let mut unmatched: CellSet = (0..=3).flat_map(|d| census.critical(d).to_vec()).collect();
        assert!(unmatched.remove(&mask(4, "12")));
        assert_eq!(unmatched, r12);
        assert_eq!(r12.len(), 9);
    }

    #[test]
    fn q12_partner_examples() {
        let t5 = table(5, 3);
        let (_, r12) = x12_r12_split(&t5).unwrap();
        let q = q12_matching(&r12, vc(5)).unwrap();
        // two disjoint edges pair through the lex-least cross edge
        assert_eq!(q.up_partner(mask(5, "13|45")), Some(mask(5, "13|14|45")));
        // a path pairs through d=1 since its center exceeds 1
        assert_eq!(q.up_partner(mask(5, "34|45")), Some(mask(5, "13|34|45")));
        let t4 = table(4, 2);
        let (_, r12_4) = x12_r12_split(&t4).unwrap();
        let q4 = q12_matching(&r12_4, vc(4)).unwrap();
        assert_eq!(q4.up_partner(mask(4, "13|14")), Some(mask(4, "13|14|23")));
        assert_eq!(q4.up_partner(mask(4, "23|24")), Some(mask(4, "13|23|24")));
        assert_eq!(q4.pair_count(), 2);
    }

    #[test]
    fn q23_partner_examples() {
        let t4 = table(4, 2);
        let (_, r12_4) = x12_r12_split(&t4).unwrap();
        let q = q23_matching(&r12_4, vc(4)).unwrap();
        assert_eq!(q.partner(mask(4, "13|14|23|24")), Some(mask(4, "14|23|24")));
        // no 3-cell of R12 contains the split edge
        for (tau, sigma) in q.pairs() {
            assert_eq!(tau & mask(4, "12"), 0);
            assert_eq!(sigma & mask(4, "12"), 0);
        }
        // same rule after embedding into n=6
        let t6 = table(6, 4);
        let (_, r12_6) = x12_r12_split(&t6).unwrap();
        let q6 = q23_matching(&r12_6, vc(6)).unwrap();
        assert_eq!(
            q6.partner(mask(6, "13|14|23|24")),
            Some(mask(6, "14|23|24"))
        );
    }

    #[test]
    fn free_face_property_of_q23_partners() {
        for n in 4..=7u8 {
            let t = table(n, n - 2);
            let (_, r12) = x12_r12_split(&t).unwrap();
            let q = q23_matching(&r12, vc(n)).unwrap();
            for (tau, sigma) in q.pairs() {
                let cofacets = (0..vc(n).edge_count())
                    .filter(|&t2| tau >> t2 & 1 == 0)
                    .filter(|&t2| t.contains(tau | 1u128 << t2))
                    .count();
                assert_eq!(cofacets, 1, "partner of {sigma:x} is not a free face");
            }
        }
    }

    #[test]
    fn assemble_rejects_overlap() {
        let mut a = Matching::new(vc(4));
        a.insert_pair(mask(4, "13"), mask(4, "13|14")).unwrap();
        let mut b = Matching::new(vc(4));
        b.insert_pair(mask(4, "13"), mask(4, "13|23")).unwrap();
        let err = assemble(&[&a, &b]).unwrap_err();
        assert!(matches!(err, Error::MatchingConflict { .. }));
    }

    #[test]
    fn assemble_empty_is_all_critical() {
        let t = table(4, 3);
        let m = assemble(&[]).unwrap();
        let census = critical_census(&m, &t);
        assert_eq!(census.total_critical(), t.total_cells());
    }

    #[test]
    fn insert_pair_validates_face_relation() {
        let mut m = Matching::new(vc(4));
        assert!(m.insert_pair(mask(4, "13"), mask(4, "14|23")).is_err());
        assert!(m.insert_pair(mask(4, "13"), mask(4, "13|14|23")).is_err());
        assert!(m.insert_pair(0, mask(4, "12")).is_err());
    }

    #[test]
    fn d42_matching_census_and_hasse_fixture() {
        let dnn2 = build_dnn2(vc(4), crate::DEFAULT_CELL_BUDGET).unwrap();
        let census = critical_census(&dnn2.matching, &dnn2.table);
        assert_eq!(census.counts(), vec![1, 0, 3, 0]);
        assert_eq!(census.critical(0), &[mask(4, "12")]);
        let mut crit2: Vec<u128> = census.critical(2).to_vec();
        crit2.sort_unstable();
        let mut expected = vec![
            mask(4, "13|14|34"),
            mask(4, "23|24|34"),
            mask(4, "13|14|24"),
        ];
        expected.sort_unstable();
        assert_eq!(crit2, expected);
        assert!(verify_acyclic(&dnn2.matching).is_acyclic());
        verify_well_formed(&dnn2.matching, &dnn2.table).unwrap();
    }

    /// Independent route for the 1-cell pairing: two disjoint edges
    /// `ab|cd` (with `a < b`, `c < d`, `a < c`) pair through `ac`, and a
    /// path with endpoints `a < c` and center `b` pairs through `da`,
    /// where `d` is 2 when the center is 1 and 1 otherwise. The scan-based
    /// construction must agree on every 1-cell, for all n up to 7.
    #[test]
    fn q12_scan_agrees_with_the_structural_rule() {
        for n in 4..=7u8 {
            let nn = vc(n);
            let t = table(n, n - 2);
            let (_, r12) = x12_r12_split(&t).unwrap();
            let q = q12_matching(&r12, nn).unwrap();
            for &cell in r12.iter().filter(|c| c.count_ones() == 2) {
                let g = LabeledGraph::from_mask(nn, cell).unwrap();
                let edges: Vec<Edge> = g.edges().collect();
                let (e1, e2) = (edges[0], edges[1]);
                let shared = [e1.i(), e1.j()].into_iter().find(|&v| e2.touches(v));
                let added = match shared {
                    Some(b) => {
                        let mut ends: Vec<u8> = [e1.i(), e1.j(), e2.i(), e2.j()]
                            .into_iter()
                            .filter(|&v| v != b)
                            .collect();
                        ends.sort_unstable();
                        let a = ends[0];
                        assert!(a >= 3, "path endpoint below 3 in {g}");
                        let d = if b == 1 { 2 } else { 1 };
                        Edge::new(d, a).unwrap()
                    }
                    None => Edge::new(e1.i(), e2.i()).unwrap(),
                };
                let expected = g.with_edge(added).unwrap().mask();
                assert_eq!(q.up_partner(cell), Some(expected), "{g}");
            }
        }
    }

    #[test]
    fn per_part_and_union_acyclicity_agree() {
        // the decomposition argument makes the union acyclic whenever the
        // parts are; both routes are checked and must agree
        for n in 4..=6u8 {
            let dnn2 = build_dnn2(vc(n), crate::DEFAULT_CELL_BUDGET).unwrap();
            assert!(verify_acyclic(&dnn2.p12).is_acyclic(), "p12, n={n}");
            let q = assemble(&[&dnn2.q12, &dnn2.q23]).unwrap();
            assert!(verify_acyclic(&q).is_acyclic(), "q, n={n}");
            assert!(verify_acyclic(&dnn2.matching).is_acyclic(), "union, n={n}");
        }
    }

    #[test]
    fn q12_is_injective_into_2_cells() {
        for n in 4..=7u8 {
            let t = table(n, n - 2);
            let (_, r12) = x12_r12_split(&t).unwrap();
            let q = q12_matching(&r12, vc(n)).unwrap();
            let mut targets = std::collections::BTreeSet::new();
            for (_, sigma) in q.pairs() {
                assert!(targets.insert(sigma), "two 1-cells paired to {sigma:x}");
            }
        }
    }

    #[test]
    fn hollow_triangle_cycle_detected_and_witness_validates() {
        // vertices of the complex: the three edges of K_3; 1-cells: the three
        // pairs; each 0-cell matched to its clockwise 1-cell
        let n = vc(3);
        let v12 = mask(3, "12");
        let v13 = mask(3, "13");
        let v23 = mask(3, "23");
        let mut m = Matching::new(n);
        m.insert_pair(v12, v12 | v13).unwrap();
        m.insert_pair(v13, v13 | v23).unwrap();
        m.insert_pair(v23, v12 | v23).unwrap();
        match verify_acyclic(&m) {
            CycleReport::Cycle(witness) => {
                assert_eq!(witness.ups.len(), 3);
                witness.validate_cycle(&m).unwrap();
            }
            CycleReport::Acyclic => panic!("cycle not detected"),
        }
    }

    #[test]
    fn restriction_holds_and_perturbation_is_rejected() {
        let small = build_dnn2(vc(4), crate::DEFAULT_CELL_BUDGET).unwrap();
        let big = build_dnn2(vc(5), crate::DEFAULT_CELL_BUDGET).unwrap();
        assert!(verify_restriction(
            &big.matching,
            &small.matching,
            &small.table
        ));
        // re-pair one embedded 1-cell with a different valid cofacet
        let tau = mask(5, "13|14");
        let wrong_sigma = mask(5, "13|14|34");
        let mut perturbed = Matching::new(vc(5));
        for (t, s) in big.matching.pairs() {
            if t == tau || s == wrong_sigma || t == big.matching.partner(wrong_sigma).unwrap_or(0) {
                continue;
            }
            perturbed.insert_pair(t, s).unwrap();
        }
        perturbed.insert_pair(tau, wrong_sigma).unwrap();
        assert!(!verify_restriction(
            &perturbed,
            &small.matching,
            &small.table
        ));
    }

    #[test]
    fn outside_cycles_trivial_cases() {
        let dnn2 = build_dnn2(vc(5), crate::DEFAULT_CELL_BUDGET).unwrap();
        // inside = everything: empty search
        let all: CellSet = dnn2.table.iter().collect();
        let rep = verify_no_outside_cycles(&dnn2.q12, &dnn2.r12, &all);
        assert!(rep.report.is_acyclic());
        assert_eq!(rep.max_path_len, 0);
        // the cyclic control with nothing protected still reports its cycle
        let n = vc(3);
        let v12 = mask(3, "12");
        let v13 = mask(3, "13");
        let v23 = mask(3, "23");
        let mut m = Matching::new(n);
        m.insert_pair(v12, v12 | v13).unwrap();
        m.insert_pair(v13, v13 | v23).unwrap();
        m.insert_pair(v23, v12 | v23).unwrap();
        let family: CellSet = [v12, v13, v23, v12 | v13, v13 | v23, v12 | v23]
            .into_iter()
            .collect();
        let rep = verify_no_outside_cycles(&m, &family, &CellSet::new());
        assert!(!rep.report.is_acyclic());
    }

    #[test]
    fn census_json_shape() {
        let dnn2 = build_dnn2(vc(4), crate::DEFAULT_CELL_BUDGET).unwrap();
        let census = critical_census(&dnn2.matching, &dnn2.table);
        let v = census.to_json(true);
        assert_eq!(v["critical"]["0"], 1);
        assert_eq!(v["critical"]["2"], 3);
        assert_eq!(v["acyclic"], true);
    }

    #[test]
    fn matching_export_is_sorted_text() {
        let dnn2 = build_dnn2(vc(4), crate::DEFAULT_CELL_BUDGET).unwrap();
        let mut buf = Vec::new();
        write_matching(&dnn2.q12, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l.starts_with("1 ")));
    }

    #[test]
    fn empty_matching_on_zero_skeleton() {
        let t = table(5, 4);
        let m = Matching::new(vc(5));
        let census = critical_census(&m, &t);
        assert_eq!(census.counts(), vec![10]);
    }
}
