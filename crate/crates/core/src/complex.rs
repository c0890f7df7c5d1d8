//! Enumeration of the complexes `D_{n,k}` and table-level queries.
//!
//! A cell is a nonempty edge set whose graph has domination number at least
//! `k`. Because adding an edge can only lower the domination number, the
//! property is closed under subsets, and the enumerator can walk the subset
//! tree in increasing edge-index order, pruning every branch whose current
//! set already fails the threshold.

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read, Write};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{at_least_from_neighborhoods, edge_from_index, edge_index, MAX_VERTICES};
use crate::{Edge, Error, LabeledGraph, Result, VertexCount, DEFAULT_CELL_BUDGET};

/// Which complex: `n` labeled vertices, domination number at least `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexSpec {
    n: u8,
    k: u8,
}

impl ComplexSpec {
    pub fn new(n: VertexCount, k: u8) -> Result<Self> {
        if k > n.get() {
            return Err(Error::InvalidSpec { n: n.get(), k });
        }
        Ok(ComplexSpec { n: n.get(), k })
    }

    pub fn n(&self) -> VertexCount {
        VertexCount::new(self.n).expect("validated at construction")
    }

    pub fn k(&self) -> u8 {
        self.k
    }
}

/// Stable identifier of a cell inside a [`CellTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

/// A set of cells, keyed by edge mask. Deterministic iteration order.
pub type CellSet = BTreeSet<u128>;

/// Per-dimension cell counts `c_0..c_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(Vec<usize>);

impl FVector {
    pub fn new(counts: Vec<usize>) -> Self {
        let mut counts = counts;
        while counts.last() == Some(&0) {
            counts.pop();
        }
        FVector(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Dimension of the complex; -1 when empty.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    /// Alternating sum of the counts.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Summary statistics of an enumerated complex.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexStats {
    pub f: FVector,
    pub euler: i64,
    pub dim: isize,
    pub facet_count_by_dim: std::collections::BTreeMap<usize, usize>,
}

/// The enumerated cells of a `D_{n,k}`, grouped by dimension.
///
/// Each per-dimension list is sorted ascending by edge mask and duplicate
/// free; enumeration is deterministic, so two runs produce identical tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellTable {
    spec: ComplexSpec,
    by_dim: Vec<Vec<u128>>,
}

impl CellTable {
    /// Enumerates `D_{n,k}` with the default cell budget.
    pub fn enumerate(spec: ComplexSpec) -> Result<Self> {
        Self::enumerate_with_budget(spec, DEFAULT_CELL_BUDGET)
    }

    /// Enumerates `D_{n,k}`, failing (never truncating) past `budget` cells.
    ///
    /// The subset tree is split by first edge; branches run in parallel and
    /// are merged by sorting, so the result does not depend on scheduling.
    pub fn enumerate_with_budget(spec: ComplexSpec, budget: usize) -> Result<Self> {
        let n = spec.n();
        let edge_count = n.edge_count();
        let seen = AtomicUsize::new(0);

        let branches: Vec<Result<Vec<Vec<u128>>>> = (0..edge_count)
            .into_par_iter()
            .map(|first| {
                let mut out: Vec<Vec<u128>> = Vec::new();
                let mut nbhd = [0u16; MAX_VERTICES as usize];
                for (v, slot) in nbhd.iter_mut().enumerate().take(n.as_usize()) {
                    *slot = 1 << v;
                }
                enumerate_branch(spec, first, 0, &mut nbhd, &mut out, &seen, budget)?;
                Ok(out)
            })
            .collect();

        let mut by_dim: Vec<Vec<u128>> = Vec::new();
        for branch in branches {
            let branch = branch?;
            for (d, cells) in branch.into_iter().enumerate() {
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, Vec::new);
                }
                by_dim[d].extend(cells);
            }
        }
        for cells in &mut by_dim {
            cells.sort_unstable();
        }
        while by_dim.last().is_some_and(|v| v.is_empty()) {
            by_dim.pop();
        }
        Ok(CellTable { spec, by_dim })
    }

    /// Builds a table from explicit cells, checking mask validity and closure
    /// under faces. Used by the cache importer and by tests.
    pub fn from_cells<I: IntoIterator<Item = u128>>(spec: ComplexSpec, cells: I) -> Result<Self> {
        let n = spec.n();
        let count = n.edge_count();
        let mut by_dim: Vec<Vec<u128>> = Vec::new();
        for mask in cells {
            if mask == 0 || (count < 128 && mask >> count != 0) {
                return Err(Error::InvalidEdgeMask { n: n.get(), count });
            }
            let d = mask.count_ones() as usize - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(mask);
        }
        for cells in &mut by_dim {
            cells.sort_unstable();
            cells.dedup();
        }
        let table = CellTable { spec, by_dim };
        if let Some((cell, face)) = table.closure_violation() {
            return Err(Error::CacheFormat(format!(
                "table is not closed under faces: cell {cell:x} lacks face {face:x}"
            )));
        }
        Ok(table)
    }

    pub fn spec(&self) -> ComplexSpec {
        self.spec
    }

    pub fn n(&self) -> VertexCount {
        self.spec.n()
    }

    /// Dimension of the complex; -1 when empty.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn total_cells(&self) -> usize {
        self.by_dim.iter().map(|v| v.len()).sum()
    }

    /// Cells of dimension `d`, sorted ascending by mask.
    pub fn cells(&self, d: usize) -> &[u128] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, mask: u128) -> bool {
        self.cell_id(mask).is_some()
    }

    pub fn cell_id(&self, mask: u128) -> Option<CellId> {
        if mask == 0 {
            return None;
        }
        let dim = mask.count_ones() as usize - 1;
        let cells = self.by_dim.get(dim)?;
        cells
            .binary_search(&mask)
            .ok()
            .map(|index| CellId { dim, index })
    }

    pub fn graph(&self, mask: u128) -> LabeledGraph {
        LabeledGraph::from_mask(self.n(), mask).expect("cell masks are valid")
    }

    /// All cells in (dimension, mask) order.
    pub fn iter(&self) -> impl Iterator<Item = u128> + '_ {
        self.by_dim.iter().flatten().copied()
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(self.by_dim.iter().map(Vec::len).collect())
    }

    /// Maximal cells: those with no cofacet in the table.
    pub fn facets(&self) -> Vec<u128> {
        let n = self.n();
        let edge_count = n.edge_count();
        self.iter()
            .filter(|&mask| {
                (0..edge_count)
                    .filter(|&t| mask >> t & 1 == 0)
                    .all(|t| !self.contains(mask | 1u128 << t))
            })
            .collect()
    }

    pub fn stats(&self) -> ComplexStats {
        let f = self.f_vector();
        let mut facet_count_by_dim = std::collections::BTreeMap::new();
        for mask in self.facets() {
            *facet_count_by_dim
                .entry(mask.count_ones() as usize - 1)
                .or_insert(0) += 1;
        }
        ComplexStats {
            euler: f.euler(),
            dim: f.dim(),
            f,
            facet_count_by_dim,
        }
    }

    /// First face-closure violation, if any: `(cell, missing face)`.
    pub fn closure_violation(&self) -> Option<(u128, u128)> {
        for mask in self.iter() {
            if mask.count_ones() == 1 {
                continue;
            }
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                if !self.contains(mask ^ bit) {
                    return Some((mask, mask ^ bit));
                }
            }
        }
        None
    }
}

fn enumerate_branch(
    spec: ComplexSpec,
    edge: usize,
    mask: u128,
    nbhd: &mut [u16; MAX_VERTICES as usize],
    out: &mut Vec<Vec<u128>>,
    seen: &AtomicUsize,
    budget: usize,
) -> Result<()> {
    let n = spec.n();
    let e = edge_from_index(edge, n).expect("branch index in range");
    let (i, j) = (e.i() as usize - 1, e.j() as usize - 1);
    let (old_i, old_j) = (nbhd[i], nbhd[j]);
    nbhd[i] |= 1 << j;
    nbhd[j] |= 1 << i;

    let next = mask | 1u128 << edge;
    if at_least_from_neighborhoods(
        &nbhd[..n.as_usize()],
        n.full_vertex_mask(),
        spec.k() as usize,
    ) {
        if seen.fetch_add(1, Ordering::Relaxed) >= budget {
            nbhd[i] = old_i;
            nbhd[j] = old_j;
            return Err(Error::CellBudgetExceeded {
                n: n.get(),
                k: spec.k(),
                budget,
            });
        }
        let d = next.count_ones() as usize - 1;
        if out.len() <= d {
            out.resize_with(d + 1, Vec::new);
        }
        out[d].push(next);
        for t in edge + 1..n.edge_count() {
            enumerate_branch(spec, t, next, nbhd, out, seen, budget)?;
        }
    }
    nbhd[i] = old_i;
    nbhd[j] = old_j;
    Ok(())
}

/// Per-dimension cell counts without materializing the table.
///
/// Same pruned walk as [`CellTable::enumerate_with_budget`], keeping only
/// counters; this is how `D_{7,3}`-sized instances stay cheap.
pub fn streaming_f_vector(spec: ComplexSpec) -> FVector {
    let n = spec.n();
    let k = spec.k() as usize;
    let edge_count = n.edge_count();
    let per_branch: Vec<Vec<usize>> = (0..edge_count)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0usize; edge_count];
            let mut nbhd = [0u16; MAX_VERTICES as usize];
            for (v, slot) in nbhd.iter_mut().enumerate().take(n.as_usize()) {
                *slot = 1 << v;
            }
            count_branch(n, k, first, 0, &mut nbhd, &mut counts);
            counts
        })
        .collect();
    let mut counts = vec![0usize; edge_count];
    for branch in per_branch {
        for (d, c) in branch.into_iter().enumerate() {
            counts[d] += c;
        }
    }
    FVector::new(counts)
}

fn count_branch(
    n: VertexCount,
    k: usize,
    edge: usize,
    depth: usize,
    nbhd: &mut [u16; MAX_VERTICES as usize],
    counts: &mut [usize],
) {
    let e = edge_from_index(edge, n).expect("branch index in range");
    let (i, j) = (e.i() as usize - 1, e.j() as usize - 1);
    let (old_i, old_j) = (nbhd[i], nbhd[j]);
    nbhd[i] |= 1 << j;
    nbhd[j] |= 1 << i;
    if at_least_from_neighborhoods(&nbhd[..n.as_usize()], n.full_vertex_mask(), k) {
        counts[depth] += 1;
        for t in edge + 1..n.edge_count() {
            count_branch(n, k, t, depth + 1, nbhd, counts);
        }
    }
    nbhd[i] = old_i;
    nbhd[j] = old_j;
}

/// Euler characteristic in streaming mode (no table is materialized).
pub fn euler_characteristic(spec: ComplexSpec) -> i64 {
    streaming_f_vector(spec).euler()
}

/// Splits a `D_{n,n-2}` table along the edge `12`: the subcomplex
/// `X12 = {s : s+12 in the complex}` and the remainder `R12`.
///
/// `R12` cells never contain `12` and occur only in dimensions 1..=3.
pub fn x12_r12_split(table: &CellTable) -> Result<(CellSet, CellSet)> {
    let spec = table.spec();
    if spec.k() + 2 != spec.n().get() {
        return Err(Error::UnsupportedSpec {
            n: spec.n().get(),
            k: spec.k(),
        });
    }
    split_along_edge(table, Edge::new(1, 2).expect("12 is always valid"))
}

/// The same split along an arbitrary edge, on the full table.
pub(crate) fn split_along_edge(table: &CellTable, e: Edge) -> Result<(CellSet, CellSet)> {
    let t = edge_index(e.i(), e.j(), table.n())?;
    let bit = 1u128 << t;
    let mut inside = CellSet::new();
    let mut rest = CellSet::new();
    for mask in table.iter() {
        if mask & bit != 0 || table.contains(mask | bit) {
            inside.insert(mask);
        } else {
            rest.insert(mask);
        }
    }
    Ok((inside, rest))
}

/// Reinterprets `g` on one more vertex; the added vertex is isolated and
/// carries the top label. Maps cells of `D_{n-1,n-3}` to cells of
/// `D_{n,n-2}` (a simplicial inclusion).
pub fn embed_add_isolated(g: &LabeledGraph, n_new: VertexCount) -> Result<LabeledGraph> {
    if n_new.get() != g.n().get() + 1 {
        return Err(Error::VertexCountOutOfRange(n_new.get()));
    }
    LabeledGraph::from_mask(n_new, embed_mask(g.mask(), g.n(), n_new))
}

/// Mask-level version of [`embed_add_isolated`]; lexicographic edge indices
/// shift when `n` grows, so every bit is remapped.
pub fn embed_mask(mask: u128, n_old: VertexCount, n_new: VertexCount) -> u128 {
    let mut out = 0u128;
    let mut m = mask;
    while m != 0 {
        let t = m.trailing_zeros() as usize;
        m &= m - 1;
        let e = edge_from_index(t, n_old).expect("valid bit");
        out |= 1u128 << edge_index(e.i(), e.j(), n_new).expect("labels stay valid");
    }
    out
}

const CACHE_MAGIC: &str = "domcomplex v1";

/// Writes the table in the text cache format: a header line
/// `domcomplex v1 n=<n> k=<k> dims=<c0> <c1> ...` followed by one cell per
/// line as a fixed-width lowercase hex edge mask, sorted ascending.
pub fn write_cache<W: Write>(table: &CellTable, mut w: W) -> Result<()> {
    let spec = table.spec();
    let counts = table.f_vector();
    let dims = counts
        .counts()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    writeln!(
        w,
        "{CACHE_MAGIC} n={} k={} dims={}",
        spec.n().get(),
        spec.k(),
        dims
    )?;
    let width = hex_width(table.n());
    let mut all: Vec<u128> = table.iter().collect();
    all.sort_unstable();
    for mask in all {
        writeln!(w, "{mask:0width$x}")?;
    }
    Ok(())
}

/// Reads a table back from the cache format, validating the header, the
/// line format, sortedness, per-dimension counts, and face closure.
pub fn read_cache<R: Read>(r: R) -> Result<CellTable> {
    let mut lines = BufReader::new(r).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::CacheFormat("empty file".into()))??;
    let rest = header
        .strip_prefix(CACHE_MAGIC)
        .ok_or_else(|| Error::CacheVersion(header.split(" n=").next().unwrap_or("").to_string()))?;
    let mut n = None;
    let mut k = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut tokens = rest.split_whitespace().peekable();
    while let Some(tok) = tokens.next() {
        if let Some(v) = tok.strip_prefix("n=") {
            n = v.parse::<u8>().ok();
        } else if let Some(v) = tok.strip_prefix("k=") {
            k = v.parse::<u8>().ok();
        } else if let Some(v) = tok.strip_prefix("dims=") {
            let mut counts = Vec::new();
            if !v.is_empty() {
                counts.push(
                    v.parse::<usize>()
                        .map_err(|_| Error::CacheFormat(format!("bad count `{v}`")))?,
                );
            }
            for t in tokens.by_ref() {
                counts.push(
                    t.parse::<usize>()
                        .map_err(|_| Error::CacheFormat(format!("bad count `{t}`")))?,
                );
            }
            dims = Some(counts);
        }
    }
    let n = VertexCount::new(n.ok_or_else(|| Error::CacheFormat("missing n=".into()))?)?;
    let k = k.ok_or_else(|| Error::CacheFormat("missing k=".into()))?;
    let dims = dims.ok_or_else(|| Error::CacheFormat("missing dims=".into()))?;
    let spec = ComplexSpec::new(n, k)?;
    let width = hex_width(n);

    let mut cells = Vec::new();
    let mut prev: Option<u128> = None;
    for line in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        if line.len() != width || !line.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::CacheFormat(format!("bad cell line `{line}`")));
        }
        let mask = u128::from_str_radix(&line, 16)
            .map_err(|_| Error::CacheFormat(format!("bad cell line `{line}`")))?;
        if let Some(p) = prev {
            if mask <= p {
                return Err(Error::CacheFormat("cells are not sorted ascending".into()));
            }
        }
        prev = Some(mask);
        cells.push(mask);
    }
    let table = CellTable::from_cells(spec, cells)?;
    let found = table.f_vector();
    if found.counts() != dims.as_slice() {
        return Err(Error::CacheFormat(format!(
            "dims header {:?} does not match cells {:?}",
            dims,
            found.counts()
        )));
    }
    Ok(table)
}

pub(crate) fn hex_width(n: VertexCount) -> usize {
    n.edge_count().div_ceil(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas;

    fn spec(n: u8, k: u8) -> ComplexSpec {
        ComplexSpec::new(VertexCount::new(n).unwrap(), k).unwrap()
    }

    fn parse(n: u8, s: &str) -> u128 {
        LabeledGraph::parse(VertexCount::new(n).unwrap(), s)
            .unwrap()
            .mask()
    }

    #[test]
    fn d42_facets_are_the_seven_generators() {
        let table = CellTable::enumerate(spec(4, 2)).unwrap();
        let mut facets: Vec<u128> = table.facets();
        facets.sort_unstable();
        let mut expected: Vec<u128> = [
            "12|13|24|34",
            "12|14|23|34",
            "13|14|23|24",
            "12|13|23",
            "12|14|24",
            "13|14|34",
            "23|24|34",
        ]
        .iter()
        .map(|s| parse(4, s))
        .collect();
        expected.sort_unstable();
        assert_eq!(facets, expected);
        let three_dim = table
            .facets()
            .iter()
            .filter(|m| m.count_ones() == 4)
            .count();
        assert_eq!(three_dim, 3);
    }

    #[test]
    fn d52_facet_census() {
        let table = CellTable::enumerate(spec(5, 2)).unwrap();
        let stats = table.stats();
        // five complete graphs on four of the labels, thirty complements of
        // a minimal edge cover
        assert_eq!(stats.facet_count_by_dim.get(&5), Some(&5));
        assert_eq!(stats.facet_count_by_dim.get(&6), Some(&30));
        assert_eq!(stats.facet_count_by_dim.len(), 2);
    }

    #[test]
    fn top_facets_of_dnn2_are_four_cycles() {
        for n in 4..=6u8 {
            let table = CellTable::enumerate(spec(n, n - 2)).unwrap();
            let top: Vec<u128> = table
                .facets()
                .into_iter()
                .filter(|m| m.count_ones() == 4)
                .collect();
            let expected = 3 * crate::formulas::binomial(n as u64, 4) as usize;
            assert_eq!(top.len(), expected, "n={n}");
            for mask in top {
                let g = table.graph(mask);
                let mut degrees: Vec<usize> =
                    (1..=n).map(|v| g.degree(v)).filter(|&d| d > 0).collect();
                degrees.sort_unstable();
                assert_eq!(degrees, vec![2, 2, 2, 2], "{g} is not a 4-cycle");
            }
        }
        // at k = n-1 every single edge is already maximal
        let points = CellTable::enumerate(spec(5, 4)).unwrap();
        assert_eq!(points.facets().len(), 10);
    }

    #[test]
    fn zero_skeleton_at_k_equals_n_minus_1() {
        for n in 3..=6u8 {
            let table = CellTable::enumerate(spec(n, n - 1)).unwrap();
            assert_eq!(table.dim(), 0);
            assert_eq!(table.cells(0).len(), (n as usize) * (n as usize - 1) / 2);
        }
    }

    #[test]
    fn full_simplex_at_k_1() {
        let table = CellTable::enumerate(spec(4, 1)).unwrap();
        assert_eq!(table.total_cells(), (1 << 6) - 1);
        assert!(table.closure_violation().is_none());
    }

    #[test]
    fn empty_complex_at_k_n() {
        let table = CellTable::enumerate(spec(5, 5)).unwrap();
        assert!(table.is_empty());
        assert_eq!(table.dim(), -1);
        assert_eq!(table.f_vector().euler(), 0);
        assert_eq!(euler_characteristic(spec(5, 5)), 0);
    }

    #[test]
    fn dimension_matches_vizing_bound() {
        for n in 2..=7u8 {
            for k in 2..=n {
                let table = CellTable::enumerate(spec(n, k)).unwrap();
                assert_eq!(
                    table.dim(),
                    formulas::vizing_dimension(n, k).unwrap(),
                    "D_{{{n},{k}}}"
                );
            }
        }
    }

    #[test]
    fn f_vector_examples() {
        let t42 = CellTable::enumerate(spec(4, 2)).unwrap();
        assert_eq!(t42.f_vector().counts(), &[6, 15, 16, 3]);
        let t53 = CellTable::enumerate(spec(5, 3)).unwrap();
        assert_eq!(t53.f_vector().counts(), &[10, 45, 70, 15]);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(spec(6, 3)), 92);
        // Eq.-(2)-style value at n=8: N_8 + 1 = 336
        assert_eq!(euler_characteristic(spec(8, 6)), formulas::dnn2_euler(8));
        assert_eq!(euler_characteristic(spec(8, 6)), 336);
    }

    #[test]
    fn streaming_agrees_with_materialized() {
        for (n, k) in [(4, 2), (5, 3), (5, 2), (6, 4), (6, 3)] {
            let table = CellTable::enumerate(spec(n, k)).unwrap();
            assert_eq!(streaming_f_vector(spec(n, k)), table.f_vector());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = CellTable::enumerate_with_budget(spec(6, 3), 100).unwrap_err();
        assert!(matches!(err, Error::CellBudgetExceeded { budget: 100, .. }));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = CellTable::enumerate(spec(5, 2)).unwrap();
        let b = CellTable::enumerate(spec(5, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn face_closure_small_complexes() {
        for (n, k) in [(4, 2), (5, 3), (5, 2), (6, 4)] {
            let table = CellTable::enumerate(spec(n, k)).unwrap();
            assert_eq!(table.closure_violation(), None, "D_{{{n},{k}}}");
        }
    }

    #[test]
    fn split_n4() {
        let table = CellTable::enumerate(spec(4, 2)).unwrap();
        let (x12, r12) = x12_r12_split(&table).unwrap();
        assert_eq!(x12.len() + r12.len(), table.total_cells());
        let expected: CellSet = [
            "13|14",
            "23|24",
            "13|14|34",
            "23|24|34",
            "13|14|23",
            "13|14|24",
            "13|23|24",
            "14|23|24",
            "13|14|23|24",
        ]
        .iter()
        .map(|s| parse(4, s))
        .collect();
        assert_eq!(r12, expected);
        // X12 is a subcomplex: closed under faces
        for &mask in &x12 {
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                let face = mask ^ bit;
                if face != 0 {
                    assert!(x12.contains(&face), "X12 not face-closed at {mask:x}");
                }
            }
        }
        // the 0-cell {12} lies in X12, and every R12 cell omits 12
        assert!(x12.contains(&parse(4, "12")));
        for &mask in &r12 {
            assert_eq!(mask & parse(4, "12"), 0);
        }
    }

    #[test]
    fn split_dimension_bounds_hold_up_to_n6() {
        for n in 4..=6u8 {
            let table = CellTable::enumerate(spec(n, n - 2)).unwrap();
            let (x12, r12) = x12_r12_split(&table).unwrap();
            let e12 = 1u128; // edge 12 is always index 0
            assert!(x12.contains(&e12), "n={n}: the 12-cell must lie in X12");
            for &mask in &r12 {
                let d = mask.count_ones() - 1;
                assert!((1..=3).contains(&d), "n={n}: R12 cell of dimension {d}");
                assert_eq!(mask & e12, 0, "n={n}: R12 cell contains 12");
            }
        }
    }

    #[test]
    fn split_requires_k_n_minus_2() {
        let table = CellTable::enumerate(spec(5, 2)).unwrap();
        assert!(matches!(
            x12_r12_split(&table),
            Err(Error::UnsupportedSpec { n: 5, k: 2 })
        ));
    }

    #[test]
    fn embed_examples() {
        let n4 = VertexCount::new(4).unwrap();
        let n5 = VertexCount::new(5).unwrap();
        let cyc = LabeledGraph::parse(n4, "13|14|23|24").unwrap();
        let embedded = embed_add_isolated(&cyc, n5).unwrap();
        assert_eq!(embedded.to_string(), "13|14|23|24");
        assert!(crate::graph::domination_at_least(&embedded, 3));
        let e12 = LabeledGraph::parse(n4, "12").unwrap();
        assert_eq!(embed_add_isolated(&e12, n5).unwrap().to_string(), "12");
        assert!(embed_add_isolated(&cyc, n4).is_err());
    }

    #[test]
    fn embedded_r12_lands_in_r12() {
        let t4 = CellTable::enumerate(spec(4, 2)).unwrap();
        let t5 = CellTable::enumerate(spec(5, 3)).unwrap();
        let (_, r12_4) = x12_r12_split(&t4).unwrap();
        let (_, r12_5) = x12_r12_split(&t5).unwrap();
        let n4 = VertexCount::new(4).unwrap();
        let n5 = VertexCount::new(5).unwrap();
        for &mask in &r12_4 {
            assert!(r12_5.contains(&embed_mask(mask, n4, n5)));
        }
    }

    #[test]
    fn cache_roundtrip_is_byte_identical() {
        let table = CellTable::enumerate(spec(5, 3)).unwrap();
        let mut buf = Vec::new();
        write_cache(&table, &mut buf).unwrap();
        let loaded = read_cache(buf.as_slice()).unwrap();
        assert_eq!(loaded, table);
        let mut buf2 = Vec::new();
        write_cache(&loaded, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn cache_rejects_wrong_version() {
        let err = read_cache("domcomplex v2 n=4 k=2 dims=6\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::CacheVersion(_)));
    }

    #[test]
    fn cache_rejects_malformed_input() {
        assert!(read_cache("domcomplex v1 n=4 k=2 dims=1\nzz\n".as_bytes()).is_err());
        assert!(read_cache("domcomplex v1 n=4 k=2\n".as_bytes()).is_err());
        // unsorted cells
        let text = "domcomplex v1 n=4 k=2 dims=2\n02\n01\n";
        assert!(read_cache(text.as_bytes()).is_err());
        // counts that do not match the lines
        let text = "domcomplex v1 n=4 k=2 dims=3\n01\n02\n";
        assert!(read_cache(text.as_bytes()).is_err());
    }

    #[test]
    fn d42_export_has_40_cells() {
        let table = CellTable::enumerate(spec(4, 2)).unwrap();
        let mut buf = Vec::new();
        write_cache(&table, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 40);
        assert!(text.starts_with("domcomplex v1 n=4 k=2 dims=6 15 16 3\n"));
    }
}
