//! Labeled graphs as edge bitmasks, and the domination-number oracle.
//!
//! Vertices carry labels `1..=n` with `n <= 16`, so a vertex set fits in a
//! `u16` and an edge set fits in a `u128` (`C(16,2) = 120` possible edges).
//! Edges are indexed lexicographically: `12, 13, ..., 1n, 23, 24, ...`.

use std::fmt;

use crate::{Error, Result};

/// Hard cap on the number of vertices; keeps edge sets in one `u128`.
pub const MAX_VERTICES: u8 = 16;

/// A validated vertex count, `2..=16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexCount(u8);

impl VertexCount {
    pub fn new(n: u8) -> Result<Self> {
        if (2..=MAX_VERTICES).contains(&n) {
            Ok(VertexCount(n))
        } else {
            Err(Error::VertexCountOutOfRange(n))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Number of edges of the complete graph, `C(n,2)`.
    pub fn edge_count(self) -> usize {
        let n = self.as_usize();
        n * (n - 1) / 2
    }

    /// Bitmask with one bit per vertex.
    pub fn full_vertex_mask(self) -> u16 {
        ((1u32 << self.0) - 1) as u16
    }

    /// All edges in lexicographic order.
    pub fn edges(self) -> impl Iterator<Item = Edge> {
        let n = self.0;
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| Edge { i, j }))
    }
}

impl fmt::Display for VertexCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unordered edge `ij` with `1 <= i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    i: u8,
    j: u8,
}

impl Edge {
    /// Accepts either endpoint order; stores `i < j`.
    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a == 0 || b == 0 || a == b || a > MAX_VERTICES || b > MAX_VERTICES {
            return Err(Error::InvalidEdge {
                i: a,
                j: b,
                n: MAX_VERTICES,
            });
        }
        Ok(Edge {
            i: a.min(b),
            j: a.max(b),
        })
    }

    pub fn i(self) -> u8 {
        self.i
    }

    pub fn j(self) -> u8 {
        self.j
    }

    pub fn touches(self, v: u8) -> bool {
        self.i == v || self.j == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.j <= 9 {
            write!(f, "{}{}", self.i, self.j)
        } else {
            // two-digit labels need a separator to stay parseable
            write!(f, "{}-{}", self.i, self.j)
        }
    }
}

/// Rank of edge `ij` (with `i < j <= n`) in the lexicographic order
/// `12, 13, ..., 1n, 23, ...`; bijective onto `0..C(n,2)`.
pub fn edge_index(i: u8, j: u8, n: VertexCount) -> Result<usize> {
    if i == 0 || i >= j || j > n.get() {
        return Err(Error::InvalidEdge { i, j, n: n.get() });
    }
    let (i, j, n) = (i as usize, j as usize, n.as_usize());
    Ok((i - 1) * n - i * (i - 1) / 2 + (j - i - 1))
}

/// Inverse of [`edge_index`].
pub fn edge_from_index(index: usize, n: VertexCount) -> Result<Edge> {
    if index >= n.edge_count() {
        return Err(Error::EdgeIndexOutOfRange {
            index,
            n: n.get(),
            count: n.edge_count(),
        });
    }
    let mut rest = index;
    let mut i = 1u8;
    while rest >= (n.get() - i) as usize {
        rest -= (n.get() - i) as usize;
        i += 1;
    }
    Ok(Edge {
        i,
        j: i + 1 + rest as u8,
    })
}

/// A graph on `{1..n}` stored as a bitmask over lexicographic edge indices.
///
/// Doubles as a simplex identifier: a graph with `e >= 1` edges is an
/// `(e-1)`-cell of whatever complex it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledGraph {
    n: VertexCount,
    edges: u128,
}

impl LabeledGraph {
    pub fn edgeless(n: VertexCount) -> Self {
        LabeledGraph { n, edges: 0 }
    }

    /// Builds from an explicit mask, rejecting bits beyond `C(n,2)`.
    pub fn from_mask(n: VertexCount, edges: u128) -> Result<Self> {
        let count = n.edge_count();
        if count < 128 && edges >> count != 0 {
            return Err(Error::InvalidEdgeMask { n: n.get(), count });
        }
        Ok(LabeledGraph { n, edges })
    }

    pub fn from_edges(n: VertexCount, pairs: &[(u8, u8)]) -> Result<Self> {
        let mut mask = 0u128;
        for &(a, b) in pairs {
            let e = Edge::new(a, b)?;
            mask |= 1u128 << edge_index(e.i, e.j, n)?;
        }
        Ok(LabeledGraph { n, edges: mask })
    }

    /// Parses the `13|14|23` text form (or `1-10|2-10` for two-digit labels).
    pub fn parse(n: VertexCount, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::edgeless(n));
        }
        let mut mask = 0u128;
        for part in text.split('|') {
            let part = part.trim();
            let (a, b) = if let Some((x, y)) = part.split_once('-') {
                let parse = |s: &str| {
                    s.parse::<u8>().map_err(|_| Error::InvalidEdge {
                        i: 0,
                        j: 0,
                        n: n.get(),
                    })
                };
                (parse(x)?, parse(y)?)
            } else if part.len() == 2 && part.chars().all(|c| c.is_ascii_digit()) {
                let bytes = part.as_bytes();
                (bytes[0] - b'0', bytes[1] - b'0')
            } else {
                return Err(Error::InvalidEdge {
                    i: 0,
                    j: 0,
                    n: n.get(),
                });
            };
            let e = Edge::new(a, b)?;
            mask |= 1u128 << edge_index(e.i, e.j, n)?;
        }
        Ok(LabeledGraph { n, edges: mask })
    }

    pub fn n(self) -> VertexCount {
        self.n
    }

    pub fn mask(self) -> u128 {
        self.edges
    }

    pub fn is_edgeless(self) -> bool {
        self.edges == 0
    }

    pub fn edge_count(self) -> usize {
        self.edges.count_ones() as usize
    }

    /// Simplex dimension; only meaningful for nonempty edge sets.
    pub fn dimension(self) -> usize {
        debug_assert!(self.edges != 0, "the empty graph is not a cell");
        self.edge_count() - 1
    }

    pub fn contains(self, e: Edge) -> bool {
        edge_index(e.i(), e.j(), self.n)
            .map(|t| self.edges >> t & 1 == 1)
            .unwrap_or(false)
    }

    pub fn with_edge(self, e: Edge) -> Result<Self> {
        let t = edge_index(e.i(), e.j(), self.n)?;
        Ok(LabeledGraph {
            n: self.n,
            edges: self.edges | 1u128 << t,
        })
    }

    pub fn without_edge(self, e: Edge) -> Result<Self> {
        let t = edge_index(e.i(), e.j(), self.n)?;
        Ok(LabeledGraph {
            n: self.n,
            edges: self.edges & !(1u128 << t),
        })
    }

    /// Edges in increasing index order.
    pub fn edges(self) -> impl Iterator<Item = Edge> {
        let n = self.n;
        let mut mask = self.edges;
        std::iter::from_fn(move || {
            if mask == 0 {
                return None;
            }
            let t = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(edge_from_index(t, n).expect("stored bit is a valid edge index"))
        })
    }

    pub fn degree(self, v: u8) -> usize {
        self.edges().filter(|e| e.touches(v)).count()
    }

    pub fn max_degree(self) -> usize {
        (1..=self.n.get())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges == 0 {
            return write!(f, "(edgeless)");
        }
        let mut first = true;
        for e in self.edges() {
            if !first {
                write!(f, "|")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, {})", self.n, self)
    }
}

/// Per-vertex closed neighborhoods of a graph, as vertex bitmasks.
///
/// `v` always belongs to `N[v]`; an isolated vertex can only be dominated by
/// itself, which is what makes closed neighborhoods the right notion here.
#[derive(Clone, Debug)]
pub struct NeighborhoodTable {
    n: VertexCount,
    nbhd: [u16; MAX_VERTICES as usize],
}

impl NeighborhoodTable {
    pub fn new(g: &LabeledGraph) -> Self {
        let n = g.n();
        let mut nbhd = [0u16; MAX_VERTICES as usize];
        for (v, slot) in nbhd.iter_mut().enumerate().take(n.as_usize()) {
            *slot = 1 << v;
        }
        for e in g.edges() {
            let (i, j) = (e.i() as usize - 1, e.j() as usize - 1);
            nbhd[i] |= 1 << j;
            nbhd[j] |= 1 << i;
        }
        NeighborhoodTable { n, nbhd }
    }

    pub fn n(&self) -> VertexCount {
        self.n
    }

    /// Closed neighborhood of vertex `v` (1-based label) as a vertex mask.
    pub fn closed(&self, v: u8) -> u16 {
        self.nbhd[v as usize - 1]
    }

    /// Does the vertex set `d_mask` (bit `v-1` for label `v`) dominate?
    pub fn dominated_by(&self, d_mask: u16) -> bool {
        let mut cov = 0u16;
        let mut m = d_mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            cov |= self.nbhd[v];
            m &= m - 1;
        }
        cov == self.n.full_vertex_mask()
    }
}

/// True iff the vertex set `d_mask` dominates `g` (closed-neighborhood cover).
pub fn dominates(d_mask: u16, g: &LabeledGraph) -> bool {
    NeighborhoodTable::new(g).dominated_by(d_mask)
}

/// Is there a dominating set of size at most `limit`?
///
/// Scans candidate sets by increasing cardinality and stops at the first hit;
/// the hot callers use `limit <= 2`, which keeps this quadratic per graph.
fn some_dominating_set_within(nbhd: &[u16], full: u16, limit: usize) -> bool {
    if full == 0 {
        // the graph on zero vertices is dominated by the empty set
        return true;
    }
    let n = nbhd.len();
    let mut chosen = [0u16; MAX_VERTICES as usize + 1];
    for size in 1..=limit.min(n) {
        // unions of `size` closed neighborhoods, depth-first over start index
        let mut idx = [0usize; MAX_VERTICES as usize];
        let mut depth = 0usize;
        idx[0] = 0;
        chosen[0] = 0;
        loop {
            if idx[depth] >= n {
                if depth == 0 {
                    break;
                }
                depth -= 1;
                idx[depth] += 1;
                continue;
            }
            let cov = chosen[depth] | nbhd[idx[depth]];
            if depth + 1 == size {
                if cov == full {
                    return true;
                }
                idx[depth] += 1;
            } else {
                chosen[depth + 1] = cov;
                idx[depth + 1] = idx[depth] + 1;
                depth += 1;
            }
        }
    }
    false
}

/// The domination number `gamma(g)`.
pub fn domination_number(g: &LabeledGraph) -> usize {
    let t = NeighborhoodTable::new(g);
    let n = g.n().as_usize();
    let full = g.n().full_vertex_mask();
    for size in 1..=n {
        if some_dominating_set_within(&t.nbhd[..n], full, size) {
            return size;
        }
    }
    n
}

/// True iff `gamma(g) >= k`, i.e. no vertex set of size `k-1` dominates.
///
/// Short-circuits on the first dominating set found.
pub fn domination_at_least(g: &LabeledGraph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let t = NeighborhoodTable::new(g);
    let n = g.n().as_usize();
    !some_dominating_set_within(&t.nbhd[..n], g.n().full_vertex_mask(), k - 1)
}

/// Same oracle, but fed with a prebuilt neighborhood slice. This is the
/// enumeration hot path: the caller maintains neighborhoods incrementally.
pub(crate) fn at_least_from_neighborhoods(nbhd: &[u16], full: u16, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    !some_dominating_set_within(nbhd, full, k - 1)
}
