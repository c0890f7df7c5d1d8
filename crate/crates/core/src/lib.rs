//! Simplicial complexes of graphs with bounded domination number.
//!
//! For `n` labeled vertices and a threshold `k`, the complex `D_{n,k}` has the
//! edges of the complete graph as its vertices, and a set of `d+1` edges is a
//! `d`-simplex exactly when the graph it spans has domination number at least
//! `k`. Since the domination number can only drop when edges are added, these
//! families are closed under taking subsets and genuinely are simplicial
//! complexes.
//!
//! The crate enumerates the complexes, builds the discrete Morse matchings
//! that collapse `D_{n,n-2}` onto one 0-cell plus 2-cells (and `D_{5,2}` onto
//! one 0-cell plus four 5-cells), verifies well-formedness, acyclicity and
//! restriction compatibility of those matchings, and computes f-vectors,
//! Euler characteristics and Betti numbers as independent cross-checks.
//!
//! Modules:
//! - [`graph`]: labeled graphs as edge bitmasks and the domination oracle;
//! - [`complex`]: enumeration of `D_{n,k}`, facets, splits, the cache format;
//! - [`morse`]: matchings, critical-cell censuses, the acyclicity engine;
//! - [`homology`]: boundary matrices and Betti numbers over GF(2) and Q;
//! - [`d52`]: the `D_{5,2}` verification suite;
//! - [`mod@reference`]: the versioned table of golden values;
//! - [`suite`]: the end-to-end reproduction checks driven by that table.

pub mod complex;
pub mod d52;
pub mod formulas;
pub mod graph;
pub mod homology;
pub mod morse;
pub mod reference;
pub mod suite;
pub mod verify;

pub use complex::{CellId, CellSet, CellTable, ComplexSpec, ComplexStats, FVector};
pub use graph::{Edge, LabeledGraph, NeighborhoodTable, VertexCount};
pub use homology::{BettiVector, BoundaryMatrix, RankMode};
pub use morse::{CycleReport, Matching, MorseCensus, VPath};

/// Default ceiling on the number of cells a materialized table may hold.
pub const DEFAULT_CELL_BUDGET: usize = 10_000_000;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex count {0} out of range (2..=16)")]
    VertexCountOutOfRange(u8),
    #[error("invalid edge ({i},{j}) for n={n}: need 1 <= i < j <= n")]
    InvalidEdge { i: u8, j: u8, n: u8 },
    #[error("edge index {index} out of range for n={n} ({count} edges)")]
    EdgeIndexOutOfRange { index: usize, n: u8, count: usize },
    #[error("edge mask has bits outside the {count} edges of n={n}")]
    InvalidEdgeMask { n: u8, count: usize },
    #[error("invalid complex spec: k={k} must satisfy 0 <= k <= n={n}")]
    InvalidSpec { n: u8, k: u8 },
    #[error("cell budget of {budget} cells exceeded while enumerating D_{{{n},{k}}}")]
    CellBudgetExceeded { n: u8, k: u8, budget: usize },
    #[error("operation requires k = n-2 (got n={n}, k={k})")]
    UnsupportedSpec { n: u8, k: u8 },
    #[error("cell {cell} is already matched; matchings must be disjoint")]
    MatchingConflict { cell: String },
    #[error("pair ({tau}, {sigma}) is not a facet/cofacet pair")]
    NotAFacetPair { tau: String, sigma: String },
    #[error("no admissible partner for 1-cell {cell}: candidate set is empty, which contradicts the matching lemma and signals an enumeration bug")]
    EmptyPartnerSet { cell: String },
    #[error("matching refers to {cell}, which is not a cell of the table")]
    UnknownCell { cell: String },
    #[error("family does not have the expected shape: {0}")]
    FamilyShape(String),
    #[error("boundary dimension {d} out of range for a complex of dimension {dim}")]
    BoundaryDimOutOfRange { d: usize, dim: isize },
    #[error("linear-algebra budget exceeded ({cells} cells > {budget}); use the streaming Euler-characteristic mode instead")]
    RankBudgetExceeded { cells: usize, budget: usize },
    #[error("cache format error: {0}")]
    CacheFormat(String),
    #[error("unsupported cache version: expected `domcomplex v1`, found `{0}`")]
    CacheVersion(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
