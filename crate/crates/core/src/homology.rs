//! Boundary matrices and Betti numbers of enumerated complexes.
//!
//! Cells are edge sets; the vertices of a `d`-simplex are its `d+1` edges in
//! increasing index order, so the facet obtained by deleting the `r`-th
//! smallest edge carries sign `(-1)^r` in the integer boundary.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::CellTable;
use crate::{Error, Result};

/// Coefficient choice for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    /// Elimination over the two-element field.
    Gf2,
    /// Rational ranks via fraction-free integer elimination.
    Rational,
}

/// Sparse incidence matrix between dimensions `d-1` (rows) and `d` (columns).
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub d: usize,
    pub rows: usize,
    /// Per column: `(row, sign)` entries, rows strictly increasing.
    pub cols: Vec<Vec<(u32, i8)>>,
}

/// Builds the boundary matrix from dimension `d` to `d-1`.
pub fn boundary_matrix(cells: &CellTable, d: usize) -> Result<BoundaryMatrix> {
    if d == 0 || d as isize > cells.dim() {
        return Err(Error::BoundaryDimOutOfRange {
            d,
            dim: cells.dim(),
        });
    }
    let faces = cells.cells(d - 1);
    let mut cols = Vec::with_capacity(cells.cells(d).len());
    for &cell in cells.cells(d) {
        let mut col = Vec::with_capacity(d + 1);
        let mut rest = cell;
        let mut r = 0i8;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            let face = cell ^ bit;
            let row = faces
                .binary_search(&face)
                .expect("tables are closed under faces");
            col.push((row as u32, if r % 2 == 0 { 1 } else { -1 }));
            r += 1;
        }
        col.sort_unstable_by_key(|&(row, _)| row);
        cols.push(col);
    }
    Ok(BoundaryMatrix {
        d,
        rows: faces.len(),
        cols,
    })
}

/// `rank` over GF(2); dense bit-packed rows up to 2^16 columns, sparse
/// column reduction beyond that.
pub fn rank_gf2(m: &BoundaryMatrix) -> usize {
    if m.cols.len() <= 1 << 16 {
        rank_gf2_dense(m)
    } else {
        rank_gf2_sparse(m)
    }
}

fn rank_gf2_dense(m: &BoundaryMatrix) -> usize {
    let ncols = m.cols.len();
    let words = ncols.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; m.rows];
    for (c, col) in m.cols.iter().enumerate() {
        for &(r, _) in col {
            rows[r as usize][c / 64] ^= 1u64 << (c % 64);
        }
    }
    let mut rank = 0;
    for c in 0..ncols {
        let (w, b) = (c / 64, c % 64);
        let Some(pivot) = (rank..m.rows).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (pivot_row, rest) = {
            let (head, tail) = rows.split_at_mut(rank + 1);
            (&head[rank], tail)
        };
        for row in rest.iter_mut() {
            if row[w] >> b & 1 == 1 {
                for (x, &p) in row.iter_mut().zip(pivot_row.iter()) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

fn rank_gf2_sparse(m: &BoundaryMatrix) -> usize {
    // column reduction keyed on the largest remaining row of each column
    let mut pivots: std::collections::HashMap<u32, Vec<u32>> = std::collections::HashMap::new();
    let mut rank = 0;
    for col in &m.cols {
        let mut cur: Vec<u32> = col.iter().map(|&(r, _)| r).collect();
        while let Some(&low) = cur.last() {
            match pivots.get(&low) {
                Some(other) => cur = xor_sorted(&cur, other),
                None => {
                    pivots.insert(low, cur);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Rank over the rationals. Fraction-free elimination in `i128` with checked
/// arithmetic; an overflow restarts the computation over big integers.
pub fn rank_rational(m: &BoundaryMatrix) -> usize {
    match bareiss_rank_i128(m) {
        Some(rank) => rank,
        None => bareiss_rank_big(m),
    }
}

fn dense_i128(m: &BoundaryMatrix) -> Vec<Vec<i128>> {
    let mut a = vec![vec![0i128; m.cols.len()]; m.rows];
    for (c, col) in m.cols.iter().enumerate() {
        for &(r, s) in col {
            a[r as usize][c] = s as i128;
        }
    }
    a
}

fn bareiss_rank_i128(m: &BoundaryMatrix) -> Option<usize> {
    let mut a = dense_i128(m);
    let (rows, cols) = (m.rows, m.cols.len());
    let mut prev = 1i128;
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let t = a[rank][c].checked_mul(a[i][j])?;
                let u = a[i][c].checked_mul(a[rank][j])?;
                let num = t.checked_sub(u)?;
                debug_assert_eq!(num % prev, 0, "fraction-free step must divide exactly");
                a[i][j] = num / prev;
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_rank_big(m: &BoundaryMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m.cols.len()]; m.rows];
    for (c, col) in m.cols.iter().enumerate() {
        for &(r, s) in col {
            a[r as usize][c] = BigInt::from(s);
        }
    }
    let (rows, cols) = (m.rows, m.cols.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Diagonalizes the matrix over the integers by unimodular row and column
/// operations and returns the nonzero diagonal entries. The cokernel is
/// `(sum of Z/d_i) + Z^(rows - #d_i)` whatever the diagonal order, so torsion
/// exists iff some returned entry has absolute value > 1.
pub fn elementary_divisors(m: &BoundaryMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m.cols.len()]; m.rows];
    for (c, col) in m.cols.iter().enumerate() {
        for &(r, s) in col {
            a[r as usize][c] = BigInt::from(s);
        }
    }
    let (rows, cols) = (m.rows, m.cols.len());
    let mut t = 0;
    let mut out = Vec::new();
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // clear column t with row operations (Euclid on the pivot), then row
        // t with column operations; a column swap re-dirties the column, so
        // loop until a full pass goes through without one
        loop {
            for i in t + 1..rows {
                while !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    let (head, tail) = a.split_at_mut(i);
                    let pivot_row = &head[t];
                    for (x, p) in tail[0].iter_mut().zip(pivot_row).skip(t) {
                        *x = &*x - &q * p;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                    }
                }
            }
            let mut column_swapped = false;
            for j in t + 1..cols {
                while !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().take(rows).skip(t) {
                        let v = &row[j] - &q * &row[t];
                        row[j] = v;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        column_swapped = true;
                    }
                }
            }
            if !column_swapped {
                break;
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Cell ceiling for torsion detection; diagonalization over big integers is
/// only exercised on small instances.
pub const TORSION_CELL_LIMIT: usize = 10_000;

/// Whether the integral homology of the complex is free of torsion, decided
/// by diagonalizing every boundary matrix. Errors above [`TORSION_CELL_LIMIT`].
pub fn torsion_free(cells: &CellTable) -> Result<bool> {
    if cells.total_cells() > TORSION_CELL_LIMIT {
        return Err(Error::RankBudgetExceeded {
            cells: cells.total_cells(),
            budget: TORSION_CELL_LIMIT,
        });
    }
    for d in 1..=cells.dim().max(0) as usize {
        let m = boundary_matrix(cells, d)?;
        if elementary_divisors(&m)
            .iter()
            .any(|v| !v.is_one() && !v.is_zero())
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-dimension Betti numbers with the mode they were computed in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub b: Vec<i64>,
    pub mode: RankMode,
}

impl BettiVector {
    /// Alternating sum; must equal the Euler characteristic.
    pub fn euler(&self) -> i64 {
        self.b
            .iter()
            .enumerate()
            .map(|(d, &v)| if d % 2 == 0 { v } else { -v })
            .sum()
    }
}

/// Default ceiling on cells for rank computations.
pub const DEFAULT_RANK_BUDGET: usize = 2_000_000;

/// Betti numbers of the complex: `b_0` counts connected components of the
/// 1-skeleton, `b_d = c_d - rank d_d - rank d_{d+1}` above. Independent
/// boundary matrices are eliminated in parallel.
pub fn betti(cells: &CellTable, mode: RankMode, budget: usize) -> Result<BettiVector> {
    if cells.total_cells() > budget {
        return Err(Error::RankBudgetExceeded {
            cells: cells.total_cells(),
            budget,
        });
    }
    if cells.is_empty() {
        return Ok(BettiVector { b: vec![], mode });
    }
    let dim = cells.dim() as usize;
    let ranks: Vec<usize> = (1..=dim)
        .into_par_iter()
        .map(|d| {
            let m = boundary_matrix(cells, d).expect("d in range");
            match mode {
                RankMode::Gf2 => rank_gf2(&m),
                RankMode::Rational => rank_rational(&m),
            }
        })
        .collect();
    let rank = |d: usize| -> i64 {
        if d == 0 || d > dim {
            0
        } else {
            ranks[d - 1] as i64
        }
    };
    let f = cells.f_vector();
    let mut b = Vec::with_capacity(dim + 1);
    b.push(connected_components(cells) as i64);
    for d in 1..=dim {
        b.push(f.counts()[d] as i64 - rank(d) - rank(d + 1));
    }
    let out = BettiVector { b, mode };
    debug_assert_eq!(out.euler(), f.euler());
    Ok(out)
}

/// Connected components of the 1-skeleton, by union-find over the 0-cells.
pub fn connected_components(cells: &CellTable) -> usize {
    let zero = cells.cells(0);
    if zero.is_empty() {
        return 0;
    }
    let mut parent: Vec<usize> = (0..zero.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &edge_cell in cells.cells(1) {
        let mut ends = [0usize; 2];
        let mut rest = edge_cell;
        for slot in ends.iter_mut() {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            *slot = zero.binary_search(&bit).expect("closed under faces");
        }
        let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
        if a != b {
            parent[a] = b;
        }
    }
    (0..zero.len())
        .filter(|&x| find(&mut parent, x) == x)
        .count()
}

/// Checks the chain-complex identity at one pair of consecutive dimensions.
pub fn boundary_squared_is_zero(cells: &CellTable, d: usize, mode: RankMode) -> Result<bool> {
    let upper = boundary_matrix(cells, d)?;
    let lower = boundary_matrix(cells, d - 1)?;
    for col in &upper.cols {
        let mut acc: std::collections::HashMap<u32, i64> = std::collections::HashMap::new();
        for &(mid, s1) in col {
            for &(row, s2) in &lower.cols[mid as usize] {
                *acc.entry(row).or_insert(0) += match mode {
                    RankMode::Gf2 => 1,
                    RankMode::Rational => (s1 * s2) as i64,
                };
            }
        }
        let zero = acc.values().all(|&v| match mode {
            RankMode::Gf2 => v % 2 == 0,
            RankMode::Rational => v == 0,
        });
        if !zero {
            return Ok(false);
        }
    }
    Ok(true)
}
