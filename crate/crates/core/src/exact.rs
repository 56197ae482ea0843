//! Exhaustive backtracking search for Latin fillings.
//!
//! Used as ground truth: a `None` answer means the whole search space was
//! exhausted. Rows, columns and symbols are tracked as `u64` bitmasks, so
//! the solver is limited to diagrams of at most 64 cells.
//!
//! Symbols of one symbol block are interchangeable, and so are columns of
//! one column block. Every filling can therefore be brought to one whose
//! top row increases within each column block and lists each symbol
//! block's symbols in increasing order from left to right; the search only
//! tries such top rows.

use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};
use crate::filling::{verify_filling, LatinFilling};

/// Largest diagram [`fill_exact`] accepts.
pub const EXACT_MAX_CELLS: i64 = 64;

/// Returns a Latin filling of `y`, or `None` if there is none.
pub fn fill_exact(y: &YoungDiagram) -> Result<Option<LatinFilling>> {
    if y.cells() > EXACT_MAX_CELLS {
        return Err(Error::ScaleLimit {
            what: "cell count",
            limit: EXACT_MAX_CELLS as u64,
            actual: y.cells() as u64,
        });
    }
    let lens: Vec<usize> = y.rows_desc().into_iter().map(|l| l as usize).collect();
    let mut s = Solver {
        grid: lens.iter().map(|&l| vec![0u32; l]).collect(),
        row_used: vec![0; lens.len()],
        col_used: vec![0; lens[0]],
        lens,
    };
    let mut found = false;
    for top in canonical_top_rows(y) {
        for (c, &sym) in top.iter().enumerate() {
            s.put(0, c, sym);
        }
        if s.solve() {
            found = true;
            break;
        }
        for (c, &sym) in top.iter().enumerate() {
            s.take(0, c, sym);
        }
    }
    if !found {
        return Ok(None);
    }
    let f = LatinFilling::new(s.grid)?;
    verify_filling(y, &f).map_err(|v| Error::internal(format!("solver produced an invalid filling: {v}")))?;
    Ok(Some(f))
}

/// Top rows in the canonical form described in the module docs, one per
/// table `n[j][k]` of how many symbols of block `k` sit in column block `j`.
fn canonical_top_rows(y: &YoungDiagram) -> Vec<Vec<u32>> {
    let p = y.p();
    let b: Vec<i64> = (1..=p).map(|j| y.b(j)).collect();
    let mut tables = Vec::new();
    let mut n = vec![vec![0i64; p]; p];
    contingency(&b, &mut b.clone(), 0, 0, &mut n, &mut tables);
    tables
        .into_iter()
        .map(|n| {
            let mut next: Vec<i64> = (0..p).map(|k| y.a(k) + 1).collect();
            let mut row = Vec::with_capacity(y.longest() as usize);
            for nj in &n {
                let mut block: Vec<u32> = Vec::new();
                for (k, &count) in nj.iter().enumerate() {
                    block.extend((next[k]..next[k] + count).map(|s| s as u32));
                    next[k] += count;
                }
                block.sort_unstable();
                row.extend(block);
            }
            row
        })
        .collect()
}

/// Nonnegative `p x p` tables with row sums `b` and column sums `b`.
fn contingency(b: &[i64], col_left: &mut [i64], j: usize, k: usize, n: &mut [Vec<i64>], out: &mut Vec<Vec<Vec<i64>>>) {
    let p = b.len();
    if j == p {
        out.push(n.to_vec());
        return;
    }
    let row_left = b[j] - n[j][..k].iter().sum::<i64>();
    let (nj, nk) = if k + 1 == p { (j + 1, 0) } else { (j, k + 1) };
    let range = if k + 1 == p {
        // the last entry of a row is forced
        row_left..=row_left
    } else {
        0..=row_left
    };
    for v in range {
        if v > col_left[k] {
            break;
        }
        n[j][k] = v;
        col_left[k] -= v;
        contingency(b, col_left, nj, nk, n, out);
        col_left[k] += v;
    }
    n[j][k] = 0;
}

struct Solver {
    lens: Vec<usize>,
    /// `grid[r][c]`, 0 for empty.
    grid: Vec<Vec<u32>>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
}

enum Branch {
    /// Try every candidate symbol in one cell.
    Cell { r: usize, c: usize, cand: u64 },
    /// Try every position for a symbol still missing from a row.
    Place { r: usize, s: u32, cols: u64 },
}

fn full(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Solver {
    fn candidates(&self, r: usize, c: usize) -> u64 {
        full(self.lens[r]) & !self.row_used[r] & !self.col_used[c]
    }

    fn put(&mut self, r: usize, c: usize, s: u32) {
        let bit = 1u64 << (s - 1);
        self.grid[r][c] = s;
        self.row_used[r] |= bit;
        self.col_used[c] |= bit;
    }

    fn take(&mut self, r: usize, c: usize, s: u32) {
        let bit = 1u64 << (s - 1);
        self.grid[r][c] = 0;
        self.row_used[r] &= !bit;
        self.col_used[c] &= !bit;
    }

    /// Most constrained choice, or `Err(())` when some cell, row symbol or
    /// column has run out of options. `Ok(None)` means the grid is full.
    fn pick(&self) -> std::result::Result<Option<Branch>, ()> {
        let mut best: Option<(u32, Branch)> = None;
        // cells, topmost then leftmost on ties
        for (r, row) in self.grid.iter().enumerate() {
            for (c, &s) in row.iter().enumerate() {
                if s != 0 {
                    continue;
                }
                let cand = self.candidates(r, c);
                let k = cand.count_ones();
                if k == 0 {
                    return Err(());
                }
                if best.as_ref().is_none_or(|(b, _)| k < *b) {
                    best = Some((k, Branch::Cell { r, c, cand }));
                }
            }
        }
        if best.is_none() {
            return Ok(None);
        }
        // each row must still place its missing symbols somewhere
        for (r, row) in self.grid.iter().enumerate() {
            let mut missing = full(self.lens[r]) & !self.row_used[r];
            while missing != 0 {
                let s = missing.trailing_zeros() + 1;
                missing &= missing - 1;
                let bit = 1u64 << (s - 1);
                let mut cols = 0u64;
                for (c, &v) in row.iter().enumerate() {
                    if v == 0 && self.col_used[c] & bit == 0 {
                        cols |= 1 << c;
                    }
                }
                let k = cols.count_ones();
                if k == 0 {
                    return Err(());
                }
                if best.as_ref().is_some_and(|(b, _)| k < *b) {
                    best = Some((k, Branch::Place { r, s, cols }));
                }
            }
        }
        // a column's empty cells need at least as many distinct symbols
        for c in 0..self.col_used.len() {
            let (mut empty, mut union) = (0u32, 0u64);
            for r in 0..self.grid.len() {
                if c < self.lens[r] && self.grid[r][c] == 0 {
                    empty += 1;
                    union |= self.candidates(r, c);
                }
            }
            if union.count_ones() < empty {
                return Err(());
            }
        }
        Ok(best.map(|(_, b)| b))
    }

    fn solve(&mut self) -> bool {
        let branch = match self.pick() {
            Err(()) => return false,
            Ok(None) => return true,
            Ok(Some(b)) => b,
        };
        match branch {
            Branch::Cell { r, c, mut cand } => {
                while cand != 0 {
                    let s = cand.trailing_zeros() + 1;
                    cand &= cand - 1;
                    self.put(r, c, s);
                    if self.solve() {
                        return true;
                    }
                    self.take(r, c, s);
                }
            }
            Branch::Place { r, s, mut cols } => {
                while cols != 0 {
                    let c = cols.trailing_zeros() as usize;
                    cols &= cols - 1;
                    self.put(r, c, s);
                    if self.solve() {
                        return true;
                    }
                    self.take(r, c, s);
                }
            }
        }
        false
    }
}
