//! Exhaustive allocation searches, used as oracles in tests and the harness.

use crate::allocation::{complete_top_block, Allocation, Completion};
use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};

/// Largest `a_p` for which [`find_extension`] enumerates the top block.
pub const EXTENSION_MAX_LONGEST: i64 = 8;
/// Largest diagram for which [`find_allocation`] runs.
pub const ALLOCATION_SEARCH_MAX_CELLS: i64 = 24;

/// Tries every choice of the free top-block entries `z[p][j][k]`,
/// `j, k < p`, and returns the first completion that is an allocation.
pub fn find_extension(y: &YoungDiagram, lower: &Allocation) -> Result<Option<Allocation>> {
    if y.longest() > EXTENSION_MAX_LONGEST {
        return Err(Error::ScaleLimit {
            what: "longest row",
            limit: EXTENSION_MAX_LONGEST as u64,
            actual: y.longest() as u64,
        });
    }
    let p = y.p();
    if p < 2 {
        return Err(Error::Unsupported("extension needs at least two blocks".into()));
    }
    let n = p - 1;
    let bounds: Vec<i64> = (0..n * n)
        .map(|c| {
            let (j, k) = (c / n + 1, c % n + 1);
            (y.b(j) * y.b(k)).min(y.e(p) * y.b(j)).min(y.e(p) * y.b(k))
        })
        .collect();
    let mut top = vec![vec![0i64; n]; n];
    loop {
        if let Completion::Extended(z) = complete_top_block(y, lower, &top)? {
            return Ok(Some(z));
        }
        // odometer step over the box
        let mut c = 0;
        loop {
            if c == n * n {
                return Ok(None);
            }
            let (j, k) = (c / n, c % n);
            if top[j][k] < bounds[c] {
                top[j][k] += 1;
                break;
            }
            top[j][k] = 0;
            c += 1;
        }
    }
}

/// Depth-first search over all allocations of `y`; returns the first one
/// found, or `None` when none exists.
pub fn find_allocation(y: &YoungDiagram) -> Result<Option<Allocation>> {
    if y.cells() > ALLOCATION_SEARCH_MAX_CELLS {
        return Err(Error::ScaleLimit {
            what: "cell count",
            limit: ALLOCATION_SEARCH_MAX_CELLS as u64,
            actual: y.cells() as u64,
        });
    }
    let p = y.p();
    let mut s = Search {
        y,
        p,
        cap: (0..p * p)
            .map(|c| y.b(c / p + 1) * y.b(c % p + 1))
            .collect(),
        z: Allocation::zeros(p),
        row_left: vec![0; p],
        col_left: vec![0; p],
    };
    Ok(s.block(1).then_some(s.z))
}

struct Search<'a> {
    y: &'a YoungDiagram,
    p: usize,
    /// Remaining capacity per (j, k), 0-based flat.
    cap: Vec<i64>,
    z: Allocation,
    row_left: Vec<i64>,
    col_left: Vec<i64>,
}

impl Search<'_> {
    fn block(&mut self, i: usize) -> bool {
        if i > self.p {
            return true;
        }
        for t in 1..=i {
            self.row_left[t - 1] = self.y.e(i) * self.y.b(t);
            self.col_left[t - 1] = self.y.e(i) * self.y.b(t);
        }
        self.cell(i, 1, 1)
    }

    fn cell(&mut self, i: usize, j: usize, k: usize) -> bool {
        if j > i {
            return self.col_left[..i].iter().all(|&c| c == 0) && self.block(i + 1);
        }
        let (nj, nk) = if k == i { (j + 1, 1) } else { (j, k + 1) };
        let c = (j - 1) * self.p + (k - 1);
        let (rl, cl, cap) = (self.row_left[j - 1], self.col_left[k - 1], self.cap[c]);
        // the last entry of a row, or of a column once the final row is
        // reached, is forced
        let (lo, hi) = if k == i {
            (rl, rl)
        } else if j == i {
            (cl, cl)
        } else {
            (0, rl.min(cl))
        };
        if lo > rl.min(cl).min(cap) || hi < 0 {
            return false;
        }
        for v in lo..=hi.min(cap) {
            self.row_left[j - 1] -= v;
            self.col_left[k - 1] -= v;
            self.cap[c] -= v;
            self.z.set(i, j, k, v);
            if self.cell(i, nj, nk) {
                return true;
            }
            self.row_left[j - 1] += v;
            self.col_left[k - 1] += v;
            self.cap[c] += v;
        }
        self.z.set(i, j, k, 0);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::verify_allocation;
    use crate::wideness::is_wide_fast;

    fn y(rows: &[i64]) -> YoungDiagram {
        YoungDiagram::from_row_lengths(rows).unwrap()
    }

    #[test]
    fn lower_allocations_of_5433() {
        let d = y(&[5, 4, 3, 3]);
        let mut bad = Allocation::zeros(2);
        bad.set(1, 1, 1, 6);
        bad.set(2, 1, 1, 3);
        bad.set(2, 2, 2, 1);
        assert_eq!(find_extension(&d, &bad).unwrap(), None);
        let good = crate::allocation::allocate(&y(&[4, 3, 3])).unwrap();
        let ext = find_extension(&d, &good).unwrap().unwrap();
        assert_eq!(verify_allocation(&d, &ext), Ok(()));
    }

    #[test]
    fn finds_allocations_exactly_for_small_wide_diagrams() {
        for rows in [&[3, 2, 1][..], &[2, 2], &[2, 2, 2], &[4, 1, 1, 1], &[5, 4, 3, 3], &[3, 3, 3, 1]] {
            let d = y(rows);
            let found = find_allocation(&d).unwrap();
            if let Some(z) = &found {
                assert_eq!(verify_allocation(&d, z), Ok(()));
            }
            assert_eq!(found.is_some(), is_wide_fast(&d).wide, "{d}");
        }
    }

    #[test]
    fn gates() {
        assert!(find_allocation(&y(&[25])).is_err());
        let big = y(&[9, 1]);
        assert!(find_extension(&big, &Allocation::zeros(1)).is_err());
    }
}
