//! Three independent deciders for wideness.
//!
//! A diagram is wide when every subdiagram formed by a subset of its rows
//! dominates its own conjugate. [`is_wide_oracle`] checks that literally,
//! [`is_wide_tails`] only checks tail subdiagrams at block boundaries, and
//! [`is_wide_fast`] evaluates a closed-form inequality battery whose size is
//! quadratic in the number of distinct row lengths.

use std::fmt;

use serde::Serialize;

use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};

/// Largest row count the subset oracle accepts.
pub const ORACLE_MAX_ROWS: i64 = 18;

/// A failing check, with enough data to re-evaluate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The subdiagram on `rows` fails dominance at prefix length `t`.
    Subset {
        rows: Vec<i64>,
        t: i64,
        rows_sum: i64,
        cols_sum: i64,
    },
    /// In `Y_k`, the top `w` rows hold fewer cells than the leftmost `w`
    /// columns.
    Tail {
        k: usize,
        w: i64,
        rows_sum: i64,
        cols_sum: i64,
    },
    /// `a_k < e_1 + ... + e_k`.
    RowCount { k: usize, a_k: i64, rows: i64 },
    /// `sr(j,k) < sc(j,k)` in the case `se(i,k) < a_j <= se(i-1,k)`.
    Inequality {
        k: usize,
        j: usize,
        i: usize,
        lhs: i64,
        rhs: i64,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Subset {
                rows,
                t,
                rows_sum,
                cols_sum,
            } => write!(
                f,
                "rows {rows:?}: top {t} rows hold {rows_sum} < {cols_sum} cells of the leftmost {t} columns"
            ),
            Witness::Tail {
                k,
                w,
                rows_sum,
                cols_sum,
            } => write!(
                f,
                "tail Y_{k}: top {w} rows hold {rows_sum} < {cols_sum} cells of the leftmost {w} columns"
            ),
            Witness::RowCount { k, a_k, rows } => {
                write!(f, "tail Y_{k} has {rows} rows but a_{k} = {a_k}")
            }
            Witness::Inequality { k, j, i, lhs, rhs } => {
                write!(f, "(k={k}, j={j}, i={i}): {lhs} < {rhs}")
            }
        }
    }
}

impl Witness {
    /// Recomputes the check from `y` and confirms it is strictly violated.
    pub fn is_violation_of(&self, y: &YoungDiagram) -> bool {
        match self {
            Witness::Subset { rows, t, .. } => {
                let Ok(sub) = YoungDiagram::from_row_lengths(rows) else {
                    return false;
                };
                let mut pool = y.rows_desc();
                for r in rows {
                    match pool.iter().position(|x| x == r) {
                        Some(at) => {
                            pool.remove(at);
                        }
                        None => return false,
                    }
                }
                sub.top_rows_sum(*t) < sub.conjugate().top_rows_sum(*t)
            }
            Witness::Tail { k, w, .. } => match y.block_tail(*k) {
                Ok(tail) => tail.top_rows_sum(*w) < tail.conjugate().top_rows_sum(*w),
                Err(_) => false,
            },
            Witness::RowCount { k, .. } => match y.se(1, *k) {
                Ok(rows) => y.a(*k) < rows,
                Err(_) => false,
            },
            Witness::Inequality { k, j, i, .. } => {
                if *k > y.p() || *j >= *k || *i < 2 || *i > *k {
                    return false;
                }
                y.straddled_block(*j, *k) == Some(*i)
                    && y.sr_partial(*i, *j, *k) < y.sc(*j, *k).unwrap_or(i64::MIN)
            }
        }
    }
}

/// Why an inequality instance was not evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// `a_j <= e_k`: follows from the row-count condition for `k`.
    ImpliedByRowCount,
    /// `se(1,k) <= a_j`: both sides count the whole tail.
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedCheck {
    pub k: usize,
    pub j: usize,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidenessReport {
    pub wide: bool,
    pub witness: Option<Witness>,
    /// Number of inequality instances actually evaluated.
    pub checks: usize,
    pub skipped: Vec<SkippedCheck>,
}

impl WidenessReport {
    fn pass(checks: usize, skipped: Vec<SkippedCheck>) -> Self {
        WidenessReport {
            wide: true,
            witness: None,
            checks,
            skipped,
        }
    }

    fn fail(witness: Witness, checks: usize, skipped: Vec<SkippedCheck>) -> Self {
        WidenessReport {
            wide: false,
            witness: Some(witness),
            checks,
            skipped,
        }
    }
}

/// Decision procedure selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    Tails,
    Fast,
}

pub fn is_wide_with(y: &YoungDiagram, method: Method) -> Result<WidenessReport> {
    match method {
        Method::Oracle => is_wide_oracle(y),
        Method::Tails => Ok(is_wide_tails(y)),
        Method::Fast => Ok(is_wide_fast(y)),
    }
}

/// Shorthand for the fast decider's verdict.
pub fn is_wide(y: &YoungDiagram) -> bool {
    is_wide_fast(y).wide
}

/// Checks every row subset against its conjugate.
///
/// Rows of equal length are interchangeable, so subsets are enumerated as
/// sub-multisets: one count `0..=e_i` per block.
pub fn is_wide_oracle(y: &YoungDiagram) -> Result<WidenessReport> {
    let m = y.rows();
    if m > ORACLE_MAX_ROWS {
        return Err(Error::ScaleLimit {
            what: "row count",
            limit: ORACLE_MAX_ROWS as u64,
            actual: m as u64,
        });
    }
    let p = y.p();
    let mut counts = vec![0i64; p];
    let mut checks = 0;
    let mut sub: Vec<(i64, i64)> = Vec::with_capacity(p);
    let mut conj: Vec<(i64, i64)> = Vec::with_capacity(p);
    loop {
        // advance the mixed-radix counter; the empty subset is skipped
        let mut pos = 0;
        while pos < p && counts[pos] == y.e(pos + 1) {
            counts[pos] = 0;
            pos += 1;
        }
        if pos == p {
            break;
        }
        counts[pos] += 1;

        sub.clear();
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                sub.push((y.a(i + 1), c));
            }
        }
        conjugate_blocks(&sub, &mut conj);
        checks += 1;
        if let Some((t, rows_sum, cols_sum)) = first_domination_failure(&sub, &conj) {
            let rows = sub
                .iter()
                .rev()
                .flat_map(|&(len, c)| std::iter::repeat_n(len, c as usize))
                .collect();
            return Ok(WidenessReport::fail(
                Witness::Subset {
                    rows,
                    t,
                    rows_sum,
                    cols_sum,
                },
                checks,
                Vec::new(),
            ));
        }
    }
    Ok(WidenessReport::pass(checks, Vec::new()))
}

fn conjugate_blocks(blocks: &[(i64, i64)], out: &mut Vec<(i64, i64)>) {
    out.clear();
    let mut suffix = 0;
    let prev_len = |i: usize| if i == 0 { 0 } else { blocks[i - 1].0 };
    for i in (0..blocks.len()).rev() {
        suffix += blocks[i].1;
        out.push((suffix, blocks[i].0 - prev_len(i)));
    }
}

fn top_sum(blocks: &[(i64, i64)], t: i64) -> i64 {
    let mut left = t;
    let mut sum = 0;
    for &(len, mult) in blocks.iter().rev() {
        if left == 0 {
            break;
        }
        let take = left.min(mult);
        sum += take * len;
        left -= take;
    }
    sum
}

/// First prefix length where `lhs` fails to dominate `rhs`; both are
/// ascending block lists.
fn first_domination_failure(lhs: &[(i64, i64)], rhs: &[(i64, i64)]) -> Option<(i64, i64, i64)> {
    let mut points: Vec<i64> = Vec::with_capacity(lhs.len() + rhs.len());
    for blocks in [lhs, rhs] {
        let mut acc = 0;
        for &(_, mult) in blocks.iter().rev() {
            acc += mult;
            points.push(acc);
        }
    }
    points.sort_unstable();
    // both sides are linear between breakpoints, so a failure shows at a
    // breakpoint; the first failing prefix lies just after the previous one
    let mut prev = 0;
    for t in points {
        if top_sum(lhs, t) < top_sum(rhs, t) {
            return (prev + 1..=t).find_map(|u| {
                let (l, r) = (top_sum(lhs, u), top_sum(rhs, u));
                (l < r).then_some((u, l, r))
            });
        }
        prev = t;
    }
    None
}

/// Checks, for each block `k` and each `w` in `{a_1, ..., a_k}`, that the
/// top `w` rows of `Y_k` dominate its leftmost `w` columns.
pub fn is_wide_tails(y: &YoungDiagram) -> WidenessReport {
    let mut checks = 0;
    for k in 1..=y.p() {
        let tail = y.block_tail(k).expect("k in range");
        let conj = tail.conjugate();
        for j in 1..=k {
            let w = y.a(j);
            checks += 1;
            let rows_sum = tail.top_rows_sum(w);
            let cols_sum = conj.top_rows_sum(w);
            if rows_sum < cols_sum {
                return WidenessReport::fail(
                    Witness::Tail {
                        k,
                        w,
                        rows_sum,
                        cols_sum,
                    },
                    checks,
                    Vec::new(),
                );
            }
        }
    }
    WidenessReport::pass(checks, Vec::new())
}

/// The closed-form battery: `a_k >= e_1 + ... + e_k` for every `k`, then
/// `sr(j,k) >= sc(j,k)` for `j < k` whenever `a_j` falls strictly inside
/// the row range of `Y_k`. At most `p + p(p-1)` instances are evaluated.
pub fn is_wide_fast(y: &YoungDiagram) -> WidenessReport {
    let p = y.p();
    let mut checks = 0;
    let mut skipped = Vec::new();
    let mut rows = 0;
    for k in 1..=p {
        rows += y.e(k);
        checks += 1;
        if y.a(k) < rows {
            return WidenessReport::fail(
                Witness::RowCount {
                    k,
                    a_k: y.a(k),
                    rows,
                },
                checks,
                skipped,
            );
        }
    }
    for k in 2..=p {
        let tail_rows = y.se(1, k).expect("k in range");
        for j in 1..k {
            let aj = y.a(j);
            if aj <= y.e(k) {
                skipped.push(SkippedCheck {
                    k,
                    j,
                    reason: SkipReason::ImpliedByRowCount,
                });
                continue;
            }
            if tail_rows <= aj {
                skipped.push(SkippedCheck {
                    k,
                    j,
                    reason: SkipReason::Trivial,
                });
                continue;
            }
            let i = y
                .straddled_block(j, k)
                .expect("e_k < a_j < se(1,k) leaves a straddled block");
            checks += 1;
            let lhs = y.sr_partial(i, j, k);
            let rhs = y.sc(j, k).expect("j < k <= p");
            if lhs < rhs {
                return WidenessReport::fail(Witness::Inequality { k, j, i, lhs, rhs }, checks, skipped);
            }
        }
    }
    WidenessReport::pass(checks, skipped)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(rows: &[i64]) -> YoungDiagram {
        YoungDiagram::from_row_lengths(rows).unwrap()
    }

    fn all(d: &YoungDiagram) -> [WidenessReport; 3] {
        [is_wide_oracle(d).unwrap(), is_wide_tails(d), is_wide_fast(d)]
    }

    #[test]
    fn known_verdicts() {
        for r in all(&y(&[5, 4, 3, 3])) {
            assert!(r.wide);
        }
        for r in all(&y(&[3, 2, 1])) {
            assert!(r.wide);
        }
        for r in all(&y(&[2, 2, 2])) {
            assert!(!r.wide);
        }
    }

    #[test]
    fn full_set_witness_for_three_rows_of_two() {
        let r = is_wide_oracle(&y(&[2, 2, 2])).unwrap();
        // a single row of length 2 dominates its column pair; two rows are
        // self-conjugate; all three rows fail
        assert_eq!(
            r.witness,
            Some(Witness::Subset {
                rows: vec![2, 2, 2],
                t: 1,
                rows_sum: 2,
                cols_sum: 3
            })
        );
        let fast = is_wide_fast(&y(&[2, 2, 2]));
        assert_eq!(
            fast.witness,
            Some(Witness::RowCount {
                k: 1,
                a_k: 2,
                rows: 3
            })
        );
    }

    #[test]
    fn staircase_equality_case() {
        let d = y(&[3, 2, 1]);
        assert_eq!(d.straddled_block(2, 3), Some(3));
        assert_eq!(d.sr_partial(3, 2, 3), 5);
        assert_eq!(d.sc(2, 3).unwrap(), 5);
        assert!(is_wide_fast(&d).wide);
    }

    #[test]
    fn single_block() {
        for a in 1..8 {
            for e in 1..10 {
                let d = YoungDiagram::from_blocks(&[(a, e)]).unwrap();
                assert_eq!(is_wide_fast(&d).wide, e <= a, "({a},{e})");
            }
        }
    }

    #[test]
    fn oracle_scale_gate() {
        let d = y(&[20; 19]);
        assert!(matches!(is_wide_oracle(&d), Err(Error::ScaleLimit { .. })));
    }

    #[test]
    fn witnesses_reevaluate() {
        for d in [y(&[2, 2, 2]), y(&[3, 3, 3, 1]), y(&[4, 4, 2, 2, 2]), y(&[5, 2, 2, 2])] {
            for r in all(&d) {
                assert!(!r.wide, "{d}");
                assert!(r.witness.unwrap().is_violation_of(&d), "{d}");
            }
        }
    }

    #[test]
    fn skips_are_logged() {
        // (5,4,3,3): k=2, j=1: a_1 = 3 > e_2 = 1 and se(1,2) = 3 <= 3 -> trivial
        let r = is_wide_fast(&y(&[5, 4, 3, 3]));
        assert!(r.skipped.contains(&SkippedCheck {
            k: 2,
            j: 1,
            reason: SkipReason::Trivial
        }));
        let d = y(&[6, 6, 6, 6, 1]);
        let r = is_wide_fast(&d);
        assert!(r.skipped.contains(&SkippedCheck {
            k: 2,
            j: 1,
            reason: SkipReason::ImpliedByRowCount
        }));
    }
}
