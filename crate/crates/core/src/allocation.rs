//! Block allocations: how many symbols of each symbol block land in each
//! (row block, column block) rectangle of a diagram.
//!
//! For a diagram with blocks `(a_i, e_i)` and column widths `b_i`, an
//! allocation is a table of nonnegative integers `z[i][j][k]`, defined for
//! `1 <= j, k <= i <= p`, with
//!
//! * `sum_k z[i][j][k] == e_i * b_j` (each rectangle is full),
//! * `sum_j z[i][j][k] == e_i * b_k` (each row holds each symbol block once),
//! * `sum_{i >= max(j,k)} z[i][j][k] <= b_j * b_k` (a column block can hold
//!   each symbol at most once per column).
//!
//! [`allocate`] builds one constructively for every wide diagram with at
//! most three distinct row lengths.

pub mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};
use crate::filling::LatinFilling;
use crate::interval::IntInterval;
use crate::wideness::is_wide_fast;

/// Dense allocation table. Block indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Allocation {
    p: usize,
    z: Vec<i64>,
}

impl Allocation {
    pub fn zeros(p: usize) -> Self {
        Allocation {
            p,
            z: vec![0; p * p * p],
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(
            (1..=self.p).contains(&i) && (1..=self.p).contains(&j) && (1..=self.p).contains(&k),
            "index ({i},{j},{k}) outside 1..={}",
            self.p
        );
        ((i - 1) * self.p + (j - 1)) * self.p + (k - 1)
    }

    /// `z[i][j][k]`; zero outside the domain `j, k <= i`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.z[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: i64) {
        let at = self.index(i, j, k);
        self.z[at] = value;
    }

    /// Entries `(i, j, k, z)` over the domain `j, k <= i`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, i64)> + '_ {
        (1..=self.p).flat_map(move |i| {
            (1..=i).flat_map(move |j| (1..=i).map(move |k| (i, j, k, self.get(i, j, k))))
        })
    }

    /// Keeps blocks `1..=p`.
    pub fn truncate(&self, p: usize) -> Allocation {
        let mut out = Allocation::zeros(p);
        for (i, j, k, v) in self.entries().filter(|e| e.0 <= p) {
            out.set(i, j, k, v);
        }
        out
    }
}

/// First failed allocation constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AllocationViolation {
    BlockCountMismatch { diagram: usize, allocation: usize },
    /// Nonzero entry with `j > i` or `k > i`.
    OutsideDomain { i: usize, j: usize, k: usize, value: i64 },
    Negative { i: usize, j: usize, k: usize, value: i64 },
    /// `sum_k z[i][j][k] != e_i b_j`.
    RowSum { i: usize, j: usize, expected: i64, actual: i64 },
    /// `sum_j z[i][j][k] != e_i b_k`.
    ColumnSum { i: usize, k: usize, expected: i64, actual: i64 },
    /// `sum_i z[i][j][k] > b_j b_k`.
    Capacity { j: usize, k: usize, total: i64, capacity: i64 },
}

impl fmt::Display for AllocationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AllocationViolation::*;
        match self {
            BlockCountMismatch {
                diagram,
                allocation,
            } => write!(
                f,
                "diagram has {diagram} blocks, allocation has {allocation}"
            ),
            OutsideDomain { i, j, k, value } => {
                write!(f, "z[{i},{j},{k}] = {value} lies outside j,k <= i")
            }
            Negative { i, j, k, value } => write!(f, "z[{i},{j},{k}] = {value} < 0"),
            RowSum {
                i,
                j,
                expected,
                actual,
            } => write!(
                f,
                "sum over k of z[{i},{j},k] = {actual}, expected {expected}"
            ),
            ColumnSum {
                i,
                k,
                expected,
                actual,
            } => write!(
                f,
                "sum over j of z[{i},j,{k}] = {actual}, expected {expected}"
            ),
            Capacity {
                j,
                k,
                total,
                capacity,
            } => write!(
                f,
                "sum over i of z[i,{j},{k}] = {total} exceeds {capacity}"
            ),
        }
    }
}

pub fn verify_allocation(y: &YoungDiagram, z: &Allocation) -> Result<(), AllocationViolation> {
    use AllocationViolation::*;
    let p = y.p();
    if z.p() != p {
        return Err(BlockCountMismatch {
            diagram: p,
            allocation: z.p(),
        });
    }
    for i in 1..=p {
        for j in 1..=p {
            for k in 1..=p {
                let value = z.get(i, j, k);
                if (j > i || k > i) && value != 0 {
                    return Err(OutsideDomain { i, j, k, value });
                }
                if value < 0 {
                    return Err(Negative { i, j, k, value });
                }
            }
        }
    }
    for i in 1..=p {
        for j in 1..=i {
            let actual: i64 = (1..=i).map(|k| z.get(i, j, k)).sum();
            let expected = y.e(i) * y.b(j);
            if actual != expected {
                return Err(RowSum {
                    i,
                    j,
                    expected,
                    actual,
                });
            }
        }
        for k in 1..=i {
            let actual: i64 = (1..=i).map(|j| z.get(i, j, k)).sum();
            let expected = y.e(i) * y.b(k);
            if actual != expected {
                return Err(ColumnSum {
                    i,
                    k,
                    expected,
                    actual,
                });
            }
        }
    }
    for j in 1..=p {
        for k in 1..=p {
            let total: i64 = (j.max(k)..=p).map(|i| z.get(i, j, k)).sum();
            let capacity = y.b(j) * y.b(k);
            if total > capacity {
                return Err(Capacity {
                    j,
                    k,
                    total,
                    capacity,
                });
            }
        }
    }
    Ok(())
}

/// Counts, for each row block `i`, column block `j` and symbol block `k`,
/// the symbols of block `k` inside the `(i, j)` rectangle of a filling.
pub fn allocation_from_filling(y: &YoungDiagram, f: &LatinFilling) -> Result<Allocation> {
    crate::filling::verify_filling(y, f).map_err(Error::InvalidFilling)?;
    let p = y.p();
    // block lookup for 1-based column / symbol positions 1..=a_p
    let mut block_at = vec![0usize; y.longest() as usize + 1];
    for j in 1..=p {
        for c in y.a(j - 1) + 1..=y.a(j) {
            block_at[c as usize] = j;
        }
    }
    let mut z = Allocation::zeros(p);
    for (r, row) in f.rows().iter().enumerate() {
        let i = y.block_of_row(r as i64 + 1)?;
        for (c, &s) in row.iter().enumerate() {
            let (j, k) = (block_at[c + 1], block_at[s as usize]);
            let at = z.index(i, j, k);
            z.z[at] += 1;
        }
    }
    verify_allocation(y, &z).map_err(|v| Error::internal(format!("counted allocation invalid: {v}")))?;
    Ok(z)
}

fn require_wide(y: &YoungDiagram) -> Result<()> {
    let report = is_wide_fast(y);
    match report.witness {
        Some(w) => Err(Error::NotWide(w)),
        None => Ok(()),
    }
}

/// The feasible range `I_x` for `x = z[2][1][1]` given the two lowest
/// blocks, without a wideness check.
pub fn x_interval(y: &YoungDiagram) -> IntInterval {
    let (a1, e1, e2, b2) = (y.a(1), y.e(1), y.e(2), y.b(2));
    IntInterval::new(
        0.max(e2 * (a1 - b2)).max(a1 * (e2 - b2)),
        (a1 * e2).min(a1 * (a1 - e1)).min(a1 * e2 - b2 * (e2 - b2)),
    )
}

/// Picks the smallest admissible `x = z[2][1][1]`, by which of `a_1`, `e_2`,
/// `b_2` is largest.
pub fn choose_x(y: &YoungDiagram) -> Result<(i64, IntInterval)> {
    if y.p() < 2 {
        return Err(Error::Unsupported(
            "choosing x needs at least two row lengths".into(),
        ));
    }
    require_wide(y)?;
    let (a1, e2, b2) = (y.a(1), y.e(2), y.b(2));
    let x = if b2 >= a1 && b2 >= e2 {
        0
    } else if a1 >= e2 {
        e2 * (a1 - b2)
    } else {
        a1 * (e2 - b2)
    };
    let ix = x_interval(y);
    if ix.is_empty() || ix.lo != x {
        return Err(Error::internal(format!("x = {x} is not the left end of I_x = {ix}")));
    }
    Ok((x, ix))
}

/// Builds an allocation for a wide diagram with at most three distinct row
/// lengths.
pub fn allocate(y: &YoungDiagram) -> Result<Allocation> {
    match y.p() {
        1 => {
            require_wide(y)?;
            let mut z = Allocation::zeros(1);
            z.set(1, 1, 1, y.a(1) * y.e(1));
            Ok(z)
        }
        2 => {
            let (x, _) = choose_x(y)?;
            let z = two_block(y, x);
            verify_allocation(y, &z).map_err(|v| Error::internal(v.to_string()))?;
            Ok(z)
        }
        3 => allocate_three_blocks(y).map(|(z, _)| z),
        p => Err(Error::Unsupported(format!(
            "constructive allocation handles at most 3 row lengths, got {p}"
        ))),
    }
}

/// The two-block allocation with `z[2][1][1] = x`, for any `x` in
/// [`x_interval`].
pub fn allocation_with_x(y: &YoungDiagram, x: i64) -> Result<Allocation> {
    if y.p() != 2 {
        return Err(Error::Unsupported(format!(
            "x determines allocations of 2 row lengths, got {}",
            y.p()
        )));
    }
    let z = two_block(y, x);
    verify_allocation(y, &z).map_err(Error::InvalidAllocation)?;
    Ok(z)
}

/// Lower two blocks for a given `x`.
fn two_block(y: &YoungDiagram, x: i64) -> Allocation {
    let (a1, e1, e2, b2) = (y.a(1), y.e(1), y.e(2), y.b(2));
    let mut z = Allocation::zeros(y.p());
    z.set(1, 1, 1, a1 * e1);
    z.set(2, 1, 1, x);
    z.set(2, 1, 2, a1 * e2 - x);
    z.set(2, 2, 1, a1 * e2 - x);
    z.set(2, 2, 2, b2 * e2 - a1 * e2 + x);
    z
}

/// Every interval used when extending to the third block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeBlockIntervals {
    pub x: i64,
    pub x_range: IntInterval,
    /// Range for `u = z[3][1][1]`.
    pub u: IntInterval,
    /// Shared range for `v = z[3][1][2]` and `y = z[3][2][1]`.
    pub y: IntInterval,
    /// Range for `w = z[3][2][2]`.
    pub w: IntInterval,
    /// Admissible `u + y`.
    pub uy: IntInterval,
    /// Admissible `y + w`.
    pub yw: IntInterval,
    pub j1: IntInterval,
    pub j2: IntInterval,
    /// Admissible `u + v + y + w`.
    pub total: IntInterval,
}

pub fn three_block_intervals(y: &YoungDiagram) -> Result<ThreeBlockIntervals> {
    if y.p() != 3 {
        return Err(Error::Unsupported(format!("expected 3 row lengths, got {}", y.p())));
    }
    let (x, x_range) = choose_x(y)?;
    let (a1, a2, e1, e2, e3, b2, b3) = (y.a(1), y.a(2), y.e(1), y.e(2), y.e(3), y.b(2), y.b(3));
    let u = IntInterval::new(0, a1 * (a1 - e1) - x);
    let yi = IntInterval::new(0, x - a1 * (e2 - b2));
    let w = IntInterval::new(0, a1 * e2 - b2 * (e2 - b2) - x);
    let uy = IntInterval::new(a1 * (e3 - b3), a1 * e3).intersect(&(u + yi));
    let yw = IntInterval::new(b2 * (e3 - b3), b2 * e3).intersect(&(yi + w));
    let j1 = uy + yw;
    let j2 = IntInterval::new((a2 - b3) * e3, (a2 - b3) * e3 + b3 * b3);
    let total = j1.intersect(&j2);
    let named = [
        ("I_u", u),
        ("I_y", yi),
        ("I_w", w),
        ("I_u+y", uy),
        ("I_y+w", yw),
        ("I_u+v+y+w", total),
    ];
    if let Some((name, iv)) = named.iter().find(|(_, iv)| iv.is_empty()) {
        return Err(Error::internal(format!("{name} = {iv} is empty for wide {y}")));
    }
    Ok(ThreeBlockIntervals {
        x,
        x_range,
        u,
        y: yi,
        w,
        uy,
        yw,
        j1,
        j2,
        total,
    })
}

/// Unit exchange on `(u, y, w)`, with `v` tracking `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exchange {
    /// `y-1, u+1, w+1`: keeps `u+y`, `y+w` and the total.
    YToUW,
    /// `y-1, u+1`: keeps `u+y`, lowers `y+w` and the total.
    YToU,
    /// `u+1`: raises `u+y` and the total.
    RaiseU,
    /// `y+1, u-1, w-1`: keeps `u+y`, `y+w` and the total.
    UWToY,
    /// `u-1`: lowers `u+y` and the total.
    LowerU,
    /// `y+1, u-1`: keeps `u+y`, raises `y+w` and the total.
    UToY,
}

impl Exchange {
    /// `(du, dy, dw)`.
    pub fn delta(self) -> (i64, i64, i64) {
        match self {
            Exchange::YToUW => (1, -1, 1),
            Exchange::YToU => (1, -1, 0),
            Exchange::RaiseU => (1, 0, 0),
            Exchange::UWToY => (-1, 1, -1),
            Exchange::LowerU => (-1, 0, 0),
            Exchange::UToY => (-1, 1, 0),
        }
    }
}

/// The choice of `(u, y, w)` and how it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeBlockTrace {
    pub intervals: ThreeBlockIntervals,
    /// Chosen total `s = u + v + y + w` before any exchange.
    pub s: i64,
    pub s1: i64,
    pub s2: i64,
    /// `(u, y, w)` before the exchange search.
    pub start: (i64, i64, i64),
    pub moves: Vec<Exchange>,
    pub u: i64,
    pub y: i64,
    pub w: i64,
}

#[derive(Clone, Copy)]
struct Uyw {
    u: i64,
    y: i64,
    w: i64,
}

impl Uyw {
    fn sums(self) -> (i64, i64, i64) {
        let s1 = self.u + self.y;
        let s2 = self.y + self.w;
        (s1 + s2, s1, s2)
    }

    fn apply(self, m: Exchange) -> Uyw {
        let (du, dy, dw) = m.delta();
        Uyw {
            u: self.u + du,
            y: self.y + dy,
            w: self.w + dw,
        }
    }
}

impl ThreeBlockIntervals {
    /// Everything except `u`'s own range.
    fn admits(&self, c: Uyw) -> bool {
        let (s, s1, s2) = c.sums();
        self.y.contains(c.y)
            && self.w.contains(c.w)
            && self.uy.contains(s1)
            && self.yw.contains(s2)
            && self.total.contains(s)
    }
}

/// Builds the allocation for three row lengths with `v = y`, returning the
/// construction trace.
pub fn allocate_three_blocks(y: &YoungDiagram) -> Result<(Allocation, ThreeBlockTrace)> {
    let iv = three_block_intervals(y)?;

    let s = iv.total.lo;
    let s1 = iv.uy.clamp(s - iv.yw.lo);
    let s2 = s - s1;
    if !iv.yw.contains(s2) {
        return Err(Error::internal(format!("split {s} = {s1} + {s2} misses {}", iv.yw)));
    }
    let yv = iv.y.clamp(s2 - iv.w.lo);
    let mut cur = Uyw {
        u: s1 - yv,
        y: yv,
        w: s2 - yv,
    };
    if !iv.admits(cur) {
        return Err(Error::internal(format!("split of {s2} misses I_y or I_w")));
    }
    let start = (cur.u, cur.y, cur.w);

    let budget = 4 * y.longest() * y.longest();
    let mut moves = Vec::new();
    while !iv.u.contains(cur.u) {
        if moves.len() as i64 >= budget {
            return Err(Error::internal(format!(
                "exchange search exceeded {budget} steps on {y}"
            )));
        }
        let candidates: &[Exchange] = if cur.u < iv.u.lo {
            &[Exchange::YToUW, Exchange::YToU, Exchange::RaiseU]
        } else {
            &[Exchange::UWToY, Exchange::LowerU, Exchange::UToY]
        };
        let Some(&m) = candidates.iter().find(|&&m| iv.admits(cur.apply(m))) else {
            return Err(Error::internal(format!(
                "exchange search stuck at u={}, y={}, w={} on {y}",
                cur.u, cur.y, cur.w
            )));
        };
        cur = cur.apply(m);
        moves.push(m);
    }

    let (a1, a2, e3, b2, b3) = (y.a(1), y.a(2), y.e(3), y.b(2), y.b(3));
    let (u, v, yy, w) = (cur.u, cur.y, cur.y, cur.w);
    let mut z = two_block(y, iv.x);
    z.set(3, 1, 1, u);
    z.set(3, 1, 2, v);
    z.set(3, 2, 1, yy);
    z.set(3, 2, 2, w);
    z.set(3, 1, 3, a1 * e3 - u - v);
    z.set(3, 2, 3, b2 * e3 - yy - w);
    z.set(3, 3, 1, a1 * e3 - u - yy);
    z.set(3, 3, 2, b2 * e3 - v - w);
    z.set(3, 3, 3, (b3 - a2) * e3 + u + v + yy + w);
    verify_allocation(y, &z).map_err(|v| Error::internal(format!("{y}: {v}")))?;

    let trace = ThreeBlockTrace {
        intervals: iv,
        s,
        s1,
        s2,
        start,
        moves,
        u: cur.u,
        y: cur.y,
        w: cur.w,
    };
    Ok((z, trace))
}

/// Result of filling in the top block from its free entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    Extended(Allocation),
    Infeasible(AllocationViolation),
}

/// Extends an allocation of the lower `p-1` blocks by the top block whose
/// free entries `z[p][j][k]`, `j, k < p`, are given as a `(p-1) x (p-1)`
/// table. The remaining entries of the top block follow from the row and
/// column sums. No search is performed.
pub fn complete_top_block(
    y: &YoungDiagram,
    lower: &Allocation,
    top: &[Vec<i64>],
) -> Result<Completion> {
    let p = y.p();
    if lower.p() + 1 != p {
        return Err(Error::Index(format!(
            "lower allocation has {} blocks, diagram has {p}",
            lower.p()
        )));
    }
    if top.len() != p - 1 || top.iter().any(|r| r.len() != p - 1) {
        return Err(Error::Index(format!("top entries must be {0} x {0}", p - 1)));
    }
    let mut z = Allocation::zeros(p);
    for (i, j, k, v) in lower.entries() {
        z.set(i, j, k, v);
    }
    let ep = y.e(p);
    let mut inner = 0;
    for j in 1..p {
        for k in 1..p {
            z.set(p, j, k, top[j - 1][k - 1]);
            inner += top[j - 1][k - 1];
        }
    }
    for j in 1..p {
        let row: i64 = top[j - 1].iter().sum();
        z.set(p, j, p, y.b(j) * ep - row);
    }
    for k in 1..p {
        let col: i64 = top.iter().map(|r| r[k - 1]).sum();
        z.set(p, p, k, y.b(k) * ep - col);
    }
    z.set(p, p, p, (y.b(p) - y.a(p - 1)) * ep + inner);
    Ok(match verify_allocation(y, &z) {
        Ok(()) => Completion::Extended(z),
        Err(v) => Completion::Infeasible(v),
    })
}

/// Slack left in each (column block, symbol block) capacity after blocks
/// `1..=i`, for a three-block allocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualTable {
    /// `slack[i-1][j-1][k-1] = b_j b_k - sum_{l = max(j,k)}^{i} z[l][j][k]`.
    pub slack: [[[i64; 3]; 3]; 3],
    /// Total slack per column block after all three blocks.
    pub rho: [i64; 3],
}

impl ResidualTable {
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.slack[i - 1][j - 1][k - 1]
    }
}

/// Column-block slack predicted from the block profile alone:
/// `rho_j = b_j (a_3 - e_j - ... - e_3)`.
pub fn closed_form_rho(y: &YoungDiagram) -> [i64; 3] {
    let a3 = y.a(3);
    [
        y.a(1) * (a3 - y.e(1) - y.e(2) - y.e(3)),
        y.b(2) * (a3 - y.e(2) - y.e(3)),
        y.b(3) * (a3 - y.e(3)),
    ]
}

pub fn residuals(y: &YoungDiagram, z: &Allocation) -> Result<ResidualTable> {
    if y.p() != 3 {
        return Err(Error::Unsupported(format!(
            "residuals are defined for 3 row lengths, got {}",
            y.p()
        )));
    }
    verify_allocation(y, z).map_err(Error::InvalidAllocation)?;
    let mut slack = [[[0i64; 3]; 3]; 3];
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=3 {
                let used: i64 = (j.max(k)..=i).map(|l| z.get(l, j, k)).sum();
                slack[i - 1][j - 1][k - 1] = y.b(j) * y.b(k) - used;
            }
        }
    }
    let rho = [0, 1, 2].map(|j| slack[2][j].iter().sum::<i64>());
    if slack.iter().flatten().flatten().any(|&x| x < 0) {
        return Err(Error::internal("negative slack in a verified allocation"));
    }
    let expected = closed_form_rho(y);
    if rho != expected {
        return Err(Error::internal(format!(
            "column slack {rho:?} differs from closed form {expected:?}"
        )));
    }
    Ok(ResidualTable { slack, rho })
}

/// Wire format: `{"p":3,"z":{"1,1,1":6,"2,1,1":2,...}}`; omitted keys are 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AllocationJson {
    pub p: usize,
    pub z: BTreeMap<String, i64>,
}

impl From<&Allocation> for AllocationJson {
    fn from(a: &Allocation) -> Self {
        AllocationJson {
            p: a.p(),
            z: a
                .entries()
                .map(|(i, j, k, v)| (format!("{i},{j},{k}"), v))
                .collect(),
        }
    }
}

impl TryFrom<AllocationJson> for Allocation {
    type Error = Error;

    fn try_from(json: AllocationJson) -> Result<Self> {
        let mut a = Allocation::zeros(json.p);
        for (key, v) in json.z {
            let idx: Vec<usize> = key
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::invalid(format!("bad allocation key {key:?}")))?;
            match idx[..] {
                [i, j, k] if [i, j, k].iter().all(|&t| (1..=json.p).contains(&t)) => {
                    a.set(i, j, k, v)
                }
                _ => return Err(Error::Index(format!("allocation key {key:?}"))),
            }
        }
        Ok(a)
    }
}

impl Serialize for Allocation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AllocationJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Allocation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Allocation::try_from(AllocationJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(rows: &[i64]) -> YoungDiagram {
        YoungDiagram::from_row_lengths(rows).unwrap()
    }

    fn table(p: usize, entries: &[((usize, usize, usize), i64)]) -> Allocation {
        let mut z = Allocation::zeros(p);
        for &((i, j, k), v) in entries {
            z.set(i, j, k, v);
        }
        z
    }

    /// The extension of the good lower allocation of (4,3,3) to (5,4,3,3).
    fn full_5433() -> Allocation {
        table(
            3,
            &[
                ((1, 1, 1), 6),
                ((2, 1, 1), 2),
                ((2, 1, 2), 1),
                ((2, 2, 1), 1),
                ((3, 1, 1), 1),
                ((3, 1, 2), 1),
                ((3, 1, 3), 1),
                ((3, 2, 1), 1),
                ((3, 3, 1), 1),
            ],
        )
    }

    #[test]
    fn verifies_known_allocations() {
        assert_eq!(verify_allocation(&y(&[5, 4, 3, 3]), &full_5433()), Ok(()));
        let lower = table(
            2,
            &[((1, 1, 1), 6), ((2, 1, 1), 3), ((2, 2, 2), 1)],
        );
        assert_eq!(verify_allocation(&y(&[4, 3, 3]), &lower), Ok(()));
        let zero = Allocation::zeros(3);
        assert!(matches!(
            verify_allocation(&y(&[5, 4, 3, 3]), &zero),
            Err(AllocationViolation::RowSum { .. })
        ));
        assert!(matches!(
            verify_allocation(&y(&[5, 4]), &zero),
            Err(AllocationViolation::BlockCountMismatch { .. })
        ));
    }

    #[test]
    fn flags_capacity_and_sign() {
        let d = y(&[5, 4, 3, 3]);
        let mut z = full_5433();
        z.set(3, 1, 1, -1);
        assert!(matches!(
            verify_allocation(&d, &z),
            Err(AllocationViolation::Negative { .. })
        ));
        // x = 3 on the lower blocks overfills the (1,1) capacity once u = 1
        let mut z = full_5433();
        z.set(2, 1, 1, 3);
        z.set(2, 1, 2, 0);
        z.set(2, 2, 1, 0);
        z.set(2, 2, 2, 1);
        assert!(matches!(
            verify_allocation(&d, &z),
            Err(AllocationViolation::Capacity { j: 1, k: 1, .. })
        ));
        let mut z = full_5433();
        z.set(1, 2, 1, 1);
        assert!(matches!(
            verify_allocation(&d, &z),
            Err(AllocationViolation::OutsideDomain { .. })
        ));
    }

    #[test]
    fn x_choice() {
        let lower = y(&[4, 3, 3]);
        let (x, ix) = choose_x(&lower).unwrap();
        assert_eq!(x, 2);
        assert_eq!(ix.lo, 2);
        let z = allocate(&lower).unwrap();
        assert_eq!(z.get(2, 1, 2), 1);
        assert_eq!(z.get(2, 2, 1), 1);
        assert_eq!(z.get(2, 2, 2), 0);
        // b_2 largest: (5,1) has a_1 = 1, e_2 = 1, b_2 = 4
        assert_eq!(choose_x(&y(&[5, 1])).unwrap().0, 0);
        // e_2 largest: (4,4,4,1) has a_1 = 1, e_2 = 3, b_2 = 3 -> tie with b_2 gives 0
        assert_eq!(choose_x(&y(&[4, 4, 4, 1])).unwrap().0, 0);
        assert!(matches!(choose_x(&y(&[2, 2, 2, 1])), Err(Error::NotWide(_))));
        assert!(matches!(choose_x(&y(&[3])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn three_blocks_reach_the_known_5433_allocation() {
        let d = y(&[5, 4, 3, 3]);
        let (z, trace) = allocate_three_blocks(&d).unwrap();
        assert_eq!(z, full_5433());
        assert_eq!((trace.u, trace.y, trace.w), (1, 1, 0));
        assert_eq!(trace.intervals.total, IntInterval::new(3, 4));
        assert_eq!(trace.moves, [Exchange::UToY, Exchange::LowerU]);
    }

    #[test]
    fn single_block_is_forced() {
        let d = YoungDiagram::from_blocks(&[(5, 3)]).unwrap();
        let z = allocate(&d).unwrap();
        assert_eq!(z.get(1, 1, 1), 15);
        assert!(matches!(allocate(&y(&[2, 2, 2])), Err(Error::NotWide(_))));
        assert!(matches!(
            allocate(&y(&[10, 4, 3, 2, 1])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn top_block_completion() {
        let d = y(&[5, 4, 3, 3]);
        let good = full_5433().truncate(2);
        match complete_top_block(&d, &good, &[vec![1, 1], vec![1, 0]]).unwrap() {
            Completion::Extended(z) => assert_eq!(z, full_5433()),
            other => panic!("{other:?}"),
        }
        let bad = table(2, &[((1, 1, 1), 6), ((2, 1, 1), 3), ((2, 2, 2), 1)]);
        assert!(matches!(
            complete_top_block(&d, &bad, &[vec![0, 1], vec![1, 0]]).unwrap(),
            Completion::Infeasible(_)
        ));
        // two blocks from one: reproduces the forced x-formulas
        let two = y(&[4, 3, 3]);
        let one = table(1, &[((1, 1, 1), 6)]);
        match complete_top_block(&two, &one, &[vec![2]]).unwrap() {
            Completion::Extended(z) => assert_eq!(z, allocate(&two).unwrap()),
            other => panic!("{other:?}"),
        }
        assert!(complete_top_block(&d, &one, &[vec![0]]).is_err());
    }

    #[test]
    fn residuals_of_5433() {
        let d = y(&[5, 4, 3, 3]);
        let r = residuals(&d, &full_5433()).unwrap();
        assert_eq!(r.rho, [3, 3, 4]);
        assert_eq!(r.get(3, 1, 2), r.get(3, 2, 1));
        assert_eq!(r.get(3, 1, 3), r.get(3, 3, 1));
        let total_cap: i64 = (1..=3).map(|j| d.b(j) * d.a(3)).sum();
        let used: i64 = full_5433().entries().map(|e| e.3).sum();
        assert_eq!(r.rho.iter().sum::<i64>(), total_cap - used);
    }

    #[test]
    fn json_round_trip() {
        let z = full_5433();
        let text = serde_json::to_string(&z).unwrap();
        assert!(text.starts_with(r#"{"p":3,"z":{"1,1,1":6"#));
        let back: Allocation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z);
        let sparse: Allocation = serde_json::from_str(r#"{"p":2,"z":{"1,1,1":6,"2,1,1":3,"2,2,2":1}}"#).unwrap();
        assert_eq!(sparse.get(2, 1, 2), 0);
        assert!(serde_json::from_str::<Allocation>(r#"{"p":2,"z":{"3,1,1":1}}"#).is_err());
    }
}
