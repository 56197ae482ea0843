//! Outline rectangles: Latin squares with consecutive rows, columns and
//! symbols amalgamated into groups.
//!
//! An outline rectangle is an `m x m` matrix whose cells are multisets over
//! `m` symbol groups, together with a divisor `n`. With row totals `rho_i`,
//! column totals `c_j` and symbol totals `sigma_k` it must satisfy
//!
//! 1. `n` divides every `rho_i`, `c_j` and `sigma_k`;
//! 2. cell `(i, j)` holds `rho_i * c_j / n^2` symbols;
//! 3. row group `i` holds symbol `k` exactly `rho_i * sigma_k / n^2` times;
//! 4. column group `j` holds symbol `k` exactly `c_j * sigma_k / n^2` times.
//!
//! Reducing any Latin square gives one, and every outline rectangle is the
//! reduction of some Latin square. [`outline_to_latin`] finds such a square
//! by peeling single rows off row groups, then single columns off column
//! groups, each peel being a bounded transportation problem, and finally
//! splitting each symbol group by edge-colouring a regular bipartite graph.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::allocation::{verify_allocation, Allocation};
use crate::coloring::color_regular_bipartite;
use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};
use crate::filling::{verify_filling, LatinFilling};
use crate::flow::bounded_transport;

/// Largest Latin square order handled by reconstruction.
pub const MAX_SQUARE_ORDER: i64 = 2_000;

/// Amalgamated Latin square. Groups are 0-based here; the JSON form keys
/// symbol groups from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OutlineRectangle {
    m: usize,
    n: i64,
    /// `counts[(i * m + j) * m + k]`: copies of symbol group `k` in cell `(i, j)`.
    counts: Vec<i64>,
}

impl OutlineRectangle {
    pub fn new(m: usize, n: i64, counts: Vec<i64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("outline rectangle needs at least one group"));
        }
        if counts.len() != m * m * m {
            return Err(Error::invalid(format!(
                "expected {} counts for m = {m}, got {}",
                m * m * m,
                counts.len()
            )));
        }
        if let Some(c) = counts.iter().find(|&&c| c < 0) {
            return Err(Error::invalid(format!("negative symbol count {c}")));
        }
        Ok(OutlineRectangle { m, n, counts })
    }

    /// Builds from nested `cells[i][j][k]`.
    pub fn from_cells(n: i64, cells: &[Vec<Vec<i64>>]) -> Result<Self> {
        let m = cells.len();
        let mut counts = Vec::with_capacity(m * m * m);
        for row in cells {
            if row.len() != m {
                return Err(Error::invalid("outline rows must have m cells"));
            }
            for cell in row {
                if cell.len() != m {
                    return Err(Error::invalid("outline cells must have m symbol counts"));
                }
                counts.extend_from_slice(cell);
            }
        }
        OutlineRectangle::new(m, n, counts)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn count(&self, i: usize, j: usize, k: usize) -> i64 {
        self.counts[(i * self.m + j) * self.m + k]
    }

    /// Symbol counts of cell `(i, j)`.
    pub fn cell(&self, i: usize, j: usize) -> &[i64] {
        let at = (i * self.m + j) * self.m;
        &self.counts[at..at + self.m]
    }

    pub fn cell_size(&self, i: usize, j: usize) -> i64 {
        self.cell(i, j).iter().sum()
    }

    pub fn row_total(&self, i: usize) -> i64 {
        (0..self.m).map(|j| self.cell_size(i, j)).sum()
    }

    pub fn col_total(&self, j: usize) -> i64 {
        (0..self.m).map(|i| self.cell_size(i, j)).sum()
    }

    pub fn symbol_total(&self, k: usize) -> i64 {
        (0..self.m)
            .flat_map(|i| (0..self.m).map(move |j| (i, j)))
            .map(|(i, j)| self.count(i, j, k))
            .sum()
    }

    pub fn row_totals(&self) -> Vec<i64> {
        (0..self.m).map(|i| self.row_total(i)).collect()
    }

    pub fn col_totals(&self) -> Vec<i64> {
        (0..self.m).map(|j| self.col_total(j)).collect()
    }

    pub fn symbol_totals(&self) -> Vec<i64> {
        (0..self.m).map(|k| self.symbol_total(k)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct OutlineJson {
    m: usize,
    n: i64,
    cells: Vec<Vec<BTreeMap<String, i64>>>,
}

impl Serialize for OutlineRectangle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.m;
        let cells = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        self.cell(i, j)
                            .iter()
                            .enumerate()
                            .map(|(k, &c)| ((k + 1).to_string(), c))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        OutlineJson { m, n: self.n, cells }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OutlineRectangle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = OutlineJson::deserialize(d)?;
        let m = json.m;
        if json.cells.len() != m || json.cells.iter().any(|r| r.len() != m) {
            return Err(D::Error::custom(format!("cells must be {m} x {m}")));
        }
        let mut counts = vec![0i64; m * m * m];
        for (i, row) in json.cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                for (key, &c) in cell {
                    let k: usize = key
                        .parse()
                        .ok()
                        .filter(|k| (1..=m).contains(k))
                        .ok_or_else(|| D::Error::custom(format!("bad symbol key {key:?}")))?;
                    counts[(i * m + j) * m + k - 1] = c;
                }
            }
        }
        OutlineRectangle::new(m, json.n, counts).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Row,
    Column,
    Symbol,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
            Axis::Symbol => "symbol",
        })
    }
}

/// First failed condition of an outline rectangle. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutlineViolation {
    NonPositiveDivisor { n: i64 },
    /// Condition 2.
    CellSize { row: usize, col: usize, size: i64, row_total: i64, col_total: i64 },
    /// Condition 3.
    RowSymbol { row: usize, symbol: usize, count: i64, row_total: i64, symbol_total: i64 },
    /// Condition 4.
    ColumnSymbol { col: usize, symbol: usize, count: i64, col_total: i64, symbol_total: i64 },
    /// Condition 1.
    NotDivisible { axis: Axis, index: usize, total: i64 },
    GrandTotal { axis: Axis, total: i64, expected: i64 },
}

impl OutlineViolation {
    /// Number of the failed condition, 1 to 4; 0 for structural failures.
    pub fn condition(&self) -> u8 {
        match self {
            OutlineViolation::NotDivisible { .. } => 1,
            OutlineViolation::CellSize { .. } => 2,
            OutlineViolation::RowSymbol { .. } => 3,
            OutlineViolation::ColumnSymbol { .. } => 4,
            OutlineViolation::NonPositiveDivisor { .. } | OutlineViolation::GrandTotal { .. } => 0,
        }
    }
}

impl fmt::Display for OutlineViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutlineViolation::NonPositiveDivisor { n } => write!(f, "divisor n = {n} is not positive"),
            OutlineViolation::CellSize {
                row,
                col,
                size,
                row_total,
                col_total,
            } => write!(
                f,
                "cell ({row}, {col}) has {size} symbols but row total {row_total} and column total {col_total} call for {row_total}*{col_total}/n^2"
            ),
            OutlineViolation::RowSymbol {
                row,
                symbol,
                count,
                row_total,
                symbol_total,
            } => write!(
                f,
                "row group {row} holds symbol {symbol} {count} times, expected {row_total}*{symbol_total}/n^2"
            ),
            OutlineViolation::ColumnSymbol {
                col,
                symbol,
                count,
                col_total,
                symbol_total,
            } => write!(
                f,
                "column group {col} holds symbol {symbol} {count} times, expected {col_total}*{symbol_total}/n^2"
            ),
            OutlineViolation::NotDivisible { axis, index, total } => {
                write!(f, "{axis} total {total} of group {index} is not divisible by n")
            }
            OutlineViolation::GrandTotal {
                axis,
                total,
                expected,
            } => write!(f, "{axis} totals sum to {total}, expected n^2 = {expected}"),
        }
    }
}

/// Checks the four outline conditions plus the grand totals. The
/// proportionality conditions are tested first, by cross-multiplication,
/// so a perturbed cell is reported where it sits.
#[allow(clippy::needless_range_loop)]
pub fn verify_outline(c: &OutlineRectangle) -> Result<(), OutlineViolation> {
    let n = c.n;
    if n <= 0 {
        return Err(OutlineViolation::NonPositiveDivisor { n });
    }
    let n2 = (n as i128) * (n as i128);
    let m = c.m;
    let (rho, col, sigma) = (c.row_totals(), c.col_totals(), c.symbol_totals());
    for i in 0..m {
        for j in 0..m {
            let size = c.cell_size(i, j);
            if size as i128 * n2 != rho[i] as i128 * col[j] as i128 {
                return Err(OutlineViolation::CellSize {
                    row: i,
                    col: j,
                    size,
                    row_total: rho[i],
                    col_total: col[j],
                });
            }
        }
    }
    for i in 0..m {
        for k in 0..m {
            let count: i64 = (0..m).map(|j| c.count(i, j, k)).sum();
            if count as i128 * n2 != rho[i] as i128 * sigma[k] as i128 {
                return Err(OutlineViolation::RowSymbol {
                    row: i,
                    symbol: k,
                    count,
                    row_total: rho[i],
                    symbol_total: sigma[k],
                });
            }
        }
    }
    for j in 0..m {
        for k in 0..m {
            let count: i64 = (0..m).map(|i| c.count(i, j, k)).sum();
            if count as i128 * n2 != col[j] as i128 * sigma[k] as i128 {
                return Err(OutlineViolation::ColumnSymbol {
                    col: j,
                    symbol: k,
                    count,
                    col_total: col[j],
                    symbol_total: sigma[k],
                });
            }
        }
    }
    for (axis, totals) in [(Axis::Row, &rho), (Axis::Column, &col), (Axis::Symbol, &sigma)] {
        if let Some(index) = totals.iter().position(|t| t % n != 0) {
            return Err(OutlineViolation::NotDivisible {
                axis,
                index,
                total: totals[index],
            });
        }
    }
    for (axis, totals) in [(Axis::Row, &rho), (Axis::Column, &col), (Axis::Symbol, &sigma)] {
        let total: i64 = totals.iter().sum();
        if total as i128 != n2 {
            return Err(OutlineViolation::GrandTotal {
                axis,
                total,
                expected: (n * n),
            });
        }
    }
    Ok(())
}

/// Group sizes for rows, columns and symbols. All three have the same
/// number of groups and the same sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionPartition {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub symbols: Vec<i64>,
}

impl ReductionPartition {
    pub fn new(rows: Vec<i64>, cols: Vec<i64>, symbols: Vec<i64>) -> Result<Self> {
        let part = ReductionPartition { rows, cols, symbols };
        part.validate()?;
        Ok(part)
    }

    /// The partition with every group of size one.
    pub fn discrete(n: usize) -> Self {
        ReductionPartition {
            rows: vec![1; n],
            cols: vec![1; n],
            symbols: vec![1; n],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.rows.len();
        if m == 0 || self.cols.len() != m || self.symbols.len() != m {
            return Err(Error::invalid(
                "row, column and symbol partitions need the same positive number of parts",
            ));
        }
        let parts = [&self.rows, &self.cols, &self.symbols];
        if parts.iter().any(|p| p.iter().any(|&x| x <= 0)) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        let n = self.order();
        if parts.iter().any(|p| p.iter().sum::<i64>() != n) {
            return Err(Error::invalid("row, column and symbol partitions must have the same sum"));
        }
        Ok(())
    }

    pub fn groups(&self) -> usize {
        self.rows.len()
    }

    /// Order of the Latin square being partitioned.
    pub fn order(&self) -> i64 {
        self.rows.iter().sum()
    }
}

/// Group index of each position `0..sum(parts)`.
fn group_of(parts: &[i64]) -> Vec<usize> {
    parts
        .iter()
        .enumerate()
        .flat_map(|(g, &len)| std::iter::repeat_n(g, len as usize))
        .collect()
}

/// Start of each group.
fn offsets(parts: &[i64]) -> Vec<i64> {
    parts
        .iter()
        .scan(0, |acc, &len| {
            let start = *acc;
            *acc += len;
            Some(start)
        })
        .collect()
}

/// A Latin square on symbols `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    grid: Vec<u32>,
}

impl LatinSquare {
    /// Checks that `rows` form a Latin square.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("a Latin square needs at least one row"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("a Latin square must be n x n"));
        }
        let square = LatinSquare {
            n,
            grid: rows.into_iter().flatten().collect(),
        };
        square.check()?;
        Ok(square)
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        let mut col_seen = vec![false; n * n];
        for r in 0..n {
            let mut row_seen = vec![false; n];
            for c in 0..n {
                let s = self.get(r, c) as usize;
                if s == 0 || s > n {
                    return Err(Error::invalid(format!("symbol {s} at ({r}, {c}) outside 1..={n}")));
                }
                if std::mem::replace(&mut row_seen[s - 1], true) {
                    return Err(Error::invalid(format!("row {r} repeats symbol {s}")));
                }
                if std::mem::replace(&mut col_seen[c * n + s - 1], true) {
                    return Err(Error::invalid(format!("column {c} repeats symbol {s}")));
                }
            }
        }
        Ok(())
    }

    /// The square with `(r, c)` holding `(r + c) mod n + 1`.
    pub fn cyclic(n: usize) -> Self {
        LatinSquare {
            n,
            grid: (0..n * n).map(|x| ((x / n + x % n) % n) as u32 + 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Symbol at 0-based `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.grid[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.grid[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let cells: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for LatinSquare {
    type Err = Error;

    /// `n` lines of `n` whitespace-separated symbols; blank lines ignored.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| Error::invalid(format!("cannot parse symbol {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LatinSquare::new(rows)
    }
}

/// Amalgamates rows, columns and symbols of `l` into consecutive groups.
pub fn reduce_latin(l: &LatinSquare, part: &ReductionPartition) -> Result<OutlineRectangle> {
    part.validate()?;
    let n = l.n();
    if part.order() != n as i64 {
        return Err(Error::invalid(format!(
            "partitions sum to {} but the square has order {n}",
            part.order()
        )));
    }
    let m = part.groups();
    let (rg, cg, sg) = (group_of(&part.rows), group_of(&part.cols), group_of(&part.symbols));
    let mut counts = vec![0i64; m * m * m];
    for r in 0..n {
        for c in 0..n {
            let k = sg[l.get(r, c) as usize - 1];
            counts[(rg[r] * m + cg[c]) * m + k] += 1;
        }
    }
    OutlineRectangle::new(m, n as i64, counts)
}

/// Extends an allocation of `y` to an outline rectangle of order
/// `n = 2 a_p` with one extra row, column and symbol group. Row groups have
/// sizes `e_1..e_p, n - |rows|`, column and symbol groups `b_1..b_p, a_p`.
pub fn embed_allocation(y: &YoungDiagram, z: &Allocation) -> Result<(OutlineRectangle, ReductionPartition)> {
    verify_allocation(y, z).map_err(Error::InvalidAllocation)?;
    let p = y.p();
    let m = p + 1;
    let n = 2 * y.longest();
    if n > MAX_SQUARE_ORDER {
        return Err(Error::ScaleLimit {
            what: "square order",
            limit: MAX_SQUARE_ORDER as u64,
            actual: n as u64,
        });
    }
    // 1-based helpers with the extra group at index m
    let e = |i: usize| if i == m { n - y.rows() } else { y.e(i) };
    let b = |j: usize| if j == m { y.longest() } else { y.b(j) };
    if e(m) <= 0 {
        return Err(Error::internal(format!(
            "{y} has an allocation but more rows than its longest row"
        )));
    }
    let mut t = vec![0i64; m * m * m];
    let at = |i: usize, j: usize, k: usize| ((i - 1) * m + (j - 1)) * m + (k - 1);
    for i in 1..=p {
        for j in 1..=p {
            for k in 1..=p {
                if j.max(k) <= i {
                    t[at(i, j, k)] = z.get(i, j, k);
                }
            }
            // k = m: nothing of the extra symbol group inside the diagram,
            // and the part of column block j above row block i is filled
            // with it entirely
            if i < j {
                t[at(i, j, m)] = e(i) * b(j);
            }
        }
        for k in 1..=m {
            let used: i64 = (1..=p).map(|l| t[at(i, l, k)]).sum();
            t[at(i, m, k)] = e(i) * b(k) - used;
        }
    }
    for j in 1..=m {
        for k in 1..=m {
            let used: i64 = (1..=p).map(|l| t[at(l, j, k)]).sum();
            t[at(m, j, k)] = b(j) * b(k) - used;
        }
    }
    if let Some(pos) = t.iter().position(|&v| v < 0) {
        let (i, j, k) = (pos / (m * m) + 1, pos / m % m + 1, pos % m + 1);
        return Err(Error::internal(format!(
            "embedded entry ({i},{j},{k}) of {y} is negative: {}",
            t[pos]
        )));
    }
    let c = OutlineRectangle::new(m, n, t)?;
    verify_outline(&c).map_err(|v| Error::internal(format!("embedding of {y} is not an outline: {v}")))?;
    for i in 1..=m {
        if c.row_total(i - 1) != n * e(i)
            || c.col_total(i - 1) != n * b(i)
            || c.symbol_total(i - 1) != n * b(i)
        {
            return Err(Error::internal(format!("embedding of {y} has wrong totals in group {i}")));
        }
    }
    let part = ReductionPartition::new(
        (1..=m).map(e).collect(),
        (1..=m).map(b).collect(),
        (1..=m).map(b).collect(),
    )?;
    Ok((c, part))
}

/// Finds a Latin square whose reduction is `c`, with the partition read
/// off the totals.
pub fn outline_to_latin(c: &OutlineRectangle) -> Result<(LatinSquare, ReductionPartition)> {
    verify_outline(c).map_err(Error::InvalidOutline)?;
    let (m, n) = (c.m(), c.n());
    if n > MAX_SQUARE_ORDER {
        return Err(Error::ScaleLimit {
            what: "square order",
            limit: MAX_SQUARE_ORDER as u64,
            actual: n as u64,
        });
    }
    let weights = |totals: Vec<i64>| totals.into_iter().map(|t| t / n).collect::<Vec<_>>();
    let (row_w, col_w, sym_w) = (weights(c.row_totals()), weights(c.col_totals()), weights(c.symbol_totals()));
    if [&row_w, &col_w, &sym_w].iter().any(|w| w.contains(&0)) {
        return Err(Error::invalid("outline rectangle has an empty group"));
    }
    let part = ReductionPartition::new(row_w.clone(), col_w.clone(), sym_w.clone())?;
    let n = n as usize;

    // rows: one line per row group, indexed [column group][symbol group]
    let mut lines: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).flat_map(|j| c.cell(i, j).to_vec()).collect())
        .collect();
    let mut w = row_w;
    split_lines(&mut lines, &mut w, &col_w, &sym_w)?;

    // columns: one line per column group, indexed [row][symbol group]
    let mut col_lines: Vec<Vec<i64>> = (0..m)
        .map(|j| {
            lines
                .iter()
                .flat_map(|line| line[j * m..(j + 1) * m].to_vec())
                .collect()
        })
        .collect();
    let mut w = col_w;
    split_lines(&mut col_lines, &mut w, &vec![1; n], &sym_w)?;

    // now every cell holds one symbol group
    let mut group = vec![0usize; n * n];
    for (col, line) in col_lines.iter().enumerate() {
        for r in 0..n {
            let cell = &line[r * m..(r + 1) * m];
            match cell.iter().position(|&x| x == 1) {
                Some(k) if cell.iter().sum::<i64>() == 1 => group[r * n + col] = k,
                _ => return Err(Error::internal(format!("cell ({r}, {col}) is not a single symbol"))),
            }
        }
    }

    // symbols: group k is an s_k-regular bipartite graph between rows and
    // columns; its colour classes are the individual symbols
    let sym_off = offsets(&sym_w);
    let mut grid = vec![0u32; n * n];
    for (k, &s) in sym_w.iter().enumerate() {
        let cells: Vec<usize> = (0..n * n).filter(|&x| group[x] == k).collect();
        let edges: Vec<(usize, usize)> = cells.iter().map(|&x| (x / n, x % n)).collect();
        let colors = color_regular_bipartite(n, &edges, s as usize)
            .ok_or_else(|| Error::internal(format!("symbol group {k} is not regular")))?;
        for (&x, &col) in cells.iter().zip(&colors) {
            grid[x] = (sym_off[k] + col as i64 + 1) as u32;
        }
    }
    let square = LatinSquare { n, grid };
    square
        .check()
        .map_err(|e| Error::internal(format!("reconstructed square is not Latin: {e}")))?;
    if reduce_latin(&square, &part)? != *c {
        return Err(Error::internal("reconstructed square does not reduce to the outline"));
    }
    Ok((square, part))
}

/// Splits every line of weight `g > 1` into weight-one lines. A line is an
/// `other.len() x symbols.len()` count matrix whose row `a` sums to
/// `g * other[a]` and column `b` to `g * symbols[b]`; a detached line must
/// sum to `other[a]` and `symbols[b]` and is kept within a floor/ceiling of
/// the proportional share `count / g`, which keeps the remainder an outline
/// of weight `g - 1`.
fn split_lines(lines: &mut Vec<Vec<i64>>, weights: &mut Vec<i64>, other: &[i64], symbols: &[i64]) -> Result<()> {
    let (w1, w2) = (other.len(), symbols.len());
    let mut lo = vec![vec![0i64; w2]; w1];
    let mut hi = vec![vec![0i64; w2]; w1];
    loop {
        let Some(idx) = (0..weights.len())
            .filter(|&i| weights[i] > 1)
            .max_by_key(|&i| (weights[i], Reverse(i)))
        else {
            return Ok(());
        };
        let g = weights[idx];
        for a in 0..w1 {
            for b in 0..w2 {
                let cap = lines[idx][a * w2 + b];
                lo[a][b] = cap / g;
                hi[a][b] = (cap + g - 1) / g;
            }
        }
        let d = bounded_transport(&lo, &hi, other, symbols)
            .ok_or_else(|| Error::internal(format!("line {idx} of weight {g} cannot be split")))?;
        let detached: Vec<i64> = d.into_iter().flatten().collect();
        for (x, &v) in lines[idx].iter_mut().zip(&detached) {
            *x -= v;
        }
        weights[idx] -= 1;
        lines.insert(idx, detached);
        weights.insert(idx, 1);
    }
}

/// Cuts the filling of `y` out of a square reconstructed from
/// [`embed_allocation`]: row block `i` keeps column blocks `1..=i`.
pub fn extract_filling(l: &LatinSquare, part: &ReductionPartition, y: &YoungDiagram) -> Result<LatinFilling> {
    part.validate()?;
    let p = y.p();
    let shaped = part.groups() == p + 1
        && part.order() == l.n() as i64
        && part.cols == part.symbols
        && part.cols[p] == y.longest()
        && (1..=p).all(|i| part.rows[i - 1] == y.e(i) && part.cols[i - 1] == y.b(i));
    if !shaped {
        return Err(Error::invalid(format!("partition does not come from embedding {y}")));
    }
    let row_off = offsets(&part.rows);
    let sym_group = group_of(&part.symbols);
    let sym_off = offsets(&part.symbols);
    let mut rows = Vec::with_capacity(y.rows() as usize);
    for i in (1..=p).rev() {
        let width = y.a(i) as usize;
        for r in row_off[i - 1]..row_off[i - 1] + y.e(i) {
            let row = l.row(r as usize)[..width]
                .iter()
                .map(|&s| {
                    let k = sym_group[s as usize - 1] + 1;
                    if k > i {
                        return Err(Error::internal(format!(
                            "symbol {s} in row block {i} exceeds a_{i} = {width}"
                        )));
                    }
                    Ok((y.a(k - 1) + (s as i64 - sym_off[k - 1])) as u32)
                })
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
    }
    let f = LatinFilling::new(rows)?;
    verify_filling(y, &f).map_err(|v| Error::internal(format!("extracted filling invalid: {v}")))?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::allocate;

    fn y(rows: &[i64]) -> YoungDiagram {
        YoungDiagram::from_row_lengths(rows).unwrap()
    }

    #[test]
    fn full_amalgamation_of_order_two() {
        let c = OutlineRectangle::new(1, 2, vec![4]).unwrap();
        assert_eq!(verify_outline(&c), Ok(()));
        let whole = ReductionPartition::new(vec![2], vec![2], vec![2]).unwrap();
        assert_eq!(reduce_latin(&LatinSquare::cyclic(2), &whole).unwrap(), c);
        let (l, part) = outline_to_latin(&c).unwrap();
        assert_eq!(part, whole);
        assert_eq!(reduce_latin(&l, &part).unwrap(), c);
    }

    #[test]
    fn discrete_reduction_is_the_square() {
        let l = LatinSquare::cyclic(5);
        let c = reduce_latin(&l, &ReductionPartition::discrete(5)).unwrap();
        for r in 0..5 {
            for col in 0..5 {
                let cell = c.cell(r, col);
                assert_eq!(cell.iter().sum::<i64>(), 1);
                assert_eq!(cell[l.get(r, col) as usize - 1], 1);
            }
        }
    }

    #[test]
    fn cyclic_four_by_halves() {
        let part = ReductionPartition::new(vec![2, 2], vec![2, 2], vec![2, 2]).unwrap();
        let c = reduce_latin(&LatinSquare::cyclic(4), &part).unwrap();
        // rows {1,2} x cols {1,2} of the cyclic square hold 1,2,2,3
        assert_eq!(c.cell(0, 0), &[3, 1]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c.cell_size(i, j), 4);
            }
        }
        assert_eq!(verify_outline(&c), Ok(()));
    }

    #[test]
    fn perturbation_is_caught() {
        let part = ReductionPartition::new(vec![2, 1], vec![1, 2], vec![2, 1]).unwrap();
        let c = reduce_latin(&LatinSquare::cyclic(3), &part).unwrap();
        let mut counts = c.counts.clone();
        counts[0] += 1;
        let bad = OutlineRectangle::new(2, 3, counts).unwrap();
        let v = verify_outline(&bad).unwrap_err();
        assert!(matches!(v.condition(), 2 | 3), "{v}");
    }

    #[test]
    fn single_row_embedding() {
        let d = y(&[2]);
        let z = allocate(&d).unwrap();
        let (c, part) = embed_allocation(&d, &z).unwrap();
        assert_eq!(c.n(), 4);
        let expect = [(0, 0, 0, 2), (0, 1, 1, 2), (1, 0, 0, 2), (1, 0, 1, 4), (1, 1, 0, 4), (1, 1, 1, 2)];
        for (i, j, k, v) in expect {
            assert_eq!(c.count(i, j, k), v);
        }
        assert_eq!(c.count(0, 0, 1), 0);
        assert_eq!(c.count(0, 1, 0), 0);
        assert_eq!(c.row_totals(), vec![4, 12]);
        assert_eq!(part.rows, vec![1, 3]);
        assert_eq!(part.cols, vec![2, 2]);
        let (l, _) = outline_to_latin(&c).unwrap();
        let f = extract_filling(&l, &part, &d).unwrap();
        let mut row = f.rows()[0].clone();
        row.sort_unstable();
        assert_eq!(row, vec![1, 2]);
    }

    #[test]
    fn diagram_5433_end_to_end() {
        let d = y(&[5, 4, 3, 3]);
        let z = allocate(&d).unwrap();
        let (c, part) = embed_allocation(&d, &z).unwrap();
        assert_eq!(verify_outline(&c), Ok(()));
        let n = c.n();
        assert_eq!(n, 10);
        for i in 1..=3 {
            assert_eq!(c.row_total(i - 1), n * d.e(i));
            assert_eq!(c.col_total(i - 1), n * d.b(i));
            assert_eq!(c.symbol_total(i - 1), n * d.b(i));
        }
        let (l, got) = outline_to_latin(&c).unwrap();
        assert_eq!(got, part);
        assert_eq!(l.n(), 10);
        assert_eq!(reduce_latin(&l, &part).unwrap(), c);
        let f = extract_filling(&l, &part, &d).unwrap();
        assert_eq!(verify_filling(&d, &f), Ok(()));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(OutlineRectangle::new(2, 2, vec![1; 7]).is_err());
        assert!(ReductionPartition::new(vec![2], vec![1, 1], vec![2]).is_err());
        assert!(ReductionPartition::new(vec![2, 0], vec![1, 1], vec![1, 1]).is_err());
        let part = ReductionPartition::new(vec![2], vec![2], vec![2]).unwrap();
        assert!(reduce_latin(&LatinSquare::cyclic(3), &part).is_err());
        assert!("1 2\n1 2".parse::<LatinSquare>().is_err());
        let bad = OutlineRectangle::new(1, 2, vec![3]).unwrap();
        assert!(matches!(outline_to_latin(&bad), Err(Error::InvalidOutline(_))));
    }

    #[test]
    fn text_and_json_round_trips() {
        let l = LatinSquare::cyclic(4);
        assert_eq!(l.to_string().parse::<LatinSquare>().unwrap(), l);
        let part = ReductionPartition::new(vec![1, 3], vec![2, 2], vec![3, 1]).unwrap();
        let c = reduce_latin(&l, &part).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"m":2,"n":4,"cells":[[{"1":"#));
        let back: OutlineRectangle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let sparse: OutlineRectangle = serde_json::from_str(r#"{"m":1,"n":2,"cells":[[{"1":4}]]}"#).unwrap();
        assert_eq!(sparse.count(0, 0, 0), 4);
        assert!(serde_json::from_str::<OutlineRectangle>(r#"{"m":1,"n":2,"cells":[[{"2":4}]]}"#).is_err());
    }
}
