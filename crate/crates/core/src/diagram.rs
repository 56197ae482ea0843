//! Young diagrams stored as block profiles.
//!
//! A diagram with `p` distinct row lengths `a_1 < a_2 < ... < a_p`, where
//! `e_i` rows have length `a_i`, is kept as the ascending list of blocks
//! `(a_i, e_i)`. Block indices are 1-based and run bottom-to-top (short to
//! long rows); `a(0) = 0` so that `b(i) = a(i) - a(i-1)` is the width of
//! column block `i`. Rendering order (top row first) is available through
//! [`YoungDiagram::rows_desc`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted row length.
pub const MAX_ROW_LENGTH: i64 = 1_000_000;
/// Largest accepted number of rows.
pub const MAX_ROWS: i64 = 1_000_000;
/// Largest diagram whose cells may be materialized.
pub const MAX_MATERIALIZED_CELLS: i64 = 10_000;

/// A maximal run of rows sharing one length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub len: i64,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    blocks: Vec<Block>,
}

/// Quantities of the tail `Y_k` measured against the first `a_j` rows or
/// columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailStats {
    pub k: usize,
    pub j: usize,
    /// Cells in the leftmost `a_j` columns of `Y_k`.
    pub sc: i64,
    /// Cells in the top `a_j` rows of `Y_k`.
    pub sr: i64,
    /// Rows in blocks `j..=k`.
    pub se: i64,
}

impl YoungDiagram {
    /// Builds the canonical diagram for a multiset of row lengths.
    pub fn from_row_lengths(lengths: &[i64]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::invalid("a diagram needs at least one row"));
        }
        if let Some(bad) = lengths.iter().find(|&&l| l <= 0) {
            return Err(Error::invalid(format!("row length {bad} is not positive")));
        }
        let mut sorted = lengths.to_vec();
        sorted.sort_unstable();
        let mut blocks: Vec<Block> = Vec::new();
        for len in sorted {
            match blocks.last_mut() {
                Some(b) if b.len == len => b.mult += 1,
                _ => blocks.push(Block { len, mult: 1 }),
            }
        }
        Self::checked(blocks)
    }

    /// Builds a diagram from `(a_i, e_i)` pairs with strictly ascending `a_i`.
    pub fn from_blocks(pairs: &[(i64, i64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::invalid("a diagram needs at least one block"));
        }
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::invalid("block lengths must be strictly ascending"));
            }
        }
        if pairs.iter().any(|&(a, e)| a <= 0 || e <= 0) {
            return Err(Error::invalid("block lengths and multiplicities must be positive"));
        }
        Self::checked(
            pairs
                .iter()
                .map(|&(len, mult)| Block { len, mult })
                .collect(),
        )
    }

    fn checked(blocks: Vec<Block>) -> Result<Self> {
        let longest = blocks.last().map_or(0, |b| b.len);
        let rows: i64 = blocks.iter().map(|b| b.mult).sum();
        if longest > MAX_ROW_LENGTH {
            return Err(Error::invalid(format!(
                "row length {longest} exceeds {MAX_ROW_LENGTH}"
            )));
        }
        if rows > MAX_ROWS {
            return Err(Error::invalid(format!("{rows} rows exceed {MAX_ROWS}")));
        }
        Ok(YoungDiagram { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of distinct row lengths.
    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    /// Number of rows.
    pub fn rows(&self) -> i64 {
        self.blocks.iter().map(|b| b.mult).sum()
    }

    /// Number of cells.
    pub fn cells(&self) -> i64 {
        self.blocks.iter().map(|b| b.len * b.mult).sum()
    }

    /// Row length of block `i`; `a(0) == 0`.
    pub fn a(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.blocks[i - 1].len
        }
    }

    /// Multiplicity of block `i`.
    pub fn e(&self, i: usize) -> i64 {
        self.blocks[i - 1].mult
    }

    /// Width of column block `i`.
    pub fn b(&self, i: usize) -> i64 {
        self.a(i) - self.a(i - 1)
    }

    /// Longest row length `a_p`.
    pub fn longest(&self) -> i64 {
        self.a(self.p())
    }

    /// Row lengths top to bottom.
    pub fn rows_desc(&self) -> Vec<i64> {
        self.blocks
            .iter()
            .rev()
            .flat_map(|b| std::iter::repeat_n(b.len, b.mult as usize))
            .collect()
    }

    /// Row lengths bottom to top.
    pub fn rows_asc(&self) -> Vec<i64> {
        let mut rows = self.rows_desc();
        rows.reverse();
        rows
    }

    /// Block index (1-based) holding the `r`-th row counted from the top.
    pub fn block_of_row(&self, r: i64) -> Result<usize> {
        if r < 1 || r > self.rows() {
            return Err(Error::Index(format!("row {r} outside 1..={}", self.rows())));
        }
        let mut above = 0;
        for k in (1..=self.p()).rev() {
            above += self.e(k);
            if r <= above {
                return Ok(k);
            }
        }
        unreachable!("row index checked above")
    }

    /// Row index, counted from the top, of the top row of block `k`.
    pub fn top_row_of_block(&self, k: usize) -> Result<i64> {
        self.check_block(k)?;
        Ok(1 + (k + 1..=self.p()).map(|t| self.e(t)).sum::<i64>())
    }

    /// The transpose: column lengths as a diagram.
    pub fn conjugate(&self) -> YoungDiagram {
        // column block j has b_j columns of length se(j, p)
        let p = self.p();
        let mut suffix = 0;
        let mut blocks = Vec::with_capacity(p);
        for j in (1..=p).rev() {
            suffix += self.e(j);
            blocks.push(Block {
                len: suffix,
                mult: self.b(j),
            });
        }
        YoungDiagram { blocks }
    }

    /// Sum of the `t` longest rows.
    pub fn top_rows_sum(&self, t: i64) -> i64 {
        let mut left = t.max(0);
        let mut sum = 0;
        for b in self.blocks.iter().rev() {
            if left == 0 {
                break;
            }
            let take = left.min(b.mult);
            sum += take * b.len;
            left -= take;
        }
        sum
    }

    /// Dominance order: every prefix sum of the descending rows of `self`
    /// is at least the matching prefix sum of `other`, shorter lists padded
    /// with zeros.
    pub fn dominates(&self, other: &YoungDiagram) -> bool {
        // Both prefix-sum functions are piecewise linear in t with breaks at
        // block boundaries, so checking every boundary of either suffices.
        let mut points: Vec<i64> = Vec::with_capacity(self.p() + other.p());
        for d in [self, other] {
            let mut acc = 0;
            for b in d.blocks.iter().rev() {
                acc += b.mult;
                points.push(acc);
            }
        }
        points
            .into_iter()
            .all(|t| self.top_rows_sum(t) >= other.top_rows_sum(t))
    }

    /// The tail `Y[r]`: rows `r..=m` counted from the top.
    pub fn tail(&self, r: i64) -> Result<YoungDiagram> {
        let m = self.rows();
        if r < 1 || r > m {
            return Err(Error::Index(format!("row {r} outside 1..={m}")));
        }
        let mut drop = r - 1;
        let mut blocks = self.blocks.clone();
        while drop > 0 {
            let top = blocks.last_mut().expect("r <= m keeps one row");
            let take = drop.min(top.mult);
            top.mult -= take;
            drop -= take;
            if top.mult == 0 {
                blocks.pop();
            }
        }
        Ok(YoungDiagram { blocks })
    }

    /// `Y_k`: the tail starting at the top row of block `k`.
    pub fn block_tail(&self, k: usize) -> Result<YoungDiagram> {
        self.check_block(k)?;
        Ok(YoungDiagram {
            blocks: self.blocks[..k].to_vec(),
        })
    }

    /// Number of rows in blocks `m..=k`.
    pub fn se(&self, m: usize, k: usize) -> Result<i64> {
        self.check_pair(m, k)?;
        Ok((m..=k).map(|t| self.e(t)).sum())
    }

    fn se_unchecked(&self, m: usize, k: usize) -> i64 {
        (m..=k).map(|t| self.e(t)).sum()
    }

    /// Cells in the leftmost `a_j` columns of `Y_k`, cut into horizontal
    /// strips.
    pub fn sc(&self, j: usize, k: usize) -> Result<i64> {
        self.check_pair(j, k)?;
        let below: i64 = (1..j).map(|t| self.a(t) * self.e(t)).sum();
        Ok(below + self.a(j) * self.se_unchecked(j, k))
    }

    /// Same count as [`sc`](Self::sc), cut into vertical strips of widths
    /// `b_1, ..., b_j`.
    pub fn sc_by_strips(&self, j: usize, k: usize) -> Result<i64> {
        self.check_pair(j, k)?;
        Ok((1..=j).map(|u| self.b(u) * self.se_unchecked(u, k)).sum())
    }

    /// Cells in the top `a_j` rows of `Y_k`.
    pub fn sr(&self, j: usize, k: usize) -> Result<i64> {
        self.check_pair(j, k)?;
        let aj = self.a(j);
        if aj <= self.e(k) {
            return Ok(aj * self.a(k));
        }
        if self.se_unchecked(1, k) <= aj {
            return Ok((1..=k).map(|t| self.a(t) * self.e(t)).sum());
        }
        let i = self
            .straddled_block(j, k)
            .expect("se(1,k) > a_j > e_k leaves a straddled block");
        Ok(self.sr_partial(i, j, k))
    }

    /// The block index `i` in `2..=k` with `se(i,k) < a_j <= se(i-1,k)`.
    pub(crate) fn straddled_block(&self, j: usize, k: usize) -> Option<usize> {
        let aj = self.a(j);
        (2..=k).find(|&i| self.se_unchecked(i, k) < aj && aj <= self.se_unchecked(i - 1, k))
    }

    /// Middle case of `sr`: blocks `i..=k` whole plus part of block `i-1`.
    pub(crate) fn sr_partial(&self, i: usize, j: usize, k: usize) -> i64 {
        let whole: i64 = (i..=k).map(|t| self.e(t) * self.a(t)).sum();
        whole + (self.a(j) - self.se_unchecked(i, k)) * self.a(i - 1)
    }

    pub fn tail_stats(&self, j: usize, k: usize) -> Result<TailStats> {
        Ok(TailStats {
            k,
            j,
            sc: self.sc(j, k)?,
            sr: self.sr(j, k)?,
            se: self.se(j, k)?,
        })
    }

    /// Cell coordinates `(row from top, column)`, both 0-based. Only for
    /// small diagrams.
    pub fn cell_coords(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.cells();
        if n > MAX_MATERIALIZED_CELLS {
            return Err(Error::ScaleLimit {
                what: "cell count",
                limit: MAX_MATERIALIZED_CELLS as u64,
                actual: n as u64,
            });
        }
        Ok(self
            .rows_desc()
            .into_iter()
            .enumerate()
            .flat_map(|(r, len)| (0..len as usize).map(move |c| (r, c)))
            .collect())
    }

    fn check_block(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.p() {
            return Err(Error::Index(format!("block {k} outside 1..={}", self.p())));
        }
        Ok(())
    }

    fn check_pair(&self, j: usize, k: usize) -> Result<()> {
        self.check_block(k)?;
        if j == 0 || j > k {
            return Err(Error::Index(format!("block {j} outside 1..={k}")));
        }
        Ok(())
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows_desc();
        write!(f, "(")?;
        for (i, r) in rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Accepts whitespace- or comma-separated row lengths, optionally in
    /// parentheses, or one of the JSON forms.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let json: DiagramJson = serde_json::from_str(s)?;
            return json.try_into();
        }
        let lengths = s
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::invalid(format!("cannot parse row length {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        YoungDiagram::from_row_lengths(&lengths)
    }
}

/// Wire format: `{"rows":[5,4,3,3]}` or `{"blocks":[[3,2],[4,1],[5,1]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagramJson {
    Rows { rows: Vec<i64> },
    Blocks { blocks: Vec<(i64, i64)> },
}

impl TryFrom<DiagramJson> for YoungDiagram {
    type Error = Error;

    fn try_from(json: DiagramJson) -> Result<Self> {
        match json {
            DiagramJson::Rows { rows } => YoungDiagram::from_row_lengths(&rows),
            DiagramJson::Blocks { blocks } => YoungDiagram::from_blocks(&blocks),
        }
    }
}

impl From<&YoungDiagram> for DiagramJson {
    fn from(y: &YoungDiagram) -> Self {
        DiagramJson::Rows {
            rows: y.rows_desc(),
        }
    }
}

impl Serialize for YoungDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for YoungDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = DiagramJson::deserialize(d)?;
        YoungDiagram::try_from(json).map_err(serde::de::Error::custom)
    }
}
