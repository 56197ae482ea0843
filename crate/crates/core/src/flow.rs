//! Integral flows with lower and upper arc bounds.
//!
//! Feasibility is reduced to a single max-flow in the usual way: each arc
//! keeps `hi - lo` of residual capacity, the forced `lo` units become node
//! excesses, and a super source/sink pair must be saturated. Max-flow is
//! Dinic's algorithm.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    /// Next arc out of the same node, or `NIL`.
    next: usize,
}

const NIL: usize = usize::MAX;

/// Plain max-flow network. Adjacency is kept as intrusive linked lists so
/// that building a network is a handful of flat allocations.
#[derive(Clone, Debug)]
pub struct MaxFlow {
    arcs: Vec<Arc>,
    head: Vec<usize>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl MaxFlow {
    pub fn new(nodes: usize) -> Self {
        Self::with_capacity(nodes, 0)
    }

    pub fn with_capacity(nodes: usize, arcs: usize) -> Self {
        MaxFlow {
            arcs: Vec::with_capacity(2 * arcs),
            head: vec![NIL; nodes],
            level: vec![0; nodes],
            iter: vec![NIL; nodes],
        }
    }

    /// Adds `from -> to` with capacity `cap` and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            cap,
            next: self.head[from],
        });
        self.head[from] = id;
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            next: self.head[to],
        });
        self.head[to] = id + 1;
        id
    }

    /// Flow currently on arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[id + 1].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let mut id = self.head[v];
            while id != NIL {
                let a = &self.arcs[id];
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[v] + 1;
                    queue.push_back(a.to);
                }
                id = a.next;
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, limit: i64) -> i64 {
        if v == t {
            return limit;
        }
        while self.iter[v] != NIL {
            let id = self.iter[v];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.arcs[id].cap -= pushed;
                    self.arcs[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.iter[v] = self.arcs[id].next;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.copy_from_slice(&self.head);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Network whose arcs carry `lo <= flow <= hi`.
#[derive(Clone, Debug)]
pub struct BoundedFlow {
    nodes: usize,
    arcs: Vec<(usize, usize, i64, i64)>,
}

impl BoundedFlow {
    pub fn new(nodes: usize) -> Self {
        BoundedFlow {
            nodes,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, lo: i64, hi: i64) -> usize {
        debug_assert!(0 <= lo && lo <= hi);
        self.arcs.push((from, to, lo, hi));
        self.arcs.len() - 1
    }

    /// A circulation meeting every bound, as per-arc flows, or `None`.
    pub fn circulation(&self) -> Option<Vec<i64>> {
        let (src, snk) = (self.nodes, self.nodes + 1);
        let mut net = MaxFlow::with_capacity(self.nodes + 2, self.arcs.len() + self.nodes);
        let mut excess = vec![0i64; self.nodes];
        let ids: Vec<usize> = self
            .arcs
            .iter()
            .map(|&(u, v, lo, hi)| {
                excess[v] += lo;
                excess[u] -= lo;
                net.add_arc(u, v, hi - lo)
            })
            .collect();
        let mut need = 0;
        for (v, &x) in excess.iter().enumerate() {
            if x > 0 {
                net.add_arc(src, v, x);
                need += x;
            } else if x < 0 {
                net.add_arc(v, snk, -x);
            }
        }
        if net.max_flow(src, snk) != need {
            return None;
        }
        Some(
            ids.iter()
                .zip(&self.arcs)
                .map(|(&id, &(_, _, lo, _))| lo + net.flow(id))
                .collect(),
        )
    }
}

/// Integral matrix `d` with the given row and column sums and
/// `lo[r][c] <= d[r][c] <= hi[r][c]`, or `None` if none exists.
pub fn bounded_transport(
    lo: &[Vec<i64>],
    hi: &[Vec<i64>],
    row_sums: &[i64],
    col_sums: &[i64],
) -> Option<Vec<Vec<i64>>> {
    let (rows, cols) = (row_sums.len(), col_sums.len());
    let (s, t) = (rows + cols, rows + cols + 1);
    let mut g = BoundedFlow::new(rows + cols + 2);
    g.arcs.reserve(rows + cols + 1 + rows * cols);
    for (r, &sum) in row_sums.iter().enumerate() {
        g.add_arc(s, r, sum, sum);
    }
    for (c, &sum) in col_sums.iter().enumerate() {
        g.add_arc(rows + c, t, sum, sum);
    }
    let total: i64 = row_sums.iter().sum();
    g.add_arc(t, s, total, total);
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if hi[r][c] > 0 {
                cells.push((r, c, g.add_arc(r, rows + c, lo[r][c], hi[r][c])));
            } else if lo[r][c] > 0 {
                return None;
            }
        }
    }
    let flows = g.circulation()?;
    let mut d = vec![vec![0i64; cols]; rows];
    for (r, c, id) in cells {
        d[r][c] = flows[id];
    }
    Some(d)
}
