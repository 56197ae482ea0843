//! Edge colouring of regular bipartite multigraphs.
//!
//! A `d`-regular bipartite multigraph splits into `d` perfect matchings.
//! Even degrees are halved by walking closed trails and alternating edges
//! between the two halves; odd degrees first peel off one perfect matching
//! found with Hopcroft-Karp.

use std::collections::VecDeque;

/// Colours `edges` (pairs `(left, right)`, both in `0..side`) of a
/// `degree`-regular bipartite multigraph with colours `0..degree` so that
/// each colour class is a perfect matching. Returns one colour per edge, or
/// `None` if the graph is not regular of that degree.
pub fn color_regular_bipartite(side: usize, edges: &[(usize, usize)], degree: usize) -> Option<Vec<usize>> {
    if edges.len() != side * degree {
        return None;
    }
    let mut deg_l = vec![0usize; side];
    let mut deg_r = vec![0usize; side];
    for &(l, r) in edges {
        if l >= side || r >= side {
            return None;
        }
        deg_l[l] += 1;
        deg_r[r] += 1;
    }
    if deg_l.iter().chain(&deg_r).any(|&d| d != degree) {
        return None;
    }
    let mut colors = vec![usize::MAX; edges.len()];
    let ids: Vec<usize> = (0..edges.len()).collect();
    let mut next = 0;
    split(side, edges, ids, degree, &mut next, &mut colors)?;
    Some(colors)
}

fn split(
    side: usize,
    edges: &[(usize, usize)],
    ids: Vec<usize>,
    degree: usize,
    next: &mut usize,
    colors: &mut [usize],
) -> Option<()> {
    match degree {
        0 => Some(()),
        1 => {
            for id in ids {
                colors[id] = *next;
            }
            *next += 1;
            Some(())
        }
        d if d % 2 == 1 => {
            let matching = perfect_matching(side, edges, &ids)?;
            let mut in_matching = vec![false; edges.len()];
            for &id in &matching {
                in_matching[id] = true;
                colors[id] = *next;
            }
            *next += 1;
            let rest = ids.into_iter().filter(|&id| !in_matching[id]).collect();
            split(side, edges, rest, d - 1, next, colors)
        }
        d => {
            let (a, b) = euler_halves(side, edges, &ids);
            split(side, edges, a, d / 2, next, colors)?;
            split(side, edges, b, d / 2, next, colors)
        }
    }
}

/// Compressed adjacency: the slots incident to vertex `v` are
/// `slots[start[v]..start[v + 1]]`.
struct Csr {
    start: Vec<usize>,
    slots: Vec<usize>,
}

impl Csr {
    fn build(vertices: usize, ends: impl Iterator<Item = (usize, usize)> + Clone) -> Csr {
        let mut start = vec![0usize; vertices + 1];
        for (v, _) in ends.clone() {
            start[v + 1] += 1;
        }
        for v in 0..vertices {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut slots = vec![0usize; start[vertices]];
        for (v, slot) in ends {
            slots[fill[v]] = slot;
            fill[v] += 1;
        }
        Csr { start, slots }
    }
}

/// Splits an even-degree bipartite multigraph into two halves with every
/// vertex degree halved.
fn euler_halves(side: usize, edges: &[(usize, usize)], ids: &[usize]) -> (Vec<usize>, Vec<usize>) {
    // vertices: left l -> l, right r -> side + r
    let ends = ids.iter().enumerate().flat_map(|(slot, &id)| {
        let (l, r) = edges[id];
        [(l, slot), (side + r, slot)]
    });
    let adj = Csr::build(2 * side, ends);
    let other = |slot: usize, v: usize| {
        let (l, r) = edges[ids[slot]];
        if v == l {
            side + r
        } else {
            l
        }
    };
    let mut used = vec![false; ids.len()];
    let mut ptr = adj.start[..2 * side].to_vec();
    let (mut a, mut b) = (Vec::with_capacity(ids.len() / 2), Vec::with_capacity(ids.len() / 2));
    let next_unused = |v: usize, ptr: &mut [usize], used: &[bool]| {
        while ptr[v] < adj.start[v + 1] && used[adj.slots[ptr[v]]] {
            ptr[v] += 1;
        }
        (ptr[v] < adj.start[v + 1]).then(|| adj.slots[ptr[v]])
    };
    for start in 0..2 * side {
        while next_unused(start, &mut ptr, &used).is_some() {
            // walk a closed trail from `start`; even degrees force it to
            // end where it began, and bipartiteness makes it even
            let mut v = start;
            let mut parity = false;
            while let Some(slot) = next_unused(v, &mut ptr, &used) {
                used[slot] = true;
                if parity {
                    b.push(ids[slot]);
                } else {
                    a.push(ids[slot]);
                }
                parity = !parity;
                v = other(slot, v);
            }
            debug_assert_eq!(v, start);
        }
    }
    (a, b)
}

/// Hopcroft-Karp on the sub-multigraph `ids`; returns edge ids of a
/// perfect matching.
fn perfect_matching(side: usize, edges: &[(usize, usize)], ids: &[usize]) -> Option<Vec<usize>> {
    let adj = Csr::build(side, ids.iter().map(|&id| (edges[id].0, id)));
    const NONE: usize = usize::MAX;
    let mut match_l = vec![NONE; side]; // edge id
    let mut match_r = vec![NONE; side]; // left vertex
    let mut dist = vec![0usize; side];
    let mut matched = 0;
    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..side {
            if match_l[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &id in &adj.slots[adj.start[l]..adj.start[l + 1]] {
                let r = edges[id].1;
                let l2 = match_r[r];
                if l2 == NONE {
                    found = true;
                } else if dist[l2] == usize::MAX {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = adj.start[..side].to_vec();
        for l in 0..side {
            if match_l[l] == NONE && augment(l, edges, &adj, &mut match_l, &mut match_r, &mut dist, &mut it) {
                matched += 1;
            }
        }
    }
    (matched == side).then_some(match_l)
}

fn augment(
    l: usize,
    edges: &[(usize, usize)],
    adj: &Csr,
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[l] < adj.start[l + 1] {
        let id = adj.slots[it[l]];
        it[l] += 1;
        let r = edges[id].1;
        let l2 = match_r[r];
        if l2 == usize::MAX || (dist[l2] == dist[l] + 1 && augment(l2, edges, adj, match_l, match_r, dist, it)) {
            match_l[l] = id;
            match_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}
