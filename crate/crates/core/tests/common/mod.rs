//! Shared helpers for integration tests: seeded randomness, random Latin
//! squares and random partitions.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use widealloc::{LatinSquare, ReductionPartition, YoungDiagram};

/// Seed from `WIDEALLOC_SEED`, or a fixed default.
pub fn seed() -> u64 {
    std::env::var("WIDEALLOC_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0x5eed_2024)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn y(rows: &[i64]) -> YoungDiagram {
    YoungDiagram::from_row_lengths(rows).unwrap()
}

/// Random Latin square of order `n`: rows are built one at a time as random
/// systems of distinct representatives (always completable by Hall's
/// theorem), then rows, columns and symbols are shuffled.
pub fn random_latin_square(n: usize, rng: &mut impl Rng) -> LatinSquare {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut col_used = vec![vec![false; n + 1]; n];
    for _ in 0..n {
        // random perfect matching columns -> unused symbols, by augmenting
        // paths in random order
        let mut sym_of_col = vec![0u32; n];
        let mut col_of_sym = vec![usize::MAX; n + 1];
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for &c in &order {
            let mut seen = vec![false; n + 1];
            let mut syms: Vec<u32> = (1..=n as u32).collect();
            syms.shuffle(rng);
            assert!(augment(c, &syms, &col_used, &mut sym_of_col, &mut col_of_sym, &mut seen));
        }
        for (c, &s) in sym_of_col.iter().enumerate() {
            col_used[c][s as usize] = true;
        }
        rows.push(sym_of_col);
    }
    rows.shuffle(rng);
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    perm.shuffle(rng);
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|s| perm[s as usize - 1]).collect())
        .collect();
    LatinSquare::new(rows).unwrap()
}

fn augment(
    c: usize,
    syms: &[u32],
    col_used: &[Vec<bool>],
    sym_of_col: &mut [u32],
    col_of_sym: &mut [usize],
    seen: &mut [bool],
) -> bool {
    for &s in syms {
        let su = s as usize;
        if col_used[c][su] || seen[su] {
            continue;
        }
        seen[su] = true;
        let other = col_of_sym[su];
        if other == usize::MAX || augment(other, syms, col_used, sym_of_col, col_of_sym, seen) {
            sym_of_col[c] = s;
            col_of_sym[su] = c;
            return true;
        }
    }
    false
}

/// Random composition of `n` into exactly `m` positive parts.
pub fn random_composition(n: usize, m: usize, rng: &mut impl Rng) -> Vec<i64> {
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(m - 1).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(m);
    let mut prev = 0;
    for c in cuts.into_iter().chain([n]) {
        parts.push((c - prev) as i64);
        prev = c;
    }
    parts
}

/// Random partition triple with the same random number of groups.
pub fn random_partition(n: usize, rng: &mut impl Rng) -> ReductionPartition {
    let m = rng.gen_range(1..=n);
    ReductionPartition::new(
        random_composition(n, m, rng),
        random_composition(n, m, rng),
        random_composition(n, m, rng),
    )
    .unwrap()
}
