//! Exhaustive partition enumeration for the validation harness.

use crate::diagram::YoungDiagram;

/// All partitions of `n` as descending part lists, in lexicographic order
/// (so `[1,1,1]` comes before `[2,1]` before `[3]`).
pub fn partitions(n: usize) -> Vec<Vec<i64>> {
    partitions_bounded(n, n, usize::MAX)
}

/// Partitions of `n` with every part `<= max_part` and at most `max_len`
/// parts, in lexicographic order of their descending parts.
pub fn partitions_bounded(n: usize, max_part: usize, max_len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(n, max_part.min(n), max_len, &mut cur, &mut out);
    out
}

fn rec(left: usize, cap: usize, max_len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    if cur.len() == max_len {
        return;
    }
    for part in 1..=cap.min(left) {
        cur.push(part as i64);
        rec(left - part, part, max_len, cur, out);
        cur.pop();
    }
}

/// Every nonempty diagram with at most `max_cells` cells and at most
/// `max_p` distinct row lengths, ordered by size and then lexicographically.
pub fn diagrams_up_to(max_cells: usize, max_p: usize) -> Vec<YoungDiagram> {
    (1..=max_cells)
        .flat_map(partitions)
        .map(|rows| YoungDiagram::from_row_lengths(&rows).expect("enumerated rows are positive"))
        .filter(|y| y.p() <= max_p)
        .collect()
}

/// Every nonempty diagram fitting in a `max_rows` by `max_part` box.
pub fn diagrams_in_box(max_rows: usize, max_part: usize) -> Vec<YoungDiagram> {
    (1..=max_rows * max_part)
        .flat_map(|n| partitions_bounded(n, max_part, max_rows))
        .map(|rows| YoungDiagram::from_row_lengths(&rows).expect("enumerated rows are positive"))
        .collect()
}

/// Every diagram with at most `max_cells` cells and between 1 and `max_p`
/// distinct row lengths, built block by block so that diagrams with many
/// row lengths are never generated. Ordered lexicographically by the
/// ascending list of `(a_i, e_i)`.
pub fn diagrams_by_blocks(max_cells: usize, max_p: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    blocks_rec(max_cells as i64, 0, max_p, &mut cur, &mut out);
    out
}

fn blocks_rec(left: i64, prev: i64, max_p: usize, cur: &mut Vec<(i64, i64)>, out: &mut Vec<YoungDiagram>) {
    if !cur.is_empty() {
        out.push(YoungDiagram::from_blocks(cur).expect("blocks ascend"));
    }
    if cur.len() == max_p {
        return;
    }
    for a in prev + 1..=left {
        for e in 1..=left / a {
            cur.push((a, e));
            blocks_rec(left - a * e, a, max_p, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(
            partitions(4),
            vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1], vec![4]]
        );
    }

    #[test]
    fn box_count_is_binomial() {
        // partitions inside an r x c box number C(r+c, r), including the empty one
        assert_eq!(diagrams_in_box(3, 4).len() + 1, 35);
        assert_eq!(diagrams_in_box(5, 5).len() + 1, 252);
    }

    #[test]
    fn distinct_length_filter() {
        assert!(diagrams_up_to(12, 2).iter().all(|y| y.p() <= 2));
        assert_eq!(diagrams_up_to(0, 3).len(), 0);
    }

    #[test]
    fn block_enumeration_matches_partitions() {
        for max_p in 1..=4 {
            let mut a: Vec<Vec<i64>> = diagrams_by_blocks(14, max_p).iter().map(|y| y.rows_desc()).collect();
            let mut b: Vec<Vec<i64>> = diagrams_up_to(14, max_p).iter().map(|y| y.rows_desc()).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}
