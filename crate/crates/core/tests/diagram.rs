mod common;

use proptest::prelude::*;
use widealloc::enumerate::diagrams_in_box;
use widealloc::YoungDiagram;

fn diagram() -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1i64..=12, 1..=12).prop_map(|rows| YoungDiagram::from_row_lengths(&rows).unwrap())
}

/// Cells of `y` counted one by one, restricted to rows `rows` (0-based
/// from the top) and columns `< max_col`.
fn count_cells(y: &YoungDiagram, rows: std::ops::Range<usize>, max_col: i64) -> i64 {
    let lens = y.rows_desc();
    lens[rows].iter().map(|&l| l.min(max_col)).sum()
}

proptest! {
    #[test]
    fn tail_sums_match_cell_counts(y in diagram()) {
        let p = y.p();
        for k in 1..=p {
            let top = y.top_row_of_block(k).unwrap() as usize - 1;
            let tail_rows = top..y.rows() as usize;
            let tail_size = count_cells(&y, tail_rows.clone(), i64::MAX);
            for j in 1..=k {
                let aj = y.a(j);
                let sc = y.sc(j, k).unwrap();
                prop_assert_eq!(sc, y.sc_by_strips(j, k).unwrap());
                prop_assert_eq!(sc, count_cells(&y, tail_rows.clone(), aj));
                let sr_rows = top..(top + aj as usize).min(y.rows() as usize);
                prop_assert_eq!(y.sr(j, k).unwrap(), count_cells(&y, sr_rows, i64::MAX));
                prop_assert!(sc <= tail_size);
                prop_assert!(y.sr(j, k).unwrap() <= tail_size);
                prop_assert_eq!(y.se(j, k).unwrap(), (j..=k).map(|i| y.e(i)).sum::<i64>());
            }
        }
        prop_assert_eq!(y.se(1, p).unwrap(), y.rows());
    }

    #[test]
    fn conjugate_transposes_cells(y in diagram()) {
        let c = y.conjugate();
        prop_assert_eq!(c.cells(), y.cells());
        prop_assert_eq!(c.conjugate(), y.clone());
        let mut cells: Vec<(usize, usize)> = y.cell_coords().unwrap().into_iter().map(|(r, col)| (col, r)).collect();
        cells.sort_unstable();
        let mut conj = c.cell_coords().unwrap();
        conj.sort_unstable();
        prop_assert_eq!(cells, conj);
    }

    #[test]
    fn block_tails_are_row_tails(y in diagram()) {
        for k in 1..=y.p() {
            let r = y.top_row_of_block(k).unwrap();
            prop_assert_eq!(y.block_tail(k).unwrap(), y.tail(r).unwrap());
            prop_assert_eq!(y.block_of_row(r).unwrap(), k);
        }
        prop_assert_eq!(y.tail(1).unwrap(), y.clone());
        let last = y.tail(y.rows()).unwrap();
        prop_assert_eq!(last.rows_desc(), vec![y.a(1)]);
    }

    #[test]
    fn text_and_json_round_trip(y in diagram()) {
        let text = y.rows_desc().iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        prop_assert_eq!(text.parse::<YoungDiagram>().unwrap(), y.clone());
        prop_assert_eq!(y.to_string().parse::<YoungDiagram>().unwrap(), y.clone());
        let json = serde_json::to_string(&y).unwrap();
        prop_assert_eq!(serde_json::from_str::<YoungDiagram>(&json).unwrap(), y.clone());
        let blocks: Vec<(i64, i64)> = y.blocks().iter().map(|b| (b.len, b.mult)).collect();
        let json = serde_json::json!({ "blocks": blocks }).to_string();
        prop_assert_eq!(json.parse::<YoungDiagram>().unwrap(), y);
    }
}

#[test]
fn dominance_is_a_partial_order_on_small_diagrams() {
    let corpus = diagrams_in_box(5, 5);
    for a in &corpus {
        assert!(a.dominates(a));
    }
    // transitivity within each size, where dominance is meaningful
    for n in 1..=12 {
        let same: Vec<&YoungDiagram> = corpus.iter().filter(|y| y.cells() == n).collect();
        for a in &same {
            for b in &same {
                if !a.dominates(b) {
                    continue;
                }
                for c in &same {
                    if b.dominates(c) {
                        assert!(a.dominates(c), "{a} >= {b} >= {c}");
                    }
                }
                if b.dominates(a) {
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn conjugation_is_an_involution_on_the_box() {
    for y in diagrams_in_box(8, 8) {
        assert_eq!(y.conjugate().conjugate(), y);
    }
}

#[test]
fn worked_examples() {
    let y = common::y(&[5, 4, 3, 3]);
    assert_eq!(y.conjugate().rows_desc(), vec![4, 4, 4, 2, 1]);
    assert_eq!(y.tail(y.top_row_of_block(2).unwrap()).unwrap(), common::y(&[4, 3, 3]));
    assert_eq!(y.sc(1, 2).unwrap(), 9);
    assert!(!common::y(&[2, 2]).dominates(&common::y(&[3, 1])));
    let stair = common::y(&[3, 2, 1]);
    assert_eq!(stair.conjugate(), stair);
}
