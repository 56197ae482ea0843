mod common;

use rand::Rng;
use widealloc::enumerate::diagrams_by_blocks;
use widealloc::{
    allocate, embed_allocation, extract_filling, is_wide, outline_to_latin, reduce_latin, verify_filling,
    verify_outline, LatinSquare, OutlineRectangle, ReductionPartition,
};

#[test]
fn reductions_of_random_squares_are_outlines() {
    let mut rng = common::rng(11);
    for trial in 0..100 {
        let n = 2 + trial % 7;
        let l = common::random_latin_square(n, &mut rng);
        let part = common::random_partition(n, &mut rng);
        let c = reduce_latin(&l, &part).unwrap();
        assert_eq!(verify_outline(&c), Ok(()), "order {n}, {part:?}");
        assert_eq!(c.n(), n as i64);
        let nn = n as i64;
        assert_eq!(c.row_totals(), part.rows.iter().map(|p| p * nn).collect::<Vec<_>>());
        assert_eq!(c.col_totals(), part.cols.iter().map(|p| p * nn).collect::<Vec<_>>());
        assert_eq!(c.symbol_totals(), part.symbols.iter().map(|p| p * nn).collect::<Vec<_>>());
    }
}

#[test]
fn reconstruction_round_trips_on_random_reductions() {
    let mut rng = common::rng(12);
    for _ in 0..300 {
        let n = rng.gen_range(1..=24);
        let l = common::random_latin_square(n, &mut rng);
        let part = common::random_partition(n, &mut rng);
        let c = reduce_latin(&l, &part).unwrap();
        let (l2, p2) = outline_to_latin(&c).unwrap();
        assert_eq!(p2, part);
        assert_eq!(reduce_latin(&l2, &p2).unwrap(), c);
    }
}

#[test]
fn full_and_discrete_partitions() {
    let mut rng = common::rng(13);
    for n in 1..=12 {
        let l = common::random_latin_square(n, &mut rng);
        let c = reduce_latin(&l, &ReductionPartition::discrete(n)).unwrap();
        let (l2, _) = outline_to_latin(&c).unwrap();
        assert_eq!(l2, l, "the discrete reduction determines the square");
        let whole = ReductionPartition::new(vec![n as i64], vec![n as i64], vec![n as i64]).unwrap();
        let c = reduce_latin(&l, &whole).unwrap();
        assert_eq!(c.count(0, 0, 0), (n * n) as i64);
        let (l2, _) = outline_to_latin(&c).unwrap();
        assert_eq!(reduce_latin(&l2, &whole).unwrap(), c);
    }
}

#[test]
fn embedded_allocations_reconstruct_and_extract() {
    let corpus: Vec<_> = diagrams_by_blocks(30, 3).into_iter().filter(is_wide).collect();
    assert!(!corpus.is_empty());
    for y in corpus {
        let z = allocate(&y).unwrap();
        let (c, part) = embed_allocation(&y, &z).unwrap();
        let n = c.n();
        assert_eq!(n, 2 * y.longest());
        for i in 1..=y.p() {
            assert_eq!(c.row_total(i - 1), n * y.e(i));
            assert_eq!(c.col_total(i - 1), n * y.b(i));
            assert_eq!(c.symbol_total(i - 1), n * y.b(i));
        }
        let (l, got) = outline_to_latin(&c).unwrap();
        assert_eq!(got, part);
        assert_eq!(reduce_latin(&l, &part).unwrap(), c);
        let f = extract_filling(&l, &part, &y).unwrap();
        assert_eq!(verify_filling(&y, &f), Ok(()), "{y}");
    }
}

#[test]
fn outline_json_round_trip() {
    let mut rng = common::rng(14);
    for _ in 0..50 {
        let n = rng.gen_range(2..=9);
        let l = common::random_latin_square(n, &mut rng);
        let c = reduce_latin(&l, &common::random_partition(n, &mut rng)).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<OutlineRectangle>(&s).unwrap(), c);
        let text = l.to_string();
        assert_eq!(text.parse::<LatinSquare>().unwrap(), l);
    }
}

#[test]
fn perturbed_outlines_fail_proportionality() {
    let mut rng = common::rng(15);
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let l = common::random_latin_square(n, &mut rng);
        let c = reduce_latin(&l, &common::random_partition(n, &mut rng)).unwrap();
        let m = c.m();
        let (i, j, k) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
        let mut cells: Vec<Vec<Vec<i64>>> = (0..m).map(|a| (0..m).map(|b| c.cell(a, b).to_vec()).collect()).collect();
        cells[i][j][k] += 1;
        let bad = OutlineRectangle::from_cells(c.n(), &cells).unwrap();
        let v = verify_outline(&bad).unwrap_err();
        assert!(matches!(v.condition(), 2 | 3), "{v}");
    }
}
