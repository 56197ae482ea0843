mod common;

use widealloc::enumerate::{diagrams_by_blocks, diagrams_up_to};
use widealloc::{fill_exact, fill_via_allocation, is_wide, verify_filling, Error, YoungDiagram};

#[test]
fn pipeline_and_exact_filler_agree_with_wideness() {
    for y in diagrams_by_blocks(36, 3) {
        let wide = is_wide(&y);
        let exact = fill_exact(&y).unwrap();
        let pipeline = fill_via_allocation(&y);
        assert_eq!(exact.is_some(), wide, "{y}");
        match pipeline {
            Ok(f) => {
                assert!(wide, "{y}");
                assert_eq!(verify_filling(&y, &f), Ok(()));
            }
            Err(Error::NotWide(_)) => assert!(!wide, "{y}"),
            Err(e) => panic!("{y}: {e}"),
        }
        if let Some(f) = exact {
            assert_eq!(verify_filling(&y, &f), Ok(()));
        }
    }
}

#[test]
fn two_row_lengths_are_filled_exactly() {
    for y in diagrams_by_blocks(40, 2).into_iter().filter(|y| y.p() == 2 && is_wide(y)) {
        let f = fill_exact(&y).unwrap().unwrap_or_else(|| panic!("{y} has no filling"));
        assert_eq!(verify_filling(&y, &f), Ok(()));
    }
}

#[test]
fn non_wide_diagrams_have_no_filling() {
    for y in diagrams_up_to(16, usize::MAX).into_iter().filter(|y| !is_wide(y)) {
        assert!(fill_exact(&y).unwrap().is_none(), "{y}");
    }
}

#[test]
fn rectangles() {
    for a in 1..=12 {
        for e in 1..=a {
            let y = YoungDiagram::from_blocks(&[(a, e)]).unwrap();
            let f = fill_via_allocation(&y).unwrap();
            assert_eq!(verify_filling(&y, &f), Ok(()));
        }
        let tall = YoungDiagram::from_blocks(&[(a, a + 1)]).unwrap();
        assert!(matches!(fill_via_allocation(&tall), Err(Error::NotWide(_))));
    }
}

#[test]
fn more_than_three_row_lengths_is_unsupported() {
    let y = common::y(&[4, 3, 2, 1]);
    assert!(matches!(fill_via_allocation(&y), Err(Error::Unsupported(_))));
    assert!(fill_exact(&y).unwrap().is_some());
}
