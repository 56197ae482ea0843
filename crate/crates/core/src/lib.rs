//! Wideness tests, block allocations and Latin fillings for Young diagrams.
//!
//! A Young diagram is *wide* when every subdiagram formed by a subset of its
//! rows dominates its own conjugate, and *Latin* when its rows can be filled
//! so that a row of length `l` holds `1..=l` and no column repeats a symbol.
//! Every Latin diagram is wide; the converse is open in general. This crate
//! decides wideness, builds allocations (coarse, block-level fillings) for
//! diagrams with up to three distinct row lengths, turns allocations into
//! actual fillings through outline rectangles, and cross-checks everything
//! against exhaustive oracles.
//!
//! ```
//! use widealloc::{fill_via_allocation, is_wide, verify_filling, YoungDiagram};
//!
//! let y: YoungDiagram = "5 4 3 3".parse().unwrap();
//! assert!(is_wide(&y));
//! let f = fill_via_allocation(&y).unwrap();
//! assert!(verify_filling(&y, &f).is_ok());
//! ```

pub mod allocation;
pub mod coloring;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod filling;
pub mod flow;
pub mod harness;
pub mod interval;
pub mod outline;
pub mod parallel;
pub mod render;
pub mod wideness;

pub use allocation::{allocate, allocation_from_filling, residuals, verify_allocation, Allocation};
pub use diagram::YoungDiagram;
pub use error::{Error, Result};
pub use exact::fill_exact;
pub use filling::{fill_via_allocation, verify_filling, LatinFilling};
pub use outline::{
    embed_allocation, extract_filling, outline_to_latin, reduce_latin, verify_outline, LatinSquare,
    OutlineRectangle, ReductionPartition,
};
pub use parallel::Execution;
pub use wideness::{is_wide, is_wide_fast, is_wide_oracle, is_wide_tails};
