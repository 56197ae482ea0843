//! Cross-checking harness over every diagram up to a size bound.
//!
//! Each diagram is run through the three wideness deciders, the exact
//! filler, and for at most three row lengths the allocation pipeline. Any
//! disagreement between them is recorded.

use serde::Serialize;

use crate::allocation::allocate;
use crate::diagram::YoungDiagram;
use crate::enumerate::diagrams_up_to;
use crate::error::{Error, Result};
use crate::exact::{fill_exact, EXACT_MAX_CELLS};
use crate::filling::fill_via_allocation;
use crate::parallel::Execution;
use crate::wideness::{is_wide_fast, is_wide_oracle, is_wide_tails, ORACLE_MAX_ROWS};

/// Largest number of distinct row lengths the allocation pipeline handles.
pub const PIPELINE_MAX_P: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_cells: i64,
    /// Keep only diagrams with at most this many distinct row lengths.
    pub max_p: Option<usize>,
    pub execution: Execution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub max_cells: i64,
    pub max_p: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub diagrams: usize,
    pub wide: usize,
    /// Diagrams the exact filler could fill.
    pub latin: usize,
    /// Diagrams with at most three row lengths that received an allocation.
    pub allocated: usize,
    /// Diagrams filled by the allocation pipeline.
    pub pipeline_filled: usize,
    /// Diagrams too tall for the subset oracle, checked by two deciders only.
    pub oracle_skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Disagreement {
    pub diagram: String,
    pub check: String,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub corpus: Corpus,
    pub counts: Counts,
    pub disagreements: Vec<Disagreement>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// What the harness learned about one diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramOutcome {
    pub wide: bool,
    pub latin: bool,
    pub allocated: bool,
    pub pipeline_filled: bool,
    pub oracle_skipped: bool,
    pub disagreements: Vec<Disagreement>,
}

/// Runs every check on one diagram.
pub fn check_diagram(y: &YoungDiagram) -> DiagramOutcome {
    let mut out = DiagramOutcome::default();
    let name = y.to_string();
    let flag = |check: &str, details: String| disagreement(&name, check, details);
    let mut found = Vec::new();

    let fast = is_wide_fast(y).wide;
    let tails = is_wide_tails(y).wide;
    if tails != fast {
        found.push(flag("wideness", format!("tails says {tails}, fast says {fast}")));
    }
    if y.rows() <= ORACLE_MAX_ROWS {
        match is_wide_oracle(y) {
            Ok(r) if r.wide != fast => {
                found.push(flag("wideness", format!("oracle says {}, fast says {fast}", r.wide)));
            }
            Ok(_) => {}
            Err(e) => found.push(flag("wideness", format!("oracle failed: {e}"))),
        }
    } else {
        out.oracle_skipped = true;
    }
    out.wide = fast;

    match fill_exact(y) {
        Ok(f) => out.latin = f.is_some(),
        Err(e) => found.push(flag("exact", format!("exact filler failed: {e}"))),
    }
    if out.latin != out.wide {
        found.push(flag(
            "wide_iff_latin",
            format!("wide = {}, exact filler found a filling = {}", out.wide, out.latin),
        ));
    }

    if y.p() <= PIPELINE_MAX_P {
        match allocate(y) {
            Ok(_) => out.allocated = true,
            Err(Error::NotWide(_)) => {}
            Err(e) => found.push(flag("allocation", format!("allocation failed: {e}"))),
        }
        if out.allocated != out.wide {
            found.push(flag(
                "allocation",
                format!("wide = {}, allocated = {}", out.wide, out.allocated),
            ));
        }
        match fill_via_allocation(y) {
            Ok(_) => out.pipeline_filled = true,
            Err(Error::NotWide(_)) => {}
            Err(e) => found.push(flag("pipeline", format!("pipeline failed: {e}"))),
        }
        if out.pipeline_filled != out.latin {
            found.push(flag(
                "pipeline",
                format!("pipeline filled = {}, exact filled = {}", out.pipeline_filled, out.latin),
            ));
        }
    }
    out.disagreements = found;
    out
}

fn disagreement(diagram: &str, check: &str, details: String) -> Disagreement {
    Disagreement {
        diagram: diagram.to_string(),
        check: check.to_string(),
        details,
    }
}

/// Enumerates the corpus and cross-checks every diagram.
pub fn search(config: &SearchConfig) -> Result<HarnessReport> {
    if config.max_cells > EXACT_MAX_CELLS {
        return Err(Error::ScaleLimit {
            what: "max cells",
            limit: EXACT_MAX_CELLS as u64,
            actual: config.max_cells as u64,
        });
    }
    if config.max_cells < 0 {
        return Err(Error::invalid("max cells must be nonnegative"));
    }
    let corpus = diagrams_up_to(config.max_cells as usize, config.max_p.unwrap_or(usize::MAX));
    let outcomes = config.execution.map_collect(&corpus, check_diagram);
    let mut counts = Counts {
        diagrams: corpus.len(),
        ..Counts::default()
    };
    let mut disagreements = Vec::new();
    for o in outcomes {
        counts.wide += o.wide as usize;
        counts.latin += o.latin as usize;
        counts.allocated += o.allocated as usize;
        counts.pipeline_filled += o.pipeline_filled as usize;
        counts.oracle_skipped += o.oracle_skipped as usize;
        disagreements.extend(o.disagreements);
    }
    disagreements.sort();
    Ok(HarnessReport {
        corpus: Corpus {
            max_cells: config.max_cells,
            max_p: config.max_p,
        },
        counts,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus() {
        let r = search(&SearchConfig {
            max_cells: 0,
            max_p: None,
            execution: Execution::Sequential,
        })
        .unwrap();
        assert_eq!(r.counts, Counts::default());
        assert!(r.passed());
    }

    #[test]
    fn small_corpus_agrees() {
        let cfg = SearchConfig {
            max_cells: 9,
            max_p: None,
            execution: Execution::Sequential,
        };
        let r = search(&cfg).unwrap();
        assert!(r.passed(), "{:?}", r.disagreements);
        assert_eq!(r.counts.diagrams, 96);
        assert_eq!(r.counts.wide, r.counts.latin);
        let par = search(&SearchConfig {
            execution: Execution::Parallel,
            ..cfg
        })
        .unwrap();
        assert_eq!(par, r);
    }

    #[test]
    fn gate() {
        let cfg = SearchConfig {
            max_cells: 65,
            max_p: None,
            execution: Execution::Sequential,
        };
        assert!(matches!(search(&cfg), Err(Error::ScaleLimit { .. })));
    }
}
