//! `widealloc` command-line front end.
//!
//! Exit status: 0 for success or a positive verdict, 1 for a negative
//! verdict, 2 for usage and input errors, 3 when an internal invariant
//! fails (a bug).

mod input;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use widealloc::allocation::AllocationViolation;
use widealloc::harness::{search, HarnessReport, SearchConfig};
use widealloc::parallel::with_jobs;
use widealloc::render::{render_ascii, render_svg};
use widealloc::wideness::{is_wide_with, Method, ORACLE_MAX_ROWS};
use widealloc::{
    allocate, fill_exact, fill_via_allocation, outline_to_latin, reduce_latin, residuals, verify_allocation,
    verify_filling, verify_outline, Allocation, Error, Execution, LatinFilling, LatinSquare, OutlineRectangle,
    ReductionPartition, Result, YoungDiagram,
};

use input::{parse_json, read_arg, read_file};

#[derive(Parser)]
#[command(name = "widealloc", version, about = "Wideness, allocations and Latin fillings of Young diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a diagram is wide.
    CheckWide {
        /// Row lengths ("5 4 3 3"), JSON, a file, or `-` for stdin.
        diagram: String,
        #[arg(long, value_enum, default_value_t = WideMethod::Fast)]
        method: WideMethod,
        #[arg(long)]
        json: bool,
    },
    /// Build an allocation for a wide diagram with at most three row lengths.
    Allocate {
        diagram: String,
        #[arg(long)]
        json: bool,
        /// Also print the capacity slack left after each block.
        #[arg(long)]
        residuals: bool,
    },
    /// Produce a Latin filling.
    Fill {
        diagram: String,
        #[arg(long, value_enum, default_value_t = FillMethod::Pipeline)]
        method: FillMethod,
        #[arg(long, value_enum)]
        render: Option<Format>,
        #[arg(long, conflicts_with = "render")]
        json: bool,
    },
    /// Check a filling or an allocation against a diagram.
    Verify(VerifyArgs),
    /// Outline rectangles.
    #[command(subcommand)]
    Outline(OutlineCommand),
    /// Cross-check every diagram up to a size bound.
    Search {
        #[arg(long)]
        max_cells: i64,
        /// Keep only diagrams with at most this many distinct row lengths.
        #[arg(long)]
        max_p: Option<usize>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
    /// Draw a diagram, optionally with a filling.
    Render {
        diagram: String,
        #[arg(long)]
        filling: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "allocation", conflicts_with = "allocation")]
    filling: Option<String>,
    #[arg(long)]
    allocation: Option<String>,
    #[arg(long)]
    diagram: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum OutlineCommand {
    /// Check the outline rectangle conditions.
    Verify {
        outline: String,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a Latin square by row, column and symbol groups.
    Reduce {
        /// Latin square text: one row of symbols per line.
        #[arg(long)]
        square: String,
        /// `{"rows":[..],"cols":[..],"symbols":[..]}` group sizes.
        #[arg(long)]
        partition: String,
    },
    /// Build a Latin square that reduces to the outline rectangle.
    Reconstruct {
        outline: String,
        /// Print the square and the partition as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WideMethod {
    Oracle,
    Tails,
    Fast,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FillMethod {
    Pipeline,
    Exact,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

/// Text to print and whether the verdict was positive.
struct Outcome {
    out: String,
    positive: bool,
}

impl Outcome {
    fn yes(out: impl Into<String>) -> Self {
        Outcome {
            out: out.into(),
            positive: true,
        }
    }

    fn no(out: impl Into<String>) -> Self {
        Outcome {
            out: out.into(),
            positive: false,
        }
    }

    fn verdict(positive: bool, out: impl Into<String>) -> Self {
        Outcome {
            out: out.into(),
            positive,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            print!("{}", o.out);
            if !o.out.ends_with('\n') {
                println!();
            }
            ExitCode::from(if o.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Internal(_) => 3,
                _ => 2,
            })
        }
    }
}

fn diagram(arg: &str) -> Result<YoungDiagram> {
    read_arg(arg)?.parse()
}

fn pretty<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::CheckWide { diagram: d, method, json } => check_wide(&diagram(&d)?, method, json),
        Command::Allocate {
            diagram: d,
            json,
            residuals,
        } => cmd_allocate(&diagram(&d)?, json, residuals),
        Command::Fill {
            diagram: d,
            method,
            render,
            json,
        } => fill(&diagram(&d)?, method, render, json),
        Command::Verify(args) => verify(args),
        Command::Outline(cmd) => outline(cmd),
        Command::Search {
            max_cells,
            max_p,
            jobs,
            sequential,
            json,
        } => cmd_search(max_cells, max_p, jobs, sequential, json),
        Command::Render {
            diagram: d,
            filling,
            format,
        } => {
            let y = diagram(&d)?;
            let f = filling.map(|f| parse_json::<LatinFilling>(&f)).transpose()?;
            if let Some(f) = &f {
                verify_filling(&y, f).map_err(Error::InvalidFilling)?;
            }
            Ok(Outcome::yes(draw(&y, f.as_ref(), format)?))
        }
    }
}

fn draw(y: &YoungDiagram, f: Option<&LatinFilling>, format: Format) -> Result<String> {
    match format {
        Format::Ascii => render_ascii(y, f),
        Format::Svg => render_svg(y, f),
    }
}

fn check_wide(y: &YoungDiagram, method: WideMethod, json: bool) -> Result<Outcome> {
    let methods: &[Method] = match method {
        WideMethod::Oracle => &[Method::Oracle],
        WideMethod::Tails => &[Method::Tails],
        WideMethod::Fast => &[Method::Fast],
        WideMethod::All if y.rows() > ORACLE_MAX_ROWS => &[Method::Tails, Method::Fast],
        WideMethod::All => &[Method::Oracle, Method::Tails, Method::Fast],
    };
    let reports = methods
        .iter()
        .map(|&m| Ok((m, is_wide_with(y, m)?)))
        .collect::<Result<Vec<_>>>()?;
    let wide = reports[0].1.wide;
    if reports.iter().any(|(_, r)| r.wide != wide) {
        let verdicts: Vec<String> = reports.iter().map(|(m, r)| format!("{}={}", name(*m), r.wide)).collect();
        return Err(Error::Internal(format!(
            "wideness deciders disagree on {y}: {}",
            verdicts.join(", ")
        )));
    }
    if json {
        let by_method: serde_json::Map<String, serde_json::Value> = reports
            .iter()
            .map(|(m, r)| Ok((name(*m).to_string(), serde_json::to_value(r)?)))
            .collect::<Result<_>>()?;
        let v = json!({ "diagram": y, "wide": wide, "reports": by_method });
        return Ok(Outcome::verdict(wide, pretty(&v)?));
    }
    let mut out = String::new();
    if wide {
        out.push_str("wide\n");
    } else {
        let witness = reports.iter().find_map(|(_, r)| r.witness.as_ref());
        match witness {
            Some(w) => writeln!(out, "not wide: {w}").unwrap(),
            None => out.push_str("not wide\n"),
        }
    }
    if reports.len() > 1 {
        for (m, r) in &reports {
            writeln!(out, "  {}: {}, {} checks evaluated", name(*m), verdict_word(r.wide), r.checks).unwrap();
        }
    }
    Ok(Outcome::verdict(wide, out))
}

fn name(m: Method) -> &'static str {
    match m {
        Method::Oracle => "oracle",
        Method::Tails => "tails",
        Method::Fast => "fast",
    }
}

fn verdict_word(wide: bool) -> &'static str {
    if wide {
        "wide"
    } else {
        "not wide"
    }
}

fn cmd_allocate(y: &YoungDiagram, json: bool, with_residuals: bool) -> Result<Outcome> {
    let z = match allocate(y) {
        Ok(z) => z,
        Err(Error::NotWide(w)) => return Ok(Outcome::no(format!("not wide: {w}"))),
        Err(e) => return Err(e),
    };
    let table = with_residuals.then(|| residuals(y, &z)).transpose()?;
    if json {
        let v = match &table {
            Some(t) => json!({ "allocation": z, "residuals": t }),
            None => serde_json::to_value(&z)?,
        };
        return Ok(Outcome::yes(pretty(&v)?));
    }
    let mut out = allocation_text(&z);
    if let Some(t) = table {
        for i in 1..=3 {
            let rows: Vec<String> = t.slack[i - 1].iter().map(|r| format!("{r:?}")).collect();
            writeln!(out, "slack after block {i}: {}", rows.join(" ")).unwrap();
        }
        writeln!(out, "column slack: {:?}", t.rho).unwrap();
    }
    Ok(Outcome::yes(out))
}

fn allocation_text(z: &Allocation) -> String {
    let mut out = String::new();
    for (i, j, k, v) in z.entries() {
        if v != 0 {
            writeln!(out, "z[{i},{j},{k}] = {v}").unwrap();
        }
    }
    out
}

fn fill(y: &YoungDiagram, method: FillMethod, render: Option<Format>, json: bool) -> Result<Outcome> {
    let found = match method {
        FillMethod::Exact => fill_exact(y)?,
        FillMethod::Pipeline => match fill_via_allocation(y) {
            Ok(f) => Some(f),
            Err(Error::NotWide(w)) => return Ok(Outcome::no(format!("no Latin filling: not wide: {w}"))),
            Err(e) => return Err(e),
        },
    };
    let Some(f) = found else {
        return Ok(Outcome::no("no Latin filling"));
    };
    let out = match (render, json) {
        (Some(format), _) => draw(y, Some(&f), format)?,
        (None, true) => pretty(&f)?,
        (None, false) => f.to_string(),
    };
    Ok(Outcome::yes(out))
}

fn verify(args: VerifyArgs) -> Result<Outcome> {
    let y = diagram(&args.diagram)?;
    let (what, violation) = if let Some(f) = &args.filling {
        let f: LatinFilling = parse_json(f)?;
        let v = verify_filling(&y, &f).err();
        ("filling", v.map(|v| (v.to_string(), serde_json::to_value(v))))
    } else {
        let z: Allocation = parse_json(args.allocation.as_deref().unwrap_or("-"))?;
        let v: Option<AllocationViolation> = verify_allocation(&y, &z).err();
        ("allocation", v.map(|v| (v.to_string(), serde_json::to_value(v))))
    };
    let valid = violation.is_none();
    if args.json {
        let detail = violation.map(|(_, v)| v).transpose()?;
        let v = json!({ "object": what, "valid": valid, "violation": detail });
        return Ok(Outcome::verdict(valid, pretty(&v)?));
    }
    Ok(match violation {
        None => Outcome::yes(format!("valid {what}")),
        Some((text, _)) => Outcome::no(format!("invalid {what}: {text}")),
    })
}

fn outline(cmd: OutlineCommand) -> Result<Outcome> {
    match cmd {
        OutlineCommand::Verify { outline, json } => {
            let c: OutlineRectangle = parse_json(&outline)?;
            let violation = verify_outline(&c).err();
            let valid = violation.is_none();
            if json {
                let v = json!({
                    "valid": valid,
                    "condition": violation.as_ref().map(|v| v.condition()),
                    "violation": violation,
                });
                return Ok(Outcome::verdict(valid, pretty(&v)?));
            }
            Ok(match violation {
                None => Outcome::yes("valid outline rectangle"),
                Some(v) if v.condition() > 0 => {
                    Outcome::no(format!("invalid outline rectangle: condition {}: {v}", v.condition()))
                }
                Some(v) => Outcome::no(format!("invalid outline rectangle: {v}")),
            })
        }
        OutlineCommand::Reduce { square, partition } => {
            let l: LatinSquare = read_file(&square)?.parse()?;
            let part: ReductionPartition = parse_json(&partition)?;
            Ok(Outcome::yes(pretty(&reduce_latin(&l, &part)?)?))
        }
        OutlineCommand::Reconstruct { outline, json } => {
            let c: OutlineRectangle = parse_json(&outline)?;
            let (l, part) = outline_to_latin(&c)?;
            if json {
                let v = json!({ "square": l.rows(), "partition": part });
                return Ok(Outcome::yes(pretty(&v)?));
            }
            Ok(Outcome::yes(l.to_string()))
        }
    }
}

fn cmd_search(max_cells: i64, max_p: Option<usize>, jobs: usize, sequential: bool, json: bool) -> Result<Outcome> {
    let config = SearchConfig {
        max_cells,
        max_p,
        execution: if sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let report = with_jobs(jobs, || search(&config))?;
    let out = if json {
        pretty(&report)?
    } else {
        summary(&report)
    };
    Ok(Outcome::verdict(report.passed(), out))
}

fn summary(r: &HarnessReport) -> String {
    let c = &r.counts;
    let mut out = String::new();
    let bound = match r.corpus.max_p {
        Some(p) => format!("at most {} cells, at most {p} row lengths", r.corpus.max_cells),
        None => format!("at most {} cells", r.corpus.max_cells),
    };
    writeln!(out, "corpus: {bound}").unwrap();
    writeln!(out, "diagrams: {}", c.diagrams).unwrap();
    writeln!(out, "wide: {}", c.wide).unwrap();
    writeln!(out, "latin: {}", c.latin).unwrap();
    writeln!(out, "allocated: {}", c.allocated).unwrap();
    writeln!(out, "pipeline filled: {}", c.pipeline_filled).unwrap();
    if c.oracle_skipped > 0 {
        writeln!(out, "oracle skipped: {}", c.oracle_skipped).unwrap();
    }
    writeln!(out, "disagreements: {}", r.disagreements.len()).unwrap();
    for d in &r.disagreements {
        writeln!(out, "  {} [{}] {}", d.diagram, d.check, d.details).unwrap();
    }
    out
}
