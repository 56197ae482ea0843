//! Text and SVG pictures of diagrams and fillings.

use std::fmt::Write;

use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};
use crate::filling::LatinFilling;

/// Largest diagram rendered cell by cell.
pub const RENDER_MAX_CELLS: i64 = 10_000;

fn gate(y: &YoungDiagram) -> Result<()> {
    if y.cells() > RENDER_MAX_CELLS {
        return Err(Error::ScaleLimit {
            what: "cell count",
            limit: RENDER_MAX_CELLS as u64,
            actual: y.cells() as u64,
        });
    }
    Ok(())
}

fn label(f: Option<&LatinFilling>, r: usize, c: usize) -> String {
    f.map_or_else(String::new, |f| f.rows()[r][c].to_string())
}

/// Boxed grid, top row first. Cells show symbols when a filling is given.
pub fn render_ascii(y: &YoungDiagram, filling: Option<&LatinFilling>) -> Result<String> {
    gate(y)?;
    let rows = y.rows_desc();
    let w = filling.map_or(1, |_| y.longest().to_string().len());
    let border = |len: i64| {
        let mut s = String::from("+");
        for _ in 0..len {
            s.push_str(&"-".repeat(w + 2));
            s.push('+');
        }
        s
    };
    let mut out = String::new();
    for (r, &len) in rows.iter().enumerate() {
        out.push_str(&border(rows[r.saturating_sub(1)]));
        out.push('\n');
        out.push('|');
        for c in 0..len as usize {
            let _ = write!(out, " {:>w$} |", label(filling, r, c));
        }
        out.push('\n');
    }
    out.push_str(&border(rows[rows.len() - 1]));
    out.push('\n');
    Ok(out)
}

/// Standalone SVG document with one square per cell.
pub fn render_svg(y: &YoungDiagram, filling: Option<&LatinFilling>) -> Result<String> {
    gate(y)?;
    const CELL: i64 = 32;
    let rows = y.rows_desc();
    let (width, height) = (y.longest() * CELL + 2, rows.len() as i64 * CELL + 2);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len as usize {
            let (x, yy) = (1 + c as i64 * CELL, 1 + r as i64 * CELL);
            let _ = writeln!(
                out,
                r#"  <rect x="{x}" y="{yy}" width="{CELL}" height="{CELL}" fill="white" stroke="black"/>"#
            );
            if let Some(f) = filling {
                let _ = writeln!(
                    out,
                    r#"  <text x="{}" y="{}" font-family="monospace" font-size="14" text-anchor="middle" dominant-baseline="central">{}</text>"#,
                    x + CELL / 2,
                    yy + CELL / 2,
                    f.rows()[r][c]
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
