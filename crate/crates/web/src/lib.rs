//! Browser bindings for a few upcluster operations.
//!
//! Each exported function has a plain Rust counterpart returning
//! `Result<String, String>` so it can be tested off the browser.

use std::fmt::Write;

use upcluster::dyck::Direction;
use upcluster::rank3::{classify_nonacyclic, classify_sides, find_root};
use upcluster::{build_dyck, Elements, ExtendedMatrix, Rank3Triple};
use wasm_bindgen::prelude::*;

const CELL: u32 = 36;
const PAD: u32 = 20;
const MAX_SIDE: u32 = 24;

fn parse_matrix(text: &str) -> Result<ExtendedMatrix, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("matrix: {e}"))?;
    if value.is_array() {
        let rows: Vec<Vec<i64>> = serde_json::from_value(value).map_err(|e| format!("matrix: {e}"))?;
        ExtendedMatrix::from_rows(rows).map_err(|e| e.to_string())
    } else {
        serde_json::from_value(value).map_err(|e| format!("matrix: {e}"))
    }
}

fn parse_ints(text: &str, what: &str) -> Result<Vec<i64>, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))
}

/// `x̃[a]` as a Laurent polynomial and as a single fraction, one per line.
pub fn xtilde_text(matrix: &str, a: &str) -> Result<String, String> {
    let b = parse_matrix(matrix)?;
    let a = parse_ints(a, "a")?;
    let p = Elements::new(&b).xtilde(&a).map_err(|e| e.to_string())?;
    Ok(format!("{p}\n{}", p.to_fraction_string()))
}

/// SVG drawing of the Dyck path for `(a1, a2)`. Edges whose label bit is
/// set in `s1` (horizontal) or `s2` (vertical) are highlighted; corners
/// get a dot.
pub fn dyck_svg_text(a1: u32, a2: u32, s1: u32, s2: u32) -> Result<String, String> {
    if a1 > MAX_SIDE || a2 > MAX_SIDE {
        return Err(format!("sides are limited to {MAX_SIDE} in the demo"));
    }
    let path = build_dyck(a1, a2);
    let (w, h) = (a1 * CELL + 2 * PAD, a2 * CELL + 2 * PAD);
    let px = |x: u32| PAD + x * CELL;
    let py = |y: u32| h - PAD - y * CELL;
    let mut svg = String::new();
    let _ = write!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = write!(
        svg,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb" stroke-dasharray="4 4"/>"##,
        px(0),
        py(0),
        px(a1),
        py(a2)
    );
    for e in path.steps() {
        let (x, y) = e.start;
        let (x2, y2, selected, prefix) = match e.direction {
            Direction::Horizontal => (x + 1, y, s1 >> (e.label - 1) & 1 == 1, 'u'),
            Direction::Vertical => (x, y + 1, s2 >> (e.label - 1) & 1 == 1, 'v'),
        };
        let (colour, width) = if selected { ("#c0392b", 5) } else { ("#333", 2) };
        let _ = write!(
            svg,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="{width}" stroke-linecap="round"/>"#,
            px(x),
            py(y),
            px(x2),
            py(y2)
        );
        let (lx, ly) = ((px(x) + px(x2)) / 2, (py(y) + py(y2)) / 2);
        let (lx, ly) = match e.direction {
            Direction::Horizontal => (lx, ly + 14),
            Direction::Vertical => (lx + 6, ly + 4),
        };
        let _ = write!(svg, r#"<text x="{lx}" y="{ly}" font-size="11" font-family="monospace">{prefix}{}</text>"#, e.label);
    }
    for w in path.steps().windows(2) {
        if w[0].direction == Direction::Horizontal && w[1].direction == Direction::Vertical {
            let (x, y) = w[1].start;
            let _ = write!(svg, r##"<circle cx="{}" cy="{}" r="4" fill="#2471a3"/>"##, px(x), py(y));
        }
    }
    let compatible = path.is_locally_compatible(u64::from(s1), u64::from(s2));
    let _ = write!(
        svg,
        r#"<text x="4" y="14" font-size="12" font-family="monospace">corners: {}, locally compatible: {compatible}</text></svg>"#,
        path.corner_count()
    );
    Ok(svg)
}

/// Classification of a nonnegative triple and, when non-acyclic, its root.
pub fn rank3_text(triple: &str) -> Result<String, String> {
    let v = parse_ints(triple, "triple")?;
    let t = Rank3Triple(<[i64; 3]>::try_from(v).map_err(|v| format!("triple needs 3 entries, got {}", v.len()))?);
    if t.0.iter().any(|&x| x < 0) {
        return Err("triple entries must be nonnegative".into());
    }
    if t.0.iter().any(|&x| x < 2) {
        return Ok(format!("{t}: acyclic (an entry is below 2)"));
    }
    let (lhs, rhs) = classify_sides(t);
    if !classify_nonacyclic(t) {
        return Ok(format!("{t}: acyclic ({lhs} < {rhs})"));
    }
    let root = find_root(t).map_err(|e| e.to_string())?;
    Ok(format!("{t}: non-acyclic ({lhs} >= {rhs})\nroot: {root}"))
}

#[wasm_bindgen]
pub fn xtilde(matrix: &str, a: &str) -> Result<String, JsError> {
    xtilde_text(matrix, a).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn dyck_svg(a1: u32, a2: u32, s1: u32, s2: u32) -> Result<String, JsError> {
    dyck_svg_text(a1, a2, s1, s2).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rank3(triple: &str) -> Result<String, JsError> {
    rank3_text(triple).map_err(|e| JsError::new(&e))
}
