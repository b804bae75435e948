//! Plain-text files for polynomials and generator lists.
//!
//! Polynomial file:
//!
//! ```text
//! zeta 3
//! degree 3
//! 3 0 0 : 1
//! 1 1 1 : -3*z
//! ```
//!
//! Generator file: a `zeta <n>` header, then matrices of three rows each,
//! separated by blank lines. Entries in a row are separated by commas, or by
//! whitespace when the row has no comma. Lines starting with `#` are ignored
//! everywhere.

use num_integer::Integer;

use crate::cyclo::{parse_scalar, CycloElem};
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::polyring::TernaryForm;
use crate::projgroup::ProjTransform;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Numbered lines with comments stripped; blank lines are kept as `None`.
fn numbered_lines(src: &str) -> impl Iterator<Item = (usize, Option<&str>)> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let t = raw.trim();
        if t.starts_with('#') {
            None
        } else if t.is_empty() {
            Some((i + 1, None))
        } else {
            Some((i + 1, Some(t)))
        }
    })
}

fn header_value(line: usize, text: &str, key: &str) -> Result<u32> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Err(parse_err(line, format!("expected `{key} <n>`")));
    }
    let value = parts
        .next()
        .and_then(|v| v.parse::<u32>().ok())
        .filter(|&v| v > 0)
        .ok_or_else(|| parse_err(line, format!("`{key}` needs a positive integer")))?;
    if parts.next().is_some() {
        return Err(parse_err(line, "trailing input after header"));
    }
    Ok(value)
}

pub fn parse_polynomial(src: &str) -> Result<TernaryForm> {
    let mut lines = numbered_lines(src).filter_map(|(n, t)| t.map(|t| (n, t)));
    let (l, t) = lines.next().ok_or_else(|| parse_err(1, "empty polynomial file"))?;
    let n = header_value(l, t, "zeta")?;
    let (l, t) = lines.next().ok_or_else(|| parse_err(l + 1, "missing `degree <d>`"))?;
    let d = header_value(l, t, "degree")?;
    let mut f = TernaryForm::zero(d);
    for (l, t) in lines {
        let (exps, expr) = t
            .split_once(':')
            .ok_or_else(|| parse_err(l, "expected `i j k : <scalar>`"))?;
        let e: Vec<u32> = exps
            .split_whitespace()
            .map(|v| v.parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(l, "exponents must be non-negative integers"))?;
        let e: [u32; 3] = e
            .try_into()
            .map_err(|_| parse_err(l, "expected three exponents"))?;
        if e.iter().sum::<u32>() != d {
            return Err(parse_err(l, format!("exponents do not sum to the degree {d}")));
        }
        let c = parse_scalar(expr.trim(), n).map_err(|m| parse_err(l, m))?;
        f.add_term(e, c).map_err(|err| parse_err(l, err.to_string()))?;
    }
    Ok(f)
}

pub fn emit_polynomial(f: &TernaryForm) -> String {
    let n = f.conductor();
    let mut out = format!("zeta {n}\ndegree {}\n", f.degree());
    for (e, c) in f.terms() {
        let c = c.embed_to(n).expect("the form's conductor");
        out.push_str(&format!("{} {} {} : {}\n", e[0], e[1], e[2], c.to_expr()));
    }
    out
}

fn parse_row(line: usize, text: &str, n: u32) -> Result<[CycloElem; 3]> {
    let cells: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.split_whitespace().collect()
    };
    let cells: [&str; 3] = cells
        .try_into()
        .map_err(|_| parse_err(line, "a matrix row needs three entries"))?;
    let mut row = cells.map(|_| CycloElem::zero());
    for (slot, cell) in row.iter_mut().zip(cells) {
        *slot = parse_scalar(cell, n).map_err(|m| parse_err(line, m))?;
    }
    Ok(row)
}

pub fn parse_generators(src: &str) -> Result<Vec<ProjTransform>> {
    let mut lines = numbered_lines(src).skip_while(|(_, t)| t.is_none());
    let (l, t) = lines.next().ok_or_else(|| parse_err(1, "empty generator file"))?;
    let n = header_value(l, t.expect("non-blank"), "zeta")?;
    let mut gens = Vec::new();
    let mut rows: Vec<[CycloElem; 3]> = Vec::new();
    let mut first_row_line = l;
    let mut flush = |rows: &mut Vec<[CycloElem; 3]>, line: usize| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let m: Mat3 = std::mem::take(rows)
            .try_into()
            .map_err(|r: Vec<_>| parse_err(line, format!("a matrix needs three rows, found {}", r.len())))?;
        gens.push(ProjTransform::new(m).map_err(|e| parse_err(line, e.to_string()))?);
        Ok(())
    };
    for (l, t) in lines {
        match t {
            None => flush(&mut rows, first_row_line)?,
            Some(t) => {
                if rows.is_empty() {
                    first_row_line = l;
                }
                if rows.len() == 3 {
                    return Err(parse_err(l, "a matrix has three rows; separate matrices by a blank line"));
                }
                rows.push(parse_row(l, t, n)?);
            }
        }
    }
    flush(&mut rows, first_row_line)?;
    if gens.is_empty() {
        return Err(parse_err(l, "no matrices after the header"));
    }
    Ok(gens)
}

pub fn emit_generators(gens: &[ProjTransform]) -> String {
    let n = gens.iter().fold(1u32, |a, g| a.lcm(&g.conductor()));
    let mut out = format!("zeta {n}\n");
    for (i, g) in gens.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for row in g.matrix() {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.embed_to(n).expect("common conductor").to_expr())
                .collect();
            out.push_str(&cells.join(", "));
            out.push('\n');
        }
    }
    out
}
