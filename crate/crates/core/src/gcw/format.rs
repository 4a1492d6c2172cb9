//! Line-oriented text format.
//!
//! ```text
//! group cyclic 3
//! cell v dim 0 stab 1
//! cell e dim 1 stab 1
//! bd e : v [-1,1,0]
//! ```

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use super::{GcwBuilder, GcwComplex, GcwError};
use crate::reps::CyclicGroup;

fn parse_err(line: usize, message: impl Into<String>) -> GcwError {
    GcwError::Parse { line, message: message.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, field: &str, s: Option<&str>) -> Result<T, GcwError> {
    let s = s.ok_or_else(|| parse_err(line, format!("missing {field}")))?;
    s.parse().map_err(|_| parse_err(line, format!("bad {field}: {s:?}")))
}

fn expect_word(line: usize, want: &str, got: Option<&str>) -> Result<(), GcwError> {
    match got {
        Some(w) if w == want => Ok(()),
        Some(w) => Err(parse_err(line, format!("expected {want:?}, found {w:?}"))),
        None => Err(parse_err(line, format!("expected {want:?}"))),
    }
}

fn parse_vector(line: usize, s: &str) -> Result<Vec<i64>, GcwError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("coefficient vector must be bracketed: {s:?}")))?;
    inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| parse_err(line, format!("bad coefficient {c:?}"))))
        .collect()
}

/// Parse a complex from text; all invariants are validated.
pub fn parse_gcw(text: &str) -> Result<GcwComplex, GcwError> {
    let mut builder: Option<GcwBuilder> = None;
    let mut boundaries: Vec<(usize, String, Vec<(String, Vec<i64>)>)> = Vec::new();
    let mut basepoint: Option<(usize, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap();
        if builder.is_none() && head != "group" {
            return Err(parse_err(line, "first line must be `group cyclic <n>`"));
        }
        match head {
            "group" => {
                if builder.is_some() {
                    return Err(parse_err(line, "duplicate group line"));
                }
                expect_word(line, "cyclic", words.next())?;
                let n: u64 = parse_num(line, "group order", words.next())?;
                let g = CyclicGroup::new(n).map_err(|e| parse_err(line, e.to_string()))?;
                builder = Some(GcwBuilder::new(g));
            }
            "cell" => {
                let id = words.next().ok_or_else(|| parse_err(line, "missing cell id"))?;
                expect_word(line, "dim", words.next())?;
                let dim: usize = parse_num(line, "dim", words.next())?;
                expect_word(line, "stab", words.next())?;
                let h: u64 = parse_num(line, "stab", words.next())?;
                let b = builder.as_mut().unwrap();
                b.add_cell(id, dim, h).map_err(|e| match e {
                    GcwError::InvariantViolation { .. } => e,
                    other => parse_err(line, other.to_string()),
                })?;
            }
            "basepoint" => {
                let id = words.next().ok_or_else(|| parse_err(line, "missing basepoint id"))?;
                basepoint = Some((line, id.to_string()));
            }
            "bd" => {
                let rest = content["bd".len()..].trim();
                let (id, terms) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(line, "boundary line needs `:`"))?;
                let id = id.trim().to_string();
                let mut parsed = Vec::new();
                for term in terms.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                    let (target, vector) = term
                        .split_once('[')
                        .ok_or_else(|| parse_err(line, format!("term {term:?} lacks a coefficient vector")))?;
                    parsed.push((target.trim().to_string(), parse_vector(line, &format!("[{vector}"))?));
                }
                boundaries.push((line, id, parsed));
                continue;
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
        if let Some(extra) = words.next() {
            return Err(parse_err(line, format!("unexpected field {extra:?}")));
        }
    }
    let mut b = builder.ok_or_else(|| parse_err(1, "empty input"))?;
    for (line, id, terms) in boundaries {
        let cell = b.lookup(&id).ok_or_else(|| parse_err(line, format!("unknown cell {id:?}")))?;
        for (target, x) in terms {
            let t = b.lookup(&target).ok_or_else(|| parse_err(line, format!("unknown cell {target:?}")))?;
            b.add_boundary(cell, t, &x);
        }
    }
    if let Some((line, id)) = basepoint {
        let k = b.lookup(&id).ok_or_else(|| parse_err(line, format!("unknown basepoint {id:?}")))?;
        b.set_basepoint(k);
    }
    b.build()
}

pub fn load_gcw<R: Read>(mut reader: R) -> Result<GcwComplex, GcwError> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|e| GcwError::Io(e.to_string()))?;
    parse_gcw(&text)
}

/// Render in the text format.
pub fn write_gcw(x: &GcwComplex) -> String {
    let mut out = String::new();
    writeln!(out, "group cyclic {}", x.group().order()).unwrap();
    for c in x.cells() {
        writeln!(out, "cell {} dim {} stab {}", c.id, c.dim, c.stabilizer).unwrap();
    }
    if let Some(b) = x.basepoint() {
        writeln!(out, "basepoint {}", x.cell(b).id).unwrap();
    }
    for (k, c) in x.cells().iter().enumerate() {
        let terms = x.boundary(k);
        if terms.is_empty() {
            continue;
        }
        let body: Vec<String> = terms
            .iter()
            .map(|t| {
                let v: Vec<String> = t.coefficients.0.iter().map(i64::to_string).collect();
                format!("{} [{}]", x.cell(t.target).id, v.join(","))
            })
            .collect();
        writeln!(out, "bd {} : {}", c.id, body.join(" ; ")).unwrap();
    }
    out
}

pub fn save_gcw<W: Write>(x: &GcwComplex, mut writer: W) -> Result<(), GcwError> {
    writer.write_all(write_gcw(x).as_bytes()).map_err(|e| GcwError::Io(e.to_string()))
}

impl GcwComplex {
    pub fn from_path(path: impl AsRef<Path>) -> Result<GcwComplex, GcwError> {
        let f = std::fs::File::open(path.as_ref()).map_err(|e| GcwError::Io(format!("{}: {e}", path.as_ref().display())))?;
        load_gcw(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcw::sphere_of_rep;
    use crate::reps::parse_rep;

    #[test]
    fn round_trip() {
        let g = CyclicGroup::new(5).unwrap();
        let x = sphere_of_rep(&parse_rep(g, "xi+xi^2").unwrap()).unwrap();
        let text = write_gcw(&x);
        let y = parse_gcw(&text).unwrap();
        assert_eq!(x, y);
        let mut buf = Vec::new();
        save_gcw(&x, &mut buf).unwrap();
        assert_eq!(load_gcw(buf.as_slice()).unwrap(), x);
    }

    #[test]
    fn dimension_raising_boundary_rejected() {
        let text = "group cyclic 2\ncell a dim 1 stab 2\ncell b dim 2 stab 2\nbd a : b [1]\n";
        match parse_gcw(text) {
            Err(GcwError::InvariantViolation { cell, .. }) => assert_eq!(cell, "a"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let text = "group cyclic 2\n# comment\ncell a dim x stab 2\n";
        assert!(matches!(parse_gcw(text), Err(GcwError::Parse { line: 3, .. })));
        assert!(matches!(parse_gcw("cell a dim 0 stab 1"), Err(GcwError::Parse { line: 1, .. })));
        let text = "group cyclic 2\ncell a dim 0 stab 1\nbd a : zz [1]\n";
        assert!(matches!(parse_gcw(text), Err(GcwError::Parse { line: 3, .. })));
    }

    #[test]
    fn stabilizer_mismatch() {
        let text = "group cyclic 2\ncell v dim 0 stab 1\ncell e dim 1 stab 2\nbd e : v [1,-1]\n";
        assert!(matches!(parse_gcw(text), Err(GcwError::StabilizerMismatch { .. })));
    }
}
