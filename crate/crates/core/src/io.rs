//! Line-oriented text formats: `poset v1`, `complex v1`, `betti v1`,
//! `family v1`, and the `key = value` reports `leray v1` and `report v1`.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::families::{FamilyError, OpenBox, Rational, SetFamily};
use crate::homology::BettiVector;
use crate::nerve::LabeledPoset;
use crate::poset::{PosetError, RawCell, SimplicialComplex, SimplicialPoset};

pub const FORMATS: &[&str] = &["poset v1", "complex v1", "betti v1", "family v1", "leray v1", "report v1"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected {expected}, found {found:?}")]
    Syntax { line: usize, expected: String, found: String },
    #[error("line {line}: unsupported format {found:?} (expected {expected:?})")]
    Version { line: usize, expected: String, found: String },
    #[error("invalid poset: {0}")]
    Poset(#[from] PosetError),
    #[error("invalid family: {0}")]
    Family(#[from] FamilyError),
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

fn syntax(line: usize, expected: &str, found: &str) -> ParseError {
    ParseError::Syntax {
        line,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<(usize, &'a str), ParseError> {
    let Some((n, l)) = lines.next() else {
        return Err(syntax(1, &format!("header {header:?}"), "end of input"));
    };
    let words: Vec<&str> = l.split_whitespace().collect();
    let want: Vec<&str> = header.split_whitespace().collect();
    if words.len() < want.len() || words[0] != want[0] {
        return Err(syntax(n, &format!("header {header:?}"), l));
    }
    if words[..want.len()] != want[..] {
        return Err(ParseError::Version {
            line: n,
            expected: header.to_string(),
            found: words[..want.len()].join(" "),
        });
    }
    Ok((n, l))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| syntax(line, what, tok))
}

/// Parses `poset v1`. A label column after `|` is accepted and ignored.
pub fn parse_poset(text: &str) -> Result<SimplicialPoset, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "poset v1")?;
    let mut records = Vec::new();
    for (n, l) in lines {
        let body = l.split('|').next().unwrap();
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(syntax(n, "<id> <dim> <faces...>", l));
        }
        let id: u64 = parse_num(n, toks[0], "cell id")?;
        let dim: i32 = parse_num(n, toks[1], "dimension")?;
        let faces = toks[2..].iter().map(|t| parse_num(n, t, "face id")).collect::<Result<Vec<u64>, _>>()?;
        records.push(RawCell::new(id, dim, faces));
    }
    Ok(SimplicialPoset::build(&records)?)
}

pub fn write_poset(p: &SimplicialPoset) -> String {
    let mut s = String::from("poset v1\n");
    for r in p.to_records() {
        write_record(&mut s, &r);
        s.push('\n');
    }
    s
}

fn write_record(s: &mut String, r: &RawCell) {
    write!(s, "{} {}", r.id, r.dim).unwrap();
    for f in &r.faces {
        write!(s, " {f}").unwrap();
    }
}

/// `poset v1` with a `| A=<set> C=<component id or *>` label column.
pub fn write_labeled_poset(m: &LabeledPoset) -> String {
    let mut s = String::from("poset v1\n");
    for r in m.poset.to_records() {
        write_record(&mut s, &r);
        writeln!(s, " | {}", m.labels[r.id as usize]).unwrap();
    }
    s
}

/// Parses `complex v1` lines `<id> <vertices...>` until the end of input or a
/// line `end`. Returns the complex and the map from file ids to simplex ids.
fn parse_complex_body<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    allow_end: bool,
) -> Result<(SimplicialComplex, HashMap<u64, usize>), ParseError> {
    let mut entries: Vec<(usize, u64, Vec<u32>)> = Vec::new();
    let mut seen = HashMap::new();
    let mut ended = false;
    for (n, l) in lines.by_ref() {
        if allow_end && l == "end" {
            ended = true;
            break;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(syntax(n, "<id> <vertices...>", l));
        }
        let id: u64 = parse_num(n, toks[0], "simplex id")?;
        let verts = toks[1..].iter().map(|t| parse_num(n, t, "vertex label")).collect::<Result<Vec<u32>, _>>()?;
        if seen.insert(id, n).is_some() {
            return Err(ParseError::Invalid {
                line: n,
                message: format!("duplicate simplex id {id}"),
            });
        }
        entries.push((n, id, verts));
    }
    if allow_end && !ended {
        return Err(syntax(0, "\"end\" closing the complex block", "end of input"));
    }
    let complex = SimplicialComplex::from_simplices(entries.iter().map(|(_, _, v)| v)).map_err(|e| {
        let line = entries.first().map_or(0, |e| e.0);
        ParseError::Invalid {
            line,
            message: e.to_string(),
        }
    })?;
    let mut ids = HashMap::new();
    for (n, id, mut v) in entries {
        v.sort_unstable();
        let canonical = complex.id_of(&v).ok_or(ParseError::Invalid {
            line: n,
            message: format!("simplex {v:?} repeats a vertex"),
        })?;
        ids.insert(id, canonical);
    }
    Ok((complex, ids))
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "complex v1")?;
    Ok(parse_complex_body(&mut lines, false)?.0)
}

/// `complex v1` with ids equal to canonical simplex ids.
pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut s = String::from("complex v1\n");
    write_complex_body(&mut s, k);
    s
}

fn write_complex_body(s: &mut String, k: &SimplicialComplex) {
    for (i, simplex) in k.simplices().iter().enumerate() {
        write!(s, "{i}").unwrap();
        for v in simplex {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
}

pub fn write_betti(b: &BettiVector) -> String {
    format!("betti v1\n{}", b.to_betti_v1())
}

pub fn parse_betti(text: &str) -> Result<BettiVector, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "betti v1")?;
    let mut values: Vec<usize> = Vec::new();
    for (n, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(n, "<dim> <value>", l));
        }
        let d: i32 = parse_num(n, toks[0], "dimension")?;
        let v: usize = parse_num(n, toks[1], "Betti number")?;
        if d < -1 {
            return Err(syntax(n, "dimension >= -1", toks[0]));
        }
        let k = (d + 1) as usize;
        if values.len() <= k {
            values.resize(k + 1, 0);
        }
        values[k] = v;
    }
    Ok(BettiVector::from_values(values))
}

/// `p/q` or an integer.
pub fn parse_rational(line: usize, tok: &str) -> Result<Rational, ParseError> {
    let (p, q) = match tok.split_once('/') {
        Some((p, q)) => (p, q),
        None => (tok, "1"),
    };
    let p: i64 = parse_num(line, p, "rational numerator")?;
    let q: i64 = parse_num(line, q, "rational denominator")?;
    if q == 0 {
        return Err(syntax(line, "non-zero denominator", tok));
    }
    Ok(Rational::new(p, q))
}

/// Parses `family v1 subcomplex` or `family v1 box <d>`.
pub fn parse_family(text: &str) -> Result<SetFamily, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (hn, header) = expect_header(&mut lines, "family v1")?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let backend = words.get(2).copied().unwrap_or("");
    let mut gamma: Option<usize> = None;
    if let Some(&(n, l)) = lines.peek() {
        if let Some(rest) = l.strip_prefix("gamma-dim") {
            gamma = Some(parse_num(n, rest.trim(), "gamma dimension")?);
            lines.next();
        }
    }
    let family = match backend {
        "subcomplex" => {
            match lines.next() {
                Some((_, "complex v1")) => {}
                Some((n, l)) => return Err(syntax(n, "\"complex v1\"", l)),
                None => return Err(syntax(hn, "\"complex v1\"", "end of input")),
            }
            let (ambient, ids) = parse_complex_body(&mut lines, true)?;
            let mut members = Vec::new();
            for (n, l) in lines {
                let mut toks = l.split_whitespace();
                if toks.next() != Some("member") {
                    return Err(syntax(n, "member <simplex ids...>", l));
                }
                let mut m = Vec::new();
                for t in toks {
                    let id: u64 = parse_num(n, t, "simplex id")?;
                    m.push(*ids.get(&id).ok_or(ParseError::Invalid {
                        line: n,
                        message: format!("unknown simplex id {id}"),
                    })?);
                }
                members.push(m);
            }
            SetFamily::subcomplex(ambient, members)?
        }
        "box" => {
            let dim: usize = match words.get(3) {
                Some(t) => parse_num(hn, t, "box dimension")?,
                None => return Err(syntax(hn, "family v1 box <dimension>", header)),
            };
            if dim == 0 {
                return Err(syntax(hn, "positive box dimension", "0"));
            }
            let mut members: Vec<Vec<OpenBox>> = Vec::new();
            for (n, l) in lines {
                let toks: Vec<&str> = l.split_whitespace().collect();
                match toks[0] {
                    "member" if toks.len() == 1 => members.push(Vec::new()),
                    "box" => {
                        let Some(current) = members.last_mut() else {
                            return Err(syntax(n, "\"member\" before the first box", l));
                        };
                        if toks.len() != 1 + 2 * dim {
                            return Err(syntax(n, &format!("box with {} endpoints", 2 * dim), l));
                        }
                        let q = toks[1..].iter().map(|t| parse_rational(n, t)).collect::<Result<Vec<_>, _>>()?;
                        let lo = q.iter().step_by(2).copied().collect();
                        let hi = q.iter().skip(1).step_by(2).copied().collect();
                        let b = OpenBox::new(lo, hi).map_err(|e| ParseError::Invalid {
                            line: n,
                            message: e.to_string(),
                        })?;
                        current.push(b);
                    }
                    _ => return Err(syntax(n, "\"member\" or \"box ...\"", l)),
                }
            }
            SetFamily::boxes(dim, members)?
        }
        other => return Err(syntax(hn, "backend \"subcomplex\" or \"box <d>\"", other)),
    };
    match gamma {
        Some(g) => Ok(family.with_gamma_dim(g)?),
        None => Ok(family),
    }
}

/// Canonical `family v1` text; also the input of instance hashes.
pub fn write_family(f: &SetFamily) -> String {
    let mut s = String::new();
    if let Some(ambient) = f.ambient() {
        writeln!(s, "family v1 subcomplex {}", ambient.dim()).unwrap();
        if f.gamma_dim_is_assumed() {
            writeln!(s, "gamma-dim {}", f.gamma_dim()).unwrap();
        }
        s.push_str("complex v1\n");
        write_complex_body(&mut s, ambient);
        s.push_str("end\n");
        for i in 0..f.len() {
            s.push_str("member");
            for id in f.subcomplex_member(i).unwrap() {
                write!(s, " {id}").unwrap();
            }
            s.push('\n');
        }
    } else {
        writeln!(s, "family v1 box {}", f.box_dim().unwrap()).unwrap();
        if f.gamma_dim_is_assumed() {
            writeln!(s, "gamma-dim {}", f.gamma_dim()).unwrap();
        }
        for i in 0..f.len() {
            s.push_str("member\n");
            for b in f.box_member(i).unwrap() {
                writeln!(s, "{b}").unwrap();
            }
        }
    }
    s
}

/// Reads `key = value` lines after the given header; `CHECK` lines are
/// returned separately in order.
pub fn parse_key_values(text: &str, header: &str) -> Result<(HashMap<String, String>, Vec<String>), ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, header)?;
    let mut map = HashMap::new();
    let mut checks = Vec::new();
    let mut in_block = false;
    for (n, l) in lines {
        if in_block {
            in_block = l != "end bundle";
            continue;
        }
        if l == "begin bundle" {
            in_block = true;
        } else if let Some(rest) = l.strip_prefix("CHECK ") {
            checks.push(rest.to_string());
        } else if let Some((k, v)) = l.split_once(" = ") {
            map.insert(k.trim().to_string(), v.trim().to_string());
        } else {
            return Err(syntax(n, "<key> = <value>", l));
        }
    }
    Ok((map, checks))
}
