//! Line-oriented code description format.
//!
//! ```text
//! # comments run to the end of the line
//! code q=2 m=9 l=2
//! constituent coset=3
//! row 1 | g
//! ```
//!
//! Row entries are `0`, `g` (the generator polynomial of the block's coset) or
//! a polynomial such as `1 + 2*x^3 + x`. Coefficients are integers reduced
//! modulo the characteristic, or `w^k` (a power of the root of the modulus of
//! `F_q`) when `q` is not prime.

use std::sync::Arc;

use crate::code::{ConstituentSpec, QccSpec, RowEntry};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::numth::{self, CyclotomicCoset};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A token with its 1-based starting column.
#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn words(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Tok {
                    text: &line[s..i],
                    col: s + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn parse_uint(tok: Tok<'_>, text: &str, line: usize, what: &str) -> Result<u64> {
    text.parse::<u64>()
        .map_err(|_| syntax(line, tok.col, format!("{what} must be a non-negative integer, got '{text}'")))
}

/// Parses `key=value` pairs, requiring exactly the given keys.
fn key_values(toks: &[Tok<'_>], keys: &[&str], line: usize) -> Result<Vec<u64>> {
    let mut values: Vec<Option<u64>> = vec![None; keys.len()];
    for &tok in toks {
        let Some((key, value)) = tok.text.split_once('=') else {
            return Err(syntax(line, tok.col, format!("expected key=value, got '{}'", tok.text)));
        };
        let Some(slot) = keys.iter().position(|&k| k == key) else {
            return Err(syntax(line, tok.col, format!("unknown key '{key}'")));
        };
        if values[slot].is_some() {
            return Err(syntax(line, tok.col, format!("duplicate key '{key}'")));
        }
        values[slot] = Some(parse_uint(tok, value, line, key)?);
    }
    keys.iter()
        .zip(values)
        .map(|(k, v)| v.ok_or_else(|| syntax(line, 1, format!("missing key '{k}'"))))
        .collect()
}

struct Header {
    q: u64,
    m: u64,
    l: usize,
    field: Arc<Field>,
}

fn parse_header(toks: &[Tok<'_>], line: usize) -> Result<Header> {
    let vals = key_values(&toks[1..], &["q", "m", "l"], line)?;
    let (q, m, l) = (vals[0], vals[1], vals[2]);
    let (p, e) = numth::prime_power(q)
        .ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power (line {line})")))?;
    if m == 0 {
        return Err(Error::invalid(format!("m must be positive (line {line})")));
    }
    if l < 2 {
        return Err(Error::invalid(format!("index l must be at least 2, got {l} (line {line})")));
    }
    numth::multiplicative_order(q, m)?;
    let field = Field::build(p as u32, e)?;
    Ok(Header {
        q,
        m,
        l: l as usize,
        field,
    })
}

fn parse_coefficient(text: &str, col: usize, line: usize, h: &Header) -> Result<u32> {
    let f = &h.field;
    if let Some(rest) = text.strip_prefix('w') {
        if f.degree() == 1 {
            return Err(syntax(line, col, format!("'w' coefficients need a non-prime q, but q = {}", h.q)));
        }
        let exp = match rest.strip_prefix('^') {
            None if rest.is_empty() => 1,
            Some(e) => e
                .parse::<u64>()
                .map_err(|_| syntax(line, col, format!("bad exponent in coefficient '{text}'")))?,
            None => return Err(syntax(line, col, format!("bad coefficient '{text}'"))),
        };
        return Ok(f.pow(f.root(), exp));
    }
    if text.starts_with('-') {
        return Err(syntax(line, col, format!("negative coefficient '{text}' is not allowed")));
    }
    let n = text
        .parse::<u64>()
        .map_err(|_| syntax(line, col, format!("bad coefficient '{text}'")))?;
    Ok((n % f.characteristic() as u64) as u32)
}

fn parse_monomial(text: &str, col: usize, line: usize, h: &Header) -> Result<u64> {
    if text == "x" {
        return Ok(1);
    }
    let Some(e) = text.strip_prefix("x^") else {
        return Err(syntax(line, col, format!("expected x or x^<exp>, got '{text}'")));
    };
    let exp = e
        .parse::<u64>()
        .map_err(|_| syntax(line, col, format!("bad exponent '{e}'")))?;
    if exp >= h.m {
        return Err(syntax(line, col, format!("exponent {exp} must be less than m = {}", h.m)));
    }
    Ok(exp)
}

/// Polynomial `term (+ term)*`; `col` is the column of `text`'s first byte.
fn parse_polynomial(text: &str, col: usize, line: usize, h: &Header) -> Result<Vec<u32>> {
    let f = &h.field;
    let mut coeffs = vec![0u32; h.m as usize];
    let mut offset = 0;
    for raw in text.split('+') {
        let lead = raw.len() - raw.trim_start().len();
        let term = raw.trim();
        let tcol = col + offset + lead;
        offset += raw.len() + 1;
        if term.is_empty() {
            return Err(syntax(line, tcol, "empty term in polynomial"));
        }
        let compact: String = term.split_whitespace().collect();
        let (coeff, exp) = match compact.split_once('*') {
            Some((c, mono)) => (parse_coefficient(c, tcol, line, h)?, parse_monomial(mono, tcol, line, h)?),
            None if compact.starts_with('x') => (1, parse_monomial(&compact, tcol, line, h)?),
            None => (parse_coefficient(&compact, tcol, line, h)?, 0),
        };
        coeffs[exp as usize] = f.add(coeffs[exp as usize], coeff);
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn parse_entry(text: &str, col: usize, line: usize, h: &Header) -> Result<RowEntry> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let col = col + lead;
    match body {
        "" => Err(syntax(line, col, "empty row entry")),
        "0" => Ok(RowEntry::Zero),
        "g" | "G" => Ok(RowEntry::Generator),
        _ => Ok(RowEntry::Poly(parse_polynomial(body, col, line, h)?)),
    }
}

/// Parses a code description and validates it.
pub fn parse_config(text: &str) -> Result<QccSpec> {
    let mut header: Option<Header> = None;
    let mut constituents: Vec<(ConstituentSpec, usize)> = Vec::new();
    let mut cosets: Vec<CyclotomicCoset> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = words(content);
        let Some(&first) = toks.first() else {
            continue;
        };
        match (first.text, &header) {
            ("code", None) => header = Some(parse_header(&toks, line)?),
            ("code", Some(_)) => return Err(syntax(line, first.col, "duplicate 'code' line")),
            (_, None) => {
                return Err(syntax(
                    line,
                    first.col,
                    format!("expected 'code q=<int> m=<int> l=<int>' before '{}'", first.text),
                ))
            }
            ("constituent", Some(h)) => {
                let coset_rep = key_values(&toks[1..], &["coset"], line)?[0];
                if coset_rep >= h.m {
                    return Err(syntax(
                        line,
                        toks.get(1).map_or(first.col, |t| t.col),
                        format!("coset representative {coset_rep} must be less than m = {}", h.m),
                    ));
                }
                let coset = numth::coset_of(h.q, h.m, coset_rep)?;
                if let Some(prev) = cosets.iter().find(|c| **c == coset) {
                    return Err(syntax(
                        line,
                        first.col,
                        format!("duplicate coset: {coset_rep} lies in the coset of {} used earlier", prev.rep),
                    ));
                }
                cosets.push(coset);
                constituents.push((
                    ConstituentSpec {
                        coset_rep,
                        rows: Vec::new(),
                    },
                    line,
                ));
            }
            ("row", Some(h)) => {
                let Some((current, _)) = constituents.last_mut() else {
                    return Err(syntax(line, first.col, "'row' must follow a 'constituent' line"));
                };
                let body_start = first.col - 1 + first.text.len();
                let body = &content[body_start..];
                let mut entries = Vec::new();
                let mut offset = body_start;
                for part in body.split('|') {
                    entries.push(parse_entry(part, offset + 1, line, h)?);
                    offset += part.len() + 1;
                }
                if entries.len() != h.l {
                    return Err(syntax(
                        line,
                        first.col,
                        format!("row has {} entries, expected l = {}", entries.len(), h.l),
                    ));
                }
                current.rows.push(entries);
            }
            (other, Some(_)) => return Err(syntax(line, first.col, format!("unknown keyword '{other}'"))),
        }
    }
    let h = header.ok_or_else(|| syntax(1, 1, "missing 'code q=<int> m=<int> l=<int>' line"))?;
    for (c, line) in &constituents {
        if c.rows.is_empty() {
            return Err(syntax(*line, 1, format!("constituent with coset {} has no rows", c.coset_rep)));
        }
    }
    let spec = QccSpec {
        q: h.q,
        m: h.m,
        l: h.l,
        constituents: constituents.into_iter().map(|(c, _)| c).collect(),
    };
    spec.validate()?;
    Ok(spec)
}
