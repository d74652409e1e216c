//! Line-oriented text formats for instances, witnesses and permutations.
//!
//! ```text
//! # comment lines are ignored
//! n=5 m=4
//! X 1 3
//! X 4 5
//! X 1 5
//! X 2 3 4
//! tau 2 4 5 1 3
//! ```
//!
//! A witness file holds `m` lines `sigma <images…>`.

use crate::error::{Error, Result};
use crate::instance::{Instance, Witness};
use crate::perm::{Permutation, SpecSet};

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let t = raw.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some(Line {
            number: i + 1,
            text: raw,
        })
    })
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace separated tokens with their 1-based column.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn parse_ints(line: &Line<'_>, toks: &[(usize, &str)]) -> Result<Vec<usize>> {
    toks.iter()
        .map(|&(col, t)| {
            t.parse::<usize>().map_err(|_| {
                parse_err(
                    line.number,
                    col,
                    format!("expected a non-negative integer, found `{t}`"),
                )
            })
        })
        .collect()
}

fn keyword_line<'a>(line: &Line<'a>, keyword: &str) -> Result<Vec<(usize, &'a str)>> {
    let toks = tokens(line.text);
    match toks.first() {
        Some(&(_, k)) if k == keyword => Ok(toks[1..].to_vec()),
        Some(&(col, k)) => Err(parse_err(
            line.number,
            col,
            format!("expected `{keyword}`, found `{k}`"),
        )),
        None => Err(parse_err(line.number, 1, format!("expected `{keyword}`"))),
    }
}

fn parse_perm_line(line: &Line<'_>, keyword: &str, n: usize) -> Result<Permutation> {
    let toks = keyword_line(line, keyword)?;
    let images = parse_ints(line, &toks)?;
    if images.len() != n {
        return Err(parse_err(
            line.number,
            1,
            format!("`{keyword}` needs {n} entries, found {}", images.len()),
        ));
    }
    Permutation::from_images(&images).map_err(|e| parse_err(line.number, 1, e.to_string()))
}

fn parse_header(line: &Line<'_>) -> Result<(usize, usize)> {
    let toks = tokens(line.text);
    let mut n = None;
    let mut m = None;
    for &(col, t) in &toks {
        let (key, value) = t
            .split_once('=')
            .ok_or_else(|| parse_err(line.number, col, format!("expected `key=value`, found `{t}`")))?;
        let value: usize = value
            .parse()
            .map_err(|_| parse_err(line.number, col + key.len() + 1, format!("bad integer `{value}`")))?;
        match key {
            "n" => n = Some(value),
            "m" => m = Some(value),
            _ => return Err(parse_err(line.number, col, format!("unknown key `{key}`"))),
        }
    }
    match (n, m) {
        (Some(n), Some(m)) if n >= 1 => Ok((n, m)),
        (Some(_), Some(_)) => Err(parse_err(line.number, 1, "n must be at least 1")),
        _ => Err(parse_err(line.number, 1, "header must be `n=<int> m=<int>`")),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let last_line = text.lines().count().max(1);
    let eof = |what: &str| parse_err(last_line, 1, format!("unexpected end of input, expected {what}"));

    let header = lines.next().ok_or_else(|| eof("header `n=<int> m=<int>`"))?;
    let (n, m) = parse_header(&header)?;
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next().ok_or_else(|| eof("an `X` line"))?;
        let toks = keyword_line(&line, "X")?;
        let elements = parse_ints(&line, &toks)?;
        sets.push(SpecSet::new(n, elements).map_err(|e| parse_err(line.number, 1, e.to_string()))?);
    }
    let line = lines.next().ok_or_else(|| eof("the `tau` line"))?;
    let tau = parse_perm_line(&line, "tau", n)?;
    if let Some(extra) = lines.next() {
        return Err(parse_err(extra.number, 1, "trailing content after `tau`"));
    }
    Instance::new(n, sets, tau)
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = format!("n={} m={}\n", instance.n(), instance.m());
    for x in instance.sets() {
        out.push('X');
        for e in x.elements() {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out.push_str(&perm_line("tau", instance.tau()));
    out
}

/// Parses `m` lines `sigma <images…>` of degree `n`.
pub fn parse_witness(text: &str, n: usize) -> Result<Witness> {
    let factors = content_lines(text)
        .map(|line| parse_perm_line(&line, "sigma", n))
        .collect::<Result<Vec<_>>>()?;
    Ok(Witness { factors })
}

pub fn write_witness(witness: &Witness) -> String {
    witness.factors.iter().map(|s| perm_line("sigma", s)).collect()
}

/// `<label> <images…>\n`
pub fn perm_line(label: &str, p: &Permutation) -> String {
    let mut out = String::from(label);
    for v in p.images() {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    out
}

/// Parses a permutation written as `2 4 5 1 3`, `2,4,5,1,3` or `(2,4,5,1,3)`.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let images = parse_int_list(text)?;
    Permutation::from_images(&images)
}

/// Parses a set written as `2 5 7`, `2,5,7` or `{2,5,7}`.
pub fn parse_set(text: &str, n: usize) -> Result<SpecSet> {
    SpecSet::new(n, parse_int_list(text)?)
}

fn parse_int_list(text: &str) -> Result<Vec<usize>> {
    let cleaned: String = text
        .chars()
        .map(|c| if "(){}[],".contains(c) { ' ' } else { c })
        .collect();
    tokens(&cleaned)
        .into_iter()
        .map(|(col, t)| {
            t.parse()
                .map_err(|_| parse_err(1, col, format!("expected an integer, found `{t}`")))
        })
        .collect()
}
