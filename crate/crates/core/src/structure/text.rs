//! Line-oriented text formats for structures and maps. `#` starts a comment.
//!
//! ```text
//! structure NAME
//! domain K
//! relation R arity A size M        (then M lines of A integers)
//! relation R arity A intensional TAG n=N p=P
//! end
//! ```

use std::fmt::Write;

use super::{is_identifier, FiniteStructure, Homomorphism, Relation, Thm1Kind, Thm1Relation, TupleSet};
use crate::error::{parse_err, Error, Result};
use crate::Elem;

/// Non-empty lines with comments removed, numbered from 1.
pub(crate) fn content_lines(s: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    s.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a number, found `{token}`")))
}

/// Parses `key=value`.
pub(crate) fn parse_kv<T: std::str::FromStr>(line: usize, token: &str, key: &str) -> Result<T> {
    match token.split_once('=') {
        Some((k, v)) if k == key => parse_num(line, v),
        _ => Err(parse_err(line, format!("expected `{key}=...`, found `{token}`"))),
    }
}

pub(crate) fn expect_keyword(line: usize, token: Option<&&str>, keyword: &str) -> Result<()> {
    match token {
        Some(&t) if t == keyword => Ok(()),
        Some(t) => Err(parse_err(line, format!("expected `{keyword}`, found `{t}`"))),
        None => Err(parse_err(line, format!("expected `{keyword}`"))),
    }
}

pub(crate) fn parse_row(line: usize, tokens: &[&str]) -> Result<Vec<Elem>> {
    tokens.iter().map(|t| parse_num(line, t)).collect()
}

pub(crate) fn write_row(out: &mut String, row: &[Elem]) {
    let mut first = true;
    for v in row {
        if !first {
            out.push(' ');
        }
        first = false;
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

pub(crate) fn serialize_structure(s: &FiniteStructure) -> String {
    let mut out = String::new();
    writeln!(out, "structure {}", s.name()).unwrap();
    writeln!(out, "domain {}", s.domain_size()).unwrap();
    for (i, rel) in s.relations().iter().enumerate() {
        let symbol = s.symbol(i);
        match rel {
            Relation::Extensional(t) => {
                writeln!(out, "relation {symbol} arity {} size {}", t.arity(), t.len()).unwrap();
                for row in t.iter() {
                    write_row(&mut out, row);
                }
            }
            Relation::Intensional(r) => {
                writeln!(
                    out,
                    "relation {symbol} arity {} intensional {}",
                    r.arity(),
                    r
                )
                .unwrap();
            }
        }
    }
    out.push_str("end\n");
    out
}

pub(crate) fn parse_structure(s: &str) -> Result<FiniteStructure> {
    let mut lines = content_lines(s);
    let (n, head) = lines.next().ok_or_else(|| parse_err(0, "empty structure file"))?;
    expect_keyword(n, head.first(), "structure")?;
    let name = match head.as_slice() {
        [_, name] => name.to_string(),
        _ => return Err(parse_err(n, "expected `structure NAME`")),
    };
    let (n, dom) = lines.next().ok_or_else(|| parse_err(n, "missing `domain` line"))?;
    expect_keyword(n, dom.first(), "domain")?;
    if dom.len() != 2 {
        return Err(parse_err(n, "expected `domain K`"));
    }
    let domain: usize = parse_num(n, dom[1])?;

    let mut relations = Vec::new();
    loop {
        let (n, tokens) = lines.next().ok_or_else(|| parse_err(n, "missing `end`"))?;
        match tokens.as_slice() {
            ["end"] => break,
            ["relation", symbol, "arity", arity, "size", size] => {
                let arity: usize = parse_num(n, arity)?;
                let size: usize = parse_num(n, size)?;
                let mut rows = Vec::with_capacity(size);
                for _ in 0..size {
                    let (m, row) = lines
                        .next()
                        .ok_or_else(|| parse_err(n, format!("relation `{symbol}` is missing tuples")))?;
                    if row.len() != arity {
                        return Err(parse_err(m, format!("expected {arity} entries, found {}", row.len())));
                    }
                    rows.push(parse_row(m, &row)?);
                }
                let set = TupleSet::from_tuples(arity, &rows).map_err(|e| parse_err(n, e.to_string()))?;
                if set.len() != size {
                    return Err(parse_err(n, "duplicate tuples"));
                }
                relations.push((symbol.to_string(), Relation::Extensional(set)));
            }
            ["relation", symbol, "arity", arity, "intensional", tag, nn, pp] => {
                let kind = Thm1Kind::from_tag(tag)
                    .ok_or_else(|| parse_err(n, format!("unknown intensional tag `{tag}`")))?;
                let rel = Thm1Relation::new(kind, parse_kv(n, nn, "n")?, parse_kv(n, pp, "p")?)
                    .map_err(|e| parse_err(n, e.to_string()))?;
                let arity: usize = parse_num(n, arity)?;
                if arity != rel.arity() {
                    return Err(parse_err(n, format!("{tag} has arity {}, not {arity}", rel.arity())));
                }
                relations.push((symbol.to_string(), Relation::Intensional(rel)));
            }
            _ => return Err(parse_err(n, "expected `relation ...` or `end`")),
        }
    }
    if let Some((n, _)) = lines.next() {
        return Err(parse_err(n, "trailing content after `end`"));
    }
    if !is_identifier(&name) {
        return Err(parse_err(1, format!("invalid structure name `{name}`")));
    }
    FiniteStructure::new(name, domain, relations).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(1, other.to_string()),
    })
}

pub(crate) fn serialize_map(h: &Homomorphism) -> String {
    let mut out = format!("map source={} target={}\n", h.source_size(), h.target_size());
    write_row(&mut out, h.as_slice());
    out
}

pub(crate) fn parse_map(s: &str) -> Result<Homomorphism> {
    let mut lines = content_lines(s);
    let (n, head) = lines.next().ok_or_else(|| parse_err(0, "empty map file"))?;
    expect_keyword(n, head.first(), "map")?;
    if head.len() != 3 {
        return Err(parse_err(n, "expected `map source=K target=M`"));
    }
    let source: usize = parse_kv(n, head[1], "source")?;
    let target: usize = parse_kv(n, head[2], "target")?;
    let values = match lines.next() {
        Some((m, row)) => parse_row(m, &row)?,
        None => Vec::new(),
    };
    if values.len() != source {
        return Err(parse_err(n, format!("expected {source} values, found {}", values.len())));
    }
    if let Some((m, _)) = lines.next() {
        return Err(parse_err(m, "trailing content"));
    }
    Homomorphism::new(target, values).map_err(|e| parse_err(n, e.to_string()))
}
