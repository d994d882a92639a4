//! Obstruction witnesses against cyclic polymorphisms.
//!
//! A witness is a `k x p` matrix whose `p` columns are tuples of `R^A`. A
//! cyclic `p`-ary polymorphism `f` applied row by row must produce a tuple of
//! `R^B`. In constant-forcing mode consecutive rows are rotations of each
//! other, so `f` gives the same value on all of them and the tuple is
//! constant; `R^B` having no constant tuple finishes the argument. In
//! exhaustive mode every way of assigning values to the rotation orbits of the
//! rows is tried.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use crate::error::{parse_err, Error, Result};
use crate::structure::text::{content_lines, parse_kv, parse_row, write_row};
use crate::structure::{point_index, FiniteStructure};
use crate::Elem;

/// Largest number of orbit assignments the exhaustive check enumerates.
const EXHAUSTIVE_LIMIT: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessMode {
    ConstantForcing,
    ExhaustiveCyclic,
}

impl WitnessMode {
    pub fn tag(self) -> &'static str {
        match self {
            WitnessMode::ConstantForcing => "constant-forcing",
            WitnessMode::ExhaustiveCyclic => "exhaustive-cyclic",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "constant-forcing" => Some(WitnessMode::ConstantForcing),
            "exhaustive-cyclic" => Some(WitnessMode::ExhaustiveCyclic),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionWitness {
    p: usize,
    mode: WitnessMode,
    rows: Vec<Vec<Elem>>,
}

impl ObstructionWitness {
    /// A witness given by its rows (each of length `p`).
    pub fn from_rows(p: usize, mode: WitnessMode, rows: Vec<Vec<Elem>>) -> Result<Self> {
        if p < 2 || rows.is_empty() {
            return Err(Error::Invalid("a witness needs p >= 2 and at least one row".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != p) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a witness with p={p}", r.len())));
        }
        Ok(Self { p, mode, rows })
    }

    /// A witness given by its `p` columns (each a tuple of arity `k`).
    pub fn from_columns(mode: WitnessMode, columns: &[Vec<Elem>]) -> Result<Self> {
        let k = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != k) {
            return Err(Error::DimensionMismatch("columns of different lengths".into()));
        }
        let rows = (0..k).map(|j| columns.iter().map(|c| c[j]).collect()).collect();
        Self::from_rows(columns.len(), mode, rows)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn mode(&self) -> WitnessMode {
        self.mode
    }

    /// Number of rows, the arity of the relation the columns belong to.
    pub fn arity(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.p)
            .map(|i| self.rows.iter().map(|r| r[i]).collect())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "witness p={} arity={} mode={}", self.p, self.rows.len(), self.mode.tag()).unwrap();
        for r in &self.rows {
            write_row(&mut out, r);
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (n, head) = lines.next().ok_or_else(|| parse_err(0, "empty witness file"))?;
        let [kw, p, k, mode] = head.as_slice() else {
            return Err(parse_err(n, "expected `witness p=P arity=K mode=MODE`"));
        };
        if *kw != "witness" {
            return Err(parse_err(n, format!("expected `witness`, found `{kw}`")));
        }
        let p: usize = parse_kv(n, p, "p")?;
        let k: usize = parse_kv(n, k, "arity")?;
        let mode = mode
            .strip_prefix("mode=")
            .and_then(WitnessMode::from_tag)
            .ok_or_else(|| parse_err(n, format!("unknown witness mode `{mode}`")))?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (m, row) = lines.next().ok_or_else(|| parse_err(n, format!("expected {k} rows")))?;
            if row.len() != p {
                return Err(parse_err(m, format!("expected {p} entries, found {}", row.len())));
            }
            rows.push(parse_row(m, &row)?);
        }
        if let Some((m, _)) = lines.next() {
            return Err(parse_err(m, "trailing content"));
        }
        Self::from_rows(p, mode, rows).map_err(|e| parse_err(n, e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessVerdict {
    Valid,
    Invalid(String),
}

impl WitnessVerdict {
    pub fn is_valid(&self) -> bool {
        *self == WitnessVerdict::Valid
    }
}

impl fmt::Display for WitnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessVerdict::Valid => f.write_str("valid"),
            WitnessVerdict::Invalid(reason) => write!(f, "invalid: {reason}"),
        }
    }
}

/// Index of the unique relation of arity `k` shared by `a` and `b`.
fn relation_of_arity(a: &FiniteStructure, b: &FiniteStructure, k: usize) -> Result<usize> {
    a.signature().ensure_same(b.signature())?;
    let mut matching = a.signature().symbols().iter().enumerate().filter(|(_, (_, ar))| *ar == k);
    match (matching.next(), matching.next()) {
        (Some((i, _)), None) => Ok(i),
        (None, _) => Err(Error::DimensionMismatch(format!("no relation of arity {k}"))),
        _ => Err(Error::DimensionMismatch(format!("several relations of arity {k}"))),
    }
}

/// Valid means `w` rules out every cyclic `p`-ary polymorphism `A -> B`.
pub fn verify_obstruction_witness(
    a: &FiniteStructure,
    b: &FiniteStructure,
    w: &ObstructionWitness,
) -> Result<WitnessVerdict> {
    let rel = relation_of_arity(a, b, w.arity())?;
    for (i, col) in w.columns().iter().enumerate() {
        if !a.contains(rel, col) {
            return Ok(WitnessVerdict::Invalid(format!("column {} not in R^A", i + 1)));
        }
    }
    match w.mode {
        WitnessMode::ConstantForcing => {
            for (j, pair) in w.rows.windows(2).enumerate() {
                let mut rotated = pair[0].clone();
                rotated.rotate_left(1);
                if rotated != pair[1] {
                    return Ok(WitnessVerdict::Invalid(format!(
                        "row {} is not the left rotation of row {}",
                        j + 2,
                        j + 1
                    )));
                }
            }
            for c in 0..b.domain_size() as Elem {
                if b.contains(rel, &vec![c; w.arity()]) {
                    return Ok(WitnessVerdict::Invalid(format!("R^B contains the constant tuple of {c}")));
                }
            }
            Ok(WitnessVerdict::Valid)
        }
        WitnessMode::ExhaustiveCyclic => {
            let k = a.domain_size();
            let mut orbit_of_row = Vec::with_capacity(w.arity());
            let mut orbits: BTreeMap<usize, usize> = BTreeMap::new();
            for row in &w.rows {
                let mut best = point_index(row, k)?;
                let mut r = row.clone();
                for _ in 1..w.p {
                    r.rotate_left(1);
                    best = best.min(point_index(&r, k)?);
                }
                let next = orbits.len();
                orbit_of_row.push(*orbits.entry(best).or_insert(next));
            }
            let m = b.domain_size();
            let total = u32::try_from(orbits.len())
                .ok()
                .and_then(|o| (m as u128).checked_pow(o))
                .filter(|&t| t <= EXHAUSTIVE_LIMIT)
                .ok_or_else(|| Error::Budget(format!("{m}^{} orbit assignments", orbits.len())))?;
            let mut values = vec![0 as Elem; orbits.len()];
            let mut image = vec![0 as Elem; w.arity()];
            for s in 0..total {
                let mut rest = s;
                for v in values.iter_mut().rev() {
                    *v = (rest % m as u128) as Elem;
                    rest /= m as u128;
                }
                for (out, &o) in image.iter_mut().zip(&orbit_of_row) {
                    *out = values[o];
                }
                if b.contains(rel, &image) {
                    return Ok(WitnessVerdict::Invalid(format!(
                        "a cyclic assignment produces a tuple of R^B: {image:?}"
                    )));
                }
            }
            Ok(WitnessVerdict::Valid)
        }
    }
}
