//! Homomorphism, core and polymorphism search, and obstruction witnesses.

mod core;
mod poly;
mod sandwich;
mod search;
mod witness;

use std::fmt::{self, Write};
use std::time::Duration;

pub use self::core::{core_of, is_core, Core};
pub use poly::{
    compose_cyclic, cyclic_candidate_count, find_cyclic_polymorphism, find_majority_polymorphism,
    is_polymorphism, PolymorphismBudget,
};
pub use sandwich::{check_sandwich, Sandwich, SandwichSide};
pub use search::{
    find_homomorphism, find_structure_homomorphism, is_homomorphism, is_structure_homomorphism,
};
pub use witness::{verify_obstruction_witness, ObstructionWitness, WitnessMode, WitnessVerdict};

pub use crate::structure::Homomorphism;

use crate::error::{invalid, parse_err, Error, Result};
use crate::structure::{is_identifier, FiniteStructure, RelSignature};
use crate::structure::text::{content_lines, expect_keyword, parse_num};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub symbol: String,
    pub scope: Vec<usize>,
}

/// Variables `0..variable_count` plus a list of constraints `R(v_1, ..., v_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    name: String,
    variable_count: usize,
    constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(name: impl Into<String>, variable_count: usize, constraints: Vec<Constraint>) -> Result<Self> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(invalid(format!("`{name}` is not a valid instance name")));
        }
        if variable_count == 0 {
            return Err(invalid("an instance needs at least one variable"));
        }
        for c in &constraints {
            if !is_identifier(&c.symbol) {
                return Err(invalid(format!("`{}` is not a valid symbol", c.symbol)));
            }
            if c.scope.is_empty() {
                return Err(invalid("constraint with empty scope"));
            }
            if let Some(&v) = c.scope.iter().find(|&&v| v >= variable_count) {
                return Err(Error::OutOfRange {
                    value: v as u64,
                    size: variable_count as u64,
                });
            }
        }
        Ok(Self {
            name,
            variable_count,
            constraints,
        })
    }

    /// The constraint-list presentation of an extensional structure.
    pub fn from_structure(s: &FiniteStructure) -> Result<Self> {
        let mut constraints = Vec::new();
        for i in 0..s.relations().len() {
            for t in s.tuples(i)?.iter() {
                constraints.push(Constraint {
                    symbol: s.symbol(i).to_string(),
                    scope: t.iter().map(|&v| v as usize).collect(),
                });
            }
        }
        Self::new(s.name(), s.domain_size(), constraints)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Resolves every constraint symbol against `sig`, checking arities.
    pub fn resolve(&self, sig: &RelSignature) -> Result<Vec<usize>> {
        self.constraints
            .iter()
            .map(|c| {
                let idx = sig
                    .index_of(&c.symbol)
                    .ok_or_else(|| Error::SignatureMismatch(format!("unknown symbol `{}`", c.symbol)))?;
                let arity = sig.symbols()[idx].1;
                if arity != c.scope.len() {
                    return Err(Error::SignatureMismatch(format!(
                        "`{}` has arity {arity}, constraint has {} variables",
                        c.symbol,
                        c.scope.len()
                    )));
                }
                Ok(idx)
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("instance {}\nvariables {}\n", self.name, self.variable_count);
        for c in &self.constraints {
            write!(out, "constraint {}", c.symbol).unwrap();
            for v in &c.scope {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        out.push_str("end\n");
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (n, head) = lines.next().ok_or_else(|| parse_err(0, "empty instance file"))?;
        expect_keyword(n, head.first(), "instance")?;
        if head.len() != 2 {
            return Err(parse_err(n, "expected `instance NAME`"));
        }
        let (m, vars) = lines.next().ok_or_else(|| parse_err(n, "missing `variables`"))?;
        expect_keyword(m, vars.first(), "variables")?;
        if vars.len() != 2 {
            return Err(parse_err(m, "expected `variables V`"));
        }
        let variable_count: usize = parse_num(m, vars[1])?;
        let mut constraints = Vec::new();
        let mut last = m;
        loop {
            let (n, tokens) = lines.next().ok_or_else(|| parse_err(last, "missing `end`"))?;
            last = n;
            match tokens.as_slice() {
                ["end"] => break,
                ["constraint", symbol, vars @ ..] => constraints.push(Constraint {
                    symbol: symbol.to_string(),
                    scope: vars.iter().map(|v| parse_num(n, v)).collect::<Result<_>>()?,
                }),
                _ => return Err(parse_err(n, "expected `constraint ...` or `end`")),
            }
        }
        if let Some((n, _)) = lines.next() {
            return Err(parse_err(n, "trailing content after `end`"));
        }
        Self::new(head[1], variable_count, constraints).map_err(|e| parse_err(1, e.to_string()))
    }
}

/// Effort spent by a bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
    /// Size of the candidate space, when it fits in `u128`.
    pub candidates: Option<u128>,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.candidates {
            Some(c) => write!(f, "{c} candidates, ")?,
            None => write!(f, "candidate space too large to count, ")?,
        }
        write!(f, "{} nodes, {:.3}s", self.nodes, self.elapsed.as_secs_f64())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    RefutedExhaustively(SearchStats),
    Unknown(SearchStats),
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, SearchOutcome::RefutedExhaustively(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}
