//! Self-contained certificates that no structure with fewer than `p`
//! elements sandwiched between `A` and `B` has a tractable CSP.
//!
//! ```text
//! # comments explaining the argument
//! certificate p=P evidence=witness|exhaustive
//! structure A ... end
//! structure B ... end
//! witness ...            (or: exhaustive candidates=N)
//! end-certificate
//! ```

use std::fmt::Write;

use crate::affine::is_prime;
use crate::error::{parse_err, Error, Result};
use crate::hom::{
    find_cyclic_polymorphism, verify_obstruction_witness, ObstructionWitness, PolymorphismBudget,
    SearchOutcome, SearchStats, WitnessVerdict,
};
use crate::structure::text::parse_kv;
use crate::structure::{FiniteStructure, FunctionTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Witness(ObstructionWitness),
    /// The cyclic search was exhausted over this many candidates.
    Exhaustive { candidates: u128 },
}

impl Evidence {
    /// Evidence from a search outcome; only exhaustive refutations qualify.
    pub fn from_outcome(outcome: &SearchOutcome<FunctionTable>) -> Result<Self> {
        match outcome {
            SearchOutcome::RefutedExhaustively(SearchStats {
                candidates: Some(c), ..
            }) => Ok(Evidence::Exhaustive { candidates: *c }),
            SearchOutcome::RefutedExhaustively(_) => {
                Err(Error::Invalid("refutation without a countable candidate space".into()))
            }
            SearchOutcome::Unknown(_) => Err(Error::Invalid("no certificate from Unknown".into())),
            SearchOutcome::Found(_) => {
                Err(Error::Invalid("a cyclic polymorphism exists; nothing to certify".into()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub p: usize,
    pub a: FiniteStructure,
    pub b: FiniteStructure,
    pub evidence: Evidence,
}

/// Builds a certificate after checking the evidence.
pub fn refutation_certificate(
    a: &FiniteStructure,
    b: &FiniteStructure,
    p: usize,
    evidence: Evidence,
) -> Result<Certificate> {
    let cert = Certificate {
        p,
        a: a.clone(),
        b: b.clone(),
        evidence,
    };
    match cert.check()? {
        WitnessVerdict::Valid => Ok(cert),
        WitnessVerdict::Invalid(reason) => Err(Error::Invalid(format!("evidence rejected: {reason}"))),
    }
}

impl Certificate {
    /// Re-runs the evidence check: the witness must be valid, or the cyclic
    /// search must again be exhausted over the same number of candidates.
    pub fn check(&self) -> Result<WitnessVerdict> {
        if !is_prime(self.p as u64) {
            return Err(Error::NotPrime(self.p as u64));
        }
        match &self.evidence {
            Evidence::Witness(w) => {
                if w.p() != self.p {
                    return Ok(WitnessVerdict::Invalid(format!("witness has p={}, certificate p={}", w.p(), self.p)));
                }
                verify_obstruction_witness(&self.a, &self.b, w)
            }
            Evidence::Exhaustive { candidates } => {
                let budget = PolymorphismBudget {
                    max_nodes: None,
                    ..PolymorphismBudget::default()
                };
                Ok(match find_cyclic_polymorphism(&self.a, &self.b, self.p, budget)? {
                    SearchOutcome::RefutedExhaustively(s) if s.candidates == Some(*candidates) => WitnessVerdict::Valid,
                    SearchOutcome::RefutedExhaustively(s) => WitnessVerdict::Invalid(format!(
                        "search space has {:?} candidates, certificate claims {candidates}",
                        s.candidates
                    )),
                    SearchOutcome::Found(_) => WitnessVerdict::Invalid("a cyclic polymorphism exists".into()),
                    SearchOutcome::Unknown(_) => WitnessVerdict::Invalid("search did not finish".into()),
                })
            }
        }
    }

    fn evidence_tag(&self) -> &'static str {
        match self.evidence {
            Evidence::Witness(_) => "witness",
            Evidence::Exhaustive { .. } => "exhaustive",
        }
    }

    /// One-line summary for scripts.
    pub fn machine_line(&self) -> String {
        format!(
            "certificate p={} no-tractable-sandwich-below={} evidence={} a={} b={}",
            self.p,
            self.p,
            self.evidence_tag(),
            self.a.name(),
            self.b.name()
        )
    }

    pub fn to_text(&self) -> String {
        let p = self.p;
        let mut out = String::new();
        writeln!(out, "# Claim: no structure D with |D| < {p} that is sandwiched between").unwrap();
        writeln!(out, "# {} and {} has a tractable CSP (assuming P != NP).", self.a.name(), self.b.name()).unwrap();
        match &self.evidence {
            Evidence::Witness(w) => writeln!(
                out,
                "# 1. The {} witness below rules out every cyclic {p}-ary polymorphism A -> B.",
                w.mode().tag()
            )
            .unwrap(),
            Evidence::Exhaustive { candidates } => writeln!(
                out,
                "# 1. Exhaustive search over all {candidates} cyclic {p}-ary candidates finds no polymorphism A -> B."
            )
            .unwrap(),
        }
        writeln!(out, "# 2. If r: A -> D and s: D -> B and t is a cyclic {p}-ary polymorphism of D,").unwrap();
        writeln!(out, "#    then x -> s(t(r(x_1), ..., r(x_{p}))) is a cyclic polymorphism A -> B;").unwrap();
        writeln!(out, "#    so no sandwiched D has a cyclic {p}-ary polymorphism.").unwrap();
        writeln!(out, "# 3. A finite structure with fewer than {p} elements and no cyclic polymorphism").unwrap();
        writeln!(out, "#    of prime arity {p} has an NP-complete CSP.").unwrap();
        writeln!(out, "certificate p={p} evidence={}", self.evidence_tag()).unwrap();
        out.push_str(&self.a.to_text());
        out.push_str(&self.b.to_text());
        match &self.evidence {
            Evidence::Witness(w) => out.push_str(&w.to_text()),
            Evidence::Exhaustive { candidates } => writeln!(out, "exhaustive candidates={candidates}").unwrap(),
        }
        out.push_str("end-certificate\n");
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut pos = 0;
        let (n, head) = *lines.first().ok_or_else(|| parse_err(0, "empty certificate"))?;
        let tokens: Vec<&str> = head.split_whitespace().collect();
        let ["certificate", p, evidence] = tokens.as_slice() else {
            return Err(parse_err(n, "expected `certificate p=P evidence=KIND`"));
        };
        let p: usize = parse_kv(n, p, "p")?;
        let kind = evidence
            .strip_prefix("evidence=")
            .ok_or_else(|| parse_err(n, "expected `evidence=...`"))?;
        pos += 1;

        let structure = |pos: &mut usize| -> Result<FiniteStructure> {
            let begin = *pos;
            let end = lines[begin..]
                .iter()
                .position(|(_, l)| *l == "end")
                .map(|i| begin + i)
                .ok_or_else(|| parse_err(lines.get(begin).map_or(n, |l| l.0), "unterminated structure"))?;
            *pos = end + 1;
            let block: String = lines[begin..=end].iter().map(|(_, l)| format!("{l}\n")).collect();
            FiniteStructure::from_text(&block).map_err(|e| relocate(e, lines[begin].0))
        };
        let a = structure(&mut pos)?;
        let b = structure(&mut pos)?;

        let last = lines.len() - 1;
        if lines[last].1 != "end-certificate" || last < pos {
            return Err(parse_err(lines[last].0, "expected `end-certificate`"));
        }
        let body: String = lines[pos..last].iter().map(|(_, l)| format!("{l}\n")).collect();
        let first_line = lines.get(pos).map_or(n, |l| l.0);
        let evidence = match kind {
            "witness" => Evidence::Witness(ObstructionWitness::from_text(&body).map_err(|e| relocate(e, first_line))?),
            "exhaustive" => {
                let tokens: Vec<&str> = body.split_whitespace().collect();
                match tokens.as_slice() {
                    ["exhaustive", c] => Evidence::Exhaustive {
                        candidates: parse_kv(first_line, c, "candidates")?,
                    },
                    _ => return Err(parse_err(first_line, "expected `exhaustive candidates=N`")),
                }
            }
            other => return Err(parse_err(n, format!("unknown evidence kind `{other}`"))),
        };
        Ok(Certificate { p, a, b, evidence })
    }
}

/// Shifts a block-relative parse error line to the enclosing file.
fn relocate(e: Error, first_line: usize) -> Error {
    match e {
        Error::Parse { line, message } => parse_err(first_line + line.saturating_sub(1), message),
        other => other,
    }
}
