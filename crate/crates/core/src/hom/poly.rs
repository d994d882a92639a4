//! Cyclic and majority polymorphism search.
//!
//! A polymorphism search is itself a CSP: the variables are the points of
//! `[|A|]^p` (or their rotation orbits for cyclic operations) and every
//! `p`-selection of tuples from a relation of `A` yields one constraint on the
//! points formed by its columns. Scopes are deduplicated before the search,
//! which then runs on the ordinary homomorphism engine.

use std::collections::HashSet;
use std::time::Instant;

use super::search::{search_from, Domains, Search};
use super::{Constraint, CspInstance, SearchOutcome, SearchStats};
use crate::affine::is_prime;
use crate::error::{invalid, Error, Result};
use crate::structure::{
    orbit_representatives, point_count, write_point, FiniteStructure, FunctionTable, Homomorphism,
};
use crate::{Elem, DEFAULT_MATERIALIZE_THRESHOLD};

/// Limits for polymorphism searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolymorphismBudget {
    /// Largest number of tuple selections enumerated per relation.
    pub max_selections: u64,
    /// Largest number of search nodes, unbounded when `None`.
    pub max_nodes: Option<u64>,
    /// Accept a composite arity for cyclic searches.
    pub allow_composite: bool,
}

impl Default for PolymorphismBudget {
    fn default() -> Self {
        Self {
            max_selections: 4_000_000,
            max_nodes: Some(50_000_000),
            allow_composite: false,
        }
    }
}

impl PolymorphismBudget {
    /// Both the selection and node limits set to `limit`.
    pub fn with_limit(limit: u64) -> Self {
        Self {
            max_selections: limit,
            max_nodes: Some(limit),
            ..Self::default()
        }
    }
}

/// Number of cyclic `p`-ary tables `[a]^p -> [b]`, i.e. `b^(orbit count)`.
pub fn cyclic_candidate_count(a: usize, b: usize, p: usize) -> Result<Option<u128>> {
    let reps = orbit_representatives(a, p)?;
    let orbits = reps.iter().enumerate().filter(|&(i, &r)| i == r).count();
    Ok(u32::try_from(orbits).ok().and_then(|o| (b as u128).checked_pow(o)))
}

/// One constraint per distinct scope produced by a `p`-selection of tuples of
/// `a`, with point `x` of `[|A|]^p` sent to variable `var_of[x]`. `None` when
/// some relation has more than `max_selections` selections.
fn selection_constraints(
    a: &FiniteStructure,
    p: usize,
    var_of: &[usize],
    max_selections: u64,
) -> Result<Option<Vec<Constraint>>> {
    let k = a.domain_size();
    let mut constraints = Vec::new();
    for i in 0..a.relations().len() {
        let t = a.tuples(i)?;
        let Some(count) = point_count(t.len(), p).filter(|&c| c as u64 <= max_selections) else {
            return Ok(None);
        };
        let mut selection = vec![0 as Elem; p];
        let mut scopes: HashSet<Vec<usize>> = HashSet::new();
        for s in 0..count {
            write_point(s, t.len(), &mut selection);
            let scope = (0..t.arity())
                .map(|j| {
                    let point = selection
                        .iter()
                        .fold(0usize, |acc, &q| acc * k + t.get(q as usize)[j] as usize);
                    var_of[point]
                })
                .collect();
            scopes.insert(scope);
        }
        let mut scopes: Vec<_> = scopes.into_iter().collect();
        scopes.sort_unstable();
        constraints.extend(scopes.into_iter().map(|scope| Constraint {
            symbol: a.symbol(i).to_string(),
            scope,
        }));
    }
    Ok(Some(constraints))
}

fn stats(nodes: u64, start: Instant, candidates: Option<u128>) -> SearchStats {
    SearchStats {
        nodes,
        elapsed: start.elapsed(),
        candidates,
    }
}

/// Searches for a cyclic `p`-ary polymorphism `A -> B`. Returns the
/// lexicographically least one, or an exhaustive refutation.
pub fn find_cyclic_polymorphism(
    a: &FiniteStructure,
    b: &FiniteStructure,
    p: usize,
    budget: PolymorphismBudget,
) -> Result<SearchOutcome<FunctionTable>> {
    let start = Instant::now();
    a.signature().ensure_same(b.signature())?;
    if p < 2 {
        return Err(invalid("polymorphism arity must be at least 2"));
    }
    if !is_prime(p as u64) && !budget.allow_composite {
        return Err(Error::NotPrime(p as u64));
    }
    let a = a.materialize(DEFAULT_MATERIALIZE_THRESHOLD)?;
    let reps = orbit_representatives(a.domain_size(), p)?;
    let mut rank = vec![usize::MAX; reps.len()];
    let mut orbits = 0;
    for i in 0..reps.len() {
        if reps[i] == i {
            rank[i] = orbits;
            orbits += 1;
        }
    }
    let var_of: Vec<usize> = reps.iter().map(|&r| rank[r]).collect();
    let candidates = u32::try_from(orbits)
        .ok()
        .and_then(|o| (b.domain_size() as u128).checked_pow(o));
    let Some(constraints) = selection_constraints(&a, p, &var_of, budget.max_selections)? else {
        return Ok(SearchOutcome::Unknown(stats(0, start, candidates)));
    };
    let inst = CspInstance::new("cyclic", orbits, constraints)?;
    let (outcome, nodes) = search_from(&inst, b, None, budget.max_nodes)?;
    Ok(match outcome {
        Search::Found(values) => {
            let table: Vec<Elem> = var_of.iter().map(|&v| values[v]).collect();
            let f = FunctionTable::new(a.domain_size(), p, b.domain_size(), table)?;
            assert!(f.is_cyclic() && is_polymorphism(&f, &a, b)?, "search returned a non-polymorphism");
            SearchOutcome::Found(f)
        }
        Search::Exhausted => SearchOutcome::RefutedExhaustively(stats(nodes, start, candidates)),
        Search::Aborted => SearchOutcome::Unknown(stats(nodes, start, candidates)),
    })
}

/// Searches for a ternary polymorphism `A -> A` satisfying
/// `m(x,x,y) = m(x,y,x) = m(y,x,x) = x`.
pub fn find_majority_polymorphism(
    a: &FiniteStructure,
    budget: PolymorphismBudget,
) -> Result<SearchOutcome<FunctionTable>> {
    let start = Instant::now();
    let a = a.materialize(DEFAULT_MATERIALIZE_THRESHOLD)?;
    let k = a.domain_size();
    let points = point_count(k, 3).ok_or_else(|| Error::Budget("domain too large".into()))?;
    let mut domains = Domains::full(points, k);
    let mut x = [0 as Elem; 3];
    let mut free = 0u32;
    for i in 0..points {
        write_point(i, k, &mut x);
        let forced = if x[0] == x[1] || x[0] == x[2] {
            Some(x[0])
        } else if x[1] == x[2] {
            Some(x[1])
        } else {
            None
        };
        match forced {
            Some(v) => domains.set_only(i, v),
            None => free += 1,
        }
    }
    let candidates = (k as u128).checked_pow(free);
    let var_of: Vec<usize> = (0..points).collect();
    let Some(constraints) = selection_constraints(&a, 3, &var_of, budget.max_selections)? else {
        return Ok(SearchOutcome::Unknown(stats(0, start, candidates)));
    };
    let inst = CspInstance::new("majority", points, constraints)?;
    let (outcome, nodes) = search_from(&inst, &a, Some(domains), budget.max_nodes)?;
    Ok(match outcome {
        Search::Found(values) => {
            let f = FunctionTable::new(k, 3, k, values)?;
            assert!(is_polymorphism(&f, &a, &a)?, "search returned a non-polymorphism");
            SearchOutcome::Found(f)
        }
        Search::Exhausted => SearchOutcome::RefutedExhaustively(stats(nodes, start, candidates)),
        Search::Aborted => SearchOutcome::Unknown(stats(nodes, start, candidates)),
    })
}

/// Full sweep: every selection of `arity` tuples from each relation of `a`
/// is mapped by `f` into the corresponding relation of `b`.
pub fn is_polymorphism(f: &FunctionTable, a: &FiniteStructure, b: &FiniteStructure) -> Result<bool> {
    a.signature().ensure_same(b.signature())?;
    if f.n() != a.domain_size() || f.m() != b.domain_size() {
        return Err(Error::DimensionMismatch(format!(
            "table [{}]^{} -> [{}] against structures of sizes {} and {}",
            f.n(),
            f.arity(),
            f.m(),
            a.domain_size(),
            b.domain_size()
        )));
    }
    let a = a.materialize(DEFAULT_MATERIALIZE_THRESHOLD)?;
    let (k, p) = (a.domain_size(), f.arity());
    for i in 0..a.relations().len() {
        let t = a.tuples(i)?;
        let count = point_count(t.len(), p)
            .filter(|&c| c as u64 <= 100_000_000)
            .ok_or_else(|| Error::Budget(format!("{}^{p} selections", t.len())))?;
        let mut selection = vec![0 as Elem; p];
        let mut image = vec![0 as Elem; t.arity()];
        for s in 0..count {
            write_point(s, t.len(), &mut selection);
            for (j, out) in image.iter_mut().enumerate() {
                let point = selection
                    .iter()
                    .fold(0usize, |acc, &q| acc * k + t.get(q as usize)[j] as usize);
                *out = f.values()[point];
            }
            if !b.contains(i, &image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `x -> s(t(r(x_1), ..., r(x_p)))`.
pub fn compose_cyclic(r: &Homomorphism, t: &FunctionTable, s: &Homomorphism) -> Result<FunctionTable> {
    if r.target_size() != t.n() || t.m() != s.source_size() {
        return Err(Error::DimensionMismatch(format!(
            "maps {} -> {}, table [{}]^{} -> [{}], maps {} -> {} do not compose",
            r.source_size(),
            r.target_size(),
            t.n(),
            t.arity(),
            t.m(),
            s.source_size(),
            s.target_size()
        )));
    }
    if !t.is_cyclic() {
        return Err(invalid("the middle table must be cyclic"));
    }
    let mut inner = vec![0 as Elem; t.arity()];
    FunctionTable::from_fn(r.source_size(), t.arity(), s.target_size(), |x| {
        for (y, &xi) in inner.iter_mut().zip(x) {
            *y = r.apply(xi);
        }
        s.apply(t.eval(&inner).expect("values in range"))
    })
}
