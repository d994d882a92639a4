use itertools::Itertools;

use super::table::{point_count, write_point};
use super::{FiniteStructure, Relation, TupleSet};
use crate::error::{invalid, Error, Result};
use crate::Elem;

/// Largest arity [`max_symmetric_subset`] accepts (8! permutations).
pub const MAX_SYMMETRIC_ARITY: usize = 8;

/// The `m`-th power of `a`. An element `(a_1, ..., a_m)` of the power is
/// encoded by its point index over `[|A|]^m`. A tuple belongs to a relation of
/// the power iff each of its `m` coordinate projections belongs to the
/// relation of `a`, so the relation is the componentwise zip of every
/// `m`-selection of tuples of `a`.
pub fn power_structure(a: &FiniteStructure, m: usize, budget: u64) -> Result<FiniteStructure> {
    if m == 0 {
        return Err(invalid("power exponent must be at least 1"));
    }
    let k = a.domain_size();
    let over = || Error::Budget(format!("power {m} of a structure of size {k} exceeds {budget}"));
    let domain = point_count(k, m).filter(|&d| d as u64 <= budget).ok_or_else(over)?;
    let mut relations = Vec::with_capacity(a.relations().len());
    for i in 0..a.relations().len() {
        let r = a.tuples(i)?;
        let count = point_count(r.len(), m).filter(|&c| c as u64 <= budget).ok_or_else(over)?;
        let arity = r.arity();
        let mut selection = vec![0 as Elem; m];
        let mut rows = Vec::with_capacity(count);
        for s in 0..count {
            write_point(s, r.len(), &mut selection);
            let row: Vec<Elem> = (0..arity)
                .map(|j| {
                    selection
                        .iter()
                        .fold(0usize, |acc, &t| acc * k + r.get(t as usize)[j] as usize)
                        as Elem
                })
                .collect();
            rows.push(row);
        }
        relations.push((a.symbol(i).to_string(), Relation::Extensional(TupleSet::from_tuples(arity, rows)?)));
    }
    FiniteStructure::new(format!("{}_pow{m}", a.name()), domain, relations)
}

/// `{ t in r : every coordinate permutation of t is in r }`.
pub fn max_symmetric_subset(r: &TupleSet) -> Result<TupleSet> {
    let k = r.arity();
    if k > MAX_SYMMETRIC_ARITY {
        return Err(Error::Budget(format!(
            "symmetric part of arity {k} exceeds the limit {MAX_SYMMETRIC_ARITY}"
        )));
    }
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let mut buf = vec![0; k];
    let kept: Vec<Vec<Elem>> = r
        .iter()
        .filter(|t| {
            perms.iter().all(|perm| {
                for (slot, &src) in buf.iter_mut().zip(perm) {
                    *slot = t[src];
                }
                r.contains(&buf)
            })
        })
        .map(<[Elem]>::to_vec)
        .collect();
    TupleSet::from_tuples(k, kept)
}
