//! Backtracking homomorphism search with generalized arc consistency.
//!
//! Variables are assigned in index order and values are tried in ascending
//! order. Propagation only removes values that cannot occur in any solution,
//! so the first solution reached is the lexicographically least one.

use std::collections::VecDeque;

use super::CspInstance;
use crate::error::{Error, Result};
use crate::structure::{FiniteStructure, Homomorphism, Relation};
use crate::Elem;

/// Per-variable candidate sets as bit rows.
#[derive(Clone, Debug)]
pub(crate) struct Domains {
    words: usize,
    bits: Vec<u64>,
}

impl Domains {
    pub(crate) fn full(vars: usize, k: usize) -> Self {
        let words = k.div_ceil(64).max(1);
        let mut row = vec![0u64; words];
        for a in 0..k {
            row[a / 64] |= 1 << (a % 64);
        }
        Self {
            words,
            bits: row.repeat(vars),
        }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn has(&self, v: usize, a: Elem) -> bool {
        let a = a as usize;
        self.bits[v * self.words + a / 64] >> (a % 64) & 1 == 1
    }

    pub(crate) fn set_only(&mut self, v: usize, a: Elem) {
        let a = a as usize;
        let row = self.row_mut(v);
        row.fill(0);
        row[a / 64] = 1 << (a % 64);
    }

    fn count(&self, v: usize) -> u32 {
        self.row(v).iter().map(|w| w.count_ones()).sum()
    }

    fn single(&self, v: usize) -> Option<Elem> {
        (self.count(v) == 1).then(|| self.next_from(v, 0).expect("nonempty"))
    }

    /// Smallest value `>= from` still in the domain of `v`.
    fn next_from(&self, v: usize, from: usize) -> Option<Elem> {
        let row = self.row(v);
        let mut w = from / 64;
        if w >= row.len() {
            return None;
        }
        let mut word = row[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                return Some((w * 64 + word.trailing_zeros() as usize) as Elem);
            }
            w += 1;
            if w == row.len() {
                return None;
            }
            word = row[w];
        }
    }

    /// Intersects the domain of `v` with `mask`; returns whether it changed.
    fn restrict(&mut self, v: usize, mask: &[u64]) -> bool {
        let mut changed = false;
        for (d, m) in self.row_mut(v).iter_mut().zip(mask) {
            let next = *d & m;
            changed |= next != *d;
            *d = next;
        }
        changed
    }

    fn is_empty(&self, v: usize) -> bool {
        self.row(v).iter().all(|&w| w == 0)
    }
}

struct Prepared<'a> {
    target: &'a FiniteStructure,
    words: usize,
    /// (relation index, scope, distinct variables, position -> distinct slot)
    cons: Vec<Con>,
    watch: Vec<Vec<usize>>,
}

struct Con {
    rel: usize,
    scope: Vec<usize>,
    vars: Vec<usize>,
    slot: Vec<usize>,
}

pub(crate) enum Search {
    Found(Vec<Elem>),
    Exhausted,
    Aborted,
}

impl<'a> Prepared<'a> {
    fn new(inst: &CspInstance, target: &'a FiniteStructure) -> Result<Self> {
        let rels = inst.resolve(target.signature())?;
        let mut watch = vec![Vec::new(); inst.variable_count()];
        let cons = inst
            .constraints()
            .iter()
            .zip(rels)
            .enumerate()
            .map(|(ci, (c, rel))| {
                let mut vars: Vec<usize> = Vec::new();
                let slot = c
                    .scope
                    .iter()
                    .map(|&v| match vars.iter().position(|&u| u == v) {
                        Some(i) => i,
                        None => {
                            vars.push(v);
                            watch[v].push(ci);
                            vars.len() - 1
                        }
                    })
                    .collect();
                Con {
                    rel,
                    scope: c.scope.clone(),
                    vars,
                    slot,
                }
            })
            .collect();
        Ok(Self {
            target,
            words: target.domain_size().div_ceil(64).max(1),
            cons,
            watch,
        })
    }

    /// Revises one constraint. `Err(())` on a wipe-out; otherwise the
    /// variables whose domains shrank.
    fn revise(&self, c: &Con, d: &mut Domains) -> std::result::Result<Vec<usize>, ()> {
        match self.target.relation(c.rel) {
            Relation::Extensional(tuples) => {
                let mut support = vec![0u64; c.vars.len() * self.words];
                let mut seen: Vec<Option<Elem>> = vec![None; c.vars.len()];
                'tuples: for t in tuples.iter() {
                    seen.fill(None);
                    for (j, &a) in t.iter().enumerate() {
                        let s = c.slot[j];
                        match seen[s] {
                            Some(b) if b != a => continue 'tuples,
                            Some(_) => {}
                            None => {
                                if !d.has(c.scope[j], a) {
                                    continue 'tuples;
                                }
                                seen[s] = Some(a);
                            }
                        }
                    }
                    for (s, a) in seen.iter().enumerate() {
                        let a = a.expect("every slot seen") as usize;
                        support[s * self.words + a / 64] |= 1 << (a % 64);
                    }
                }
                let mut changed = Vec::new();
                for (s, &v) in c.vars.iter().enumerate() {
                    if d.restrict(v, &support[s * self.words..(s + 1) * self.words]) {
                        if d.is_empty(v) {
                            return Err(());
                        }
                        changed.push(v);
                    }
                }
                Ok(changed)
            }
            Relation::Intensional(rel) => {
                let open: Vec<usize> = (0..c.vars.len())
                    .filter(|&s| d.single(c.vars[s]).is_none())
                    .collect();
                if open.len() > 1 {
                    return Ok(Vec::new());
                }
                let mut values: Vec<Elem> = c
                    .vars
                    .iter()
                    .map(|&v| d.single(v).unwrap_or(0))
                    .collect();
                let mut tuple = vec![0; c.scope.len()];
                let fill = |values: &[Elem], tuple: &mut Vec<Elem>| {
                    for (j, t) in tuple.iter_mut().enumerate() {
                        *t = values[c.slot[j]];
                    }
                };
                match open.first() {
                    None => {
                        fill(&values, &mut tuple);
                        if rel.contains(&tuple) {
                            Ok(Vec::new())
                        } else {
                            Err(())
                        }
                    }
                    Some(&s) => {
                        let v = c.vars[s];
                        let mut mask = vec![0u64; self.words];
                        let mut a = d.next_from(v, 0);
                        while let Some(x) = a {
                            values[s] = x;
                            fill(&values, &mut tuple);
                            if rel.contains(&tuple) {
                                mask[x as usize / 64] |= 1 << (x % 64);
                            }
                            a = d.next_from(v, x as usize + 1);
                        }
                        if d.restrict(v, &mask) {
                            if d.is_empty(v) {
                                return Err(());
                            }
                            Ok(vec![v])
                        } else {
                            Ok(Vec::new())
                        }
                    }
                }
            }
        }
    }

    fn propagate(&self, d: &mut Domains, seed: impl IntoIterator<Item = usize>) -> bool {
        let mut queued = vec![false; self.cons.len()];
        let mut queue = VecDeque::new();
        for c in seed {
            if !std::mem::replace(&mut queued[c], true) {
                queue.push_back(c);
            }
        }
        while let Some(ci) = queue.pop_front() {
            queued[ci] = false;
            match self.revise(&self.cons[ci], d) {
                Err(()) => return false,
                Ok(changed) => {
                    for v in changed {
                        for &cj in &self.watch[v] {
                            if cj != ci && !std::mem::replace(&mut queued[cj], true) {
                                queue.push_back(cj);
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

struct Frame {
    base: Domains,
    var: usize,
    next: usize,
}

/// Runs the search; `node_limit` bounds the number of assignments tried.
pub(crate) fn search(inst: &CspInstance, target: &FiniteStructure, node_limit: Option<u64>) -> Result<Search> {
    search_from(inst, target, None, node_limit).map(|(s, _)| s)
}

/// Search starting from `initial` domains (full when `None`); also returns
/// the number of assignments tried.
pub(crate) fn search_from(
    inst: &CspInstance,
    target: &FiniteStructure,
    initial: Option<Domains>,
    node_limit: Option<u64>,
) -> Result<(Search, u64)> {
    let prep = Prepared::new(inst, target)?;
    let vars = inst.variable_count();
    let mut root = initial.unwrap_or_else(|| Domains::full(vars, target.domain_size()));
    if !prep.propagate(&mut root, 0..prep.cons.len()) {
        return Ok((Search::Exhausted, 0));
    }
    let mut nodes = 0u64;
    let mut frames = vec![Frame {
        base: root,
        var: 0,
        next: 0,
    }];
    while let Some(top) = frames.last_mut() {
        if top.var == vars {
            let d = &top.base;
            let map = (0..vars).map(|v| d.single(v).expect("assigned")).collect();
            return Ok((Search::Found(map), nodes));
        }
        let Some(a) = top.base.next_from(top.var, top.next) else {
            frames.pop();
            continue;
        };
        top.next = a as usize + 1;
        nodes += 1;
        if node_limit.is_some_and(|limit| nodes > limit) {
            return Ok((Search::Aborted, nodes));
        }
        let mut d = top.base.clone();
        let var = top.var;
        d.set_only(var, a);
        if prep.propagate(&mut d, prep.watch[var].iter().copied()) {
            frames.push(Frame {
                base: d,
                var: var + 1,
                next: 0,
            });
        }
    }
    Ok((Search::Exhausted, nodes))
}

/// The lexicographically least homomorphism from `inst` to `target`, if any.
pub fn find_homomorphism(inst: &CspInstance, target: &FiniteStructure) -> Result<Option<Homomorphism>> {
    match search(inst, target, None)? {
        Search::Found(map) => Ok(Some(Homomorphism::new(target.domain_size(), map)?)),
        Search::Exhausted => Ok(None),
        Search::Aborted => unreachable!("unbounded search"),
    }
}

/// Like [`find_homomorphism`] with an extensional source structure; the two
/// signatures must be identical.
pub fn find_structure_homomorphism(
    source: &FiniteStructure,
    target: &FiniteStructure,
) -> Result<Option<Homomorphism>> {
    source.signature().ensure_same(target.signature())?;
    find_homomorphism(&CspInstance::from_structure(source)?, target)
}

pub fn is_homomorphism(f: &Homomorphism, inst: &CspInstance, target: &FiniteStructure) -> Result<bool> {
    if f.source_size() != inst.variable_count() || f.target_size() != target.domain_size() {
        return Err(Error::DimensionMismatch(format!(
            "map {} -> {} against instance on {} variables and target of size {}",
            f.source_size(),
            f.target_size(),
            inst.variable_count(),
            target.domain_size()
        )));
    }
    let rels = inst.resolve(target.signature())?;
    let mut buf = Vec::new();
    Ok(inst.constraints().iter().zip(rels).all(|(c, r)| {
        buf.clear();
        buf.extend(c.scope.iter().map(|&v| f.apply(v as Elem)));
        target.contains(r, &buf)
    }))
}

pub fn is_structure_homomorphism(
    f: &Homomorphism,
    source: &FiniteStructure,
    target: &FiniteStructure,
) -> Result<bool> {
    source.signature().ensure_same(target.signature())?;
    if f.source_size() != source.domain_size() || f.target_size() != target.domain_size() {
        return Err(Error::DimensionMismatch(format!(
            "map {} -> {} between structures of sizes {} and {}",
            f.source_size(),
            f.target_size(),
            source.domain_size(),
            target.domain_size()
        )));
    }
    for i in 0..source.relations().len() {
        for t in source.tuples(i)?.iter() {
            if !target.contains(i, &f.apply_tuple(t)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
