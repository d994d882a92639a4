//! Graphs and digraphs: smooth parts, bipartiteness, unions of directed
//! cycles and the classification of their CSPs.
//!
//! Verdicts of NP-completeness are conditional on P != NP; every
//! [`Classification`] carries that caveat.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;

use crate::error::{invalid, Error, Result};
use crate::hom::core_of;
use crate::structure::{FiniteStructure, Homomorphism, Relation, TupleSet};
use crate::{Elem, DEFAULT_CORE_LIMIT};

/// Relation symbol of the edge relation.
pub const EDGE: &str = "E";

pub const CAVEAT: &str = "assuming P != NP";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<(Elem, Elem)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        let mut edges: Vec<(Elem, Elem)> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a.max(b) as usize >= vertex_count) {
            return Err(Error::OutOfRange {
                value: a.max(b) as u64,
                size: vertex_count as u64,
            });
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { vertex_count, edges })
    }

    /// Both directions of every given pair.
    pub fn symmetric(vertex_count: usize, edges: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        Self::new(vertex_count, edges.into_iter().flat_map(|(a, b)| [(a, b), (b, a)]))
    }

    /// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Self {
        Self::new(n, (0..n as Elem).map(|i| (i, (i + 1) % n as Elem))).expect("in range")
    }

    /// All arcs between distinct vertices.
    pub fn complete(n: usize) -> Self {
        let n = n as Elem;
        Self::new(n as usize, (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))))
            .expect("in range")
    }

    /// Disjoint union, vertices of `other` shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let s = self.vertex_count as Elem;
        Digraph::new(
            self.vertex_count + other.vertex_count,
            self.edges.iter().copied().chain(other.edges.iter().map(|&(a, b)| (a + s, b + s))),
        )
        .expect("in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(Elem, Elem)] {
        &self.edges
    }

    pub fn has_edge(&self, a: Elem, b: Elem) -> bool {
        self.edges.binary_search(&(a, b)).is_ok()
    }

    pub fn loops(&self) -> Vec<Elem> {
        self.edges.iter().filter(|(a, b)| a == b).map(|&(a, _)| a).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges.iter().all(|&(a, b)| self.has_edge(b, a))
    }

    fn out_lists(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            out[a as usize].push(b);
        }
        out
    }

    fn in_lists(&self) -> Vec<Vec<Elem>> {
        let mut inn = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            inn[b as usize].push(a);
        }
        inn
    }

    /// Subgraph induced on `vertices` (increasing), relabeled in order.
    pub fn induced(&self, vertices: &[Elem]) -> Digraph {
        let mut relabel = vec![None; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            relabel[v as usize] = Some(i as Elem);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((relabel[a as usize]?, relabel[b as usize]?)));
        Digraph::new(vertices.len(), edges).expect("relabeled in range")
    }

    /// The structure with one binary relation `E`; needs at least one vertex.
    pub fn to_structure(&self, name: &str) -> Result<FiniteStructure> {
        let t = TupleSet::from_tuples(2, self.edges.iter().map(|&(a, b)| [a, b]))?;
        FiniteStructure::single(name, self.vertex_count, EDGE, Relation::Extensional(t))
    }

    pub fn from_structure(s: &FiniteStructure) -> Result<Self> {
        let sig = s.signature().symbols();
        if sig.len() != 1 || sig[0] != (EDGE.to_string(), 2) {
            return Err(Error::SignatureMismatch(format!(
                "a digraph is a structure with the single binary relation `{EDGE}`"
            )));
        }
        Self::new(s.domain_size(), s.tuples(0)?.iter().map(|t| (t[0], t[1])))
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices, edges", self.vertex_count)?;
        for (a, b) in &self.edges {
            write!(f, " {a}->{b}")?;
        }
        Ok(())
    }
}

/// The largest smooth induced subgraph (every vertex with an in- and an
/// out-neighbor), and the original labels of its vertices.
pub fn smooth_part(g: &Digraph) -> (Digraph, Vec<Elem>) {
    let n = g.vertex_count;
    let (out, inn) = (g.out_lists(), g.in_lists());
    let mut outdeg: Vec<usize> = out.iter().map(Vec::len).collect();
    let mut indeg: Vec<usize> = inn.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| outdeg[v] == 0 || indeg[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        if std::mem::replace(&mut removed[v], true) {
            continue;
        }
        for &w in &out[v] {
            let w = w as usize;
            indeg[w] -= 1;
            if indeg[w] == 0 && !removed[w] {
                queue.push_back(w);
            }
        }
        for &u in &inn[v] {
            let u = u as usize;
            outdeg[u] -= 1;
            if outdeg[u] == 0 && !removed[u] {
                queue.push_back(u);
            }
        }
    }
    let kept: Vec<Elem> = (0..n).filter(|&v| !removed[v]).map(|v| v as Elem).collect();
    (g.induced(&kept), kept)
}

pub fn is_smooth(g: &Digraph) -> bool {
    smooth_part(g).1.len() == g.vertex_count
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Color 0 or 1 per vertex; every edge joins different colors.
    Bipartite(Vec<u8>),
    /// A closed walk `v_0, ..., v_{k-1}` of odd length `k` (edges between
    /// consecutive vertices and from the last back to the first).
    OddCycle(Vec<Elem>),
}

/// Two-coloring by breadth-first search on a symmetric digraph.
pub fn is_bipartite(g: &Digraph) -> Result<Bipartiteness> {
    if !g.is_symmetric() {
        return Err(invalid("bipartiteness is defined for symmetric edge relations"));
    }
    if let Some(&v) = g.loops().first() {
        return Ok(Bipartiteness::OddCycle(vec![v]));
    }
    let out = g.out_lists();
    let n = g.vertex_count;
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &out[u] {
                let w = w as usize;
                match color[w] {
                    None => {
                        color[w] = Some(1 - color[u].unwrap());
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(c) if c == color[u].unwrap() => {
                        return Ok(Bipartiteness::OddCycle(odd_cycle(u, w, &parent, &depth)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Bipartiteness::Bipartite(color.into_iter().map(|c| c.unwrap()).collect()))
}

/// Joins the tree paths of the endpoints of a monochromatic edge `u - w`.
fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<Elem> {
    let (mut a, mut b) = (u, w);
    let (mut left, mut right) = (vec![a], vec![b]);
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    // u ... lca ... w, then the edge w - u closes it
    left.extend(right.into_iter().rev());
    left.into_iter().map(|v| v as Elem).collect()
}

/// If every vertex has in- and out-degree exactly 1, the cycles, each
/// starting at its least vertex, ordered by that vertex.
pub fn cycle_decomposition(g: &Digraph) -> Option<Vec<Vec<Elem>>> {
    let (out, inn) = (g.out_lists(), g.in_lists());
    if out.iter().chain(&inn).any(|l| l.len() != 1) {
        return None;
    }
    let mut seen = vec![false; g.vertex_count];
    let mut cycles = Vec::new();
    for s in 0..g.vertex_count {
        if seen[s] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v as Elem);
            v = out[v][0] as usize;
        }
        cycles.push(cycle);
    }
    Some(cycles)
}

/// Cycle lengths in ascending order, if `g` is a disjoint union of directed
/// cycles.
pub fn is_disjoint_union_of_cycles(g: &Digraph) -> Option<Vec<usize>> {
    let mut lengths: Vec<usize> = cycle_decomposition(g)?.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    Some(lengths)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    InP,
    NPComplete,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::InP => "in-P",
            Verdict::NPComplete => "NP-complete",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    Loop,
    Bipartite,
    NonBipartite,
    CycleUnionCore,
    SmoothNonCycleCore,
    CoreBudget,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::Loop => "loop",
            Reason::Bipartite => "bipartite",
            Reason::NonBipartite => "non-bipartite",
            Reason::CycleUnionCore => "core-is-cycle-union",
            Reason::SmoothNonCycleCore => "core-is-not-cycle-union",
            Reason::CoreBudget => "core-budget-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassEvidence {
    Loop(Elem),
    Coloring(Vec<u8>),
    OddCycle(Vec<Elem>),
    Core {
        /// Vertices of the input the core is induced on.
        vertices: Vec<Elem>,
        core: Digraph,
        /// Cycle lengths when the core is a union of directed cycles.
        cycle_lengths: Option<Vec<usize>>,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: Reason,
    pub evidence: ClassEvidence,
    pub caveat: &'static str,
}

impl Classification {
    fn new(verdict: Verdict, reason: Reason, evidence: ClassEvidence) -> Self {
        Self {
            verdict,
            reason,
            evidence,
            caveat: CAVEAT,
        }
    }
}

/// CSP of a symmetric graph: tractable iff bipartite (or with a loop).
pub fn classify_graph_csp(g: &Digraph) -> Result<Classification> {
    if let Some(&v) = g.loops().first() {
        return Ok(Classification::new(Verdict::InP, Reason::Loop, ClassEvidence::Loop(v)));
    }
    Ok(match is_bipartite(g)? {
        Bipartiteness::Bipartite(c) => Classification::new(Verdict::InP, Reason::Bipartite, ClassEvidence::Coloring(c)),
        Bipartiteness::OddCycle(w) => {
            Classification::new(Verdict::NPComplete, Reason::NonBipartite, ClassEvidence::OddCycle(w))
        }
    })
}

/// CSP of a smooth digraph: tractable iff its core is a disjoint union of
/// directed cycles.
pub fn classify_smooth_digraph_csp(g: &Digraph) -> Result<Classification> {
    if !is_smooth(g) {
        return Err(invalid("the digraph is not smooth"));
    }
    if let Some(&v) = g.loops().first() {
        return Ok(Classification::new(Verdict::InP, Reason::Loop, ClassEvidence::Loop(v)));
    }
    if g.vertex_count == 0 {
        return Ok(Classification::new(Verdict::InP, Reason::CycleUnionCore, ClassEvidence::None));
    }
    if g.vertex_count > DEFAULT_CORE_LIMIT {
        return Ok(Classification::new(Verdict::Unknown, Reason::CoreBudget, ClassEvidence::None));
    }
    let core = core_of(&g.to_structure("G")?, DEFAULT_CORE_LIMIT)?;
    let core_graph = Digraph::from_structure(&core.structure)?;
    let cycle_lengths = is_disjoint_union_of_cycles(&core_graph);
    let (verdict, reason) = if cycle_lengths.is_some() {
        (Verdict::InP, Reason::CycleUnionCore)
    } else {
        (Verdict::NPComplete, Reason::SmoothNonCycleCore)
    };
    Ok(Classification::new(
        verdict,
        reason,
        ClassEvidence::Core {
            vertices: core.vertices,
            core: core_graph,
            cycle_lengths,
        },
    ))
}

/// Decides `X -> T` for a disjoint union of directed cycles `T`.
///
/// In each weakly connected component of `X`, vertices get integer levels
/// along a spanning tree (+1 along an arc, -1 against it). Every other arc
/// closes a cycle whose net length is `level(a) + 1 - level(b)`; the
/// component maps to a directed cycle of length `l` iff `l` divides the gcd
/// of those net lengths, via `v -> level(v) mod l`.
pub fn solve_cycle_union_csp(t: &Digraph, x: &Digraph) -> Result<Option<Homomorphism>> {
    let cycles = cycle_decomposition(t).ok_or_else(|| invalid("the target is not a disjoint union of directed cycles"))?;
    let n = x.vertex_count;
    let (out, inn) = (x.out_lists(), x.in_lists());
    let mut level: Vec<Option<i64>> = vec![None; n];
    let mut map = vec![0 as Elem; n];
    for s in 0..n {
        if level[s].is_some() {
            continue;
        }
        level[s] = Some(0);
        let mut component = vec![s];
        let mut queue = VecDeque::from([s]);
        let mut gcd = 0i64;
        while let Some(u) = queue.pop_front() {
            let lu = level[u].unwrap();
            let steps = out[u].iter().map(|&w| (w, 1)).chain(inn[u].iter().map(|&w| (w, -1)));
            for (w, step) in steps {
                let w = w as usize;
                match level[w] {
                    None => {
                        level[w] = Some(lu + step);
                        component.push(w);
                        queue.push_back(w);
                    }
                    Some(lw) => gcd = gcd.gcd(&(lu + step - lw)),
                }
            }
        }
        let Some(cycle) = cycles.iter().find(|c| gcd % c.len() as i64 == 0) else {
            return Ok(None);
        };
        let len = cycle.len() as i64;
        for v in component {
            map[v] = cycle[level[v].unwrap().rem_euclid(len) as usize];
        }
    }
    let h = Homomorphism::new(t.vertex_count, map)?;
    assert!(
        x.edges.iter().all(|&(a, b)| t.has_edge(h.apply(a), h.apply(b))),
        "cycle solver produced a non-homomorphism"
    );
    Ok(Some(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Digraph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Digraph::symmetric(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    fn sym_cycle(n: usize) -> Digraph {
        Digraph::symmetric(n, (0..n as Elem).map(|i| (i, (i + 1) % n as Elem))).unwrap()
    }

    #[test]
    fn smooth_examples() {
        let c3 = Digraph::directed_cycle(3);
        assert_eq!(smooth_part(&c3).0, c3);
        let path = Digraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(smooth_part(&path).1.is_empty());
        let pendant = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(smooth_part(&pendant).1, vec![0, 1, 2]);
    }

    #[test]
    fn bipartite_examples() {
        assert!(matches!(is_bipartite(&sym_cycle(4)).unwrap(), Bipartiteness::Bipartite(_)));
        let Bipartiteness::OddCycle(w) = is_bipartite(&Digraph::complete(3)).unwrap() else { panic!() };
        assert_eq!(w.len(), 3);
        let Bipartiteness::OddCycle(w) = is_bipartite(&petersen()).unwrap() else { panic!() };
        let g = petersen();
        assert_eq!(w.len() % 2, 1);
        assert!((0..w.len()).all(|i| g.has_edge(w[i], w[(i + 1) % w.len()])));
        assert!(is_bipartite(&Digraph::directed_cycle(3)).is_err());
    }

    #[test]
    fn graph_classification() {
        assert_eq!(classify_graph_csp(&Digraph::complete(2)).unwrap().verdict, Verdict::InP);
        assert_eq!(classify_graph_csp(&Digraph::complete(3)).unwrap().verdict, Verdict::NPComplete);
        assert_eq!(classify_graph_csp(&sym_cycle(6)).unwrap().verdict, Verdict::InP);
        let looped = Digraph::symmetric(3, [(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        assert_eq!(classify_graph_csp(&looped).unwrap().reason, Reason::Loop);
    }

    #[test]
    fn cycle_unions() {
        let g = Digraph::directed_cycle(3).disjoint_union(&Digraph::directed_cycle(6));
        assert_eq!(is_disjoint_union_of_cycles(&g), Some(vec![3, 6]));
        assert_eq!(is_disjoint_union_of_cycles(&Digraph::new(0, []).unwrap()), Some(vec![]));
        let fork = Digraph::new(3, [(0, 1), (0, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(is_disjoint_union_of_cycles(&fork), None);
    }

    #[test]
    fn smooth_classification() {
        let g = Digraph::directed_cycle(3).disjoint_union(&Digraph::directed_cycle(6));
        let c = classify_smooth_digraph_csp(&g).unwrap();
        assert_eq!(c.verdict, Verdict::InP);
        let ClassEvidence::Core { vertices, .. } = &c.evidence else { panic!() };
        assert_eq!(vertices, &vec![0, 1, 2]);
        assert_eq!(classify_smooth_digraph_csp(&Digraph::complete(3)).unwrap().verdict, Verdict::NPComplete);
        assert_eq!(classify_smooth_digraph_csp(&Digraph::directed_cycle(5)).unwrap().verdict, Verdict::InP);
    }

    #[test]
    fn cycle_solver_examples() {
        let (c3, c6) = (Digraph::directed_cycle(3), Digraph::directed_cycle(6));
        let h = solve_cycle_union_csp(&c3, &c6).unwrap().unwrap();
        assert_eq!(h.as_slice(), &[0, 1, 2, 0, 1, 2]);
        assert!(solve_cycle_union_csp(&c6, &c3).unwrap().is_none());
        let single = Digraph::new(1, []).unwrap();
        assert!(solve_cycle_union_csp(&c3, &single).unwrap().is_some());
        assert!(solve_cycle_union_csp(&Digraph::complete(3), &single).is_err());
    }
}
