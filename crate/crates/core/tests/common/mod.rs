//! Brute-force oracles, written directly from the definitions and sharing
//! no code with the library beyond its data types.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sandwich::hom::Constraint;
use sandwich::{CspInstance, Digraph, Elem, FiniteStructure, Relation, TupleSet};

/// Point `i` of `[n]^p`, first coordinate most significant.
pub fn point(mut i: usize, n: usize, p: usize) -> Vec<Elem> {
    let mut x = vec![0; p];
    for slot in x.iter_mut().rev() {
        *slot = (i % n) as Elem;
        i /= n;
    }
    x
}

pub fn index(x: &[Elem], n: usize) -> usize {
    x.iter().fold(0, |acc, &v| acc * n + v as usize)
}

/// `f(x_1, ..., x_p) = f(x_2, ..., x_p, x_1)` for every point.
pub fn is_cyclic(values: &[Elem], n: usize, p: usize) -> bool {
    (0..values.len()).all(|i| {
        let mut x = point(i, n, p);
        x.rotate_left(1);
        values[i] == values[index(&x, n)]
    })
}

/// Invariance under a transposition and a rotation, which generate `S_p`.
pub fn is_symmetric(values: &[Elem], n: usize, p: usize) -> bool {
    is_cyclic(values, n, p)
        && (0..values.len()).all(|i| {
            let mut x = point(i, n, p);
            x.swap(0, 1);
            values[i] == values[index(&x, n)]
        })
}

/// The table `x -> sum a_i x_i mod p` over `[n]^p`.
pub fn linear_table(a: &[Elem], n: usize, p: usize) -> Vec<Elem> {
    (0..n.pow(p as u32))
        .map(|i| {
            let x = point(i, n, p);
            (a.iter().zip(&x).map(|(&c, &v)| c as usize * v as usize).sum::<usize>() % p) as Elem
        })
        .collect()
}

/// All vectors of `[k]^len` in lexicographic order.
pub fn all_vectors(k: usize, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..k.pow(len as u32)).map(move |i| point(i, k, len))
}

/// `{ linear_table(a) : sum a_i = 1 mod p }`, sorted.
pub fn coefficient_relation(n: usize, p: usize) -> Vec<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = all_vectors(p, p)
        .filter(|a| a.iter().map(|&c| c as usize).sum::<usize>() % p == 1)
        .map(|a| linear_table(&a, n, p))
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

/// Plain backtracking in variable order; each constraint is checked once
/// its last variable is set. Values ascend, so the first hit is the
/// lexicographically least solution.
pub fn brute_hom(inst: &CspInstance, target: &FiniteStructure) -> Option<Vec<Elem>> {
    let v = inst.variable_count();
    let mut due: Vec<Vec<&Constraint>> = vec![Vec::new(); v];
    for c in inst.constraints() {
        match c.scope.iter().max() {
            Some(&m) => due[m].push(c),
            None => {
                let i = target.signature().index_of(&c.symbol).unwrap();
                if !target.contains(i, &[]) {
                    return None;
                }
            }
        }
    }
    let k = target.domain_size() as Elem;
    let mut map = vec![0 as Elem; v];
    fn go(var: usize, map: &mut Vec<Elem>, due: &[Vec<&Constraint>], target: &FiniteStructure, k: Elem) -> bool {
        if var == map.len() {
            return true;
        }
        for val in 0..k {
            map[var] = val;
            let ok = due[var].iter().all(|c| {
                let i = target.signature().index_of(&c.symbol).unwrap();
                let t: Vec<Elem> = c.scope.iter().map(|&x| map[x]).collect();
                target.contains(i, &t)
            });
            if ok && go(var + 1, map, due, target, k) {
                return true;
            }
        }
        false
    }
    go(0, &mut map, &due, target, k).then_some(map)
}

/// A structure with one relation `symbol` given by its tuples.
pub fn structure(name: &str, size: usize, symbol: &str, arity: usize, tuples: &[Vec<Elem>]) -> FiniteStructure {
    let t = TupleSet::from_tuples(arity, tuples.iter().map(Vec::as_slice)).unwrap();
    FiniteStructure::single(name, size, symbol, Relation::Extensional(t)).unwrap()
}

pub fn random_digraph(rng: &mut ChaCha8Rng, max_n: usize, loops: bool) -> Digraph {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.05..0.5);
    let mut edges = Vec::new();
    for a in 0..n as Elem {
        for b in 0..n as Elem {
            if (loops || a != b) && rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    Digraph::new(n, edges).unwrap()
}

/// Random symmetric loopless graph.
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Digraph {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for a in 0..n as Elem {
        for b in a + 1..n as Elem {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    Digraph::symmetric(n, edges).unwrap()
}

/// Disjoint union of directed cycles with the given lengths.
pub fn cycle_union(lengths: &[usize]) -> Digraph {
    let mut edges = Vec::new();
    let mut base = 0;
    for &l in lengths {
        for i in 0..l {
            edges.push(((base + i) as Elem, (base + (i + 1) % l) as Elem));
        }
        base += l;
    }
    Digraph::new(base, edges).unwrap()
}

pub fn digraph_instance(g: &Digraph) -> CspInstance {
    let cs = g
        .edges()
        .iter()
        .map(|&(a, b)| Constraint {
            symbol: "E".into(),
            scope: vec![a as usize, b as usize],
        })
        .collect();
    CspInstance::new("X", g.vertex_count(), cs).unwrap()
}

/// Vertices from which both a walk of length `n` starts and one ends.
pub fn path_characterization(g: &Digraph) -> Vec<Elem> {
    let n = g.vertex_count();
    let step = |set: &[bool], forward: bool| -> Vec<bool> {
        let mut next = vec![false; n];
        for &(a, b) in g.edges() {
            let (from, to) = if forward { (b, a) } else { (a, b) };
            if set[from as usize] {
                next[to as usize] = true;
            }
        }
        next
    };
    // out[v]: a walk of length k starts at v; built from the end.
    let (mut out, mut inn) = (vec![true; n], vec![true; n]);
    for _ in 0..n {
        out = step(&out, true);
        inn = step(&inn, false);
    }
    (0..n).filter(|&v| out[v] && inn[v]).map(|v| v as Elem).collect()
}
