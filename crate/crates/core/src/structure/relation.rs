use std::cmp::Ordering;
use std::fmt;

use super::table::{is_cyclic_values, point_count, write_point};
use crate::error::{invalid, Error, Result};
use crate::Elem;

/// A sorted, duplicate-free set of tuples of one arity, stored flat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TupleSet {
    arity: usize,
    data: Vec<Elem>,
}

impl TupleSet {
    pub fn empty(arity: usize) -> Self {
        Self {
            arity,
            data: Vec::new(),
        }
    }

    /// Sorts and deduplicates. Fails if a tuple has the wrong length.
    pub fn from_tuples<I, T>(arity: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[Elem]>,
    {
        if arity == 0 {
            return Err(invalid("relation arity must be at least 1"));
        }
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::DimensionMismatch(format!(
                    "tuple of length {} in relation of arity {arity}",
                    t.len()
                )));
            }
            rows.push(t.to_vec());
        }
        rows.sort_unstable();
        rows.dedup();
        Ok(Self {
            arity,
            data: rows.concat(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Elem] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, Elem> {
        self.data.chunks_exact(self.arity)
    }

    pub fn contains(&self, tuple: &[Elem]) -> bool {
        if tuple.len() != self.arity {
            return false;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(tuple) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn max_entry(&self) -> Option<Elem> {
        self.data.iter().copied().max()
    }

    pub fn is_subset(&self, other: &TupleSet) -> bool {
        self.arity == other.arity && self.iter().all(|t| other.contains(t))
    }
}

/// Which member of the first sandwich family a relation is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Thm1Kind {
    /// Encodings of the `p` projections `[n]^p -> [n]`.
    A,
    /// Encodings of all non-cyclic tables `[n]^p -> [n]`.
    B,
    /// Encodings of the tables `x -> sum a_i x_i mod p` with `sum a_i = 1 mod p`.
    C,
}

impl Thm1Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Thm1Kind::A => "thm1-a",
            Thm1Kind::B => "thm1-b",
            Thm1Kind::C => "thm1-c",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "thm1-a" => Some(Thm1Kind::A),
            "thm1-b" => Some(Thm1Kind::B),
            "thm1-c" => Some(Thm1Kind::C),
            _ => None,
        }
    }
}

/// A relation of arity `n^p` given by a membership predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Thm1Relation {
    pub kind: Thm1Kind,
    pub n: usize,
    pub p: usize,
}

impl Thm1Relation {
    pub fn new(kind: Thm1Kind, n: usize, p: usize) -> Result<Self> {
        if n < 2 || p < 2 {
            return Err(invalid("family parameters need n, p >= 2"));
        }
        point_count(n, p).ok_or_else(|| invalid("n^p overflows"))?;
        Ok(Self { kind, n, p })
    }

    pub fn arity(&self) -> usize {
        point_count(self.n, self.p).expect("checked at construction")
    }

    /// Domain size the relation lives on.
    pub fn domain_size(&self) -> usize {
        match self.kind {
            Thm1Kind::A | Thm1Kind::B => self.n,
            Thm1Kind::C => self.p,
        }
    }

    pub fn contains(&self, tuple: &[Elem]) -> bool {
        if tuple.len() != self.arity() {
            return false;
        }
        let k = self.domain_size();
        if tuple.iter().any(|&v| v as usize >= k) {
            return false;
        }
        match self.kind {
            Thm1Kind::A => projection_index(tuple, self.n, self.p).is_some(),
            Thm1Kind::B => !is_cyclic_values(tuple, self.n, self.p),
            Thm1Kind::C => match linear_coefficients(tuple, self.n, self.p) {
                Some(a) => a.iter().map(|&x| x as u64).sum::<u64>() % self.p as u64 == 1,
                None => false,
            },
        }
    }

    /// Number of member tuples, if it fits in `u128`.
    pub fn size(&self) -> Option<u128> {
        let (n, p) = (self.n as u128, self.p as u32);
        match self.kind {
            Thm1Kind::A => Some(self.p as u128),
            Thm1Kind::B => {
                let points = u32::try_from(self.arity()).ok()?;
                let all = n.checked_pow(points)?;
                let orbits = orbit_count(self.n, self.p)? as u32;
                Some(all - n.checked_pow(orbits)?)
            }
            Thm1Kind::C => (self.p as u128).checked_pow(p - 1),
        }
    }

    /// All member tuples, if there are at most `limit` of them.
    pub fn enumerate(&self, limit: u64) -> Result<TupleSet> {
        let size = self.size().filter(|&s| s <= limit as u128).ok_or_else(|| {
            Error::Budget(format!(
                "{} with n={} p={} exceeds {limit} tuples",
                self.kind.tag(),
                self.n,
                self.p
            ))
        })?;
        let arity = self.arity();
        let (n, p) = (self.n, self.p);
        let rows: Vec<Vec<Elem>> = match self.kind {
            Thm1Kind::A => (0..p)
                .map(|i| {
                    let stride = n.pow((p - 1 - i) as u32);
                    (0..arity).map(|j| ((j / stride) % n) as Elem).collect()
                })
                .collect(),
            Thm1Kind::B => {
                // the guard above bounds n^arity by `limit`
                let total = n.pow(arity as u32);
                let mut row = vec![0; arity];
                let mut out = Vec::with_capacity(size as usize);
                for i in 0..total {
                    write_point(i, n, &mut row);
                    if !is_cyclic_values(&row, n, p) {
                        out.push(row.clone());
                    }
                }
                out
            }
            Thm1Kind::C => {
                let free = p.pow((p - 1) as u32);
                let mut coeffs = vec![0; p];
                (0..free)
                    .map(|i| {
                        write_point(i, p, &mut coeffs[..p - 1]);
                        let s: usize = coeffs[..p - 1].iter().map(|&c| c as usize).sum();
                        coeffs[p - 1] = ((p - s % p) + 1) as Elem % p as Elem;
                        linear_table(&coeffs, n, p)
                    })
                    .collect()
            }
        };
        TupleSet::from_tuples(arity, rows)
    }
}

impl fmt::Display for Thm1Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} p={}", self.kind.tag(), self.n, self.p)
    }
}

fn orbit_count(n: usize, p: usize) -> Option<usize> {
    // Burnside over the cyclic group of order p: (1/p) * sum_d n^gcd(d, p).
    let mut total: u128 = 0;
    for d in 0..p {
        let g = num_integer::gcd(d, p) as u32;
        total = total.checked_add((n as u128).checked_pow(g)?)?;
    }
    usize::try_from(total / p as u128).ok()
}

/// If `tuple` encodes the projection `x -> x_i`, returns `i` (0-based).
pub fn projection_index(tuple: &[Elem], n: usize, p: usize) -> Option<usize> {
    (0..p).find(|&i| {
        let stride = n.pow((p - 1 - i) as u32);
        tuple
            .iter()
            .enumerate()
            .all(|(j, &v)| v as usize == (j / stride) % n)
    })
}

/// The table of `x -> sum a_i x_i mod p` over `[n]^p`.
pub fn linear_table(coeffs: &[Elem], n: usize, p: usize) -> Vec<Elem> {
    let len = n.pow(coeffs.len() as u32);
    let mut x = vec![0; coeffs.len()];
    (0..len)
        .map(|j| {
            write_point(j, n, &mut x);
            let s: u64 = coeffs
                .iter()
                .zip(&x)
                .map(|(&a, &xi)| a as u64 * xi as u64)
                .sum();
            (s % p as u64) as Elem
        })
        .collect()
}

/// Reads the coefficients of a linear table over `[n]^p` with values in
/// `[p]` from the unit points, then checks linearity at every point.
pub fn linear_coefficients(tuple: &[Elem], n: usize, p: usize) -> Option<Vec<Elem>> {
    if n < 2 || tuple.len() != n.checked_pow(p as u32)? {
        return None;
    }
    let coeffs: Vec<Elem> = (0..p).map(|i| tuple[n.pow((p - 1 - i) as u32)]).collect();
    if coeffs.iter().any(|&a| a as usize >= p) {
        return None;
    }
    (linear_table(&coeffs, n, p) == tuple).then_some(coeffs)
}

/// A relation of a structure: an explicit tuple set or a family predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Extensional(TupleSet),
    Intensional(Thm1Relation),
}

impl Relation {
    pub fn arity(&self) -> usize {
        match self {
            Relation::Extensional(t) => t.arity(),
            Relation::Intensional(r) => r.arity(),
        }
    }

    pub fn contains(&self, tuple: &[Elem]) -> bool {
        match self {
            Relation::Extensional(t) => t.contains(tuple),
            Relation::Intensional(r) => r.contains(tuple),
        }
    }

    pub fn tuples(&self) -> Option<&TupleSet> {
        match self {
            Relation::Extensional(t) => Some(t),
            Relation::Intensional(_) => None,
        }
    }

    pub fn size(&self) -> Option<u128> {
        match self {
            Relation::Extensional(t) => Some(t.len() as u128),
            Relation::Intensional(r) => r.size(),
        }
    }
}
