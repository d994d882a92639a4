//! Affine relations over `Z_p` and the CSP and PCSP solvers built on them.

mod matrix;

use std::fmt;

pub use matrix::{gauss_solve, is_prime, ModMatrix, Solution};

use matrix::{echelon_rows, ensure_prime};

use crate::error::{invalid, Error, Result};
use crate::hom::CspInstance;
use crate::structure::{
    linear_table, write_point, FiniteStructure, Homomorphism, RelSignature, Relation, Thm1Kind,
    TupleSet,
};
use crate::{Elem, DEFAULT_MATERIALIZE_THRESHOLD};

/// A coset `particular + span(basis)` in `Z_p^k`, kept together with an
/// equation system `eqs x = rhs` with the same solution set.
#[derive(Clone, Debug)]
pub struct AffineRelation {
    p: u64,
    arity: usize,
    particular: Vec<Elem>,
    basis: Vec<Vec<Elem>>,
    eqs: ModMatrix,
    rhs: Vec<Elem>,
}

impl PartialEq for AffineRelation {
    fn eq(&self, other: &Self) -> bool {
        // Basis and equations are in reduced echelon form, so the coset is
        // determined by them and the right-hand side.
        self.p == other.p
            && self.arity == other.arity
            && self.basis == other.basis
            && self.eqs == other.eqs
            && self.rhs == other.rhs
    }
}

impl Eq for AffineRelation {}

impl AffineRelation {
    /// The coset through `particular` spanned by `vectors`.
    pub fn from_generators(p: u64, particular: Vec<Elem>, vectors: Vec<Vec<Elem>>) -> Result<Self> {
        ensure_prime(p)?;
        let k = particular.len();
        if k == 0 {
            return Err(invalid("affine relations need arity at least 1"));
        }
        if vectors.iter().any(|v| v.len() != k) {
            return Err(Error::DimensionMismatch("generator of the wrong length".into()));
        }
        let particular: Vec<Elem> = particular.iter().map(|&x| (x as u64 % p) as Elem).collect();
        let basis = echelon_rows(p, k, vectors)?;
        let as_i64: Vec<Vec<i64>> = basis.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let span = ModMatrix::from_rows(p, k, &as_i64)?;
        let annihilator = gauss_solve(&span, &vec![0; span.rows()])?
            .expect("homogeneous systems are consistent")
            .nullspace;
        let rows: Vec<Vec<i64>> = annihilator.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let eqs = ModMatrix::from_rows(p, k, &rows)?;
        let rhs = eqs.mul_vec(&particular)?;
        Ok(Self {
            p,
            arity: k,
            particular,
            basis,
            eqs,
            rhs,
        })
    }

    /// The solution set of `eqs x = rhs`; an error if it is empty.
    pub fn from_equations(eqs: &ModMatrix, rhs: &[Elem]) -> Result<Self> {
        let sol = gauss_solve(eqs, rhs)?
            .ok_or_else(|| Error::NotAffine("the equation system has no solution".into()))?;
        Self::from_generators(eqs.p(), sol.particular, sol.nullspace)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn particular(&self) -> &[Elem] {
        &self.particular
    }

    /// Reduced echelon basis of the direction space.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn equations(&self) -> (&ModMatrix, &[Elem]) {
        (&self.eqs, &self.rhs)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `p^dimension`, if it fits.
    pub fn size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(u32::try_from(self.dimension()).ok()?)
    }

    pub fn contains(&self, t: &[Elem]) -> bool {
        t.len() == self.arity
            && t.iter().all(|&x| (x as u64) < self.p)
            && self.eqs.mul_vec(t).map(|v| v == self.rhs).unwrap_or(false)
    }

    /// Every point of the coset, if there are at most `limit`.
    pub fn points(&self, limit: u64) -> Result<TupleSet> {
        let size = self
            .size()
            .filter(|&s| s <= limit as u128)
            .ok_or_else(|| Error::Budget(format!("affine relation of dimension {} over Z_{}", self.dimension(), self.p)))?;
        let p = self.p;
        let mut coeffs = vec![0 as Elem; self.dimension()];
        let rows = (0..size as usize).map(|i| {
            write_point(i, p as usize, &mut coeffs);
            let mut t: Vec<u64> = self.particular.iter().map(|&x| x as u64).collect();
            for (c, b) in coeffs.iter().zip(&self.basis) {
                for (x, &y) in t.iter_mut().zip(b) {
                    *x = (*x + *c as u64 * y as u64) % p;
                }
            }
            t.into_iter().map(|x| x as Elem).collect::<Vec<_>>()
        });
        TupleSet::from_tuples(self.arity, rows.collect::<Vec<_>>())
    }
}

impl fmt::Display for AffineRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coset of dimension {} in Z_{}^{}", self.dimension(), self.p, self.arity)
    }
}

/// Smallest coset containing every tuple: through the first tuple, spanned
/// by the differences to it.
pub fn affine_closure(tuples: &[Vec<Elem>], p: u64) -> Result<AffineRelation> {
    let first = tuples.first().ok_or_else(|| invalid("affine closure of an empty set"))?;
    let k = first.len();
    let mut diffs = Vec::with_capacity(tuples.len() - 1);
    for t in &tuples[1..] {
        if t.len() != k {
            return Err(Error::DimensionMismatch("tuples of different arities".into()));
        }
        diffs.push(
            t.iter()
                .zip(first)
                .map(|(&x, &y)| ((x as u64 % p + p - y as u64 % p) % p) as Elem)
                .collect(),
        );
    }
    AffineRelation::from_generators(p, first.clone(), diffs)
}

/// The canonical equation form of `r`.
pub fn relation_to_equations(r: &AffineRelation) -> (ModMatrix, Vec<Elem>) {
    (r.eqs.clone(), r.rhs.clone())
}

/// The linear tables `x -> sum a_i x_i mod p` over `[n]^p` with
/// `sum a_i = 1 mod p`, as a coset.
pub fn linear_table_relation(n: usize, p: usize) -> Result<AffineRelation> {
    let unit = |i: usize| -> Vec<Elem> {
        let mut a = vec![0; p];
        a[i] = 1;
        a
    };
    let particular = linear_table(&unit(0), n, p);
    let vectors = (1..p)
        .map(|i| {
            let mut a = unit(i);
            a[0] = (p - 1) as Elem;
            linear_table(&a, n, p)
        })
        .collect();
    AffineRelation::from_generators(p as u64, particular, vectors)
}

/// A structure on `[p]` all of whose relations are cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineStructure {
    name: String,
    p: u64,
    signature: RelSignature,
    relations: Vec<AffineRelation>,
}

impl AffineStructure {
    pub fn new(name: impl Into<String>, p: u64, relations: Vec<(String, AffineRelation)>) -> Result<Self> {
        ensure_prime(p)?;
        if let Some((s, r)) = relations.iter().find(|(_, r)| r.p() != p) {
            return Err(invalid(format!("relation `{s}` is over Z_{}, structure over Z_{p}", r.p())));
        }
        let signature = RelSignature::new(relations.iter().map(|(s, r)| (s.clone(), r.arity())).collect())?;
        Ok(Self {
            name: name.into(),
            p,
            signature,
            relations: relations.into_iter().map(|(_, r)| r).collect(),
        })
    }

    /// Recognizes a structure on a prime domain whose relations are cosets.
    pub fn from_structure(s: &FiniteStructure) -> Result<Self> {
        let p = s.domain_size() as u64;
        ensure_prime(p)?;
        let mut relations = Vec::with_capacity(s.relations().len());
        for (i, rel) in s.relations().iter().enumerate() {
            let symbol = s.symbol(i).to_string();
            let affine = match rel {
                Relation::Intensional(r) if r.kind == Thm1Kind::C => linear_table_relation(r.n, r.p)?,
                Relation::Intensional(r) => {
                    return Err(Error::NotAffine(format!("{symbol} ({r})")));
                }
                Relation::Extensional(t) => {
                    let rows: Vec<Vec<Elem>> = t.iter().map(<[Elem]>::to_vec).collect();
                    if rows.is_empty() {
                        return Err(Error::NotAffine(format!("{symbol} is empty")));
                    }
                    let closure = affine_closure(&rows, p)?;
                    if closure.size() != Some(rows.len() as u128) {
                        return Err(Error::NotAffine(format!(
                            "{symbol}: {} tuples, affine closure has dimension {}",
                            rows.len(),
                            closure.dimension()
                        )));
                    }
                    closure
                }
            };
            relations.push((symbol, affine));
        }
        Self::new(s.name(), p, relations)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn signature(&self) -> &RelSignature {
        &self.signature
    }

    pub fn relations(&self) -> &[AffineRelation] {
        &self.relations
    }

    /// The same structure with every coset enumerated.
    pub fn to_finite_structure(&self, limit: u64) -> Result<FiniteStructure> {
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| Ok((self.signature.symbols()[i].0.clone(), Relation::Extensional(r.points(limit)?))))
            .collect::<Result<Vec<_>>>()?;
        FiniteStructure::new(self.name.clone(), self.p as usize, relations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineAnswer {
    Sat(Vec<Elem>),
    Unsat,
}

/// Decides `inst` against `c` by one linear system over all variables. A
/// satisfying assignment is the canonical particular solution.
pub fn solve_affine_csp(c: &AffineStructure, inst: &CspInstance) -> Result<AffineAnswer> {
    let rels = inst.resolve(c.signature())?;
    let p = c.p;
    let vars = inst.variable_count();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<Elem> = Vec::new();
    for (con, &ri) in inst.constraints().iter().zip(&rels) {
        let (eqs, b) = c.relations[ri].equations();
        for e in 0..eqs.rows() {
            let mut row = vec![0i64; vars];
            for (j, &v) in con.scope.iter().enumerate() {
                row[v] += eqs.get(e, j) as i64;
            }
            rows.push(row);
            rhs.push(b[e]);
        }
    }
    let system = ModMatrix::from_rows(p, vars, &rows)?;
    let Some(sol) = gauss_solve(&system, &rhs)? else {
        return Ok(AffineAnswer::Unsat);
    };
    let x = sol.particular;
    for (con, &ri) in inst.constraints().iter().zip(&rels) {
        let t: Vec<Elem> = con.scope.iter().map(|&v| x[v]).collect();
        assert!(c.relations[ri].contains(&t), "linear solution violates a constraint");
    }
    Ok(AffineAnswer::Sat(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcspAnswer {
    Yes,
    No,
}

/// Decides `PCSP(A, B)` by solving `CSP(C)` for an affine `C` with
/// `A -> C -> B`; the two maps are checked once at construction.
#[derive(Clone, Debug)]
pub struct PcspDecider {
    c: AffineStructure,
}

impl PcspDecider {
    pub fn new(
        a: &FiniteStructure,
        b: &FiniteStructure,
        c: AffineStructure,
        g: &Homomorphism,
        h: &Homomorphism,
    ) -> Result<Self> {
        a.signature().ensure_same(c.signature())?;
        c.signature().ensure_same(b.signature())?;
        let fail = |msg: String| Err(Error::SandwichNotVerified(msg));
        if g.source_size() != a.domain_size() || g.target_size() != c.p() as usize {
            return fail("g does not map the domain of A into the domain of C".into());
        }
        if h.source_size() != c.p() as usize || h.target_size() != b.domain_size() {
            return fail("h does not map the domain of C into the domain of B".into());
        }
        let a_ext = a.materialize(DEFAULT_MATERIALIZE_THRESHOLD)?;
        for i in 0..a_ext.relations().len() {
            for t in a_ext.tuples(i)?.iter() {
                if !c.relations[i].contains(&g.apply_tuple(t)) {
                    return fail(format!("g maps {t:?} outside R^C"));
                }
            }
        }
        for (i, r) in c.relations.iter().enumerate() {
            for t in r.points(DEFAULT_MATERIALIZE_THRESHOLD)?.iter() {
                if !b.contains(i, &h.apply_tuple(t)) {
                    return fail(format!("h maps {t:?} outside R^B"));
                }
            }
        }
        Ok(Self { c })
    }

    pub fn via(&self) -> &AffineStructure {
        &self.c
    }

    pub fn decide(&self, inst: &CspInstance) -> Result<PcspAnswer> {
        Ok(match solve_affine_csp(&self.c, inst)? {
            AffineAnswer::Sat(_) => PcspAnswer::Yes,
            AffineAnswer::Unsat => PcspAnswer::No,
        })
    }
}
