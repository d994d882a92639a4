//! The two sandwich families `A -> C -> B` and their obstruction witnesses.
//!
//! Family one, parameters `n, p >= 2`: one relation of arity `n^p` whose
//! tuples are tables `[n]^p -> [.]`. `R^A` holds the projections, `R^B` every
//! non-cyclic table and `R^C` (over `[p]`) the linear tables
//! `sum a_i x_i mod p` with `sum a_i = 1 mod p`.
//!
//! Family two, prime `p >= 7`: `R^C = {(x,y,z) : x - 2y + z = 1 mod p}`,
//! `A` its restriction to `[p-1]` and `B` its image under the map sending
//! `p-1` to 1.

use crate::affine::{gauss_solve, is_prime, linear_table_relation, AffineStructure, ModMatrix};
use crate::error::{invalid, Error, Result};
use crate::hom::{ObstructionWitness, WitnessMode};
use crate::structure::{
    FiniteStructure, FunctionTable, Homomorphism, Relation, Thm1Kind, Thm1Relation,
    TupleSet,
};
use crate::Elem;

/// Symbol of the single relation in both families.
pub const SYMBOL: &str = "R";

#[derive(Clone, Debug)]
pub struct Thm1Bundle {
    pub n: usize,
    pub p: usize,
    pub a: FiniteStructure,
    /// `R^B` as a predicate.
    pub b: FiniteStructure,
    /// `R^C` as a predicate.
    pub c: FiniteStructure,
    /// `b` with `R^B` enumerated, when below the threshold.
    pub b_ext: Option<FiniteStructure>,
    /// `c` with `R^C` enumerated, when below the threshold.
    pub c_ext: Option<FiniteStructure>,
    /// `c` as a coset; only for prime `p`.
    pub c_affine: Option<AffineStructure>,
    pub g: Homomorphism,
    pub h: Homomorphism,
    /// `pi_1, ..., pi_p` in coordinate order.
    pub projections: Vec<FunctionTable>,
}

impl Thm1Bundle {
    /// The projections as the columns of an exhaustive-cyclic witness: a
    /// cyclic `f` applied to them returns `f` itself, which is not in `R^B`.
    pub fn projection_witness(&self) -> Result<ObstructionWitness> {
        let columns: Vec<Vec<Elem>> = self.projections.iter().map(FunctionTable::encode).collect();
        ObstructionWitness::from_columns(WitnessMode::ExhaustiveCyclic, &columns)
    }
}

/// `g: x -> x mod p` on `[n]` and `h: x -> x mod n` on `[p]`.
pub fn thm1_maps(n: usize, p: usize) -> Result<(Homomorphism, Homomorphism)> {
    if n < 2 || p < 2 {
        return Err(invalid("family parameters need n, p >= 2"));
    }
    let g = Homomorphism::from_fn(n, p, |x| x % p as Elem)?;
    let h = Homomorphism::from_fn(p, n, |x| x % n as Elem)?;
    Ok((g, h))
}

pub fn build_thm1(n: usize, p: usize, materialize_threshold: u64) -> Result<Thm1Bundle> {
    let (g, h) = thm1_maps(n, p)?;
    let rel = |kind| Thm1Relation::new(kind, n, p);
    let a_rel = rel(Thm1Kind::A)?;
    let a = FiniteStructure::single("A", n, SYMBOL, Relation::Extensional(a_rel.enumerate(p as u64)?))?;
    let b = FiniteStructure::single("B", n, SYMBOL, Relation::Intensional(rel(Thm1Kind::B)?))?;
    let c = FiniteStructure::single("C", p, SYMBOL, Relation::Intensional(rel(Thm1Kind::C)?))?;

    // Enumerating R^B walks all n^(n^p) tables.
    let tables = u32::try_from(a_rel.arity()).ok().and_then(|k| (n as u128).checked_pow(k));
    let b_ext = match tables {
        Some(t) if t <= materialize_threshold as u128 => Some(b.materialize(materialize_threshold)?),
        _ => None,
    };
    let c_ext = match c.relation(0).size() {
        Some(s) if s <= materialize_threshold as u128 => Some(c.materialize(materialize_threshold)?),
        _ => None,
    };
    let c_affine = if is_prime(p as u64) {
        Some(AffineStructure::new(
            "C",
            p as u64,
            vec![(SYMBOL.to_string(), linear_table_relation(n, p)?)],
        )?)
    } else {
        None
    };
    let projections = (0..p)
        .map(|i| FunctionTable::projection(n, p, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(Thm1Bundle {
        n,
        p,
        a,
        b,
        c,
        b_ext,
        c_ext,
        c_affine,
        g,
        h,
        projections,
    })
}

#[derive(Clone, Debug)]
pub struct Thm2Bundle {
    pub p: usize,
    /// On `[p-1]`.
    pub a: FiniteStructure,
    /// On `[p-1]`.
    pub b: FiniteStructure,
    /// On `[p]`.
    pub c: FiniteStructure,
    pub c_affine: AffineStructure,
    /// The inclusion `[p-1] -> [p]`.
    pub g: Homomorphism,
    /// Identity below `p-1`, and `p-1 -> 1`.
    pub h: Homomorphism,
    pub u: Vec<Elem>,
    pub witness: ObstructionWitness,
}

fn check_thm2_prime(p: usize, allow_small: bool) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p < 7 && !(allow_small && p >= 3) {
        return Err(invalid(format!("p = {p} is below 7 (small primes need the explicit flag)")));
    }
    Ok(())
}

/// The `p x p` matrix with rows `x_i - 2 x_{i+1} + x_{i+2}` (indices mod `p`).
pub fn second_difference_matrix(p: usize) -> Result<ModMatrix> {
    let rows: Vec<Vec<i64>> = (0..p)
        .map(|i| {
            let mut r = vec![0i64; p];
            r[i] += 1;
            r[(i + 1) % p] -= 2;
            r[(i + 2) % p] += 1;
            r
        })
        .collect();
    ModMatrix::from_rows(p as u64, p, &rows)
}

/// `x - 2y + z mod p`.
pub fn second_difference(x: Elem, y: Elem, z: Elem, p: usize) -> Elem {
    let p = p as u64;
    ((x as u64 + z as u64 + 2 * (p - y as u64 % p)) % p) as Elem
}

/// Solves `M x = 1` with the last two coordinates zero, then shifts by the
/// least multiple of the all-ones vector that avoids the value `p-1`. The
/// witness rows are `u` and its first two left rotations.
pub fn build_thm2_witness(p: usize, allow_small: bool) -> Result<(Vec<Elem>, ObstructionWitness)> {
    check_thm2_prime(p, allow_small)?;
    let m = second_difference_matrix(p)?;
    let x = gauss_solve(&m, &vec![1; p])?
        .ok_or_else(|| invalid(format!("M x = 1 has no solution for p = {p}")))?
        .particular;
    if x[p - 2] != 0 || x[p - 1] != 0 {
        return Err(invalid("canonical solution does not vanish on the last two coordinates"));
    }
    let top = (p - 1) as Elem;
    let u = (0..p as Elem)
        .map(|c| x.iter().map(|&v| (v + c) % p as Elem).collect::<Vec<_>>())
        .find(|u| u.iter().all(|&v| v != top))
        .ok_or_else(|| invalid(format!("no shift of the solution avoids {top} for p = {p}")))?;
    let rows = (0..3)
        .map(|j| {
            let mut r = u.clone();
            r.rotate_left(j);
            r
        })
        .collect();
    let witness = ObstructionWitness::from_rows(p, WitnessMode::ConstantForcing, rows)?;
    Ok((u, witness))
}

pub fn build_thm2(p: usize, allow_small: bool) -> Result<Thm2Bundle> {
    check_thm2_prime(p, allow_small)?;
    let pe = p as Elem;
    let c_rows: Vec<[Elem; 3]> = (0..pe)
        .flat_map(|x| (0..pe).map(move |y| [x, y, (1 + 2 * y + pe - x) % pe]))
        .collect();
    debug_assert!(c_rows.iter().all(|t| second_difference(t[0], t[1], t[2], p) == 1));
    let h = Homomorphism::from_fn(p, p - 1, |x| if x == pe - 1 { 1 } else { x })?;
    let g = Homomorphism::from_fn(p - 1, p, |x| x)?;
    let a_rows = c_rows.iter().filter(|t| t.iter().all(|&v| v < pe - 1));
    let b_rows = c_rows.iter().map(|t| t.map(|v| h.apply(v)));
    let mk = |name: &str, k: usize, t: TupleSet| FiniteStructure::single(name, k, SYMBOL, Relation::Extensional(t));
    let a = mk("A", p - 1, TupleSet::from_tuples(3, a_rows)?)?;
    let b = mk("B", p - 1, TupleSet::from_tuples(3, b_rows)?)?;
    let c = mk("C", p, TupleSet::from_tuples(3, &c_rows)?)?;
    let c_affine = AffineStructure::from_structure(&c)?;
    let (u, witness) = build_thm2_witness(p, allow_small)?;
    Ok(Thm2Bundle {
        p,
        a,
        b,
        c,
        c_affine,
        g,
        h,
        u,
        witness,
    })
}
