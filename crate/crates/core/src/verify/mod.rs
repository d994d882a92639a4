//! Exhaustive checks of the combinatorial facts behind both sandwich families,
//! and refutation certificates.

mod certificate;

use std::fmt::{self, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use certificate::{refutation_certificate, Certificate, Evidence};

use crate::affine::{gauss_solve, is_prime};
use crate::constructions::{second_difference, second_difference_matrix};
use crate::error::{Error, Result};
use crate::hom::is_structure_homomorphism;
use crate::structure::{
    linear_coefficients, linear_table, max_symmetric_subset, point_count, rotate_index, write_point,
    FiniteStructure, Homomorphism,
};
use crate::Elem;

/// Largest `p^p * n^p` the coefficient sweeps accept.
pub const SWEEP_BUDGET: u128 = 2_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimStatus {
    Holds,
    /// A concrete failing instance: the vectors involved and a description.
    Fails { values: Vec<Vec<Elem>>, note: String },
    /// The claim's hypothesis is not met or the budget is too small.
    Skipped(String),
    /// The input violates a precondition of the check.
    Inapplicable(String),
}

impl ClaimStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            ClaimStatus::Holds => "holds",
            ClaimStatus::Fails { .. } => "fails",
            ClaimStatus::Skipped(_) => "skipped",
            ClaimStatus::Inapplicable(_) => "inapplicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: String,
    pub params: Vec<(&'static str, u64)>,
    pub status: ClaimStatus,
    pub cases: u64,
    pub elapsed: Duration,
}

impl ClaimReport {
    fn new(claim: &str, params: &[(&'static str, u64)], status: ClaimStatus, cases: u64, start: Instant) -> Self {
        Self {
            claim: claim.to_string(),
            params: params.to_vec(),
            status,
            cases,
            elapsed: start.elapsed(),
        }
    }

    pub fn holds(&self) -> bool {
        self.status == ClaimStatus::Holds
    }

    fn param(&self, key: &str) -> Option<u64> {
        self.params.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
    }

    /// `claim=ID params=n=2,p=3 status=holds cases=27`.
    pub fn machine_line(&self) -> String {
        let params = if self.params.is_empty() {
            "-".to_string()
        } else {
            self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
        };
        let mut line = format!("claim={} params={params} status={} cases={}", self.claim, self.status.tag(), self.cases);
        if let ClaimStatus::Fails { values, .. } = &self.status {
            let vs: Vec<String> = values
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            write!(line, " counterexample={}", vs.join(";")).unwrap();
        }
        line
    }

    /// Re-derives a failure from its counterexample alone. `None` when the
    /// report is not a failure or the claim needs the original structures.
    pub fn recheck(&self) -> Option<bool> {
        let ClaimStatus::Fails { values, .. } = &self.status else {
            return None;
        };
        let n = self.param("n").map(|v| v as usize);
        let p = self.param("p")? as usize;
        let first = values.first()?;
        match self.claim.as_str() {
            "congruent-mod-n" | "floor-identity" | "symmetric" | "coefficient-sum" => {
                let n = n?;
                let table = reduced_table(first, n, p);
                if !cyclic(&table, n) {
                    return Some(false);
                }
                Some(match self.claim.as_str() {
                    "congruent-mod-n" => !congruent_mod(first, n),
                    "floor-identity" => values.get(1).is_some_and(|x| !floor_identity_at(first, x, p)),
                    "symmetric" => !swap_invariant(&table, n, p),
                    _ => coefficient_sum(first, p) == 1,
                })
            }
            "g-homomorphism" => {
                let n = n?;
                Some(match linear_coefficients(first, n, p) {
                    Some(a) => coefficient_sum(&a, p) != 1,
                    None => true,
                })
            }
            "h-homomorphism" => {
                let n = n?;
                let table = reduced_table(first, n, p);
                Some(coefficient_sum(first, p) == 1 && cyclic(&table, n))
            }
            "no-constant-tuple" => Some(values.iter().all(|t| {
                t.len() == 3
                    && t.iter().all(|&v| (v as usize) < p)
                    && second_difference(t[0], t[1], t[2], p) == 1
                    && t.iter().map(|&v| collapse_top(v, p)).all(|v| v == collapse_top(t[0], p))
            })),
            "nullspace" | "particular-solution" | "shifted-solution" => {
                let reports = verify_thm2_claims(p).ok()?;
                Some(reports.iter().any(|r| r.claim == self.claim && !r.holds()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{} ({}): ", self.claim, params.join(", "))?;
        match &self.status {
            ClaimStatus::Holds => write!(f, "holds")?,
            ClaimStatus::Fails { note, .. } => write!(f, "FAILS: {note}")?,
            ClaimStatus::Skipped(r) => write!(f, "skipped: {r}")?,
            ClaimStatus::Inapplicable(r) => write!(f, "inapplicable: {r}")?,
        }
        write!(f, " [{} cases, {:.3}s]", self.cases, self.elapsed.as_secs_f64())
    }
}

/// `(sum a_i x_i mod p) mod n` over `[n]^p`.
fn reduced_table(a: &[Elem], n: usize, p: usize) -> Vec<Elem> {
    linear_table(a, n, p).into_iter().map(|v| v % n as Elem).collect()
}

/// Cyclicity by comparing each point with its rotation, early exit.
fn cyclic(values: &[Elem], n: usize) -> bool {
    let top = values.len() / n;
    (0..values.len()).all(|i| values[i] == values[rotate_index(i, n, top)])
}

/// Invariance under swapping the first two arguments.
fn swap_invariant(values: &[Elem], n: usize, p: usize) -> bool {
    let stride = n.pow(p as u32 - 2);
    (0..values.len()).all(|i| {
        let (x1, x2) = (i / (stride * n), (i / stride) % n);
        let j = i - x1 * stride * n - x2 * stride + x2 * stride * n + x1 * stride;
        values[i] == values[j]
    })
}

fn congruent_mod(a: &[Elem], n: usize) -> bool {
    a.iter().all(|&x| x as usize % n == a[0] as usize % n)
}

fn coefficient_sum(a: &[Elem], p: usize) -> u64 {
    a.iter().map(|&x| x as u64).sum::<u64>() % p as u64
}

fn floor_identity_at(a: &[Elem], x: &[Elem], p: usize) -> bool {
    let p = p as u64;
    let dot: u64 = a.iter().zip(x).map(|(&ai, &xi)| ai as u64 * xi as u64).sum();
    let sa: u64 = a.iter().map(|&v| v as u64).sum();
    let sx: u64 = x.iter().map(|&v| v as u64).sum();
    dot / p == sa * sx / (p * p)
}

/// The map `[p] -> [p-1]` fixing everything below `p-1` and sending `p-1` to 1.
fn collapse_top(v: Elem, p: usize) -> Elem {
    if v as usize == p - 1 {
        1
    } else {
        v
    }
}

#[derive(Default, Clone)]
struct Violations {
    congruent: Option<Vec<Elem>>,
    floor: Option<(Vec<Elem>, Vec<Elem>)>,
    symmetric: Option<Vec<Elem>>,
    sum: Option<Vec<Elem>>,
}

/// Enumerates all `a in [p]^p`; for each cyclic `(sum a_i x_i mod p) mod n`
/// checks: the `a_i` agree mod `n`; the floor identity (only when `n` does
/// not divide `p`); symmetry; `sum a_i != 1 mod p`.
pub fn verify_lemma32(n: usize, p: usize) -> Result<Vec<ClaimReport>> {
    let start = Instant::now();
    if n < 2 || p < 2 {
        return Err(Error::Invalid("n and p must be at least 2".into()));
    }
    let params = [("n", n as u64), ("p", p as u64)];
    let ids = ["congruent-mod-n", "floor-identity", "symmetric", "coefficient-sum"];
    let vectors = point_count(p, p);
    let points = point_count(n, p);
    let work = vectors.zip(points).map(|(v, x)| v as u128 * x as u128);
    let (Some(vectors), Some(points)) = (vectors.filter(|_| work.is_some_and(|w| w <= SWEEP_BUDGET)), points) else {
        return Ok(ids
            .iter()
            .map(|id| ClaimReport::new(id, &params, ClaimStatus::Skipped("sweep exceeds the budget".into()), 0, start))
            .collect());
    };
    let check_floor = p % n != 0;
    let results: Vec<Option<Violations>> = (0..vectors)
        .into_par_iter()
        .map(|i| {
            let mut a = vec![0; p];
            write_point(i, p, &mut a);
            let table = reduced_table(&a, n, p);
            if !cyclic(&table, n) {
                return None;
            }
            let mut v = Violations::default();
            if !congruent_mod(&a, n) {
                v.congruent = Some(a.clone());
            }
            if check_floor {
                let mut x = vec![0; p];
                for j in 0..points {
                    write_point(j, n, &mut x);
                    if !floor_identity_at(&a, &x, p) {
                        v.floor = Some((a.clone(), x));
                        break;
                    }
                }
            }
            if !swap_invariant(&table, n, p) {
                v.symmetric = Some(a.clone());
            }
            if coefficient_sum(&a, p) == 1 {
                v.sum = Some(a);
            }
            Some(v)
        })
        .collect();
    let cyclic_count = results.iter().flatten().count() as u64;
    let first = |pick: &dyn Fn(&Violations) -> Option<Vec<Vec<Elem>>>| results.iter().flatten().find_map(pick);
    let fails = |values: Vec<Vec<Elem>>, note: String| ClaimStatus::Fails { values, note };

    let congruent = match first(&|v| v.congruent.clone().map(|a| vec![a])) {
        Some(vals) => fails(vals.clone(), format!("coefficients {:?} are not congruent mod {n}", vals[0])),
        None => ClaimStatus::Holds,
    };
    let floor = if !check_floor {
        ClaimStatus::Skipped(format!("{n} divides {p}"))
    } else {
        match first(&|v| v.floor.clone().map(|(a, x)| vec![a, x])) {
            Some(vals) => fails(vals.clone(), format!("floor identity fails for a={:?} at x={:?}", vals[0], vals[1])),
            None => ClaimStatus::Holds,
        }
    };
    let symmetric = match first(&|v| v.symmetric.clone().map(|a| vec![a])) {
        Some(vals) => fails(vals.clone(), format!("cyclic table for a={:?} is not symmetric", vals[0])),
        None => ClaimStatus::Holds,
    };
    let sum = match first(&|v| v.sum.clone().map(|a| vec![a])) {
        Some(vals) => fails(vals.clone(), format!("a={:?} gives a cyclic table with coefficient sum 1", vals[0])),
        None => ClaimStatus::Holds,
    };
    Ok([congruent, floor, symmetric, sum]
        .into_iter()
        .zip(ids)
        .map(|(status, id)| ClaimReport::new(id, &params, status, cyclic_count, start))
        .collect())
}

/// Checks that `g` sends each projection to a linear table with coefficient
/// sum 1, and that `h` turns every such linear table into a non-cyclic one.
pub fn verify_thm31(n: usize, p: usize) -> Result<Vec<ClaimReport>> {
    let start = Instant::now();
    if n < 2 || p < 2 {
        return Err(Error::Invalid("n and p must be at least 2".into()));
    }
    let params = [("n", n as u64), ("p", p as u64)];
    let points = point_count(n, p).ok_or_else(|| Error::Budget("n^p overflows".into()))?;

    let mut g_status = ClaimStatus::Holds;
    for i in 0..p {
        let stride = n.pow((p - 1 - i) as u32);
        let image: Vec<Elem> = (0..points).map(|j| ((j / stride) % n % p) as Elem).collect();
        let ok = linear_coefficients(&image, n, p).is_some_and(|a| coefficient_sum(&a, p) == 1);
        if !ok {
            g_status = ClaimStatus::Fails {
                values: vec![image],
                note: format!("g maps projection {} outside R^C", i + 1),
            };
            break;
        }
    }
    let g_report = ClaimReport::new("g-homomorphism", &params, g_status, p as u64, start);

    let members = point_count(p, p - 1);
    let work = members.map(|m| m as u128 * points as u128);
    let h_report = match members.filter(|_| work.is_some_and(|w| w <= SWEEP_BUDGET)) {
        None => ClaimReport::new("h-homomorphism", &params, ClaimStatus::Skipped("sweep exceeds the budget".into()), 0, start),
        Some(members) => {
            let bad = (0..members).into_par_iter().find_first(|&i| {
                let a = member_coefficients(i, p);
                cyclic(&reduced_table(&a, n, p), n)
            });
            let status = match bad {
                None => ClaimStatus::Holds,
                Some(i) => {
                    let a = member_coefficients(i, p);
                    ClaimStatus::Fails {
                        note: format!("h maps the table with coefficients {a:?} to a cyclic table"),
                        values: vec![a],
                    }
                }
            };
            ClaimReport::new("h-homomorphism", &params, status, members as u64, start)
        }
    };
    Ok(vec![g_report, h_report])
}

/// The `i`-th coefficient vector with sum 1 mod `p`: the first `p-1`
/// entries are the digits of `i`, the last one fixes the sum.
fn member_coefficients(i: usize, p: usize) -> Vec<Elem> {
    let mut a = vec![0; p];
    write_point(i, p, &mut a[..p - 1]);
    let s = coefficient_sum(&a[..p - 1], p) as usize;
    a[p - 1] = ((1 + p - s) % p) as Elem;
    a
}

/// For a prime `p >= 3`: the nullspace of the second-difference matrix is
/// spanned by `(0, 1, ..., p-1)` and the all-ones vector; `M x = 1` has a
/// solution vanishing on the last two coordinates; some shift of it avoids
/// `p-1` and yields columns in `R^A`; `R^B` has no constant triple.
pub fn verify_thm2_claims(p: usize) -> Result<Vec<ClaimReport>> {
    if !is_prime(p as u64) || p < 3 {
        return Err(Error::NotPrime(p as u64));
    }
    let params = [("p", p as u64)];
    let pe = p as Elem;
    let m = second_difference_matrix(p)?;
    let mut reports = Vec::with_capacity(4);

    let start = Instant::now();
    let kernel = gauss_solve(&m, &vec![0; p])?.expect("homogeneous").nullspace;
    let ramp: Vec<Elem> = (0..pe).collect();
    let ones = vec![1; p];
    let in_kernel = |v: &[Elem]| m.mul_vec(v).map(|r| r.iter().all(|&x| x == 0)).unwrap_or(false);
    let status = if kernel.len() == 2 && in_kernel(&ramp) && in_kernel(&ones) {
        ClaimStatus::Holds
    } else {
        ClaimStatus::Fails {
            note: format!("nullspace has dimension {}", kernel.len()),
            values: kernel,
        }
    };
    reports.push(ClaimReport::new("nullspace", &params, status, 1, start));

    let start = Instant::now();
    let particular = gauss_solve(&m, &ones)?.map(|s| s.particular);
    let status = match &particular {
        Some(x) if x[p - 2] == 0 && x[p - 1] == 0 && m.mul_vec(x)? == ones => ClaimStatus::Holds,
        Some(x) => ClaimStatus::Fails {
            values: vec![x.clone()],
            note: "canonical solution does not vanish on the last two coordinates".into(),
        },
        None => ClaimStatus::Fails {
            values: vec![],
            note: "M x = 1 has no solution".into(),
        },
    };
    reports.push(ClaimReport::new("particular-solution", &params, status, 1, start));

    let start = Instant::now();
    let shifted = particular.as_ref().and_then(|x| {
        (0..pe).find_map(|c| {
            let u: Vec<Elem> = x.iter().map(|&v| (v + c) % pe).collect();
            let columns_ok = (0..p).all(|i| {
                let col = [u[i], u[(i + 1) % p], u[(i + 2) % p]];
                col.iter().all(|&v| v < pe - 1) && second_difference(col[0], col[1], col[2], p) == 1
            });
            columns_ok.then_some(u)
        })
    });
    let status = match shifted {
        Some(_) => ClaimStatus::Holds,
        None => ClaimStatus::Fails {
            values: particular.iter().cloned().collect(),
            note: format!("no shift of the solution avoids {}", p - 1),
        },
    };
    reports.push(ClaimReport::new("shifted-solution", &params, status, p as u64, start));

    let start = Instant::now();
    let mut preimages = Vec::new();
    for x in 0..pe {
        for y in 0..pe {
            let z = (1 + 2 * y + pe - x) % pe;
            let img = [x, y, z].map(|v| collapse_top(v, p));
            if img[0] == img[1] && img[1] == img[2] {
                preimages.push(vec![x, y, z]);
            }
        }
    }
    let status = if preimages.is_empty() {
        ClaimStatus::Holds
    } else {
        let list: Vec<String> = preimages.iter().map(|t| format!("{t:?}")).collect();
        ClaimStatus::Fails {
            note: format!("R^C tuples {} map to constant triples of R^B", list.join(", ")),
            values: preimages,
        }
    };
    reports.push(ClaimReport::new("no-constant-tuple", &params, status, (p * p) as u64, start));
    Ok(reports)
}

/// For symmetric `A` and a homomorphism `g: A -> C`, checks that `g` maps
/// every relation of `A` into the maximal symmetric subset of the
/// corresponding relation of `C`.
pub fn verify_lemma41(a: &FiniteStructure, c: &FiniteStructure, g: &Homomorphism) -> Result<ClaimReport> {
    let start = Instant::now();
    let report = |status, cases| ClaimReport::new("symmetric-image", &[], status, cases, start);
    if !a.is_symmetric()? {
        return Ok(report(ClaimStatus::Inapplicable("A is not symmetric".into()), 0));
    }
    let c = c.materialize(crate::DEFAULT_MATERIALIZE_THRESHOLD)?;
    if g.source_size() != a.domain_size()
        || g.target_size() != c.domain_size()
        || !is_structure_homomorphism(g, a, &c)?
    {
        return Ok(report(ClaimStatus::Inapplicable("g is not a homomorphism A -> C".into()), 0));
    }
    let mut cases = 0;
    for i in 0..a.relations().len() {
        let sym = max_symmetric_subset(c.tuples(i)?)?;
        for t in a.tuples(i)?.iter() {
            cases += 1;
            let image = g.apply_tuple(t);
            if !sym.contains(&image) {
                return Ok(report(
                    ClaimStatus::Fails {
                        note: format!("image {image:?} of {t:?} is outside the symmetric part of {}", c.symbol(i)),
                        values: vec![t.to_vec(), image],
                    },
                    cases,
                ));
            }
        }
    }
    Ok(report(ClaimStatus::Holds, cases))
}
