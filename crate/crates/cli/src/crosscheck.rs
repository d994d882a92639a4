//! Seeded agreement suites: the polynomial solvers against general
//! backtracking search on random small inputs.

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sandwich::digraph::solve_cycle_union_csp;
use sandwich::hom::Constraint;
use sandwich::{build_thm2, find_homomorphism, solve_affine_csp, AffineAnswer, AffineStructure, CspInstance, Digraph};

use super::Verdict;

pub fn run(seed: u64, cases: usize) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let affine = affine_suite(&mut rng, cases)?;
    let cycles = cycle_suite(&mut rng, cases)?;
    for (suite, (yes, bad)) in [("affine", affine), ("cycle-union", cycles)] {
        println!("{suite}: {cases} cases, {yes} satisfiable, {bad} disagreements");
        println!(":: crosscheck suite={suite} seed={seed} cases={cases} yes={yes} disagreements={bad}");
    }
    Ok(if affine.1 + cycles.1 == 0 { Verdict::Yes } else { Verdict::No })
}

/// Instances over `x - 2y + z = 1 (mod 7)`, up to 6 variables and 8 constraints.
fn affine_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<(usize, usize)> {
    let c = build_thm2(7, false)?.c;
    let c_aff = AffineStructure::from_structure(&c)?;
    let (mut yes, mut bad) = (0, 0);
    for _ in 0..cases {
        let vars = rng.gen_range(1..=6);
        let constraints = (0..rng.gen_range(0..=8))
            .map(|_| Constraint {
                symbol: "R".into(),
                scope: (0..3).map(|_| rng.gen_range(0..vars)).collect(),
            })
            .collect();
        let inst = CspInstance::new("I", vars, constraints)?;
        let fast = matches!(solve_affine_csp(&c_aff, &inst)?, AffineAnswer::Sat(_));
        let slow = find_homomorphism(&inst, &c)?.is_some();
        yes += usize::from(slow);
        bad += usize::from(fast != slow);
    }
    Ok((yes, bad))
}

/// Random digraphs on up to 8 vertices against unions of cycles of length 1 to 4.
fn cycle_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<(usize, usize)> {
    let (mut yes, mut bad) = (0, 0);
    for _ in 0..cases {
        let t = (0..rng.gen_range(1..=3))
            .map(|_| Digraph::directed_cycle(rng.gen_range(1..=4)))
            .reduce(|a, b| a.disjoint_union(&b))
            .expect("at least one cycle");
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.05..0.35);
        let edges: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|a| (0..n as u32).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        let x = Digraph::new(n, edges)?;
        let fast = solve_cycle_union_csp(&t, &x)?.is_some();
        let inst = CspInstance::from_structure(&x.to_structure("X")?)?;
        let slow = find_homomorphism(&inst, &t.to_structure("T")?)?.is_some();
        yes += usize::from(slow);
        bad += usize::from(fast != slow);
    }
    Ok((yes, bad))
}
