use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sandwich::affine::is_prime;
use sandwich::digraph::{
    classify_graph_csp, classify_smooth_digraph_csp, is_smooth, smooth_part, solve_cycle_union_csp, ClassEvidence,
    Classification,
};
use sandwich::hom::{Sandwich, SandwichSide};
use sandwich::verify::{
    refutation_certificate, verify_lemma32, verify_lemma41, verify_thm2_claims, verify_thm31, Certificate,
    ClaimReport, ClaimStatus, Evidence,
};
use sandwich::{
    build_thm1, build_thm2, check_sandwich, core_of, find_cyclic_polymorphism, find_homomorphism,
    solve_affine_csp, verify_obstruction_witness, AffineAnswer, AffineStructure, CspInstance, Digraph,
    FiniteStructure, Homomorphism, ObstructionWitness, PcspAnswer, PcspDecider, PolymorphismBudget,
    SearchOutcome, WitnessVerdict, DEFAULT_MATERIALIZE_THRESHOLD,
};

use super::{
    CertifyCmd, Command, Construct, DigraphCmd, GraphCmd, SolveCmd, Verdict, VerifyCmd, WitnessCmd, BUDGET_ENV,
};
use crate::crosscheck;

pub fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Construct(Construct::Thm1 { n, p, materialize, out }) => construct_thm1(n, p, materialize, out),
        Command::Construct(Construct::Thm2 { p, allow_small, out }) => construct_thm2(p, allow_small, out),
        Command::Hom { from, to } => hom(&from, &to),
        Command::Core { input, limit } => core(&input, limit),
        Command::CyclicPolym {
            from,
            to,
            p,
            budget,
            allow_composite,
        } => {
            let budget = PolymorphismBudget {
                allow_composite,
                ..polymorphism_budget(budget)?
            };
            cyclic_polym(&from, &to, p, budget)
        }
        Command::Witness(WitnessCmd::Verify { a, b, witness }) => witness_verify(&a, &b, &witness),
        Command::Solve(SolveCmd::Affine { structure, instance }) => solve_affine(&structure, &instance),
        Command::Pcsp { a, b, via, instance } => pcsp(&a, &b, &via, &instance),
        Command::Verify(cmd) => verify(cmd),
        Command::Certify(CertifyCmd::NoSmallSandwich {
            a,
            b,
            p,
            witness,
            exhaustive: _,
            budget,
            out,
        }) => certify(&a, &b, p, witness.as_deref(), polymorphism_budget(budget)?, out.as_deref()),
        Command::Certify(CertifyCmd::Check { certificate }) => certify_check(&certificate),
        Command::Graph(GraphCmd::Classify { input }) => {
            let g = read_digraph(&input)?;
            Ok(print_classification("graph-classify", &classify_graph_csp(&g)?))
        }
        Command::Digraph(DigraphCmd::SmoothPart { input }) => smooth(&input),
        Command::Digraph(DigraphCmd::Classify { input }) => {
            let g = read_digraph(&input)?;
            if !is_smooth(&g) {
                bail!("the digraph is not smooth; `digraph smooth-part` extracts its smooth part");
            }
            Ok(print_classification("digraph-classify", &classify_smooth_digraph_csp(&g)?))
        }
        Command::Digraph(DigraphCmd::SolveCycles { input, target }) => solve_cycles(&input, &target),
        Command::Crosscheck { seed, cases } => crosscheck::run(seed, cases),
    }
}

fn machine(line: impl AsRef<str>) {
    println!(":: {}", line.as_ref());
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_structure(path: &Path) -> Result<FiniteStructure> {
    FiniteStructure::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_instance(path: &Path) -> Result<CspInstance> {
    CspInstance::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    Ok(Digraph::from_structure(&read_structure(path)?)?)
}

/// An instance file, or a structure file read as an instance.
fn read_source(path: &Path) -> Result<CspInstance> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("instance") {
        return read_instance(path);
    }
    let s = FiniteStructure::from_text(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(CspInstance::from_structure(&s.materialize(DEFAULT_MATERIALIZE_THRESHOLD)?)?)
}

/// `--budget`, else the environment variable, else the library default.
fn polymorphism_budget(flag: Option<u64>) -> Result<PolymorphismBudget> {
    let limit = match flag {
        Some(b) => Some(b),
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(v.trim().parse().with_context(|| format!("{BUDGET_ENV}={v} is not a number"))?),
            Err(_) => None,
        },
    };
    Ok(limit.map_or_else(PolymorphismBudget::default, PolymorphismBudget::with_limit))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn size_or_unknown(s: Option<u128>) -> String {
    s.map_or("?".into(), |v| v.to_string())
}

/// Writes the files under `out`, or prints them one after another.
fn emit(out: Option<&Path>, files: &[(&str, String)]) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, text) in files {
                let path = dir.join(name);
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {}", path.display());
            }
        }
        None => {
            for (name, text) in files {
                println!("# --- {name}");
                print!("{text}");
            }
        }
    }
    Ok(())
}

fn construct_thm1(n: usize, p: usize, materialize: u64, out: Option<PathBuf>) -> Result<Verdict> {
    let t = build_thm1(n, p, materialize)?;
    let b = t.b_ext.as_ref().unwrap_or(&t.b);
    let c = t.c_ext.as_ref().unwrap_or(&t.c);
    let files = [
        ("A.txt", t.a.to_text()),
        ("B.txt", b.to_text()),
        ("C.txt", c.to_text()),
        ("g.map", t.g.to_text()),
        ("h.map", t.h.to_text()),
        ("witness.txt", t.projection_witness()?.to_text()),
    ];
    emit(out.as_deref(), &files)?;
    if t.c_affine.is_none() {
        println!("p = {p} is not prime: C is not affine and no certificate applies");
    }
    machine(format!(
        "construct family=thm1 n={n} p={p} arity={} a={} b={} c={} b-materialized={} c-affine={}",
        t.a.signature().symbols()[0].1,
        size_or_unknown(t.a.relation(0).size()),
        size_or_unknown(t.b.relation(0).size()),
        size_or_unknown(t.c.relation(0).size()),
        t.b_ext.is_some(),
        t.c_affine.is_some()
    ));
    Ok(Verdict::Yes)
}

fn construct_thm2(p: usize, allow_small: bool, out: Option<PathBuf>) -> Result<Verdict> {
    let t = build_thm2(p, allow_small)?;
    let files = [
        ("A.txt", t.a.to_text()),
        ("B.txt", t.b.to_text()),
        ("C.txt", t.c.to_text()),
        ("g.map", t.g.to_text()),
        ("h.map", t.h.to_text()),
        ("witness.txt", t.witness.to_text()),
    ];
    emit(out.as_deref(), &files)?;
    let len = |s: &FiniteStructure| s.tuples(0).map(|t| t.len()).unwrap_or(0);
    machine(format!(
        "construct family=thm2 p={p} a={} b={} c={} u={}",
        len(&t.a),
        len(&t.b),
        len(&t.c),
        join(&t.u)
    ));
    Ok(Verdict::Yes)
}

fn hom(from: &Path, to: &Path) -> Result<Verdict> {
    let inst = read_source(from)?;
    let target = read_structure(to)?;
    Ok(match find_homomorphism(&inst, &target)? {
        Some(h) => {
            println!("homomorphism found");
            print!("{}", h.to_text());
            machine(format!("hom status=yes map={}", join(h.as_slice())));
            Verdict::Yes
        }
        None => {
            println!("no homomorphism");
            machine("hom status=no");
            Verdict::No
        }
    })
}

fn core(input: &Path, limit: usize) -> Result<Verdict> {
    let s = read_structure(input)?;
    let c = core_of(&s, limit)?;
    print!("{}", c.structure.to_text());
    print!("{}", c.retraction.to_text());
    machine(format!(
        "core size={} vertices={} is-core={}",
        c.vertices.len(),
        join(&c.vertices),
        c.vertices.len() == s.domain_size()
    ));
    Ok(Verdict::Yes)
}

fn cyclic_polym(from: &Path, to: &Path, p: usize, budget: PolymorphismBudget) -> Result<Verdict> {
    let a = read_structure(from)?;
    let b = read_structure(to)?;
    Ok(match find_cyclic_polymorphism(&a, &b, p, budget)? {
        SearchOutcome::Found(f) => {
            println!("Found cyclic polymorphism of arity {p}");
            println!("values {}", join(f.values()));
            machine(format!("cyclic-polym status=found p={p}"));
            Verdict::Yes
        }
        SearchOutcome::RefutedExhaustively(s) => {
            println!("RefutedExhaustively ({} candidates)", size_or_unknown(s.candidates));
            println!("{s}");
            machine(format!(
                "cyclic-polym status=refuted p={p} candidates={} nodes={}",
                size_or_unknown(s.candidates),
                s.nodes
            ));
            Verdict::No
        }
        SearchOutcome::Unknown(s) => {
            println!("Unknown ({s})");
            machine(format!("cyclic-polym status=unknown p={p} nodes={}", s.nodes));
            Verdict::Unknown
        }
    })
}

fn witness_verify(a: &Path, b: &Path, witness: &Path) -> Result<Verdict> {
    let (a, b) = (read_structure(a)?, read_structure(b)?);
    let w = ObstructionWitness::from_text(&read(witness)?).context("parsing witness")?;
    match verify_obstruction_witness(&a, &b, &w)? {
        WitnessVerdict::Valid => {
            println!("witness valid: no cyclic polymorphism of arity {} from {} to {}", w.p(), a.name(), b.name());
            machine(format!("witness status=valid p={} mode={}", w.p(), w.mode().tag()));
            if is_prime(w.p() as u64) {
                let cert = refutation_certificate(&a, &b, w.p(), Evidence::Witness(w))?;
                print!("{}", cert.to_text());
                machine(cert.machine_line());
            }
            Ok(Verdict::Yes)
        }
        WitnessVerdict::Invalid(reason) => {
            println!("witness invalid: {reason}");
            machine(format!("witness status=invalid p={}", w.p()));
            Ok(Verdict::No)
        }
    }
}

fn solve_affine(structure: &Path, instance: &Path) -> Result<Verdict> {
    let c = AffineStructure::from_structure(&read_structure(structure)?)?;
    let inst = read_instance(instance)?;
    Ok(match solve_affine_csp(&c, &inst)? {
        AffineAnswer::Sat(x) => {
            println!("sat");
            machine(format!("solve status=sat assignment={}", join(&x)));
            Verdict::Yes
        }
        AffineAnswer::Unsat => {
            println!("unsat");
            machine("solve status=unsat");
            Verdict::No
        }
    })
}

fn pcsp(a: &Path, b: &Path, via: &Path, instance: &Path) -> Result<Verdict> {
    let (a, b, c) = (read_structure(a)?, read_structure(b)?, read_structure(via)?);
    let (g, h) = match check_sandwich(&a, &c, &b)? {
        Sandwich::Sandwiched { left, right } => (left, right),
        Sandwich::Failure(SandwichSide::Left) => bail!("no homomorphism {} -> {}", a.name(), c.name()),
        Sandwich::Failure(SandwichSide::Right) => bail!("no homomorphism {} -> {}", c.name(), b.name()),
    };
    let decider = PcspDecider::new(&a, &b, AffineStructure::from_structure(&c)?, &g, &h)?;
    let inst = read_instance(instance)?;
    Ok(match decider.decide(&inst)? {
        PcspAnswer::Yes => {
            println!("Yes: the instance maps to {}, hence to {}", c.name(), b.name());
            machine("pcsp answer=yes");
            Verdict::Yes
        }
        PcspAnswer::No => {
            println!("No: the instance does not map to {}, hence not to {}", c.name(), a.name());
            machine("pcsp answer=no");
            Verdict::No
        }
    })
}

/// Precondition failures, then failures, then all-skipped, decide the code.
fn report_verdict(reports: &[ClaimReport]) -> Verdict {
    for r in reports {
        println!("{r}");
    }
    for r in reports {
        machine(r.machine_line());
    }
    let any = |f: fn(&ClaimStatus) -> bool| reports.iter().any(|r| f(&r.status));
    if any(|s| matches!(s, ClaimStatus::Inapplicable(_))) {
        Verdict::Input
    } else if any(|s| matches!(s, ClaimStatus::Fails { .. })) {
        Verdict::No
    } else if any(|s| matches!(s, ClaimStatus::Holds)) {
        Verdict::Yes
    } else {
        Verdict::Unknown
    }
}

fn verify(cmd: VerifyCmd) -> Result<Verdict> {
    let reports = match cmd {
        VerifyCmd::Lemma32(np) => verify_lemma32(np.n, np.p)?,
        VerifyCmd::Thm2Claims { p } => verify_thm2_claims(p)?,
        VerifyCmd::Thm31(np) => verify_thm31(np.n, np.p)?,
        VerifyCmd::Lemma41 { a, c, map } => {
            let map = Homomorphism::from_text(&read(&map)?).context("parsing map")?;
            vec![verify_lemma41(&read_structure(&a)?, &read_structure(&c)?, &map)?]
        }
    };
    Ok(report_verdict(&reports))
}

fn certify(
    a: &Path,
    b: &Path,
    p: usize,
    witness: Option<&Path>,
    budget: PolymorphismBudget,
    out: Option<&Path>,
) -> Result<Verdict> {
    let (a, b) = (read_structure(a)?, read_structure(b)?);
    let evidence = match witness {
        Some(path) => {
            let w = ObstructionWitness::from_text(&read(path)?).context("parsing witness")?;
            if let WitnessVerdict::Invalid(reason) = verify_obstruction_witness(&a, &b, &w)? {
                println!("witness invalid: {reason}");
                machine("certify status=invalid-witness");
                return Ok(Verdict::No);
            }
            Evidence::Witness(w)
        }
        None => {
            let outcome = find_cyclic_polymorphism(&a, &b, p, budget)?;
            match &outcome {
                SearchOutcome::Found(_) => {
                    println!("a cyclic polymorphism of arity {p} exists; nothing to certify");
                    machine("certify status=polymorphism-exists");
                    return Ok(Verdict::No);
                }
                SearchOutcome::Unknown(s) => {
                    println!("no certificate from Unknown ({s})");
                    machine("certify status=unknown");
                    return Ok(Verdict::Unknown);
                }
                SearchOutcome::RefutedExhaustively(_) => Evidence::from_outcome(&outcome)?,
            }
        }
    };
    let cert = refutation_certificate(&a, &b, p, evidence)?;
    match out {
        Some(path) => {
            fs::write(path, cert.to_text()).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", cert.to_text()),
    }
    machine(cert.machine_line());
    Ok(Verdict::Yes)
}

fn certify_check(path: &Path) -> Result<Verdict> {
    let cert = Certificate::from_text(&read(path)?).context("parsing certificate")?;
    Ok(match cert.check()? {
        WitnessVerdict::Valid => {
            println!("certificate valid");
            machine(cert.machine_line());
            Verdict::Yes
        }
        WitnessVerdict::Invalid(reason) => {
            println!("certificate invalid: {reason}");
            machine(format!("certificate p={} status=invalid", cert.p));
            Verdict::No
        }
    })
}

fn print_classification(tag: &str, c: &Classification) -> Verdict {
    println!("{} ({}), {}", c.verdict, c.reason, c.caveat);
    match &c.evidence {
        ClassEvidence::Loop(v) => println!("loop at vertex {v}"),
        ClassEvidence::Coloring(col) => println!("2-coloring {}", join(col)),
        ClassEvidence::OddCycle(w) => println!("odd closed walk {}", join(w)),
        ClassEvidence::Core {
            vertices,
            core,
            cycle_lengths,
        } => {
            println!("core on vertices {}", join(vertices));
            println!("core {core}");
            match cycle_lengths {
                Some(l) => println!("core cycle lengths {}", join(l)),
                None => println!("core is not a disjoint union of directed cycles"),
            }
        }
        ClassEvidence::None => {}
    }
    machine(format!("{tag} verdict={} reason={}", c.verdict, c.reason));
    match c.verdict {
        sandwich::digraph::Verdict::InP => Verdict::Yes,
        sandwich::digraph::Verdict::NPComplete => Verdict::No,
        sandwich::digraph::Verdict::Unknown => Verdict::Unknown,
    }
}

fn smooth(input: &Path) -> Result<Verdict> {
    let s = read_structure(input)?;
    let (sp, kept) = smooth_part(&Digraph::from_structure(&s)?);
    if kept.is_empty() {
        println!("the smooth part is empty");
    } else {
        print!("{}", sp.to_structure(&format!("{}_smooth", s.name()))?.to_text());
    }
    machine(format!("smooth-part count={} vertices={}", kept.len(), join(&kept)));
    Ok(Verdict::Yes)
}

fn solve_cycles(input: &Path, target: &Path) -> Result<Verdict> {
    let x = read_digraph(input)?;
    let t = read_digraph(target)?;
    Ok(match solve_cycle_union_csp(&t, &x)? {
        Some(h) => {
            println!("homomorphism found");
            print!("{}", h.to_text());
            machine(format!("solve-cycles status=yes map={}", join(h.as_slice())));
            Verdict::Yes
        }
        None => {
            println!("no homomorphism");
            machine("solve-cycles status=no");
            Verdict::No
        }
    })
}
