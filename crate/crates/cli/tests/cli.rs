use std::path::{Path, PathBuf};
use std::process::Command;

use sandwich::{CspInstance, FiniteStructure, Homomorphism, ObstructionWitness};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sandwich_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sandwich"));
    cmd.args(args).env_remove("SANDWICH_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn sandwich(args: &[&str]) -> Run {
    sandwich_with_env(args, &[])
}

fn sample(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "samples", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn construct(dir: &Path, family: &[&str]) {
    let mut args = vec!["construct"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["--out", s(dir)]);
    let r = sandwich(&args);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

/// The exit code a run's `::` lines call for.
fn expected_code(stdout: &str) -> i32 {
    let lines: Vec<&str> = stdout.lines().filter_map(|l| l.strip_prefix(":: ")).collect();
    let claims: Vec<&str> = lines
        .iter()
        .filter(|l| l.starts_with("claim="))
        .flat_map(|l| l.split_whitespace().filter_map(|t| t.strip_prefix("status=")))
        .collect();
    if !claims.is_empty() {
        return if claims.contains(&"inapplicable") {
            2
        } else if claims.contains(&"fails") {
            1
        } else if claims.contains(&"holds") {
            0
        } else {
            3
        };
    }
    let mut code = 0;
    for token in lines.iter().flat_map(|l| l.split_whitespace()) {
        let Some((key, value)) = token.split_once('=') else { continue };
        code = match (key, value) {
            ("status" | "answer", "yes" | "found" | "valid" | "sat") => 0,
            ("status" | "answer", "no" | "refuted" | "invalid" | "unsat" | "invalid-witness" | "polymorphism-exists") => 1,
            ("status", "unknown") => 3,
            ("verdict", "in-P") => 0,
            ("verdict", "NP-complete") => 1,
            ("verdict", "unknown") => 3,
            ("disagreements", "0") => 0,
            ("disagreements", _) => 1,
            _ => continue,
        };
    }
    code
}

#[test]
fn family_two_pipeline_emits_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), &["thm2", "--p", "7"]);
    let f = |n: &str| dir.path().join(n);
    let r = sandwich(&["witness", "verify", "--a", s(&f("A.txt")), "--b", s(&f("B.txt")), "--witness", s(&f("witness.txt"))]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains(":: witness status=valid p=7 mode=constant-forcing"));
    assert!(r.stdout.contains("end-certificate"));
    assert!(r.stdout.contains("no-tractable-sandwich-below=7"));
}

#[test]
fn family_one_cyclic_search_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), &["thm1", "--n", "2", "--p", "3"]);
    let f = |n: &str| dir.path().join(n);
    let r = sandwich(&["cyclic-polym", "--from", s(&f("A.txt")), "--to", s(&f("B.txt")), "--p", "3"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("RefutedExhaustively (16 candidates)"), "{}", r.stdout);
}

#[test]
fn pcsp_promise_sides() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), &["thm2", "--p", "7"]);
    let f = |n: &str| dir.path().join(n);
    let args = |inst: &str| {
        let mut v: Vec<String> = ["pcsp", "--a", s(&f("A.txt")), "--b", s(&f("B.txt")), "--via", s(&f("C.txt"))]
            .map(String::from)
            .to_vec();
        v.extend(["--instance".to_string(), inst.to_string()]);
        v
    };
    // (1,0,0,1) is a planted assignment into A
    let yes = sandwich(&args(&sample("thm2_instance.txt")).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(yes.code, 0, "{}", yes.stderr);
    assert!(yes.stdout.contains(":: pcsp answer=yes"));

    let constant = dir.path().join("constant.txt");
    std::fs::write(&constant, "instance N\nvariables 1\nconstraint R 0 0 0\nend\n").unwrap();
    let no = sandwich(&args(s(&constant)).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(no.code, 1, "{}", no.stderr);
    assert!(no.stdout.contains(":: pcsp answer=no"));
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (sub, family) in [("one", &["thm1", "--n", "2", "--p", "3"][..]), ("two", &["thm2", "--p", "11"][..])] {
        let out = dir.path().join(sub);
        construct(&out, family);
        for name in ["A.txt", "B.txt", "C.txt"] {
            let text = std::fs::read_to_string(out.join(name)).unwrap();
            assert_eq!(FiniteStructure::from_text(&text).unwrap().to_text(), text, "{name}");
        }
        for name in ["g.map", "h.map"] {
            let text = std::fs::read_to_string(out.join(name)).unwrap();
            assert_eq!(Homomorphism::from_text(&text).unwrap().to_text(), text);
        }
        let text = std::fs::read_to_string(out.join("witness.txt")).unwrap();
        assert_eq!(ObstructionWitness::from_text(&text).unwrap().to_text(), text);
    }
    let text = std::fs::read_to_string(sample("thm2_instance.txt")).unwrap();
    let inst = CspInstance::from_text(&text).unwrap();
    assert_eq!(CspInstance::from_text(&inst.to_text()).unwrap(), inst);

    let smooth = sandwich(&["digraph", "smooth-part", "--in", &sample("pendant.txt")]);
    let body: String = smooth.stdout.lines().filter(|l| !l.starts_with("::")).map(|l| format!("{l}\n")).collect();
    assert_eq!(FiniteStructure::from_text(&body).unwrap().to_text(), body);
}

#[test]
fn exit_codes_match_verdict_lines() {
    let dir = tempfile::tempdir().unwrap();
    construct(&dir.path().join("one"), &["thm1", "--n", "2", "--p", "3"]);
    construct(&dir.path().join("two"), &["thm2", "--p", "7"]);
    let f = |sub: &str, n: &str| dir.path().join(sub).join(n).to_str().unwrap().to_string();
    let cert = dir.path().join("cert.txt").to_str().unwrap().to_string();
    let map = dir.path().join("id.map");
    std::fs::write(&map, "map source=3 target=3\n0 1 2\n").unwrap();
    let (k3, c4, dc3, dc6, c3c6) = (sample("k3.txt"), sample("c4.txt"), sample("dc3.txt"), sample("dc6.txt"), sample("c3_c6.txt"));
    let matrix: Vec<Vec<String>> = vec![
        vec!["hom".into(), "--from".into(), c4.clone(), "--to".into(), k3.clone()],
        vec!["hom".into(), "--from".into(), k3.clone(), "--to".into(), c4.clone()],
        vec!["core".into(), "--in".into(), c3c6.clone()],
        vec!["cyclic-polym".into(), "--from".into(), f("one", "A.txt"), "--to".into(), f("one", "B.txt"), "--p".into(), "3".into()],
        vec!["cyclic-polym".into(), "--from".into(), c4.clone(), "--to".into(), c4.clone(), "--p".into(), "3".into()],
        vec!["cyclic-polym".into(), "--from".into(), k3.clone(), "--to".into(), k3.clone(), "--p".into(), "5".into(), "--budget".into(), "10".into()],
        vec!["witness".into(), "verify".into(), "--a".into(), f("one", "A.txt"), "--b".into(), f("one", "B.txt"), "--witness".into(), f("one", "witness.txt")],
        vec!["witness".into(), "verify".into(), "--a".into(), f("two", "A.txt"), "--b".into(), f("two", "C.txt"), "--witness".into(), f("two", "witness.txt")],
        vec!["solve".into(), "affine".into(), "--structure".into(), f("two", "C.txt"), "--instance".into(), sample("thm2_instance.txt")],
        vec!["verify".into(), "lemma32".into(), "--n".into(), "2".into(), "--p".into(), "4".into()],
        vec!["verify".into(), "thm2-claims".into(), "--p".into(), "7".into()],
        vec!["verify".into(), "thm2-claims".into(), "--p".into(), "5".into()],
        vec!["verify".into(), "thm31".into(), "--n".into(), "2".into(), "--p".into(), "3".into()],
        vec!["verify".into(), "lemma41".into(), "--a".into(), k3.clone(), "--c".into(), k3.clone(), "--map".into(), s(&map).into()],
        vec!["verify".into(), "lemma41".into(), "--a".into(), dc3.clone(), "--c".into(), dc3.clone(), "--map".into(), s(&map).into()],
        vec!["certify".into(), "no-small-sandwich".into(), "--a".into(), f("one", "A.txt"), "--b".into(), f("one", "B.txt"), "--p".into(), "3".into(), "--exhaustive".into(), "--out".into(), cert.clone()],
        vec!["certify".into(), "check".into(), "--certificate".into(), cert.clone()],
        vec!["certify".into(), "no-small-sandwich".into(), "--a".into(), c4.clone(), "--b".into(), c4.clone(), "--p".into(), "3".into(), "--exhaustive".into()],
        vec!["graph".into(), "classify".into(), "--in".into(), k3.clone()],
        vec!["graph".into(), "classify".into(), "--in".into(), c4.clone()],
        vec!["digraph".into(), "classify".into(), "--in".into(), c3c6.clone()],
        vec!["digraph".into(), "classify".into(), "--in".into(), k3.clone()],
        vec!["digraph".into(), "smooth-part".into(), "--in".into(), sample("pendant.txt")],
        vec!["digraph".into(), "solve-cycles".into(), "--in".into(), dc6.clone(), "--target".into(), dc3.clone()],
        vec!["digraph".into(), "solve-cycles".into(), "--in".into(), dc3.clone(), "--target".into(), dc6.clone()],
        vec!["crosscheck".into(), "--cases".into(), "30".into()],
    ];
    let mut seen = [0usize; 4];
    for args in &matrix {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = sandwich(&args);
        assert!(r.stdout.contains("\n:: ") || r.stdout.starts_with(":: "), "{args:?} printed no machine line");
        assert_eq!(r.code, expected_code(&r.stdout), "{args:?}\n{}{}", r.stdout, r.stderr);
        seen[r.code as usize] += 1;
    }
    assert!(seen.iter().all(|&n| n > 0), "every exit code is exercised: {seen:?}");
}

#[test]
fn input_errors_and_budgets() {
    assert_eq!(sandwich(&["frobnicate"]).code, 2);
    assert_eq!(sandwich(&["hom", "--from", &sample("k3.txt")]).code, 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "structure X\ndomain 2\nrelation E arity 2 size 1\n0 7\nend\n").unwrap();
    let r = sandwich(&["core", "--in", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("error:"));
    assert_eq!(sandwich(&["core", "--in", "/nonexistent/file"]).code, 2);
    assert_eq!(sandwich(&["digraph", "classify", "--in", &sample("pendant.txt")]).code, 2);
    assert_eq!(sandwich(&["construct", "thm2", "--p", "9"]).code, 2);

    assert_eq!(sandwich(&["core", "--in", &sample("c3_c6.txt"), "--limit", "4"]).code, 3);
    let k3 = sample("k3.txt");
    let polym = ["cyclic-polym", "--from", &k3, "--to", &k3, "--p", "5"];
    assert_eq!(sandwich_with_env(&polym, &[("SANDWICH_BUDGET", "10")]).code, 3);
    assert_eq!(sandwich_with_env(&polym, &[("SANDWICH_BUDGET", "lots")]).code, 2);
}

#[test]
fn crosscheck_is_reproducible() {
    let a = sandwich(&["crosscheck", "--seed", "7", "--cases", "40"]);
    let b = sandwich(&["crosscheck", "--seed", "7", "--cases", "40"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains(":: crosscheck suite=affine seed=7 cases=40"));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), &["thm2", "--p", "7"]);
    let f = |n: &str| dir.path().join(n);
    let cert = f("cert.txt");
    let r = sandwich(&[
        "certify", "no-small-sandwich", "--a", s(&f("A.txt")), "--b", s(&f("B.txt")), "--p", "7", "--witness",
        s(&f("witness.txt")), "--out", s(&cert),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(sandwich(&["certify", "check", "--certificate", s(&cert)]).code, 0);
    let text = std::fs::read_to_string(&cert).unwrap();
    std::fs::write(&cert, text.replace("2 4 0 4 2 1 1\n", "2 4 0 4 2 1 3\n")).unwrap();
    assert_eq!(sandwich(&["certify", "check", "--certificate", s(&cert)]).code, 1);
}
