use std::path::PathBuf;
use std::process::{Command, Output};

use frobkit::run::{CommandResult, Report};
use frobkit::session::Statement;
use frobkit::{emit, execute, load, parse_session, Format, Options};
use frobkit_core::invariants::Outcome;
use proptest::prelude::*;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn frobkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobkit"))
        .args(args)
        .env_remove("FROBKIT_DEFAULT_CUTOFF")
        .output()
        .expect("binary runs")
}

fn run_text(text: &str, opts: &Options) -> Report {
    let (session, world) = load(text).unwrap();
    execute(&session, &world, text.as_bytes(), opts)
}

fn json_of(report: &Report) -> Value {
    serde_json::from_slice(&emit(report, Format::Json)).unwrap()
}

#[test]
fn kunz_on_hypersurface() {
    let report = run_text("char 2\nring S vars x:1 ideal { x^2 }\ncmd test-kunz S", &Options::default());
    let r = &report.results[0];
    assert_eq!(r.verdict, "NOT_REGULAR");
    assert_eq!(r.outcome, Some(Outcome::Pass));
    let beta = &r.data["evidence"][0]["values"];
    assert_eq!(beta[1], "2");
    assert_eq!(report.exit_code(false), 0);
}

#[test]
fn betti_of_residue_field_over_golod_ring() {
    let text = "char 2\nring S vars x:1, y:1 ideal { x^2; x*y; y^2 }\ncmd betti k --cutoff 5";
    let v = json_of(&run_text(text, &Options::default()));
    let totals: Vec<u64> = v["results"][0]["data"]["betti"]["totals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(totals, vec![1, 2, 4, 8, 16, 32]);
    assert_eq!(v["results"][0]["cutoffs"]["cutoff"], 5);
}

#[test]
fn csv_rows_for_hypersurface_residue_field() {
    let out = frobkit(&[data("hypersurface.frk").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("object,n,internal_degree,beta"));
    assert!(text.lines().any(|l| l == "k,3,3,1"), "{text}");
}

#[test]
fn empty_session_gives_empty_report() {
    let report = run_text("char 5\n", &Options::default());
    assert!(report.results.is_empty());
    assert_eq!(report.exit_code(true), 0);
    let text = String::from_utf8(emit(&report, Format::Json)).unwrap();
    assert!(text.starts_with("{\"input_sha256\":"));
    assert!(text.contains("\"results\":[]"));
    assert!(text.contains("\"version\":\"0.1.0\""));
}

#[test]
fn inclusion_is_regular_map() {
    let out = frobkit(&[data("inclusion.frk").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("{\"args\":[\"inc\"],\"command\":\"test-regular\""));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["results"][0]["verdict"], "REGULAR_MAP");
}

#[test]
fn ci_map_session() {
    let text = std::fs::read_to_string(data("ci.frk")).unwrap();
    let report = run_text(&text, &Options::default());
    let verdicts: Vec<&str> = report.results.iter().map(|r| r.verdict.as_str()).collect();
    assert_eq!(
        verdicts,
        ["CI_MAP", "CI_MAP", "HOLDS", "GORENSTEIN", "COMPUTED", "COMPUTED", "COMPUTED"]
    );
    assert_eq!(report.exit_code(true), 0);
}

#[test]
fn golod_session_text_report() {
    let out = frobkit(&[data("golod.frk").to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("check-eth S k: HOLDS [PASS]"));
    assert!(text.contains("check-blimp S k: SPLITS [PASS]"));
    assert!(text.contains("    total  1  2  4  8  16  32\n"));
}

#[test]
fn json_is_deterministic_across_runs_and_jobs() {
    let path = data("golod.frk");
    let a = frobkit(&[path.to_str().unwrap()]);
    let b = frobkit(&[path.to_str().unwrap()]);
    let c = frobkit(&[path.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["ms"].is_null()));
}

#[test]
fn timings_are_opt_in() {
    let out = frobkit(&[data("hypersurface.frk").to_str().unwrap(), "--timings"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["results"][0]["ms"].is_number());
}

#[test]
fn exit_codes() {
    let path = data("mixed.frk");
    let p = path.to_str().unwrap();
    assert_eq!(frobkit(&[p]).status.code(), Some(2));
    let tmp = tempfile::tempdir().unwrap();
    let inconclusive = tmp.path().join("inconclusive.frk");
    std::fs::write(
        &inconclusive,
        "char 2\nring R vars u:2\nring S vars v:1 ideal { v^3 }\nmap phi : R -> S { u = v^2 }\ncmd check-main phi --cutoff 4\n",
    )
    .unwrap();
    let q = inconclusive.to_str().unwrap();
    assert_eq!(frobkit(&[q]).status.code(), Some(0));
    assert_eq!(frobkit(&[q, "--strict"]).status.code(), Some(3));
    let bad = tmp.path().join("bad.frk");
    std::fs::write(&bad, "char 2\nring S vars x:1 ideal { x^2 + x }\n").unwrap();
    let out = frobkit(&[bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.frk:2:25: NONHOMOGENEOUS"), "{err}");
    assert_eq!(frobkit(&[tmp.path().join("missing.frk").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn fail_fast_stops_at_first_error() {
    let text = std::fs::read_to_string(data("mixed.frk")).unwrap();
    let all = run_text(&text, &Options::default());
    assert_eq!(all.results.len(), 4);
    assert!(all.results[2].is_error());
    let opts = Options {
        fail_fast: true,
        ..Options::default()
    };
    let stopped = run_text(&text, &opts);
    assert_eq!(stopped.results.len(), 3);
    assert_eq!(stopped.results[..], all.results[..3]);
}

#[test]
fn out_flag_writes_file() {
    let tmp = tempfile::tempdir().unwrap();
    let target = tmp.path().join("report.json");
    let out = frobkit(&[data("hypersurface.frk").to_str().unwrap(), "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(target).unwrap()).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
}

#[test]
fn cutoff_defaults_and_overrides() {
    let text = "char 2\nring S vars x:1 ideal { x^2 }\ncmd betti k\ncmd betti k --cutoff 3";
    let opts = Options {
        cutoff: 6,
        ..Options::default()
    };
    let report = run_text(text, &opts);
    assert_eq!(report.results[0].cutoffs["cutoff"], 6);
    assert_eq!(report.results[1].cutoffs["cutoff"], 3);
    let tmp = tempfile::tempdir().unwrap();
    let f = tmp.path().join("s.frk");
    std::fs::write(&f, "char 2\nring S vars x:1 ideal { x^2 }\ncmd betti k\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_frobkit"))
        .arg(&f)
        .env("FROBKIT_DEFAULT_CUTOFF", "5")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["cutoffs"]["cutoff"], 5);
    let out = frobkit(&[f.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["cutoffs"]["cutoff"], 8);
}

#[test]
fn blimp_default_exponent_exceeds_koszul_bound() {
    let text = "char 2\nring S vars x:1, y:1 ideal { x^2; x*y; y^2 }\ncmd check-blimp S k --cutoff 4";
    let report = run_text(text, &Options::default());
    // c = 3, so the smallest e with 2^e > 3 is 2
    assert_eq!(report.results[0].cutoffs.get("e"), Some(&2));
    assert_eq!(report.results[0].verdict, "SPLITS");
}

#[test]
fn corpus_round_trips() {
    for name in ["ci.frk", "golod.frk", "hypersurface.frk", "inclusion.frk", "mixed.frk"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let s = parse_session(&text).unwrap();
        let printed = s.to_string();
        assert_eq!(parse_session(&printed).unwrap(), s, "{name}");
        assert_eq!(parse_session(&printed).unwrap().to_string(), printed);
    }
}

fn poly_text(terms: &[(u8, u8, u8)]) -> String {
    terms
        .iter()
        .map(|&(c, a, b)| format!("{c}*x^{a}*y^{b}*z^0"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn synthetic(outcome: Option<Outcome>, error: bool) -> CommandResult {
    CommandResult {
        command: "test-kunz".into(),
        args: vec!["S".into()],
        verdict: if error { "ERROR".into() } else { "X".into() },
        outcome: if error { None } else { outcome },
        data: Default::default(),
        cutoffs: Default::default(),
        ms: None,
        tables: Vec::new(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homogeneous_rings_round_trip(
        d in 1u8..5,
        gens in prop::collection::vec(prop::collection::vec((1u8..7, 0u8..5), 1..4), 1..4),
    ) {
        let polys: Vec<String> = gens
            .iter()
            .map(|g| {
                let terms: Vec<(u8, u8, u8)> = g.iter().map(|&(c, a)| (c, a.min(d), d - a.min(d))).collect();
                poly_text(&terms)
            })
            .collect();
        let text = format!("char 7\nring S vars x:1, y:1, z:1/2 ideal {{ {} }}\ncmd hilbert S\ncmd betti F*S\n", polys.join("; "));
        let s = parse_session(&text).unwrap();
        let printed = s.to_string();
        prop_assert_eq!(parse_session(&printed).unwrap(), s);
        prop_assert!(matches!(parse_session(&printed).unwrap().statements[1], Statement::Ring(_)));
    }

    #[test]
    fn exit_code_contract(
        items in prop::collection::vec((prop::option::of(0u8..3), any::<bool>()), 0..8),
        strict in any::<bool>(),
    ) {
        let outcomes = [Outcome::Pass, Outcome::Inconclusive, Outcome::Fail];
        let results: Vec<CommandResult> = items
            .iter()
            .map(|&(o, err)| synthetic(o.map(|i| outcomes[i as usize]), err))
            .collect();
        let any_fail = results.iter().any(|r| r.is_error() || r.outcome == Some(Outcome::Fail));
        let any_inc = results.iter().any(|r| r.outcome == Some(Outcome::Inconclusive));
        let report = Report { version: "0".into(), input_sha256: String::new(), results };
        let expected = if any_fail { 2 } else if strict && any_inc { 3 } else { 0 };
        prop_assert_eq!(report.exit_code(strict), expected);
    }
}
