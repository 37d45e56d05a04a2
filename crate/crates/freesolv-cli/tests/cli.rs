//! Binary behavior: exit codes, output formats, JSON round trips, and
//! determinism of seeded generation.

use std::process::{Command, Output};

use freesolv::{flow_equal, fox_abelian, geodesic, path_flow, steiner_size, ExactLimits, Word};
use freesolv_cli::json;

fn freesolv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freesolv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn wp_exit_codes() {
    let trivial = freesolv(&["wp", "--rank", "2", "--class", "2", "--word", "aA"]);
    assert_eq!(trivial.status.code(), Some(0));
    assert_eq!(stdout(&trivial).trim(), "trivial");

    let nontrivial = freesolv(&["wp", "--rank", "2", "--class", "2", "--word", "abAB"]);
    assert_eq!(nontrivial.status.code(), Some(1));
    assert_eq!(stdout(&nontrivial).trim(), "nontrivial");

    let commutator_of_derived = freesolv(&["wp", "--rank", "2", "--class", "3", "--word", "abAB"]);
    assert_eq!(commutator_of_derived.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two() {
    let bad_word = freesolv(&["wp", "--rank", "2", "--class", "2", "--word", "c"]);
    assert_eq!(bad_word.status.code(), Some(2));
    assert!(!bad_word.stderr.is_empty());

    let bad_flag = freesolv(&["wp", "--rank", "2"]);
    assert_eq!(bad_flag.status.code(), Some(2));

    let both_sources = freesolv(&[
        "wp", "--rank", "2", "--word", "a", "--word-file", "/dev/null",
    ]);
    assert_eq!(both_sources.status.code(), Some(2));
}

#[test]
fn undecided_exits_three() {
    // Two far support components with a starved exact budget: the
    // bracket [4, 8] cannot settle k = 7.
    let out = freesolv(&[
        "bglp",
        "--rank",
        "2",
        "--word",
        "aabaBAAA",
        "--bound",
        "7",
        "--exact-limit",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let decision: json::DecisionJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(decision.answer, "undecided");
    assert_eq!((decision.lower, decision.upper), (Some(4), Some(8)));

    let decided = freesolv(&[
        "bglp",
        "--rank",
        "2",
        "--word",
        "aabaBAAA",
        "--bound",
        "8",
        "--exact-limit",
        "1",
    ]);
    assert_eq!(decided.status.code(), Some(0));
}

#[test]
fn exact_limit_env_var_sets_the_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_freesolv"))
        .args(["bglp", "--rank", "2", "--word", "aabaBAAA", "--bound", "7"])
        .env(freesolv_cli::EXACT_LIMIT_ENV, "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    // An explicit flag overrides the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_freesolv"))
        .args([
            "bglp",
            "--rank",
            "2",
            "--word",
            "aabaBAAA",
            "--bound",
            "7",
            "--exact-limit",
            "10",
        ])
        .env(freesolv_cli::EXACT_LIMIT_ENV, "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn word_file_input() {
    let path = std::env::temp_dir().join(format!("freesolv-word-{}.txt", std::process::id()));
    std::fs::write(&path, "abAB\n").unwrap();
    let out = freesolv(&["wp", "--rank", "2", "--word-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn fox_json_round_trips() {
    let out = freesolv(&["fox", "--rank", "2", "--word", "bababABBBA", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let entries: Vec<json::DerivEntryJson> = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rebuilt = json::derivative_map_from_json(2, &entries).unwrap();
    assert_eq!(rebuilt, fox_abelian(&Word::parse("bababABBBA", 2).unwrap()));
}

#[test]
fn flow_json_round_trips_through_realize() {
    let out = freesolv(&["flow", "--rank", "2", "--word", "bababABBBA", "--json"]);
    let parsed: json::FlowJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    let flow = json::flow_from_json(&parsed).unwrap();
    let expected = path_flow(&Word::parse("bababABBBA", 2).unwrap());
    assert!(flow_equal(&flow, &expected));

    let path = std::env::temp_dir().join(format!("freesolv-flow-{}.json", std::process::id()));
    std::fs::write(&path, stdout(&out).trim()).unwrap();
    let realized = freesolv(&[
        "flow",
        "--rank",
        "2",
        "--realize",
        "--flow-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(realized.status.code(), Some(0));
    let word = Word::parse(stdout(&realized).trim(), 2).unwrap();
    assert!(flow_equal(&path_flow(&word), &expected));
    std::fs::remove_file(&path).ok();
}

#[test]
fn geodesic_json_round_trips() {
    let out = freesolv(&["geodesic", "--rank", "2", "--word", "aabaBAAA", "--json"]);
    let parsed: json::GeodesicJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rebuilt = json::geodesic_from_json(&parsed, 2).unwrap();
    let direct = geodesic(&Word::parse("aabaBAAA", 2).unwrap());
    assert_eq!(rebuilt, direct);
}

#[test]
fn rstp_surfaces() {
    let decide = freesolv(&["rstp", "--points", "0,0;2,0;1,2", "--bound", "5"]);
    assert_eq!(decide.status.code(), Some(0));
    let decide = freesolv(&["rstp", "--points", "0,0;2,0;1,2", "--bound", "4"]);
    assert_eq!(decide.status.code(), Some(1));

    let size = freesolv(&["rstp", "--points", "0,0;2,0;1,2", "--json"]);
    assert_eq!(size.status.code(), Some(0));
    let parsed: json::SteinerJson = serde_json::from_str(stdout(&size).trim()).unwrap();
    assert_eq!(parsed.size, 4);
    let rebuilt = json::steiner_from_json(&parsed);
    let direct = steiner_size(&[(0, 0), (2, 0), (1, 2)], &ExactLimits::default()).unwrap();
    assert_eq!(rebuilt, direct);

    // Duplicate points break the word encoding.
    let dup = freesolv(&["rstp", "--points", "0,0;0,0", "--bound", "1"]);
    assert_eq!(dup.status.code(), Some(2));
}

#[test]
fn magnus_json_parses() {
    let out = freesolv(&["magnus", "--rank", "2", "--class", "3", "--word", "abAB", "--json"]);
    let parsed: json::MagnusImageJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(parsed.class, 3);
    match &parsed.rows[0] {
        json::MagnusRowJson::Solvable(e) => {
            let element = json::solvable_element_from_json(e);
            assert!(!element.is_zero());
            assert_eq!(element.klass(), 2);
        }
        json::MagnusRowJson::Abelian(_) => panic!("class-3 image carries solvable rows"),
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["fox", "--rank", "3", "--word", "abcABC", "--json"],
        vec!["geodesic", "--rank", "2", "--word", "bababABBBA", "--json"],
        vec!["flow", "--rank", "2", "--word", "abAB", "--json"],
        vec!["rstp", "--points", "0,0;3,1", "--json"],
    ] {
        let first = freesolv(&args);
        let second = freesolv(&args);
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn bench_words_are_seed_deterministic() {
    let a = freesolv_cli::bench::bench_word(2, 64, 7, 3);
    let b = freesolv_cli::bench::bench_word(2, 64, 7, 3);
    assert_eq!(a, b);
    let c = freesolv_cli::bench::bench_word(2, 64, 8, 3);
    assert_ne!(a, c);
}

#[test]
fn bench_zero_rows() {
    let out = freesolv(&["bench", "--suite", "metabelian", "--sizes", "", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // Header plus column line only: no data rows.
    assert_eq!(text.lines().count(), 2, "{text}");
}

#[test]
fn bench_json_reports() {
    let out = freesolv(&[
        "bench",
        "--suite",
        "solvable",
        "--sizes",
        "16,32",
        "--seed",
        "3",
        "--class",
        "3",
        "--seeds",
        "2",
        "--repeats",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: freesolv_cli::bench::BenchReport =
        serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report.rows.len(), 2);
    assert_eq!(report.ratios.len(), 1);

    let unordered = freesolv(&["bench", "--suite", "metabelian", "--sizes", "20,10"]);
    assert_eq!(unordered.status.code(), Some(2));
}
