use euclid_dual::roots::RootSystemJson;
use euclid_dual::verdict::VerdictJson;
use euclid_dual_cli::{run_args, AxisJson, HurwitzJson, IntervalJson, Report};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Report {
    run_args(std::iter::once("euclid-dual").chain(args.iter().copied()))
}

/// Parses the JSON output and checks it re-serializes to the same value.
fn round_trip<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = run(&full);
    let parsed: T = serde_json::from_str(&r.text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", r.text));
    let again: T = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, again);
    parsed
}

#[test]
fn verdict_json_round_trip() {
    let rows: Vec<VerdictJson> = round_trip(&["--window", "1", "verdict", "--type", "G2"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].verdict, rows[0].expected);
}

#[test]
fn axis_json_round_trip() {
    let rows: Vec<AxisJson> = round_trip(&["axis", "--type", "B3"]);
    assert!(rows.iter().all(|a| a.parallel == Some(true)));
    let rows: Vec<AxisJson> = round_trip(&["axis", "--type", "A3", "--class", "(2,2)"]);
    assert_eq!(rows.len(), 1);
}

#[test]
fn interval_json_round_trip() {
    let rect: IntervalJson = round_trip(&["interval", "--type", "rect"]);
    assert_eq!(rect.rank_sizes, vec![1, 8, 8, 1]);
    assert_eq!(rect.maximal_chains, "24");
    assert_eq!(rect.bowties.len(), 2);
    let g2: IntervalJson = round_trip(&["--window", "2", "interval", "--type", "G2"]);
    assert!(g2.certified.is_empty());
    assert_eq!(g2.window, Some(2));
}

#[test]
fn hurwitz_json_round_trip() {
    let h: HurwitzJson = round_trip(&["hurwitz", "--type", "rect"]);
    assert_eq!((h.orbit_size, h.complete), (24, true));
    let h: HurwitzJson = round_trip(&["hurwitz", "--type", "A3"]);
    assert_eq!((h.orbit_size, h.brute_force), (16, Some(16)));
    let h: HurwitzJson = round_trip(&["--budget", "5", "hurwitz", "--type", "B3"]);
    assert!(!h.complete);
}

#[test]
fn roots_json_round_trip() {
    let r: RootSystemJson = round_trip(&["roots", "--type", "F4"]);
    assert_eq!(r.rank, 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--window", "1", "verdict", "--type", "C2"]).code, 0);
    assert_eq!(run(&["verdict", "--type", "Q9"]).code, 2);
    assert_eq!(run(&["--window", "0", "verdict"]).code, 2);
    assert_eq!(run(&["--budget", "0", "rect-demo"]).code, 2);
    assert_eq!(run(&["--format", "dot", "roots", "--type", "G2"]).code, 2);
    assert_eq!(run(&["axis", "--type", "B3", "--class", "(2,1)"]).code, 2);
    assert_eq!(run(&["nonsense"]).code, 2);
}

#[test]
fn dot_and_text_outputs() {
    let dot = run(&["--format", "dot", "interval", "--type", "rect"]);
    assert_eq!(dot.code, 0);
    assert!(dot.text.starts_with("digraph"));
    let demo = run(&["rect-demo"]);
    assert_eq!(demo.code, 0);
    assert!(demo.text.contains("24"));
    let roots = run(&["roots", "--type", "B3"]);
    assert!(roots.text.lines().count() >= 18);
}

#[test]
fn export_follows_extension() {
    let dir = std::env::temp_dir().join(format!("euclid-dual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("rect.json");
    let dot = dir.join("rect.dot");
    for p in [&json, &dot] {
        let r = run(&["--export", p.to_str().unwrap(), "interval", "--type", "rect"]);
        assert_eq!(r.code, 0, "{}", r.text);
    }
    let parsed: IntervalJson = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(parsed.rank_sizes, vec![1, 8, 8, 1]);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let bad = dir.join("roots.dot");
    assert_eq!(run(&["--export", bad.to_str().unwrap(), "roots", "--type", "G2"]).code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_reads_format_from_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_euclid-dual"))
        .args(["roots", "--type", "G2"])
        .env(euclid_dual_cli::FORMAT_ENV, "json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: RootSystemJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed.rank, 2);
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_euclid-dual"))
        .args(["--window", "0", "verdict"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(out.stderr.is_empty() && !bad.stderr.is_empty());
}
