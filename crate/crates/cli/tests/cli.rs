use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lhom")).args(args).output().expect("spawn lhom")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    let v: Value = serde_json::from_str(stdout(out).trim()).expect("one JSON object");
    assert_eq!(v["schema"], "lhom/1");
    v
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C5: &str = "p hgraph 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n";
const C6: &str = "p hgraph 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 0\n";

#[test]
fn invariants_of_c6() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c6.hg", C6);
    let out = lhom(&["invariants", s(&h), "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["c_star"], 3);
    assert_eq!(v["d_star"], 2);
    assert_eq!(v["delta"], 2);
    assert_eq!(v["c_star_witness"]["set"].as_array().unwrap().len(), 3);
    assert!(stdout(&lhom(&["invariants", s(&h)])).contains("c* = 3"));
}

#[test]
fn cycle_power_flag_is_validated() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c6.hg", C6);
    assert_eq!(code(&lhom(&["invariants", s(&h), "--cycle-power", "6,1"])), 0);
    assert_eq!(code(&lhom(&["invariants", s(&h), "--cycle-power", "7,1"])), 2);
}

#[test]
fn solve_exit_codes() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c5.hg", C5);
    // a triangle cannot map to an odd cycle of length five
    let no = write(dir.path(), "tri.lh", "p lhom 3 3 5\ne 0 1\ne 1 2\ne 2 0\nl 0 0 1 2 3 4\nl 1 0 1 2 3 4\nl 2 0 1 2 3 4\n");
    let out = lhom(&["solve", s(&no), "--target", s(&h)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "NO");
    assert_eq!(json(&lhom(&["solve", s(&no), "--target", s(&h), "--json"]))["answer"], "no");

    let yes = write(dir.path(), "p.lh", "p lhom 3 2 5\ne 0 1\ne 1 2\nl 0 0\nl 1 1 4\nl 2 2 3\n");
    let v = json(&lhom(&["solve", s(&yes), "--target", s(&h), "--witness", "--json"]));
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["witness"], serde_json::json!([0, 1, 2]));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c5.hg", C5);
    let bad = write(dir.path(), "bad.lh", "p lhom 1 0 5\nq 0\n");
    assert_eq!(code(&lhom(&["solve", s(&bad), "--target", s(&h)])), 2);
    let out = lhom(&["solve", "/nonexistent", "--target", s(&h), "--json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["exit_code"], 2);
    assert_eq!(code(&lhom(&["no-such-command"])), 2);
}

#[test]
fn budget_exhaustion_exits_three() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c6.hg", C6);
    let inst = dir.path().join("i.lh");
    assert_eq!(
        code(&lhom(&["gen", "instance", "--target", s(&h), "--n", "30", "--k", "6", "--seed", "2", "--out", s(&inst)])),
        0
    );
    let out = Command::new(env!("CARGO_BIN_EXE_lhom"))
        .args(["solve", s(&inst), "--target", s(&h), "--two-phase"])
        .env("LHOM_NODE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn kernels_agree_with_their_inputs() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c6.hg", C6);
    for seed in 0..6u64 {
        let inst = dir.path().join(format!("i{seed}.lh"));
        let mode = if seed % 2 == 0 { "random" } else { "planted-yes" };
        let seed = seed.to_string();
        let args = ["gen", "instance", "--target", s(&h), "--n", "14", "--k", "4", "--seed", &seed, "--mode", mode];
        assert_eq!(code(&lhom(&[&args[..], &["--out", s(&inst)]].concat())), 0);
        for method in ["marking", "poly"] {
            let out = lhom(&["verify-kernel", s(&inst), "--target", s(&h), "--method", method, "--json"]);
            assert_eq!(code(&out), 0, "{}", stdout(&out));
            assert_eq!(json(&out)["agree"], true);
        }
    }
}

#[test]
fn kernel_emits_annotated_instance() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c6.hg", C6);
    let inst = dir.path().join("i.lh");
    lhom(&["gen", "instance", "--target", s(&h), "--n", "16", "--k", "4", "--seed", "9", "--out", s(&inst)]);
    let k = dir.path().join("k.lh");
    let out = lhom(&["kernel", s(&inst), "--target", s(&h), "--method", "poly", "--emit", s(&k), "--stats-json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let body = std::fs::read_to_string(&k).unwrap();
    let header = format!(
        "c method=poly degree={} vin={} vout={}",
        v["degree_used"], v["vertices_in"], v["vertices_out"]
    );
    assert_eq!(body.lines().next().unwrap(), header);
    // the emitted kernel is itself a valid instance
    assert!(code(&lhom(&["solve", s(&k), "--target", s(&h)])) <= 1);
}

#[test]
fn forbid_prints_certified_polynomial() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c6.hg", C6);
    let out = lhom(&["forbid", "--target", s(&h), "--list", "0,2,4", "--tuple", "1,3,5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("y["), "{first}");
    assert!(first.split(" + ").all(|m| m.split('*').count() <= 2));

    let v = json(&lhom(&["forbid", "--target", s(&h), "--list", "0,2,4", "--tuple", "1,3,5", "--degree", "2", "--json"]));
    assert!(v["degree"].as_u64().unwrap() <= 2);
    // degree one cannot forbid an independent triple on the hexagon
    let out = lhom(&["forbid", "--target", s(&h), "--list", "0,2,4", "--tuple", "1,3,5", "--degree", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn generation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |args: &[&str]| stdout(&lhom(args));
    let a = run(&["gen", "hgraph", "random", "--h", "7", "--seed", "42"]);
    assert_eq!(a, run(&["gen", "hgraph", "random", "--h", "7", "--seed", "42"]));
    assert_ne!(a, run(&["gen", "hgraph", "random", "--h", "7", "--seed", "43"]));
    assert!(a.contains("seed=42"));

    let h = write(dir.path(), "c6.hg", C6);
    let args = ["gen", "instance", "--target", s(&h), "--n", "20", "--k", "5", "--seed", "7"];
    assert_eq!(run(&args), run(&args));
    let planted = write(dir.path(), "p.lh", &run(&[&args[..], &["--mode", "planted-yes"]].concat()));
    assert_eq!(code(&lhom(&["solve", s(&planted), "--target", s(&h)])), 0);
}

#[test]
fn sat_reduction_preserves_answers() {
    let dir = TempDir::new().unwrap();
    let k4 = dir.path().join("k4.hg");
    assert_eq!(code(&lhom(&["gen", "hgraph", "complete", "--k", "4", "--out", s(&k4)])), 0);
    let sat = write(dir.path(), "sat.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let unsat = write(dir.path(), "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    for (cnf, expected) in [(&sat, 0), (&unsat, 1)] {
        let inst = dir.path().join("r.lh");
        let out = lhom(&["reduce-sat", s(cnf), "--target", s(&k4), "--emit", s(&inst), "--json"]);
        assert_eq!(code(&out), 0);
        let v = json(&out);
        assert!(v["cover_size"].as_u64().unwrap() > 0);
        assert_eq!(code(&lhom(&["solve", s(&inst), "--target", s(&k4)])), expected);
    }
    // the hexagon only has order-two structures, too small for the gadgets
    let c6 = write(dir.path(), "c6.hg", C6);
    assert_eq!(code(&lhom(&["reduce-sat", s(&sat), "--target", s(&c6)])), 2);
}

#[test]
fn gadget_check_on_k4() {
    let dir = TempDir::new().unwrap();
    let k4 = dir.path().join("k4.hg");
    lhom(&["gen", "hgraph", "complete", "--k", "4", "--out", s(&k4)]);
    let out = lhom(&["gadget-check", "--target", s(&k4), "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["gadgets"].as_array().unwrap().len(), 3 + 6);
    assert_eq!(v["variable_gadget"]["ok"], true);
}
