use std::path::PathBuf;
use std::process::{Command, Output};

use albert::albert::shipped::split_first;
use albert::hexagon::{hex_mul, HexElem, HexJson};
use albert::random::Sampler;
use serde_json::Value;

fn config(name: &str) -> String {
    format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn albert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_albert")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("albert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn define_split() {
    let o = albert(&["define", "--config", &config("split.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["ok"], true);
    let algebras: Vec<&Value> = v["objects"].as_array().unwrap().iter().filter(|x| x["kind"] == "albert").collect();
    assert!(!algebras.is_empty());
    assert!(algebras.iter().all(|a| a["dim"] == 27));
}

#[test]
fn define_cyclic7_notes_sampling() {
    let o = albert(&["define", "--config", &config("cyclic7.json"), "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("sampled anisotropy"));
}

#[test]
fn define_shipped_and_others() {
    for name in ["unitary.json", "reduced.json"] {
        let o = albert(&["define", "--config", &config(name), "--count", "2"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn malformed_config_is_a_parse_error() {
    let p = scratch("bad.json");
    std::fs::write(&p, r#"{"fields":[{"label":"F","poly":["1","x"]}]}"#).unwrap();
    let o = albert(&["define", "--config", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"));
    let o = albert(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    let o = albert(&["factor", "jp", "--algebra", "split"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_albert_identities() {
    let o = albert(&["verify", "albert-identities", "--seed", "7", "--count", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["ok"], true);
}

#[test]
fn verify_factorization_and_hexagon() {
    let o = albert(&["verify", "factorization", "--count", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = albert(&["verify", "hexagon", "--count", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let checks = json(&o)["report"]["checks"].as_array().unwrap().clone();
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().ends_with("(gh)w = g(hw)") && c["passed"] == c["total"]));
}

#[test]
fn failed_verification_exits_one() {
    // This sample contains a nonzero element of J(D,3) with norm zero.
    let o = albert(&["verify", "anisotropy", "--seed", "20240601", "--count", "10000"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["ok"], false);
}

#[test]
fn factor_jp() {
    let o = albert(&["factor", "jp", "--algebra", "cyclic7", "--i", "1,1,0,0,1,0,0,0,1", "--j", "0,1,0,1,0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["length"], 5);
    assert_eq!(v["verified"], true);
    assert!(v["word"].as_array().unwrap().iter().all(|g| g["gen"] == "U"));
}

#[test]
fn factor_ia_expanded_and_fallback() {
    let o = albert(&["factor", "ia", "--algebra", "cyclic7", "--a", "1,1,0,0,0,0,0,0,0"]);
    let v = json(&o);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["verified"], true);
    assert_eq!(v["only_u_and_scalars"], true);
    assert!(v["flags"].as_array().unwrap().is_empty());
    let o = albert(&["factor", "ia", "--algebra", "cyclic7", "--a", "1,1,0,0,1,0,0,0,1"]);
    let v = json(&o);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["verified"], true);
    assert_eq!(v["flags"][0], "NoDecomposition");
    assert!(v["word"].as_array().unwrap().iter().any(|g| g["gen"] == "prim" && g["name"] == "Jp"));
}

#[test]
fn factor_psi_phi_chi_reduce() {
    let runs: [&[&str]; 5] = [
        &["factor", "psi", "--algebra", "split2", "--a", "1,2,0,0,1,0,0,0,1", "--b", "1,0,0,2,1,0,0,0,1"],
        &["factor", "phi", "--algebra", "unitary", "--seed", "4"],
        &["factor", "phi", "--algebra", "unitary", "--v", "1,0,1,0,0,0", "--v", "0,0,1,1,1,0"],
        &["factor", "chi", "--algebra", "split", "--c", "1,2,0,0,1,0,0,0,3"],
        &["factor", "reduce", "--config", &config("split.json"), "--algebra", "split2", "--word", "w1"],
    ];
    for args in runs {
        let o = albert(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert_eq!(json(&o)["verified"], true, "{args:?}");
    }
    // an odd number of reflections is not special unitary
    let o = albert(&["factor", "phi", "--algebra", "unitary", "--v", "1,0,1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_recovers_psi_form() {
    let o = albert(&["factor", "reduce", "--config", &config("split.json"), "--algebra", "split2", "--word", "w1"]);
    let v = json(&o);
    assert!(v["psi_form"]["a"].is_array());
}

#[test]
fn fixpoint_of_jp() {
    let o = albert(&["fixpoint", "--algebra", "cyclic7", "--jp", "0,1,0,0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["automorphism"], true);
    assert_eq!(v["fixed"]["dim"], 9);
    assert_eq!(v["fixed"]["subalgebra"], true);
    assert_eq!(v["det_on_trace_zero_minus_id"], "0");
}

#[test]
fn hexagon_product_matches_library() {
    let alg = split_first(1);
    let mut s = Sampler::new(5);
    let (g, h) = (HexElem::random(&alg, &mut s), HexElem::random(&alg, &mut s));
    let (pg, ph) = (scratch("g.json"), scratch("h.json"));
    std::fs::write(&pg, serde_json::to_string(&g.to_json()).unwrap()).unwrap();
    std::fs::write(&ph, serde_json::to_string(&h.to_json()).unwrap()).unwrap();
    let o = albert(&["hexagon", "--algebra", "split", "--mul", pg.to_str().unwrap(), ph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let got: HexJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(got, hex_mul(&g, &h).unwrap().to_json());
    let o = albert(&["hexagon", "--count", "3"]);
    assert_eq!(json(&o)["ok"], true);
}

#[test]
fn eval_and_out_file() {
    let mut x = vec!["0"; 27];
    x[0] = "1";
    x[4] = "2";
    x[8] = "3";
    let x = x.join(",");
    let p = scratch("norm.json");
    let o = albert(&["eval", "--algebra", "split", "norm", &x, "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["result"], "6");
    let o = albert(&["eval", "--config", &config("split.json"), "--algebra", "split2", "word", "w2"]);
    assert_eq!(json(&o)["similitude"], json(&o)["similarity_factor"]);
    let o = albert(&["eval", "--algebra", "split", "mul", &x]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deterministic_under_seed() {
    let a = albert(&["factor", "phi", "--algebra", "unitary", "--seed", "11"]);
    let b = albert(&["factor", "phi", "--algebra", "unitary", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = albert(&["factor", "phi", "--algebra", "unitary", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}
