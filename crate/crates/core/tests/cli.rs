//! End-to-end checks of the command-line interface: JSON on stdout,
//! exit codes 0/1/2.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_modal-planes"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("modal-planes-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_f0_then_classify() {
    let out = bin().args(["gen", "f0"]).output().unwrap();
    assert!(out.status.success());
    let frame = write_temp("f0.json", std::str::from_utf8(&out.stdout).unwrap());

    let out = bin().arg("classify").arg(&frame).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["classification"]["kind"], "quasi-projective");
    let o4p = v["classification"]["satisfies"]
        .as_array()
        .unwrap()
        .iter()
        .find(|pair| pair[0] == "O4'")
        .unwrap();
    assert_eq!(o4p[1], true);
}

#[test]
fn check_frame_exit_codes() {
    let windmill = bin().args(["gen", "windmill", "3"]).output().unwrap();
    let path = write_temp("w3.json", std::str::from_utf8(&windmill.stdout).unwrap());
    let out = bin()
        .arg("check-frame")
        .arg(&path)
        .args(["--properties", "O5,O3,O4'"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "O4' fails, so the exit code is 1");
    let v = stdout_json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert_eq!(checks[0][1]["holds"], true);
    assert_eq!(checks[1][1]["holds"], true);
    assert_eq!(checks[2][1]["holds"], false);
}

#[test]
fn sat_finds_the_t3_countermodel() {
    let out = bin()
        .args(["sat", "~([][][]p -> p)", "--logic", "12g", "--max-size", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "sat");
    assert_eq!(v["witness"]["model"]["frame"]["n"], 2);
}

#[test]
fn sat_reports_unsat_for_contradictions() {
    let out = bin()
        .args(["sat", "p & ~p", "--logic", "8f"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "unsat");
}

#[test]
fn geometry_pipeline_via_cli() {
    let fano = bin().args(["gen", "pg2", "2"]).output().unwrap();
    assert!(fano.status.success());
    let two_path = write_temp("fano.json", std::str::from_utf8(&fano.stdout).unwrap());

    let checked = bin()
        .arg("check-2frame")
        .arg(&two_path)
        .args(["--properties", "P1,P2,P3"])
        .output()
        .unwrap();
    assert_eq!(checked.status.code(), Some(0));

    let merged = bin().arg("to-one-sorted").arg(&two_path).output().unwrap();
    assert!(merged.status.success());
    let one_path = write_temp("fano14.json", std::str::from_utf8(&merged.stdout).unwrap());

    let classified = bin().arg("classify").arg(&one_path).output().unwrap();
    let v = stdout_json(&classified);
    assert_eq!(v["classification"]["kind"], "quasi-projective");
    assert_eq!(v["classification"]["is_plane"], true);
    assert_eq!(v["classification"]["is_nondegenerate"], true);
}

#[test]
fn split_preimage_and_morphism_check() {
    let k3 = r#"{"kind":"one-frame","n":3,"edges":[[0,1],[1,2],[0,2]],"symmetric":true}"#;
    let path = write_temp("k3.json", k3);
    let out = bin().arg("split-preimage").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["audits"]["q1"], true);
    assert_eq!(v["audits"]["q2"], true);
    assert_eq!(v["audits"]["bounded"], true);
    assert_eq!(v["audits"]["surjective"], true);
    assert_eq!(v["audits"]["lift_bounded"], true);

    // The collapse of the triangle onto a loop, checked as a morphism.
    let loop_frame = r#"{"kind":"one-frame","n":1,"edges":[[0,0]]}"#;
    let loop_path = write_temp("loop.json", loop_frame);
    let map = r#"{"kind":"morphism","map":{"0":0,"1":0,"2":0}}"#;
    let map_path = write_temp("collapse.json", map);
    let out = bin()
        .arg("morphism")
        .args(["--source"])
        .arg(&path)
        .args(["--target"])
        .arg(&loop_path)
        .args(["--map"])
        .arg(&map_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["surjective"], true);
}

#[test]
fn modelcheck_and_valid() {
    let model = r#"{"kind":"model","frame":{"kind":"one-frame","n":2,"edges":[[0,1]],"symmetric":true},"valuation":{"p":[1]}}"#;
    let path = write_temp("chain-model.json", model);
    let out = bin()
        .arg("modelcheck")
        .arg(&path)
        .args(["--formula", "[][][]p", "--world", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = bin()
        .arg("modelcheck")
        .arg(&path)
        .args(["--formula", "p", "--world", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let frame = r#"{"kind":"one-frame","n":2,"edges":[[0,1]],"symmetric":true}"#;
    let fpath = write_temp("chain.json", frame);
    let out = bin()
        .arg("valid")
        .arg(&fpath)
        .args(["--formula", "[][][]p -> p"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["countermodel"].is_object());
}

#[test]
fn filtrate_emits_quotient_and_classes() {
    let model = r#"{"kind":"model","frame":{"kind":"one-frame","n":2,"edges":[[0,1]],"symmetric":true},"valuation":{"p":[1]}}"#;
    let path = write_temp("filt-model.json", model);
    let out = bin()
        .arg("filtrate")
        .arg(&path)
        .args(["--formula", "<>p", "--mode", "least"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["truth_preserved"], true);
    assert!(v["classes"].as_array().unwrap().len() == 2);
    assert!(v["quotient"]["frame"]["n"].as_u64().unwrap() <= 4);
}

#[test]
fn construct_elliptic_over_loop() {
    let loop_frame = r#"{"kind":"one-frame","n":1,"edges":[[0,0]]}"#;
    let path = write_temp("loop-target.json", loop_frame);
    let out = bin()
        .arg("construct-elliptic")
        .arg(&path)
        .args(["--rounds", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["coherent"], true);
    assert_eq!(v["report"]["o3_holds"], true);
    assert_eq!(v["report"]["irreflexive"], true);
}

#[test]
fn malformed_input_exits_2() {
    let path = write_temp("garbage.json", "{ not json");
    let out = bin().arg("classify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["sat", "p &", "--logic", "12g"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["sat", "p", "--logic", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_random_echoes_seed() {
    let out = bin()
        .args(["gen", "random", "--size", "4", "--class", "elliptic", "--seed", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["seed"], 9);
    let again = bin()
        .args(["gen", "random", "--size", "4", "--class", "elliptic", "--seed", "9"])
        .output()
        .unwrap();
    assert_eq!(stdout_json(&again), v, "same seed, same frame");
}

#[test]
fn correspond_small() {
    let out = bin()
        .args(["correspond", "--max-size", "3", "--max-param", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["total_divergences"], 0);
    assert_eq!(v["frames"], 116);
}

#[test]
fn modalities_small_corpus() {
    let out = bin()
        .args(["modalities", "--logic", "12g", "--max-len", "4", "--size-cap", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["classes"].as_array().unwrap().len(), 12);
}
