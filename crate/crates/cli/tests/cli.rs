use serde_json::Value;
use std::process::{Command, Output};

fn bfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfc")).arg("--deterministic").args(args).output().expect("run bfc")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn measure_middle_third() {
    let v = json_of(&bfc(&["measure", "--func", "mt:6", "--measures", "rdeg,deg"]));
    let rdeg: usize = v["measures"]["rdeg"]["value"].as_str().unwrap().parse().unwrap();
    assert!(rdeg <= 3);
    assert_eq!(v["measures"]["deg"]["value"], "6");
    assert!(v["measures"]["rdeg"]["witnesses"]["q"].is_object());
    assert!(v.get("timestamp").is_none());
}

#[test]
fn measure_parity_csv() {
    let out = bfc(&["measure", "--func", "parity:3", "--measures", "s,bs,cert", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "function,s,bs,cert\nparity:3,3,3,3\n");
}

#[test]
fn measure_from_file_includes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"n":2,"domain":"f","values":"8"}"#).unwrap();
    let spec = format!("file:{}", path.display());
    let v = json_of(&bfc(&["measure", "--func", &spec, "--measures", "ndeg"]));
    assert_eq!(v["measures"]["ndeg"]["value"], "2");
    assert!(v["measures"]["ndeg"]["witnesses"]["p"]["terms"].is_array());
}

#[test]
fn exit_codes() {
    assert_eq!(bfc(&["measure", "--func", "nosuch:3", "--measures", "deg"]).status.code(), Some(2));
    assert_eq!(bfc(&["measure", "--func", "and:3", "--measures", "wat"]).status.code(), Some(2));
    assert_eq!(bfc(&["measure", "--func", "and:21", "--measures", "deg"]).status.code(), Some(3));
    let partial = bfc(&["measure", "--func", "majn:4", "--measures", "bs"]);
    assert_eq!(partial.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&partial.stderr).contains("block sensitivity is not defined"));
    assert_eq!(bfc(&["verify", "--claim", "nosuch"]).status.code(), Some(2));
    // a formula with one wide symmetric gate whose rdeg is below ⌈w/2⌉
    let failing = bfc(&["verify", "--claim", "lemma:3.13", "--params", "sym0001111000(x1,x2,x3,x4,x5,x6,x7,x8,x9)"]);
    assert_eq!(failing.status.code(), Some(5));
}

#[test]
fn env_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_bfc"))
        .env("BFC_MAX_N", "4")
        .args(["measure", "--func", "and:5", "--measures", "deg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_bfc"))
        .env("BFC_MAX_N", "99")
        .args(["measure", "--func", "and:21", "--measures", "deg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_single_and_suite() {
    let v = json_of(&bfc(&["verify", "--claim", "prop:4.1", "--params", "or:2,and:2"]));
    assert_eq!(v[0]["holds"], true);
    assert_eq!(v[0]["lhs"], "3");
    let all = json_of(&bfc(&["verify", "--all", "--max-size", "3"]));
    let verdicts = all.as_array().unwrap();
    assert!(verdicts.len() >= 23);
    assert!(verdicts.iter().all(|v| v["holds"] == true));
}

#[test]
fn census_is_byte_identical_and_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = bfc(&["census", "--n", "5", "--count", "20", "--seed", "1", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["histogram"].as_object().unwrap().values().map(|c| c.as_u64().unwrap()).sum::<u64>(), 20);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);

    let bad = dir.path().join("bad.json");
    let out = bfc(&["census", "--n", "11", "--count", "1", "--seed", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!bad.exists());
}

#[test]
fn witnesses() {
    let v = json_of(&bfc(&["witness", "--name", "andor", "--params", "2,2"]));
    assert_eq!(v["representation"]["postselection"]["max_error"], "0");
    assert_eq!(v["representation"]["p"]["terms"].as_array().unwrap().len(), 4);
    let v = json_of(&bfc(&["witness", "--name", "bi", "--params", "6"]));
    assert_eq!(v["representation"]["postselection"]["postq_bound"], 2);
    let v = json_of(&bfc(&["witness", "--name", "mtbar", "--params", "6"]));
    assert_eq!(v["degree"], 3);
    assert_eq!(bfc(&["witness", "--name", "nosuch", "--params", "1"]).status.code(), Some(2));
}

#[test]
fn separation_report() {
    let v = json_of(&bfc(&["report", "--family", "sep5.2", "--n", "2"]));
    assert_eq!(v["measures"]["rdeg"]["value"], "2");
    assert_eq!(v["measures"]["deg"]["value"], "4");
    assert!(v["measures"]["lambda"]["lower"].is_string());
}
