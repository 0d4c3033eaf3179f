use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn jacring(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jacring"))
        .args(args)
        .env_remove("JACRING_DEFAULT_FIELD")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn hodge_on_fermat_quintic() {
    let f = tmp("fermat5.poly", "z0^5 + z1^5 + z2^5 + z3^5 + z4^5\n");
    let (code, out) = jacring(&["hodge", "--poly", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["command"], "hodge");
    assert_eq!(v["field"], "fp:65521");
    assert_eq!(v["results"]["h30"], 1);
    assert_eq!(v["results"]["h21"], 101);
    assert_eq!(v["results"]["euler_characteristic"]["consistent"], true);
    assert!(v["input"]["digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn hilbert_on_singular_input_warns() {
    let f = tmp("z0_6.poly", "z0^6\n");
    let (code, out) = jacring(&["hilbert", "--poly", f.to_str().unwrap(), "--degrees", "0..21"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["results"]["matches_expected"], false);
    assert_eq!(v["results"]["series"].as_array().unwrap().len(), 22);
    assert_eq!(v["results"]["series"][5]["dim"], 125);
    assert_eq!(v["results"]["series"][5]["expected"], 121);
    assert!(v["warnings"][0].as_str().unwrap().contains("not smooth"));
}

#[test]
fn hilbert_default_range() {
    let f = tmp("cubic.poly", "# a comment\nz0^3 + z1^3 + z2^3\n + z3^3 + z4^3\n");
    let (code, out) = jacring(&["hilbert", "--poly", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["results"]["degrees"], "0..6");
    let dims: Vec<u64> = v["results"]["series"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 5, 10, 10, 5, 1, 0]);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn random_then_aj_image() {
    let (code, text) = jacring(&["random", "--d", "5", "--support", "full", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("# random d=5 support=full seed=3 field=fp:65521"));
    let f = tmp("random5.poly", &text);
    let (code, out) = jacring(&["aj-image", "--poly", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["results"]["aj_image_dim"], 0);
    assert_eq!(v["results"]["surjective"], true);
    assert_eq!(v["results"]["degree_hypothesis_met"], false);
    assert!(v["input"]["generator"].as_str().unwrap().contains("seed=3"));
    assert!(v["warnings"][0].as_str().unwrap().contains("d >= 6"));
}

#[test]
fn aj_image_with_w_file() {
    let f = tmp("fermat6.poly", "z0^6 + z1^6 + z2^6 + z3^6 + z4^6\n");
    let w = tmp("w.poly", "# two generators\nz0^6\nz0^3*z1^3\n");
    let (code, out) = jacring(&["aj-image", "--poly", f.to_str().unwrap(), "--w", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["results"]["w_source"], "file");
    assert_eq!(v["results"]["w_dim"], 2);
    assert_eq!(v["results"]["mu_cols"], 10);
    assert_eq!(v["results"]["mu_rank"], 5);
    assert_eq!(v["results"]["aj_image_dim"], 250);
    assert!(v["input"]["w_digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v["warnings"][0].as_str().unwrap().contains("mod 65521"));
}

#[test]
fn stdin_and_fields() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jacring"))
        .args(["smooth", "--poly", "-", "--field", "q"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"z0^3 + z1^3 + z2^3 + z3^3 + z4^3").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["field"], "q");
    assert_eq!(v["results"]["smooth"], true);

    let f = tmp("fermat3.poly", "z0^3 + z1^3 + z2^3 + z3^3 + z4^3\n");
    let out = Command::new(env!("CARGO_BIN_EXE_jacring"))
        .args(["smooth", "--poly", f.to_str().unwrap()])
        .env("JACRING_DEFAULT_FIELD", "fp:101")
        .output()
        .unwrap();
    assert_eq!(json(&String::from_utf8(out.stdout).unwrap())["field"], "fp:101");
}

#[test]
fn pairing_defaults() {
    let f = tmp("fermat6p.poly", "z0^6 + z1^6 + z2^6 + z3^6 + z4^6\n");
    let (code, out) = jacring(&["pairing", "--poly", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    let ks: Vec<i64> = v["results"]["pairings"].as_array().unwrap().iter().map(|p| p["k"].as_i64().unwrap()).collect();
    assert_eq!(ks, vec![0, 1, 7]);
    assert!(v["results"]["pairings"].as_array().unwrap().iter().all(|p| p["full_rank"] == true));
    assert_eq!(v["results"]["pairings"][0]["entries"][0][0], "1");
}

#[test]
fn exit_codes() {
    let missing = jacring(&["hodge", "--poly", "/nonexistent/x.poly"]);
    assert_eq!(missing.0, 2);
    assert_eq!(json(&missing.1)["error"]["kind"], "usage");

    let bad = tmp("bad.poly", "z0 + z1^2\n");
    let parse = jacring(&["hodge", "--poly", bad.to_str().unwrap()]);
    assert_eq!(parse.0, 3);
    assert_eq!(json(&parse.1)["error"]["kind"], "parse");
    let unknown = tmp("unknown.poly", "z5^2\n");
    assert_eq!(jacring(&["smooth", "--poly", unknown.to_str().unwrap()]).0, 3);

    let singular = tmp("singular.poly", "z0^6\n");
    let pre = jacring(&["aj-image", "--poly", singular.to_str().unwrap()]);
    assert_eq!(pre.0, 4);
    assert_eq!(json(&pre.1)["error"]["kind"], "precondition");
    let quartic = tmp("quartic.poly", "z0^4 + z1^4 + z2^4 + z3^4 + z4^4\n");
    assert_eq!(jacring(&["aj-image", "--poly", quartic.to_str().unwrap()]).0, 4);

    assert_eq!(jacring(&["hodge"]).0, 2);
    assert_eq!(jacring(&["frobnicate"]).0, 2);
    assert_eq!(jacring(&["random", "--d", "3", "--support", "sparse:99"]).0, 2);
    assert_eq!(jacring(&["hodge", "--poly", quartic.to_str().unwrap(), "--field", "fp:10"]).0, 2);
}

#[test]
fn pretty_is_the_same_document() {
    let f = tmp("fermat5b.poly", "z0^5 + z1^5 + z2^5 + z3^5 + z4^5\n");
    let (_, compact) = jacring(&["smooth", "--poly", f.to_str().unwrap()]);
    let (_, pretty) = jacring(&["smooth", "--poly", f.to_str().unwrap(), "--pretty"]);
    assert!(pretty.lines().count() > 1);
    assert_eq!(json(&compact), json(&pretty));
}

#[test]
fn no_floats_in_reports() {
    let f = tmp("fermat5c.poly", "z0^5 + z1^5 + z2^5 + z3^5 + z4^5\n");
    for cmd in ["hilbert", "smooth", "hodge", "aj-image", "pairing"] {
        let (_, out) = jacring(&[cmd, "--poly", f.to_str().unwrap()]);
        fn walk(v: &Value) {
            match v {
                Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float {n}"),
                Value::Array(a) => a.iter().for_each(walk),
                Value::Object(o) => o.values().for_each(walk),
                _ => {}
            }
        }
        walk(&json(&out));
    }
}
