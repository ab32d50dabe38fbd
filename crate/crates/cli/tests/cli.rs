use std::process::{Command, Output};

use serde_json::Value;

fn gpq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_seven_three_passes() {
    let out = gpq(&["verify", "7", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["summary"]["prim"], 3);
    assert_eq!(v["summary"]["all_passed"], true);
    assert_eq!(v["params"]["v"], 10);
    assert_eq!(v["params"]["i"], 4);
}

#[test]
fn verify_rejects_bad_parameters() {
    let out = gpq(&["verify", "7", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q must divide p−1"));

    let out = gpq(&["verify", "7", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an Oliver group"));

    assert_eq!(gpq(&["verify", "seven", "3"]).status.code(), Some(2));
    assert_eq!(gpq(&["classes", "nosuch:3"]).status.code(), Some(2));
}

#[test]
fn gap_verdict_for_dihedral_42() {
    let out = gpq(&["gap", "dihedral:21"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "not a gap group");
    assert_eq!(v["lp"]["feasible"], false);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["verify", "7", "3", "--exhaustive-witness-scan"];
    let a = gpq(&args);
    let b = gpq(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = gpq(&["oliver", "gpq:7,3"]);
    let b = gpq(&["oliver", "gpq:7,3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn composite_order_mode_only_changes_the_gnil_report() {
    let mut a = json(&gpq(&["oliver", "gpq:7,3"]));
    let mut b = json(&gpq(&["oliver", "gpq:7,3", "--composite-order-mode", "non-prime"]));
    let gnil = |v: &mut Value| v["special_oliver"]["conjuncts"][4].take();
    let (ga, gb) = (gnil(&mut a), gnil(&mut b));
    assert_eq!(ga["name"], "no-sumi-gnil-condition");
    assert_ne!(ga["evidence"]["mode"], gb["evidence"]["mode"]);
    assert_eq!(a, b);
}

#[test]
fn small_group_commands() {
    let v = json(&gpq(&["classes", "cyclic:3"]));
    assert_eq!(v["class_count"], 3);

    let v = json(&gpq(&["chartable", "frobenius:7,3"]));
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 1, 3, 3]));

    let v = json(&gpq(&["prim", "cyclic:15"]));
    assert_eq!(v["prim"], 4);
    assert_eq!(v["po_rank"], 4);

    let v = json(&gpq(&["oliver", "cyclic:8"]));
    assert_eq!(v["is_oliver"], false);
    assert_eq!(v["laitinen"]["holds"], false);
}

#[test]
fn markdown_and_output_file() {
    let dir = std::env::temp_dir().join(format!("gpq-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.md");
    let out = gpq(&[
        "verify",
        "7",
        "3",
        "--format",
        "markdown",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let md = std::fs::read_to_string(&path).unwrap();
    assert!(md.contains("| class-census | pass |"));
    assert!(md.contains("- prim: 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn subgroup_bound_is_enforced() {
    let out = gpq(&["verify", "13", "3", "--subgroup-bound", "100"]);
    assert_eq!(out.status.code(), Some(2));
}
