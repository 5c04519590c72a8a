use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn permpat() -> Command {
    let mut cmd = Command::cargo_bin("permpat").unwrap();
    cmd.env_remove("PERMPAT_MAX_DEGREE");
    cmd
}

fn stdout_of(args: &[&str]) -> String {
    let out = permpat().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(stdout_of(args).trim()).unwrap()
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn pat_of_a_single_cycle_golden() {
    assert_eq!(
        stdout_of(&["pat", "--perm", "234561", "--level", "3"]),
        concat!(
            r#"{"degree":6,"generated":{"elements":["123","231","312"],"order":3},"level":3,"#,
            r#""patterns":{"elements":["123","231"],"size":2},"source":"234561"}"#,
            "\n"
        )
    );
}

#[test]
fn pat_of_the_cyclic_group_includes_all_rotations() {
    let v = json_of(&["pat", "--group", "C:6", "--level", "3"]);
    assert_eq!(strings(&v["patterns"]["elements"]), ["123", "231", "312"]);
}

#[test]
fn pat_of_a_long_permutation() {
    let v = json_of(&["pat", "--perm", "1543276", "--level", "6"]);
    assert_eq!(v["patterns"]["size"], 3);
    assert_eq!(strings(&v["patterns"]["elements"]), ["143265", "154326", "432165"]);
}

#[test]
fn pat_accepts_cycle_notation_with_degree() {
    let v = json_of(&["pat", "--perm", "(1 2 3)", "--degree", "4", "--level", "3"]);
    assert_eq!(v["source"], "2314");
}

#[test]
fn pat_level_above_degree_is_a_usage_error() {
    permpat()
        .args(["pat", "--group", "S:5", "--level", "9"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("pattern length 9"));
}

#[test]
fn comp_of_a_primitive_degree_six_group() {
    let v = json_of(&["comp", "--group", "gens:6:(1 2 3 4);(3 4 5 6)", "--to", "7"]);
    assert_eq!(strings(&v["elements"]), ["1234567", "2154376", "6734512", "7654321"]);
    assert_eq!(v["is_group"], true);
}

#[test]
fn comp_strategies_agree() {
    let a = json_of(&["comp", "--group", "A:5", "--to", "7"]);
    let b = json_of(&["comp", "--group", "A:5", "--to", "7", "--strategy", "full-scan"]);
    assert_eq!(a, b);
    assert_eq!(a["size"], 14);
    assert!(strings(&a["elements"]).contains(&"7654321"));
}

#[test]
fn comp_beyond_the_degree_cap_exits_3() {
    permpat().args(["comp", "--group", "S:5", "--to", "20"]).assert().code(3);
}

#[test]
fn element_cap_breach_exits_3() {
    permpat().args(["comp", "--group", "S:5", "--to", "7", "--element-cap", "1000"]).assert().code(3);
}

#[test]
fn max_degree_env_and_flag_precedence() {
    permpat().env("PERMPAT_MAX_DEGREE", "6").args(["comp", "--group", "S:4", "--to", "7"]).assert().code(3);
    permpat()
        .env("PERMPAT_MAX_DEGREE", "6")
        .args(["comp", "--group", "S:4", "--to", "7", "--max-degree", "7"])
        .assert()
        .success()
        .stdout(predicate::str::contains(r#""size":5040"#));
}

#[test]
fn malformed_descriptor_exits_2() {
    permpat().args(["classify", "--group", "Q:4"]).assert().code(2);
    permpat().args(["levels", "--group", "gens:3:(1 4)"]).assert().code(2);
}

#[test]
fn classify_dihedral() {
    let v = json_of(&["classify", "--group", "D:8"]);
    assert_eq!(v["kind"], "ContainsNatCycle");
    assert_eq!(v["next"]["exact"]["descriptor"], "D:9");
    assert_eq!(v["next"]["exact"]["order"], 18);
    assert_eq!(v["eventual"]["family"], "cyclic");
    assert_eq!(v["eventual"]["with_descending"], true);
    assert_eq!(v["onset_bound"], 0);
}

#[test]
fn classify_partition_stabilizer_beyond_enumeration_range() {
    let v = json_of(&["classify", "--group", "SPi:1,2,3,7,8,9,10|4,5,6,12,13,14|11"]);
    assert_eq!(v["kind"], "Intransitive");
    assert_eq!(v["next"]["exact"]["descriptor"], "SPi:1,2,3|4|5,6|7|8,9,10|11|12|13,14,15");
    assert_eq!(v["next"]["exact"]["order"], 6 * 2 * 6 * 6);
    assert_eq!(strings(&v["citations"]), ["partition-stabilizer-lift"]);
}

#[test]
fn classify_trivial_group() {
    let v = json_of(&["classify", "--group", "T:2"]);
    assert_eq!(v["next"]["exact"]["order"], 1);
    assert_eq!(strings(&v["next"]["exact"]["elements"]), ["123"]);
}

#[test]
fn classify_depth_lists_each_level() {
    let v = json_of(&["classify", "--group", "A:7", "--depth", "2"]);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    assert_eq!(levels[1]["degree"], 9);
    assert_eq!(levels[1]["next"]["exact"]["descriptor"], "C:9");
}

#[test]
fn classify_text_smoke() {
    permpat()
        .args(["--format", "text", "classify", "--group", "A:5", "--depth", "2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("degree 7: D:7"));
}

#[test]
fn verify_catalog_four_golden_shape() {
    let out = stdout_of(&["verify", "--catalog", "4", "--depth", "2"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 30);
    assert_eq!(lines[0], r#"{"check_id":"catalog","scope":"n=4 #01 group=gens:4:()","status":"pass"}"#);
    for line in lines {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass", "{line}");
    }
}

#[test]
fn verify_laws_pass() {
    let out = stdout_of(&["verify", "--laws", "--seed", "0"]);
    assert!(out.lines().count() >= 15);
    assert!(out.lines().all(|l| l.contains(r#""status":"pass""#)), "{out}");
}

#[test]
fn verify_group_with_trivial_second_level() {
    let out = stdout_of(&["verify", "--group", "A:6", "--depth", "2"]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.contains(r#""status":"pass""#)));
}

#[test]
fn verify_skips_exit_zero_with_warning() {
    permpat()
        .args(["verify", "--group", "S:4", "--depth", "9"])
        .assert()
        .success()
        .stdout(predicate::str::contains(r#""status":"skipped""#))
        .stderr(predicate::str::contains("warning: 1 of 2 checks skipped"));
}

#[test]
fn verify_timings_are_opt_in() {
    let plain = stdout_of(&["verify", "--group", "C:5"]);
    assert!(!plain.contains("elapsed_ms"));
    let timed = stdout_of(&["verify", "--group", "C:5", "--timings"]);
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn levels_of_cyclic_group() {
    let v = json_of(&["levels", "--group", "C:5", "--depth", "3"]);
    let orders: Vec<u64> = v["levels"].as_array().unwrap().iter().map(|l| l["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [6, 7, 8]);
}

#[test]
fn levels_of_alternating_five() {
    let v = json_of(&["levels", "--group", "A:5", "--depth", "2"]);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels[0]["order"], 36);
    assert_eq!(levels[1]["order"], 14);
    assert_eq!(strings(&levels[1]["families"]), ["D"]);
}

#[test]
fn levels_of_descending_group() {
    let v = json_of(&["levels", "--group", "Desc:4", "--depth", "2"]);
    let orders: Vec<u64> = v["levels"].as_array().unwrap().iter().map(|l| l["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [2, 2]);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        &["classify", "--group", "gens:6:(1 2 3 4 5);(3 4 5 6)", "--depth", "2"][..],
        &["verify", "--catalog", "3", "--depth", "2"][..],
        &["verify", "--laws", "--seed", "5"][..],
        &["levels", "--group", "SPi:1,2|3,4,5", "--depth", "2"][..],
    ] {
        assert_eq!(stdout_of(args), stdout_of(args), "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = stdout_of(&["--threads", "1", "verify", "--catalog", "4", "--depth", "1"]);
    let many = stdout_of(&["--threads", "4", "verify", "--catalog", "4", "--depth", "1"]);
    assert_eq!(one, many);
}
