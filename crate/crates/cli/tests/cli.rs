use assert_cmd::Command;

fn lears() -> Command {
    Command::cargo_bin("lears").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = lears()
        .args(args)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn enumerate_bc2_over_z() {
    let out = stdout(&["enumerate", "--type", "BC2", "--group", "Z"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(
        lines.iter().filter(|l| l.ends_with("reduced=true")).count(),
        1
    );
    assert!(lines.iter().any(|l| l.contains("E=2G+{1} reduced=true")));
}

#[test]
fn catalog_lists_fourteen() {
    let out = stdout(&["catalog", "--index", "3"]);
    assert_eq!(out.lines().count(), 14);
    assert!(out.contains("BC3(2)"));
    assert!(out.contains("G2(3)"));
}

#[test]
fn realize_g2_twisted_full_pipeline() {
    let out = stdout(&[
        "realize",
        "--label",
        "G2(3)",
        "--group",
        "Z",
        "--window",
        "2",
        "--check",
        "jacobi,roots,trace",
    ]);
    assert!(out.contains("prediction: match"));
    assert!(out.contains("trace identity"));
    assert!(out.contains("overall: pass"));
}

#[test]
fn structure_constant_dump_is_stable() {
    let a = stdout(&[
        "realize",
        "--label",
        "A",
        "--index",
        "2",
        "--window",
        "1",
        "--dump-structure-constants",
    ]);
    let b = stdout(&[
        "realize",
        "--label",
        "A2(1)",
        "--window",
        "1",
        "--dump-structure-constants",
    ]);
    assert_eq!(a, b);
    let table: Vec<&str> = a
        .lines()
        .filter(|l| !l.starts_with('#') && l.split(' ').count() == 4)
        .collect();
    assert!(!table.is_empty());
    assert!(table
        .iter()
        .all(|l| l.split(' ').take(3).all(|t| t.parse::<usize>().is_ok())));
}

#[test]
fn sampled_reports_are_byte_identical() {
    let args = [
        "--format",
        "structured",
        "realize",
        "--label",
        "B(2)",
        "--index",
        "2",
        "--samples",
        "50",
        "--seed",
        "11",
    ];
    let (a, b) = (stdout(&args), stdout(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema_version"].as_u64(), Some(1));
    assert_eq!(v["command"], "realize");
    assert_eq!(v["passed"], true);
}

#[test]
fn samples_without_seed_is_a_usage_error() {
    lears()
        .args(["realize", "--label", "A", "--samples", "5"])
        .assert()
        .code(2);
}

#[test]
fn construct_then_decompose_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.txt");
    lears()
        .args([
            "construct",
            "--spec",
            "type=BC1 group=Z S=G+1 E=2G+{1}",
            "--window",
            "4",
            "--output",
        ])
        .arg(&file)
        .assert()
        .success();
    let out = lears()
        .args(["decompose", "--input"])
        .arg(&file)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let first = String::from_utf8(out).unwrap();
    assert!(
        first.starts_with("type=BC1 group=Z S=G E=2G+{1} reduced=true"),
        "{first}"
    );
}

#[test]
fn verify_fails_on_a_damaged_window() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.txt");
    lears()
        .args([
            "construct",
            "--spec",
            "type=B2 group=Z S=G L=2G window=2",
            "--output",
        ])
        .arg(&file)
        .assert()
        .success();
    let text = std::fs::read_to_string(&file).unwrap();
    let mut lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    lines.remove(lines.len() / 2);
    std::fs::write(&file, lines.join("\n") + "\n").unwrap();
    lears()
        .args(["verify", "--input"])
        .arg(&file)
        .assert()
        .code(1);
}

#[test]
fn bad_inputs_exit_two() {
    lears()
        .args(["enumerate", "--type", "Q7", "--group", "Z"])
        .assert()
        .code(2);
    lears()
        .args(["construct", "--spec", "type=B2 group=Z S=G L=3G"])
        .assert()
        .code(2);
    lears()
        .args([
            "realize", "--label", "BC", "--index", "1", "--group", "Zinv(2)",
        ])
        .assert()
        .code(2);
    lears().args(["frobnicate"]).assert().code(2);
}

#[test]
fn similar_and_classify() {
    lears()
        .args([
            "similar",
            "--spec",
            "type=B2 group=Z S=G L=2G",
            "--spec",
            "type=B2 group=Z*2 S=G L=2G+2",
        ])
        .assert()
        .success();
    lears()
        .args([
            "similar",
            "--spec",
            "type=B2 group=Z S=G L=2G",
            "--spec",
            "type=B2 group=Z S=G L=G",
        ])
        .assert()
        .code(1);
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for (f, spec) in [
        (&a, "type=G2 group=Z S=G L=3G window=4"),
        (&b, "type=G2 group=Z S=G+1 L=3G+3 window=4"),
    ] {
        lears()
            .args(["construct", "--spec", spec, "--output"])
            .arg(f)
            .assert()
            .success();
    }
    let out = lears()
        .args(["classify", "--input"])
        .arg(&a)
        .arg("--with")
        .arg(&b)
        .assert()
        .success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.starts_with("isomorphic"));
    let inv = stdout(&["classify", "--spec", "type=G2 group=Z S=G L=3G"]);
    assert!(inv.contains("<S>/<L>=Z3"));
}

#[test]
fn thread_cap_does_not_change_reports() {
    let args = ["realize", "--label", "BC", "--index", "2"];
    let one = lears()
        .env("RF_THREADS", "1")
        .args(args)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let many = lears()
        .env("RF_THREADS", "4")
        .args(args)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(one, many);
    lears()
        .env("RF_THREADS", "zero")
        .args(args)
        .assert()
        .code(2);
}
