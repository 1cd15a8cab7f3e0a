use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-census"))
        .args(args)
        .env_remove("GALOIS_CENSUS_CEILING")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is one json object")
}

#[test]
fn verify_lemmas_prints_one_pass_line_per_case() {
    let o = run(&["verify-lemmas", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3 * 4);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")));
    assert!(text.contains("leading-in-last n=5 expected=3125 found=3125"));
}

#[test]
fn census_csv_has_one_row_per_height() {
    let o = run(&["census", "--n", "3", "--h-list", "3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,H,total,e_lower,e_upper,m_count,an_contained,undecided,elapsed_ms");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("3,3,343,"));
    assert!(lines[2].starts_with("3,4,729,"));
}

#[test]
fn census_over_ceiling_exits_2() {
    let o = run(&["census", "--n", "6", "--h-list", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
}

#[test]
fn ceiling_comes_from_environment() {
    let bin = env!("CARGO_BIN_EXE_galois-census");
    let o = Command::new(bin)
        .args(["census", "--n", "2", "--h", "3"])
        .env("GALOIS_CENSUS_CEILING", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(bin)
        .args(["census", "--n", "2", "--h", "3", "--force"])
        .env("GALOIS_CENSUS_CEILING", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(bin)
        .args(["census", "--n", "2", "--h", "3"])
        .env("GALOIS_CENSUS_CEILING", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1_with_one_line() {
    for args in [
        vec!["census", "--n", "3"],
        vec!["census", "--n", "3", "--h", "2", "--bogus"],
        vec!["classify", "2x^2 + 1"],
        vec!["lines", "--n", "3", "--prefix", "0", "--d", "0,0,1", "--h", "4"],
        vec!["verify-lemmas", "--n-max", "9"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1, "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["census", "--help"]).status.code(), Some(0));
}

#[test]
fn classify_reports_verdict_and_discriminant() {
    let v = json(&run(&["classify", "x^3 - 3x + 1"]));
    assert_eq!(v["verdict"], "CertifiedNonSn");
    assert_eq!(v["reason"]["kind"], "disc_square");
    assert_eq!(v["disc"], "81");
    let v = json(&run(&["classify", "[0,1,1]"]));
    assert_eq!(v["verdict"], "CertifiedSn");
    assert_eq!(v["reason"]["full_cycle_prime"], 2);
    let v = json(&run(&["classify", "x^5 - 2"]));
    assert_eq!(v["verdict"], "Undecided");
    let v = json(&run(&["classify", "x^4 - 2"]));
    assert_eq!(v["reason"]["group"], "D4");
}

#[test]
fn surface_and_lines_json() {
    let v = json(&run(&["surface", "--n", "3", "--prefix", "0", "--h", "1"]));
    assert_eq!(v["points"], 3);
    assert_eq!(v["params"]["H"], 1);
    let v = json(&run(&["lines", "--n", "3", "--prefix", "0", "--d", "0,1,0", "--h", "4"]));
    assert_eq!(v["points"], 5);
    let v = json(&run(&["lines", "--n", "3", "--prefix", "0", "--d", "1,0,-1", "--h", "10"]));
    assert_eq!(v["points"], 0);
}

#[test]
fn seeded_surface_is_reproducible() {
    let args = ["surface", "--n", "4", "--seed", "42", "--h-list", "20,40"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["fit"]["slope"].is_number());
}

#[test]
fn json_format_is_a_single_object_everywhere() {
    for args in [
        vec!["census", "--n", "2", "--h", "2", "--format", "json"],
        vec!["classify", "x^2 + 1", "--format", "json"],
        vec!["surface", "--n", "3", "--prefix", "1", "--h", "3", "--format", "json"],
        vec!["lines", "--n", "3", "--prefix", "1", "--d", "1,1,0", "--h", "3", "--format", "json"],
        vec!["verify-lemmas", "--n-max", "3", "--format", "json"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(json(&o).is_object(), "{args:?}");
    }
}

#[test]
fn census_output_is_identical_across_partitions() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for parts in ["1", "2", "8"] {
        let path = dir.path().join(format!("rows{parts}.csv"));
        let o = run(&[
            "census", "--n", "3", "--h-list", "4,6", "--partitions", parts, "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn fit_reads_census_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let p = path.to_str().unwrap();
    let o = run(&["census", "--n", "3", "--h-list", "5,10", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&run(&["fit", "--in", p, "--counter", "e_upper"]));
    assert!(v["slope"].as_f64().unwrap() > 1.0);
    assert!(v["intercept"].is_number());
    assert!(v["residual"].is_number());
    assert_eq!(run(&["fit", "--in", p, "--counter", "nope"]).status.code(), Some(1));
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        run(&["fit", "--in", missing.to_str().unwrap()]).status.code(),
        Some(1)
    );
}
