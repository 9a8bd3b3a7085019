use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witt2rep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn class_counts() {
    for (scheme, ring, expected) in [
        ("sl(2)", "truncpoly(gf(2),r=3)", 24),
        ("sl(2)", "zmod(2^3)", 30),
        ("gl(1)", "zmod(2^2)", 2),
        ("gl(2)", "gf(3)", 8),
    ] {
        let o = run(&["classes", "--scheme", scheme, "--ring", ring, "--out", "json"]);
        assert_eq!(o.status.code(), Some(0), "{scheme} {ring}");
        assert_eq!(json(&o)["num_classes"], expected, "{scheme} {ring}");
    }
}

#[test]
fn classes_csv_sizes_sum_to_order() {
    let o = run(&["classes", "--scheme", "sl(2)", "--ring", "equal", "--q", "3", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("class,size,centralizer_order,element_order"));
    let total: u64 = lines.map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 648);
}

#[test]
fn degrees_csv() {
    let o = run(&["degrees", "--scheme", "gl(2)", "--ring", "gf(2)", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dimension,count\n1,2\n2,1\n");
}

#[test]
fn compare_gl2_q2_passes() {
    let o = run(&["compare", "--scheme", "gl(2)", "--q", "2", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["global_equal", "per_orbit_equal", "clifford_matches_oracle", "extension_all", "dim_formula_all"] {
        assert_eq!(v["verdicts"][key], true, "{key}");
    }
    assert_eq!(v["verdicts"]["exploratory"], false);
    assert_eq!(v["config"]["scheme"], "gl(2)");
    assert_eq!(v["rings"].as_array().unwrap().len(), 2);
}

#[test]
fn compare_sl2_q2_is_exploratory() {
    let o = run(&["compare", "--scheme", "sl(2)", "--q", "2", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdicts"]["exploratory"], true);
}

#[test]
fn compare_csv_lists_both_rings() {
    let o = run(&["compare", "--scheme", "gl(2)", "--q", "2", "--out", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("ring,dimension,count\n"));
    assert!(text.contains("truncpoly(gf(2),r=2),6,1"));
    assert!(text.contains("zmod(2^2),6,1"));
}

#[test]
fn bound_refusal_exits_3() {
    let o = run(&["classes", "--scheme", "gl(3)", "--ring", "zmod(3^2)", "--max-order", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1000"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["classes", "--scheme", "foo", "--ring", "gf(2)"]).status.code(), Some(1));
    assert_eq!(run(&["classes", "--scheme", "gl(2)"]).status.code(), Some(1));
    assert_eq!(run(&["classes", "--scheme", "gl(2)", "--ring", "zmod(2^2)", "--q", "3"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--scheme", "gl(2)", "--ring", "zmod(2^3)"]).status.code(), Some(1));
}

#[test]
fn cached_rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["compare", "--scheme", "sl(2)", "--q", "3", "--out", "json", "--cache-dir", d];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let names: Vec<String> = std::fs::read_dir(d).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("table-")));
    assert!(names.iter().any(|n| n.starts_with("report-")));
}

#[test]
fn cached_groups_and_tables_reproduce_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let fresh = run(&["degrees", "--scheme", "sl(2)", "--ring", "mixed", "--q", "3", "--out", "csv"]);
    let warm = run(&["degrees", "--scheme", "sl(2)", "--ring", "mixed", "--q", "3", "--out", "csv", "--cache-dir", d]);
    for e in std::fs::read_dir(d).unwrap() {
        let p = e.unwrap().path();
        if p.file_name().unwrap().to_str().unwrap().starts_with("report-") {
            std::fs::remove_file(p).unwrap();
        }
    }
    let from_cache = run(&["degrees", "--scheme", "sl(2)", "--ring", "mixed", "--q", "3", "--out", "csv", "--cache-dir", d]);
    assert_eq!(fresh.stdout, warm.stdout);
    assert_eq!(fresh.stdout, from_cache.stdout);
}

#[test]
fn sequential_and_parallel_agree() {
    let args = ["degrees", "--scheme", "gl(2)", "--ring", "zmod(2^2)", "--out", "csv"];
    let par = run(&args);
    let mut seq_args = args.to_vec();
    seq_args.extend(["--workers", "1"]);
    let seq = run(&seq_args);
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn verify_mixed_gf4_reports_frobenius_twist() {
    let o = run(&["verify", "--scheme", "gl(2)", "--ring", "witt2(gf(4;x^2+x+1))", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["twist"]["declared"], 1);
    assert_eq!(v["twist"]["holding"], serde_json::json!([1]));
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_equal_characteristic_is_untwisted() {
    let o = run(&["verify", "--scheme", "gl(2)", "--ring", "truncpoly(gf(4),r=2)", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["twist"]["declared"], 0);
    assert_eq!(v["twist"]["holding"], serde_json::json!([0]));
}

#[test]
fn verify_gl1_counts_agree() {
    let o = run(&["verify", "--scheme", "gl(1)", "--ring", "zmod(3^2)", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    for row in json(&o)["orbit_table"].as_array().unwrap() {
        let c = &row["counting"];
        assert_eq!(c["n1"], c["n2"]);
        assert_eq!(c["n1"], c["n3"]);
    }
}

#[test]
fn verify_text_lists_checks() {
    let o = run(&["verify", "--scheme", "sl(2)", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["exp_bijective_onto_kernel", "twist_law", "kernel_characters_injective", "stabilizer_formula", "dim_formula"] {
        assert!(text.contains(&format!("[ok] {name}")), "{name}");
    }
}
