use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const TRACE_INPUT: &str = "0.389015[282749894,960538227]";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ivfmt"));
    c.env_remove("IVFMT_FORMAT");
    c
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("ivfmt runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stderr.is_empty());
    String::from_utf8(out.stdout).unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn notation_rows_parse_to_golden_values() {
    let file = golden("notations.txt");
    let got = stdout(&[
        "parse",
        "--allow-single-number",
        "--file",
        file.to_str().unwrap(),
    ]);
    assert_eq!(
        got,
        fs::read_to_string(golden("notations.parse.txt")).unwrap()
    );
}

#[test]
fn notation_rows_render_back_byte_for_byte() {
    let rows = fs::read_to_string(golden("notations.txt")).unwrap();
    let parsed = fs::read_to_string(golden("notations.parse.txt")).unwrap();
    for (text, line) in rows.lines().zip(parsed.lines()) {
        let kind = line.split('\t').nth(1).unwrap();
        let got = stdout(&["convert", "--allow-single-number", "--to", kind, text]);
        assert_eq!(got, format!("{text}\n"));
    }
}

#[test]
fn inflation_examples() {
    let file = golden("inflation.txt");
    let got = stdout(&["inflate", "--file", file.to_str().unwrap()]);
    assert_eq!(
        got,
        fs::read_to_string(golden("inflation.out.txt")).unwrap()
    );
}

#[test]
fn analyze_tsv_matches_golden_trace() {
    let got = stdout(&["analyze", "--format", "tsv", TRACE_INPUT]);
    assert_eq!(got, fs::read_to_string(golden("trace.tsv")).unwrap());
    assert_eq!(got.lines().count(), 17);
}

#[test]
fn analyze_plain_reports_cut() {
    let got = stdout(&["analyze", TRACE_INPUT]);
    assert!(got.ends_with("keep row 7: 0.389015[28,97]\n"), "{got}");
}

#[test]
fn analyze_precision_override() {
    let got = stdout(&[
        "analyze",
        "--format",
        "tsv",
        "--precision",
        "3",
        "[0.3,0.4]",
    ]);
    assert_eq!(
        got,
        "step\tlo\thi\tinfo\tloss\n0\t0.3\t0.4\t1.000\t\n1\t0\t1\t0.000\t1.000\n"
    );
}

#[test]
fn convert_golden_ratio() {
    let got = stdout(&[
        "convert",
        "--to",
        "factored",
        "[+0.6180339887498946804,+0.6180339887498950136]",
    ]);
    assert_eq!(got, "+0.61803398874989[46804,50136]\n");
    let back = stdout(&["convert", "--to", "classic", got.trim_end()]);
    assert_eq!(back, "[+0.6180339887498946804,+0.6180339887498950136]\n");
}

#[test]
fn convert_output_parses_to_same_interval() {
    for (input, to) in [
        ("[1.233,1.235]", "star"),
        ("[1.233,1.235]", "range"),
        ("[1.234,1.235]", "plus"),
        ("[1.2335,1.2345]", "tilde"),
        ("[1.233,1.236]", "error"),
        ("[0.12345,0.12389]", "factored"),
    ] {
        let converted = stdout(&["convert", "--to", to, input]);
        let parsed = stdout(&["parse", converted.trim_end()]);
        assert_eq!(
            parsed.split('\t').next().unwrap(),
            input,
            "{to}: {converted}"
        );
    }
}

#[test]
fn recommend_shortens_trace_interval() {
    assert_eq!(stdout(&["recommend", TRACE_INPUT]), "0.389015[28,97]\n");
    assert_eq!(
        stdout(&["recommend", "--bracket-digits", "1", TRACE_INPUT]),
        "0.389015+\n"
    );
}

#[test]
fn recommend_json_fields() {
    let got = stdout(&["recommend", "--format", "json", TRACE_INPUT]);
    let v: serde_json::Value = serde_json::from_str(got.trim_end()).unwrap();
    assert_eq!(v["output"], "0.389015[28,97]");
    assert_eq!(v["kind"], "factored");
    let loss = v["loss"].as_f64().unwrap();
    assert!((loss - 0.007755002).abs() < 1e-9, "{loss}");
}

#[test]
fn stdin_lines_skip_blanks_and_comments() {
    let out = with_stdin(
        &["convert", "--to", "classic", "-"],
        "# header\n\n1.23[3,5]\n  1.234*  \n",
    );
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "[1.233,1.235]\n[1.233,1.235]\n"
    );
}

#[test]
fn env_sets_default_format() {
    let out = bin()
        .env("IVFMT_FORMAT", "tsv")
        .args(["convert", "--to", "plus", "[1.234,1.235]"])
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "input\toutput\n[1.234,1.235]\t1.234+\n"
    );
}

#[test]
fn parse_json_output() {
    let got = stdout(&["parse", "--format", "json", "1.234±2"]);
    let v: serde_json::Value = serde_json::from_str(got.trim_end()).unwrap();
    assert_eq!(v["parsed"]["kind"], "range");
    assert_eq!(v["parsed"]["interval"]["lo"], "1.232");
    assert_eq!(v["parsed"]["interval"]["hi"], "1.236");
}

#[test]
fn single_number_needs_opt_in() {
    let out = run(&["parse", "1.234"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.234"));
    let out = run(&["parse", "--from", "single-number", "1.234"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn from_filter_restricts_notations() {
    let out = run(&["parse", "--from", "classic", "1.234*"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert_eq!(
        stdout(&["parse", "--from", "classic,star", "1.234*"]),
        "[1.233,1.235]\tstar\n"
    );
}

#[test]
fn domain_errors_exit_1_with_no_stdout() {
    for args in [
        &["parse", "[1.235,1.233]"][..],
        &["parse", "1.2.3"],
        &["convert", "--to", "plus", "[1.233,1.236]"],
        &["inflate", "[0,0]"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.txt");
    fs::write(&path, "1.23[3,5]\n# fine\nnot an interval\n").unwrap();
    let out = run(&["parse", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 3") && err.contains("not an interval"),
        "{err}"
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["recommend", "--bracket-digits", "0", "[1,2]"][..],
        &["analyze", "--threshold", "1.5", "[1,2]"],
        &["convert", "--to", "octal", "[1,2]"],
        &["frobnicate"],
        &["parse"],
        &["simulate", "--k", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn simulate_is_deterministic() {
    let args = [
        "simulate",
        "--j",
        "6",
        "--k",
        "9",
        "--samples",
        "20000",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let a = stdout(&args);
    let b = bin()
        .env("RAYON_NUM_THREADS", "1")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(a, String::from_utf8(b.stdout).unwrap());
    let v: serde_json::Value = serde_json::from_str(a.trim_end()).unwrap();
    assert_eq!(v["samples_used"], 20000);
    let units = v["mean_width_in_units"].as_f64().unwrap();
    assert!((units - 11.0 / 3.0).abs() < 0.1, "{units}");
    assert_eq!(v["loss_ratios"].as_array().unwrap().len(), 7);
    let other = stdout(&[
        "simulate",
        "--samples",
        "20000",
        "--seed",
        "43",
        "--format",
        "json",
    ]);
    assert_ne!(a, other);
}

#[test]
fn simulate_tsv_summary() {
    let got = stdout(&[
        "simulate",
        "--j",
        "2",
        "--k",
        "2",
        "--samples",
        "1000",
        "--format",
        "tsv",
    ]);
    let lines: Vec<_> = got.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("j\tk\tsamples\tseed"));
    assert!(lines[1].starts_with("2\t2\t1000\t42\t"));
}

#[test]
fn negative_inputs_follow_double_dash() {
    assert_eq!(
        stdout(&["parse", "--", "-1.2[5,3]"]),
        "[-1.25,-1.23]\tfactored\n"
    );
}
