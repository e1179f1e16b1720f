use std::path::PathBuf;
use std::process::{Command, Output};

use mfdo_core::ratpoly::parse;
use serde_json::Value;

fn mfdo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfdo"))
        .args(args)
        .env_remove("MFDO_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = mfdo(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn bs_of_xy_on_det2() {
    let o = mfdo(&["bs", "--space", "det", "--n", "2", "--element", "XY"]);
    assert!(o.status.success());
    assert_eq!(parse(stdout(&o).trim()).unwrap(), parse("X0*(X0+X1+1)").unwrap());
}

#[test]
fn radial_of_y_on_det2() {
    let o = mfdo(&["radial", "--space", "det", "--n", "2", "--a", "0", "--element", "Y"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t^-1 * (th^2 + th)"));
    assert_eq!(lines.next(), Some("= t*(d/dt)^2 + 2*d/dt"));
}

#[test]
fn radial_label_defaults_to_zero() {
    let o = mfdo(&["radial", "--space", "det", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("t^-1 * (th^2 + th)"));
}

#[test]
fn rais_check_reports_both_bounds() {
    let o = mfdo(&["radial", "--space", "det", "--n", "3", "--a", "0,0", "--check-rais"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("j = 2..3       = t^-1 * (th^3 + 3*th^2 + 2*th)  [agrees]"), "{out}");
    assert!(out.contains("j = 2..2       = t^-1 * (th^2 + th)  [differs]"), "{out}");
}

#[test]
fn kernel_generators_listed() {
    let v = json(&["radial", "--space", "quad", "--m", "4", "--a", "2", "--kernel"]);
    let gens = v["kernel"].as_array().unwrap();
    assert_eq!(gens.len(), 3);
    assert!(gens.iter().all(|g| g["in_kernel"] == Value::Bool(true)));
}

#[test]
fn exit_codes() {
    assert_eq!(mfdo(&["bs", "--space", "det", "--n", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(mfdo(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mfdo(&["bs", "--space", "nope", "--element", "X"]).status.code(), Some(1));
    assert_eq!(mfdo(&["bs", "--space", "det", "--n", "1", "--element", "X"]).status.code(), Some(1));
    assert_eq!(mfdo(&["bs", "--space", "g2", "--element", "XY"]).status.code(), Some(1));
    assert_eq!(mfdo(&["bs", "--space", "det", "--n", "2", "--element", "XQ"]).status.code(), Some(1));
}

#[test]
fn env_selects_json() {
    let o = Command::new(env!("CARGO_BIN_EXE_mfdo"))
        .args(["catalog", "--name", "E7"])
        .env("MFDO_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d_param"], "8");
}

#[test]
fn user_supplied_b_y() {
    let v = json(&["bs", "--space", "g2", "--degrees", "2,1", "--by", "X0*(X0+X1+5/2)", "--element", "XY"]);
    assert_eq!(parse(v["parts"]["0"].as_str().unwrap()).unwrap(), parse("X0*(X0+X1+5/2)").unwrap());
}

#[test]
fn printed_polynomials_reparse() {
    let cases: [&[&str]; 4] = [
        &["bs", "--space", "det", "--n", "3", "--element", "XinvYX^2E"],
        &["bs", "--space", "sym", "--n", "3", "--element", "YYXE"],
        &["uxy", "--space", "pf", "--p", "3"],
        &["uxy", "--space", "E7"],
    ];
    for args in cases {
        let v = json(args);
        let mut strings = Vec::new();
        collect_strings(&v, &mut strings);
        assert!(strings.len() >= 2);
        for s in &strings {
            let p = parse(s).unwrap_or_else(|e| panic!("`{s}` does not parse: {e}"));
            assert_eq!(&p.to_string(), s);
        }
    }
    // text output of bs is a bare polynomial
    let o = mfdo(&["bs", "--space", "det", "--n", "3", "--element", "YX"]);
    let p = parse(stdout(&o).trim()).unwrap();
    assert_eq!(p.to_string(), stdout(&o).trim());
}

fn collect_strings(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| collect_strings(x, out)),
        Value::Object(m) => m
            .iter()
            .filter(|(k, _)| !matches!(k.as_str(), "element" | "name"))
            .for_each(|(_, x)| collect_strings(x, out)),
        _ => {}
    }
}

#[test]
fn smith_words_and_strategies_agree() {
    let base = ["smith", "--f", "t^2 + X1*t", "--n", "2", "--ring", "X1", "--word", "xyexy"];
    let reference = stdout(&mfdo(&base));
    for s in ["leftmost", "rightmost", "random"] {
        let mut args = base.to_vec();
        args.extend(["--strategy", s, "--seed", "3"]);
        assert_eq!(stdout(&mfdo(&args)), reference, "{s}");
    }
    let casimir = stdout(&mfdo(&["smith", "--f", "t^2 + X1*t", "--n", "2", "--ring", "X1", "--casimir"]));
    assert!(casimir.contains("central: yes"));
}

#[test]
fn oracle_matches_formula() {
    for inst in ["det2", "det3", "quad5", "sym2", "pf4"] {
        let v = json(&["oracle", "--instance", inst]);
        assert_eq!(v["proportional"], Value::Bool(true), "{inst}");
    }
    let too_small = mfdo(&["oracle", "--instance", "det3", "--grid", "2"]);
    assert_eq!(too_small.status.code(), Some(1));
}

#[test]
fn verify_all_passes() {
    let o = mfdo(&["verify", "--suite", "all", "--seed", "7"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.contains("6 of 6 suites passed (seed 7)"), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(" PASS ")).count(), 6);
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Set `MFDO_UPDATE_GOLDEN=1` to rewrite the files.
#[test]
fn json_matches_golden_files() {
    let cases: [(&str, &[&str]); 6] = [
        ("bs_det2_xy", &["bs", "--space", "det", "--n", "2", "--element", "XY"]),
        ("radial_det3_y", &["radial", "--space", "det", "--n", "3", "--a", "0,0", "--element", "Y", "--check-rais"]),
        ("uxy_quad4", &["uxy", "--space", "quad", "--m", "4"]),
        ("catalog_det3", &["catalog", "--name", "det", "--n", "3"]),
        ("oracle_sym2", &["oracle", "--instance", "sym2"]),
        ("smith_sl2", &["smith", "--f", "2*t", "--n", "2", "--word", "xy", "--casimir"]),
    ];
    let update = std::env::var_os("MFDO_UPDATE_GOLDEN").is_some();
    for (name, args) in cases {
        let got = serde_json::to_string_pretty(&json(args)).unwrap() + "\n";
        let path = golden_dir().join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(got, want, "{name}");
        // two runs give identical bytes
        assert_eq!(serde_json::to_string_pretty(&json(args)).unwrap() + "\n", got);
    }
}
