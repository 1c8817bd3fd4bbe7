use std::process::Command;

use polarinv_cli::{run, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_UNSUPPORTED, EXIT_USAGE};

fn call(args: &[&str]) -> Outcome {
    call_with_stdin(args, "")
}

fn call_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("polarinv").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn stdout_of(args: &[&str]) -> String {
    let out = call(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout.trim_end().to_string()
}

#[test]
fn disc_of_cubic() {
    assert_eq!(stdout_of(&["disc", "--f", "x^3+y^3", "--vars", "x,y"]), "-27");
    assert_eq!(stdout_of(&["disc", "--f", "x^2 - y^2"]), "4");
    assert_eq!(stdout_of(&["disc", "--f", "(x-y)^2*(x+y)"]), "0");
}

#[test]
fn nonexistent_hyperhessian_is_a_domain_error() {
    let out = call(&["hyperhessian", "--f", "x^4 - 2*x^3*y + y^4", "--K", "3,1"]);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert!(out.stderr.contains("does not exist"), "{}", out.stderr);
    assert!(out.stderr.contains("4x2"), "{}", out.stderr);
}

#[test]
fn unsupported_format_exit_code() {
    let entries: Vec<String> = (0..27).map(|i| format!("\"{}\"", i % 5)).collect();
    let doc = format!(r#"{{"shape":[3,3,3],"vars":[],"entries":[{}]}}"#, entries.join(","));
    let out = call_with_stdin(&["hyperdet", "--tensor", "-"], &doc);
    assert_eq!(out.code, EXIT_UNSUPPORTED);
    assert!(out.stderr.contains("3x3x3"));
}

#[test]
fn usage_errors() {
    let out = call(&["disc", "--f", "x^-1"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("column 3"), "{}", out.stderr);
    assert_eq!(call(&["disc", "--f", "x + z"]).code, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(call(&["disc"]).code, EXIT_USAGE);
    assert_eq!(call(&["wronskian", "--f", "x^2", "--f", "y^2"]).code, EXIT_USAGE);
    assert_eq!(call(&["verify", "--suite", "nope"]).code, EXIT_USAGE);
    assert_eq!(call(&["hyperdet", "--tensor", "/nonexistent/file.json"]).code, EXIT_USAGE);
    assert_eq!(call(&["--help"]).code, EXIT_OK);
}

#[test]
fn polarize_then_hyperdet() {
    let cubic = "c30*x^3 + c21*x^2*y + c12*x*y^2 + c03*y^3";
    let params = "c30,c21,c12,c03";
    let t = stdout_of(&["polarize", "--f", cubic, "--params", params, "--K", "1,1,1", "--json"]);
    assert!(t.starts_with(r#"{"shape":[2,2,2],"#));
    assert!(t.contains(r#""6*c30","2*c21","2*c21","2*c12""#));
    let via_tensor = call_with_stdin(&["hyperdet", "--tensor", "-"], &t);
    assert_eq!(via_tensor.code, EXIT_OK);
    let direct = stdout_of(&["hyperhessian", "--f", cubic, "--params", params, "--K", "1,1,1"]);
    assert_eq!(via_tensor.stdout.trim_end(), direct);
    let text = stdout_of(&["polarize", "--f", cubic, "--params", params, "--K", "1,1,1"]);
    assert!(text.starts_with("shape 2x2x2\n[0,0,0] 6*c30"));
}

#[test]
fn classical_commands() {
    assert_eq!(stdout_of(&["resultant", "--f", "x - y", "--f", "x + y"]), "2");
    assert_eq!(stdout_of(&["wronskian", "--f", "x^2", "--f", "x*y", "--f", "y^2"]), "2");
    assert_eq!(stdout_of(&["hankel", "--f", "x^4 + x^2*y^2 + y^4"]), "280");
    assert_eq!(stdout_of(&["apolar", "--f", "x^4 + y^4"]), "12");
    assert_eq!(stdout_of(&["hyperresultant", "--f", "x^2", "--f", "y^2"]), "16");
    assert_eq!(stdout_of(&["hyperhessian", "--f", "a*x^2 + b*x*y + c*y^2", "--params", "a,b,c", "--K", "1,1"]), "4*a*c - b^2");
}

#[test]
fn jacobi_commands() {
    assert_eq!(stdout_of(&["jacobi", "--f", "x*y", "--steps", "1"]), "shape 2\n[0] y\n[1] x");
    let j = stdout_of(&["jacobi", "--f", "x^2", "--f", "x*y", "--f", "y^2", "--K", "1,1", "--json"]);
    assert!(j.starts_with(r#"{"shape":[2,2,3],"#), "{j}");
    assert_eq!(call(&["jacobi", "--f", "x*y"]).code, EXIT_USAGE);
}

#[test]
fn gramm_and_project() {
    let id = r#"{"shape":[2,2],"vars":[],"entries":["1","0","0","1"]}"#;
    let g = call_with_stdin(&["gramm", "--tensor", "-", "--vectors", "1,0;0,1", "--json"], id);
    assert_eq!(g.code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&g.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["base"], "1");
    assert_eq!(doc["exponent"], "1/2");

    let f = r#"{"shape":[2,2],"vars":[],"entries":["1","4","-2","3"]}"#;
    let skew = call_with_stdin(&["gramm", "--tensor", "-", "--vectors", "1,2;0,5", "--k", "1"], f);
    assert_eq!(skew.stdout.trim_end(), "(225)^(1/2)");
    let p = call_with_stdin(&["project", "--tensor", "-", "--k", "1", "--json"], f);
    assert_eq!(p.stdout.trim_end(), r#"{"shape":[2,2],"vars":[],"entries":["0","3","-3","0"]}"#);
}

#[test]
fn verify_report_is_deterministic_and_versioned() {
    let args = ["verify", "--suite", "prop41", "--seed", "7", "--trials", "20", "--json"];
    let a = call(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stdout);
    assert_eq!(a, call(&args));
    let doc: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["suite"], "prop41");
    assert_eq!(doc["seed"], 7);
    let ids = doc["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 2);
    for rec in ids {
        assert_eq!(rec["pass"], true);
        assert_eq!(rec["trials"], 20);
        assert!(rec["constant"].as_str().unwrap().starts_with("+2^"));
    }
    let text = call(&["verify", "--suite", "prop21", "--seed", "7", "--trials", "10"]);
    assert!(text.stdout.contains("PASS prop21.hyperresultant_over_resultant"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_polarinv");
    let ok = Command::new(bin).args(["disc", "--f", "x^3+y^3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "-27\n");
    let bad = Command::new(bin)
        .args(["hyperhessian", "--f", "x^4 + y^4", "--K", "3,1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_DOMAIN));
}
