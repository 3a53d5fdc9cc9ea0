use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use supersym_core::checks::power_sum_product_explicit;
use supersym_core::grassmann::{extract_m_coeffs, VarConfig};
use supersym_core::spar::sp;
use supersym_core::Rational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supersym")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_supersym"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn terms(v: &Value) -> Vec<(String, String)> {
    v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["spar"].as_str().unwrap().to_owned(), t["coeff"].as_str().unwrap().to_owned()))
        .collect()
}

#[test]
fn count_sector() {
    let o = run(&["spar", "count", "--sector", "2,1,1"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout), "11\n");
}

#[test]
fn generic_count_matches_list() {
    let c = run(&["spar", "count", "--generic", "--sector", "2,1,0,1"]);
    let l = json(&run(&["spar", "list", "--generic", "--sector", "2,1,0,1"]));
    let n: usize = String::from_utf8_lossy(&c.stdout).trim().parse().unwrap();
    assert_eq!(n, l["superpartitions"].as_array().unwrap().len());
}

#[test]
fn expand_power_sum_matches_oracle() {
    let o = run(&["expand", "--basis", "p", "--spar", "[2o,0o,0u]"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], "supersym/1");
    assert_eq!(v["basis"], "m");
    let lam = sp("[2o,0o,0u]");
    let s = lam.sector();
    let f = power_sum_product_explicit::<Rational>(&lam, VarConfig::n2(s.max_length()));
    let want: Vec<(String, String)> = {
        let mut w: Vec<_> = extract_m_coeffs(&f, s).unwrap().terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        w.sort_by(|a, b| supersym::json::canonical_cmp(&a.0, &b.0));
        w.into_iter()
            .map(|(k, c)| (k.to_string(), format!("{}/{}", c.numer(), c.denom())))
            .collect()
    };
    assert_eq!(terms(&v), want);
}

#[test]
fn worked_example_from_stdin() {
    let input = r#"{"explicit": {"vars": 3, "terms": [
        {"coeff": "1",  "x": [2,0,0], "word": ["phi1","phi2","theta3"]},
        {"coeff": "1",  "x": [2,0,0], "word": ["phi1","phi3","theta2"]},
        {"coeff": "1",  "x": [0,2,0], "word": ["phi2","phi3","theta1"]},
        {"coeff": "-1", "x": [0,2,0], "word": ["phi1","phi2","theta3"]},
        {"coeff": "-1", "x": [0,0,2], "word": ["phi1","phi3","theta2"]},
        {"coeff": "-1", "x": [0,0,2], "word": ["phi2","phi3","theta1"]}]}}"#;
    let o = run_stdin(&["convert", "--to", "p", "--input", "-", "--minimal-lift"], input);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let got = terms(&json(&o));
    let want = [("[2o,0o,0u]", "1/1"), ("[2b,0o]", "1/1"), ("[2o,0b]", "-1/1")];
    let mut got_sorted = got.clone();
    got_sorted.sort();
    let mut want_sorted: Vec<(String, String)> = want.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    want_sorted.sort();
    assert_eq!(got_sorted, want_sorted);

    let strict = run_stdin(&["convert", "--to", "p", "--input", "-"], input);
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn convert_roundtrip_through_h() {
    let m = r#"{"basis":"m","terms":[{"spar":"[2o,0u]","coeff":"3/2"},{"spar":"[1b,1]","coeff":"-1"}]}"#;
    let h = run(&["convert", "--from", "m", "--to", "h", "--input", m]);
    assert!(h.status.success());
    let h_text = String::from_utf8(h.stdout).unwrap();
    let back = run(&["convert", "--from", "h", "--to", "m", "--input", &h_text]);
    let mut got = terms(&json(&back));
    got.sort();
    assert_eq!(got, [("[1b,1]".to_owned(), "-1/1".to_owned()), ("[2o,0u]".to_owned(), "3/2".to_owned())]);
}

#[test]
fn inner_products() {
    let v = json(&run(&["inner", "--left", "m[2o,0u]", "--right", "h[2o,0u]"]));
    assert_eq!(v["value"], "-1/1");
    let v = json(&run(&["inner", "--left", "m[2o]", "--right", "h[2o]"]));
    assert_eq!(v["value"], "1/1");
    let v = json(&run(&["inner", "--left", "p[1b,1b]", "--right", "p[1b,1b]"]));
    assert_eq!(v["value"], "1/2");
    let v = json(&run(&["inner", "--left", "m[1o,0u]", "--right", "g[1o,0u]", "--alpha", "5/7"]));
    assert_eq!(v["value"], "-1/1");
}

#[test]
fn symbolic_alpha() {
    let v = json(&run(&["expand", "--basis", "g", "--spar", "[1]", "--alpha", "alpha"]));
    assert_eq!(terms(&v), [("[1]".to_owned(), "(1)/(a)".to_owned())]);
}

#[test]
fn verify_duality_passes() {
    let o = run(&["verify", "duality", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["suite"], "duality");
}

#[test]
fn parse_errors_name_the_token() {
    let cases: [(&[&str], &str); 5] = [
        (&["spar", "count", "--sector", "2,q,1"], "\"q\""),
        (&["expand", "--basis", "z", "--spar", "[1]"], "\"z\""),
        (&["expand", "--basis", "p", "--spar", "[1o,1o]"], "[1o,1o]"),
        (&["expand", "--basis", "g", "--spar", "[1]", "--alpha", "x/y"], "x/y"),
        (&["verify", "everything", "--bound", "1"], "everything"),
    ];
    for (args, token) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(token), "{args:?}");
    }
}
