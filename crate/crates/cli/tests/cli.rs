use std::io::Write;
use std::process::{Command, Output, Stdio};

fn loopsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopsym")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_loopsym"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().expect("piped").write_all(input.as_bytes()).expect("write stdin");
    child.wait_with_output().expect("binary exits")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).expect("json output")
}

#[test]
fn elementary_symbolic() {
    let o = loopsym(&["e", "--n", "2", "--m", "3", "--k", "2", "--r", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x[1]^(1)*x[2]^(2) + x[1]^(1)*x[3]^(2) + x[2]^(1)*x[3]^(2)");
}

#[test]
fn elementary_at_point() {
    let point = r#"{"n":2,"m":2,"values":[[1,2],[3,"1/2"]]}"#;
    let o = loopsym(&["e", "--n", "2", "--m", "2", "--k", "1", "--r", "1", "--point", point]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = loopsym(&["e", "--n", "2", "--m", "2", "--k", "2", "--r", "1", "--point", point]);
    assert_eq!(stdout(&o).trim(), "1/2");
}

#[test]
fn schur_routes_agree() {
    let run = |method: &str| {
        let o = loopsym(&["schur", "--n", "2", "--m", "3", "--shape", "2,1", "--method", method]);
        assert!(o.status.success(), "{method}: {}", String::from_utf8_lossy(&o.stderr));
        stdout(&o)
    };
    let tab = run("tableaux");
    assert_eq!(tab, run("jt"));
    assert_eq!(tab, run("alternant"));
    assert_eq!(tab.matches('+').count(), 6);
}

#[test]
fn cocharge_and_energy() {
    assert_eq!(stdout(&loopsym(&["cocharge", "3222311111233"])).trim(), "4");
    assert_eq!(stdout(&loopsym(&["cocharge", "3222311111233", "--rule", "classical"])).trim(), "8");
    let o = loopsym(&["energy", "--n", "3", "--tableau", r#"{"rows":[[1,1,1,1,1,2,3,3],[2,2,2,3],[3]]}"#]);
    let v = json(&o);
    assert_eq!(v["energy"], 4);
    assert_eq!(v["minimizers"], serde_json::json!([[[1, 1, 2, 3], [2, 3]]]));
}

#[test]
fn tropical_swap() {
    let o = loopsym(&["trop", "--x", "1,1,1", "--y", "3,2,0"]);
    assert_eq!(stdout(&o), "x' = (1,1,3)\ny' = (1,2,0)\n");
}

#[test]
fn comb_r_methods_agree() {
    let args = |m: &'static str| ["comb-r", "--n", "3", "--b1", "11233", "--b2", "123", "--method", m];
    let trop = stdout(&loopsym(&args("trop")));
    assert_eq!(trop.trim(), "[1,2,3] ⊗ [1,1,2,3,3]");
    assert_eq!(trop, stdout(&loopsym(&args("jdt"))));
}

#[test]
fn boxball_ascii() {
    let o = loopsym(&["boxball", "--positions", "1,2,3,8", "--steps", "4"]);
    let text = stdout(&o);
    let frames: Vec<&str> = text.lines().collect();
    let balls = |f: &str| f.char_indices().filter(|&(_, c)| c == 'o').map(|(i, _)| i).collect::<Vec<_>>();
    assert_eq!(frames.len(), 5);
    assert_eq!(balls(frames[0]), [1, 2, 3, 8]);
    assert_eq!(balls(frames[4]), [10, 15, 16, 17]);
}

#[test]
fn boxball_json_round_trip() {
    let o = loopsym(&["boxball", "--positions", "1,2,3,8", "--steps", "2", "--render", "json"]);
    let text = stdout(&o);
    let last = text.lines().last().expect("frames");
    let again = with_stdin(&["boxball", "--state", "-", "--steps", "0", "--render", "json"], last);
    assert_eq!(stdout(&again).trim(), last);
    let carrier = loopsym(&["boxball", "--positions", "1,2,3,8", "--steps", "2", "--render", "json", "--capacity", "100"]);
    assert_eq!(stdout(&carrier), text);
}

#[test]
fn factor_exact_and_numeric() {
    let o = with_stdin(&["factor", "--input", "-", "--m", "2"], r#"{"n":1,"coeffs":[[[1]],[[3]],[[2]]]}"#);
    let v = json(&o);
    assert_eq!(v["exact"], true);
    assert_eq!(v["values"], serde_json::json!([[1], [2]]));

    let p = r#"{"n":2,"coeffs":[[[1,3],[0,1]],[[2,0],[7,4]],[[0,0],[0,0]]]}"#;
    let o = loopsym(&["factor", "--input", p, "--m", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(&o)["residual"].as_f64().expect("number") <= 1e-8);

    let o = loopsym(&["factor", "--input", r#"{"n":1,"coeffs":[[[1]],[[1]],[[1]]]}"#, "--m", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tnn_reports_violations() {
    let o = loopsym(&["tnn", "--input", r#"{"n":1,"coeffs":[[[1]],[[-1]]]}"#, "--window", "2", "--order", "1"]);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert_eq!(v["violations"][0], serde_json::json!({"rows":[1],"cols":[2],"value":"-1"}));
    let o = loopsym(&["tnn", "--input", r#"{"n":1,"coeffs":[[[1]],[[3]],[[2]]]}"#, "--window", "4", "--order", "3"]);
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn certificate() {
    let cyclo = r#"{"n":1,"coeffs":[[[1]],[[1]],[[1]]]}"#;
    assert_eq!(json(&loopsym(&["certify-schur", "--input", cyclo, "--box", "2x2"]))["passed"], true);
    let v = json(&loopsym(&["certify-schur", "--input", cyclo]));
    assert_eq!(v["passed"], false);
    assert_eq!(v["negatives"][0], serde_json::json!({"r":1,"shape":"(3)","value":"-1"}));
}

#[test]
fn exit_codes() {
    assert_eq!(loopsym(&["bogus"]).status.code(), Some(2));
    assert_eq!(loopsym(&["e", "--n", "2"]).status.code(), Some(2));
    let o = loopsym(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(loopsym(&["cocharge", "122"]).status.code(), Some(1));
    assert_eq!(loopsym(&["hopf-check", "--n", "2", "--max-i", "2", "--unsigned"]).status.code(), Some(1));
    assert!(loopsym(&["hopf-check", "--n", "2", "--max-i", "2"]).status.success());
}

#[test]
fn verify_is_deterministic() {
    let a = loopsym(&["--seed", "7", "verify", "--suite", "jacobian"]);
    let b = loopsym(&["verify", "--suite", "jacobian", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn rmatrix_involution_at_point() {
    let point = r#"{"n":2,"m":2,"values":[[1,2],[3,"1/2"]]}"#;
    let o = loopsym(&["rmatrix", "--n", "2", "--m", "2", "--word", "s1 s1", "--point", point]);
    assert_eq!(json(&o), serde_json::from_str::<serde_json::Value>(point).unwrap());
}
