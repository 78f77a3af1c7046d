use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn orbit_size() {
    let out = run(&["orbit", "--seed", "rho23_6"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["size"], 6);
    let out = run(&["orbit", "--seed", "rhot4_6"]);
    assert_eq!(json(&out)["size"], 8);
}

#[test]
fn homology_of_delta4_matches_beta4() {
    let d4 = json(&run(&["homology", "--coloring", "rho23_8", "--word", "d4"]));
    let b4 = json(&run(&["homology", "--coloring", "rho23_8", "--word", "b4"]));
    assert_eq!(d4["matrix"], b4["matrix"]);
    assert_eq!(d4["identity"], false);
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(run(&["act", "bogus", "b1"]).status.code(), Some(2));
    assert_eq!(run(&["act", "rho23_6", "b9"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn exit_codes_for_checks() {
    assert_eq!(json(&run(&["liftable", "rho23_6", "b2"]))["liftable"], true);
    assert_eq!(json(&run(&["liftable", "rho23_6", "b3"]))["liftable"], false);
    assert_eq!(run(&["moves", "derive", "III", "--n", "8"]).status.code(), Some(3));
    assert_eq!(run(&["moves", "validate", "--n", "12"]).status.code(), Some(1));
}

#[test]
fn reduce_then_check_certificate() {
    let out = run(&["reduce", "rho23_6", "b2 b3^2 b2^-1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["status"], "CERTIFIED");
    let path = std::env::temp_dir().join(format!("braidcover-cert-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let check = run(&["check-cert", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stderr));
}

#[test]
fn verify_single_criterion() {
    let out = run(&["verify", "--only", "1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["pass"], true);
    let table = run(&["--table", "verify", "--only", "1"]);
    assert!(String::from_utf8_lossy(&table.stdout).starts_with("criterion  1 PASS"));
}

#[test]
fn complex_dot() {
    let out = run(&["complex", "--seed", "rho23_6", "--dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("style=bold").count(), 5);
}
