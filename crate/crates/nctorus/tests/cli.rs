use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nctorus"))
}

fn param(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nctorus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn zeta3() -> PathBuf {
    param("zeta3.json", r#"{ "g": 2, "N": 3, "M": [[0, 1], [0, 0]] }"#)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn star(p: &Path, a: &str, b: &str) -> String {
    let o = run(&["star", "mul", "--param", p.to_str().unwrap(), a, b]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn star_of_generators_shows_the_root_of_unity() {
    let p = zeta3();
    assert_eq!(star(&p, "t1", "t2"), "(ζ3)·t1*t2");
    assert_eq!(star(&p, "t2", "t1"), "t1*t2");
}

#[test]
fn identity_operand_returns_the_other_operand() {
    let p = zeta3();
    let f = "t1 + 2*t2^-1";
    let canonical = star(&p, f, "1");
    assert_eq!(star(&p, "1", f), canonical);
    assert_eq!(canonical, "2·t2^-1 + t1");
}

#[test]
fn scripted_triple_product_is_associative() {
    let p = zeta3();
    let (f, h, k) = ("t1 + 2*t2^-1", "t1*t2 - i*t2", "(1/2)*t1^-1 + ζ6*t2");
    let left = star(&p, &star(&p, f, h), k);
    let right = star(&p, f, &star(&p, h, k));
    assert_eq!(left, right);
}

#[test]
fn qweyl_words_multiply_in_normal_form() {
    let p = zeta3();
    let path = p.to_str().unwrap();
    let o = run(&["qweyl", "mul", "--param", path, "--side", "nc", "t1*g2*t1", "t2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "t1^2*t2*g2");
    let o = run(&["qweyl", "mul", "--param", path, "--side", "nc", "t2", "t1"]);
    assert_eq!(stdout(&o), "(ζ3^2)·t1*t2");
    let o = run(&["qweyl", "mul", "--param", path, "--side", "gerby", "gh2", "gh1"]);
    assert_eq!(stdout(&o), "(ζ3^2)·gh1*gh2");
}

#[test]
fn qweyl_with_period_matrix_reports_the_scalar() {
    let p = param(
        "q.json",
        r#"{ "g": 1, "N": 2, "M": [[1]], "Q": [[[2.0, 0.0]]] }"#,
    );
    let o = run(&["qweyl", "mul", "--param", p.to_str().unwrap(), "g1", "t1"]);
    assert_eq!(stdout(&o), "(2+0i)·t1*g1");
}

#[test]
fn param_analyze_reports_the_lattice() {
    let o = run(&["param", "analyze", "--param", zeta3().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["K_hat_invariant_factors"], serde_json::json!([3, 3]));
    assert_eq!(v["H_hat_basis"], serde_json::json!([[3, 0], [0, 3]]));
    assert_eq!(v["sharp_bijective"], serde_json::json!(true));

    let trivial = param("zero.json", r#"{ "g": 3, "N": 4, "M": [[0,0,0],[0,0,0],[0,0,0]] }"#);
    let v: serde_json::Value = serde_json::from_slice(&run(&["param", "analyze", "--param", trivial.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(v["K_hat_invariant_factors"], serde_json::json!([]));
}

#[test]
fn malformed_inputs_exit_2_with_a_position() {
    let bad = param("bad.json", "{ \"g\": 2,\n  \"N\": 3,\n  \"M\": [[0, 1], [0 0]] }");
    let o = run(&["param", "analyze", "--param", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = run(&["star", "mul", "--param", zeta3().to_str().unwrap(), "t1 + t3", "t1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 6"), "{}", stderr(&o));

    let o = run(&["verify", "--scope", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--grid", "huge"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fm_demo_reports_every_check() {
    let p = param("b4.json", r#"{ "g": 2, "N": 4, "M": [[1, 2], [2, 3]] }"#);
    let o = run(&["fm", "demo", "--param", p.to_str().unwrap(), "--B", "4", "--seed", "7", "--grid", "small"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["B"], serde_json::json!([4]));
    assert_eq!(v["holds"], serde_json::json!(true));
    let names: Vec<&str> = v["properties"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"factorization") && names.contains(&"counit_round_trip"));

    // (Z/3)^2 does not embed in the dual of Z/4.
    let o = run(&["fm", "demo", "--param", zeta3().to_str().unwrap(), "--B", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fm", "demo", "--param", zeta3().to_str().unwrap(), "--B", "3,3", "--grid", "small"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn small_grid_verify_is_reproducible() {
    let args = ["verify", "--scope", "finite-fm", "--seed", "7", "--grid", "small", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["scopes"][0]["scope"], serde_json::json!("finite-fm"));
}

#[test]
fn corrupted_cocycle_exits_1_with_a_witness() {
    let o = run(&["verify", "twisted-equivariant", "--grid", "small", "--mutate", "phi"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cocycle identity fails at (g1, g2, g3)"), "{}", stderr(&o));
}
