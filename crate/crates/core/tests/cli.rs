use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcbound")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qcbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bound_reports_the_worked_example() {
    let o = bin(&["bound", &data("example-9-2-6.json"), "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("k = 2, d = 6"), "{s}");
    assert!(s.lines().any(|l| l.starts_with("d_Spec(2)") && l.split_whitespace().nth(1) == Some("6")), "{s}");
    assert!(s.lines().any(|l| l.starts_with("d_S ") && l.split_whitespace().nth(1) == Some("3")), "{s}");

    let o = bin(&["bound", &data("example-8-6-2.json"), "--s", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d"]["value"], 2);
    assert_eq!(v["d_j"]["value"]["value"], 1);
    assert_eq!(v["d_spec"][1]["value"]["value"], 2);
}

#[test]
fn trivial_code_renders_infinity() {
    let o = bin(&["bound", &data("trivial.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d = inf"));
}

#[test]
fn input_errors_exit_with_one() {
    assert_eq!(bin(&["bound", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(bin(&["examples", "no-such-example"]).status.code(), Some(1));
    assert_eq!(bin(&["simulate", "--engines", "bogus"]).status.code(), Some(1));
    assert_eq!(bin(&["construct", "lrc-c1", "--q", "4", "--n", "5", "--delta", "2"]).status.code(), Some(1));
}

#[test]
fn examples_run_by_name() {
    let o = bin(&["examples", "--list"]);
    let names = stdout(&o);
    assert!(names.lines().any(|l| l == "table3-q11"));
    for name in ["example-9-2-6", "qc-designed", "table2-row7", "table3-q11"] {
        let o = bin(&["examples", name]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
}

#[test]
fn simulate_writes_identical_csv_for_a_fixed_seed() {
    let (a, b, j) = (tmp("a.csv"), tmp("b.csv"), tmp("r.json"));
    let args = ["simulate", "--q", "2", "--n", "3", "--ell-max", "3", "--trials", "1", "--seed", "42", "--s", "2,3"];
    let o = bin(&[&args[..], &["--csv", a.to_str().unwrap(), "--out", j.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    bin(&[&args[..], &["--csv", b.to_str().unwrap()]].concat());
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    let rep: serde_json::Value = serde_json::from_slice(&std::fs::read(&j).unwrap()).unwrap();
    assert_eq!(rep["config"]["seed"], 42);
}

#[test]
fn construct_outputs_feed_back_into_bound_and_lrc() {
    let code = tmp("design.json");
    let o = bin(&["construct", "design", "--spec", &data("design-10-5-4.json"), "--out", code.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&code).unwrap()).unwrap();
    assert_eq!(v["k"], 5);
    assert_eq!(v["certificate"]["designed_distance"]["value"], 4);
    assert_eq!(v["certificate"]["h"][0], serde_json::json!([1, 1, 1, 1, 1, 2]));
    let inner = tmp("design-code.json");
    std::fs::write(&inner, v["code"].to_string()).unwrap();
    let o = bin(&["bound", inner.to_str().unwrap(), "--s", "2"]);
    assert!(stdout(&o).contains("k = 5, d = 4"), "{}", stdout(&o));

    let o = bin(&["construct", "design", "--q", "3", "--n", "5", "--ell", "2", "--groups", "0;1", "--gammas", "-1"]);
    let w: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(w["code"], v["code"]);

    let lrc = tmp("c3.json");
    let o = bin(&["construct", "lrc-c3", "--q", "5", "--n", "4", "--ell", "3", "--out", lrc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let l: serde_json::Value = serde_json::from_slice(&std::fs::read(&lrc).unwrap()).unwrap();
    assert_eq!(l["h"], serde_json::json!([0, 0, 0, 0, 1]));
    std::fs::write(&inner, l["code"].to_string()).unwrap();
    let o = bin(&["lrc", inner.to_str().unwrap(), "--d", "8"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r["rho"].as_u64(), r["delta"].as_u64()), (Some(1), Some(4)));
    assert_eq!((r["bound_1"].as_i64(), r["bound_2"].as_i64()), (Some(8), Some(8)));

    let o = bin(&["construct", "grs", "--q", "4", "--k", "2"]);
    let g: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((g["length"].as_u64(), g["dimension"].as_u64()), (Some(5), Some(2)));

    let o = bin(&["construct", "design", "--table2", "1"]);
    let t: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(t["k"], 3);
}
