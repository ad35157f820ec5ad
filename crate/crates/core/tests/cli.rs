use std::process::{Command, Output};

fn qcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcert")).args(args).env_remove("QCERT_SEED").env_remove("QCERT_TRIALS").output().expect("run qcert")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report on stdout")
}

fn without_timings(mut v: serde_json::Value) -> serde_json::Value {
    fn strip(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(m) => {
                m.remove("elapsed_ms");
                m.values_mut().for_each(strip);
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

#[test]
fn verify_example_passes() {
    let out = qcert(&["verify", "--id", "jackson_8phi7", "--trials", "20", "--seed", "42", "--n-max", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["items"][0]["status"], "PASS");
    assert_eq!(r["items"][0]["succeeded"], 20);
    assert_eq!(r["config"]["n_max"], 6);
    assert_eq!(r["summary"]["all_passed"], true);
}

#[test]
fn series_example_passes() {
    let out = qcert(&["series", "--id", "jacobi_triple", "--order", "60", "--trials", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS"), "{text}");
    assert!(text.contains("5/5"));
}

#[test]
fn certify_selected_proofs() {
    let out = qcert(&["certify", "--proof", "jackson,lebesgue", "--n-max", "5", "--trials", "3", "--seed", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["items"].as_array().unwrap().len(), 2);
    assert_eq!(r["items"][1]["kind"], "proof");
}

#[test]
fn mutation_exits_one_with_exact_counterexample() {
    let out = qcert(&["verify", "--id", "watson_transform", "--mutate-rhs", "--trials", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let f = &r["items"][0]["first_failure"];
    assert_eq!(r["items"][0]["status"], "FAIL");
    let q = f["point"]["symbols"]["q"].as_str().unwrap();
    assert!(q.parse::<i64>().is_ok() || q.contains('/'), "{q}");
    assert!(!f["lhs"].as_str().unwrap().contains('.'));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(qcert(&["verify", "--id", "nope"]).status.code(), Some(2));
    assert_eq!(qcert(&["certify", "--proof", "nope"]).status.code(), Some(2));
    assert_eq!(qcert(&["series", "--order", "100000"]).status.code(), Some(2));
    assert_eq!(qcert(&["verify", "--id", "schlosser_cr", "--r-max", "9"]).status.code(), Some(2));
    assert_eq!(qcert(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(qcert(&["verify", "--bogus"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_modulo_timings() {
    let args = ["verify", "--id", "all", "--trials", "4", "--seed", "11", "--format", "json", "--quiet"];
    let a = qcert(&args);
    let b = qcert(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timings(json(&a)), without_timings(json(&b)));
    let strip_lines =
        |o: &Output| String::from_utf8_lossy(&o.stdout).lines().filter(|l| !l.contains("elapsed_ms")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip_lines(&a), strip_lines(&b));
    assert!(a.stderr.is_empty());
}

#[test]
fn environment_overrides_seed_and_trials() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcert"))
        .args(["series", "--id", "ab00", "--format", "json"])
        .env("QCERT_SEED", "99")
        .env("QCERT_TRIALS", "2")
        .output()
        .unwrap();
    let r = json(&out);
    assert_eq!(r["config"]["seed"], 99);
    assert_eq!(r["items"][0]["trials"], 2);
}

#[test]
fn out_flag_writes_report() {
    let path = std::env::temp_dir().join(format!("qcert_report_{}.json", std::process::id()));
    let out = qcert(&["series", "--id", "ab11", "--trials", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(r["summary"]["passed"], 1);
}

#[test]
fn progress_goes_to_stderr() {
    let out = qcert(&["series", "--id", "ab00,ab11", "--trials", "1"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("[1/2] series ab00") && err.contains("[2/2] series ab11"), "{err}");
}

#[test]
fn eval_and_list() {
    let out = qcert(&["eval", "--id", "jackson_8phi7", "--point", "a=3,b=1/2,c=5,d=1/7,q=2,n=3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("EQUAL"));
    let out = qcert(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for id in ["singh_quadratic_c", "lebesgue_finite_2", "schlosser", "q_kummer", "quintuple_relation"] {
        assert!(text.contains(id), "{id}");
    }
}
