use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e8forms")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const ALL_HAMILTON: [&str; 8] = ["--q1", "-1,-1", "--q2", "-1,-1", "--q3", "-1,-1", "--q4", "-1,-1"];

#[test]
fn compact_real_form() {
    let mut args = vec!["construct"];
    args.extend(ALL_HAMILTON);
    args.extend(["--c", "-1", "--field", "R", "--json"]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["signature"], -248);
    assert_eq!(v["real_class"], "compact");
    assert_eq!(v["kappa_i_level"], 8);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["redkill", "kappa", "kappa_i_level", "rost_zero", "signature", "real_class", "index_hint"] {
        assert!(keys.contains(&k), "missing {k}");
    }
}

#[test]
fn c_one_is_split_over_reals() {
    let mut args = vec!["construct"];
    args.extend(ALL_HAMILTON);
    args.extend(["--c", "1", "--field", "R", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&run(&args)).trim()).unwrap();
    assert_eq!(v["signature"], 8);
    assert_eq!(v["real_class"], "split");
    assert_eq!(v["index_hint"], "split");
}

#[test]
fn output_is_byte_stable() {
    let args = ["construct", "--q1", "2,3", "--q2", "-1,5", "--c", "7", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn zero_entry_is_a_data_error() {
    let o = run(&["construct", "--q1", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("zero symbol entry"));
    assert_eq!(run(&["construct", "--c", "0"]).status.code(), Some(2));
}

#[test]
fn batch_continues_past_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let out = dir.path().join("out.jsonl");
    std::fs::write(
        &input,
        "# header\n\
         q1=-1,-1 q2=-1,-1 q3=-1,-1 q4=-1,-1 c=-1 field=R\n\
         q1=0,1 q2=1,1 q3=1,1 q4=1,1 c=1\n\
         gamma3=-1,-1,-1 phi3=-1,-1,-1 phi5=-1,-1,-1,-1,-1 field=R\n",
    )
    .unwrap();
    let o = run(&["construct", "--batch", input.to_str().unwrap(), "--out", out.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3: zero symbol entry"), "{}", stderr(&o));
    let body = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<serde_json::Value> = body.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["signature"], -248);
    assert_eq!(lines[1]["signature"], -248);
    assert_eq!(lines[1]["rost15_zero"], true);
}

#[test]
fn descent_and_crux() {
    let o = run(&["descent", "--a", "5", "--c", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["witt_equal"], true);
    assert_eq!(run(&["descent", "--a", "4", "--c", "3"]).status.code(), Some(2));

    let o = run(&["crux", "--a", "2", "--b", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["witt_index"], 4);
    assert_eq!(v["hyperbolic"], true);
}

#[test]
fn tits_rejects_non_prefix() {
    let o = run(&["tits", "--gamma3", "1,1,1", "--phi3", "2,3,5", "--phi5", "1,1,1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn roots_report() {
    let o = run(&["roots"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("D8_in_E8"));
    assert!(text.contains("24 roots, type D4"));
    assert_eq!(run(&["roots", "--embedding", "bogus"]).status.code(), Some(2));
}

#[test]
fn appendix_both_readings() {
    let o = run(&["appendix", "--s", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 2);
    for r in reports {
        assert_eq!(r["all_j1_at_least_s"], true);
        assert!(r["solutions"].as_array().unwrap().iter().any(|t| t[0] == 3));
    }
}

#[test]
fn verify_roots_has_one_known_failure() {
    let o = run(&["verify-paper", "--suite", "roots", "--json"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["centralizer_highest_is_e8_highest"]);
    assert_eq!(v["summary"]["fail"], 1);
}

#[test]
fn verify_appendix_and_bad_suite() {
    assert_eq!(run(&["verify-paper", "--suite", "appendix"]).status.code(), Some(0));
    assert_eq!(run(&["verify-paper", "--suite", "nope"]).status.code(), Some(2));
}
