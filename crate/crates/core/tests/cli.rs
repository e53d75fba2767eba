use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfa-index"))
        .args(args)
        .env_remove("NFA_INDEX_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_reports() {
    let o = run(&["analyze", "--fixture", "sep:10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["width_R"], 6);
    assert_eq!(v["width_FS"], 1);
    let text = stdout(&o);
    let keys: Vec<&str> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('"'))
        .map(|l| l.split('"').next().unwrap())
        .collect();
    assert_eq!(
        keys,
        [
            "n_states",
            "classes_R",
            "classes_FS",
            "width_R",
            "width_FS",
            "superset_holds",
            "quasi_wheeler",
            "max_order_exists"
        ]
    );

    let o = run(&["analyze", "--fixture", "fig2"]);
    assert_eq!(json(&o)["classes_FS"], 4);
}

#[test]
fn error_exit_codes() {
    let o = run(&["analyze", "missing.nfa"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());

    assert_eq!(run(&["analyze", "--fixture", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        run(&["analyze", "--fixture", "fig2", "--format", "dot"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.nfa", "initial s\ntrans s a\n");
    let o = run(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let cyclic = write(dir.path(), "in.nfa", "initial s\ntrans s a t\ntrans t a s\n");
    assert_eq!(run(&["analyze", &cyclic]).status.code(), Some(1));

    let o = run(&["analyze", "--fixture", "fig2", "-o", "/nonexistent/dir/out.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(
        dir.path(),
        "chain.json",
        r#"{"n":3,"pairs":[["u1","u2"],["u1","u3"],["u2","u3"]]}"#,
    );
    let merged = write(
        dir.path(),
        "merged.json",
        r#"{"n":3,"pairs":[["u1","u2"],["u1","u3"],["u2","u3"],["u3","u2"]]}"#,
    );
    let identity = write(dir.path(), "id.json", r#"{"n":7,"pairs":[]}"#);
    let check = |kind: &str, fixture: &str, rel: &str| {
        run(&["check", "--fixture", fixture, "--kind", kind, "--relation", rel])
    };

    let o = check("wheeler-order", "wheeler3", &chain);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid\n");
    assert_eq!(check("colex-order", "fig2", &identity).status.code(), Some(0));
    let o = check("wheeler-preorder", "wheeler3", &chain);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("invalid: "));
    assert_eq!(check("wheeler-preorder", "wheeler3", &merged).status.code(), Some(0));
    assert_eq!(check("colex-relation", "wheeler3", &merged).status.code(), Some(0));
    assert_eq!(check("colex-order", "wheeler3", &merged).status.code(), Some(4));

    let broken = write(dir.path(), "broken.json", "{\"n\": 3, \"pairs\": [");
    assert_eq!(check("colex-order", "wheeler3", &broken).status.code(), Some(1));
    let unknown = write(dir.path(), "unknown.json", r#"{"n":3,"pairs":[["u1","x"]]}"#);
    assert_eq!(check("colex-order", "wheeler3", &unknown).status.code(), Some(1));
    assert_eq!(
        check("colex-order", "wheeler3", "/nonexistent.json").status.code(),
        Some(2)
    );
}

#[test]
fn maxrel_output_checks_as_relation() {
    let dir = tempfile::tempdir().unwrap();
    let rel = dir.path().join("rel.json");
    let o = run(&["maxrel", "--fixture", "fig2", "-o", rel.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = run(&[
        "check",
        "--fixture",
        "fig2",
        "--kind",
        "colex-relation",
        "--relation",
        rel.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));

    let cfs = dir.path().join("cfs.json");
    run(&["cfs", "--fixture", "sep:7", "-o", cfs.to_str().unwrap()]);
    let o = run(&[
        "check",
        "--fixture",
        "sep:7",
        "--kind",
        "wheeler-preorder",
        "--relation",
        cfs.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn separation_sweep() {
    let o = run(&["sweep", "--family", "sep", "--from", "5", "--to", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,classes_R,classes_FS,width_R,width_FS,quasi_wheeler")
    );
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    for row in &rows {
        let n: usize = row[0].parse().unwrap();
        assert_eq!(row[1], n.to_string());
        assert_eq!(row[2], "5");
        assert_eq!(row[3], (n - 4).to_string());
        assert_eq!(row[4], "1");
        assert_eq!(row[5], "true");
    }

    assert_eq!(
        run(&["sweep", "--family", "sep", "--from", "4", "--to", "4"]).status.code(),
        Some(1)
    );
}

#[test]
fn random_sweep_with_oracle() {
    let o = run(&["sweep", "--random", "--count", "100", "--states", "7", "--seed", "1", "--oracle"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 101);
}

#[test]
fn sweep_threads_keep_order() {
    let args = ["sweep", "--random", "--count", "30", "--states", "8", "--format", "json"];
    let base = run(&args);
    let threaded = Command::new(env!("CARGO_BIN_EXE_nfa-index"))
        .args(args)
        .env("NFA_INDEX_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(base.stdout, threaded.stdout);
    assert_eq!(json(&base).as_array().unwrap().len(), 30);

    let bad = Command::new(env!("CARGO_BIN_EXE_nfa-index"))
        .args(args)
        .env("NFA_INDEX_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn gen_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.nfa");
    let p = path.to_str().unwrap();
    let o = run(&["gen", "--random", "--states", "8", "--alphabet", "3", "--seed", "11", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = run(&["analyze", p]);
    assert_eq!(from_file.status.code(), Some(0));

    let o = run(&["gen", "--fixture", "fig2"]);
    let fig = write(dir.path(), "fig2.nfa", &stdout(&o));
    assert_eq!(
        stdout(&run(&["analyze", &fig])),
        stdout(&run(&["analyze", "--fixture", "fig2"]))
    );
}

#[test]
fn quotient_and_dot_outputs() {
    let o = run(&["quotient", "--fixture", "fig2"]);
    assert_eq!(
        stdout(&o),
        "initial {u0}\n\
         trans {u0} a {u1,u2}\n\
         trans {u0} a {u3,u4}\n\
         trans {u1,u2} a {u1,u2}\n\
         trans {u1,u2} b {u5,u6}\n\
         trans {u3,u4} b {u5,u6}\n\
         trans {u5,u6} b {u5,u6}\n"
    );
    let o = run(&["quotient", "--fixture", "fig2", "--format", "json"]);
    assert_eq!(
        json(&o),
        serde_json::json!({"blocks": [["u0"], ["u1", "u2"], ["u3", "u4"], ["u5", "u6"]]})
    );
    let dot = stdout(&run(&["cfs", "--fixture", "fig2", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("fillcolor").count(), 7);
}

#[test]
fn width_certificates() {
    let v = json(&run(&["width", "--fixture", "sep:9"]));
    assert_eq!(v["width"], 5);
    assert_eq!(v["antichain"].as_array().unwrap().len(), 5);
    assert_eq!(v["chains"].as_array().unwrap().len(), 5);
    let v = json(&run(&["width", "--fixture", "sep:9", "--of", "fs"]));
    assert_eq!(v["width"], 1);
    assert_eq!(v["chains"][0].as_array().unwrap().len(), 9);
}
