use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn seqlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn norm_values() {
    let d = TempDir::new().unwrap();
    let e1 = file(&d, "e1.vec", "1:1\n");
    let x = file(&d, "x.vec", "# c0 example\n1:-3\n2:2\n");
    let g = file(&d, "g.vec", "1:1\n2:1\n");
    assert_eq!(stdout(&seqlab(&["norm", "day", &e1])), "0.707106781187\n");
    assert_eq!(stdout(&seqlab(&["norm", "c0", &x])), "3\n");
    assert_eq!(stdout(&seqlab(&["norm", "--engine", "nakano:linear", "--vector", &g])), "1.618033988750\n");
}

#[test]
fn norm_errors() {
    let d = TempDir::new().unwrap();
    let x = file(&d, "x.vec", "1:1\n");
    let o = seqlab(&["norm", "l7", &x]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown engine"));

    let bad = file(&d, "bad.vec", "1:1\n\n3:abc\n");
    let o = seqlab(&["norm", "c0", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let dup = file(&d, "dup.vec", "2:1\n2:1\n");
    assert_eq!(seqlab(&["norm", "c0", &dup]).status.code(), Some(3));
    assert_eq!(seqlab(&["norm", "c0", "/no/such/file"]).status.code(), Some(3));
    assert_eq!(seqlab(&["norm", "c0", &x, "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn gap_table_subset_and_prefix() {
    let d = TempDir::new().unwrap();
    let x = file(&d, "x.vec", "1:1\n3:-2\n4:0.5\n");
    let out = d.path().join("out");
    let o = seqlab(&["gap", "--engine", "day", "--vector", &x, "--n-max", "5", "--out", path(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("min ratio"));
    let csv = fs::read_to_string(out.join("gap.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,norm,sup_term,gap,a_n,ratio"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    // the support has three points: from n = 3 on the gap is zero
    for row in &rows[2..] {
        assert_eq!(row.split(',').nth(3), Some("0.0"));
    }
    assert!(fs::read_to_string(out.join("gap.dat")).unwrap().lines().count() == 7);
    let rec = fs::read_to_string(out.join("gap.run.json")).unwrap();
    assert!(rec.contains("\"input_hash\": \""));

    let o = seqlab(&["gap", "c0", &x, "--mode", "prefix", "--n-max", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n,norm"));
    assert_eq!(seqlab(&["gap", "c0", &x, "--mode", "sideways"]).status.code(), Some(2));
    // window longer than a file sequence
    let a = file(&d, "a.txt", "1\n0.5\n");
    assert_eq!(seqlab(&["gap", "c0", &x, "--a", &a, "--n-max", "3"]).status.code(), Some(5));
}

#[test]
fn gap_ex17_ratio_column() {
    let d = TempDir::new().unwrap();
    let n = 200usize;
    // x(1) = 2, x(j) = a_{j-1}^{1/2} with a_n = 1/n
    let mut body = String::from("1:2\n");
    for j in 2..=n + 1 {
        body.push_str(&format!("{j}:{}\n", (1.0 / (j - 1) as f64).sqrt()));
    }
    let x = file(&d, "x.vec", &body);
    let o = seqlab(&["gap", "c0", &x, "--mode", "summing-prefix", "--n-max", &n.to_string(), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in v["rows"].as_array().unwrap().iter().skip(3) {
        let n = row["n"].as_f64().unwrap();
        let ratio = row["ratio"].as_f64().unwrap();
        assert!((ratio - n.sqrt()).abs() <= 1e-10 * n.sqrt(), "n = {n}: {ratio}");
    }
}

#[test]
fn star_certificates() {
    let d = TempDir::new().unwrap();
    let x = file(&d, "x.vec", "1:0.4\n2:-0.3\n5:0.2\n");
    let o = seqlab(&["star", "orlicz:default", &x]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("subset,margin\n{},"));

    let o = seqlab(&["star", "c0", &x, "--cert", "summable"]);
    assert_eq!(o.status.code(), Some(0));

    // c0 at x = (2, 1): A = {} has margin ‖x‖ - c·1·‖x‖∞ = 0 with c = 1,
    // so halving c leaves -1 there.
    let y = file(&d, "y.vec", "1:2\n2:1\n");
    let out = d.path().join("out");
    let o = seqlab(&["star", "c0", &y, "--c-scale", "0.5", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("min margin -1 at A = {}"), "{}", stdout(&o));
    let csv = fs::read_to_string(out.join("star.csv")).unwrap();
    assert!(csv.contains("{},-1\n"));

    let f = file(&d, "f.vec", "1:1\n");
    assert_eq!(seqlab(&["star", "c0", &y, "--functional", &f]).status.code(), Some(0));
    let wrong = file(&d, "wrong.vec", "2:1\n");
    assert_eq!(seqlab(&["star", "c0", &y, "--functional", &wrong]).status.code(), Some(5));
    assert_eq!(seqlab(&["star", "day", &y]).status.code(), Some(2));
    assert_eq!(seqlab(&["star", "c0", &y, "--cert", "orlicz"]).status.code(), Some(2));

    let big: String = (1..=17).map(|i| format!("{i}:{}\n", 1.0 / i as f64)).collect();
    let big = file(&d, "big.vec", &big);
    let o = seqlab(&["star", "c0", &big]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn reproduce_constructions() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("out");
    let o = seqlab(&["reproduce", "ex2.5", "--a", "harmonic", "--K", "6", "--count", "50", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ex2.5: PASS"));
    assert!(out.join("ex2.5.csv").exists() && out.join("ex2.5-bound.csv").exists());

    let o = seqlab(&["reproduce", "ex2.6", "--a", "geometric8", "--K", "10", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let blocks = fs::read_to_string(out.join("ex2.6.blocks")).unwrap();
    assert_eq!(blocks.lines().filter(|l| !l.starts_with('#')).count(), 10);

    let o = seqlab(&["reproduce", "fact1.6", "--m-max", "20", "--n-max", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("fact1.6: PASS"));

    let o = seqlab(&["reproduce", "ex1.7", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("precondition"));
    assert_eq!(seqlab(&["reproduce", "ex9.9"]).status.code(), Some(2));
    assert_eq!(seqlab(&["reproduce", "ex2.3", "--p", "const:2"]).status.code(), Some(5));
}

#[test]
fn lambda_columns() {
    let o = seqlab(&["lambda", "orlicz:square", "--n-max", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,lambda"));
    for (i, line) in lines.enumerate() {
        let (n, l) = line.split_once(',').unwrap();
        assert_eq!(n.parse::<usize>().unwrap(), i + 1);
        assert!((l.parse::<f64>().unwrap() - ((i + 1) as f64).sqrt()).abs() < 1e-12);
    }
    let o = seqlab(&["lambda", "c0", "--n-max", "3"]);
    assert_eq!(stdout(&o), "n,lambda\n1,1\n2,1\n3,1\n");
    assert!(stderr(&o).contains("constant"));
    let o = seqlab(&["lambda", "--engine", "nakano:linear", "--n-max", "30"]);
    assert!(stderr(&o).contains("strictly increasing"));
    assert_eq!(seqlab(&["lambda", "summing"]).status.code(), Some(2));
}

#[test]
fn outputs_are_byte_deterministic() {
    let d = TempDir::new().unwrap();
    let x = file(&d, "x.vec", "1:0.7\n2:-0.1\n9:0.35\n");
    let run = |tag: &str, args: &[&str]| {
        let out = d.path().join(tag);
        let mut all = args.to_vec();
        all.extend(["--out", path(&out)]);
        assert!(seqlab(&all).status.code().is_some());
        out
    };
    for (args, table) in [
        (vec!["reproduce", "ex2.3", "--count", "20"], "ex2.3.csv"),
        (vec!["reproduce", "prop3.6", "--count", "5"], "prop3.6.csv"),
        (vec!["gap", "orlicz:default", x.as_str(), "--n-max", "3"], "gap.csv"),
        (vec!["star", "orlicz:default", x.as_str()], "star.csv"),
    ] {
        let a = run("a", &args);
        let b = run("b", &args);
        assert_eq!(fs::read(a.join(table)).unwrap(), fs::read(b.join(table)).unwrap(), "{table}");
    }
    let rec: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("a").join("star.run.json")).unwrap()).unwrap();
    assert_eq!(rec["command"], "star");
    assert_eq!(rec["engine"], "orlicz:default");
    assert_eq!(rec["passed"], true);
    assert_eq!(rec["input_hash"].as_str().unwrap().len(), 64);
}
