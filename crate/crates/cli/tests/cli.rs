use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CLASH_ONTOLOGY: &str = "SubClassOf(A Or(B C))
SubClassOf(B Some(R D))
SubClassOf(Some(R D) D)
SubClassOf(C Some(R B))
SubClassOf(And(D E) Bot)
";

fn hornify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hornify")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn translate_modes() {
    let dir = tempfile::tempdir().unwrap();
    let o = write(dir.path(), "successor_only.dlo", CLASH_ONTOLOGY);
    let xi = hornify(&["translate", arg(&o)]);
    assert!(xi.status.success());
    assert!(stdout(&xi).contains("B(?x) -> D(f_R_D(?x))."));
    let pi = hornify(&["translate", "--mode", "pi", arg(&o)]);
    assert!(stdout(&pi).contains("R(?x,sk1(?x))"), "{}", stdout(&pi));
}

#[test]
fn mark_reports_markings() {
    let dir = tempfile::tempdir().unwrap();
    let o = write(dir.path(), "successor_only.dlo", CLASH_ONTOLOGY);
    let m = hornify(&["mark", "--minimal", arg(&o)]);
    assert_eq!(stdout(&m).trim(), "B,D,Bot");
    let pi = hornify(&["mark", "--mode", "pi", arg(&o)]);
    assert_eq!(pi.status.code(), Some(3));
    assert_eq!(stdout(&pi).trim(), "NOT-MARKABLE");
    let p = write(
        dir.path(),
        "choice.rules",
        "A(?x) -> B(?x).\nB(?x) -> C(?x) | D(?x).\nC(?x) -> False(?x).\nD(?x) -> C(sk0(?x)).\n",
    );
    let all = hornify(&["mark", "--all", arg(&p)]);
    let lines: Vec<String> = stdout(&all).lines().map(String::from).collect();
    assert_eq!(lines, vec!["C,Bot".to_string(), "C,D,Bot".to_string()]);
}

#[test]
fn transpose_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.rules", "A(?x) -> B(?x) | C(?x).\n");
    let out = dir.path().join("t.rules");
    let t = hornify(&["transpose", "--marking", "B", arg(&p), "-o", arg(&out)]);
    assert!(t.status.success(), "{}", String::from_utf8_lossy(&t.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("A(?x), not_B(?x) -> C(?x)."), "{text}");
    let bad = hornify(&["transpose", "--marking", "A", arg(&p)]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn rewrite_prints_header_and_axioms() {
    let dir = tempfile::tempdir().unwrap();
    let o = write(dir.path(), "successor_only.dlo", CLASH_ONTOLOGY);
    let r = hornify(&["rewrite", arg(&o)]);
    let text = stdout(&r);
    assert!(text.starts_with("# marking: B,D,Bot\n"));
    assert!(text.contains("# successor role R__D = f_R_D"));
    assert!(text.contains("SubClassOf(Some(R__D not_D) not_B)"));
    let n = hornify(&["rewrite", "--normalize", arg(&o)]);
    assert!(!stdout(&n).contains("And(Bot not_Bot)"));
    let u = write(dir.path(), "u.dlo", "SubClassOf(X Or(A B))\nSubClassOf(And(A B) C)\nSubClassOf(C Or(A B))\n");
    assert_eq!(hornify(&["rewrite", arg(&u)]).status.code(), Some(3));
}

#[test]
fn check_verdicts_and_traces() {
    let dir = tempfile::tempdir().unwrap();
    let o = write(dir.path(), "successor_only.dlo", CLASH_ONTOLOGY);
    let d = write(dir.path(), "d.facts", "A(a)\nE(a)\n");
    let c = hornify(&["check", arg(&o), arg(&d), "--depth", "2", "--trace"]);
    assert!(c.status.success());
    let text = stdout(&c);
    assert!(text.contains("original: UNSAT"));
    assert!(text.contains("verdict: AGREE"));
    assert!(text.contains("FALSEHOOD"));
    let tiny = hornify(&["check", arg(&o), arg(&d), "--budget", "3"]);
    assert_eq!(tiny.status.code(), Some(2));
}

#[test]
fn malformed_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = write(dir.path(), "bad.dlo", "SubClassOf(A\n");
    let r = hornify(&["translate", arg(&o)]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 1"));
    assert_eq!(hornify(&["translate", "/nonexistent.dlo"]).status.code(), Some(2));
}

#[test]
fn stats_formats() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "successor_only.dlo", CLASH_ONTOLOGY);
    write(dir.path(), "horn.dlo", "SubClassOf(A B)\n");
    write(dir.path(), "notes.txt", "ignored");
    let csv = stdout(&hornify(&["stats", arg(dir.path())]));
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "file,markable_xi,markable_pi,horn_dl,profile_in,profile_out,millis");
    assert!(rows[1].starts_with("horn.dlo,true,true,true,EL,"));
    assert!(rows[2].starts_with("successor_only.dlo,true,false,false,ELU,Horn-ALC,"));
    let json = stdout(&hornify(&["stats", "--format", "json", arg(dir.path())]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["markable_pi"], false);
}
