mod support;

use std::path::Path;
use std::process::{Command, Output};

use support::traces::{corpus_dir, read_golden};

fn lampi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lampi")).args(args).env_remove("LAMPI_BUDGET").output().unwrap()
}

fn status(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn golden(name: &str, ext: &str) -> String {
    corpus_dir().join(format!("{name}.{ext}")).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn translate_writes_next_to_the_input_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.drv", &read_golden("superposition"));
    let o = lampi(&["translate", &input]);
    assert_eq!(status(&o), 0, "{}", stderr(&o));
    let script = std::fs::read_to_string(dir.path().join("t.dk")).unwrap();
    assert_eq!(script, std::fs::read_to_string(golden("superposition", "dk")).unwrap());
    assert!(stdout(&o).contains("steps_translated=3\n"));
}

#[test]
fn translate_to_an_explicit_path_without_banner() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.dk").to_string_lossy().into_owned();
    let o = lampi(&["translate", &golden("avatar", "drv"), "-o", &out, "--no-prelude-banner"]);
    assert_eq!(status(&o), 0, "{}", stderr(&o));
    let script = std::fs::read_to_string(&out).unwrap();
    assert!(!script.starts_with("(; Proof script"));
    assert_eq!(status(&lampi(&["check", &out])), 0);
}

#[test]
fn check_and_e2e_accept_the_corpus() {
    for name in ["superposition", "simultaneous", "avatar", "polymorphic", "lists", "orientation"] {
        let o = lampi(&["check", &golden(name, "dk")]);
        assert_eq!(status(&o), 0, "{name}: {}", stderr(&o));
        let o = lampi(&["e2e", &golden(name, "drv")]);
        assert_eq!(status(&o), 0, "{name}: {}", stderr(&o));
        assert!(stdout(&o).contains("sorry_count=0\n"));
    }
}

#[test]
fn sorry_needs_to_be_allowed() {
    let o = lampi(&["e2e", &golden("sorry", "drv")]);
    assert_eq!(status(&o), 3);
    assert!(stderr(&o).contains("warning: sorry: step 3 rule mystery"), "{}", stderr(&o));
    assert!(stdout(&o).contains("sorry_steps=3\n"));
    let o = lampi(&["e2e", &golden("sorry", "drv"), "--allow-sorry"]);
    assert_eq!(status(&o), 0);
    assert_eq!(status(&lampi(&["check", &golden("sorry", "dk")])), 3);
    assert_eq!(status(&lampi(&["check", &golden("sorry", "dk"), "--allow-sorry"])), 0);
}

#[test]
fn kernel_failures_name_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(golden("superposition", "dk")).unwrap();
    let bad = write(dir.path(), "bad.dk", &text.replace("step_1 u_d W l1", "step_1 W u_d l1"));
    let o = lampi(&["check", &bad]);
    assert_eq!(status(&o), 1);
    assert!(stdout(&o).contains("failed_entry=step_3\n"), "{}", stdout(&o));
    assert!(stderr(&o).contains("error: step_3: "), "{}", stderr(&o));
}

#[test]
fn budget_exhaustion_has_its_own_status() {
    let script = golden("superposition", "dk");
    assert_eq!(status(&lampi(&["check", &script, "--budget", "3"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_lampi")).args(["check", &script]).env("LAMPI_BUDGET", "3").output();
    assert_eq!(status(&o.unwrap()), 2);
}

#[test]
fn parse_errors_carry_locations() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.drv", "drv 1 cnf.\npred p (iota).\nstep 1 input [] {} | p(X | .\n");
    let o = lampi(&["e2e", &bad]);
    assert_eq!(status(&o), 4);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let bad = write(dir.path(), "bad.dk", "nat : Type\nz : nat.\n");
    assert_eq!(status(&lampi(&["check", &bad])), 4);
    assert_eq!(status(&lampi(&["check", "/nonexistent/x.dk"])), 4);
}

#[test]
fn corrupted_traces_are_internal_errors() {
    let dir = tempfile::tempdir().unwrap();
    let src = read_golden("factoring").replace("| p(g(c)) | lits=1:0.", "| p(g(g(c))) | lits=1:0.");
    let o = lampi(&["e2e", &write(dir.path(), "bad.drv", &src)]);
    assert_eq!(status(&o), 5);
    assert!(stderr(&o).contains("step 4"), "{}", stderr(&o));
}

#[test]
fn json_report_mirrors_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json").to_string_lossy().into_owned();
    let o = lampi(&["e2e", &golden("sorry", "drv"), "--allow-sorry", "--report-json", &json]);
    assert_eq!(status(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["command"], "e2e");
    assert_eq!(v["sorry_count"], 1);
    assert_eq!(v["sorry_steps"][0]["rule"], "mystery");
    assert_eq!(v["exit_status"], 0);
    assert_eq!(v["entries_checked"].as_u64().unwrap().to_string(), {
        let line = stdout(&o).lines().find(|l| l.starts_with("entries_checked=")).unwrap().to_string();
        line["entries_checked=".len()..].to_string()
    });
}

#[test]
fn usage_errors_are_parse_errors() {
    let o = lampi(&["frobnicate"]);
    assert_eq!(status(&o), 4);
    assert!(stderr(&o).contains("Usage"));
    assert_eq!(status(&lampi(&["check", "x.dk", "--budget", "many"])), 4);
    let o = lampi(&["--help"]);
    assert_eq!(status(&o), 0);
    assert!(stdout(&o).contains("e2e"));
}
