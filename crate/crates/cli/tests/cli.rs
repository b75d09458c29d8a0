//! Golden-output tests for the command-line front end. Set `UPDATE_GOLDEN=1`
//! to rewrite the expected files.

use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root().join("../core/tests/data").join(name).to_string_lossy().into_owned()
}

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn dwsynth(args: &[&str]) -> Out {
    let out = Command::new(env!("CARGO_BIN_EXE_dwsynth"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs");
    Out {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn golden(name: &str, actual: &str) {
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn compiled_phi(dir: &tempdir::Dir) -> String {
    let phi = dir.path("phi.fo");
    let out = dwsynth(&["mm-compile", &fixture("machine.mm"), "-o", &phi]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    phi
}

/// Scratch directory removed on drop.
mod tempdir {
    use std::path::PathBuf;

    pub struct Dir(PathBuf);

    impl Dir {
        pub fn new(tag: &str) -> Self {
            let p = std::env::temp_dir().join(format!("dwsynth-cli-{tag}-{}", std::process::id()));
            std::fs::create_dir_all(&p).unwrap();
            Dir(p)
        }

        pub fn path(&self, name: &str) -> String {
            self.0.join(name).to_string_lossy().into_owned()
        }
    }

    impl Drop for Dir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

#[test]
fn solve_all_default_game() {
    let out = dwsynth(&["solve", &fixture("all_default.vg"), "--ns", "1", "--ne", "1"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "System\n"));
}

#[test]
fn solve_budget_exit_code() {
    let out = dwsynth(&["solve", &fixture("small.vg"), "--ns", "3", "--ne", "3", "--max-states", "5"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.starts_with("error: budget exceeded"), "{}", out.stderr);
}

#[test]
fn missing_file_is_input_error() {
    let out = dwsynth(&["solve", "no/such/game.vg", "--ns", "1", "--ne", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("no/such/game.vg"));
}

#[test]
fn mm_run_example_run() {
    let out = dwsynth(&["mm-run", &fixture("machine.mm"), "--trans", "t0,t0,t1,t2,t3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("HALTED (h,0,0)\n"));
    golden("mm_run.txt", &out.stdout);
}

#[test]
fn mm_run_non_halting_and_invalid() {
    let out = dwsynth(&["mm-run", &fixture("machine.mm"), "--trans", "t0,t1"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.ends_with("STOPPED (q1,0,0)\n"));
    let out = dwsynth(&["mm-run", &fixture("machine.mm"), "--trans", "t1"]);
    assert_eq!(out.code, 2);
    let out = dwsynth(&["mm-run", &fixture("machine.mm")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("HALTED (h,0,0)\n"));
}

#[test]
fn compile_check_and_eval() {
    let dir = tempdir::Dir::new("eval");
    let phi = compiled_phi(&dir);
    let out = dwsynth(&["check", &phi]);
    assert_eq!(out.code, 0);
    golden("check_phi.txt", &out.stdout);
    let out = dwsynth(&["eval", &phi, &fixture("example_word.dw")]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "true\n"));

    let word = std::fs::read_to_string(fixture("example_word.dw")).unwrap();
    let cut = dir.path("cut.dw");
    std::fs::write(&cut, word.trim_end().strip_suffix("h@0").unwrap()).unwrap();
    let out = dwsynth(&["eval", &phi, &cut]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "false\n"));
}

#[test]
fn compile_to_stdout_has_header() {
    let out = dwsynth(&["mm-compile", &fixture("machine.mm")]);
    assert_eq!(out.code, 0);
    let first = out.stdout.lines().next().unwrap();
    assert_eq!(first, "sig S={dec0,dec1,h,i,inc0,inc1,kos,noop,oks,q1,q2,t0,t1,t2,t3} E={koe,oke}");
    let literal = dwsynth(&["mm-compile", &fixture("machine.mm"), "--literal"]);
    assert_ne!(literal.stdout, out.stdout);
}

#[test]
fn eval_with_assignment() {
    let dir = tempdir::Dir::new("assign");
    let f = dir.path("f.fo");
    std::fs::write(&f, "sig S={a} E={b}\na(x) & ProcS(y) & x ~ y\n").unwrap();
    let w = dir.path("w.dw");
    std::fs::write(&w, "pools S={0,1} E={e}\na@1\nb@e\n").unwrap();
    let run = |assign: &str| dwsynth(&["eval", &f, &w, "--assign", assign]);
    assert_eq!(run("x=0,y=@1").stdout, "true\n");
    assert_eq!(run("x=0,y=@0").code, 1);
    assert_eq!(run("x=0").code, 2);
}

#[test]
fn grid_text_and_tsv() {
    let out = dwsynth(&["grid", &fixture("threshold.vg"), "--cut", "2", "--minind", "2", "--jobs", "2"]);
    assert_eq!(out.code, 0);
    golden("grid_threshold.txt", &out.stdout);
    let out = dwsynth(&["grid", &fixture("small.vg"), "--cut", "2", "--format", "tsv"]);
    assert_eq!(out.code, 0);
    golden("grid_small.tsv", &out.stdout);
    let single = dwsynth(&["grid", &fixture("small.vg"), "--cut", "2", "--format", "tsv", "--jobs", "1"]);
    assert_eq!(single.stdout, out.stdout);
}

#[test]
fn bounds_report() {
    let out = dwsynth(&["bounds", &fixture("small.vg"), "--probe-window", "2"]);
    assert_eq!(out.code, 0);
    golden("bounds_small.txt", &out.stdout);
}

#[test]
fn lift_check_report() {
    let out = dwsynth(&["lift-check", &fixture("small.vg"), "--ns", "1", "--ne", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    golden("lift_small.txt", &out.stdout);
    let below = dwsynth(&["lift-check", &fixture("small.vg"), "--ns", "1", "--ne", "1"]);
    assert_eq!(below.code, 2);
}

#[test]
fn mm_play_policies() {
    let m = fixture("machine.mm");
    let out = dwsynth(&["mm-play", &m, "--env", "compliant"]);
    assert_eq!(out.code, 0);
    golden("play_compliant.txt", &out.stdout);
    let out = dwsynth(&["mm-play", &m, "--env", "blocker"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("word: (0,oks)\n"));
    let out = dwsynth(&["mm-play", &m, "--env", "script:-,oke,oke"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("word: (0,oks)(e,oke)(e,oke)(0,kos)\n"));
    let out = dwsynth(&["mm-play", &m, "--env", "suite", "--seed", "5"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("no falsifying policy found among 24 (sampled, not a proof of winning)\n"));
    let out = dwsynth(&["mm-play", &m, "--env", "bogus"]);
    assert_eq!(out.code, 2);
}

#[test]
fn mm_play_cheat_is_falsified() {
    let out = dwsynth(&["mm-play", &fixture("machine.mm"), "--cheat", "S6"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("(e,koe)\n"));
    assert!(out.stdout.ends_with("falsified by: compliant\n"));
}

#[test]
fn mm_play_dump_is_deterministic() {
    let dir = tempdir::Dir::new("dump");
    let (a, b) = (dir.path("a.dw"), dir.path("b.dw"));
    for p in [&a, &b] {
        let out = dwsynth(&["mm-play", &fixture("machine.mm"), "--env", "random:9", "--dump", p]);
        assert!(out.code == 0 || out.code == 1);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("pools S={0,1} E={e} M={}\n"));
    assert!(text.ends_with("# seed: 9\n"));
}

#[test]
fn mm_play_manual_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_dwsynth"))
        .args(["mm-play", &fixture("machine.mm"), "--env", "manual", "--max-rounds", "4"])
        .env("NO_COLOR", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"-\noke\n-\n-\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("word: (0,oks)(e,oke)(0,i)(0,t0)\n"), "{stdout}");
}
