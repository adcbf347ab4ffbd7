use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_confpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pair_values() {
    let o = run(&["pair", "--graph", "n=3; 1->2, 2->3", "--forest", "[[1,2],3]"], "");
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "1"));
    // Swapping the edges flips the sign for even d only.
    let even = run(&["pair", "--graph", "n=3; 2->3, 1->2", "--forest", "[[1,2],3]"], "");
    let odd = run(&["--d", "3", "pair", "--graph", "n=3; 2->3, 1->2", "--forest", "[[1,2],3]"], "");
    assert_eq!(stdout(&even).trim(), "-1");
    assert_eq!(stdout(&odd).trim(), "1");
}

#[test]
fn pair_reads_stdin() {
    // A reversed edge costs a sign for odd d only.
    let o = run(&["--d", "3", "pair"], "n=2; 2->1\n[1,2]\n");
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "-1"));
    let o = run(&["pair"], "n=2; 2->1\n[1,2]\n");
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "1"));
}

#[test]
fn ranks_csv() {
    let o = run(&["--d", "3", "ranks", "--n", "4"], "");
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<(u64, u64)> = r.deserialize().map(|x| x.unwrap()).collect();
    assert_eq!(rows, vec![(0, 1), (2, 6), (4, 11), (6, 6)]);
}

#[test]
fn verify_reports_json() {
    let o = run(&["verify", "--n", "4"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let o = run(&["--d", "3", "verify", "--tau", "(*,(*,*))"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn exit_codes() {
    let syntax = run(&["pair", "--graph", "1->", "--forest", "[1,2]"], "");
    assert_eq!(syntax.status.code(), Some(1));
    let label = run(&["pair", "--graph", "n=3; 1->5", "--forest", "[[1,2],3]"], "");
    assert_eq!(label.status.code(), Some(2));
    let small_d = run(&["--d", "1", "ranks", "--n", "3"], "");
    assert_eq!(small_d.status.code(), Some(2));
    let strict = run(&["geom-check", "--forest", "[1,2]; 3", "--graph", "n=3; 1->3", "--tol", "1e-20"], "");
    assert_eq!(strict.status.code(), Some(3));
    let fine = run(&["geom-check", "--forest", "[1,2]; 3", "--graph", "n=3; 1->3"], "");
    assert_eq!(fine.status.code(), Some(0));
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = ["--seed", "42", "geom-check", "--forest", "[[1,3],2]", "--graph", "n=3; 1->3, 3->2", "--samples", "5"];
    let (a, b) = (run(&args, ""), run(&args, ""));
    assert_eq!(stdout(&a), stdout(&b));
    let other = run(&["--seed", "43", "geom-check", "--forest", "[[1,3],2]", "--graph", "n=3; 1->3, 3->2", "--samples", "5"], "");
    assert_ne!(stdout(&a), stdout(&other));
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = run(&["ranks", "--n", "5"], "");
    let cold = run(&["--cache-dir", d, "ranks", "--n", "5"], "");
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = run(&["--cache-dir", d, "ranks", "--n", "5"], "");
    assert_eq!(stdout(&plain), stdout(&cold));
    assert_eq!(stdout(&cold), stdout(&warm));
    let gram = |extra: &[&str]| stdout(&run(&[extra, &["gram", "--n", "4", "--k", "2"]].concat(), ""));
    assert_eq!(gram(&[]), gram(&["--cache-dir", d]));
    assert_eq!(gram(&["--cache-dir", d]), gram(&["--cache-dir", d]));
}
