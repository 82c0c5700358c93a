//! End-to-end runs of the `gpers` binary on fixture files.

use std::path::PathBuf;
use std::process::{Command, Output};

const TRI: &str = "+ v 0\n+ v 1\n+ v 2\n+ e 0 1\n+ e 1 2\n+ e 0 2\n";
const ZZ1: &str = "+ v 0\n+ v 1\n+ e 0 1\n- e 0 1\n+ e 0 1\n- e 0 1\n- v 1\n- v 0\n";

fn gpers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpers")).args(args).output().expect("binary runs")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_standard_tri() {
    let dir = tempfile::tempdir().unwrap();
    let flt = write(&dir, "tri.flt", TRI);
    let out = gpers(&["compute", "--standard", flt.to_str().unwrap()]);
    assert_eq!(stdout(&out), "0 1 inf c o\n0 2 3 c o\n0 3 4 c o\n1 6 inf c o\n");
}

#[test]
fn compute_zigzag_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let flt = write(&dir, "zz1.flt", ZZ1);
    let got = stdout(&gpers(&["compute", "--zigzag", flt.to_str().unwrap()]));
    assert_eq!(got, "0 1 7 c c\n0 2 2 c o\n0 4 4 o o\n0 6 6 o c\n");
    let oracle = stdout(&gpers(&["oracle", "--zigzag", flt.to_str().unwrap()]));
    assert_eq!(got, oracle);
}

#[test]
fn update_with_empty_script_equals_compute() {
    let dir = tempfile::tempdir().unwrap();
    let flt = write(&dir, "zz1.flt", ZZ1);
    let script = write(&dir, "empty.sw", "# nothing\n");
    let updated = stdout(&gpers(&[
        "update",
        "--zigzag",
        flt.to_str().unwrap(),
        "--script",
        script.to_str().unwrap(),
    ]));
    let computed = stdout(&gpers(&["compute", "--zigzag", flt.to_str().unwrap()]));
    assert_eq!(updated, computed);
}

#[test]
fn update_standard_with_verify_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let flt = write(&dir, "tri.flt", TRI);
    let script = write(&dir, "s.sw", "S 5\nS 5\n");
    let out = gpers(&[
        "update",
        "--standard",
        flt.to_str().unwrap(),
        "--script",
        script.to_str().unwrap(),
        "--verify",
        "--trace",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("# step 1\n"));
    assert!(text.contains("# step 2\n"));
    // the second switch undoes the first: final block equals plain compute
    let last = text.split("# step 2\n").nth(1).unwrap();
    assert_eq!(last, "0 1 inf c o\n0 2 3 c o\n0 3 4 c o\n1 6 inf c o\n");
}

#[test]
fn update_zigzag_with_verify() {
    let dir = tempfile::tempdir().unwrap();
    let flt = write(&dir, "zz1.flt", ZZ1);
    let script = write(&dir, "z.sw", "F 1\nB 7\nF 1\nB 7\n");
    let out = gpers(&[
        "update",
        "--zigzag",
        flt.to_str().unwrap(),
        "--script",
        script.to_str().unwrap(),
        "--verify",
    ]);
    assert_eq!(stdout(&out), "0 1 7 c c\n0 2 2 c o\n0 4 4 o o\n0 6 6 o c\n");
}

#[test]
fn machine_parsable_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.flt", "+ e 0 1\n");
    let out = gpers(&["compute", "--standard", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stderr), "ERR EdgeBeforeVertex 0\n");

    let flt = write(&dir, "zz1.flt", ZZ1);
    let script = write(&dir, "bad.sw", "O 3\n");
    let out = gpers(&[
        "update",
        "--zigzag",
        flt.to_str().unwrap(),
        "--script",
        script.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stderr), "ERR InvalidSwitch 3\n");
}

#[test]
fn emit_updown_dump() {
    let dir = tempfile::tempdir().unwrap();
    let flt = write(&dir, "zz1.flt", ZZ1);
    let ud = dir.path().join("ud.txt");
    gpers(&[
        "compute",
        "--zigzag",
        flt.to_str().unwrap(),
        "--emit-updown",
        ud.to_str().unwrap(),
        "--output",
        dir.path().join("bars.txt").to_str().unwrap(),
    ]);
    let dump = std::fs::read_to_string(&ud).unwrap();
    assert_eq!(
        dump,
        "+ v 0\n+ v 1\n+ e 2 0 1\n+ e 3 0 1\n- e 2 0 1\n- e 3 0 1\n- v 1\n- v 0\n"
    );
}

#[test]
fn bench_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    for path in [&a, &b] {
        let out = gpers(&[
            "bench",
            "--seed",
            "11",
            "--sizes",
            "256",
            "--switches",
            "8",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
