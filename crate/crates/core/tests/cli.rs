use std::io::Write;
use std::process::{Command, Output, Stdio};

fn eci_cmd(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eci"))
        .args(args)
        .env_remove("ECI_WORKERS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_reads_graph6_and_edge_lists() {
    let a = eci_cmd(&["--json", "compute"], "Dhc\n");
    let b = eci_cmd(
        &["--json", "compute", "--format", "edgelist"],
        "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n",
    );
    assert!(a.status.success() && b.status.success());
    let a: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(a["eci"], 20);
    assert_eq!(a, b);
}

#[test]
fn compute_reads_a_file() {
    let dir = std::env::temp_dir().join(format!("eci-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("p4.txt");
    std::fs::write(&file, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let o = eci_cmd(&["compute", file.to_str().unwrap()], "");
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("eci 14"));
}

#[test]
fn exit_codes() {
    assert_eq!(eci_cmd(&["compute"], "3 1\n0 1\n").status.code(), Some(3));
    assert_eq!(
        eci_cmd(&["compute"], "not a graph\n").status.code(),
        Some(2)
    );
    assert_eq!(eci_cmd(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(eci_cmd(&["verify", "-n", "40"], "").status.code(), Some(2));
}

#[test]
fn family_output_feeds_compute() {
    let g = eci_cmd(&["family", "volcano", "-n", "16", "-d", "7"], "");
    assert!(g.status.success());
    let c = eci_cmd(&["compute"], &stdout(&g));
    assert!(stdout(&c).contains("eci 146"));
    let direct = eci_cmd(&["family", "volcano", "-n", "19", "-d", "7", "--eci"], "");
    assert!(stdout(&direct).contains("173"));
}

#[test]
fn verify_reports_and_writes_witnesses() {
    let dir = std::env::temp_dir().join(format!("eci-witness-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("w.g6");
    let o = eci_cmd(
        &[
            "--json",
            "verify",
            "-n",
            "6",
            "--dedup",
            "--witness-out",
            file.to_str().unwrap(),
        ],
        "",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["config"]["order"], 6);
    assert_eq!(report["passed"], true);
    let witnesses = std::fs::read_to_string(&file).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(witnesses.lines().count() >= 4);
}

#[test]
fn chain_partition_and_lemmas_accept_stdin() {
    for cmd in ["chain", "partition", "lemmas"] {
        let o = eci_cmd(&["--json", cmd], "F?LKW\n");
        assert!(o.status.code().is_some_and(|c| c <= 1), "{cmd}");
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap();
    }
}
