use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_misenum"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn misenum");
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

fn temp_graph(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("misenum-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

const P4: &str = "0 1\n1 2\n2 3\n";
const C5: &str = "0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn enumerate_prints_every_set() {
    for algorithm in [
        "auto",
        "generic-minor",
        "generic-sparse",
        "bounded",
        "brute",
    ] {
        let o = run(&["enumerate", "--algorithm", algorithm], P4);
        assert!(o.status.success(), "{algorithm}");
        let mut lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
        lines.sort();
        assert_eq!(lines, ["0 2", "0 3", "1 3"], "{algorithm}");
    }
}

#[test]
fn count_only_and_verify() {
    let o = run(
        &["enumerate", "--count-only", "--verify", "--order", "input"],
        C5,
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn stats_go_to_stderr() {
    let o = run(
        &[
            "enumerate",
            "--count-only",
            "--stats",
            "--algorithm",
            "generic-sparse",
        ],
        P4,
    );
    assert!(o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    for key in [
        "n=4",
        "m=3",
        "algorithm=generic-sparse",
        "sets_emitted=3",
        "total_ops=",
        "max_inter_output_ops=",
    ] {
        assert!(err.contains(key), "missing {key} in {err}");
    }
}

#[test]
fn dimacs_input_from_file() {
    let path = temp_graph(
        "c5.col",
        "c five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n",
    );
    let o = run(
        &[
            "enumerate",
            "--input",
            path.to_str().unwrap(),
            "--format",
            "dimacs",
            "--count-only",
        ],
        "",
    );
    std::fs::remove_file(&path).ok();
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--bogus"], P4).status.code(), Some(2));
    assert_eq!(run(&["enumerate"], "n 3\n0 7\n").status.code(), Some(3));
    assert_eq!(run(&["enumerate"], "not a graph\n").status.code(), Some(3));
    assert_eq!(
        run(
            &["enumerate", "--algorithm", "bounded"],
            "0 1\n0 2\n0 3\n0 4\n0 5\n"
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["enumerate", "--input", "/nonexistent/graph.txt"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(
            &["enumerate", "--algorithm", "generic-minor", "--delta", "1"],
            P4
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn dominance_scripts() {
    let path = temp_graph("p4.txt", P4);
    let p = path.to_str().unwrap();
    for structure in ["minor", "sparse"] {
        let o = run(
            &["dominance", "--input", p, "--structure", structure],
            "?\n+1\n?\n+3\n?\n!\n-1\n?\n",
        );
        assert!(o.status.success(), "{structure}");
        assert_eq!(stdout(&o), "4\n1\n0\n2\n", "{structure}");
    }
    let o = run(
        &["dominance", "--input", p, "--structure", "independence"],
        "+0\n+2\n?\n+1\n?\n!\n",
    );
    assert_eq!(stdout(&o), "independent\ndependent\n");
    let o = run(
        &["dominance", "--input", p, "--structure", "minor"],
        "+1\n+1\n",
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn bench_is_deterministic() {
    let args = [
        "bench",
        "--family",
        "random-degenerate",
        "--sizes",
        "20,40",
        "--seed",
        "9",
    ];
    let a = run(&args, "");
    let b = run(&args, "");
    assert!(a.status.success());
    let strip = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head).to_string())
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a).len(), 1 + 2 * 2);
    assert!(String::from_utf8(a.stderr).unwrap().contains("seed=9"));
}

#[test]
fn output_streams_and_survives_closed_pipe() {
    // 13 disjoint triangles: 3^13 sets, far more than the reader consumes.
    let mut text = String::new();
    for t in 0..13 {
        let b = 3 * t;
        text += &format!("{b} {}\n{} {}\n{b} {}\n", b + 1, b + 1, b + 2, b + 2);
    }
    let mut child = bin()
        .args(["enumerate", "--algorithm", "generic-minor"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let mut out = child.stdout.take().unwrap();
    let mut buf = vec![0u8; 4096];
    out.read_exact(&mut buf).unwrap();
    drop(out);
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}
