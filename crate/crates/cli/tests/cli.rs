use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const EXAMPLE: [u8; 10] = [0, 1, 6, 7, 1, 5, 4, 2, 6, 3];

fn wavelet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavelet")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn pseudo_random_bytes(n: usize) -> Vec<u8> {
    let mut x = 0x9e3779b97f4a7c15u64;
    (0..n)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x >> 56) as u8
        })
        .collect()
}

#[test]
fn build_is_independent_of_threads_and_algorithm() {
    let dir = TempDir::new().unwrap();
    let text = path(&dir, "text");
    fs::write(&text, pseudo_random_bytes(20_000)).unwrap();
    for structure in ["wt", "wm"] {
        let mut outputs = Vec::new();
        for (algo, threads) in [
            ("ps", "1"),
            ("ps", "4"),
            ("pc", "1"),
            ("ddps", "3"),
            ("levelpar", "2"),
            ("oracle", "1"),
        ] {
            let out = path(&dir, &format!("{structure}-{algo}-{threads}.idx"));
            let run = wavelet(&[
                "build",
                "--input",
                s(&text),
                "--structure",
                structure,
                "--algo",
                algo,
                "--threads",
                threads,
                "--output",
                s(&out),
            ]);
            assert!(run.status.success(), "{run:?}");
            outputs.push(fs::read(out).unwrap());
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{structure} outputs differ");
    }
}

#[test]
fn rank_query_on_the_example() {
    let dir = TempDir::new().unwrap();
    let text = path(&dir, "example");
    fs::write(&text, EXAMPLE).unwrap();
    for structure in ["wt", "wm"] {
        let index = path(&dir, &format!("{structure}.idx"));
        assert!(wavelet(&[
            "build",
            "--input",
            s(&text),
            "--structure",
            structure,
            "--output",
            s(&index)
        ])
        .status
        .success());
        let q = |args: &[&str]| {
            let mut all = vec!["query", "--input", s(&index)];
            all.extend_from_slice(args);
            stdout(&wavelet(&all))
        };
        assert_eq!(q(&["--op", "rank", "--symbol", "6", "--pos", "10"]), "2");
        assert_eq!(q(&["--op", "access", "--pos", "3"]), "7");
        assert_eq!(q(&["--op", "select", "--symbol", "1", "--ordinal", "2"]), "4");
        assert_eq!(q(&["--op", "select", "--symbol", "6", "--ordinal", "3"]), "none");
        assert_eq!(q(&["--op", "rank", "--symbol", "200", "--pos", "10"]), "0");
    }
}

#[test]
fn convert_then_verify_reports_ok() {
    let dir = TempDir::new().unwrap();
    let text = path(&dir, "text");
    fs::write(&text, pseudo_random_bytes(5_000)).unwrap();
    let wt = path(&dir, "wt.idx");
    let wm = path(&dir, "wm.idx");
    let direct = path(&dir, "direct.idx");
    assert!(
        wavelet(&["build", "--input", s(&text), "--structure", "wt", "--output", s(&wt)])
            .status
            .success()
    );
    assert!(wavelet(&["convert", "--input", s(&wt), "--output", s(&wm)])
        .status
        .success());
    let run = wavelet(&["verify", "--input", s(&text), "--structure", "wm", "--index", s(&wm)]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(stdout(&run), "OK");
    assert!(wavelet(&[
        "build",
        "--input",
        s(&text),
        "--structure",
        "wm",
        "--algo",
        "pc",
        "--output",
        s(&direct)
    ])
    .status
    .success());
    assert_eq!(fs::read(&wm).unwrap(), fs::read(&direct).unwrap());
    // A matrix cannot be converted again.
    assert_eq!(
        wavelet(&["convert", "--input", s(&wm), "--output", s(&wt)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_without_index_rebuilds() {
    let dir = TempDir::new().unwrap();
    let text = path(&dir, "words");
    fs::write(&text, "to be or not to be that is the question\nto be").unwrap();
    for algo in ["pc", "ps", "levelpar", "ddpc", "ddps"] {
        let run = wavelet(&[
            "verify",
            "--input",
            s(&text),
            "--alphabet",
            "words",
            "--structure",
            "wm",
            "--algo",
            algo,
            "--threads",
            "3",
        ]);
        assert_eq!(stdout(&run), "OK", "{algo}");
    }
}

#[test]
fn verify_reports_the_first_divergence() {
    let dir = TempDir::new().unwrap();
    let text = path(&dir, "example");
    fs::write(&text, EXAMPLE).unwrap();
    let index = path(&dir, "wt.idx");
    assert!(wavelet(&[
        "build",
        "--input",
        s(&text),
        "--alphabet",
        "byte-effective",
        "--output",
        s(&index)
    ])
    .status
    .success());
    // Flip the last bit of the last level; level words are the file's tail.
    let mut bytes = fs::read(&index).unwrap();
    let n = bytes.len();
    bytes[n - 8] ^= 1;
    fs::write(&index, bytes).unwrap();
    let run = wavelet(&[
        "verify",
        "--input",
        s(&text),
        "--alphabet",
        "byte-effective",
        "--index",
        s(&index),
    ]);
    assert_eq!(run.status.code(), Some(2));
    let err = String::from_utf8_lossy(&run.stderr);
    assert!(err.contains("level 2, bit 0"), "{err}");
}

#[test]
fn ingest_modes_through_the_cli() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[u8], &str); 4] = [
        ("byte-effective", b"abca", "n=4 sigma=3"),
        ("words", b"to be or to be", "n=5 sigma=3"),
        ("byte", b"abca", "n=4 sigma=256"),
        ("words", b"", "n=0 sigma=1"),
    ];
    for (i, (mode, content, summary)) in cases.iter().enumerate() {
        let text = path(&dir, &format!("in{i}"));
        fs::write(&text, content).unwrap();
        let out = path(&dir, &format!("out{i}"));
        let run = wavelet(&["build", "--input", s(&text), "--alphabet", mode, "--output", s(&out)]);
        assert!(run.status.success());
        assert!(stdout(&run).contains(summary), "{mode}: {}", stdout(&run));
    }
    let index = path(&dir, "out1");
    let q = wavelet(&[
        "query",
        "--input",
        s(&index),
        "--op",
        "rank",
        "--symbol",
        "0",
        "--pos",
        "5",
    ]);
    assert_eq!(stdout(&q), "2");
}

#[test]
fn bench_writes_the_csv_header_and_rows() {
    let dir = TempDir::new().unwrap();
    let text = path(&dir, "text");
    fs::write(&text, pseudo_random_bytes(4096)).unwrap();
    let csv = path(&dir, "bench.csv");
    let run = wavelet(&[
        "bench",
        "--input",
        s(&text),
        "--algo",
        "pc,ps",
        "--threads",
        "1,2",
        "--structure",
        "wm",
        "--runs",
        "3",
        "--csv",
        s(&csv),
    ]);
    assert!(run.status.success(), "{run:?}");
    let body = fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(
        lines.next(),
        Some("input,kind,algo,threads,runs,median_seconds,aux_bytes_per_input_byte")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert_eq!(row[1], "wm");
        assert_eq!(row[4], "3");
        assert!(row[5].parse::<f64>().unwrap() >= 0.0);
        assert!(!row[5].contains('e') && !row[6].contains('e'));
    }
    // pc at p=1 uses two arrays of 256 positions.
    let pc = rows.iter().find(|r| r[2] == "pc" && r[3] == "1").unwrap();
    assert_eq!(pc[6].parse::<f64>().unwrap(), 4096.0 / 4096.0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing");
    let out = path(&dir, "out");
    assert_eq!(
        wavelet(&["build", "--input", s(&missing), "--output", s(&out)])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(wavelet(&["build", "--input", s(&missing)]).status.code(), Some(1));
    assert_eq!(
        wavelet(&["build", "--input", s(&missing), "--output", s(&out), "--algo", "quick"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        wavelet(&["build", "--input", s(&missing), "--output", s(&out), "--threads", "0"])
            .status
            .code(),
        Some(1)
    );
    let text = path(&dir, "text");
    fs::write(&text, b"abc").unwrap();
    assert_eq!(
        wavelet(&["bench", "--input", s(&text), "--runs", "2"]).status.code(),
        Some(1)
    );
    let garbage = path(&dir, "garbage.idx");
    fs::write(&garbage, b"not an index").unwrap();
    assert_eq!(
        wavelet(&["query", "--input", s(&garbage), "--op", "access", "--pos", "0"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(wavelet(&["--help"]).status.code(), Some(0));
}
