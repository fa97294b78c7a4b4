use std::io::Write;
use std::process::{Command, Stdio};

use permcover_cli::format::parse_document;
use permcover_cli::run;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permcover").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn cli(args: &[&str]) -> Output {
    cli_with_stdin(args, "")
}

const Q4: &str = "n=4 mode=inversion\n2 3 1 4\n2 4 1 3\n1 3 2 4\n1 4 2 3\n";

#[test]
fn gamma_and_count() {
    assert_eq!(cli(&["gamma", "6", "--mode", "inversion"]).stdout, "9\n");
    assert_eq!(cli(&["gamma", "3", "--mode", "pair"]).stdout, "3\n");
    assert_eq!(cli(&["gamma", "7", "--mode", "pair"]).stdout, "12\n");
    assert_eq!(cli(&["count", "5", "--what", "pstar"]).stdout, "1280\n");
    assert_eq!(cli(&["count", "5", "--what", "qstar"]).stdout, "128\n");
    assert_eq!(cli(&["count", "4", "--what", "pstar"]).stdout, "12\n");
    assert_eq!(
        cli(&["count", "6", "--what", "family", "--c", "3"]).stdout,
        "4\n"
    );
    assert_eq!(
        cli(&["count", "6", "--what", "transversals", "--c", "3"]).stdout,
        "262144\n"
    );
    let missing_c = cli(&["count", "6", "--what", "family"]);
    assert_eq!(missing_c.code, 2);
    assert!(missing_c.stderr.contains("--c"));
    assert_eq!(cli(&["count", "6", "--what", "family", "--c", "6"]).code, 1);
    assert_eq!(cli(&["gamma", "1", "--mode", "pair"]).code, 2);
    assert_eq!(cli(&["gamma", "6", "--mode", "bogus"]).code, 2);
}

#[test]
fn verify_unique_q4() {
    let out = cli_with_stdin(&["verify", "-", "--minimal"], Q4);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("minimally inversion-complete"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q4.txt");
    std::fs::write(&path, Q4).unwrap();
    let out = cli(&["verify", path.to_str().unwrap(), "--minimal"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn verify_diagnostics() {
    let out = cli_with_stdin(&["verify", "-"], "n=3 mode=inversion\n2 1 3\n1 2 3\n");
    assert_eq!(out.code, 1);
    assert!(
        out.stderr.contains("is_complete(inversion)"),
        "{}",
        out.stderr
    );
    assert!(out.stderr.contains("(3,1)") && out.stderr.contains("(3,2)"));

    let out = cli_with_stdin(
        &["verify", "-", "--minimal"],
        "n=3 mode=inversion\n2 3 1\n3 2 1\n",
    );
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("is_minimal_complete(inversion)"));
    assert!(out.stderr.contains("231"));
    // without --minimal the same set passes
    let out = cli_with_stdin(&["verify", "-"], "n=3 mode=inversion\n2 3 1\n3 2 1\n");
    assert_eq!(out.code, 0);

    let out = cli_with_stdin(&["verify", "-"], "n=3 mode=inversion\n2 3 1\n3 2\n");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3, column"), "{}", out.stderr);

    let out = cli_with_stdin(
        &["verify", "-"],
        "{\"n\":3,\"mode\":\"pair\",\"perms\":[[1,2,3],]}",
    );
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 1, column"), "{}", out.stderr);

    let out = cli(&["verify", "/nonexistent/file.txt"]);
    assert_eq!(out.code, 1);
}

#[test]
fn generate_then_verify() {
    let cases: &[&[&str]] = &[
        &["generate", "4", "--mode", "inversion"],
        &["generate", "7", "--mode", "inversion", "--seed", "5"],
        &[
            "generate",
            "12",
            "--mode",
            "inversion",
            "--seed",
            "9",
            "--format",
            "json",
        ],
        &["generate", "3", "--mode", "pair", "--seed", "1"],
        &["generate", "4", "--mode", "pair", "--seed", "1"],
        &["generate", "8", "--mode", "pair", "--seed", "2"],
        &["generate", "9", "--mode", "pair", "--orbit", "--seed", "3"],
        &["generate", "6", "--mode", "pair", "--relabel", "362514"],
        &[
            "generate", "6", "--mode", "pair", "--x", "2,5,6", "--format", "json",
        ],
    ];
    for args in cases {
        let generated = cli(args);
        assert_eq!(generated.code, 0, "{args:?}: {}", generated.stderr);
        let verified = cli_with_stdin(&["verify", "-", "--minimal"], &generated.stdout);
        assert_eq!(verified.code, 0, "{args:?}: {}", verified.stderr);
    }
}

#[test]
fn generate_options_need_pair_mode() {
    for extra in [&["--orbit"][..], &["--relabel", "2134"], &["--x", "1,2"]] {
        let mut args = vec!["generate", "4", "--mode", "inversion"];
        args.extend_from_slice(extra);
        assert_eq!(cli(&args).code, 1, "{extra:?}");
    }
    assert_eq!(
        cli(&["generate", "4", "--mode", "pair", "--orbit", "--x", "1,2"]).code,
        2
    );
    assert_eq!(
        cli(&["generate", "5", "--mode", "pair", "--x", "1,2,3"]).code,
        1
    );
    assert_eq!(
        cli(&["generate", "5", "--mode", "pair", "--x", "1,a"]).code,
        2
    );
    assert_eq!(
        cli(&["generate", "5", "--mode", "pair", "--relabel", "1123"]).code,
        2
    );
}

#[test]
fn seeded_output_is_reproducible() {
    for args in [
        &["generate", "10", "--mode", "pair", "--seed", "42"][..],
        &["generate", "11", "--mode", "inversion", "--seed", "42"],
        &[
            "generate", "10", "--mode", "pair", "--orbit", "--seed", "42",
        ],
        &["enumerate", "5", "--mode", "pair", "--limit", "30"],
        &["oracle", "3", "--mode", "pair"],
    ] {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = cli(&["generate", "10", "--mode", "pair", "--seed", "1"]).stdout;
    let b = cli(&["generate", "10", "--mode", "pair", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn generated_documents_round_trip() {
    let text = cli(&["generate", "9", "--mode", "pair", "--seed", "4"]).stdout;
    let json = cli(&[
        "generate", "9", "--mode", "pair", "--seed", "4", "--format", "json",
    ])
    .stdout;
    let a = parse_document(&text).unwrap();
    let b = parse_document(&json).unwrap();
    assert_eq!(a, b);
    assert_eq!(permcover_cli::format::to_text(&a), text);
    assert_eq!(permcover_cli::format::to_json(&b) + "\n", json);
}

#[test]
fn enumerate_streams_and_refuses() {
    let out = cli(&["enumerate", "5", "--mode", "inversion", "--format", "json"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 128);
    let mut sorted = lines.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 128);
    assert!(out.stderr.contains("enumerated 128 of 128"));

    let out = cli(&["enumerate", "4", "--mode", "pair"]);
    let blocks: Vec<&str> = out.stdout.split("\n\n").collect();
    assert_eq!(blocks.len(), 12);
    for block in blocks {
        assert_eq!(cli_with_stdin(&["verify", "-", "--minimal"], block).code, 0);
    }

    let refused = cli(&["enumerate", "8", "--mode", "inversion"]);
    assert_eq!(refused.code, 1);
    assert!(refused.stderr.contains("--limit"));
    let limited = cli(&["enumerate", "8", "--mode", "pair", "--limit", "2"]);
    assert_eq!(limited.code, 0);
    assert_eq!(limited.stdout.split("\n\n").count(), 2);
}

#[test]
fn oracle_reports() {
    let out = cli(&["oracle", "4", "--mode", "inversion"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["max_size_found"], 4);
    assert_eq!(v["witness_sets"].as_array().unwrap().len(), 1);
    assert_eq!(
        v["witness_sets"][0]["perms"],
        serde_json::json!([[1, 3, 2, 4], [1, 4, 2, 3], [2, 3, 1, 4], [2, 4, 1, 3]])
    );
    assert!(out.stderr.contains("oracle finished"));

    let out = cli(&[
        "oracle",
        "5",
        "--mode",
        "pair",
        "--restricted",
        "--samples",
        "2000",
        "--seed",
        "3",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["candidates"], 1280);
    assert_eq!(v["candidates_verified"], 1280);
    assert_eq!(v["sampled_outside_candidates"], 0);

    assert_eq!(cli(&["oracle", "5", "--mode", "pair"]).code, 1);
    assert_eq!(
        cli(&["oracle", "3", "--mode", "pair", "--restricted"]).code,
        1
    );
    assert_eq!(
        cli(&["oracle", "3", "--mode", "pair", "--samples", "5"]).code,
        2
    );
}

#[test]
fn graph_export() {
    let out = cli_with_stdin(&["graph", "-"], Q4);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("graph G {\n"));
    assert_eq!(out.stdout.matches(" -- ").count(), 4);
    assert!(out
        .stdout
        .contains("1 -- 3 [label=\"2314\", critical=\"(3,1)\"]"));

    let p = cli(&["generate", "5", "--mode", "pair", "--seed", "8"]).stdout;
    let out = cli_with_stdin(
        &["graph", "-", "--strategy", "lex_min", "--format", "dot"],
        &p,
    );
    assert!(out.stdout.starts_with("digraph G {\n"));
    assert_eq!(out.stdout.matches(" -> ").count(), 6);

    let out = cli_with_stdin(
        &["graph", "-", "--strategy", "all"],
        "n=3 mode=inversion\n2 1 3\n3 1 2\n",
    );
    assert_eq!(out.stdout.matches("graph G").count(), 2);
    let out = cli_with_stdin(
        &["graph", "-", "--strategy", "all", "--limit", "1"],
        "n=3 mode=inversion\n2 1 3\n3 1 2\n",
    );
    assert_eq!(out.stdout.matches("graph G").count(), 1);

    let redundant = cli_with_stdin(&["graph", "-"], "n=3 mode=inversion\n2 3 1\n3 2 1\n");
    assert_eq!(redundant.code, 1);
    assert_eq!(
        cli_with_stdin(&["graph", "-", "--strategy", "some"], Q4).code,
        2
    );
}

#[test]
fn phi_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for (n, seed) in [(5, 0u64), (6, 1), (7, 2)] {
        let p = cli(&[
            "generate",
            &n.to_string(),
            "--mode",
            "pair",
            "--seed",
            &seed.to_string(),
        ]);
        let p_doc = parse_document(&p.stdout).unwrap();
        let p_path = dir.path().join(format!("p{n}.txt"));
        std::fs::write(&p_path, &p.stdout).unwrap();

        let phi = cli(&["phi", p_path.to_str().unwrap()]);
        assert_eq!(phi.code, 0, "{}", phi.stderr);
        let x = phi
            .stdout
            .lines()
            .next()
            .unwrap()
            .strip_prefix("# x=")
            .unwrap()
            .to_string();
        let q_path = dir.path().join(format!("q{n}.txt"));
        std::fs::write(&q_path, &phi.stdout).unwrap();
        assert_eq!(
            cli(&["verify", q_path.to_str().unwrap(), "--minimal"]).code,
            0
        );

        let back = cli(&["phi-inverse", "--x", &x, "--q", q_path.to_str().unwrap()]);
        assert_eq!(back.code, 0, "{}", back.stderr);
        assert_eq!(parse_document(&back.stdout).unwrap().perms, p_doc.perms);
    }

    let json = cli_with_stdin(
        &["phi", "-", "--format", "json"],
        &cli(&["generate", "5", "--mode", "pair"]).stdout,
    );
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["x"].as_array().unwrap().len(), 2);
    assert_eq!(v["q"]["mode"], "inversion");

    // orbits are minimal but not maximum for n >= 5
    let orbit = cli(&["generate", "6", "--mode", "pair", "--orbit"]).stdout;
    assert_eq!(cli_with_stdin(&["phi", "-"], &orbit).code, 1);
    let q4 = cli_with_stdin(&["phi", "-"], Q4);
    assert_eq!(q4.code, 1);
}

#[test]
fn binary_reads_stdin_and_sets_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_permcover");
    let mut child = Command::new(exe)
        .args(["verify", "-", "--minimal"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(Q4.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Command::new(exe)
        .args(["gamma", "6", "--mode", "inversion"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "9\n");

    let out = Command::new(exe).args(["gamma", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
