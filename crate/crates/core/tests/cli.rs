use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn manifest(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn tool(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_anusaaraka"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // a command that fails early may exit before reading its input
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bundled_resources_validate() {
    for pair in ["hin-eng", "kan-hin", "tel-hin"] {
        let res = manifest(&format!("resources/{pair}.anu"));
        let corpus = manifest(&format!("resources/{pair}.corpus"));
        let o = tool(&["validate", "--resources", &res, "--corpus", &corpus], "");
        assert_eq!(o.status.code(), Some(0), "{pair}: {}", stdout(&o));
        assert_eq!(stdout(&o), format!("{pair}: ok\n"));
    }
}

#[test]
fn complementizer_sentence_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out.txt");
    std::fs::write(&input, "mohana nALe baruvanu eMdu rAma heLidanu .\n").unwrap();
    let o = tool(
        &[
            "transduce",
            "--resources",
            &manifest("resources/kan-hin.anu"),
            "--in",
            input.to_str().unwrap(),
            "--out",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(output).unwrap(),
        "mohana kala AyegA EsA rAma kahA .\n"
    );
}

#[test]
fn transduce_piped_into_invert_restores_input() {
    let res = manifest("resources/hin-eng.anu");
    let input = "rAma  ne roTI khAI.\nvaHa ghara acchA HE .\n\nkoI  anajAna  SabDa !\nrAma ne bEnka meM apanA khAtA kholA .\n";
    for batch in [false, true] {
        let mut args = vec!["transduce", "--resources", &res];
        if batch {
            args.push("--batch");
        }
        let forward = tool(&args, input);
        assert_eq!(forward.status.code(), Some(0));
        let back = tool(&["invert", "--resources", &res], &stdout(&forward));
        assert_eq!(back.status.code(), Some(0));
        let canonical: String = input
            .lines()
            .map(|l| anusaaraka::analyzer::canonical(l) + "\n")
            .collect();
        assert_eq!(stdout(&back), canonical);
    }
}

#[test]
fn trace_goes_to_stderr_for_transduce() {
    let o = tool(
        &["transduce", "--trace", "--resources", "bundled:hin-eng"],
        "apanA khAtA\n",
    );
    assert_eq!(stdout(&o), "his ledger\n");
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("S: apanA"), "{err}");
    assert!(err.contains("F: group 1: khAtA after:apanA keep:n (removed 1)"));
}

#[test]
fn trace_subcommand_prints_interlinear() {
    let o = tool(
        &["trace", "--resources", "bundled:tel-hin"],
        "rAmuDu tinina camacA\n",
    );
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].contains("tin+ina<ina>[v]"), "{text}");
    assert_eq!(lines[2], "@: rAma      khAyA_[HE/tHA]_jo_*_vaHa- cammaca");
}

#[test]
fn roundtrip_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.corpus");
    std::fs::write(&empty, "").unwrap();
    let o = tool(
        &[
            "roundtrip",
            "--resources",
            "bundled:tel-hin",
            "--corpus",
            empty.to_str().unwrap(),
            "--random",
            "0",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));

    let o = tool(
        &[
            "roundtrip",
            "--resources",
            "bundled:kan-hin",
            "--corpus",
            "bundled:kan-hin",
            "--random",
            "200",
            "--seed",
            "9",
        ],
        "",
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("generated: 200/200"));

    // a wrong gold output is a harness failure
    let bad = dir.path().join("bad.corpus");
    std::fs::write(&bad, "rAma heLidanu .\trAma kahegA .\n").unwrap();
    let o = tool(
        &[
            "roundtrip",
            "--resources",
            "bundled:kan-hin",
            "--corpus",
            bad.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corpus line 1"));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.anu");
    std::fs::write(&broken, "[lexicon]\nrAma\tn\n").unwrap();
    let o = tool(&["validate", "--resources", broken.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(
        tool(&["validate", "--resources", "/no/such/file.anu"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tool(&["transduce"], "").status.code(), Some(2));

    let sabotage = manifest("tests/fixtures/sabotage.anu");
    let o = tool(&["validate", "--resources", &sabotage], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("A, adi"));
    assert_eq!(
        tool(&["transduce", "--resources", &sabotage], "A\n")
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn gen_emits_requested_count() {
    let o = tool(
        &[
            "gen",
            "--resources",
            "bundled:hin-eng",
            "--seed",
            "42",
            "--count",
            "7",
            "--max-len",
            "4",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().all(|l| !l.is_empty()));
}
