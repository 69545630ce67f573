use std::path::Path;
use std::process::{Command, Output};

fn agdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agdec")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_code(dir: &Path, curve: &str, deg_g: &str) -> String {
    let o = agdec(&["code", "--curve", curve, "--deg-g", deg_g]);
    assert!(o.status.success());
    let path = dir.join("code.txt");
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

fn channel(code: &str, t: &str, seed: &str, model: &str, dir: &Path) {
    let o = agdec(&[
        "channel",
        "--code",
        code,
        "--t",
        t,
        "--seed",
        seed,
        "--model",
        model,
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn radius_table_rows() {
    let o = agdec(&["radius", "--n", "200", "--g", "10", "--deg-g", "19", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("half_designed = 90") && s.contains("sudan = 107") && s.contains("power_radius = 113"),
        "{s}"
    );
    let s = stdout(&agdec(&[
        "radius", "--n", "200", "--g", "10", "--deg-g", "46", "--ell", "2",
    ]));
    assert!(
        s.contains("half_designed = 76") && s.contains("sudan = 80") && s.contains("power_radius = 86"),
        "{s}"
    );
    let s = stdout(&agdec(&[
        "radius", "--n", "10", "--g", "0", "--deg-g", "3", "--ell", "2",
    ]));
    let pick = |key: &str| {
        s.lines()
            .find(|l| l.starts_with(key))
            .unwrap()
            .split(" = ")
            .nth(1)
            .unwrap()
            .to_string()
    };
    assert_eq!(pick("sudan_basic"), pick("sudan ="));
    let s = stdout(&agdec(&["radius", "--curve", "hermitian 2 2", "--deg-g", "8"]));
    assert!(s.contains("power_radius = 34"), "{s}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(agdec(&["radius", "--n", "200"]).status.code(), Some(1));
    assert_eq!(
        agdec(&["radius", "--n", "20", "--g", "1", "--deg-g", "30"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(agdec(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        agdec(&[
            "decode",
            "--code",
            "/nonexistent",
            "--received",
            "/nonexistent",
            "--t",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(agdec(&["--help"]).status.code(), Some(0));
}

#[test]
fn decode_error_free_word() {
    let dir = tempfile::tempdir().unwrap();
    let code = write_code(dir.path(), "hermitian 3 1", "8");
    channel(&code, "0", "1", "uniform", dir.path());
    let rec = dir.path().join("received.txt");
    let o = agdec(&[
        "decode",
        "--code",
        &code,
        "--received",
        rec.to_str().unwrap(),
        "--t",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("outcome: success"));
    let zero = vec!["0,0"; 27].join(" ");
    assert!(s.contains(&format!("error: {zero}")), "{s}");
}

#[test]
fn decode_hermitian_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let code = write_code(dir.path(), "hermitian 3 1", "8");
    channel(&code, "9", "77", "uniform", dir.path());
    let p = |f: &str| dir.path().join(f).to_str().unwrap().to_string();
    let o = agdec(&[
        "decode",
        "--code",
        &code,
        "--received",
        &p("received.txt"),
        "--t",
        "9",
        "--error",
        &p("error.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    let sent = std::fs::read_to_string(p("codeword.txt")).unwrap();
    assert!(s.contains(&format!("codeword: {}", sent.trim())));
    assert!(s.contains("delta=0"));
}

#[test]
fn decode_worst_case_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let code = write_code(dir.path(), "hermitian 2 2", "8");
    channel(&code, "32", "3", "worst-case", dir.path());
    let p = |f: &str| dir.path().join(f).to_str().unwrap().to_string();
    let o = agdec(&[
        "decode",
        "--code",
        &code,
        "--received",
        &p("received.txt"),
        "--ell",
        "2",
        "--t",
        "32",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("outcome: failure"));
}

#[test]
fn experiment_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "curve = hermitian 3 1\ndegG = 6\nell = 2\nt = radius\ntrials = 4\nseed = 42\n",
    )
    .unwrap();
    for format in ["csv", "json", "markdown"] {
        let a = agdec(&["experiment", cfg.to_str().unwrap(), "--format", format]);
        let b = agdec(&["experiment", cfg.to_str().unwrap(), "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
    let csv = stdout(&agdec(&["experiment", cfg.to_str().unwrap()]));
    assert_eq!(
        csv.lines().next().unwrap(),
        "ell,q,curve,g,n,degG,half_designed,sudan,power_radius,t,pts_in_De,delta0,delta_gaps,success"
    );
    assert_eq!(csv.lines().count(), 5);
    std::fs::write(
        &cfg,
        "curve = hermitian 3 1\ndegG = 6\nell = 2\nt = radius\ntrials = 0\nseed = 42\n",
    )
    .unwrap();
    assert_eq!(agdec(&["experiment", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn experiment_reads_curve_files_relative_to_the_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("f11.curve"),
        "field 11 1\ncab 5 6\nterm 6 0 1\nterm 1 0 1\nterm 0 0 1\n",
    )
    .unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "curve = f11.curve\ndegG = 9\nell = 1\nt = 3\ntrials = 2\nseed = 1\nformat = json\n",
    )
    .unwrap();
    let o = agdec(&["experiment", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"n\": 31"));
}

#[test]
fn selftest_passes_and_detects_faults() {
    let o = agdec(&["selftest", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = agdec(&["selftest", "--inject-fault", "modulus"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FAIL field axioms"));
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "cfg") {
            let text = std::fs::read_to_string(&path).unwrap();
            let cfg = agdec_cli::config::ExperimentConfig::parse(&text).unwrap();
            cfg.curve.load(Some(&dir)).unwrap();
            seen += 1;
        }
    }
    assert!(seen >= 3);
}
