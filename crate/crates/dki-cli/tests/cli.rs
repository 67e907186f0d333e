//! End-to-end tests of the `dki-sim` binary: exit codes, determinism, and
//! the config-echo reproduction contract.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_dki-sim")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// A small, fast geometry: n = 8, forced θ = 0.12 packs ~20 codewords.
const SMALL_BUILD: &str = "code.n = 8\ncode.b = 0.5\nchannel.a = 1.0\n\
channel.sigma2 = 0.02\nchannel.gamma = 1.0\nseed = 5\nbuild.theta = 0.12\n\
build.max_codewords = 20000\n";

#[test]
fn missing_required_key_exits_2_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(&conf, "bounds.n_list = 4\nbounds.kappa_list = 0\ncode.b = 0.5\nchannel.a = 1\nchannel.gamma = 1\n");
    let out = run(&[
        "bounds",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("channel.sigma2"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn unknown_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(&conf, "code.frobnicate = 1\n");
    let out = run(&[
        "bounds",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("code.frobnicate"));
}

#[test]
fn missing_config_flag_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["bounds", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--config"));
}

#[test]
fn invalid_exponent_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(&conf, "code.n = 8\ncode.kappa = 1.5\ncode.b = 0.5\nchannel.a = 1\nchannel.sigma2 = 1\nchannel.gamma = 1\n");
    let out = run(&[
        "build",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn oversized_target_set_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(
        &conf,
        &format!("{SMALL_BUILD}sim.experiment = type2\nsim.target_size = 200\nsim.trials = 4\n"),
    );
    let out = run(&[
        "simulate",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
}

#[test]
fn volume_cap_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(
        &conf,
        "code.n = 4096\ncode.b = 0.5\nchannel.a = 1\nchannel.sigma2 = 1\nchannel.gamma = 1\n",
    );
    let out = run(&[
        "build",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 4, "stderr: {}", stderr(&out));
}

#[test]
fn out_of_range_message_index_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(&conf, &format!("{SMALL_BUILD}sim.experiment = type1\nsim.message_index = 999\nsim.target_size = 1\nsim.trials = 4\n"));
    let out = run(&[
        "simulate",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 5, "stderr: {}", stderr(&out));
}

#[test]
fn missing_codebook_file_exits_6() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(
        &conf,
        &format!(
            "{SMALL_BUILD}sim.experiment = type2\nsim.codebook = {}/nope.txt\nsim.trials = 4\n",
            dir.path().display()
        ),
    );
    let out = run(&[
        "simulate",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 6, "stderr: {}", stderr(&out));
}

#[test]
fn tampered_codebook_fails_validation_with_exit_7() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("build.conf");
    write(&conf, SMALL_BUILD);
    let out_dir = dir.path().join("built");
    let out = run(&[
        "build",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    // Duplicate the first codeword row: minimum distance collapses to zero.
    let text = fs::read_to_string(out_dir.join("codebook.txt")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let mut tampered: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
    tampered[8] = tampered[7].clone(); // rows start after 7 header lines
    let bad_path = dir.path().join("bad.txt");
    write(&bad_path, &(tampered.join("\n") + "\n"));

    let sim_conf = dir.path().join("sim.conf");
    write(
        &sim_conf,
        &format!(
            "{SMALL_BUILD}sim.experiment = type2\nsim.codebook = {}\nsim.trials = 4\n",
            bad_path.display()
        ),
    );
    let out = run(&[
        "simulate",
        "--config",
        sim_conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 7, "stderr: {}", stderr(&out));
}

#[test]
fn build_is_byte_deterministic_and_seed_flag_wins() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(&conf, SMALL_BUILD);
    let (d1, d2) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&d1, &d2] {
        let out = run(&[
            "build",
            "--config",
            conf.to_str().unwrap(),
            "--out",
            d.to_str().unwrap(),
            "--seed",
            "7",
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    let cb1 = fs::read(d1.join("codebook.txt")).unwrap();
    let cb2 = fs::read(d2.join("codebook.txt")).unwrap();
    assert_eq!(cb1, cb2);
    assert_eq!(
        fs::read(d1.join("validation.txt")).unwrap(),
        fs::read(d2.join("validation.txt")).unwrap()
    );
    let text = String::from_utf8(cb1).unwrap();
    assert!(
        text.contains("seed=7\n"),
        "--seed must override the config seed"
    );

    // A different seed must change the construction.
    let d3 = dir.path().join("c");
    let out = run(&[
        "build",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        d3.to_str().unwrap(),
        "--seed",
        "8",
    ]);
    assert_eq!(code(&out), 0);
    assert_ne!(
        fs::read(d3.join("codebook.txt")).unwrap(),
        fs::read(d2.join("codebook.txt")).unwrap()
    );
}

#[test]
fn echoed_config_reproduces_the_run_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(
        &conf,
        &format!(
            "{SMALL_BUILD}sim.experiment = degenerate\nsim.trials = 1024\nchannel.g_max = 1.25\n"
        ),
    );
    let out1 = dir.path().join("run1");
    let out = run(&[
        "simulate",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let first = fs::read_to_string(out1.join("simulate_degenerate.csv")).unwrap();

    // The `# key = value` lines, stripped of the comment prefix, are a
    // complete config for the same run.
    let replay: String = first
        .lines()
        .take_while(|l| l.starts_with("# "))
        .map(|l| format!("{}\n", &l[2..]))
        .collect();
    let conf2 = dir.path().join("replay.conf");
    write(&conf2, &replay);
    let out2 = dir.path().join("run2");
    let out = run(&[
        "simulate",
        "--config",
        conf2.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let second = fs::read_to_string(out2.join("simulate_degenerate.csv")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn trials_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(
        &conf,
        &format!("{SMALL_BUILD}sim.experiment = type1\nsim.target_size = 1\nsim.trials = 9999\n"),
    );
    let out = run(&[
        "simulate",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--trials",
        "512",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("simulate_type1.csv")).unwrap();
    assert!(text.contains("# sim.trials = 512\n"));
    let row = text
        .lines()
        .find(|l| !l.starts_with('#') && !l.starts_with("g,"))
        .unwrap();
    assert_eq!(row.split(',').nth(3).unwrap(), "512");
}

#[test]
fn thread_count_does_not_change_output_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(
        &conf,
        &format!("{SMALL_BUILD}sim.experiment = type2\nsim.target_size = 3\nsim.trials = 512\n"),
    );
    let (d1, d2) = (dir.path().join("t1"), dir.path().join("t4"));
    for (d, t) in [(&d1, "1"), (&d2, "4")] {
        let out = run(&[
            "simulate",
            "--config",
            conf.to_str().unwrap(),
            "--out",
            d.to_str().unwrap(),
            "--threads",
            t,
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    assert_eq!(
        fs::read(d1.join("simulate_type2.csv")).unwrap(),
        fs::read(d2.join("simulate_type2.csv")).unwrap()
    );
}

#[test]
fn sweep_rows_stay_within_the_converse() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(&conf, "sweep.n_list = 4, 6, 8\nsweep.kappa_list = 0, 0.5\ncode.b = 0.5\nchannel.a = 1\nchannel.sigma2 = 1\nchannel.gamma = 1\nseed = 3\n");
    let out = run(&[
        "sweep",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("n,"))
        .collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert_eq!(row.split(',').next_back().unwrap(), "true", "row: {row}");
    }
}

#[test]
fn successful_runs_leave_no_temporary_files() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    write(&conf, "bounds.n_list = 4\nbounds.kappa_list = 0\ncode.b = 0.5\nchannel.a = 1\nchannel.sigma2 = 1\nchannel.gamma = 1\n");
    let nested = dir.path().join("deep/out");
    let out = run(&[
        "bounds",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        nested.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(nested.join("bounds.csv").exists());
    let leftovers: Vec<_> = fs::read_dir(&nested)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|name| name.ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty(), "leftover temp files: {leftovers:?}");
}
