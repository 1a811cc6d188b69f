use std::process::Command;

fn qsync() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qsync"))
}

fn temp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("qsync-cli-{}-{name}", std::process::id()))
}

#[test]
fn ou_check_succeeds_and_writes_csv() {
    let out = temp("ou.csv");
    let status = qsync().args(["ou-check", "--out"]).arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# qsync ou-check"));
    assert!(text.lines().any(|l| l.starts_with("qq,")));
    std::fs::remove_file(out).ok();
}

#[test]
fn failed_sweep_points_exit_with_two() {
    let out = temp("mu.csv");
    let status = qsync()
        .args(["sweep-mu", "--set", "sweep.mu=[0.02]", "--set", "integrator.transient_periods=20"])
        .args(["--set", "integrator.record_periods=2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    // At the reference drive the fluctuations blow up within a few periods.
    assert_eq!(status.code(), Some(2));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l.contains(",failed,")));
    std::fs::remove_file(out).ok();
}

#[test]
fn config_file_and_overrides_combine() {
    let cfg = temp("cfg.toml");
    std::fs::write(&cfg, "[params]\ndrive = 50.0\n[integrator]\ntransient_periods = 20.0\nrecord_periods = 2.0\n").unwrap();
    let out = temp("pair.csv");
    let status = qsync()
        .arg("pair-trace")
        .arg("--config")
        .arg(&cfg)
        .args(["--set", "params.mu=0.03", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("#   mu = 0.03"));
    assert!(text.contains("#   drive = 50.0"));
    assert!(text.lines().last().unwrap().starts_with("# summary:"));
    std::fs::remove_file(cfg).ok();
    std::fs::remove_file(out).ok();
}

#[test]
fn fatal_errors_exit_with_one() {
    assert_eq!(qsync().arg("nonsense").status().unwrap().code(), Some(1));
    let status = qsync().args(["pair-trace", "--set", "params.kappa=-1"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let status = qsync().args(["chain", "--config", "/nonexistent/qsync.toml"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
}
