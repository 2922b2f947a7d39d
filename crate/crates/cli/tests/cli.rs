use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn spectpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectpd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, file: &str) -> String {
    fs::read_to_string(dir.join(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

fn strip_wall_time(meta: &str) -> String {
    meta.lines()
        .filter(|l| !l.contains("wall_time_seconds"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn reruns_are_byte_identical() {
    let out = tempfile::tempdir().unwrap();
    let o = out.path().to_str().unwrap();
    let args = [
        "ensembles",
        "--sizes",
        "12,20",
        "--samples",
        "6",
        "--seed",
        "7",
        "--out",
        o,
    ];
    assert!(spectpd(&args).status.success());
    let dir = out.path().join("ensembles");
    let first = read(&dir, "ensembles.csv");
    let meta = read(&dir, "metadata.json");
    assert!(spectpd(&args).status.success());
    assert_eq!(first, read(&dir, "ensembles.csv"));
    assert_eq!(
        strip_wall_time(&meta),
        strip_wall_time(&read(&dir, "metadata.json"))
    );
    assert_eq!(first.lines().count(), 1 + 2 * 3);
    assert!(first.contains("\"kind=wishart,n=12,p=24\""));

    let other = spectpd(&[
        "ensembles",
        "--sizes",
        "12,20",
        "--samples",
        "6",
        "--seed",
        "8",
        "--out",
        o,
    ]);
    assert!(other.status.success());
    assert_ne!(first, read(&dir, "ensembles.csv"));
}

#[test]
fn thread_count_does_not_change_results() {
    let out = tempfile::tempdir().unwrap();
    let a = out.path().join("a");
    let b = out.path().join("b");
    for (dir, threads) in [(&a, "1"), (&b, "3")] {
        let s = spectpd(&[
            "auc",
            "--sizes",
            "10",
            "--samples",
            "20",
            "--threads",
            threads,
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stderr));
    }
    for file in ["auc.csv", "pearson.csv", "spacing_ratio.csv"] {
        assert_eq!(read(&a.join("auc"), file), read(&b.join("auc"), file));
    }
}

#[test]
fn config_file_with_flag_overrides() {
    let out = tempfile::tempdir().unwrap();
    let cfg = out.path().join("run.cfg");
    fs::write(
        &cfg,
        "# small run\nexperiment = pe_table\nsizes = 10, 14\nsamples_per_cell = 5\nmaster_seed = 3\nformat = json\n",
    )
    .unwrap();
    let o = out.path().to_str().unwrap();
    let s = spectpd(&[
        "pe_table",
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "4",
        "--out",
        o,
    ]);
    assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stderr));
    let dir = out.path().join("pe_table");
    let rows: serde_json::Value = serde_json::from_str(&read(&dir, "pe.json")).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 10);
    assert_eq!(rows[0]["samples"], 4);
    assert_eq!(rows[0]["master_seed"], 3);
    let meta: serde_json::Value = serde_json::from_str(&read(&dir, "metadata.json")).unwrap();
    assert_eq!(meta["config"]["samples_per_cell"], "4");
    assert!(meta["version"]
        .as_str()
        .unwrap()
        .starts_with(env!("CARGO_PKG_VERSION")));
}

#[test]
fn configuration_errors_exit_2() {
    let out = tempfile::tempdir().unwrap();
    let o = out.path().to_str().unwrap();
    let bad_key = out.path().join("bad.cfg");
    fs::write(&bad_key, "colour = red\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["tables", "--out", o],
        vec!["universality", "--samples", "1", "--out", o],
        vec!["universality", "--sizes", "", "--out", o],
        vec!["universality", "--sizes", "ten", "--out", o],
        vec!["universality", "--format", "xml", "--out", o],
        vec![
            "universality",
            "--config",
            bad_key.to_str().unwrap(),
            "--out",
            o,
        ],
        vec![
            "universality",
            "--config",
            "/nonexistent/file.cfg",
            "--out",
            o,
        ],
        vec!["universality", "--threads", "0", "--out", o],
        vec!["rp_sweep", "--samples", "10", "--out", o],
        vec!["w2", "--bogus"],
    ];
    for args in cases {
        let s = spectpd(&args);
        assert_eq!(s.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(fs::read_dir(out.path()).unwrap().count(), 1);
}

#[test]
fn numerical_failure_exits_3_without_output() {
    let out = tempfile::tempdir().unwrap();
    // Two 3x3 samples pool only four spacings, too few for a KS test.
    let s = spectpd(&[
        "surmise_ks",
        "--sizes",
        "3",
        "--samples",
        "2",
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&s.stderr).contains("numerical failure"));
    assert_eq!(fs::read_dir(out.path()).unwrap().count(), 0);
}

#[test]
fn every_experiment_runs_small() {
    let out = tempfile::tempdir().unwrap();
    let o = out.path().to_str().unwrap();
    let expected = [
        ("universality", vec!["cv.csv", "cv_exponents.csv"]),
        ("pe_table", vec!["pe.csv", "bias_exponent.csv"]),
        ("ensembles", vec!["ensembles.csv"]),
        ("surmise_ks", vec!["ks.csv", "histogram.csv"]),
        ("w2", vec!["w2.csv", "w2_ratio.csv", "w2_pairs.csv"]),
        ("auc", vec!["auc.csv", "pearson.csv", "spacing_ratio.csv"]),
        (
            "rp_sweep",
            vec!["snr.csv", "rp_values.csv", "crossings.csv"],
        ),
        ("spiked", vec!["spiked_auc.csv"]),
        ("ecdf_fig", vec!["ecdf.csv", "ecdf_summary.csv"]),
    ];
    for (experiment, files) in &expected {
        let s = spectpd(&[
            experiment,
            "--sizes",
            "16,24",
            "--samples",
            "30",
            "--out",
            o,
        ]);
        assert!(
            s.status.success(),
            "{experiment}: {}",
            String::from_utf8_lossy(&s.stderr)
        );
        let dir = out.path().join(experiment);
        assert_eq!(
            String::from_utf8_lossy(&s.stdout).trim(),
            dir.to_str().unwrap()
        );
        for file in files.iter().copied() {
            let text = read(&dir, file);
            assert!(
                text.ends_with('\n') && !text.contains('\r'),
                "{experiment}/{file}"
            );
        }
        assert!(dir.join("metadata.json").exists());
    }
    assert_eq!(fs::read_dir(out.path()).unwrap().count(), expected.len());
}

#[test]
fn help_and_version() {
    assert!(spectpd(&["--help"]).status.success());
    let v = spectpd(&["--version"]);
    assert!(v.status.success());
    assert!(String::from_utf8_lossy(&v.stdout).contains(env!("CARGO_PKG_VERSION")));
}
