#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use std::fs;
use std::path::Path;
use std::process::Command;

use lcurve::characterize::{AuditReport, GridInfo, IdentityResult, Theorem, Verdict};
use lcurve::frenet::FrameKind;
use lcurve::report::{
    audit_json, read_csv, run_job, synthesize_job, trace_columns, trace_csv, write_audit_json,
    JobSpec, Mode,
};

fn rectifying_job(mode: Mode, out: &Path) -> JobSpec {
    JobSpec::from_toml(&format!(
        r#"
mode = "{}"
dim = 4
kind = "spacelike"
kappas = ["1", "1", "1"]
sigs = [1, 1, -1]
g = "exp(s)"
range = [0.0, 1.0]
step = 0.01
g0 = 1.0
out = "{}"
"#,
        mode.name(),
        out.display()
    ))
    .unwrap()
}

fn lcurve(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lcurve"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn export_columns_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_job(&rectifying_job(Mode::Export, dir.path())).unwrap();
    let text = fs::read_to_string(&out.files[0]).unwrap();
    let (header, rows) = read_csv(&text).unwrap();
    assert_eq!(header.len(), 1 + 4 + 1 + 4 + 3 + 3);
    assert_eq!(header.len(), trace_columns(FrameKind::Spacelike, 4));
    assert_eq!(&header[..3], ["s", "x1", "x2"]);
    assert_eq!(header.last().unwrap(), "w2");
    assert_eq!(rows.len(), 101);
    // every cell survives a text round trip unchanged
    for (line, row) in text.lines().skip(1).zip(&rows) {
        let again: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        assert_eq!(line, again.join(","));
    }
}

#[test]
fn small_trace_table_has_one_row_per_node() {
    let mut job = rectifying_job(Mode::Export, Path::new("."));
    job.range = Some([0.0, 0.15]);
    job.step = 0.05;
    let valid = job.validate().unwrap();
    let (trace, fd) = synthesize_job(&job).unwrap();
    let gft =
        lcurve::gfield::g_position_from_frames(&fd, valid.g.as_ref().unwrap(), 0.0, 1.0, None)
            .unwrap();
    let profile =
        lcurve::gfield::decompose_field(&fd, &gft.xi_g, lcurve::gfield::BasisKind::Rectifying)
            .unwrap();
    let text = trace_csv(&trace, &fd, &gft, &profile).unwrap();
    assert_eq!(text.lines().count(), 1 + trace.len());
    assert!(text.ends_with('\n'));
}

#[test]
fn audit_json_shape() {
    let report = AuditReport {
        theorem: Theorem::SpacelikeRectifying,
        identities: vec![
            IdentityResult {
                label: "3.7-literal".into(),
                eq: "a = b".into(),
                max_residual: 0.5,
                mean_residual: 0.25,
                verdict: Verdict::HoldsWithSignVariant,
            },
            IdentityResult {
                label: "3.7-variant".into(),
                eq: "a = -b".into(),
                max_residual: 0.0,
                mean_residual: 0.0,
                verdict: Verdict::Holds,
            },
        ],
        c_estimate: 2.0,
        c_squared: 4.0,
        grid: GridInfo::of(&[0.0, 0.5, 1.0]),
        dim: 3,
        notes: vec!["n".into()],
    };
    let golden = r#"{
  "theorem": "3.2",
  "identities": [
    {
      "label": "3.7-literal",
      "eq": "a = b",
      "max_residual": 0.5,
      "mean_residual": 0.25,
      "verdict": "holds_with_sign_variant"
    },
    {
      "label": "3.7-variant",
      "eq": "a = -b",
      "max_residual": 0.0,
      "mean_residual": 0.0,
      "verdict": "holds"
    }
  ],
  "c_estimate": 2.0,
  "c_squared": 4.0,
  "grid": {
    "n": 3,
    "h": 0.5,
    "range": [
      0.0,
      1.0
    ]
  },
  "dim": 3,
  "notes": [
    "n"
  ]
}
"#;
    assert_eq!(audit_json(&report).unwrap(), golden);
    let back: AuditReport = serde_json::from_str(golden).unwrap();
    assert_eq!(back, report);

    let empty = AuditReport {
        identities: Vec::new(),
        ..report
    };
    let dir = tempfile::tempdir().unwrap();
    assert!(write_audit_json(&empty, &dir.path().join("x.json")).is_err());
    assert!(!dir.path().join("x.json").exists());
}

#[test]
fn c_estimate_is_finite_for_every_audit() {
    let dir = tempfile::tempdir().unwrap();
    let mut job = rectifying_job(Mode::Audit, dir.path());
    job.theorems = vec!["3.2".into()];
    let out = run_job(&job).unwrap();
    assert!(out.reports.iter().all(|r| r.c_estimate.is_finite()));

    let mut job = rectifying_job(Mode::Audit, dir.path());
    job.sigs = vec![-1, 1, 1];
    job.g = Some("1".into());
    job.theorems = vec!["4.2".into()];
    let out = run_job(&job).unwrap();
    assert!(out.reports[0].c_estimate.is_finite());
}

#[test]
fn validation_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Box<dyn Fn(&mut JobSpec)>, &str)> = vec![
        (Box::new(|j| j.g = None), "g: required"),
        (Box::new(|j| j.step = 0.0), "step: must be positive"),
        (Box::new(|j| j.kappas.pop().map(|_| ()).unwrap()), "kappa:"),
        (Box::new(|j| j.kappas[1] = "1 +".into()), "kappa[2]:"),
        (Box::new(|j| j.sigs = vec![1, 1, 1]), "sig:"),
        (Box::new(|j| j.range = Some([1.0, 0.0])), "range:"),
        (Box::new(|j| j.s0 = Some(0.005)), "s0:"),
        (Box::new(|j| j.theorems = vec!["3.4".into()]), "theorem:"),
        (Box::new(|j| j.anchor = Some(vec![0.0; 3])), "anchor:"),
        (Box::new(|j| j.tol = Some(-1.0)), "tol:"),
    ];
    for (edit, want) in cases {
        let mut job = rectifying_job(Mode::Audit, dir.path());
        edit(&mut job);
        let err = run_job(&job).unwrap_err();
        assert!(err.to_string().starts_with(want), "{err} vs {want}");
        assert_eq!(lcurve::report::exit_code(&err), 1);
    }
}

#[test]
fn job_file_round_trips() {
    let job = rectifying_job(Mode::Classify, Path::new("out"));
    let again = JobSpec::from_toml(&job.to_toml()).unwrap();
    assert_eq!(job, again);
    assert!(JobSpec::from_toml("mode = \"audit\"\nbogus = 1\n").is_err());
}

#[test]
fn cli_exit_codes() {
    let base = [
        "--dim", "3", "--kappa", "1", "--kappa", "0.5", "--sig", "1", "--sig", "-1", "--range",
        "0", "1",
    ];
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();

    let mut args = vec!["audit"];
    args.extend(base);
    let o = lcurve(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("g: required"));

    let mut args = vec!["audit"];
    args.extend(base);
    args.extend(["--g", "1", "--step", "0"]);
    let o = lcurve(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("step: must be positive"));

    let o = lcurve(&[
        "synthesize",
        "--dim",
        "3",
        "--kappa",
        "1",
        "--kappa",
        "s-0.5",
        "--sig",
        "1",
        "--sig",
        "-1",
        "--range",
        "0",
        "1",
        "--out",
        out_dir,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("node 500"));

    let mut args = vec!["classify"];
    args.extend(base);
    args.extend(["--g", "1", "--out", out_dir]);
    let o = lcurve(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("classification:"));
    assert!(dir.path().join("classify.json").exists());
}

#[test]
fn cli_reads_job_files() {
    let dir = tempfile::tempdir().unwrap();
    let job = rectifying_job(Mode::Synthesize, dir.path());
    let path = dir.path().join("job.toml");
    fs::write(&path, job.to_toml()).unwrap();
    let o = lcurve(&["synthesize", "--job", path.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(text.lines().count(), 102);
    assert!(dir.path().join("frames.csv").exists());
}

#[test]
fn identical_jobs_write_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let mut job = rectifying_job(Mode::Audit, dir.path());
        job.dim = Some(3);
        job.kappas = vec!["1".into(), "(s+1)/2".into()];
        job.sigs = vec![1, -1];
        job.g = Some("1".into());
        job.range = Some([0.0, 0.9]);
        job.theorems = vec!["3.2".into(), "3.3".into()];
        run_job(&job).unwrap_or_else(|e| panic!("{e}"));
        run_job(&rectifying_job(Mode::Export, dir.path())).unwrap();
    }
    for name in ["audit_3.2.json", "audit_3.3.json", "export.csv"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
}
