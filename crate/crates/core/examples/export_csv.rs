//! Run a job the way the command line does and write its tables.

use lcurve::report::{read_csv, run_job, JobSpec};

const JOB: &str = r#"
mode = "export"
dim = 4
kappas = ["1", "1", "1"]
sigs = [1, 1, -1]
g = "exp(s)"
g0 = 1.0
range = [0.0, 1.0]
step = 0.01
"#;

fn main() -> Result<(), lcurve::error::Error> {
    let dir = std::env::temp_dir().join("lcurve-export-example");
    let mut job = JobSpec::from_toml(JOB)?;
    job.out = dir.clone();
    let out = run_job(&job)?;
    for path in &out.files {
        let text = std::fs::read_to_string(path).map_err(|e| lcurve::error::Error::Io {
            path: path.clone(),
            source: e,
        })?;
        let (header, rows) = read_csv(&text)?;
        println!("{}: {} rows", path.display(), rows.len());
        println!("columns: {}", header.join(" "));
    }

    job.mode = lcurve::report::Mode::Audit;
    job.theorems = vec!["3.2".into()];
    for line in run_job(&job)?.summary {
        print!("{line}");
    }
    Ok(())
}
