use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcurve::frenet::FrameKind;
use lcurve::report::{exit_code, run_job, JobSpec, Mode};

#[derive(Parser)]
#[command(
    name = "lcurve",
    version,
    about = "Curves in Lorentzian n-space: frames, g-position fields and identity audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize frames and write frames.csv
    Frame(JobArgs),
    /// Synthesize the curve and write trace.csv and frames.csv
    Synthesize(JobArgs),
    /// Classify xi_g as g-rectifying, g-normal, both or neither
    Classify(JobArgs),
    /// Audit the identities of one or more theorems
    Audit(JobArgs),
    /// Write the per-node table export.csv
    Export(JobArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Spacelike,
    Null,
}

#[derive(Args)]
struct JobArgs {
    /// TOML job file; flags given on the command line override it
    #[arg(long, value_name = "FILE")]
    job: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Curvature expression in s, repeated in order k1, k2, ..
    #[arg(long = "kappa", value_name = "EXPR")]
    kappas: Vec<String>,
    /// Signature +1 or -1, repeated in order e1, e2, ..
    #[arg(long = "sig", value_name = "SIGN", allow_negative_numbers = true)]
    sigs: Vec<i8>,
    /// The function g in s
    #[arg(long, value_name = "EXPR")]
    g: Option<String>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    range: Option<Vec<f64>>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s0: Option<f64>,
    /// G(s0)
    #[arg(long, allow_negative_numbers = true)]
    g0: Option<f64>,
    /// <xi_g, T> for null rectifying profiles
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<f64>,
    /// xi_g(s0), one coordinate per flag
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    anchor: Vec<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Theorem id: 3.2, 3.3, 3.4 or 4.2 (repeatable)
    #[arg(long = "theorem", value_name = "ID")]
    theorems: Vec<String>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

impl JobArgs {
    fn into_spec(self, mode: Mode) -> lcurve::error::Result<JobSpec> {
        let mut job = match &self.job {
            Some(path) => JobSpec::load(path)?,
            None => JobSpec::new(mode),
        };
        job.mode = mode;
        if let Some(v) = self.dim {
            job.dim = Some(v);
        }
        if let Some(k) = self.kind {
            job.kind = match k {
                Kind::Spacelike => FrameKind::Spacelike,
                Kind::Null => FrameKind::Null,
            };
        }
        if !self.kappas.is_empty() {
            job.kappas = self.kappas;
        }
        if !self.sigs.is_empty() {
            job.sigs = self.sigs;
        }
        if self.g.is_some() {
            job.g = self.g;
        }
        if let Some(r) = self.range {
            job.range = Some([r[0], r[1]]);
        }
        if let Some(v) = self.step {
            job.step = v;
        }
        if self.s0.is_some() {
            job.s0 = self.s0;
        }
        if let Some(v) = self.g0 {
            job.g0 = v;
        }
        if let Some(v) = self.c1 {
            job.c1 = v;
        }
        if !self.anchor.is_empty() {
            job.anchor = Some(self.anchor);
        }
        if self.tol.is_some() {
            job.tol = self.tol;
        }
        if !self.theorems.is_empty() {
            job.theorems = self.theorems;
        }
        if let Some(v) = self.out {
            job.out = v;
        }
        Ok(job)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match cli.command {
        Command::Frame(a) => (Mode::Frame, a),
        Command::Synthesize(a) => (Mode::Synthesize, a),
        Command::Classify(a) => (Mode::Classify, a),
        Command::Audit(a) => (Mode::Audit, a),
        Command::Export(a) => (Mode::Export, a),
    };
    match args.into_spec(mode).and_then(|job| run_job(&job)) {
        Ok(out) => {
            for line in &out.summary {
                println!("{}", line.trim_end());
            }
            for path in &out.files {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
