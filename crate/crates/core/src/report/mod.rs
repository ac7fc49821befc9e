//! Job specifications and the pipelines behind the `lcurve` command.
//!
//! A [`JobSpec`] is built from flags or read from a TOML job file, validated,
//! and run by [`run_job`]. Output files are written atomically into `out`.

mod output;

pub use output::{
    audit_json, audit_text, fmt_num, frames_csv, points_csv, read_csv, trace_columns, trace_csv,
    write_atomic, write_audit_json, write_trace_csv,
};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::characterize::{
    assemble_from_profile, audit_g_normal, audit_null_rectifying, audit_spacelike_rectifying,
    classify, default_tolerance, hyperbolic_c_estimate, hyperbolic_form_audit, normal_coeffs,
    rectifying_coeffs_null, rectifying_coeffs_spacelike, AuditReport, Classification, Theorem,
};
use crate::error::{Error, Result};
use crate::expr::ScalarFn;
use crate::frenet::{
    check_spacelike_sigs, frame_residuals, synthesize_from_curvatures, CurvatureSpec, CurveTrace,
    FrameKind, FrenetData,
};
use crate::gfield::{decompose_field, g_position_from_frames, BasisKind, GFieldTrace};
use crate::metric::{LVector, SignatureVector};

/// What a job produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Frames and their pairing residuals.
    Frame,
    /// Curve points and frames.
    Synthesize,
    /// Membership verdict for `xi_g`.
    Classify,
    /// One report per requested theorem.
    Audit,
    /// Per-node table of the curve, `G`, `xi_g`, curvatures and coefficients.
    Export,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Frame => "frame",
            Mode::Synthesize => "synthesize",
            Mode::Classify => "classify",
            Mode::Audit => "audit",
            Mode::Export => "export",
        }
    }
}

fn default_kind() -> FrameKind {
    FrameKind::Spacelike
}

fn default_step() -> f64 {
    1e-3
}

fn default_out() -> PathBuf {
    PathBuf::from(".")
}

/// A complete job, as read from flags or a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub mode: Mode,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default = "default_kind")]
    pub kind: FrameKind,
    /// `k1 .. k_m` in order.
    #[serde(default)]
    pub kappas: Vec<String>,
    /// `e1 .. e_{n-1}`; spacelike only.
    #[serde(default)]
    pub sigs: Vec<i8>,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default)]
    pub range: Option<[f64; 2]>,
    #[serde(default = "default_step")]
    pub step: f64,
    /// Base point of `G` and `xi_g`; the range start when absent.
    #[serde(default)]
    pub s0: Option<f64>,
    /// `G(s0)`.
    #[serde(default)]
    pub g0: f64,
    /// `<xi_g, T>` for null rectifying profiles.
    #[serde(default)]
    pub c1: f64,
    /// `xi_g(s0)`. When absent, audits and exports use the value the
    /// theorem's coefficient profile predicts and classification uses zero.
    #[serde(default)]
    pub anchor: Option<Vec<f64>>,
    #[serde(default)]
    pub tol: Option<f64>,
    /// Theorem ids to audit; the kind's default when empty.
    #[serde(default)]
    pub theorems: Vec<String>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

impl JobSpec {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            dim: None,
            kind: default_kind(),
            kappas: Vec::new(),
            sigs: Vec::new(),
            g: None,
            range: None,
            step: default_step(),
            s0: None,
            g0: 0.0,
            c1: 0.0,
            anchor: None,
            tol: None,
            theorems: Vec::new(),
            out: default_out(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::validation("job", e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: e.message().to_string(),
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).unwrap_or_default()
    }

    /// Check every field and resolve defaults.
    pub fn validate(&self) -> Result<ValidJob> {
        let dim = self
            .dim
            .ok_or_else(|| Error::validation("dim", "required"))?;
        if dim < self.kind.min_dim() {
            return Err(Error::validation(
                "dim",
                format!("{:?} frames need dim >= {}", self.kind, self.kind.min_dim())
                    .to_lowercase(),
            ));
        }
        let count = self.kind.curvature_count(dim);
        if self.kappas.len() != count {
            return Err(Error::validation(
                "kappa",
                format!(
                    "expected {count} expressions for dim {dim}, got {}",
                    self.kappas.len()
                ),
            ));
        }
        let kappas = self
            .kappas
            .iter()
            .enumerate()
            .map(|(i, t)| {
                ScalarFn::parse(t)
                    .map_err(|e| Error::validation(format!("kappa[{}]", i + 1), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let sigs = match self.kind {
            FrameKind::Spacelike => {
                if self.sigs.len() != dim - 1 {
                    return Err(Error::validation(
                        "sig",
                        format!(
                            "expected {} signatures for dim {dim}, got {}",
                            dim - 1,
                            self.sigs.len()
                        ),
                    ));
                }
                let sigs = SignatureVector::new(self.sigs.clone())
                    .map_err(|e| Error::validation("sig", e.to_string()))?;
                check_spacelike_sigs(dim, &sigs)?;
                sigs
            }
            FrameKind::Null => {
                if !self.sigs.is_empty() {
                    return Err(Error::validation("sig", "null frames take no signatures"));
                }
                SignatureVector::all_positive(dim - 1)
            }
        };
        let needs_g = matches!(self.mode, Mode::Classify | Mode::Audit | Mode::Export);
        let g = match &self.g {
            Some(t) => Some(ScalarFn::parse(t).map_err(|e| Error::validation("g", e.to_string()))?),
            None if needs_g => return Err(Error::validation("g", "required")),
            None => None,
        };
        let [a, b] = self
            .range
            .ok_or_else(|| Error::validation("range", "required"))?;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::validation(
                "range",
                format!("need a < b, got [{a}, {b}]"),
            ));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::validation("step", "must be positive"));
        }
        if self.step > (b - a) / 3.0 * (1.0 + 1e-9) {
            return Err(Error::validation(
                "step",
                "leaves fewer than 4 nodes in the range",
            ));
        }
        let s0 = self.s0.unwrap_or(a);
        if !(s0.is_finite() && a <= s0 && s0 <= b) {
            return Err(Error::validation(
                "s0",
                format!("{s0} is outside [{a}, {b}]"),
            ));
        }
        let tol = match self.tol {
            Some(t) if t.is_finite() && t > 0.0 => t,
            Some(t) => {
                return Err(Error::validation(
                    "tol",
                    format!("must be positive, got {t}"),
                ))
            }
            None => default_tolerance(),
        };
        if !(self.g0.is_finite()) {
            return Err(Error::validation("g0", "must be finite"));
        }
        if !(self.c1.is_finite()) {
            return Err(Error::validation("c1", "must be finite"));
        }
        let anchor = match &self.anchor {
            Some(v) if v.len() != dim => {
                return Err(Error::validation(
                    "anchor",
                    format!("expected {dim} coordinates, got {}", v.len()),
                ))
            }
            Some(v) => Some(
                LVector::new(v.clone()).map_err(|e| Error::validation("anchor", e.to_string()))?,
            ),
            None => None,
        };
        let theorems = if self.mode == Mode::Audit {
            self.resolve_theorems()?
        } else if self.mode == Mode::Export && !self.theorems.is_empty() {
            let t = self.resolve_theorems()?;
            if t.len() > 1 {
                return Err(Error::validation(
                    "theorem",
                    "export takes at most one theorem",
                ));
            }
            t
        } else {
            Vec::new()
        };
        let spec = match self.kind {
            FrameKind::Spacelike => CurvatureSpec::spacelike(dim, kappas, sigs),
            FrameKind::Null => CurvatureSpec::null(dim, kappas),
        }
        .with_range(a, b)
        .with_step(self.step);
        let grid = spec.grid()?;
        let h = grid[1] - grid[0];
        let s0_index = grid
            .iter()
            .enumerate()
            .min_by(|x, y| (x.1 - s0).abs().total_cmp(&(y.1 - s0).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        if (grid[s0_index] - s0).abs() > 1e-6 * h {
            return Err(Error::validation(
                "s0",
                format!("{s0} is not a grid node (nearest {})", grid[s0_index]),
            ));
        }
        Ok(ValidJob {
            mode: self.mode,
            spec,
            g,
            s0: grid[s0_index],
            g0: self.g0,
            c1: self.c1,
            anchor,
            tol,
            theorems,
            out: self.out.clone(),
        })
    }

    fn resolve_theorems(&self) -> Result<Vec<Theorem>> {
        let ids: Vec<String> = if self.theorems.is_empty() {
            vec![match self.kind {
                FrameKind::Spacelike => "3.2".into(),
                FrameKind::Null => "3.4".into(),
            }]
        } else {
            self.theorems.clone()
        };
        let mut out = Vec::new();
        for id in ids {
            let t = Theorem::from_id(&id)
                .filter(|t| *t != Theorem::Definitions)
                .ok_or_else(|| {
                    Error::validation(
                        "theorem",
                        format!("unknown id {id:?}; use 3.2, 3.3, 3.4 or 4.2"),
                    )
                })?;
            let kind = if t == Theorem::NullRectifying {
                FrameKind::Null
            } else {
                FrameKind::Spacelike
            };
            if kind != self.kind {
                return Err(Error::validation(
                    "theorem",
                    format!(
                        "{id} needs {} frames",
                        if kind == FrameKind::Null {
                            "null"
                        } else {
                            "spacelike"
                        }
                    ),
                ));
            }
            if !out.contains(&t) {
                out.push(t);
            }
        }
        Ok(out)
    }
}

/// A validated job with parsed expressions and the resolved grid.
#[derive(Debug, Clone)]
pub struct ValidJob {
    pub mode: Mode,
    pub spec: CurvatureSpec,
    pub g: Option<ScalarFn>,
    pub s0: f64,
    pub g0: f64,
    pub c1: f64,
    pub anchor: Option<LVector>,
    pub tol: f64,
    pub theorems: Vec<Theorem>,
    pub out: PathBuf,
}

/// Files written and a short summary for the terminal.
#[derive(Debug, Clone, Default)]
pub struct JobOutput {
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
    pub reports: Vec<AuditReport>,
    pub classification: Option<Classification>,
}

/// Process exit status for an error: 1 for bad input, 2 for numeric failure.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Validation { .. }
        | Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::InvalidVector(_)
        | Error::Io { .. }
        | Error::Format { .. } => 1,
        _ => 2,
    }
}

/// Validate and run.
pub fn run_job(job: &JobSpec) -> Result<JobOutput> {
    job.validate()?.run()
}

impl ValidJob {
    fn g(&self) -> &ScalarFn {
        self.g.as_ref().expect("validated")
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    pub fn run(&self) -> Result<JobOutput> {
        let (trace, fd) = synthesize_from_curvatures(&self.spec)?;
        let mut out = JobOutput::default();
        match self.mode {
            Mode::Frame => {
                let path = self.path("frames.csv");
                write_atomic(&path, &frames_csv(&fd))?;
                out.summary.push(format!(
                    "frame residual {:.3e} over {} nodes",
                    frame_residuals(&fd).max(),
                    fd.len()
                ));
                out.files.push(path);
            }
            Mode::Synthesize => {
                let path = self.path("trace.csv");
                write_atomic(&path, &points_csv(&trace))?;
                out.files.push(path);
                let path = self.path("frames.csv");
                write_atomic(&path, &frames_csv(&fd))?;
                out.files.push(path);
                out.summary.push(format!(
                    "{} nodes, frame residual {:.3e}",
                    fd.len(),
                    frame_residuals(&fd).max()
                ));
            }
            Mode::Classify => {
                let gft = self.field(&fd, self.anchor.clone())?;
                let (class, report) = classify(&fd, &gft, self.tol)?;
                let path = self.path("classify.json");
                write_audit_json(&report, &path)?;
                out.files.push(path);
                let word = serde_json::to_value(class)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default();
                out.summary.push(format!("classification: {word}"));
                out.classification = Some(class);
                out.reports.push(report);
            }
            Mode::Audit => {
                for t in &self.theorems {
                    let report = self.audit(&fd, *t)?;
                    let path = self.path(&format!("audit_{}.json", t.id()));
                    write_audit_json(&report, &path)?;
                    out.files.push(path);
                    out.summary.push(audit_text(&report));
                    out.reports.push(report);
                }
            }
            Mode::Export => {
                let theorem = self.theorems.first().copied().unwrap_or(match fd.kind {
                    FrameKind::Spacelike => Theorem::SpacelikeRectifying,
                    FrameKind::Null => Theorem::NullRectifying,
                });
                let gft = self.field_for(&fd, theorem)?;
                let basis = if theorem == Theorem::GNormal {
                    BasisKind::Normal
                } else {
                    BasisKind::Rectifying
                };
                let profile = decompose_field(&fd, &gft.xi_g, basis)?;
                let path = self.path("export.csv");
                write_trace_csv(&trace, &fd, &gft, &profile, &path)?;
                out.summary.push(format!("{} rows", trace.len()));
                out.files.push(path);
            }
        }
        Ok(out)
    }

    fn field(&self, fd: &FrenetData, anchor: Option<LVector>) -> Result<GFieldTrace> {
        g_position_from_frames(fd, self.g(), self.s0, self.g0, anchor.as_ref())
    }

    /// `xi_g` anchored as the job asks, or at the profile of `theorem`.
    fn field_for(&self, fd: &FrenetData, theorem: Theorem) -> Result<GFieldTrace> {
        if self.anchor.is_some() {
            return self.field(fd, self.anchor.clone());
        }
        let g = self.g();
        let profile = match theorem {
            Theorem::NullRectifying => rectifying_coeffs_null(fd, g, self.s0, self.c1)?.profile,
            Theorem::GNormal => normal_coeffs(fd, g)?.profile,
            _ => rectifying_coeffs_spacelike(fd, g, self.s0, self.g0)?.profile,
        };
        let index = fd
            .s_grid
            .iter()
            .position(|s| *s == self.s0)
            .expect("s0 is a grid node");
        let anchor = assemble_from_profile(fd, &profile)?.swap_remove(index);
        self.field(fd, Some(anchor))
    }

    fn audit(&self, fd: &FrenetData, theorem: Theorem) -> Result<AuditReport> {
        let gft = self.field_for(fd, theorem)?;
        let g = self.g();
        match theorem {
            Theorem::SpacelikeRectifying => audit_spacelike_rectifying(fd, &gft, g, self.tol),
            Theorem::NullRectifying => audit_null_rectifying(fd, &gft, g, self.tol),
            Theorem::GNormal => audit_g_normal(fd, &gft, g, self.tol),
            Theorem::HyperbolicForm => {
                let c = hyperbolic_c_estimate(&gft)?;
                hyperbolic_form_audit(&gft, g, c, self.tol)
            }
            Theorem::Definitions => Ok(classify(fd, &gft, self.tol)?.1),
        }
    }
}

/// Run the synthesis step of a job only.
pub fn synthesize_job(job: &JobSpec) -> Result<(CurveTrace, FrenetData)> {
    synthesize_from_curvatures(&job.validate()?.spec)
}
