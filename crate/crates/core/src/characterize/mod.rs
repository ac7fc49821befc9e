//! Coefficient profiles for g-rectifying and g-normal curves, identity audits
//! and classification.
//!
//! Every audit evaluates a printed identity node by node and reports its
//! residual. Residuals are relative: `|lhs - rhs| / max(1, |lhs|, |rhs|, scale)`
//! where `scale` is the Euclidean size of `xi_g` for pairing identities.
//! Constancy claims use `(max - min) / max(1, |mean|)`.
//!
//! A literal identity that fails while its paired variant holds is reported as
//! [`Verdict::HoldsWithSignVariant`].

mod audits;
pub(crate) mod field;
mod hyperbolic;
mod profiles;

pub use audits::{audit_g_normal, audit_null_rectifying, audit_spacelike_rectifying};
pub use hyperbolic::{
    hyperbolic_c_estimate, hyperbolic_form_audit, hyperbolic_trace, HyperbolicTrace,
};
pub use profiles::{
    assemble_from_profile, normal_coeffs, rectifying_coeffs_null, rectifying_coeffs_spacelike,
    NormalProfile, RectifyingProfile,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet::{FrameKind, FrenetData};
use crate::gfield::GFieldTrace;
use crate::metric::{dot, LVector};

/// Default audit tolerance.
pub const DEFAULT_TOL: f64 = 1e-5;

/// `LCURVE_TOL` when set to a positive number, else [`DEFAULT_TOL`].
pub fn default_tolerance() -> f64 {
    std::env::var("LCURVE_TOL")
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|v| v.is_finite() && *v > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

/// Which group of claims a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "3.2")]
    SpacelikeRectifying,
    #[serde(rename = "3.3")]
    HyperbolicForm,
    #[serde(rename = "3.4")]
    NullRectifying,
    #[serde(rename = "4.2")]
    GNormal,
    /// Membership tests behind classification.
    #[serde(rename = "definitions")]
    Definitions,
}

impl Theorem {
    pub fn id(self) -> &'static str {
        match self {
            Theorem::SpacelikeRectifying => "3.2",
            Theorem::HyperbolicForm => "3.3",
            Theorem::NullRectifying => "3.4",
            Theorem::GNormal => "4.2",
            Theorem::Definitions => "definitions",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "3.2" => Some(Theorem::SpacelikeRectifying),
            "3.3" => Some(Theorem::HyperbolicForm),
            "3.4" => Some(Theorem::NullRectifying),
            "4.2" => Some(Theorem::GNormal),
            "definitions" => Some(Theorem::Definitions),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    HoldsWithSignVariant,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub label: String,
    pub eq: String,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    /// Number of nodes.
    pub n: usize,
    /// Mean spacing.
    pub h: f64,
    pub range: [f64; 2],
}

impl GridInfo {
    pub fn of(s: &[f64]) -> Self {
        let n = s.len();
        let (a, b) = (s[0], s[n - 1]);
        let h = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
        Self {
            n,
            h,
            range: [a, b],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub theorem: Theorem,
    pub identities: Vec<IdentityResult>,
    /// `sqrt(|c^2|)`.
    pub c_estimate: f64,
    /// Grid mean of the quantity claimed constant; may be negative.
    pub c_squared: f64,
    pub grid: GridInfo,
    pub dim: usize,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn identity(&self, label: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|i| i.label == label)
    }

    pub fn verdict(&self, label: &str) -> Option<Verdict> {
        self.identity(label).map(|i| i.verdict)
    }
}

struct Entry {
    label: String,
    eq: String,
    max: f64,
    mean: f64,
    variant_of: Option<String>,
}

/// Collects residuals and settles verdicts.
pub(crate) struct AuditBuilder {
    tol: f64,
    entries: Vec<Entry>,
    pub notes: Vec<String>,
}

/// `(max - min) / max(1, |mean|)`.
pub(crate) fn spread(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
    (hi - lo) / mean.abs().max(1.0)
}

pub(crate) fn relative(lhs: f64, rhs: f64, scale: f64) -> f64 {
    (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs()).max(scale)
}

impl AuditBuilder {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            entries: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn residuals(&mut self, label: &str, eq: &str, r: &[f64]) -> &mut Self {
        let (max, mean) = if r.is_empty() {
            (0.0, 0.0)
        } else {
            let max =
                r.iter().copied().fold(
                    0.0,
                    |m: f64, v| if v.is_nan() { f64::INFINITY } else { m.max(v) },
                );
            (max, r.iter().sum::<f64>() / r.len() as f64)
        };
        self.entries.push(Entry {
            label: label.into(),
            eq: eq.into(),
            max,
            mean,
            variant_of: None,
        });
        self
    }

    /// Node-wise comparison of `lhs` with `rhs`.
    pub fn pointwise(
        &mut self,
        label: &str,
        eq: &str,
        lhs: &[f64],
        rhs: &[f64],
        scale: &[f64],
    ) -> &mut Self {
        let r: Vec<f64> = lhs
            .iter()
            .zip(rhs)
            .zip(scale)
            .map(|((l, r), s)| relative(*l, *r, *s))
            .collect();
        self.residuals(label, eq, &r)
    }

    pub fn scalar(&mut self, label: &str, eq: &str, residual: f64) -> &mut Self {
        self.residuals(label, eq, &[residual])
    }

    /// Spread of a quantity claimed constant.
    pub fn constancy(&mut self, label: &str, eq: &str, values: &[f64]) -> &mut Self {
        self.scalar(label, eq, spread(values))
    }

    /// Mark the most recent entry as the variant of `literal`.
    pub fn variant_of(&mut self, literal: &str) -> &mut Self {
        if let Some(e) = self.entries.last_mut() {
            e.variant_of = Some(literal.into());
        }
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn finish(self, theorem: Theorem, dim: usize, c_squared: f64, s: &[f64]) -> AuditReport {
        let passes = |e: &Entry| e.max.is_finite() && e.max <= self.tol;
        let identities = self
            .entries
            .iter()
            .map(|e| {
                let verdict = if passes(e) {
                    Verdict::Holds
                } else if self
                    .entries
                    .iter()
                    .any(|v| v.variant_of.as_deref() == Some(e.label.as_str()) && passes(v))
                {
                    Verdict::HoldsWithSignVariant
                } else {
                    Verdict::Fails
                };
                IdentityResult {
                    label: e.label.clone(),
                    eq: e.eq.clone(),
                    max_residual: e.max,
                    mean_residual: e.mean,
                    verdict,
                }
            })
            .collect();
        AuditReport {
            theorem,
            dim,
            identities,
            c_estimate: c_squared.abs().sqrt(),
            c_squared,
            grid: GridInfo::of(s),
            notes: self.notes,
        }
    }
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    GRectifying,
    GNormal,
    Neither,
    Both,
}

pub(crate) fn check_same_grid(fd: &FrenetData, gft: &GFieldTrace) -> Result<()> {
    if fd.s_grid != gft.s_grid {
        return Err(Error::GridMismatch(format!(
            "frame data has {} nodes, g-field has {}; grids must agree",
            fd.len(),
            gft.s_grid.len()
        )));
    }
    Ok(())
}

/// Decide whether `xi_g` stays in the rectifying space (no `N` component) or
/// the normal space (no `T` component).
///
/// Residuals are divided by `max(1, max_s |xi_g|_E)`. For null frames the `T`
/// component is read through `<xi_g, B1>`.
pub fn classify(
    fd: &FrenetData,
    gft: &GFieldTrace,
    tol: f64,
) -> Result<(Classification, AuditReport)> {
    check_same_grid(fd, gft)?;
    let scale = gft
        .xi_g
        .iter()
        .map(LVector::euclid_norm)
        .fold(1.0, f64::max);
    let tangent_partner = match fd.kind {
        FrameKind::Spacelike => 0,
        FrameKind::Null => 2,
    };
    let mut n_part = Vec::with_capacity(fd.len());
    let mut t_part = Vec::with_capacity(fd.len());
    for (xi, frame) in gft.xi_g.iter().zip(&fd.frames) {
        n_part.push(dot(xi, &frame[1]).abs() / scale);
        t_part.push(dot(xi, &frame[tangent_partner]).abs() / scale);
    }
    let mut b = AuditBuilder::new(tol);
    b.residuals("3.1", "<xi_g, N> = 0", &n_part);
    let t_eq = match fd.kind {
        FrameKind::Spacelike => "<xi_g, T> = 0",
        FrameKind::Null => "<xi_g, B1> = 0",
    };
    b.residuals("4.1", t_eq, &t_part);
    let report = b.finish(Theorem::Definitions, fd.dim(), 0.0, &fd.s_grid);
    let rect = report.verdict("3.1") == Some(Verdict::Holds);
    let norm = report.verdict("4.1") == Some(Verdict::Holds);
    let class = match (rect, norm) {
        (true, true) => Classification::Both,
        (true, false) => Classification::GRectifying,
        (false, true) => Classification::GNormal,
        (false, false) => Classification::Neither,
    };
    Ok((class, report))
}
