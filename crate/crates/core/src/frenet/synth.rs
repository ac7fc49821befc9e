use crate::error::{Error, Result};
use crate::expr::ScalarFn;
use crate::metric::{dot, LVector, SignatureVector};

use super::{
    check_spacelike_sigs, default_null_frame, default_spacelike_frame, expected_gram,
    frame_residuals, gram_defect, CurveTrace, FrameKind, FrenetData,
};

/// Curvatures with magnitude at or below this count as vanishing.
pub const CURVATURE_FLOOR: f64 = 1e-12;

/// Input for [`synthesize_from_curvatures`].
#[derive(Debug, Clone)]
pub struct CurvatureSpec {
    pub dim: usize,
    pub kind: FrameKind,
    pub kappas: Vec<ScalarFn>,
    /// `e1 .. e_{n-1}`; ignored for null frames.
    pub sigs: SignatureVector,
    pub range: (f64, f64),
    /// Requested step. The grid uses the nearest step that lands on the range end.
    pub step: f64,
    pub initial_point: Option<LVector>,
    pub initial_frame: Option<Vec<LVector>>,
    /// Reject curvatures that vanish anywhere on the grid.
    pub require_nonvanishing: bool,
    /// Project the frame back onto its pairing table after every step.
    pub renormalize: bool,
    pub drift_tol: f64,
}

impl CurvatureSpec {
    pub fn spacelike(dim: usize, kappas: Vec<ScalarFn>, sigs: SignatureVector) -> Self {
        Self::base(dim, FrameKind::Spacelike, kappas, sigs)
    }

    pub fn null(dim: usize, kappas: Vec<ScalarFn>) -> Self {
        let sigs = SignatureVector::all_positive(dim.max(2) - 1);
        Self::base(dim, FrameKind::Null, kappas, sigs)
    }

    fn base(dim: usize, kind: FrameKind, kappas: Vec<ScalarFn>, sigs: SignatureVector) -> Self {
        Self {
            dim,
            kind,
            kappas,
            sigs,
            range: (0.0, 1.0),
            step: 1e-3,
            initial_point: None,
            initial_frame: None,
            require_nonvanishing: true,
            renormalize: true,
            drift_tol: 1e-8,
        }
    }

    /// Parse curvature expressions.
    pub fn parse_kappas(texts: &[&str]) -> Result<Vec<ScalarFn>> {
        texts
            .iter()
            .map(|t| ScalarFn::parse(t).map_err(Error::from))
            .collect()
    }

    pub fn with_range(mut self, a: f64, b: f64) -> Self {
        self.range = (a, b);
        self
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.step = h;
        self
    }

    pub fn with_initial_point(mut self, p: LVector) -> Self {
        self.initial_point = Some(p);
        self
    }

    pub fn with_initial_frame(mut self, frame: Vec<LVector>) -> Self {
        self.initial_frame = Some(frame);
        self
    }

    pub fn with_renormalize(mut self, on: bool) -> Self {
        self.renormalize = on;
        self
    }

    pub fn with_drift_tol(mut self, tol: f64) -> Self {
        self.drift_tol = tol;
        self
    }

    pub fn allow_vanishing(mut self) -> Self {
        self.require_nonvanishing = false;
        self
    }

    /// Grid nodes covering the range.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let (a, b) = self.range;
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(Error::validation("range", "must satisfy A < B"));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::validation("step", "must be positive"));
        }
        let steps = ((b - a) / self.step).round().max(3.0) as usize;
        let h = (b - a) / steps as f64;
        Ok((0..=steps)
            .map(|k| if k == steps { b } else { a + k as f64 * h })
            .collect())
    }

    fn validate(&self) -> Result<()> {
        if self.dim < self.kind.min_dim() {
            return Err(Error::Spec(format!(
                "dimension {} too small for {:?} frames",
                self.dim, self.kind
            )));
        }
        let need = self.kind.curvature_count(self.dim);
        if self.kappas.len() != need {
            return Err(Error::Spec(format!(
                "expected {need} curvature functions for dim {}, got {}",
                self.dim,
                self.kappas.len()
            )));
        }
        if self.kind == FrameKind::Spacelike && self.initial_frame.is_none() {
            check_spacelike_sigs(self.dim, &self.sigs)?;
        }
        if self.kind == FrameKind::Spacelike && self.sigs.len() != self.dim - 1 {
            return Err(Error::validation("sig", "wrong number of signatures"));
        }
        if let Some(p) = &self.initial_point {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: self.dim,
                    right: p.dim(),
                });
            }
        }
        Ok(())
    }

    fn sigs_for_kind(&self) -> SignatureVector {
        match self.kind {
            FrameKind::Spacelike => self.sigs.clone(),
            FrameKind::Null => SignatureVector::all_positive(self.dim - 1),
        }
    }

    fn eval_kappas(&self, s: f64, node: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.kappas.len());
        for (i, k) in self.kappas.iter().enumerate() {
            let v = k.eval(s).map_err(|source| Error::Eval { s, source })?;
            if self.require_nonvanishing && v.abs() <= CURVATURE_FLOOR {
                return Err(Error::Spec(format!(
                    "k{} vanishes at node {node} (s = {s})",
                    i + 1
                )));
            }
            out.push(v);
        }
        Ok(out)
    }
}

/// Diagnostics gathered while integrating.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisStats {
    /// Largest pairing defect seen after a raw step, before any correction.
    pub max_step_drift: f64,
    /// Largest pairing defect of the returned frames.
    pub final_drift: f64,
    pub steps: usize,
}

/// Coefficients `a[k][j]` with `E_k' = sum_j a[k][j] E_j`.
fn generator(kind: FrameKind, sigs: &SignatureVector, k: &[f64], n: usize) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    match kind {
        FrameKind::Spacelike => {
            let sigma = |i: usize| if i == 0 { 1.0 } else { sigs.eps(i) };
            for row in 0..n {
                if row > 0 {
                    a[row][row - 1] = -sigma(row - 1) * sigma(row) * k[row - 1];
                }
                if row + 1 < n {
                    a[row][row + 1] = k[row];
                }
            }
        }
        FrameKind::Null => {
            a[0][1] = 1.0;
            a[1][0] = k[0];
            a[1][2] = -1.0;
            a[2][1] = -k[0];
            if n > 3 {
                a[2][3] = k[1];
                a[3][0] = -k[1];
                if n > 4 {
                    a[3][4] = k[2];
                }
            }
            // B_i sits at row i + 1
            for i in 3..n - 1 {
                a[i + 1][i] = -k[i - 1];
                if i + 2 < n {
                    a[i + 1][i + 2] = k[i];
                }
            }
        }
    }
    a
}

/// State layout: point followed by frame vectors, each `n` coordinates.
fn rhs(a: &[Vec<f64>], y: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; y.len()];
    out[..n].copy_from_slice(&y[n..2 * n]);
    for row in 0..n {
        let dst = (row + 1) * n;
        for (col, c) in a[row].iter().enumerate() {
            if *c != 0.0 {
                let src = (col + 1) * n;
                for d in 0..n {
                    out[dst + d] += c * y[src + d];
                }
            }
        }
    }
    out
}

fn unpack_frame(y: &[f64], n: usize) -> Vec<LVector> {
    (0..n)
        .map(|k| LVector::from_vec_unchecked(y[(k + 1) * n..(k + 2) * n].to_vec()))
        .collect()
}

/// Push a nearly admissible frame back onto the pairing table `j`.
///
/// Iterates `E_k <- E_k - 1/2 sum_i (J^-1 D)_ik E_i` with `D = Gram - J`;
/// every admissible table here is its own inverse.
pub(crate) fn renormalize(frame: &mut [LVector], j: &[Vec<f64>]) {
    let n = frame.len();
    for _ in 0..3 {
        let mut d = vec![vec![0.0; n]; n];
        for a in 0..n {
            for b in a..n {
                let v = dot(&frame[a], &frame[b]) - j[a][b];
                d[a][b] = v;
                d[b][a] = v;
            }
        }
        let mut m = vec![vec![0.0; n]; n];
        for r in 0..n {
            for c in 0..n {
                m[r][c] = (0..n).map(|t| j[r][t] * d[t][c]).sum();
            }
        }
        let old = frame.to_vec();
        for (k, e) in frame.iter_mut().enumerate() {
            for (i, src) in old.iter().enumerate() {
                if m[i][k] != 0.0 {
                    e.axpy(-0.5 * m[i][k], src);
                }
            }
        }
    }
}

/// Integrate the Frenet system with classical RK4.
pub fn synthesize_from_curvatures(spec: &CurvatureSpec) -> Result<(CurveTrace, FrenetData)> {
    synthesize_with_stats(spec).map(|(t, f, _)| (t, f))
}

/// As [`synthesize_from_curvatures`], also returning drift diagnostics.
pub fn synthesize_with_stats(
    spec: &CurvatureSpec,
) -> Result<(CurveTrace, FrenetData, SynthesisStats)> {
    spec.validate()?;
    let n = spec.dim;
    let sigs = spec.sigs_for_kind();
    let table = expected_gram(spec.kind, &sigs, n);
    let frame0 = match &spec.initial_frame {
        Some(f) => {
            if f.len() != n || f.iter().any(|v| v.dim() != n) {
                return Err(Error::Spec(format!(
                    "initial frame must hold {n} vectors of dim {n}"
                )));
            }
            let defect = gram_defect(f, &table);
            if defect > 1e-9 {
                return Err(Error::Spec(format!(
                    "initial frame violates its pairing table by {defect:e}"
                )));
            }
            f.clone()
        }
        None => match spec.kind {
            FrameKind::Spacelike => default_spacelike_frame(n, &sigs)?,
            FrameKind::Null => default_null_frame(n)?,
        },
    };
    let grid = spec.grid()?;
    let mut y = Vec::with_capacity((n + 1) * n);
    match &spec.initial_point {
        Some(p) => y.extend_from_slice(p.coords()),
        None => y.extend(std::iter::repeat_n(0.0, n)),
    }
    for v in &frame0 {
        y.extend_from_slice(v.coords());
    }

    let mut points = vec![LVector::from_vec_unchecked(y[..n].to_vec())];
    let mut frames = vec![frame0];
    let mut curvatures = vec![spec.eval_kappas(grid[0], 0)?];
    let mut max_step_drift: f64 = 0.0;

    for node in 1..grid.len() {
        let (s0, s1) = (grid[node - 1], grid[node]);
        let h = s1 - s0;
        let k_mid = spec.eval_kappas(s0 + 0.5 * h, node - 1)?;
        let k_end = spec.eval_kappas(s1, node)?;
        let a0 = generator(spec.kind, &sigs, &curvatures[node - 1], n);
        let am = generator(spec.kind, &sigs, &k_mid, n);
        let a1 = generator(spec.kind, &sigs, &k_end, n);
        let step = |base: &[f64], k: &[f64], c: f64| -> Vec<f64> {
            base.iter().zip(k).map(|(b, d)| b + c * d).collect()
        };
        let r1 = rhs(&a0, &y, n);
        let r2 = rhs(&am, &step(&y, &r1, 0.5 * h), n);
        let r3 = rhs(&am, &step(&y, &r2, 0.5 * h), n);
        let r4 = rhs(&a1, &step(&y, &r3, h), n);
        for i in 0..y.len() {
            y[i] += h / 6.0 * (r1[i] + 2.0 * r2[i] + 2.0 * r3[i] + r4[i]);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::DriftExceeded {
                residual: f64::INFINITY,
                tol: spec.drift_tol,
                node,
            });
        }
        let mut frame = unpack_frame(&y, n);
        let raw = gram_defect(&frame, &table);
        max_step_drift = max_step_drift.max(raw);
        if spec.renormalize {
            if raw > spec.drift_tol {
                return Err(Error::DriftExceeded {
                    residual: raw,
                    tol: spec.drift_tol,
                    node,
                });
            }
            renormalize(&mut frame, &table);
            for (k, v) in frame.iter().enumerate() {
                y[(k + 1) * n..(k + 2) * n].copy_from_slice(v.coords());
            }
        }
        points.push(LVector::from_vec_unchecked(y[..n].to_vec()));
        frames.push(frame);
        curvatures.push(k_end);
    }

    let data = FrenetData {
        s_grid: grid.clone(),
        frames,
        curvatures,
        sigs,
        kind: spec.kind,
        analytic: Some(spec.kappas.clone()),
    };
    let residuals = frame_residuals(&data);
    let final_drift = residuals.max();
    if final_drift > spec.drift_tol {
        let node = residuals
            .per_node
            .iter()
            .position(|r| *r > spec.drift_tol)
            .unwrap_or(0);
        return Err(Error::DriftExceeded {
            residual: final_drift,
            tol: spec.drift_tol,
            node,
        });
    }
    let trace = CurveTrace::new(grid, points)?;
    let stats = SynthesisStats {
        max_step_drift,
        final_drift,
        steps: trace.len() - 1,
    };
    Ok((trace, data, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kappas(texts: &[&str]) -> Vec<ScalarFn> {
        CurvatureSpec::parse_kappas(texts).unwrap()
    }

    #[test]
    fn generator_preserves_pairings() {
        // A J + J A^T = 0 is the infinitesimal form of a constant pairing table.
        let k = [0.7, -1.3, 2.1, 0.4];
        for n in 3..=5 {
            for kind in [FrameKind::Spacelike, FrameKind::Null] {
                let sigs = match kind {
                    FrameKind::Spacelike => super::super::default_sigs(n),
                    FrameKind::Null => SignatureVector::all_positive(n - 1),
                };
                let a = generator(kind, &sigs, &k, n);
                let j = expected_gram(kind, &sigs, n);
                for r in 0..n {
                    for c in 0..n {
                        let v: f64 = (0..n).map(|t| a[r][t] * j[t][c] + j[r][t] * a[c][t]).sum();
                        assert!(v.abs() < 1e-15, "{kind:?} n={n} ({r},{c}) {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn renormalize_repairs_small_defects() {
        let n = 4;
        let sigs = super::super::default_sigs(n);
        let j = expected_gram(FrameKind::Spacelike, &sigs, n);
        let mut f = default_spacelike_frame(n, &sigs).unwrap();
        let e1 = f[1].clone();
        f[0].axpy(1e-5, &e1);
        f[3] = f[3].scale(1.0 + 2e-5);
        renormalize(&mut f, &j);
        assert!(gram_defect(&f, &j) < 1e-14);

        let ones = SignatureVector::all_positive(n - 1);
        let j = expected_gram(FrameKind::Null, &ones, n);
        let mut f = default_null_frame(n).unwrap();
        let e0 = f[0].clone();
        f[2].axpy(3e-6, &e0);
        renormalize(&mut f, &j);
        assert!(gram_defect(&f, &j) < 1e-14);
    }

    #[test]
    fn vanishing_curvature_is_rejected() {
        let spec = CurvatureSpec::spacelike(
            3,
            kappas(&["1", "0"]),
            SignatureVector::new(vec![1, -1]).unwrap(),
        );
        assert!(matches!(
            synthesize_from_curvatures(&spec),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn wrong_curvature_count() {
        let spec = CurvatureSpec::null(4, kappas(&["1", "1", "1"]));
        assert!(matches!(
            synthesize_from_curvatures(&spec),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn grid_lands_on_range_end() {
        let spec = CurvatureSpec::null(3, kappas(&["1"]))
            .with_range(0.0, 1.0)
            .with_step(0.3);
        let g = spec.grid().unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(*g.last().unwrap(), 1.0);
    }
}
