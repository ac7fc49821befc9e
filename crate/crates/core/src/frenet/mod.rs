//! Frenet apparatus of spacelike and null curves.
//!
//! Frames are stored as ordered lists `[T, N, B1, .., B_{n-2}]`.
//!
//! Spacelike frames obey
//!
//! ```text
//! T'   = k1 N
//! N'   = -e1 k1 T + k2 B1
//! B1'  = -e1 e2 k2 N + k3 B2
//! Bi'  = -ei e(i+1) k(i+1) B(i-1) + k(i+2) B(i+1)
//! ```
//!
//! with `<T,T> = 1`, `<N,N> = e1`, `<Bi,Bi> = e(i+1)`. Null frames obey
//!
//! ```text
//! T'  = N
//! N'  = k1 T - B1
//! B1' = -k1 N + k2 B2
//! B2' = -k2 T + k3 B3
//! Bi' = -ki B(i-1) + k(i+1) B(i+1)      (i >= 3)
//! ```
//!
//! with `<T,T> = <B1,B1> = 0`, `<T,B1> = 1` and every other vector unit
//! spacelike and mutually orthogonal. A null frame in `L^n` carries `n - 2`
//! curvatures; a spacelike frame carries `n - 1`.

mod recover;
mod synth;

pub use recover::{frenet_from_trace, leading_curvatures, RecoveryOptions};
pub use synth::{
    synthesize_from_curvatures, synthesize_with_stats, CurvatureSpec, SynthesisStats,
    CURVATURE_FLOOR,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::ScalarFn;
use crate::metric::{dot, LVector, SignatureVector};

/// Which Frenet system a frame follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    Spacelike,
    Null,
}

impl FrameKind {
    /// Number of curvature functions carried by a frame of this kind in `L^dim`.
    pub fn curvature_count(self, dim: usize) -> usize {
        match self {
            FrameKind::Spacelike => dim - 1,
            FrameKind::Null => dim - 2,
        }
    }

    pub fn min_dim(self) -> usize {
        match self {
            FrameKind::Spacelike => 2,
            FrameKind::Null => 3,
        }
    }
}

/// Sampled curve `s -> x(s)` on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTrace {
    s_grid: Vec<f64>,
    points: Vec<LVector>,
}

impl CurveTrace {
    pub fn new(s_grid: Vec<f64>, points: Vec<LVector>) -> Result<Self> {
        if s_grid.len() != points.len() {
            return Err(Error::GridMismatch(format!(
                "{} grid nodes but {} points",
                s_grid.len(),
                points.len()
            )));
        }
        if s_grid.len() < 4 {
            return Err(Error::GridMismatch(format!(
                "a trace needs at least 4 nodes, got {}",
                s_grid.len()
            )));
        }
        if s_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::GridMismatch(
                "grid must be strictly increasing".into(),
            ));
        }
        let dim = points[0].dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.dim(),
            });
        }
        Ok(Self { s_grid, points })
    }

    pub fn s_grid(&self) -> &[f64] {
        &self.s_grid
    }

    pub fn points(&self) -> &[LVector] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn len(&self) -> usize {
        self.s_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_grid.is_empty()
    }

    /// Apply a linear map to every point.
    pub fn transformed(&self, map: &crate::metric::LinearMap) -> Self {
        Self {
            s_grid: self.s_grid.clone(),
            points: self.points.iter().map(|p| map.apply(p)).collect(),
        }
    }
}

/// Frames, curvatures and signatures sampled along a curve.
#[derive(Debug, Clone)]
pub struct FrenetData {
    pub s_grid: Vec<f64>,
    /// Per node `[T, N, B1, .., B_{n-2}]`.
    pub frames: Vec<Vec<LVector>>,
    /// Per node `k1 .. k_m` where `m` is [`FrameKind::curvature_count`].
    pub curvatures: Vec<Vec<f64>>,
    /// `e1 .. e_{n-1}`. For null frames every entry is `+1` and the B1 slot
    /// does not describe a self-pairing.
    pub sigs: SignatureVector,
    pub kind: FrameKind,
    /// The curvature functions, when the frames were synthesized from them.
    pub analytic: Option<Vec<ScalarFn>>,
}

impl FrenetData {
    pub fn dim(&self) -> usize {
        self.frames[0][0].dim()
    }

    pub fn len(&self) -> usize {
        self.s_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_grid.is_empty()
    }

    pub fn tangent(&self, node: usize) -> &LVector {
        &self.frames[node][0]
    }

    pub fn normal(&self, node: usize) -> &LVector {
        &self.frames[node][1]
    }

    /// `B_i`, one-based.
    pub fn binormal(&self, node: usize, i: usize) -> &LVector {
        &self.frames[node][i + 1]
    }

    /// `k_i`, one-based.
    pub fn kappa(&self, node: usize, i: usize) -> f64 {
        self.curvatures[node][i - 1]
    }

    /// Expected pairing table `<frame_i, frame_j>`.
    pub fn expected_gram(&self) -> Vec<Vec<f64>> {
        expected_gram(self.kind, &self.sigs, self.dim())
    }

    /// Apply a linear map to every frame vector.
    pub fn transformed(&self, map: &crate::metric::LinearMap) -> Self {
        let mut out = self.clone();
        for frame in &mut out.frames {
            for v in frame.iter_mut() {
                *v = map.apply(v);
            }
        }
        out
    }
}

/// The pairing table a frame of `kind` must satisfy.
pub fn expected_gram(kind: FrameKind, sigs: &SignatureVector, dim: usize) -> Vec<Vec<f64>> {
    let mut j = vec![vec![0.0; dim]; dim];
    match kind {
        FrameKind::Spacelike => {
            j[0][0] = 1.0;
            for k in 1..dim {
                j[k][k] = sigs.eps(k);
            }
        }
        FrameKind::Null => {
            j[0][2] = 1.0;
            j[2][0] = 1.0;
            j[1][1] = 1.0;
            for (k, row) in j.iter_mut().enumerate().skip(3) {
                row[k] = 1.0;
            }
        }
    }
    j
}

/// Pairwise frame residuals `|<f_i, f_j> - expected_ij|`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameResiduals {
    dim: usize,
    /// Max over nodes, row-major `dim x dim`.
    per_pair: Vec<f64>,
    /// Max over pairs, one per node.
    pub per_node: Vec<f64>,
}

impl FrameResiduals {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.per_pair[i * self.dim + j]
    }

    pub fn max(&self) -> f64 {
        self.per_pair.iter().copied().fold(0.0, f64::max)
    }
}

pub(crate) fn gram_defect(frame: &[LVector], expected: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in frame.iter().enumerate() {
        for (j, b) in frame.iter().enumerate().skip(i) {
            worst = worst.max((dot(a, b) - expected[i][j]).abs());
        }
    }
    worst
}

/// Largest deviation of each frame pairing from its expected value.
pub fn frame_residuals(fd: &FrenetData) -> FrameResiduals {
    let n = fd.dim();
    let expected = fd.expected_gram();
    let mut per_pair = vec![0.0f64; n * n];
    let mut per_node = Vec::with_capacity(fd.len());
    for frame in &fd.frames {
        let mut node_max: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let r = (dot(&frame[i], &frame[j]) - expected[i][j]).abs();
                per_pair[i * n + j] = per_pair[i * n + j].max(r);
                node_max = node_max.max(r);
            }
        }
        per_node.push(node_max);
    }
    FrameResiduals {
        dim: n,
        per_pair,
        per_node,
    }
}

/// Default starting frame for a spacelike curve with the given signatures.
///
/// Spatial axes `e2, e3, ..` fill the spacelike slots `T, N, B1, ..` in order
/// and the time axis `e1` takes the single timelike slot.
pub fn default_spacelike_frame(dim: usize, sigs: &SignatureVector) -> Result<Vec<LVector>> {
    check_spacelike_sigs(dim, sigs)?;
    let mut next_spatial = 1;
    let mut frame = Vec::with_capacity(dim);
    for slot in 0..dim {
        let timelike = slot > 0 && sigs.eps(slot) < 0.0;
        if timelike {
            frame.push(LVector::basis(dim, 0));
        } else {
            frame.push(LVector::basis(dim, next_spatial));
            next_spatial += 1;
        }
    }
    Ok(frame)
}

/// Default starting frame for a null curve:
/// `T = (1,1,0,..)`, `N = e3`, `B1 = (-1,1,0,..)/2`, `Bj = e(j+2)`.
pub fn default_null_frame(dim: usize) -> Result<Vec<LVector>> {
    if dim < 3 {
        return Err(Error::Spec(format!("null frames need dim >= 3, got {dim}")));
    }
    let mut t = vec![0.0; dim];
    t[0] = 1.0;
    t[1] = 1.0;
    let mut b1 = vec![0.0; dim];
    b1[0] = -0.5;
    b1[1] = 0.5;
    let mut frame = vec![
        LVector::from_vec_unchecked(t),
        LVector::basis(dim, 2),
        LVector::from_vec_unchecked(b1),
    ];
    for j in 2..dim - 1 {
        frame.push(LVector::basis(dim, j + 1));
    }
    Ok(frame)
}

/// A spacelike frame spans `L^n`, so exactly one of `e1..e_{n-1}` is `-1`.
pub fn check_spacelike_sigs(dim: usize, sigs: &SignatureVector) -> Result<()> {
    if sigs.len() != dim - 1 {
        return Err(Error::validation(
            "sig",
            format!(
                "expected {} signatures for dim {dim}, got {}",
                dim - 1,
                sigs.len()
            ),
        ));
    }
    if sigs.negative_count() != 1 {
        return Err(Error::validation(
            "sig",
            format!(
                "a spacelike frame of L^{dim} has exactly one timelike vector; got {} entries equal to -1",
                sigs.negative_count()
            ),
        ));
    }
    Ok(())
}

/// Signatures with the timelike slot on the last binormal.
pub fn default_sigs(dim: usize) -> SignatureVector {
    let mut v = vec![1i8; dim - 1];
    v[dim - 2] = -1;
    SignatureVector::new(v).expect("valid")
}
