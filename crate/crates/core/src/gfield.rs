//! The primitive `G` of `g` and the g-position field `xi_g = int g T ds`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::ScalarFn;
use crate::frenet::{CurveTrace, FrameKind, FrenetData};
use crate::metric::{dot, LVector, SignatureVector};
use crate::numeric::{cumulative_simpson, gradient};

/// `G`, `xi_g` and the data they were built from, sampled on a grid.
#[derive(Debug, Clone)]
pub struct GFieldTrace {
    pub s_grid: Vec<f64>,
    pub g_values: Vec<f64>,
    pub g_primitive: Vec<f64>,
    pub xi_g: Vec<LVector>,
    pub s0: f64,
    /// Grid index of `s0`.
    pub s0_index: usize,
    /// `max |d/ds xi_g - g T|` in the Euclidean norm, from finite differences.
    pub derivative_residual: f64,
}

/// Which complement of the frame a decomposition describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// `(w0, w1 .. w_{n-2})` over `T, B1 .. B_{n-2}`.
    Rectifying,
    /// `(theta, mu1 .. mu_{n-2})` over `N, B1 .. B_{n-2}`.
    Normal,
}

/// Frame coefficients of a vector field, one row per node.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentProfile {
    pub s_grid: Vec<f64>,
    pub coeffs: Vec<Vec<f64>>,
    pub basis: BasisKind,
}

fn eval_on(g: &ScalarFn, s: f64) -> Result<f64> {
    g.eval(s).map_err(|source| Error::Eval { s, source })
}

/// `int_a^b g` with 5-point Gauss-Legendre on 64 panels.
fn integrate(g: &ScalarFn, a: f64, b: f64) -> Result<f64> {
    const X: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let panels = 64;
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(W) {
            acc += w * eval_on(g, mid + 0.5 * h * x)?;
        }
    }
    Ok(0.5 * h * acc)
}

/// `G(s) = g0 + int_{s0}^s g` at every grid node.
///
/// Accumulates node to node with composite Simpson. When `s0` is not a node the
/// offset to the first node is integrated separately.
pub fn primitive_g(g: &ScalarFn, s0: f64, s_grid: &[f64], g0: f64) -> Result<Vec<f64>> {
    let values = s_grid
        .iter()
        .map(|s| eval_on(g, *s))
        .collect::<Result<Vec<_>>>()?;
    primitive_from_samples(g, &values, s0, s_grid, g0)
}

fn primitive_from_samples(
    g: &ScalarFn,
    values: &[f64],
    s0: f64,
    s_grid: &[f64],
    g0: f64,
) -> Result<Vec<f64>> {
    if s_grid.len() < 2 {
        return Err(Error::GridMismatch("need at least two grid nodes".into()));
    }
    let acc = cumulative_simpson(s_grid, values);
    let base = match node_index(s_grid, s0) {
        Some(i) => acc[i],
        None => integrate(g, s_grid[0], s0)?,
    };
    Ok(acc.iter().map(|v| v - base + g0).collect())
}

fn node_index(s_grid: &[f64], s: f64) -> Option<usize> {
    let scale = s_grid.last().unwrap().abs().max(s_grid[0].abs()).max(1.0);
    s_grid.iter().position(|x| (x - s).abs() <= 1e-12 * scale)
}

/// `xi_g(s) = xi_g(s0) + int_{s0}^s g T` with the same quadrature as [`primitive_g`].
///
/// `s0` must be a grid node. `anchor` is `xi_g(s0)`, the zero vector when `None`.
pub fn g_position_vector(
    trace: &CurveTrace,
    fd: &FrenetData,
    g: &ScalarFn,
    s0: f64,
    anchor: Option<&LVector>,
) -> Result<GFieldTrace> {
    if trace.s_grid() != fd.s_grid.as_slice() {
        return Err(Error::GridMismatch(format!(
            "trace has {} nodes, frame data has {}; grids must agree",
            trace.len(),
            fd.len()
        )));
    }
    g_position_from_frames(fd, g, s0, 0.0, anchor)
}

/// As [`g_position_vector`] using only the tangents of `fd`, with `G(s0) = g0`.
pub fn g_position_from_frames(
    fd: &FrenetData,
    g: &ScalarFn,
    s0: f64,
    g0: f64,
    anchor: Option<&LVector>,
) -> Result<GFieldTrace> {
    let s = &fd.s_grid;
    let n = fd.dim();
    let Some(s0_index) = node_index(s, s0) else {
        return Err(Error::GridMismatch(format!("s0 = {s0} is not a grid node")));
    };
    if let Some(a) = anchor {
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: a.dim(),
            });
        }
    }
    let g_values = s
        .iter()
        .map(|x| eval_on(g, *x))
        .collect::<Result<Vec<_>>>()?;
    let g_primitive = primitive_from_samples(g, &g_values, s0, s, g0)?;

    let mut columns = Vec::with_capacity(n);
    for d in 0..n {
        let f: Vec<f64> = (0..s.len())
            .map(|k| g_values[k] * fd.tangent(k)[d])
            .collect();
        let acc = cumulative_simpson(s, &f);
        let base = acc[s0_index] - anchor.map_or(0.0, |a| a[d]);
        columns.push(acc.into_iter().map(|v| v - base).collect::<Vec<_>>());
    }
    let xi_g: Vec<LVector> = (0..s.len())
        .map(|k| LVector::from_vec_unchecked(columns.iter().map(|c| c[k]).collect()))
        .collect();

    let mut derivative_residual: f64 = 0.0;
    if s.len() >= 5 {
        let grads: Vec<Vec<f64>> = columns.iter().map(|c| gradient(s, c)).collect();
        for k in 0..s.len() {
            let sq: f64 = (0..n)
                .map(|d| (grads[d][k] - g_values[k] * fd.tangent(k)[d]).powi(2))
                .sum();
            derivative_residual = derivative_residual.max(sq.sqrt());
        }
    }

    Ok(GFieldTrace {
        s_grid: s.clone(),
        g_values,
        g_primitive,
        xi_g,
        s0,
        s0_index,
        derivative_residual,
    })
}

/// Coefficients of `xi` along every frame vector, so that
/// `xi = sum_k c_k frame_k`.
///
/// Spacelike frames divide by the self-pairings; null frames use the dual
/// pairings, so the coefficient of `T` is `<xi, B1>` and that of `B1` is `<xi, T>`.
pub fn frame_coefficients(
    xi: &LVector,
    frame: &[LVector],
    kind: FrameKind,
    sigs: &SignatureVector,
) -> Vec<f64> {
    match kind {
        FrameKind::Spacelike => frame
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let sigma = if k == 0 { 1.0 } else { sigs.eps(k) };
                sigma * dot(xi, e)
            })
            .collect(),
        FrameKind::Null => frame
            .iter()
            .enumerate()
            .map(|(k, e)| match k {
                0 => dot(xi, &frame[2]),
                2 => dot(xi, &frame[0]),
                _ => dot(xi, e),
            })
            .collect(),
    }
}

/// `sum_k c_k frame_k`.
pub fn reconstruct(coeffs: &[f64], frame: &[LVector]) -> LVector {
    let mut out = LVector::zeros(frame[0].dim());
    for (c, e) in coeffs.iter().zip(frame) {
        out.axpy(*c, e);
    }
    out
}

/// One row of a [`ComponentProfile`].
///
/// Rectifying rows are `(w0, w1 .. w_{n-2})` for `T, B1 ..`; normal rows are
/// `(theta, mu1 .. mu_{n-2})` for `N, B1 ..`.
pub fn decompose_in_frame(
    xi: &LVector,
    frame: &[LVector],
    kind: FrameKind,
    sigs: &SignatureVector,
    basis: BasisKind,
) -> Vec<f64> {
    let all = frame_coefficients(xi, frame, kind, sigs);
    let lead = match basis {
        BasisKind::Rectifying => all[0],
        BasisKind::Normal => all[1],
    };
    std::iter::once(lead)
        .chain(all[2..].iter().copied())
        .collect()
}

/// Decompose a whole field along the frames of `fd`.
pub fn decompose_field(
    fd: &FrenetData,
    xi: &[LVector],
    basis: BasisKind,
) -> Result<ComponentProfile> {
    if xi.len() != fd.len() {
        return Err(Error::GridMismatch(format!(
            "{} field samples for {} frames",
            xi.len(),
            fd.len()
        )));
    }
    let coeffs = xi
        .iter()
        .zip(&fd.frames)
        .map(|(v, f)| decompose_in_frame(v, f, fd.kind, &fd.sigs, basis))
        .collect();
    Ok(ComponentProfile {
        s_grid: fd.s_grid.clone(),
        coeffs,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{default_null_frame, default_spacelike_frame};

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect()
    }

    #[test]
    fn primitive_examples() {
        let g = ScalarFn::parse("1").unwrap();
        let s = grid(0.0, 2.0, 40);
        let big = primitive_g(&g, 0.0, &s, 0.0).unwrap();
        for (x, v) in s.iter().zip(&big) {
            assert!((x - v).abs() < 1e-14);
        }

        let g = ScalarFn::parse("cos(s)").unwrap();
        let s = grid(0.0, std::f64::consts::FRAC_PI_2, 400);
        let big = primitive_g(&g, 0.0, &s, 0.0).unwrap();
        assert!((big.last().unwrap() - 1.0).abs() < 1e-10);

        let g = ScalarFn::parse("exp(s)").unwrap();
        let s = grid(0.0, 1.0, 400);
        let big = primitive_g(&g, 0.0, &s, 0.0).unwrap();
        assert!((big.last().unwrap() - (1f64.exp() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn off_grid_base_point() {
        let g = ScalarFn::parse("2*s").unwrap();
        let s = grid(0.0, 1.0, 10);
        let big = primitive_g(&g, 0.35, &s, 1.0).unwrap();
        for (x, v) in s.iter().zip(&big) {
            assert!((v - (x * x - 0.35 * 0.35 + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_error_propagates() {
        let g = ScalarFn::parse("log(s)").unwrap();
        let s = grid(-1.0, 1.0, 10);
        assert!(matches!(
            primitive_g(&g, 0.5, &s, 0.0),
            Err(Error::Eval { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let sigs = SignatureVector::new(vec![1, 1, -1]).unwrap();
        let f = default_spacelike_frame(4, &sigs).unwrap();
        let row = decompose_in_frame(
            &f[0],
            &f,
            FrameKind::Spacelike,
            &sigs,
            BasisKind::Rectifying,
        );
        assert_eq!(row, vec![1.0, 0.0, 0.0]);

        let xi = &f[1] + &f[2].scale(2.0);
        let row = decompose_in_frame(&xi, &f, FrameKind::Spacelike, &sigs, BasisKind::Normal);
        assert_eq!(row, vec![1.0, 2.0, 0.0]);

        let xi = f[3].scale(3.0);
        let row = decompose_in_frame(&xi, &f, FrameKind::Spacelike, &sigs, BasisKind::Normal);
        assert_eq!(row, vec![0.0, 0.0, 3.0]);
    }

    #[test]
    fn null_reconstruction() {
        let f = default_null_frame(5).unwrap();
        let ones = SignatureVector::all_positive(4);
        let xi = LVector::new(vec![0.3, -1.2, 2.0, 0.7, -0.1]).unwrap();
        let c = frame_coefficients(&xi, &f, FrameKind::Null, &ones);
        let back = reconstruct(&c, &f);
        assert!((&back - &xi).euclid_norm() < 1e-15);
    }
}
