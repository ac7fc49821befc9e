use crate::error::{Error, Result};
use crate::metric::{dot, LVector, SignatureVector};
use crate::numeric::{fd_weights, is_uniform};

use super::{CurveTrace, FrameKind, FrenetData};

/// Finite-difference settings for frame recovery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryOptions {
    /// The stencil uses `2 * half_width + 1` nodes.
    pub half_width: usize,
    /// Node stride inside the stencil; chosen from `spacing` when `None`.
    pub stride: Option<usize>,
    /// Preferred distance in `s` between stencil nodes.
    pub spacing: f64,
    /// Allowed deviation of the speed invariants.
    pub speed_tol: f64,
    /// Curvatures below this are reported as degenerate.
    pub degeneracy_tol: f64,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        Self {
            half_width: 5,
            stride: None,
            spacing: 0.04,
            speed_tol: 1e-6,
            degeneracy_tol: 1e-6,
        }
    }
}

struct Stencil {
    /// Node indices where derivatives are available.
    nodes: Vec<usize>,
    offsets: Vec<isize>,
    /// `weights[order][j]` for a uniform grid.
    weights: Vec<Vec<f64>>,
}

fn stencil(trace: &CurveTrace, max_order: usize, opts: &RecoveryOptions) -> Result<Stencil> {
    let s = trace.s_grid();
    if !is_uniform(s, 1e-6) {
        return Err(Error::GridMismatch(
            "frame recovery needs a uniform grid".into(),
        ));
    }
    let h = s[1] - s[0];
    let q = opts
        .stride
        .unwrap_or_else(|| ((opts.spacing / h).round() as usize).max(1));
    let m = opts.half_width.max(max_order.div_ceil(2) + 1);
    let reach = m * q;
    if 2 * reach >= s.len() {
        return Err(Error::GridMismatch(format!(
            "trace of {} nodes too short for a stencil reaching {reach} nodes each way",
            s.len()
        )));
    }
    let offsets: Vec<isize> = (0..=2 * m)
        .map(|j| (j as isize - m as isize) * q as isize)
        .collect();
    let rel: Vec<f64> = offsets.iter().map(|o| *o as f64 * h).collect();
    let weights = fd_weights(0.0, &rel, max_order);
    Ok(Stencil {
        nodes: (reach..s.len() - reach).collect(),
        offsets,
        weights,
    })
}

fn derivatives(trace: &CurveTrace, st: &Stencil, node: usize, max_order: usize) -> Vec<LVector> {
    let n = trace.dim();
    let pts = trace.points();
    (1..=max_order)
        .map(|order| {
            let mut acc = vec![0.0; n];
            for (w, off) in st.weights[order].iter().zip(&st.offsets) {
                let p = pts[(node as isize + off) as usize].coords();
                for d in 0..n {
                    acc[d] += w * p[d];
                }
            }
            LVector::from_vec_unchecked(acc)
        })
        .collect()
}

struct Partial {
    s_grid: Vec<f64>,
    frames: Vec<Vec<LVector>>,
    curvatures: Vec<Vec<f64>>,
    sigs: Vec<i8>,
}

fn spacelike_node(
    d: &[LVector],
    depth: usize,
    node: usize,
    opts: &RecoveryOptions,
) -> Result<(Vec<LVector>, Vec<f64>, Vec<i8>)> {
    let speed = d[0].square();
    if (speed - 1.0).abs() > opts.speed_tol {
        return Err(Error::NotUnitSpeed { node, value: speed });
    }
    let mut frame = vec![d[0].clone()];
    let mut sig = vec![1i8];
    let mut kappas = Vec::with_capacity(depth);
    let mut prev = 1.0;
    for k in 1..=depth {
        let v = &d[k];
        let mut r = v.clone();
        for (e, s) in frame.iter().zip(&sig) {
            r.axpy(-f64::from(*s) * dot(v, e), e);
        }
        let q = r.square();
        let size = q.abs().sqrt();
        let kappa = size / prev;
        if kappa < opts.degeneracy_tol {
            return Err(Error::DegenerateCurvature {
                index: k,
                node,
                value: kappa,
            });
        }
        if q.abs() <= 1e-8 * r.euclid_sq() {
            return Err(Error::NullResidual { index: k });
        }
        frame.push(r.scale(1.0 / size));
        sig.push(if q > 0.0 { 1 } else { -1 });
        kappas.push(kappa);
        prev = size;
    }
    Ok((frame, kappas, sig[1..].to_vec()))
}

fn null_node(
    d: &[LVector],
    depth: usize,
    node: usize,
    opts: &RecoveryOptions,
) -> Result<(Vec<LVector>, Vec<f64>)> {
    let t = d[0].clone();
    let tt = t.square();
    if tt.abs() > opts.speed_tol {
        return Err(Error::NotUnitSpeed { node, value: tt });
    }
    let n = d[1].clone();
    let nn = n.square();
    if (nn - 1.0).abs() > opts.speed_tol {
        return Err(Error::NotUnitSpeed { node, value: nn });
    }
    let mut frame = vec![t, n];
    if depth == 0 {
        return Ok((frame, Vec::new()));
    }
    let k1 = -0.5 * d[2].square();
    if k1.abs() < opts.degeneracy_tol {
        return Err(Error::DegenerateCurvature {
            index: 1,
            node,
            value: k1.abs(),
        });
    }
    let mut b1 = frame[0].scale(k1);
    b1.axpy(-1.0, &d[2]);
    frame.push(b1);
    let mut kappas = vec![k1];
    let mut prev = 1.0;
    for k in 2..=depth {
        let v = &d[k + 1];
        let mut r = v.clone();
        r.axpy(-dot(v, &frame[2]), &frame[0]);
        r.axpy(-dot(v, &frame[0]), &frame[2]);
        r.axpy(-dot(v, &frame[1]), &frame[1]);
        for e in &frame[3..] {
            r.axpy(-dot(v, e), e);
        }
        let q = r.square();
        let size = q.abs().sqrt();
        let kappa = size / prev;
        if kappa < opts.degeneracy_tol {
            return Err(Error::DegenerateCurvature {
                index: k,
                node,
                value: kappa,
            });
        }
        if q <= 0.0 {
            return Err(Error::NullResidual { index: k });
        }
        frame.push(r.scale(-1.0 / size));
        kappas.push(kappa);
        prev = size;
    }
    Ok((frame, kappas))
}

fn recover(
    trace: &CurveTrace,
    kind: FrameKind,
    depth: usize,
    opts: &RecoveryOptions,
) -> Result<Partial> {
    let dim = trace.dim();
    if dim < kind.min_dim() {
        return Err(Error::DimensionMismatch {
            left: kind.min_dim(),
            right: dim,
        });
    }
    let max_order = match kind {
        FrameKind::Spacelike => depth + 1,
        FrameKind::Null => depth + 2,
    };
    let st = stencil(trace, max_order, opts)?;
    let mut out = Partial {
        s_grid: Vec::with_capacity(st.nodes.len()),
        frames: Vec::with_capacity(st.nodes.len()),
        curvatures: Vec::with_capacity(st.nodes.len()),
        sigs: Vec::new(),
    };
    for &node in &st.nodes {
        let d = derivatives(trace, &st, node, max_order);
        let (frame, kappas) = match kind {
            FrameKind::Spacelike => {
                let (frame, kappas, sig) = spacelike_node(&d, depth, node, opts)?;
                if out.frames.is_empty() {
                    out.sigs = sig;
                } else if let Some(i) = sig.iter().zip(&out.sigs).position(|(a, b)| a != b) {
                    // a signature can only flip by passing through a null residual
                    return Err(Error::NullResidual { index: i + 1 });
                }
                (frame, kappas)
            }
            FrameKind::Null => null_node(&d, depth, node, opts)?,
        };
        out.s_grid.push(trace.s_grid()[node]);
        out.frames.push(frame);
        out.curvatures.push(kappas);
    }
    Ok(out)
}

/// Recover the full Frenet apparatus from a sampled curve.
///
/// Derivatives come from wide finite-difference stencils, so the result covers
/// interior nodes only. Recovered curvatures are positive.
pub fn frenet_from_trace(
    trace: &CurveTrace,
    kind: FrameKind,
    opts: &RecoveryOptions,
) -> Result<FrenetData> {
    let dim = trace.dim();
    let p = recover(trace, kind, kind.curvature_count(dim), opts)?;
    let sigs = match kind {
        FrameKind::Spacelike => SignatureVector::new(p.sigs)?,
        FrameKind::Null => SignatureVector::all_positive(dim - 1),
    };
    Ok(FrenetData {
        s_grid: p.s_grid,
        frames: p.frames,
        curvatures: p.curvatures,
        sigs,
        kind,
        analytic: None,
    })
}

/// Recover only the first `count` curvatures, for curves whose later
/// curvatures vanish.
pub fn leading_curvatures(
    trace: &CurveTrace,
    kind: FrameKind,
    count: usize,
    opts: &RecoveryOptions,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let full = kind.curvature_count(trace.dim());
    if count > full {
        return Err(Error::Spec(format!(
            "a {kind:?} curve in L^{} has {full} curvatures, asked for {count}",
            trace.dim()
        )));
    }
    let p = recover(trace, kind, count, opts)?;
    Ok((p.s_grid, p.curvatures))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> CurveTrace {
        let s: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
        let pts = s
            .iter()
            .map(|x| LVector::new(vec![0.0, *x, 0.0]).unwrap())
            .collect();
        CurveTrace::new(s, pts).unwrap()
    }

    #[test]
    fn straight_line_is_degenerate() {
        let err = frenet_from_trace(&line(), FrameKind::Spacelike, &RecoveryOptions::default())
            .unwrap_err();
        assert!(
            matches!(err, Error::DegenerateCurvature { index: 1, .. }),
            "{err}"
        );
    }

    #[test]
    fn wrong_speed() {
        let s: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
        let pts = s
            .iter()
            .map(|x| LVector::new(vec![0.0, 2.0 * x, 0.0]).unwrap())
            .collect();
        let t = CurveTrace::new(s, pts).unwrap();
        let err =
            frenet_from_trace(&t, FrameKind::Spacelike, &RecoveryOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NotUnitSpeed { .. }));
    }

    #[test]
    fn short_trace() {
        let s: Vec<f64> = (0..6).map(|i| i as f64 * 0.01).collect();
        let pts = s
            .iter()
            .map(|x| LVector::new(vec![0.0, *x, 0.0]).unwrap())
            .collect();
        let t = CurveTrace::new(s, pts).unwrap();
        assert!(matches!(
            frenet_from_trace(&t, FrameKind::Spacelike, &RecoveryOptions::default()),
            Err(Error::GridMismatch(_))
        ));
    }
}
