use crate::error::{Error, Result};
use crate::expr::ScalarFn;
use crate::frenet::{FrameKind, FrenetData};
use crate::gfield::{frame_coefficients, GFieldTrace};
use crate::metric::{dot, time_orientation_with, OrientationReading, TimeOrientation, TAU_CAUSAL};
use crate::numeric::{cumulative_simpson, gradient};

use super::{
    check_same_grid, normal_coeffs, rectifying_coeffs_null, rectifying_coeffs_spacelike,
    AuditBuilder, AuditReport, Theorem,
};

/// Node-wise data shared by the audits.
struct Measured {
    s: Vec<f64>,
    /// Raw pairings `<xi_g, frame_k>`.
    pair: Vec<Vec<f64>>,
    /// Coefficients along the frame.
    coef: Vec<Vec<f64>>,
    /// `<xi_g, xi_g>`.
    norm2: Vec<f64>,
    /// Euclidean size of `xi_g`.
    size: Vec<f64>,
    kappa: Vec<Vec<f64>>,
    g: Vec<f64>,
}

impl Measured {
    fn new(fd: &FrenetData, gft: &GFieldTrace) -> Self {
        let mut pair = Vec::with_capacity(fd.len());
        let mut coef = Vec::with_capacity(fd.len());
        for (xi, frame) in gft.xi_g.iter().zip(&fd.frames) {
            pair.push(frame.iter().map(|e| dot(xi, e)).collect());
            coef.push(frame_coefficients(xi, frame, fd.kind, &fd.sigs));
        }
        Self {
            s: fd.s_grid.clone(),
            pair,
            coef,
            norm2: gft.xi_g.iter().map(|v| v.square()).collect(),
            size: gft.xi_g.iter().map(|v| v.euclid_norm()).collect(),
            kappa: fd.curvatures.clone(),
            g: gft.g_values.clone(),
        }
    }

    fn pair_col(&self, slot: usize) -> Vec<f64> {
        self.pair.iter().map(|r| r[slot]).collect()
    }

    fn coef_col(&self, slot: usize) -> Vec<f64> {
        self.coef.iter().map(|r| r[slot]).collect()
    }

    /// `k_i`, one-based.
    fn kappa_col(&self, i: usize) -> Vec<f64> {
        self.kappa.iter().map(|r| r[i - 1]).collect()
    }

    fn d(&self, v: &[f64]) -> Vec<f64> {
        gradient(&self.s, v)
    }

    /// `sum_k <E_k, E_k> c_k^2`, with the cross term for null frames.
    fn expansion(&self, kind: FrameKind, sig: impl Fn(usize) -> f64) -> Vec<f64> {
        self.coef
            .iter()
            .map(|c| match kind {
                FrameKind::Spacelike => c
                    .iter()
                    .enumerate()
                    .map(|(k, v)| if k == 0 { v * v } else { sig(k) * v * v })
                    .sum(),
                FrameKind::Null => {
                    2.0 * c[0] * c[2] + c[1] * c[1] + c[3..].iter().map(|v| v * v).sum::<f64>()
                }
            })
            .collect()
    }

    /// `value(s0) + sign * int_{s0}^s f`.
    fn anchored(&self, f: &[f64], s0_index: usize, value: f64, sign: f64) -> Vec<f64> {
        let acc = cumulative_simpson(&self.s, f);
        acc.iter()
            .map(|a| value + sign * (a - acc[s0_index]))
            .collect()
    }

    fn zeros(&self) -> Vec<f64> {
        vec![0.0; self.s.len()]
    }
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Grid mean of `v`.
fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Least-squares slope of `v` against `s`.
fn slope(s: &[f64], v: &[f64]) -> f64 {
    let (ms, mv) = (mean(s), mean(v));
    let num: f64 = s.iter().zip(v).map(|(a, b)| (a - ms) * (b - mv)).sum();
    let den: f64 = s.iter().map(|a| (a - ms) * (a - ms)).sum();
    if den == 0.0 {
        f64::NAN
    } else {
        num / den
    }
}

/// `a (s + c)` with `c` fitted in the least-squares sense.
fn fitted_shift(s: &[f64], v: &[f64], a: &[f64]) -> Vec<f64> {
    let c = mean(
        &s.iter()
            .zip(v)
            .zip(a)
            .map(|((x, y), k)| y / k - x)
            .collect::<Vec<_>>(),
    );
    s.iter().zip(a).map(|(x, k)| k * (x + c)).collect()
}

fn orientation_notes(b: &mut AuditBuilder, gft: &GFieldTrace) {
    let v = &gft.xi_g[gft.s0_index];
    let readings: Vec<String> = OrientationReading::ALL
        .iter()
        .map(|r| {
            let o = time_orientation_with(v, *r, TAU_CAUSAL);
            let name = match o {
                TimeOrientation::FuturePointing => "future",
                TimeOrientation::PastPointing => "past",
                TimeOrientation::Undefined => "undefined",
            };
            format!("{r:?}={name}")
        })
        .collect();
    b.note(format!(
        "time orientation of xi_g(s0): {}",
        readings.join(", ")
    ));
}

fn expect_kind(fd: &FrenetData, kind: FrameKind) -> Result<()> {
    if fd.kind != kind {
        return Err(Error::Spec(format!(
            "audit expects a {kind:?} frame, got {:?}",
            fd.kind
        )));
    }
    Ok(())
}

/// Audit the spacelike g-rectifying claims on `xi_g`.
///
/// `G` is taken from `gft`, so the claims are judged against the same
/// integration constant used to build the field.
pub fn audit_spacelike_rectifying(
    fd: &FrenetData,
    gft: &GFieldTrace,
    g: &ScalarFn,
    tol: f64,
) -> Result<AuditReport> {
    expect_kind(fd, FrameKind::Spacelike)?;
    check_same_grid(fd, gft)?;
    let n = fd.dim();
    let m = n - 2;
    let eps = |i: usize| fd.sigs.eps(i);
    let me = Measured::new(fd, gft);
    let big = &gft.g_primitive;
    let w = |i: usize| me.coef_col(if i == 0 { 0 } else { i + 1 });
    let bpair = |i: usize| me.pair_col(i + 1);
    let mut b = AuditBuilder::new(tol);

    b.pointwise(
        "3.1",
        "<xi_g, N> = 0",
        &me.pair_col(1),
        &me.zeros(),
        &me.size,
    );
    b.pointwise("3.5a", "<xi_g, T> = w0 = G", &me.pair_col(0), big, &me.size);

    let sum = |lo: usize, hi: usize| -> Vec<f64> {
        (0..me.s.len())
            .map(|k| {
                (lo..=hi)
                    .map(|i| eps(i + 1) * me.coef[k][i + 1].powi(2))
                    .sum()
            })
            .collect()
    };
    let literal_sum = if m >= 3 { sum(2, m - 1) } else { me.zeros() };
    if m < 3 {
        b.note("3.6-literal: index range i = 2..n-3 is empty; the sum vanishes identically");
    }
    b.constancy(
        "3.6-literal",
        "sum_{i=2}^{n-3} e(i+1) wi^2 = c^2",
        &literal_sum,
    );
    let full = sum(1, m);
    b.constancy("3.9", "sum_{i=1}^{n-2} e(i+1) wi^2 = c^2", &full)
        .variant_of("3.6-literal");
    let c2 = mean(&full);

    let expansion = me.expansion(FrameKind::Spacelike, eps);
    b.pointwise(
        "expansion",
        "<xi_g, xi_g> = sum_k <E_k, E_k> c_k^2",
        &me.norm2,
        &expansion,
        &me.size,
    );
    let lit: Vec<f64> = big.iter().map(|x| -x * x + c2).collect();
    let var: Vec<f64> = big.iter().map(|x| x * x + c2).collect();
    b.pointwise(
        "3.7-literal",
        "<xi_g, xi_g> = -G^2 + c^2",
        &me.norm2,
        &lit,
        &me.size,
    );
    b.pointwise(
        "3.7-variant",
        "<xi_g, xi_g> = <T,T> G^2 + c^2",
        &me.norm2,
        &var,
        &me.size,
    )
    .variant_of("3.7-literal");

    if m >= 3 {
        let mut lit_r = Vec::new();
        let mut var_r = Vec::new();
        for i in 2..m {
            let wi = w(i);
            let dwi = me.d(&wi);
            let k1 = me.kappa_col(i + 1);
            let k2 = me.kappa_col(i + 2);
            let rhs: Vec<f64> = mul(&k2, &w(i + 1))
                .iter()
                .map(|v| eps(i + 1) * eps(i + 2) * v)
                .collect();
            let lhs_lit: Vec<f64> = dwi
                .iter()
                .zip(mul(&k1, &w(i + 1)))
                .map(|(a, b)| a + b)
                .collect();
            let lhs_var: Vec<f64> = dwi
                .iter()
                .zip(mul(&k1, &w(i - 1)))
                .map(|(a, b)| a + b)
                .collect();
            for k in 0..me.s.len() {
                lit_r.push(super::relative(lhs_lit[k], rhs[k], me.size[k]));
                var_r.push(super::relative(lhs_var[k], rhs[k], me.size[k]));
            }
        }
        b.residuals(
            "3.4c-literal",
            "wi' + k(i+1) w(i+1) - e(i+1) e(i+2) k(i+2) w(i+1) = 0",
            &lit_r,
        );
        b.residuals(
            "3.4c-variant",
            "wi' + k(i+1) w(i-1) - e(i+1) e(i+2) k(i+2) w(i+1) = 0",
            &var_r,
        )
        .variant_of("3.4c-literal");
    }

    // Claimed binormal components, built from G and the curvatures.
    let g0 = big[gft.s0_index];
    let profile = rectifying_coeffs_spacelike(fd, g, gft.s0, g0)?;
    let mut r310 = Vec::new();
    for i in 1..=m {
        let col = profile.column(i);
        let p = bpair(i);
        for k in 0..me.s.len() {
            r310.push(super::relative(p[k], eps(i + 1) * col[k], me.size[k]));
        }
    }
    b.residuals("3.10", "<xi_g, Bi> = e(i+1) wi", &r310);
    let k1 = me.kappa_col(1);
    let k2 = me.kappa_col(2);
    let ratio: Vec<f64> = (0..me.s.len()).map(|k| k1[k] * big[k] / k2[k]).collect();
    let rhs: Vec<f64> = ratio.iter().map(|v| v / eps(1)).collect();
    b.pointwise(
        "3.11a",
        "<xi_g, B1> = k1 G / (e1 k2)",
        &bpair(1),
        &rhs,
        &me.size,
    );
    if m >= 2 {
        let k3 = me.kappa_col(3);
        let d = me.d(&ratio);
        let rhs: Vec<f64> = d.iter().zip(&k3).map(|(a, k)| a / (eps(1) * k)).collect();
        b.pointwise(
            "3.11b",
            "<xi_g, B2> = (k1 G / k2)' / (e1 k3)",
            &bpair(2),
            &rhs,
            &me.size,
        );
    }
    let last = bpair(m);
    let f = mul(&me.kappa_col(n - 1), &w(m - 1));
    let rhs = me.anchored(&f, gft.s0_index, last[gft.s0_index], -eps(n - 1));
    b.pointwise(
        "3.12",
        "<xi_g, B(n-2)> = -e(n-1) int k(n-1) w(n-3) ds",
        &last,
        &rhs,
        &me.size,
    );
    if n == 3 {
        b.note("3.12: for n = 3 the system closes with w1' = 0, not w1' + k2 w0 = 0");
    }
    if m >= 3 {
        let mut r = Vec::new();
        for i in 2..m {
            let dwi = me.d(&w(i));
            let k1 = me.kappa_col(i + 1);
            let k2 = me.kappa_col(i + 2);
            let wm = w(i - 1);
            let p = bpair(i + 1);
            for k in 0..me.s.len() {
                let rhs = (dwi[k] + k1[k] * wm[k]) / (eps(i + 1) * k2[k]);
                r.push(super::relative(p[k], rhs, me.size[k]));
            }
        }
        b.residuals(
            "3.13",
            "<xi_g, B(i+1)> = (wi' + k(i+1) w(i-1)) / (e(i+1) k(i+2))",
            &r,
        );
    }
    b.scalar(
        "3.5d-closure",
        if n == 3 {
            "w1' = 0"
        } else {
            "w(n-2)' + k(n-1) w(n-3) = 0"
        },
        profile.closure_residual,
    );

    if c2 < 0.0 {
        b.note("c^2 < 0: the normal component of xi_g is timelike");
    }
    orientation_notes(&mut b, gft);
    Ok(b.finish(Theorem::SpacelikeRectifying, n, c2, &me.s))
}

/// Audit the null g-rectifying claims on `xi_g`.
///
/// Coefficients follow the null pairings: `w0 = <xi_g, B1>` multiplies `T`,
/// `w1 = <xi_g, T>` multiplies `B1`, `wi = <xi_g, Bi>` for `i >= 2`.
pub fn audit_null_rectifying(
    fd: &FrenetData,
    gft: &GFieldTrace,
    g: &ScalarFn,
    tol: f64,
) -> Result<AuditReport> {
    expect_kind(fd, FrameKind::Null)?;
    check_same_grid(fd, gft)?;
    let n = fd.dim();
    let m = n - 2;
    let me = Measured::new(fd, gft);
    let w0 = me.pair_col(2);
    let w1 = me.pair_col(0);
    let w = |i: usize| match i {
        0 => w0.clone(),
        1 => w1.clone(),
        _ => me.pair_col(i + 1),
    };
    let k1 = me.kappa_col(1);
    let ones = vec![1.0; me.s.len()];
    let mut b = AuditBuilder::new(tol);

    b.pointwise(
        "3.1",
        "<xi_g, N> = 0",
        &me.pair_col(1),
        &me.zeros(),
        &me.size,
    );
    b.constancy("3.26c", "w1' = 0", &w1);
    b.pointwise(
        "3.27a",
        "w0 = k1 (s + c1)",
        &w0,
        &fitted_shift(&me.s, &w0, &k1),
        &me.size,
    );
    let sl = slope(&me.s, &w1);
    b.scalar("3.27b", "w1 = s + c1", (sl - 1.0).abs());
    b.note(format!(
        "3.27b: least-squares slope of w1 against s is {sl:e}"
    ));
    if m >= 2 {
        let rhs: Vec<f64> = (0..me.s.len())
            .map(|k| (-me.g[k] + k1[k]) / fd.curvatures[k][1])
            .collect();
        b.pointwise("3.27c", "w2 = (-g + k1) / k2", &w(2), &rhs, &me.size);
    }

    let sum: Vec<f64> = (0..me.s.len())
        .map(|k| (1..=m).map(|i| w(i)[k].powi(2)).sum())
        .collect();
    b.constancy("3.29", "sum_{i=1}^{n-2} wi^2 = c^2", &sum);
    let c2 = mean(&sum);

    let expansion = me.expansion(FrameKind::Null, |_| 1.0);
    b.pointwise(
        "expansion",
        "<xi_g, xi_g> = 2 c_T c_B1 + c_N^2 + sum_{j>=2} c_Bj^2",
        &me.norm2,
        &expansion,
        &me.size,
    );
    let lit: Vec<f64> = (0..me.s.len())
        .map(|k| 2.0 * w0[k] * w1[k] + c2 - w1[k] * w1[k])
        .collect();
    let var: Vec<f64> = (0..me.s.len())
        .map(|k| 2.0 * w0[k] * w1[k] + (2..=m).map(|i| w(i)[k].powi(2)).sum::<f64>())
        .collect();
    b.pointwise(
        "3.30-literal",
        "<xi_g, xi_g> = 2 w0 w1 + c^2 - w1^2",
        &me.norm2,
        &lit,
        &me.size,
    );
    b.pointwise(
        "3.30-variant",
        "<xi_g, xi_g> = 2 w0 w1 + sum_{i>=2} wi^2",
        &me.norm2,
        &var,
        &me.size,
    )
    .variant_of("3.30-literal");

    // Statement 2 and 4 claims under both pairing readings.
    b.pointwise(
        "item2",
        "<xi_g, B1> = k1 (s + c)",
        &w0,
        &fitted_shift(&me.s, &w0, &k1),
        &me.size,
    );
    b.pointwise(
        "item2-swapped",
        "<xi_g, T> = k1 (s + c)",
        &w1,
        &fitted_shift(&me.s, &w1, &k1),
        &me.size,
    );
    b.pointwise(
        "item4",
        "<xi_g, T> = s + c",
        &w1,
        &fitted_shift(&me.s, &w1, &ones),
        &me.size,
    );
    b.pointwise(
        "item4-swapped",
        "<xi_g, B1> = s + c",
        &w0,
        &fitted_shift(&me.s, &w0, &ones),
        &me.size,
    );

    if m >= 3 {
        let mut r = Vec::new();
        for i in 2..m {
            let d = me.d(&w(i - 1));
            let ka = me.kappa_col(i - 1);
            let kb = me.kappa_col(i);
            let wm = w(i - 2);
            let p = w(i);
            for k in 0..me.s.len() {
                r.push(super::relative(
                    p[k],
                    (d[k] + ka[k] * wm[k]) / kb[k],
                    me.size[k],
                ));
            }
        }
        b.residuals("3.33", "<xi_g, Bi> = (w(i-1)' + k(i-1) w(i-2)) / ki", &r);
    }
    if m >= 2 {
        let last = w(m);
        let f = mul(&me.kappa_col(m), &w(m - 1));
        let rhs = me.anchored(&f, gft.s0_index, last[gft.s0_index], -1.0);
        b.pointwise(
            "3.34",
            "<xi_g, B(n-2)> = -int k(n-2) w(n-3) ds",
            &last,
            &rhs,
            &me.size,
        );
    } else {
        b.note("3.34: for n = 3 the last binormal is B1, whose pairing is w0; not audited");
    }

    let c1 = mean(&w1);
    let profile = rectifying_coeffs_null(fd, g, gft.s0, c1)?;
    b.scalar(
        "3.26f-closure",
        match n {
            3 => "w0' = g",
            4 => "w2' + k2 w1 = 0",
            _ => "w(n-2)' + k(n-2) w(n-3) = 0",
        },
        profile.closure_residual,
    );
    orientation_notes(&mut b, gft);
    Ok(b.finish(Theorem::NullRectifying, n, c2, &me.s))
}

/// Audit the spacelike g-normal claims on `xi_g`.
pub fn audit_g_normal(
    fd: &FrenetData,
    gft: &GFieldTrace,
    g: &ScalarFn,
    tol: f64,
) -> Result<AuditReport> {
    expect_kind(fd, FrameKind::Spacelike)?;
    check_same_grid(fd, gft)?;
    let n = fd.dim();
    let m = n - 2;
    let eps = |i: usize| fd.sigs.eps(i);
    let me = Measured::new(fd, gft);
    let mu = |i: usize| me.coef_col(i + 1);
    let bpair = |i: usize| me.pair_col(i + 1);
    let k1 = me.kappa_col(1);
    let k2 = me.kappa_col(2);
    let g_over_k: Vec<f64> = me.g.iter().zip(&k1).map(|(a, b)| a / b).collect();
    let mut b = AuditBuilder::new(tol);

    b.pointwise(
        "4.1",
        "<xi_g, T> = 0",
        &me.pair_col(0),
        &me.zeros(),
        &me.size,
    );
    let neg: Vec<f64> = g_over_k.iter().map(|v| -v).collect();
    b.pointwise(
        "item2-literal",
        "<xi_g, N> = g / k1",
        &me.pair_col(1),
        &g_over_k,
        &me.size,
    );
    b.pointwise(
        "item2-variant",
        "<xi_g, N> = e1 theta = -g / k1",
        &me.pair_col(1),
        &neg,
        &me.size,
    )
    .variant_of("item2-literal");

    let sum = |lo: usize, hi: usize| -> Vec<f64> {
        (0..me.s.len())
            .map(|k| {
                (lo..=hi)
                    .map(|i| eps(i + 1) * me.coef[k][i + 1].powi(2))
                    .sum()
            })
            .collect()
    };
    let literal_sum = if m >= 3 { sum(2, m - 1) } else { me.zeros() };
    if m < 3 {
        b.note("4.5-literal: index range i = 2..n-3 is empty; the sum vanishes identically");
    }
    b.constancy(
        "4.5-literal",
        "sum_{i=2}^{n-3} e(i+1) mui^2 = c^2",
        &literal_sum,
    );
    let full = sum(1, m);
    b.constancy("4.8", "sum_{i=1}^{n-2} e(i+1) mui^2 = c^2", &full)
        .variant_of("4.5-literal");
    let c2 = mean(&full);
    b.constancy("norm-constant", "<xi_g, xi_g> = const", &me.norm2);

    let expansion = me.expansion(FrameKind::Spacelike, eps);
    b.pointwise(
        "expansion",
        "<xi_g, xi_g> = sum_k <E_k, E_k> c_k^2",
        &me.norm2,
        &expansion,
        &me.size,
    );
    let theta = me.coef_col(1);
    let lit: Vec<f64> = g_over_k.iter().map(|v| -v * v + c2).collect();
    let var: Vec<f64> = theta.iter().map(|t| eps(1) * t * t + c2).collect();
    b.pointwise(
        "4.6-literal",
        "<xi_g, xi_g> = -(g / k1)^2 + c^2",
        &me.norm2,
        &lit,
        &me.size,
    );
    b.pointwise(
        "4.6-variant",
        "<xi_g, xi_g> = e1 theta^2 + c^2",
        &me.norm2,
        &var,
        &me.size,
    )
    .variant_of("4.6-literal");

    // (-g / k1)'
    let d1 = me.d(&neg);
    let lit: Vec<f64> = (0..me.s.len())
        .map(|k| d1[k] / (eps(1) * eps(2) * k2[k]))
        .collect();
    let var: Vec<f64> = (0..me.s.len()).map(|k| d1[k] / (eps(2) * k2[k])).collect();
    b.pointwise(
        "4.4b-literal",
        "mu1 = (-g / k1)' / (e1 e2 k2)",
        &mu(1),
        &lit,
        &me.size,
    );
    b.pointwise(
        "4.4b-variant",
        "mu1 = (-g / k1)' / (e2 k2)",
        &mu(1),
        &var,
        &me.size,
    )
    .variant_of("4.4b-literal");
    let lit: Vec<f64> = (0..me.s.len()).map(|k| d1[k] / (eps(1) * k2[k])).collect();
    let var: Vec<f64> = (0..me.s.len()).map(|k| d1[k] / k2[k]).collect();
    b.pointwise(
        "4.9-literal",
        "<xi_g, B1> = (-g / k1)' / (e1 k2)",
        &bpair(1),
        &lit,
        &me.size,
    );
    b.pointwise(
        "4.9-variant",
        "<xi_g, B1> = (-g / k1)' / k2",
        &bpair(1),
        &var,
        &me.size,
    )
    .variant_of("4.9-literal");

    if m >= 2 {
        let k3 = me.kappa_col(3);
        let inner: Vec<f64> = (0..me.s.len()).map(|k| d1[k] / (eps(2) * k2[k])).collect();
        let di = me.d(&inner);
        let lit: Vec<f64> = (0..me.s.len())
            .map(|k| (-k2[k] * g_over_k[k] + di[k]) / (eps(1) * eps(2) * k3[k]))
            .collect();
        let var: Vec<f64> = (0..me.s.len())
            .map(|k| (di[k] - k2[k] * g_over_k[k] / eps(1)) / (eps(2) * k3[k]))
            .collect();
        b.pointwise(
            "4.10-literal",
            "<xi_g, B2> = (-k2 g / k1 + ((-g / k1)' / (e2 k2))') / (e1 e2 k3)",
            &bpair(2),
            &lit,
            &me.size,
        );
        b.pointwise(
            "4.10-variant",
            "<xi_g, B2> = (((-g / k1)' / (e2 k2))' - k2 g / (e1 k1)) / (e2 k3)",
            &bpair(2),
            &var,
            &me.size,
        )
        .variant_of("4.10-literal");
    }
    if m >= 3 {
        let mut r = Vec::new();
        for i in 2..m {
            let d = me.d(&mu(i));
            let ka = me.kappa_col(i + 1);
            let kb = me.kappa_col(i + 2);
            let prev = mu(i - 1);
            let p = bpair(i + 1);
            for k in 0..me.s.len() {
                r.push(super::relative(
                    p[k],
                    (d[k] + ka[k] * prev[k]) / (eps(i + 1) * kb[k]),
                    me.size[k],
                ));
            }
        }
        b.residuals(
            "4.11",
            "<xi_g, B(i+1)> = (mui' + k(i+1) mu(i-1)) / (e(i+1) k(i+2))",
            &r,
        );
    }
    let last = bpair(m);
    let prev = if m == 1 { theta.clone() } else { mu(m - 1) };
    let f = mul(&me.kappa_col(n - 1), &prev);
    let rhs = me.anchored(&f, gft.s0_index, last[gft.s0_index], -eps(n - 1));
    b.pointwise(
        "4.12",
        "<xi_g, B(n-2)> = -e(n-1) int k(n-1) mu(n-3) ds",
        &last,
        &rhs,
        &me.size,
    );

    let profile = normal_coeffs(fd, g)?;
    b.scalar(
        "4.4d-closure",
        "mu(n-2)' + k(n-1) mu(n-3) = 0",
        profile.closure_residual,
    );
    orientation_notes(&mut b, gft);
    Ok(b.finish(Theorem::GNormal, n, c2, &me.s))
}
