//! The hyperbolic representation of a g-rectifying field.
//!
//! When `xi_g` is timelike its size is `l^2 = c^2 - G^2` and `zeta = xi_g / l`
//! lies on the unit hyperbolic space. The audit compares the printed speed of
//! `zeta`, its arc length and the reconstruction of `xi_g` from `zeta` with
//! what the sampled field actually does.

use crate::error::{Error, Result};
use crate::expr::ScalarFn;
use crate::gfield::GFieldTrace;
use crate::metric::LVector;
use crate::numeric::{cumulative_simpson, gradient};

use super::{AuditBuilder, AuditReport, Theorem};

/// `zeta` and both arc-length readings on the admissible window.
#[derive(Debug, Clone)]
pub struct HyperbolicTrace {
    pub s_grid: Vec<f64>,
    /// Index of the first window node in the input grid.
    pub offset: usize,
    pub zeta: Vec<LVector>,
    /// `arcsin(G / c) - arcsin(G(s0) / c)`.
    pub t_printed: Vec<f64>,
    /// `int_{s0}^s |zeta'|` from the samples.
    pub t_measured: Vec<f64>,
}

/// `c` from the timelike reading `<xi_g, xi_g> = G^2 - c^2`.
pub fn hyperbolic_c_estimate(gft: &GFieldTrace) -> Result<f64> {
    let n = gft.xi_g.len() as f64;
    let c2 = gft
        .xi_g
        .iter()
        .zip(&gft.g_primitive)
        .map(|(v, big)| big * big - v.square())
        .sum::<f64>()
        / n;
    if !(c2 > 0.0) {
        return Err(Error::DomainViolation(format!(
            "xi_g is not timelike on average (G^2 - <xi_g, xi_g> has mean {c2:e})"
        )));
    }
    Ok(c2.sqrt())
}

/// Largest run of nodes around `s0` with `|G| < c`.
fn window(big: &[f64], c: f64, s0: usize) -> Result<(usize, usize)> {
    let ok = |k: usize| big[k].abs() < c * (1.0 - 1e-12);
    if !ok(s0) {
        return Err(Error::DomainViolation(format!(
            "|G(s0)| = {} is not below c = {c}",
            big[s0].abs()
        )));
    }
    let mut lo = s0;
    while lo > 0 && ok(lo - 1) {
        lo -= 1;
    }
    let mut hi = s0;
    while hi + 1 < big.len() && ok(hi + 1) {
        hi += 1;
    }
    if hi - lo + 1 < 5 {
        return Err(Error::DomainViolation(format!(
            "admissible window around s0 has only {} nodes",
            hi - lo + 1
        )));
    }
    Ok((lo, hi))
}

fn norm_of_derivative(s: &[f64], zeta: &[LVector]) -> Vec<f64> {
    let dim = zeta[0].dim();
    let cols: Vec<Vec<f64>> = (0..dim)
        .map(|d| gradient(s, &zeta.iter().map(|z| z[d]).collect::<Vec<_>>()))
        .collect();
    (0..s.len())
        .map(|k| {
            let v = LVector::from_vec_unchecked(cols.iter().map(|c| c[k]).collect());
            v.square().abs().sqrt()
        })
        .collect()
}

/// Build `zeta` and the arc-length readings on the admissible window.
pub fn hyperbolic_trace(gft: &GFieldTrace, c: f64) -> Result<HyperbolicTrace> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::DomainViolation(format!(
            "c must be positive, got {c}"
        )));
    }
    let (lo, hi) = window(&gft.g_primitive, c, gft.s0_index)?;
    let s = gft.s_grid[lo..=hi].to_vec();
    let big = &gft.g_primitive[lo..=hi];
    let zeta: Vec<LVector> = gft.xi_g[lo..=hi]
        .iter()
        .zip(big)
        .map(|(v, x)| v.scale(1.0 / (c * c - x * x).sqrt()))
        .collect();
    let base = gft.s0_index - lo;
    let a0 = (big[base] / c).asin();
    let t_printed = big.iter().map(|x| (x / c).asin() - a0).collect();
    let speed = norm_of_derivative(&s, &zeta);
    let acc = cumulative_simpson(&s, &speed);
    let t_measured = acc.iter().map(|a| a - acc[base]).collect();
    Ok(HyperbolicTrace {
        s_grid: s,
        offset: lo,
        zeta,
        t_printed,
        t_measured,
    })
}

/// Audit the hyperbolic representation of `xi_g` for a given `c`.
///
/// Nodes with `|G| >= c` are dropped; the report notes the window used.
pub fn hyperbolic_form_audit(
    gft: &GFieldTrace,
    g: &ScalarFn,
    c: f64,
    tol: f64,
) -> Result<AuditReport> {
    let ht = hyperbolic_trace(gft, c)?;
    let lo = ht.offset;
    let len = ht.s_grid.len();
    let big = &gft.g_primitive[lo..lo + len];
    let xi = &gft.xi_g[lo..lo + len];
    let gv = &gft.g_values[lo..lo + len];
    let base = gft.s0_index - lo;
    let a0 = (big[base] / c).asin();
    let size: Vec<f64> = xi.iter().map(LVector::euclid_norm).collect();
    let mut b = AuditBuilder::new(tol);

    if len < gft.s_grid.len() {
        b.note(format!(
            "admissible window |G| < c: s in [{}, {}], {len} of {} nodes",
            ht.s_grid[0],
            ht.s_grid[len - 1],
            gft.s_grid.len()
        ));
    }

    let minus_one = vec![-1.0; len];
    let ones = vec![1.0; len];
    let zz: Vec<f64> = ht.zeta.iter().map(|z| z.square()).collect();
    b.pointwise("3.15", "<zeta, zeta> = -1", &zz, &minus_one, &ones);

    let speed = norm_of_derivative(&ht.s_grid, &ht.zeta);
    let lit: Vec<f64> = (0..len)
        .map(|k| gv[k] / (c * c - big[k] * big[k]).sqrt())
        .collect();
    let var: Vec<f64> = (0..len)
        .map(|k| gv[k].abs() * c / (c * c - big[k] * big[k]))
        .collect();
    b.pointwise(
        "3.20-literal",
        "|zeta'| = g / sqrt(c^2 - G^2)",
        &speed,
        &lit,
        &ones,
    );
    b.pointwise(
        "3.20-variant",
        "|zeta'| = |g| c / (c^2 - G^2)",
        &speed,
        &var,
        &ones,
    )
    .variant_of("3.20-literal");

    let back: Vec<f64> = ht.t_printed.iter().map(|t| c * (t + a0).sin()).collect();
    b.pointwise(
        "3.21-inverse",
        "G = c sin(t + arcsin(G(s0) / c))",
        big,
        &back,
        &ones,
    );
    b.pointwise(
        "3.21-literal",
        "int_{s0}^s |zeta'| = arcsin(G / c) - arcsin(G(s0) / c)",
        &ht.t_measured,
        &ht.t_printed,
        &ones,
    );
    let h0 = (big[base] / c).atanh();
    let t_var: Vec<f64> = big.iter().map(|x| (x / c).atanh() - h0).collect();
    b.pointwise(
        "3.21-variant",
        "int_{s0}^s |zeta'| = artanh(G / c) - artanh(G(s0) / c)",
        &ht.t_measured,
        &t_var,
        &ones,
    )
    .variant_of("3.21-literal");
    let decreasing = ht.t_printed.windows(2).filter(|w| !(w[1] > w[0])).count();
    b.scalar(
        "3.21-monotone",
        "t(s) strictly increasing",
        decreasing as f64 / (len - 1) as f64,
    );

    let r323: Vec<f64> = (0..len)
        .map(|k| {
            let rebuilt = ht.zeta[k].scale(c * (ht.t_printed[k] + a0).cos());
            (&rebuilt - &xi[k]).euclid_norm() / size[k].max(1.0)
        })
        .collect();
    b.residuals("3.23", "xi_g = zeta c cos(t + arcsin(G(s0) / c))", &r323);

    if gv.iter().any(|v| *v <= 0.0) {
        b.note(format!(
            "g = {} is not positive on the window; t(s) cannot increase throughout",
            g.source()
        ));
    }
    b.note("the primitive written F in the source is read as G");
    let report = b.finish(
        Theorem::HyperbolicForm,
        gft.xi_g[0].dim(),
        c * c,
        &ht.s_grid,
    );
    Ok(report)
}
