use lcurve::expr::ScalarFn;
use lcurve::frenet::{synthesize_from_curvatures, CurvatureSpec, CurveTrace, FrenetData};
use lcurve::gfield::{
    decompose_field, g_position_vector, primitive_g, reconstruct, BasisKind, GFieldTrace,
};
use lcurve::metric::{LVector, SignatureVector};

fn helix(h: f64) -> (CurveTrace, FrenetData) {
    let spec = CurvatureSpec::spacelike(
        4,
        CurvatureSpec::parse_kappas(&["1", "0.5+0.2*s", "0.8"]).unwrap(),
        SignatureVector::new(vec![1, 1, -1]).unwrap(),
    )
    .with_range(0.0, 2.0)
    .with_step(h);
    synthesize_from_curvatures(&spec).unwrap()
}

fn field(h: f64, g: &str) -> (CurveTrace, FrenetData, GFieldTrace) {
    let (trace, fd) = helix(h);
    let g = ScalarFn::parse(g).unwrap();
    let gft = g_position_vector(&trace, &fd, &g, 0.5, None).unwrap();
    (trace, fd, gft)
}

#[test]
fn derivative_residual_shrinks_like_h_squared() {
    let mut last = None;
    for h in [0.02, 0.01, 0.005] {
        let (_, _, gft) = field(h, "exp(s)*cos(s)");
        let r = gft.derivative_residual;
        assert!(r <= 10.0 * h * h, "h = {h}: {r:e}");
        if let Some(prev) = last {
            assert!(prev / r > 3.5, "{prev:e} -> {r:e}");
        }
        last = Some(r);
    }
}

#[test]
fn unit_g_gives_displacement() {
    let (trace, _, gft) = field(1e-3, "1");
    let base = &trace.points()[gft.s0_index];
    for (p, xi) in trace.points().iter().zip(&gft.xi_g) {
        let want = p - base;
        assert!(
            (xi - &want).euclid_norm() < 1e-9,
            "{:e}",
            (xi - &want).euclid_norm()
        );
    }
    assert_eq!(gft.xi_g[gft.s0_index], LVector::zeros(4));
}

#[test]
fn primitive_is_fourth_order() {
    let g = ScalarFn::parse("exp(s)").unwrap();
    let err = |n: usize| {
        let s: Vec<f64> = (0..=n).map(|k| 2.0 * k as f64 / n as f64).collect();
        let big = primitive_g(&g, 0.0, &s, 0.0).unwrap();
        s.iter()
            .zip(&big)
            .map(|(x, v)| (v - (x.exp() - 1.0)).abs())
            .fold(0.0, f64::max)
    };
    let (a, b) = (err(40), err(80));
    let order = (a / b).log2();
    assert!(order >= 3.8, "observed order {order:.2} ({a:e} -> {b:e})");
}

#[test]
fn off_grid_base_point() {
    let g = ScalarFn::parse("cos(s)").unwrap();
    let s: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
    let big = primitive_g(&g, 0.123_456, &s, 2.0).unwrap();
    for (x, v) in s.iter().zip(&big) {
        let want = 2.0 + x.sin() - 0.123_456f64.sin();
        assert!((v - want).abs() < 1e-9);
    }
}

#[test]
fn decomposition_reconstructs_the_field() {
    let (_, fd, gft) = field(0.01, "1+s");
    for basis in [BasisKind::Rectifying, BasisKind::Normal] {
        let p = decompose_field(&fd, &gft.xi_g, basis).unwrap();
        assert_eq!(p.coeffs[0].len(), 3);
    }
    let full = lcurve::gfield::frame_coefficients(&gft.xi_g[50], &fd.frames[50], fd.kind, &fd.sigs);
    let back = reconstruct(&full, &fd.frames[50]);
    assert!((&back - &gft.xi_g[50]).euclid_norm() < 1e-12);
}

#[test]
fn s0_must_be_a_node() {
    let (trace, fd) = helix(0.01);
    let g = ScalarFn::parse("1").unwrap();
    assert!(g_position_vector(&trace, &fd, &g, 0.505, None).is_err());
}
