//! A g-normal field in L^3 has constant Lorentzian size.

use lcurve::characterize::{assemble_from_profile, audit_g_normal, classify, normal_coeffs};
use lcurve::expr::ScalarFn;
use lcurve::frenet::{synthesize_from_curvatures, CurvatureSpec};
use lcurve::gfield::g_position_from_frames;
use lcurve::metric::SignatureVector;
use lcurve::report::audit_text;

fn main() -> Result<(), lcurve::error::Error> {
    let spec = CurvatureSpec::spacelike(
        3,
        CurvatureSpec::parse_kappas(&["1", "1"])?,
        SignatureVector::new(vec![1, -1])?,
    )
    .with_range(0.0, 1.5)
    .with_step(5e-3);
    let (_, frames) = synthesize_from_curvatures(&spec)?;
    let g = ScalarFn::parse("exp(s)")?;

    let profile = normal_coeffs(&frames, &g)?;
    let anchor = assemble_from_profile(&frames, &profile.profile)?[0].clone();
    let field = g_position_from_frames(&frames, &g, 0.0, 0.0, Some(&anchor))?;
    let sizes: Vec<f64> = field.xi_g.iter().map(|v| v.square()).collect();
    println!(
        "<xi_g, xi_g> from {:.9} to {:.9}",
        sizes[0],
        sizes[sizes.len() - 1]
    );
    println!("classification: {:?}\n", classify(&frames, &field, 1e-5)?.0);
    print!(
        "{}",
        audit_text(&audit_g_normal(&frames, &field, &g, 1e-5)?)
    );
    Ok(())
}
