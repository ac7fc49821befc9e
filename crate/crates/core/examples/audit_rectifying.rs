//! Construct a g-rectifying field in L^4 and audit every printed identity.

use lcurve::characterize::{
    assemble_from_profile, audit_spacelike_rectifying, classify, rectifying_coeffs_spacelike,
};
use lcurve::expr::ScalarFn;
use lcurve::frenet::{synthesize_from_curvatures, CurvatureSpec};
use lcurve::gfield::g_position_from_frames;
use lcurve::metric::SignatureVector;
use lcurve::report::audit_text;

fn main() -> Result<(), lcurve::error::Error> {
    let spec = CurvatureSpec::spacelike(
        4,
        CurvatureSpec::parse_kappas(&["1", "1", "1"])?,
        SignatureVector::new(vec![1, 1, -1])?,
    )
    .with_range(0.0, 1.5)
    .with_step(5e-3);
    let (_, frames) = synthesize_from_curvatures(&spec)?;
    let g = ScalarFn::parse("exp(s)")?;

    let profile = rectifying_coeffs_spacelike(&frames, &g, 0.0, 1.0)?;
    println!("closing equation residual {:.2e}", profile.closure_residual);
    let anchor = assemble_from_profile(&frames, &profile.profile)?[0].clone();
    let field = g_position_from_frames(&frames, &g, 0.0, 1.0, Some(&anchor))?;

    let (class, _) = classify(&frames, &field, 1e-5)?;
    println!("classification: {class:?}\n");
    let report = audit_spacelike_rectifying(&frames, &field, &g, 1e-5)?;
    print!("{}", audit_text(&report));
    Ok(())
}
