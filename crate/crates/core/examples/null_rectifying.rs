//! Null g-rectifying curves: the system forces a constant w1.

use lcurve::characterize::{assemble_from_profile, audit_null_rectifying, rectifying_coeffs_null};
use lcurve::expr::ScalarFn;
use lcurve::frenet::{synthesize_from_curvatures, CurvatureSpec};
use lcurve::gfield::g_position_from_frames;
use lcurve::report::audit_text;

fn main() -> Result<(), lcurve::error::Error> {
    let spec = CurvatureSpec::null(5, CurvatureSpec::parse_kappas(&["1", "1", "0.2"])?)
        .with_range(0.0, 5.0)
        .with_step(5e-3);
    let (_, frames) = synthesize_from_curvatures(&spec)?;
    let g = ScalarFn::parse("cos(0.2*s)")?;

    let profile = rectifying_coeffs_null(&frames, &g, 0.0, 0.0)?;
    let w1 = profile.column(1);
    println!(
        "w1 ranges over [{:.3e}, {:.3e}]",
        w1.iter().cloned().fold(f64::MAX, f64::min),
        w1.iter().cloned().fold(f64::MIN, f64::max)
    );
    let anchor = assemble_from_profile(&frames, &profile.profile)?[0].clone();
    let field = g_position_from_frames(&frames, &g, 0.0, 0.0, Some(&anchor))?;
    print!(
        "{}",
        audit_text(&audit_null_rectifying(&frames, &field, &g, 1e-5)?)
    );
    Ok(())
}
