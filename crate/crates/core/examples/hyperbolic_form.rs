//! Project a timelike g-rectifying field onto the hyperbolic space.

use lcurve::characterize::{
    assemble_from_profile, hyperbolic_c_estimate, hyperbolic_form_audit, hyperbolic_trace,
    rectifying_coeffs_spacelike,
};
use lcurve::expr::ScalarFn;
use lcurve::frenet::{synthesize_from_curvatures, CurvatureSpec};
use lcurve::gfield::g_position_from_frames;
use lcurve::metric::SignatureVector;
use lcurve::report::audit_text;

fn main() -> Result<(), lcurve::error::Error> {
    let spec = CurvatureSpec::spacelike(
        3,
        CurvatureSpec::parse_kappas(&["1", "(s+1)/2"])?,
        SignatureVector::new(vec![1, -1])?,
    )
    .with_range(0.0, 0.9)
    .with_step(2.5e-3);
    let (_, frames) = synthesize_from_curvatures(&spec)?;
    let g = ScalarFn::parse("1")?;
    let profile = rectifying_coeffs_spacelike(&frames, &g, 0.0, 1.0)?;
    let anchor = assemble_from_profile(&frames, &profile.profile)?[0].clone();
    let field = g_position_from_frames(&frames, &g, 0.0, 1.0, Some(&anchor))?;

    let c = hyperbolic_c_estimate(&field)?;
    println!("c = {c:.9}");
    let trace = hyperbolic_trace(&field, c)?;
    for k in (0..trace.s_grid.len()).step_by(90) {
        println!(
            "s = {:.3}  t = {:.6}  measured arc = {:.6}  <zeta,zeta> = {:.12}",
            trace.s_grid[k],
            trace.t_printed[k],
            trace.t_measured[k],
            trace.zeta[k].square()
        );
    }
    println!();
    print!(
        "{}",
        audit_text(&hyperbolic_form_audit(&field, &g, c, 1e-5)?)
    );
    Ok(())
}
