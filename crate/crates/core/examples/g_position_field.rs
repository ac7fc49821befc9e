//! Build G and the g-position field of a curve; g = 1 gives the displacement.

use lcurve::expr::ScalarFn;
use lcurve::frenet::{synthesize_from_curvatures, CurvatureSpec};
use lcurve::gfield::g_position_vector;
use lcurve::metric::SignatureVector;

fn main() -> Result<(), lcurve::error::Error> {
    let spec = CurvatureSpec::spacelike(
        3,
        CurvatureSpec::parse_kappas(&["1", "0.5"])?,
        SignatureVector::new(vec![1, -1])?,
    )
    .with_range(0.0, 2.0)
    .with_step(1e-3);
    let (trace, frames) = synthesize_from_curvatures(&spec)?;

    for text in ["1", "exp(s)"] {
        let g = ScalarFn::parse(text)?;
        let field = g_position_vector(&trace, &frames, &g, 1.0, None)?;
        let last = field.xi_g.last().unwrap();
        println!(
            "g = {text}: G(2) = {:.6}, xi_g(2) = {:?}, |xi_g' - gT| <= {:.1e}",
            field.g_primitive.last().unwrap(),
            last.coords(),
            field.derivative_residual
        );
    }
    let p = trace.points();
    let shift = &p[p.len() - 1] - &p[1000];
    println!("x(2) - x(1)     = {:?}", shift.coords());
    Ok(())
}
