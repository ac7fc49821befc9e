//! Sample a null curve, then read its curvatures back from the points alone.

use lcurve::frenet::{
    frenet_from_trace, synthesize_from_curvatures, CurvatureSpec, RecoveryOptions,
};

fn main() -> Result<(), lcurve::error::Error> {
    let spec = CurvatureSpec::null(
        5,
        CurvatureSpec::parse_kappas(&["0.5 + 0.1*sin(s)", "0.8", "1.3"])?,
    )
    .with_range(0.0, 3.0)
    .with_step(1e-3);
    let (trace, truth) = synthesize_from_curvatures(&spec)?;
    let recovered = frenet_from_trace(&trace, spec.kind, &RecoveryOptions::default())?;

    let offset = truth
        .s_grid
        .iter()
        .position(|s| *s == recovered.s_grid[0])
        .unwrap_or(0);
    println!("recovered {} interior nodes", recovered.len());
    for k in (0..recovered.len()).step_by(500) {
        println!(
            "s = {:.3}  recovered {:?}  true {:?}",
            recovered.s_grid[k],
            recovered.curvatures[k],
            truth.curvatures[offset + k]
        );
    }
    Ok(())
}
