//! Integrate a spacelike curve in L^4 from its curvatures.

use lcurve::frenet::{frame_residuals, synthesize_with_stats, CurvatureSpec};
use lcurve::metric::SignatureVector;

fn main() -> Result<(), lcurve::error::Error> {
    let kappas = CurvatureSpec::parse_kappas(&["1 + 0.3*sin(s)", "0.8", "0.5 + 0.1*s"])?;
    let spec = CurvatureSpec::spacelike(4, kappas, SignatureVector::new(vec![1, 1, -1])?)
        .with_range(0.0, 6.0)
        .with_step(1e-3);
    let (trace, frames, stats) = synthesize_with_stats(&spec)?;

    println!(
        "{} nodes, largest step drift {:.2e}",
        stats.steps + 1,
        stats.max_step_drift
    );
    println!(
        "pairing residual of the frames {:.2e}",
        frame_residuals(&frames).max()
    );
    for k in (0..trace.len()).step_by(1000) {
        let p = &trace.points()[k];
        println!("s = {:.1}  x = {:?}", trace.s_grid()[k], p.coords());
    }
    Ok(())
}
