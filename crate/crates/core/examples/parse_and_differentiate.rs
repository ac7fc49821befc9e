//! Parse curvature expressions and take exact derivatives.

use lcurve::expr::ScalarFn;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["1 + 0.2*sin(s)", "exp(-s^2/2)", "log(1 + s^2)", "s^s"] {
        let f = ScalarFn::parse(text)?;
        let df = f.derivative();
        println!("f(s)  = {f}");
        println!("f'(s) = {df}");
        println!("f(1) = {:.6}, f'(1) = {:.6}\n", f.eval(1.0)?, df.eval(1.0)?);
    }
    match ScalarFn::parse("sqrt(s") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
