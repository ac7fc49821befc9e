//! Scalar products, causal characters and Lorentz maps in L^4.

use lcurve::metric::{causal_character, gram_schmidt_pseudo, lorentz_inner, LVector, LinearMap};

fn main() -> Result<(), lcurve::error::Error> {
    let t = LVector::new(vec![2.0, 1.0, 0.0, 0.0])?;
    let x = LVector::new(vec![1.0, 1.0, 0.0, 0.0])?;
    let e = LVector::new(vec![0.0, 0.0, 3.0, 4.0])?;

    for (name, v) in [("t", &t), ("x", &x), ("e", &e)] {
        println!(
            "{name}: <v,v> = {:>6}  {:?}",
            v.square(),
            causal_character(v, 1e-12)
        );
    }
    println!("<t,e> = {}", lorentz_inner(&t, &e)?);

    let boost = LinearMap::boost(4, 1, 0.7);
    let moved = boost.apply(&t);
    println!(
        "boosted t = {:?}, <.,.> still {}",
        moved.coords(),
        moved.square()
    );

    let (basis, sigs) =
        gram_schmidt_pseudo(&[t, e, LVector::basis(4, 2), LVector::basis(4, 1)], 1e-9)?;
    println!("pseudo-orthonormal signs {:?}", sigs.as_slice());
    for b in &basis {
        println!("  {:?}", b.coords());
    }
    Ok(())
}
