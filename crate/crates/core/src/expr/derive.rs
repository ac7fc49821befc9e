use super::{Expr, Func};

fn b(e: &Expr) -> Expr {
    e.clone()
}

pub(super) fn derivative(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Neg(a) => Expr::neg(derivative(a)),
        Expr::Add(a, c) => Expr::add(derivative(a), derivative(c)),
        Expr::Sub(a, c) => Expr::sub(derivative(a), derivative(c)),
        Expr::Mul(a, c) => Expr::add(
            Expr::mul(derivative(a), b(c)),
            Expr::mul(b(a), derivative(c)),
        ),
        Expr::Div(a, c) => Expr::div(
            Expr::sub(
                Expr::mul(derivative(a), b(c)),
                Expr::mul(b(a), derivative(c)),
            ),
            Expr::pow(b(c), Expr::Const(2.0)),
        ),
        Expr::Pow(base, exp) => {
            let du = derivative(base);
            if !exp.depends_on_s() {
                // c * u^(c-1) * u'
                let lowered = Expr::sub(b(exp), Expr::Const(1.0));
                Expr::mul(Expr::mul(b(exp), Expr::pow(b(base), lowered)), du)
            } else {
                // u^v * (v' ln u + v u'/u)
                let dv = derivative(exp);
                Expr::mul(
                    b(e),
                    Expr::add(
                        Expr::mul(dv, Expr::call(Func::Log, b(base))),
                        Expr::div(Expr::mul(b(exp), du), b(base)),
                    ),
                )
            }
        }
        Expr::Call(f, a) => {
            let du = derivative(a);
            let outer = match f {
                Func::Sin => Expr::call(Func::Cos, b(a)),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, b(a))),
                Func::Tan => Expr::div(
                    Expr::Const(1.0),
                    Expr::pow(Expr::call(Func::Cos, b(a)), Expr::Const(2.0)),
                ),
                Func::Sinh => Expr::call(Func::Cosh, b(a)),
                Func::Cosh => Expr::call(Func::Sinh, b(a)),
                Func::Exp => b(e),
                Func::Log => Expr::div(Expr::Const(1.0), b(a)),
                Func::Sqrt => Expr::div(Expr::Const(0.5), b(e)),
            };
            Expr::mul(outer, du)
        }
    }
}
