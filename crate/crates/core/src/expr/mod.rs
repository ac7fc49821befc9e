//! Scalar functions of the arc-length parameter `s`.
//!
//! Grammar (lowest to highest precedence):
//!
//! ```text
//! expr    := term (('+' | '-') term)*          left associative
//! term    := unary (('*' | '/') unary)*        left associative
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?                 right associative
//! atom    := number | 's' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | tan | sinh | cosh | exp | log | sqrt
//! ```
//!
//! `-2^2` is `-(2^2)` and `2^3^2` is `2^(3^2)`. Numbers accept an optional
//! fraction and exponent (`1.5e-3`).

mod derive;
mod parser;

use std::fmt;
use std::sync::Arc;

pub use parser::ParseError;

/// Built-in unary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// Expression tree over the single variable `s`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Evaluation failures.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("{op} undefined for argument {arg}")]
    Domain { op: &'static str, arg: f64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite result in {op}")]
    Overflow { op: &'static str },
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn depends_on_s(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var => true,
            Expr::Neg(a) | Expr::Call(_, a) => a.depends_on_s(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.depends_on_s() || b.depends_on_s(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(a) | Expr::Call(_, a) => 1 + a.depth(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn eval(&self, s: f64) -> Result<f64, EvalError> {
        let out = match self {
            Expr::Const(c) => *c,
            Expr::Var => s,
            Expr::Neg(a) => -a.eval(s)?,
            Expr::Add(a, b) => a.eval(s)? + b.eval(s)?,
            Expr::Sub(a, b) => a.eval(s)? - b.eval(s)?,
            Expr::Mul(a, b) => a.eval(s)? * b.eval(s)?,
            Expr::Div(a, b) => {
                let den = b.eval(s)?;
                if den == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval(s)? / den
            }
            Expr::Pow(a, b) => {
                let base = a.eval(s)?;
                let exp = b.eval(s)?;
                pow_checked(base, exp)?
            }
            Expr::Call(f, a) => {
                let x = a.eval(s)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x <= 0.0 {
                            return Err(EvalError::Domain { op: "log", arg: x });
                        }
                        x.ln()
                    }
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(EvalError::Domain { op: "sqrt", arg: x });
                        }
                        x.sqrt()
                    }
                }
            }
        };
        if out.is_finite() {
            Ok(out)
        } else {
            Err(EvalError::Overflow { op: self.op_name() })
        }
    }

    fn op_name(&self) -> &'static str {
        match self {
            Expr::Const(_) => "constant",
            Expr::Var => "s",
            Expr::Neg(_) => "negation",
            Expr::Add(..) => "+",
            Expr::Sub(..) => "-",
            Expr::Mul(..) => "*",
            Expr::Div(..) => "/",
            Expr::Pow(..) => "^",
            Expr::Call(f, _) => f.name(),
        }
    }

    /// Symbolic derivative with respect to `s`.
    pub fn derivative(&self) -> Expr {
        derive::derivative(self)
    }

    // Smart constructors with constant folding.

    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(inner) => *inner,
            other => Expr::Neg(Box::new(other)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x + y),
            (Some(0.0), _) => b,
            (_, Some(0.0)) => a,
            _ => Expr::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x - y),
            (Some(0.0), _) => Expr::neg(b),
            (_, Some(0.0)) => a,
            _ => Expr::Sub(Box::new(a), Box::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x * y),
            (Some(0.0), _) => Expr::Const(0.0),
            (_, Some(0.0)) => Expr::Const(0.0),
            (Some(1.0), _) => b,
            (_, Some(1.0)) => a,
            (Some(-1.0), _) => Expr::neg(b),
            (_, Some(-1.0)) => Expr::neg(a),
            _ => Expr::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if y != 0.0 => Expr::Const(x / y),
            (Some(0.0), _) => Expr::Const(0.0),
            (_, Some(1.0)) => a,
            (_, Some(-1.0)) => Expr::neg(a),
            _ => Expr::Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => match pow_checked(x, y) {
                Ok(v) => Expr::Const(v),
                Err(_) => Expr::Pow(Box::new(a), Box::new(b)),
            },
            (_, Some(0.0)) => Expr::Const(1.0),
            (_, Some(1.0)) => a,
            _ => Expr::Pow(Box::new(a), Box::new(b)),
        }
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }
}

fn pow_checked(base: f64, exp: f64) -> Result<f64, EvalError> {
    if base < 0.0 && exp.fract() != 0.0 {
        return Err(EvalError::Domain { op: "^", arg: base });
    }
    if base == 0.0 && exp < 0.0 {
        return Err(EvalError::DivisionByZero);
    }
    Ok(base.powf(exp))
}

// Printing precedence levels.
const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_UNARY: u8 = 3;
const P_POW: u8 = 4;
const P_ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => P_ADD,
        Expr::Mul(..) | Expr::Div(..) => P_MUL,
        Expr::Neg(_) => P_UNARY,
        Expr::Const(c) if c.is_sign_negative() => P_UNARY,
        Expr::Pow(..) => P_POW,
        Expr::Const(_) | Expr::Var | Expr::Call(..) => P_ATOM,
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    let a = c.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        write!(f, "{c}")
    } else {
        write!(f, "{c:?}")
    }
}

fn write_prec(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        f.write_str("(")?;
        write_expr(f, e)?;
        f.write_str(")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(c) => write_const(f, *c),
        Expr::Var => f.write_str("s"),
        Expr::Neg(a) => {
            f.write_str("-")?;
            write_prec(f, a, P_UNARY)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_prec(f, a, P_ADD)?;
            f.write_str(if matches!(e, Expr::Add(..)) {
                " + "
            } else {
                " - "
            })?;
            write_prec(f, b, P_MUL)
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            write_prec(f, a, P_MUL)?;
            f.write_str(if matches!(e, Expr::Mul(..)) {
                " * "
            } else {
                " / "
            })?;
            write_prec(f, b, P_UNARY)
        }
        Expr::Pow(a, b) => {
            write_prec(f, a, P_ATOM)?;
            f.write_str("^")?;
            write_prec(f, b, P_UNARY)
        }
        Expr::Call(func, a) => {
            write!(f, "{}(", func.name())?;
            write_expr(f, a)?;
            f.write_str(")")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

/// A parsed scalar function of `s` together with its source text.
#[derive(Clone)]
pub struct ScalarFn {
    ast: Arc<Expr>,
    source: String,
}

impl ScalarFn {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_scalar_fn(text)
    }

    pub fn from_expr(ast: Expr) -> Self {
        let source = ast.to_string();
        Self {
            ast: Arc::new(ast),
            source,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_expr(Expr::Const(c))
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, s: f64) -> Result<f64, EvalError> {
        self.ast.eval(s)
    }

    /// Symbolic derivative with respect to `s`.
    pub fn derivative(&self) -> ScalarFn {
        ScalarFn::from_expr(derive::derivative(&self.ast))
    }

    pub fn is_constant(&self) -> bool {
        !self.ast.depends_on_s()
    }
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFn({:?})", self.source)
    }
}

impl fmt::Display for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl PartialEq for ScalarFn {
    fn eq(&self, other: &Self) -> bool {
        self.ast == other.ast
    }
}

pub fn parse_scalar_fn(text: &str) -> Result<ScalarFn, ParseError> {
    let ast = parser::parse(text)?;
    Ok(ScalarFn {
        ast: Arc::new(ast),
        source: text.to_string(),
    })
}

pub fn eval_scalar_fn(f: &ScalarFn, s: f64) -> Result<f64, EvalError> {
    f.eval(s)
}

pub fn derive_scalar_fn(f: &ScalarFn) -> ScalarFn {
    f.derivative()
}
