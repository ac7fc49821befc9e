//! Scalar fields on a grid, kept symbolic while every input is analytic.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::numeric::gradient;

#[derive(Debug, Clone)]
pub(crate) enum Sf {
    Sym(Expr),
    Num(Vec<f64>),
}

impl Sf {
    pub fn constant(c: f64) -> Self {
        Sf::Sym(Expr::Const(c))
    }
}

/// Operations on [`Sf`] over a fixed grid.
pub(crate) struct Grid<'a> {
    pub s: &'a [f64],
}

impl Grid<'_> {
    fn sample(&self, e: &Expr) -> Result<Vec<f64>> {
        self.s
            .iter()
            .map(|s| e.eval(*s).map_err(|source| Error::Eval { s: *s, source }))
            .collect()
    }

    pub fn values(&self, f: &Sf) -> Result<Vec<f64>> {
        match f {
            Sf::Sym(e) => self.sample(e),
            Sf::Num(v) => Ok(v.clone()),
        }
    }

    fn zip(&self, a: &Sf, b: &Sf, op: fn(f64, f64) -> f64) -> Result<Sf> {
        let x = self.values(a)?;
        let y = self.values(b)?;
        Ok(Sf::Num(x.iter().zip(&y).map(|(p, q)| op(*p, *q)).collect()))
    }

    pub fn add(&self, a: &Sf, b: &Sf) -> Result<Sf> {
        match (a, b) {
            (Sf::Sym(x), Sf::Sym(y)) => Ok(Sf::Sym(Expr::add(x.clone(), y.clone()))),
            _ => self.zip(a, b, |p, q| p + q),
        }
    }

    pub fn mul(&self, a: &Sf, b: &Sf) -> Result<Sf> {
        match (a, b) {
            (Sf::Sym(x), Sf::Sym(y)) => Ok(Sf::Sym(Expr::mul(x.clone(), y.clone()))),
            _ => self.zip(a, b, |p, q| p * q),
        }
    }

    pub fn div(&self, a: &Sf, b: &Sf) -> Result<Sf> {
        match (a, b) {
            (Sf::Sym(x), Sf::Sym(y)) => Ok(Sf::Sym(Expr::div(x.clone(), y.clone()))),
            _ => self.zip(a, b, |p, q| p / q),
        }
    }

    pub fn scale(&self, c: f64, a: &Sf) -> Sf {
        match a {
            Sf::Sym(x) => Sf::Sym(Expr::mul(Expr::Const(c), x.clone())),
            Sf::Num(v) => Sf::Num(v.iter().map(|x| c * x).collect()),
        }
    }

    pub fn deriv(&self, a: &Sf) -> Sf {
        match a {
            Sf::Sym(x) => Sf::Sym(x.derivative()),
            Sf::Num(v) => Sf::Num(gradient(self.s, v)),
        }
    }
}

/// How the carrier `C` of an [`Affine`] coefficient varies.
#[derive(Debug, Clone)]
pub(crate) enum Carrier {
    /// `C = G` with `C' = g`.
    Primitive(Sf),
    /// `C` constant.
    Constant,
}

/// A coefficient `a(s) C(s) + b(s)`.
#[derive(Debug, Clone)]
pub(crate) struct Affine {
    pub a: Sf,
    pub b: Sf,
}

impl Affine {
    pub fn carrier() -> Self {
        Affine {
            a: Sf::constant(1.0),
            b: Sf::constant(0.0),
        }
    }

    pub fn free(b: Sf) -> Self {
        Affine {
            a: Sf::constant(0.0),
            b,
        }
    }
}

impl Grid<'_> {
    pub fn affine_add(&self, x: &Affine, y: &Affine) -> Result<Affine> {
        Ok(Affine {
            a: self.add(&x.a, &y.a)?,
            b: self.add(&x.b, &y.b)?,
        })
    }

    pub fn affine_mul(&self, f: &Sf, x: &Affine) -> Result<Affine> {
        Ok(Affine {
            a: self.mul(f, &x.a)?,
            b: self.mul(f, &x.b)?,
        })
    }

    pub fn affine_div(&self, x: &Affine, f: &Sf) -> Result<Affine> {
        Ok(Affine {
            a: self.div(&x.a, f)?,
            b: self.div(&x.b, f)?,
        })
    }

    pub fn affine_scale(&self, c: f64, x: &Affine) -> Affine {
        Affine {
            a: self.scale(c, &x.a),
            b: self.scale(c, &x.b),
        }
    }

    pub fn affine_deriv(&self, x: &Affine, carrier: &Carrier) -> Result<Affine> {
        let da = self.deriv(&x.a);
        let db = self.deriv(&x.b);
        let b = match carrier {
            Carrier::Primitive(g) => self.add(&self.mul(&x.a, g)?, &db)?,
            Carrier::Constant => db,
        };
        Ok(Affine { a: da, b })
    }

    /// `a C + b` at every node.
    pub fn affine_values(&self, x: &Affine, carrier_values: &[f64]) -> Result<Vec<f64>> {
        let a = self.values(&x.a)?;
        let b = self.values(&x.b)?;
        Ok(a.iter()
            .zip(&b)
            .zip(carrier_values)
            .map(|((p, q), c)| p * c + q)
            .collect())
    }
}
