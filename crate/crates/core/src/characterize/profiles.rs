use crate::error::{Error, Result};
use crate::expr::ScalarFn;
use crate::frenet::{FrameKind, FrenetData, CURVATURE_FLOOR};
use crate::gfield::{primitive_g, BasisKind, ComponentProfile};
use crate::metric::LVector;

use super::field::{Affine, Carrier, Grid, Sf};

/// `(w0, w1 .. w_{n-2})` solving the rectifying system, plus `G`.
#[derive(Debug, Clone)]
pub struct RectifyingProfile {
    pub kind: FrameKind,
    pub profile: ComponentProfile,
    pub g_primitive: Vec<f64>,
    /// Largest relative residual of the closing equation of the system.
    pub closure_residual: f64,
}

/// `(theta, mu1 .. mu_{n-2})` solving the normal system.
#[derive(Debug, Clone)]
pub struct NormalProfile {
    pub profile: ComponentProfile,
    pub closure_residual: f64,
}

impl RectifyingProfile {
    pub fn column(&self, i: usize) -> Vec<f64> {
        self.profile.coeffs.iter().map(|r| r[i]).collect()
    }

    pub fn closure_consistent(&self, tol: f64) -> bool {
        self.closure_residual <= tol
    }
}

impl NormalProfile {
    pub fn column(&self, i: usize) -> Vec<f64> {
        self.profile.coeffs.iter().map(|r| r[i]).collect()
    }

    pub fn closure_consistent(&self, tol: f64) -> bool {
        self.closure_residual <= tol
    }
}

struct Setup<'a> {
    grid: Grid<'a>,
    kappas: Vec<Sf>,
    g: Sf,
}

fn setup<'a>(fd: &'a FrenetData, g: &ScalarFn) -> Result<Setup<'a>> {
    if fd.dim() < 3 {
        return Err(Error::Spec("coefficient profiles need dim >= 3".into()));
    }
    let grid = Grid { s: &fd.s_grid };
    let kappas: Vec<Sf> = match &fd.analytic {
        Some(fns) => fns.iter().map(|f| Sf::Sym(f.ast().clone())).collect(),
        None => (0..fd.curvatures[0].len())
            .map(|i| Sf::Num(fd.curvatures.iter().map(|r| r[i]).collect()))
            .collect(),
    };
    for (i, k) in kappas.iter().enumerate() {
        let v = grid.values(k)?;
        if let Some(node) = v.iter().position(|x| x.abs() <= CURVATURE_FLOOR) {
            return Err(Error::CurvatureZero { index: i + 1, node });
        }
    }
    let g = Sf::Sym(g.ast().clone());
    let gv = grid.values(&g)?;
    if let Some(node) = gv.iter().position(|x| x.abs() <= CURVATURE_FLOOR) {
        return Err(Error::validation(
            "g",
            format!(
                "must not vanish; g = 0 at node {node} (s = {})",
                fd.s_grid[node]
            ),
        ));
    }
    Ok(Setup { grid, kappas, g })
}

fn closure_residual(grid: &Grid, p: &Affine, q: &Affine, carrier: &[f64]) -> Result<f64> {
    let p = grid.affine_values(p, carrier)?;
    let q = grid.affine_values(q, carrier)?;
    Ok(p.iter()
        .zip(&q)
        .map(|(a, b)| (a + b).abs() / 1f64.max(a.abs()).max(b.abs()))
        .fold(0.0, f64::max))
}

fn rows(grid: &Grid, ws: &[Affine], carrier: &[f64]) -> Result<Vec<Vec<f64>>> {
    let cols = ws
        .iter()
        .map(|w| grid.affine_values(w, carrier))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..carrier.len())
        .map(|k| cols.iter().map(|c| c[k]).collect())
        .collect())
}

fn zero() -> Affine {
    Affine::free(Sf::constant(0.0))
}

/// Rectifying coefficients of a spacelike curve.
///
/// `w0 = G`, `w1 = k1 G / (e1 e2 k2)`, `w2 = w1' / (e2 e3 k3)` and
/// `w(i+1) = (wi' + k(i+1) w(i-1)) / (e(i+1) e(i+2) k(i+2))`. The closing
/// equation `w(n-2)' + k(n-1) w(n-3) = 0` (just `w1' = 0` when `n = 3`)
/// is not imposed; its residual is recorded.
///
/// Derivatives are symbolic when `fd` carries analytic curvatures.
pub fn rectifying_coeffs_spacelike(
    fd: &FrenetData,
    g: &ScalarFn,
    s0: f64,
    g0: f64,
) -> Result<RectifyingProfile> {
    if fd.kind != FrameKind::Spacelike {
        return Err(Error::Spec(
            "spacelike rectifying profile needs a spacelike frame".into(),
        ));
    }
    let Setup {
        grid,
        kappas: k,
        g: gs,
    } = setup(fd, g)?;
    let n = fd.dim();
    let m = n - 2;
    let eps = |i: usize| fd.sigs.eps(i);
    let carrier = Carrier::Primitive(gs);

    let mut w = vec![Affine::carrier()];
    let w1 = grid.affine_div(&grid.affine_mul(&k[0], &w[0])?, &k[1])?;
    w.push(grid.affine_scale(1.0 / (eps(1) * eps(2)), &w1));
    if m >= 2 {
        let w2 = grid.affine_div(&grid.affine_deriv(&w[1], &carrier)?, &k[2])?;
        w.push(grid.affine_scale(1.0 / (eps(2) * eps(3)), &w2));
    }
    for i in 2..m {
        let num = grid.affine_add(
            &grid.affine_deriv(&w[i], &carrier)?,
            &grid.affine_mul(&k[i], &w[i - 1])?,
        )?;
        let next = grid.affine_div(&num, &k[i + 1])?;
        w.push(grid.affine_scale(1.0 / (eps(i + 1) * eps(i + 2)), &next));
    }

    let big = primitive_g(g, s0, &fd.s_grid, g0)?;
    let (p, q) = if n == 3 {
        (grid.affine_deriv(&w[1], &carrier)?, zero())
    } else {
        (
            grid.affine_deriv(&w[m], &carrier)?,
            grid.affine_mul(&k[n - 2], &w[m - 1])?,
        )
    };
    let closure = closure_residual(&grid, &p, &q, &big)?;
    Ok(RectifyingProfile {
        kind: FrameKind::Spacelike,
        profile: ComponentProfile {
            s_grid: fd.s_grid.clone(),
            coeffs: rows(&grid, &w, &big)?,
            basis: BasisKind::Rectifying,
        },
        g_primitive: big,
        closure_residual: closure,
    })
}

/// Rectifying coefficients of a null curve.
///
/// `w0` multiplies `T` and `w1` multiplies `B1`. The system forces `w1 = c1`
/// constant, `w0 = k1 c1`, `w2 = (w0' - g) / k2`, `w3 = (w2' + k2 w1) / k3`
/// and `w(i+1) = (wi' + ki w(i-1)) / k(i+1)`. The residual of the closing
/// equation is recorded (`w0' = g` when `n = 3`, `w(n-2)' + k(n-2) w(n-3) = 0`
/// otherwise).
pub fn rectifying_coeffs_null(
    fd: &FrenetData,
    g: &ScalarFn,
    s0: f64,
    c1: f64,
) -> Result<RectifyingProfile> {
    if fd.kind != FrameKind::Null {
        return Err(Error::Spec(
            "null rectifying profile needs a null frame".into(),
        ));
    }
    let Setup {
        grid,
        kappas: k,
        g: gs,
    } = setup(fd, g)?;
    let n = fd.dim();
    let m = n - 2;
    let carrier = Carrier::Constant;
    let minus_g = Affine::free(grid.scale(-1.0, &gs));

    let w1 = Affine::carrier();
    let w0 = grid.affine_mul(&k[0], &w1)?;
    let mut w = vec![w0, w1];
    if m >= 2 {
        let num = grid.affine_add(&grid.affine_deriv(&w[0], &carrier)?, &minus_g)?;
        w.push(grid.affine_div(&num, &k[1])?);
    }
    if m >= 3 {
        let num = grid.affine_add(
            &grid.affine_deriv(&w[2], &carrier)?,
            &grid.affine_mul(&k[1], &w[1])?,
        )?;
        w.push(grid.affine_div(&num, &k[2])?);
    }
    for i in 3..m {
        let num = grid.affine_add(
            &grid.affine_deriv(&w[i], &carrier)?,
            &grid.affine_mul(&k[i - 1], &w[i - 1])?,
        )?;
        w.push(grid.affine_div(&num, &k[i])?);
    }

    let c = vec![c1; fd.len()];
    let (p, q) = match n {
        3 => (grid.affine_deriv(&w[0], &carrier)?, minus_g),
        4 => (
            grid.affine_deriv(&w[2], &carrier)?,
            grid.affine_mul(&k[1], &w[1])?,
        ),
        _ => (
            grid.affine_deriv(&w[m], &carrier)?,
            grid.affine_mul(&k[m - 1], &w[m - 1])?,
        ),
    };
    let closure = closure_residual(&grid, &p, &q, &c)?;
    Ok(RectifyingProfile {
        kind: FrameKind::Null,
        profile: ComponentProfile {
            s_grid: fd.s_grid.clone(),
            coeffs: rows(&grid, &w, &c)?,
            basis: BasisKind::Rectifying,
        },
        g_primitive: primitive_g(g, s0, &fd.s_grid, 0.0)?,
        closure_residual: closure,
    })
}

/// Normal coefficients of a spacelike curve.
///
/// `theta = -g / (e1 k1)`, `mu1 = theta' / (e1 e2 k2)` and, with
/// `mu0 = theta`, `mu(i+1) = (mui' + k(i+1) mu(i-1)) / (e(i+1) e(i+2) k(i+2))`.
/// The residual of `mu(n-2)' + k(n-1) mu(n-3) = 0` is recorded.
pub fn normal_coeffs(fd: &FrenetData, g: &ScalarFn) -> Result<NormalProfile> {
    if fd.kind != FrameKind::Spacelike {
        return Err(Error::Spec("normal profile needs a spacelike frame".into()));
    }
    let Setup {
        grid,
        kappas: k,
        g: gs,
    } = setup(fd, g)?;
    let n = fd.dim();
    let m = n - 2;
    let eps = |i: usize| fd.sigs.eps(i);
    let carrier = Carrier::Constant;

    let theta = Affine::free(grid.scale(-1.0 / eps(1), &grid.div(&gs, &k[0])?));
    let mu1 = grid.affine_div(&grid.affine_deriv(&theta, &carrier)?, &k[1])?;
    let mut mu = vec![theta, grid.affine_scale(1.0 / (eps(1) * eps(2)), &mu1)];
    for i in 1..m {
        let num = grid.affine_add(
            &grid.affine_deriv(&mu[i], &carrier)?,
            &grid.affine_mul(&k[i], &mu[i - 1])?,
        )?;
        let next = grid.affine_div(&num, &k[i + 1])?;
        mu.push(grid.affine_scale(1.0 / (eps(i + 1) * eps(i + 2)), &next));
    }

    let zeros = vec![0.0; fd.len()];
    let p = grid.affine_deriv(&mu[m], &carrier)?;
    let q = grid.affine_mul(&k[n - 2], &mu[m - 1])?;
    let closure = closure_residual(&grid, &p, &q, &zeros)?;
    Ok(NormalProfile {
        profile: ComponentProfile {
            s_grid: fd.s_grid.clone(),
            coeffs: rows(&grid, &mu, &zeros)?,
            basis: BasisKind::Normal,
        },
        closure_residual: closure,
    })
}

/// The vector field whose frame coefficients are the profile rows.
pub fn assemble_from_profile(fd: &FrenetData, profile: &ComponentProfile) -> Result<Vec<LVector>> {
    if profile.coeffs.len() != fd.len() {
        return Err(Error::GridMismatch(format!(
            "{} profile rows for {} frames",
            profile.coeffs.len(),
            fd.len()
        )));
    }
    let lead_slot = match profile.basis {
        BasisKind::Rectifying => 0,
        BasisKind::Normal => 1,
    };
    Ok(profile
        .coeffs
        .iter()
        .zip(&fd.frames)
        .map(|(row, frame)| {
            let mut v = frame[lead_slot].scale(row[0]);
            for (c, e) in row[1..].iter().zip(&frame[2..]) {
                v.axpy(*c, e);
            }
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::default_spacelike_frame;
    use crate::metric::SignatureVector;

    fn constant_frames(n: usize, kappas: &[&str], eps: &[i8], s: &[f64]) -> FrenetData {
        let sigs = SignatureVector::new(eps.to_vec()).unwrap();
        let frame = if sigs.negative_count() == 1 {
            default_spacelike_frame(n, &sigs).unwrap()
        } else {
            (0..n).map(|k| LVector::basis(n, (k + 1) % n)).collect()
        };
        let fns: Vec<ScalarFn> = kappas.iter().map(|t| ScalarFn::parse(t).unwrap()).collect();
        FrenetData {
            s_grid: s.to_vec(),
            frames: vec![frame; s.len()],
            curvatures: s
                .iter()
                .map(|x| fns.iter().map(|f| f.eval(*x).unwrap()).collect())
                .collect(),
            sigs,
            kind: FrameKind::Spacelike,
            analytic: Some(fns),
        }
    }

    #[test]
    fn rectifying_three_dim_example() {
        let s: Vec<f64> = (0..11).map(|k| 0.1 * k as f64).collect();
        let fd = constant_frames(3, &["1", "0.5"], &[1, 1], &s);
        let g = ScalarFn::parse("1").unwrap();
        let p = rectifying_coeffs_spacelike(&fd, &g, 0.0, 0.0).unwrap();
        for (x, row) in s.iter().zip(&p.profile.coeffs) {
            assert!((row[0] - x).abs() < 1e-14);
            assert!((row[1] - 2.0 * x).abs() < 1e-13);
        }
    }

    #[test]
    fn normal_three_dim_example() {
        let s: Vec<f64> = (0..11).map(|k| 0.1 * k as f64).collect();
        let fd = constant_frames(3, &["1", "2"], &[1, 1], &s);
        let g = ScalarFn::parse("1").unwrap();
        let p = normal_coeffs(&fd, &g).unwrap();
        for row in &p.profile.coeffs {
            assert_eq!(row[0], -1.0);
            assert_eq!(row[1], 0.0);
        }
    }

    #[test]
    fn vanishing_g_is_rejected() {
        let s: Vec<f64> = (0..11).map(|k| 0.1 * k as f64).collect();
        let fd = constant_frames(3, &["1", "2"], &[1, -1], &s);
        let g = ScalarFn::parse("0").unwrap();
        assert!(matches!(
            rectifying_coeffs_spacelike(&fd, &g, 0.0, 0.0),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn vanishing_curvature_is_rejected() {
        let s: Vec<f64> = (0..11).map(|k| 0.1 * k as f64).collect();
        let fd = constant_frames(3, &["1", "s - 0.5"], &[1, -1], &s);
        let g = ScalarFn::parse("1").unwrap();
        assert!(matches!(
            normal_coeffs(&fd, &g),
            Err(Error::CurvatureZero { index: 2, node: 5 })
        ));
    }
}
