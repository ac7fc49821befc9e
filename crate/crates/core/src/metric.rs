//! Lorentzian linear algebra on `L^n`.
//!
//! The bilinear form is `<x, y> = -x1*y1 + x2*y2 + ... + xn*yn`: the timelike
//! axis is always the first coordinate.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for deciding that a vector is null.
pub const TAU_CAUSAL: f64 = 1e-9;

/// A vector of `L^n` (n >= 2) with finite coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LVector {
    coords: Vec<f64>,
}

impl LVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidVector(format!(
                "dimension {} < 2",
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidVector(format!(
                "coordinate {} is not finite",
                i + 1
            )));
        }
        Ok(Self { coords })
    }

    /// Internal constructor for arithmetic results already known to be valid.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 2);
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 2, "LVector dimension must be >= 2");
        Self {
            coords: vec![0.0; dim],
        }
    }

    /// The `k`-th standard basis vector, zero-based (`basis(n, 0)` is the timelike axis).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[k] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// Squared Euclidean length, used only for scale estimates.
    pub fn euclid_sq(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn euclid_norm(&self) -> f64 {
        self.euclid_sq().sqrt()
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| a * c).collect(),
        }
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: f64, other: &LVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (x, y) in self.coords.iter_mut().zip(&other.coords) {
            *x += a * y;
        }
    }

    /// Self-pairing `<v, v>`.
    pub fn square(&self) -> f64 {
        inner_unchecked(self, self)
    }
}

impl fmt::Debug for LVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LVector").field(&self.coords).finish()
    }
}

impl TryFrom<Vec<f64>> for LVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        LVector::new(v)
    }
}

impl From<LVector> for Vec<f64> {
    fn from(v: LVector) -> Self {
        v.coords
    }
}

impl Index<usize> for LVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl Add<&LVector> for &LVector {
    type Output = LVector;
    fn add(self, rhs: &LVector) -> LVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LVector::from_vec_unchecked(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub<&LVector> for &LVector {
    type Output = LVector;
    fn sub(self, rhs: &LVector) -> LVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LVector::from_vec_unchecked(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul<&LVector> for f64 {
    type Output = LVector;
    fn mul(self, rhs: &LVector) -> LVector {
        rhs.scale(self)
    }
}

impl Neg for &LVector {
    type Output = LVector;
    fn neg(self) -> LVector {
        self.scale(-1.0)
    }
}

impl AddAssign<&LVector> for LVector {
    fn add_assign(&mut self, rhs: &LVector) {
        self.axpy(1.0, rhs);
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
}

/// Ordered list of signs, each exactly `-1` or `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignatureVector(Vec<i8>);

impl SignatureVector {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if let Some(bad) = eps.iter().find(|e| **e != 1 && **e != -1) {
            return Err(Error::validation(
                "sig",
                format!("signature entries must be -1 or +1, got {bad}"),
            ));
        }
        Ok(Self(eps))
    }

    pub fn all_positive(len: usize) -> Self {
        Self(vec![1; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// One-based access matching the usual `eps_1 .. eps_m` indexing.
    pub fn eps(&self, i: usize) -> f64 {
        f64::from(self.0[i - 1])
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn negative_count(&self) -> usize {
        self.0.iter().filter(|e| **e < 0).count()
    }
}

impl TryFrom<Vec<i8>> for SignatureVector {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        SignatureVector::new(v)
    }
}

impl From<SignatureVector> for Vec<i8> {
    fn from(s: SignatureVector) -> Self {
        s.0
    }
}

/// Time orientation of a non-spacelike vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TimeOrientation {
    FuturePointing,
    PastPointing,
    Undefined,
}

impl TimeOrientation {
    pub fn flipped(self) -> Self {
        match self {
            Self::FuturePointing => Self::PastPointing,
            Self::PastPointing => Self::FuturePointing,
            Self::Undefined => Self::Undefined,
        }
    }
}

/// Alternative conventions for deciding future/past pointing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationReading {
    /// Future pointing iff the timelike coordinate `v1` is positive (the crate default).
    TimeAxis,
    /// Future pointing iff `<v, E> < 0` with `E = (0, .., 0, 1)`.
    PairingWithLastAxis,
    /// Future pointing iff the last coordinate is positive.
    LastCoordinateSign,
}

impl OrientationReading {
    pub const ALL: [OrientationReading; 3] = [
        OrientationReading::TimeAxis,
        OrientationReading::PairingWithLastAxis,
        OrientationReading::LastCoordinateSign,
    ];
}

fn inner_unchecked(x: &LVector, y: &LVector) -> f64 {
    let c = &x.coords;
    let d = &y.coords;
    let mut acc = -c[0] * d[0];
    for k in 1..c.len() {
        acc += c[k] * d[k];
    }
    acc
}

/// Lorentzian scalar product.
pub fn lorentz_inner(x: &LVector, y: &LVector) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(inner_unchecked(x, y))
}

/// Scalar product for vectors already known to share a dimension.
pub(crate) fn dot(x: &LVector, y: &LVector) -> f64 {
    debug_assert_eq!(x.dim(), y.dim());
    inner_unchecked(x, y)
}

/// Classify `v` as spacelike, timelike or null.
///
/// `v` is null when `|<v,v>| <= tol * |v|_E^2`, so the answer does not
/// depend on the scale of `v`.
pub fn causal_character(v: &LVector, tol: f64) -> CausalCharacter {
    let q = v.square();
    let threshold = tol * v.euclid_sq();
    if q.abs() <= threshold {
        CausalCharacter::Null
    } else if q > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

/// `sqrt(|<v,v>|)`; the sign of `<v,v>` is carried by [`causal_character`].
pub fn lorentz_norm(v: &LVector) -> f64 {
    v.square().abs().sqrt()
}

/// Gram-Schmidt in the indefinite metric.
///
/// Returns a basis with `<b_i, b_j> = sig_i * delta_ij` whose first `k`
/// vectors span the same space as the first `k` inputs.
pub fn gram_schmidt_pseudo(
    vectors: &[LVector],
    tol: f64,
) -> Result<(Vec<LVector>, SignatureVector)> {
    let mut basis: Vec<LVector> = Vec::with_capacity(vectors.len());
    let mut sigs: Vec<i8> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if let Some(first) = vectors.first() {
            if first.dim() != v.dim() {
                return Err(Error::DimensionMismatch {
                    left: first.dim(),
                    right: v.dim(),
                });
            }
        }
        let mut r = v.clone();
        for (b, s) in basis.iter().zip(&sigs) {
            let c = f64::from(*s) * dot(&r, b);
            r.axpy(-c, b);
        }
        if r.euclid_norm() <= tol * v.euclid_norm().max(1.0) {
            return Err(Error::LinearDependence { index });
        }
        let q = r.square();
        if q.abs() <= tol * r.euclid_sq().max(1.0) {
            return Err(Error::NullResidual { index });
        }
        basis.push(r.scale(1.0 / q.abs().sqrt()));
        sigs.push(if q > 0.0 { 1 } else { -1 });
    }
    Ok((basis, SignatureVector(sigs)))
}

/// Time orientation using the timelike axis: future iff `v1 > 0`.
pub fn time_orientation(v: &LVector) -> TimeOrientation {
    time_orientation_with(v, OrientationReading::TimeAxis, TAU_CAUSAL)
}

/// Time orientation under an explicit reading; `Undefined` for spacelike vectors.
pub fn time_orientation_with(
    v: &LVector,
    reading: OrientationReading,
    tol: f64,
) -> TimeOrientation {
    if causal_character(v, tol) == CausalCharacter::Spacelike {
        return TimeOrientation::Undefined;
    }
    let last = v.coords[v.dim() - 1];
    let key = match reading {
        OrientationReading::TimeAxis => v.coords[0],
        // <v, E> = v_n, so <v,E> < 0 means future
        OrientationReading::PairingWithLastAxis => -last,
        OrientationReading::LastCoordinateSign => last,
    };
    if key > 0.0 {
        TimeOrientation::FuturePointing
    } else if key < 0.0 {
        TimeOrientation::PastPointing
    } else {
        TimeOrientation::Undefined
    }
}

/// A linear map of `R^n`, stored row-major. Used for Lorentz transformations.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    dim: usize,
    rows: Vec<f64>,
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        let mut rows = vec![0.0; dim * dim];
        for i in 0..dim {
            rows[i * dim + i] = 1.0;
        }
        Self { dim, rows }
    }

    /// Boost mixing the time axis with spatial axis `axis` (zero-based, `axis >= 1`).
    pub fn boost(dim: usize, axis: usize, rapidity: f64) -> Self {
        assert!(axis >= 1 && axis < dim);
        let mut m = Self::identity(dim);
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        m.set(0, 0, ch);
        m.set(0, axis, sh);
        m.set(axis, 0, sh);
        m.set(axis, axis, ch);
        m
    }

    /// Rotation in the spatial plane of axes `i`, `j` (zero-based, both `>= 1`).
    pub fn rotation(dim: usize, i: usize, j: usize, angle: f64) -> Self {
        assert!(i >= 1 && j >= 1 && i != j && i < dim && j < dim);
        let mut m = Self::identity(dim);
        let (c, s) = (angle.cos(), angle.sin());
        m.set(i, i, c);
        m.set(i, j, -s);
        m.set(j, i, s);
        m.set(j, j, c);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn set(&mut self, r: usize, c: usize, v: f64) {
        self.rows[r * self.dim + c] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.rows[r * self.dim + c]
    }

    /// `self * other`
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..n {
                out[r * n + c] = (0..n).map(|k| self.get(r, k) * other.get(k, c)).sum();
            }
        }
        LinearMap { dim: n, rows: out }
    }

    pub fn apply(&self, v: &LVector) -> LVector {
        assert_eq!(self.dim, v.dim());
        let n = self.dim;
        LVector::from_vec_unchecked(
            (0..n)
                .map(|r| (0..n).map(|c| self.get(r, c) * v.coords[c]).sum())
                .collect(),
        )
    }

    /// Largest deviation of `<Mx, My>` from `<x, y>` over basis pairs.
    pub fn metric_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let a = self.apply(&LVector::basis(n, i));
                let b = self.apply(&LVector::basis(n, j));
                let expected = if i != j {
                    0.0
                } else if i == 0 {
                    -1.0
                } else {
                    1.0
                };
                worst = worst.max((dot(&a, &b) - expected).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> LVector {
        LVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn inner_examples() {
        assert_eq!(
            lorentz_inner(&v(&[1., 0., 0.]), &v(&[1., 0., 0.])).unwrap(),
            -1.0
        );
        assert_eq!(
            lorentz_inner(&v(&[0., 1., 0.]), &v(&[0., 0., 1.])).unwrap(),
            0.0
        );
        assert_eq!(
            lorentz_inner(&v(&[3., 3., 0.]), &v(&[3., 3., 0.])).unwrap(),
            0.0
        );
    }

    #[test]
    fn inner_dimension_mismatch() {
        let err = lorentz_inner(&v(&[1., 0.]), &v(&[1., 0., 0.])).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch { left: 2, right: 3 }
        ));
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(LVector::new(vec![1.0]).is_err());
        assert!(LVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(LVector::new(vec![f64::INFINITY, 0.0]).is_err());
    }

    #[test]
    fn causal_examples() {
        assert_eq!(
            causal_character(&v(&[0., 1., 0.]), TAU_CAUSAL),
            CausalCharacter::Spacelike
        );
        assert_eq!(
            causal_character(&v(&[1., 0., 0.]), TAU_CAUSAL),
            CausalCharacter::Timelike
        );
        assert_eq!(
            causal_character(&v(&[2., 2., 0.]), TAU_CAUSAL),
            CausalCharacter::Null
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(lorentz_norm(&v(&[0., 3., 4.])), 5.0);
        assert_eq!(lorentz_norm(&v(&[2., 2., 0.])), 0.0);
        assert!((lorentz_norm(&v(&[2., 1., 0.])) - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gram_schmidt_examples() {
        let (b, s) = gram_schmidt_pseudo(&[v(&[2., 0., 0.]), v(&[0., 3., 0.])], 1e-12).unwrap();
        assert_eq!(b, vec![v(&[1., 0., 0.]), v(&[0., 1., 0.])]);
        assert_eq!(s.as_slice(), &[-1, 1]);

        let (b, s) = gram_schmidt_pseudo(&[v(&[0., 1., 0.]), v(&[1., 0., 0.])], 1e-12).unwrap();
        assert_eq!(b, vec![v(&[0., 1., 0.]), v(&[1., 0., 0.])]);
        assert_eq!(s.as_slice(), &[1, -1]);

        let (b, s) = gram_schmidt_pseudo(&[v(&[1., 2., 0.]), v(&[0., 0., 1.])], 1e-12).unwrap();
        assert_eq!(s.as_slice(), &[1, 1]);
        let r3 = 3f64.sqrt();
        for (got, want) in b[0].coords().iter().zip([1.0 / r3, 2.0 / r3, 0.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        // direct evaluation of the pairing table
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { s.eps(i + 1) } else { 0.0 };
                assert!((dot(&b[i], &b[j]) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gram_schmidt_failures() {
        let err = gram_schmidt_pseudo(&[v(&[1., 1., 0.])], 1e-12).unwrap_err();
        assert!(matches!(err, Error::NullResidual { index: 0 }));
        let err = gram_schmidt_pseudo(&[v(&[0., 1., 0.]), v(&[0., 2., 0.])], 1e-12).unwrap_err();
        assert!(matches!(err, Error::LinearDependence { index: 1 }));
    }

    #[test]
    fn time_orientation_examples() {
        assert_eq!(
            time_orientation(&v(&[1., 0., 0.])),
            TimeOrientation::FuturePointing
        );
        assert_eq!(
            time_orientation(&v(&[-1., 0., 0.])),
            TimeOrientation::PastPointing
        );
        assert_eq!(
            time_orientation(&v(&[0., 1., 0.])),
            TimeOrientation::Undefined
        );
    }

    #[test]
    fn orientation_readings_disagree_on_last_axis() {
        // timelike vector with positive last coordinate
        let w = v(&[2., 0., 1.]);
        let a = time_orientation_with(&w, OrientationReading::PairingWithLastAxis, TAU_CAUSAL);
        let b = time_orientation_with(&w, OrientationReading::LastCoordinateSign, TAU_CAUSAL);
        assert_eq!(a, b.flipped());
    }

    #[test]
    fn boosts_preserve_metric() {
        let m = LinearMap::boost(4, 2, 0.7).compose(&LinearMap::rotation(4, 1, 3, 1.1));
        assert!(m.metric_defect() < 1e-14);
    }
}
