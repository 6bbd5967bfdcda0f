//! Linear algebra of Lorentz-Minkowski space `L^{n+1}`.
//!
//! Vectors carry the metric `dx_1^2 + ... + dx_n^2 - dx_{n+1}^2`: the last
//! coordinate is the timelike one. The dimension is runtime data so the same
//! code serves `L^3` charts and the `n = 3` hypersurface families.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 8;

/// Default relative tolerance for causal and cone classification.
pub const DEFAULT_CAUSAL_TOL: f64 = 1e-9;

/// A point or vector of `L^{dim}`.
#[derive(Clone, Copy, PartialEq)]
pub struct MVec {
    c: [f64; MAX_DIM],
    dim: usize,
}

impl MVec {
    /// Builds a vector from its components.
    ///
    /// Panics if `components.len()` is outside `2..=MAX_DIM`.
    pub fn new(components: &[f64]) -> Self {
        let dim = components.len();
        assert!(
            (2..=MAX_DIM).contains(&dim),
            "MVec dimension must be in 2..={MAX_DIM}, got {dim}"
        );
        let mut c = [0.0; MAX_DIM];
        c[..dim].copy_from_slice(components);
        Self { c, dim }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!((2..=MAX_DIM).contains(&dim));
        Self {
            c: [0.0; MAX_DIM],
            dim,
        }
    }

    /// Standard basis vector `e_{i+1}` (zero-based index).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.c[i] = 1.0;
        v
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        Self::new(&[x, y, z])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    /// Timelike (last) coordinate.
    pub fn time(&self) -> f64 {
        self.c[self.dim - 1]
    }

    /// Spatial part `q = (x_1, ..., x_n)`.
    pub fn spatial(&self) -> &[f64] {
        &self.c[..self.dim - 1]
    }

    pub fn euclid_norm_sq(&self) -> f64 {
        self.as_slice().iter().map(|x| x * x).sum()
    }

    pub fn euclid_norm(&self) -> f64 {
        self.euclid_norm_sq().sqrt()
    }

    /// Minkowski product; panics on dimension mismatch (see [`mink_dot`]
    /// for the checked form).
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in Minkowski product");
        let n = self.dim - 1;
        let spatial: f64 = (0..n).map(|i| self.c[i] * other.c[i]).sum();
        spatial - self.c[n] * other.c[n]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        out.c[..self.dim].iter_mut().for_each(|x| *x *= k);
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MVec").field(&self.as_slice()).finish()
    }
}

impl Index<usize> for MVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        assert!(i < self.dim);
        &self.c[i]
    }
}

impl IndexMut<usize> for MVec {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        assert!(i < self.dim);
        &mut self.c[i]
    }
}

impl Add for MVec {
    type Output = MVec;
    fn add(mut self, rhs: MVec) -> MVec {
        self += rhs;
        self
    }
}

impl AddAssign for MVec {
    fn add_assign(&mut self, rhs: MVec) {
        assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.c[i] += rhs.c[i];
        }
    }
}

impl Sub for MVec {
    type Output = MVec;
    fn sub(mut self, rhs: MVec) -> MVec {
        self -= rhs;
        self
    }
}

impl SubAssign for MVec {
    fn sub_assign(&mut self, rhs: MVec) {
        assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.c[i] -= rhs.c[i];
        }
    }
}

impl Neg for MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        self.scale(-1.0)
    }
}

impl Mul<f64> for MVec {
    type Output = MVec;
    fn mul(self, k: f64) -> MVec {
        self.scale(k)
    }
}

impl Mul<MVec> for f64 {
    type Output = MVec;
    fn mul(self, v: MVec) -> MVec {
        v.scale(self)
    }
}

impl Serialize for MVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        if !(2..=MAX_DIM).contains(&v.len()) {
            return Err(serde::de::Error::custom("MVec dimension out of range"));
        }
        Ok(MVec::new(&v))
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
    ZeroVector,
}

/// Position of a point relative to the lightlike cone `<p,p> = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeRegion {
    /// `<p,p> < 0`
    CPlus,
    /// `<p,p> > 0`
    CMinus,
    OnCone,
}

impl ConeRegion {
    /// `+1` on `C^+`, `-1` on `C^-`, `None` on the cone.
    pub fn sign(self) -> Option<f64> {
        match self {
            ConeRegion::CPlus => Some(1.0),
            ConeRegion::CMinus => Some(-1.0),
            ConeRegion::OnCone => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ConeRegion::CPlus => "C+",
            ConeRegion::CMinus => "C-",
            ConeRegion::OnCone => "cone",
        }
    }
}

fn check_dims(u: &MVec, v: &MVec) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(GeomError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(())
}

fn require_dim3(v: &MVec) -> Result<()> {
    if v.dim() != 3 {
        return Err(GeomError::WrongDimension {
            expected: 3,
            got: v.dim(),
        });
    }
    Ok(())
}

/// Minkowski inner product.
pub fn mink_dot(u: &MVec, v: &MVec) -> Result<f64> {
    check_dims(u, v)?;
    Ok(u.dot(v))
}

/// `|p| = sqrt(|<p,p>|)`.
pub fn mink_norm(p: &MVec) -> f64 {
    p.norm_sq().abs().sqrt()
}

/// Causal class with a band `|<v,v>| <= tol * ||v||^2` treated as lightlike.
pub fn causal_class(v: &MVec, tol: f64) -> CausalClass {
    let e2 = v.euclid_norm_sq();
    if e2 == 0.0 {
        return CausalClass::ZeroVector;
    }
    let q = v.norm_sq();
    if q > tol * e2 {
        CausalClass::Spacelike
    } else if q < -tol * e2 {
        CausalClass::Timelike
    } else {
        CausalClass::Lightlike
    }
}

/// Region of a point with the same relative band as [`causal_class`].
pub fn cone_region(p: &MVec, tol: f64) -> ConeRegion {
    let q = p.norm_sq();
    let band = tol * p.euclid_norm_sq();
    if q < -band {
        ConeRegion::CPlus
    } else if q > band {
        ConeRegion::CMinus
    } else {
        ConeRegion::OnCone
    }
}

fn det3(u: &MVec, v: &MVec, w: &MVec) -> f64 {
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
}

/// Scalar triple product `(u, v, w)`: determinant with rows `u, v, w`.
pub fn triple(u: &MVec, v: &MVec, w: &MVec) -> Result<f64> {
    require_dim3(u)?;
    require_dim3(v)?;
    require_dim3(w)?;
    Ok(det3(u, v, w))
}

/// Lorentzian cross product in `L^3`, characterised by
/// `<u x v, w> = (u, v, w)` for every `w`.
///
/// With `c` the Euclidean cross product this is `(c_1, c_2, -c_3)`.
pub fn lorentz_cross(u: &MVec, v: &MVec) -> Result<MVec> {
    require_dim3(u)?;
    require_dim3(v)?;
    Ok(cross3(u, v))
}

pub(crate) fn cross3(u: &MVec, v: &MVec) -> MVec {
    let c0 = u[1] * v[2] - u[2] * v[1];
    let c1 = u[2] * v[0] - u[0] * v[2];
    let c2 = u[0] * v[1] - u[1] * v[0];
    MVec::xyz(c0, c1, -c2)
}

pub(crate) fn triple3(u: &MVec, v: &MVec, w: &MVec) -> f64 {
    det3(u, v, w)
}

fn off_cone(p: &MVec, tol: f64) -> Result<f64> {
    let q = p.norm_sq();
    if q.abs() <= tol * p.euclid_norm_sq().max(f64::MIN_POSITIVE) {
        return Err(GeomError::OnCone { value: q });
    }
    Ok(q)
}

/// The inversion `phi(p) = p / <p,p>`, an involution off the cone.
pub fn inversion(p: &MVec) -> Result<MVec> {
    let q = off_cone(p, DEFAULT_CAUSAL_TOL)?;
    Ok(p.scale(1.0 / q))
}

/// Exact differential of [`inversion`] at `p` applied to `v`:
/// `v / P - 2 <p,v> p / P^2` with `P = <p,p>`.
pub fn inversion_differential(p: &MVec, v: &MVec) -> Result<MVec> {
    check_dims(p, v)?;
    let q = off_cone(p, DEFAULT_CAUSAL_TOL)?;
    let pv = p.dot(v);
    Ok(v.scale(1.0 / q) - p.scale(2.0 * pv / (q * q)))
}

/// True iff every point lies in `C_delta`:
/// `sum_{i<=n} x_i^2 - (x_{n+1} - delta)^2 < 0`.
pub fn far_from_cone(points: &[MVec], delta: f64) -> bool {
    points.iter().all(|p| {
        let spatial: f64 = p.spatial().iter().map(|x| x * x).sum();
        let shifted = p.time() - delta;
        spatial - shifted * shifted < 0.0
    })
}
