//! Space curves with second-order jets: closed-form curves, not-a-knot cubic
//! splines through samples, and reparametrisation by a positive speed.

use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::minkowski::MVec;

/// Value and first two derivatives of a curve at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub p: MVec,
    pub d1: MVec,
    pub d2: MVec,
}

/// A smooth curve in `L^{n+1}`. Evaluation outside `domain` is allowed
/// (finite differences step slightly past the ends); callers enforce domains.
pub trait Curve: Send + Sync {
    fn jet(&self, s: f64) -> Result<CurveJet>;

    fn domain(&self) -> (f64, f64);
}

pub type SharedCurve = Arc<dyn Curve>;

/// Curve given by a closed-form jet.
pub struct FnCurve<F> {
    f: F,
    domain: (f64, f64),
}

impl<F> FnCurve<F>
where
    F: Fn(f64) -> CurveJet + Send + Sync + 'static,
{
    pub fn new(domain: (f64, f64), f: F) -> Self {
        Self { f, domain }
    }

    pub fn shared(domain: (f64, f64), f: F) -> SharedCurve {
        Arc::new(Self::new(domain, f))
    }
}

impl<F> Curve for FnCurve<F>
where
    F: Fn(f64) -> CurveJet + Send + Sync,
{
    fn jet(&self, s: f64) -> Result<CurveJet> {
        Ok((self.f)(s))
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// Shorthand for a jet in `L^3`.
pub fn jet3(p: [f64; 3], d1: [f64; 3], d2: [f64; 3]) -> CurveJet {
    CurveJet {
        p: MVec::new(&p),
        d1: MVec::new(&d1),
        d2: MVec::new(&d2),
    }
}

/// Constant curve (zero derivatives).
pub fn constant_curve(p: MVec, domain: (f64, f64)) -> SharedCurve {
    let z = MVec::zeros(p.dim());
    FnCurve::shared(domain, move |_| CurveJet { p, d1: z, d2: z })
}

/// Straight line `p + s v`.
pub fn line_curve(p: MVec, v: MVec, domain: (f64, f64)) -> SharedCurve {
    let z = MVec::zeros(p.dim());
    FnCurve::shared(domain, move |s| CurveJet {
        p: p + v * s,
        d1: v,
        d2: z,
    })
}

/// Scalar not-a-knot cubic spline.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    /// Needs at least four strictly increasing knots.
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        let n = x.len();
        if n != y.len() {
            return Err(GeomError::DimensionMismatch {
                left: n,
                right: y.len(),
            });
        }
        if n < 4 {
            return Err(GeomError::InvalidParameter(format!(
                "spline needs at least 4 samples, got {n}"
            )));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GeomError::InvalidParameter(
                "spline knots must be strictly increasing".into(),
            ));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        // Unknowns M_1..M_{n-2}; M_0 and M_{n-1} eliminated by not-a-knot.
        let k = n - 2;
        let mut sub = vec![0.0; k];
        let mut diag = vec![0.0; k];
        let mut sup = vec![0.0; k];
        let mut rhs = vec![0.0; k];
        for r in 0..k {
            let i = r + 1;
            sub[r] = h[i - 1];
            diag[r] = 2.0 * (h[i - 1] + h[i]);
            sup[r] = h[i];
            rhs[r] = 6.0 * (d[i] - d[i - 1]);
        }
        // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
        let (h0, h1) = (h[0], h[1]);
        diag[0] += h0 * (h0 + h1) / h1;
        sup[0] -= h0 * h0 / h1;
        // M_{n-1} = ((ha + hb) M_{n-2} - hb M_{n-3}) / ha, ha = h[n-3], hb = h[n-2]
        let (ha, hb) = (h[n - 3], h[n - 2]);
        diag[k - 1] += hb * (ha + hb) / ha;
        sub[k - 1] -= hb * hb / ha;
        let inner = solve_tridiagonal(&sub, &diag, &sup, &rhs)?;
        let mut m = vec![0.0; n];
        m[1..n - 1].copy_from_slice(&inner);
        m[0] = ((h0 + h1) * m[1] - h0 * m[2]) / h1;
        m[n - 1] = ((ha + hb) * m[n - 2] - hb * m[n - 3]) / ha;
        Ok(Self {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value and first two derivatives; the end cubics extrapolate.
    pub fn eval(&self, s: f64) -> (f64, f64, f64) {
        let n = self.x.len();
        let i = match self.x.partition_point(|&k| k <= s) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - s) / h;
        let b = (s - self.x[i]) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let v = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d1 = (y1 - y0) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        let d2 = a * m0 + b * m1;
        (v, d1, d2)
    }
}

fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    if denom == 0.0 {
        return Err(GeomError::InvalidParameter("singular spline system".into()));
    }
    c[0] = sup[0] / denom;
    d[0] = rhs[0] / denom;
    for i in 1..n {
        denom = diag[i] - sub[i] * c[i - 1];
        if denom == 0.0 {
            return Err(GeomError::InvalidParameter("singular spline system".into()));
        }
        c[i] = sup[i] / denom;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

/// Vector curve interpolating samples componentwise.
#[derive(Debug, Clone)]
pub struct SplineCurve {
    parts: Vec<CubicSpline>,
}

impl SplineCurve {
    pub fn new(s: &[f64], points: &[MVec]) -> Result<Self> {
        let dim = points
            .first()
            .map(|p| p.dim())
            .ok_or_else(|| GeomError::InvalidParameter("no samples".into()))?;
        let parts = (0..dim)
            .map(|k| {
                let y: Vec<f64> = points.iter().map(|p| p[k]).collect();
                CubicSpline::new(s, &y)
            })
            .collect::<Result<_>>()?;
        Ok(Self { parts })
    }
}

impl Curve for SplineCurve {
    fn jet(&self, s: f64) -> Result<CurveJet> {
        let dim = self.parts.len();
        let (mut p, mut d1, mut d2) = (MVec::zeros(dim), MVec::zeros(dim), MVec::zeros(dim));
        for (k, sp) in self.parts.iter().enumerate() {
            let (a, b, c) = sp.eval(s);
            p[k] = a;
            d1[k] = b;
            d2[k] = c;
        }
        Ok(CurveJet { p, d1, d2 })
    }

    fn domain(&self) -> (f64, f64) {
        self.parts[0].domain()
    }
}

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

fn gauss5<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    GL5_NODES
        .iter()
        .zip(&GL5_WEIGHTS)
        .map(|(x, w)| w * f(c + r * x))
        .sum::<f64>()
        * r
}

/// Monotone change of parameter `sigma(s) = s0 + int_{s0}^{s} lambda`, with
/// `lambda > 0` supplied as value and derivative. A unit-speed input leaves
/// the parameter unchanged.
pub struct Reparam {
    speed: Arc<dyn Fn(f64) -> Result<(f64, f64)> + Send + Sync>,
    knots: Vec<f64>,
    sigma_at_knots: Vec<f64>,
}

impl Reparam {
    /// Builds the cumulative table on `cells` subintervals of `[s0, s1]`.
    pub fn new<F>(speed: F, s0: f64, s1: f64, cells: usize) -> Result<Self>
    where
        F: Fn(f64) -> Result<(f64, f64)> + Send + Sync + 'static,
    {
        let cells = cells.max(1);
        let knots: Vec<f64> = (0..=cells)
            .map(|i| s0 + (s1 - s0) * i as f64 / cells as f64)
            .collect();
        for &k in &knots {
            let (l, _) = speed(k)?;
            if !(l > 0.0) || !l.is_finite() {
                return Err(GeomError::InvalidParameter(format!(
                    "reparametrisation speed {l} at s = {k}"
                )));
            }
        }
        let lam = |s: f64| speed(s).map(|v| v.0).unwrap_or(f64::NAN);
        let mut sigma_at_knots = vec![s0];
        for w in knots.windows(2) {
            let prev = *sigma_at_knots.last().unwrap();
            sigma_at_knots.push(prev + gauss5(&lam, w[0], w[1]));
        }
        if sigma_at_knots.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::InvalidParameter(
                "reparametrisation speed not finite".into(),
            ));
        }
        Ok(Self {
            speed: Arc::new(speed),
            knots,
            sigma_at_knots,
        })
    }

    pub fn sigma_range(&self) -> (f64, f64) {
        (self.sigma_at_knots[0], *self.sigma_at_knots.last().unwrap())
    }

    pub fn speed(&self, s: f64) -> Result<(f64, f64)> {
        (self.speed)(s)
    }

    pub fn sigma(&self, s: f64) -> f64 {
        let n = self.knots.len();
        let i = self
            .knots
            .partition_point(|&k| k <= s)
            .saturating_sub(1)
            .min(n - 1);
        let lam = |x: f64| (self.speed)(x).map(|v| v.0).unwrap_or(f64::NAN);
        self.sigma_at_knots[i] + gauss5(&lam, self.knots[i], s)
    }

    /// Inverse map by Newton iteration from the tabulated bracket.
    pub fn s_of(&self, sigma: f64) -> Result<f64> {
        let n = self.knots.len();
        let i = self
            .sigma_at_knots
            .partition_point(|&v| v <= sigma)
            .saturating_sub(1)
            .min(n - 2);
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        let (sa, sb) = (self.sigma_at_knots[i], self.sigma_at_knots[i + 1]);
        let mut s = a + (b - a) * (sigma - sa) / (sb - sa);
        for _ in 0..50 {
            let (l, _) = (self.speed)(s)?;
            let step = (self.sigma(s) - sigma) / l;
            s -= step;
            if step.abs() <= 1e-15 * (1.0 + s.abs()) {
                return Ok(s);
            }
        }
        Ok(s)
    }

    /// Jet of `c(s(sigma))` with respect to `sigma`.
    pub fn pull_jet(&self, c: &CurveJet, s: f64) -> Result<CurveJet> {
        let (l, dl) = (self.speed)(s)?;
        Ok(CurveJet {
            p: c.p,
            d1: c.d1 * (1.0 / l),
            d2: (c.d2 * l - c.d1 * dl) * (1.0 / (l * l * l)),
        })
    }
}

/// Image of a curve under a linear map `A` (given by its action on vectors).
pub struct MappedCurve<L> {
    base: SharedCurve,
    map: L,
}

impl<L> MappedCurve<L>
where
    L: Fn(&MVec) -> MVec + Send + Sync + 'static,
{
    pub fn shared(base: SharedCurve, map: L) -> SharedCurve {
        Arc::new(Self { base, map })
    }
}

impl<L> Curve for MappedCurve<L>
where
    L: Fn(&MVec) -> MVec + Send + Sync,
{
    fn jet(&self, s: f64) -> Result<CurveJet> {
        let j = self.base.jet(s)?;
        Ok(CurveJet {
            p: (self.map)(&j.p),
            d1: (self.map)(&j.d1),
            d2: (self.map)(&j.d2),
        })
    }

    fn domain(&self) -> (f64, f64) {
        self.base.domain()
    }
}

/// Fourth-order central difference of a vector function.
pub fn central_diff4<F>(f: F, s: f64, h: f64) -> Result<MVec>
where
    F: Fn(f64) -> Result<MVec>,
{
    let a = f(s + h)? - f(s - h)?;
    let b = f(s + 2.0 * h)? - f(s - 2.0 * h)?;
    Ok((a * 8.0 - b) * (1.0 / (12.0 * h)))
}
