//! Chart jets, fundamental forms, mean curvature and the stationarity
//! residual `H + alpha <N,X> / |<X,X>|`.
//!
//! Two routes compute the same geometry. [`fundamental_forms`] works on a
//! two-parameter [`ChartJet2`] in `L^3` with triple products; the general
//! [`point_geometry`] handles `n`-parameter hypersurfaces through the metric
//! matrix and a cofactor normal, and dispatches to the first route when
//! `n = 2`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::minkowski::{cross3, triple3, MVec};

/// Relative band around the cone that residual evaluation refuses.
pub const CONE_BAND: f64 = 1e-6;
/// Relative band on the metric determinant below which a chart is degenerate.
pub const DEGENERATE_BAND: f64 = 1e-9;
/// Default finite-difference step for position-only charts.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Position and all first and second partials of a surface chart at `(s,t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartJet2 {
    pub x: MVec,
    pub xs: MVec,
    pub xt: MVec,
    pub xss: MVec,
    pub xst: MVec,
    pub xtt: MVec,
}

impl ChartJet2 {
    pub fn to_hyper(&self) -> HyperJet {
        HyperJet {
            x: self.x,
            d1: vec![self.xs, self.xt],
            d2: vec![vec![self.xss, self.xst], vec![self.xst, self.xtt]],
        }
    }

    /// The jet of `lambda * X`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            x: self.x * lambda,
            xs: self.xs * lambda,
            xt: self.xt * lambda,
            xss: self.xss * lambda,
            xst: self.xst * lambda,
            xtt: self.xtt * lambda,
        }
    }

    /// Swaps the roles of `s` and `t`, flipping the induced orientation.
    pub fn swapped(&self) -> Self {
        Self {
            x: self.x,
            xs: self.xt,
            xt: self.xs,
            xss: self.xtt,
            xst: self.xst,
            xtt: self.xss,
        }
    }
}

/// Second-order jet of an `n`-parameter hypersurface chart.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperJet {
    pub x: MVec,
    pub d1: Vec<MVec>,
    pub d2: Vec<Vec<MVec>>,
}

impl HyperJet {
    pub fn param_dim(&self) -> usize {
        self.d1.len()
    }

    pub fn to_jet2(&self) -> Option<ChartJet2> {
        if self.param_dim() != 2 || self.x.dim() != 3 {
            return None;
        }
        Some(ChartJet2 {
            x: self.x,
            xs: self.d1[0],
            xt: self.d1[1],
            xss: self.d2[0][0],
            xst: self.d2[0][1],
            xtt: self.d2[1][1],
        })
    }
}

/// Axis-aligned parameter box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl ParamBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        Self { lo, hi }
    }

    pub fn rect(s: (f64, f64), t: (f64, f64)) -> Self {
        Self::new(vec![s.0, t.0], vec![s.1, t.1])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        u.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (lo, hi))| *x >= *lo && *x <= *hi)
    }

    /// Row-major grid with `sizes[i]` evenly spaced nodes per axis,
    /// endpoints included. The last axis varies fastest.
    pub fn grid(&self, sizes: &[usize]) -> Vec<Vec<f64>> {
        assert_eq!(sizes.len(), self.dim());
        let axes: Vec<Vec<f64>> = sizes
            .iter()
            .enumerate()
            .map(|(i, &n)| linspace(self.lo[i], self.hi[i], n))
            .collect();
        let mut out = vec![Vec::new()];
        for axis in &axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// The box scaled by `factor` about its centre.
    pub fn expanded(&self, factor: f64) -> Self {
        let (lo, hi) = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| {
                let c = 0.5 * (l + h);
                let r = 0.5 * (h - l) * factor;
                (c - r, c + r)
            })
            .unzip();
        Self { lo, hi }
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// A parametrised hypersurface of `L^{n+1}` that can produce jets.
///
/// Implementations must be reentrant: scans evaluate them concurrently.
pub trait Chart: Send + Sync {
    fn param_dim(&self) -> usize;

    fn hyper_jet(&self, u: &[f64]) -> Result<HyperJet>;

    fn position(&self, u: &[f64]) -> Result<MVec> {
        Ok(self.hyper_jet(u)?.x)
    }

    /// Two-parameter jet; fails for charts with `param_dim() != 2`.
    fn jet2(&self, s: f64, t: f64) -> Result<ChartJet2> {
        self.hyper_jet(&[s, t])?
            .to_jet2()
            .ok_or_else(|| GeomError::InvalidParameter("chart is not a surface in L^3".into()))
    }
}

/// A chart backed by a closed-form jet evaluator.
pub struct AnalyticChart<F> {
    param_dim: usize,
    eval: F,
}

impl<F> AnalyticChart<F>
where
    F: Fn(&[f64]) -> Result<HyperJet> + Send + Sync,
{
    pub fn new(param_dim: usize, eval: F) -> Self {
        Self { param_dim, eval }
    }
}

impl<F> Chart for AnalyticChart<F>
where
    F: Fn(&[f64]) -> Result<HyperJet> + Send + Sync,
{
    fn param_dim(&self) -> usize {
        self.param_dim
    }

    fn hyper_jet(&self, u: &[f64]) -> Result<HyperJet> {
        (self.eval)(u)
    }
}

/// A two-parameter chart known only through positions; jets come from
/// central differences with step `h`.
pub struct FdChart<F> {
    pos: F,
    pub h: f64,
}

impl<F> FdChart<F>
where
    F: Fn(f64, f64) -> MVec + Send + Sync,
{
    pub fn new(pos: F, h: f64) -> Self {
        Self { pos, h }
    }
}

impl<F> Chart for FdChart<F>
where
    F: Fn(f64, f64) -> MVec + Send + Sync,
{
    fn param_dim(&self) -> usize {
        2
    }

    fn hyper_jet(&self, u: &[f64]) -> Result<HyperJet> {
        Ok(jets_from_position(&self.pos, u[0], u[1], self.h)?.to_hyper())
    }
}

/// Central second-order finite-difference jet of a position map.
pub fn jets_from_position<F>(pos: F, s: f64, t: f64, h: f64) -> Result<ChartJet2>
where
    F: Fn(f64, f64) -> MVec,
{
    if !(h > 0.0) {
        return Err(GeomError::InvalidParameter(format!("step h = {h}")));
    }
    let x = pos(s, t);
    let sp = pos(s + h, t);
    let sm = pos(s - h, t);
    let tp = pos(s, t + h);
    let tm = pos(s, t - h);
    let pp = pos(s + h, t + h);
    let pm = pos(s + h, t - h);
    let mp = pos(s - h, t + h);
    let mm = pos(s - h, t - h);
    for v in [&x, &sp, &sm, &tp, &tm, &pp, &pm, &mp, &mm] {
        if !v.is_finite() {
            return Err(GeomError::InvalidParameter(format!(
                "position not finite near ({s}, {t})"
            )));
        }
    }
    let inv2h = 0.5 / h;
    let invh2 = 1.0 / (h * h);
    Ok(ChartJet2 {
        x,
        xs: (sp - sm) * inv2h,
        xt: (tp - tm) * inv2h,
        xss: (sp - x * 2.0 + sm) * invh2,
        xtt: (tp - x * 2.0 + tm) * invh2,
        xst: (pp - pm - mp + mm) * (0.25 * invh2),
    })
}

/// First and second fundamental forms of a surface in `L^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e_big: f64,
    pub f_big: f64,
    pub g_big: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    /// `<N,N>`: `-1` on spacelike surfaces, `+1` on timelike ones.
    pub eps_normal: f64,
    pub normal: MVec,
}

impl FundamentalForms {
    pub fn metric_det(&self) -> f64 {
        self.e_big * self.g_big - self.f_big * self.f_big
    }

    /// `H = eps (eG - 2fF + gE) / (EG - F^2)`.
    pub fn mean_curvature(&self) -> f64 {
        self.eps_normal
            * (self.e * self.g_big - 2.0 * self.f * self.f_big + self.g * self.e_big)
            / self.metric_det()
    }

    /// Eigenvalues of the shape operator `eps I^{-1} II`, when real.
    pub fn principal_curvatures(&self) -> Option<[f64; 2]> {
        let w = self.metric_det();
        // I^{-1} II
        let a = (self.g_big * self.e - self.f_big * self.f) / w;
        let b = (self.g_big * self.f - self.f_big * self.g) / w;
        let c = (self.e_big * self.f - self.f_big * self.e) / w;
        let d = (self.e_big * self.g - self.f_big * self.f) / w;
        let tr = self.eps_normal * (a + d);
        let det = a * d - b * c;
        let disc = tr * tr - 4.0 * det;
        if disc < -1e-12 * (1.0 + tr * tr) {
            return None;
        }
        let r = disc.max(0.0).sqrt();
        Some([0.5 * (tr - r), 0.5 * (tr + r)])
    }
}

fn degenerate_2(e: f64, f: f64, g: f64) -> bool {
    let w = e * g - f * f;
    w.abs() <= DEGENERATE_BAND * (e * e + f * f + g * g)
}

fn require_surface(jet: &ChartJet2) -> Result<()> {
    for v in [&jet.x, &jet.xs, &jet.xt, &jet.xss, &jet.xst, &jet.xtt] {
        if v.dim() != 3 {
            return Err(GeomError::WrongDimension {
                expected: 3,
                got: v.dim(),
            });
        }
    }
    Ok(())
}

/// Fundamental forms and unit normal `N = X_s x X_t / sqrt|EG - F^2|`.
pub fn fundamental_forms(jet: &ChartJet2) -> Result<FundamentalForms> {
    require_surface(jet)?;
    let e_big = jet.xs.dot(&jet.xs);
    let f_big = jet.xs.dot(&jet.xt);
    let g_big = jet.xt.dot(&jet.xt);
    let w = e_big * g_big - f_big * f_big;
    if degenerate_2(e_big, f_big, g_big) {
        return Err(GeomError::DegenerateMetric { value: w });
    }
    let root = w.abs().sqrt();
    let normal = cross3(&jet.xs, &jet.xt) * (1.0 / root);
    Ok(FundamentalForms {
        e_big,
        f_big,
        g_big,
        e: triple3(&jet.xs, &jet.xt, &jet.xss) / root,
        f: triple3(&jet.xs, &jet.xt, &jet.xst) / root,
        g: triple3(&jet.xs, &jet.xt, &jet.xtt) / root,
        eps_normal: if w > 0.0 { -1.0 } else { 1.0 },
        normal,
    })
}

pub fn mean_curvature(jet: &ChartJet2) -> Result<f64> {
    Ok(fundamental_forms(jet)?.mean_curvature())
}

/// Pointwise geometry shared by every residual computation.
#[derive(Debug, Clone, PartialEq)]
pub struct PointGeometry {
    pub x: MVec,
    pub normal: MVec,
    pub eps_normal: f64,
    pub mean_curvature: f64,
    /// Determinant of the induced metric.
    pub metric_det: f64,
}

impl PointGeometry {
    pub fn position_norm_sq(&self) -> f64 {
        self.x.norm_sq()
    }

    /// `h = <N, X>`.
    pub fn support(&self) -> f64 {
        self.normal.dot(&self.x)
    }

    pub fn residual(&self, alpha: f64) -> f64 {
        self.mean_curvature + alpha * self.support() / self.x.norm_sq().abs()
    }

    pub fn fitted_alpha(&self) -> Result<f64> {
        let h = self.support();
        if h.abs() <= 1e-9 * self.normal.euclid_norm() * self.x.euclid_norm().max(1.0) {
            return Err(GeomError::IndeterminateAlpha { value: h });
        }
        Ok(-self.mean_curvature * self.x.norm_sq().abs() / h)
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: -self.normal,
            mean_curvature: -self.mean_curvature,
            ..self.clone()
        }
    }
}

/// Reason a grid point is dropped from a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionReason {
    NearCone,
    DegenerateMetric,
    EvaluationError,
}

/// Geometry of a hypersurface point from its jet.
pub fn point_geometry(jet: &HyperJet) -> Result<PointGeometry> {
    if let Some(j2) = jet.to_jet2() {
        let ff = fundamental_forms(&j2)?;
        return Ok(PointGeometry {
            x: j2.x,
            normal: ff.normal,
            eps_normal: ff.eps_normal,
            mean_curvature: ff.mean_curvature(),
            metric_det: ff.metric_det(),
        });
    }
    general_point_geometry(jet)
}

/// `n`-parameter route: metric matrix, cofactor normal, `H = eps tr(g^-1 h)`.
pub fn general_point_geometry(jet: &HyperJet) -> Result<PointGeometry> {
    let n = jet.param_dim();
    let dim = jet.x.dim();
    if dim != n + 1 {
        return Err(GeomError::WrongDimension {
            expected: n + 1,
            got: dim,
        });
    }
    let g = DMatrix::from_fn(n, n, |i, j| jet.d1[i].dot(&jet.d1[j]));
    let det = g.determinant();
    let scale: f64 = g.iter().map(|x| x * x).sum::<f64>();
    if det.abs() <= DEGENERATE_BAND * scale.powf(n as f64 / 2.0) {
        return Err(GeomError::DegenerateMetric { value: det });
    }
    // Euclidean cofactor vector: det[T_1; ...; T_n; w] = c . w
    let mut c = MVec::zeros(dim);
    for k in 0..dim {
        let minor = DMatrix::from_fn(n, n, |i, j| {
            let col = if j < k { j } else { j + 1 };
            jet.d1[i][col]
        });
        let sign = if (n + k).is_multiple_of(2) { 1.0 } else { -1.0 };
        c[k] = sign * minor.determinant();
    }
    // Lorentz dual: <N', w> = c . w
    c[dim - 1] = -c[dim - 1];
    let nn = c.norm_sq();
    if nn.abs() <= f64::EPSILON * c.euclid_norm_sq() {
        return Err(GeomError::DegenerateMetric { value: det });
    }
    let normal = c * (1.0 / nn.abs().sqrt());
    let eps = if nn > 0.0 { 1.0 } else { -1.0 };
    let h = DMatrix::from_fn(n, n, |i, j| normal.dot(&jet.d2[i][j]));
    let ginv = g
        .clone()
        .try_inverse()
        .ok_or(GeomError::DegenerateMetric { value: det })?;
    let trace = (ginv * h).trace();
    Ok(PointGeometry {
        x: jet.x,
        normal,
        eps_normal: eps,
        mean_curvature: eps * trace,
        metric_det: det,
    })
}

/// Whether the position sits inside the cone exclusion band.
pub fn near_cone(x: &MVec) -> bool {
    x.norm_sq().abs() < CONE_BAND * (1.0 + x.euclid_norm_sq())
}

/// `H + alpha <N,X> / |<X,X>|`; zero everywhere iff the chart is
/// alpha-stationary. Flipping `N` negates the value.
pub fn stationarity_residual(jet: &ChartJet2, alpha: f64) -> Result<f64> {
    if near_cone(&jet.x) {
        return Err(GeomError::OnCone {
            value: jet.x.norm_sq(),
        });
    }
    let geom = point_geometry(&jet.to_hyper())?;
    Ok(geom.residual(alpha))
}

/// The unique `alpha` making the residual vanish at this point:
/// `-H |<X,X>| / <N,X>`.
pub fn fit_alpha(jet: &ChartJet2) -> Result<f64> {
    if near_cone(&jet.x) {
        return Err(GeomError::OnCone {
            value: jet.x.norm_sq(),
        });
    }
    point_geometry(&jet.to_hyper())?.fitted_alpha()
}

/// Signs entering the cleared stationarity equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaritySigns {
    pub eps_region: f64,
    pub eps_normal: f64,
}

impl StationaritySigns {
    pub fn new(eps_region: f64, eps_normal: f64) -> Self {
        debug_assert!(eps_region.abs() == 1.0 && eps_normal.abs() == 1.0);
        Self {
            eps_region,
            eps_normal,
        }
    }

    /// `beta = -eps_region * eps_normal`.
    pub fn beta(&self) -> f64 {
        -self.eps_region * self.eps_normal
    }
}

/// Causal type of a graph `x_{n+1} = u(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// `|Du|^2 < 1`
    Spacelike,
    /// `|Du|^2 > 1`
    Timelike,
}

/// Value, gradient and Hessian of a graph function at `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphJet {
    pub q: Vec<f64>,
    pub u: f64,
    pub du: Vec<f64>,
    pub d2u: Vec<Vec<f64>>,
}

impl GraphJet {
    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn position(&self) -> MVec {
        let mut c = self.q.clone();
        c.push(self.u);
        MVec::new(&c)
    }

    /// Jet of the chart `q -> (q, u(q))`.
    pub fn to_hyper(&self) -> HyperJet {
        let n = self.n();
        let d1 = (0..n)
            .map(|i| {
                let mut v = MVec::basis(n + 1, i);
                v[n] = self.du[i];
                v
            })
            .collect();
        let d2 = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = MVec::zeros(n + 1);
                        v[n] = self.d2u[i][j];
                        v
                    })
                    .collect()
            })
            .collect();
        HyperJet {
            x: self.position(),
            d1,
            d2,
        }
    }
}

/// Cleared Euler-Lagrange residual of a graph,
/// `|<X,X>| div(Du / w) + alpha <N,X>`, with the divergence expanded as
/// `(w^2 Lap u + s Du^T D^2u Du) / w^3`.
///
/// Spacelike: `w = sqrt(1 - |Du|^2)`, `N = (Du, 1) / w`, `s = +1`.
/// Timelike: `w = sqrt(|Du|^2 - 1)`, `N = -(Du, 1) / w`, `s = -1`.
/// In `C^+` and for spacelike graphs this is exactly the left side minus the
/// right side of the classical graph equation.
pub fn graph_residual(jet: &GraphJet, alpha: f64, kind: GraphKind) -> Result<f64> {
    let n = jet.n();
    if jet.du.len() != n || jet.d2u.len() != n {
        return Err(GeomError::DimensionMismatch {
            left: n,
            right: jet.du.len(),
        });
    }
    let du2: f64 = jet.du.iter().map(|x| x * x).sum();
    let (w2, s) = match kind {
        GraphKind::Spacelike if du2 < 1.0 => (1.0 - du2, 1.0),
        GraphKind::Timelike if du2 > 1.0 => (du2 - 1.0, -1.0),
        _ => return Err(GeomError::WrongCausalType { du2 }),
    };
    let x = jet.position();
    if near_cone(&x) {
        return Err(GeomError::OnCone { value: x.norm_sq() });
    }
    let w = w2.sqrt();
    let lap: f64 = (0..n).map(|i| jet.d2u[i][i]).sum();
    let quad: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| jet.du[i] * jet.d2u[i][j] * jet.du[j])
        .sum();
    let div = (w2 * lap + s * quad) / (w2 * w);
    let q_du: f64 = jet.q.iter().zip(&jet.du).map(|(a, b)| a * b).sum();
    let support = match kind {
        GraphKind::Spacelike => (q_du - jet.u) / w,
        GraphKind::Timelike => -(q_du - jet.u) / w,
    };
    Ok(x.norm_sq().abs() * div + alpha * support)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_jet(s: f64, t: f64) -> ChartJet2 {
        ChartJet2 {
            x: MVec::xyz(s, t, 0.0),
            xs: MVec::xyz(1.0, 0.0, 0.0),
            xt: MVec::xyz(0.0, 1.0, 0.0),
            xss: MVec::zeros(3),
            xst: MVec::zeros(3),
            xtt: MVec::zeros(3),
        }
    }

    /// `H^2(1)` upper sheet as the graph `(s, t, sqrt(1 + s^2 + t^2))`,
    /// parameters ordered so that the chart normal is `N = p`.
    fn hyperbolic_jet(s: f64, t: f64) -> ChartJet2 {
        hyperbolic_graph_jet(s, t).swapped()
    }

    fn hyperbolic_graph_jet(s: f64, t: f64) -> ChartJet2 {
        let u = (1.0 + s * s + t * t).sqrt();
        let u3 = u * u * u;
        ChartJet2 {
            x: MVec::xyz(s, t, u),
            xs: MVec::xyz(1.0, 0.0, s / u),
            xt: MVec::xyz(0.0, 1.0, t / u),
            xss: MVec::xyz(0.0, 0.0, 1.0 / u - s * s / u3),
            xst: MVec::xyz(0.0, 0.0, -s * t / u3),
            xtt: MVec::xyz(0.0, 0.0, 1.0 / u - t * t / u3),
        }
    }

    /// `S^2_1(r)` as `(sqrt(r^2 + z^2) cos th, sqrt(r^2 + z^2) sin th, z)`.
    fn pseudosphere_jet(r: f64, th: f64, z: f64) -> ChartJet2 {
        let rho = (r * r + z * z).sqrt();
        let rz = z / rho;
        let rzz = r * r / (rho * rho * rho);
        let (c, s) = (th.cos(), th.sin());
        ChartJet2 {
            x: MVec::xyz(rho * c, rho * s, z),
            xs: MVec::xyz(-rho * s, rho * c, 0.0),
            xt: MVec::xyz(rz * c, rz * s, 1.0),
            xss: MVec::xyz(-rho * c, -rho * s, 0.0),
            xst: MVec::xyz(-rz * s, rz * c, 0.0),
            xtt: MVec::xyz(rzz * c, rzz * s, 0.0),
        }
    }

    #[test]
    fn fd_jet_examples() {
        let j = jets_from_position(|s, t| MVec::xyz(s, t, 0.0), 0.3, 0.7, 1e-4).unwrap();
        assert_eq!(j.xss.as_slice(), &[0.0, 0.0, 0.0]);
        assert_eq!(j.xtt.as_slice(), &[0.0, 0.0, 0.0]);
        assert!(j.xst.euclid_norm() == 0.0);

        let j = jets_from_position(|s, t| MVec::xyz(s, t, s * s), 1.0, 0.0, 1e-4).unwrap();
        assert!(j.xss.max_abs_diff(&MVec::xyz(0.0, 0.0, 2.0)) < 1e-7);

        let j = jets_from_position(|s, t| MVec::xyz(s.cos(), s.sin(), t), 0.0, 0.0, 1e-4).unwrap();
        assert!(j.xs.max_abs_diff(&MVec::xyz(0.0, 1.0, 0.0)) < 1e-7);
        assert!(j.xss.max_abs_diff(&MVec::xyz(-1.0, 0.0, 0.0)) < 1e-7);

        assert!(jets_from_position(|s, t| MVec::xyz(s, t, 0.0), 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn plane_forms() {
        let ff = fundamental_forms(&plane_jet(0.5, 0.5)).unwrap();
        assert_eq!((ff.e_big, ff.f_big, ff.g_big), (1.0, 0.0, 1.0));
        assert_eq!((ff.e, ff.f, ff.g), (0.0, 0.0, 0.0));
        assert_eq!(ff.eps_normal, -1.0);
        assert_eq!(ff.normal[2].abs(), 1.0);
        assert_eq!(ff.mean_curvature(), 0.0);
    }

    #[test]
    fn hyperbolic_vertex_normal_is_position() {
        let j = hyperbolic_jet(0.0, 0.0);
        let ff = fundamental_forms(&j).unwrap();
        assert_eq!(ff.eps_normal, -1.0);
        assert!(ff.normal.max_abs_diff(&j.x) < 1e-15);
        assert!((ff.mean_curvature() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn pseudosphere_is_timelike_with_h_two_over_r() {
        let j = pseudosphere_jet(1.0, 0.0, 0.0);
        let ff = fundamental_forms(&j).unwrap();
        assert_eq!(ff.eps_normal, 1.0);
        // normal for this chart orientation
        let sign = if ff.normal.dot(&j.x) < 0.0 { 1.0 } else { -1.0 };
        assert!((sign * ff.mean_curvature() - 2.0).abs() < 1e-14);

        let j = pseudosphere_jet(2.0, 0.4, 0.3);
        let ff = fundamental_forms(&j).unwrap();
        // orientation N = -p/2
        let sign = if ff.normal.dot(&j.x) < 0.0 { 1.0 } else { -1.0 };
        assert!((sign * ff.mean_curvature() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn degenerate_metric_detected() {
        let mut j = plane_jet(0.0, 0.0);
        j.xt = MVec::xyz(1.0, 0.0, 0.0);
        assert!(matches!(
            fundamental_forms(&j),
            Err(GeomError::DegenerateMetric { .. })
        ));
        // lightlike plane span{e1, e2 + e3}
        j.xt = MVec::xyz(0.0, 1.0, 1.0);
        assert!(fundamental_forms(&j).is_err());
    }

    #[test]
    fn residual_examples() {
        for &(s, t) in &[(0.0, 0.0), (0.7, -0.2), (1.5, 2.0)] {
            let j = hyperbolic_jet(s, t);
            assert!(stationarity_residual(&j, 2.0).unwrap().abs() < 1e-12);
            assert!((stationarity_residual(&j, 0.0).unwrap() - 2.0).abs() < 1e-12);
            assert!((fit_alpha(&j).unwrap() - 2.0).abs() < 1e-12);
        }
        let j = pseudosphere_jet(1.0, 0.3, -0.8);
        assert!(stationarity_residual(&j, 2.0).unwrap().abs() < 1e-12);
        assert!(matches!(
            fit_alpha(&plane_jet(0.5, 0.5)),
            Err(GeomError::IndeterminateAlpha { .. })
        ));
    }

    #[test]
    fn shifted_pseudosphere_fits_four() {
        // S^2_1(p0, 1) with p0 = (1, 0, 0); point on the x1 > 0 side is in C^-.
        let p0 = MVec::xyz(1.0, 0.0, 0.0);
        let mut j = pseudosphere_jet(1.0, 0.2, 0.4);
        j.x += p0;
        assert!(j.x.norm_sq() > 0.0);
        assert!((fit_alpha(&j).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn on_cone_rejected() {
        let mut j = plane_jet(1.0, 0.0);
        j.x = MVec::xyz(1.0, 0.0, 1.0);
        assert!(matches!(
            stationarity_residual(&j, 1.0),
            Err(GeomError::OnCone { .. })
        ));
    }

    #[test]
    fn orientation_flip_negates_residual() {
        let j = hyperbolic_jet(0.4, 0.9);
        let flipped = j.swapped();
        let a = stationarity_residual(&j, 1.3).unwrap();
        let b = stationarity_residual(&flipped, 1.3).unwrap();
        assert!((a + b).abs() < 1e-13);
        assert!((fit_alpha(&j).unwrap() - fit_alpha(&flipped).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn general_route_matches_triple_products() {
        for j in [
            hyperbolic_jet(0.3, -1.1),
            pseudosphere_jet(1.7, 0.5, 0.9),
            jets_from_position(|s, t| MVec::xyz(s, t.sin() + s * t, 0.3 * s * s), 0.4, 0.2, 1e-3)
                .unwrap(),
        ] {
            let a = point_geometry(&j.to_hyper()).unwrap();
            let b = general_point_geometry(&j.to_hyper()).unwrap();
            assert!((a.mean_curvature - b.mean_curvature).abs() < 1e-12);
            assert!(a.normal.max_abs_diff(&b.normal) < 1e-12);
            assert_eq!(a.eps_normal, b.eps_normal);
        }
    }

    fn hyperbolic_graph(q: &[f64]) -> GraphJet {
        let n = q.len();
        let u = (1.0 + q.iter().map(|x| x * x).sum::<f64>()).sqrt();
        GraphJet {
            q: q.to_vec(),
            u,
            du: q.iter().map(|x| x / u).collect(),
            d2u: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (if i == j { 1.0 / u } else { 0.0 }) - q[i] * q[j] / (u * u * u))
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn graph_residual_examples() {
        for q in [vec![0.3, -0.4], vec![1.0, 2.0], vec![0.1, 0.2, -0.3]] {
            let j = hyperbolic_graph(&q);
            let n = q.len() as f64;
            assert!(graph_residual(&j, n, GraphKind::Spacelike).unwrap().abs() < 1e-12);
            assert!(graph_residual(&j, n + 1.0, GraphKind::Spacelike).unwrap().abs() > 1e-3);
            assert!(matches!(
                graph_residual(&j, n, GraphKind::Timelike),
                Err(GeomError::WrongCausalType { .. })
            ));
        }
        let flat = GraphJet {
            q: vec![2.0, 0.5],
            u: 1.0,
            du: vec![0.0, 0.0],
            d2u: vec![vec![0.0; 2]; 2],
        };
        assert_eq!(graph_residual(&flat, 0.0, GraphKind::Spacelike).unwrap(), 0.0);
    }

    #[test]
    fn timelike_graph_pseudosphere() {
        // S^2_1(1) as x3 = sqrt(|q|^2 - 1), |q| > 1.
        let q = [1.3, 0.8];
        let r2: f64 = q.iter().map(|x| x * x).sum();
        let u = (r2 - 1.0).sqrt();
        let u3 = u * u * u;
        let j = GraphJet {
            q: q.to_vec(),
            u,
            du: vec![q[0] / u, q[1] / u],
            d2u: (0..2)
                .map(|i| {
                    (0..2)
                        .map(|k| (if i == k { 1.0 / u } else { 0.0 }) - q[i] * q[k] / u3)
                        .collect()
                })
                .collect(),
        };
        assert!(graph_residual(&j, 2.0, GraphKind::Timelike).unwrap().abs() < 1e-12);
        // cross-check with the chart route
        let g = point_geometry(&j.to_hyper()).unwrap();
        assert!(g.residual(2.0).abs() < 1e-12);
    }

    #[test]
    fn principal_curvatures_umbilic() {
        let ff = fundamental_forms(&hyperbolic_jet(0.5, 0.5)).unwrap();
        let k = ff.principal_curvatures().unwrap();
        assert!((k[0] - 1.0).abs() < 1e-12 && (k[1] - 1.0).abs() < 1e-6);
    }
}
