//! Ruled surfaces `X(s,t) = gamma(s) + t w(s)` in `L^3`.
//!
//! The stationarity equation of a ruled chart, cleared of denominators,
//! is a polynomial in `t` of degree at most four:
//!
//! ```text
//! P(s,t) = H1 <X,X> - alpha eps_region eps_normal (EG - F^2) (X_s, X_t, X)
//! ```
//!
//! Its coefficients are recovered exactly from six probe values by a
//! Vandermonde solve, so every classification statement reduces to checking
//! that finitely many functions of `s` vanish.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::curve::{central_diff4, Curve, CurveJet, Reparam, SharedCurve};
use crate::error::{GeomError, Result};
use crate::minkowski::{
    causal_class, cone_region, cross3, triple3, CausalClass, ConeRegion, MVec, DEFAULT_CAUSAL_TOL,
};
use crate::surface::{linspace, Chart, ChartJet2, HyperJet, ParamBox, DEGENERATE_BAND};

/// Probe nodes on `[-2.5, 2.5]`, rescaled onto the chart's `t`-range.
pub const PROBE_NODES: [f64; 6] = [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5];
/// Default relative tolerance on the post-fit polynomial residual.
pub const DEFAULT_STATIONARITY_TOL: f64 = 1e-6;
/// Default number of `s` samples used by classification.
pub const DEFAULT_S_SAMPLES: usize = 33;

/// A ruled chart with its parameter rectangle.
#[derive(Clone)]
pub struct RuledChart {
    pub gamma: SharedCurve,
    pub w: SharedCurve,
    pub s_range: (f64, f64),
    pub t_range: (f64, f64),
}

impl fmt::Debug for RuledChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuledChart")
            .field("s_range", &self.s_range)
            .field("t_range", &self.t_range)
            .finish_non_exhaustive()
    }
}

impl RuledChart {
    pub fn new(gamma: SharedCurve, w: SharedCurve, s_range: (f64, f64), t_range: (f64, f64)) -> Self {
        Self {
            gamma,
            w,
            s_range,
            t_range,
        }
    }

    pub fn param_box(&self) -> ParamBox {
        ParamBox::rect(self.s_range, self.t_range)
    }

    pub fn s_grid(&self, n: usize) -> Vec<f64> {
        linspace(self.s_range.0, self.s_range.1, n)
    }

    pub fn with_t_range(&self, t_range: (f64, f64)) -> Self {
        Self {
            t_range,
            ..self.clone()
        }
    }

    /// Applies a linear map to both curves; for a Minkowski isometry or
    /// a dilation the image is again stationary with the same `alpha`.
    pub fn mapped<L>(&self, map: L) -> Self
    where
        L: Fn(&MVec) -> MVec + Clone + Send + Sync + 'static,
    {
        Self {
            gamma: crate::curve::MappedCurve::shared(self.gamma.clone(), map.clone()),
            w: crate::curve::MappedCurve::shared(self.w.clone(), map),
            ..self.clone()
        }
    }

    fn check_s(&self, s: f64) -> Result<()> {
        let (lo, hi) = self.s_range;
        let slack = 1e-9 * (1.0 + (hi - lo).abs());
        if s < lo - slack || s > hi + slack || !s.is_finite() {
            return Err(GeomError::Domain { value: s, lo, hi });
        }
        Ok(())
    }

    fn curves_at(&self, s: f64) -> Result<(CurveJet, CurveJet)> {
        Ok((self.gamma.jet(s)?, self.w.jet(s)?))
    }
}

impl Chart for RuledChart {
    fn param_dim(&self) -> usize {
        2
    }

    fn hyper_jet(&self, u: &[f64]) -> Result<HyperJet> {
        Ok(ruled_jet(self, u[0], u[1])?.to_hyper())
    }
}

fn jet_from_curves(g: &CurveJet, w: &CurveJet, t: f64) -> ChartJet2 {
    ChartJet2 {
        x: g.p + w.p * t,
        xs: g.d1 + w.d1 * t,
        xt: w.p,
        xss: g.d2 + w.d2 * t,
        xst: w.d1,
        xtt: MVec::zeros(w.p.dim()),
    }
}

/// Exact chart jet of a ruled surface.
pub fn ruled_jet(chart: &RuledChart, s: f64, t: f64) -> Result<ChartJet2> {
    chart.check_s(s)?;
    let (g, w) = chart.curves_at(s)?;
    if g.p.dim() != 3 || w.p.dim() != 3 {
        return Err(GeomError::WrongDimension {
            expected: 3,
            got: g.p.dim(),
        });
    }
    Ok(jet_from_curves(&g, &w, t))
}

/// `H1 = G (X_s,X_t,X_ss) - 2F (X_s,X_t,X_st) + E (X_s,X_t,X_tt)`.
pub fn h1(jet: &ChartJet2) -> f64 {
    let e = jet.xs.dot(&jet.xs);
    let f = jet.xs.dot(&jet.xt);
    let g = jet.xt.dot(&jet.xt);
    g * triple3(&jet.xs, &jet.xt, &jet.xss) - 2.0 * f * triple3(&jet.xs, &jet.xt, &jet.xst)
        + e * triple3(&jet.xs, &jet.xt, &jet.xtt)
}

/// Polynomial in `t` at a fixed `s`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TPolynomial {
    pub s: f64,
    pub coeffs: Vec<f64>,
}

impl TPolynomial {
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Highest index whose coefficient exceeds `tol`, or `None` if all do not.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.abs() > tol)
    }
}

/// Probe nodes mapped affinely onto `t_range`.
pub fn probe_nodes(t_range: (f64, f64)) -> [f64; 6] {
    let c = 0.5 * (t_range.0 + t_range.1);
    let r = 0.5 * (t_range.1 - t_range.0);
    PROBE_NODES.map(|x| c + r * x / 2.5)
}

/// Monomial coefficients of the polynomial through `(nodes[i], values[i])`.
pub fn vandermonde_coeffs(nodes: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    let n = nodes.len();
    for i in 0..n {
        for j in 0..i {
            if (nodes[i] - nodes[j]).abs() <= 1e-12 * (1.0 + nodes[i].abs()) {
                return Err(GeomError::DegenerateProbe(format!(
                    "repeated node {}",
                    nodes[i]
                )));
            }
        }
    }
    let v = DMatrix::from_fn(n, n, |i, j| nodes[i].powi(j as i32));
    let b = DVector::from_column_slice(values);
    let sol = v
        .lu()
        .solve(&b)
        .ok_or_else(|| GeomError::DegenerateProbe("singular Vandermonde matrix".into()))?;
    Ok(sol.iter().copied().collect())
}

/// The cleared polynomial split as `P = P0 - alpha P1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPoly {
    pub p0: TPolynomial,
    pub p1: TPolynomial,
    pub eps_normal: f64,
    /// Magnitude bound for `P` at the probe nodes; both parts share it.
    pub scale: f64,
    /// Largest `|t|` among the probe nodes.
    pub t_scale: f64,
}

impl SplitPoly {
    pub fn combine(&self, alpha: f64) -> TPolynomial {
        TPolynomial {
            s: self.p0.s,
            coeffs: self
                .p0
                .coeffs
                .iter()
                .zip(&self.p1.coeffs)
                .map(|(a, b)| a - alpha * b)
                .collect(),
        }
    }

    /// Coefficients weighted by `t_scale^n / scale`, so that entries are
    /// comparable across `s` and across charts.
    pub fn weighted(&self) -> (Vec<f64>, Vec<f64>) {
        let w = |c: &[f64]| -> Vec<f64> {
            c.iter()
                .enumerate()
                .map(|(n, a)| a * self.t_scale.powi(n as i32) / self.scale)
                .collect()
        };
        (w(&self.p0.coeffs), w(&self.p1.coeffs))
    }
}

/// Cleared polynomial split into its `alpha`-free and `alpha`-linear parts.
pub fn ruled_poly_split(chart: &RuledChart, s: f64, eps_region: f64) -> Result<SplitPoly> {
    chart.check_s(s)?;
    let (g, w) = chart.curves_at(s)?;
    let nodes = probe_nodes(chart.t_range);
    let mut v0 = [0.0; 6];
    let mut v1 = [0.0; 6];
    let mut eps_normal = 0.0;
    let mut scale: f64 = 0.0;
    for (i, &t) in nodes.iter().enumerate() {
        let j = jet_from_curves(&g, &w, t);
        let e = j.xs.dot(&j.xs);
        let f = j.xs.dot(&j.xt);
        let gg = j.xt.dot(&j.xt);
        let wdet = e * gg - f * f;
        if wdet.abs() <= DEGENERATE_BAND * (e * e + f * f + gg * gg) {
            return Err(GeomError::DegenerateMetric { value: wdet });
        }
        let eps = if wdet > 0.0 { -1.0 } else { 1.0 };
        if eps_normal == 0.0 {
            eps_normal = eps;
        } else if eps != eps_normal {
            return Err(GeomError::DegenerateMetric { value: wdet });
        }
        let xx = j.x.dot(&j.x);
        v0[i] = h1(&j) * xx;
        v1[i] = eps_region * eps_normal * wdet * triple3(&j.xs, &j.xt, &j.x);
        let (nx, ns, nt) = (j.x.euclid_norm(), j.xs.euclid_norm(), j.xt.euclid_norm());
        let bound0 = nx * nx * ns * nt * (nt * nt * j.xss.euclid_norm() + 2.0 * ns * nt * j.xst.euclid_norm());
        let bound1 = ns.powi(3) * nt.powi(3) * nx;
        scale = scale.max(bound0).max(bound1);
    }
    let c0 = vandermonde_coeffs(&nodes, &v0)?;
    let c1 = vandermonde_coeffs(&nodes, &v1)?;
    Ok(SplitPoly {
        p0: TPolynomial { s, coeffs: c0 },
        p1: TPolynomial { s, coeffs: c1 },
        eps_normal,
        scale: if scale > 0.0 { scale } else { 1.0 },
        t_scale: nodes.iter().fold(0.0, |m: f64, t| m.max(t.abs())).max(1e-300),
    })
}

/// Cleared stationarity polynomial `P(s, .)` at the given `alpha`.
pub fn ruled_stationarity_poly(
    chart: &RuledChart,
    s: f64,
    alpha: f64,
    eps_region: f64,
) -> Result<TPolynomial> {
    Ok(ruled_poly_split(chart, s, eps_region)?.combine(alpha))
}

/// Direct pointwise value of the cleared polynomial; the oracle for the
/// Vandermonde round trip.
pub fn ruled_poly_direct(chart: &RuledChart, s: f64, t: f64, alpha: f64, eps_region: f64, eps_normal: f64) -> Result<f64> {
    let j = ruled_jet(chart, s, t)?;
    let e = j.xs.dot(&j.xs);
    let f = j.xs.dot(&j.xt);
    let g = j.xt.dot(&j.xt);
    Ok(h1(&j) * j.x.dot(&j.x)
        - alpha * eps_region * eps_normal * (e * g - f * f) * triple3(&j.xs, &j.xt, &j.x))
}

/// Outcome of eliminating `alpha` from the coefficient system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaFit {
    /// Every coefficient vanishes for one `alpha`.
    Stationary { alpha: f64, residual: f64 },
    /// The `alpha` column vanishes together with the rest: any `alpha` works.
    AnyAlpha { residual: f64 },
    /// No `alpha` annihilates the system; `alpha` is the least-squares best.
    NotStationary { alpha: Option<f64>, residual: f64 },
}

impl AlphaFit {
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            AlphaFit::Stationary { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn is_stationary(&self) -> bool {
        !matches!(self, AlphaFit::NotStationary { .. })
    }

    pub fn residual(&self) -> f64 {
        match *self {
            AlphaFit::Stationary { residual, .. }
            | AlphaFit::AnyAlpha { residual }
            | AlphaFit::NotStationary { residual, .. } => residual,
        }
    }
}

/// Least-squares `alpha` over all `(s, n)` coefficient equations.
pub fn fit_alpha_poly(polys: &[SplitPoly], tol: f64) -> AlphaFit {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut max0: f64 = 0.0;
    let mut max1: f64 = 0.0;
    let rows: Vec<(Vec<f64>, Vec<f64>)> = polys.iter().map(|p| p.weighted()).collect();
    for (a, b) in &rows {
        for (x, y) in a.iter().zip(b) {
            num += x * y;
            den += y * y;
            max0 = max0.max(x.abs());
            max1 = max1.max(y.abs());
        }
    }
    if max1 <= 1e-10 {
        return if max0 <= tol {
            AlphaFit::AnyAlpha { residual: max0 }
        } else {
            AlphaFit::NotStationary {
                alpha: None,
                residual: max0,
            }
        };
    }
    let alpha = num / den;
    let residual = rows
        .iter()
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - alpha * y).abs()))
        .fold(0.0, f64::max);
    if residual <= tol {
        AlphaFit::Stationary { alpha, residual }
    } else {
        AlphaFit::NotStationary {
            alpha: Some(alpha),
            residual,
        }
    }
}

/// Causal type of the ruling and its derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RulingClass {
    Cylindrical,
    #[serde(rename = "NonLightlikeW_NonLightlikeWp")]
    NonLightlikeWNonLightlikeWp,
    #[serde(rename = "NonLightlikeW_LightlikeWp")]
    NonLightlikeWLightlikeWp,
    LightlikeW,
}

impl RulingClass {
    pub fn label(self) -> &'static str {
        match self {
            RulingClass::Cylindrical => "Cylindrical",
            RulingClass::NonLightlikeWNonLightlikeWp => "NonLightlikeW_NonLightlikeWp",
            RulingClass::NonLightlikeWLightlikeWp => "NonLightlikeW_LightlikeWp",
            RulingClass::LightlikeW => "LightlikeW",
        }
    }
}

impl fmt::Display for RulingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn all_same<T: PartialEq + Copy + fmt::Debug>(items: &[T], what: &str) -> Result<T> {
    let first = items[0];
    match items.iter().find(|x| **x != first) {
        None => Ok(first),
        Some(other) => Err(GeomError::MixedClass(format!(
            "{what} is {first:?} and {other:?} along the interval"
        ))),
    }
}

/// Classifies the ruling on `samples` points of the `s`-interval.
///
/// For a non-lightlike ruling the causal type of `w'` is read off the part
/// of `w'` orthogonal to `w`, which is what survives unitizing `w`.
pub fn ruling_class_sampled(chart: &RuledChart, tol: f64, samples: usize) -> Result<RulingClass> {
    let mut constant = Vec::new();
    let mut wc = Vec::new();
    let mut wpc = Vec::new();
    for s in chart.s_grid(samples.max(2)) {
        let j = chart.w.jet(s)?;
        let wn = j.p.euclid_norm();
        if wn == 0.0 {
            return Err(GeomError::InvalidParameter(format!("w vanishes at s = {s}")));
        }
        constant.push(j.d1.euclid_norm() <= tol.sqrt() * 1e-3 * wn);
        let cw = causal_class(&j.p, tol);
        wc.push(cw);
        let ww = j.p.norm_sq();
        let m = if cw == CausalClass::Lightlike {
            j.d1.norm_sq()
        } else {
            j.d1.norm_sq() - j.p.dot(&j.d1).powi(2) / ww
        };
        let band = tol * j.d1.euclid_norm_sq();
        wpc.push(if m > band {
            1i8
        } else if m < -band {
            -1
        } else {
            0
        });
    }
    if all_same(&constant, "w' = 0")? {
        return Ok(RulingClass::Cylindrical);
    }
    let cw = all_same(&wc, "causal type of w")?;
    match cw {
        CausalClass::Lightlike => Ok(RulingClass::LightlikeW),
        CausalClass::ZeroVector => Err(GeomError::InvalidParameter("w vanishes".into())),
        _ => match all_same(&wpc, "causal type of w'")? {
            0 => Ok(RulingClass::NonLightlikeWLightlikeWp),
            _ => Ok(RulingClass::NonLightlikeWNonLightlikeWp),
        },
    }
}

pub fn ruling_class(chart: &RuledChart, tol: f64) -> Result<RulingClass> {
    ruling_class_sampled(chart, tol, DEFAULT_S_SAMPLES)
}

/// `w / sqrt|<w,w>|` with derivatives; `delta` is the sign of `<w,w>`.
fn unitize(j: &CurveJet, delta: f64) -> Result<CurveJet> {
    let nu = delta * j.p.norm_sq();
    if !(nu > 0.0) {
        return Err(GeomError::NonUnitizableRuling);
    }
    let nu1 = 2.0 * delta * j.p.dot(&j.d1);
    let nu2 = 2.0 * delta * (j.d1.norm_sq() + j.p.dot(&j.d2));
    let r = nu.sqrt();
    let r3 = nu * r;
    let r5 = r3 * nu;
    Ok(CurveJet {
        p: j.p * (1.0 / r),
        d1: j.d1 * (1.0 / r) - j.p * (0.5 * nu1 / r3),
        d2: j.d2 * (1.0 / r) - j.d1 * (nu1 / r3) + j.p * (0.75 * nu1 * nu1 / r5 - 0.5 * nu2 / r3),
    })
}

/// Shared state behind the normalized curves.
struct Normalizer {
    gamma: SharedCurve,
    w: SharedCurve,
    reparam: Reparam,
    /// Sign of `<w,w>`, or `None` for a lightlike ruling (left unscaled).
    delta: Option<f64>,
    /// Sign of `<w~',w~'>` after normalization.
    mu: f64,
    fd_step: f64,
}

impl Normalizer {
    fn w_hat(&self, s: f64) -> Result<CurveJet> {
        let j = self.w.jet(s)?;
        match self.delta {
            Some(d) => unitize(&j, d),
            None => Ok(j),
        }
    }

    fn w_tilde(&self, sigma: f64) -> Result<CurveJet> {
        let s = self.reparam.s_of(sigma)?;
        self.reparam.pull_jet(&self.w_hat(s)?, s)
    }

    /// Position and first derivative of the striction-shifted base curve.
    fn gamma_tilde_01(&self, sigma: f64) -> Result<(MVec, MVec)> {
        let s = self.reparam.s_of(sigma)?;
        let gb = self.reparam.pull_jet(&self.gamma.jet(s)?, s)?;
        let wt = self.reparam.pull_jet(&self.w_hat(s)?, s)?;
        let u = -self.mu * gb.d1.dot(&wt.d1);
        let du = -self.mu * (gb.d2.dot(&wt.d1) + gb.d1.dot(&wt.d2));
        Ok((gb.p + wt.p * u, gb.d1 + wt.p * du + wt.d1 * u))
    }

    fn shift(&self, sigma: f64) -> Result<f64> {
        let s = self.reparam.s_of(sigma)?;
        let gb = self.reparam.pull_jet(&self.gamma.jet(s)?, s)?;
        let wt = self.reparam.pull_jet(&self.w_hat(s)?, s)?;
        Ok(-self.mu * gb.d1.dot(&wt.d1))
    }

    fn scale_factor(&self, sigma: f64) -> Result<f64> {
        let s = self.reparam.s_of(sigma)?;
        Ok(match self.delta {
            Some(d) => (d * self.w.jet(s)?.p.norm_sq()).sqrt(),
            None => 1.0,
        })
    }
}

struct NormW(Arc<Normalizer>);
struct NormGamma(Arc<Normalizer>);

impl Curve for NormW {
    fn jet(&self, sigma: f64) -> Result<CurveJet> {
        self.0.w_tilde(sigma)
    }

    fn domain(&self) -> (f64, f64) {
        self.0.reparam.sigma_range()
    }
}

impl Curve for NormGamma {
    fn jet(&self, sigma: f64) -> Result<CurveJet> {
        let (p, d1) = self.0.gamma_tilde_01(sigma)?;
        let d2 = central_diff4(|x| Ok(self.0.gamma_tilde_01(x)?.1), sigma, self.0.fd_step)?;
        Ok(CurveJet { p, d1, d2 })
    }

    fn domain(&self) -> (f64, f64) {
        self.0.reparam.sigma_range()
    }
}

fn build_normalized(chart: &RuledChart, delta: Option<f64>) -> Result<(RuledChart, Arc<Normalizer>)> {
    let w = chart.w.clone();
    let speed = move |s: f64| -> Result<(f64, f64)> {
        let j = w.jet(s)?;
        let wh = match delta {
            Some(d) => unitize(&j, d)?,
            None => j,
        };
        let m = wh.d1.norm_sq();
        let l = m.abs().sqrt();
        if l == 0.0 {
            return Err(GeomError::VanishingWPrime);
        }
        Ok((l, m.signum() * wh.d1.dot(&wh.d2) / l))
    };
    let mid = 0.5 * (chart.s_range.0 + chart.s_range.1);
    let mu = speed(mid).map(|_| {
        let j = chart.w.jet(mid).ok();
        j.and_then(|j| match delta {
            Some(d) => unitize(&j, d).ok(),
            None => Some(j),
        })
        .map(|wh| wh.d1.norm_sq().signum())
        .unwrap_or(1.0)
    })?;
    let reparam = Reparam::new(speed, chart.s_range.0, chart.s_range.1, 64)?;
    let (sig0, sig1) = reparam.sigma_range();
    let norm = Arc::new(Normalizer {
        gamma: chart.gamma.clone(),
        w: chart.w.clone(),
        reparam,
        delta,
        mu,
        fd_step: 1e-3 * (sig1 - sig0).abs().clamp(1e-3, 1.0),
    });
    let smid = 0.5 * (sig0 + sig1);
    let k = norm.scale_factor(smid)?;
    let u = norm.shift(smid)?;
    let t_range = (chart.t_range.0 * k - u, chart.t_range.1 * k - u);
    let normalized = RuledChart {
        gamma: Arc::new(NormGamma(norm.clone())),
        w: Arc::new(NormW(norm.clone())),
        s_range: (sig0, sig1),
        t_range,
    };
    Ok((normalized, norm))
}

/// Pointwise invariants of a normalized non-lightlike ruled chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSample {
    pub sigma: f64,
    /// Distribution parameter `(gamma', w, w')`.
    pub q: f64,
    pub dq: f64,
    /// Geodesic curvature `(w'', w', w)` of the ruling curve.
    pub kappa: f64,
    /// `F = <gamma', w>`.
    pub f_big: f64,
    pub gamma_dot_w: f64,
    /// Striction defect `<gamma', w'>`; zero after normalization.
    pub striction: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `a'`, so that `c = -a'` can be checked.
    pub da: f64,
}

/// A non-lightlike ruled chart brought to the form used by the
/// classification: `|<w,w>| = 1`, `|<w',w'>| = 1`, base curve the striction
/// curve.
#[derive(Clone)]
pub struct RuledNormalization {
    pub chart: RuledChart,
    pub delta: f64,
    pub mu: f64,
    norm: Arc<Normalizer>,
}

impl fmt::Debug for RuledNormalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuledNormalization")
            .field("chart", &self.chart)
            .field("delta", &self.delta)
            .field("mu", &self.mu)
            .finish()
    }
}

impl RuledNormalization {
    /// Original parameter corresponding to the normalized one.
    pub fn s_of(&self, sigma: f64) -> Result<f64> {
        self.norm.reparam.s_of(sigma)
    }

    pub fn sigma_of(&self, s: f64) -> f64 {
        self.norm.reparam.sigma(s)
    }

    pub fn sample(&self, sigma: f64) -> Result<NormSample> {
        let g = self.chart.gamma.jet(sigma)?;
        let w = self.chart.w.jet(sigma)?;
        let (d, m) = (self.delta, self.mu);
        let wxw1 = cross3(&w.p, &w.d1);
        let q = triple3(&g.d1, &w.p, &w.d1);
        let dq = triple3(&g.d2, &w.p, &w.d1) + triple3(&g.d1, &w.p, &w.d2);
        Ok(NormSample {
            sigma,
            q,
            dq,
            kappa: triple3(&w.d2, &w.d1, &w.p),
            f_big: g.d1.dot(&w.p),
            gamma_dot_w: g.p.dot(&w.p),
            striction: g.d1.dot(&w.d1),
            a: m * g.p.dot(&w.d1),
            b: -d * m * g.p.dot(&wxw1),
            c: d * g.p.dot(&w.p),
            da: m * (g.d1.dot(&w.d1) + g.p.dot(&w.d2)),
        })
    }

    pub fn samples(&self, n: usize) -> Result<Vec<NormSample>> {
        self.chart.s_grid(n).into_iter().map(|x| self.sample(x)).collect()
    }
}

fn require_class(chart: &RuledChart, expected: RulingClass) -> Result<()> {
    let found = ruling_class(chart, DEFAULT_CAUSAL_TOL)?;
    if found != expected {
        return Err(GeomError::ClassMismatch {
            expected: expected.label().into(),
            found: found.label().into(),
        });
    }
    Ok(())
}

/// Unitizes `w`, reparametrizes to `|<w',w'>| = 1` and moves the base curve
/// to the striction curve `gamma + u w`, `u = -<gamma',w'> / <w',w'>`.
pub fn normalize_nonlightlike(chart: &RuledChart) -> Result<RuledNormalization> {
    require_class(chart, RulingClass::NonLightlikeWNonLightlikeWp)?;
    let signs: Vec<f64> = chart
        .s_grid(DEFAULT_S_SAMPLES)
        .iter()
        .map(|&s| chart.w.jet(s).map(|j| j.p.norm_sq().signum()))
        .collect::<Result<_>>()?;
    let delta = signs[0];
    if signs.iter().any(|&x| x != delta) {
        return Err(GeomError::NonUnitizableRuling);
    }
    let (normalized, norm) = build_normalized(chart, Some(delta))?;
    Ok(RuledNormalization {
        chart: normalized,
        delta,
        mu: norm.mu,
        norm,
    })
}

/// Reparametrizes a lightlike ruling to `<w',w'> = 1` and shifts the base
/// curve by `-<gamma',w'> w` so that `<gamma',w'> = 0`.
pub fn normalize_lightlike(chart: &RuledChart) -> Result<RuledChart> {
    require_class(chart, RulingClass::LightlikeW)?;
    for s in chart.s_grid(DEFAULT_S_SAMPLES) {
        let j = chart.w.jet(s)?;
        if j.d1.norm_sq() <= DEFAULT_CAUSAL_TOL * j.d1.euclid_norm_sq().max(f64::MIN_POSITIVE) {
            return Err(GeomError::VanishingWPrime);
        }
    }
    Ok(build_normalized(chart, None)?.0)
}

/// Closed-form coefficients `A_0..A_4` from the non-lightlike
/// classification, evaluated on a normalized chart with `beta = -eps_region
/// eps_normal`.
pub fn thnli_coeffs(norm: &RuledNormalization, alpha: f64, beta: f64, sigma: f64) -> Result<[f64; 5]> {
    let g = norm.chart.gamma.jet(sigma)?;
    let w = norm.chart.w.jet(sigma)?;
    let smp = norm.sample(sigma)?;
    let (d, m) = (norm.delta, norm.mu);
    let (q, dq, f) = (smp.q, smp.dq, smp.f_big);
    let gg = g.p.norm_sq();
    let gw = g.p.dot(&w.p);
    let t_gwg = triple3(&g.d1, &w.p, &g.p);
    let t_wwg = triple3(&w.d1, &w.p, &g.p);
    let k = alpha * beta;
    Ok([
        q * f * gg + k * m * q * q * t_gwg,
        2.0 * f * q * gw + d * dq * gg + k * m * q * q * t_wwg,
        2.0 * d * dq * gw + d * q * f - k * d * m * t_gwg,
        dq - k * d * m * t_wwg,
        smp.kappa,
    ])
}

/// Closed-form coefficients `A_0, A_1` from the lightlike-ruling
/// classification; the chart must already be normalized.
pub fn thli_coeffs(chart: &RuledChart, alpha: f64, eps_region: f64, s: f64) -> Result<[f64; 2]> {
    chart.check_s(s)?;
    let (g, w) = chart.curves_at(s)?;
    if causal_class(&w.p, DEFAULT_CAUSAL_TOL) != CausalClass::Lightlike {
        return Err(GeomError::ClassMismatch {
            expected: RulingClass::LightlikeW.label().into(),
            found: "non-lightlike w".into(),
        });
    }
    let q = triple3(&g.d1, &w.p, &w.d1);
    let fw = g.d1.dot(&w.p);
    let ae = alpha * eps_region;
    Ok([
        2.0 * g.p.norm_sq() * q - ae * fw * triple3(&g.d1, &w.p, &g.p),
        4.0 * g.p.dot(&w.p) * q - ae * fw * triple3(&w.d1, &w.p, &g.p),
    ])
}

/// The two terms `<g,g>(w',w,g)` and `2<g,w>(g',w,g)` whose difference is
/// the lightlike-branch identity.
pub fn thli_identity_terms(chart: &RuledChart, s: f64) -> Result<(f64, f64)> {
    chart.check_s(s)?;
    let (g, w) = chart.curves_at(s)?;
    Ok((
        g.p.norm_sq() * triple3(&w.d1, &w.p, &g.p),
        2.0 * g.p.dot(&w.p) * triple3(&g.d1, &w.p, &g.p),
    ))
}

/// `<g,g>(w',w,g) - 2<g,w>(g',w,g)`.
pub fn thli_identity(chart: &RuledChart, s: f64) -> Result<f64> {
    let (a, b) = thli_identity_terms(chart, s)?;
    Ok(a - b)
}

/// Maximal relative size of the two cylinder triples `(g',w,g'')` and
/// `(g',w,g)` along the base curve.
pub fn cylinder_triples(chart: &RuledChart, samples: usize) -> Result<(f64, f64)> {
    let mut a: f64 = 0.0;
    let mut b: f64 = 0.0;
    for s in chart.s_grid(samples.max(2)) {
        let (g, w) = chart.curves_at(s)?;
        let n1 = g.d1.euclid_norm() * w.p.euclid_norm();
        let t1 = triple3(&g.d1, &w.p, &g.d2);
        let t2 = triple3(&g.d1, &w.p, &g.p);
        a = a.max(t1.abs() / (n1 * g.d2.euclid_norm()).max(n1 * 1e-300).max(f64::MIN_POSITIVE));
        b = b.max(t2.abs() / (n1 * g.p.euclid_norm()).max(f64::MIN_POSITIVE));
    }
    Ok((a, b))
}

/// Classification knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub causal_tol: f64,
    pub stationarity_tol: f64,
    pub s_samples: usize,
    pub t_samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            causal_tol: DEFAULT_CAUSAL_TOL,
            stationarity_tol: DEFAULT_STATIONARITY_TOL,
            s_samples: DEFAULT_S_SAMPLES,
            t_samples: 9,
        }
    }
}

/// Verdict of [`classify_ruled`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StationaryVerdict {
    Stationary { alpha: f64 },
    AnyAlpha,
    NotStationary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ruling_class: RulingClass,
    pub region: ConeRegion,
    pub eps_region: f64,
    pub eps_normal: f64,
    pub verdict: StationaryVerdict,
    /// Matched branch of the classification, e.g. `th-nli (1b)`.
    pub branch: String,
    pub fit: AlphaFit,
    pub notes: Vec<String>,
}

/// Measures the cone region shared by every grid point of the chart.
pub fn chart_region(chart: &RuledChart, s_samples: usize, t_samples: usize) -> Result<ConeRegion> {
    let mut regions = Vec::new();
    for u in chart.param_box().grid(&[s_samples.max(2), t_samples.max(2)]) {
        let x = ruled_jet(chart, u[0], u[1])?.x;
        let r = cone_region(&x, crate::surface::CONE_BAND * (1.0 + x.euclid_norm_sq()));
        if r == ConeRegion::OnCone {
            return Err(GeomError::ConeCrossing);
        }
        regions.push(r);
    }
    all_same(&regions, "cone region").map_err(|_| GeomError::ConeCrossing)
}

/// Full pipeline: ruling class, cone region, `alpha` elimination and
/// branch matching.
pub fn classify_ruled(chart: &RuledChart, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let class = ruling_class_sampled(chart, opts.causal_tol, opts.s_samples)?;
    let region = chart_region(chart, opts.s_samples, opts.t_samples)?;
    let eps_region = region.sign().unwrap_or(1.0);
    let polys: Vec<SplitPoly> = chart
        .s_grid(opts.s_samples)
        .iter()
        .map(|&s| ruled_poly_split(chart, s, eps_region))
        .collect::<Result<_>>()?;
    let eps_normal = polys[0].eps_normal;
    if polys.iter().any(|p| p.eps_normal != eps_normal) {
        return Err(GeomError::MixedClass("causal type of the surface".into()));
    }
    let fit = fit_alpha_poly(&polys, opts.stationarity_tol);
    let mut notes = Vec::new();
    let rel_tol = opts.stationarity_tol.sqrt().max(1e-6);
    let (verdict, branch) = match class {
        RulingClass::Cylindrical => {
            let (t1, t2) = cylinder_triples(chart, opts.s_samples)?;
            notes.push(format!("max (g',w,g'') = {t1:.3e}, max (g',w,g) = {t2:.3e}"));
            if t1 <= rel_tol && t2 <= rel_tol && matches!(fit, AlphaFit::AnyAlpha { .. }) {
                (StationaryVerdict::AnyAlpha, "cy: vector plane".to_string())
            } else {
                (StationaryVerdict::NotStationary, "cy".to_string())
            }
        }
        RulingClass::NonLightlikeWLightlikeWp => match fit {
            AlphaFit::AnyAlpha { .. } => (StationaryVerdict::AnyAlpha, "th-nli2: vector plane".into()),
            AlphaFit::NotStationary { .. } => (StationaryVerdict::NotStationary, "th-nli2".into()),
            AlphaFit::Stationary { alpha, .. } => {
                notes.push("non-planar stationary chart with lightlike w': outside the vector-plane conclusion".into());
                (StationaryVerdict::Stationary { alpha }, "th-nli2: non-planar".into())
            }
        },
        RulingClass::NonLightlikeWNonLightlikeWp => match fit {
            AlphaFit::AnyAlpha { .. } => (StationaryVerdict::AnyAlpha, "vector plane".into()),
            AlphaFit::NotStationary { .. } => (StationaryVerdict::NotStationary, "th-nli".into()),
            AlphaFit::Stationary { alpha, .. } => {
                let norm = normalize_nonlightlike(chart)?;
                let smp = norm.samples(9)?;
                let fmax = smp.iter().fold(0.0f64, |m, x| m.max(x.f_big.abs()));
                let qmax = smp.iter().fold(0.0f64, |m, x| m.max(x.q.abs()));
                let kmax = smp.iter().fold(0.0f64, |m, x| m.max(x.kappa.abs()));
                notes.push(format!(
                    "delta = {}, mu = {}, max|F| = {fmax:.3e}, max|kappa| = {kmax:.3e}",
                    norm.delta, norm.mu
                ));
                let b = if norm.mu > 0.0 {
                    if fmax <= rel_tol * qmax.max(1.0) {
                        "th-nli (1a)"
                    } else {
                        "th-nli (1b)"
                    }
                } else {
                    "th-nli (2)"
                };
                (StationaryVerdict::Stationary { alpha }, b.into())
            }
        },
        RulingClass::LightlikeW => match fit {
            AlphaFit::AnyAlpha { .. } => (StationaryVerdict::AnyAlpha, "vector plane".into()),
            AlphaFit::NotStationary { .. } => (StationaryVerdict::NotStationary, "th-li".into()),
            AlphaFit::Stationary { alpha, .. } => {
                let nc = normalize_lightlike(chart)?;
                let mut gw: f64 = 0.0;
                let mut gg: f64 = 0.0;
                let mut mag: f64 = 0.0;
                for s in nc.s_grid(9) {
                    let g = nc.gamma.jet(s)?;
                    let w = nc.w.jet(s)?;
                    gw = gw.max(g.p.dot(&w.p).abs());
                    gg = gg.max(g.p.norm_sq().abs());
                    mag = mag.max(g.p.euclid_norm() * w.p.euclid_norm().max(g.p.euclid_norm()));
                }
                let b = if gw <= rel_tol * mag {
                    "th-li (1)"
                } else if gg <= rel_tol * mag {
                    "th-li (2a)"
                } else {
                    "th-li (2b)"
                };
                (StationaryVerdict::Stationary { alpha }, b.into())
            }
        },
    };
    Ok(ClassificationReport {
        ruling_class: class,
        region,
        eps_region,
        eps_normal,
        verdict,
        branch,
        fit,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{constant_curve, jet3, line_curve, FnCurve};
    use crate::surface::{fit_alpha, mean_curvature};

    fn circle_w(domain: (f64, f64)) -> SharedCurve {
        FnCurve::shared(domain, |s| {
            jet3([s.cos(), s.sin(), 0.0], [-s.sin(), s.cos(), 0.0], [-s.cos(), -s.sin(), 0.0])
        })
    }

    fn thnli_1a(sign: f64) -> RuledChart {
        let g = FnCurve::shared((0.0, 1.0), move |s| {
            let e = (sign * s).exp();
            jet3([0.0, 0.0, e], [0.0, 0.0, sign * e], [0.0, 0.0, e])
        });
        RuledChart::new(g, circle_w((0.0, 1.0)), (0.0, 1.0), (-0.5, 0.5))
    }

    fn example2() -> RuledChart {
        let g = FnCurve::shared((0.9, 1.5), |s| {
            let th = (s / 2.0).tan();
            let sec2 = 1.0 + th * th;
            jet3([s.sin(), -s.cos(), th], [s.cos(), s.sin(), 0.5 * sec2], [-s.sin(), s.cos(), 0.5 * sec2 * th])
        });
        let w = FnCurve::shared((0.9, 1.5), |s| {
            jet3([s.cos(), s.sin(), 1.0], [-s.sin(), s.cos(), 0.0], [-s.cos(), -s.sin(), 0.0])
        });
        RuledChart::new(g, w, (0.9, 1.5), (-2.0, 0.0))
    }

    #[test]
    fn ruled_jet_examples() {
        let c = RuledChart::new(
            constant_curve(MVec::zeros(3), (0.0, 1.0)),
            constant_curve(MVec::xyz(1.0, 0.0, 0.0), (0.0, 1.0)),
            (0.0, 1.0),
            (-3.0, 3.0),
        );
        let j = ruled_jet(&c, 0.0, 2.0).unwrap();
        assert_eq!(j.x.as_slice(), &[2.0, 0.0, 0.0]);
        assert_eq!(j.xtt.euclid_norm(), 0.0);
        assert_eq!(j.xst.euclid_norm(), 0.0);
        let j = ruled_jet(&thnli_1a(1.0), 0.0, 1.0).unwrap();
        assert!(j.x.max_abs_diff(&MVec::xyz(1.0, 0.0, 1.0)) < 1e-15);
        assert!(matches!(ruled_jet(&c, 2.0, 0.0), Err(GeomError::Domain { .. })));
    }

    #[test]
    fn h1_matches_mean_curvature() {
        let c = thnli_1a(1.0);
        for &(s, t) in &[(0.2, 0.1), (0.7, -0.3)] {
            let j = ruled_jet(&c, s, t).unwrap();
            let ff = crate::surface::fundamental_forms(&j).unwrap();
            let w = ff.metric_det();
            let expect = ff.mean_curvature() * w * w.abs().sqrt() * ff.eps_normal;
            assert!((h1(&j) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn vandermonde_round_trip() {
        let nodes = probe_nodes((-1.0, 3.0));
        let p = |t: f64| 1.0 - 2.0 * t + 0.5 * t.powi(3) - 0.1 * t.powi(5);
        let vals: Vec<f64> = nodes.iter().map(|&t| p(t)).collect();
        let c = vandermonde_coeffs(&nodes, &vals).unwrap();
        let want = [1.0, -2.0, 0.0, 0.5, 0.0, -0.1];
        for (a, b) in c.iter().zip(want) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(matches!(
            vandermonde_coeffs(&[0.0, 0.0, 1.0], &[1.0, 1.0, 2.0]),
            Err(GeomError::DegenerateProbe(_))
        ));
    }

    #[test]
    fn poly_matches_direct_evaluation() {
        let c = thnli_1a(1.0);
        let sp = ruled_poly_split(&c, 0.4, 1.0).unwrap();
        let p = sp.combine(0.7);
        for &t in &[-0.45, 0.05, 0.33] {
            let direct = ruled_poly_direct(&c, 0.4, t, 0.7, 1.0, sp.eps_normal).unwrap();
            assert!((p.eval(t) - direct).abs() <= 1e-8 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn thnli_1a_is_stationary_with_fitted_alpha() {
        for sign in [1.0, -1.0] {
            let c = thnli_1a(sign).with_t_range((-0.3, 0.3));
            let rep = classify_ruled(&c, &ClassifyOptions::default()).unwrap();
            assert_eq!(rep.ruling_class, RulingClass::NonLightlikeWNonLightlikeWp);
            assert_eq!(rep.branch, "th-nli (1a)");
            let alpha = rep.fit.alpha().unwrap();
            assert!((alpha - rep.eps_region * rep.eps_normal).abs() < 1e-9, "{alpha}");
            let shifted = ruled_stationarity_poly(&c, 0.5, alpha + 0.5, rep.eps_region).unwrap();
            assert!(shifted.max_abs() >= 1e-2);
            // pointwise fit agrees
            let j = ruled_jet(&c, 0.3, 0.2).unwrap();
            assert!((fit_alpha(&j).unwrap() - alpha).abs() < 1e-9);
        }
    }

    #[test]
    fn ruling_classes() {
        let d = (0.0, 1.0);
        let g = constant_curve(MVec::zeros(3), d);
        let c = RuledChart::new(g.clone(), circle_w(d), d, (-1.0, 1.0));
        assert_eq!(ruling_class(&c, 1e-9).unwrap(), RulingClass::NonLightlikeWNonLightlikeWp);
        let w2 = FnCurve::shared(d, |s| jet3([1.0, -s, -s], [0.0, -1.0, -1.0], [0.0; 3]));
        let c = RuledChart::new(g.clone(), w2, d, (-1.0, 1.0));
        assert_eq!(ruling_class(&c, 1e-9).unwrap(), RulingClass::NonLightlikeWLightlikeWp);
        assert_eq!(ruling_class(&example2(), 1e-9).unwrap(), RulingClass::LightlikeW);
        let cyl = RuledChart::new(g, constant_curve(MVec::xyz(0.0, 0.0, 1.0), d), d, (-1.0, 1.0));
        assert_eq!(ruling_class(&cyl, 1e-9).unwrap(), RulingClass::Cylindrical);
        // w changes causal type: (1, 0, s) on [0, 2]
        let mixed = FnCurve::shared((0.0, 2.0), |s| jet3([1.0, 0.0, s], [0.0, 0.0, 1.0], [0.0; 3]));
        let c = RuledChart::new(constant_curve(MVec::zeros(3), (0.0, 2.0)), mixed, (0.0, 2.0), (0.0, 1.0));
        assert!(matches!(ruling_class(&c, 1e-9), Err(GeomError::MixedClass(_))));
    }

    #[test]
    fn normalization_of_reparametrized_1a() {
        // w(s) = 2 (cos 2s, sin 2s, 0), gamma(s) = (0, 0, e^{2s}) + 0.3 w: same
        // surface as 1a on s in [0, 0.5], not normalized.
        let g = FnCurve::shared((0.0, 0.5), |s| {
            let e = (2.0 * s).exp();
            let (c, sn) = ((2.0 * s).cos(), (2.0 * s).sin());
            jet3(
                [0.6 * c, 0.6 * sn, e],
                [-1.2 * sn, 1.2 * c, 2.0 * e],
                [-2.4 * c, -2.4 * sn, 4.0 * e],
            )
        });
        let w = FnCurve::shared((0.0, 0.5), |s| {
            let (c, sn) = ((2.0 * s).cos(), (2.0 * s).sin());
            jet3([2.0 * c, 2.0 * sn, 0.0], [-4.0 * sn, 4.0 * c, 0.0], [-8.0 * c, -8.0 * sn, 0.0])
        });
        let c = RuledChart::new(g, w, (0.0, 0.5), (-0.1, 0.1));
        let n = normalize_nonlightlike(&c).unwrap();
        assert_eq!((n.delta, n.mu), (1.0, 1.0));
        assert!((n.chart.s_range.1 - 1.0).abs() < 1e-12);
        for smp in n.samples(7).unwrap() {
            assert!(smp.striction.abs() < 1e-12);
            assert!(smp.kappa.abs() < 1e-12);
            assert!(smp.f_big.abs() < 1e-12);
            assert!((smp.b.abs() - smp.sigma.exp()).abs() < 1e-9, "{smp:?}");
            assert!((smp.c + smp.da).abs() < 1e-9);
        }
    }

    #[test]
    fn thnli_closed_form_vanishes_on_1a() {
        let c = thnli_1a(1.0).with_t_range((-0.3, 0.3));
        let rep = classify_ruled(&c, &ClassifyOptions::default()).unwrap();
        let alpha = rep.fit.alpha().unwrap();
        let beta = -rep.eps_region * rep.eps_normal;
        let n = normalize_nonlightlike(&c).unwrap();
        for s in n.chart.s_grid(5) {
            let a = thnli_coeffs(&n, alpha, beta, s).unwrap();
            assert!(a.iter().all(|x| x.abs() < 1e-8), "{a:?}");
        }
        let a = thnli_coeffs(&n, alpha + 1.0, beta, 0.5).unwrap();
        assert!(a.iter().any(|x| x.abs() > 1e-3));
    }

    #[test]
    fn lightlike_example_two() {
        let c = example2();
        for s in c.s_grid(9) {
            let a = thli_coeffs(&c, 4.0, -1.0, s).unwrap();
            assert!(a[0].abs() < 1e-12 && a[1].abs() < 1e-12, "{a:?}");
            assert!(thli_identity(&c, s).unwrap().abs() < 1e-12);
            let (x, y) = thli_identity_terms(&c, s).unwrap();
            assert!(x.abs() > 1e-3 && y.abs() > 1e-3);
            let gw = c.gamma.jet(s).unwrap().p.dot(&c.w.jet(s).unwrap().p);
            assert!((gw + (s / 2.0).tan()).abs() < 1e-14);
        }
        let rep = classify_ruled(&c, &ClassifyOptions::default()).unwrap();
        assert_eq!(rep.region, ConeRegion::CMinus);
        assert_eq!(rep.branch, "th-li (2b)");
        assert!((rep.fit.alpha().unwrap() - 4.0).abs() < 1e-9);
        // normalization leaves an already normalized chart alone
        let n = normalize_lightlike(&c).unwrap();
        let (a, b) = (n.gamma.jet(1.2).unwrap(), c.gamma.jet(1.2).unwrap());
        assert!(a.p.max_abs_diff(&b.p) < 1e-10 && a.d2.max_abs_diff(&b.d2) < 1e-7);
    }

    #[test]
    fn lightlike_reparametrization() {
        // w = (cos 2s, sin 2s, 1): <w',w'> = 4
        let d = (0.0, 0.5);
        let w = FnCurve::shared(d, |s| {
            let (c, sn) = ((2.0 * s).cos(), (2.0 * s).sin());
            jet3([c, sn, 1.0], [-2.0 * sn, 2.0 * c, 0.0], [-4.0 * c, -4.0 * sn, 0.0])
        });
        let g = line_curve(MVec::xyz(0.0, 0.0, 0.5), MVec::xyz(0.3, 0.1, 0.2), d);
        let c = RuledChart::new(g, w, d, (-0.2, 0.2));
        let n = normalize_lightlike(&c).unwrap();
        assert!((n.s_range.1 - 1.0).abs() < 1e-12);
        for s in n.s_grid(5) {
            let wj = n.w.jet(s).unwrap();
            let gj = n.gamma.jet(s).unwrap();
            assert!((wj.d1.norm_sq() - 1.0).abs() < 1e-12);
            assert!(gj.d1.dot(&wj.d1).abs() < 1e-10);
        }
    }

    #[test]
    fn cylinder_not_stationary() {
        let d = (0.0, 1.0);
        let g = circle_w(d);
        let c = RuledChart::new(g, constant_curve(MVec::xyz(0.0, 0.0, 1.0), d), d, (-0.5, 0.5));
        let rep = classify_ruled(&c, &ClassifyOptions::default()).unwrap();
        assert_eq!(rep.ruling_class, RulingClass::Cylindrical);
        assert_eq!(rep.verdict, StationaryVerdict::NotStationary);
        assert!(matches!(normalize_nonlightlike(&c), Err(GeomError::ClassMismatch { .. })));
    }

    #[test]
    fn vector_plane_any_alpha() {
        let d = (1.0, 2.0);
        let c = RuledChart::new(
            line_curve(MVec::zeros(3), MVec::xyz(1.0, 0.0, 0.0), d),
            constant_curve(MVec::xyz(0.0, 0.0, 1.0), d),
            d,
            (-0.5, 0.5),
        );
        for alpha in [0.0, 3.0, -7.0] {
            let p = ruled_stationarity_poly(&c, 1.5, alpha, -1.0).unwrap();
            assert!(p.max_abs() < 1e-12);
        }
        let rep = classify_ruled(&c, &ClassifyOptions::default()).unwrap();
        assert_eq!(rep.verdict, StationaryVerdict::AnyAlpha);
        assert_eq!(rep.branch, "cy: vector plane");
        let j = ruled_jet(&c, 1.5, 0.1).unwrap();
        assert_eq!(mean_curvature(&j).unwrap(), 0.0);
    }
}
