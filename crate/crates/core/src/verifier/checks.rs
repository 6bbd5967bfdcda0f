//! Targeted checks: cylinders, the maximum principle, the lightlike-`w'`
//! witness, per-family ruled invariants and numerical sanity of the jets.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{witness_chart, ClaimedAlpha, Family, WitnessParams};
use crate::error::{GeomError, Result};
use crate::minkowski::{
    cone_region, far_from_cone, inversion, inversion_differential, triple3, CausalClass, ConeRegion, MVec,
};
use crate::ruled::{
    classify_ruled, cylinder_triples, normalize_lightlike, normalize_nonlightlike, ruled_jet, ruled_poly_split,
    ruling_class, thli_coeffs, thli_identity_terms, thnli_coeffs, vandermonde_coeffs, ClassifyOptions, RuledChart,
    RulingClass, StationaryVerdict,
};
use crate::surface::{fit_alpha, mean_curvature, Chart, ParamBox, CONE_BAND};

use super::scan::{mean_std, DEFAULT_SEED};

/// Relative tolerance on the two cylinder triples.
pub const CYLINDER_TOL: f64 = 1e-6;

/// Domain magnifications used to separate complete surfaces from patches.
pub const EXPANSION_FACTORS: [f64; 3] = [4.0, 16.0, 64.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderReport {
    pub triple_gp_w_gpp: f64,
    pub triple_gp_w_g: f64,
    pub stationary: bool,
    /// Every sampled point lies in one plane through the origin.
    pub vector_plane: bool,
    /// Smallest over largest singular value of the sampled positions.
    pub planarity: f64,
    pub verdict: StationaryVerdict,
}

fn planarity(points: &[MVec]) -> f64 {
    let m = DMatrix::from_fn(points.len(), 3, |i, j| points[i].as_slice()[j]);
    let sv = m.singular_values();
    let max = sv.max();
    if max == 0.0 {
        0.0
    } else {
        sv.min() / max
    }
}

/// Stationarity of a cylinder `gamma(s) + t w` with constant `w`.
pub fn cylindrical_check(chart: &RuledChart) -> Result<CylinderReport> {
    let class = ruling_class(chart, crate::minkowski::DEFAULT_CAUSAL_TOL)?;
    if class != RulingClass::Cylindrical {
        return Err(GeomError::ClassMismatch {
            expected: RulingClass::Cylindrical.label().into(),
            found: class.label().into(),
        });
    }
    let (t1, t2) = cylinder_triples(chart, 33)?;
    let stationary = t1 <= CYLINDER_TOL && t2 <= CYLINDER_TOL;
    let pts: Vec<MVec> = chart
        .param_box()
        .grid(&[17, 5])
        .iter()
        .map(|u| ruled_jet(chart, u[0], u[1]).map(|j| j.x))
        .collect::<Result<_>>()?;
    let planar = planarity(&pts);
    let vector_plane = planar <= CYLINDER_TOL;
    Ok(CylinderReport {
        triple_gp_w_gpp: t1,
        triple_gp_w_g: t2,
        stationary,
        vector_plane,
        planarity: planar,
        verdict: if stationary && vector_plane {
            StationaryVerdict::AnyAlpha
        } else {
            StationaryVerdict::NotStationary
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxPrincipleStatus {
    /// Not a spacelike family in `C+` with a single claimed `alpha`.
    NotApplicable,
    /// Never far from the cone: the bound is satisfied vacuously.
    Vacuous,
    /// Far from the cone on the sampled patch only; the statement concerns
    /// complete surfaces, so the patch is excluded.
    PatchExcluded,
    /// Far from the cone on every magnification and `alpha > n`.
    Confirmed,
    /// Far from the cone on every magnification but `alpha <= n`.
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxPrincipleEntry {
    pub family: String,
    pub n: usize,
    pub claimed_alpha: ClaimedAlpha,
    pub region: ConeRegion,
    pub causal: CausalClass,
    /// Smallest `delta` of the grid for which the base patch is far.
    pub far_delta: Option<f64>,
    /// Magnifications on which the surface stays far (for `far_delta`).
    pub far_factors: Vec<f64>,
    pub status: MaxPrincipleStatus,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxPrincipleReport {
    pub delta_grid: Vec<f64>,
    pub entries: Vec<MaxPrincipleEntry>,
    pub violations: usize,
}

fn sample_points(chart: &dyn Chart, domain: &ParamBox, grid: &[usize]) -> Vec<MVec> {
    domain
        .grid(grid)
        .iter()
        .filter_map(|u| chart.position(u).ok())
        .filter(|x| x.is_finite())
        .collect()
}

/// Evaluates the "far from the cone implies `alpha > n`" bound on every
/// spacelike `C+` family.
pub fn max_principle_scan(families: &[Family], deltas: &[f64]) -> MaxPrincipleReport {
    let mut entries = Vec::new();
    for f in families {
        let spec = &f.spec;
        let mut e = MaxPrincipleEntry {
            family: spec.id.clone(),
            n: spec.n,
            claimed_alpha: spec.claimed_alpha,
            region: spec.claimed_region,
            causal: spec.claimed_causal,
            far_delta: None,
            far_factors: Vec::new(),
            status: MaxPrincipleStatus::NotApplicable,
            notes: Vec::new(),
        };
        let alpha = match spec.claimed_alpha {
            ClaimedAlpha::Value(a)
                if spec.claimed_region == ConeRegion::CPlus && spec.claimed_causal == CausalClass::Spacelike =>
            {
                a
            }
            _ => {
                entries.push(e);
                continue;
            }
        };
        let grid: Vec<usize> = spec.grid.iter().map(|&g| g.min(33)).collect();
        let base = sample_points(f.chart.as_ref(), &spec.domain, &grid);
        e.far_delta = deltas.iter().copied().find(|&d| far_from_cone(&base, d));
        e.status = match e.far_delta {
            None => MaxPrincipleStatus::Vacuous,
            Some(d) => {
                for k in EXPANSION_FACTORS {
                    let pts = sample_points(f.chart.as_ref(), &spec.domain.expanded(k), &grid);
                    if pts.len() == base.len() && far_from_cone(&pts, d) {
                        e.far_factors.push(k);
                    }
                }
                if e.far_factors.len() == EXPANSION_FACTORS.len() {
                    if alpha > spec.n as f64 {
                        MaxPrincipleStatus::Confirmed
                    } else {
                        MaxPrincipleStatus::Violated
                    }
                } else {
                    e.notes.push(
                        "far only on the sampled patch; the bound concerns complete surfaces".into(),
                    );
                    MaxPrincipleStatus::PatchExcluded
                }
            }
        };
        entries.push(e);
    }
    let violations = entries.iter().filter(|e| e.status == MaxPrincipleStatus::Violated).count();
    MaxPrincipleReport {
        delta_grid: deltas.to_vec(),
        entries,
        violations,
    }
}

/// A stationary chart found among the lightlike-`w'` normal forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCounterexample {
    pub params: WitnessParams,
    pub verdict: StationaryVerdict,
    pub branch: String,
    pub fitted_alpha_mean: f64,
    pub fitted_alpha_std: f64,
    pub region: ConeRegion,
    pub eps_normal: f64,
    /// `(gamma', w, w')` at the centre; nonzero means not developable.
    pub distribution_triple: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub params: WitnessParams,
    /// Leading coefficients in `s` of `A_0` and `A_1` as displayed.
    pub displayed_lead_a0: f64,
    pub displayed_lead_a1: f64,
    /// Same, recomputed symbolically.
    pub recomputed_lead_a0: f64,
    pub recomputed_lead_a1: f64,
    /// Same, fitted from sampled values of `A_0(s)` and `A_1(s)`.
    pub measured_lead_a0: f64,
    pub measured_lead_a1: f64,
    pub measured_vs_recomputed: f64,
    pub measured_vs_displayed: f64,
    /// Both displayed leads vanish at this `k` (`k != 0`).
    pub displayed_simultaneous_zero: bool,
    pub recomputed_simultaneous_zero: bool,
    pub verdict: Option<StationaryVerdict>,
    pub branch: Option<String>,
    pub classify_error: Option<String>,
    pub counterexamples: Vec<WitnessCounterexample>,
    pub notes: Vec<String>,
}

pub fn displayed_leads(m: f64, k: f64) -> (f64, f64) {
    (
        m.powi(4) * k / 6.0 * (8.0 * k * k + 10.0 * k - 1.0),
        -(m.powi(3) * k / 3.0) * (7.0 + 10.0 * k),
    )
}

pub fn recomputed_leads(m: f64, k: f64) -> (f64, f64) {
    (
        m.powi(4) * k / 6.0 * (2.0 * k - 1.0) * (4.0 * k - 1.0),
        -5.0 / 3.0 * k * m.powi(3) * (2.0 * k - 1.0),
    )
}

/// `A_0(s)` and `A_1(s)` of the lightlike-`w'` normal form.
fn witness_a01(p: &WitnessParams, chart: &RuledChart, s: f64) -> Result<(f64, f64)> {
    let g = chart.gamma.jet(s)?;
    let w = chart.w.jet(s)?;
    let k = p.k;
    let gwg = triple3(&g.d1, &w.p, &g.p);
    let gwgg = triple3(&g.d1, &w.p, &g.d2);
    let gpgp = g.d1.norm_sq();
    let a0 = g.p.norm_sq() * gwgg + k * gpgp * gwg;
    let a1 = 2.0 * g.p.dot(&w.p) * gwgg - 2.0 * k * p.m * gwg + k * gpgp * triple3(&w.d1, &w.p, &g.p);
    Ok((a0, a1))
}

/// Polynomial coefficients in `s` of `A_0` and `A_1`, from eight nodes.
pub fn witness_coeff_polys(p: &WitnessParams) -> Result<(Vec<f64>, Vec<f64>)> {
    let chart = witness_chart(p, (-1.0, 1.0), (-0.3, 0.3));
    let nodes: Vec<f64> = (0..8)
        .map(|i| (std::f64::consts::PI * (2 * i + 1) as f64 / 16.0).cos())
        .collect();
    let vals: Vec<(f64, f64)> = nodes.iter().map(|&s| witness_a01(p, &chart, s)).collect::<Result<_>>()?;
    let v0: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let v1: Vec<f64> = vals.iter().map(|v| v.1).collect();
    Ok((vandermonde_coeffs(&nodes, &v0)?, vandermonde_coeffs(&nodes, &v1)?))
}

fn rel_err(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

/// Pointwise `alpha` statistics on a ruled chart's grid.
pub fn ruled_alpha_stats(chart: &RuledChart, grid: &[usize]) -> Result<(f64, f64)> {
    let mut alphas = Vec::new();
    for u in chart.param_box().grid(grid) {
        if let Ok(a) = fit_alpha(&ruled_jet(chart, u[0], u[1])?) {
            alphas.push(a);
        }
    }
    mean_std(&alphas).ok_or(GeomError::IndeterminateAlpha { value: 0.0 })
}

/// Parameters with `k = 1/2`, `b = m/2 - c`, `a = 2d`: every coefficient
/// vanishes and the chart is stationary.
pub fn half_k_witness(m: f64, c: f64, d: f64) -> WitnessParams {
    WitnessParams {
        m,
        k: 0.5,
        a: 2.0 * d,
        b: 0.5 * m - c,
        c,
        d,
    }
}

fn counterexample(p: WitnessParams) -> Result<WitnessCounterexample> {
    let chart = witness_chart(&p, (0.5, 1.5), (-0.3, 0.3));
    let rep = classify_ruled(&chart, &ClassifyOptions::default())?;
    let (mean, std) = ruled_alpha_stats(&chart, &[17, 7])?;
    let g = chart.gamma.jet(1.0)?;
    let w = chart.w.jet(1.0)?;
    Ok(WitnessCounterexample {
        params: p,
        verdict: rep.verdict,
        branch: rep.branch,
        fitted_alpha_mean: mean,
        fitted_alpha_std: std,
        region: rep.region,
        eps_normal: rep.eps_normal,
        distribution_triple: triple3(&g.d1, &w.p, &w.d1),
    })
}

/// Checks the leading-coefficient argument for the lightlike-`w'` normal
/// form at the trial value `k` of `alpha beta`, and classifies the chart.
pub fn thnli2_witness_check(p: &WitnessParams) -> Result<WitnessReport> {
    if p.m == 0.0 {
        let j = ruled_jet(&witness_chart(p, (0.5, 1.5), (-0.3, 0.3)), 1.0, 0.1)?;
        let (e, f, g) = (j.xs.dot(&j.xs), j.xs.dot(&j.xt), j.xt.dot(&j.xt));
        return Err(GeomError::DegenerateMetric { value: e * g - f * f });
    }
    let (d0, d1) = displayed_leads(p.m, p.k);
    let (r0, r1) = recomputed_leads(p.m, p.k);
    let (c0, c1) = witness_coeff_polys(p)?;
    let (m0, m1) = (c0[5], c1[3]);
    // natural size of the leads, which are homogeneous in m
    let floor = p.m.abs().powi(3).max(p.m.powi(4));
    let ztol = 1e-12;
    let mut notes = Vec::new();
    let higher = c0[6..].iter().chain(&c1[4..]).fold(0.0f64, |a, x| a.max(x.abs()));
    notes.push(format!("largest coefficient above the leading degree: {higher:.3e}"));
    let chart = witness_chart(p, (0.5, 1.5), (-0.3, 0.3));
    let (verdict, branch, classify_error) = match classify_ruled(&chart, &ClassifyOptions::default()) {
        Ok(r) => (Some(r.verdict), Some(r.branch), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    let mut counterexamples = Vec::new();
    for (m, c, d) in [(1.0, 1.0, 0.0), (1.0, 0.5, 0.3)] {
        match counterexample(half_k_witness(m, c, d)) {
            Ok(cx) => counterexamples.push(cx),
            Err(e) => notes.push(format!("k = 1/2 chart (m={m}, c={c}, d={d}) not evaluated: {e}")),
        }
    }
    if counterexamples
        .iter()
        .any(|c| matches!(c.verdict, StationaryVerdict::Stationary { .. }))
    {
        notes.push(
            "recomputed leads vanish together at k = 1/2; with b = m/2 - c and a = 2d the chart is stationary and not planar"
                .into(),
        );
    }
    Ok(WitnessReport {
        params: *p,
        displayed_lead_a0: d0,
        displayed_lead_a1: d1,
        recomputed_lead_a0: r0,
        recomputed_lead_a1: r1,
        measured_lead_a0: m0,
        measured_lead_a1: m1,
        measured_vs_recomputed: rel_err(m0, r0, floor).max(rel_err(m1, r1, floor)),
        measured_vs_displayed: rel_err(m0, d0, floor).max(rel_err(m1, d1, floor)),
        displayed_simultaneous_zero: p.k != 0.0 && d0.abs() <= ztol && d1.abs() <= ztol,
        recomputed_simultaneous_zero: p.k != 0.0 && r0.abs() <= ztol && r1.abs() <= ztol,
        verdict,
        branch,
        classify_error,
        counterexamples,
        notes,
    })
}

/// Invariants of a ruled catalog family at its claimed `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuledFamilyReport {
    pub family: String,
    pub ruling_class: RulingClass,
    pub claimed_alpha: ClaimedAlpha,
    pub fitted_alpha_mean: f64,
    pub fitted_alpha_std: f64,
    /// Largest scale-weighted coefficient of the cleared polynomial at the
    /// fitted `alpha`.
    pub max_cleared_coeff: f64,
    /// Largest closed-form classification coefficient at the claimed `alpha`.
    pub max_closed_form_coeff: Option<f64>,
    /// Largest `|(w'', w', w)|` after normalization.
    pub max_geodesic_curvature: Option<f64>,
    /// Largest relative defect of the lightlike-ruling identity.
    pub max_identity_defect: Option<f64>,
    pub branch: String,
}

pub fn ruled_family_check(family: &Family) -> Result<RuledFamilyReport> {
    let chart = family
        .ruled
        .as_ref()
        .ok_or_else(|| GeomError::InvalidParameter(format!("{} is not ruled", family.spec.id)))?;
    let spec = &family.spec;
    let grid: Vec<usize> = spec.grid.iter().map(|&g| g.min(33)).collect();
    let (mean, std) = ruled_alpha_stats(chart, &grid)?;
    let eps_region = spec.claimed_region.sign().unwrap_or(1.0);
    let mut max_cleared: f64 = 0.0;
    let mut eps_normal = -1.0;
    for s in chart.s_grid(grid[0]) {
        let sp = ruled_poly_split(chart, s, eps_region)?;
        eps_normal = sp.eps_normal;
        let (a, b) = sp.weighted();
        for (x, y) in a.iter().zip(&b) {
            max_cleared = max_cleared.max((x - mean * y).abs());
        }
    }
    let class = ruling_class(chart, crate::minkowski::DEFAULT_CAUSAL_TOL)?;
    let claimed = spec.claimed_alpha.value().unwrap_or(mean);
    let (mut closed, mut kappa, mut ident) = (None, None, None);
    match class {
        RulingClass::NonLightlikeWNonLightlikeWp => {
            let norm = normalize_nonlightlike(chart)?;
            let beta = -eps_region * eps_normal;
            let (mut cmax, mut kmax): (f64, f64) = (0.0, 0.0);
            for sig in norm.chart.s_grid(17) {
                let c = thnli_coeffs(&norm, claimed, beta, sig)?;
                cmax = c.iter().fold(cmax, |m, x| m.max(x.abs()));
                kmax = kmax.max(c[4].abs());
            }
            closed = Some(cmax);
            kappa = Some(kmax);
        }
        RulingClass::LightlikeW => {
            let nc = normalize_lightlike(chart)?;
            let (mut cmax, mut imax): (f64, f64) = (0.0, 0.0);
            for s in nc.s_grid(17) {
                let c = thli_coeffs(&nc, claimed, eps_region, s)?;
                cmax = c.iter().fold(cmax, |m, x| m.max(x.abs()));
                let (a, b) = thli_identity_terms(&nc, s)?;
                imax = imax.max((a - b).abs() / a.abs().max(b.abs()).max(1.0));
            }
            closed = Some(cmax);
            ident = Some(imax);
        }
        _ => {}
    }
    let branch = classify_ruled(chart, &ClassifyOptions::default())
        .map(|r| r.branch)
        .unwrap_or_else(|e| e.to_string());
    Ok(RuledFamilyReport {
        family: spec.id.clone(),
        ruling_class: class,
        claimed_alpha: spec.claimed_alpha,
        fitted_alpha_mean: mean,
        fitted_alpha_std: std,
        max_cleared_coeff: max_cleared,
        max_closed_form_coeff: closed,
        max_geodesic_curvature: kappa,
        max_identity_defect: ident,
        branch,
    })
}

/// Errors of finite-difference mean curvature at two steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdConvergence {
    pub family: String,
    pub h: f64,
    pub error_h: f64,
    pub error_half_h: f64,
    pub ratio: f64,
}

/// Compares central-difference and analytic `H` on the inner half of the
/// family's domain at steps `h` and `h/2`.
pub fn fd_convergence(family: &Family, h: f64) -> Result<FdConvergence> {
    let chart = family.chart.as_ref();
    let dom = &family.spec.domain;
    if dom.dim() != 2 {
        return Err(GeomError::WrongDimension {
            expected: 2,
            got: dom.dim(),
        });
    }
    let inner = dom.expanded(0.5);
    let pos = |s: f64, t: f64| chart.position(&[s, t]).unwrap_or_else(|_| MVec::xyz(f64::NAN, 0.0, 0.0));
    let mut err = [0.0f64; 2];
    for u in inner.grid(&[7, 7]) {
        let exact = mean_curvature(&chart.jet2(u[0], u[1])?)?;
        for (i, step) in [h, 0.5 * h].into_iter().enumerate() {
            let j = crate::surface::jets_from_position(pos, u[0], u[1], step)?;
            err[i] = err[i].max((mean_curvature(&j)? - exact).abs());
        }
    }
    Ok(FdConvergence {
        family: family.spec.id.clone(),
        h,
        error_h: err[0],
        error_half_h: err[1],
        ratio: err[0] / err[1],
    })
}

/// Sampled accuracy of the inversion identities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InversionSelfCheck {
    pub samples: usize,
    pub seed: u64,
    /// `max |phi(phi(p)) - p| / |p|`.
    pub involution_error: f64,
    /// Largest relative gap between `<dphi v, dphi v> / <v,v>` from central
    /// differences and `1 / <p,p>^2`.
    pub conformal_error: f64,
    /// Largest relative gap between `dphi v` and its central difference.
    pub differential_error: f64,
}

pub fn inversion_self_check(samples: usize, seed: Option<u64>) -> Result<InversionSelfCheck> {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut inv, mut conf, mut diff): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut done = 0;
    while done < samples {
        let p = MVec::xyz(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let v = MVec::xyz(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let pp = p.norm_sq();
        let vv = v.norm_sq();
        if cone_region(&p, 0.1 * p.euclid_norm_sq()) == ConeRegion::OnCone || vv.abs() < 0.1 * v.euclid_norm_sq() {
            continue;
        }
        if pp.abs() <= CONE_BAND {
            continue;
        }
        done += 1;
        let back = inversion(&inversion(&p)?)?;
        inv = inv.max(back.max_abs_diff(&p) / p.euclid_norm());
        let h = 1e-6;
        let fd = (inversion(&(p + v.scale(h)))? - inversion(&(p - v.scale(h)))?).scale(0.5 / h);
        let ex = inversion_differential(&p, &v)?;
        diff = diff.max(fd.max_abs_diff(&ex) / ex.euclid_norm());
        let factor = fd.norm_sq() / vv;
        let want = 1.0 / (pp * pp);
        conf = conf.max((factor - want).abs() / want);
    }
    Ok(InversionSelfCheck {
        samples,
        seed,
        involution_error: inv,
        conformal_error: conf,
        differential_error: diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_ids, family, make_circular_cylinder};
    use crate::curve::{constant_curve, line_curve};

    #[test]
    fn cylinders() {
        let c = make_circular_cylinder().unwrap();
        let r = cylindrical_check(c.ruled.as_ref().unwrap()).unwrap();
        assert!(!r.stationary && r.triple_gp_w_gpp > 1e-3);
        let d = (0.0, 1.0);
        let plane = RuledChart::new(
            line_curve(MVec::zeros(3), MVec::xyz(1.0, 0.0, 0.0), d),
            constant_curve(MVec::xyz(0.0, 0.0, 1.0), d),
            d,
            (-1.0, 1.0),
        );
        let r = cylindrical_check(&plane).unwrap();
        assert!(r.stationary && r.vector_plane);
        let cc = 0.7;
        let light = RuledChart::new(
            line_curve(MVec::zeros(3), MVec::xyz(cc, 1.0, -cc), d),
            constant_curve(MVec::xyz(1.0, 0.0, 1.0), d),
            d,
            (-1.0, 1.0),
        );
        let r = cylindrical_check(&light).unwrap();
        assert!(r.stationary && r.vector_plane, "{r:?}");
        let hel = family("helicoid-like").unwrap();
        assert!(matches!(
            cylindrical_check(hel.ruled.as_ref().unwrap()),
            Err(GeomError::ClassMismatch { .. })
        ));
    }

    #[test]
    fn max_principle() {
        let fams: Vec<Family> = catalog_ids().iter().map(|id| family(id).unwrap()).collect();
        let r = max_principle_scan(&fams, &[0.1, 0.5, 1.0]);
        assert_eq!(r.violations, 0, "{r:#?}");
        let get = |id: &str| r.entries.iter().find(|e| e.family.starts_with(id)).unwrap().status;
        assert_eq!(get("pr1-2a?center=origin&n=2"), MaxPrincipleStatus::PatchExcluded);
        assert_eq!(get("pr1-2b"), MaxPrincipleStatus::NotApplicable);
        assert_eq!(get("pr1-2a?center=shifted"), MaxPrincipleStatus::Confirmed);
    }

    #[test]
    fn witness_leads() {
        for k in [-0.7, 0.3, 0.5, 2.0] {
            let p = WitnessParams {
                m: 1.3,
                k,
                a: 0.2,
                b: -0.1,
                c: 0.8,
                d: 0.4,
            };
            let r = thnli2_witness_check(&p).unwrap();
            assert!(r.measured_vs_recomputed < 1e-8, "{r:#?}");
        }
        let p = WitnessParams {
            m: 1.0,
            k: -0.7,
            a: 0.0,
            b: 0.0,
            c: 1.0,
            d: 0.0,
        };
        let r = thnli2_witness_check(&p).unwrap();
        assert!((r.displayed_lead_a0 - (-7.0 / 60.0) * (8.0 * 0.49 - 7.0 - 1.0)).abs() < 1e-12);
        assert!(!r.displayed_simultaneous_zero);
        assert!(r.measured_vs_displayed > 1e-2);
        let zero_m = WitnessParams { m: 0.0, ..p };
        assert!(matches!(thnli2_witness_check(&zero_m), Err(GeomError::DegenerateMetric { .. })));
    }

    #[test]
    fn half_k_counterexample() {
        let p = WitnessParams {
            m: 1.0,
            k: 0.5,
            a: 0.0,
            b: 0.0,
            c: 1.0,
            d: 0.0,
        };
        let r = thnli2_witness_check(&p).unwrap();
        assert_eq!(r.verdict, Some(StationaryVerdict::NotStationary));
        assert!(r.recomputed_simultaneous_zero);
        assert_eq!(r.counterexamples.len(), 2);
        for c in &r.counterexamples {
            assert!((c.fitted_alpha_mean + 0.5).abs() < 1e-9 && c.fitted_alpha_std < 1e-9, "{c:?}");
            assert!(matches!(c.verdict, StationaryVerdict::Stationary { alpha } if (alpha + 0.5).abs() < 1e-6));
            assert!(c.distribution_triple.abs() > 0.1);
        }
    }

    #[test]
    fn ruled_families() {
        for id in ["thnli-1a?sign=1", "thnli-1b?c1=1&c2=0", "thnli-2?c1=0&c2=1", "thli-1", "thli-2b?side=minus"] {
            let f = family(id).unwrap();
            let r = ruled_family_check(&f).unwrap();
            let want = r.claimed_alpha.value().unwrap();
            assert!((r.fitted_alpha_mean - want).abs() < 1e-6 && r.fitted_alpha_std < 1e-6, "{r:#?}");
            assert!(r.max_cleared_coeff < 1e-8, "{r:#?}");
            if let Some(k) = r.max_geodesic_curvature {
                assert!(k < 1e-9, "{r:#?}");
            }
        }
    }

    #[test]
    fn fd_order_two() {
        for id in ["pr1-2a?n=2&r=1", "pr1-3a?n=2&r=1", "thnli-1b?c1=1&c2=0"] {
            let r = fd_convergence(&family(id).unwrap(), 0.01).unwrap();
            assert!((3.6..=4.4).contains(&r.ratio), "{r:?}");
        }
    }

    #[test]
    fn inversion_identities() {
        let r = inversion_self_check(200, None).unwrap();
        assert!(r.involution_error < 1e-10 && r.conformal_error < 1e-6, "{r:?}");
    }
}
