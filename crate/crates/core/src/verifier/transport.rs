//! Pushing charts through the inversion `phi(p) = p / <p,p>` and comparing
//! the measured image geometry with the transport claims.

use serde::{Deserialize, Serialize};

use crate::catalog::{ClaimedAlpha, Family};
use crate::error::{GeomError, Result};
use crate::minkowski::{cone_region, inversion, inversion_differential, ConeRegion, MVec};
use crate::surface::{
    fundamental_forms, near_cone, point_geometry, Chart, HyperJet, ParamBox, PointGeometry, CONE_BAND,
};

use super::scan::mean_std;

/// Step of the central differences that produce image second derivatives.
pub const TRANSPORT_FD_STEP: f64 = 1e-5;

/// Discrepancies above this are flagged as a failed claim.
pub const DISCREPANCY_FLAG_TOL: f64 = 1e-6;

/// Agreement threshold between a predicted and a fitted `alpha`.
pub const ALPHA_MATCH_TOL: f64 = 1e-6;

/// Image jet: exact first derivatives, second derivatives by central
/// differences of the pushed-forward first derivatives.
pub fn push_jet(chart: &dyn Chart, u: &[f64], h: f64) -> Result<HyperJet> {
    let j = chart.hyper_jet(u)?;
    let push = |jet: &HyperJet| -> Result<Vec<MVec>> {
        jet.d1.iter().map(|v| inversion_differential(&jet.x, v)).collect()
    };
    let d1 = push(&j)?;
    let n = u.len();
    let mut cols: Vec<Vec<MVec>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut up = u.to_vec();
        let mut dn = u.to_vec();
        up[k] += h;
        dn[k] -= h;
        let pu = push(&chart.hyper_jet(&up)?)?;
        let pd = push(&chart.hyper_jet(&dn)?)?;
        cols.push(pu.iter().zip(&pd).map(|(a, b)| (*a - *b) * (0.5 / h)).collect());
    }
    let d2 = (0..n)
        .map(|i| (0..n).map(|k| (cols[k][i] + cols[i][k]) * 0.5).collect())
        .collect();
    Ok(HyperJet {
        x: inversion(&j.x)?,
        d1,
        d2,
    })
}

/// Transport predictions for the image `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportPredictions {
    /// As stated: `-(2n + alpha)` on C+, `2n - alpha` on C-.
    pub stated: f64,
    /// Region labels exchanged: `2n - alpha` on C+, `-(2n + alpha)` on C-.
    pub flipped: f64,
    /// `2n beta - alpha` with `beta = -eps_region eps_normal`.
    pub causal: f64,
}

impl TransportPredictions {
    pub fn new(n: usize, alpha: f64, eps_region: f64, eps_normal: f64) -> Self {
        let two_n = 2.0 * n as f64;
        let (plus, minus) = (-(two_n + alpha), two_n - alpha);
        let (stated, flipped) = if eps_region > 0.0 { (plus, minus) } else { (minus, plus) };
        Self {
            stated,
            flipped,
            causal: two_n * (-eps_region * eps_normal) - alpha,
        }
    }
}

/// Identification of the image with a known quadric
/// `<y - center, y - center> = level`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageMatch {
    pub catalog_id: String,
    pub center: MVec,
    pub level: f64,
    pub claimed_alpha: f64,
    /// Largest distance from an image sample to the quadric.
    pub forward_distance: f64,
    /// Largest distance from quadric samples above the image footprint,
    /// pulled back by `phi`, to the source surface.
    pub reverse_distance: f64,
    pub hausdorff_bound: f64,
    pub alpha_matches: bool,
}

/// Expected image of a catalog family.
pub struct ExpectedImage {
    pub catalog_id: String,
    pub center: MVec,
    pub level: f64,
    /// Coordinate solved for when sampling the quadric.
    pub height: usize,
    pub claimed_alpha: f64,
    /// Distance from a point to the source surface.
    pub source_distance: Box<dyn Fn(&MVec) -> f64 + Send + Sync>,
}

/// Measured image geometry and its comparison with every transport claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportReport {
    pub family: String,
    pub n: usize,
    pub grid: Vec<usize>,
    pub samples: usize,
    pub source_region: ConeRegion,
    pub source_eps_normal: f64,
    pub source_alpha: f64,
    pub image_region: ConeRegion,
    pub image_eps_normal: f64,
    pub fitted_alpha_phi_mean: f64,
    pub fitted_alpha_phi_std: f64,
    pub predicted: TransportPredictions,
    /// Names of the predictions that agree with the fit.
    pub matching_predictions: Vec<String>,
    /// Per-point `|H_phi - (H/P^2 + 2nh/P^4)|`, minimised over the image
    /// orientation.
    pub hv_discrepancy: Vec<f64>,
    pub hv_discrepancy_max: f64,
    pub hv_flag: bool,
    /// Per-point `|(k_i)_phi - (P k_i + 2h)|` over both orientations, for
    /// surfaces with real principal curvatures.
    pub remark_discrepancy: Vec<f64>,
    pub remark_discrepancy_max: Option<f64>,
    pub remark_flag: bool,
    /// Largest deviation, relative to `1 + |prediction|`, from the relations
    /// measured to hold:
    /// `H_phi = P H + 2 n h eps_normal` and `(k_i)_phi = P k_i + 2 h eps_normal`,
    /// with image normal `P dphi(N)`.
    pub derived_hv_max: f64,
    pub derived_remark_max: Option<f64>,
    /// Thinned list of image points.
    pub image_samples: Vec<MVec>,
    pub image_match: Option<ImageMatch>,
    pub notes: Vec<String>,
}

struct PointTransport {
    src: PointGeometry,
    img: PointGeometry,
    pushed_normal_sign: f64,
    kappa: Option<[f64; 2]>,
    kappa_img: Option<[f64; 2]>,
}

fn transport_point(chart: &dyn Chart, u: &[f64]) -> Result<PointTransport> {
    let j = chart.hyper_jet(u)?;
    if near_cone(&j.x) {
        return Err(GeomError::OnCone { value: j.x.norm_sq() });
    }
    let ij = push_jet(chart, u, TRANSPORT_FD_STEP)?;
    if near_cone(&ij.x) {
        return Err(GeomError::OnCone { value: ij.x.norm_sq() });
    }
    let src = point_geometry(&j)?;
    let img = point_geometry(&ij)?;
    // P dphi is a Lorentz reflection; it carries N to +-N_phi
    let pushed = inversion_differential(&src.x, &src.normal)? * src.x.norm_sq();
    let pushed_normal_sign = pushed.dot(&img.normal).signum() * img.eps_normal;
    let (kappa, kappa_img) = match (j.to_jet2(), ij.to_jet2()) {
        (Some(a), Some(b)) => (
            fundamental_forms(&a)?.principal_curvatures(),
            fundamental_forms(&b)?.principal_curvatures(),
        ),
        _ => (None, None),
    };
    Ok(PointTransport {
        src,
        img,
        pushed_normal_sign,
        kappa,
        kappa_img,
    })
}

/// Smallest distance between two unordered pairs.
fn pair_gap(a: [f64; 2], b: [f64; 2]) -> f64 {
    let d1 = (a[0] - b[0]).abs().max((a[1] - b[1]).abs());
    let d2 = (a[0] - b[1]).abs().max((a[1] - b[0]).abs());
    d1.min(d2)
}

fn neg(k: [f64; 2]) -> [f64; 2] {
    [-k[0], -k[1]]
}

fn uniform_sign(xs: impl Iterator<Item = f64>, what: &str) -> Result<f64> {
    let v: Vec<f64> = xs.collect();
    match v.first() {
        Some(&s) if v.iter().all(|&x| x == s) => Ok(s),
        Some(_) => Err(GeomError::MixedClass(what.to_string())),
        None => Err(GeomError::InvalidParameter("empty grid".into())),
    }
}

fn region_of(x: &MVec) -> ConeRegion {
    cone_region(x, CONE_BAND * (1.0 + x.euclid_norm_sq()))
}

/// Pushes the chart through `phi` on a grid of `domain` (shrunk so that the
/// difference stencil stays inside) and compares the image with the
/// transport claims. `alpha` is the source value; `None` fits it.
pub fn inversion_transport(
    chart: &dyn Chart,
    domain: &ParamBox,
    grid: &[usize],
    alpha: Option<f64>,
) -> Result<TransportReport> {
    if grid.len() != domain.dim() || grid.iter().any(|&g| g < 2) {
        return Err(GeomError::InvalidParameter(format!(
            "grid {grid:?} does not fit a {}-parameter domain",
            domain.dim()
        )));
    }
    let inner = ParamBox::new(
        domain.lo.iter().map(|x| x + 2.0 * TRANSPORT_FD_STEP).collect(),
        domain.hi.iter().map(|x| x - 2.0 * TRANSPORT_FD_STEP).collect(),
    );
    let nodes = inner.grid(grid);
    let pts: Vec<PointTransport> = {
        use rayon::prelude::*;
        nodes
            .par_iter()
            .map(|u| transport_point(chart, u))
            .collect::<Result<Vec<_>>>()?
    };
    let n = chart.param_dim();
    let source_region = uniform_sign(pts.iter().map(|p| region_of(&p.src.x).sign().unwrap_or(0.0)), "source region")?;
    let image_region = uniform_sign(pts.iter().map(|p| region_of(&p.img.x).sign().unwrap_or(0.0)), "image region")?;
    let src_eps = uniform_sign(pts.iter().map(|p| p.src.eps_normal), "source causal type")?;
    let img_eps = uniform_sign(pts.iter().map(|p| p.img.eps_normal), "image causal type")?;
    let to_region = |s: f64| {
        if s > 0.0 {
            ConeRegion::CPlus
        } else {
            ConeRegion::CMinus
        }
    };

    let src_alphas: Vec<f64> = pts.iter().filter_map(|p| p.src.fitted_alpha().ok()).collect();
    let source_alpha = match alpha {
        Some(a) => a,
        None => mean_std(&src_alphas)
            .map(|m| m.0)
            .ok_or(GeomError::IndeterminateAlpha { value: 0.0 })?,
    };
    let img_alphas: Vec<f64> = pts.iter().filter_map(|p| p.img.fitted_alpha().ok()).collect();
    let (fit_mean, fit_std) = mean_std(&img_alphas).ok_or(GeomError::IndeterminateAlpha { value: 0.0 })?;
    let predicted = TransportPredictions::new(n, source_alpha, source_region, src_eps);
    let matching_predictions = [
        ("stated", predicted.stated),
        ("flipped", predicted.flipped),
        ("causal", predicted.causal),
    ]
    .iter()
    .filter(|(_, v)| (v - fit_mean).abs() <= ALPHA_MATCH_TOL * (1.0 + v.abs()))
    .map(|(k, _)| k.to_string())
    .collect();

    let nf = n as f64;
    let mut hv = Vec::with_capacity(pts.len());
    let mut remark = Vec::new();
    let mut derived_hv: f64 = 0.0;
    let mut derived_remark: Option<f64> = None;
    for p in &pts {
        let big_p = p.src.x.norm_sq();
        let h = p.src.support();
        let hs = p.src.mean_curvature;
        let hi = p.img.mean_curvature;
        let claim = hs / (big_p * big_p) + 2.0 * nf * h / big_p.powi(4);
        hv.push((hi - claim).abs().min((hi + claim).abs()));
        // image curvature measured with the pushed-forward normal
        let hi_pushed = p.pushed_normal_sign * hi;
        let derived = big_p * hs + 2.0 * nf * h * p.src.eps_normal;
        derived_hv = derived_hv.max((hi_pushed - derived).abs() / (1.0 + derived.abs()));
        if let (Some(k), Some(ki)) = (p.kappa, p.kappa_img) {
            let claim = [big_p * k[0] + 2.0 * h, big_p * k[1] + 2.0 * h];
            remark.push(pair_gap(ki, claim).min(pair_gap(neg(ki), claim)));
            let kp = if p.pushed_normal_sign > 0.0 { ki } else { neg(ki) };
            let d = [
                big_p * k[0] + 2.0 * h * p.src.eps_normal,
                big_p * k[1] + 2.0 * h * p.src.eps_normal,
            ];
            let g = pair_gap(kp, d) / (1.0 + d[0].abs().max(d[1].abs()));
            derived_remark = Some(derived_remark.map_or(g, |m: f64| m.max(g)));
        }
    }
    let hv_max = hv.iter().copied().fold(0.0, f64::max);
    let remark_max = (!remark.is_empty()).then(|| remark.iter().copied().fold(0.0, f64::max));
    let stride = (pts.len() / 64).max(1);
    let mut notes = Vec::new();
    if remark.len() < pts.len() {
        notes.push(format!(
            "principal curvatures real at {} of {} points",
            remark.len(),
            pts.len()
        ));
    }
    if hv_max > DISCREPANCY_FLAG_TOL {
        notes.push(format!(
            "H_phi = H/P^2 + 2nh/P^4 fails: max discrepancy {hv_max:.3e}; measured H_phi = P H + 2 n h eps_normal holds to {derived_hv:.1e}"
        ));
    }
    if let Some(m) = remark_max.filter(|&m| m > DISCREPANCY_FLAG_TOL) {
        notes.push(format!(
            "(k_i)_phi = P k_i + 2h fails: max discrepancy {m:.3e}; measured (k_i)_phi = P k_i + 2 h eps_normal holds to {:.1e}",
            derived_remark.unwrap_or(f64::NAN)
        ));
    }
    Ok(TransportReport {
        family: "chart".into(),
        n,
        grid: grid.to_vec(),
        samples: pts.len(),
        source_region: to_region(source_region),
        source_eps_normal: src_eps,
        source_alpha,
        image_region: to_region(image_region),
        image_eps_normal: img_eps,
        fitted_alpha_phi_mean: fit_mean,
        fitted_alpha_phi_std: fit_std,
        predicted,
        matching_predictions,
        hv_flag: hv_max > DISCREPANCY_FLAG_TOL,
        hv_discrepancy: hv,
        hv_discrepancy_max: hv_max,
        remark_flag: remark_max.is_some_and(|m| m > DISCREPANCY_FLAG_TOL),
        remark_discrepancy: remark,
        remark_discrepancy_max: remark_max,
        derived_hv_max: derived_hv,
        derived_remark_max: derived_remark,
        image_samples: pts.iter().step_by(stride).map(|p| p.img.x).collect(),
        image_match: None,
        notes,
    })
}

/// Known image of a catalog family under `phi`, if any.
pub fn expected_image(family: &Family) -> Option<ExpectedImage> {
    let spec = &family.spec;
    let num = |k: &str| spec.params.get(k).and_then(|v| v.parse::<f64>().ok());
    let dim = spec.n + 1;
    match spec.name.as_str() {
        "plane-x3" => {
            // <y,y> = y_3 / c
            let c = num("c")?;
            let plus = spec.params.get("part")? == "plus";
            let r = 1.0 / (2.0 * c.abs());
            Some(ExpectedImage {
                catalog_id: if plus {
                    format!("pr1-2a?center=shifted&n=2&r={r}")
                } else {
                    format!("pr1-2b?n=2&r={r}")
                },
                center: MVec::xyz(0.0, 0.0, -1.0 / (2.0 * c)),
                level: -r * r,
                height: 2,
                claimed_alpha: if plus { 4.0 } else { -4.0 },
                source_distance: Box::new(move |x| (x[2] - c).abs()),
            })
        }
        "plane-x1" => {
            // <y,y> = y_1 / c
            let c = num("c")?;
            let minus = spec.params.get("part")? == "minus";
            let r = 1.0 / (2.0 * c.abs());
            Some(ExpectedImage {
                catalog_id: if minus {
                    format!("pr1-3a?center=shifted&n=2&r={r}")
                } else {
                    format!("pr1-3b?n=2&r={r}")
                },
                center: MVec::xyz(1.0 / (2.0 * c), 0.0, 0.0),
                level: r * r,
                height: 0,
                claimed_alpha: if minus { 4.0 } else { -4.0 },
                source_distance: Box::new(move |x| (x[0] - c).abs()),
            })
        }
        "pr1-2a" | "pr1-3a" if spec.params.get("center").map(String::as_str) == Some("origin") => {
            let r = num("r")?;
            let hyper = spec.name == "pr1-2a";
            let sign = if hyper { -1.0 } else { 1.0 };
            let n = spec.n;
            Some(ExpectedImage {
                catalog_id: format!("{}?center=origin&n={n}&r={}", spec.name, 1.0 / r),
                center: MVec::zeros(dim),
                level: sign / (r * r),
                height: if hyper { n } else { 0 },
                claimed_alpha: n as f64,
                source_distance: Box::new(move |x| {
                    (x.norm_sq() - sign * r * r).abs() / (2.0 * x.euclid_norm())
                }),
            })
        }
        _ => None,
    }
}

fn quadric_distance(y: &MVec, center: &MVec, level: f64) -> f64 {
    let d = *y - *center;
    let mut grad = d * 2.0;
    let last = grad.dim() - 1;
    grad[last] = -grad[last];
    (d.norm_sq() - level).abs() / grad.euclid_norm().max(f64::MIN_POSITIVE)
}

/// Point of the quadric sharing all coordinates but `height` with `y`,
/// on the sheet nearest to `y`.
fn quadric_lift(y: &MVec, e: &ExpectedImage) -> Option<MVec> {
    let d = *y - e.center;
    let last = d.dim() - 1;
    let sig = |i: usize| if i == last { -1.0 } else { 1.0 };
    let rest: f64 = (0..d.dim()).filter(|&i| i != e.height).map(|i| sig(i) * d[i] * d[i]).sum();
    let sq = (e.level - rest) * sig(e.height);
    if sq < 0.0 {
        return None;
    }
    let mut z = *y;
    z[e.height] = e.center[e.height] + sq.sqrt().copysign(d[e.height]);
    Some(z)
}

/// Transport of a catalog family, plus identification of its image when
/// the image is itself a catalog family.
pub fn inversion_transport_family(family: &Family, grid: Option<&[usize]>) -> Result<TransportReport> {
    let spec = &family.spec;
    let grid = grid.unwrap_or(&spec.grid);
    let alpha = match spec.claimed_alpha {
        ClaimedAlpha::Value(a) => Some(a),
        _ => None,
    };
    let mut rep = inversion_transport(family.chart.as_ref(), &spec.domain, grid, alpha)?;
    rep.family = spec.id.clone();
    if let Some(e) = expected_image(family) {
        let nodes = spec.domain.grid(grid);
        let mut fwd: f64 = 0.0;
        let mut rev: f64 = 0.0;
        for u in &nodes {
            let y = inversion(&family.chart.position(u)?)?;
            fwd = fwd.max(quadric_distance(&y, &e.center, e.level));
            if let Some(z) = quadric_lift(&y, &e) {
                rev = rev.max((e.source_distance)(&inversion(&z)?));
            } else {
                rev = f64::INFINITY;
            }
        }
        rep.image_match = Some(ImageMatch {
            catalog_id: e.catalog_id,
            center: e.center,
            level: e.level,
            claimed_alpha: e.claimed_alpha,
            forward_distance: fwd,
            reverse_distance: rev,
            hausdorff_bound: fwd.max(rev),
            alpha_matches: (rep.fitted_alpha_phi_mean - e.claimed_alpha).abs() <= ALPHA_MATCH_TOL,
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::family;

    #[test]
    fn push_jet_matches_analytic_image() {
        // phi maps H^2(1) onto itself pointwise up to the antipodal map
        let f = family("pr1-2a?n=2&r=1").unwrap();
        let u = [0.3, -0.2];
        let ij = push_jet(f.chart.as_ref(), &u, TRANSPORT_FD_STEP).unwrap();
        let x = f.chart.position(&u).unwrap();
        assert!(ij.x.max_abs_diff(&(-x)) < 1e-15);
        let g = point_geometry(&ij).unwrap();
        assert!((g.mean_curvature.abs() - 2.0).abs() < 1e-5);
    }

    #[test]
    fn plane_x3_images() {
        for (part, alpha) in [("plus", 4.0), ("minus", -4.0)] {
            let f = family(&format!("plane-x3?c=0.5&part={part}")).unwrap();
            let r = inversion_transport_family(&f, Some(&[16, 8])).unwrap();
            assert!((r.fitted_alpha_phi_mean - alpha).abs() < 1e-6, "{r:#?}");
            let m = r.image_match.unwrap();
            assert!(m.hausdorff_bound < 1e-8, "{m:?}");
            assert!(m.alpha_matches);
            assert!(r.matching_predictions.contains(&"causal".to_string()));
            assert!(r.derived_hv_max < 1e-5, "{}", r.derived_hv_max);
            assert!(r.derived_remark_max.unwrap() < 1e-5);
        }
    }

    #[test]
    fn plane_x1_and_pseudosphere_images() {
        for (part, alpha) in [("minus", 4.0), ("plus", -4.0)] {
            let f = family(&format!("plane-x1?c=1&part={part}")).unwrap();
            let r = inversion_transport_family(&f, Some(&[16, 8])).unwrap();
            assert!((r.fitted_alpha_phi_mean - alpha).abs() < 1e-6, "{r:#?}");
            assert!(r.image_match.unwrap().alpha_matches);
            assert!(r.derived_hv_max < 1e-5);
        }
        let f = family("pr1-3a?n=2&r=1").unwrap();
        let r = inversion_transport_family(&f, Some(&[16, 8])).unwrap();
        assert!((r.fitted_alpha_phi_mean - 2.0).abs() < 1e-6);
        assert!(r.image_match.unwrap().hausdorff_bound < 1e-8);
    }

    #[test]
    fn stated_relations_disagree_on_hyperbolic_radius_two() {
        let f = family("pr1-2a?n=2&r=2").unwrap();
        let r = inversion_transport_family(&f, Some(&[12, 12])).unwrap();
        assert!(r.hv_flag && r.remark_flag);
        assert_eq!(r.notes.iter().filter(|n| n.contains("fails")).count(), 2);
        assert!(r.hv_discrepancy_max > 1e-3);
        assert!(r.derived_hv_max < 1e-5);
        assert!((r.fitted_alpha_phi_mean - 2.0).abs() < 1e-6);
    }

    #[test]
    fn three_dimensional_transport() {
        let f = family("pr1-2a?n=3&r=1").unwrap();
        let r = inversion_transport_family(&f, Some(&[5, 5, 5])).unwrap();
        assert!((r.fitted_alpha_phi_mean - 3.0).abs() < 1e-6);
        assert!(r.derived_hv_max < 1e-5);
    }
}
