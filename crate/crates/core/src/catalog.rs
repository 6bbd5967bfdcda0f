//! Known stationary families, each bundled with its claimed `alpha`, cone
//! region, causal type and a parameter box that stays clear of the cone.
//!
//! Families are addressed by string ids of the form `name?key=value&...`,
//! for example `pr1-3b?n=2&r=1` or `thnli-1b?c1=1&c2=0`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{constant_curve, jet3, line_curve, FnCurve, SharedCurve};
use crate::error::{GeomError, Result};
use crate::minkowski::{CausalClass, ConeRegion, MVec};
use crate::ruled::{ruled_jet, RuledChart};
use crate::surface::{
    fundamental_forms, AnalyticChart, Chart, GraphJet, HyperJet, ParamBox, DEGENERATE_BAND,
};

/// What a family claims about `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ClaimedAlpha {
    Value(f64),
    /// Stationary for every `alpha` (vector planes).
    Any,
    /// Negative control: not stationary for any `alpha`.
    NotStationary,
}

impl ClaimedAlpha {
    pub fn value(self) -> Option<f64> {
        match self {
            ClaimedAlpha::Value(a) => Some(a),
            _ => None,
        }
    }
}

/// Catalog entry metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    /// Canonical id with every parameter spelled out.
    pub id: String,
    pub name: String,
    pub n: usize,
    pub params: BTreeMap<String, String>,
    pub claimed_alpha: ClaimedAlpha,
    pub claimed_region: ConeRegion,
    pub claimed_causal: CausalClass,
    pub domain: ParamBox,
    pub grid: Vec<usize>,
    pub notes: Vec<String>,
}

/// A catalog family: metadata plus a chart with analytic jets.
#[derive(Clone)]
pub struct Family {
    pub spec: FamilySpec,
    pub chart: Arc<dyn Chart>,
    /// Present for ruled families.
    pub ruled: Option<RuledChart>,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family").field("spec", &self.spec).finish_non_exhaustive()
    }
}

/// Parsed `key=value` parameters of a family id.
#[derive(Debug, Clone, Default)]
pub struct Params {
    map: BTreeMap<String, String>,
    used: std::cell::RefCell<Vec<String>>,
}

impl Params {
    pub fn parse(query: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in query.split('&').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| GeomError::InvalidParameter(format!("expected key=value, got `{part}`")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Self {
            map,
            used: Default::default(),
        })
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.map.insert(key.to_string(), value.to_string());
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        self.used.borrow_mut().push(key.to_string());
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| GeomError::InvalidParameter(format!("{key}={v} is not a number"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        self.used.borrow_mut().push(key.to_string());
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| GeomError::InvalidParameter(format!("{key}={v} is not an integer"))),
        }
    }

    pub fn str_or(&self, key: &str, default: &str) -> String {
        self.used.borrow_mut().push(key.to_string());
        self.map.get(key).cloned().unwrap_or_else(|| default.to_string())
    }

    fn check_unused(&self) -> Result<()> {
        let used = self.used.borrow();
        match self.map.keys().find(|k| !used.contains(k)) {
            Some(k) => Err(GeomError::InvalidParameter(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

/// Splits `name?query` into its parts.
pub fn split_id(id: &str) -> (&str, &str) {
    id.split_once('?').unwrap_or((id, ""))
}

fn canonical(name: &str, params: &BTreeMap<String, String>) -> String {
    if params.is_empty() {
        return name.to_string();
    }
    let q: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{name}?{}", q.join("&"))
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

fn default_grid(n: usize) -> Vec<usize> {
    match n {
        2 => vec![64, 16],
        3 => vec![16, 16, 8],
        _ => vec![8; n],
    }
}

/// Names accepted by [`family`].
pub const FAMILY_NAMES: &[&str] = &[
    "plane-e1e2",
    "plane-e1e3",
    "pr1-2a",
    "pr1-2b",
    "pr1-3a",
    "pr1-3b",
    "thnli-1a",
    "thnli-1b",
    "thnli-2",
    "thli-1",
    "thli-2b",
    "plane-x3",
    "plane-x1",
    "helicoid-like",
    "cylinder-circular",
    "thnli2-witness",
];

/// Ids swept by a full catalog scan: every positive family with default
/// parameters plus the alternative components.
pub fn catalog_ids() -> Vec<String> {
    [
        "plane-e1e2",
        "plane-e1e3",
        "pr1-2a?n=2&r=1",
        "pr1-2a?n=3&r=1",
        "pr1-2a?center=shifted&n=2&r=1",
        "pr1-2b?n=2&r=1",
        "pr1-3a?n=2&r=1",
        "pr1-3a?n=3&r=1",
        "pr1-3a?center=shifted&n=2&r=1",
        "pr1-3b?n=2&r=1",
        "thnli-1a?sign=1",
        "thnli-1a?sign=-1",
        "thnli-1b?c1=1&c2=0",
        "thnli-2?c1=0&c2=1",
        "thli-1",
        "thli-2b?side=minus",
        "thli-2b?side=plus",
        "plane-x3?c=0.5&part=plus",
        "plane-x3?c=0.5&part=minus",
        "plane-x1?c=1&part=plus",
        "plane-x1?c=1&part=minus",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

/// Negative controls, expected to be rejected.
pub fn control_ids() -> Vec<String> {
    ["helicoid-like", "cylinder-circular", "thnli2-witness"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Resolves a family id.
pub fn family(id: &str) -> Result<Family> {
    let (name, query) = split_id(id.trim());
    let params = Params::parse(query)?;
    family_with(name, &params)
}

/// Resolves a family by name and explicit parameters.
pub fn family_with(name: &str, p: &Params) -> Result<Family> {
    let fam = match name {
        "plane-e1e2" => make_vector_plane(&[MVec::xyz(1.0, 0.0, 0.0), MVec::xyz(0.0, 1.0, 0.0)], name),
        "plane-e1e3" => make_vector_plane(&[MVec::xyz(1.0, 0.0, 0.0), MVec::xyz(0.0, 0.0, 1.0)], name),
        "pr1-2a" | "pr1-2b" => {
            let n = p.usize_or("n", 2)?;
            let r = p.f64_or("r", 1.0)?;
            let center = if name == "pr1-2b" {
                "shifted".to_string()
            } else {
                p.str_or("center", "origin")
            };
            let crossing = name == "pr1-2b";
            match center.as_str() {
                "origin" => make_hyperbolic(n, r, false, false),
                "shifted" => make_hyperbolic(n, r, true, crossing),
                other => Err(GeomError::InvalidParameter(format!("center={other}"))),
            }
        }
        "pr1-3a" | "pr1-3b" => {
            let n = p.usize_or("n", 2)?;
            let r = p.f64_or("r", 1.0)?;
            let center = if name == "pr1-3b" {
                "shifted".to_string()
            } else {
                p.str_or("center", "origin")
            };
            let crossing = name == "pr1-3b";
            match center.as_str() {
                "origin" => make_pseudosphere(n, r, false, false),
                "shifted" => make_pseudosphere(n, r, true, crossing),
                other => Err(GeomError::InvalidParameter(format!("center={other}"))),
            }
        }
        "thnli-1a" => {
            let sign = p.f64_or("sign", 1.0)?;
            make_thnli_1a(sign)
        }
        "thnli-1b" => make_thnli_1b(p.f64_or("c1", 1.0)?, p.f64_or("c2", 0.0)?),
        "thnli-2" => make_thnli_2(p.f64_or("c1", 0.0)?, p.f64_or("c2", 1.0)?),
        "thli-1" => make_thli_1(),
        "thli-2b" => make_thli_2b(p.f64_or("s0", FRAC_PI_4)?, &p.str_or("side", "minus")),
        "plane-x3" => make_plane_x3(p.f64_or("c", 0.5)?, &p.str_or("part", "plus")),
        "plane-x1" => make_plane_x1(p.f64_or("c", 1.0)?, &p.str_or("part", "minus")),
        "helicoid-like" => make_helicoid_like(),
        "cylinder-circular" => make_circular_cylinder(),
        "thnli2-witness" => make_thnli2_witness(&WitnessParams {
            m: p.f64_or("m", 1.0)?,
            k: p.f64_or("k", 0.5)?,
            a: p.f64_or("a", 0.0)?,
            b: p.f64_or("b", 0.0)?,
            c: p.f64_or("c", 1.0)?,
            d: p.f64_or("d", 0.0)?,
        }),
        _ => Err(GeomError::UnknownFamily(name.to_string())),
    }?;
    p.check_unused()?;
    Ok(fam)
}

fn ruled_family(
    name: &str,
    params: BTreeMap<String, String>,
    chart: RuledChart,
    claimed_alpha: ClaimedAlpha,
    notes: Vec<String>,
) -> Result<Family> {
    let (region, causal) = measure_center(&chart)?;
    Ok(Family {
        spec: FamilySpec {
            id: canonical(name, &params),
            name: name.to_string(),
            n: 2,
            params,
            claimed_alpha,
            claimed_region: region,
            claimed_causal: causal,
            domain: chart.param_box(),
            grid: default_grid(2),
            notes,
        },
        chart: Arc::new(chart.clone()),
        ruled: Some(chart),
    })
}

fn surface_causal(eps_normal: f64) -> CausalClass {
    if eps_normal < 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

fn measure_center(chart: &RuledChart) -> Result<(ConeRegion, CausalClass)> {
    let s = 0.5 * (chart.s_range.0 + chart.s_range.1);
    let t = 0.5 * (chart.t_range.0 + chart.t_range.1);
    let j = ruled_jet(chart, s, t)?;
    let ff = fundamental_forms(&j)?;
    let region = crate::minkowski::cone_region(&j.x, crate::minkowski::DEFAULT_CAUSAL_TOL);
    Ok((region, surface_causal(ff.eps_normal)))
}

/// `alpha = eps_region * eps_normal`, measured at the chart centre.
fn measured_unit_alpha(chart: &RuledChart) -> Result<f64> {
    let (region, causal) = measure_center(chart)?;
    let er = region.sign().ok_or(GeomError::ConeCrossing)?;
    let en = if causal == CausalClass::Spacelike { -1.0 } else { 1.0 };
    Ok(er * en)
}

/// Vector plane spanned by two non-degenerate directions.
pub fn make_vector_plane(basis: &[MVec; 2], name: &str) -> Result<Family> {
    let [u, v] = *basis;
    let (e, f, g) = (u.dot(&u), u.dot(&v), v.dot(&v));
    let det = e * g - f * f;
    if det.abs() <= DEGENERATE_BAND * (e * e + f * f + g * g) {
        return Err(GeomError::DegenerateMetric { value: det });
    }
    let d = (1.0, 2.0);
    let chart = RuledChart::new(line_curve(MVec::zeros(3), u, d), constant_curve(v, d), d, (-0.5, 0.5));
    ruled_family(
        name,
        BTreeMap::new(),
        chart,
        ClaimedAlpha::Any,
        vec!["domain keeps away from the origin".into()],
    )
}

/// Chart `v -> p0 + (v with sign * sqrt(c + sum sigma_i v_i^2) inserted at
/// coordinate `height`)`.
fn quadric_chart(
    p0: MVec,
    height: usize,
    sigma: Vec<f64>,
    c: f64,
    sign: f64,
) -> impl Fn(&[f64]) -> Result<HyperJet> + Send + Sync {
    move |v: &[f64]| {
        let n = sigma.len();
        let dim = n + 1;
        if v.len() != n {
            return Err(GeomError::DimensionMismatch {
                left: v.len(),
                right: n,
            });
        }
        let arg = c + v.iter().zip(&sigma).map(|(x, s)| s * x * x).sum::<f64>();
        if !(arg > 0.0) {
            return Err(GeomError::Domain {
                value: arg,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let f = arg.sqrt();
        let coord = |i: usize| if i < height { i } else { i + 1 };
        let mut x = p0;
        for i in 0..n {
            x[coord(i)] += v[i];
        }
        x[height] += sign * f;
        let fi: Vec<f64> = (0..n).map(|i| sigma[i] * v[i] / f).collect();
        let d1 = (0..n)
            .map(|i| {
                let mut e = MVec::basis(dim, coord(i));
                e[height] = sign * fi[i];
                e
            })
            .collect();
        let d2 = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let fij = if i == j { sigma[i] / f } else { 0.0 } - fi[i] * fi[j] / f;
                        let mut e = MVec::zeros(dim);
                        e[height] = sign * fij;
                        e
                    })
                    .collect()
            })
            .collect();
        Ok(HyperJet { x, d1, d2 })
    }
}

fn check_n_r(n: usize, r: f64) -> Result<()> {
    if !(2..=crate::minkowski::MAX_DIM - 1).contains(&n) {
        return Err(GeomError::InvalidParameter(format!("n={n} must be in 2..=7")));
    }
    if !(r > 0.0) {
        return Err(GeomError::InvalidParameter(format!("r={r} must be positive")));
    }
    Ok(())
}

/// Hyperbolic hyperplane `<p - p0, p - p0> = -r^2`.
///
/// Centered: upper sheet about the origin, `alpha = n`. Shifted:
/// `p0 = r e_{n+1}`, so `<p0,p0> = -r^2`; the upper sheet misses the origin
/// (`alpha = 2n`) while the lower one passes through it (`alpha = -2n`, with
/// the chart punctured around the origin).
pub fn make_hyperbolic(n: usize, r: f64, shifted: bool, crossing: bool) -> Result<Family> {
    check_n_r(n, r)?;
    let dim = n + 1;
    let p0 = if shifted { MVec::basis(dim, n) * r } else { MVec::zeros(dim) };
    let sign = if crossing { -1.0 } else { 1.0 };
    let eval = quadric_chart(p0, n, vec![1.0; n], r * r, sign);
    let (lo, hi) = if crossing {
        let mut lo = vec![-0.5 * r; n];
        let mut hi = vec![0.5 * r; n];
        lo[0] = 0.5 * r;
        hi[0] = 1.5 * r;
        (lo, hi)
    } else {
        (vec![-r; n], vec![r; n])
    };
    let (name, alpha, region, notes) = match (shifted, crossing) {
        (false, _) => ("pr1-2a", n as f64, ConeRegion::CPlus, vec![]),
        (true, false) => (
            "pr1-2a",
            2.0 * n as f64,
            ConeRegion::CPlus,
            vec!["shifted sheet that misses the origin; measured inside C+".into()],
        ),
        (true, true) => (
            "pr1-2b",
            -2.0 * n as f64,
            ConeRegion::CMinus,
            vec![format!("sheet through the origin; punctured to q1 >= {}", 0.5 * r)],
        ),
    };
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("r".into(), fmt_num(r));
    if name == "pr1-2a" {
        params.insert("center".into(), if shifted { "shifted" } else { "origin" }.into());
    }
    Ok(Family {
        spec: FamilySpec {
            id: canonical(name, &params),
            name: name.into(),
            n,
            params,
            claimed_alpha: ClaimedAlpha::Value(alpha),
            claimed_region: region,
            claimed_causal: CausalClass::Spacelike,
            domain: ParamBox::new(lo, hi),
            grid: default_grid(n),
            notes,
        },
        chart: Arc::new(AnalyticChart::new(n, eval)),
        ruled: None,
    })
}

/// Pseudosphere `<p - p0, p - p0> = r^2`, as a graph over `(x_2..x_{n+1})`.
///
/// Centered: `alpha = n`. Shifted: `p0 = r e_1`; the sheet `x_1 > r` lies in
/// C- (`alpha = 2n`), the part of the other sheet with `x_{n+1}` large lies
/// in C+ (`alpha = -2n`).
pub fn make_pseudosphere(n: usize, r: f64, shifted: bool, crossing: bool) -> Result<Family> {
    check_n_r(n, r)?;
    let dim = n + 1;
    let p0 = if shifted { MVec::basis(dim, 0) * r } else { MVec::zeros(dim) };
    let mut sigma = vec![-1.0; n];
    sigma[n - 1] = 1.0;
    let sign = if crossing { -1.0 } else { 1.0 };
    let eval = quadric_chart(p0, 0, sigma, r * r, sign);
    let mut lo = vec![-0.5 * r; n];
    let mut hi = vec![0.5 * r; n];
    if crossing {
        lo[n - 1] = r;
        hi[n - 1] = 2.0 * r;
    }
    let (name, alpha, region, notes) = match (shifted, crossing) {
        (false, _) => ("pr1-3a", n as f64, ConeRegion::CMinus, vec![]),
        (true, false) => ("pr1-3a", 2.0 * n as f64, ConeRegion::CMinus, vec![]),
        (true, true) => (
            "pr1-3b",
            -2.0 * n as f64,
            ConeRegion::CPlus,
            vec![format!("restricted to x_(n+1) in [{r}, {}] inside C+", 2.0 * r)],
        ),
    };
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("r".into(), fmt_num(r));
    if name == "pr1-3a" {
        params.insert("center".into(), if shifted { "shifted" } else { "origin" }.into());
    }
    Ok(Family {
        spec: FamilySpec {
            id: canonical(name, &params),
            name: name.into(),
            n,
            params,
            claimed_alpha: ClaimedAlpha::Value(alpha),
            claimed_region: region,
            claimed_causal: CausalClass::Timelike,
            domain: ParamBox::new(lo, hi),
            grid: default_grid(n),
            notes,
        },
        chart: Arc::new(AnalyticChart::new(n, eval)),
        ruled: None,
    })
}

fn circle_w(domain: (f64, f64)) -> SharedCurve {
    FnCurve::shared(domain, |s| {
        jet3([s.cos(), s.sin(), 0.0], [-s.sin(), s.cos(), 0.0], [-s.cos(), -s.sin(), 0.0])
    })
}

fn unit_pair(c1: f64, c2: f64) -> Result<()> {
    if ((c1 * c1 + c2 * c2) - 1.0).abs() > 1e-12 {
        return Err(GeomError::InvalidParameter(format!(
            "c1^2 + c2^2 = {} must be 1",
            c1 * c1 + c2 * c2
        )));
    }
    Ok(())
}

/// `gamma = (0, 0, e^{sign s})`, `w = (cos s, sin s, 0)`.
pub fn make_thnli_1a(sign: f64) -> Result<Family> {
    if sign.abs() != 1.0 {
        return Err(GeomError::InvalidParameter(format!("sign={sign} must be +-1")));
    }
    let d = (0.0, 1.0);
    let g = FnCurve::shared(d, move |s| {
        let e = (sign * s).exp();
        jet3([0.0, 0.0, e], [0.0, 0.0, sign * e], [0.0, 0.0, e])
    });
    // |t| < |gamma_3| keeps X inside C+
    let t = if sign > 0.0 { 0.5 } else { 0.3 };
    let chart = RuledChart::new(g, circle_w(d), d, (-t, t));
    let alpha = measured_unit_alpha(&chart)?;
    let mut params = BTreeMap::new();
    params.insert("sign".into(), fmt_num(sign));
    ruled_family("thnli-1a", params, chart, ClaimedAlpha::Value(alpha), vec![])
}

/// `gamma = (-sin s, cos s, c1 cosh s + c2 sinh s)`, `w = (cos s, sin s, 0)`.
pub fn make_thnli_1b(c1: f64, c2: f64) -> Result<Family> {
    unit_pair(c1, c2)?;
    let h = move |s: f64| c1 * s.cosh() + c2 * s.sinh();
    // a unit-length s-window on which |h| >= 1.25 keeps |t| <= 0.4 inside C+
    let s0 = (0..40)
        .map(|i| 0.5 + 0.25 * i as f64)
        .find(|&a| (0..=20).all(|k| h(a + k as f64 / 20.0).abs() >= 1.25))
        .ok_or_else(|| GeomError::InvalidParameter("no admissible s-window".into()))?;
    let d = (s0, s0 + 1.0);
    let g = FnCurve::shared(d, move |s| {
        let (ch, sh) = (s.cosh(), s.sinh());
        jet3(
            [-s.sin(), s.cos(), c1 * ch + c2 * sh],
            [-s.cos(), -s.sin(), c1 * sh + c2 * ch],
            [s.sin(), -s.cos(), c1 * ch + c2 * sh],
        )
    });
    let chart = RuledChart::new(g, circle_w(d), d, (-0.4, 0.4));
    let alpha = measured_unit_alpha(&chart)?;
    let mut params = BTreeMap::new();
    params.insert("c1".into(), fmt_num(c1));
    params.insert("c2".into(), fmt_num(c2));
    ruled_family("thnli-1b", params, chart, ClaimedAlpha::Value(alpha), vec![])
}

/// `gamma = (sinh s, c1 cos s + c2 sin s, cosh s)`, `w = (cosh s, 0, sinh s)`.
pub fn make_thnli_2(c1: f64, c2: f64) -> Result<Family> {
    unit_pair(c1, c2)?;
    // <X,X> = t^2 - 1 + h^2; centre the window on a zero of h
    let z = c2.atan2(c1) - FRAC_PI_2;
    let d = (z - 0.5, z + 0.5);
    let g = FnCurve::shared(d, move |s| {
        let (ch, sh) = (s.cosh(), s.sinh());
        let (c, sn) = (s.cos(), s.sin());
        jet3(
            [sh, c1 * c + c2 * sn, ch],
            [ch, -c1 * sn + c2 * c, sh],
            [sh, -c1 * c - c2 * sn, ch],
        )
    });
    let w = FnCurve::shared(d, |s| {
        let (ch, sh) = (s.cosh(), s.sinh());
        jet3([ch, 0.0, sh], [sh, 0.0, ch], [ch, 0.0, sh])
    });
    let chart = RuledChart::new(g, w, d, (-0.6, 0.6));
    let alpha = measured_unit_alpha(&chart)?;
    let mut params = BTreeMap::new();
    params.insert("c1".into(), fmt_num(c1));
    params.insert("c2".into(), fmt_num(c2));
    ruled_family("thnli-2", params, chart, ClaimedAlpha::Value(alpha), vec![])
}

/// `w = (sinh s, 1, cosh s)`, `gamma = w'`; lies on the unit pseudosphere.
pub fn make_thli_1() -> Result<Family> {
    let d = (-1.0, 1.0);
    let w = FnCurve::shared(d, |s| {
        let (ch, sh) = (s.cosh(), s.sinh());
        jet3([sh, 1.0, ch], [ch, 0.0, sh], [sh, 0.0, ch])
    });
    let g = FnCurve::shared(d, |s| {
        let (ch, sh) = (s.cosh(), s.sinh());
        jet3([ch, 0.0, sh], [sh, 0.0, ch], [ch, 0.0, sh])
    });
    let chart = RuledChart::new(g, w, d, (-2.0, 2.0));
    ruled_family("thli-1", BTreeMap::new(), chart, ClaimedAlpha::Value(2.0), vec![])
}

/// `gamma = (sin s, -cos s, tan(s/2))`, `w = (cos s, sin s, 1)` on
/// `s in [s0, pi/2 - 0.05]`; `side=minus` takes `t in [-2, 0]` (C-),
/// `side=plus` takes `t` beyond `(1 - u0^2) / (2 u0)`, `u0 = tan(s0/2)` (C+).
pub fn make_thli_2b(s0: f64, side: &str) -> Result<Family> {
    let s1 = FRAC_PI_2 - 0.05;
    if !(s0 > 0.0 && s0 < s1) {
        return Err(GeomError::InvalidParameter(format!("s0={s0} must lie in (0, {s1})")));
    }
    let d = (s0, s1);
    let u0 = (s0 / 2.0).tan();
    let bound = (1.0 - u0 * u0) / (2.0 * u0);
    let (t_range, alpha) = match side {
        "minus" => ((-2.0, 0.0), 4.0),
        "plus" => ((bound + 0.5, bound + 2.0), -4.0),
        other => return Err(GeomError::InvalidParameter(format!("side={other}"))),
    };
    let g = FnCurve::shared(d, |s| {
        let th = (s / 2.0).tan();
        let sec2 = 1.0 + th * th;
        jet3([s.sin(), -s.cos(), th], [s.cos(), s.sin(), 0.5 * sec2], [-s.sin(), s.cos(), 0.5 * sec2 * th])
    });
    let w = FnCurve::shared(d, |s| {
        jet3([s.cos(), s.sin(), 1.0], [-s.sin(), s.cos(), 0.0], [-s.cos(), -s.sin(), 0.0])
    });
    let chart = RuledChart::new(g, w, d, t_range);
    let mut params = BTreeMap::new();
    params.insert("s0".into(), fmt_num(s0));
    params.insert("side".into(), side.into());
    ruled_family(
        "thli-2b",
        params,
        chart,
        ClaimedAlpha::Value(alpha),
        vec![format!("cone-free bound (1 - u0^2) / (2 u0) = {bound}")],
    )
}

/// Horizontal plane `x_3 = c`, maximal; `part=plus` is the disc inside C+,
/// `part=minus` a patch outside it.
pub fn make_plane_x3(c: f64, part: &str) -> Result<Family> {
    if !(c.abs() > 0.0) {
        return Err(GeomError::InvalidParameter("plane-x3 needs c != 0".into()));
    }
    let a = c.abs();
    let (s_range, t_range) = match part {
        "plus" => ((-0.3 * a, 0.3 * a), (-0.3 * a, 0.3 * a)),
        "minus" => ((1.6 * a, 3.2 * a), (-0.8 * a, 0.8 * a)),
        other => return Err(GeomError::InvalidParameter(format!("part={other}"))),
    };
    let chart = RuledChart::new(
        line_curve(MVec::xyz(0.0, 0.0, c), MVec::xyz(1.0, 0.0, 0.0), s_range),
        constant_curve(MVec::xyz(0.0, 1.0, 0.0), s_range),
        s_range,
        t_range,
    );
    let mut params = BTreeMap::new();
    params.insert("c".into(), fmt_num(c));
    params.insert("part".into(), part.into());
    ruled_family("plane-x3", params, chart, ClaimedAlpha::Value(0.0), vec!["maximal".into()])
}

/// Vertical plane `x_1 = c`, timelike with `H = 0`.
pub fn make_plane_x1(c: f64, part: &str) -> Result<Family> {
    if !(c.abs() > 0.0) {
        return Err(GeomError::InvalidParameter("plane-x1 needs c != 0".into()));
    }
    let a = c.abs();
    let (s_range, t_range) = match part {
        "minus" => ((-0.5 * a, 0.5 * a), (-0.5 * a, 0.5 * a)),
        "plus" => ((-0.5 * a, 0.5 * a), (1.6 * a, 3.2 * a)),
        other => return Err(GeomError::InvalidParameter(format!("part={other}"))),
    };
    let chart = RuledChart::new(
        line_curve(MVec::xyz(c, 0.0, 0.0), MVec::xyz(0.0, 1.0, 0.0), s_range),
        constant_curve(MVec::xyz(0.0, 0.0, 1.0), s_range),
        s_range,
        t_range,
    );
    let mut params = BTreeMap::new();
    params.insert("c".into(), fmt_num(c));
    params.insert("part".into(), part.into());
    ruled_family("plane-x1", params, chart, ClaimedAlpha::Value(0.0), vec![])
}

/// Negative control: `gamma = (-sin s, cos s, s)`, `w = (cos s, sin s, 0)`.
pub fn make_helicoid_like() -> Result<Family> {
    let d = (0.2, 0.8);
    let g = FnCurve::shared(d, |s| {
        jet3([-s.sin(), s.cos(), s], [-s.cos(), -s.sin(), 1.0], [s.sin(), -s.cos(), 0.0])
    });
    let chart = RuledChart::new(g, circle_w(d), d, (-0.5, 0.5));
    ruled_family("helicoid-like", BTreeMap::new(), chart, ClaimedAlpha::NotStationary, vec![])
}

/// Negative control: circle times the time axis.
pub fn make_circular_cylinder() -> Result<Family> {
    let d = (0.0, 1.0);
    let chart = RuledChart::new(circle_w(d), constant_curve(MVec::xyz(0.0, 0.0, 1.0), d), d, (-0.5, 0.5));
    ruled_family("cylinder-circular", BTreeMap::new(), chart, ClaimedAlpha::NotStationary, vec![])
}

/// Constants of the normal form with `w = (1, -s, -s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessParams {
    pub m: f64,
    /// Trial value of `alpha * beta`.
    pub k: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Base curve `x = m s^2 / 2 + b`, `y = m(2k - 1) s^3 / 6 + a k s^2 + c s + d`,
/// `z = y - m s - a`.
pub fn witness_chart(p: &WitnessParams, s_range: (f64, f64), t_range: (f64, f64)) -> RuledChart {
    let WitnessParams { m, k, a, b, c, d } = *p;
    let cub = m * (2.0 * k - 1.0) / 6.0;
    let g = FnCurve::shared(s_range, move |s| {
        let y = cub * s.powi(3) + a * k * s * s + c * s + d;
        let y1 = 3.0 * cub * s * s + 2.0 * a * k * s + c;
        let y2 = 6.0 * cub * s + 2.0 * a * k;
        jet3(
            [0.5 * m * s * s + b, y, y - m * s - a],
            [m * s, y1, y1 - m],
            [m, y2, y2],
        )
    });
    let w = FnCurve::shared(s_range, |s| jet3([1.0, -s, -s], [0.0, -1.0, -1.0], [0.0; 3]));
    RuledChart::new(g, w, s_range, t_range)
}

pub fn make_thnli2_witness(p: &WitnessParams) -> Result<Family> {
    let chart = witness_chart(p, (0.5, 1.5), (-0.3, 0.3));
    let mut params = BTreeMap::new();
    for (k, v) in [("m", p.m), ("k", p.k), ("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d)] {
        params.insert(k.into(), fmt_num(v));
    }
    ruled_family("thnli2-witness", params, chart, ClaimedAlpha::NotStationary, vec![])
}

/// Graph families `x_{n+1} = u(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphFamilyKind {
    HyperbolicUpper { r: f64 },
    MaximalHorizontalPlane { c: f64 },
}

/// Closed-form graph jets for a graph family.
pub fn graph_jet(kind: GraphFamilyKind, q: &[f64]) -> GraphJet {
    let n = q.len();
    match kind {
        GraphFamilyKind::HyperbolicUpper { r } => {
            let u = (r * r + q.iter().map(|x| x * x).sum::<f64>()).sqrt();
            GraphJet {
                q: q.to_vec(),
                u,
                du: q.iter().map(|x| x / u).collect(),
                d2u: (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { 1.0 / u } else { 0.0 } - q[i] * q[j] / (u * u * u))
                            .collect()
                    })
                    .collect(),
            }
        }
        GraphFamilyKind::MaximalHorizontalPlane { c } => GraphJet {
            q: q.to_vec(),
            u: c,
            du: vec![0.0; n],
            d2u: vec![vec![0.0; n]; n],
        },
    }
}

/// Claimed `alpha` of a graph family in dimension `n`.
pub fn graph_alpha(kind: GraphFamilyKind, n: usize) -> f64 {
    match kind {
        GraphFamilyKind::HyperbolicUpper { .. } => n as f64,
        GraphFamilyKind::MaximalHorizontalPlane { .. } => 0.0,
    }
}
