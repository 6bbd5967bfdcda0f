//! Grid scans of the stationarity residual.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{ClaimedAlpha, Family};
use crate::error::GeomError;
use crate::minkowski::{cone_region, CausalClass, ConeRegion};
use crate::surface::{near_cone, point_geometry, Chart, ExclusionReason, ParamBox, CONE_BAND};

/// Fraction of excluded points above which a scan cannot pass.
pub const MAX_EXCLUDED_FRACTION: f64 = 0.2;

/// Residual tolerance used when none is given.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

/// Seed recorded in reports of deterministic scans.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusionCount {
    pub reason: ExclusionReason,
    pub count: usize,
}

/// Grid statistics of the stationarity residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub family: String,
    pub alpha: f64,
    pub grid: Vec<usize>,
    pub points: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub fitted_alpha_mean: Option<f64>,
    pub fitted_alpha_std: Option<f64>,
    /// Points where `<N,X>` vanishes and `alpha` is not determined.
    pub indeterminate_alpha: usize,
    pub exclusions: Vec<ExclusionCount>,
    /// Evaluated points whose region or causal type differs from the claim.
    pub region_mismatches: usize,
    pub causal_mismatches: usize,
    pub verdict: Verdict,
    pub seed: u64,
    pub version: String,
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn excluded(&self) -> usize {
        self.exclusions.iter().map(|e| e.count).sum()
    }

    /// Verdict plus agreement with the claimed region and causal type.
    pub fn consistent(&self) -> bool {
        self.verdict.passed() && self.region_mismatches == 0 && self.causal_mismatches == 0
    }
}

enum Sample {
    Excluded(ExclusionReason),
    Point {
        residual: f64,
        alpha: Option<f64>,
        region: ConeRegion,
        causal: CausalClass,
    },
}

fn sample(chart: &dyn Chart, u: &[f64], alpha: f64) -> Sample {
    let jet = match chart.hyper_jet(u) {
        Ok(j) => j,
        Err(_) => return Sample::Excluded(ExclusionReason::EvaluationError),
    };
    if near_cone(&jet.x) {
        return Sample::Excluded(ExclusionReason::NearCone);
    }
    match point_geometry(&jet) {
        Ok(g) => Sample::Point {
            residual: g.residual(alpha).abs(),
            alpha: g.fitted_alpha().ok(),
            region: cone_region(&g.x, CONE_BAND * (1.0 + g.x.euclid_norm_sq())),
            causal: if g.eps_normal < 0.0 {
                CausalClass::Spacelike
            } else {
                CausalClass::Timelike
            },
        },
        Err(GeomError::DegenerateMetric { .. }) => Sample::Excluded(ExclusionReason::DegenerateMetric),
        Err(_) => Sample::Excluded(ExclusionReason::EvaluationError),
    }
}

pub(crate) fn mean_std(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Some((mean, var.sqrt()))
}

/// Evaluates the residual at `alpha` on a grid of `domain`.
///
/// Points are evaluated in parallel and reduced in grid order, so the
/// report is bit-identical across runs.
pub fn residual_scan(
    chart: &dyn Chart,
    domain: &ParamBox,
    alpha: f64,
    grid: &[usize],
    tol: f64,
) -> ResidualReport {
    scan_impl(chart, domain, alpha, grid, tol, None, "chart")
}

fn scan_impl(
    chart: &dyn Chart,
    domain: &ParamBox,
    alpha: f64,
    grid: &[usize],
    tol: f64,
    claims: Option<(ConeRegion, CausalClass)>,
    name: &str,
) -> ResidualReport {
    let nodes = domain.grid(grid);
    let samples: Vec<Sample> = nodes.par_iter().map(|u| sample(chart, u, alpha)).collect();

    let mut excl: BTreeMap<ExclusionReason, usize> = BTreeMap::new();
    let mut residuals = Vec::with_capacity(samples.len());
    let mut alphas = Vec::new();
    let mut indeterminate = 0;
    let (mut region_mm, mut causal_mm) = (0, 0);
    for s in &samples {
        match s {
            Sample::Excluded(r) => *excl.entry(*r).or_default() += 1,
            Sample::Point {
                residual,
                alpha,
                region,
                causal,
            } => {
                residuals.push(*residual);
                match alpha {
                    Some(a) => alphas.push(*a),
                    None => indeterminate += 1,
                }
                if let Some((r, c)) = claims {
                    region_mm += usize::from(*region != r);
                    causal_mm += usize::from(*causal != c);
                }
            }
        }
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let mean_residual = mean_std(&residuals).map_or(0.0, |m| m.0);
    let fitted = mean_std(&alphas);
    let excluded: usize = excl.values().sum();
    let mut notes = Vec::new();
    if indeterminate > 0 {
        notes.push(format!(
            "IndeterminateAlpha at {indeterminate} points: <N,X> = 0, any alpha satisfies the equation there"
        ));
    }
    let ok = !residuals.is_empty()
        && max_residual <= tol
        && (excluded as f64) < MAX_EXCLUDED_FRACTION * samples.len() as f64;
    ResidualReport {
        family: name.to_string(),
        alpha,
        grid: grid.to_vec(),
        points: samples.len(),
        tolerance: tol,
        max_residual,
        mean_residual,
        fitted_alpha_mean: fitted.map(|f| f.0),
        fitted_alpha_std: fitted.map(|f| f.1),
        indeterminate_alpha: indeterminate,
        exclusions: excl
            .into_iter()
            .map(|(reason, count)| ExclusionCount { reason, count })
            .collect(),
        region_mismatches: region_mm,
        causal_mismatches: causal_mm,
        verdict: Verdict::from_bool(ok),
        seed: DEFAULT_SEED,
        version: env!("CARGO_PKG_VERSION").to_string(),
        notes,
    }
}

/// Scans a catalog family at `alpha` (default: its claimed value, or 1 for
/// families stationary for every `alpha`) and checks the region and causal
/// claims at every evaluated point.
pub fn scan_family(family: &Family, alpha: Option<f64>, grid: Option<&[usize]>, tol: f64) -> ResidualReport {
    let spec = &family.spec;
    let alpha = alpha.unwrap_or(match spec.claimed_alpha {
        ClaimedAlpha::Value(a) => a,
        _ => 1.0,
    });
    let grid = grid.unwrap_or(&spec.grid);
    let mut rep = scan_impl(
        family.chart.as_ref(),
        &spec.domain,
        alpha,
        grid,
        tol,
        Some((spec.claimed_region, spec.claimed_causal)),
        &spec.id,
    );
    match spec.claimed_alpha {
        ClaimedAlpha::Any => rep.notes.push("family is stationary for every alpha".into()),
        ClaimedAlpha::NotStationary => rep.notes.push("negative control".into()),
        ClaimedAlpha::Value(_) => {}
    }
    rep.notes.extend(spec.notes.iter().cloned());
    rep
}
