use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::json;

use lmstat_core::catalog::{catalog_ids, control_ids, family, family_with, split_id, Family, Params, WitnessParams};
use lmstat_core::curve::SplineCurve;
use lmstat_core::ruled::{classify_ruled, ClassifyOptions, RuledChart, StationaryVerdict, DEFAULT_S_SAMPLES};
use lmstat_core::surface::{near_cone, point_geometry};
use lmstat_core::verifier::{
    branch_sweep, inversion_transport_family, max_principle_scan, ode_branch_explore, scan_family,
    thnli2_witness_check, OdeBranchSpec, ResidualReport, TransportReport, DEFAULT_BRANCH_SEED,
    DEFAULT_RESIDUAL_TOL,
};
use lmstat_core::{GeomError, MVec, ParamBox};

use crate::args::{
    BranchArgs, ClassifyArgs, FamilyArgs, InvertArgs, MaxPrincipleArgs, MeshArgs, ScanArgs, VerifyArgs, WitnessArgs,
};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{csv_string, num, opt_num, write_atomic, Outcome};

/// Spread of the fitted image exponent below which the image counts as
/// stationary.
const IMAGE_ALPHA_STD_TOL: f64 = 1e-6;
const WITNESS_LEAD_TOL: f64 = 1e-6;

pub fn resolve_family(a: &FamilyArgs) -> CliResult<Family> {
    let (name, query) = split_id(a.family.trim());
    let mut p = Params::parse(query)?;
    let nums = [
        ("r", a.r),
        ("c", a.c),
        ("sign", a.sign),
        ("s0", a.s0),
        ("c1", a.c1),
        ("c2", a.c2),
    ];
    for (k, v) in nums {
        if let Some(v) = v {
            p.set(k, v);
        }
    }
    if let Some(n) = a.n {
        p.set("n", n);
    }
    for (k, v) in [("part", &a.part), ("center", &a.center), ("side", &a.side)] {
        if let Some(v) = v {
            p.set(k, v);
        }
    }
    for kv in &a.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--param expects KEY=VALUE, got `{kv}`")))?;
        p.set(k.trim(), v.trim());
    }
    Ok(family_with(name, &p)?)
}

fn parse_range(s: &str, what: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Usage(format!("{what} expects lo:hi, got `{s}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    if !(hi > lo) {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_grid_range(s: &str, what: &str) -> CliResult<(f64, f64, usize)> {
    let bad = || CliError::Usage(format!("{what} expects lo:hi:n with n >= 2, got `{s}`"));
    let (head, n) = s.rsplit_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n < 2 {
        return Err(bad());
    }
    let (lo, hi) = parse_range(head, what).map_err(|_| bad())?;
    Ok((lo, hi, n))
}

const RESIDUAL_COLUMNS: [&str; 15] = [
    "family",
    "alpha",
    "grid",
    "points",
    "max_residual",
    "mean_residual",
    "fitted_alpha_mean",
    "fitted_alpha_std",
    "indeterminate_alpha",
    "excluded",
    "region_mismatches",
    "causal_mismatches",
    "verdict",
    "seed",
    "version",
];

fn residual_row(r: &ResidualReport) -> Vec<String> {
    vec![
        r.family.clone(),
        num(r.alpha),
        r.grid.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("x"),
        r.points.to_string(),
        num(r.max_residual),
        num(r.mean_residual),
        opt_num(r.fitted_alpha_mean),
        opt_num(r.fitted_alpha_std),
        r.indeterminate_alpha.to_string(),
        r.excluded().to_string(),
        r.region_mismatches.to_string(),
        r.causal_mismatches.to_string(),
        if r.consistent() { "pass" } else { "fail" }.into(),
        r.seed.to_string(),
        r.version.clone(),
    ]
}

pub fn verify(a: &VerifyArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let f = resolve_family(&a.family)?;
    let tol = cfg.tol(a.tol, DEFAULT_RESIDUAL_TOL)?;
    let grid = cfg.grid(a.grid.clone())?;
    if let Some(g) = &grid {
        if g.len() != f.spec.domain.dim() {
            return Err(CliError::Usage(format!(
                "{} has {} parameters, grid has {} sizes",
                f.spec.id,
                f.spec.domain.dim(),
                g.len()
            )));
        }
    }
    let alpha = a.alpha.or(cfg.alpha);
    let r = scan_family(&f, alpha, grid.as_deref(), tol);
    let passed = r.consistent();
    let summary = format!(
        "{}: alpha = {}, max residual {:.3e} (tol {:.0e}), {} points, {} excluded -> {}",
        r.family,
        r.alpha,
        r.max_residual,
        tol,
        r.points,
        r.excluded(),
        if passed { "PASS" } else { "FAIL" }
    );
    Ok(Outcome {
        command: "verify",
        passed,
        csv: Some(vec![RESIDUAL_COLUMNS.iter().map(|s| s.to_string()).collect(), residual_row(&r)]),
        report: serde_json::to_value(&r)?,
        summary,
    })
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    s: f64,
    g1: f64,
    g2: f64,
    g3: f64,
    w1: f64,
    w2: f64,
    w3: f64,
}

const CSV_HEADER: [&str; 7] = ["s", "g1", "g2", "g3", "w1", "w2", "w3"];

fn read_samples(path: &Path) -> CliResult<Vec<SampleRow>> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let header = rd.headers().map_err(|e| CliError::Csv(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(CliError::Csv(format!(
            "header must be `{}`, got `{}`",
            CSV_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let rows: Vec<SampleRow> = rd
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Csv(e.to_string()))?;
    if rows.len() < 8 {
        return Err(CliError::Csv(format!("need at least 8 samples, got {}", rows.len())));
    }
    if let Some(w) = rows.windows(2).find(|w| !(w[1].s > w[0].s)) {
        return Err(CliError::Csv(format!("s must increase strictly ({} then {})", w[0].s, w[1].s)));
    }
    let finite = |r: &SampleRow| [r.s, r.g1, r.g2, r.g3, r.w1, r.w2, r.w3].iter().all(|x| x.is_finite());
    if let Some(r) = rows.iter().find(|r| !finite(r)) {
        return Err(CliError::Csv(format!("non-finite value in the row at s = {}", r.s)));
    }
    Ok(rows)
}

pub fn classify(a: &ClassifyArgs) -> CliResult<Outcome> {
    let rows = read_samples(&a.input)?;
    let s: Vec<f64> = rows.iter().map(|r| r.s).collect();
    let g: Vec<MVec> = rows.iter().map(|r| MVec::xyz(r.g1, r.g2, r.g3)).collect();
    let w: Vec<MVec> = rows.iter().map(|r| MVec::xyz(r.w1, r.w2, r.w3)).collect();
    let t_range = parse_range(&a.t, "--t")?;
    let s_range = match &a.s {
        Some(r) => parse_range(r, "--s")?,
        None => (s[1], s[s.len() - 2]),
    };
    if s_range.0 < s[0] || s_range.1 > s[s.len() - 1] {
        return Err(CliError::Usage(format!(
            "--s {s_range:?} leaves the sampled range [{}, {}]",
            s[0],
            s[s.len() - 1]
        )));
    }
    let chart = RuledChart::new(
        Arc::new(SplineCurve::new(&s, &g)?),
        Arc::new(SplineCurve::new(&s, &w)?),
        s_range,
        t_range,
    );
    let opts = ClassifyOptions {
        causal_tol: a.causal_tol,
        stationarity_tol: a.tol,
        s_samples: DEFAULT_S_SAMPLES,
        ..ClassifyOptions::default()
    };
    let r = classify_ruled(&chart, &opts)?;
    let alpha = match r.verdict {
        StationaryVerdict::Stationary { alpha } => format!("alpha = {alpha:.6}"),
        StationaryVerdict::AnyAlpha => "any alpha (vector plane)".into(),
        StationaryVerdict::NotStationary => "NotStationary".into(),
    };
    let summary = format!("{}, {alpha}, region {}, branch {}", r.ruling_class, r.region.label(), r.branch);
    let verdict = match r.verdict {
        StationaryVerdict::Stationary { .. } => "stationary",
        StationaryVerdict::AnyAlpha => "any_alpha",
        StationaryVerdict::NotStationary => "not_stationary",
    };
    let alpha_col = match r.verdict {
        StationaryVerdict::Stationary { alpha } => num(alpha),
        _ => String::new(),
    };
    Ok(Outcome {
        command: "classify",
        passed: true,
        csv: Some(vec![
            ["ruling_class", "region", "verdict", "alpha", "branch"].map(String::from).to_vec(),
            vec![
                r.ruling_class.label().into(),
                r.region.label().into(),
                verdict.into(),
                alpha_col,
                r.branch.clone(),
            ],
        ]),
        report: serde_json::to_value(&r)?,
        summary,
    })
}

fn transport_row(r: &TransportReport) -> Vec<String> {
    vec![
        r.family.clone(),
        num(r.source_alpha),
        r.source_region.label().into(),
        r.image_region.label().into(),
        num(r.fitted_alpha_phi_mean),
        num(r.fitted_alpha_phi_std),
        num(r.predicted.stated),
        num(r.predicted.flipped),
        num(r.predicted.causal),
        num(r.hv_discrepancy_max),
        r.hv_flag.to_string(),
        opt_num(r.remark_discrepancy_max),
        r.remark_flag.to_string(),
        opt_num(r.image_match.as_ref().map(|m| m.hausdorff_bound)),
    ]
}

pub fn invert(a: &InvertArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let name = split_id(a.family.family.trim()).0;
    let split = matches!(name, "plane-x3" | "plane-x1") && a.family.part.is_none() && !a.family.family.contains("part=");
    let parts: Vec<Option<&str>> = if split {
        vec![Some("plus"), Some("minus")]
    } else {
        vec![None]
    };
    let grid = cfg.grid(a.grid.clone())?;
    let mut reports = Vec::new();
    for part in parts {
        let mut fa = a.family.clone_args();
        if let Some(p) = part {
            fa.part = Some(p.into());
        }
        let f = resolve_family(&fa)?;
        reports.push(inversion_transport_family(&f, grid.as_deref())?);
    }
    let ok = |r: &TransportReport| {
        r.fitted_alpha_phi_std <= IMAGE_ALPHA_STD_TOL * (1.0 + r.fitted_alpha_phi_mean.abs())
            && r.image_match.as_ref().is_none_or(|m| m.alpha_matches)
    };
    let passed = reports.iter().all(ok);
    let summary = reports
        .iter()
        .map(|r| {
            format!(
                "{}: alpha_phi = {:.6} (std {:.1e}) on the image in {}; matching predictions: {}{}",
                r.family,
                r.fitted_alpha_phi_mean,
                r.fitted_alpha_phi_std,
                r.image_region.label(),
                if r.matching_predictions.is_empty() {
                    "none".into()
                } else {
                    r.matching_predictions.join(", ")
                },
                if r.hv_flag || r.remark_flag {
                    "; stated curvature relations flagged"
                } else {
                    ""
                }
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let mut rows = vec![[
        "family",
        "source_alpha",
        "source_region",
        "image_region",
        "fitted_alpha_phi_mean",
        "fitted_alpha_phi_std",
        "predicted_stated",
        "predicted_flipped",
        "predicted_causal",
        "hv_discrepancy_max",
        "hv_flag",
        "remark_discrepancy_max",
        "remark_flag",
        "hausdorff_bound",
    ]
    .map(String::from)
    .to_vec()];
    rows.extend(reports.iter().map(transport_row));
    Ok(Outcome {
        command: "invert",
        passed,
        csv: Some(rows),
        report: json!({ "components": reports }),
        summary,
    })
}

impl FamilyArgs {
    fn clone_args(&self) -> FamilyArgs {
        FamilyArgs {
            family: self.family.clone(),
            n: self.n,
            r: self.r,
            c: self.c,
            part: self.part.clone(),
            center: self.center.clone(),
            sign: self.sign,
            side: self.side.clone(),
            s0: self.s0,
            c1: self.c1,
            c2: self.c2,
            params: self.params.clone(),
        }
    }
}

pub fn branch(a: &BranchArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    if a.c.len() != 4 {
        return Err(CliError::Usage(format!("--c expects 4 constants, got {}", a.c.len())));
    }
    let c = [a.c[0], a.c[1], a.c[2], a.c[3]];
    let spec = OdeBranchSpec::new(a.mu, a.k, c)?;
    let grid = parse_grid_range(&a.s_grid, "--s-grid")?;
    let r = ode_branch_explore(&spec, grid)?;
    let mut passed = r.obstruction_nonzero || r.degenerate;
    let mut summary = format!(
        "case {} (mu = {}, k = {}): (ab) residual sup {:.3e}; {}",
        r.case,
        r.mu,
        r.k,
        r.ab_residual_sup,
        r.obstruction_terms
            .iter()
            .zip(&r.obstruction)
            .map(|(t, v)| format!("coefficient of {t} = {v:.6}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    if r.degenerate {
        summary.push_str("; zero solution (plane branch)");
    }
    let mut report = json!({ "branch": r });
    if let Some(draws) = a.sweep {
        let seed = a.seed.or(cfg.seed).unwrap_or(DEFAULT_BRANCH_SEED);
        let s = branch_sweep(spec.case, draws, seed)?;
        passed &= s.sound();
        summary.push_str(&format!(
            "\nsweep: {} draws, seed {}, zero obstructions {}, min residual ratio {:.3e}",
            s.draws, s.seed, s.zero_obstructions, s.min_residual_ratio
        ));
        report["sweep"] = serde_json::to_value(&s)?;
    }
    let mut rows = vec![["term", "measured", "expected", "displayed"].map(String::from).to_vec()];
    for (i, t) in r.obstruction_terms.iter().enumerate() {
        rows.push(vec![
            t.clone(),
            num(r.obstruction[i]),
            num(r.obstruction_expected[i]),
            opt_num(r.obstruction_displayed.get(i).copied()),
        ]);
    }
    Ok(Outcome {
        command: "branch",
        passed,
        csv: Some(rows),
        report,
        summary,
    })
}

pub fn scan_catalog(a: &ScanArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let tol = cfg.tol(a.tol, DEFAULT_RESIDUAL_TOL)?;
    let mut rows = vec![{
        let mut h: Vec<String> = RESIDUAL_COLUMNS.iter().map(|s| s.to_string()).collect();
        h.push("expected".into());
        h.push("as_expected".into());
        h
    }];
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (ids, expect_pass) in [(catalog_ids(), true), (control_ids(), false)] {
        for id in ids {
            let f = family(&id)?;
            let r = scan_family(&f, None, None, tol);
            let as_expected = r.consistent() == expect_pass;
            if !as_expected {
                failures.push(id.clone());
            }
            let mut row = residual_row(&r);
            row.push(if expect_pass { "pass" } else { "fail" }.into());
            row.push(as_expected.to_string());
            rows.push(row);
            entries.push(json!({ "expected": if expect_pass { "pass" } else { "fail" }, "as_expected": as_expected, "scan": r }));
        }
    }
    let passed = failures.is_empty();
    let summary = if passed {
        format!("{} families verified, {} controls rejected", catalog_ids().len(), control_ids().len())
    } else {
        format!("unexpected outcome for: {}", failures.join(", "))
    };
    Ok(Outcome {
        command: "scan-catalog",
        passed,
        csv: Some(rows),
        report: json!({ "tolerance": tol, "entries": entries }),
        summary,
    })
}

/// Writes the OBJ to `out` and the vertex table next to it.
pub fn mesh(a: &MeshArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let out = cfg
        .out
        .clone()
        .ok_or_else(|| CliError::Usage("mesh needs --out <file.obj>".into()))?;
    let f = resolve_family(&a.family)?;
    if f.spec.domain.dim() != 2 {
        return Err(CliError::Usage(format!("{} is not a surface chart", f.spec.id)));
    }
    let dom = &f.spec.domain;
    let axis = |flag: &Option<String>, k: usize, what: &str| -> CliResult<(f64, f64, usize)> {
        match flag {
            Some(s) => parse_grid_range(s, what),
            None => Ok((dom.lo[k], dom.hi[k], f.spec.grid[k])),
        }
    };
    let (s0, s1, ns) = axis(&a.s, 0, "--s")?;
    let (t0, t1, nt) = axis(&a.t, 1, "--t")?;
    let grid = ParamBox::rect((s0, s1), (t0, t1)).grid(&[ns, nt]);
    let chart = f.chart.as_ref();
    let mut obj = format!("# {} grid {ns}x{nt}, row-major in s\n", f.spec.id);
    let mut rows = vec![["vertex", "s", "t", "x1", "x2", "x3", "xx", "mean_curvature", "fitted_alpha", "valid"]
        .map(String::from)
        .to_vec()];
    let mut valid = Vec::with_capacity(grid.len());
    for (i, u) in grid.iter().enumerate() {
        let geo = chart
            .hyper_jet(u)
            .ok()
            .filter(|j| !near_cone(&j.x))
            .and_then(|j| point_geometry(&j).ok());
        let x = chart.position(u).ok().filter(|x| x.is_finite());
        let p = x.unwrap_or_else(|| MVec::zeros(3));
        obj.push_str(&format!("v {} {} {}\n", p[0], p[1], p[2]));
        valid.push(geo.is_some());
        rows.push(vec![
            (i + 1).to_string(),
            num(u[0]),
            num(u[1]),
            num(p[0]),
            num(p[1]),
            num(p[2]),
            opt_num(x.map(|x| x.norm_sq())),
            opt_num(geo.as_ref().map(|g| g.mean_curvature)),
            opt_num(geo.as_ref().and_then(|g| g.fitted_alpha().ok())),
            geo.is_some().to_string(),
        ]);
    }
    let (mut faces, mut omitted) = (0usize, 0usize);
    for i in 0..ns - 1 {
        for j in 0..nt - 1 {
            let a0 = i * nt + j;
            let (b0, c0, d0) = (a0 + 1, a0 + nt, a0 + nt + 1);
            if [a0, b0, c0, d0].iter().all(|&k| valid[k]) {
                obj.push_str(&format!("f {} {} {}\nf {} {} {}\n", a0 + 1, b0 + 1, c0 + 1, b0 + 1, d0 + 1, c0 + 1));
                faces += 2;
            } else {
                omitted += 1;
            }
        }
    }
    obj.push_str(&format!("# omitted cells: {omitted}\n"));
    let sidecar = out.with_extension("csv");
    write_atomic(&out, &obj)?;
    write_atomic(&sidecar, &csv_string(&rows)?)?;
    let invalid = valid.iter().filter(|v| !**v).count();
    Ok(Outcome {
        command: "mesh",
        passed: true,
        csv: None,
        report: json!({
            "family": f.spec.id,
            "obj": out.display().to_string(),
            "sidecar": sidecar.display().to_string(),
            "vertices": grid.len(),
            "invalid_vertices": invalid,
            "faces": faces,
            "omitted_cells": omitted,
        }),
        summary: format!(
            "wrote {} ({} vertices, {faces} faces, {omitted} cells omitted) and {}",
            out.display(),
            grid.len(),
            sidecar.display()
        ),
    })
}

pub fn witness(a: &WitnessArgs) -> CliResult<Outcome> {
    let p = WitnessParams {
        m: a.m,
        k: a.k,
        a: a.a,
        b: a.b,
        c: a.c,
        d: a.d,
    };
    let r = thnli2_witness_check(&p)?;
    // the chart may touch the cone, so the polynomial leads decide when it cannot be classified
    let passed = r.measured_vs_recomputed <= WITNESS_LEAD_TOL
        && !r.recomputed_simultaneous_zero
        && r.verdict.as_ref().is_none_or(|v| *v == StationaryVerdict::NotStationary);
    let mut summary = format!(
        "k = {}: leads displayed ({:.6}, {:.6}), recomputed ({:.6}, {:.6}), measured ({:.6}, {:.6}); chart {}",
        p.k,
        r.displayed_lead_a0,
        r.displayed_lead_a1,
        r.recomputed_lead_a0,
        r.recomputed_lead_a1,
        r.measured_lead_a0,
        r.measured_lead_a1,
        match (&r.verdict, &r.classify_error) {
            (Some(v), _) => format!("{v:?}"),
            (None, Some(e)) => format!("not classified: {e}"),
            _ => "not classified".into(),
        }
    );
    for c in &r.counterexamples {
        summary.push_str(&format!(
            "\nk = 1/2, b = {}, c = {}, d = {}: {:?}, fitted alpha {:.6}",
            c.params.b, c.params.c, c.params.d, c.verdict, c.fitted_alpha_mean
        ));
    }
    let rows = vec![
        ["quantity", "displayed", "recomputed", "measured"].map(String::from).to_vec(),
        vec!["lead_a0".into(), num(r.displayed_lead_a0), num(r.recomputed_lead_a0), num(r.measured_lead_a0)],
        vec!["lead_a1".into(), num(r.displayed_lead_a1), num(r.recomputed_lead_a1), num(r.measured_lead_a1)],
    ];
    Ok(Outcome {
        command: "witness",
        passed,
        csv: Some(rows),
        report: serde_json::to_value(&r)?,
        summary,
    })
}

pub fn max_principle(a: &MaxPrincipleArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let deltas = a.delta.clone().or_else(|| cfg.delta.clone()).unwrap_or_else(|| vec![0.1, 0.5, 1.0]);
    if deltas.is_empty() || deltas.iter().any(|d| !(*d > 0.0)) {
        return Err(CliError::Usage("--delta values must be positive".into()));
    }
    let fams: Vec<Family> = catalog_ids().iter().map(|id| family(id)).collect::<Result<_, GeomError>>()?;
    let r = max_principle_scan(&fams, &deltas);
    let mut rows = vec![["family", "n", "far_delta", "status"].map(String::from).to_vec()];
    for e in &r.entries {
        rows.push(vec![
            e.family.clone(),
            e.n.to_string(),
            opt_num(e.far_delta),
            serde_json::to_value(e.status)?.as_str().unwrap_or_default().to_string(),
        ]);
    }
    let summary = r
        .entries
        .iter()
        .filter(|e| e.status != lmstat_core::verifier::MaxPrincipleStatus::NotApplicable)
        .map(|e| format!("{}: {:?}", e.family, e.status))
        .chain(std::iter::once(format!("violations: {}", r.violations)))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        command: "max-principle",
        passed: r.violations == 0,
        csv: Some(rows),
        report: serde_json::to_value(&r)?,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("-2:0", "--t").unwrap(), (-2.0, 0.0));
        assert!(parse_range("1:1", "--t").is_err());
        assert!(parse_range("a:b", "--t").is_err());
        assert_eq!(parse_grid_range("-1:1:201", "--s").unwrap(), (-1.0, 1.0, 201));
        assert!(parse_grid_range("0:1:1", "--s").is_err());
        assert!(parse_grid_range("0:1", "--s").is_err());
    }
}
