use lmstat_core::catalog::{family, witness_chart};
use lmstat_core::curve::SplineCurve;
use lmstat_core::ruled::{classify_ruled, ClassifyOptions, RuledChart, RulingClass, StationaryVerdict};
use lmstat_core::surface::linspace;
use lmstat_core::verifier::half_k_witness;
use lmstat_core::MVec;
use std::sync::Arc;

fn classify(id: &str) -> lmstat_core::ruled::ClassificationReport {
    let f = family(id).unwrap();
    classify_ruled(f.ruled.as_ref().unwrap(), &ClassifyOptions::default()).unwrap()
}

#[test]
fn catalog_ruled_families_match_their_branches() {
    for (id, class, alpha, branch) in [
        ("thnli-1a?sign=1", RulingClass::NonLightlikeWNonLightlikeWp, 1.0, "th-nli (1a)"),
        ("thnli-1b?c1=1&c2=0", RulingClass::NonLightlikeWNonLightlikeWp, 1.0, "th-nli (1b)"),
        ("thnli-2?c1=0&c2=1", RulingClass::NonLightlikeWNonLightlikeWp, -1.0, "th-nli (2)"),
        ("thli-1", RulingClass::LightlikeW, 2.0, "th-li (1)"),
        ("thli-2b?side=minus", RulingClass::LightlikeW, 4.0, "th-li (2b)"),
        ("thli-2b?side=plus", RulingClass::LightlikeW, -4.0, "th-li (2b)"),
    ] {
        let r = classify(id);
        assert_eq!(r.ruling_class, class, "{id}");
        assert_eq!(r.branch, branch, "{id}");
        match r.verdict {
            StationaryVerdict::Stationary { alpha: a } => assert!((a - alpha).abs() < 1e-6, "{id}: {a}"),
            v => panic!("{id}: {v:?}"),
        }
    }
}

#[test]
fn controls_are_rejected() {
    for id in ["helicoid-like", "cylinder-circular", "thnli2-witness"] {
        assert_eq!(classify(id).verdict, StationaryVerdict::NotStationary, "{id}");
    }
}

#[test]
fn half_k_lightlike_wprime_chart_is_stationary() {
    let chart = witness_chart(&half_k_witness(1.0, 1.0, 0.0), (0.5, 1.5), (-0.3, 0.3));
    let r = classify_ruled(&chart, &ClassifyOptions::default()).unwrap();
    assert_eq!(r.ruling_class, RulingClass::NonLightlikeWLightlikeWp);
    assert!(matches!(r.verdict, StationaryVerdict::Stationary { alpha } if (alpha + 0.5).abs() < 1e-6));
    assert_eq!(r.branch, "th-nli2: non-planar");
}

#[test]
fn sampled_example_two_classifies_from_splines() {
    let s = linspace(0.9, 1.5, 41);
    let g: Vec<MVec> = s.iter().map(|&x| MVec::xyz(x.sin(), -x.cos(), (x / 2.0).tan())).collect();
    let w: Vec<MVec> = s.iter().map(|&x| MVec::xyz(x.cos(), x.sin(), 1.0)).collect();
    let chart = RuledChart::new(
        Arc::new(SplineCurve::new(&s, &g).unwrap()),
        Arc::new(SplineCurve::new(&s, &w).unwrap()),
        (0.95, 1.45),
        (-2.0, 0.0),
    );
    let opts = ClassifyOptions {
        causal_tol: 1e-6,
        stationarity_tol: 1e-4,
        ..ClassifyOptions::default()
    };
    let r = classify_ruled(&chart, &opts).unwrap();
    assert_eq!(r.ruling_class, RulingClass::LightlikeW);
    assert!(matches!(r.verdict, StationaryVerdict::Stationary { alpha } if (alpha - 4.0).abs() < 1e-3), "{r:?}");
}
