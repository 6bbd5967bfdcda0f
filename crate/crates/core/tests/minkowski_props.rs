use lmstat_core::minkowski::{inversion, inversion_differential, lorentz_cross, mink_dot, triple};
use lmstat_core::{cone_region, ConeRegion, MVec};
use proptest::prelude::*;

fn vec3() -> impl Strategy<Value = MVec> {
    prop::array::uniform3(-3.0f64..3.0).prop_map(|[a, b, c]| MVec::xyz(a, b, c))
}

fn off_cone() -> impl Strategy<Value = MVec> {
    vec3().prop_filter("off the cone", |p| p.norm_sq().abs() > 0.05 * (1.0 + p.euclid_norm_sq()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dot_is_symmetric(u in vec3(), v in vec3()) {
        prop_assert_eq!(mink_dot(&u, &v).unwrap(), mink_dot(&v, &u).unwrap());
    }

    #[test]
    fn cross_is_orthogonal(u in vec3(), v in vec3()) {
        let c = lorentz_cross(&u, &v).unwrap();
        let scale = 1.0 + u.euclid_norm_sq() * v.euclid_norm();
        prop_assert!(mink_dot(&c, &u).unwrap().abs() <= 1e-12 * scale);
        prop_assert!(mink_dot(&c, &v).unwrap().abs() <= 1e-12 * scale);
    }

    #[test]
    fn triple_matches_cross(u in vec3(), v in vec3(), w in vec3()) {
        let t = triple(&u, &v, &w).unwrap();
        let c = mink_dot(&lorentz_cross(&u, &v).unwrap(), &w).unwrap();
        prop_assert!((t - c).abs() <= 1e-10 * (1.0 + t.abs()));
    }

    #[test]
    fn inversion_is_an_involution_preserving_regions(p in off_cone()) {
        let q = inversion(&p).unwrap();
        let back = inversion(&q).unwrap();
        prop_assert!(back.max_abs_diff(&p) <= 1e-12 * (1.0 + p.euclid_norm()));
        let tol = |x: &MVec| 1e-9 * (1.0 + x.euclid_norm_sq());
        let (a, b) = (cone_region(&p, tol(&p)), cone_region(&q, tol(&q)));
        prop_assert!(a != ConeRegion::OnCone);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inversion_is_conformal(p in off_cone(), v in vec3()) {
        let d = inversion_differential(&p, &v).unwrap();
        let pp = p.norm_sq();
        let want = v.norm_sq() / (pp * pp);
        prop_assert!((d.norm_sq() - want).abs() <= 1e-9 * (1.0 + want.abs() + d.euclid_norm_sq()));
    }
}
