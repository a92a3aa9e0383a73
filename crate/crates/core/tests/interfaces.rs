use fszego::bounds::{fs_bound, fs_real};
use fszego::kernels::Kernel;
use fszego::oracle::{
    extremal, member_from_point, schwarz_path_check, sup_search, CaratheodoryPoint, ExtremalKind, SearchOptions,
};
use fszego::psi_map::ClassSpec;
use fszego::series::TruncSeries;
use fszego::targets::Target;
use fszego::Error;
use num_complex::Complex64;
use serde_json::json;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn starlike() -> ClassSpec {
    ClassSpec::new(0.0, Kernel::Identity, Target::half_plane()).unwrap()
}

fn convex() -> ClassSpec {
    ClassSpec::new(1.0, Kernel::Identity, Target::half_plane()).unwrap()
}

#[test]
fn descriptors_have_fixed_shape() {
    let k = serde_json::to_value(Kernel::Multiplier { r: 2, lambda: 1.0 }).unwrap();
    assert_eq!(k, json!({"family": "multiplier", "params": {"r": 2, "lambda": 1.0}}));
    let t = serde_json::to_value(Target::janowski(1.0, -1.0).unwrap()).unwrap();
    assert_eq!(t, json!({"kind": "janowski", "C": 1.0, "D": -1.0}));
    let spec = ClassSpec::new(0.5, Kernel::Ruscheweyh { k: 2 }, Target::janowski(0.5, -0.5).unwrap()).unwrap();
    let text = serde_json::to_string(&spec).unwrap();
    let back: ClassSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(back, spec);

    let report = serde_json::to_value(fs_real(&starlike(), 0.0)).unwrap();
    for key in ["mu", "sigma1", "sigma2", "sigma3", "regime", "bound", "v", "improvement"] {
        assert!(report.get(key).is_some(), "{key}");
    }
    assert_eq!(report["regime"], "Below");
    assert!(report["improvement"].is_null());
}

#[test]
fn caratheodory_examples() {
    let p = CaratheodoryPoint::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    assert_eq!((p.c1, p.c2), (c(2.0, 0.0), c(2.0, 0.0)));
    let p = CaratheodoryPoint::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    assert_eq!((p.c1, p.c2), (c(0.0, 0.0), c(2.0, 0.0)));
    let p = CaratheodoryPoint::new(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
    assert_eq!((p.c1, p.c2), (c(1.0, 0.0), c(0.5, 0.0)));
    assert!(matches!(CaratheodoryPoint::new(c(1.0 + 1e-9, 0.0), c(0.0, 0.0)), Err(Error::OutOfDisk { .. })));
}

#[test]
fn members_from_points() {
    let s = starlike();
    let koebe = CaratheodoryPoint::from_coefficients(c(2.0, 0.0), c(2.0, 0.0)).unwrap();
    let (a2, a3) = member_from_point(&koebe, &s);
    assert!((a2 - 2.0).norm() < 1e-15 && (a3 - 3.0).norm() < 1e-15);
    let mid = CaratheodoryPoint::from_coefficients(c(0.0, 0.0), c(2.0, 0.0)).unwrap();
    let (a2, a3) = member_from_point(&mid, &s);
    assert!(a2.norm() < 1e-15 && (a3 - 1.0).norm() < 1e-15);
    let zero = CaratheodoryPoint::new(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
    assert_eq!(member_from_point(&zero, &s), (c(0.0, 0.0), c(0.0, 0.0)));
}

#[test]
fn search_examples() {
    let opts = SearchOptions::default();
    let r = sup_search(&starlike(), c(0.0, 0.0), &opts).unwrap();
    assert!((r.empirical_sup - 3.0).abs() < 5e-3 && !r.violation);
    let r = sup_search(&convex(), c(1.0, 0.0), &opts).unwrap();
    assert!((r.empirical_sup - 1.0 / 3.0).abs() < 5e-3);
    // inside (sigma1, sigma2) the maximizer sits at the centre
    let s = ClassSpec::new(0.5, Kernel::Salagean { m: 1 }, Target::janowski(1.0, 0.0).unwrap()).unwrap();
    let p = s.params();
    let r = sup_search(&s, c(0.5 * (p.sigma1() + p.sigma2()), 0.0), &opts).unwrap();
    assert!(r.argmax.zeta1.norm() < 1e-2, "{:?}", r.argmax);
    assert!(matches!(sup_search(&s, c(0.0, 0.0), &SearchOptions { grid_density: 4, ..opts }), Err(Error::OutOfRange(_))));
}

#[test]
fn complex_mu_search_respects_bound() {
    let s = ClassSpec::new(1.0, Kernel::Ruscheweyh { k: 1 }, Target::janowski(1.0, 0.0).unwrap()).unwrap();
    let opts = SearchOptions { grid_density: 200, ..Default::default() };
    for mu in [c(0.3, 1.2), c(-1.0, -0.5), c(2.0, 0.1)] {
        let r = sup_search(&s, mu, &opts).unwrap();
        assert!(r.empirical_sup <= fs_bound(&s, mu).bound + 1e-9);
        assert!(r.gap <= 5e-3, "{mu}: {}", r.gap);
    }
}

#[test]
fn extremal_examples() {
    let s = starlike();
    let (a2, a3) = extremal(ExtremalKind::K2, &s).unwrap();
    assert!((a2 - 2.0).norm() < 1e-14 && (a3 - 3.0).norm() < 1e-14);
    assert_eq!(extremal(ExtremalKind::Ggamma(1.0), &s).unwrap(), (a2, a3));
    for spec in [starlike(), convex()] {
        let (b2, b3) = extremal(ExtremalKind::K3, &spec).unwrap();
        assert_eq!(b2, c(0.0, 0.0));
        assert!(((b3 - b2 * b2 * 0.9).norm() - spec.params().middle_value()).abs() < 1e-15);
    }
    assert!(matches!(extremal(ExtremalKind::Hgamma(1.5), &s), Err(Error::OutOfRange(_))));
}

#[test]
fn schwarz_paths_agree() {
    let s = ClassSpec::new(0.5, Kernel::OwaSrivastava { delta: 0.5 }, Target::janowski(0.5, -0.5).unwrap()).unwrap();
    let w = TruncSeries::from_real(&[0.0, 0.3, 0.2], 8);
    let r = schwarz_path_check(&s, &w, c(0.7, 0.0)).unwrap();
    assert!(r.agree, "{r:?}");
    let r = schwarz_path_check(&s, &TruncSeries::monomial(2, 8), c(0.0, 0.0)).unwrap();
    assert!(r.agree && r.via_series.0.norm() < 1e-15);
    let bad = TruncSeries::from_real(&[0.0, 1.5], 8);
    assert!(matches!(schwarz_path_check(&s, &bad, c(0.0, 0.0)), Err(Error::NotSchwarz(_))));
}
