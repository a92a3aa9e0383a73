//! Closed forms for named special cases, each checked against the general
//! bound obtained by substituting the corresponding kernel and target.
//!
//! Every specialization evaluates its own printed formula independently of
//! [`FsParams`]. Printed thresholds that do not match the general ones are
//! returned as [`Finding`]s; the general route is the reference.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BoundReport, Improvement, Regime, Scalar};
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::psi_map::ClassSpec;
use crate::targets::Target;

pub const SPECIALIZATIONS: [&str; 6] = [
    "fractional",
    "janowski_general",
    "polar_example",
    "raducanu",
    "keogh_merkes_star",
    "keogh_merkes_convex",
];

const AGREE_TOL: f64 = 1e-10;

/// Inputs for [`specialization_check`]; each specialization reads the fields it needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpecializationParams {
    pub alpha: f64,
    pub mu: Complex64,
    /// Fractional-derivative order for `fractional`.
    pub delta: f64,
    /// Janowski parameters for `janowski_general`.
    pub c: f64,
    pub d: f64,
    /// Salagean order for `raducanu`.
    pub m: u32,
    /// Kernel for `janowski_general` and `polar_example`.
    pub kernel: Kernel,
    /// Target for `fractional`.
    pub target: Target,
}

impl Default for SpecializationParams {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            mu: Complex64::new(0.0, 0.0),
            delta: 0.5,
            c: 1.0,
            d: -1.0,
            m: 1,
            kernel: Kernel::Identity,
            target: Target::half_plane(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FindingKind {
    /// A printed quantity differs numerically from the general one.
    Mismatch,
    /// A printed formula is laid out differently from the general one; the
    /// `consistent` flag says whether the values nevertheless coincide.
    Layout,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub field: String,
    pub printed: f64,
    pub general: f64,
    pub consistent: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecializationReport {
    pub name: String,
    pub specialized: BoundReport,
    pub general: BoundReport,
    /// Bound values (and any refined-inequality constants) coincide.
    pub agree: bool,
    pub findings: Vec<Finding>,
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= AGREE_TOL * a.abs().max(b.abs()).max(1.0)
}

fn real_mu(name: &str, mu: Complex64) -> Result<f64> {
    if mu.im != 0.0 {
        return Err(Error::OutOfRange(format!("{name} is stated for real mu, got {mu}")));
    }
    Ok(mu.re)
}

fn threshold_finding(field: &str, printed: f64, general: f64, note: &str) -> Option<Finding> {
    (!near(printed, general)).then(|| Finding {
        kind: FindingKind::Mismatch,
        field: field.into(),
        printed,
        general,
        consistent: false,
        note: format!("{note}; printed/general = {}", printed / general),
    })
}

/// Printed piecewise data for a real-mu specialization.
struct Printed {
    sigma1: f64,
    sigma2: f64,
    sigma3: Option<f64>,
    below: f64,
    middle: f64,
    above: f64,
    /// Refined-inequality coefficient branches `([sigma1, sigma3], [sigma3, sigma2])`.
    branches: Option<(f64, f64)>,
    a2: Option<f64>,
}

fn real_case(name: &str, spec: &ClassSpec, mu: f64, printed: Printed, mut findings: Vec<Finding>) -> SpecializationReport {
    let p = spec.params();
    let general = p.fs_real(mu);
    // Branch selection follows the general thresholds so that the printed
    // branch formulas are compared on their own merits; printed thresholds
    // are audited separately.
    let regime = general.regime;
    let bound = match regime {
        Regime::Below => printed.below,
        Regime::Above => printed.above,
        _ => printed.middle,
    };
    let printed_regime = if mu < printed.sigma1 {
        Regime::Below
    } else if mu > printed.sigma2 {
        Regime::Above
    } else {
        Regime::Middle
    };
    if printed_regime != regime {
        findings.push(Finding {
            kind: FindingKind::Mismatch,
            field: "regime".into(),
            printed: printed.sigma2,
            general: general.sigma2,
            consistent: false,
            note: format!(
                "printed thresholds place mu = {mu} in {} instead of {}",
                printed_regime.as_str(),
                regime.as_str()
            ),
        });
    }
    findings.extend(threshold_finding("sigma1", printed.sigma1, general.sigma1, "printed sigma1"));
    findings.extend(threshold_finding("sigma2", printed.sigma2, general.sigma2, "printed sigma2"));
    if let Some(s3) = printed.sigma3 {
        findings.extend(threshold_finding("sigma3", s3, general.sigma3, "printed sigma3"));
    }
    let sigma3 = printed.sigma3.unwrap_or(general.sigma3);

    let mut agree = near(bound, general.bound);
    let improvement = match (regime, printed.branches) {
        (Regime::Middle, Some((first, second))) => {
            let coefficient = if mu <= general.sigma3 { first } else { second };
            let imp = Improvement { coefficient, rhs: printed.middle };
            if let Some(g) = general.improvement {
                agree &= near(imp.coefficient, g.coefficient) && near(imp.rhs, g.rhs);
            }
            Some(imp)
        }
        _ => None,
    };
    if let Some(a2) = printed.a2 {
        let g = p.a2_bound();
        if !near(a2, g) {
            agree = false;
            findings.push(Finding {
                kind: FindingKind::Mismatch,
                field: "a2_bound".into(),
                printed: a2,
                general: g,
                consistent: false,
                note: "printed |a2| bound".into(),
            });
        }
    }
    SpecializationReport {
        name: name.into(),
        specialized: BoundReport {
            mu: Scalar::Real(mu),
            sigma1: printed.sigma1,
            sigma2: printed.sigma2,
            sigma3,
            regime,
            bound,
            v: general.v,
            improvement,
        },
        general,
        agree,
        findings,
    }
}

fn complex_case(name: &str, spec: &ClassSpec, mu: Complex64, printed_bound: f64) -> SpecializationReport {
    let general = spec.params().fs_complex(mu);
    let specialized = BoundReport { bound: printed_bound, ..general.clone() };
    SpecializationReport {
        name: name.into(),
        agree: near(printed_bound, general.bound),
        specialized,
        general,
        findings: Vec::new(),
    }
}

/// Evaluates a named special case by its own closed form and by the general
/// theorem, and reports whether they agree.
pub fn specialization_check(name: &str, params: &SpecializationParams) -> Result<SpecializationReport> {
    let a = params.alpha;
    let a1 = (1.0 + a) * (1.0 + a);
    let q = a * a - 4.0 * a - 1.0;
    let two_a1 = 2.0 * a + 1.0;
    match name {
        "fractional" => {
            let mu = real_mu(name, params.mu)?;
            let delta = params.delta;
            let spec = ClassSpec::new(a, Kernel::OwaSrivastava { delta }, params.target.clone())?;
            let (bb1, bb2) = (params.target.b1(), params.target.b2());
            let pref = (2.0 - delta) * (3.0 - delta) * bb1 / (12.0 * two_a1);
            let x = q * bb1 / a1;
            let m = 3.0 * mu * two_a1 * (2.0 - delta) * bb1 / (a1 * (3.0 - delta));
            let printed = Printed {
                sigma1: a1 * (3.0 - delta) / (3.0 * (2.0 - delta) * two_a1 * bb1) * (bb2 / bb1 - x - 1.0),
                sigma2: a1 * (3.0 - delta) / ((2.0 - delta) * two_a1 * bb1) * (1.0 + bb2 / bb1 - x),
                sigma3: None,
                below: pref * (bb2 / bb1 - x - m),
                middle: pref,
                above: pref * (x + m - bb2 / bb1),
                branches: None,
                a2: Some((2.0 - delta) * bb1 / (2.0 * (1.0 + a))),
            };
            Ok(real_case(name, &spec, mu, printed, Vec::new()))
        }
        "janowski_general" => {
            let mu = real_mu(name, params.mu)?;
            let (c, d) = (params.c, params.d);
            let spec = ClassSpec::new(a, params.kernel.clone(), Target::janowski(c, d)?)?;
            let (b2, b3) = (spec.b2(), spec.b3());
            let cd = c - d;
            let x = q * cd / a1;
            let m = 2.0 * mu * two_a1 * cd * b3 / (a1 * b2 * b2);
            let k = a1 * b2 * b2 / (2.0 * two_a1 * b3);
            let denom = 2.0 * two_a1 * b3.abs();
            let below_printed = (d - c) / denom * (d + x + m);
            let printed = Printed {
                sigma1: k / (d - c) * (1.0 + d + x),
                sigma2: k / cd * (1.0 - d - x),
                sigma3: Some(k / (d - c) * (d + x)),
                below: below_printed,
                middle: cd / denom,
                above: cd / denom * (d + x + m),
                branches: Some((
                    a1 * b2 * b2 / (2.0 * two_a1 * cd * b3.abs()) * (1.0 + d + x + m),
                    a1 * b2 * b2 / (2.0 * two_a1 * cd * b3.abs()) * (1.0 - d - x - m),
                )),
                a2: Some(cd / ((1.0 + a) * b2.abs())),
            };
            let general_below = spec.params().below_formula(mu);
            let layout = Finding {
                kind: FindingKind::Layout,
                field: "below_bound".into(),
                printed: below_printed,
                general: general_below,
                consistent: near(below_printed, general_below),
                note: "Below case is printed with leading factor (D-C) and the Above-case bracket; \
                       compared with the general Below formula at the same mu"
                    .into(),
            };
            Ok(real_case(name, &spec, mu, printed, vec![layout]))
        }
        "polar_example" => {
            let mu = real_mu(name, params.mu)?;
            let spec = ClassSpec::new(a, params.kernel.clone(), Target::half_plane())?;
            let (b2, b3) = (spec.b2(), spec.b3());
            let r = b3 / (b2 * b2);
            let printed = Printed {
                sigma1: (1.0 + 4.0 * a - a * a) * b2 * b2 / (2.0 * two_a1 * b3),
                sigma2: (3.0 * a + 1.0) * b2 * b2 / (two_a1 * b3),
                sigma3: Some((3.0 + 10.0 * a - a * a) * b2 * b2 / (4.0 * two_a1 * b3)),
                below: 1.0 / (a1 * b3.abs()) * ((3.0 + 10.0 * a - a * a) / two_a1 - 4.0 * mu * r),
                middle: 1.0 / (two_a1 * b3.abs()),
                above: 1.0 / (a1 * b3.abs()) * ((a * a - 10.0 * a - 3.0) / two_a1 + 4.0 * mu * r),
                branches: Some((
                    b2 * b2 / (2.0 * b3.abs()) * (q / two_a1 + 2.0 * mu * r),
                    b2 * b2 / b3.abs() * ((3.0 * a + 1.0) / two_a1 - mu * r),
                )),
                a2: Some(2.0 / ((1.0 + a) * b2.abs())),
            };
            Ok(real_case(name, &spec, mu, printed, Vec::new()))
        }
        "raducanu" => {
            let m = params.m;
            let spec = ClassSpec::new(a, Kernel::Salagean { m }, Target::half_plane())?;
            let p2 = 2f64.powi(2 * m as i32 - 1);
            let p3 = 3f64.powi(m as i32);
            let inner = (params.mu * (2.0 * p3 * two_a1) + p2 * (a * a - 10.0 * a - 3.0)).norm() / (p2 * a1);
            let printed = inner.max(1.0) / (p3 * two_a1);
            Ok(complex_case(name, &spec, params.mu, printed))
        }
        "keogh_merkes_star" => {
            let spec = ClassSpec::new(0.0, Kernel::Identity, Target::half_plane())?;
            let printed = (params.mu * 4.0 - 3.0).norm().max(1.0);
            Ok(complex_case(name, &spec, params.mu, printed))
        }
        "keogh_merkes_convex" => {
            let spec = ClassSpec::new(1.0, Kernel::Identity, Target::half_plane())?;
            let printed = (params.mu - 1.0).norm().max(1.0 / 3.0);
            Ok(complex_case(name, &spec, params.mu, printed))
        }
        other => Err(Error::UnknownSpecialization(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_mu(mu: f64) -> SpecializationParams {
        SpecializationParams { mu: mu.into(), ..Default::default() }
    }

    #[test]
    fn keogh_merkes_star_at_two() {
        let r = specialization_check("keogh_merkes_star", &with_mu(2.0)).unwrap();
        assert!(r.agree);
        assert!((r.specialized.bound - 5.0).abs() < 1e-12);
        assert!((r.general.bound - 5.0).abs() < 1e-12);
    }

    #[test]
    fn polar_example_starlike_point() {
        let r = specialization_check("polar_example", &with_mu(0.0)).unwrap();
        assert!(r.agree, "{r:?}");
        assert!(r.findings.is_empty());
        assert!((r.specialized.sigma1 - 0.5).abs() < 1e-12);
        assert!((r.specialized.sigma2 - 1.0).abs() < 1e-12);
        assert!((r.specialized.bound - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fractional_sigma2_discrepancy_is_surfaced() {
        let base = SpecializationParams { delta: 0.5, ..Default::default() };
        let spec = ClassSpec::new(0.0, Kernel::OwaSrivastava { delta: 0.5 }, Target::half_plane()).unwrap();
        let mu = spec.params().sigma2() + 1.0;
        let r = specialization_check("fractional", &SpecializationParams { mu: mu.into(), ..base }).unwrap();
        assert_eq!(r.general.regime, Regime::Above);
        assert!(r.agree, "Above-regime formula must match: {r:?}");
        let f = r.findings.iter().find(|f| f.field == "sigma2").expect("sigma2 finding");
        assert_eq!(f.kind, FindingKind::Mismatch);
        assert!((f.printed / f.general - 3.0).abs() < 1e-12);
        assert!(r.findings.iter().all(|f| f.field != "sigma1"));
    }

    #[test]
    fn janowski_layout_reported_and_consistent() {
        let params = SpecializationParams {
            c: 0.5,
            d: -0.5,
            alpha: 0.5,
            kernel: Kernel::Ruscheweyh { k: 1 },
            mu: Complex64::new(-1.0, 0.0),
            ..Default::default()
        };
        let r = specialization_check("janowski_general", &params).unwrap();
        assert_eq!(r.general.regime, Regime::Below);
        assert!(r.agree);
        let f = &r.findings[0];
        assert_eq!(f.kind, FindingKind::Layout);
        assert!(f.consistent);
        assert_eq!(r.findings.len(), 1);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            specialization_check("hankel", &SpecializationParams::default()),
            Err(Error::UnknownSpecialization(_))
        ));
    }

    #[test]
    fn real_only_cases_reject_complex_mu() {
        let p = SpecializationParams { mu: Complex64::new(0.0, 1.0), ..Default::default() };
        assert!(specialization_check("polar_example", &p).is_err());
    }
}
