//! Closed-form coefficient and Fekete-Szego bounds.
//!
//! With `P = (alpha, b_2, b_3, B_1, B_2)` from [`FsParams`], write
//!
//! ```text
//! X    = (alpha^2 - 4 alpha - 1) B_1 / (1+alpha)^2
//! M(mu) = 2 mu (2 alpha + 1) B_1 b_3 / ((1+alpha)^2 b_2^2)
//! K    = (1+alpha)^2 b_2^2 / (2 (2 alpha + 1) B_1 b_3)
//! v(mu) = (1 - B_2/B_1 + X + M(mu)) / 2
//! ```
//!
//! so that `a_3 - mu a_2^2 = B_1/(4(2alpha+1) b_3) (c_2 - v c_1^2)` for the
//! Caratheodory coefficients `c_1, c_2` attached to `f`. The regime
//! breakpoints are the `mu` at which `v` equals 0, 1/2 and 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::psi_map::{ClassSpec, FsParams};

pub mod specializations;

pub use specializations::{
    specialization_check, Finding, FindingKind, SpecializationParams, SpecializationReport,
};

/// A real or complex scalar. Real values serialize as a bare number,
/// complex ones as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex(Complex64),
}

impl Scalar {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Scalar::Real(x) => Complex64::new(x, 0.0),
            Scalar::Complex(z) => z,
        }
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Real(x)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Complex(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Below,
    Middle,
    Above,
    ComplexMax,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Below => "Below",
            Regime::Middle => "Middle",
            Regime::Above => "Above",
            Regime::ComplexMax => "ComplexMax",
        }
    }
}

/// Right-hand data of a refined inequality `|a_3 - mu a_2^2| + coefficient |a_2|^2 <= rhs`
/// (or, for the Caratheodory lemma, `|c_2 - v c_1^2| + coefficient |c_1|^2 <= rhs`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Improvement {
    pub coefficient: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub mu: Scalar,
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
    pub regime: Regime,
    pub bound: f64,
    pub v: Scalar,
    pub improvement: Option<Improvement>,
}

/// Sharp bound on `|c_2 - v c_1^2|` over the Caratheodory class, real `v`.
pub fn lemma_minda(v: f64) -> f64 {
    if v <= 0.0 {
        -4.0 * v + 2.0
    } else if v <= 1.0 {
        2.0
    } else {
        4.0 * v - 2.0
    }
}

/// The refinement `|c_2 - v c_1^2| + coefficient |c_1|^2 <= 2` for `0 < v <= 1`.
pub fn lemma_minda_improved(v: f64) -> Result<Improvement> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::OutOfRange(format!("refined lemma needs 0 < v <= 1, got {v}")));
    }
    let coefficient = if v <= 0.5 { v } else { 1.0 - v };
    Ok(Improvement { coefficient, rhs: 2.0 })
}

/// Sharp bound on `|c_2 - v c_1^2|` for complex `v`.
pub fn lemma_ravi(v: Complex64) -> f64 {
    2.0 * (2.0 * v - 1.0).norm().max(1.0)
}

impl FsParams {
    fn pair_factor(&self) -> f64 {
        2.0 * (2.0 * self.alpha + 1.0)
    }

    fn alpha1_sq(&self) -> f64 {
        (1.0 + self.alpha) * (1.0 + self.alpha)
    }

    /// `(alpha^2 - 4 alpha - 1) B_1/(1+alpha)^2`
    pub fn x_term(&self) -> f64 {
        self.quad() * self.big_b1 / self.alpha1_sq()
    }

    /// `2 mu (2 alpha + 1) B_1 b_3/((1+alpha)^2 b_2^2)`
    pub fn mu_term(&self, mu: Complex64) -> Complex64 {
        mu * (self.pair_factor() * self.big_b1 * self.b3 / (self.alpha1_sq() * self.b2 * self.b2))
    }

    fn ratio(&self) -> f64 {
        self.big_b2 / self.big_b1
    }

    /// `(1+alpha)^2 b_2^2 / (2 (2 alpha + 1) B_1 b_3)`
    pub fn sigma_scale(&self) -> f64 {
        self.alpha1_sq() * self.b2 * self.b2 / (self.pair_factor() * self.big_b1 * self.b3)
    }

    /// `B_1 / (2 (2 alpha + 1) |b_3|)`, the bound in the middle regime.
    pub fn middle_value(&self) -> f64 {
        self.big_b1 / (self.pair_factor() * self.b3.abs())
    }

    pub fn a2_bound(&self) -> f64 {
        self.big_b1 / ((1.0 + self.alpha) * self.b2.abs())
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma_scale() * (self.ratio() - self.x_term() - 1.0)
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma_scale() * (1.0 + self.ratio() - self.x_term())
    }

    pub fn sigma3(&self) -> f64 {
        self.sigma_scale() * (self.ratio() - self.x_term())
    }

    pub fn v(&self, mu: Complex64) -> Complex64 {
        (self.mu_term(mu) + (1.0 - self.ratio() + self.x_term())) * 0.5
    }

    /// The `mu <= sigma_1` branch, evaluated at any `mu`.
    pub fn below_formula(&self, mu: f64) -> f64 {
        self.middle_value() * (self.ratio() - self.x_term() - self.mu_term(mu.into()).re)
    }

    /// The `mu >= sigma_2` branch, evaluated at any `mu`.
    pub fn above_formula(&self, mu: f64) -> f64 {
        self.middle_value() * (self.x_term() + self.mu_term(mu.into()).re - self.ratio())
    }

    pub fn regime(&self, mu: f64) -> Regime {
        if mu < self.sigma1() {
            Regime::Below
        } else if mu > self.sigma2() {
            Regime::Above
        } else {
            Regime::Middle
        }
    }

    pub fn fs_real(&self, mu: f64) -> BoundReport {
        let regime = self.regime(mu);
        let (bound, improvement) = match regime {
            Regime::Below => (self.below_formula(mu), None),
            Regime::Above => (self.above_formula(mu), None),
            _ => (self.middle_value(), self.fs_improved(mu).ok()),
        };
        BoundReport {
            mu: Scalar::Real(mu),
            sigma1: self.sigma1(),
            sigma2: self.sigma2(),
            sigma3: self.sigma3(),
            regime,
            bound,
            v: Scalar::Real(self.v(mu.into()).re),
            improvement,
        }
    }

    pub fn fs_complex(&self, mu: Complex64) -> BoundReport {
        let spread = self.mu_term(mu) + (self.x_term() - self.ratio());
        BoundReport {
            mu: Scalar::Complex(mu),
            sigma1: self.sigma1(),
            sigma2: self.sigma2(),
            sigma3: self.sigma3(),
            regime: Regime::ComplexMax,
            bound: self.middle_value() * spread.norm().max(1.0),
            v: Scalar::Complex(self.v(mu)),
            improvement: None,
        }
    }

    /// Both refined-inequality coefficients at `mu`: the `[sigma_1, sigma_3]`
    /// branch and the `[sigma_3, sigma_2]` branch. With `b_3 > 0` they reduce
    /// to `mu - sigma_1` and `sigma_2 - mu`.
    pub fn improvement_branches(&self, mu: f64) -> (f64, f64) {
        (mu - self.sigma1(), self.sigma2() - mu)
    }

    pub fn fs_improved(&self, mu: f64) -> Result<Improvement> {
        let (s1, s2, s3) = (self.sigma1(), self.sigma2(), self.sigma3());
        if !(s1 <= mu && mu <= s2) {
            return Err(Error::OutOfRange(format!(
                "refined bound needs sigma1 <= mu <= sigma2 ({s1} <= {mu} <= {s2})"
            )));
        }
        let (first, second) = self.improvement_branches(mu);
        Ok(Improvement {
            coefficient: if mu <= s3 { first } else { second },
            rhs: self.middle_value(),
        })
    }
}

pub fn a2_bound(spec: &ClassSpec) -> f64 {
    spec.params().a2_bound()
}

pub fn fs_v(spec: &ClassSpec, mu: Complex64) -> Complex64 {
    spec.params().v(mu)
}

pub fn fs_real(spec: &ClassSpec, mu: f64) -> BoundReport {
    spec.params().fs_real(mu)
}

pub fn fs_sigma3(spec: &ClassSpec) -> f64 {
    spec.params().sigma3()
}

pub fn fs_improved(spec: &ClassSpec, mu: f64) -> Result<Improvement> {
    spec.params().fs_improved(mu)
}

pub fn fs_complex(spec: &ClassSpec, mu: Complex64) -> BoundReport {
    spec.params().fs_complex(mu)
}

/// The theoretical bound for real or complex `mu`: [`fs_real`] when the
/// imaginary part vanishes, [`fs_complex`] otherwise.
pub fn fs_bound(spec: &ClassSpec, mu: Complex64) -> BoundReport {
    if mu.im == 0.0 {
        fs_real(spec, mu.re)
    } else {
        fs_complex(spec, mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Kernel;
    use crate::targets::Target;
    use proptest::prelude::*;

    fn starlike() -> ClassSpec {
        ClassSpec::new(0.0, Kernel::Identity, Target::half_plane()).unwrap()
    }

    fn convex() -> ClassSpec {
        ClassSpec::new(1.0, Kernel::Identity, Target::half_plane()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn lemma_values() {
        assert_eq!(lemma_minda(-1.0), 6.0);
        assert_eq!(lemma_minda(0.5), 2.0);
        assert_eq!(lemma_minda(2.0), 6.0);

        assert_eq!(lemma_minda_improved(0.25).unwrap(), Improvement { coefficient: 0.25, rhs: 2.0 });
        assert_eq!(lemma_minda_improved(0.75).unwrap(), Improvement { coefficient: 0.25, rhs: 2.0 });
        assert_eq!(lemma_minda_improved(0.5).unwrap(), Improvement { coefficient: 0.5, rhs: 2.0 });
        assert!(lemma_minda_improved(0.0).is_err());
        assert!(lemma_minda_improved(1.5).is_err());

        assert_eq!(lemma_ravi(Complex64::new(0.0, 0.0)), 2.0);
        assert_eq!(lemma_ravi(Complex64::new(0.5, 0.0)), 2.0);
        assert!(close(lemma_ravi(Complex64::new(0.0, 2.0)), 2.0 * 17f64.sqrt()));
    }

    #[test]
    fn lemmas_agree_on_real_line() {
        for i in 0..=200 {
            let v = -3.0 + 0.03 * i as f64;
            assert!(close(lemma_minda(v), lemma_ravi(v.into())), "v={v}");
        }
    }

    #[test]
    fn a2_bound_examples() {
        assert_eq!(a2_bound(&starlike()), 2.0);
        assert_eq!(a2_bound(&convex()), 1.0);
        let frac = ClassSpec::new(0.0, Kernel::OwaSrivastava { delta: 0.5 }, Target::half_plane()).unwrap();
        assert!(close(a2_bound(&frac), 1.5));
    }

    #[test]
    fn v_at_breakpoints() {
        let s = starlike();
        assert!(fs_v(&s, 0.5.into()).norm() < 1e-15);
        assert!((fs_v(&s, 1.0.into()) - 1.0).norm() < 1e-15);
        let spec = ClassSpec::new(0.7, Kernel::Ruscheweyh { k: 2 }, Target::janowski(0.5, -0.25).unwrap()).unwrap();
        assert!((fs_v(&spec, fs_sigma3(&spec).into()) - 0.5).norm() < 1e-12);
    }

    #[test]
    fn fs_real_examples() {
        let r = fs_real(&starlike(), 0.0);
        assert_eq!(r.regime, Regime::Below);
        assert!(close(r.bound, 3.0));
        assert!(close(fs_real(&convex(), 2.0).bound, 1.0));
        let r = fs_real(&starlike(), 0.75);
        assert_eq!(r.regime, Regime::Middle);
        assert!(close(r.bound, 1.0));
        assert!(r.improvement.is_some());
    }

    #[test]
    fn ties_are_middle() {
        let p = starlike().params();
        assert_eq!(p.regime(p.sigma1()), Regime::Middle);
        assert_eq!(p.regime(p.sigma2()), Regime::Middle);
    }

    #[test]
    fn sigma3_examples() {
        assert!(close(fs_sigma3(&starlike()), 0.75));
        assert!(close(fs_sigma3(&convex()), 1.0));
    }

    #[test]
    fn improved_examples() {
        let s = starlike();
        assert_eq!(fs_improved(&s, 0.5).unwrap(), Improvement { coefficient: 0.0, rhs: 1.0 });
        let i = fs_improved(&s, 0.75).unwrap();
        assert!(close(i.coefficient, 0.25) && close(i.rhs, 1.0));
        let i = fs_improved(&convex(), 1.0).unwrap();
        assert!(close(i.coefficient, 1.0 / 3.0) && close(i.rhs, 1.0 / 3.0));
        assert!(matches!(fs_improved(&s, 0.4), Err(Error::OutOfRange(_))));
        assert!(matches!(fs_improved(&s, 1.1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn improved_coefficient_matches_bracket_form() {
        let spec = ClassSpec::new(0.5, Kernel::Salagean { m: 2 }, Target::janowski(0.5, -0.5).unwrap()).unwrap();
        let p = spec.params();
        let scale = p.sigma_scale();
        for i in 0..=20 {
            let mu = p.sigma1() + (p.sigma2() - p.sigma1()) * i as f64 / 20.0;
            let m = p.mu_term(mu.into()).re;
            let first = scale * (1.0 - p.big_b2 / p.big_b1 + p.x_term() + m);
            let second = scale * (1.0 + p.big_b2 / p.big_b1 - p.x_term() - m);
            let (a, b) = p.improvement_branches(mu);
            assert!((a - first).abs() < 1e-12 && (b - second).abs() < 1e-12);
        }
    }

    #[test]
    fn fs_complex_examples() {
        let z = Complex64::new(0.3, -1.7);
        let r = fs_complex(&starlike(), z);
        assert_eq!(r.regime, Regime::ComplexMax);
        assert!(close(r.bound, (4.0 * z - 3.0).norm().max(1.0)));
        assert!(close(fs_complex(&convex(), 1.0.into()).bound, 1.0 / 3.0));
        let sal = ClassSpec::new(0.0, Kernel::Salagean { m: 1 }, Target::half_plane()).unwrap();
        assert!(close(fs_complex(&sal, 0.0.into()).bound, 1.0));
    }

    #[test]
    fn report_json_shape() {
        let j = serde_json::to_value(fs_real(&starlike(), 0.75)).unwrap();
        assert_eq!(j["regime"], "Middle");
        assert_eq!(j["mu"], 0.75);
        assert!(j["improvement"]["coefficient"].is_number());
        let j = serde_json::to_value(fs_real(&starlike(), 0.0)).unwrap();
        assert!(j["improvement"].is_null());
        let j = serde_json::to_value(fs_complex(&starlike(), Complex64::new(1.0, 2.0))).unwrap();
        assert_eq!(j["mu"], serde_json::json!([1.0, 2.0]));
        let back: BoundReport = serde_json::from_value(j).unwrap();
        assert_eq!(back.mu, Scalar::Complex(Complex64::new(1.0, 2.0)));
    }

    fn arb_params() -> impl Strategy<Value = FsParams> {
        (0.0f64..3.0, 0.1f64..6.0, 0.1f64..12.0, 0.05f64..2.0, -2.0f64..2.0).prop_map(
            |(alpha, b2, b3, big_b1, big_b2)| FsParams { alpha, b2, b3, big_b1, big_b2 },
        )
    }

    proptest! {
        #[test]
        fn monotone_in_mu(p in arb_params(), t in 0.0f64..1.0, dx in 0.0f64..2.0) {
            let (s1, s2) = (p.sigma1(), p.sigma2());
            let lo = s1 - 3.0 + 3.0 * t;
            prop_assert!(p.fs_real(lo - dx).bound >= p.fs_real(lo).bound - 1e-12);
            let hi = s2 + 3.0 * t;
            prop_assert!(p.fs_real(hi + dx).bound >= p.fs_real(hi).bound - 1e-12);
            let mid = s1 + (s2 - s1) * t;
            prop_assert_eq!(p.fs_real(mid).bound, p.middle_value());
        }

        #[test]
        fn scaling_covariance(p in arb_params(), t in 0.2f64..5.0, mu in -5.0f64..5.0) {
            let q = FsParams { b2: t * p.b2, b3: t * t * p.b3, ..p };
            let scale = p.sigma_scale().abs().max(1.0);
            prop_assert!((q.sigma1() - p.sigma1()).abs() <= 1e-12 * scale * 10.0);
            prop_assert!((q.sigma2() - p.sigma2()).abs() <= 1e-12 * scale * 10.0);
            let (a, b) = (q.fs_real(mu).bound, p.fs_real(mu).bound / (t * t));
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0) * 10.0);
        }

        #[test]
        fn bound_is_halved_lemma(p in arb_params(), mu in -5.0f64..5.0) {
            let via_lemma = p.big_b1 / (4.0 * (2.0 * p.alpha + 1.0) * p.b3) * lemma_minda(p.v(mu.into()).re);
            let direct = p.fs_real(mu).bound;
            prop_assert!((via_lemma - direct).abs() <= 1e-12 * direct.max(1.0) * 10.0);
        }

        #[test]
        fn improvement_nonnegative(p in arb_params(), t in 0.0f64..=1.0) {
            let mu = p.sigma1() + (p.sigma2() - p.sigma1()) * t;
            let mu = mu.clamp(p.sigma1(), p.sigma2());
            let imp = p.fs_improved(mu).unwrap();
            prop_assert!(imp.coefficient >= 0.0);
        }
    }
}
