//! Numerical witnesses for the closed-form bounds.
//!
//! Class members are generated from their Caratheodory data: every `p` with
//! positive real part and `p(0) = 1` has
//!
//! ```text
//! c_1 = 2 zeta_1,   c_2 = 2 zeta_1^2 + 2 (1 - |zeta_1|^2) zeta_2,   |zeta_1|, |zeta_2| <= 1,
//! ```
//!
//! and conversely. Pushing `(c_1, c_2)` through `phi` and inverting the
//! coefficient identities of `Psi_g` yields `(a_2, a_3)` of a member of the
//! class, so the supremum of `|a_3 - mu a_2^2|` over the bidisk is the true
//! extremal value against which the bounds are measured.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{fs_bound, Scalar};
use crate::error::{Error, Result};
use crate::psi_map::{solve_from_params, ClassSpec, DPair, FsParams};
use crate::series::TruncSeries;
use crate::targets::check_schwarz;
use crate::tolerance::{Tolerances, DEFAULT_ORDER};

pub mod search;

pub use search::{maximize, BidiskObjective, Execution, Maximum, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaratheodoryPoint {
    pub zeta1: Complex64,
    pub zeta2: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

fn coefficients(zeta1: Complex64, zeta2: Complex64) -> (Complex64, Complex64) {
    let c1 = zeta1 * 2.0;
    let c2 = zeta1 * zeta1 * 2.0 + zeta2 * (2.0 * (1.0 - zeta1.norm_sqr()));
    (c1, c2)
}

impl CaratheodoryPoint {
    pub fn new(zeta1: Complex64, zeta2: Complex64) -> Result<Self> {
        Self::new_with(zeta1, zeta2, &Tolerances::default())
    }

    pub fn new_with(zeta1: Complex64, zeta2: Complex64, tol: &Tolerances) -> Result<Self> {
        for (name, z) in [("zeta1", zeta1), ("zeta2", zeta2)] {
            if z.norm().is_nan() || z.norm() > 1.0 + tol.disk {
                return Err(Error::OutOfDisk { name, modulus: z.norm() });
            }
        }
        let (c1, c2) = coefficients(zeta1, zeta2);
        Ok(Self { zeta1, zeta2, c1, c2 })
    }

    /// Recovers the parameters from `(c_1, c_2)`. When `|c_1| = 2` the second
    /// parameter is undetermined and set to zero.
    pub fn from_coefficients(c1: Complex64, c2: Complex64) -> Result<Self> {
        let zeta1 = c1 / 2.0;
        let rest = 1.0 - zeta1.norm_sqr();
        let zeta2 = if rest > 1e-14 {
            (c2 - zeta1 * zeta1 * 2.0) / (2.0 * rest)
        } else {
            Complex64::new(0.0, 0.0)
        };
        let mut pt = Self::new(zeta1, zeta2)?;
        pt.c1 = c1;
        pt.c2 = c2;
        Ok(pt)
    }
}

/// `(d_1, d_2)` of `phi(w)` expressed through the Caratheodory coefficients of
/// `p_1 = (1 + w)/(1 - w)`.
fn d_from_caratheodory(c1: Complex64, c2: Complex64, p: &FsParams) -> DPair {
    let c1_sq = c1 * c1;
    DPair {
        d1: c1 * (0.5 * p.big_b1),
        d2: (c2 - c1_sq * 0.5) * (0.5 * p.big_b1) + c1_sq * (0.25 * p.big_b2),
    }
}

pub fn member_from_coefficients(c1: Complex64, c2: Complex64, spec: &ClassSpec) -> (Complex64, Complex64) {
    let p = spec.params();
    solve_from_params(d_from_caratheodory(c1, c2, &p), &p)
}

/// First two coefficients `(a_2, a_3)` of the class member attached to `pt`.
pub fn member_from_point(pt: &CaratheodoryPoint, spec: &ClassSpec) -> (Complex64, Complex64) {
    member_from_coefficients(pt.c1, pt.c2, spec)
}

/// Fekete-Szego functional over the bidisk parameterization.
struct FsObjective {
    params: FsParams,
    mu: Complex64,
}

impl BidiskObjective for FsObjective {
    fn eval(&self, zeta1: Complex64, zeta2: Complex64) -> Complex64 {
        let (c1, c2) = coefficients(zeta1, zeta2);
        let (a2, a3) = solve_from_params(d_from_caratheodory(c1, c2, &self.params), &self.params);
        a3 - self.mu * a2 * a2
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mu: Scalar,
    pub theoretical_bound: f64,
    pub empirical_sup: f64,
    pub gap: f64,
    pub argmax: CaratheodoryPoint,
    pub samples: u64,
    pub violation: bool,
    pub sharp: bool,
}

impl VerifyReport {
    pub const CSV_HEADER: &'static str = "mu,bound,empirical_sup,gap,violation,sharp";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            format_scalar(self.mu),
            fmt17(self.theoretical_bound),
            fmt17(self.empirical_sup),
            fmt17(self.gap),
            self.violation,
            self.sharp
        )
    }
}

/// 17 significant digits, locale-free.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_scalar(s: Scalar) -> String {
    match s {
        Scalar::Real(x) => fmt17(x),
        Scalar::Complex(z) => format!("{}{}{}i", fmt17(z.re), if z.im < 0.0 { "" } else { "+" }, fmt17(z.im)),
    }
}

fn mu_scalar(mu: Complex64) -> Scalar {
    if mu.im == 0.0 {
        Scalar::Real(mu.re)
    } else {
        Scalar::Complex(mu)
    }
}

pub fn sup_search(spec: &ClassSpec, mu: Complex64, opts: &SearchOptions) -> Result<VerifyReport> {
    sup_search_with(spec, mu, opts, &Tolerances::default())
}

/// Searches the bidisk for the supremum of `|a_3 - mu a_2^2|` and compares it
/// with the closed-form bound.
pub fn sup_search_with(spec: &ClassSpec, mu: Complex64, opts: &SearchOptions, tol: &Tolerances) -> Result<VerifyReport> {
    if opts.grid_density < 8 {
        return Err(Error::OutOfRange(format!("grid density must be >= 8, got {}", opts.grid_density)));
    }
    let obj = FsObjective { params: spec.params(), mu };
    let max = maximize(&obj, opts);
    let theoretical_bound = fs_bound(spec, mu).bound;
    let gap = theoretical_bound - max.value;
    Ok(VerifyReport {
        mu: mu_scalar(mu),
        theoretical_bound,
        empirical_sup: max.value,
        gap,
        argmax: CaratheodoryPoint::new_with(max.zeta1, max.zeta2, tol)?,
        samples: max.samples,
        violation: max.value > theoretical_bound + tol.validity,
        sharp: gap <= tol.sharpness,
    })
}

/// Supremum of `|c_2 - v c_1^2|` over the Caratheodory coefficient body.
pub fn lemma_sup(v: Complex64, opts: &SearchOptions) -> Maximum {
    let obj = move |z1: Complex64, z2: Complex64| {
        let (c1, c2) = coefficients(z1, z2);
        c2 - v * c1 * c1
    };
    maximize(&obj, opts)
}

/// Largest value of `|a_3 - mu a_2^2| + coefficient |a_2|^2` over the class;
/// the refined inequality holds when this stays below its right-hand side.
pub fn improved_sup(spec: &ClassSpec, mu: f64, coefficient: f64, opts: &SearchOptions) -> Maximum {
    struct Refined {
        inner: FsObjective,
        coefficient: f64,
    }
    impl BidiskObjective for Refined {
        fn eval(&self, zeta1: Complex64, zeta2: Complex64) -> Complex64 {
            self.inner.eval(zeta1, zeta2)
        }
        fn extra(&self, zeta1: Complex64) -> f64 {
            let p = &self.inner.params;
            let a2 = zeta1 * p.big_b1 / ((1.0 + p.alpha) * p.b2);
            self.coefficient * a2.norm_sqr()
        }
    }
    let obj = Refined { inner: FsObjective { params: spec.params(), mu: mu.into() }, coefficient };
    maximize(&obj, opts)
}

/// Largest `|a_2|` over the class.
pub fn a2_sup(spec: &ClassSpec, opts: &SearchOptions) -> Maximum {
    let p = spec.params();
    let obj = move |z1: Complex64, z2: Complex64| {
        let (c1, c2) = coefficients(z1, z2);
        solve_from_params(d_from_caratheodory(c1, c2, &p), &p).0
    };
    maximize(&obj, opts)
}

/// The extremal functions, named by the Schwarz function `w` in `Psi_g(f) = phi(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtremalKind {
    /// `w = z`
    K2,
    /// `w = z^2`
    K3,
    /// `w = z (z + gamma)/(1 + gamma z)`
    Ggamma(f64),
    /// `w = -z (z + gamma)/(1 + gamma z)`
    Hgamma(f64),
}

impl ExtremalKind {
    pub fn schwarz(&self, order: usize) -> Result<TruncSeries> {
        let mobius = |gamma: f64| -> Result<TruncSeries> {
            if !(0.0..=1.0).contains(&gamma) {
                return Err(Error::OutOfRange(format!("gamma must lie in [0, 1], got {gamma}")));
            }
            TruncSeries::from_real(&[0.0, gamma, 1.0], order).div(&TruncSeries::from_real(&[1.0, gamma], order))
        };
        match *self {
            ExtremalKind::K2 => Ok(TruncSeries::z(order)),
            ExtremalKind::K3 => Ok(TruncSeries::monomial(2, order)),
            ExtremalKind::Ggamma(g) => mobius(g),
            ExtremalKind::Hgamma(g) => Ok(-&mobius(g)?),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ExtremalKind::K2 => "K2".into(),
            ExtremalKind::K3 => "K3".into(),
            ExtremalKind::Ggamma(g) => format!("G({g})"),
            ExtremalKind::Hgamma(g) => format!("H({g})"),
        }
    }
}

fn via_series(spec: &ClassSpec, w: &TruncSeries) -> Result<(Complex64, Complex64)> {
    let p = spec.target().compose_schwarz(w)?;
    Ok(solve_from_params(DPair { d1: p.coeff(1), d2: p.coeff(2) }, &spec.params()))
}

/// `(a_2, a_3)` of an extremal function.
pub fn extremal(kind: ExtremalKind, spec: &ClassSpec) -> Result<(Complex64, Complex64)> {
    via_series(spec, &kind.schwarz(DEFAULT_ORDER)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathCheck {
    pub via_series: (Complex64, Complex64),
    pub via_caratheodory: (Complex64, Complex64),
    pub functional_series: f64,
    pub functional_caratheodory: f64,
    pub agree: bool,
}

/// Computes `(a_2, a_3)` for `Psi_g(f) = phi(w)` twice: by composing `phi`
/// with `w` directly, and through the Caratheodory coefficients of
/// `(1 + w)/(1 - w)`.
pub fn schwarz_path_check(spec: &ClassSpec, w: &TruncSeries, mu: Complex64) -> Result<PathCheck> {
    let tol = Tolerances::default();
    check_schwarz(w, &tol)?;
    let a = via_series(spec, w)?;
    let order = w.order();
    let p1 = (&TruncSeries::one(order) + w).div(&(&TruncSeries::one(order) - w))?;
    let b = member_from_coefficients(p1.coeff(1), p1.coeff(2), spec);
    let agree = (a.0 - b.0).norm() <= tol.validity && (a.1 - b.1).norm() <= tol.validity;
    Ok(PathCheck {
        via_series: a,
        via_caratheodory: b,
        functional_series: (a.1 - mu * a.0 * a.0).norm(),
        functional_caratheodory: (b.1 - mu * b.0 * b.0).norm(),
        agree,
    })
}
