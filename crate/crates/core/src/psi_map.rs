//! The functional
//!
//! ```text
//! Psi_g(f) = 1 + z L'/L + z L''/L' - ((1-alpha) z^2 L'' + z L') / ((1-alpha) z L' + alpha L),
//! L = f * g,
//! ```
//!
//! whose subordination to `phi` defines the class. Two independent routes to
//! its first coefficients live here: [`psi_forward`] expands the whole
//! expression on truncated series, and [`d_closed_form`] evaluates the
//! polynomial identities for `d_1`, `d_2` directly. [`solve_a23`] inverts the
//! latter.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::series::TruncSeries;
use crate::targets::Target;

/// The class `S^alpha_{L_g}(phi)`: a parameter `alpha >= 0`, a kernel and a target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ClassSpecDescriptor", into = "ClassSpecDescriptor")]
pub struct ClassSpec {
    alpha: f64,
    kernel: Kernel,
    target: Target,
    b2: f64,
    b3: f64,
}

#[derive(Serialize, Deserialize)]
struct ClassSpecDescriptor {
    alpha: f64,
    kernel: Kernel,
    target: Target,
}

impl ClassSpec {
    pub fn new(alpha: f64, kernel: Kernel, target: Target) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidClass(format!("alpha must be >= 0, got {alpha}")));
        }
        let (b2, b3) = kernel.b2_b3()?;
        if b2 == 0.0 || b3 == 0.0 || !b2.is_finite() || !b3.is_finite() {
            return Err(Error::InvalidClass(format!(
                "kernel {kernel} has b2 = {b2}, b3 = {b3}; both must be nonzero"
            )));
        }
        if b3 < 0.0 {
            return Err(Error::InvalidClass(format!(
                "kernel {kernel} has b3 = {b3} < 0; the regime ordering is undefined"
            )));
        }
        Ok(Self { alpha, kernel, target, b2, b3 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn b3(&self) -> f64 {
        self.b3
    }

    /// The five numbers every closed-form bound depends on.
    pub fn params(&self) -> FsParams {
        FsParams {
            alpha: self.alpha,
            b2: self.b2,
            b3: self.b3,
            big_b1: self.target.b1(),
            big_b2: self.target.b2(),
        }
    }
}

impl TryFrom<ClassSpecDescriptor> for ClassSpec {
    type Error = Error;

    fn try_from(d: ClassSpecDescriptor) -> Result<Self> {
        ClassSpec::new(d.alpha, d.kernel, d.target)
    }
}

impl From<ClassSpec> for ClassSpecDescriptor {
    fn from(s: ClassSpec) -> Self {
        Self { alpha: s.alpha, kernel: s.kernel, target: s.target }
    }
}

/// `(alpha, b_2, b_3, B_1, B_2)`: the reduced data of a class.
///
/// Kept separate from [`ClassSpec`] so that bounds can be evaluated for kernel
/// coefficients that no named family produces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FsParams {
    pub alpha: f64,
    pub b2: f64,
    pub b3: f64,
    pub big_b1: f64,
    pub big_b2: f64,
}

impl FsParams {
    /// `alpha^2 - 4 alpha - 1`
    pub fn quad(&self) -> f64 {
        self.alpha * self.alpha - 4.0 * self.alpha - 1.0
    }
}

/// Coefficients `d_1`, `d_2` of `Psi_g(f) = 1 + d_1 z + d_2 z^2 + ...`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DPair {
    pub d1: Complex64,
    pub d2: Complex64,
}

/// Expands `Psi_g(f)` to the given order on truncated series.
///
/// `f` must be normalized (`f(0) = 0`, `f'(0) = 1`); coefficients beyond
/// `order + 1` are ignored and missing ones are taken as zero.
pub fn psi_forward(f: &TruncSeries, spec: &ClassSpec, order: usize) -> Result<TruncSeries> {
    if order < 2 {
        return Err(Error::OutOfRange(format!("psi_forward needs order >= 2, got {order}")));
    }
    if f.coeff(0).norm() > 0.0 || (f.coeff(1) - 1.0).norm() > 0.0 {
        return Err(Error::InvalidClass("f must satisfy f(0) = 0 and f'(0) = 1".into()));
    }
    // One extra order absorbs the loss from dividing by z.
    let work = order + 1;
    let g = spec.kernel.series(work.max(3))?.with_order(work);
    let l = f.with_order(work).hadamard(&g);
    let dl = l.derivative();
    let ddl = dl.derivative();
    let l_over_z = l.shift_down()?;
    let z_ddl = ddl.shift_up();

    let one_minus_alpha = 1.0 - spec.alpha;
    // z L' / L = L' / (L/z)
    let t1 = dl.div(&l_over_z)?;
    // z L'' / L'
    let t2 = z_ddl.div(&dl)?;
    // ((1-a) z^2 L'' + z L') / ((1-a) z L' + a L), both sides divided by z
    let num = &z_ddl.scale_real(one_minus_alpha) + &dl;
    let den = &dl.scale_real(one_minus_alpha) + &l_over_z.scale_real(spec.alpha);
    let t3 = num.div(&den)?;

    let psi = &(&(&TruncSeries::one(work) + &t1) + &t2) - &t3;
    Ok(psi.with_order(order))
}

/// `d_1 = (1+alpha) a_2 b_2`, `d_2 = 2(2alpha+1) a_3 b_3 + (alpha^2-4alpha-1) a_2^2 b_2^2`.
pub fn d_closed_form(a2: Complex64, a3: Complex64, spec: &ClassSpec) -> DPair {
    d_from_params(a2, a3, &spec.params())
}

pub fn d_from_params(a2: Complex64, a3: Complex64, p: &FsParams) -> DPair {
    let a2b2 = a2 * p.b2;
    DPair {
        d1: a2b2 * (1.0 + p.alpha),
        d2: a3 * (2.0 * (2.0 * p.alpha + 1.0) * p.b3) + a2b2 * a2b2 * p.quad(),
    }
}

/// Inverse of [`d_closed_form`].
pub fn solve_a23(d: DPair, spec: &ClassSpec) -> (Complex64, Complex64) {
    solve_from_params(d, &spec.params())
}

pub fn solve_from_params(d: DPair, p: &FsParams) -> (Complex64, Complex64) {
    let a2 = d.d1 / ((1.0 + p.alpha) * p.b2);
    let a2b2 = a2 * p.b2;
    let a3 = (d.d2 - a2b2 * a2b2 * p.quad()) / (2.0 * (2.0 * p.alpha + 1.0) * p.b3);
    (a2, a3)
}
