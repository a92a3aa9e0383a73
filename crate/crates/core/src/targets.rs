//! Ma-Minda target functions `phi(z) = 1 + B1 z + B2 z^2 + ...`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncSeries;
use crate::tolerance::{Tolerances, DEFAULT_ORDER};

/// Produces the Taylor series of `phi` to a requested order. Must be pure.
pub type SeriesGen = Arc<dyn Fn(usize) -> TruncSeries + Send + Sync>;

/// Number of sample points on `|z| = 0.5` for the Schwarz tripwire.
const SCHWARZ_SAMPLES: usize = 64;
const SCHWARZ_RADIUS: f64 = 0.5;

#[derive(Clone)]
enum Form {
    Janowski { c: f64, d: f64 },
    Custom { series: SeriesGen },
}

#[derive(Clone)]
pub struct Target {
    b1: f64,
    b2: f64,
    form: Form,
    label: String,
}

/// Wire form of a [`Target`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetDescriptor {
    Janowski {
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "D")]
        d: f64,
    },
    Custom {
        #[serde(rename = "B1")]
        b1: f64,
        #[serde(rename = "B2")]
        b2: f64,
    },
}

impl Target {
    /// `phi(z) = (1 + Cz)/(1 + Dz)` with `-1 <= D < C <= 1`.
    pub fn janowski(c: f64, d: f64) -> Result<Self> {
        if !(c.is_finite() && d.is_finite() && -1.0 <= d && d < c && c <= 1.0) {
            return Err(Error::InvalidJanowskiParams { c, d });
        }
        Ok(Self {
            b1: c - d,
            b2: -d * (c - d),
            form: Form::Janowski { c, d },
            label: format!("janowski({c},{d})"),
        })
    }

    /// The open right half-plane map `(1+z)/(1-z)`.
    pub fn half_plane() -> Self {
        Self::janowski(1.0, -1.0).expect("valid parameters")
    }

    /// Wraps an arbitrary Ma-Minda function given by its coefficient generator.
    pub fn custom(b1: f64, b2: f64, series: SeriesGen) -> Result<Self> {
        Self::custom_with(b1, b2, series, &Tolerances::default())
    }

    pub fn custom_with(b1: f64, b2: f64, series: SeriesGen, tol: &Tolerances) -> Result<Self> {
        if !(b1.is_finite() && b1 > 0.0) {
            return Err(Error::InvalidClass(format!("target needs B1 > 0, got {b1}")));
        }
        if !b2.is_finite() {
            return Err(Error::InvalidClass(format!("target needs finite B2, got {b2}")));
        }
        let s = series(DEFAULT_ORDER);
        for (k, want) in [(0, 1.0), (1, b1), (2, b2)] {
            let got = s.coeff(k);
            if (got - Complex64::new(want, 0.0)).norm() > tol.series_consistency {
                return Err(Error::InconsistentSeries(format!(
                    "coefficient {k} is {got}, expected {want}"
                )));
            }
        }
        Ok(Self {
            b1,
            b2,
            form: Form::Custom { series },
            label: format!("custom({b1},{b2})"),
        })
    }

    /// A custom target whose series is the quadratic `1 + B1 z + B2 z^2`.
    pub fn quadratic(b1: f64, b2: f64) -> Result<Self> {
        Self::custom(
            b1,
            b2,
            Arc::new(move |order| TruncSeries::from_real(&[1.0, b1, b2], order)),
        )
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn descriptor(&self) -> TargetDescriptor {
        match self.form {
            Form::Janowski { c, d } => TargetDescriptor::Janowski { c, d },
            Form::Custom { .. } => TargetDescriptor::Custom { b1: self.b1, b2: self.b2 },
        }
    }

    pub fn series(&self, order: usize) -> TruncSeries {
        match &self.form {
            Form::Janowski { c, d } => TruncSeries::from_real(&[1.0, *c], order)
                .div(&TruncSeries::from_real(&[1.0, *d], order))
                .expect("1 + Dz has unit constant term"),
            Form::Custom { series } => series(order).with_order(order),
        }
    }

    /// Series of `phi(w(z))` for a Schwarz function `w`.
    pub fn compose_schwarz(&self, w: &TruncSeries) -> Result<TruncSeries> {
        check_schwarz(w, &Tolerances::default())?;
        self.series(w.order()).compose(w)
    }
}

/// Sampled tripwire for `w(0) = 0` and `|w(z)| <= |z|` on `|z| = 0.5`.
pub fn check_schwarz(w: &TruncSeries, tol: &Tolerances) -> Result<()> {
    if w.coeff(0).norm() > 0.0 {
        return Err(Error::NotSchwarz(format!("w(0) = {} is not zero", w.coeff(0))));
    }
    for j in 0..SCHWARZ_SAMPLES {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / SCHWARZ_SAMPLES as f64;
        let z = Complex64::from_polar(SCHWARZ_RADIUS, theta);
        let m = w.eval(z).norm();
        if m > SCHWARZ_RADIUS + tol.schwarz {
            return Err(Error::NotSchwarz(format!(
                "|w(z)| = {m} exceeds |z| = {SCHWARZ_RADIUS} at angle {theta}"
            )));
        }
    }
    Ok(())
}

impl fmt::Debug for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Target")
            .field("label", &self.label)
            .field("b1", &self.b1)
            .field("b2", &self.b2)
            .finish()
    }
}

impl PartialEq for Target {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor() == other.descriptor()
    }
}

impl TryFrom<TargetDescriptor> for Target {
    type Error = Error;

    fn try_from(d: TargetDescriptor) -> Result<Self> {
        match d {
            TargetDescriptor::Janowski { c, d } => Target::janowski(c, d),
            TargetDescriptor::Custom { b1, b2 } => Target::quadratic(b1, b2),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Target {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = TargetDescriptor::deserialize(d)?;
        Target::try_from(desc).map_err(serde::de::Error::custom)
    }
}

/// Parses `janowski:C,D` or `custom:B1,B2`.
impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Config(format!("target `{s}`: {what}"));
        let (kind, params) = s.split_once(':').ok_or_else(|| bad("expected kind:p1,p2"))?;
        let (p1, p2) = params.split_once(',').ok_or_else(|| bad("expected two parameters"))?;
        let p1: f64 = p1.trim().parse().map_err(|_| bad("first parameter is not a number"))?;
        let p2: f64 = p2.trim().parse().map_err(|_| bad("second parameter is not a number"))?;
        let target = match kind.trim().to_ascii_lowercase().as_str() {
            "janowski" => Target::janowski(p1, p2),
            "custom" => Target::quadratic(p1, p2),
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        };
        target.map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn janowski_coefficients() {
        let t = Target::janowski(1.0, -1.0).unwrap();
        assert_eq!((t.b1(), t.b2()), (2.0, 2.0));
        let s = t.series(8);
        assert!((s.coeff(0) - re(1.0)).norm() < 1e-12);
        for k in 1..=8 {
            assert!((s.coeff(k) - re(2.0)).norm() < 1e-12);
        }

        let t = Target::janowski(1.0, 0.0).unwrap();
        assert_eq!((t.b1(), t.b2()), (1.0, 0.0));

        let t = Target::janowski(0.5, -0.5).unwrap();
        assert_eq!((t.b1(), t.b2()), (1.0, 0.5));
        let s = t.series(8);
        assert!((s.coeff(1) - re(1.0)).norm() < 1e-15);
        assert!((s.coeff(2) - re(0.5)).norm() < 1e-15);
    }

    #[test]
    fn janowski_b2_is_minus_d_b1() {
        for (c, d) in [(1.0, -1.0), (0.3, -0.7), (0.9, 0.2), (0.0, -0.5)] {
            let t = Target::janowski(c, d).unwrap();
            assert_eq!(t.b2(), -d * t.b1());
        }
    }

    #[test]
    fn janowski_rejects_bad_ordering() {
        for (c, d) in [(0.5, 0.5), (1.5, 0.0), (0.0, -1.5), (-0.5, 0.5)] {
            assert!(matches!(Target::janowski(c, d), Err(Error::InvalidJanowskiParams { .. })));
        }
    }

    #[test]
    fn custom_construction() {
        let geo: SeriesGen = Arc::new(|order| Target::half_plane().series(order));
        let t = Target::custom(2.0, 2.0, geo).unwrap();
        assert!(t.series(8).max_abs_diff(&Target::half_plane().series(8)) < 1e-15);

        let t = Target::custom(1.0, -1.0, Arc::new(|o| TruncSeries::from_real(&[1.0, 1.0, -1.0], o))).unwrap();
        assert_eq!(t.b2(), -1.0);

        let lie: SeriesGen = Arc::new(|o| TruncSeries::from_real(&[1.0, 2.0, 4.0], o));
        assert!(matches!(Target::custom(2.0, 5.0, lie), Err(Error::InconsistentSeries(_))));
        assert!(Target::quadratic(0.0, 1.0).is_err());
    }

    #[test]
    fn compose_schwarz_examples() {
        let t = Target::janowski(0.5, -0.5).unwrap();
        let p = t.compose_schwarz(&TruncSeries::z(8)).unwrap();
        assert!((p.coeff(1) - re(t.b1())).norm() < 1e-15);
        assert!((p.coeff(2) - re(t.b2())).norm() < 1e-15);

        let p = t.compose_schwarz(&TruncSeries::monomial(2, 8)).unwrap();
        assert!(p.coeff(1).norm() < 1e-15);
        assert!((p.coeff(2) - re(t.b1())).norm() < 1e-15);

        // gamma = 0 in z(z+gamma)/(1+gamma z) degenerates to z^2
        let w = TruncSeries::from_real(&[0.0, 0.0, 1.0], 8)
            .div(&TruncSeries::from_real(&[1.0, 0.0], 8))
            .unwrap();
        assert_eq!(w, TruncSeries::monomial(2, 8));
    }

    #[test]
    fn compose_schwarz_constant_term_is_one() {
        let t = Target::half_plane();
        for w in [
            TruncSeries::from_real(&[0.0, 0.3, 0.2], 8),
            TruncSeries::from_real(&[0.0, -0.5, 0.0, 0.4], 8),
            TruncSeries::monomial(3, 8),
        ] {
            let p = t.compose_schwarz(&w).unwrap();
            assert!((p.coeff(0) - re(1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn tripwire_rejects_non_schwarz() {
        let t = Target::half_plane();
        assert!(matches!(
            t.compose_schwarz(&TruncSeries::from_real(&[0.0, 1.5], 8)),
            Err(Error::NotSchwarz(_))
        ));
        assert!(matches!(
            t.compose_schwarz(&TruncSeries::from_real(&[0.1, 0.5], 8)),
            Err(Error::NotSchwarz(_))
        ));
    }

    #[test]
    fn descriptor_round_trip() {
        let t = Target::janowski(0.5, -0.5).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"kind":"janowski","C":0.5,"D":-0.5}"#);
        assert_eq!(serde_json::from_str::<Target>(&j).unwrap(), t);
        let j = r#"{"kind":"custom","B1":1.0,"B2":-0.25}"#;
        let t: Target = serde_json::from_str(j).unwrap();
        assert_eq!((t.b1(), t.b2()), (1.0, -0.25));
        assert!(serde_json::from_str::<Target>(r#"{"kind":"janowski","C":0.0,"D":0.5}"#).is_err());
    }

    #[test]
    fn parse_grammar() {
        assert_eq!("janowski:1,-1".parse::<Target>().unwrap(), Target::half_plane());
        assert_eq!("custom:2,3".parse::<Target>().unwrap().b2(), 3.0);
        assert!("janowski:1".parse::<Target>().is_err());
        assert!("circle:1,2".parse::<Target>().is_err());
    }
}
