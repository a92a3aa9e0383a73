//! Convolution kernels `g(z) = z + sum b_n z^n` for the classical operator families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncSeries;

/// A named operator family together with its parameters.
///
/// Serializes as `{"family": ..., "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum Kernel {
    /// `g(z) = z/(1-z)`, so that `L_g` is the identity operator.
    Identity,
    /// Ruscheweyh derivative, `g(z) = z/(1-z)^(k+1)`.
    Ruscheweyh { k: u32 },
    /// Salagean differential operator, `b_n = n^m`.
    Salagean { m: u32 },
    /// Owa-Srivastava fractional derivative operator.
    OwaSrivastava { delta: f64 },
    /// Multiplier transformation `b_n = ((n + lambda)/(1 + lambda))^r`.
    Multiplier { r: u32, lambda: f64 },
    /// Dziok-Srivastava operator with numerator parameters `alpha_i` and
    /// denominator parameters `beta_j`.
    DziokSrivastava { numer: Vec<f64>, denom: Vec<f64> },
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, computed as a product.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).map(|t| a + t as f64).product()
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

impl Kernel {
    pub fn validate(&self) -> Result<()> {
        match self {
            Kernel::Identity | Kernel::Ruscheweyh { .. } | Kernel::Salagean { .. } => Ok(()),
            Kernel::OwaSrivastava { delta } => {
                if !delta.is_finite() || *delta >= 1.0 {
                    Err(Error::InvalidKernelParam(format!(
                        "owa-srivastava needs finite delta < 1, got {delta}"
                    )))
                } else {
                    Ok(())
                }
            }
            Kernel::Multiplier { lambda, .. } => {
                if !lambda.is_finite() || *lambda <= -1.0 {
                    Err(Error::InvalidKernelParam(format!(
                        "multiplier needs lambda > -1, got {lambda}"
                    )))
                } else {
                    Ok(())
                }
            }
            Kernel::DziokSrivastava { numer, denom } => {
                if numer.iter().chain(denom).any(|x| !x.is_finite()) {
                    return Err(Error::InvalidKernelParam(
                        "dziok-srivastava parameters must be finite".into(),
                    ));
                }
                if let Some(b) = denom.iter().find(|&&b| is_nonpositive_integer(b)) {
                    return Err(Error::InvalidKernelParam(format!(
                        "dziok-srivastava denominator parameter {b} is a nonpositive integer"
                    )));
                }
                Ok(())
            }
        }
    }

    /// The coefficient `b_n` (`n >= 1`, with `b_1 = 1`).
    pub fn coeff(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidKernelParam("coefficient index starts at 1".into()));
        }
        self.validate()?;
        let nf = n as f64;
        let b = match self {
            Kernel::Identity => 1.0,
            // C(n+k-1, k)
            Kernel::Ruscheweyh { k } => (1..=*k).map(|j| (nf - 1.0 + j as f64) / j as f64).product(),
            Kernel::Salagean { m } => nf.powi(*m as i32),
            // Gamma(n+1) Gamma(2-delta) / Gamma(n+1-delta), unrolled from b_1 = 1
            // through b_{j}/b_{j-1} = j/(j-delta) so no gamma value can overflow.
            Kernel::OwaSrivastava { delta } => (2..=n).map(|j| j as f64 / (j as f64 - delta)).product(),
            Kernel::Multiplier { r, lambda } => ((nf + lambda) / (1.0 + lambda)).powi(*r as i32),
            Kernel::DziokSrivastava { numer, denom } => (0..n - 1)
                .map(|t| {
                    let t = t as f64;
                    let up: f64 = numer.iter().map(|a| a + t).product();
                    let down: f64 = denom.iter().map(|b| b + t).product::<f64>() * (t + 1.0);
                    up / down
                })
                .product(),
        };
        Ok(b)
    }

    /// `g(z) = z + b_2 z^2 + ... + b_order z^order`.
    pub fn series(&self, order: usize) -> Result<TruncSeries> {
        if order < 3 {
            return Err(Error::OutOfRange(format!("kernel series needs order >= 3, got {order}")));
        }
        let mut coeffs = vec![0.0];
        for n in 1..=order as u32 {
            coeffs.push(self.coeff(n)?);
        }
        Ok(TruncSeries::from_real(&coeffs, order))
    }

    /// `(b_2, b_3)`, the only coefficients the Fekete-Szego functional sees.
    pub fn b2_b3(&self) -> Result<(f64, f64)> {
        Ok((self.coeff(2)?, self.coeff(3)?))
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[f64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Kernel::Identity => write!(f, "identity"),
            Kernel::Ruscheweyh { k } => write!(f, "ruscheweyh:{k}"),
            Kernel::Salagean { m } => write!(f, "salagean:{m}"),
            Kernel::OwaSrivastava { delta } => write!(f, "owa:{delta}"),
            Kernel::Multiplier { r, lambda } => write!(f, "multiplier:{r},{lambda}"),
            Kernel::DziokSrivastava { numer, denom } => {
                write!(f, "dziok:{}/{}", join(numer), join(denom))
            }
        }
    }
}

/// Parses the command-line grammar `family[:p1,p2,...]`, e.g. `ruscheweyh:2`,
/// `owa:0.5`, `multiplier:2,1`, `dziok:2,1/1`.
impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = s.split_once(':').unwrap_or((s, ""));
        let bad = |what: &str| Error::Config(format!("kernel `{s}`: {what}"));
        let reals = |p: &str| -> Result<Vec<f64>> {
            p.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<f64>().map_err(|_| bad("expected numbers")))
                .collect()
        };
        let uint = |p: &str| -> Result<u32> { p.trim().parse().map_err(|_| bad("expected a nonnegative integer")) };
        let kernel = match family.trim().to_ascii_lowercase().as_str() {
            "identity" => Kernel::Identity,
            "ruscheweyh" => Kernel::Ruscheweyh { k: uint(params)? },
            "salagean" => Kernel::Salagean { m: uint(params)? },
            "owa" | "owa-srivastava" | "owa_srivastava" => {
                let p = reals(params)?;
                match p.as_slice() {
                    [delta] => Kernel::OwaSrivastava { delta: *delta },
                    _ => return Err(bad("expected one parameter delta")),
                }
            }
            "multiplier" => match params.split_once(',') {
                Some((r, lambda)) => Kernel::Multiplier {
                    r: uint(r)?,
                    lambda: lambda.trim().parse().map_err(|_| bad("lambda must be a number"))?,
                },
                None => return Err(bad("expected r,lambda")),
            },
            "dziok" | "dziok-srivastava" | "dziok_srivastava" => {
                let (numer, denom) = params.split_once('/').unwrap_or((params, ""));
                Kernel::DziokSrivastava {
                    numer: reals(numer)?,
                    denom: reals(denom)?,
                }
            }
            other => return Err(bad(&format!("unknown family `{other}`"))),
        };
        kernel.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(kernel)
    }
}
