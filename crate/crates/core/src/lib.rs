//! Fekete-Szego bounds for the class of normalized analytic functions `f`
//! whose convolution-operator functional `Psi_g(f)` is subordinate to a
//! Ma-Minda function `phi`, together with an independent numerical oracle
//! that searches the Caratheodory coefficient body for the true extremal
//! values.
//!
//! Module map:
//!
//! - [`series`]: truncated complex power series.
//! - [`kernels`]: convolution kernels `g` and their coefficients `b_n`.
//! - [`targets`]: target functions `phi`.
//! - [`psi_map`]: the functional `Psi_g`, forward and in closed form.
//! - [`bounds`]: closed-form bounds and named special cases.
//! - [`oracle`]: bidisk supremum search and extremal functions.
//! - [`cli`]: the `fszego` command-line front end.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod oracle;
pub mod psi_map;
pub mod series;
pub mod targets;
pub mod tolerance;

pub use bounds::{BoundReport, Regime, Scalar};
pub use error::{Error, Result};
pub use kernels::Kernel;
pub use oracle::{CaratheodoryPoint, SearchOptions, VerifyReport};
pub use psi_map::{ClassSpec, FsParams};
pub use series::TruncSeries;
pub use targets::Target;
pub use tolerance::Tolerances;
