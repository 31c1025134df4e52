//! Multi-route evaluation of the Riemann zeta function at positive real
//! arguments, with the logistic-family distributions whose moments encode
//! those values.
//!
//! Each route in [`routes`] computes ζ(s) by an independent formula; the
//! comparator runs several of them at once and flags disagreement beyond
//! the reported error bounds.

pub mod bernoulli;
pub mod cli;
pub mod dd;
pub mod distributions;
pub mod error;
pub mod output;
pub mod quadrature;
pub mod routes;
pub mod series;
pub mod special;
pub mod stats;

pub use error::{Result, ZetaError};
pub use quadrature::{QuadratureConfig, ValueWithError};
pub use routes::{compare_routes, ComparisonReport, RouteConfig, RouteId, RouteResult};
pub use series::SeriesConfig;
