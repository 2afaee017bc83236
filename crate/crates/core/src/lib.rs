//! Exact q-series, eta quotients and congruence verification for
//! generalized Frobenius partitions.

pub mod congruence;
pub mod error;
pub mod eta;
pub mod generators;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Coefficient;
pub use eta::{EtaQuotient, TransformMatrix};
pub use series::QSeries;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub type IntSeries = QSeries<BigInt>;
pub type RatSeries = QSeries<BigRational>;
pub type FloatSeries = QSeries<f64>;
