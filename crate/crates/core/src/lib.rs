//! Exact computation of extractions of polynomial ideals.

pub mod corpus;
pub mod error;
pub mod extraction;
pub mod oracle;
pub mod order;
pub mod parse;
pub mod poly;
pub mod sb;

pub use error::{Error, Result};
pub use order::{ColumnLevel, OrderClass, OrderSpec, Polarity};
pub use poly::{Ideal, Monomial, Polynomial, Rational, Ring};
