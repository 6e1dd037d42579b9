//! Exact sparse multivariate polynomials over the rationals.

mod ideal;
mod monomial;
mod polynomial;
mod ring;

pub use ideal::Ideal;
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use ring::Ring;

/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
