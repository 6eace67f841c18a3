//! Exact intersection theory on `A × A` for a principally polarized abelian
//! variety `A`, restricted to the subring generated by the two pulled-back
//! theta divisors and the Poincaré class, together with decision procedures
//! for the classical positivity cones in that ring.

pub mod canring;
pub mod cm;
pub mod error;
pub mod exterior;
pub mod fourier;
pub mod poly;
pub mod positivity;
pub mod scalar;
pub mod serde_q;

pub use canring::{CanonicalRing, Generator, Gl2Matrix, Monomial};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// `Q(i)`.
pub type GaussianRational = num_complex::Complex<Rational>;
/// Exact differential forms.
pub type Form = exterior::Form<Rational>;
/// Floating-point forms.
pub type FormF64 = exterior::Form<f64>;
/// Exact classes in the canonical ring.
pub type CanonicalClass = canring::CanonicalClass<Rational>;
/// Floating-point classes in the canonical ring.
pub type CanonicalClassF64 = canring::CanonicalClass<f64>;
