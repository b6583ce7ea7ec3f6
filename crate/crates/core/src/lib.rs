//! Exact arithmetic for minimal-degree witnesses in multiquadratic and
//! quartic fields, with the elliptic-curve reduction for index 2.

pub mod certificate;
pub mod elliptic;
pub mod error;
pub mod linalg;
pub mod multiquad;
pub mod numtheory;
pub mod poly;
pub mod quartic;
pub mod survey;
pub mod witness;

pub use certificate::WitnessCertificate;
pub use error::{Error, Result};
pub use numtheory::Rational;
pub use poly::{FieldElement, Polynomial};
