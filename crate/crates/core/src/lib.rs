pub mod error;
pub mod field;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Matrix, PrimeField, QuadraticExtension, Rationals};
pub mod certificate;
pub mod cubocubic;
pub mod experiments;
pub mod involutions;
pub mod json;
pub mod nets;
pub mod poly;
pub mod proj;
pub mod rng;
pub mod schwarz;
pub mod zeroscheme;
