//! Exact computations around E8: root systems and embeddings, Chevalley bases and Killing
//! forms, Witt rings over Q and R, Galois descent of involutions, and the reduced Killing
//! form of E8 groups built from quaternion algebras.

pub mod batch;
pub mod chevalley;
pub mod descent;
pub mod e8kill;
pub mod jinv;
pub mod linalg;
pub mod qform;
pub mod rootsys;
pub mod scalar;
pub mod verify;

/// Exact scalar used by default.
pub type Rational = num_rational::BigRational;
/// Floating scalar used by default.
pub type Real = f64;
