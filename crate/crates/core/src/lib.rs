//! Polarizations on abelian surfaces `A_m = E × E'`, where `E` and `E'` are
//! non-CM elliptic curves whose minimal isogeny is cyclic of degree `m`,
//! studied through binary quadratic forms.
//!
//! The crate counts ample, smooth, and very ample classes of a given degree
//! up to automorphisms, decides existence questions, and carries a
//! brute-force orbit enumerator used to cross-check every closed formula.

pub mod arith;
pub mod counting;
pub mod error;
pub mod forms;
pub mod gamma0;
pub mod oracle;
pub mod scalar;
pub mod surface;

pub use error::{Error, Result};
pub use forms::{ClassMode, Equivalence, FormClass, Mat2, QuadForm};
pub use scalar::Coeff;

/// Forms with 64-bit coefficients, used throughout the surface layer.
pub type Form = QuadForm<i64>;
/// Forms with 128-bit coefficients for large discriminants.
pub type WideForm = QuadForm<i128>;
/// Transforms matching [`Form`].
pub type Matrix = Mat2<i64>;
