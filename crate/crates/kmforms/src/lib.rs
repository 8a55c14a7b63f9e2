//! Exact-arithmetic construction and verification of the Siegel cusp forms
//! `Delta_5` and `F_2`, the Jacobi-form tower beneath them, the hyperbolic
//! Weyl-group data of two rank-3 Lorentzian Kac-Moody superalgebras, and the
//! denominator identities tying them together.
//!
//! Everything is computed over arbitrary-precision rationals on sparse,
//! cone-graded exponent tables; every claimed identity is checked
//! coefficient-by-coefficient and every integrality claim is asserted, never
//! assumed. All tables and series are immutable once built, so values may be
//! shared and read concurrently; the process-wide caches in `checks` are
//! initialized through `OnceLock`.

pub mod arith;
pub mod checks;
pub mod error;
pub mod io;
pub mod jacobi;
pub mod lattice;
pub mod lift;
pub mod series;
pub mod superalgebra;
pub mod theta;

pub use error::{CheckReport, Error, Result};
