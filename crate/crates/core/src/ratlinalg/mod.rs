//! Exact linear algebra over ℚ and over rational-function fields ℚ(χ₁,…,χ_s).
//!
//! Every dimension reported by the crate is a rank or a kernel dimension
//! computed here. Pivoting is deterministic (leftmost column, then lowest
//! row), so pivot and free column sets are reproducible.

mod field;
mod matrix;
mod param;
mod poly;

pub use field::{int, rat, split_sign, Field, Rational};
pub use matrix::{gauss_jordan, Matrix, Rref};
pub use param::{bareiss, certified_rank, specialize, Bareiss, ParamScalar};
pub use poly::{Monomial, Poly};
