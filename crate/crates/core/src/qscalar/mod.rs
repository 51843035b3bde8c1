//! Exact scalars: Laurent polynomials in `s = q^(1/4)` with rational
//! coefficients, plus the q-numbers, q-factorials and q-binomials built
//! from them.
//!
//! Every q-dependent quantity on a chain of spin-1/2 sites (q-transposition
//! entries `q^(±1/2)`, q-Dicke weights `q^(±1/4)`, the diagonal `C(τ)`) is a
//! Laurent polynomial in `s`, so the whole construction stays inside this
//! ring. Square roots never appear: states carry squared norms instead.

mod backend;
mod laurent;

pub use backend::{Backend, BackendTag, Exact, Numeric, Scalar};
pub use laurent::{parse_rational, q_binomial, q_factorial, q_number, q_number_real, QScalar};
pub use laurent::rational_to_f64;
