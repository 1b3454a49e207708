//! Exact arithmetic for conformal partition numbers `P_n^m(s)` and the
//! self-dual (reciprocal / skew-reciprocal) symmetric polynomials they count.
//!
//! The crate is organized around independent computation routes that are
//! cross-checked against each other:
//!
//! - [`partition`]: restricted/unrestricted partition numbers, the
//!   brute-force Diophantine oracle, the dynamic program, Molien series.
//! - [`genfunc`]: Gaussian (q-binomial) polynomials by exact division, the
//!   Molien/Gaussian ratio identity, multi-group products.
//! - [`toeplitz`]: the triangular Toeplitz convolution solver (forward
//!   recursion, `Phi_r` polynomials, closed form) and its conformal
//!   instantiation.
//! - [`closed_forms`]: piecewise closed forms for `P_n^m(s)` in the
//!   small-`s` regimes plus the universal correction `D(k)`.
//! - [`invariant`]: symbolic assembly of reciprocal/skew-reciprocal
//!   polynomials over the elementary symmetric invariants, semigroup
//!   multiplication, duality checks, unimodality indices.
//! - [`roots`]: numeric evaluation and positive-root solving for skew
//!   equations with nonnegative coefficients, mean chains and root bounds.
//! - [`groups`]: degree-duality and distinct-root admissibility tests with
//!   a catalog of reflection-group degree lists.
//! - [`verify`]: the cross-method validation suites used by the CLI.

pub mod closed_forms;
pub mod error;
pub mod genfunc;
pub mod groups;
pub mod invariant;
pub mod partition;
pub mod roots;
pub mod toeplitz;
pub mod verify;

pub use error::Error;

/// Arbitrary-precision nonnegative count. Every partition number in the
/// crate is exact; no floating point is ever involved in counting.
pub type BigCount = num_bigint::BigUint;

/// Result alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    use num_traits::One;
    if k > n {
        return BigCount::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}
