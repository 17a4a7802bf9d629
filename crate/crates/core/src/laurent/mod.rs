//! Exact sparse Laurent polynomials and the niceness calculus.
//!
//! A monomial is *nice* when no exponent is negative; a polynomial is *good*
//! when it has a nice monomial. Pruning non-nice terms is only sound while
//! every factor still to come can lower exponents but not raise them, which
//! is the case for products of reciprocal edge factors.

mod exponent;
mod polynomial;

pub use exponent::{is_nice, niceness_ge, ExponentVector, Vertex};
pub(crate) use polynomial::signed;
pub use polynomial::{
    edge_product, is_good, mul, mul_edge_factor, nice_terms, prune_nonnice, FactorMode, SparsePolynomial,
};
