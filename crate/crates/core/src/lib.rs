//! Alon–Tarsi style monomial certificates for planar near-triangulations and
//! `K5`-minor-free graphs.
//!
//! The graph polynomial `P_G = ∏ (x - y)` over the edges has a nonvanishing
//! monomial with every exponent below `k` exactly when the graph has
//! Alon–Tarsi number at most `k`. The crate works with the reciprocal form
//! `Q_G = ∏ (1/x - 1/y)` scaled by a reference monomial `R` that encodes the
//! degree caps: `Z = Q·R` has a monomial with no negative exponent if and
//! only if `P` has a nonvanishing monomial within the caps.
//!
//! * [`laurent`]: exact sparse Laurent polynomials and the niceness calculus.
//! * [`planar`]: graphs, near-triangulations, decompositions, generators.
//! * [`oracle`]: capped brute-force expansion and list colouring.
//! * [`certifier`]: the inductive certificate constructions and verification.
//!
//! Polynomial code is generic over the coefficient ring ([`Coefficient`]);
//! the aliases below fix the exact integer ring used by default.

pub mod certifier;
pub mod error;
pub mod laurent;
pub mod oracle;
pub mod planar;
pub mod scalar;

pub use error::{Error, Result};
pub use laurent::{ExponentVector, Vertex};
pub use scalar::{Coefficient, Integer, Zp};

/// Laurent polynomial with exact integer coefficients.
pub type Polynomial = laurent::SparsePolynomial<Integer>;
/// Laurent polynomial over the prime field `F_P`.
pub type ModPolynomial<const P: u32> = laurent::SparsePolynomial<Zp<P>>;
/// Capped expansion result with exact integer coefficients.
pub type Ledger = oracle::CoefficientLedger<Integer>;
/// Capped expansion result over `F_P`.
pub type ModLedger<const P: u32> = oracle::CoefficientLedger<Zp<P>>;
