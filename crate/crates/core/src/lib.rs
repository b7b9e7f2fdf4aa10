//! Verification and search toolkit for irrationality certificates of
//! Riemann zeta and Dirichlet beta values.
//!
//! The decisive inequality of each certificate compares an arithmetic gain
//! rate `C1` (an exact piecewise-floor Stieltjes sum against the digamma
//! measure) with an analytic growth rate `C2` (located by certified
//! bisection). Everything feeding the verdict carries either exact rational
//! arithmetic or a tracked absolute error bound, so a `proven` verdict is
//! never an artifact of rounding.

pub mod asym;
pub mod bound;
pub mod cert;
pub mod collection;
pub mod error;
pub mod floor;
pub mod linform;
pub mod rat;
pub mod real;
pub mod search;
pub mod special;
pub mod tables;

pub use bound::Bound;
pub use collection::{BetaCollection, ZetaCollection};
pub use error::{Error, Result};
pub use rat::Rat;
pub use real::{HPReal, DEFAULT_PRECISION_BITS};
