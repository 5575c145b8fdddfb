//! Exact computation of virtual Poincare polynomials (and conjectural
//! virtual Hodge polynomials) of moduli spaces of stable vector bundles on
//! a genus-`g` curve, for arbitrary rank and degree, together with exact
//! integer counts of absolutely stable bundles over finite fields given a
//! curve's zeta function.
//!
//! Pipeline: closed-form rational functions for the semistable weighted
//! counts (Harder-Narasimhan recursion solved by Zagier's kernel sums over
//! compositions), then a twisted plethystic-logarithm extraction of the
//! stable invariants on each slope ray. All arithmetic is exact over the
//! rationals.

pub mod algebra;
pub mod counting;
pub mod error;
pub mod extract;
pub mod hnzagier;
pub mod lambda;

pub use algebra::{CoeffRing, LambdaRing, Poly2, PolyQ, QAlgebra, Rat, RatFunc, RatFunc2, Series};
pub use counting::{CSeqVec, SeqElem, ZetaData};
pub use error::Error;
pub use extract::{SlopeRay, TwistedSeries};
pub use hnzagier::{CharPair, Composition};
