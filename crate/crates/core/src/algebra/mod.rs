//! Exact arithmetic foundation: rationals, dense/sparse polynomials,
//! factored-denominator rational functions in one and two variables, and
//! truncated power series over an abstract coefficient ring.

pub mod poly;
pub mod poly2;
pub mod rat;
pub mod ratfunc;
pub mod ratfunc2;
pub mod ring;
pub mod series;

pub use poly::PolyQ;
pub use poly2::Poly2;
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use ratfunc2::RatFunc2;
pub use ring::{CoeffRing, LambdaRing, QAlgebra};
pub use series::Series;
