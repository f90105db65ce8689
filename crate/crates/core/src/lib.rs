//! Exact-arithmetic computations around Atkin-style orthogonal polynomials,
//! extremal quasimodular forms of depth one, and the associated linear
//! functional, Faber polynomials, continued fractions, and supersingular
//! congruences — all over the rationals with truncated q-expansions.

pub mod atkin;
pub mod biseries;
pub mod congruence;
pub mod error;
pub mod extremal;
pub mod faber;
pub mod functional;
pub mod hypergeom;
pub mod linalg;
pub mod modforms;
pub mod poly;
pub mod rat;
pub mod report;
pub mod rogers;
pub mod series;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rat::Rat;
pub use series::{QSeries, Var};
