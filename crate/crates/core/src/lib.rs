//! Exact computations on polynomial Krull domains `R ⊆ Q[X]` described as
//! intersections of unitary discrete valuation rings with `Q[X]`.

pub mod algext;
pub mod ballcalc;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod monoval;
pub mod polyarith;
pub mod ringspec;

pub use error::{Error, Result};
pub use exec::Exec;
