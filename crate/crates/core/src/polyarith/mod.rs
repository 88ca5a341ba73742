//! Exact polynomial arithmetic over Q and F_p, resultants, Newton polygons
//! and irreducibility over Q.

mod fp;
mod newton;
mod poly;
mod qirred;
mod resultant;

pub use fp::{fp_irreducible, FpPoly};
pub use newton::{newton_root_valuations, ValuationSpectrum};
pub use poly::Poly;
pub use qirred::{is_irreducible_over_q, poly_gcd};
pub use resultant::{difference_polynomial, resultant, resultant_int};
