//! Special-function kernel: complex Gamma, modified Bessel functions of
//! real order, Kummer's confluent hypergeometric series, associated
//! Laguerre polynomials and the loop-integral form of the Beta function.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod contour;
mod dd;
mod gamma;
mod kummer;
mod laguerre;

pub use bessel::{bessel_i, bessel_k};
pub use contour::beta_contour_weight;
pub use gamma::{beta, gamma, gamma_real, ln_gamma_real};
pub use kummer::{kummer_phi, kummer_phi_with, SeriesControl};
pub use laguerre::laguerre_assoc;

/// True when `x` is within `tol` of an integer.
pub(crate) fn near_integer(x: f64, tol: f64) -> bool {
    (x - x.round()).abs() <= tol
}
