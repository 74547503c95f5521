//! Numerics for the positive discrete series of SU(1,1).
//!
//! The crate models a representation space through truncated coefficient
//! vectors over the orthonormal basis `|n,k⟩` and offers two analytic
//! pictures of every state:
//!
//! * the unit-disk function `G(ζ;k)` built on Perelomov coherent states,
//! * the entire Barut–Girardello function `F(z;k)`.
//!
//! The two are tied together by a Laplace transform ([`analytic`]). The
//! [`resolutions`] module checks the identity resolutions numerically,
//! including the keyhole-contour ("weak") resolution that stays valid for
//! `k < 1/2`. The [`two_photon`] module specialises everything to the
//! bosonic realization `K₊ = a†²/2`, `K₋ = a²/2` and solves the squeezed and
//! displaced oscillator in closed form, with a Fock-space diagonalization
//! as an independent check.

pub mod analytic;
mod error;
pub mod linalg;
pub mod quadrature;
pub mod resolutions;
pub mod specfun;
pub mod su11;
pub mod two_photon;

pub use error::{Error, ErrorKind, Result};
pub use num_complex::Complex64;
pub use quadrature::QuadratureSpec;
pub use su11::{BargmannIndex, CoefficientState, GroupElement, HyperbolicParams};

/// Shorthand used throughout the crate.
pub(crate) type C64 = Complex64;

pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };
