//! Special functions and quadrature.
//!
//! Everything here is a pure function of its arguments; workspaces are
//! allocated per call.

mod gauss;
mod hypergeometric;
mod quadrature;
mod special;

pub use gauss::{adaptive_gauss_kronrod, gauss_legendre};
pub use hypergeometric::{gauss_2f1, gauss_2f1_complement, Gauss2F1};
pub use quadrature::{
    integrate_01, integrate_01_with_complement, integrate_0inf, integrate_0inf_with_hints, Node,
    QuadResult, SingularityHint, TanhSinh,
};
pub use special::{beta, digamma, gamma, ln_gamma, rgamma, unit_sphere_area};
