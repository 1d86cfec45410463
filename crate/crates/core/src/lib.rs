//! Sharp constants of weighted fractional Hardy inequalities for
//! Triebel–Lizorkin seminorms on ℝ^d and on the half-space ℝ^d₊.
//!
//! The crate is `no_std` (it needs `alloc`). It provides
//!
//! * [`numerics`]: log-gamma, beta, the Gauss hypergeometric function and a
//!   double-exponential quadrature rule for integrands with algebraic endpoint
//!   singularities;
//! * [`kernel`]: the angular kernel Φ_{d,s,p} evaluated by direct quadrature
//!   and through its hypergeometric representation;
//! * [`constants`]: parameter validation and the sharp constants for the
//!   whole space and the half-space;
//! * [`seminorm`]: weighted seminorms and norms of radial profiles, a brute
//!   force one-dimensional oracle and Hardy ratios;
//! * [`extremal`]: the truncated power family whose Hardy ratios decrease to
//!   the sharp constant.
#![no_std]
#![warn(missing_debug_implementations)]
// `!(x < y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod constants;
pub mod error;
pub mod extremal;
pub mod kernel;
mod math;
pub mod numerics;
pub mod profile;
pub mod seminorm;

pub use constants::{
    dual_params, halfspace_prefactor, pq_equal_constant, sharp_constant, validate, Domain,
    HardyParams, SupportClass, ValidationReport, Violation,
};
pub use error::{Error, Result};
pub use extremal::{
    make_un, ratio_sequence, rhs_norm_closed_form, ExtremalFamily, ExtremalProfile, RatioEntry,
    RatioSeries,
};
pub use kernel::{edge_coefficient, phi, phi_extended, Kernel, KernelSpec, PhiMethod};
pub use numerics::{QuadResult, SingularityHint};
pub use profile::{Bump, Dilated, EvenExtension, LineFunction, OneSided, PiecewiseLinear, RadialProfile};
pub use seminorm::{
    direct_seminorm_1d, hardy_ratio, lq_weighted_norm, tl_seminorm, HardyRatioResult,
};

/// Default absolute tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-10;
