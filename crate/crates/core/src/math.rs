//! Thin wrappers over `libm` so the crate builds without `std`.

pub(crate) use core::f64::consts::PI;

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub(crate) fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}
#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub(crate) fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}
#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline]
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}
#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub(crate) fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}
#[inline]
pub(crate) fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}
#[inline]
pub(crate) fn asinh(x: f64) -> f64 {
    libm::asinh(x)
}
#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}
#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `t^a` for `t > 0` written through the logarithm, with `ln t` supplied by
/// the caller (usually computed from the more accurate of `t` and `1 - t`).
#[inline]
pub(crate) fn pow_from_ln(ln_t: f64, a: f64) -> f64 {
    if a == 0.0 {
        1.0
    } else {
        exp(a * ln_t)
    }
}

/// `ln t` given both `t` and its complement `c = 1 - t`, each accurate to
/// full relative precision.
#[inline]
pub(crate) fn ln_with_complement(t: f64, c: f64) -> f64 {
    if t < 0.5 {
        ln(t)
    } else {
        ln_1p(-c)
    }
}
