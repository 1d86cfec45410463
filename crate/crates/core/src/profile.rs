//! Radial profiles r ↦ u(r) on [0, ∞) and functions on the line.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// A compactly supported profile evaluated on demand.
///
/// Implementations must be safe to evaluate from several threads.
pub trait RadialProfile: Sync {
    /// u(r) for r ≥ 0.
    fn value(&self, r: f64) -> f64;

    /// u(r) = 0 for every r > support_radius.
    fn support_radius(&self) -> f64;

    /// Radii in (0, support_radius] where u is not smooth, increasing.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// u(r + h) - u(r). Implementations should keep full relative accuracy
    /// for small |h|.
    fn increment(&self, r: f64, h: f64) -> f64 {
        self.value(r + h) - self.value(r)
    }

    /// Radii in (0, support_radius) where u crosses the level `v`. Used to
    /// split quadratures at the zeros of u(r) - u(ρ), where |·|^p is not
    /// smooth for non-even p.
    fn level_crossings(&self, _v: f64) -> Vec<f64> {
        Vec::new()
    }

    /// A bound on |u'| if known.
    fn lipschitz_bound(&self) -> Option<f64> {
        None
    }

    /// True when u vanishes on a neighbourhood of r = 0.
    fn vanishes_near_zero(&self) -> bool {
        false
    }

    /// True when u is constant on a neighbourhood of r = 0.
    fn constant_near_zero(&self) -> bool {
        self.vanishes_near_zero()
    }
}

impl<P: RadialProfile + ?Sized> RadialProfile for &P {
    fn value(&self, r: f64) -> f64 {
        (**self).value(r)
    }
    fn support_radius(&self) -> f64 {
        (**self).support_radius()
    }
    fn breakpoints(&self) -> Vec<f64> {
        (**self).breakpoints()
    }
    fn increment(&self, r: f64, h: f64) -> f64 {
        (**self).increment(r, h)
    }
    fn level_crossings(&self, v: f64) -> Vec<f64> {
        (**self).level_crossings(v)
    }
    fn lipschitz_bound(&self) -> Option<f64> {
        (**self).lipschitz_bound()
    }
    fn vanishes_near_zero(&self) -> bool {
        (**self).vanishes_near_zero()
    }
    fn constant_near_zero(&self) -> bool {
        (**self).constant_near_zero()
    }
}

/// Linear interpolation through (r_i, u_i), constant u_0 on [0, r_0] and
/// zero beyond the last node, where u must vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    r: Vec<f64>,
    u: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(r: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        if r.len() != u.len() {
            return Err(Error::Invalid {
                what: format!("{} radii but {} values", r.len(), u.len()),
            });
        }
        if r.len() < 2 {
            return Err(Error::Invalid {
                what: "a profile needs at least two nodes".into(),
            });
        }
        if !(r[0] >= 0.0) {
            return Err(Error::Invalid {
                what: format!("radii must be non-negative, got {}", r[0]),
            });
        }
        if let Some(i) = (1..r.len()).find(|&i| !(r[i] > r[i - 1])) {
            return Err(Error::Invalid {
                what: format!("radii must increase strictly (node {i})"),
            });
        }
        if let Some(i) = (0..r.len()).find(|&i| !r[i].is_finite() || !u[i].is_finite()) {
            return Err(Error::Invalid {
                what: format!("non-finite entry at node {i}"),
            });
        }
        if *u.last().unwrap() != 0.0 {
            return Err(Error::Invalid {
                what: "the last value must be 0 so that the profile has compact support".into(),
            });
        }
        Ok(Self { r, u })
    }

    /// Tent of the given height on [center - half_width, center + half_width].
    pub fn hat(center: f64, half_width: f64, height: f64) -> Result<Self> {
        if !(half_width > 0.0) || !(center - half_width >= 0.0) {
            return Err(Error::Invalid {
                what: format!("hat [{} ± {}] must lie in [0, ∞)", center, half_width),
            });
        }
        Self::new(
            alloc::vec![center - half_width, center, center + half_width],
            alloc::vec![0.0, height, 0.0],
        )
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    /// Index i with r_i ≤ x < r_{i+1}, or None outside [r_0, r_last).
    fn segment(&self, x: f64) -> Option<usize> {
        if x < self.r[0] || x >= *self.r.last().unwrap() {
            return None;
        }
        Some(self.r.partition_point(|&ri| ri <= x) - 1)
    }

    fn slope(&self, i: usize) -> f64 {
        (self.u[i + 1] - self.u[i]) / (self.r[i + 1] - self.r[i])
    }
}

impl RadialProfile for PiecewiseLinear {
    fn value(&self, x: f64) -> f64 {
        if x <= self.r[0] {
            return self.u[0];
        }
        match self.segment(x) {
            None => 0.0,
            Some(i) => self.u[i] + self.slope(i) * (x - self.r[i]),
        }
    }

    fn support_radius(&self) -> f64 {
        *self.r.last().unwrap()
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.r.iter().copied().filter(|&x| x > 0.0).collect()
    }

    fn increment(&self, x: f64, h: f64) -> f64 {
        let y = x + h;
        match (self.segment(x), self.segment(y)) {
            (Some(i), Some(j)) if i == j => self.slope(i) * h,
            _ => {
                let flat = |z: f64| z <= self.r[0] || z >= self.support_radius();
                if flat(x) && flat(y) && ((x <= self.r[0]) == (y <= self.r[0])) {
                    0.0
                } else {
                    self.value(y) - self.value(x)
                }
            }
        }
    }

    fn level_crossings(&self, v: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..self.r.len() - 1 {
            let (a, b) = (self.u[i], self.u[i + 1]);
            if (a < v && v < b) || (b < v && v < a) {
                out.push(self.r[i] + (v - a) / self.slope(i));
            }
        }
        out
    }

    fn lipschitz_bound(&self) -> Option<f64> {
        Some((0..self.r.len() - 1).map(|i| math::abs(self.slope(i))).fold(0.0, f64::max))
    }

    fn vanishes_near_zero(&self) -> bool {
        self.u[0] == 0.0 && self.r[0] > 0.0
    }

    fn constant_near_zero(&self) -> bool {
        self.r[0] > 0.0
    }
}

/// The C¹ bump ((1 - ((r - c)/w)²)₊)² centred at c with half-width w.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    center: f64,
    half_width: f64,
}

impl Bump {
    pub fn new(center: f64, half_width: f64) -> Result<Self> {
        if !(half_width > 0.0) || !(center - half_width >= 0.0) || !center.is_finite() {
            return Err(Error::Invalid {
                what: format!("bump [{} ± {}] must lie in [0, ∞)", center, half_width),
            });
        }
        Ok(Self { center, half_width })
    }

    fn scaled(&self, r: f64) -> f64 {
        (r - self.center) / self.half_width
    }
}

impl RadialProfile for Bump {
    fn value(&self, r: f64) -> f64 {
        let x = self.scaled(r);
        if math::abs(x) >= 1.0 {
            0.0
        } else {
            let a = 1.0 - x * x;
            a * a
        }
    }

    fn support_radius(&self) -> f64 {
        self.center + self.half_width
    }

    fn breakpoints(&self) -> Vec<f64> {
        let lo = self.center - self.half_width;
        let mut b = Vec::with_capacity(2);
        if lo > 0.0 {
            b.push(lo);
        }
        b.push(self.center + self.half_width);
        b
    }

    fn increment(&self, r: f64, h: f64) -> f64 {
        let x = self.scaled(r);
        let y = self.scaled(r + h);
        if math::abs(x) < 1.0 && math::abs(y) < 1.0 {
            // (1-y²)² - (1-x²)² = (x-y)(x+y)(2-x²-y²)
            let dx = -h / self.half_width;
            dx * (x + y) * (2.0 - x * x - y * y)
        } else {
            self.value(r + h) - self.value(r)
        }
    }

    fn level_crossings(&self, v: f64) -> Vec<f64> {
        if !(v > 0.0 && v < 1.0) {
            return Vec::new();
        }
        let x = math::sqrt(1.0 - math::sqrt(v)) * self.half_width;
        let mut out = Vec::with_capacity(2);
        if self.center - x > 0.0 {
            out.push(self.center - x);
        }
        out.push(self.center + x);
        out
    }

    fn lipschitz_bound(&self) -> Option<f64> {
        // max |d/dx (1-x²)²| = 8/(3√3) at x = 1/√3
        Some(8.0 / (3.0 * math::sqrt(3.0)) / self.half_width)
    }

    fn vanishes_near_zero(&self) -> bool {
        self.center - self.half_width > 0.0
    }
}

/// r ↦ u(λr).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dilated<P> {
    pub inner: P,
    pub lambda: f64,
}

impl<P: RadialProfile> Dilated<P> {
    pub fn new(inner: P, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain {
                what: "dilation factor must be positive",
                value: lambda,
            });
        }
        Ok(Self { inner, lambda })
    }
}

impl<P: RadialProfile> RadialProfile for Dilated<P> {
    fn value(&self, r: f64) -> f64 {
        self.inner.value(self.lambda * r)
    }
    fn support_radius(&self) -> f64 {
        self.inner.support_radius() / self.lambda
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints().into_iter().map(|b| b / self.lambda).collect()
    }
    fn increment(&self, r: f64, h: f64) -> f64 {
        self.inner.increment(self.lambda * r, self.lambda * h)
    }
    fn level_crossings(&self, v: f64) -> Vec<f64> {
        self.inner.level_crossings(v).into_iter().map(|x| x / self.lambda).collect()
    }
    fn lipschitz_bound(&self) -> Option<f64> {
        self.inner.lipschitz_bound().map(|l| l * self.lambda)
    }
    fn vanishes_near_zero(&self) -> bool {
        self.inner.vanishes_near_zero()
    }
    fn constant_near_zero(&self) -> bool {
        self.inner.constant_near_zero()
    }
}

/// A compactly supported function on the real line.
pub trait LineFunction: Sync {
    fn value(&self, x: f64) -> f64;
    /// u vanishes outside [lo, hi].
    fn support(&self) -> (f64, f64);
    /// Points where u is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// x ↦ u(|x|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenExtension<P>(pub P);

impl<P: RadialProfile> LineFunction for EvenExtension<P> {
    fn value(&self, x: f64) -> f64 {
        self.0.value(math::abs(x))
    }
    fn support(&self) -> (f64, f64) {
        let r = self.0.support_radius();
        (-r, r)
    }
    fn breakpoints(&self) -> Vec<f64> {
        let b = self.0.breakpoints();
        let mut all: Vec<f64> = b.iter().map(|x| -x).collect();
        all.extend(b);
        all
    }
}

/// x ↦ u(x) for x ≥ 0 and 0 for x < 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSided<P>(pub P);

impl<P: RadialProfile> LineFunction for OneSided<P> {
    fn value(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            self.0.value(x)
        }
    }
    fn support(&self) -> (f64, f64) {
        (0.0, self.0.support_radius())
    }
    fn breakpoints(&self) -> Vec<f64> {
        let mut b = alloc::vec![0.0];
        b.extend(self.0.breakpoints());
        b
    }
}
