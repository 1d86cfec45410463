//! Double-exponential (tanh-sinh) quadrature on finite intervals and on
//! (0, ∞).
//!
//! Nodes cluster double-exponentially at both ends, so integrands with
//! algebraic endpoint singularities t^e, e > -1, converge quickly. The
//! integrand receives a [`Node`] carrying the distance to each endpoint as
//! well as the abscissa; integrands that are singular at the right end should
//! use `to_right` instead of forming `1 - x`, which loses every digit once the
//! node is within an ulp of the endpoint.

use crate::error::{Error, Result};
use crate::math;

/// Result of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub nodes_used: usize,
    pub converged: bool,
}

impl QuadResult {
    /// An exact value that needed no integrand evaluations.
    pub const fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error_estimate: 0.0,
            nodes_used: 0,
            converged: true,
        }
    }

    /// Sum of two independent integrals.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            nodes_used: self.nodes_used + other.nodes_used,
            converged: self.converged && other.converged,
        }
    }

    /// Relative error estimate, `abs_error_estimate / |value|`.
    pub fn rel_error(&self) -> f64 {
        if self.value == 0.0 {
            if self.abs_error_estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.abs_error_estimate / math::abs(self.value)
        }
    }
}

/// Declared power behaviour of an integrand at the two ends of its interval:
/// f ~ (x - a)^left near a and f ~ (b - x)^right near b.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SingularityHint {
    pub left_exponent: f64,
    pub right_exponent: f64,
}

impl SingularityHint {
    pub const SMOOTH: Self = Self {
        left_exponent: 0.0,
        right_exponent: 0.0,
    };

    pub fn new(left_exponent: f64, right_exponent: f64) -> Result<Self> {
        let hint = Self {
            left_exponent,
            right_exponent,
        };
        hint.check()?;
        Ok(hint)
    }

    fn check(&self) -> Result<()> {
        for e in [self.left_exponent, self.right_exponent] {
            if !(e > -1.0) || !e.is_finite() {
                return Err(Error::Domain {
                    what: "singularity exponents must be finite and greater than -1",
                    value: e,
                });
            }
        }
        Ok(())
    }
}

impl Default for SingularityHint {
    fn default() -> Self {
        Self::SMOOTH
    }
}

/// A quadrature node: the abscissa and its distances to both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_left: f64,
    pub to_right: f64,
}

/// Tanh-sinh rule with nested halving of the step size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhSinh {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// First level at which convergence may be declared (step 2^{-level}).
    pub min_level: u32,
    /// Largest number of nodes the finest rule may use.
    pub node_budget: usize,
}

impl Default for TanhSinh {
    fn default() -> Self {
        Self {
            abs_tol: crate::DEFAULT_TOL,
            rel_tol: 0.0,
            min_level: 3,
            node_budget: 1 << 14,
        }
    }
}

/// Smallest node distance from an endpoint, as a fraction of the interval.
const MIN_DISTANCE: f64 = 1e-180;

/// Distance from an endpoint, as a fraction of the interval, below which
/// nodes are dropped: the neglected part of ∫ x^e is about 1e-20.
fn cutoff_distance(exponent: f64) -> f64 {
    if exponent >= 0.0 {
        1e-20
    } else {
        math::powf(10.0, -20.0 / (1.0 + exponent)).max(MIN_DISTANCE)
    }
}

fn cutoff_parameter(exponent: f64) -> f64 {
    math::asinh(-math::ln(cutoff_distance(exponent)) / math::PI)
}

/// Exponents so close to -1 that a sizeable share of the integral sits
/// closer to the endpoint than any double can resolve.
fn needs_power_model(exponent: f64) -> bool {
    exponent < 0.0 && math::powf(10.0, -20.0 / (1.0 + exponent)) < MIN_DISTANCE
}

/// C·x^e fitted to f at the innermost node; subtracted from the integrand
/// and integrated exactly.
#[derive(Clone, Copy, Default)]
struct PowerModel {
    coefficient: f64,
    exponent: f64,
}

impl PowerModel {
    fn at(&self, distance: f64) -> f64 {
        if self.coefficient == 0.0 {
            0.0
        } else {
            self.coefficient * math::powf(distance, self.exponent)
        }
    }

    fn integral(&self, len: f64) -> f64 {
        if self.coefficient == 0.0 {
            0.0
        } else {
            self.coefficient * math::powf(len, 1.0 + self.exponent) / (1.0 + self.exponent)
        }
    }
}

struct Mapped {
    node: Node,
    weight: f64,
}

fn map_node(a: f64, b: f64, u: f64) -> Mapped {
    let len = b - a;
    let s = core::f64::consts::FRAC_PI_2 * math::sinh(u);
    let e = math::exp(-2.0 * math::abs(s));
    let small = e / (1.0 + e);
    let big = 1.0 / (1.0 + e);
    let (dl, dr) = if u < 0.0 { (small, big) } else { (big, small) };
    let from_left = len * dl;
    let to_right = len * dr;
    let x = if dl <= dr { a + from_left } else { b - to_right };
    Mapped {
        node: Node {
            x,
            from_left,
            to_right,
        },
        weight: math::PI * math::cosh(u) * small * big * len,
    }
}

impl TanhSinh {
    pub fn new(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_min_level(mut self, min_level: u32) -> Self {
        self.min_level = min_level;
        self
    }

    pub fn with_node_budget(mut self, node_budget: usize) -> Self {
        self.node_budget = node_budget;
        self
    }

    /// Integrates `f` over (a, b).
    pub fn integrate<F>(&self, a: f64, b: f64, hint: SingularityHint, mut f: F) -> Result<QuadResult>
    where
        F: FnMut(Node) -> f64,
    {
        self.try_integrate(a, b, hint, |n| Ok(f(n)))
    }

    /// As [`TanhSinh::integrate`] for a fallible integrand; the first error
    /// aborts the integration.
    pub fn try_integrate<F>(&self, a: f64, b: f64, hint: SingularityHint, mut f: F) -> Result<QuadResult>
    where
        F: FnMut(Node) -> Result<f64>,
    {
        hint.check()?;
        if !(a.is_finite() && b.is_finite()) || !(a < b) {
            return Err(Error::Domain {
                what: "integration bounds must be finite with a < b",
                value: if a.is_finite() { b } else { a },
            });
        }
        if !(self.abs_tol >= 0.0) || !(self.rel_tol >= 0.0) {
            return Err(Error::Domain {
                what: "tolerances must be non-negative",
                value: self.abs_tol.min(self.rel_tol),
            });
        }

        let len = b - a;
        let u_left = cutoff_parameter(hint.left_exponent);
        let u_right = cutoff_parameter(hint.right_exponent);
        let mut call = |node: Node| -> Result<f64> {
            let fx = f(node)?;
            if fx.is_finite() {
                Ok(fx)
            } else {
                Err(Error::Evaluation { at: node.x })
            }
        };

        let mut extra_nodes = 0usize;
        let mut left_model = PowerModel::default();
        let mut right_model = PowerModel::default();
        if needs_power_model(hint.left_exponent) {
            let dist = len * MIN_DISTANCE;
            let fx = call(Node {
                x: a + dist,
                from_left: dist,
                to_right: len - dist,
            })?;
            left_model = PowerModel {
                coefficient: fx * math::powf(dist, -hint.left_exponent),
                exponent: hint.left_exponent,
            };
            extra_nodes += 1;
        }
        if needs_power_model(hint.right_exponent) {
            let dist = len * MIN_DISTANCE;
            let fx = call(Node {
                x: b - dist,
                from_left: len - dist,
                to_right: dist,
            })?;
            right_model = PowerModel {
                coefficient: fx * math::powf(dist, -hint.right_exponent),
                exponent: hint.right_exponent,
            };
            extra_nodes += 1;
        }
        let model_integral = left_model.integral(len) + right_model.integral(len);

        let mut sum = 0.0;
        let mut l1 = 0.0;
        let mut previous: Option<f64> = None;
        let mut best = QuadResult {
            value: 0.0,
            abs_error_estimate: f64::INFINITY,
            nodes_used: 0,
            converged: false,
        };
        let mut level = 0u32;
        loop {
            let h = math::powi(0.5, level as i32);
            let k_left = math::floor(u_left / h) as i64;
            let k_right = math::floor(u_right / h) as i64;
            let total_nodes = (k_left + k_right + 1) as usize + extra_nodes;
            if total_nodes > self.node_budget {
                break;
            }
            let step: i64 = if level == 0 { 1 } else { 2 };
            let mut k = if level == 0 || k_left % 2 == 1 {
                -k_left
            } else {
                -k_left + 1
            };
            while k <= k_right {
                let m = map_node(a, b, k as f64 * h);
                let fx = call(m.node)?
                    - left_model.at(m.node.from_left)
                    - right_model.at(m.node.to_right);
                let v = fx * m.weight;
                sum += v;
                l1 += math::abs(v);
                k += step;
            }
            let value = h * sum + model_integral;
            let rounding = 4.0 * f64::EPSILON * (h * l1 + math::abs(model_integral));
            let estimate = match previous {
                Some(p) => math::abs(value - p).max(rounding),
                None => f64::INFINITY,
            };
            best = QuadResult {
                value,
                abs_error_estimate: estimate,
                nodes_used: total_nodes,
                converged: false,
            };
            let target = self.abs_tol.max(self.rel_tol * math::abs(value));
            if level >= self.min_level && estimate <= target {
                best.converged = true;
                break;
            }
            previous = Some(value);
            level += 1;
        }
        Ok(best)
    }
}

/// Integrates `f` over (0, 1) to absolute tolerance `tol`.
pub fn integrate_01<F>(mut f: F, hint: SingularityHint, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    TanhSinh::new(tol).integrate(0.0, 1.0, hint, |n| f(n.x))
}

/// Integrates over (0, 1) with an integrand that receives `(t, 1 - t)`.
pub fn integrate_01_with_complement<F>(mut f: F, hint: SingularityHint, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64, f64) -> f64,
{
    TanhSinh::new(tol).integrate(0.0, 1.0, hint, |n| f(n.x, n.to_right))
}

/// Exponents assumed by [`integrate_0inf`]: a mild singularity at 0 and
/// decay like r^{-1.1} at infinity.
const DEFAULT_ZERO_EXPONENT: f64 = -0.9;
const DEFAULT_DECAY_EXPONENT: f64 = 1.1;

/// Integrates `f` over (0, ∞) by splitting at 1 and mapping (1, ∞) onto
/// (0, 1) with r = 1/v.
pub fn integrate_0inf<F>(f: F, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_0inf_with_hints(f, DEFAULT_ZERO_EXPONENT, DEFAULT_DECAY_EXPONENT, tol)
}

/// As [`integrate_0inf`] with f ~ r^{zero_exponent} at 0 and
/// f ~ r^{-decay_exponent} at infinity (`decay_exponent > 1`).
pub fn integrate_0inf_with_hints<F>(
    mut f: F,
    zero_exponent: f64,
    decay_exponent: f64,
    tol: f64,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    let rule = TanhSinh::new(0.5 * tol);
    let near = rule.integrate(0.0, 1.0, SingularityHint::new(zero_exponent, 0.0)?, |n| f(n.x))?;
    let far_hint = SingularityHint::new(decay_exponent - 2.0, 0.0)?;
    let far = rule.integrate(0.0, 1.0, far_hint, |n| {
        let r = 1.0 / n.x;
        let fr = f(r);
        if fr == 0.0 {
            0.0
        } else {
            fr * r * r
        }
    })?;
    Ok(near.combine(far))
}
