//! Weighted Triebel–Lizorkin seminorms and weighted Lq norms of radial
//! profiles, a brute-force oracle on the line, and Hardy ratios.
//!
//! For radial u on ℝ^d polar coordinates reduce the seminorm to
//!
//!   ω_{d-1} ∫₀^∞ r^{qδ-1} I(r)^{q/p} dr,
//!   I(r) = ∫₀¹ [ |u(r) - u(rt)|^p t^{d-1+β} + |u(r) - u(r/t)|^p t^{sp-1-β} ] Φ(t) dt,
//!
//! where the second term is the part t > 1 folded back with t ↦ 1/t. The
//! half-line case (d = 1 on ℝ₊) is the same with weight 1 and Φ replaced by
//! (1-t)^{-1-sp}.

use alloc::vec::Vec;

use crate::constants::{sharp_constant, validate, Domain, EdgeKernel, HardyParams, SupportClass};
use crate::error::{Error, Result};
use crate::math;
use crate::numerics::{gauss_legendre, unit_sphere_area, Node, QuadResult, SingularityHint, TanhSinh};
use crate::profile::{LineFunction, RadialProfile};

const INNER_REL_TOL: f64 = 1e-13;
const QUICK_BUDGET: usize = 1 << 10;
/// Inner segments with hi/lo above this are integrated in ln t.
const LOG_RATIO: f64 = 16.0;

/// Both sides of the Hardy inequality for one profile.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HardyRatioResult {
    pub lhs_seminorm: QuadResult,
    pub rhs_norm: QuadResult,
    pub ratio: f64,
    pub constant: f64,
    /// ratio - constant; non-negative up to quadrature error.
    pub margin: f64,
}

/// Checks the parameters and the profile's support class; returns the
/// angular weight (ω_{d-1}, or 1 on the half-line).
fn admit<P: RadialProfile + ?Sized>(profile: &P, params: &HardyParams) -> Result<f64> {
    let report = validate(params).into_result()?;
    if params.domain == Domain::HalfSpace && params.d != 1 {
        return Err(Error::Unsupported {
            what: "half-space seminorms are evaluated for d = 1 only",
        });
    }
    let needs_gap = matches!(
        report.support_class,
        SupportClass::PuncturedAtOrigin | SupportClass::OpenHalfSpace
    );
    if needs_gap && !profile.vanishes_near_zero() {
        return Err(Error::Precondition {
            constraint: "profile must vanish near the origin".into(),
        });
    }
    if !(profile.support_radius() > 0.0) || !profile.support_radius().is_finite() {
        return Err(Error::Invalid {
            what: "profile support radius must be positive and finite".into(),
        });
    }
    match params.domain {
        Domain::WholeSpace => unit_sphere_area(params.d),
        Domain::HalfSpace => Ok(1.0),
    }
}

/// Positive breakpoints of the profile together with its support radius,
/// sorted and deduplicated.
fn radial_breakpoints<P: RadialProfile + ?Sized>(profile: &P) -> Vec<f64> {
    let mut b: Vec<f64> = profile
        .breakpoints()
        .into_iter()
        .filter(|&x| x > 0.0 && x.is_finite())
        .collect();
    b.push(profile.support_radius());
    b.sort_by(|x, y| x.total_cmp(y));
    b.dedup();
    b
}

/// Integrates a fallible `f(r)` over (0, ∞) split at the given breakpoints:
/// linearly on [0, b₁], in log r between breakpoints and with r = b_last/v
/// on the tail.
fn integrate_radial<F>(
    breakpoints: &[f64],
    rule: TanhSinh,
    zero_exponent: f64,
    tail_exponent: Option<f64>,
    mut f: F,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut total = QuadResult::exact(0.0);
    let first = breakpoints[0];
    let hint = SingularityHint::new(zero_exponent, 0.0)?;
    total = total.combine(rule.try_integrate(0.0, first, hint, |n| f(n.x))?);
    for w in breakpoints.windows(2) {
        let (lo, hi) = (math::ln(w[0]), math::ln(w[1]));
        let r = rule.try_integrate(lo, hi, SingularityHint::SMOOTH, |n| {
            let r = math::exp(n.x);
            Ok(f(r)? * r)
        })?;
        total = total.combine(r);
    }
    if let Some(e) = tail_exponent {
        let last = *breakpoints.last().unwrap();
        let hint = SingularityHint::new(e, 0.0)?;
        let r = rule.try_integrate(0.0, 1.0, hint, |n| {
            let v = n.x;
            let value = f(last / v)?;
            Ok(if value == 0.0 { 0.0 } else { value * last / v / v })
        })?;
        total = total.combine(r);
    }
    Ok(total)
}

/// The inner integral I(r) of the radial reduction.
struct Inner<'a, P: ?Sized> {
    profile: &'a P,
    kernel: EdgeKernel,
    breakpoints: &'a [f64],
    p: f64,
    near_exponent: f64,
    far_exponent: f64,
    edge_exponent: f64,
    rule: TanhSinh,
}

impl<'a, P: RadialProfile + ?Sized> Inner<'a, P> {
    fn new(profile: &'a P, params: &HardyParams, breakpoints: &'a [f64]) -> Result<Self> {
        let sp = params.sp();
        Ok(Self {
            profile,
            kernel: EdgeKernel::for_params(params)?,
            breakpoints,
            p: params.p,
            near_exponent: params.d_eff() - 1.0 + params.beta,
            far_exponent: sp - 1.0 - params.beta,
            edge_exponent: params.p - 1.0 - sp,
            rule: TanhSinh::new(0.0).with_rel_tol(INNER_REL_TOL),
        })
    }

    /// Integrand at t with c = 1 - t.
    fn eval(&self, r: f64, t: f64, c: f64) -> Result<f64> {
        // Increments near t = 1 come from `increment`, elsewhere the two
        // values are evaluated directly so that rt and r/t stay accurate.
        let (near, far) = if t < 0.5 {
            let ur = self.profile.value(r);
            (self.profile.value(r * t) - ur, self.profile.value(r / t) - ur)
        } else {
            (self.profile.increment(r, -r * c), self.profile.increment(r, r * c / t))
        };
        let g_near = math::abs(near) / c;
        let g_far = math::abs(far) / c;
        if g_near == 0.0 && g_far == 0.0 {
            return Ok(0.0);
        }
        let ln_t = math::ln_with_complement(t, c);
        let mut w = 0.0;
        if g_near != 0.0 {
            w += math::powf(g_near, self.p) * math::pow_from_ln(ln_t, self.near_exponent);
        }
        if g_far != 0.0 {
            w += math::powf(g_far, self.p) * math::pow_from_ln(ln_t, self.far_exponent);
        }
        Ok(w * math::powf(c, self.edge_exponent) * self.kernel.regularized(t, c)?)
    }

    fn integrate(&self, r: f64) -> Result<QuadResult> {
        // u(rt) has kinks at t = b/r, u(r/t) at t = r/b.
        let mut cuts: Vec<f64> = Vec::with_capacity(2 * self.breakpoints.len() + 2);
        cuts.push(0.0);
        for &b in self.breakpoints {
            for t in [b / r, r / b] {
                if t > 0.0 && t < 1.0 {
                    cuts.push(t);
                }
            }
        }
        for rho in self.profile.level_crossings(self.profile.value(r)) {
            for t in [rho / r, r / rho] {
                if t > 0.0 && t < 1.0 {
                    cuts.push(t);
                }
            }
        }
        cuts.push(1.0);
        cuts.sort_by(|x, y| x.total_cmp(y));
        cuts.dedup();
        let last = cuts.len() - 2;
        let segment = |i: usize, rule: TanhSinh| -> Result<QuadResult> {
            let (lo, hi) = (cuts[i], cuts[i + 1]);
            let left = if i == 0 {
                self.near_exponent.min(self.far_exponent)
            } else {
                0.0
            };
            let right = if i == last { self.edge_exponent } else { 0.0 };
            let hint = SingularityHint::new(left, right)?;
            let tail = 1.0 - hi;
            if lo > 0.0 && hi > LOG_RATIO * lo {
                // Segments spanning many scales are integrated in ln t.
                let right = SingularityHint::new(0.0, right)?;
                return rule.try_integrate(math::ln(lo), math::ln(hi), right, |n: Node| {
                    let t = hi * math::exp(-n.to_right);
                    let c = tail - hi * math::expm1(-n.to_right);
                    Ok(self.eval(r, t, c)? * t)
                });
            }
            rule.try_integrate(lo, hi, hint, |n: Node| {
                let c = if i == last { n.to_right } else { tail + n.to_right };
                self.eval(r, n.x, c)
            })
        };
        // A cheap pass first; segments that carry a negligible share of the
        // total (for instance slivers next to a kink) are not refined.
        let quick = self.rule.with_node_budget(QUICK_BUDGET);
        let mut parts: Vec<QuadResult> = Vec::with_capacity(last + 1);
        for i in 0..=last {
            parts.push(segment(i, quick)?);
        }
        let sum = |parts: &[QuadResult]| parts.iter().fold(QuadResult::exact(0.0), |a, b| a.combine(*b));
        let mut total = sum(&parts);
        let target = INNER_REL_TOL * math::abs(total.value);
        if total.abs_error_estimate > target {
            let share = target / parts.len() as f64;
            let refine = TanhSinh::new(share).with_rel_tol(INNER_REL_TOL);
            for (i, part) in parts.iter_mut().enumerate() {
                if part.abs_error_estimate > share {
                    *part = segment(i, refine)?;
                }
            }
            total = sum(&parts);
        }
        total.converged = total.abs_error_estimate <= 2.0 * INNER_REL_TOL * math::abs(total.value);
        Ok(total)
    }
}

/// The weighted Triebel–Lizorkin seminorm of a radial profile (whole
/// space) or of a profile on the half-line (half-space, d = 1), to absolute
/// tolerance `tol` on the outer integral.
pub fn tl_seminorm<P: RadialProfile + ?Sized>(profile: &P, params: &HardyParams, tol: f64) -> Result<QuadResult> {
    let weight = admit(profile, params)?;
    let breakpoints = radial_breakpoints(profile);
    let inner = Inner::new(profile, params, &breakpoints)?;
    // I(r) is least smooth where u(r) meets the value at a kink.
    let mut outer_breaks = breakpoints.clone();
    for &b in breakpoints.iter().chain(core::iter::once(&0.0)) {
        outer_breaks.extend(profile.level_crossings(profile.value(b)));
    }
    outer_breaks.sort_by(|x, y| x.total_cmp(y));
    outer_breaks.dedup();
    let (p, q, sq, d_eff) = (params.p, params.q, params.s * params.q, params.d_eff());
    let e = q / p;
    let gamma = params.gamma();
    let alpha = params.alpha;

    let zero_exponent = if profile.constant_near_zero() {
        d_eff + alpha - 1.0
    } else {
        (d_eff + alpha - 1.0).min(gamma - 1.0 + q)
    };
    let tail_exponent = sq - alpha - d_eff * (1.0 - q / p) - 1.0;

    let segments = outer_breaks.len() + 1;
    let rule = TanhSinh::new(0.5 * tol / (weight * segments as f64));
    let mut worst_inner = 0.0f64;
    let mut inner_converged = true;
    let outer = integrate_radial(&outer_breaks, rule, zero_exponent, Some(tail_exponent), |r| {
        let i = inner.integrate(r)?;
        inner_converged &= i.converged;
        if i.value == 0.0 {
            return Ok(0.0);
        }
        worst_inner = worst_inner.max(i.rel_error());
        Ok(math::powf(r, gamma - 1.0) * math::powf(i.value, e))
    })?;
    let value = weight * outer.value;
    let abs_error_estimate = weight * outer.abs_error_estimate + e * worst_inner * math::abs(value);
    Ok(QuadResult {
        value,
        abs_error_estimate,
        nodes_used: outer.nodes_used,
        converged: outer.converged && inner_converged && abs_error_estimate <= tol,
    })
}

/// ω_{d-1} ∫₀^∞ r^{qδ-1} |u(r)|^q dr (weight 1 on the half-line).
pub fn lq_weighted_norm<P: RadialProfile + ?Sized>(profile: &P, params: &HardyParams, tol: f64) -> Result<QuadResult> {
    let weight = admit(profile, params)?;
    let breakpoints = radial_breakpoints(profile);
    let q = params.q;
    let gamma = params.gamma();
    let rule = TanhSinh::new(0.5 * tol / (weight * breakpoints.len() as f64));
    let zero_exponent = if profile.vanishes_near_zero() { 0.0 } else { gamma - 1.0 };
    let outer = integrate_radial(&breakpoints, rule, zero_exponent, None, |r| {
        let u = math::abs(profile.value(r));
        Ok(if u == 0.0 {
            0.0
        } else {
            math::powf(r, gamma - 1.0) * math::powf(u, q)
        })
    })?;
    let value = weight * outer.value;
    let abs_error_estimate = weight * outer.abs_error_estimate;
    Ok(QuadResult {
        value,
        abs_error_estimate,
        converged: outer.converged && abs_error_estimate <= tol,
        ..outer
    })
}

/// Lhs seminorm, rhs norm, sharp constant and margin for one profile.
pub fn hardy_ratio<P: RadialProfile + ?Sized>(profile: &P, params: &HardyParams, tol: f64) -> Result<HardyRatioResult> {
    let rhs_norm = lq_weighted_norm(profile, params, tol)?;
    if rhs_norm.value == 0.0 {
        return Err(Error::Degenerate {
            what: "the profile vanishes identically",
        });
    }
    let lhs_seminorm = tl_seminorm(profile, params, tol)?;
    let constant = sharp_constant(params, tol)?.value;
    let ratio = lhs_seminorm.value / rhs_norm.value;
    Ok(HardyRatioResult {
        lhs_seminorm,
        rhs_norm,
        ratio,
        constant,
        margin: ratio - constant,
    })
}

const ORACLE_ORDER: usize = 8;
const ORACLE_GRADING: f64 = 0.15;

/// Composite Gauss–Legendre rule over a list of segments, geometrically
/// graded toward both ends of each; infinite tails are mapped to (0, 1].
struct GradedRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GradedRule {
    fn new(points: &[f64], lower_tail: bool, upper_tail: bool, levels: usize, gl: &(Vec<f64>, Vec<f64>)) -> Self {
        let mut rule = GradedRule {
            nodes: Vec::new(),
            weights: Vec::new(),
        };
        let mut panel = |a: f64, b: f64, map: &dyn Fn(f64) -> (f64, f64)| {
            let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
            for (x, w) in gl.0.iter().zip(&gl.1) {
                let (y, jac) = map(mid + half * x);
                rule.nodes.push(y);
                rule.weights.push(w * half * jac);
            }
        };
        let mut graded = |a: f64, b: f64, map: &dyn Fn(f64) -> (f64, f64)| {
            let m = 0.5 * (a + b);
            let mut lo = a;
            for j in (0..levels).rev() {
                let hi = a + (m - a) * math::powi(ORACLE_GRADING, j as i32);
                panel(lo, hi, map);
                lo = hi;
            }
            let mut hi = b;
            for j in (0..levels).rev() {
                let lo2 = b - (b - m) * math::powi(ORACLE_GRADING, j as i32);
                panel(lo2, hi, map);
                hi = lo2;
            }
        };
        for w in points.windows(2) {
            graded(w[0], w[1], &|x| (x, 1.0));
        }
        let span = (points[points.len() - 1] - points[0]).max(1.0);
        if upper_tail {
            let hi = points[points.len() - 1];
            graded(0.0, 1.0, &|v: f64| (hi + span * (1.0 / v - 1.0), span / (v * v)));
        }
        if lower_tail {
            let lo = points[0];
            graded(0.0, 1.0, &|v: f64| (lo - span * (1.0 / v - 1.0), span / (v * v)));
        }
        rule
    }
}

fn sorted_points(mut points: Vec<f64>) -> Vec<f64> {
    points.retain(|x| x.is_finite());
    points.sort_by(|a, b| a.total_cmp(b));
    points.dedup();
    points
}

fn direct_value<U: LineFunction + ?Sized>(u: &U, params: &HardyParams, levels: usize) -> f64 {
    let (p, q, sp) = (params.p, params.q, params.sp());
    let (alpha, beta) = (params.alpha, params.beta);
    let half_line = params.domain == Domain::HalfSpace;
    let (lo, hi) = u.support();
    let mut base = u.breakpoints();
    base.extend([lo, hi, 0.0]);
    if half_line {
        base.retain(|&x| x >= 0.0);
    }
    let gl = gauss_legendre(ORACLE_ORDER);
    let base = sorted_points(base);
    let outer = GradedRule::new(&base, !half_line, true, levels, &gl);
    let mut total = 0.0;
    for (&x, &wx) in outer.nodes.iter().zip(&outer.weights) {
        let ux = u.value(x);
        let mut points = base.clone();
        points.push(x);
        let points = sorted_points(points);
        let inner = GradedRule::new(&points, !half_line, true, levels, &gl);
        let mut sum = 0.0;
        for (&y, &wy) in inner.nodes.iter().zip(&inner.weights) {
            let diff = math::abs(ux - u.value(y));
            if diff == 0.0 {
                continue;
            }
            sum += wy * math::powf(diff, p) * math::powf(math::abs(x - y), -1.0 - sp) * math::powf(math::abs(y), beta);
        }
        if sum > 0.0 {
            total += wx * math::powf(sum, q / p) * math::powf(math::abs(x), alpha);
        }
    }
    total
}

/// Brute-force evaluation of
/// ∫ ( ∫ |u(x) - u(y)|^p |x-y|^{-1-sp} |y|^β dy )^{q/p} |x|^α dx
/// over ℝ (whole space) or (0, ∞) (half-space) with graded composite
/// Gauss–Legendre rules in both variables. `grid_size` is roughly the
/// number of nodes per axis; the error is estimated by halving it.
pub fn direct_seminorm_1d<U: LineFunction + ?Sized>(
    u: &U,
    params: &HardyParams,
    grid_size: usize,
    tol: f64,
) -> Result<QuadResult> {
    if params.d != 1 {
        return Err(Error::Unsupported {
            what: "the direct oracle is one-dimensional",
        });
    }
    validate(params).into_result()?;
    let (lo, hi) = u.support();
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Invalid {
            what: "support must be a finite non-empty interval".into(),
        });
    }
    let segments = u.breakpoints().len() + 6;
    let levels_for = |n: usize| (n / (2 * ORACLE_ORDER * segments)).max(2);
    let fine_levels = levels_for(grid_size);
    let coarse_levels = levels_for(grid_size / 2).min(fine_levels - 1).max(1);
    let fine = direct_value(u, params, fine_levels);
    let coarse = direct_value(u, params, coarse_levels);
    let estimate = math::abs(fine - coarse);
    Ok(QuadResult {
        value: fine,
        abs_error_estimate: estimate,
        nodes_used: 2 * fine_levels * ORACLE_ORDER * segments,
        converged: estimate <= tol,
    })
}
