//! Parameter validation and the sharp constants.
//!
//! Whole space:
//!   𝒞 = ( ∫₀¹ t^{sp-1} (t^{-(p/q-1)d-pα/q} + t^{-β}) |1 - t^δ|^p Φ(t) dt )^{q/p},
//!   δ = (d + α + qβ/p - sq)/q.
//!
//! Half-space ℝ^d₊:
//!   ( 𝒟(d,s,p) ∫₀¹ t^{sp-1} (t^{-β} + t^{1-p/q-pα/q}) |1 - t^{δ₁}|^p (1-t)^{-1-sp} dt )^{q/p},
//!   δ₁ = (1 + α + qβ/p - sq)/q,  𝒟(d,s,p) = π^{(d-1)/2} Γ((1+sp)/2)/Γ((d+sp)/2).
//!
//! Both integrands are evaluated in the factored form
//! t^{a + p·min(δ,0)} · ((1 - t^{|δ|})/(1-t))^p · (1-t)^{p-1-sp} · Φ(t)(1-t)^{1+sp},
//! which is free of cancellation at both ends.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::error::{Error, Result};
use crate::kernel::{Kernel, KernelSpec, PhiMethod};
use crate::math;
use crate::numerics::{adaptive_gauss_kronrod, ln_gamma, QuadResult, SingularityHint, TanhSinh};

/// Where the inequality is posed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Domain {
    #[cfg_attr(feature = "serde", serde(rename = "whole"))]
    WholeSpace,
    #[cfg_attr(feature = "serde", serde(rename = "half"))]
    HalfSpace,
}

impl Domain {
    pub fn as_str(&self) -> &'static str {
        match self {
            Domain::WholeSpace => "whole",
            Domain::HalfSpace => "half",
        }
    }
}

/// The parameter tuple (d, s, p, q, α, β) and the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HardyParams {
    pub d: u32,
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    pub domain: Domain,
}

impl HardyParams {
    pub fn whole(d: u32, s: f64, p: f64, q: f64, alpha: f64, beta: f64) -> Self {
        Self {
            d,
            s,
            p,
            q,
            alpha,
            beta,
            domain: Domain::WholeSpace,
        }
    }

    pub fn half(d: u32, s: f64, p: f64, q: f64, alpha: f64, beta: f64) -> Self {
        Self {
            domain: Domain::HalfSpace,
            ..Self::whole(d, s, p, q, alpha, beta)
        }
    }

    /// d for the whole space, 1 for the half-space.
    pub fn d_eff(&self) -> f64 {
        match self.domain {
            Domain::WholeSpace => self.d as f64,
            Domain::HalfSpace => 1.0,
        }
    }

    pub fn sp(&self) -> f64 {
        self.s * self.p
    }

    /// δ = (d_eff + α + qβ/p - sq)/q.
    pub fn delta(&self) -> f64 {
        (self.d_eff() + self.alpha + self.q * self.beta / self.p - self.s * self.q) / self.q
    }

    /// γ = qδ, the exponent of |x| in the weight of the right-hand side
    /// shifted by d_eff.
    pub fn gamma(&self) -> f64 {
        self.d_eff() + self.alpha + self.q * self.beta / self.p - self.s * self.q
    }

    pub fn kernel_spec(&self) -> KernelSpec {
        KernelSpec {
            d: self.d,
            s: self.s,
            p: self.p,
        }
    }
}

/// Admissible support of test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SupportClass {
    /// C¹ functions with compact support in ℝ^d.
    FullSpace,
    /// Compact support in ℝ^d \ {0}.
    PuncturedAtOrigin,
    /// Compact support in the closed half-space.
    ClosedHalfSpace,
    /// Compact support in the open half-space.
    OpenHalfSpace,
}

/// A failed constraint `lhs <op> rhs`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub constraint: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// Non-fatal flags, currently only `sharpness_unproven` for p < q.
    pub warnings: Vec<String>,
    pub delta: f64,
    pub support_class: SupportClass,
}

impl ValidationReport {
    /// The first violated constraint as a precondition error.
    pub fn into_result(self) -> Result<Self> {
        match self.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::Precondition {
                constraint: v.constraint.clone(),
            }),
        }
    }

    pub fn sharpness_proven(&self) -> bool {
        self.valid && self.warnings.iter().all(|w| w != SHARPNESS_UNPROVEN)
    }
}

pub const SHARPNESS_UNPROVEN: &str = "sharpness_unproven";
pub const DELTA_ZERO: &str = "delta_zero";

/// Checks the assumptions under which the inequality holds with the sharp
/// constant. Never fails; problems are reported.
pub fn validate(params: &HardyParams) -> ValidationReport {
    let mut violations = Vec::new();
    let mut fail = |label: &str, lhs: f64, rhs: f64| {
        violations.push(Violation {
            constraint: label.to_string(),
            lhs,
            rhs,
        })
    };
    let HardyParams {
        d,
        s,
        p,
        q,
        alpha,
        beta,
        domain,
    } = *params;
    let finite = [s, p, q, alpha, beta].iter().all(|x| x.is_finite());
    if !finite {
        fail("finite parameters", f64::NAN, f64::NAN);
    }
    if d < 1 {
        fail("d >= 1", d as f64, 1.0);
    }
    if !(s > 0.0) {
        fail("s > 0", s, 0.0);
    }
    if !(s < 1.0) {
        fail("s < 1", s, 1.0);
    }
    if !(p >= 1.0) {
        fail("p >= 1", p, 1.0);
    }
    if !(q >= 1.0) {
        fail("q >= 1", q, 1.0);
    }

    let d_eff = params.d_eff();
    let sp = s * p;
    let combined = alpha + q * beta / p;
    let alpha_max = s * q - (1.0 - q / p) * d_eff;
    let (upper, lower_alpha, lower_beta, lower_sum) = match domain {
        Domain::WholeSpace => (
            "alpha < sq - (1 - q/p)d",
            "alpha > -d",
            "beta > -d",
            "alpha + q*beta/p > -d",
        ),
        Domain::HalfSpace => (
            "alpha < sq - (1 - q/p)",
            "alpha > -1",
            "beta > -1",
            "alpha + q*beta/p > -1",
        ),
    };
    if !(alpha < alpha_max) {
        fail(upper, alpha, alpha_max);
    }
    if !(beta < sp) {
        fail("beta < sp", beta, sp);
    }
    if !(alpha > -d_eff) {
        fail(lower_alpha, alpha, -d_eff);
    }
    if !(beta > -d_eff) {
        fail(lower_beta, beta, -d_eff);
    }
    if !(combined > -d_eff) {
        fail(lower_sum, combined, -d_eff);
    }
    let delta = params.delta();
    if delta == 0.0 {
        fail(DELTA_ZERO, delta, 0.0);
    }

    let mut warnings = Vec::new();
    if p < q {
        warnings.push(SHARPNESS_UNPROVEN.to_string());
    }
    let support_class = match (domain, delta < 0.0) {
        (Domain::WholeSpace, false) => SupportClass::FullSpace,
        (Domain::WholeSpace, true) => SupportClass::PuncturedAtOrigin,
        (Domain::HalfSpace, false) => SupportClass::ClosedHalfSpace,
        (Domain::HalfSpace, true) => SupportClass::OpenHalfSpace,
    };
    ValidationReport {
        valid: violations.is_empty(),
        violations,
        warnings,
        delta,
        support_class,
    }
}

/// π^{(d-1)/2} Γ((1+sp)/2)/Γ((d+sp)/2); exactly 1 for d = 1.
pub fn halfspace_prefactor(d: u32, s: f64, p: f64) -> Result<f64> {
    KernelSpec::new(d, s, p)?;
    if d == 1 {
        return Ok(1.0);
    }
    let sp = s * p;
    let log = 0.5 * (d as f64 - 1.0) * math::ln(math::PI) + ln_gamma(0.5 * (1.0 + sp))?
        - ln_gamma(0.5 * (d as f64 + sp))?;
    Ok(math::exp(log))
}

/// Image of the weights under the inversion x ↦ x/|x|²:
/// α' = qd/p + sq - 2d - α, β' = sp - d - β. Maps δ to -δ.
pub fn dual_params(params: &HardyParams) -> Result<HardyParams> {
    if params.domain != Domain::WholeSpace {
        return Err(Error::Unsupported {
            what: "the inversion map is defined for the whole space only",
        });
    }
    let d = params.d as f64;
    let (p, q, s) = (params.p, params.q, params.s);
    Ok(HardyParams {
        alpha: q * d / p + s * q - 2.0 * d - params.alpha,
        beta: s * p - d - params.beta,
        ..*params
    })
}

/// The angular factor of the constant's integrand, regularized at t = 1.
#[derive(Debug, Clone, Copy)]
#[allow(clippy::large_enum_variant)]
pub(crate) enum EdgeKernel {
    Whole(Kernel),
    /// (1-t)^{-1-sp}, whose regularization is identically 1.
    Half,
}

impl EdgeKernel {
    pub(crate) fn for_params(params: &HardyParams) -> Result<Self> {
        Ok(match params.domain {
            Domain::WholeSpace => EdgeKernel::Whole(Kernel::new(params.kernel_spec())?),
            Domain::HalfSpace => EdgeKernel::Half,
        })
    }

    #[inline]
    pub(crate) fn regularized(&self, t: f64, c: f64) -> Result<f64> {
        match self {
            EdgeKernel::Whole(k) => k.regularized(t, c),
            EdgeKernel::Half => Ok(1.0),
        }
    }
}

/// Integrand of the constant in factored form, shared by the constant and
/// by the Hardy-ratio diagnostics.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ConstantIntegrand {
    exponents: [f64; 2],
    abs_delta: f64,
    p: f64,
    edge_power: f64,
    kernel: EdgeKernel,
}

impl ConstantIntegrand {
    pub(crate) fn new(params: &HardyParams) -> Result<Self> {
        let (p, q, sp) = (params.p, params.q, params.sp());
        let d_eff = params.d_eff();
        let delta = params.delta();
        let shift = p * delta.min(0.0);
        let first = sp - 1.0 - (p / q - 1.0) * d_eff - p * params.alpha / q;
        let second = sp - 1.0 - params.beta;
        Ok(Self {
            exponents: [first + shift, second + shift],
            abs_delta: math::abs(delta),
            p,
            edge_power: p - 1.0 - sp,
            kernel: EdgeKernel::for_params(params)?,
        })
    }

    pub(crate) fn hint(&self) -> Result<SingularityHint> {
        SingularityHint::new(self.exponents[0].min(self.exponents[1]), self.edge_power)
    }

    pub(crate) fn eval(&self, t: f64, c: f64) -> Result<f64> {
        let ln_t = math::ln_with_complement(t, c);
        let powers = math::pow_from_ln(ln_t, self.exponents[0]) + math::pow_from_ln(ln_t, self.exponents[1]);
        // (1 - t^{|δ|})/(1 - t), bounded on (0, 1).
        let ratio = -math::expm1(self.abs_delta * ln_t) / c;
        Ok(powers
            * math::powf(ratio, self.p)
            * math::powf(c, self.edge_power)
            * self.kernel.regularized(t, c)?)
    }
}

/// Raises an integral to the power e = q/p and propagates its error.
fn raise(result: QuadResult, e: f64) -> QuadResult {
    let value = math::powf(result.value, e);
    let slope = if result.value > 0.0 {
        e * math::powf(result.value, e - 1.0)
    } else {
        f64::INFINITY
    };
    QuadResult {
        value,
        abs_error_estimate: slope * result.abs_error_estimate,
        ..result
    }
}

/// The sharp constant (𝒞 for the whole space, the half-space constant
/// otherwise) to absolute tolerance `tol`.
pub fn sharp_constant(params: &HardyParams, tol: f64) -> Result<QuadResult> {
    validate(params).into_result()?;
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "tolerance must be positive",
            value: tol,
        });
    }
    let integrand = ConstantIntegrand::new(params)?;
    let hint = integrand.hint()?;
    let e = params.q / params.p;
    let prefactor = match params.domain {
        Domain::WholeSpace => 1.0,
        Domain::HalfSpace => halfspace_prefactor(params.d, params.s, params.p)?,
    };

    let integrate = |abs_tol: f64| -> Result<QuadResult> {
        let r = TanhSinh::new(abs_tol)
            .try_integrate(0.0, 1.0, hint, |n| integrand.eval(n.x, n.to_right))?;
        Ok(QuadResult {
            value: prefactor * r.value,
            abs_error_estimate: prefactor * r.abs_error_estimate,
            ..r
        })
    };

    // The integral's tolerance depends on its own size through x ↦ x^{q/p}.
    let mut inner_tol = tol / (e * prefactor);
    let mut result = raise(integrate(inner_tol)?, e);
    if result.converged && result.abs_error_estimate > tol {
        let integral = math::powf(result.value, 1.0 / e);
        inner_tol = 0.5 * tol / (e * math::powf(integral, e - 1.0)) / prefactor;
        result = raise(integrate(inner_tol)?, e);
    }
    result.converged = result.converged && result.abs_error_estimate <= tol;
    if !result.converged {
        return Err(Error::Convergence {
            what: "quadrature of the sharp constant",
        });
    }
    Ok(result)
}

const ORACLE_MAX_PANELS: usize = 4000;

/// The constant for p = q evaluated along an independent path: the kernel
/// through its hypergeometric representation (or closed form) and adaptive
/// Gauss–Kronrod quadrature after power substitutions at both ends.
pub fn pq_equal_constant(params: &HardyParams, tol: f64) -> Result<QuadResult> {
    if params.p != params.q {
        return Err(Error::Precondition {
            constraint: "p = q".to_string(),
        });
    }
    validate(params).into_result()?;
    let (p, sp) = (params.p, params.sp());
    let d_eff = params.d_eff();
    let (alpha, beta) = (params.alpha, params.beta);
    let delta = (d_eff + alpha + beta - sp) / p;
    let kernel = match params.domain {
        Domain::WholeSpace => Some(Kernel::new(params.kernel_spec())?),
        Domain::HalfSpace => None,
    };
    let prefactor = match params.domain {
        Domain::WholeSpace => 1.0,
        Domain::HalfSpace => halfspace_prefactor(params.d, params.s, params.p)?,
    };
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let f = |t: f64, c: f64| -> f64 {
        let ln_t = if t < 0.5 { math::ln(t) } else { math::ln_1p(-c) };
        let weights = math::exp((sp - 1.0 - alpha) * ln_t) + math::exp((sp - 1.0 - beta) * ln_t);
        let difference = math::powf(math::abs(math::expm1(delta * ln_t)), p);
        let angular = match &kernel {
            Some(k) => k.phi_with_complement(t, c, PhiMethod::Hypergeometric),
            None => Ok(math::powf(c, -1.0 - sp)),
        };
        match angular {
            Ok(phi) => weights * difference * phi,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };

    // Near 0 the integrand behaves like t^{e0}, near 1 like (1-t)^{e1}.
    let e0 = (sp - 1.0 - alpha).min(sp - 1.0 - beta) + p * delta.min(0.0);
    let e1 = p - 1.0 - sp;
    let k0 = (2.0 / (1.0 + e0)).max(1.0);
    let k1 = (2.0 / (1.0 + e1)).max(1.0);
    // t = u^{k0}/2 on the left half, 1 - t = v^{k1}/2 on the right half.
    let left = adaptive_gauss_kronrod(
        |u| {
            if u <= 0.0 {
                return 0.0;
            }
            let ln_u = math::ln(u);
            let t = 0.5 * math::exp(k0 * ln_u);
            let jac = 0.5 * k0 * math::exp((k0 - 1.0) * ln_u);
            f(t, 1.0 - t) * jac
        },
        0.0,
        1.0,
        0.5 * tol / prefactor,
        ORACLE_MAX_PANELS,
    );
    if let Some(err) = failure.borrow_mut().take() {
        return Err(err);
    }
    let left = left?;
    let right = adaptive_gauss_kronrod(
        |v| {
            if v <= 0.0 {
                return 0.0;
            }
            let ln_v = math::ln(v);
            let c = 0.5 * math::exp(k1 * ln_v);
            let jac = 0.5 * k1 * math::exp((k1 - 1.0) * ln_v);
            f(1.0 - c, c) * jac
        },
        0.0,
        1.0,
        0.5 * tol / prefactor,
        ORACLE_MAX_PANELS,
    );
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let total = left.combine(right?);
    let result = QuadResult {
        value: prefactor * total.value,
        abs_error_estimate: prefactor * total.abs_error_estimate,
        ..total
    };
    if !result.converged {
        return Err(Error::Convergence {
            what: "adaptive quadrature of the p = q constant",
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn validation_examples() {
        let r = validate(&HardyParams::whole(1, 0.5, 2.0, 2.0, 0.0, 0.0));
        assert!(!r.valid);
        assert_eq!(r.delta, 0.0);
        assert_eq!(r.violations[0].constraint, DELTA_ZERO);

        let r = validate(&HardyParams::whole(2, 0.5, 2.0, 2.0, 0.0, 0.0));
        assert!(r.valid);
        assert_eq!(r.delta, 0.5);
        assert_eq!(r.support_class, SupportClass::FullSpace);

        let r = validate(&HardyParams::whole(1, 0.5, 2.0, 2.0, 0.0, 1.5));
        assert!(!r.valid);
        assert!(r.violations.iter().any(|v| v.constraint == "beta < sp"));
    }

    #[test]
    fn support_classes_and_warnings() {
        let r = validate(&HardyParams::whole(1, 0.9, 2.0, 2.0, 0.0, 0.0));
        assert_eq!(r.support_class, SupportClass::PuncturedAtOrigin);
        let r = validate(&HardyParams::half(3, 0.9, 2.0, 2.0, 0.0, 0.0));
        assert_eq!(r.support_class, SupportClass::OpenHalfSpace);
        let r = validate(&HardyParams::half(3, 0.5, 2.0, 2.0, 0.5, 0.0));
        assert_eq!(r.support_class, SupportClass::ClosedHalfSpace);
        let r = validate(&HardyParams::whole(2, 0.5, 2.0, 3.0, 0.0, 0.0));
        assert!(r.valid);
        assert!(!r.sharpness_proven());
        assert_eq!(r.warnings, [SHARPNESS_UNPROVEN]);
    }

    #[test]
    fn basic_parameter_errors() {
        let r = validate(&HardyParams::whole(0, 1.5, 0.5, 0.5, 0.0, 0.0));
        let labels: Vec<_> = r.violations.iter().map(|v| v.constraint.as_str()).collect();
        for l in ["d >= 1", "s < 1", "p >= 1", "q >= 1"] {
            assert!(labels.contains(&l), "{labels:?}");
        }
        let r = validate(&HardyParams::whole(1, 0.5, 2.0, 2.0, f64::NAN, 0.0));
        assert!(!r.valid);
    }

    #[test]
    fn prefactor_examples() {
        assert_eq!(halfspace_prefactor(1, 0.3, 1.7).unwrap(), 1.0);
        assert!(rel(halfspace_prefactor(2, 0.5, 2.0).unwrap(), 2.0) < 1e-14);
        assert!(rel(halfspace_prefactor(3, 0.5, 2.0).unwrap(), math::PI) < 1e-14);
    }

    #[test]
    fn dual_examples() {
        let dual = dual_params(&HardyParams::whole(1, 0.5, 2.0, 2.0, 0.0, 0.0)).unwrap();
        assert_eq!((dual.alpha, dual.beta), (0.0, 0.0));
        let dual = dual_params(&HardyParams::whole(1, 0.9, 2.0, 2.0, 0.0, 0.0)).unwrap();
        assert!((dual.alpha - 0.8).abs() < 1e-15 && (dual.beta - 0.8).abs() < 1e-15);
        assert!(dual_params(&HardyParams::half(1, 0.5, 2.0, 2.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn constant_reference_values() {
        // mpmath quad at 30 digits.
        let c = sharp_constant(&HardyParams::whole(2, 0.5, 2.0, 2.0, 0.0, 0.0), 1e-10).unwrap();
        assert!((c.value - 2.871_080_044_184_52).abs() < 1e-9, "{c:?}");
        let c = sharp_constant(&HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5), 1e-12).unwrap();
        assert!((c.value - math::PI).abs() < 1e-11, "{c:?}");
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let e = sharp_constant(&HardyParams::whole(1, 0.5, 2.0, 2.0, 0.0, 1.5), 1e-10).unwrap_err();
        assert_eq!(
            e,
            Error::Precondition {
                constraint: "beta < sp".to_string()
            }
        );
        assert!(pq_equal_constant(&HardyParams::whole(2, 0.5, 3.0, 2.0, 0.0, 0.0), 1e-10).is_err());
    }

    #[test]
    fn oracle_agrees_on_examples() {
        for params in [
            HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5),
            HardyParams::whole(2, 0.25, 3.0, 3.0, 0.0, 0.0),
            HardyParams::half(1, 0.4, 2.0, 2.0, 0.2, -0.1),
        ] {
            let a = sharp_constant(&params, 1e-11).unwrap().value;
            let b = pq_equal_constant(&params, 1e-11).unwrap().value;
            assert!(rel(a, b) < 1e-9, "{params:?}: {a} vs {b}");
        }
    }
}
