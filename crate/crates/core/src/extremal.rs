//! The truncated power family
//!
//!   uₙ(r) = n^δ - n^{-δ}   for 0 ≤ r ≤ 1/n,
//!           r^{-δ} - n^{-δ} for 1/n < r ≤ n,
//!           0              for r > n,
//!
//! whose Hardy ratios decrease to the sharp constant as n → ∞.

use alloc::vec::Vec;

use crate::constants::{sharp_constant, validate, Domain, HardyParams};
use crate::error::{Error, Result};
use crate::math;
use crate::numerics::{unit_sphere_area, SingularityHint, TanhSinh};
use crate::profile::RadialProfile;
use crate::seminorm::{hardy_ratio, HardyRatioResult};

/// The profile uₙ for fixed δ > 0 and n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalProfile {
    delta: f64,
    n: f64,
    floor: f64,
}

impl ExtremalProfile {
    fn power(&self, r: f64) -> f64 {
        math::powf(r, -self.delta) - self.floor
    }
}

impl RadialProfile for ExtremalProfile {
    fn value(&self, r: f64) -> f64 {
        if r <= 1.0 / self.n {
            self.power(1.0 / self.n)
        } else if r <= self.n {
            self.power(r)
        } else {
            0.0
        }
    }

    fn support_radius(&self) -> f64 {
        self.n
    }

    fn breakpoints(&self) -> Vec<f64> {
        alloc::vec![1.0 / self.n, self.n]
    }

    fn increment(&self, r: f64, h: f64) -> f64 {
        let inside = |x: f64| x > 1.0 / self.n && x <= self.n;
        if inside(r) && inside(r + h) {
            // (r+h)^{-δ} - r^{-δ} = r^{-δ} (exp(-δ ln(1 + h/r)) - 1)
            math::powf(r, -self.delta) * math::expm1(-self.delta * math::ln_1p(h / r))
        } else {
            self.value(r + h) - self.value(r)
        }
    }

    fn lipschitz_bound(&self) -> Option<f64> {
        Some(self.delta * math::powf(self.n, self.delta + 1.0))
    }

    fn constant_near_zero(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalFamily {
    pub delta: f64,
    pub n: u64,
    pub profile: ExtremalProfile,
}

/// Builds uₙ for parameters with δ > 0.
pub fn make_un(params: &HardyParams, n: u64) -> Result<ExtremalFamily> {
    let report = validate(params).into_result()?;
    if report.delta <= 0.0 {
        return Err(Error::Precondition {
            constraint: "delta > 0 (map the parameters with dual_params first)".into(),
        });
    }
    if n < 2 {
        return Err(Error::Domain {
            what: "the extremal family needs n >= 2",
            value: n as f64,
        });
    }
    let nf = n as f64;
    let delta = report.delta;
    Ok(ExtremalFamily {
        delta,
        n,
        profile: ExtremalProfile {
            delta,
            n: nf,
            floor: math::powf(nf, -delta),
        },
    })
}

fn binomial(q: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (q - i) as f64 / (i + 1) as f64)
}

/// ω_{d-1} [ (1 - n^{-2δ})^q/(qδ) + ∫_{1/n²}^1 (1 - t^δ)^q dt/t ], the
/// weighted Lq norm of uₙ (weight 1 on the half-line).
pub fn rhs_norm_closed_form(params: &HardyParams, n: u64) -> Result<f64> {
    let family = make_un(params, n)?;
    let (q, delta) = (params.q, family.delta);
    let nf = n as f64;
    let ln_n = math::ln(nf);
    let weight = match params.domain {
        Domain::WholeSpace => unit_sphere_area(params.d)?,
        Domain::HalfSpace => 1.0,
    };
    let first = math::powf(-math::expm1(-2.0 * delta * ln_n), q) / (q * delta);
    let integer_q = q == math::round(q) && q <= 4.0;
    let log_part = if integer_q {
        let qi = q as u32;
        let mut sum = 2.0 * ln_n;
        for k in 1..=qi {
            let kd = k as f64 * delta;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binomial(qi, k) * (-math::expm1(-2.0 * kd * ln_n)) / kd;
        }
        sum
    } else {
        // t = e^{-v}: ∫₀^{2 ln n} (1 - e^{-δv})^q dv
        let hint = SingularityHint::new(q.min(0.0), 0.0)?;
        let r = TanhSinh::new(0.0)
            .with_rel_tol(1e-15)
            .integrate(0.0, 2.0 * ln_n, hint, |node| {
                math::powf(-math::expm1(-delta * node.x), q) - 1.0
            })?;
        2.0 * ln_n + r.value
    };
    Ok(weight * (first + log_part))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RatioEntry {
    pub n: u64,
    pub ratio: f64,
    pub margin: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RatioSeries {
    pub entries: Vec<RatioEntry>,
    /// (c0, c1) in ratio(n) ≈ c0 + c1/ln n.
    pub fitted_model: (f64, f64),
    pub limit_estimate: f64,
    pub constant: f64,
    /// Ratios are nonincreasing in n.
    pub monotone: bool,
    /// Every margin is at least -1e-6·constant.
    pub margins_nonnegative: bool,
    /// The parameters were mapped by the inversion because δ < 0.
    pub inverted: bool,
}

/// Relative slack allowed on margins.
pub const MARGIN_SLACK: f64 = 1e-6;

/// Inversion x ↦ x/|x|² on the exponents, with d_eff in place of d so that
/// it also covers the half-line.
fn inverted(params: &HardyParams) -> HardyParams {
    let d = params.d_eff();
    let (p, q, s) = (params.p, params.q, params.s);
    HardyParams {
        alpha: q * d / p + s * q - 2.0 * d - params.alpha,
        beta: s * p - d - params.beta,
        ..*params
    }
}

/// Least-squares fit of y ≈ c0 + c1 x.
fn fit_line(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Degenerate {
            what: "fit abscissae coincide",
        });
    }
    let c1 = sxy / sxx;
    Ok((my - c1 * mx, c1))
}

/// Hardy ratios of uₙ over `n_list` with a fit ratio ≈ c0 + c1/ln n.
pub fn ratio_sequence(params: &HardyParams, n_list: &[u64], tol: f64) -> Result<RatioSeries> {
    if n_list.len() < 3 {
        return Err(Error::Invalid {
            what: "the fit needs at least three values of n".into(),
        });
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) || n_list[0] < 2 {
        return Err(Error::Invalid {
            what: "n values must be increasing and at least 2".into(),
        });
    }
    let report = validate(params).into_result()?;
    let inverted_params = report.delta < 0.0;
    let work = if inverted_params { inverted(params) } else { *params };
    let constant = sharp_constant(params, tol)?.value;
    let mut entries = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let family = make_un(&work, n)?;
        let HardyRatioResult {
            lhs_seminorm,
            rhs_norm,
            ratio,
            ..
        } = hardy_ratio(&family.profile, &work, tol)?;
        entries.push(RatioEntry {
            n,
            ratio,
            margin: ratio - constant,
            lhs: lhs_seminorm.value,
            rhs: rhs_norm.value,
        });
    }
    let points: Vec<(f64, f64)> = entries
        .iter()
        .map(|e| (1.0 / math::ln(e.n as f64), e.ratio))
        .collect();
    let (c0, c1) = fit_line(&points)?;
    Ok(RatioSeries {
        monotone: entries.windows(2).all(|w| w[1].ratio <= w[0].ratio),
        margins_nonnegative: entries.iter().all(|e| e.margin >= -MARGIN_SLACK * constant),
        entries,
        fitted_model: (c0, c1),
        limit_estimate: c0,
        constant,
        inverted: inverted_params,
    })
}
