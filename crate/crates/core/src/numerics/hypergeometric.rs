//! Gauss hypergeometric function ₂F₁(a, b; c; z) on 0 ≤ z < 1.
//!
//! For z ≤ 0.7 the defining series is summed directly. Closer to 1 the
//! argument is mapped to w = 1 - z with the linear connection formula. When
//! c - a - b is an integer the two-term formula degenerates and the
//! logarithmic form is used instead (after an Euler transformation if
//! c - a - b > 0, so only the case c = a + b - m, m ≥ 0, is coded).

use super::special::{digamma, gamma, rgamma};
use crate::error::{Error, Result};
use crate::math;

const DIRECT_LIMIT: f64 = 0.7;
const MAX_TERMS: usize = 1 << 14;
const INTEGER_SLACK: f64 = 1e-12;

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && math::floor(x) == x
}

/// Σ (a)_k (b)_k / ((c)_k k!) z^k.
fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if math::abs(term) <= f64::EPSILON * 0.25 * math::abs(sum) && math::abs(ratio) < 1.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "hypergeometric series exceeded its term budget",
    })
}

#[derive(Debug, Clone, Copy)]
enum Plan {
    /// a or b is a non-positive integer: the series is a polynomial.
    Polynomial,
    /// c - a - b = s is not an integer.
    TwoTerm { s: f64, first: f64, second: f64 },
    /// c = a' + b' - m after an optional Euler transformation; the result is
    /// multiplied by w^{euler_power}.
    Logarithmic {
        a: f64,
        b: f64,
        m: u32,
        euler_power: u32,
        gamma_c: f64,
        finite_coef: f64,
        log_coef: f64,
        psi_a: f64,
        psi_b: f64,
        psi_m1: f64,
    },
}

/// ₂F₁ with fixed parameters, prepared for repeated evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Gauss2F1 {
    a: f64,
    b: f64,
    c: f64,
    plan: Plan,
}

impl Gauss2F1 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Domain {
                what: "hypergeometric parameters must be finite",
                value: if a.is_finite() { if b.is_finite() { c } else { b } } else { a },
            });
        }
        if is_non_positive_integer(c) {
            return Err(Error::Domain {
                what: "c must not be a non-positive integer",
                value: c,
            });
        }
        let plan = if is_non_positive_integer(a) || is_non_positive_integer(b) {
            Plan::Polynomial
        } else {
            let s = c - a - b;
            let nearest = math::round(s);
            if math::abs(s - nearest) <= INTEGER_SLACK * nearest.abs().max(1.0) {
                Self::logarithmic_plan(a, b, c, nearest)
            } else {
                let gc = gamma(c);
                Plan::TwoTerm {
                    s,
                    first: gc * gamma(s) * rgamma(c - a) * rgamma(c - b),
                    second: gc * gamma(-s) * rgamma(a) * rgamma(b),
                }
            }
        };
        Ok(Self { a, b, c, plan })
    }

    fn logarithmic_plan(a: f64, b: f64, c: f64, s: f64) -> Plan {
        // F(a,b;c;z) = w^{s} F(c-a, c-b; c; z) when s > 0.
        let (a, b, m, euler_power) = if s > 0.0 {
            (c - a, c - b, s as u32, s as u32)
        } else {
            (a, b, (-s) as u32, 0)
        };
        let mf = m as f64;
        let finite_coef = if m > 0 {
            gamma(mf) * rgamma(a) * rgamma(b)
        } else {
            0.0
        };
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        Plan::Logarithmic {
            a,
            b,
            m,
            euler_power,
            gamma_c: gamma(c),
            finite_coef,
            log_coef: sign * rgamma(a - mf) * rgamma(b - mf),
            psi_a: digamma(a),
            psi_b: digamma(b),
            psi_m1: digamma(mf + 1.0),
        }
    }

    /// Evaluates at `z` with `w = 1 - z` supplied separately so that
    /// arguments within a few ulps of 1 keep their accuracy.
    pub fn eval_complement(&self, z: f64, w: f64) -> Result<f64> {
        if !(z >= 0.0 && w > 0.0) {
            return Err(Error::Domain {
                what: "hypergeometric argument must lie in [0, 1)",
                value: z,
            });
        }
        if z <= DIRECT_LIMIT {
            return series(self.a, self.b, self.c, z);
        }
        match self.plan {
            Plan::Polynomial => series(self.a, self.b, self.c, z),
            Plan::TwoTerm { s, first, second } => {
                let mut value = 0.0;
                if first != 0.0 {
                    value += first * series(self.a, self.b, 1.0 - s, w)?;
                }
                if second != 0.0 {
                    value += second
                        * math::powf(w, s)
                        * series(self.c - self.a, self.c - self.b, 1.0 + s, w)?;
                }
                Ok(value)
            }
            Plan::Logarithmic { .. } => self.eval_logarithmic(w),
        }
    }

    /// Evaluates at `z` in [0, 1).
    pub fn eval(&self, z: f64) -> Result<f64> {
        self.eval_complement(z, 1.0 - z)
    }

    fn eval_logarithmic(&self, w: f64) -> Result<f64> {
        let Plan::Logarithmic {
            a,
            b,
            m,
            euler_power,
            gamma_c,
            finite_coef,
            log_coef,
            psi_a,
            psi_b,
            psi_m1,
        } = self.plan
        else {
            unreachable!()
        };
        let mf = m as f64;
        // w^{euler_power - m} Σ_{k<m} (a-m)_k (b-m)_k / (k! (1-m)_k) w^k
        let mut finite = 0.0;
        if m > 0 && finite_coef != 0.0 {
            let mut term = 1.0;
            for k in 0..m {
                let kf = k as f64;
                finite += term * math::powi(w, k as i32 + euler_power as i32 - m as i32);
                term *= (a - mf + kf) * (b - mf + kf) / ((kf + 1.0) * (1.0 - mf + kf));
            }
            finite *= finite_coef;
        }
        let mut logarithmic = 0.0;
        if log_coef != 0.0 {
            let ln_w = math::ln(w);
            // coefficient (a)_k (b)_k / (k! (k+m)!) w^k, starting at 1/m!
            let mut coef = rgamma(mf + 1.0);
            let (mut psi_k1, mut psi_km1) = (digamma(1.0), psi_m1);
            let (mut psi_ak, mut psi_bk) = (psi_a, psi_b);
            let mut sum = 0.0;
            let mut converged = false;
            for k in 0..MAX_TERMS {
                let kf = k as f64;
                let term = coef * (ln_w - psi_k1 - psi_km1 + psi_ak + psi_bk);
                sum += term;
                let ratio = (a + kf) * (b + kf) / ((kf + 1.0) * (kf + mf + 1.0)) * w;
                if coef == 0.0
                    || (math::abs(term) <= f64::EPSILON * 0.25 * math::abs(sum)
                        && math::abs(ratio) < 1.0
                        && k > 0)
                {
                    converged = true;
                    break;
                }
                coef *= ratio;
                psi_k1 += 1.0 / (kf + 1.0);
                psi_km1 += 1.0 / (kf + mf + 1.0);
                psi_ak += 1.0 / (a + kf);
                psi_bk += 1.0 / (b + kf);
            }
            if !converged {
                return Err(Error::Convergence {
                    what: "logarithmic connection series exceeded its term budget",
                });
            }
            logarithmic = log_coef * sum * math::powi(w, euler_power as i32);
        }
        Ok(gamma_c * (finite - logarithmic))
    }
}

/// ₂F₁(a, b; c; z) for 0 ≤ z < 1.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain {
            what: "hypergeometric argument must lie in [0, 1)",
            value: z,
        });
    }
    Gauss2F1::new(a, b, c)?.eval_complement(z, 1.0 - z)
}

/// ₂F₁(a, b; c; z) with `w = 1 - z` passed explicitly.
pub fn gauss_2f1_complement(a: f64, b: f64, c: f64, z: f64, w: f64) -> Result<f64> {
    Gauss2F1::new(a, b, c)?.eval_complement(z, w)
}
