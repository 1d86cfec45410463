//! The angular kernel
//!
//! Φ(t) = ∫_{S^{d-1}} |e₁ - tσ|^{-d-sp} dσ,  0 ≤ t < 1,
//!
//! which equals (1-t)^{-1-sp} + (1+t)^{-1-sp} for d = 1 and, for d ≥ 2,
//! ω_{d-2} ∫_{-1}^{1} (1-r²)^{(d-3)/2} (1-2tr+t²)^{-(d+sp)/2} dr
//! = ω_{d-2} B((d-1)/2, 1/2) ₂F₁((d+sp)/2, (2+sp)/2; d/2; t²).
//!
//! Φ blows up like (1-t)^{-1-sp} at t = 1. Integrands use the regularized
//! kernel Φ(t)(1-t)^{1+sp}, which by Euler's transformation equals
//! ω_{d-1} (1+t)^{-1-sp} ₂F₁(-sp/2, (d-2-sp)/2; d/2; t²) and stays bounded.

use crate::error::{Error, Result};
use crate::math;
use crate::numerics::{beta, gamma, unit_sphere_area, Gauss2F1, SingularityHint, TanhSinh};

/// Parameters (d, s, p) of the kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelSpec {
    pub d: u32,
    pub s: f64,
    pub p: f64,
}

impl KernelSpec {
    pub fn new(d: u32, s: f64, p: f64) -> Result<Self> {
        let spec = Self { d, s, p };
        spec.check()?;
        Ok(spec)
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.d < 1 {
            return Err(Error::Domain {
                what: "dimension d must be at least 1",
                value: self.d as f64,
            });
        }
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(Error::Domain {
                what: "smoothness s must lie in (0, 1)",
                value: self.s,
            });
        }
        if !(self.p >= 1.0) || !self.p.is_finite() {
            return Err(Error::Domain {
                what: "integrability p must be finite and at least 1",
                value: self.p,
            });
        }
        Ok(())
    }

    /// The product s·p.
    pub fn sp(&self) -> f64 {
        self.s * self.p
    }
}

/// Evaluation route for Φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum PhiMethod {
    /// Quadrature of the one-dimensional angular integral.
    Direct,
    /// The ₂F₁ representation.
    Hypergeometric,
    /// Hypergeometric for t ≤ 0.9, direct above.
    #[default]
    Auto,
}

const AUTO_CROSSOVER: f64 = 0.9;
const DIRECT_REL_TOL: f64 = 1e-13;

/// A kernel with its parameter-dependent constants prepared.
#[derive(Debug, Clone, Copy)]
pub struct Kernel {
    spec: KernelSpec,
    sp: f64,
    /// ω_{d-2} B((d-1)/2, 1/2), which equals ω_{d-1}.
    prefactor: f64,
    hypergeometric: Option<Gauss2F1>,
    regular: Option<Gauss2F1>,
}

impl Kernel {
    pub fn new(spec: KernelSpec) -> Result<Self> {
        spec.check()?;
        let sp = spec.sp();
        if spec.d == 1 {
            return Ok(Self {
                spec,
                sp,
                prefactor: 2.0,
                hypergeometric: None,
                regular: None,
            });
        }
        let d = spec.d as f64;
        let prefactor = unit_sphere_area(spec.d - 1)? * beta(0.5 * (d - 1.0), 0.5)?;
        Ok(Self {
            spec,
            sp,
            prefactor,
            hypergeometric: Some(Gauss2F1::new(0.5 * (d + sp), 0.5 * (2.0 + sp), 0.5 * d)?),
            regular: Some(Gauss2F1::new(-0.5 * sp, 0.5 * (d - 2.0 - sp), 0.5 * d)?),
        })
    }

    pub fn spec(&self) -> KernelSpec {
        self.spec
    }

    fn check_t(t: f64) -> Result<()> {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::Domain {
                what: "phi requires 0 <= t < 1",
                value: t,
            });
        }
        Ok(())
    }

    /// Φ(t) for 0 ≤ t < 1.
    pub fn phi(&self, t: f64, method: PhiMethod) -> Result<f64> {
        Self::check_t(t)?;
        self.phi_with_complement(t, 1.0 - t, method)
    }

    /// Φ(t) with `c = 1 - t` supplied by the caller.
    pub fn phi_with_complement(&self, t: f64, c: f64, method: PhiMethod) -> Result<f64> {
        if !(t >= 0.0 && c > 0.0) {
            return Err(Error::Domain {
                what: "phi requires 0 <= t < 1",
                value: t,
            });
        }
        if self.spec.d == 1 {
            return Ok(math::powf(c, -1.0 - self.sp) + math::powf(1.0 + t, -1.0 - self.sp));
        }
        let method = match method {
            PhiMethod::Auto if t <= AUTO_CROSSOVER => PhiMethod::Hypergeometric,
            PhiMethod::Auto => PhiMethod::Direct,
            m => m,
        };
        match method {
            PhiMethod::Hypergeometric => {
                let f = self.hypergeometric.expect("prepared for d >= 2");
                Ok(self.prefactor * f.eval_complement(t * t, c * (1.0 + t))?)
            }
            _ => self.phi_direct(t, c),
        }
    }

    fn phi_direct(&self, t: f64, c: f64) -> Result<f64> {
        let d = self.spec.d as f64;
        let angular = 0.5 * (d - 3.0);
        let power = -0.5 * (d + self.sp);
        let hint = SingularityHint::new(angular, angular)?;
        let rule = TanhSinh::new(0.0).with_rel_tol(DIRECT_REL_TOL);
        // With r = cos θ: 1 - 2tr + t² = (1-t)² + 2t(1-r) and 1 - r² = (1+r)(1-r).
        let r = rule.integrate(-1.0, 1.0, hint, |n| {
            let base = c * c + 2.0 * t * n.to_right;
            let weight = if angular == 0.0 {
                1.0
            } else {
                math::powf(n.from_left * n.to_right, angular)
            };
            weight * math::powf(base, power)
        })?;
        if !r.converged {
            return Err(Error::Convergence {
                what: "direct angular integral of phi",
            });
        }
        Ok(unit_sphere_area(self.spec.d - 1)? * r.value)
    }

    /// Φ(t)(1-t)^{1+sp} with `c = 1 - t` supplied by the caller.
    pub fn regularized(&self, t: f64, c: f64) -> Result<f64> {
        let sp = self.sp;
        if self.spec.d == 1 {
            return Ok(1.0 + math::powf(c / (1.0 + t), 1.0 + sp));
        }
        let g = self.regular.expect("prepared for d >= 2");
        Ok(self.prefactor * math::powf(1.0 + t, -1.0 - sp) * g.eval_complement(t * t, c * (1.0 + t))?)
    }

    /// Φ(t) computed as the regularized kernel times (1-t)^{-1-sp}.
    pub fn phi_from_regularized(&self, t: f64, c: f64) -> Result<f64> {
        Ok(self.regularized(t, c)? * math::powf(c, -1.0 - self.sp))
    }

    /// The exact limit of Φ(t)(1-t)^{1+sp} as t → 1.
    pub fn edge_limit(&self) -> f64 {
        if self.spec.d == 1 {
            return 1.0;
        }
        let d = self.spec.d as f64;
        let sp = self.sp;
        self.prefactor * math::powf(2.0, -1.0 - sp) * gamma(0.5 * d) * gamma(1.0 + sp)
            / (gamma(0.5 * (d + sp)) * gamma(1.0 + 0.5 * sp))
    }
}

/// Φ(t) for 0 ≤ t < 1.
pub fn phi(spec: KernelSpec, t: f64, method: PhiMethod) -> Result<f64> {
    Kernel::new(spec)?.phi(t, method)
}

/// Φ on (0, ∞) \ {1}, extended through Φ(1/t) = t^{d+sp} Φ(t).
pub fn phi_extended(spec: KernelSpec, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain {
            what: "phi_extended requires a finite t > 0",
            value: t,
        });
    }
    if t == 1.0 {
        return Err(Error::Domain {
            what: "phi has a pole at t = 1",
            value: t,
        });
    }
    let kernel = Kernel::new(spec)?;
    if t < 1.0 {
        return kernel.phi(t, PhiMethod::Auto);
    }
    let inv = 1.0 / t;
    Ok(kernel.phi(inv, PhiMethod::Auto)? * math::powf(inv, spec.d as f64 + spec.sp()))
}

const EDGE_FIRST_LEVEL: i32 = 4;
const EDGE_LEVELS: usize = 12;

/// lim_{t→1⁻} Φ(t)(1-t)^{1+sp}, estimated by Richardson extrapolation of
/// samples at t = 1 - 2^{-k}, k = 4, …, 15.
pub fn edge_coefficient(spec: KernelSpec) -> Result<f64> {
    let kernel = Kernel::new(spec)?;
    let mut table = [[0.0f64; EDGE_LEVELS]; EDGE_LEVELS];
    for (i, row) in table.iter_mut().enumerate() {
        let c = math::powi(0.5, EDGE_FIRST_LEVEL + i as i32);
        row[0] = kernel.regularized(1.0 - c, c)?;
    }
    // With h = 1 - t the samples expand in h^j and h^{1+sp+j}, j ≥ 0 (plus
    // h^m ln h when 1 + sp = m is an integer, handled by eliminating the
    // repeated exponent twice). Each level halves h.
    let sp = spec.sp();
    let mut exponents = [0.0f64; 2 * EDGE_LEVELS];
    for j in 0..EDGE_LEVELS {
        exponents[2 * j] = (j + 1) as f64;
        exponents[2 * j + 1] = 1.0 + sp + j as f64;
    }
    exponents.sort_by(|a, b| a.total_cmp(b));
    for j in 1..EDGE_LEVELS {
        let factor = math::powf(2.0, exponents[j - 1]) - 1.0;
        for i in j..EDGE_LEVELS {
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor;
        }
    }
    let mut best = table[EDGE_LEVELS - 1][0];
    let mut best_diff = f64::INFINITY;
    for j in 1..EDGE_LEVELS {
        let diff = math::abs(table[j][j] - table[j - 1][j - 1]);
        if diff < best_diff {
            best_diff = diff;
            best = table[j][j];
        }
    }
    if !(best > 0.0) || best_diff > 1e-8 * math::abs(best) {
        return Err(Error::Convergence {
            what: "Richardson extrapolation of the edge coefficient",
        });
    }
    Ok(best)
}
