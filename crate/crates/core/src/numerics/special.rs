use crate::error::{Error, Result};
use crate::math::{self, PI};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// Lanczos sum A(x) so that Γ(x) = √(2π) t^{x-1/2} e^{-t} A(x), t = x + g - 1/2.
fn lanczos_sum(x: f64) -> f64 {
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x - 1.0 + i as f64);
    }
    acc
}

/// Stirling series for ln Γ(x), x ≥ 15.
fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (x - 0.5) * math::ln(x) - x + HALF_LN_2PI + series
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x >= 15.0 {
        return ln_gamma_stirling(x);
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos sum away from its poles.
        return ln_gamma_positive(x + 1.0) - math::ln(x);
    }
    let t = x + LANCZOS_G - 0.5;
    HALF_LN_2PI + (x - 0.5) * math::ln(t) - t + math::ln(lanczos_sum(x))
}

/// Natural logarithm of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "ln_gamma requires a finite positive argument",
            value: x,
        });
    }
    Ok(ln_gamma_positive(x))
}

/// sin(πx) with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * math::round(0.5 * x);
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    math::sin(PI * r)
}

pub(crate) fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * math::round(0.5 * x);
    let a = math::abs(r);
    if a == 0.5 {
        return 0.0;
    }
    if a > 0.5 {
        -math::cos(PI * (1.0 - a))
    } else {
        math::cos(PI * a)
    }
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && math::floor(x) == x
}

/// Γ(x) on the real line. Returns NaN at the poles.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_non_positive_integer(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    if x <= 20.0 {
        let t = x + LANCZOS_G - 0.5;
        let half = math::powf(t, 0.5 * (x - 0.5));
        return SQRT_2PI * lanczos_sum(x) * half * (half * math::exp(-t));
    }
    math::exp(ln_gamma_positive(x))
}

/// 1/Γ(x), which is entire: zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_non_positive_integer(x) {
        return 0.0;
    }
    if x > 171.0 {
        return math::exp(-ln_gamma_positive(x));
    }
    1.0 / gamma(x)
}

/// Digamma ψ(x) = Γ'(x)/Γ(x). NaN at the poles.
pub fn digamma(x: f64) -> f64 {
    if x.is_nan() || is_non_positive_integer(x) {
        return f64::NAN;
    }
    if x < 0.0 {
        // reflection
        return digamma(1.0 - x) - PI * cos_pi(x) / sin_pi(x);
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let tail = inv2
        * (1.0 / 12.0
            - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    acc + math::ln(y) - 0.5 / y - tail
}

/// Euler beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b) for a, b > 0.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    for v in [a, b] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain {
                what: "beta requires positive arguments",
                value: v,
            });
        }
    }
    if a + b <= 20.0 && a >= 0.5 && b >= 0.5 {
        return Ok(gamma(a) * gamma(b) / gamma(a + b));
    }
    Ok(math::exp(
        ln_gamma_positive(a) + ln_gamma_positive(b) - ln_gamma_positive(a + b),
    ))
}

/// Surface measure ω_{d-1} = 2π^{d/2}/Γ(d/2) of the unit sphere in ℝ^d.
///
/// Evaluated with the two-step recurrence ω_{d-1} = 2π ω_{d-3}/(d-2), which
/// is exact for the first few dimensions.
pub fn unit_sphere_area(d: u32) -> Result<f64> {
    if d < 1 {
        return Err(Error::Domain {
            what: "unit_sphere_area requires d >= 1",
            value: d as f64,
        });
    }
    let (mut area, mut k) = if d % 2 == 1 { (2.0, 1) } else { (2.0 * PI, 2) };
    while k < d {
        k += 2;
        area *= 2.0 * PI / (k - 2) as f64;
    }
    Ok(area)
}
