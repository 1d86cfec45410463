//! Gauss–Legendre rules and adaptive Gauss–Kronrod bisection.
//!
//! These are independent of the tanh-sinh rule and serve as the second code
//! path behind cross-checks.

use alloc::vec::Vec;

use super::quadrature::QuadResult;
use crate::error::{Error, Result};
use crate::math;

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1], nodes in
/// increasing order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = math::cos(math::PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if math::abs(dx) <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { at: x })
        }
    };
    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: math::abs((kronrod - gauss) * half),
    })
}

/// Adaptive 15-point Gauss–Kronrod integration of `f` over [a, b]: the panel
/// with the largest error estimate is bisected until the summed estimate
/// drops below `tol` or `max_panels` panels are in use.
pub fn adaptive_gauss_kronrod<F>(mut f: F, a: f64, b: f64, tol: f64, max_panels: usize) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) || !(a < b) {
        return Err(Error::Domain {
            what: "integration bounds must be finite with a < b",
            value: if a.is_finite() { b } else { a },
        });
    }
    let mut panels = alloc::vec![kronrod_panel(&mut f, a, b)?];
    let mut evaluations = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let floor = 50.0 * f64::EPSILON * math::abs(value);
        if error <= tol.max(floor) || panels.len() >= max_panels.max(1) {
            return Ok(QuadResult {
                value,
                abs_error_estimate: error.max(floor),
                nodes_used: evaluations,
                converged: error <= tol.max(floor),
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(p.a < mid && mid < p.b) {
            return Ok(QuadResult {
                value,
                abs_error_estimate: error,
                nodes_used: evaluations,
                converged: false,
            });
        }
        panels.push(kronrod_panel(&mut f, p.a, mid)?);
        panels.push(kronrod_panel(&mut f, mid, p.b)?);
        evaluations += 30;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rules_integrate_polynomials_exactly() {
        for n in 1..=20 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14, "n = {n}");
            for k in 0..(2 * n) {
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!((approx - exact).abs() < 1e-13, "n = {n}, k = {k}");
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn kronrod_smooth_and_peaked() {
        let r = adaptive_gauss_kronrod(|x| x.exp(), 0.0, 1.0, 1e-13, 100).unwrap();
        assert!(r.converged);
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-13);
        let r = adaptive_gauss_kronrod(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10, 1000).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!(r.converged);
        assert!((r.value - exact).abs() < 1e-8);
    }

    #[test]
    fn kronrod_reports_nan() {
        assert!(matches!(
            adaptive_gauss_kronrod(|_| f64::NAN, 0.0, 1.0, 1e-10, 10),
            Err(Error::Evaluation { .. })
        ));
    }
}
