//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are evaluated in full and reported
//! as FAIL; they only stop the run if they start passing unexpectedly.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlhardy_core::numerics::{unit_sphere_area, SingularityHint, TanhSinh};
use tlhardy_core::*;

/// 8b: the norm of uₙ over 2ω ln n is 1 + O(1/ln n); the O(1) term keeps
/// it near 0.93 at n = 10⁶, outside the 5% band.
const EXPECTED_FAILURES: &[&str] = &["8b"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn interior(lo: f64, hi: f64, f: f64) -> f64 {
    lo + f * (hi - lo)
}

const GRID: [f64; 3] = [0.2, 0.5, 0.8];

/// Points of the admissible (α, β) region on a 3 × 3 grid of relative
/// positions; δ ≈ 0 is skipped.
fn admissible_grid(d: u32, s: f64, p: f64, q: f64, domain: Domain) -> Vec<HardyParams> {
    let de = if domain == Domain::HalfSpace { 1.0 } else { d as f64 };
    let mut out = Vec::new();
    for &fb in &GRID {
        let beta = interior(-de, s * p, fb);
        let lo = (-de).max(-de - q * beta / p);
        let hi = s * q - (1.0 - q / p) * de;
        for &fa in &GRID {
            let alpha = interior(lo, hi, fa);
            let params = HardyParams { d, s, p, q, alpha, beta, domain };
            if validate(&params).valid && params.delta().abs() > 1e-3 {
                out.push(params);
            }
        }
    }
    out
}

fn random_whole(rng: &mut ChaCha8Rng, want_negative_delta: bool) -> HardyParams {
    loop {
        let d = rng.gen_range(1..=4u32);
        let s = rng.gen_range(0.15..0.85);
        let p = rng.gen_range(1.2..4.0);
        let q = rng.gen_range(1.2..4.0);
        let de = d as f64;
        let beta = rng.gen_range(-de + 0.1..s * p - 0.1);
        let lo = (-de).max(-de - q * beta / p) + 0.1;
        let hi = s * q - (1.0 - q / p) * de - 0.1;
        if lo >= hi {
            continue;
        }
        let alpha = rng.gen_range(lo..hi);
        let params = HardyParams::whole(d, s, p, q, alpha, beta);
        let delta = params.delta();
        let sign_ok = if want_negative_delta { delta < -0.05 } else { delta.abs() > 0.05 };
        if sign_ok && validate(&params).valid {
            return params;
        }
    }
}

fn c1_kernel_routes() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut failures = 0;
    for d in 2..=6 {
        for s in [0.25, 0.5, 0.75] {
            for p in [1.0, 2.0, 3.5] {
                let kernel = Kernel::new(KernelSpec::new(d, s, p).unwrap()).unwrap();
                for k in 0..100 {
                    let t = k as f64 / 100.0;
                    let direct = kernel.phi(t, PhiMethod::Direct);
                    let hyper = kernel.phi(t, PhiMethod::Hypergeometric);
                    match (direct, hyper) {
                        (Ok(a), Ok(b)) => worst = worst.max(rel(a, b)),
                        _ => failures += 1,
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: "1",
        pass: failures == 0 && worst <= 1e-8 && elapsed < Duration::from_secs(60),
        detail: format!("max rel diff {worst:.2e} (tol 1e-8), {failures} errors, {elapsed:.2?} (limit 60s)"),
    }
}

/// Φ(u) for u > 1 by direct quadrature over the sphere.
fn phi_outside(d: u32, sp: f64, u: f64) -> f64 {
    let angular = 0.5 * (d as f64 - 3.0);
    let power = -0.5 * (d as f64 + sp);
    let hint = SingularityHint::new(angular, angular).unwrap();
    let r = TanhSinh::new(0.0)
        .with_rel_tol(1e-13)
        .integrate(-1.0, 1.0, hint, |n| {
            let base = (u - 1.0) * (u - 1.0) + 2.0 * u * n.to_right;
            (n.from_left * n.to_right).powf(angular) * base.powf(power)
        })
        .unwrap();
    unit_sphere_area(d - 1).unwrap() * r.value
}

fn c2_kernel_symmetry() -> Outcome {
    let mut worst_sym = 0.0f64;
    let mut worst_origin = 0.0f64;
    for d in 2..=6 {
        for s in [0.25, 0.5, 0.75] {
            for p in [1.0, 2.0, 3.5] {
                let spec = KernelSpec::new(d, s, p).unwrap();
                let sp = s * p;
                for t in [0.2, 0.5, 0.8] {
                    let inside = phi(spec, t, PhiMethod::Hypergeometric).unwrap();
                    let expected = t.powf(d as f64 + sp) * inside;
                    worst_sym = worst_sym.max(rel(phi_outside(d, sp, 1.0 / t), expected));
                }
                let origin = phi(spec, 0.0, PhiMethod::Auto).unwrap();
                worst_origin = worst_origin.max(rel(origin, unit_sphere_area(d).unwrap()));
            }
        }
    }
    Outcome {
        id: "2",
        pass: worst_sym <= 1e-9 && worst_origin <= 1e-10,
        detail: format!("symmetry {worst_sym:.2e} (tol 1e-9), Φ(0) {worst_origin:.2e} (tol 1e-10)"),
    }
}

fn c3_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut worst_involution = 0.0f64;
    let mut errors = 0;
    for _ in 0..30 {
        let params = random_whole(&mut rng, true);
        let dual = dual_params(&params).unwrap();
        let back = dual_params(&dual).unwrap();
        worst_involution = worst_involution
            .max((back.alpha - params.alpha).abs())
            .max((back.beta - params.beta).abs());
        match (sharp_constant(&params, 1e-10), sharp_constant(&dual, 1e-10)) {
            (Ok(a), Ok(b)) => worst = worst.max(rel(a.value, b.value)),
            _ => errors += 1,
        }
    }
    Outcome {
        id: "3",
        pass: errors == 0 && worst <= 1e-6 && worst_involution <= 1e-12,
        detail: format!(
            "30 sets, max rel diff {worst:.2e} (tol 1e-6), involution residual {worst_involution:.1e}, {errors} errors"
        ),
    }
}

fn c4_pq_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut errors = 0;
    let mut count = 0;
    while count < 10 {
        let mut params = random_whole(&mut rng, false);
        params.q = params.p;
        if !validate(&params).valid || params.delta().abs() < 0.05 {
            continue;
        }
        count += 1;
        match (sharp_constant(&params, 1e-11), pq_equal_constant(&params, 1e-11)) {
            (Ok(a), Ok(b)) => worst = worst.max(rel(a.value, b.value)),
            _ => errors += 1,
        }
    }
    Outcome {
        id: "4",
        pass: errors == 0 && worst <= 1e-8,
        detail: format!("10 sets, max rel diff {worst:.2e} (tol 1e-8), {errors} errors"),
    }
}

fn c5_prefactor() -> Outcome {
    let sets = [
        (0.5, 2.0, 2.0, 0.5, 0.5),
        (0.3, 2.0, 3.0, 0.0, 0.2),
        (0.7, 3.0, 2.0, -0.2, 0.5),
        (0.5, 1.5, 1.5, 0.3, -0.3),
        (0.25, 4.0, 2.5, 0.1, 0.4),
    ];
    let mut worst = 0.0f64;
    let mut errors = 0;
    for (s, p, q, alpha, beta) in sets {
        let base = HardyParams::half(1, s, p, q, alpha, beta);
        let Ok(c1) = sharp_constant(&base, 1e-11) else {
            errors += 1;
            continue;
        };
        for d in 2..=4 {
            let params = HardyParams { d, ..base };
            let expected = halfspace_prefactor(d, s, p).unwrap().powf(q / p);
            match sharp_constant(&params, 1e-11) {
                Ok(cd) => worst = worst.max(rel(cd.value / c1.value, expected)),
                Err(_) => errors += 1,
            }
        }
    }
    let unit = [(0.5, 2.0), (0.25, 1.0), (0.9, 3.7)]
        .iter()
        .all(|&(s, p)| halfspace_prefactor(1, s, p).unwrap() == 1.0);
    Outcome {
        id: "5",
        pass: errors == 0 && worst <= 1e-8 && unit,
        detail: format!("max rel diff {worst:.2e} (tol 1e-8), prefactor at d=1 exactly 1: {unit}, {errors} errors"),
    }
}

/// A random piecewise-linear profile; vanishes on [0, r₀] when `punctured`.
fn random_profile(rng: &mut ChaCha8Rng, punctured: bool) -> PiecewiseLinear {
    let nodes = rng.gen_range(2..=6usize);
    let mut r = Vec::with_capacity(nodes + 2);
    let mut u = Vec::with_capacity(nodes + 2);
    let mut x = if punctured { rng.gen_range(0.05..1.0) } else { 0.0 };
    r.push(x);
    u.push(if punctured { 0.0 } else { rng.gen_range(-1.0..2.0) });
    for _ in 0..nodes {
        x += rng.gen_range(0.1..1.5);
        r.push(x);
        u.push(rng.gen_range(-1.0..2.0));
    }
    x += rng.gen_range(0.1..1.5);
    r.push(x);
    u.push(0.0);
    PiecewiseLinear::new(r, u).unwrap()
}

fn c6_inequality() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let domains = [
        (1, Domain::WholeSpace),
        (2, Domain::WholeSpace),
        (3, Domain::WholeSpace),
        (1, Domain::HalfSpace),
    ];
    let mut worst = f64::INFINITY;
    let mut errors = Vec::new();
    let mut evaluated = 0;
    for (d, domain) in domains {
        let mut grid = Vec::new();
        for s in [0.25, 0.5, 0.75] {
            grid.extend(admissible_grid(d, s, 2.5, 2.0, domain));
        }
        for k in 0..50 {
            let params = grid[(k * 7) % grid.len()];
            let punctured = validate(&params).delta < 0.0 || rng.gen_bool(0.3);
            let profile = random_profile(&mut rng, punctured);
            match hardy_ratio(&profile, &params, 1e-9) {
                Ok(r) => {
                    worst = worst.min(r.margin / r.constant);
                    evaluated += 1;
                }
                Err(e) => errors.push(format!("{params:?}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    for e in &errors {
        eprintln!("  criterion 6 error: {e}");
    }
    Outcome {
        id: "6",
        pass: errors.is_empty() && worst >= -1e-6 && elapsed < Duration::from_secs(600),
        detail: format!(
            "{evaluated} profiles, min margin/constant {worst:.3e} (floor -1e-6), {} errors, {elapsed:.2?} (limit 600s)",
            errors.len()
        ),
    }
}

fn c7_sharpness() -> Outcome {
    let sets = [
        HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5),
        HardyParams::whole(2, 0.5, 3.0, 2.0, 0.0, 0.0),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for params in sets {
        match ratio_sequence(&params, &[10, 100, 1000, 10000], 1e-10) {
            Ok(series) => {
                let first = series.entries[0].margin;
                let last = series.entries[3].margin;
                let fit = rel(series.limit_estimate, series.constant);
                let ok = series.monotone && series.margins_nonnegative && fit <= 0.1 && last < first / 2.0;
                pass &= ok;
                parts.push(format!(
                    "d={}: monotone {}, margins {:.3}..{:.3}, c0 off by {:.1}%",
                    params.d,
                    series.monotone,
                    first,
                    last,
                    100.0 * fit
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("d={}: {e}", params.d));
            }
        }
    }
    Outcome { id: "7", pass, detail: parts.join("; ") }
}

fn c8a_closed_form() -> Outcome {
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let mut worst = 0.0f64;
    let mut value10 = f64::NAN;
    for n in [2, 10, 1000] {
        let closed = rhs_norm_closed_form(&params, n).unwrap();
        let family = make_un(&params, n).unwrap();
        let quad = lq_weighted_norm(&family.profile, &params, 1e-12).unwrap();
        worst = worst.max(rel(quad.value, closed));
        if n == 10 {
            value10 = closed;
        }
    }
    Outcome {
        id: "8a",
        pass: (value10 - 5.61034).abs() < 5e-6 && worst <= 1e-8,
        detail: format!("value at n=10 {value10:.6} (≈5.61034), max rel diff to quadrature {worst:.2e} (tol 1e-8)"),
    }
}

fn c8b_log_growth() -> Outcome {
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let n = 1_000_000u64;
    let value = rhs_norm_closed_form(&params, n).unwrap();
    let scale = 2.0 * unit_sphere_area(params.d).unwrap() * (n as f64).ln();
    let ratio = value / scale;
    Outcome {
        id: "8b",
        pass: (ratio - 1.0).abs() <= 0.05,
        detail: format!("value/(2ω ln n) at n=10⁶ is {ratio:.4} (band 0.95..1.05)"),
    }
}

fn c9_direct_oracle() -> Outcome {
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let hats = [(2.0, 1.0, 1.0), (1.0, 0.5, 2.0), (3.0, 2.0, 0.5), (1.5, 1.5, 1.0), (4.0, 0.75, 1.0)];
    let mut worst = 0.0f64;
    let mut errors = 0;
    for (center, half_width, height) in hats {
        let hat = PiecewiseLinear::hat(center, half_width, height).unwrap();
        let radial = tl_seminorm(&hat, &params, 1e-10);
        let direct = direct_seminorm_1d(&EvenExtension(&hat), &params, 2048, 1e-6);
        match (radial, direct) {
            (Ok(a), Ok(b)) => worst = worst.max(rel(b.value, a.value)),
            _ => errors += 1,
        }
    }
    Outcome {
        id: "9",
        pass: errors == 0 && worst <= 1e-3,
        detail: format!("5 hats, max rel diff {worst:.2e} (tol 1e-3), {errors} errors"),
    }
}

fn c10_boundary() -> Outcome {
    let bump = Bump::new(2.0, 1.0).unwrap();
    let base = HardyParams::whole(2, 0.5, 2.0, 2.0, 0.0, 0.0);
    let sp = base.sp();
    let mut constants = Vec::new();
    let mut seminorms = Vec::new();
    let mut errors = 0;
    for k in 1..=8 {
        let params = HardyParams { beta: sp - 0.5f64.powi(k), ..base };
        match (sharp_constant(&params, 1e-10), tl_seminorm(&bump, &params, 1e-9)) {
            (Ok(c), Ok(s)) => {
                constants.push(c.value);
                seminorms.push(s.value);
            }
            _ => errors += 1,
        }
    }
    let increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
    let mut interior = 0;
    let mut unconverged = 0;
    for s in [0.25, 0.5, 0.75] {
        for params in admissible_grid(2, s, 2.0, 2.0, Domain::WholeSpace) {
            interior += 1;
            match tl_seminorm(&bump, &params, 1e-9) {
                Ok(r) if r.converged => {}
                _ => unconverged += 1,
            }
        }
    }
    let pass = errors == 0 && increasing(&constants) && increasing(&seminorms) && unconverged == 0;
    Outcome {
        id: "10",
        pass,
        detail: format!(
            "constant {:.3}..{:.1}, bump seminorm {:.3}..{:.1}, {interior} interior points with {unconverged} unconverged, {errors} errors",
            constants.first().copied().unwrap_or(f64::NAN),
            constants.last().copied().unwrap_or(f64::NAN),
            seminorms.first().copied().unwrap_or(f64::NAN),
            seminorms.last().copied().unwrap_or(f64::NAN),
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 11] = [
        c1_kernel_routes,
        c2_kernel_symmetry,
        c3_duality,
        c4_pq_oracle,
        c5_prefactor,
        c6_inequality,
        c7_sharpness,
        c8a_closed_form,
        c8b_log_growth,
        c9_direct_oracle,
        c10_boundary,
    ];
    let mut unexpected = 0;
    for criterion in criteria {
        let start = Instant::now();
        let outcome = criterion();
        let elapsed = start.elapsed();
        let expected_failure = EXPECTED_FAILURES.contains(&outcome.id);
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        let note = match (outcome.pass, expected_failure) {
            (false, true) => " [known unattainable]",
            (true, true) => " [listed as unattainable but passed]",
            _ => "",
        };
        println!(
            "criterion {:>3}: {status} {}{note} [{elapsed:.1?}]",
            outcome.id, outcome.detail
        );
        if outcome.pass == expected_failure {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
