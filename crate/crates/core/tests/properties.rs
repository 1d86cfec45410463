use proptest::prelude::*;
use tlhardy_core::numerics::unit_sphere_area;
use tlhardy_core::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// A valid whole-space parameter set from relative positions inside the
/// admissible region, or None near δ = 0.
fn whole_params(d: u32, s: f64, p: f64, q: f64, fa: f64, fb: f64) -> Option<HardyParams> {
    let de = d as f64;
    let beta = -de + fb * (s * p + de);
    let lo = (-de).max(-de - q * beta / p);
    let hi = s * q - (1.0 - q / p) * de;
    let alpha = lo + fa * (hi - lo);
    let params = HardyParams::whole(d, s, p, q, alpha, beta);
    (validate(&params).valid && params.delta().abs() > 0.05).then_some(params)
}

#[test]
fn extremal_profile_matches_its_definition() {
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let u = make_un(&params, 10).unwrap().profile;
    let delta = 0.5f64;
    let top = 10f64.powf(delta) - 10f64.powf(-delta);
    assert!((u.value(0.1) - top).abs() < 1e-14);
    assert!((u.value(0.1 * (1.0 + 1e-12)) - top).abs() < 1e-10);
    assert_eq!(u.value(10.0), 0.0);
    assert_eq!(u.value(10.5), 0.0);
    let r = 3.0f64;
    assert!((u.value(r) - (r.powf(-delta) - 10f64.powf(-delta))).abs() < 1e-15);
}

#[test]
fn extremal_ratio_beats_the_constant() {
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let u = make_un(&params, 10).unwrap().profile;
    let r = hardy_ratio(&u, &params, 1e-10).unwrap();
    assert!((r.rhs_norm.value - 5.61034).abs() < 1e-5);
    assert!(r.lhs_seminorm.value >= r.constant * r.rhs_norm.value);
}

#[test]
fn ratio_sequence_limit_for_the_first_reference_set() {
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let series = ratio_sequence(&params, &[10, 100, 1000, 10000], 1e-10).unwrap();
    assert!(series.entries.windows(2).all(|w| w[1].ratio < w[0].ratio));
    assert!(rel(series.limit_estimate, series.constant) < 0.05);
    assert!(!series.inverted);
}

#[test]
fn ratio_sequence_inverts_negative_delta() {
    for params in [
        HardyParams::whole(1, 0.9, 2.0, 2.0, 0.0, 0.0),
        HardyParams::half(1, 0.9, 2.0, 2.0, 0.0, 0.0),
    ] {
        assert!(params.delta() < 0.0);
        let series = ratio_sequence(&params, &[10, 100, 1000], 1e-9).unwrap();
        assert!(series.inverted);
        assert!(series.monotone);
        assert!(series.margins_nonnegative);
    }
}

#[test]
fn half_line_inversion_keeps_the_constant() {
    let params = HardyParams::half(1, 0.9, 2.0, 2.0, 0.0, 0.0);
    let inverted = HardyParams::half(1, 0.9, 2.0, 2.0, 0.8, 0.8);
    let a = sharp_constant(&params, 1e-11).unwrap().value;
    let b = sharp_constant(&inverted, 1e-11).unwrap().value;
    assert!(rel(a, b) < 1e-9, "{a} vs {b}");
}

#[test]
fn non_even_function_on_the_line() {
    struct Shifted;
    impl LineFunction for Shifted {
        fn value(&self, x: f64) -> f64 {
            (1.0 - (x - 3.0).abs()).max(0.0)
        }
        fn support(&self) -> (f64, f64) {
            (2.0, 4.0)
        }
        fn breakpoints(&self) -> Vec<f64> {
            vec![2.0, 3.0, 4.0]
        }
    }
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let lhs = direct_seminorm_1d(&Shifted, &params, 2048, 1e-6).unwrap().value;
    // ∫ |u|² |x|^{qδ-1} dx with qδ = 1
    let rhs = 2.0 / 3.0;
    let constant = sharp_constant(&params, 1e-10).unwrap().value;
    assert!(lhs / rhs >= constant - 1e-6, "{} < {constant}", lhs / rhs);
}

#[test]
fn hat_matches_the_direct_oracle() {
    let params = HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5);
    let hat = PiecewiseLinear::hat(2.0, 1.0, 1.0).unwrap();
    let radial = tl_seminorm(&hat, &params, 1e-10).unwrap().value;
    let direct = direct_seminorm_1d(&EvenExtension(&hat), &params, 2048, 1e-6).unwrap().value;
    assert!(rel(direct, radial) < 1e-4, "{radial} vs {direct}");
}

#[test]
fn pq_equal_examples() {
    for params in [
        HardyParams::whole(1, 0.5, 2.0, 2.0, 0.5, 0.5),
        HardyParams::whole(2, 0.25, 3.0, 3.0, 0.0, 0.0),
    ] {
        let a = sharp_constant(&params, 1e-11).unwrap().value;
        let b = pq_equal_constant(&params, 1e-11).unwrap().value;
        assert!(rel(a, b) < 1e-8);
    }
}

#[test]
fn direct_kernel_at_three() {
    let spec = KernelSpec::new(2, 0.3, 2.0).unwrap();
    let expected = phi(spec, 1.0 / 3.0, PhiMethod::Hypergeometric).unwrap() / 3f64.powf(2.6);
    assert!(rel(phi_extended(spec, 3.0).unwrap(), expected) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dual_params_is_an_involution(d in 1u32..5, s in 0.1f64..0.9, p in 1.0f64..4.0, q in 1.0f64..4.0,
                                     alpha in -2.0f64..2.0, beta in -2.0f64..2.0) {
        let params = HardyParams::whole(d, s, p, q, alpha, beta);
        let back = dual_params(&dual_params(&params).unwrap()).unwrap();
        prop_assert!((back.alpha - alpha).abs() <= 1e-14 * (1.0 + alpha.abs()) * 8.0);
        prop_assert!((back.beta - beta).abs() <= 1e-14 * (1.0 + beta.abs()) * 8.0);
        prop_assert!((dual_params(&params).unwrap().delta() + params.delta()).abs() < 1e-12);
    }

    #[test]
    fn kernel_symmetry(d in 2u32..7, s in 0.05f64..0.95, p in 1.0f64..4.0, t in 0.05f64..0.95) {
        let spec = KernelSpec::new(d, s, p).unwrap();
        let inside = phi(spec, t, PhiMethod::Hypergeometric).unwrap();
        let outside = phi_extended(spec, 1.0 / t).unwrap();
        prop_assert!(rel(outside, t.powf(d as f64 + s * p) * inside) < 1e-12);
        prop_assert!(rel(phi(spec, t, PhiMethod::Direct).unwrap(), inside) < 1e-9);
        prop_assert!(rel(phi(spec, 0.0, PhiMethod::Auto).unwrap(), unit_sphere_area(d).unwrap()) < 1e-12);
    }

    #[test]
    fn pq_equal_value_is_symmetric_in_the_weights(d in 1u32..4, s in 0.2f64..0.8, p in 1.2f64..3.5,
                                                  fa in 0.2f64..0.8, fb in 0.2f64..0.8) {
        let Some(params) = whole_params(d, s, p, p, fa, fb) else { return Ok(()) };
        let swapped = HardyParams { alpha: params.beta, beta: params.alpha, ..params };
        prop_assume!(validate(&swapped).valid);
        let a = sharp_constant(&params, 1e-11).unwrap().value;
        let b = sharp_constant(&swapped, 1e-11).unwrap().value;
        prop_assert!(rel(a, b) < 1e-9);
    }

    #[test]
    fn closed_form_matches_quadrature_at_n_two(d in 1u32..4, s in 0.2f64..0.8, p in 1.2f64..3.5,
                                               q in 1.2f64..3.5, fa in 0.2f64..0.8, fb in 0.2f64..0.8) {
        let Some(params) = whole_params(d, s, p, q, fa, fb) else { return Ok(()) };
        prop_assume!(params.delta() > 0.0);
        let u = make_un(&params, 2).unwrap().profile;
        let quad = lq_weighted_norm(&u, &params, 1e-13).unwrap().value;
        let closed = rhs_norm_closed_form(&params, 2).unwrap();
        prop_assert!(rel(quad, closed) < 1e-8, "{} vs {}", quad, closed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn ratio_is_dilation_invariant(d in 1u32..3, s in 0.3f64..0.7, center in 1.0f64..3.0,
                                   fa in 0.3f64..0.7, fb in 0.3f64..0.7, lambda in prop::sample::select(vec![0.5, 2.0])) {
        let Some(params) = whole_params(d, s, 2.0, 2.0, fa, fb) else { return Ok(()) };
        let hat = PiecewiseLinear::hat(center, 0.75, 1.0).unwrap();
        let base = hardy_ratio(&hat, &params, 1e-11).unwrap();
        let scaled = hardy_ratio(&Dilated::new(&hat, lambda).unwrap(), &params, 1e-11).unwrap();
        prop_assert!(rel(scaled.ratio, base.ratio) < 1e-8, "{} vs {}", scaled.ratio, base.ratio);
        prop_assert!(base.margin >= -1e-6 * base.constant);
    }
}
