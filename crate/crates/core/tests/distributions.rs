mod common;

use std::f64::consts::LN_2;

use common::{elliptic_inverse_constant, logistic_kernel, mgf_taylor_coefficients, simpson};
use zeta_routes::distributions::{
    cf_elliptic_quadrature, cf_elliptic_series, elliptic_constant_detail, elliptic_moment_even, halflogistic_moment,
    mgf_logistic_closed, mgf_logistic_coefficient, mgf_logistic_quadrature, mgf_logistic_series, pdf, CfScaling,
    DistributionKind, DistributionSpec, ELLIPTIC_AGREEMENT,
};
use zeta_routes::QuadratureConfig;

fn q() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn elliptic_constant_matches_simpson() {
    let detail = elliptic_constant_detail(&q()).unwrap();
    assert!((detail.t_form.value - detail.u_form.value).abs() <= ELLIPTIC_AGREEMENT);
    let oracle = elliptic_inverse_constant();
    assert!((1.0 / detail.c - oracle).abs() < 1e-12, "{} vs {oracle}", 1.0 / detail.c);
}

#[test]
fn densities_normalised_by_simpson() {
    let l = DistributionSpec::logistic();
    let h = DistributionSpec::half_logistic();
    let e = DistributionSpec::elliptic_logistic().unwrap();
    assert!((simpson(|x| pdf(&l, x), -40.0, 40.0, 80_000) - 1.0).abs() < 1e-10);
    assert!((simpson(|x| pdf(&h, x), 0.0, 40.0, 40_000) - 1.0).abs() < 1e-10);
    assert!((simpson(|x| pdf(&e, x), -8.0, 8.0, 16_000) - 1.0).abs() < 1e-10);
}

#[test]
fn halflogistic_moments_match_simpson() {
    let h = DistributionSpec::half_logistic();
    let mean = simpson(|x| x * pdf(&h, x), 0.0, 60.0, 120_000);
    assert!((mean - 2.0 * LN_2).abs() < 1e-10);
    assert!((halflogistic_moment(1).unwrap() - mean).abs() < 1e-10);
    for n in 2..=6 {
        let oracle = simpson(|x| x.powi(n as i32) * pdf(&h, x), 0.0, 80.0, 160_000);
        let closed = halflogistic_moment(n).unwrap();
        assert!((closed - oracle).abs() < 1e-9 * oracle.max(1.0), "n = {n}: {closed} vs {oracle}");
    }
}

#[test]
fn logistic_even_moments_equal_halflogistic() {
    let l = DistributionSpec::logistic();
    for k in 1..=6 {
        let closed = l.closed_moment(k).unwrap();
        if k % 2 == 1 {
            assert_eq!(closed, 0.0);
        } else {
            assert_eq!(closed, halflogistic_moment(k).unwrap());
        }
    }
    // E X² = M''(0)
    assert!((l.closed_moment(2).unwrap() - common::logistic_second_moment_fd()).abs() < 1e-5);
}

#[test]
fn elliptic_moments_match_simpson() {
    let e = DistributionSpec::elliptic_logistic().unwrap();
    let c = e.c().unwrap();
    for m in 1..=3u32 {
        let oracle = 2.0 * c * simpson(|x| x.powi(2 * m as i32) * logistic_kernel(x * x), 0.0, 10.0, 40_000);
        let closed = elliptic_moment_even(m, c).unwrap();
        assert!((closed - oracle).abs() < 1e-9, "m = {m}: {closed} vs {oracle}");
    }
    // (1 - √2) < 0 and ζ(1/2) < 0 give a positive second moment
    assert!(elliptic_moment_even(1, c).unwrap() > 0.0);
}

#[test]
fn logistic_mgf_quadrature() {
    for t in [-0.9, -0.5, -0.1, 0.1, 0.5, 0.9] {
        let quad = mgf_logistic_quadrature(t, &q()).unwrap();
        let closed = mgf_logistic_closed(t).unwrap();
        assert!((quad.value - closed).abs() < 1e-9, "t = {t}");
    }
}

#[test]
fn logistic_mgf_series() {
    let oracle = mgf_taylor_coefficients(12);
    for n in 1..12u32 {
        let c = mgf_logistic_coefficient(n).unwrap();
        assert!((c - oracle[n as usize]).abs() < 1e-12 * c, "n = {n}");
    }
    for i in -14..=14 {
        let t = 0.05 * i as f64;
        let series = mgf_logistic_series(t, 60).unwrap();
        let closed = mgf_logistic_closed(t).unwrap();
        assert!((series - closed).abs() < 1e-11, "t = {t}");
    }
}

#[test]
fn elliptic_cf_resolves_power_of_two() {
    let e = DistributionSpec::elliptic_logistic().unwrap();
    let c = e.c().unwrap();
    for t in [0.5, 1.0, 2.0] {
        let quad = cf_elliptic_quadrature(t, c, &q()).unwrap().value;
        let oracle = 2.0 * c * simpson(|x| (t * x).cos() * logistic_kernel(x * x), 0.0, 10.0, 40_000);
        assert!((quad - oracle).abs() < 1e-11);
        let even = cf_elliptic_series(t, 30, c, CfScaling::EvenMoment).unwrap();
        assert!((even - quad).abs() < 1e-8, "t = {t}: {even} vs {quad}");
    }
    let quad = cf_elliptic_quadrature(2.0, c, &q()).unwrap().value;
    let published = cf_elliptic_series(2.0, 30, c, CfScaling::Published).unwrap();
    assert!((published - quad).abs() > 1e-3);
}

#[test]
fn samplers_hit_quantile_examples() {
    assert_eq!(DistributionSpec::logistic().quantile(0.5).unwrap(), 0.0);
    assert!((DistributionSpec::half_logistic().quantile(0.5).unwrap() - 3f64.ln()).abs() < 1e-15);
    for kind in DistributionKind::ALL {
        let spec = DistributionSpec::new(kind).unwrap();
        let a = zeta_routes::distributions::sample(&spec, 99, 10);
        assert_eq!(a, zeta_routes::distributions::sample(&spec, 99, 10));
    }
}
