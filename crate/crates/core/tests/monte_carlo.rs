use zeta_routes::distributions::{mc_moment, mc_moments, sample, DistributionKind, DistributionSpec};
use zeta_routes::stats::{ks_critical_value, ks_statistic, TabulatedCdf};
use zeta_routes::QuadratureConfig;

const N: usize = 1_000_000;
const KS_N: usize = 100_000;
const KS_ALPHA: f64 = 0.001;

#[test]
fn moments_within_four_standard_errors() {
    for (kind, seed) in [
        (DistributionKind::Logistic, 2024),
        (DistributionKind::HalfLogistic, 2025),
        (DistributionKind::EllipticLogistic, 2026),
    ] {
        let spec = DistributionSpec::new(kind).unwrap();
        for est in mc_moments(&spec, 4, seed, N).unwrap() {
            let target = spec.closed_moment(est.order).unwrap();
            let z = est.z_score(target);
            assert!(z.abs() <= 4.0, "{kind} order {}: mean {} target {target} z {z}", est.order, est.mean);
        }
    }
}

#[test]
fn estimates_are_deterministic() {
    let spec = DistributionSpec::elliptic_logistic().unwrap();
    let a = mc_moment(&spec, 2, 5, 2000).unwrap();
    let b = mc_moment(&spec, 2, 5, 2000).unwrap();
    assert_eq!(a, b);
    assert!(a.stderr >= 0.0);
}

#[test]
fn ks_logistic_and_half_logistic() {
    let q = QuadratureConfig::default();
    let critical = ks_critical_value(KS_N, KS_ALPHA).unwrap();
    for (spec, seed) in [(DistributionSpec::logistic(), 31), (DistributionSpec::half_logistic(), 32)] {
        let mut xs = sample(&spec, seed, KS_N);
        let d = ks_statistic(&mut xs, |x| spec.cdf(x, &q).unwrap());
        assert!(d < critical, "{}: D = {d}, critical {critical}", spec.kind());
    }
}

#[test]
fn ks_elliptic_against_tabulated_cdf() {
    let q = QuadratureConfig::default();
    let spec = DistributionSpec::elliptic_logistic().unwrap();
    let table = TabulatedCdf::from_density(|x| spec.pdf(x), -9.0, 9.0, 1800, 0.0, &q).unwrap();
    // the table agrees with direct integration
    for x in [-2.0, -0.3, 0.0, 0.77, 1.9] {
        assert!((table.eval(x) - spec.cdf(x, &q).unwrap()).abs() < 1e-10);
    }
    let mut xs = sample(&spec, 33, KS_N);
    let d = ks_statistic(&mut xs, |x| table.eval(x));
    assert!(d < ks_critical_value(KS_N, KS_ALPHA).unwrap(), "D = {d}");
}

#[test]
fn ks_detects_wrong_law() {
    // half-logistic samples tested against the logistic CDF must fail
    let q = QuadratureConfig::default();
    let logistic = DistributionSpec::logistic();
    let mut xs = sample(&DistributionSpec::half_logistic(), 34, 10_000);
    let d = ks_statistic(&mut xs, |x| logistic.cdf(x, &q).unwrap());
    assert!(d > ks_critical_value(10_000, KS_ALPHA).unwrap());
}
