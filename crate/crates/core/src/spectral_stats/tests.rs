use super::*;
use crate::ensembles::GaussianStream;
use crate::numeric::GaussLegendre;
use crate::persistence::semicircle_cdf;
use proptest::prelude::*;

fn spectrum(values: &[f64]) -> Spectrum<f64> {
    Spectrum::from_sorted(values.to_vec()).unwrap()
}

#[test]
fn spacing_examples() {
    assert_eq!(spacings(&spectrum(&[0.0, 1.0, 3.0])).values, vec![1.0, 2.0]);
    assert_eq!(spacings(&spectrum(&[2.0; 4])).values, vec![0.0; 3]);
}

#[test]
fn compensated_spacing_total_matches_range() {
    let mut g = GaussianStream::new(3, 0);
    for _ in 0..200 {
        let mut v: Vec<f64> = (0..500).map(|_| g.next_gaussian() * 1e3).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s = spectrum(&v);
        let range = v[v.len() - 1] - v[0];
        assert!((spacings(&s).total() - range).abs() <= 4.0 * f64::EPSILON * range);
    }
}

#[test]
fn ratio_examples() {
    assert_eq!(
        spacing_ratio(&spectrum(&[0.0, 1.0, 2.0, 3.0])).unwrap(),
        1.0
    );
    assert_eq!(spacing_ratio(&spectrum(&[1.0, 1.0, 1.0])).unwrap(), 1.0);
    assert!((spacing_ratio(&spectrum(&[0.0, 1.0, 3.0])).unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(
        spacing_ratio(&spectrum(&[0.0, 1.0])),
        Err(Error::TooShort { len: 2, min: 3 })
    );
}

#[test]
fn poisson_spacing_ratio() {
    let mut g = GaussianStream::new(17, 0);
    let mut level = 0.0;
    let values: Vec<f64> = (0..100_001)
        .map(|_| {
            level += -(1.0 - g.next_uniform()).ln();
            level
        })
        .collect();
    let r = spacing_ratio(&spectrum(&values)).unwrap();
    assert!((r - 0.386).abs() < 0.005, "{r}");
}

#[test]
fn bulk_trim_is_exact_for_eighty_percent() {
    assert_eq!(bulk_trim(100, 0.8), 10);
    assert_eq!(bulk_trim(200, 0.8), 20);
    assert_eq!(bulk_trim(10, 1.0), 0);
    assert_eq!(bulk_trim(1000, 0.8), 100);
}

#[test]
fn unfolding_full_bulk_keeps_all_spacings() {
    let values: Vec<f64> = (0..10).map(|k| -1.8 + 0.4 * k as f64).collect();
    let u = unfold_bulk(&spectrum(&values), &DensityModel::Semicircle, 1.0).unwrap();
    assert_eq!(u.len(), 9);
    assert!(u.unfolded);
}

#[test]
fn unfolding_errors() {
    let s = spectrum(&[0.0, 0.1, 0.2]);
    assert!(unfold_bulk(&s, &DensityModel::Semicircle, 0.0).is_err());
    assert!(unfold_bulk(&s, &DensityModel::Semicircle, 1.5).is_err());
    assert_eq!(
        unfold_bulk(&s, &DensityModel::Semicircle, 0.01),
        Err(Error::EmptyBulk)
    );
}

fn semicircle_quantile(q: f64) -> f64 {
    let (mut lo, mut hi) = (-2.0, 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if semicircle_cdf(mid) < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn unfolding_quantile_spectrum_gives_unit_spacings() {
    let n = 1000;
    let values: Vec<f64> = (1..=n)
        .map(|k| semicircle_quantile(k as f64 / (n + 1) as f64))
        .collect();
    let u = unfold_bulk(&spectrum(&values), &DensityModel::Semicircle, 0.8).unwrap();
    for &s in &u.values {
        assert!((s - 1.0).abs() < 0.02, "{s}");
    }
}

#[test]
fn surmise_edge_values() {
    assert_eq!(wigner_surmise(Beta::Orthogonal, 0.0f64), 0.0);
    assert_eq!(wigner_surmise(Beta::Unitary, 0.0f64), 0.0);
    assert_eq!(wigner_surmise_cdf(Beta::Unitary, 0.0f64), 0.0);
}

#[test]
fn surmise_normalization_and_mean() {
    let rule = GaussLegendre::<f64>::new(200);
    for beta in [Beta::Orthogonal, Beta::Unitary] {
        let mass = rule.integrate(0.0, 12.0, |s| wigner_surmise(beta, s));
        let first = rule.integrate(0.0, 12.0, |s| s * wigner_surmise(beta, s));
        assert!((mass - 1.0).abs() < 1e-8, "{beta:?}: {mass}");
        assert!((first - 1.0).abs() < 1e-8, "{beta:?}: {first}");
    }
}

#[test]
fn surmise_cdf_matches_integrated_density() {
    let rule = GaussLegendre::<f64>::new(100);
    for beta in [Beta::Orthogonal, Beta::Unitary] {
        for s in [0.05, 0.3, 0.5, 1.0, 1.7, 2.0, 3.5] {
            let numeric = rule.integrate(0.0, s, |t| wigner_surmise(beta, t));
            assert!((wigner_surmise_cdf(beta, s) - numeric).abs() < 1e-10);
        }
    }
    // 30-digit references for the unitary CDF.
    for (s, expected) in [
        (0.5f64, 0.111_999_713_782_982_6),
        (1.0, 0.533_050_200_590_613_7),
        (2.0, 0.982_949_876_829_839_1),
    ] {
        assert!((wigner_surmise_cdf(Beta::Unitary, s) - expected).abs() < 1e-14);
    }
}

#[test]
fn ks_statistic_by_step_corners() {
    let samples = [0.1, 0.5, 0.9, 0.2, 0.3, 0.35, 0.6, 0.7, 0.8, 0.95];
    let got = ks_test(&samples, |x: f64| x).unwrap();
    // Brute force over both corners of every ECDF step.
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        d = d.max(((i + 1) as f64 / n - x).abs());
        d = d.max((i as f64 / n - x).abs());
    }
    assert!((got.statistic - d).abs() < 1e-15);
    assert_eq!(got.sample_size, 10);
}

#[test]
fn ks_three_point_statistic() {
    // {0.1, 0.5, 0.9} against U(0,1): corners 0.2333, 0.1, 0.1667, 0.1667, 0.1, 0.2333.
    let corners: [f64; 6] = [
        1.0 / 3.0 - 0.1,
        0.1,
        2.0 / 3.0 - 0.5,
        0.5 - 1.0 / 3.0,
        1.0 - 0.9,
        0.9 - 2.0 / 3.0,
    ];
    let d = corners.iter().cloned().fold(0.0, f64::max);
    let pts = [0.1, 0.5, 0.9];
    let mut brute = 0.0f64;
    for (i, &x) in pts.iter().enumerate() {
        brute = brute.max((i + 1) as f64 / 3.0 - x).max(x - i as f64 / 3.0);
    }
    assert!((brute - d).abs() < 1e-15);
    assert!((d - 0.233_333_333_333_333_34).abs() < 1e-15);
    assert!(ks_test(&pts, |x: f64| x).is_err());
}

#[test]
fn kolmogorov_survival_reference_points() {
    assert_eq!(kolmogorov_survival(0.0), 1.0);
    // Standard critical values.
    assert!((kolmogorov_survival(1.358_098_8) - 0.05).abs() < 1e-6);
    assert!((kolmogorov_survival(1.627_624) - 0.01).abs() < 1e-6);
    assert!((kolmogorov_survival(1.223_848) - 0.10).abs() < 1e-6);
    // Both series agree across the switch point.
    let below = kolmogorov_survival(1.18 - 1e-12);
    let above = kolmogorov_survival(1.18);
    assert!((below - above).abs() < 1e-9);
    let mut prev = 1.0;
    for i in 1..400 {
        let p = kolmogorov_survival(i as f64 * 0.01);
        assert!(p <= prev);
        prev = p;
    }
}

#[test]
fn ks_null_p_values_are_uniform() {
    let mut g = GaussianStream::new(2718, 0);
    let p_values: Vec<f64> = (0..200)
        .map(|_| {
            let samples: Vec<f64> = (0..10_000)
                .map(|_| (-4.0 * (1.0 - g.next_uniform()).ln() / std::f64::consts::PI).sqrt())
                .collect();
            ks_test(&samples, |s| wigner_surmise_cdf(Beta::Orthogonal, s))
                .unwrap()
                .p_value
        })
        .collect();
    let calibration = ks_test(&p_values, |p: f64| p.clamp(0.0, 1.0)).unwrap();
    assert!(calibration.p_value > 0.01, "{calibration:?}");
}

#[test]
fn normalized_variance_examples() {
    let equal = SpacingSequence {
        values: vec![0.5; 6],
        unfolded: false,
    };
    assert_eq!(normalized_spacing_variance(&equal).unwrap(), 0.0);
    let two = SpacingSequence {
        values: vec![1.0f64, 3.0],
        unfolded: false,
    };
    assert!((normalized_spacing_variance(&two).unwrap() - 0.25).abs() < 1e-15);
    let zero = SpacingSequence {
        values: vec![0.0, 0.0],
        unfolded: false,
    };
    assert_eq!(
        normalized_spacing_variance(&zero),
        Err(Error::ZeroMeanSpacing)
    );
}

proptest! {
    #[test]
    fn ratio_is_affine_invariant(
        mut values in prop::collection::vec(-50.0f64..50.0, 3..80),
        a in 0.01f64..100.0,
        b in -100.0f64..100.0,
    ) {
        values.sort_by(|x, y| x.partial_cmp(y).unwrap());
        values.dedup();
        prop_assume!(values.len() >= 3);
        let s = spectrum(&values);
        let t = s.affine(a, b).unwrap();
        let (r1, r2) = (spacing_ratio(&s).unwrap(), spacing_ratio(&t).unwrap());
        prop_assert!((r1 - r2).abs() < 1e-6, "{} vs {}", r1, r2);
    }

    #[test]
    fn normalized_variance_is_scale_invariant(
        values in prop::collection::vec(0.001f64..10.0, 2..50),
        scale in 0.001f64..1000.0,
    ) {
        let a = SpacingSequence { values: values.clone(), unfolded: false };
        let b = SpacingSequence { values: values.iter().map(|v| v * scale).collect(), unfolded: false };
        let (va, vb) = (normalized_spacing_variance(&a).unwrap(), normalized_spacing_variance(&b).unwrap());
        prop_assert!((va - vb).abs() <= 1e-9 * va.max(1.0));
    }
}
