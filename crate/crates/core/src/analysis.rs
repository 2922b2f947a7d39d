//! Cross-sample statistics: AUC with bootstrap intervals, Fisher
//! discriminant scores, diagram distances, disorder sweeps and fits.

use rayon::prelude::*;

use crate::eigensolve::Spectrum;
use crate::ensembles::{EnsembleSpec, GaussianStream};
use crate::error::{Error, Result};
use crate::numeric::{mean, sample_std, NeumaierSum};
use crate::persistence::{
    diagram_from_spectrum, max_bar_fraction, persistence_entropy, total_persistence, Bar,
    PersistenceDiagram,
};
use crate::scalar::Scalar;
use crate::spectral_stats::{normalized_spacing_variance, spacing_ratio, spacings};

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSet<T> {
    pub class_a: Vec<T>,
    pub class_b: Vec<T>,
    pub statistic_name: String,
}

impl<T: Scalar> ScoreSet<T> {
    pub fn new(class_a: Vec<T>, class_b: Vec<T>, statistic_name: impl Into<String>) -> Self {
        Self {
            class_a,
            class_b,
            statistic_name: statistic_name.into(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.class_a.is_empty() || self.class_b.is_empty() {
            Err(Error::EmptyClass)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Auc<T> {
    /// Discrimination power, `max(raw, 1 − raw)`.
    pub value: T,
    /// `P(b > a) + ½ P(b = a)`.
    pub raw: T,
    /// True when class b tends to score lower than class a.
    pub reversed: bool,
}

/// Mann–Whitney estimate of `P(b > a) + ½ P(b = a)` from mid-ranks.
pub fn mann_whitney<T: Scalar>(a: &[T], b: &[T]) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyClass);
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::NonFiniteInput);
    }
    let mut pooled: Vec<(T, bool)> = a
        .iter()
        .map(|&x| (x, false))
        .chain(b.iter().map(|&x| (x, true)))
        .collect();
    pooled.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("no NaN"));
    let mut rank_sum_b = 0.0f64;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j + 1 < pooled.len() && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        // Ranks are 1-based; tied values share the mid-rank.
        let mid_rank = (i + j) as f64 / 2.0 + 1.0;
        let in_b = pooled[i..=j].iter().filter(|p| p.1).count();
        rank_sum_b += mid_rank * in_b as f64;
        i = j + 1;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let u_b = rank_sum_b - nb * (nb + 1.0) / 2.0;
    Ok(T::lit(u_b / (na * nb)))
}

pub fn auc<T: Scalar>(scores: &ScoreSet<T>) -> Result<Auc<T>> {
    scores.check()?;
    let raw = mann_whitney(&scores.class_a, &scores.class_b)?;
    let reversed = raw < T::lit(0.5);
    Ok(Auc {
        value: if reversed { T::one() - raw } else { raw },
        raw,
        reversed,
    })
}

/// Percentile bootstrap interval for the oriented AUC. Each class is
/// resampled with replacement independently; the orientation of the
/// point estimate is kept for every replicate.
pub fn bootstrap_auc_ci<T: Scalar>(
    scores: &ScoreSet<T>,
    replicates: usize,
    level: f64,
    seed: u64,
) -> Result<(T, T)> {
    scores.check()?;
    if replicates < 100 {
        return Err(Error::InvalidParameter {
            name: "replicates",
            value: replicates as f64,
        });
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidParameter {
            name: "level",
            value: level,
        });
    }
    let reversed = auc(scores)?.reversed;
    let mut stream = GaussianStream::new(seed, 0);
    let mut draw = |len: usize| ((stream.next_u64() as u128 * len as u128) >> 64) as usize;
    let mut values = Vec::with_capacity(replicates);
    let (a, b) = (&scores.class_a, &scores.class_b);
    let mut ra = vec![T::zero(); a.len()];
    let mut rb = vec![T::zero(); b.len()];
    for _ in 0..replicates {
        for slot in ra.iter_mut() {
            *slot = a[draw(a.len())];
        }
        for slot in rb.iter_mut() {
            *slot = b[draw(b.len())];
        }
        let raw = mann_whitney(&ra, &rb)?.to_f64_lossy();
        values.push(if reversed { 1.0 - raw } else { raw });
    }
    values.sort_by(|x, y| x.partial_cmp(y).expect("finite AUC"));
    let tail = (1.0 - level) / 2.0;
    Ok((
        T::lit(percentile(&values, tail)),
        T::lit(percentile(&values, 1.0 - tail)),
    ))
}

/// Linear-interpolation percentile of sorted data, `q` in [0, 1].
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Projects two-feature samples onto the Fisher direction
/// `w = S_w⁻¹(μ_b − μ_a)` fitted on the same data.
pub fn fisher_combine<T: Scalar>(
    features_a: &[(T, T)],
    features_b: &[(T, T)],
) -> Result<ScoreSet<T>> {
    if features_a.is_empty() || features_b.is_empty() {
        return Err(Error::EmptyClass);
    }
    if features_a.len() + features_b.len() < 3 {
        return Err(Error::SingularCovariance);
    }
    let centroid = |xs: &[(T, T)]| {
        let first: Vec<T> = xs.iter().map(|p| p.0).collect();
        let second: Vec<T> = xs.iter().map(|p| p.1).collect();
        (mean(&first), mean(&second))
    };
    let (ma, mb) = (centroid(features_a), centroid(features_b));
    let mut s11 = NeumaierSum::new();
    let mut s12 = NeumaierSum::new();
    let mut s22 = NeumaierSum::new();
    for (xs, m) in [(features_a, ma), (features_b, mb)] {
        for &(x, y) in xs {
            let (dx, dy) = (x - m.0, y - m.1);
            s11.add(dx * dx);
            s12.add(dx * dy);
            s22.add(dy * dy);
        }
    }
    let dof = T::from_usize_lossy(features_a.len() + features_b.len() - 2);
    let (c11, c12, c22) = (s11.total() / dof, s12.total() / dof, s22.total() / dof);
    let det = c11 * c22 - c12 * c12;
    if !(det.abs() > T::lit(1e-12) * c11.abs() * c22.abs()) || det == T::zero() {
        return Err(Error::SingularCovariance);
    }
    let (d1, d2) = (mb.0 - ma.0, mb.1 - ma.1);
    let w1 = (c22 * d1 - c12 * d2) / det;
    let w2 = (c11 * d2 - c12 * d1) / det;
    let project = |xs: &[(T, T)]| xs.iter().map(|&(x, y)| w1 * x + w2 * y).collect();
    Ok(ScoreSet::new(
        project(features_a),
        project(features_b),
        "fisher",
    ))
}

/// Wasserstein-2 distance between two sphere-filtration diagrams of the
/// same dimension. Each homological dimension holds one finite bar per
/// diagram, so the optimal matching per dimension is either the bar pair
/// or both bars sent to the diagonal.
pub fn wasserstein2<T: Scalar>(
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
) -> Result<T> {
    let half = T::lit(0.5);
    per_dimension_distance(d1, d2, |p, q| {
        let diagonal = half * (p.length().powi(2) + q.length().powi(2));
        pair_cost(p, q).min(diagonal)
    })
}

/// Like [`wasserstein2`] but always pairs the two bars of each dimension,
/// with no diagonal option. This is the Euclidean distance between the
/// diagrams viewed as vectors of (birth, death) points. Short bars that sit
/// far apart stay far apart, so it separates ensembles whose spectra occupy
/// different intervals.
pub fn wasserstein2_paired<T: Scalar>(
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
) -> Result<T> {
    per_dimension_distance(d1, d2, pair_cost)
}

fn pair_cost<T: Scalar>(p: &Bar<T>, q: &Bar<T>) -> T {
    (p.birth - q.birth).powi(2) + (p.death - q.death).powi(2)
}

fn per_dimension_distance<T: Scalar>(
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
    cost: impl Fn(&Bar<T>, &Bar<T>) -> T,
) -> Result<T> {
    let (left, right) = (d1.finite_bars(), d2.finite_bars());
    if left.len() != right.len() {
        return Err(Error::DimensionMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    let total: NeumaierSum<T> = left.iter().zip(right).map(|(p, q)| cost(p, q)).collect();
    Ok(total.total().sqrt())
}

/// Per-spectrum scalar diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    TotalPersistence,
    PersistenceEntropy,
    MaxBarFraction,
    SpacingRatio,
    SpacingVariance,
    LargestEigenvalue,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::TotalPersistence => "tp",
            Statistic::PersistenceEntropy => "pe",
            Statistic::MaxBarFraction => "mu",
            Statistic::SpacingRatio => "r",
            Statistic::SpacingVariance => "spacing_variance",
            Statistic::LargestEigenvalue => "lambda_max",
        }
    }

    pub fn evaluate<T: Scalar>(self, s: &Spectrum<T>) -> Result<T> {
        match self {
            Statistic::TotalPersistence => Ok(total_persistence(&diagram_from_spectrum(s)?)),
            Statistic::PersistenceEntropy => persistence_entropy(&diagram_from_spectrum(s)?),
            Statistic::MaxBarFraction => max_bar_fraction(&diagram_from_spectrum(s)?),
            Statistic::SpacingRatio => spacing_ratio(s),
            Statistic::SpacingVariance => normalized_spacing_variance(&spacings(s)),
            Statistic::LargestEigenvalue => largest_eigenvalue(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatisticCurve<T> {
    pub statistic: Statistic,
    pub snr: Vec<T>,
    pub means: Vec<T>,
    pub reference_mean: T,
    pub reference_std: T,
    /// Per-sample values, one vector per grid point.
    pub values: Vec<Vec<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnrCurve<T> {
    pub lambda_grid: Vec<f64>,
    pub n: usize,
    pub samples: usize,
    pub master_seed: u64,
    pub curves: Vec<StatisticCurve<T>>,
}

impl<T> SnrCurve<T> {
    pub fn curve(&self, statistic: Statistic) -> Option<&StatisticCurve<T>> {
        self.curves.iter().find(|c| c.statistic == statistic)
    }
}

pub const SNR_MIN_SAMPLES: usize = 30;

fn rp_statistics<T: Scalar>(
    statistics: &[Statistic],
    lambda: f64,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<Vec<T>>> {
    let spec = EnsembleSpec::rosenzweig_porter(n, lambda, seed);
    spec.validate()?;
    let per_sample: Vec<Vec<T>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let s = spec.sample::<T>(i)?.spectrum()?;
            statistics.iter().map(|st| st.evaluate(&s)).collect()
        })
        .collect::<Result<_>>()?;
    Ok((0..statistics.len())
        .map(|k| per_sample.iter().map(|row| row[k]).collect())
        .collect())
}

/// Signal-to-noise of each statistic across a Rosenzweig–Porter disorder
/// grid: `|mean_λ − mean_0| / std_0`, with the λ = 0 reference drawn at the
/// same `n`, sample count and master seed.
pub fn snr_sweep<T: Scalar>(
    statistics: &[Statistic],
    lambda_grid: &[f64],
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<SnrCurve<T>> {
    if lambda_grid.is_empty() || statistics.is_empty() {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    if samples < SNR_MIN_SAMPLES {
        return Err(Error::TooShort {
            len: samples,
            min: SNR_MIN_SAMPLES,
        });
    }
    let per_lambda: Vec<Vec<Vec<T>>> = lambda_grid
        .iter()
        .map(|&lambda| rp_statistics(statistics, lambda, n, samples, seed))
        .collect::<Result<_>>()?;
    let reference = match lambda_grid.iter().position(|&l| l == 0.0) {
        Some(k) => per_lambda[k].clone(),
        None => rp_statistics(statistics, 0.0, n, samples, seed)?,
    };
    let mut curves = Vec::with_capacity(statistics.len());
    for (k, &statistic) in statistics.iter().enumerate() {
        let reference_mean = mean(&reference[k]);
        let reference_std = sample_std(&reference[k]);
        if !(reference_std > T::zero()) {
            return Err(Error::ZeroVariance);
        }
        let values: Vec<Vec<T>> = per_lambda.iter().map(|v| v[k].clone()).collect();
        let means: Vec<T> = values.iter().map(|v| mean(v)).collect();
        let snr = means
            .iter()
            .map(|&m| (m - reference_mean).abs() / reference_std)
            .collect();
        curves.push(StatisticCurve {
            statistic,
            snr,
            means,
            reference_mean,
            reference_std,
            values,
        });
    }
    Ok(SnrCurve {
        lambda_grid: lambda_grid.to_vec(),
        n,
        samples,
        master_seed: seed,
        curves,
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn powerlaw_exponent<T: Scalar>(xs: &[T], ys: &[T]) -> Result<T> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::TooShort {
            len: xs.len(),
            min: 2,
        });
    }
    if xs.iter().chain(ys).any(|&v| !(v > T::zero())) {
        return Err(Error::NonPositiveData);
    }
    let lx: Vec<T> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<T> = ys.iter().map(|y| y.ln()).collect();
    let (mx, my) = (mean(&lx), mean(&ly));
    let sxy: NeumaierSum<T> = lx
        .iter()
        .zip(&ly)
        .map(|(&x, &y)| (x - mx) * (y - my))
        .collect();
    let sxx: NeumaierSum<T> = lx.iter().map(|&x| (x - mx) * (x - mx)).collect();
    if sxx.total() == T::zero() {
        return Err(Error::ZeroVariance);
    }
    Ok(sxy.total() / sxx.total())
}

pub fn pearson_correlation<T: Scalar>(xs: &[T], ys: &[T]) -> Result<T> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::TooShort {
            len: xs.len(),
            min: 3,
        });
    }
    let (mx, my) = (mean(xs), mean(ys));
    let sxy: NeumaierSum<T> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (x - mx) * (y - my))
        .collect();
    let sxx: NeumaierSum<T> = xs.iter().map(|&x| (x - mx) * (x - mx)).collect();
    let syy: NeumaierSum<T> = ys.iter().map(|&y| (y - my) * (y - my)).collect();
    let denom = (sxx.total() * syy.total()).sqrt();
    if !(denom > T::zero()) {
        return Err(Error::ZeroVariance);
    }
    Ok(sxy.total() / denom)
}

pub fn largest_eigenvalue<T: Scalar>(s: &Spectrum<T>) -> Result<T> {
    s.max().ok_or(Error::TooShort { len: 0, min: 1 })
}
