//! Classical level-spacing diagnostics.

use crate::eigensolve::Spectrum;
use crate::error::{Error, Result};
use crate::numeric::{mean, population_variance, NeumaierSum};
use crate::persistence::DensityModel;
use crate::scalar::Scalar;

/// Nearest-neighbour spacings `s_k = λ_{k+1} − λ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingSequence<T> {
    pub values: Vec<T>,
    /// Set when spacings were rescaled by the local density.
    pub unfolded: bool,
}

impl<T: Scalar> SpacingSequence<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Compensated sum of the spacings.
    pub fn total(&self) -> T {
        self.values
            .iter()
            .copied()
            .collect::<NeumaierSum<T>>()
            .total()
    }

    pub fn mean(&self) -> T {
        mean(&self.values)
    }
}

pub fn spacings<T: Scalar>(s: &Spectrum<T>) -> SpacingSequence<T> {
    SpacingSequence {
        values: s.values().windows(2).map(|w| w[1] - w[0]).collect(),
        unfolded: false,
    }
}

/// Mean of `min(s_k, s_{k+1}) / max(s_k, s_{k+1})` over consecutive pairs.
/// A pair of zero spacings counts as ratio 1.
pub fn spacing_ratio<T: Scalar>(s: &Spectrum<T>) -> Result<T> {
    if s.len() < 3 {
        return Err(Error::TooShort {
            len: s.len(),
            min: 3,
        });
    }
    let sp = spacings(s).values;
    let ratios: Vec<T> = sp
        .windows(2)
        .map(|w| {
            let (lo, hi) = if w[0] <= w[1] {
                (w[0], w[1])
            } else {
                (w[1], w[0])
            };
            if hi == T::zero() {
                T::one()
            } else {
                lo / hi
            }
        })
        .collect();
    Ok(mean(&ratios))
}

/// Number of eigenvalues dropped at each end to keep the central
/// `bulk_fraction` of an `n`-level spectrum.
pub fn bulk_trim(n: usize, bulk_fraction: f64) -> usize {
    // The epsilon guards exact products such as (1 - 0.8) * 100 / 2.
    ((1.0 - bulk_fraction) * n as f64 / 2.0 + 1e-9).floor() as usize
}

/// Unfolds the central `bulk_fraction` of the spectrum with the analytic
/// density: `s̃_k = n·ρ((λ_k + λ_{k+1})/2)·s_k`.
pub fn unfold_bulk<T: Scalar>(
    s: &Spectrum<T>,
    model: &DensityModel<T>,
    bulk_fraction: f64,
) -> Result<SpacingSequence<T>> {
    if !(bulk_fraction > 0.0 && bulk_fraction <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "bulk_fraction",
            value: bulk_fraction,
        });
    }
    let n = s.len();
    let drop = bulk_trim(n, bulk_fraction);
    if n < 2 * drop + 2 {
        return Err(Error::EmptyBulk);
    }
    let bulk = &s.values()[drop..n - drop];
    let scale = T::from_usize_lossy(n);
    let half = T::lit(0.5);
    let values = bulk
        .windows(2)
        .map(|w| scale * model.density((w[0] + w[1]) * half) * (w[1] - w[0]))
        .collect();
    Ok(SpacingSequence {
        values,
        unfolded: true,
    })
}

/// Dyson symmetry class for the Wigner surmise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Beta {
    /// β = 1 (GOE, Wishart).
    Orthogonal,
    /// β = 2 (GUE).
    Unitary,
}

impl Beta {
    pub fn value(self) -> u8 {
        match self {
            Beta::Orthogonal => 1,
            Beta::Unitary => 2,
        }
    }
}

/// Wigner surmise density: `(π/2) s e^{−πs²/4}` for β = 1,
/// `(32/π²) s² e^{−4s²/π}` for β = 2.
pub fn wigner_surmise<T: Scalar>(beta: Beta, s: T) -> T {
    if s < T::zero() {
        return T::zero();
    }
    let pi = T::lit(std::f64::consts::PI);
    match beta {
        Beta::Orthogonal => pi / T::lit(2.0) * s * (-pi * s * s / T::lit(4.0)).exp(),
        Beta::Unitary => T::lit(32.0) / (pi * pi) * s * s * (-T::lit(4.0) * s * s / pi).exp(),
    }
}

/// Surmise CDF: `1 − e^{−πs²/4}` for β = 1 and
/// `erf(2s/√π) − (4/π) s e^{−4s²/π}` for β = 2.
pub fn wigner_surmise_cdf<T: Scalar>(beta: Beta, s: T) -> T {
    if s <= T::zero() {
        return T::zero();
    }
    let s = s.to_f64_lossy();
    let pi = std::f64::consts::PI;
    let value = match beta {
        Beta::Orthogonal => -libm::expm1(-pi * s * s / 4.0),
        Beta::Unitary => libm::erf(2.0 * s / pi.sqrt()) - 4.0 / pi * s * (-4.0 * s * s / pi).exp(),
    };
    T::lit(value.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult<T> {
    pub statistic: T,
    pub p_value: T,
    pub sample_size: usize,
}

pub const KS_MIN_SAMPLES: usize = 10;

/// One-sample Kolmogorov–Smirnov test against a continuous CDF, with the
/// asymptotic p-value `Q_KS(√N·D)`.
pub fn ks_test<T: Scalar, F: Fn(T) -> T>(samples: &[T], cdf: F) -> Result<KsResult<T>> {
    let n = samples.len();
    if n < KS_MIN_SAMPLES {
        return Err(Error::TooShort {
            len: n,
            min: KS_MIN_SAMPLES,
        });
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::NonFiniteInput);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x).to_f64_lossy();
        let above = (i + 1) as f64 / nf - f;
        let below = f - i as f64 / nf;
        d = d.max(above).max(below);
    }
    let p = kolmogorov_survival(nf.sqrt() * d);
    Ok(KsResult {
        statistic: T::lit(d),
        p_value: T::lit(p),
        sample_size: n,
    })
}

/// Survival function of the Kolmogorov distribution, `P(K > x)`.
///
/// Uses the alternating series `2 Σ (−1)^{k−1} e^{−2k²x²}` for `x ≥ 1.18`
/// and the theta-function form of the CDF below that; both are summed until
/// the next term is below 1e-10.
pub fn kolmogorov_survival(x: f64) -> f64 {
    const TOL: f64 = 1e-10;
    if x <= 0.0 {
        return 1.0;
    }
    let pi = std::f64::consts::PI;
    if x < 1.18 {
        let prefactor = (2.0 * pi).sqrt() / x;
        let mut cdf = 0.0;
        for k in 1..=100 {
            let odd = (2 * k - 1) as f64;
            let term = prefactor * (-odd * odd * pi * pi / (8.0 * x * x)).exp();
            cdf += term;
            if term < TOL {
                break;
            }
        }
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let mut q = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = 2.0 * (-2.0 * kf * kf * x * x).exp();
            q += if k % 2 == 1 { term } else { -term };
            if term < TOL {
                break;
            }
        }
        q.clamp(0.0, 1.0)
    }
}

/// Population variance of `s_k / ⟨s⟩`.
pub fn normalized_spacing_variance<T: Scalar>(sp: &SpacingSequence<T>) -> Result<T> {
    if sp.len() < 2 {
        return Err(Error::TooShort {
            len: sp.len(),
            min: 2,
        });
    }
    let m = sp.mean();
    if !(m > T::zero()) {
        return Err(Error::ZeroMeanSpacing);
    }
    let normalized: Vec<T> = sp.values.iter().map(|&s| s / m).collect();
    Ok(population_variance(&normalized))
}

#[cfg(test)]
mod tests;
