//! Persistence diagrams of `x ↦ xᵀMx` on the unit sphere, read off the
//! spectrum of `M`, plus the summary statistics built on them.
//!
//! For ascending eigenvalues `λ_1 ≤ … ≤ λ_n` the sublevel filtration has
//! finite bars `[λ_k, λ_{k+1})` in homological dimension `k - 1` for
//! `k = 1..n-1`, and infinite bars `[λ_1, ∞)` in dimension 0 and
//! `[λ_n, ∞)` in dimension `n - 1`.

use std::fmt::Write as _;

use crate::eigensolve::Spectrum;
use crate::error::{Error, Result};
use crate::numeric::{GaussLegendre, NeumaierSum};
use crate::scalar::Scalar;

/// Gauss–Legendre order used for log-density integrals.
pub const LOG_DENSITY_QUADRATURE_ORDER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bar<T> {
    pub birth: T,
    /// `+∞` for essential classes.
    pub death: T,
    pub dim: usize,
}

impl<T: Scalar> Bar<T> {
    pub fn is_finite(&self) -> bool {
        self.death.is_finite()
    }

    pub fn length(&self) -> T {
        self.death - self.birth
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram<T> {
    finite: Vec<Bar<T>>,
    infinite: [Bar<T>; 2],
}

impl<T: Scalar> PersistenceDiagram<T> {
    pub fn finite_bars(&self) -> &[Bar<T>] {
        &self.finite
    }

    pub fn infinite_bars(&self) -> &[Bar<T>; 2] {
        &self.infinite
    }

    /// Matrix dimension `n` (one more than the number of finite bars).
    pub fn dim(&self) -> usize {
        self.finite.len() + 1
    }

    pub fn lengths(&self) -> impl Iterator<Item = T> + '_ {
        self.finite.iter().map(Bar::length)
    }

    /// CSV with header `birth,death,dim`; finite bars in birth order, then
    /// the two infinite bars with death written as `inf`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("birth,death,dim\n");
        for bar in self.finite.iter().chain(self.infinite.iter()) {
            let death = if bar.death.is_finite() {
                bar.death.to_string()
            } else {
                "inf".to_string()
            };
            let _ = writeln!(out, "{},{},{}", bar.birth, death, bar.dim);
        }
        out
    }

    /// Parses the format written by [`to_csv`](Self::to_csv) and checks the
    /// diagram layout.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, header)) if header.trim() == "birth,death,dim" => {}
            Some((i, _)) => {
                return Err(Error::Csv {
                    line: i + 1,
                    reason: "expected header birth,death,dim".into(),
                })
            }
            None => {
                return Err(Error::Csv {
                    line: 1,
                    reason: "empty input".into(),
                })
            }
        }
        let mut bars = Vec::new();
        for (i, line) in lines {
            let bad = |reason: &str| Error::Csv {
                line: i + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != 3 {
                return Err(bad("expected three fields"));
            }
            let birth: T = fields[0].parse().map_err(|_| bad("bad birth"))?;
            let death: T = fields[1].parse().map_err(|_| bad("bad death"))?;
            let dim: usize = fields[2].parse().map_err(|_| bad("bad dim"))?;
            bars.push(Bar { birth, death, dim });
        }
        let (finite, infinite): (Vec<_>, Vec<_>) = bars.into_iter().partition(Bar::is_finite);
        let reject = |reason: &str| Error::Csv {
            line: 0,
            reason: reason.to_string(),
        };
        if infinite.len() != 2 {
            return Err(reject("expected exactly two infinite bars"));
        }
        let mut values: Vec<T> = finite.iter().map(|b| b.birth).collect();
        match finite.last() {
            Some(last) => values.push(last.death),
            None => return Err(reject("no finite bars")),
        }
        let rebuilt = diagram_from_values(&values)?;
        if rebuilt.finite != finite || rebuilt.infinite[..] != infinite[..] {
            return Err(reject("bars do not form a sphere-filtration diagram"));
        }
        Ok(rebuilt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats<T> {
    /// Total persistence.
    pub tp: T,
    /// Persistence entropy in nats.
    pub pe: T,
    /// Largest finite bar over total persistence.
    pub mu: T,
}

pub fn diagram_from_spectrum<T: Scalar>(s: &Spectrum<T>) -> Result<PersistenceDiagram<T>> {
    build(s.values())
}

/// Like [`diagram_from_spectrum`] for a raw slice, which must be ascending.
pub fn diagram_from_values<T: Scalar>(values: &[T]) -> Result<PersistenceDiagram<T>> {
    if let Some(index) = values.windows(2).position(|w| !(w[0] <= w[1])) {
        return Err(Error::NotSorted { index: index + 1 });
    }
    build(values)
}

fn build<T: Scalar>(values: &[T]) -> Result<PersistenceDiagram<T>> {
    let n = values.len();
    if n < 2 {
        return Err(Error::TooShort { len: n, min: 2 });
    }
    let finite = values
        .windows(2)
        .enumerate()
        .map(|(k, w)| Bar {
            birth: w[0],
            death: w[1],
            dim: k,
        })
        .collect();
    let infinite = [
        Bar {
            birth: values[0],
            death: T::infinity(),
            dim: 0,
        },
        Bar {
            birth: values[n - 1],
            death: T::infinity(),
            dim: n - 1,
        },
    ];
    Ok(PersistenceDiagram { finite, infinite })
}

/// `λ_n − λ_1`, which the bar lengths telescope to.
pub fn total_persistence<T: Scalar>(d: &PersistenceDiagram<T>) -> T {
    let first = d.finite.first().expect("diagram has finite bars");
    let last = d.finite.last().expect("diagram has finite bars");
    last.death - first.birth
}

/// Shannon entropy (nats) of bar lengths normalized by total persistence.
/// Zero-length bars contribute nothing.
pub fn persistence_entropy<T: Scalar>(d: &PersistenceDiagram<T>) -> Result<T> {
    let tp = total_persistence(d);
    if !(tp > T::zero()) {
        return Err(Error::UndefinedEntropy);
    }
    let acc: NeumaierSum<T> = d
        .lengths()
        .filter(|&s| s > T::zero())
        .map(|s| {
            let p = s / tp;
            -p * p.ln()
        })
        .collect();
    Ok(acc.total())
}

pub fn max_bar_fraction<T: Scalar>(d: &PersistenceDiagram<T>) -> Result<T> {
    let tp = total_persistence(d);
    if !(tp > T::zero()) {
        return Err(Error::UndefinedEntropy);
    }
    let max = d.lengths().fold(T::zero(), T::max);
    Ok(max / tp)
}

pub fn summary_stats<T: Scalar>(d: &PersistenceDiagram<T>) -> Result<SummaryStats<T>> {
    Ok(SummaryStats {
        tp: total_persistence(d),
        pe: persistence_entropy(d)?,
        mu: max_bar_fraction(d)?,
    })
}

/// Large-n persistence entropy of GOE(n): `log(8n/π) − 1`.
pub fn pe_closed_form_goe<T: Scalar>(n: usize) -> T {
    (T::lit(8.0) * T::from_usize_lossy(n) / T::lit(std::f64::consts::PI)).ln() - T::one()
}

/// Asymptotic Wishart total persistence `4√γ` (the Marchenko–Pastur support width).
pub fn tp_wishart_asymptotic<T: Scalar>(gamma: T) -> Result<T> {
    if !(gamma > T::zero() && gamma < T::one()) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma.to_f64_lossy(),
        });
    }
    Ok(T::lit(4.0) * gamma.sqrt())
}

/// Limiting eigenvalue densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityModel<T> {
    /// Wigner semicircle on [-2, 2].
    Semicircle,
    /// Marchenko–Pastur with aspect ratio `gamma` in (0, 1).
    MarchenkoPastur { gamma: T },
}

impl<T: Scalar> DensityModel<T> {
    pub fn marchenko_pastur(gamma: T) -> Result<Self> {
        if !(gamma > T::zero() && gamma < T::one()) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma.to_f64_lossy(),
            });
        }
        Ok(Self::MarchenkoPastur { gamma })
    }

    pub fn support(&self) -> (T, T) {
        match *self {
            DensityModel::Semicircle => (T::lit(-2.0), T::lit(2.0)),
            DensityModel::MarchenkoPastur { gamma } => {
                let r = gamma.sqrt();
                ((T::one() - r).powi(2), (T::one() + r).powi(2))
            }
        }
    }

    pub fn width(&self) -> T {
        let (lo, hi) = self.support();
        hi - lo
    }

    /// Pointwise density; zero outside the closed support.
    pub fn density(&self, lambda: T) -> T {
        let (lo, hi) = self.support();
        if !(lambda >= lo && lambda <= hi) {
            return T::zero();
        }
        let two_pi = T::lit(2.0 * std::f64::consts::PI);
        match *self {
            DensityModel::Semicircle => {
                (T::lit(4.0) - lambda * lambda).max(T::zero()).sqrt() / two_pi
            }
            DensityModel::MarchenkoPastur { gamma } => {
                ((hi - lambda) * (lambda - lo)).max(T::zero()).sqrt() / (two_pi * gamma * lambda)
            }
        }
    }

    /// Integrates `g(λ)·ρ(λ)`-type integrands over the support after the
    /// substitution `λ = λ₋ + (λ₊ − λ₋) sin²θ`, which absorbs the
    /// square-root edge behaviour.
    pub fn integrate_over_support<F: FnMut(T) -> T>(&self, rule: &GaussLegendre<T>, mut f: F) -> T {
        let (lo, hi) = self.support();
        let width = hi - lo;
        let half_pi = T::lit(std::f64::consts::FRAC_PI_2);
        rule.integrate(T::zero(), half_pi, |theta| {
            let s = theta.sin();
            let lambda = lo + width * s * s;
            f(lambda) * width * (theta + theta).sin()
        })
    }

    /// `∫ log ρ(λ) dλ` over the support.
    pub fn log_density_integral(&self) -> Result<T> {
        let rule = GaussLegendre::new(LOG_DENSITY_QUADRATURE_ORDER);
        let value = self.integrate_over_support(&rule, |lambda| self.density(lambda).ln());
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::QuadratureFailure(format!(
                "log-density integral evaluated to {value}"
            )))
        }
    }
}

/// Large-n persistence entropy for a density: `log(n·TP) + (1/TP)∫ log ρ`,
/// with `TP` the support width.
pub fn pe_asymptotic<T: Scalar>(model: &DensityModel<T>, n: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::InvalidDimension { n, min: 2 });
    }
    let tp = model.width();
    let integral = model.log_density_integral()?;
    Ok((T::from_usize_lossy(n) * tp).ln() + integral / tp)
}

/// Semicircle CDF `½ + λ√(4−λ²)/(4π) + arcsin(λ/2)/π`, clamped outside [-2, 2].
pub fn semicircle_cdf<T: Scalar>(lambda: T) -> T {
    let two = T::lit(2.0);
    if lambda <= -two {
        return T::zero();
    }
    if lambda >= two {
        return T::one();
    }
    let pi = T::lit(std::f64::consts::PI);
    T::lit(0.5)
        + lambda * (T::lit(4.0) - lambda * lambda).sqrt() / (T::lit(4.0) * pi)
        + (lambda / two).asin() / pi
}
