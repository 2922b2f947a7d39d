//! Seeded random-matrix ensembles.
//!
//! Every sample is a pure function of `(EnsembleSpec, index)`: the spec's
//! canonical tag and master seed are mixed with the index by
//! [`sample_seed`] into an independent ChaCha8 stream.

mod rng;

use std::fmt;

use rayon::prelude::*;

pub use self::rng::{fnv1a64, format_real_g17, sample_seed, splitmix64, GaussianStream};
use self::rng::{STREAM_DIAGONAL, STREAM_MAIN};
use crate::eigensolve::{spectrum_hermitian, spectrum_symmetric, Provenance, Spectrum};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    Goe,
    Gue,
    Wishart,
    RosenzweigPorter,
    SpikedWishart,
}

impl EnsembleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EnsembleKind::Goe => "goe",
            EnsembleKind::Gue => "gue",
            EnsembleKind::Wishart => "wishart",
            EnsembleKind::RosenzweigPorter => "rp",
            EnsembleKind::SpikedWishart => "spiked_wishart",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    /// Wishart sample count.
    pub p: Option<usize>,
    /// Rosenzweig–Porter disorder strength.
    pub lambda: Option<f64>,
    /// Spike strength.
    pub theta: Option<f64>,
    pub master_seed: u64,
}

impl EnsembleSpec {
    fn bare(kind: EnsembleKind, n: usize, master_seed: u64) -> Self {
        Self {
            kind,
            n,
            p: None,
            lambda: None,
            theta: None,
            master_seed,
        }
    }

    pub fn goe(n: usize, master_seed: u64) -> Self {
        Self::bare(EnsembleKind::Goe, n, master_seed)
    }

    pub fn gue(n: usize, master_seed: u64) -> Self {
        Self::bare(EnsembleKind::Gue, n, master_seed)
    }

    pub fn wishart(n: usize, p: usize, master_seed: u64) -> Self {
        Self {
            p: Some(p),
            ..Self::bare(EnsembleKind::Wishart, n, master_seed)
        }
    }

    pub fn rosenzweig_porter(n: usize, lambda: f64, master_seed: u64) -> Self {
        Self {
            lambda: Some(lambda),
            ..Self::bare(EnsembleKind::RosenzweigPorter, n, master_seed)
        }
    }

    pub fn spiked_wishart(n: usize, p: usize, theta: f64, master_seed: u64) -> Self {
        Self {
            p: Some(p),
            theta: Some(theta),
            ..Self::bare(EnsembleKind::SpikedWishart, n, master_seed)
        }
    }

    /// Checks that exactly the kind-specific parameters are present and in range.
    pub fn validate(&self) -> Result<()> {
        use EnsembleKind::*;
        let needs_p = matches!(self.kind, Wishart | SpikedWishart);
        let needs_lambda = self.kind == RosenzweigPorter;
        let needs_theta = self.kind == SpikedWishart;
        check_presence("p", self.p.is_some(), needs_p, self.kind)?;
        check_presence("lambda", self.lambda.is_some(), needs_lambda, self.kind)?;
        check_presence("theta", self.theta.is_some(), needs_theta, self.kind)?;
        if self.n < 2 {
            return Err(Error::InvalidDimension { n: self.n, min: 2 });
        }
        if let Some(p) = self.p {
            if self.n >= p {
                return Err(Error::InvalidAspectRatio { n: self.n, p });
            }
        }
        if let Some(lambda) = self.lambda {
            if !(lambda >= 0.0 && lambda.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "lambda",
                    value: lambda,
                });
            }
        }
        if let Some(theta) = self.theta {
            if !(theta >= 0.0 && theta.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "theta",
                    value: theta,
                });
            }
        }
        Ok(())
    }

    /// Canonical single-line serialization without the master seed, e.g.
    /// `kind=rp,n=100,lambda=0.5`. Keys appear in the order
    /// kind, n, p, lambda, theta; absent keys are omitted; reals use
    /// [`format_real_g17`].
    pub fn canonical_tag(&self) -> String {
        let mut tag = format!("kind={},n={}", self.kind, self.n);
        if let Some(p) = self.p {
            tag.push_str(&format!(",p={p}"));
        }
        if let Some(lambda) = self.lambda {
            tag.push_str(&format!(",lambda={}", format_real_g17(lambda)));
        }
        if let Some(theta) = self.theta {
            tag.push_str(&format!(",theta={}", format_real_g17(theta)));
        }
        tag
    }

    pub fn stream_seed(&self, index: u64) -> u64 {
        sample_seed(self.master_seed, &self.canonical_tag(), index)
    }

    /// Aspect ratio n/p for Wishart-type specs.
    pub fn gamma(&self) -> Option<f64> {
        self.p.map(|p| self.n as f64 / p as f64)
    }

    pub fn sample<T: Scalar>(&self, index: u64) -> Result<MatrixSample<T>> {
        self.validate()?;
        let seed = self.stream_seed(index);
        let (real, imag) = match self.kind {
            EnsembleKind::Goe => (generate_goe(self.n, seed)?, None),
            EnsembleKind::Gue => {
                let h = generate_gue(self.n, seed)?;
                (h.real, Some(h.imag))
            }
            EnsembleKind::Wishart => (generate_wishart(self.n, self.p.unwrap_or(0), seed)?, None),
            EnsembleKind::RosenzweigPorter => (
                generate_rp(self.n, self.lambda.unwrap_or(f64::NAN), seed)?,
                None,
            ),
            EnsembleKind::SpikedWishart => (
                generate_spiked_wishart(
                    self.n,
                    self.p.unwrap_or(0),
                    self.theta.unwrap_or(f64::NAN),
                    seed,
                )?,
                None,
            ),
        };
        Ok(MatrixSample {
            real,
            imag,
            spec: self.clone(),
            index,
        })
    }

    /// Spectra of samples `0..count`, computed in parallel. The result is in
    /// index order and independent of scheduling.
    pub fn spectra<T: Scalar>(&self, count: usize) -> Result<Vec<Spectrum<T>>> {
        self.validate()?;
        (0..count as u64)
            .into_par_iter()
            .map(|i| self.sample::<T>(i)?.spectrum())
            .collect()
    }
}

fn check_presence(name: &str, present: bool, required: bool, kind: EnsembleKind) -> Result<()> {
    match (present, required) {
        (false, true) => Err(Error::InvalidSpec(format!("{kind} requires {name}"))),
        (true, false) => Err(Error::InvalidSpec(format!(
            "{kind} does not take parameter {name}"
        ))),
        _ => Ok(()),
    }
}

/// One drawn matrix. `imag` is present only for Hermitian (GUE) samples.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSample<T> {
    pub real: DenseMatrix<T>,
    pub imag: Option<DenseMatrix<T>>,
    pub spec: EnsembleSpec,
    pub index: u64,
}

impl<T: Scalar> MatrixSample<T> {
    pub fn dim(&self) -> usize {
        self.real.dim()
    }

    pub fn spectrum(&self) -> Result<Spectrum<T>> {
        let spectrum = match &self.imag {
            Some(imag) => spectrum_hermitian(&self.real, imag)?,
            None => spectrum_symmetric(&self.real)?,
        };
        Ok(spectrum.with_source(Provenance {
            spec: self.spec.clone(),
            index: self.index,
        }))
    }
}

/// Hermitian matrix stored as real (symmetric) and imaginary (antisymmetric) parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T> {
    pub real: DenseMatrix<T>,
    pub imag: DenseMatrix<T>,
}

fn require_dim(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidDimension { n, min: 2 })
    } else {
        Ok(())
    }
}

fn goe_entries(n: usize, stream: &mut GaussianStream) -> DenseMatrix<f64> {
    let a: Vec<f64> = (0..n * n).map(|_| stream.next_gaussian()).collect();
    let scale = (2.0 * n as f64).sqrt();
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = (a[i * n + j] + a[j * n + i]) / scale;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn cast<T: Scalar>(m: &DenseMatrix<f64>) -> DenseMatrix<T> {
    DenseMatrix::from_fn(m.dim(), |i, j| T::lit(m[(i, j)]))
}

/// GOE: `(A + Aᵀ)/√(2n)` with `A` drawn row-major from stream 0.
pub fn generate_goe<T: Scalar>(n: usize, seed: u64) -> Result<DenseMatrix<T>> {
    require_dim(n)?;
    let mut stream = GaussianStream::new(seed, STREAM_MAIN);
    Ok(cast(&goe_entries(n, &mut stream)))
}

/// GUE: diagonal `x/√n` (n draws), then for each `j < k` in row-major order
/// the pair `(x, y)` giving `H_jk = (x + i y)/√(2n)`.
pub fn generate_gue<T: Scalar>(n: usize, seed: u64) -> Result<HermitianMatrix<T>> {
    require_dim(n)?;
    let mut stream = GaussianStream::new(seed, STREAM_MAIN);
    let mut real = DenseMatrix::<T>::zeros(n);
    let mut imag = DenseMatrix::<T>::zeros(n);
    let diag_scale = (n as f64).sqrt();
    for i in 0..n {
        real[(i, i)] = T::lit(stream.next_gaussian() / diag_scale);
    }
    let off_scale = (2.0 * n as f64).sqrt();
    for j in 0..n {
        for k in j + 1..n {
            let x = T::lit(stream.next_gaussian() / off_scale);
            let y = T::lit(stream.next_gaussian() / off_scale);
            real[(j, k)] = x;
            real[(k, j)] = x;
            imag[(j, k)] = y;
            imag[(k, j)] = -y;
        }
    }
    Ok(HermitianMatrix { real, imag })
}

fn wishart_from_columns<T: Scalar>(
    n: usize,
    p: usize,
    column_scale: &[f64],
    seed: u64,
) -> DenseMatrix<T> {
    let mut stream = GaussianStream::new(seed, STREAM_MAIN);
    // X is p x n, row-major.
    let mut x = vec![0.0f64; p * n];
    for r in 0..p {
        for c in 0..n {
            x[r * n + c] = stream.next_gaussian() * column_scale[c];
        }
    }
    let mut w = DenseMatrix::<T>::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for r in 0..p {
                acc += x[r * n + i] * x[r * n + j];
            }
            let v = T::lit(acc / p as f64);
            w[(i, j)] = v;
            w[(j, i)] = v;
        }
    }
    w
}

/// Wishart: `XᵀX/p` with `X ∈ ℝ^{p×n}` drawn row-major.
pub fn generate_wishart<T: Scalar>(n: usize, p: usize, seed: u64) -> Result<DenseMatrix<T>> {
    require_dim(n)?;
    if n >= p {
        return Err(Error::InvalidAspectRatio { n, p });
    }
    Ok(wishart_from_columns(n, p, &vec![1.0; n], seed))
}

/// Rosenzweig–Porter: GOE from stream 0 plus `√λ·diag(z)` with `z` from stream 1.
pub fn generate_rp<T: Scalar>(n: usize, lambda: f64, seed: u64) -> Result<DenseMatrix<T>> {
    require_dim(n)?;
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
        });
    }
    let mut main = GaussianStream::new(seed, STREAM_MAIN);
    let mut m = goe_entries(n, &mut main);
    if lambda > 0.0 {
        let mut diag = GaussianStream::new(seed, STREAM_DIAGONAL);
        let amplitude = lambda.sqrt();
        for i in 0..n {
            m[(i, i)] += amplitude * diag.next_gaussian();
        }
    }
    Ok(cast(&m))
}

/// Spiked Wishart with covariance `I + θ e₁e₁ᵀ`, realized by scaling the
/// first column of `X` by `√(1+θ)`.
pub fn generate_spiked_wishart<T: Scalar>(
    n: usize,
    p: usize,
    theta: f64,
    seed: u64,
) -> Result<DenseMatrix<T>> {
    require_dim(n)?;
    if n >= p {
        return Err(Error::InvalidAspectRatio { n, p });
    }
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
        });
    }
    let mut scale = vec![1.0; n];
    scale[0] = (1.0 + theta).sqrt();
    Ok(wishart_from_columns(n, p, &scale, seed))
}
