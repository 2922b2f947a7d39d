//! Dense symmetric and Hermitian eigenvalue solvers.
//!
//! Householder reduction to tridiagonal form followed by implicit-shift QL.
//! Hermitian matrices go through the real symmetric embedding
//! `[[X, -Y], [Y, X]]`, whose spectrum is each eigenvalue of `X + iY`
//! doubled; every second value of the sorted embedding spectrum is kept.

use crate::ensembles::EnsembleSpec;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Maximum implicit-shift sweeps per unit of dimension.
const SWEEPS_PER_DIM: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub spec: EnsembleSpec,
    pub index: u64,
}

/// Ascending eigenvalues of one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
    source: Option<Provenance>,
}

impl<T: Scalar> Spectrum<T> {
    /// Wraps already-sorted finite values; rejects unsorted or non-finite input.
    pub fn from_sorted(values: Vec<T>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        if let Some(index) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::NotSorted { index: index + 1 });
        }
        Ok(Self {
            values,
            source: None,
        })
    }

    pub fn from_unsorted(mut values: Vec<T>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Ok(Self {
            values,
            source: None,
        })
    }

    pub fn with_source(mut self, source: Provenance) -> Self {
        self.source = Some(source);
        self
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn source(&self) -> Option<&Provenance> {
        self.source.as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<T> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<T> {
        self.values.last().copied()
    }

    /// Applies `x -> a x + b` (with `a > 0` the order is preserved).
    pub fn affine(&self, a: T, b: T) -> Result<Self> {
        Self::from_unsorted(self.values.iter().map(|&x| a * x + b).collect())
    }
}

pub fn spectrum_symmetric<T: Scalar>(m: &DenseMatrix<T>) -> Result<Spectrum<T>> {
    let mut values = symmetric_eigenvalues(m)?;
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(Spectrum {
        values,
        source: None,
    })
}

pub fn spectrum_hermitian<T: Scalar>(
    real: &DenseMatrix<T>,
    imag: &DenseMatrix<T>,
) -> Result<Spectrum<T>> {
    let n = real.dim();
    if imag.dim() != n {
        return Err(Error::NotSquare {
            len: imag.as_slice().len(),
            n,
        });
    }
    let embedded = DenseMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => real[(i, j)],
        (true, false) => -imag[(i, j - n)],
        (false, true) => imag[(i - n, j)],
        (false, false) => real[(i - n, j - n)],
    });
    let doubled = spectrum_symmetric(&embedded)?;
    let values = doubled.values.into_iter().step_by(2).collect();
    Ok(Spectrum {
        values,
        source: None,
    })
}

/// Unsorted eigenvalues of a real symmetric matrix. Only the lower
/// triangle is read.
pub fn symmetric_eigenvalues<T: Scalar>(m: &DenseMatrix<T>) -> Result<Vec<T>> {
    if !m.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = rows(m);
    let (mut d, mut e) = tridiagonalize(&mut a, false);
    implicit_ql(&mut d, &mut e, None)?;
    Ok(d)
}

/// Eigenvalues (ascending) with orthonormal eigenvectors as matrix columns.
/// Intended for validation; production paths use [`spectrum_symmetric`].
pub fn symmetric_eigen<T: Scalar>(m: &DenseMatrix<T>) -> Result<(Vec<T>, DenseMatrix<T>)> {
    if !m.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let n = m.dim();
    let mut a = rows(m);
    let (mut d, mut e) = tridiagonalize(&mut a, true);
    implicit_ql(&mut d, &mut e, Some(&mut a))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = DenseMatrix::from_fn(n, |i, j| a[i][order[j]]);
    Ok((values, vectors))
}

fn rows<T: Scalar>(m: &DenseMatrix<T>) -> Vec<Vec<T>> {
    (0..m.dim()).map(|i| m.row(i).to_vec()).collect()
}

/// Householder reduction of the symmetric matrix `a` (lower triangle used)
/// to tridiagonal form. Returns the diagonal and the subdiagonal, with the
/// subdiagonal stored in `e[1..]` and `e[0] = 0`. When `vectors` is set,
/// `a` is overwritten by the accumulated orthogonal transformation.
fn tridiagonalize<T: Scalar>(a: &mut [Vec<T>], vectors: bool) -> (Vec<T>, Vec<T>) {
    let n = a.len();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = T::zero();
        if l > 0 {
            let scale = (0..=l).fold(T::zero(), |s, k| s + a[i][k].abs());
            if scale == T::zero() {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f = T::zero();
                for j in 0..=l {
                    if vectors {
                        a[j][i] = a[i][j] / h;
                    }
                    let mut g = T::zero();
                    for k in 0..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i][j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let delta = f * e[k] + g * a[i][k];
                        a[j][k] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    d[0] = T::zero();
    e[0] = T::zero();
    for i in 0..n {
        if vectors {
            if d[i] != T::zero() {
                for j in 0..i {
                    let mut g = T::zero();
                    for k in 0..i {
                        g += a[i][k] * a[k][j];
                    }
                    for k in 0..i {
                        let delta = g * a[k][i];
                        a[k][j] -= delta;
                    }
                }
            }
            d[i] = a[i][i];
            a[i][i] = T::one();
            for j in 0..i {
                a[j][i] = T::zero();
                a[i][j] = T::zero();
            }
        } else {
            d[i] = a[i][i];
        }
    }
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `d` is overwritten
/// by the eigenvalues; `z`, if given, is rotated into the eigenvectors.
fn implicit_ql<T: Scalar>(d: &mut [T], e: &mut [T], mut z: Option<&mut [Vec<T>]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();
    let budget = SWEEPS_PER_DIM * n;
    let mut sweeps = 0usize;
    let eps = T::epsilon();
    let two = T::lit(2.0);
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > budget {
                return Err(Error::NoConvergence { sweeps: budget });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in z.iter_mut() {
                        let f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
