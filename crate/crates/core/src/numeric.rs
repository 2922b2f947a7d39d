//! Small numerical helpers shared across modules: compensated summation,
//! moment estimators and Gauss–Legendre rules.

use crate::scalar::Scalar;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> NeumaierSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Scalar> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<T: Scalar>(xs: &[T]) -> T {
    xs.iter().copied().collect::<NeumaierSum<T>>().total()
}

/// Arithmetic mean; NaN for an empty slice.
pub fn mean<T: Scalar>(xs: &[T]) -> T {
    if xs.is_empty() {
        return T::nan();
    }
    compensated_sum(xs) / T::from_usize_lossy(xs.len())
}

/// Unbiased (n - 1) sample variance; NaN for fewer than two values.
pub fn sample_variance<T: Scalar>(xs: &[T]) -> T {
    if xs.len() < 2 {
        return T::nan();
    }
    let m = mean(xs);
    let ss: NeumaierSum<T> = xs.iter().map(|&x| (x - m) * (x - m)).collect();
    ss.total() / T::from_usize_lossy(xs.len() - 1)
}

pub fn sample_std<T: Scalar>(xs: &[T]) -> T {
    sample_variance(xs).sqrt()
}

/// Population (divide by n) variance.
pub fn population_variance<T: Scalar>(xs: &[T]) -> T {
    if xs.is_empty() {
        return T::nan();
    }
    let m = mean(xs);
    let ss: NeumaierSum<T> = xs.iter().map(|&x| (x - m) * (x - m)).collect();
    ss.total() / T::from_usize_lossy(xs.len())
}

/// Coefficient of variation, sample std over mean.
pub fn coefficient_of_variation<T: Scalar>(xs: &[T]) -> T {
    sample_std(xs) / mean(xs)
}

/// Standard error of the mean.
pub fn standard_error<T: Scalar>(xs: &[T]) -> T {
    sample_std(xs) / T::from_usize_lossy(xs.len()).sqrt()
}

/// Gauss–Legendre nodes and weights on [-1, 1].
///
/// Roots of P_order are found by Newton iteration in `f64` from the
/// Tricomi initial guess and then converted to `T`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Scalar> GaussLegendre<T> {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let m = order;
        let mut nodes = vec![0.0f64; m];
        let mut weights = vec![0.0f64; m];
        let half = m.div_ceil(2);
        for i in 0..half {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut deriv = 0.0;
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(m, x);
                deriv = dp;
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    deriv = legendre_with_derivative(m, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        Self {
            nodes: nodes.into_iter().map(T::lit).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
        }
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        let acc: NeumaierSum<T> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .collect();
        acc.total() * half
    }
}

fn legendre_with_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = order as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(&xs), 2.0);
    }

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        for order in [1, 2, 5, 20, 200] {
            let gl = GaussLegendre::<f64>::new(order);
            let s: f64 = gl.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "order {order}: {s}");
        }
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        // An m-point rule integrates degree 2m - 1 exactly.
        let gl = GaussLegendre::<f64>::new(5);
        let got = gl.integrate(0.0, 2.0, |x| x.powi(9));
        assert!((got - 2f64.powi(10) / 10.0).abs() < 1e-10);
    }

    #[test]
    fn moments() {
        let xs = [1.0f64, 2.0, 3.0, 4.0];
        assert_eq!(mean(&xs), 2.5);
        assert!((sample_variance(&xs) - 5.0 / 3.0).abs() < 1e-15);
        assert!((population_variance(&xs) - 1.25).abs() < 1e-15);
    }
}
