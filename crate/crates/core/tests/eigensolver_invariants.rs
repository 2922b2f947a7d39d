use spectpd::eigensolve::{spectrum_hermitian, spectrum_symmetric};
use spectpd::ensembles::{EnsembleSpec, GaussianStream};
use spectpd::matrix::DenseMatrix;

fn random_orthogonal(n: usize, g: &mut GaussianStream) -> DenseMatrix<f64> {
    // Modified Gram–Schmidt on Gaussian columns.
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| g.next_gaussian()).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let dot: f64 = (0..n).map(|i| cols[j][i] * cols[k][i]).sum();
            let (done, rest) = cols.split_at_mut(j);
            for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                *x -= dot * q;
            }
        }
        let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|x| *x /= norm);
    }
    DenseMatrix::from_fn(n, |i, j| cols[j][i])
}

#[test]
fn trace_is_conserved() {
    for n in [10usize, 100] {
        for (kind, spec) in [
            ("goe", EnsembleSpec::goe(n, 1)),
            ("wishart", EnsembleSpec::wishart(n, 2 * n, 1)),
        ] {
            for i in 0..500u64 {
                let m = spec.sample::<f64>(i).unwrap().real;
                let s = spectrum_symmetric(&m).unwrap();
                let sum: f64 = s.values().iter().sum();
                let tol = 1e-10 * n as f64 * m.max_abs();
                assert!((sum - m.trace()).abs() <= tol, "{kind} n={n} i={i}");
            }
        }
    }
}

#[test]
fn hermitian_trace_is_conserved() {
    for n in [10usize, 100] {
        let spec = EnsembleSpec::gue(n, 2);
        for i in 0..200u64 {
            let h = spec.sample::<f64>(i).unwrap();
            let s = h.spectrum().unwrap();
            let sum: f64 = s.values().iter().sum();
            let tol = 1e-10 * n as f64 * h.real.max_abs().max(h.imag.as_ref().unwrap().max_abs());
            assert!((sum - h.real.trace()).abs() <= tol);
        }
    }
}

#[test]
fn orthogonal_similarity_invariance() {
    let n = 20;
    let mut g = GaussianStream::new(31, 0);
    let spec = EnsembleSpec::goe(n, 4);
    for i in 0..100u64 {
        let m = spec.sample::<f64>(i).unwrap().real;
        let q = random_orthogonal(n, &mut g);
        let rotated = q.transpose().matmul(&m).matmul(&q);
        // Re-symmetrize: the product is symmetric only up to rounding.
        let rotated = DenseMatrix::from_fn(n, |a, b| 0.5 * (rotated[(a, b)] + rotated[(b, a)]));
        let s1 = spectrum_symmetric(&m).unwrap();
        let s2 = spectrum_symmetric(&rotated).unwrap();
        for (x, y) in s1.values().iter().zip(s2.values()) {
            assert!((x - y).abs() < 1e-9, "trial {i}: {x} vs {y}");
        }
    }
}

#[test]
fn negation_reverses_spectrum() {
    let spec = EnsembleSpec::goe(50, 8);
    for i in 0..50u64 {
        let m = spec.sample::<f64>(i).unwrap().real;
        let s = spectrum_symmetric(&m).unwrap();
        let neg = spectrum_symmetric(&m.scaled(-1.0)).unwrap();
        for (x, y) in s.values().iter().zip(neg.values().iter().rev()) {
            assert!((x + y).abs() < 1e-10);
        }
    }
}

#[test]
fn hermitian_real_case_matches_symmetric_solver() {
    let spec = EnsembleSpec::goe(40, 3);
    for i in 0..20u64 {
        let m = spec.sample::<f64>(i).unwrap().real;
        let a = spectrum_symmetric(&m).unwrap();
        let b = spectrum_hermitian(&m, &DenseMatrix::zeros(40)).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
