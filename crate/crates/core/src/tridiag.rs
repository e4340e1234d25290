//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! eigenvalues and inverse iteration for eigenvectors.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiag {
    /// `off.len()` must be `diag.len() - 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        SymTridiag { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut pivot = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / pivot };
            pivot = self.diag[i] - x - coupling;
            if pivot == 0.0 {
                pivot = -tiny;
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (zero based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> Option<f64> {
        if k >= self.len() {
            return None;
        }
        let (mut lo, mut hi) = self.bounds();
        let span = hi - lo;
        lo -= 1e-12 * span.abs() + f64::MIN_POSITIVE;
        hi += 1e-12 * span.abs() + f64::MIN_POSITIVE;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    /// Unit eigenvector for an eigenvalue estimate `lambda`, by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let (lo, hi) = self.bounds();
        let floor = f64::EPSILON * (hi.abs().max(lo.abs())).max(1.0);
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * ((i % 7) as f64)).collect();
        normalize(&mut v);
        for _ in 0..4 {
            v = self.shifted_solve(lambda, &v, floor);
            normalize(&mut v);
        }
        v
    }

    /// Solves `(T - shift·I) x = rhs` by Gaussian elimination with partial
    /// pivoting. Zero pivots are replaced by `floor`.
    fn shifted_solve(&self, shift: f64, rhs: &[f64], floor: f64) -> Vec<f64> {
        let n = self.len();
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - shift).collect();
        let mut dl: Vec<f64> = self.off.clone();
        let mut du: Vec<f64> = self.off.clone();
        let mut du2 = alloc::vec![0.0; n.saturating_sub(2)];
        let mut b = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = floor;
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                b[i + 1] -= fact * b[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let temp = d[i + 1];
                d[i + 1] = du[i] - fact * temp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du2[i];
                }
                du[i] = temp;
                let tb = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tb - fact * b[i + 1];
            }
            dl[i] = 0.0;
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = floor;
        }
        b[n - 1] /= d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
        b
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    /// Discrete Laplacian with Dirichlet ends: eigenvalues 2 - 2cos(kπ/(n+1)).
    fn laplacian(n: usize) -> SymTridiag {
        SymTridiag::new(alloc::vec![2.0; n], alloc::vec![-1.0; n - 1])
    }

    #[test]
    fn laplacian_spectrum() {
        let n = 50;
        let t = laplacian(n);
        for k in 0..n {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((t.eigenvalue(k).unwrap() - exact).abs() < 1e-13);
        }
        assert_eq!(t.count_below(-0.1), 0);
        assert_eq!(t.count_below(4.1), n);
        assert!(t.eigenvalue(n).is_none());
    }

    #[test]
    fn laplacian_eigenvectors() {
        let n = 40;
        let t = laplacian(n);
        for k in 0..3 {
            let lam = t.eigenvalue(k).unwrap();
            let v = t.eigenvector(lam);
            let s = (k + 1) as f64 * PI / (n + 1) as f64;
            let mut exact: Vec<f64> = (1..=n).map(|i| (s * i as f64).sin()).collect();
            normalize(&mut exact);
            let sign = if v[0] * exact[0] < 0.0 { -1.0 } else { 1.0 };
            let dist = v.iter().zip(&exact).map(|(a, b)| (sign * a - b).abs()).fold(0.0, f64::max);
            assert!(dist < 1e-10, "k = {k}: {dist}");
        }
    }

    #[test]
    fn pivoting_path_is_exercised() {
        // strongly off-diagonal dominant matrix
        let t = SymTridiag::new(alloc::vec![0.0, 0.0, 0.0], alloc::vec![1.0, 1.0]);
        // eigenvalues -√2, 0, √2
        let lam = t.eigenvalue(0).unwrap();
        assert!((lam + 2f64.sqrt()).abs() < 1e-14);
        let v = t.eigenvector(lam);
        let expected = [0.5, -(0.5f64.sqrt()), 0.5];
        let sign = v[0].signum();
        for (a, b) in v.iter().zip(expected) {
            assert!((sign * a - b).abs() < 1e-10);
        }
    }
}
