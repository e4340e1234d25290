//! Associated Laguerre polynomials, the Duff identity and the flat-space
//! limit of the curved wave functions.
//!
//! Laguerre polynomials follow the convention `L_0^k = 1`,
//! `L_1^k = k + 1 - x`, `(n+1) L_{n+1}^k = (2n+k+1-x) L_n^k - (n+k) L_{n-1}^k`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

use crate::atom::{factorial, is_bound, AtomParams, QuantumNumbers};
use crate::exact::{int, real, CRational};
use crate::normalization::{flat_norm, normalized_state};
use crate::poly::CPoly;
use crate::quadrature::QuadratureSpec;
use crate::{Error, Result};

/// `L_n^k(x)` by forward recurrence.
pub fn laguerre(n: u32, k: i64, x: f64) -> f64 {
    let k = k as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = k + 1.0 - x;
    for m in 1..n {
        let m = f64::from(m);
        let next = ((2.0 * m + k + 1.0 - x) * cur - (m + k) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact coefficients of `L_n^k(x)`, ascending in `x`.
pub fn laguerre_poly(n: u32, k: i64) -> Vec<BigRational> {
    let x = CPoly::z();
    let kk = int(k);
    let mut prev = CPoly::one();
    if n == 0 {
        return real_coeffs(&prev);
    }
    let mut cur = &CPoly::constant(real(&kk + int(1))) - &x;
    for m in 1..i64::from(n) {
        let lin = &CPoly::constant(real(int(2 * m + 1) + &kk)) - &x;
        let next = (&(&lin * &cur) - &prev.scale(&real(int(m) + &kk))).scale(&real(BigRational::new(
            BigInt::one(),
            BigInt::from(m + 1),
        )));
        prev = cur;
        cur = next;
    }
    real_coeffs(&cur)
}

fn real_coeffs(p: &CPoly) -> Vec<BigRational> {
    p.coeffs().iter().map(|c| c.re.clone()).collect()
}

/// Checks `x·dL_n^k/dx = n L_n^k - (n+k) L_{n-1}^k` with a finite-difference
/// derivative, to `1e-9` relative to the size of the terms.
pub fn laguerre_derivative_identity_check(n: u32, k: i64, x: f64) -> bool {
    if n == 0 {
        return false;
    }
    let h = 1e-3 * x.abs().max(1.0);
    let f = |t: f64| laguerre(n, k, t);
    let d = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
    let nf = f64::from(n);
    let a = nf * laguerre(n, k, x);
    let b = (nf + k as f64) * laguerre(n - 1, k, x);
    let scale = a.abs().max(b.abs()).max(1.0);
    (x * d - (a - b)).abs() <= 1e-9 * scale
}

/// `P(u)·u^k·e^u` with `u = 1/t`, kept with `P(0) ≠ 0` unless `P = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvExpPoly {
    p: CPoly,
    k_exp: i64,
}

impl InvExpPoly {
    pub fn new(p: CPoly, k_exp: i64) -> Self {
        let shift = p.coeffs().iter().take_while(|c| c.is_zero()).count();
        if shift == 0 || p.is_zero() {
            let k_exp = if p.is_zero() { 0 } else { k_exp };
            return InvExpPoly { p, k_exp };
        }
        let coeffs = p.coeffs()[shift..].to_vec();
        InvExpPoly {
            p: CPoly::from_coeffs(coeffs),
            k_exp: k_exp + shift as i64,
        }
    }

    /// `t^{-k} e^{1/t}`
    pub fn base(k: i64) -> Self {
        InvExpPoly::new(CPoly::one(), k)
    }

    pub fn p(&self) -> &CPoly {
        &self.p
    }

    pub fn k_exp(&self) -> i64 {
        self.k_exp
    }

    /// `d/dt[P u^k e^u] = -[uP' + kP + uP]·u^{k+1}·e^u`
    pub fn derive(&self) -> Self {
        let u = CPoly::z();
        let inner = &(&(&u * &self.p.derivative()) + &self.p.scale(&real(int(self.k_exp)))) + &(&u * &self.p);
        InvExpPoly::new(-&inner, self.k_exp + 1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let u = 1.0 / t;
        let p: f64 = self
            .p
            .to_c64()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c.re);
        p * u.powi(self.k_exp as i32) * u.exp()
    }
}

/// `dⁿ/dtⁿ [t^{-k} e^{1/t}]` by repeated exact differentiation.
pub fn duff_lhs(n: u32, k: i64) -> InvExpPoly {
    (0..n).fold(InvExpPoly::base(k), |acc, _| acc.derive())
}

/// `(-1)ⁿ n! t^{-(n+k)} e^{1/t} L_n^{k-1}(-1/t)` expanded in `u = 1/t`.
pub fn duff_rhs(n: u32, k: i64) -> InvExpPoly {
    let sign_fact = (1..=i64::from(n)).fold(BigRational::one(), |acc, j| acc * int(-j));
    let coeffs: Vec<CRational> = laguerre_poly(n, k - 1)
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let c = if j % 2 == 1 { -c } else { c };
            real(c * &sign_fact)
        })
        .collect();
    InvExpPoly::new(CPoly::from_coeffs(coeffs), i64::from(n) + k)
}

/// `(2Zr/n)^l e^{-Zr/n} L_{n-l-1}^{2l+1}(2Zr/n)`, without normalization.
pub fn flat_shape(n: u32, l: u32, charge: f64, r: f64) -> f64 {
    let rho = 2.0 * charge * r / f64::from(n);
    rho.powi(l as i32) * (-0.5 * rho).exp() * laguerre(n - l - 1, 2 * i64::from(l) + 1, rho)
}

/// Normalized flat-space hydrogen radial function, positive as `r → 0⁺`.
pub fn flat_radial(n: u32, l: u32, r: f64) -> Result<f64> {
    flat_radial_with_charge(n, l, 1.0, r)
}

pub fn flat_radial_with_charge(n: u32, l: u32, charge: f64, r: f64) -> Result<f64> {
    let qn = QuantumNumbers::new(n, l)?;
    if !(r > 0.0) {
        return Err(Error::Domain { r });
    }
    let b = flat_norm(&AtomParams::with_charge(0.0, charge)?, qn)?;
    Ok(b * flat_shape(n, l, charge, r))
}

/// `lim_{κ→0} B_{n,n_r}·(√κ)^{n-1-n_r}·(n/2)^{n+1/2-n_r} = 1/√(2n·(n-l-1)!·(n+l)!)`.
pub fn flat_prefactor_limit(n: u32, l: u32) -> f64 {
    (2.0 * f64::from(n) * factorial(n - l - 1) * factorial(n + l)).sqrt().recip()
}

/// `B_{n,n_r}·(√κ)^{n-1-n_r}·(n/2)^{n+1/2-n_r}` at the given curvature.
pub fn scaled_prefactor(params: &AtomParams, n: u32, n_r: u32, spec: QuadratureSpec) -> Result<f64> {
    let b = crate::normalization::b_recursive(params, n, n_r, spec)?;
    let nf = f64::from(n);
    let p = f64::from(n - 1 - n_r);
    Ok(b * params.sqrt_abs_kappa().powf(p) * (nf / 2.0).powf(nf + 0.5 - f64::from(n_r)))
}

/// Max over `sample_rs` of `|G_{n,l}(r) - G^{flat}_{n,l}(r)|`, both normalized
/// and positive as `r → 0⁺`. Samples outside the domain are skipped.
pub fn flat_limit_error(n: u32, l: u32, kappa: f64, sample_rs: &[f64]) -> Result<f64> {
    let params = AtomParams::new(kappa)?;
    let qn = QuantumNumbers::new(n, l)?;
    if !is_bound(&params, n) {
        return Err(Error::NoBoundState { n });
    }
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let state = normalized_state(&params, qn, QuadratureSpec::tight())?;
    let domain = params.curvature();
    let mut worst = 0.0f64;
    for &r in sample_rs.iter().filter(|&&r| domain.in_domain(r)) {
        worst = worst.max((state.evaluate(r)? - flat_radial(n, l, r)?).abs());
    }
    Ok(worst)
}

/// Default sample radii for flat-limit sweeps: `0.05, 0.10, …, 4n²`.
pub fn default_samples(n: u32) -> Vec<f64> {
    let count = 80 * n * n;
    (1..=count).map(|i| f64::from(i) * 0.05).collect()
}
