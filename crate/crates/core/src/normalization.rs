//! Ladder operators on the polynomial family, normalization constants and
//! the bound-state count in hyperbolic space.

use num_complex::Complex64;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::atom::{
    derivative_step, energy, factorial, is_bound, ln_s_kappa, AtomParams, QuantumNumbers, RadialState,
};
use crate::curvature::Geometry;
use crate::exact::{cint, crat, CRational};
use crate::poly::{one_plus_z2, CPoly};
use crate::quadrature::{integrate_decaying, QuadratureSpec};
use crate::{Error, Result};

/// Number of bound levels in hyperbolic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxPrincipal {
    Unbounded,
    /// Largest `n` with `n² < Z/√-κ`; `0` when there is none.
    Finite(u32),
}

impl MaxPrincipal {
    pub fn admits(self, n: u32) -> bool {
        match self {
            MaxPrincipal::Unbounded => n >= 1,
            MaxPrincipal::Finite(max) => n >= 1 && n <= max,
        }
    }
}

/// Largest bound principal number, decided exactly by `n⁴·(-κ) < Z²`.
pub fn max_principal_n(params: &AtomParams) -> MaxPrincipal {
    let kappa = params.kappa_exact();
    if !kappa.is_negative() {
        return MaxPrincipal::Unbounded;
    }
    let neg = -kappa.clone();
    let z2 = params.charge_exact() * params.charge_exact();
    let bound = |n: u64| {
        let n4 = BigRational::from_integer((n * n * n * n).into());
        &n4 * &neg < z2
    };
    let estimate = (params.charge() / (-params.kappa()).sqrt()).sqrt();
    let mut n = if estimate.is_finite() && estimate < 1e6 {
        estimate.floor() as u64
    } else {
        let q = (&z2 / &neg).to_integer();
        q.sqrt().sqrt().to_u64().unwrap_or(u64::from(u32::MAX))
    };
    while n > 0 && !bound(n) {
        n -= 1;
    }
    while bound(n + 1) {
        n += 1;
    }
    MaxPrincipal::Finite(u32::try_from(n).unwrap_or(u32::MAX))
}

/// `A⁺`: maps `y_{n_r}^n` to `y_{n_r+1}^n`.
pub fn a_plus(y: &CPoly, n: u32, n_r: u32, beta_r: &CRational) -> Result<CPoly> {
    if n < 2 || n_r + 2 > n {
        return Err(Error::Range { n, n_r });
    }
    Ok(derivative_step(y, i64::from(n), i64::from(n_r), beta_r))
}

/// `A⁻`: maps `y_{n_r}^n` to `y_{n_r-1}^n`.
pub fn a_minus(y: &CPoly, n: u32, n_r: u32, beta_r: &CRational) -> Result<CPoly> {
    if n_r == 0 || n_r >= n {
        return Err(Error::Range { n, n_r });
    }
    let (nn, m) = (i64::from(n), i64::from(n - n_r));
    let denom = cint(4 * nn * nn * m * m) + beta_r * beta_r;
    if denom.is_zero() {
        return Err(Error::LadderDegenerate { n, n_r });
    }
    let prefactor = cint(nn * nn * m) / denom;
    let mult = CPoly::from_coeffs(alloc::vec![beta_r / cint(nn * m), cint(2)]);
    let body = &(&mult * y) - &(&one_plus_z2() * &y.derivative()).scale(&crat(2, i64::from(n_r)));
    Ok(body.scale(&prefactor))
}

/// Coefficients `α_l`, `β_l` of the radial ladder relations for fixed `n`.
///
/// `α_l = (2/√κ)·l/(n+l)`, `β_l = (√κ/2)·n²/(1+n²(l+1)²κ)·(l+1)/(n-l-1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderCoeffs {
    pub alpha_l: Complex64,
    /// `None` at `l = n - 1`, where the chain ends.
    pub beta_l: Option<Complex64>,
}

impl LadderCoeffs {
    pub fn new(params: &AtomParams, n: u32, l: u32) -> Result<Self> {
        let kappa = params.kappa();
        if kappa == 0.0 {
            return Err(Error::FlatCurvature);
        }
        if l >= n {
            return Err(Error::QuantumNumbers { n, l });
        }
        let root = if kappa > 0.0 {
            Complex64::new(params.sqrt_abs_kappa(), 0.0)
        } else {
            Complex64::new(0.0, params.sqrt_abs_kappa())
        };
        let (nf, lf) = (f64::from(n), f64::from(l));
        Ok(LadderCoeffs {
            alpha_l: 2.0 / root * lf / (nf + lf),
            beta_l: (l + 1 < n).then(|| {
                root / 2.0 * nf * nf / (1.0 + nf * nf * (lf + 1.0).powi(2) * kappa) * (lf + 1.0) / (nf - lf - 1.0)
            }),
        })
    }
}

/// `⟨d⁺d⁻⟩` in the closed form `[n²-(l+1)²][1+n²(l+1)²κ] / (n(l+1)²)`.
pub fn expectation_dplus_dminus(n: u32, l: u32, kappa: f64) -> f64 {
    let (nf, l1) = (f64::from(n), f64::from(l) + 1.0);
    (nf * nf - l1 * l1) * (1.0 + nf * nf * l1 * l1 * kappa) / (nf * l1 * l1)
}

/// `⟨d⁺d⁻⟩` as `κ[λ_E - l(l+2)] + 1/(l+1)²`, i.e. `E - κ l(l+2) + 1/(l+1)²`.
pub fn expectation_dplus_dminus_energy_form(n: u32, l: u32, kappa: f64) -> f64 {
    let (nf, lf) = (f64::from(n), f64::from(l));
    let e = -1.0 / (nf * nf) + (nf * nf - 1.0) * kappa;
    e - kappa * lf * (lf + 2.0) + 1.0 / ((lf + 1.0) * (lf + 1.0))
}

/// Both written forms of `⟨d⁺d⁻⟩` side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationForms {
    pub closed: f64,
    pub energy_form: f64,
}

impl ExpectationForms {
    pub fn new(n: u32, l: u32, kappa: f64) -> Self {
        ExpectationForms {
            closed: expectation_dplus_dminus(n, l, kappa),
            energy_form: expectation_dplus_dminus_energy_form(n, l, kappa),
        }
    }

    pub fn agree(&self, tol: f64) -> bool {
        (self.closed - self.energy_form).abs() <= tol * self.closed.abs().max(1.0)
    }
}

fn density_rate(params: &AtomParams, n: u32) -> f64 {
    let nf = f64::from(n);
    let z = params.charge();
    if params.kappa() < 0.0 {
        2.0 * (z / nf - nf * params.sqrt_abs_kappa())
    } else {
        2.0 * z / nf
    }
}

/// `B_{n,0}` from `B⁻² = ∫ S_κ² |√κ S_κ|^{2(n-1)} e^{-2Zr/n} dr`.
pub fn b_n0(params: &AtomParams, n: u32, spec: QuadratureSpec) -> Result<f64> {
    let curv = params.curvature();
    if curv.geometry() == Geometry::Flat {
        return Err(Error::FlatCurvature);
    }
    if !is_bound(params, n) {
        return Err(Error::NoBoundState { n });
    }
    let ln_root = params.sqrt_abs_kappa().ln();
    let (nf, z) = (f64::from(n), params.charge());
    let integral = integrate_decaying(
        |r| {
            let ln_s = ln_s_kappa(curv, r);
            (2.0 * ((nf - 1.0) * (ln_s + ln_root) + ln_s) - 2.0 * z * r / nf).exp()
        },
        density_rate(params, n),
        curv.r_max(),
        spec,
    )?;
    Ok(integral.value.powf(-0.5))
}

/// Factor `B_{n,n_r}/B_{n,n_r-1}` of the recursion, `l = n - n_r - 1`.
///
/// With charge `Z` the recursion is that of hydrogen at `κ/Z²`.
pub fn recursion_factor(params: &AtomParams, n: u32, n_r: u32) -> f64 {
    let z = params.charge();
    let kappa = params.kappa() / (z * z);
    let (nf, lf) = (f64::from(n), f64::from(n - n_r - 1));
    let radicand = nf * nf / (1.0 + nf * nf * (lf + 1.0).powi(2) * kappa) * (nf + lf + 1.0) / (nf - lf - 1.0);
    params.sqrt_abs_kappa() / z / 2.0 * radicand.abs().sqrt()
}

/// `B_{n,n_r}` from `B_{n,0}` and `n_r` steps of the ladder recursion.
pub fn b_recursive(params: &AtomParams, n: u32, n_r: u32, spec: QuadratureSpec) -> Result<f64> {
    if n_r >= n {
        return Err(Error::Range { n, n_r });
    }
    if params.kappa_exact().is_zero() {
        return flat_norm(params, QuantumNumbers::from_radial(n_r, n - n_r - 1));
    }
    let base = b_n0(params, n, spec)?;
    Ok((1..=n_r).fold(base, |b, k| b * recursion_factor(params, n, k)))
}

/// Normalization of the flat Laguerre form, `(2/n²)√((n-l-1)!/(n+l)!)·Z^{3/2}`.
pub fn flat_norm(params: &AtomParams, qn: QuantumNumbers) -> Result<f64> {
    if !is_bound(params, qn.n()) {
        return Err(Error::NoBoundState { n: qn.n() });
    }
    let nf = f64::from(qn.n());
    Ok(2.0 / (nf * nf)
        * (factorial(qn.n_r()) / factorial(qn.n() + qn.l())).sqrt()
        * params.charge().powf(1.5))
}

/// `∫ f(r)·g(r)·S_κ² dr` over the radial domain for two states of one atom.
pub fn overlap(a: &RadialState, b: &RadialState, spec: QuadratureSpec) -> Result<f64> {
    let params = a.params();
    let rate = 0.5 * (a.density_decay_rate() + b.density_decay_rate());
    let mut failure = None;
    let integral = integrate_decaying(
        |r| match (a.reduced(r), b.reduced(r)) {
            (Ok(u), Ok(v)) => u * v,
            (Err(e), _) | (_, Err(e)) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        rate,
        params.curvature().r_max(),
        spec,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(integral.value),
    }
}

/// Sets `B` so that `∫ G² S_κ² dr = 1`, by quadrature.
pub fn normalize(state: &RadialState, spec: QuadratureSpec) -> Result<RadialState> {
    let bare = state.clone().with_norm(1.0);
    let norm2 = overlap(&bare, &bare, spec)?;
    Ok(bare.with_norm(norm2.powf(-0.5)))
}

/// Normalized state with `B` from the ladder recursion.
pub fn normalized_state(params: &AtomParams, qn: QuantumNumbers, spec: QuadratureSpec) -> Result<RadialState> {
    let b = b_recursive(params, qn.n(), qn.n_r(), spec)?;
    Ok(RadialState::new(params, qn)?.with_norm(b))
}

/// [`max_principal_n`] for hydrogen at curvature `kappa`.
pub fn max_principal_for(kappa: f64) -> Result<MaxPrincipal> {
    Ok(max_principal_n(&AtomParams::new(kappa)?))
}

/// `E_n` for every bound `n ≤ n_max`.
pub fn bound_energies(params: &AtomParams, n_max: u32) -> Result<alloc::vec::Vec<(u32, f64)>> {
    (1..=n_max)
        .take_while(|&n| is_bound(params, n))
        .map(|n| energy(params, n).map(|e| (n, e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{beta_r, y_recurrence};
    use crate::exact::int;
    use core::f64::consts::PI;

    #[test]
    fn bound_state_count() {
        let count = |k: f64| max_principal_for(k).unwrap();
        assert_eq!(count(-0.01), MaxPrincipal::Finite(3));
        assert_eq!(count(0.0), MaxPrincipal::Unbounded);
        assert_eq!(count(0.3), MaxPrincipal::Unbounded);
        assert_eq!(count(-1.0), MaxPrincipal::Finite(0));
        assert_eq!(count(-1.0 / 16.0), MaxPrincipal::Finite(1));
        assert_eq!(count(-1.0 / 81.0), MaxPrincipal::Finite(2));
        assert_eq!(count(-1e-12), MaxPrincipal::Finite(999));
        let he = AtomParams::exact(crate::exact::rat(-1, 100), int(2));
        assert_eq!(max_principal_n(&he), MaxPrincipal::Finite(4));
    }

    #[test]
    fn ladder_examples() {
        let beta = cint(2);
        for n in 2..6 {
            let y0 = CPoly::one();
            let y1 = a_plus(&y0, n, 0, &beta).unwrap();
            assert_eq!(y1, y_recurrence(n, 1, &beta).unwrap());
            assert_eq!(a_minus(&y1, n, 1, &beta).unwrap(), y0);
        }
        assert_eq!(a_plus(&CPoly::one(), 3, 2, &beta), Err(Error::Range { n: 3, n_r: 2 }));
        assert_eq!(a_minus(&CPoly::one(), 3, 0, &beta), Err(Error::Range { n: 3, n_r: 0 }));
        // κ = -1/4, n = 2: β_R² = -16 = -4n²(n-n_r)²
        let beta = crate::exact::imag(int(-4));
        let y1 = y_recurrence(2, 1, &beta).unwrap();
        assert_eq!(a_minus(&y1, 2, 1, &beta), Err(Error::LadderDegenerate { n: 2, n_r: 1 }));
    }

    #[test]
    fn ladder_chain_up_and_down() {
        let beta = beta_r(&AtomParams::rational(-1, 16)).unwrap();
        let n = 6;
        let mut y = CPoly::one();
        for n_r in 0..n - 1 {
            let up = a_plus(&y, n, n_r, &beta).unwrap();
            assert_eq!(up, y_recurrence(n, n_r + 1, &beta).unwrap());
            assert_eq!(a_minus(&up, n, n_r + 1, &beta).unwrap(), y);
            y = up;
        }
        for n_r in (1..n).rev() {
            y = a_minus(&y, n, n_r, &beta).unwrap();
        }
        assert_eq!(y, CPoly::one());
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expectation_dplus_dminus(3, 2, 0.1), 0.0);
        assert_eq!(expectation_dplus_dminus(2, 0, 0.0), 1.5);
        assert!((expectation_dplus_dminus(2, 0, -0.01) - 1.44).abs() < 1e-14);
        // the energy form is smaller by exactly a factor n
        for n in 1..6u32 {
            for l in 0..n {
                let f = ExpectationForms::new(n, l, 0.01);
                assert!((f.closed - f64::from(n) * f.energy_form).abs() < 1e-12);
            }
        }
        assert!(!ExpectationForms::new(2, 0, 0.0).agree(1e-10));
        assert!(ExpectationForms::new(1, 0, 0.3).agree(1e-10));
    }

    #[test]
    fn ladder_coefficient_ratio_matches_recursion() {
        for &kappa in &[0.5, -1.0 / 256.0] {
            let p = AtomParams::new(kappa).unwrap();
            let n = 3;
            for n_r in 1..n {
                let l = n - n_r - 1;
                let c = LadderCoeffs::new(&p, n, l).unwrap();
                let next = LadderCoeffs::new(&p, n, l + 1).unwrap();
                let ratio = c.beta_l.unwrap() / next.alpha_l;
                assert!(next.beta_l.is_none() || l + 2 < n);
                assert!(ratio.im.abs() < 1e-15 * ratio.norm());
                // real and negative in hyperbolic space, so only the modulus enters
                assert_eq!(ratio.re < 0.0, kappa < 0.0);
                let factor = recursion_factor(&p, n, n_r);
                assert!((ratio.norm().sqrt() - factor).abs() < 1e-13 * factor);
            }
        }
    }

    #[test]
    fn ground_state_normalization_on_unit_sphere() {
        let p = AtomParams::new(1.0).unwrap();
        let b = b_n0(&p, 1, QuadratureSpec::tight()).unwrap();
        let exact = (8.0 / (1.0 - (-2.0 * PI).exp())).sqrt();
        assert!((b - exact).abs() < 1e-12 * exact);
        assert_eq!(
            b_n0(&AtomParams::new(-0.01).unwrap(), 4, QuadratureSpec::default()),
            Err(Error::NoBoundState { n: 4 })
        );
    }

    #[test]
    fn recursion_matches_quadrature() {
        let spec = QuadratureSpec::tight();
        for &kappa in &[1.0, 0.25, -1.0 / 64.0, -0.0025, 0.0] {
            let p = AtomParams::new(kappa).unwrap();
            for n in 1..=4 {
                if !is_bound(&p, n) {
                    continue;
                }
                for n_r in 0..n {
                    let qn = QuantumNumbers::from_radial(n_r, n - n_r - 1);
                    let rec = b_recursive(&p, n, n_r, spec).unwrap();
                    let quad = normalize(&RadialState::new(&p, qn).unwrap(), spec).unwrap().b();
                    assert!((rec - quad).abs() <= 1e-9 * quad, "κ={kappa} n={n} n_r={n_r}: {rec} vs {quad}");
                }
            }
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        let p = AtomParams::new(0.25).unwrap();
        let s = RadialState::new(&p, QuantumNumbers::new(3, 1).unwrap()).unwrap();
        let once = normalize(&s, QuadratureSpec::default()).unwrap();
        let twice = normalize(&once, QuadratureSpec::default()).unwrap();
        assert!((once.b() - twice.b()).abs() < 1e-12 * once.b());
        let total = overlap(&once, &once, QuadratureSpec::default()).unwrap();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn flat_limit_of_ground_integral() {
        // B_{n,0}^{-2} → κ^{n-1} (n/2)^{2n+1} (2n)!
        let kappa = 1e-8;
        let p = AtomParams::new(kappa).unwrap();
        let b = b_n0(&p, 2, QuadratureSpec::tight()).unwrap();
        let limit = kappa * 24.0;
        assert!((b.powi(-2) - limit).abs() < 1e-6 * limit);
    }
}
