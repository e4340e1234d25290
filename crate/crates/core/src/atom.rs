//! Hydrogen-like atom on a space of constant curvature: spectrum, polynomial
//! families `y_{n_r}^n`, gauge function and radial wave functions.
//!
//! With `z = 1/(√κ T_κ(r))` the radial equation becomes generalized
//! hypergeometric with `σ = 1 + z²`, `π₁ = 0` and
//! `σ₁ = λ_E + β_R z - l(l+1)(1+z²)`, where `λ_E = E/κ` and `β_R = 2Z/√κ`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{Signed, Zero};

use crate::curvature::{c_kappa, s_kappa, Curvature, Geometry};
use crate::exact::{
    approx_rational, cint, i_pow, imag, int, real, sqrt_rational, to_c64, to_f64,
    CRational,
};
use crate::flat;
use crate::normalization::{max_principal_n, MaxPrincipal};
use crate::nu::{enumerate_branches, select_physical, GhtProblem, NuBranch};
use crate::poly::{complex_atan, horner, one_plus_z2, CPoly};
use crate::{Error, Result};

/// Principal, orbital and radial quantum numbers with `n = n_r + l + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 || l >= n {
            return Err(Error::QuantumNumbers { n, l });
        }
        Ok(QuantumNumbers { n, l })
    }

    pub fn from_radial(n_r: u32, l: u32) -> Self {
        QuantumNumbers { n: n_r + l + 1, l }
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn l(self) -> u32 {
        self.l
    }

    pub fn n_r(self) -> u32 {
        self.n - self.l - 1
    }
}

/// Curvature `κ a_B²` and nuclear charge `Z`, held exactly.
///
/// `√|κ|` is exact whenever `|κ|` is the square of a rational; otherwise it is
/// the simplest rational rounding to `sqrt(|κ|)` in `f64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomParams {
    kappa: BigRational,
    charge: BigRational,
    sqrt_abs_kappa: BigRational,
    exact_root: bool,
}

impl AtomParams {
    /// Hydrogen (`Z = 1`) at curvature `kappa`.
    pub fn new(kappa: f64) -> Result<Self> {
        Self::with_charge(kappa, 1.0)
    }

    pub fn with_charge(kappa: f64, charge: f64) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(Error::Curvature(kappa));
        }
        if !(charge.is_finite() && charge > 0.0) {
            return Err(Error::Charge(charge));
        }
        Ok(Self::exact(approx_rational(kappa), approx_rational(charge)))
    }

    pub fn exact(kappa: BigRational, charge: BigRational) -> Self {
        let abs = kappa.abs();
        let (sqrt_abs_kappa, exact_root) = match sqrt_rational(&abs) {
            Some(root) => (root, true),
            None => (approx_rational(to_f64(&abs).sqrt()), false),
        };
        AtomParams {
            kappa,
            charge,
            sqrt_abs_kappa,
            exact_root,
        }
    }

    /// Hydrogen at an exact rational curvature `num/den`.
    pub fn rational(num: i64, den: i64) -> Self {
        Self::exact(crate::exact::rat(num, den), int(1))
    }

    pub fn kappa_exact(&self) -> &BigRational {
        &self.kappa
    }

    pub fn kappa(&self) -> f64 {
        to_f64(&self.kappa)
    }

    pub fn curvature(&self) -> Curvature {
        Curvature::new(self.kappa()).unwrap_or(Curvature::FLAT)
    }

    pub fn charge_exact(&self) -> &BigRational {
        &self.charge
    }

    pub fn charge(&self) -> f64 {
        to_f64(&self.charge)
    }

    pub fn has_exact_root(&self) -> bool {
        self.exact_root
    }

    /// `√|κ|` in floating point.
    pub fn sqrt_abs_kappa(&self) -> f64 {
        if self.exact_root {
            to_f64(&self.sqrt_abs_kappa)
        } else {
            self.kappa().abs().sqrt()
        }
    }

    /// Principal `√κ`: real for `κ > 0`, `i√|κ|` for `κ < 0`, `None` when flat.
    pub fn sqrt_kappa(&self) -> Option<CRational> {
        if self.kappa.is_zero() {
            None
        } else if self.kappa.is_positive() {
            Some(real(self.sqrt_abs_kappa.clone()))
        } else {
            Some(imag(self.sqrt_abs_kappa.clone()))
        }
    }

    fn sqrt_kappa_c64(&self) -> Complex64 {
        let s = self.sqrt_abs_kappa();
        if self.kappa.is_positive() {
            Complex64::new(s, 0.0)
        } else {
            Complex64::new(0.0, s)
        }
    }
}

/// `β_R = 2Z/√κ`: real for the sphere, negative imaginary for hyperbolic space.
pub fn beta_r(params: &AtomParams) -> Result<CRational> {
    let root = params.sqrt_kappa().ok_or(Error::FlatCurvature)?;
    Ok(real(&params.charge * int(2)) / root)
}

pub fn is_bound(params: &AtomParams, n: u32) -> bool {
    match max_principal_n(params) {
        MaxPrincipal::Unbounded => n >= 1,
        MaxPrincipal::Finite(max) => n >= 1 && n <= max,
    }
}

/// `E_n = -Z²/n² + (n² - 1) κ` in Rydberg, exactly.
pub fn energy_exact(params: &AtomParams, n: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::QuantumNumbers { n, l: 0 });
    }
    if !is_bound(params, n) {
        return Err(Error::NoBoundState { n });
    }
    let n2 = int(i64::from(n) * i64::from(n));
    Ok(-(&params.charge * &params.charge) / &n2 + (n2 - int(1)) * &params.kappa)
}

pub fn energy(params: &AtomParams, n: u32) -> Result<f64> {
    energy_exact(params, n).map(|e| to_f64(&e))
}

/// Degeneracy of level `n` (all `l < n`, all `m`).
pub fn degeneracy(n: u32) -> u64 {
    u64::from(n) * u64::from(n)
}

/// `z = 1/(√κ T_κ(r))`: `cot(√κ r)` on the sphere, `-i coth(√-κ r)` in hyperbolic space.
pub fn z_of_r(params: &AtomParams, r: f64) -> Result<Complex64> {
    let curv = params.curvature();
    if curv.geometry() == Geometry::Flat {
        return Err(Error::FlatCurvature);
    }
    if !curv.in_domain(r) {
        return Err(Error::Domain { r });
    }
    let ratio = c_kappa(curv, r) / s_kappa(curv, r);
    let root = params.sqrt_kappa_c64();
    Ok(if curv.geometry() == Geometry::Sphere {
        Complex64::new(ratio / root.re, 0.0)
    } else {
        Complex64::new(0.0, -ratio / root.im)
    })
}

/// The atom's `(σ, π₁, σ₁)` at energy `E` (Rydberg) and orbital number `l`.
pub fn ght_problem(params: &AtomParams, energy: &BigRational, l: u32) -> Result<GhtProblem> {
    if params.kappa.is_zero() {
        return Err(Error::FlatCurvature);
    }
    let lambda_e = real(energy / &params.kappa);
    let beta = beta_r(params)?;
    ght_problem_from_lambda(lambda_e, beta, l)
}

fn ght_problem_from_lambda(lambda_e: CRational, beta: CRational, l: u32) -> Result<GhtProblem> {
    let ll = cint(i64::from(l) * (i64::from(l) + 1));
    let sigma1 = &CPoly::from_coeffs(alloc::vec![lambda_e, beta]) - &one_plus_z2().scale(&ll);
    GhtProblem::new(one_plus_z2(), CPoly::zero(), sigma1)
}

/// Output of the quantization step for one `(n_r, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumDerivation {
    /// Root `√x = n_r + l + 1` of `x - (2n_r+1)√x + n_r(n_r+1) - l(l+1) = 0`.
    pub sqrt_x: BigRational,
    /// The other root, `n_r - l`, kept for diagnostics.
    pub rejected_sqrt_x: BigRational,
    /// `λ_E = x - 1 - β_R²/(4x)`.
    pub lambda_e: CRational,
    /// `κ λ_E`, the energy in Rydberg.
    pub energy: CRational,
}

/// Solves the quantization condition for `λ_E`.
///
/// Closing `k = λ - π'` with `λ = λ_{n_r}`, `π' = 1 - √x` and
/// `k = x - 1 - l(l+1)` gives a quadratic in `√x`; its larger root is the one
/// with the correct flat limit.
pub fn derive_spectrum(params: &AtomParams, qn: QuantumNumbers) -> Result<SpectrumDerivation> {
    let beta = beta_r(params)?;
    let n_r = int(i64::from(qn.n_r()));
    let l = int(i64::from(qn.l()));
    let b = -(int(2) * &n_r + int(1));
    let c = &n_r * (&n_r + int(1)) - &l * (&l + int(1));
    let disc = &b * &b - int(4) * &c;
    let root = sqrt_rational(&disc).ok_or(Error::NoBranch)?;
    let hi = (-b.clone() + &root) / int(2);
    let lo = (-b - root) / int(2);
    let x = real(&hi * &hi);
    let lambda_e = &x - cint(1) - &beta * &beta / (cint(4) * &x);
    let energy = &lambda_e * real(params.kappa.clone());
    Ok(SpectrumDerivation {
        sqrt_x: hi,
        rejected_sqrt_x: lo,
        lambda_e,
        energy,
    })
}

/// The reduction branch with `π' = 1 - n`, at the derived `λ_E`.
pub fn physical_branch(params: &AtomParams, qn: QuantumNumbers) -> Result<(GhtProblem, NuBranch)> {
    let derived = derive_spectrum(params, qn)?;
    let problem = ght_problem_from_lambda(derived.lambda_e, beta_r(params)?, qn.l())?;
    let slope = real(int(1) - derived.sqrt_x);
    let branch = select_physical(&enumerate_branches(&problem)?, |b| b.pi_slope() == slope)?;
    Ok((problem, branch))
}

fn check_range(n: u32, n_r: u32) -> Result<()> {
    if n == 0 || n_r >= n {
        return Err(Error::Range { n, n_r });
    }
    Ok(())
}

/// `y_1^n = 2(1-n) z + β_R/n`
fn y_first(n: i64, beta: &CRational) -> CPoly {
    CPoly::from_coeffs(alloc::vec![beta / cint(n), cint(2 * (1 - n))])
}

/// `y_{n_r}^n` from the three-term recurrence seeded by `y_0 = 1` and `y_1`.
pub fn y_recurrence(n: u32, n_r: u32, beta: &CRational) -> Result<CPoly> {
    check_range(n, n_r)?;
    let n = i64::from(n);
    let mut prev = CPoly::one();
    if n_r == 0 {
        return Ok(prev);
    }
    let mut cur = y_first(n, beta);
    let beta2 = beta * beta;
    for k in 2..=i64::from(n_r) {
        let lead = crate::exact::crat(2 * n + 1 - 2 * k, 2 * n - k);
        let first = CPoly::from_coeffs(alloc::vec![beta / cint(n + 1 - k), cint(-2 * (n - k))]);
        let tail = crate::exact::crat((k - 1) * (n - k), 2 * n - k)
            * (cint(4 * (n + 1 - k)) + &beta2 / cint(n * n * (n + 1 - k)));
        let next = &(&first * &cur).scale(&lead) - &prev.scale(&tail);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// One raising step `y_{j} → y_{j+1}` of the derivative recurrence.
pub(crate) fn derivative_step(y: &CPoly, n: i64, j: i64, beta: &CRational) -> CPoly {
    let mult = CPoly::from_coeffs(alloc::vec![beta / cint(n), cint(2 * (1 - n + j))]);
    let coef = crate::exact::crat(2 * (1 - n + j), 2 * n - j - 1);
    &(&mult * y) - &(&one_plus_z2() * &y.derivative()).scale(&coef)
}

/// `y_{n_r}^n` from the recurrence involving `d/dz`.
pub fn y_derivative_recurrence(n: u32, n_r: u32, beta: &CRational) -> Result<CPoly> {
    check_range(n, n_r)?;
    let n = i64::from(n);
    Ok((0..i64::from(n_r)).fold(CPoly::one(), |y, j| derivative_step(&y, n, j, beta)))
}

/// `y_{n_r}^n(z) = (-i)^{n_r} 2^{n_r} n_r! P_{n_r}^{(α,β)}(iz)` with
/// `α = -n + iβ_R/(2n)`, `β = -n - iβ_R/(2n)`, built from the Jacobi
/// three-term recurrence in floating point. Coefficients ascend in `z`.
pub fn jacobi_connection(n: u32, n_r: u32, params: &AtomParams) -> Result<Vec<Complex64>> {
    check_range(n, n_r)?;
    let beta_r = to_c64(&beta_r(params)?);
    let nf = f64::from(n);
    let shift = Complex64::i() * beta_r / (2.0 * nf);
    let a = -nf + shift;
    let b = -nf - shift;
    let ab = a + b;
    let mut prev: Vec<Complex64> = Vec::new();
    let mut cur: Vec<Complex64> = alloc::vec![Complex64::new(1.0, 0.0)];
    for m in 0..n_r {
        let m = f64::from(m);
        let den = 2.0 * (m + 1.0) * (m + ab + 1.0);
        let slope = (2.0 * m + ab + 1.0) * (2.0 * m + ab + 2.0) / den;
        let offset = (a * a - b * b) * (2.0 * m + ab + 1.0) / (den * (2.0 * m + ab));
        let mut next = alloc::vec![Complex64::new(0.0, 0.0); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] += offset * c;
            next[i + 1] += slope * c;
        }
        if m > 0.0 {
            let back = (m + a) * (m + b) * (2.0 * m + ab + 2.0)
                / ((m + 1.0) * (m + ab + 1.0) * (2.0 * m + ab));
            for (i, c) in prev.iter().enumerate() {
                next[i] -= back * c;
            }
        }
        prev = cur;
        cur = next;
    }
    let mut scale = Complex64::new(1.0, 0.0);
    for k in 1..=n_r {
        scale *= Complex64::new(0.0, -2.0 * f64::from(k));
    }
    let mut i_power = Complex64::new(1.0, 0.0);
    Ok(cur
        .into_iter()
        .map(|c| {
            let v = c * i_power * scale;
            i_power *= Complex64::i();
            v
        })
        .collect())
}

/// Gauge function `φ = -(n-1)/2 · ln(1+z²) + β_R/(2n) · arctan z`.
pub fn gauge_phi(n: u32, beta: Complex64, z: Complex64) -> Result<Complex64> {
    let w = Complex64::new(1.0, 0.0) + z * z;
    if w.norm() == 0.0 {
        return Err(Error::BranchPoint);
    }
    let nf = f64::from(n);
    Ok(-0.5 * (nf - 1.0) * w.ln() + beta / (2.0 * nf) * complex_atan(z)?)
}

/// `ln S_κ(r)` for `r` in the open domain.
pub(crate) fn ln_s_kappa(curv: Curvature, r: f64) -> f64 {
    match curv.geometry() {
        Geometry::Hyperbolic => {
            let s = (-curv.value()).sqrt();
            let x = s * r;
            let ln_sinh = if x < 1.0 {
                x.sinh().ln()
            } else {
                x + (-(-2.0 * x).exp()).ln_1p() - core::f64::consts::LN_2
            };
            ln_sinh - s.ln()
        }
        _ => s_kappa(curv, r).ln(),
    }
}

fn cpowi(z: Complex64, e: u32) -> Complex64 {
    (0..e).fold(Complex64::new(1.0, 0.0), |acc, _| acc * z)
}

/// A bound state `G_{n,l}`; immutable once built.
///
/// For `κ ≠ 0`
/// `G = B·s·Re(ω·[√κ S_κ]^{n-1} e^{-Zr/n} y_{n_r}^n(z))`, where the unit phase
/// `ω` makes the hyperbolic product real and the sign `s` makes `G > 0` as
/// `r → 0⁺`. The constant `e^{π Z/(2n√κ)}` of the gauge function sits in `B`.
/// The flat case uses the Laguerre form directly.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    qn: QuantumNumbers,
    params: AtomParams,
    beta_r: Option<CRational>,
    y: CPoly,
    y_c64: Vec<Complex64>,
    phase: Complex64,
    orientation: f64,
    b_norm: Option<f64>,
}

impl RadialState {
    pub fn new(params: &AtomParams, qn: QuantumNumbers) -> Result<Self> {
        if !is_bound(params, qn.n()) {
            return Err(Error::NoBoundState { n: qn.n() });
        }
        let mut state = RadialState {
            qn,
            params: params.clone(),
            beta_r: None,
            y: CPoly::one(),
            y_c64: alloc::vec![Complex64::new(1.0, 0.0)],
            phase: Complex64::new(1.0, 0.0),
            orientation: 1.0,
            b_norm: None,
        };
        if params.kappa.is_zero() {
            return Ok(state);
        }
        let beta = beta_r(params)?;
        let y = y_recurrence(qn.n(), qn.n_r(), &beta)?;
        let phase = if params.kappa.is_negative() {
            &i_pow(-(i64::from(qn.n()) - 1)) * &i_pow(i64::from(qn.n_r()))
        } else {
            cint(1)
        };
        // G ~ ω · lead(y) · (√κ)^l · r^l as r → 0⁺
        let root = params.sqrt_kappa().ok_or(Error::FlatCurvature)?;
        let mut small_r = &phase * y.leading().cloned().unwrap_or_else(|| cint(1));
        for _ in 0..qn.l() {
            small_r = &small_r * &root;
        }
        state.orientation = if small_r.re.is_negative() { -1.0 } else { 1.0 };
        state.phase = to_c64(&phase);
        state.y_c64 = y.to_c64();
        state.y = y;
        state.beta_r = Some(beta);
        Ok(state)
    }

    pub fn with_norm(mut self, b: f64) -> Self {
        self.b_norm = Some(b);
        self
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        self.qn
    }

    pub fn params(&self) -> &AtomParams {
        &self.params
    }

    pub fn beta_r(&self) -> Option<&CRational> {
        self.beta_r.as_ref()
    }

    /// Coefficients of `y_{n_r}^n`; the constant `1` in the flat case.
    pub fn y(&self) -> &CPoly {
        &self.y
    }

    pub fn b_norm(&self) -> Option<f64> {
        self.b_norm
    }

    /// `B`, or `1` while unset.
    pub fn b(&self) -> f64 {
        self.b_norm.unwrap_or(1.0)
    }

    pub fn energy(&self) -> Result<f64> {
        energy(&self.params, self.qn.n())
    }

    /// Exponential decay rate of `G² S_κ²` at large `r`.
    pub fn density_decay_rate(&self) -> f64 {
        let n = f64::from(self.qn.n());
        let z = self.params.charge();
        if self.params.kappa.is_negative() {
            2.0 * (z / n - n * self.params.sqrt_abs_kappa())
        } else {
            2.0 * z / n
        }
    }

    /// `[√κ S_κ]^{n-1} S_κ^p e^{-Zr/n}`, formed through logarithms so that
    /// large hyperbolic radii neither overflow nor produce `∞·0`.
    fn envelope(&self, r: f64, p: i32) -> Complex64 {
        let curv = self.params.curvature();
        let n = self.qn.n();
        let ln_s = ln_s_kappa(curv, r);
        let ln_w = ln_s + self.params.sqrt_abs_kappa().ln();
        let magnitude =
            (f64::from(n - 1) * ln_w + f64::from(p) * ln_s - self.params.charge() * r / f64::from(n)).exp();
        if curv.geometry() == Geometry::Hyperbolic {
            cpowi(Complex64::i(), n - 1) * magnitude
        } else {
            Complex64::new(magnitude, 0.0)
        }
    }

    fn real_part(&self, r: f64, v: Complex64) -> Result<f64> {
        let v = self.phase * v * self.orientation;
        if v.im.abs() > 1e-10 * (v.re.abs() + 1e-300) {
            return Err(Error::ImaginaryResidue { r, re: v.re, im: v.im });
        }
        Ok(v.re)
    }

    fn shape_with(&self, r: f64, p: i32) -> Result<f64> {
        let curv = self.params.curvature();
        if !curv.in_domain(r) {
            return Err(Error::Domain { r });
        }
        if curv.geometry() == Geometry::Flat {
            let shape = flat::flat_shape(self.qn.n(), self.qn.l(), self.params.charge(), r);
            return Ok(shape * r.powi(p));
        }
        let z = z_of_r(&self.params, r)?;
        self.real_part(r, self.envelope(r, p) * horner(&self.y_c64, z))
    }

    /// `G/B`, real-valued.
    pub fn shape(&self, r: f64) -> Result<f64> {
        self.shape_with(r, 0)
    }

    /// `u = S_κ G`, the reduced radial function.
    pub fn reduced(&self, r: f64) -> Result<f64> {
        Ok(self.b() * self.shape_with(r, 1)?)
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        Ok(self.b() * self.shape(r)?)
    }
}

pub fn evaluate_radial(state: &RadialState, r: f64) -> Result<f64> {
    state.evaluate(r)
}

pub(crate) fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}
