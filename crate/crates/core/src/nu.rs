//! Nikiforov-Uvarov reduction of equations of generalized hypergeometric type
//!
//! ```text
//! u'' + (π₁/σ) u' + (σ₁/σ²) u = 0
//! ```
//!
//! The gauge `u = e^φ y` with `φ' = π/σ` turns the equation into
//! `σ y'' + τ y' + λ y = 0` whenever `σ₃ = ((σ'-π₁)/2)² - σ₁ + kσ` is the square
//! of a polynomial of degree at most one. All arithmetic here is exact.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::exact::{cint, int, sqrt_complex, CRational};
use crate::poly::{one_plus_z2, CPoly, ExpPoly};
use crate::{Error, Result, SelectionFailure};

/// Polynomial triple `(σ, π₁, σ₁)` of a generalized hypergeometric-type equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhtProblem {
    sigma: CPoly,
    pi1: CPoly,
    sigma1: CPoly,
}

impl GhtProblem {
    pub fn new(sigma: CPoly, pi1: CPoly, sigma1: CPoly) -> Result<Self> {
        sigma.ensure_degree_at_most(2, "sigma")?;
        pi1.ensure_degree_at_most(1, "pi1")?;
        sigma1.ensure_degree_at_most(2, "sigma1")?;
        if sigma.is_zero() {
            return Err(Error::DegreeBound { what: "sigma (zero)", max: 2 });
        }
        Ok(GhtProblem { sigma, pi1, sigma1 })
    }

    pub fn sigma(&self) -> &CPoly {
        &self.sigma
    }

    pub fn pi1(&self) -> &CPoly {
        &self.pi1
    }

    pub fn sigma1(&self) -> &CPoly {
        &self.sigma1
    }

    /// `(σ' - π₁)/2`
    fn half_shift(&self) -> CPoly {
        (&self.sigma.derivative() - &self.pi1).scale(&crate::exact::crat(1, 2))
    }

    /// `σ₃(k) = ((σ'-π₁)/2)² - σ₁ + kσ`
    pub fn sigma3(&self, k: &CRational) -> CPoly {
        let h = self.half_shift();
        &(&(&h * &h) - &self.sigma1) + &self.sigma.scale(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One solution `(π, k)` of the reduction with its derived `λ` and `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuBranch {
    pub pi: CPoly,
    pub k: CRational,
    pub lambda: CRational,
    pub tau: CPoly,
    /// Degree-≤1 polynomial whose square is `σ₃`.
    pub sigma3_root: CPoly,
    pub sign: Sign,
    /// Index of `k` among the roots of the discriminant condition.
    pub root_index: usize,
}

impl NuBranch {
    /// `π'`, constant since `π` has degree at most one.
    pub fn pi_slope(&self) -> CRational {
        self.pi.coeff(1)
    }
}

/// Roots in `k` of `Δ(σ₃) = 0`, which is at most quadratic in `k`.
fn discriminant_roots(p: &GhtProblem) -> Result<Vec<CRational>> {
    let base = p.sigma3(&cint(0));
    let (c0, b0, a0) = (base.coeff(0), base.coeff(1), base.coeff(2));
    let (s0, s1, s2) = (p.sigma.coeff(0), p.sigma.coeff(1), p.sigma.coeff(2));
    let four = cint(4);
    let q2 = &s1 * &s1 - &four * &s2 * &s0;
    let q1 = cint(2) * &b0 * &s1 - &four * (&a0 * &s0 + &s2 * &c0);
    let q0 = &b0 * &b0 - &four * &a0 * &c0;

    if !q2.is_zero() {
        let disc = &q1 * &q1 - &four * &q2 * &q0;
        let root = sqrt_complex(&disc).ok_or(Error::NoBranch)?;
        let den = cint(2) * &q2;
        let r1 = (-q1.clone() + &root) / &den;
        let r2 = (-q1 - &root) / &den;
        Ok(if r1 == r2 { alloc::vec![r1] } else { alloc::vec![r1, r2] })
    } else if !q1.is_zero() {
        Ok(alloc::vec![-q0 / q1])
    } else if q0.is_zero() {
        Err(Error::IndeterminateBranch)
    } else {
        Err(Error::NoBranch)
    }
}

/// `p z + q` with `(p z + q)² = σ₃`, if it exists over the complex rationals.
fn square_root_linear(sigma3: &CPoly) -> Option<CPoly> {
    let (c, b, a) = (sigma3.coeff(0), sigma3.coeff(1), sigma3.coeff(2));
    let root = if !a.is_zero() {
        let p = sqrt_complex(&a)?;
        let q = &b / (cint(2) * &p);
        CPoly::from_coeffs(alloc::vec![q, p])
    } else if b.is_zero() {
        CPoly::constant(sqrt_complex(&c)?)
    } else {
        return None;
    };
    (&(&root * &root) == sigma3).then_some(root)
}

/// All `(π, k)` combinations making `π` a polynomial (at most four).
pub fn enumerate_branches(p: &GhtProblem) -> Result<Vec<NuBranch>> {
    let h = p.half_shift();
    let mut out: Vec<NuBranch> = Vec::new();
    for (root_index, k) in discriminant_roots(p)?.into_iter().enumerate() {
        let sigma3 = p.sigma3(&k);
        let Some(root) = square_root_linear(&sigma3) else {
            continue;
        };
        for sign in [Sign::Plus, Sign::Minus] {
            let pi = match sign {
                Sign::Plus => &h + &root,
                Sign::Minus => &h - &root,
            };
            if out.iter().any(|b| b.pi == pi && b.k == k) {
                continue;
            }
            let lambda = &k + pi.coeff(1);
            let tau = &p.pi1 + &pi.scale(&cint(2));
            out.push(NuBranch {
                pi,
                k: k.clone(),
                lambda,
                tau,
                sigma3_root: root.clone(),
                sign,
                root_index,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::NoBranch);
    }
    Ok(out)
}

/// Default physical criterion: `π'` is real and negative.
pub fn negative_real_slope(branch: &NuBranch) -> bool {
    let s = branch.pi_slope();
    s.im.is_zero() && s.re.is_negative()
}

/// The unique branch satisfying `predicate`.
pub fn select_physical<F>(branches: &[NuBranch], predicate: F) -> Result<NuBranch>
where
    F: Fn(&NuBranch) -> bool,
{
    let mut hits = branches.iter().filter(|b| predicate(b));
    match (hits.next(), hits.count()) {
        (None, _) => Err(Error::Selection(SelectionFailure::None)),
        (Some(b), 0) => Ok(b.clone()),
        (Some(_), extra) => Err(Error::Selection(SelectionFailure::Ambiguous(extra + 1))),
    }
}

/// Eigenvalue admitting a degree-`n` polynomial solution:
/// `λ_n = -n τ' - n(n-1) σ''/2`.
pub fn lambda_n(branch: &NuBranch, sigma: &CPoly, n: u32) -> CRational {
    let n = n as i64;
    let tau_slope = branch.tau.coeff(1);
    let sigma_curv = sigma.coeff(2) * cint(2);
    -(cint(n) * tau_slope) - cint(n * (n - 1)) * sigma_curv / cint(2)
}

/// `μ_m = λ + m τ' + m(m-1) σ''/2`, the constant in the equation for `y^{(m)}`.
pub fn mu_m(branch: &NuBranch, sigma: &CPoly, lambda: &CRational, m: u32) -> CRational {
    let m = m as i64;
    let sigma_curv = sigma.coeff(2) * cint(2);
    lambda + cint(m) * branch.tau.coeff(1) + cint(m * (m - 1)) * sigma_curv / cint(2)
}

/// Weight `ρ` solving `(σρ)' = ρτ`, for `σ = 1 + z²` only.
///
/// With `τ = t₀ + t₁ z` the solution is `ρ = (1+z²)^{t₁/2 - 1} e^{t₀ arctan z}`.
pub fn pearson_weight(branch: &NuBranch, sigma: &CPoly) -> Result<ExpPoly> {
    if sigma != &one_plus_z2() {
        return Err(Error::UnsupportedSigma);
    }
    let t1 = branch.tau.coeff(1);
    if !t1.im.is_zero() {
        return Err(Error::UnsupportedWeight);
    }
    let m = t1.re / int(2) - int(1);
    Ok(ExpPoly::new(CPoly::one(), m, branch.tau.coeff(0)))
}

/// `y_n = ρ⁻¹ dⁿ/dzⁿ [σⁿ ρ]`, by repeated exact differentiation.
pub fn rodrigues_poly(branch: &NuBranch, sigma: &CPoly, n_r: u32) -> Result<CPoly> {
    let rho = pearson_weight(branch, sigma)?;
    let mut f = ExpPoly::new(CPoly::one(), &rho.m + int(n_r as i64), rho.a.clone());
    for _ in 0..n_r {
        f = f.derive();
    }
    f.quotient(&rho).ok_or(Error::UnsupportedWeight)
}

/// Residual `σ y'' + τ y' + λ y`, identically zero for a solution.
pub fn hypergeometric_residual(sigma: &CPoly, tau: &CPoly, lambda: &CRational, y: &CPoly) -> CPoly {
    let dy = y.derivative();
    let d2y = dy.derivative();
    &(&(sigma * &d2y) + &(tau * &dy)) + &y.scale(lambda)
}

/// `(σρ)' - ρτ` as a family member; zero for a valid Pearson weight.
pub fn pearson_residual(rho: &ExpPoly, sigma: &CPoly, tau: &CPoly) -> Option<ExpPoly> {
    let lhs = rho.mul_poly(sigma).derive();
    let rhs = rho.mul_poly(tau);
    lhs.sub(&rhs)
}
