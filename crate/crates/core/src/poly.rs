//! Univariate polynomials over [`CRational`] and the closed family
//! `P(z)·(1+z²)^m·e^{a·arctan z}`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{cint, int, real, to_c64, CRational};
use crate::{Error, Result};

/// Polynomial with ascending complex-rational coefficients. The trailing
/// coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CPoly {
    coeffs: Vec<CRational>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(cint(1))
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(cint(1), 1)
    }

    pub fn constant(c: CRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: CRational, degree: usize) -> Self {
        let mut coeffs = vec![cint(0); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<CRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn from_real(coeffs: &[BigRational]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(real).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| cint(c)).collect())
    }

    pub fn coeffs(&self) -> &[CRational] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> CRational {
        self.coeffs.get(i).cloned().unwrap_or_else(|| cint(0))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&CRational> {
        self.coeffs.last()
    }

    pub fn ensure_degree_at_most(&self, max: usize, what: &'static str) -> Result<()> {
        match self.degree() {
            Some(d) if d > max => Err(Error::DegreeBound { what, max }),
            _ => Ok(()),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * cint(i as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &CRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `p(a·z + b)` computed exactly.
    pub fn compose_linear(&self, a: &CRational, b: &CRational) -> Self {
        let inner = CPoly::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = CPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &CPoly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(CPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, z: &CRational) -> CRational {
        self.coeffs
            .iter()
            .rev()
            .fold(cint(0), |acc, c| acc * z + c)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        horner(&self.to_c64(), z)
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(to_c64).collect()
    }
}

/// Horner evaluation of ascending floating coefficients.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        CPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        CPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        if self.is_zero() || rhs.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![cint(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        CPoly::from_coeffs(out)
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CPoly {
            type Output = CPoly;
            fn $m(self, rhs: CPoly) -> CPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `1 + z²`
pub fn one_plus_z2() -> CPoly {
    CPoly::from_ints(&[1, 0, 1])
}

/// Exact representation of `P(z)·(1+z²)^m·e^{a·arctan z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPoly {
    pub p: CPoly,
    pub m: BigRational,
    pub a: CRational,
}

impl ExpPoly {
    pub fn new(p: CPoly, m: BigRational, a: CRational) -> Self {
        ExpPoly { p, m, a }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// Exact derivative; stays in the family with `m` lowered by one.
    pub fn derive(&self) -> ExpPoly {
        let two_m_z = CPoly::monomial(real(&self.m * int(2)), 1);
        let linear = &two_m_z + &CPoly::constant(self.a.clone());
        let p = &(&self.p.derivative() * &one_plus_z2()) + &(&linear * &self.p);
        ExpPoly {
            p,
            m: &self.m - BigRational::one(),
            a: self.a.clone(),
        }
    }

    pub fn mul_poly(&self, q: &CPoly) -> ExpPoly {
        ExpPoly {
            p: &self.p * q,
            ..self.clone()
        }
    }

    /// Rewrite with exponent `target`, which must sit an integer amount below `m`.
    pub fn with_exponent(&self, target: &BigRational) -> Option<ExpPoly> {
        let shift = &self.m - target;
        if !shift.is_integer() || shift < BigRational::zero() {
            return None;
        }
        let k = shift.to_integer().to_u32()?;
        Some(ExpPoly {
            p: &self.p * &one_plus_z2().pow(k),
            m: target.clone(),
            a: self.a.clone(),
        })
    }

    /// `self - other` when both share `a` and their exponents differ by an integer.
    pub fn sub(&self, other: &ExpPoly) -> Option<ExpPoly> {
        if self.a != other.a {
            return None;
        }
        let low = if self.m < other.m { &self.m } else { &other.m };
        let lhs = self.with_exponent(low)?;
        let rhs = other.with_exponent(low)?;
        Some(ExpPoly {
            p: &lhs.p - &rhs.p,
            m: low.clone(),
            a: self.a.clone(),
        })
    }

    /// `self / denom` as a plain polynomial, when `denom` has a constant
    /// prefactor, the same `a`, and an exponent at most `self.m` by an integer.
    pub fn quotient(&self, denom: &ExpPoly) -> Option<CPoly> {
        if self.a != denom.a || denom.p.degree() != Some(0) {
            return None;
        }
        let aligned = self.with_exponent(&denom.m)?;
        let inv = cint(1) / denom.p.coeff(0);
        Some(aligned.p.scale(&inv))
    }

    /// Floating evaluation on the principal branch.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let singular = self.m < BigRational::zero() || !self.a.is_zero();
        let w = Complex64::new(1.0, 0.0) + z * z;
        if singular && w.norm() == 0.0 {
            return Err(Error::BranchPoint);
        }
        let factor = if self.m.is_integer() {
            let e = self.m.to_integer().to_i32().ok_or(Error::BranchPoint)?;
            w.powi(e)
        } else {
            (w.ln() * crate::exact::to_f64(&self.m)).exp()
        };
        let exp_part = if self.a.is_zero() {
            Complex64::new(1.0, 0.0)
        } else {
            (to_c64(&self.a) * complex_atan(z)?).exp()
        };
        Ok(self.p.eval_c64(z) * factor * exp_part)
    }
}

/// `arctan z = (i/2) ln((1 - iz)/(1 + iz))`, principal logarithm.
pub fn complex_atan(z: Complex64) -> Result<Complex64> {
    let iz = Complex64::i() * z;
    let num = Complex64::new(1.0, 0.0) - iz;
    let den = Complex64::new(1.0, 0.0) + iz;
    if num.norm() == 0.0 || den.norm() == 0.0 {
        return Err(Error::BranchPoint);
    }
    Ok(Complex64::new(0.0, 0.5) * (num / den).ln())
}
