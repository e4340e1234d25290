//! Exact complex-rational scalars.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Complex number with arbitrary-precision rational parts.
pub type CRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn real(re: BigRational) -> CRational {
    Complex::new(re, BigRational::zero())
}

pub fn imag(im: BigRational) -> CRational {
    Complex::new(BigRational::zero(), im)
}

pub fn cint(v: i64) -> CRational {
    real(int(v))
}

pub fn crat(num: i64, den: i64) -> CRational {
    real(rat(num, den))
}

/// `i^k` for any integer `k`.
pub fn i_pow(k: i64) -> CRational {
    match k.rem_euclid(4) {
        0 => cint(1),
        1 => imag(int(1)),
        2 => cint(-1),
        _ => imag(int(-1)),
    }
}

pub fn is_real(z: &CRational) -> bool {
    z.im.is_zero()
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn to_c64(z: &CRational) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

/// Square root of a non-negative rational when it is itself rational.
pub fn sqrt_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (num, den) = (q.numer(), q.denom());
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Principal square root of a complex rational, if it lies in the field.
pub fn sqrt_complex(z: &CRational) -> Option<CRational> {
    if z.im.is_zero() {
        return if z.re.is_negative() {
            sqrt_rational(&-z.re.clone()).map(imag)
        } else {
            sqrt_rational(&z.re).map(real)
        };
    }
    let modulus = sqrt_rational(&(&z.re * &z.re + &z.im * &z.im))?;
    let two = int(2);
    let re = sqrt_rational(&((&modulus + &z.re) / &two))?;
    let mut im = sqrt_rational(&((&modulus - &z.re) / &two))?;
    if z.im.is_negative() {
        im = -im;
    }
    Some(Complex::new(re, im))
}

/// Simplest rational whose nearest `f64` is `x`.
///
/// Continued-fraction convergents are tried in order, so decimal inputs such
/// as `0.04` come back as `1/25`. Falls back to the exact binary value.
pub fn approx_rational(x: f64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    if x == 0.0 {
        return BigRational::zero();
    }
    let negative = x < 0.0;
    let target = x.abs();
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let mut rem = target;
    for _ in 0..64 {
        let a = num_traits::Float::floor(rem);
        let a_int = match BigInt::try_from(a as u64) {
            Ok(v) if a < 1e18 => v,
            _ => break,
        };
        let p2 = &a_int * &p0 + &p1;
        let q2 = &a_int * &q0 + &q1;
        let candidate = BigRational::new(p2.clone(), q2.clone());
        if to_f64(&candidate) == target {
            return if negative { -candidate } else { candidate };
        }
        p1 = p0;
        q1 = q0;
        p0 = p2;
        q0 = q2;
        let frac = rem - a;
        if frac == 0.0 {
            break;
        }
        rem = 1.0 / frac;
    }
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}
