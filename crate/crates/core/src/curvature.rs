//! Generalized trigonometric functions `S_κ`, `C_κ`, `T_κ` and the Coulomb
//! potential on spaces of constant curvature.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Below this value of `|κ| r²` the functions switch to truncated Taylor series.
const SERIES_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Sphere,
    Flat,
    Hyperbolic,
}

/// Signed sectional curvature `κ`, in units of `a_B⁻²`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Curvature(f64);

impl Curvature {
    pub const FLAT: Curvature = Curvature(0.0);

    /// Returns `None` for non-finite input.
    pub fn new(kappa: f64) -> Option<Self> {
        kappa.is_finite().then_some(Curvature(kappa))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn geometry(self) -> Geometry {
        if self.0 > 0.0 {
            Geometry::Sphere
        } else if self.0 < 0.0 {
            Geometry::Hyperbolic
        } else {
            Geometry::Flat
        }
    }

    /// Upper end of the radial domain: `π/√κ` on the sphere, infinite otherwise.
    pub fn r_max(self) -> f64 {
        match self.geometry() {
            Geometry::Sphere => PI / self.0.sqrt(),
            _ => f64::INFINITY,
        }
    }

    /// Radius `R = 1/√(-κ)` of hyperbolic space.
    pub fn hyperbolic_radius(self) -> Option<f64> {
        (self.0 < 0.0).then(|| 1.0 / (-self.0).sqrt())
    }

    /// True for `0 < r < r_max`.
    pub fn in_domain(self, r: f64) -> bool {
        r > 0.0 && r < self.r_max()
    }
}

fn small(kappa: f64, r: f64) -> bool {
    (kappa * r * r).abs() < SERIES_THRESHOLD
}

/// `sin(√κ r)/√κ`, `r`, or `sinh(√-κ r)/√-κ`.
pub fn s_kappa(kappa: Curvature, r: f64) -> f64 {
    let k = kappa.0;
    if small(k, r) {
        let x = k * r * r;
        return r * (1.0 - x / 6.0 + x * x / 120.0);
    }
    if k > 0.0 {
        let s = k.sqrt();
        (s * r).sin() / s
    } else {
        let s = (-k).sqrt();
        (s * r).sinh() / s
    }
}

/// `cos(√κ r)`, `1`, or `cosh(√-κ r)`.
pub fn c_kappa(kappa: Curvature, r: f64) -> f64 {
    let k = kappa.0;
    if small(k, r) {
        let x = k * r * r;
        return 1.0 - x / 2.0 + x * x / 24.0;
    }
    if k > 0.0 {
        (k.sqrt() * r).cos()
    } else {
        ((-k).sqrt() * r).cosh()
    }
}

/// `S_κ / C_κ`.
pub fn t_kappa(kappa: Curvature, r: f64) -> Result<f64> {
    let c = c_kappa(kappa, r);
    if c.abs() <= 8.0 * f64::EPSILON {
        return Err(Error::Pole { r });
    }
    Ok(s_kappa(kappa, r) / c)
}

/// Coulomb potential energy `V = -Z e²/T_κ(r)`, in units of `e²/a_B`.
///
/// Evaluated as `-Z C_κ/S_κ`, so it is finite and zero at the sphere's equator.
pub fn coulomb_potential(kappa: Curvature, r: f64, charge: f64) -> Result<f64> {
    if !kappa.in_domain(r) {
        return Err(Error::Domain { r });
    }
    Ok(-charge * c_kappa(kappa, r) / s_kappa(kappa, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(v: f64) -> Curvature {
        Curvature::new(v).unwrap()
    }

    #[test]
    fn sine_examples() {
        assert_eq!(s_kappa(k(0.0), 2.5), 2.5);
        assert!((s_kappa(k(1.0), PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((s_kappa(k(-1.0), 1.0) - 1.175_201_193_643_801_4).abs() < 1e-14);
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(c_kappa(k(0.0), 7.3), 1.0);
        assert_eq!(c_kappa(k(1.0), 0.0), 1.0);
        assert!((c_kappa(k(-4.0), 0.5) - 1.543_080_634_815_243_7).abs() < 1e-14);
    }

    #[test]
    fn tangent_examples() {
        assert_eq!(t_kappa(k(0.0), 3.0), Ok(3.0));
        assert!((t_kappa(k(1.0), PI / 4.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(t_kappa(k(1.0), PI / 2.0), Err(Error::Pole { .. })));
        assert!(matches!(t_kappa(k(4.0), 3.0 * PI / 4.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn potential_examples() {
        assert_eq!(coulomb_potential(k(0.0), 2.0, 1.0), Ok(-0.5));
        assert!(coulomb_potential(k(1.0), PI / 2.0, 1.0).unwrap().abs() < 1e-15);
        assert!((coulomb_potential(k(-1.0), 50.0, 1.0).unwrap() + 1.0).abs() < 1e-15);
        assert!(matches!(coulomb_potential(k(1.0), 0.0, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(coulomb_potential(k(1.0), PI, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(coulomb_potential(k(0.0), -1.0, 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn geometry_and_domain() {
        assert_eq!(k(0.3).geometry(), Geometry::Sphere);
        assert_eq!(k(0.0).geometry(), Geometry::Flat);
        assert_eq!(k(-0.3).geometry(), Geometry::Hyperbolic);
        assert!((k(4.0).r_max() - PI / 2.0).abs() < 1e-15);
        assert_eq!(k(-0.01).hyperbolic_radius(), Some(10.0));
        assert!(Curvature::new(f64::NAN).is_none());
    }

    #[test]
    fn series_matches_closed_form_at_switch() {
        for &kv in &[1e-9, -1e-9, 1e-12] {
            let r = (SERIES_THRESHOLD / kv.abs()).sqrt() * 0.999;
            let s = s_kappa(k(kv), r);
            let exact = if kv > 0.0 {
                (kv.sqrt() * r).sin() / kv.sqrt()
            } else {
                ((-kv).sqrt() * r).sinh() / (-kv).sqrt()
            };
            assert!((s - exact).abs() <= 1e-13 * exact.abs());
        }
    }

    proptest! {
        #[test]
        fn pythagorean_identity(kv in -4.0f64..4.0, t in 0.001f64..0.999) {
            let kap = k(kv);
            let r = if kv > 0.0 { t * kap.r_max() } else { t * 6.0 };
            let (s, c) = (s_kappa(kap, r), c_kappa(kap, r));
            let scale = 1.0f64.max(c * c);
            prop_assert!((c * c + kv * s * s - 1.0).abs() <= 1e-13 * scale);
        }

        #[test]
        fn tangent_identities(kv in -4.0f64..4.0, t in 0.01f64..0.99) {
            let kap = k(kv);
            let r = if kv > 0.0 { t * kap.r_max() } else { t * 5.0 };
            let c = c_kappa(kap, r);
            prop_assume!(c.abs() > 1e-3);
            let tt = t_kappa(kap, r).unwrap();
            let s = s_kappa(kap, r);
            let lhs1 = 1.0 + kv * tt * tt;
            let rhs1 = 1.0 / (c * c);
            prop_assert!((lhs1 - rhs1).abs() <= 1e-12 * rhs1.abs().max(1.0));
            let lhs2 = kv + 1.0 / (tt * tt);
            let rhs2 = 1.0 / (s * s);
            prop_assert!((lhs2 - rhs2).abs() <= 1e-12 * rhs2.abs().max(1.0));
        }

        #[test]
        fn derivative_identities(kv in -2.0f64..2.0, t in 0.05f64..0.95) {
            let kap = k(kv);
            let r = if kv > 0.0 { t * kap.r_max() } else { t * 4.0 };
            let h = 1e-6;
            let ds = (s_kappa(kap, r + h) - s_kappa(kap, r - h)) / (2.0 * h);
            let dc = (c_kappa(kap, r + h) - c_kappa(kap, r - h)) / (2.0 * h);
            prop_assert!((ds - c_kappa(kap, r)).abs() < 1e-6);
            prop_assert!((dc + kv * s_kappa(kap, r)).abs() < 1e-6);
        }

        #[test]
        fn flat_continuity(kv in -1e-3f64..1e-3, r in 0.0f64..10.0) {
            prop_assume!((kv * r * r).abs() < 0.1);
            let s = s_kappa(k(kv), r);
            prop_assert!((s - r).abs() <= kv.abs() * r.powi(3) / 6.0 * 1.1 + 1e-15);
        }

        #[test]
        fn sphere_potential_antisymmetry(kv in 0.05f64..4.0, t in 0.01f64..0.99) {
            let kap = k(kv);
            let r = t * kap.r_max();
            let v1 = coulomb_potential(kap, r, 1.0).unwrap();
            let v2 = coulomb_potential(kap, kap.r_max() - r, 1.0).unwrap();
            prop_assert!((v1 + v2).abs() <= 1e-9 * v1.abs().max(1.0));
        }
    }
}
