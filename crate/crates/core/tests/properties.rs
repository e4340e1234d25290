use curvatom_core::atom::{
    beta_r, derive_spectrum, energy_exact, is_bound, physical_branch, y_derivative_recurrence, y_recurrence,
    AtomParams, QuantumNumbers, RadialState,
};
use curvatom_core::exact::{rat, real};
use curvatom_core::flat::{duff_lhs, duff_rhs, laguerre, laguerre_derivative_identity_check, InvExpPoly};
use curvatom_core::normalization::{a_minus, a_plus, expectation_dplus_dminus, max_principal_n, MaxPrincipal};
use curvatom_core::nu::rodrigues_poly;
use num_rational::BigRational;
use proptest::prelude::*;

/// `±(a/b)²`, so that `√|κ|` is rational.
fn square_kappa() -> impl Strategy<Value = (i64, i64, bool)> {
    (1i64..9, 1i64..9, any::<bool>())
}

fn params((a, b, negative): (i64, i64, bool)) -> AtomParams {
    let k = rat(a * a, b * b);
    AtomParams::exact(if negative { -k } else { k }, rat(1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectrum_matches_closed_form(k in square_kappa(), n in 1u32..7, l_frac in 0.0f64..1.0) {
        let p = params(k);
        let l = ((f64::from(n) * l_frac) as u32).min(n - 1);
        let d = derive_spectrum(&p, QuantumNumbers::new(n, l).unwrap()).unwrap();
        let n2 = i64::from(n * n);
        let closed: BigRational = rat(-1, n2) + rat(n2 - 1, 1) * p.kappa_exact();
        prop_assert_eq!(d.energy, real(closed));
    }

    #[test]
    fn three_constructions_agree(k in square_kappa(), n in 1u32..7, n_r_frac in 0.0f64..1.0) {
        let p = params(k);
        let n_r = ((f64::from(n) * n_r_frac) as u32).min(n - 1);
        let beta = beta_r(&p).unwrap();
        let three = y_recurrence(n, n_r, &beta).unwrap();
        prop_assert_eq!(&three, &y_derivative_recurrence(n, n_r, &beta).unwrap());
        let (problem, branch) = physical_branch(&p, QuantumNumbers::from_radial(n_r, n - n_r - 1)).unwrap();
        prop_assert_eq!(three, rodrigues_poly(&branch, problem.sigma(), n_r).unwrap());
    }

    #[test]
    fn raising_then_lowering_is_identity(k in square_kappa(), n in 2u32..8, n_r_frac in 0.0f64..1.0) {
        let beta = beta_r(&params(k)).unwrap();
        let n_r = ((f64::from(n - 1) * n_r_frac) as u32).min(n - 2);
        let y = y_recurrence(n, n_r, &beta).unwrap();
        let up = a_plus(&y, n, n_r, &beta).unwrap();
        if let Ok(down) = a_minus(&up, n, n_r + 1, &beta) {
            prop_assert_eq!(down, y);
        }
    }

    #[test]
    fn laguerre_identity_holds(n in 1u32..=10, k in -6i64..=6, x in 0.01f64..10.0) {
        prop_assert!(laguerre_derivative_identity_check(n, k, x));
    }

    #[test]
    fn laguerre_at_origin_is_binomial(n in 0u32..12, k in 0i64..8) {
        let binom = (1..=n).fold(1.0, |acc, j| acc * (f64::from(j) + k as f64) / f64::from(j));
        prop_assert!((laguerre(n, k, 0.0) - binom).abs() <= 1e-9 * binom);
    }

    #[test]
    fn duff_identity(n in 0u32..=10, k in 1i64..=6) {
        prop_assert_eq!(duff_lhs(n, k), duff_rhs(n, k));
    }

    #[test]
    fn inv_exp_derivative_matches_difference(k in -3i64..5, t in 0.4f64..3.0) {
        let f = InvExpPoly::base(k);
        let h = 1e-5 * t;
        let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
        let d = f.derive().eval(t);
        prop_assert!((fd - d).abs() <= 1e-6 * d.abs().max(1e-12));
    }

    #[test]
    fn bound_count_is_consistent(a in 1i64..40, b in 1i64..400) {
        let p = AtomParams::exact(rat(-a, b * b), rat(1, 1));
        let max = match max_principal_n(&p) {
            MaxPrincipal::Finite(m) => m,
            MaxPrincipal::Unbounded => return Err(TestCaseError::fail("hyperbolic count unbounded")),
        };
        prop_assert!(!is_bound(&p, max + 1));
        if max > 0 {
            prop_assert!(is_bound(&p, max));
            prop_assert!(energy_exact(&p, max).is_ok());
        }
    }

    #[test]
    fn hyperbolic_states_are_real(s in 0.01f64..0.2, n in 1u32..5, l_frac in 0.0f64..1.0, r in 0.05f64..200.0) {
        let p = AtomParams::new(-s * s).unwrap();
        prop_assume!(is_bound(&p, n));
        let l = ((f64::from(n) * l_frac) as u32).min(n - 1);
        let state = RadialState::new(&p, QuantumNumbers::new(n, l).unwrap()).unwrap();
        prop_assert!(state.shape(r).unwrap().is_finite());
    }

    #[test]
    fn expectation_is_nonnegative(kappa in -0.01f64..1.0, n in 1u32..4, l_frac in 0.0f64..1.0) {
        let l = ((f64::from(n) * l_frac) as u32).min(n - 1);
        prop_assume!(is_bound(&AtomParams::new(kappa).unwrap(), n));
        let v = expectation_dplus_dminus(n, l, kappa);
        prop_assert!(v >= 0.0);
        prop_assert_eq!(v == 0.0, l == n - 1);
    }
}
