//! Verification suites. Each suite runs a family of independent checks and
//! reports the number of cases, pass/fail, the worst residual and the
//! failing cases.

use serde::Serialize;

use curvatom_core::atom::{
    beta_r, energy, is_bound, jacobi_connection, physical_branch, y_derivative_recurrence, y_recurrence,
    AtomParams, QuantumNumbers, RadialState,
};
use curvatom_core::curvature::{c_kappa, s_kappa, t_kappa, Curvature};
use curvatom_core::flat::{default_samples, duff_lhs, duff_rhs, flat_limit_error};
use curvatom_core::normalization::{a_minus, a_plus, b_recursive, normalize, normalized_state, overlap};
use curvatom_core::nu::{enumerate_branches, hypergeometric_residual, lambda_n, rodrigues_poly};
use curvatom_core::ode::{eigen_solve, GridSpec};
use curvatom_core::quadrature::QuadratureSpec;
use curvatom_core::Error;

use crate::commands::sweep_kappas;
use crate::config::{Format, Suite, VerifyArgs};
use crate::emit::{sci, to_json, Csv, Sci};
use crate::CliError;

const POLY_KAPPAS: [(i64, i64); 5] = [(1, 4), (1, 1), (4, 1), (-1, 4), (-1, 16)];
const ODE_KAPPAS: [f64; 5] = [0.04, 0.01, 0.0, -0.0025, -0.01];
const NORM_KAPPAS: [f64; 5] = [1.0, 0.25, 0.04, -1.0 / 64.0, -0.0025];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: usize,
    pub passed: bool,
    pub worst_residual: Sci,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
struct Combined<'a> {
    suite: &'static str,
    cases: usize,
    passed: bool,
    worst_residual: Sci,
    suites: &'a [SuiteReport],
}

/// Collects cases for one suite.
struct Tally {
    suite: &'static str,
    cases: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally {
            suite,
            cases: 0,
            worst: 0.0,
            failures: Vec::new(),
        }
    }

    /// Records a residual checked against `tol`.
    fn residual(&mut self, label: impl FnOnce() -> String, value: f64, tol: f64) {
        self.cases += 1;
        if value.is_nan() || value > tol {
            self.failures.push(format!("{}: residual {} > {}", label(), sci(value), sci(tol)));
        }
        self.worst = if value.is_nan() { f64::NAN } else { self.worst.max(value) };
    }

    /// Records an exact equality.
    fn exact(&mut self, label: impl FnOnce() -> String, equal: bool) {
        self.cases += 1;
        if !equal {
            self.failures.push(format!("{}: not equal", label()));
            self.worst = f64::INFINITY;
        }
    }

    fn error(&mut self, label: impl FnOnce() -> String, err: &Error) {
        self.cases += 1;
        self.failures.push(format!("{}: {} ({})", label(), err, err.code()));
        self.worst = f64::INFINITY;
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            cases: self.cases,
            passed: self.failures.is_empty(),
            worst_residual: Sci(self.worst),
            failures: self.failures,
        }
    }
}

fn trig(kappa: Option<f64>) -> SuiteReport {
    let mut t = Tally::new("trig");
    let kappas = kappa.map_or_else(|| vec![1.0, 0.04, 1e-9, 0.0, -1e-9, -0.01, -1.0], |k| vec![k]);
    for k in kappas {
        let Some(c) = Curvature::new(k) else { continue };
        for i in 1..40 {
            let r = f64::from(i) * 0.25;
            if !c.in_domain(r) {
                continue;
            }
            let (s, co) = (s_kappa(c, r), c_kappa(c, r));
            let pythagoras = (co * co + k * s * s - 1.0).abs() / (co * co).max(1.0);
            t.residual(|| format!("κ={k} r={r} C²+κS²"), pythagoras, 1e-13);
            if let Ok(tan) = t_kappa(c, r) {
                t.residual(|| format!("κ={k} r={r} T=S/C"), (tan * co - s).abs() / s.abs().max(1.0), 1e-12);
            }
        }
    }
    t.finish()
}

fn nu(n_max: u32) -> SuiteReport {
    let mut t = Tally::new("nu");
    for (num, den) in POLY_KAPPAS {
        let p = AtomParams::rational(num, den);
        for n in 1..=n_max {
            for l in 0..n {
                let qn = QuantumNumbers::new(n, l).expect("l < n");
                let label = || format!("κ={num}/{den} n={n} l={l}");
                match physical_branch(&p, qn) {
                    Ok((problem, branch)) => {
                        let count = enumerate_branches(&problem).map_or(0, |b| b.len());
                        t.exact(|| format!("{} branch count {count}", label()), count >= 2);
                        let lam = lambda_n(&branch, problem.sigma(), qn.n_r());
                        t.exact(|| format!("{} λ = λ_n", label()), lam == branch.lambda);
                        let beta = beta_r(&p).expect("κ ≠ 0");
                        match y_recurrence(n, qn.n_r(), &beta) {
                            Ok(y) => t.exact(
                                || format!("{} hypergeometric residual", label()),
                                hypergeometric_residual(problem.sigma(), &branch.tau, &lam, &y).is_zero(),
                            ),
                            Err(e) => t.error(label, &e),
                        }
                    }
                    Err(e) => t.error(label, &e),
                }
            }
        }
    }
    t.finish()
}

fn polynomials(n_max: u32, tol: f64) -> SuiteReport {
    let mut t = Tally::new("polynomials");
    for (num, den) in POLY_KAPPAS {
        let p = AtomParams::rational(num, den);
        let beta = beta_r(&p).expect("κ ≠ 0");
        for n in 1..=n_max {
            for n_r in 0..n {
                let label = || format!("κ={num}/{den} n={n} n_r={n_r}");
                let qn = QuantumNumbers::from_radial(n_r, n - n_r - 1);
                let built = (|| -> Result<_, Error> {
                    let three = y_recurrence(n, n_r, &beta)?;
                    let deriv = y_derivative_recurrence(n, n_r, &beta)?;
                    let (problem, branch) = physical_branch(&p, qn)?;
                    let rod = rodrigues_poly(&branch, problem.sigma(), n_r)?;
                    Ok((three, deriv, rod, jacobi_connection(n, n_r, &p)?))
                })();
                match built {
                    Ok((three, deriv, rod, jac)) => {
                        t.exact(|| format!("{} three-term = derivative", label()), three == deriv);
                        t.exact(|| format!("{} three-term = Rodrigues", label()), three == rod);
                        let exact = three.to_c64();
                        let dev = if exact.len() == jac.len() {
                            exact
                                .iter()
                                .zip(&jac)
                                .map(|(a, b)| (a - b).norm() / a.norm().max(1.0))
                                .fold(0.0, f64::max)
                        } else {
                            f64::INFINITY
                        };
                        t.residual(|| format!("{} Jacobi", label()), dev, tol);
                    }
                    Err(e) => t.error(label, &e),
                }
            }
        }
    }
    t.finish()
}

fn ladder(n_max: u32) -> SuiteReport {
    let mut t = Tally::new("ladder");
    for (num, den) in POLY_KAPPAS {
        let p = AtomParams::rational(num, den);
        let beta = beta_r(&p).expect("κ ≠ 0");
        for n in 2..=n_max.max(2) {
            for n_r in 0..n - 1 {
                let label = || format!("κ={num}/{den} n={n} n_r={n_r}");
                let (Ok(y), Ok(next)) = (y_recurrence(n, n_r, &beta), y_recurrence(n, n_r + 1, &beta)) else {
                    continue;
                };
                match a_plus(&y, n, n_r, &beta) {
                    Ok(up) => t.exact(|| format!("{} raising", label()), up == next),
                    Err(e) => t.error(label, &e),
                }
                match a_minus(&next, n, n_r + 1, &beta) {
                    Ok(down) => t.exact(|| format!("{} lowering", label()), down == y),
                    // the guard can fire only where no bound state exists
                    Err(Error::LadderDegenerate { .. }) if !is_bound(&p, n) => {}
                    Err(e) => t.error(label, &e),
                }
            }
        }
    }
    t.finish()
}

fn duff(n_max: u32) -> SuiteReport {
    let mut t = Tally::new("duff");
    for n in 0..=n_max {
        for k in 1..=6 {
            t.exact(|| format!("n={n} k={k}"), duff_lhs(n, k) == duff_rhs(n, k));
        }
    }
    t.finish()
}

fn normalization(kappa: Option<f64>, tol: f64) -> SuiteReport {
    let mut t = Tally::new("normalization");
    let spec = QuadratureSpec::tight();
    let kappas = kappa.map_or_else(|| NORM_KAPPAS.to_vec(), |k| vec![k]);
    for k in kappas {
        let p = match AtomParams::new(k) {
            Ok(p) => p,
            Err(e) => {
                t.error(|| format!("κ={k}"), &e);
                continue;
            }
        };
        for n in (1..=4).filter(|&n| is_bound(&p, n)) {
            for n_r in 0..n {
                let qn = QuantumNumbers::from_radial(n_r, n - n_r - 1);
                let label = || format!("κ={k} n={n} n_r={n_r}");
                let gap = (|| -> Result<f64, Error> {
                    let rec = b_recursive(&p, n, n_r, spec)?;
                    let quad = normalize(&RadialState::new(&p, qn)?, spec)?.b();
                    Ok((rec - quad).abs() / quad)
                })();
                match gap {
                    Ok(g) => t.residual(|| format!("{} recursion vs quadrature", label()), g, tol),
                    Err(e) => t.error(label, &e),
                }
            }
        }
        for l in 0..4u32 {
            let states: Result<Vec<_>, Error> = (l + 1..=4)
                .filter(|&n| is_bound(&p, n))
                .map(|n| normalized_state(&p, QuantumNumbers::new(n, l).expect("l < n"), QuadratureSpec::default()))
                .collect();
            let states = match states {
                Ok(s) => s,
                Err(e) => {
                    t.error(|| format!("κ={k} l={l}"), &e);
                    continue;
                }
            };
            for (i, a) in states.iter().enumerate() {
                for b in &states[i + 1..] {
                    let label = || format!("κ={k} l={l} ⟨{}|{}⟩", a.quantum_numbers().n(), b.quantum_numbers().n());
                    match overlap(a, b, QuadratureSpec::default()) {
                        Ok(v) => t.residual(label, v.abs(), tol),
                        Err(e) => t.error(label, &e),
                    }
                }
            }
        }
    }
    t.finish()
}

fn ode(kappa: Option<f64>, tol: f64) -> SuiteReport {
    let mut t = Tally::new("ode");
    let kappas = kappa.map_or_else(|| ODE_KAPPAS.to_vec(), |k| vec![k]);
    for k in kappas {
        let label = || format!("κ={k}");
        let p = match AtomParams::new(k) {
            Ok(p) => p,
            Err(e) => {
                t.error(label, &e);
                continue;
            }
        };
        let n_max = (1..=5).filter(|&n| is_bound(&p, n)).max().unwrap_or(0);
        if n_max == 0 {
            continue;
        }
        let grid = match GridSpec::auto(&p, n_max, 20_000) {
            Ok(g) => g,
            Err(e) => {
                t.error(label, &e);
                continue;
            }
        };
        for l in 0..n_max {
            match eigen_solve(&p, l, &grid, (n_max - l) as usize) {
                Ok(pairs) => {
                    for (i, pair) in pairs.iter().enumerate() {
                        let n = l + 1 + i as u32;
                        let exact = energy(&p, n).unwrap_or(f64::NAN);
                        t.residual(|| format!("κ={k} n={n} l={l}"), (pair.energy - exact).abs(), tol);
                    }
                }
                Err(e) => t.error(|| format!("κ={k} l={l}"), &e),
            }
        }
    }
    t.finish()
}

fn flatlimit(tol: f64) -> SuiteReport {
    let mut t = Tally::new("flatlimit");
    let kappas = sweep_kappas();
    for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 2)] {
        let samples = default_samples(n);
        let errors: Result<Vec<f64>, Error> = kappas.iter().map(|&k| flat_limit_error(n, l, k, &samples)).collect();
        let errors = match errors {
            Ok(e) => e,
            Err(e) => {
                t.error(|| format!("(n={n}, l={l})"), &e);
                continue;
            }
        };
        for (i, pair) in errors.windows(2).enumerate() {
            t.exact(|| format!("(n={n}, l={l}) monotone at κ={}", sci(kappas[i + 1])), pair[1] < pair[0]);
            if kappas[i] <= 1.000_001e-4 {
                let ratio = pair[1] / pair[0];
                t.exact(
                    || format!("(n={n}, l={l}) ratio {} at κ={}", sci(ratio), sci(kappas[i + 1])),
                    (0.05..=0.5).contains(&ratio),
                );
            }
        }
        t.residual(|| format!("(n={n}, l={l}) error at κ=1e-6"), errors[4], tol);
    }
    t.finish()
}

/// Runs the selected suites.
pub fn run(args: &VerifyArgs) -> Vec<SuiteReport> {
    let tol = |default: f64| args.tol.unwrap_or(default);
    let one = |suite: Suite| match suite {
        Suite::Trig => trig(args.kappa),
        Suite::Nu => nu(args.n_max.unwrap_or(6)),
        Suite::Polynomials => polynomials(args.n_max.unwrap_or(8), tol(1e-10)),
        Suite::Ladder => ladder(args.n_max.unwrap_or(8)),
        Suite::Duff => duff(args.n_max.unwrap_or(10)),
        Suite::Normalization => normalization(args.kappa, tol(1e-7)),
        Suite::Ode => ode(args.kappa, tol(1e-5)),
        Suite::Flatlimit => flatlimit(tol(1e-5)),
        Suite::All => unreachable!("expanded below"),
    };
    match args.suite {
        Suite::All => [
            Suite::Trig,
            Suite::Nu,
            Suite::Polynomials,
            Suite::Ladder,
            Suite::Duff,
            Suite::Normalization,
            Suite::Ode,
            Suite::Flatlimit,
        ]
        .into_iter()
        .map(one)
        .collect(),
        s => vec![one(s)],
    }
}

/// Renders the reports; the count is the number of failing suites.
pub fn render(reports: &[SuiteReport], format: Format) -> (String, usize) {
    let passed = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&Combined {
            suite: "all",
            cases: reports.iter().map(|r| r.cases).sum(),
            passed,
            worst_residual: Sci(reports.iter().map(|r| r.worst_residual.0).fold(0.0, f64::max)),
            suites: reports,
        }),
        Format::Csv => {
            let mut csv = Csv::default();
            csv.comment("curvatom v1, verify").row(["suite", "cases", "passed", "worst_residual"]);
            for r in reports {
                csv.row([r.suite.to_string(), r.cases.to_string(), r.passed.to_string(), sci(r.worst_residual.0)]);
            }
            for r in reports {
                for f in &r.failures {
                    csv.comment(&format!("{}: {f}", r.suite));
                }
            }
            csv.finish()
        }
    };
    (text, reports.iter().filter(|r| !r.passed).count())
}

/// Rendered report, with `Err(Verification)` reserved for the caller so the
/// report can be written before the process fails.
pub fn verify(args: &VerifyArgs) -> Result<(String, Option<CliError>), CliError> {
    if args.n_max == Some(0) && matches!(args.suite, Suite::Nu | Suite::Polynomials) {
        return Err(crate::config::usage("--n-max must be at least 1"));
    }
    if let Some(tol) = args.tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(crate::config::usage("--tol must be positive"));
        }
    }
    let reports = run(args);
    let (text, failed) = render(&reports, args.format);
    let failure = (failed > 0).then_some(CliError::Verification {
        failed,
        total: reports.len(),
    });
    Ok((text, failure))
}
