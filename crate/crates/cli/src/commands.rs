use serde::Serialize;

use curvatom_core::atom::{degeneracy, energy, AtomParams, QuantumNumbers};
use curvatom_core::curvature::Geometry;
use curvatom_core::flat::{default_samples, flat_limit_error};
use curvatom_core::normalization::{max_principal_n, normalized_state, MaxPrincipal};
use curvatom_core::quadrature::QuadratureSpec;
use curvatom_core::Error;

use crate::config::{usage, FlatlimitArgs, Format, RMax, SpectrumArgs, WavefunctionArgs};
use crate::emit::{sci, to_json, Csv, Sci};
use crate::CliError;

const VERSION_TAG: &str = "curvatom v1";

#[derive(Debug, Serialize)]
struct Level {
    n: u32,
    energy: Sci,
    degeneracy: u64,
    bound: bool,
}

#[derive(Debug, Serialize)]
struct SpectrumTable {
    format: &'static str,
    kappa: Sci,
    n_max: u32,
    levels: Vec<Level>,
    /// Last bound level when the list stops early.
    max_principal_n: Option<u32>,
}

pub fn spectrum(args: &SpectrumArgs) -> Result<String, CliError> {
    if args.n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    let params = AtomParams::new(args.kappa)?;
    let max = max_principal_n(&params);
    let levels = (1..=args.n_max)
        .take_while(|&n| max.admits(n))
        .map(|n| {
            Ok(Level {
                n,
                energy: Sci(energy(&params, n)?),
                degeneracy: degeneracy(n),
                bound: true,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let stopped = match max {
        MaxPrincipal::Finite(m) if m < args.n_max => Some(m),
        _ => None,
    };
    let table = SpectrumTable {
        format: VERSION_TAG,
        kappa: Sci(args.kappa),
        n_max: args.n_max,
        levels,
        max_principal_n: stopped,
    };
    Ok(match args.output.format {
        Format::Json => to_json(&table),
        Format::Csv => {
            let mut csv = Csv::default();
            csv.comment(&format!("{VERSION_TAG}, kappa={}, n_max={}", sci(args.kappa), args.n_max))
                .row(["n", "E", "degeneracy", "bound"]);
            for l in &table.levels {
                csv.row([l.n.to_string(), sci(l.energy.0), l.degeneracy.to_string(), l.bound.to_string()]);
            }
            if let Some(m) = stopped {
                csv.comment(&format!("no further bound states beyond n={m}"));
            }
            csv.finish()
        }
    })
}

#[derive(Debug, Serialize)]
struct SampledFunction {
    format: &'static str,
    kappa: Sci,
    n: u32,
    l: u32,
    #[serde(rename = "E")]
    energy: Sci,
    #[serde(rename = "B")]
    b: Sci,
    r: Vec<Sci>,
    #[serde(rename = "G")]
    g: Vec<Sci>,
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<String, CliError> {
    if args.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let params = AtomParams::new(args.kappa)?;
    let qn = QuantumNumbers::new(args.n, args.l)?;
    let state = normalized_state(&params, qn, QuadratureSpec::default())?;
    let curv = params.curvature();
    let r_max = match args.r_max {
        RMax::Value(v) => v,
        RMax::Auto => {
            let tail = 30.0 / state.density_decay_rate();
            match curv.geometry() {
                Geometry::Sphere => tail.min(curv.r_max() * (1.0 - 1e-6)),
                _ => tail,
            }
        }
    };
    if !curv.in_domain(r_max) {
        return Err(Error::Domain { r: r_max }.into());
    }
    let rs: Vec<f64> = (1..=args.samples)
        .map(|i| r_max * f64::from(i) / f64::from(args.samples))
        .collect();
    let gs = rs.iter().map(|&r| state.evaluate(r)).collect::<Result<Vec<f64>, Error>>()?;
    let e = state.energy()?;
    let b = state.b();
    Ok(match args.output.format {
        Format::Json => to_json(&SampledFunction {
            format: VERSION_TAG,
            kappa: Sci(args.kappa),
            n: args.n,
            l: args.l,
            energy: Sci(e),
            b: Sci(b),
            r: rs.iter().copied().map(Sci).collect(),
            g: gs.iter().copied().map(Sci).collect(),
        }),
        Format::Csv => {
            let mut csv = Csv::default();
            csv.comment(&format!(
                "{VERSION_TAG}, kappa={}, n={}, l={}, E={}, B={}",
                sci(args.kappa),
                args.n,
                args.l,
                sci(e),
                sci(b)
            ))
            .row(["r", "G"]);
            for (r, g) in rs.iter().zip(&gs) {
                csv.row([sci(*r), sci(*g)]);
            }
            csv.finish()
        }
    })
}

/// Curvatures of the flat-limit sweep, `1e-2` down to `1e-8`.
pub fn sweep_kappas() -> Vec<f64> {
    (2..=8).map(|e| 10f64.powi(-e)).collect()
}

#[derive(Debug, Serialize)]
struct SweepRow {
    kappa: Sci,
    error: Sci,
    ratio: Option<Sci>,
}

#[derive(Debug, Serialize)]
struct SweepTable {
    format: &'static str,
    n: u32,
    l: u32,
    rows: Vec<SweepRow>,
}

pub fn flatlimit(args: &FlatlimitArgs) -> Result<String, CliError> {
    QuantumNumbers::new(args.n, args.l)?;
    let samples = default_samples(args.n);
    let mut rows: Vec<SweepRow> = Vec::new();
    for kappa in sweep_kappas() {
        let error = flat_limit_error(args.n, args.l, kappa, &samples)?;
        let ratio = rows.last().map(|prev| Sci(error / prev.error.0));
        rows.push(SweepRow {
            kappa: Sci(kappa),
            error: Sci(error),
            ratio,
        });
    }
    Ok(match args.output.format {
        Format::Json => to_json(&SweepTable {
            format: VERSION_TAG,
            n: args.n,
            l: args.l,
            rows,
        }),
        Format::Csv => {
            let mut csv = Csv::default();
            csv.comment(&format!("{VERSION_TAG}, n={}, l={}", args.n, args.l))
                .row(["kappa", "error", "ratio"]);
            for row in &rows {
                csv.row([sci(row.kappa.0), sci(row.error.0), row.ratio.map_or(String::new(), |r| sci(r.0))]);
            }
            csv.finish()
        }
    })
}
