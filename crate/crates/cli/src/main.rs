use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homsphere::geometry::{
    berger_lambda1_diam2_extrema, diameter, lambda1_diam2, lambda1_diam2_cap, product_estimate,
    scalar_curvature, volume, yamabe_gap,
};
use homsphere::rigidity::{invariants, isospectral_check, recover_triple};
use homsphere::spectrum::{berger_spectrum_up_to, lambda1_closed, spectrum_up_to};
use homsphere::verify::{self, DEFAULT_SEED};
use homsphere::{
    normalize_triple, Error, GroupKind, MetricTriple, ProductSpec, Settings, SpectralInvariants,
};
use serde::Serialize;
use serde_json::json;

mod config;
mod output;

use output::{write_json, write_spectrum_csv, OutputRecord, SCHEMA_VERSION};

/// Laplace spectra of left-invariant metrics on SU(2) and SO(3).
#[derive(Parser)]
#[command(name = "homsphere", version)]
struct Cli {
    /// Settings file with `key = value` lines (solver_tol, cluster_rel_tol,
    /// merge_warn_rel_tol, k_cap). Defaults to $HOMSPHERE_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Relative bisection tolerance.
    #[arg(long, global = true)]
    solver_tol: Option<f64>,
    /// Relative tolerance for merging eigenvalues into one cluster.
    #[arg(long, global = true)]
    cluster_rel_tol: Option<f64>,
    /// Largest representation label allowed.
    #[arg(long, global = true)]
    k_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distinct eigenvalues up to a bound, with multiplicities.
    Spectrum {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        lambda_max: f64,
        /// Assemble from the Berger closed form (requires b = c).
        #[arg(long)]
        berger_closed_form: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Smallest positive eigenvalue from the closed forms.
    Lambda1 {
        #[command(flatten)]
        metric: MetricArgs,
    },
    /// Scalar curvature, volume and diameter.
    Geometry {
        #[command(flatten)]
        metric: MetricArgs,
    },
    /// λ₁·diam² for one metric, or the extremes over Berger spheres.
    Estimate {
        #[command(flatten)]
        metric: OptionalMetricArgs,
        #[arg(long)]
        berger_extrema: bool,
    },
    /// Spectral invariants, metric recovery and isospectrality.
    Rigidity {
        #[command(flatten)]
        metric: OptionalMetricArgs,
        /// Recover from `vol_param,scal,lambda1,mult` instead of a metric.
        #[arg(long, value_parser = parse_invariants)]
        invariants: Option<SpectralInvariants>,
        /// Second metric `a,b,c` to compare spectra with.
        #[arg(long, value_parser = parse_triple)]
        compare: Option<MetricTriple>,
        /// Truncation bound for the comparison; defaults to 1.1·max λ₁.
        #[arg(long)]
        lambda_max: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Estimate for a product of SU(2) and SO(3) factors.
    Product {
        /// SU(2) factor `a,b,c`; repeatable.
        #[arg(long = "su2", value_parser = parse_triple)]
        su2: Vec<MetricTriple>,
        /// SO(3) factor `a,b,c`; repeatable.
        #[arg(long = "so3", value_parser = parse_triple)]
        so3: Vec<MetricTriple>,
    },
    /// Run the acceptance suite; exits with 1 if any criterion fails.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Clone, Copy)]
struct MetricArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value = "su2", value_parser = parse_group)]
    group: GroupKind,
}

#[derive(Args, Clone, Copy)]
struct OptionalMetricArgs {
    #[arg(long, requires_all = ["b", "c"])]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value = "su2", value_parser = parse_group)]
    group: GroupKind,
}

impl OptionalMetricArgs {
    fn triple(&self) -> Result<Option<MetricTriple>, Error> {
        match (self.a, self.b, self.c) {
            (Some(a), Some(b), Some(c)) => normalize_triple(a, b, c).map(Some),
            (None, None, None) => Ok(None),
            _ => Err(Error::InvalidArgument("give all of --a, --b, --c".into())),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_group(s: &str) -> Result<GroupKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!(
            "expected {n} comma-separated numbers, got {}",
            v.len()
        ));
    }
    Ok(v)
}

fn parse_triple(s: &str) -> Result<MetricTriple, String> {
    let v = parse_floats(s, 3)?;
    normalize_triple(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

fn parse_invariants(s: &str) -> Result<SpectralInvariants, String> {
    let v = parse_floats(s, 4)?;
    if v[3] < 1.0 || v[3].fract() != 0.0 {
        return Err(format!(
            "multiplicity must be a positive integer, got {}",
            v[3]
        ));
    }
    Ok(SpectralInvariants {
        vol_param: v[0],
        scal: v[1],
        lambda1: v[2],
        mult1: v[3] as u64,
    })
}

fn settings(cli: &Cli) -> Result<Settings, Error> {
    let mut s = Settings::default();
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(config::CONFIG_ENV).map(PathBuf::from));
    if let Some(p) = path {
        config::load(&p, &mut s)?;
    }
    if let Some(x) = cli.solver_tol {
        s.solver_tol = x;
    }
    if let Some(x) = cli.cluster_rel_tol {
        s.cluster_rel_tol = x;
    }
    if let Some(x) = cli.k_cap {
        s.k_cap = x;
    }
    Ok(s)
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    /// Verification ran but some criterion failed.
    Unverified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn emit(command: &str, inputs: serde_json::Value, results: impl Serialize) -> Result<(), Failure> {
    let record = OutputRecord {
        schema_version: SCHEMA_VERSION,
        command,
        inputs,
        results,
    };
    write_json(io::stdout().lock(), &record)?;
    Ok(())
}

fn metric_inputs(m: &MetricArgs) -> serde_json::Value {
    json!({"a": m.a, "b": m.b, "c": m.c, "group": m.group})
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let settings = settings(cli)?;
    match &cli.command {
        Command::Spectrum {
            metric,
            lambda_max,
            berger_closed_form,
            format,
        } => {
            let table = if *berger_closed_form {
                if metric.b != metric.c {
                    return Err(
                        Error::InvalidArgument("--berger-closed-form needs b = c".into()).into(),
                    );
                }
                berger_spectrum_up_to(*lambda_max, metric.a, metric.b, metric.group, &settings)?
            } else {
                let t = normalize_triple(metric.a, metric.b, metric.c)?;
                spectrum_up_to(*lambda_max, &t, metric.group, &settings)?
            };
            for m in &table.near_degenerate_merges {
                eprintln!(
                    "warning: merged eigenvalues {} and {} (relative gap {:.3e})",
                    m.kept,
                    m.merged,
                    (m.merged - m.kept) / m.kept.abs().max(1.0)
                );
            }
            match format {
                Format::Json => {
                    let mut inputs = metric_inputs(metric);
                    inputs["lambda_max"] = json!(lambda_max);
                    inputs["berger_closed_form"] = json!(berger_closed_form);
                    emit("spectrum", inputs, &table)
                }
                Format::Csv => Ok(write_spectrum_csv(io::stdout().lock(), &table)?),
            }
        }
        Command::Lambda1 { metric } => {
            let t = normalize_triple(metric.a, metric.b, metric.c)?;
            emit(
                "lambda1",
                metric_inputs(metric),
                lambda1_closed(&t, metric.group),
            )
        }
        Command::Geometry { metric } => {
            let t = normalize_triple(metric.a, metric.b, metric.c)?;
            let g = metric.group;
            let results = json!({
                "triple": t,
                "class": t.class(),
                "scalar_curvature": scalar_curvature(&t),
                "volume": volume(&t, g),
                "diameter": diameter(&t, g),
                "lambda1": lambda1_closed(&t, g),
                "yamabe_gap": yamabe_gap(&t, g),
            });
            emit("geometry", metric_inputs(metric), results)
        }
        Command::Estimate {
            metric,
            berger_extrema,
        } => {
            let t = metric.triple()?;
            if t.is_none() && !berger_extrema {
                return Err(Error::InvalidArgument(
                    "give a metric (--a --b --c) or --berger-extrema".into(),
                )
                .into());
            }
            let mut results = serde_json::Map::new();
            if let Some(t) = t {
                let g = metric.group;
                let pi2 = std::f64::consts::PI.powi(2);
                results.insert("lambda1_diam2".into(), json!(lambda1_diam2(&t, g)?));
                results.insert(
                    "range".into(),
                    json!({"lo": pi2, "hi": lambda1_diam2_cap(g) * pi2}),
                );
            }
            if *berger_extrema {
                results.insert(
                    "berger_extrema".into(),
                    json!(berger_lambda1_diam2_extrema()),
                );
            }
            let inputs = json!({
                "a": metric.a, "b": metric.b, "c": metric.c, "group": metric.group,
                "berger_extrema": berger_extrema,
            });
            emit("estimate", inputs, results)
        }
        Command::Rigidity {
            metric,
            invariants: given,
            compare,
            lambda_max,
            tol,
        } => {
            let g = metric.group;
            let t = metric.triple()?;
            let inv = match (t, given) {
                (Some(t), None) => invariants(&t, g),
                (None, Some(inv)) => *inv,
                _ => {
                    return Err(Error::InvalidArgument(
                        "give exactly one of a metric (--a --b --c) or --invariants".into(),
                    )
                    .into())
                }
            };
            let recovered = recover_triple(&inv, g)?;
            let mut results = serde_json::Map::new();
            results.insert("invariants".into(), json!(inv));
            results.insert("recovered".into(), json!(recovered));
            if let Some(other) = compare {
                let base = t.unwrap_or(recovered);
                let lm = match lambda_max {
                    Some(l) => *l,
                    None => {
                        1.1 * lambda1_closed(&base, g)
                            .value
                            .max(lambda1_closed(other, g).value)
                    }
                };
                let verdict = isospectral_check(&base, other, g, lm, *tol, &settings)?;
                results.insert("compared_with".into(), json!(other));
                results.insert("lambda_max".into(), json!(lm));
                results.insert("verdict".into(), json!(verdict));
            }
            let inputs = json!({
                "a": metric.a, "b": metric.b, "c": metric.c, "group": g,
                "invariants": given, "compare": compare, "lambda_max": lambda_max, "tol": tol,
            });
            emit("rigidity", inputs, results)
        }
        Command::Product { su2, so3 } => {
            let spec = ProductSpec {
                su2_factors: su2.clone(),
                so3_factors: so3.clone(),
            };
            let est = product_estimate(&spec)?;
            emit("product", json!(spec), est)
        }
        Command::Verify { seed } => {
            let reports = verify::run_all(*seed);
            for r in &reports {
                eprintln!("{r}");
            }
            let all = reports.iter().all(|r| r.passed);
            emit(
                "verify",
                json!({"seed": seed}),
                json!({"passed": all, "criteria": reports}),
            )?;
            if all {
                Ok(())
            } else {
                Err(Failure::Unverified)
            }
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CutoffTooLarge { .. } => 3,
        Error::NonPositiveParameter(..)
        | Error::InvalidArgument(_)
        | Error::InconsistentInvariants(_)
        | Error::EmptyProduct
        | Error::NotFound(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            let _ = writeln!(io::stderr(), "error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Unverified) => ExitCode::from(1),
    }
}
