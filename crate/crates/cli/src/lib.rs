//! `troplat` command-line front end.
//!
//! Every subcommand reads a lattice matrix (`-i file.json` or `--example name`),
//! writes one JSON document to `-o` or stdout, and exits 0. Domain errors exit 1
//! with `{"error": {"code", "message"}}` on stderr; usage errors exit 2.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use troplat_core::amoeba::{distances, sample_amoeba};
use troplat_core::entropy::{
    bimatroid_axiom_check, entropy_from_bimatroid, entropy_vector, minor_valuations,
    supermodularity_violations,
};
use troplat_core::ext::{parse_rational, rational_to_f64};
use troplat_core::io::{
    cloud_to_csv, entropy_to_json, generators_to_json, plot_document, point_strings,
    to_json_string, ComplexDocument, EntropyDocument, MatrixDocument,
};
use troplat_core::measure::{
    find_negative_cube, positivity_scan, ProjectedDensity, SurvivalSpec,
};
use troplat_core::oracle::hermite::generator_witnesses;
use troplat_core::oracle::{
    cube_grid, ff_survival_grid, sample_lattice_valuation, witness_for_generator, FfConfig,
    SampleConfig,
};
use troplat_core::polyhedral::complex::sigma_complex;
use troplat_core::subset;
use troplat_core::tropical::{generators, is_member, phi_rational, reconstruct};
use troplat_core::{Error, Fixture, LatticeMatrix, Rational, Result, TropicalPoint};

/// Positivity-scan sweep used when `measure` gets no `--alpha`.
const ALPHA_SWEEP: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

#[derive(Debug, Parser)]
#[command(name = "troplat", version, about = "Tropicalization of lattices over Puiseux series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Args)]
struct Options {
    /// Matrix document to read (not needed for `measure --density`).
    #[arg(short, long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Built-in matrix instead of `-i`.
    #[arg(long, global = true, value_name = "NAME")]
    example: Option<Fixture>,
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, default_value_t = 101)]
    prime: u64,
    /// Truncation order `T` of the finite-field sampler.
    #[arg(long, global = true, default_value_t = 10)]
    trunc: i64,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Amoeba scale `λ = −log t`.
    #[arg(long, global = true, default_value_t = 10.0)]
    lambda: f64,
    /// Comma-separated coordinates, e.g. "0,1/2,-3".
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    /// Keep only the cells of Σ.
    #[arg(long, global = true)]
    sigma_only: bool,
    /// Spaces per indent level; compact output when absent.
    #[arg(long, global = true)]
    json_indent: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropy vector h(L).
    Entropy,
    /// Polyhedral complex of φ_L with Σ labels.
    Complex {
        /// Attach vertices and rays to every cell (n ≤ 3).
        #[arg(long)]
        vrep: bool,
    },
    /// Generators u_J of |Σ_L|.
    Generators,
    /// Membership of `--point` in |Σ_L|.
    Member,
    /// Coefficients λ_J recombining `--point` from the generators.
    Reconstruct,
    /// Valuations of random lattice points.
    Sample,
    /// Lattice points realizing the generators.
    Witness {
        /// Only this subset, e.g. "13".
        #[arg(long)]
        subset: Option<String>,
    },
    /// Survival frequencies over F_p at `--point` or on {0,…,k}^n.
    FfSurvival {
        #[arg(long, default_value_t = 2)]
        grid: i64,
    },
    /// Sampled amoeba and its distance to |Σ_L|.
    Amoeba {
        #[arg(long, value_enum, default_value_t = CloudFormat::Json)]
        format: CloudFormat,
    },
    /// Survival-function checks for Q = exp(−α φ), or a projected density.
    Measure {
        #[arg(long, default_value_t = 5.0)]
        radius: f64,
        /// Evaluate a closed-form projected density at `--point` instead.
        #[arg(long, value_name = "NAME")]
        density: Option<ProjectedDensity>,
    },
    /// Valuated-bimatroid axioms for the minor valuations.
    Bimatroid,
    /// Plot data (vertices, rays, labels) for n ≤ 3.
    ExportPlot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CloudFormat {
    Json,
    Csv,
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            let payload = json!({"error": {"code": e.code(), "message": e.to_string()}});
            eprint!("{}", to_json_string(&payload, None));
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let opts = &cli.opts;
    if let Command::Measure { density: Some(d), .. } = &cli.command {
        return emit(opts, to_json_string(&density_report(*d, opts)?, opts.json_indent));
    }
    let a = load_matrix(opts)?;
    let text = match &cli.command {
        Command::Amoeba {
            format: CloudFormat::Csv,
        } => {
            let cloud = sample_amoeba(&a, (-opts.lambda).exp(), opts.trials.unwrap_or(1000), opts.seed)?;
            cloud_to_csv(&cloud)
        }
        command => to_json_string(&report(command, opts, &a)?, opts.json_indent),
    };
    emit(opts, text)
}

fn emit(opts: &Options, text: String) -> Result<()> {
    match &opts.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn density_report(d: ProjectedDensity, opts: &Options) -> Result<Value> {
    let alpha = opts.alpha.unwrap_or(1.0);
    let point: Vec<f64> = parse_point(opts)?.iter().map(rational_to_f64).collect();
    Ok(json!({
        "density": d.name(),
        "alpha": json_float(alpha),
        "point": floats(&point),
        "value": json_float(d.density(alpha, &point)?),
        "atom": json_float(d.atom(alpha)),
    }))
}

fn load_matrix(opts: &Options) -> Result<LatticeMatrix> {
    match (&opts.input, opts.example) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument("use either -i or --example".into())),
        (None, Some(f)) => Ok(f.matrix()),
        (Some(path), None) => {
            let doc: MatrixDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            doc.to_matrix()
        }
        (None, None) => Err(Error::InvalidArgument("a matrix is required (-i FILE or --example NAME)".into())),
    }
}

fn parse_point(opts: &Options) -> Result<Vec<Rational>> {
    let text = opts
        .point
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--point is required".into()))?;
    text.split(',')
        .map(|c| {
            parse_rational(c.trim()).ok_or_else(|| Error::InvalidArgument(format!("not a rational: {c:?}")))
        })
        .collect()
}

fn rationals(v: &[Rational]) -> Value {
    v.iter().map(ToString::to_string).collect()
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| json_float(*x)).collect())
}

fn json_float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn report(command: &Command, opts: &Options, a: &LatticeMatrix) -> Result<Value> {
    let n = a.n();
    let h = entropy_vector(a)?;
    Ok(match command {
        Command::Entropy => serde_json::to_value(EntropyDocument::new(&h))?,
        Command::Complex { vrep } => {
            let mut c = sigma_complex(&h)?;
            if opts.sigma_only {
                c = c.sigma_only();
            }
            serde_json::to_value(ComplexDocument::new(&c, *vrep)?)?
        }
        Command::Generators => json!({"n": n, "generators": generators_to_json(&generators(&h), n)}),
        Command::Member => {
            let v = parse_point(opts)?;
            let phi = phi_rational(&h, &v)?;
            json!({
                "member": is_member(&h, &TropicalPoint::finite(&v))?,
                "point": rationals(&v),
                "phi": phi.value.to_string(),
                "active": phi.active.iter().map(|&s| subset::key(s, n)).collect::<Vec<_>>(),
            })
        }
        Command::Reconstruct => {
            let v = parse_point(opts)?;
            let r = reconstruct(&h, &TropicalPoint::finite(&v))?;
            let lambdas: Map<String, Value> = r
                .lambdas
                .iter()
                .map(|(s, l)| (subset::key(*s, n), Value::String(l.to_string())))
                .collect();
            json!({
                "point": rationals(&v),
                "lambdas": lambdas,
                "recombined": point_strings(&r.recombined),
                "verified": r.verified(),
            })
        }
        Command::Sample => {
            let cfg = sample_config(opts)?;
            let points = sample_lattice_valuation(a, &cfg)?;
            let members = points
                .iter()
                .map(|p| is_member(&h, p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|&m| m)
                .count();
            json!({
                "seed": cfg.seed,
                "trials": cfg.trials,
                "members": members,
                "points": points.iter().map(point_strings).collect::<Vec<_>>(),
            })
        }
        Command::Witness { subset: Some(key) } => {
            let s = subset::parse_key(key, n)
                .ok_or_else(|| Error::InvalidArgument(format!("not a subset of [{n}]: {key:?}")))?;
            let x = witness_for_generator(a, &h, s, &sample_config(opts)?)?;
            json!({
                "subset": subset::key(s, n),
                "x": x.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "val": x.iter().map(|f| f.val().to_string()).collect::<Vec<_>>(),
            })
        }
        Command::Witness { subset: None } => {
            let w = generator_witnesses(a, &h, &sample_config(opts)?)?;
            json!({"n": n, "witnesses": generators_to_json(&w, n)})
        }
        Command::FfSurvival { grid } => {
            let points = match opts.point {
                Some(_) => vec![parse_point(opts)?],
                None => cube_grid(n, *grid),
            };
            let cfg = FfConfig::new(opts.prime, opts.trunc, opts.trials.unwrap_or(10_000), opts.seed);
            let est = ff_survival_grid(a, &points, &cfg)?;
            json!({
                "prime": cfg.prime,
                "truncation": cfg.truncation.to_string(),
                "trials": cfg.trials,
                "seed": cfg.seed,
                "estimates": est.iter().map(|e| json!({
                    "point": rationals(&e.point),
                    "hits": e.hits,
                    "empirical": json_float(e.empirical),
                    "exact": json_float(e.exact),
                    "sigma": json_float(e.sigma()),
                    "within_3_sigma": e.within(3.0),
                })).collect::<Vec<_>>(),
            })
        }
        Command::Amoeba { .. } => {
            let cloud = sample_amoeba(a, (-opts.lambda).exp(), opts.trials.unwrap_or(1000), opts.seed)?;
            let d = distances(&cloud, &sigma_complex(&h)?)?;
            json!({
                "lambda": json_float(opts.lambda),
                "t": json_float(cloud.t),
                "seed": cloud.seed,
                "requested": cloud.requested,
                "distance_to_sigma": json_float(d.iter().copied().fold(0.0, f64::max)),
                "points": cloud.points.iter().map(|p| floats(p)).collect::<Vec<_>>(),
            })
        }
        Command::Measure { density: Some(d), .. } => density_report(*d, opts)?,
        Command::Measure { radius, density: None } => {
            let violations = supermodularity_violations(&h);
            let alphas: Vec<f64> = opts.alpha.map_or(ALPHA_SWEEP.to_vec(), |x| vec![x]);
            let trials = opts.trials.unwrap_or(10_000);
            let scans = alphas
                .iter()
                .map(|&alpha| {
                    let s = SurvivalSpec::from_entropy(&h, alpha)?;
                    let r = positivity_scan(&s, trials, *radius, opts.seed)?;
                    let mut entry = json!({
                        "alpha": json_float(alpha),
                        "trials": r.trials,
                        "min_mass": json_float(r.min_mass),
                        "u": floats(&r.u),
                        "v": floats(&r.v),
                        "negative": r.negative,
                    });
                    if !violations.is_empty() {
                        let c = find_negative_cube(&s)?;
                        entry["witness"] = json!({"u": floats(&c.u), "v": floats(&c.v), "mass": json_float(c.mass)});
                    }
                    Ok(entry)
                })
                .collect::<Result<Vec<_>>>()?;
            json!({
                "h": entropy_to_json(&h),
                "supermodular": violations.is_empty(),
                "violations": violations.iter().map(|(i, j)| [subset::key(*i, n), subset::key(*j, n)]).collect::<Vec<_>>(),
                "radius": json_float(*radius),
                "scans": scans,
            })
        }
        Command::Bimatroid => {
            let nu = minor_valuations(a);
            let violations = bimatroid_axiom_check(&nu)?;
            json!({
                "r": a.r(),
                "n": n,
                "violations": violations.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>(),
                "entropy_matches": entropy_from_bimatroid(&nu) == h,
            })
        }
        Command::ExportPlot => {
            let mut c = sigma_complex(&h)?;
            if opts.sigma_only {
                c = c.sigma_only();
            }
            plot_document(&c)?
        }
    })
}

fn sample_config(opts: &Options) -> Result<SampleConfig> {
    let mut cfg = SampleConfig::default().with_seed(opts.seed);
    if let Some(t) = opts.trials {
        cfg = cfg.with_trials(t);
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["troplat", "no-such-command"]), 2);
        assert_eq!(run(["troplat", "entropy", "--seed", "x"]), 2);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["troplat", "--help"]), 0);
    }

    #[test]
    fn domain_errors_exit_one() {
        assert_eq!(run(["troplat", "entropy"]), 1);
        assert_eq!(run(["troplat", "member", "--example", "planar", "--point", "0,x"]), 1);
    }
}
