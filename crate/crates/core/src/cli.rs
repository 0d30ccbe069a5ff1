//! Command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input (parse failure or metric axioms),
//! 3 an ultrametric-only command given a non-ultrametric, 4 numeric failure.
//! Failures print their witness on standard error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::gap::{estimate_gap_classic, estimate_gap_s, estimate_supremal_negtype};
use crate::generate::generate_random_ultrametric;
use crate::gramian::{build_gramian, hilbert_embedding, min_eigenpair, CLUSTER_TOL};
use crate::io::{parse_bytes, write_matrix, Format};
use crate::linalg::{sym_eigen, JACOBI_TOL};
use crate::metric::{distinct_distances, validate, DistanceMatrix};
use crate::report::{
    input_digest, render, AnalysisReport, CoterieOutput, EmbedOutput, GapOutput, OutputFormat,
    Render, SpectrumOutput, SupremalOutput, ValidateOutput, SCHEMA,
};
use crate::ultrametric::{eigenspace_basis, find_coteries, reorder_nondegenerate};

#[derive(Parser, Debug)]
#[command(
    name = "ultragram",
    version,
    about = "Gramian spectra and negative type of finite metric spaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GapMode {
    S,
    Classic,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Distance matrix file (CSV or JSON); `-` or omitted reads standard input.
    #[arg(long, short)]
    input: Option<PathBuf>,

    /// Matrix format; inferred from the extension or the content when omitted.
    #[arg(long, value_enum)]
    input_format: Option<MatrixFormatArg>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Metric and ultrametric checks.
    Validate(InputArgs),
    /// Coterie decomposition of an ultrametric.
    Coteries(InputArgs),
    /// Full pipeline: validate, relabel if degenerate, closed form and numeric spectrum.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        /// Also estimate both negative type gaps.
        #[arg(long)]
        gap: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the Hilbert-space embedding.
        #[arg(long)]
        embed: bool,
        /// Also estimate the supremal negative type.
        #[arg(long)]
        supremal: bool,
        #[arg(long, default_value_t = 32.0)]
        pmax: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Record per-stage wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Sampling estimate of a negative type gap.
    Gap {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = GapMode::S)]
        mode: GapMode,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Coordinates realizing (X, d^(p/2)) in Euclidean space.
    Embed {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
    /// Bisection for the supremal negative type.
    Supremal {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 32.0)]
        pmax: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Random ultrametric from a seeded hierarchy.
    Generate {
        #[arg(long)]
        points: usize,
        /// Strictly increasing level values, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eigendecomposition of G_p.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
}

/// Runs the CLI against the process's standard streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(
        argv,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let format = match cli.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Text => OutputFormat::Text,
    };
    match dispatch(cli.command, format, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit<R: Render>(r: &R, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    out.write_all(&render(r, format))?;
    Ok(())
}

fn load(args: &InputArgs, stdin: &mut dyn Read) -> Result<DistanceMatrix> {
    let (bytes, guessed) = match args.input.as_deref() {
        None => (read_all(stdin)?, None),
        Some(p) if p.as_os_str() == "-" => (read_all(stdin)?, None),
        Some(p) => (std::fs::read(p)?, Format::from_path(p)),
    };
    let format = match args.input_format {
        Some(MatrixFormatArg::Csv) => Format::Csv,
        Some(MatrixFormatArg::Json) => Format::Json,
        None => guessed.unwrap_or_else(|| Format::sniff(&bytes)),
    };
    parse_bytes(&bytes, format)
}

fn read_all(r: &mut dyn Read) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    Ok(buf)
}

fn load_metric(args: &InputArgs, stdin: &mut dyn Read) -> Result<DistanceMatrix> {
    let d = load(args, stdin)?;
    if let Some(v) = validate(&d).first_metric_violation() {
        return Err(Error::NotMetric(v));
    }
    Ok(d)
}

fn dispatch(
    command: Command,
    format: OutputFormat,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    match command {
        Command::Validate(input) => {
            let d = load(&input, stdin)?;
            let report = validate(&d);
            let witness = report.first_metric_violation();
            emit(
                &ValidateOutput {
                    schema: SCHEMA.into(),
                    n_points: d.n_points(),
                    report,
                },
                format,
                out,
            )?;
            if let Some(v) = witness {
                writeln!(err, "not a metric: {v}")?;
                return Ok(2);
            }
        }
        Command::Coteries(input) => {
            let d = load_metric(&input, stdin)?;
            let c = find_coteries(&d)?;
            let labels = d.labels();
            let out_value = CoterieOutput {
                schema: SCHEMA.into(),
                alpha1: c.alpha1,
                coteries: c.labeled(labels),
                coterie_indices: c.coteries.clone(),
                residual: c.residual.iter().map(|&i| labels[i].clone()).collect(),
                degenerate: (d.n_points() >= 3).then(|| c.is_degenerate()),
            };
            emit(&out_value, format, out)?;
        }
        Command::Analyze {
            input,
            p,
            gap,
            samples,
            seed,
            embed,
            supremal,
            pmax,
            tol,
            timings,
        } => {
            let d = load_metric(&input, stdin)?;
            let opts = AnalyzeOptions {
                p,
                gap: gap.then_some((samples, seed)),
                embed,
                supremal: supremal.then_some((pmax, tol)),
                timings,
            };
            emit(&analyze(&d, &opts)?, format, out)?;
        }
        Command::Gap {
            input,
            p,
            mode,
            samples,
            seed,
        } => {
            let d = load_metric(&input, stdin)?;
            let lambda_min_numeric = min_eigenpair(&build_gramian(&d, p)?, CLUSTER_TOL)?.lambda_min;
            let (mode_name, estimate, s, t) = match mode {
                GapMode::S => {
                    let (v, w) = estimate_gap_s(&d, p, samples, seed)?;
                    ("s", v, Some(w.s().to_vec()), Some(w.t().to_vec()))
                }
                GapMode::Classic => (
                    "classic",
                    estimate_gap_classic(&d, p, samples, seed)?,
                    None,
                    None,
                ),
            };
            let g = GapOutput {
                schema: SCHEMA.into(),
                mode: mode_name.into(),
                p,
                samples,
                seed,
                estimate,
                lambda_min_numeric,
                s,
                t,
            };
            emit(&g, format, out)?;
        }
        Command::Embed { input, p } => {
            let d = load_metric(&input, stdin)?;
            let coordinates = hilbert_embedding(&d, p)?;
            let e = EmbedOutput {
                schema: SCHEMA.into(),
                p,
                labels: d.labels().to_vec(),
                coordinates,
            };
            emit(&e, format, out)?;
        }
        Command::Supremal { input, pmax, tol } => {
            let d = load_metric(&input, stdin)?;
            let supremal_type = estimate_supremal_negtype(&d, pmax, tol)?;
            emit(
                &SupremalOutput {
                    schema: SCHEMA.into(),
                    pmax,
                    tol,
                    supremal_type,
                },
                format,
                out,
            )?;
        }
        Command::Generate {
            points,
            levels,
            seed,
        } => {
            let d = generate_random_ultrametric(points, &levels, seed)?;
            let matrix_format = match format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Text => Format::Csv,
            };
            write_matrix(&d, matrix_format, out)?;
        }
        Command::Spectrum { input, p } => {
            let d = load_metric(&input, stdin)?;
            let s = sym_eigen(&build_gramian(&d, p)?, JACOBI_TOL)?;
            let o = SpectrumOutput {
                schema: SCHEMA.into(),
                p,
                eigenvalues: s.eigenvalues,
                eigenvectors: s.eigenvectors,
                residual_bound: s.residual_bound,
                sweeps: s.sweeps,
            };
            emit(&o, format, out)?;
        }
    }
    Ok(0)
}

/// Optional stages of [`analyze`].
#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub p: f64,
    /// `(samples, seed)` for both gap estimators.
    pub gap: Option<(usize, u64)>,
    pub embed: bool,
    /// `(p_max, tol)` for the supremal-type bisection.
    pub supremal: Option<(f64, f64)>,
    pub timings: bool,
}

/// The `analyze` pipeline on a validated metric. Degenerate ultrametric
/// labelings are relabeled first and every index-based result refers to the
/// relabeled space.
pub fn analyze(d: &DistanceMatrix, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let p = opts.p;
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, f64>| {
        let now = Instant::now();
        timings.insert(name.to_string(), (now - clock).as_secs_f64() * 1e3);
        clock = now;
    };

    let validation = validate(d);
    if let Some(v) = validation.first_metric_violation() {
        return Err(Error::NotMetric(v));
    }
    let alphas = distinct_distances(d).alphas;
    let n = d.n_points();
    lap("validate", &mut timings);

    let mut work = d.clone();
    let mut coteries = Vec::new();
    let mut degenerate = false;
    let mut permutation_applied = None;
    let mut structural = None;
    if validation.is_ultrametric && n >= 2 {
        let c = find_coteries(d)?;
        degenerate = n >= 3 && c.is_degenerate();
        if n >= 3 {
            let (relabeled, perm) = reorder_nondegenerate(d)?;
            if degenerate {
                permutation_applied = Some(perm);
            }
            work = relabeled;
            coteries = find_coteries(&work)?.labeled(work.labels());
            if p > 0.0 {
                structural = Some(eigenspace_basis(&work, p)?);
            }
        } else {
            coteries = c.labeled(d.labels());
        }
    }
    lap("structure", &mut timings);

    let g = build_gramian(&work, p)?;
    let numeric = min_eigenpair(&g, CLUSTER_TOL)?;
    lap("spectrum", &mut timings);

    let dimension_numeric = numeric.multiplicity();
    let (lambda_min_closed_form, eigenspace_dimension, eigenspace_basis) = match structural {
        Some(e) => (Some(e.lambda_min), e.dimension, e.basis),
        None => (None, dimension_numeric, numeric.eigenspace.clone()),
    };

    let (gap_s_estimate, gap_classic_estimate) = match opts.gap {
        Some((samples, seed)) => {
            let s = estimate_gap_s(&work, p, samples, seed)?.0;
            let c = estimate_gap_classic(&work, p, samples, seed)?;
            lap("gap", &mut timings);
            (Some(s), Some(c))
        }
        None => (None, None),
    };
    let supremal_type = match opts.supremal {
        Some((pmax, tol)) => {
            let s = estimate_supremal_negtype(&work, pmax, tol)?;
            lap("supremal", &mut timings);
            Some(s)
        }
        None => None,
    };
    let embedding = if opts.embed {
        let e = hilbert_embedding(&work, p)?;
        lap("embedding", &mut timings);
        Some(e)
    } else {
        None
    };

    Ok(AnalysisReport {
        schema: SCHEMA.into(),
        input_digest: input_digest(d),
        p,
        n_points: n,
        is_ultrametric: validation.is_ultrametric,
        alphas,
        coteries,
        degenerate,
        permutation_applied,
        lambda_min_closed_form,
        lambda_min_numeric: numeric.lambda_min,
        eigenspace_dimension,
        eigenspace_dimension_numeric: dimension_numeric,
        eigenspace_basis,
        gap_s_estimate,
        gap_classic_estimate,
        supremal_type,
        embedding,
        timings: opts.timings.then_some(timings),
    })
}
