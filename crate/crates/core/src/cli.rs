//! Batch front end: argument grammar, validated run configuration, and the
//! documents each subcommand emits.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{fs_bound, lemma_minda, lemma_ravi, BoundReport, Scalar};
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::oracle::{
    extremal, fmt17, format_scalar, lemma_sup, sup_search, Execution, ExtremalKind, SearchOptions, VerifyReport,
};
use crate::psi_map::ClassSpec;
use crate::targets::Target;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "fszego", version, about = "Fekete-Szego bounds and their numerical verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Evaluate the closed-form bound
    Bound(CommonArgs),
    /// Compare the bound with the bidisk supremum search
    Verify(CommonArgs),
    /// Coefficients of the extremal functions K2, K3, G(gamma), H(gamma)
    Extremal(CommonArgs),
    /// CSV sweep of bound and empirical supremum over a mu range
    Table(CommonArgs),
    /// Coefficient-body lemmas against the bidisk search
    Lemma(CommonArgs),
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// family[:p1,p2,...], e.g. identity, ruscheweyh:2, salagean:1, owa:0.5, multiplier:2,1, dziok:2,1/1
    #[arg(long, default_value = "identity")]
    pub kernel: String,
    /// janowski:C,D or custom:B1,B2
    #[arg(long, default_value = "janowski:1,-1", allow_hyphen_values = true)]
    pub target: String,
    /// re or re,im
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// start,stop,count
    #[arg(long, allow_hyphen_values = true)]
    pub mu_range: Option<String>,
    #[arg(long, default_value_t = 400)]
    pub density: usize,
    #[arg(long, default_value_t = 60)]
    pub refine: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// gamma for the G and H extremal functions
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// v sweep for `lemma`: start,stop,count
    #[arg(long, default_value = "-2,3,41", allow_hyphen_values = true)]
    pub v_range: String,
    /// number of random complex v for `lemma`
    #[arg(long, default_value_t = 20)]
    pub complex_samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// write to this file instead of standard output
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// evaluate the search grid on one thread
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Command {
    Bound,
    Verify,
    Extremal,
    Table,
    Lemma,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MuSpec {
    Single(Complex64),
    Range { start: f64, stop: f64, count: usize },
}

impl MuSpec {
    pub fn values(&self) -> Vec<Complex64> {
        match *self {
            MuSpec::Single(mu) => vec![mu],
            MuSpec::Range { start, stop, count } => linspace(start, stop, count).map(Complex64::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub spec: ClassSpec,
    pub mu: MuSpec,
    pub search: SearchOptions,
    pub gamma: f64,
    pub v_range: (f64, f64, usize),
    pub complex_samples: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn linspace(start: f64, stop: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| {
        if count == 1 {
            start
        } else {
            start + (stop - start) * i as f64 / (count - 1) as f64
        }
    })
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{what}: `{s}` is not a number")))
}

fn parse_mu(s: &str) -> Result<Complex64> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re, "mu")?, parse_f64(im, "mu")?)),
        None => Ok(Complex64::new(parse_f64(s, "mu")?, 0.0)),
    }
}

fn parse_range(s: &str, what: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(',').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(Error::Config(format!("{what}: expected start,stop,count, got `{s}`")));
    };
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{what}: count `{count}` is not a positive integer")))?;
    if count == 0 {
        return Err(Error::Config(format!("{what}: count must be >= 1")));
    }
    Ok((parse_f64(start, what)?, parse_f64(stop, what)?, count))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let (command, args) = match &cli.command {
            CliCommand::Bound(a) => (Command::Bound, a),
            CliCommand::Verify(a) => (Command::Verify, a),
            CliCommand::Extremal(a) => (Command::Extremal, a),
            CliCommand::Table(a) => (Command::Table, a),
            CliCommand::Lemma(a) => (Command::Lemma, a),
        };
        let kernel: Kernel = args.kernel.parse()?;
        let target: Target = args.target.parse()?;
        let spec = ClassSpec::new(args.alpha, kernel, target).map_err(|e| Error::Config(e.to_string()))?;
        let mu = match (&args.mu, &args.mu_range) {
            (Some(_), Some(_)) => return Err(Error::Config("give either --mu or --mu-range, not both".into())),
            (Some(m), None) => MuSpec::Single(parse_mu(m)?),
            (None, Some(r)) => {
                let (start, stop, count) = parse_range(r, "mu-range")?;
                MuSpec::Range { start, stop, count }
            }
            (None, None) => MuSpec::Single(Complex64::new(0.0, 0.0)),
        };
        if args.density < 8 {
            return Err(Error::Config(format!("density must be >= 8, got {}", args.density)));
        }
        if command == Command::Table && matches!(mu, MuSpec::Single(z) if z.im != 0.0) {
            return Err(Error::Config("table sweeps real mu only".into()));
        }
        Ok(Self {
            command,
            spec,
            mu,
            search: SearchOptions {
                grid_density: args.density,
                refine_steps: args.refine,
                seed: args.seed,
                execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
            },
            gamma: args.gamma,
            v_range: parse_range(&args.v_range, "v-range")?,
            complex_samples: args.complex_samples,
            format: args.format,
            output: args.output.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalEntry {
    pub kind: String,
    pub a2: Complex64,
    pub a3: Complex64,
    pub functional: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalDocument {
    pub spec: ClassSpec,
    pub mu: Scalar,
    pub bound: f64,
    pub entries: Vec<ExtremalEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub mu: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
    pub regime: String,
    pub bound: f64,
    pub empirical_sup: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaRow {
    /// `minda` (real v) or `ravi` (complex v).
    pub lemma: String,
    pub v: Scalar,
    pub closed_form: f64,
    pub empirical_sup: f64,
    pub gap: f64,
}

/// Output of one run: the rendered document and the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub document: String,
    pub status: u8,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn scalar(mu: Complex64) -> Scalar {
    if mu.im == 0.0 {
        Scalar::Real(mu.re)
    } else {
        Scalar::Complex(mu)
    }
}

fn one_or_many<T: Serialize>(items: &[T], single: bool) -> String {
    if single {
        to_json(&items[0])
    } else {
        to_json(&items)
    }
}

fn bound_reports(cfg: &RunConfig) -> Vec<BoundReport> {
    cfg.mu.values().into_iter().map(|mu| fs_bound(&cfg.spec, mu)).collect()
}

fn csv_bound_rows(reports: &[BoundReport]) -> String {
    let mut out = String::from("mu,sigma1,sigma2,sigma3,regime,bound,v\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            format_scalar(r.mu),
            fmt17(r.sigma1),
            fmt17(r.sigma2),
            fmt17(r.sigma3),
            r.regime.as_str(),
            fmt17(r.bound),
            format_scalar(r.v)
        ));
    }
    out
}

/// [`EXIT_VIOLATION`] if any report exceeds its bound, else [`EXIT_OK`].
pub fn verify_status(reports: &[VerifyReport]) -> u8 {
    if reports.iter().any(|r| r.violation) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

/// Executes a validated configuration and renders its document.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    let single = matches!(cfg.mu, MuSpec::Single(_));
    let mut status = EXIT_OK;
    let document = match cfg.command {
        Command::Bound => {
            let reports = bound_reports(cfg);
            match cfg.format {
                Format::Json => one_or_many(&reports, single),
                Format::Csv => csv_bound_rows(&reports),
            }
        }
        Command::Verify => {
            let reports = cfg
                .mu
                .values()
                .into_iter()
                .map(|mu| sup_search(&cfg.spec, mu, &cfg.search))
                .collect::<Result<Vec<VerifyReport>>>()?;
            status = verify_status(&reports);
            match cfg.format {
                Format::Json => one_or_many(&reports, single),
                Format::Csv => {
                    let mut out = format!("{}\n", VerifyReport::CSV_HEADER);
                    for r in &reports {
                        out.push_str(&r.csv_row());
                        out.push('\n');
                    }
                    out
                }
            }
        }
        Command::Extremal => {
            let kinds = [
                ExtremalKind::K2,
                ExtremalKind::K3,
                ExtremalKind::Ggamma(cfg.gamma),
                ExtremalKind::Hgamma(cfg.gamma),
            ];
            let docs = cfg
                .mu
                .values()
                .into_iter()
                .map(|mu| {
                    let entries = kinds
                        .iter()
                        .map(|k| {
                            let (a2, a3) = extremal(*k, &cfg.spec)?;
                            Ok(ExtremalEntry { kind: k.label(), a2, a3, functional: (a3 - mu * a2 * a2).norm() })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(ExtremalDocument {
                        spec: cfg.spec.clone(),
                        mu: scalar(mu),
                        bound: fs_bound(&cfg.spec, mu).bound,
                        entries,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match cfg.format {
                Format::Json => one_or_many(&docs, single),
                Format::Csv => {
                    let mut out = String::from("mu,kind,a2_re,a2_im,a3_re,a3_im,functional,bound\n");
                    for d in &docs {
                        for e in &d.entries {
                            out.push_str(&format!(
                                "{},{},{},{},{},{},{},{}\n",
                                format_scalar(d.mu),
                                e.kind,
                                fmt17(e.a2.re),
                                fmt17(e.a2.im),
                                fmt17(e.a3.re),
                                fmt17(e.a3.im),
                                fmt17(e.functional),
                                fmt17(d.bound)
                            ));
                        }
                    }
                    out
                }
            }
        }
        Command::Table => {
            let mut rows = Vec::new();
            for mu in cfg.mu.values() {
                let b = fs_bound(&cfg.spec, mu);
                let v = sup_search(&cfg.spec, mu, &cfg.search)?;
                if v.violation {
                    status = EXIT_VIOLATION;
                }
                rows.push(TableRow {
                    mu: mu.re,
                    sigma1: b.sigma1,
                    sigma2: b.sigma2,
                    sigma3: b.sigma3,
                    regime: b.regime.as_str().into(),
                    bound: b.bound,
                    empirical_sup: v.empirical_sup,
                    gap: v.gap,
                });
            }
            match cfg.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut out = String::from("mu,sigma1,sigma2,sigma3,regime,bound,empirical_sup,gap\n");
                    for r in &rows {
                        out.push_str(&format!(
                            "{},{},{},{},{},{},{},{}\n",
                            fmt17(r.mu),
                            fmt17(r.sigma1),
                            fmt17(r.sigma2),
                            fmt17(r.sigma3),
                            r.regime,
                            fmt17(r.bound),
                            fmt17(r.empirical_sup),
                            fmt17(r.gap)
                        ));
                    }
                    out
                }
            }
        }
        Command::Lemma => {
            let rows = lemma_rows(cfg);
            match cfg.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut out = String::from("lemma,v,closed_form,empirical_sup,gap\n");
                    for r in &rows {
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            r.lemma,
                            format_scalar(r.v),
                            fmt17(r.closed_form),
                            fmt17(r.empirical_sup),
                            fmt17(r.gap)
                        ));
                    }
                    out
                }
            }
        }
    };
    Ok(RunOutput { document, status })
}

fn lemma_rows(cfg: &RunConfig) -> Vec<LemmaRow> {
    let (start, stop, count) = cfg.v_range;
    let mut rows: Vec<LemmaRow> = linspace(start, stop, count)
        .map(|v| {
            let closed_form = lemma_minda(v);
            let sup = lemma_sup(v.into(), &cfg.search).value;
            LemmaRow { lemma: "minda".into(), v: Scalar::Real(v), closed_form, empirical_sup: sup, gap: closed_form - sup }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.search.seed);
    for _ in 0..cfg.complex_samples {
        let v = Complex64::new(rng.gen_range(-2.0..3.0), rng.gen_range(-2.0..2.0));
        let closed_form = lemma_ravi(v);
        let sup = lemma_sup(v, &cfg.search).value;
        rows.push(LemmaRow { lemma: "ravi".into(), v: Scalar::Complex(v), closed_form, empirical_sup: sup, gap: closed_form - sup });
    }
    rows
}

#[derive(Debug, Serialize)]
struct ErrorDocument<'a> {
    error: &'a str,
    message: String,
}

/// Parses, runs and writes. Returns the process exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            if is_help {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return if is_help { EXIT_OK } else { EXIT_CONFIG };
        }
    };
    let result = RunConfig::from_cli(&cli).and_then(|cfg| {
        let out = run(&cfg)?;
        match &cfg.output {
            Some(path) => std::fs::write(path, &out.document)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?,
            None => stdout
                .write_all(out.document.as_bytes())
                .map_err(|e| Error::Config(format!("cannot write output: {e}")))?,
        }
        Ok(out.status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            let doc = ErrorDocument { error: "ConfigError", message: e.to_string() };
            let _ = writeln!(stderr, "{}", serde_json::to_string(&doc).expect("serializable"));
            EXIT_CONFIG
        }
    }
}
