//! The `exodromy` command line.
//!
//! Exit codes: 0 success, 1 a property is false (with its certificate in
//! the output), 2 usage or validation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dictionary::{run_suite_in, CorpusConfig, DEFAULT_LEVEL};
use crate::error::{Error, Result};
use crate::fibrations::classify;
use crate::fincat::dot::to_dot;
use crate::fincat::json::FunctorJson;
use crate::finring::json::RingJson;
use crate::finring::{is_perfectly_reduced, local_decomposition, FinCommRing};
use crate::galmodel::json::{GalModelJson, SplittingJson};
use crate::galmodel::{cyclotomic_splitting, gal_finite_ring, gal_number_ring, relative_model, GaloisCategory};

#[derive(Debug, Parser)]
#[command(name = "exodromy", version, about = "Galois categories of finite rings and number-ring models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a ring and inspect it.
    Ring {
        #[command(subcommand)]
        action: RingAction,
        #[command(flatten)]
        output: Output,
    },
    /// Build Galois categories.
    Gal {
        #[command(subcommand)]
        action: GalAction,
        #[command(flatten)]
        output: Output,
    },
    /// Classify a functor given as a `functor.v1` document.
    Classify {
        functor: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Run the dictionary suite.
    Check {
        /// Named suite; only `default` exists.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = DEFAULT_LEVEL as u64, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        /// Corpus configuration to run instead of (or, with --suite, in addition to) the default.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Print case names only.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum RingAction {
    /// Validate and print the tables.
    Build { ring: PathBuf },
    /// Local factors with residue fields.
    Decompose { ring: PathBuf },
    /// The perfectly-reduced criterion; exit 1 with a certificate when it fails.
    Perfect { ring: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum GalAction {
    /// A `galmodel.v1` document for a ring, a splitting datum, or a cyclotomic model.
    Build {
        /// A `ring.v1` document.
        ring: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_LEVEL as u64, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        /// Conductor of a cyclotomic model of Z.
        #[arg(long, conflicts_with_all = ["ring", "splitting"])]
        cyclotomic: Option<u64>,
        /// A `splitting.v1` document.
        #[arg(long, conflicts_with = "ring")]
        splitting: Option<PathBuf>,
        /// Primes (labels, for a splitting datum) to include.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<String>,
        /// Leave out the generic point.
        #[arg(long)]
        no_generic: bool,
    },
    /// The `functor.v1` document of `Gal(O_K) -> Gal(Z)` for the fixed field of a subgroup.
    Relative {
        #[arg(long)]
        cyclotomic: u64,
        /// Residues mod the conductor forming the subgroup.
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
}

/// A failure with its exit code.
struct Exit {
    code: i32,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Exit {
    Exit {
        code: 2,
        message: message.into(),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn load_ring(path: &Path) -> Result<FinCommRing> {
    read_json::<RingJson>(path)?.to_ring()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> std::result::Result<(), Exit> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn json_only(output: &Output) -> std::result::Result<(), Exit> {
    match output.format {
        Format::Json => Ok(()),
        Format::Dot => Err(usage("this command only writes JSON")),
    }
}

#[derive(Serialize)]
struct RingSummary {
    size: usize,
    characteristic: u64,
    reduced: bool,
    local: bool,
    field: bool,
    #[serde(flatten)]
    ring: RingJson,
}

#[derive(Serialize)]
struct FactorSummary {
    idempotent: usize,
    size: usize,
    residue_characteristic: u64,
    residue_degree: usize,
    maximal_ideal: Vec<usize>,
}

#[derive(Serialize)]
struct Decomposition {
    factors: Vec<FactorSummary>,
}

fn ring_command(action: &RingAction, output: &Output, stdout: &mut dyn Write) -> std::result::Result<i32, Exit> {
    json_only(output)?;
    match action {
        RingAction::Build { ring } => {
            let a = load_ring(ring)?;
            let summary = RingSummary {
                size: a.size(),
                characteristic: a.characteristic(),
                reduced: a.is_reduced(),
                local: a.is_local(),
                field: a.is_field(),
                ring: (&a).into(),
            };
            emit(output, &json(&summary), stdout)?;
            Ok(0)
        }
        RingAction::Decompose { ring } => {
            let a = load_ring(ring)?;
            let factors: Vec<FactorSummary> = local_decomposition(&a)?
                .factors
                .iter()
                .map(|f| FactorSummary {
                    idempotent: f.idempotent,
                    size: f.ring.size(),
                    residue_characteristic: f.residue_characteristic,
                    residue_degree: f.residue_degree,
                    maximal_ideal: f.prime_ideal(),
                })
                .collect();
            emit(output, &json(&Decomposition { factors }), stdout)?;
            Ok(0)
        }
        RingAction::Perfect { ring } => {
            let a = load_ring(ring)?;
            let verdict = is_perfectly_reduced(&a);
            emit(output, &json(&verdict), stdout)?;
            Ok(if verdict.holds { 0 } else { 1 })
        }
    }
}

fn write_gal(g: &GaloisCategory, name: &str, output: &Output, stdout: &mut dyn Write) -> std::result::Result<(), Exit> {
    let text = match output.format {
        Format::Json => json(&GalModelJson::from(g)),
        Format::Dot => to_dot(g.category(), name, Some(g.labels())),
    };
    emit(output, &text, stdout)
}

fn gal_command(action: &GalAction, output: &Output, stdout: &mut dyn Write) -> std::result::Result<i32, Exit> {
    match action {
        GalAction::Build {
            ring,
            level,
            cyclotomic,
            splitting,
            primes,
            no_generic,
        } => {
            let labels: Vec<&str> = primes.iter().map(String::as_str).collect();
            let (g, name) = if let Some(m) = cyclotomic {
                let numbers = primes
                    .iter()
                    .map(|p| p.parse::<u64>().map_err(|_| usage(format!("bad prime {p:?}"))))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let s = cyclotomic_splitting(*m, &numbers)?;
                (gal_number_ring(&s, &labels, !no_generic)?, format!("Gal(Z) m={m}"))
            } else if let Some(path) = splitting {
                let s = read_json::<SplittingJson>(path)?.to_datum()?;
                (gal_number_ring(&s, &labels, !no_generic)?, "Gal".to_string())
            } else if let Some(path) = ring {
                let a = Arc::new(load_ring(path)?);
                (gal_finite_ring(&a, *level as usize)?, format!("Gal at level {level}"))
            } else {
                return Err(usage("give a ring document, --splitting or --cyclotomic"));
            };
            write_gal(&g, &name, output, stdout)?;
            Ok(0)
        }
        GalAction::Relative {
            cyclotomic,
            subgroup,
            primes,
        } => {
            json_only(output)?;
            let rel = relative_model(*cyclotomic, subgroup, primes)?;
            let doc = FunctorJson::from(&rel.functor);
            emit(output, &json(&doc), stdout)?;
            Ok(0)
        }
    }
}

fn classify_command(path: &Path, output: &Output, stdout: &mut dyn Write) -> std::result::Result<i32, Exit> {
    json_only(output)?;
    let doc: FunctorJson = read_json(path)?;
    let f = doc.to_functor(path.parent())?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let report = classify(&name, &f)?;
    emit(output, &json(&report), stdout)?;
    Ok(0)
}

fn check_command(
    suite: Option<&str>,
    level: u64,
    corpus: Option<&Path>,
    list: bool,
    output: &Output,
    stdout: &mut dyn Write,
) -> std::result::Result<i32, Exit> {
    json_only(output)?;
    let mut config = match (suite, corpus) {
        (Some("default"), _) | (None, None) => CorpusConfig::default_suite(),
        (Some(other), _) => return Err(usage(format!("unknown suite {other:?}"))),
        (None, Some(_)) => CorpusConfig::default(),
    };
    if let Some(path) = corpus {
        let extra: CorpusConfig = read_json(path)?;
        config.default_rings |= extra.default_rings;
        config.cyclotomic.extend(extra.cyclotomic);
        config.rings.extend(extra.rings);
        config.maps.extend(extra.maps);
        config.models.extend(extra.models);
    }
    let card = run_suite_in(&config, level as usize, corpus.and_then(Path::parent));
    if list {
        let mut text = String::new();
        for c in &card.cases {
            text.push_str(&c.name);
            text.push('\n');
        }
        emit(output, &text, stdout)?;
        return Ok(0);
    }
    emit(output, &json(&card), stdout)?;
    Ok(if card.summary.ok { 0 } else { 1 })
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> std::result::Result<i32, Exit> {
    match &cli.command {
        Command::Ring { action, output } => ring_command(action, output, stdout),
        Command::Gal { action, output } => gal_command(action, output, stdout),
        Command::Classify { functor, output } => classify_command(functor, output, stdout),
        Command::Check {
            suite,
            level,
            corpus,
            list,
            output,
        } => check_command(suite.as_deref(), *level, corpus.as_deref(), *list, output, stdout),
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        Err(exit) => {
            let _ = writeln!(stderr, "error: {}", exit.message);
            exit.code
        }
    }
}
