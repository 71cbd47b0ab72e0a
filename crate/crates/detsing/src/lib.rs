//! Command line, JSON reports and golden examples on top of `detsing-core`.

pub mod commands;
pub mod dto;
pub mod examples;
pub mod markdown;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use detsing_core::verify::{Fact, VerifyLevel};
use detsing_core::{CoefficientField, Error, GroebnerConfig, SingularityKind};

use commands::{IdentitySelector, ResolveConfig, VerifyRequest};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_BAD_PARAMETERS: i32 = 2;
pub const EXIT_RESOURCE_LIMIT: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => EXIT_RESOURCE_LIMIT,
        _ => EXIT_BAD_PARAMETERS,
    }
}

#[derive(Debug, Parser)]
#[command(name = "detsing", version, about = "Embedded resolutions of generic determinantal singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub caps: Caps,
}

#[derive(Debug, Args)]
pub struct Caps {
    /// Largest polynomial (in terms) a Gröbner computation may produce.
    #[arg(long, global = true, env = "DETSING_MAX_TERMS")]
    pub max_terms: Option<usize>,
    /// Largest Gröbner basis a computation may produce.
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sym,
    Skew,
}

impl From<KindArg> for SingularityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sym => SingularityKind::Symmetric,
            KindArg::Skew => SingularityKind::Skew,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    None,
    Identities,
    Full,
}

impl From<LevelArg> for VerifyLevel {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::None => VerifyLevel::None,
            LevelArg::Identities => VerifyLevel::Identities,
            LevelArg::Full => VerifyLevel::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a chart tree and optionally verify it.
    Resolve {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        m: usize,
        /// Minor size (symmetric runs).
        #[arg(long)]
        r: Option<usize>,
        /// Half the minor size (skew runs).
        #[arg(long)]
        l: Option<usize>,
        /// `Q` or `Fp:<p>`.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Expand every chart instead of one per symmetry class.
        #[arg(long)]
        all_charts: bool,
        #[arg(long, value_enum, default_value = "identities")]
        verify: LevelArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a fact, the lemma counterexample or a reduction identity.
    Verify {
        #[arg(long, conflicts_with_all = ["lemma_counterexample", "identity"])]
        fact: Option<String>,
        #[arg(long)]
        lemma_counterexample: bool,
        /// `to-show-Am`, `to-show-Bm-diag` or `to-show-Bm-offdiag`.
        #[arg(long, conflicts_with = "lemma_counterexample")]
        identity: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Chart position `i,j` (1-based).
        #[arg(long)]
        chart: Option<String>,
        /// `Q`, `Fp:<p>`, or `Fp` for p in 3, 5, 7, 101.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Replay the worked examples and compare with the stored goldens.
    Examples {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Golden file to compare with instead of the built-in one.
        #[arg(long)]
        goldens: Option<PathBuf>,
        /// Write the computed values as a new golden file and exit.
        #[arg(long)]
        write_goldens: Option<PathBuf>,
    },
}

enum Failure {
    Algebra(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Algebra(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| usage(e.to_string()))
        }
    }
}

fn parse_chart(s: &str) -> Result<(usize, usize), Failure> {
    let mut it = s.split(',').map(|t| t.trim().parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(i)), Some(Ok(j)), None) if i >= 1 && j >= 1 => Ok((i.min(j) - 1, i.max(j) - 1)),
        _ => Err(usage(format!("bad chart `{s}`, expected i,j"))),
    }
}

fn single_field(spec: &str) -> Result<CoefficientField, Failure> {
    let fields = commands::parse_fields(spec)?;
    match fields.as_slice() {
        [f] => Ok(*f),
        _ => Err(usage("this command needs a single field")),
    }
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    let mut cfg = GroebnerConfig::default();
    if let Some(t) = cli.caps.max_terms {
        cfg.max_terms = t;
    }
    if let Some(b) = cli.caps.max_basis {
        cfg.max_basis_size = b;
    }
    GroebnerConfig::set_defaults(cfg);
    if let Some(w) = cli.caps.workers {
        // Fails only if a pool already exists, which then stays in use.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    match cli.command {
        Command::Resolve { kind, m, r, l, field, all_charts, verify, format, output } => {
            let kind = SingularityKind::from(kind);
            let rank = match kind {
                SingularityKind::Symmetric => r.ok_or_else(|| usage("symmetric runs need --r"))?,
                SingularityKind::Skew => l.ok_or_else(|| usage("skew runs need --l"))?,
            };
            let cfg = ResolveConfig {
                kind,
                m,
                rank,
                field: single_field(&field)?,
                all_charts,
                level: verify.into(),
            };
            let report = commands::resolve(&cfg)?;
            let text = match format {
                FormatArg::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
                FormatArg::Md => markdown::render(&report),
            };
            emit(output.as_ref(), &text)?;
            eprintln!(
                "{} m={} rank={} field={}: {} nodes, {} leaves; verification {}",
                kind.as_str(),
                m,
                rank,
                cfg.field.tag(),
                report.stats.nodes,
                report.stats.leaves,
                if report.pass { "passed" } else { "FAILED" }
            );
            Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Verify { fact, lemma_counterexample, identity, m, l, r, chart, field, output } => {
            let need_m = || m.ok_or_else(|| usage("--m is required"));
            let req = if let Some(f) = fact {
                VerifyRequest::Fact { fact: Fact::parse(&f)?, m: need_m()?, l }
            } else if lemma_counterexample {
                VerifyRequest::Lemma
            } else if let Some(id) = identity {
                VerifyRequest::Identity {
                    which: IdentitySelector::parse(&id)?,
                    m: need_m()?,
                    r,
                    chart: chart.as_deref().map(parse_chart).transpose()?,
                }
            } else {
                return Err(usage("choose one of --fact, --lemma-counterexample, --identity"));
            };
            let fields = commands::parse_fields(&field)?;
            let out = commands::verify(&req, &fields)?;
            emit(output.as_ref(), &(serde_json::to_string_pretty(&out).expect("serializable") + "\n"))?;
            for v in &out.verdicts {
                eprintln!("{} {} [{}]", if v.pass { "pass" } else { "FAIL" }, v.check, v.inputs);
            }
            Ok(if out.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Examples { field, kind, goldens, write_goldens } => {
            let field = single_field(&field)?;
            let entries = examples::run_examples(field, kind.map(Into::into))?;
            if let Some(path) = write_goldens {
                let text = serde_json::to_string_pretty(&examples::goldens_from(entries)).expect("serializable") + "\n";
                emit(Some(&path), &text)?;
                return Ok(EXIT_PASS);
            }
            let text = match goldens {
                Some(p) => std::fs::read_to_string(&p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?,
                None => examples::DEFAULT_GOLDENS.to_string(),
            };
            let goldens = examples::parse_goldens(&text).map_err(|e| usage(format!("bad golden file: {e}")))?;
            let diff = examples::compare(field, &goldens, &entries);
            if diff.is_empty() {
                println!("{} examples match the goldens over {}", entries.len(), field.tag());
                Ok(EXIT_PASS)
            } else {
                for line in &diff {
                    println!("{line}");
                }
                Ok(EXIT_FAIL)
            }
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_PARAMETERS } else { EXIT_PASS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(Failure::Algebra(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_BAD_PARAMETERS
        }
    }
}
