//! Command implementations behind the `bolkit` binary.
//!
//! Every command writes its report to the supplied writer and returns the
//! process exit code; see [`exit`] for the table.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use bolkit_core::format::{self, ParseError};
use bolkit_core::magma::{self, InvertibleSet};
use bolkit_core::ring;
use bolkit_core::search::{
    self, CorpusSummary, SearchKind, SearchMode, SearchOptions, SearchResult, SearchSpec,
    SearchSummary, Structure, Target,
};
use bolkit_core::{fixtures, CayleyTable, Error, FinRing, PropertyReport};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PROPERTY_FAILS: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const NOT_CLOSED: u8 = 3;
    pub const NO_UNITY: u8 = 4;
    pub const NOT_STRONGLY_RIGHT_ALTERNATIVE: u8 = 5;
    pub const BUDGET_EXCEEDED: u8 = 6;
}

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "BOLKIT_OUT_DIR";

/// A command that could not complete, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: exit::INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotClosed(..) => exit::NOT_CLOSED,
            Error::NoUnity => exit::NO_UNITY,
            Error::NotStronglyRightAlternative(_) => exit::NOT_STRONGLY_RIGHT_ALTERNATIVE,
            Error::TheoremViolation(_) | Error::NonUniqueInverse { .. } => exit::PROPERTY_FAILS,
            Error::NoNeutral
            | Error::InvalidTable(_)
            | Error::NotBol(_)
            | Error::NotInvertible(_)
            | Error::InvalidRing(_)
            | Error::NotAlternative(_)
            | Error::InvalidSpec(_) => exit::INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::input(format!("{e:#}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // A closed stdout (`bolkit check ... | head`) is not a failure.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure {
                code: exit::OK,
                message: e.to_string(),
            };
        }
        Failure::input(e.to_string())
    }
}

pub type CmdResult = Result<u8, Failure>;

#[derive(Debug, Parser)]
#[command(
    name = "bolkit",
    version,
    about = "Bol and Moufang checks, loop extraction and searches on finite tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check identities on every record of a structure file.
    Check(CheckArgs),
    /// Extract the loop of two-sided invertible elements of a magma.
    Jloop(ExtractArgs),
    /// Extract the unit loop of a ring.
    Units(ExtractArgs),
    /// Extract the quasiregular loop of a ring under x + y + xy.
    Quasi(ExtractArgs),
    /// Enumerate or sample small structures.
    Search(SearchArgs),
    /// Run the theorem and corollary checks over a corpus.
    Verify(VerifyArgs),
    /// Write named fixture files.
    Fixtures(FixturesArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub path: PathBuf,
    /// Comma-separated subset of bol, flexible, moufang, loop, rightalt,
    /// leftalt, sra; default is every one that applies.
    #[arg(long, value_delimiter = ',')]
    pub props: Vec<CheckProp>,
    /// One JSON record per check instead of human-readable lines.
    #[arg(long)]
    pub machine: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckProp {
    Bol,
    Flexible,
    Moufang,
    Loop,
    Rightalt,
    Leftalt,
    Sra,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    pub path: PathBuf,
    /// Output magma file; defaults to `<stem>.<command>.magma` in the output
    /// directory.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub kind: SearchKind,
    /// Required for magma kinds; ring kinds take it from --add-group.
    #[arg(long)]
    pub order: Option<usize>,
    /// Cyclic factors of the additive group, e.g. `2,2`.
    #[arg(long, value_delimiter = ',')]
    pub add_group: Vec<usize>,
    #[arg(long, default_value = "exhaustive")]
    pub mode: SearchMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draws in random mode.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long)]
    pub iso_reduce: bool,
    #[arg(long, default_value = "none")]
    pub target: Target,
    /// Stop after this many emitted structures.
    #[arg(long)]
    pub limit: Option<u64>,
    /// Worker threads; never changes the output.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    /// Directory for `certificates.txt` and `summary.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A structure file or a directory of them (`.json` files are skipped).
    pub corpus: PathBuf,
}

#[derive(Debug, Args)]
pub struct FixturesArgs {
    /// Fixture names: z<n>, zero-<m1>x<m2>..., zorn_gf2, or a group name
    /// (c1..c8, klein4, s3, c2xc4, c2xc2xc2, d4, q8).
    pub names: Vec<String>,
    /// Write every standard fixture.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Check(args) => check(args, out),
        Command::Jloop(args) => extract(args, Extraction::Jloop, out),
        Command::Units(args) => extract(args, Extraction::Units, out),
        Command::Quasi(args) => extract(args, Extraction::Quasi, out),
        Command::Search(args) => search_cmd(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Fixtures(args) => write_fixtures(args, out),
    }
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}

pub fn read_file(path: &Path) -> Result<Vec<Structure>, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let structures = format::read_structures(&text).map_err(|e| parse_failure(path, e))?;
    if structures.is_empty() {
        return Err(Failure::input(format!("{}: no records", path.display())));
    }
    Ok(structures)
}

fn read_single(path: &Path) -> Result<Structure, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::read_structure(&text).map_err(|e| parse_failure(path, e))
}

/// Output directory: explicit flag, then the environment override, then the
/// current directory.
fn out_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

const MAGMA_PROPS: [CheckProp; 6] = [
    CheckProp::Bol,
    CheckProp::Flexible,
    CheckProp::Moufang,
    CheckProp::Loop,
    CheckProp::Rightalt,
    CheckProp::Leftalt,
];

fn check_magma(t: &CayleyTable, prop: CheckProp) -> Result<PropertyReport, Failure> {
    Ok(match prop {
        CheckProp::Bol => magma::check_right_bol(t),
        CheckProp::Flexible => magma::check_flexible(t),
        CheckProp::Moufang => magma::check_moufang(t),
        CheckProp::Loop => magma::is_loop(t),
        CheckProp::Rightalt => magma::check_right_alternative(t),
        CheckProp::Leftalt => magma::check_left_alternative(t),
        CheckProp::Sra => return Err(Failure::input("sra applies to ring files only")),
    })
}

fn check_ring(r: &FinRing, prop: CheckProp) -> Result<PropertyReport, Failure> {
    Ok(match prop {
        CheckProp::Rightalt => ring::check_right_alternative(r)?,
        CheckProp::Leftalt => ring::check_left_alternative(r)?,
        CheckProp::Sra => ring::check_strongly_right_alternative(r)?,
        other => check_magma(r.mul_table(), other)?,
    })
}

fn check(args: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let structures = read_file(&args.path)?;
    let mut reports = Vec::new();
    for s in &structures {
        let props: Vec<CheckProp> = match (args.props.is_empty(), s) {
            (false, _) => args.props.clone(),
            (true, Structure::Magma(_)) => MAGMA_PROPS.to_vec(),
            (true, Structure::Ring(_)) => MAGMA_PROPS
                .iter()
                .copied()
                .chain([CheckProp::Sra])
                .collect(),
        };
        let mut record = Vec::new();
        for prop in props {
            record.push(match s {
                Structure::Magma(t) => check_magma(t, prop)?,
                Structure::Ring(r) => check_ring(r, prop)?,
            });
        }
        reports.push(record);
    }
    let multi = reports.len() > 1;
    for (k, record) in reports.iter().enumerate() {
        if multi && !args.machine {
            writeln!(out, "record {k}:")?;
        }
        for report in record {
            if args.machine {
                writeln!(out, "{}", format::machine_record(report))?;
            } else {
                writeln!(out, "{}{report}", if multi { "  " } else { "" })?;
            }
        }
    }
    let all_hold = reports.iter().flatten().all(|r| r.holds);
    Ok(if all_hold {
        exit::OK
    } else {
        exit::PROPERTY_FAILS
    })
}

#[derive(Clone, Copy)]
enum Extraction {
    Jloop,
    Units,
    Quasi,
}

impl Extraction {
    fn name(self) -> &'static str {
        match self {
            Extraction::Jloop => "jloop",
            Extraction::Units => "units",
            Extraction::Quasi => "quasi",
        }
    }
}

fn join(s: &InvertibleSet) -> String {
    s.members()
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn extract(args: &ExtractArgs, what: Extraction, out: &mut dyn Write) -> CmdResult {
    let structure = read_single(&args.path)?;
    let (set, table) = match (what, &structure) {
        (Extraction::Jloop, Structure::Magma(t)) => (magma::invertible_set(t)?, magma::jloop(t)?),
        (Extraction::Units, Structure::Ring(r)) => {
            let table = ring::unit_bol_loop(r)?;
            (ring::units(r)?, table)
        }
        (Extraction::Quasi, Structure::Ring(r)) => {
            let table = ring::quasiregular_bol_loop(r)?;
            (ring::quasiregular_set(r)?, table)
        }
        (Extraction::Jloop, Structure::Ring(_)) => {
            return Err(Failure::input(
                "jloop needs a magma file; use units or quasi for rings",
            ))
        }
        (_, Structure::Magma(_)) => {
            return Err(Failure::input(format!("{} needs a ring file", what.name())))
        }
    };
    let target = args.out.clone().unwrap_or_else(|| {
        let stem = args
            .path
            .file_stem()
            .map_or("structure".into(), |s| s.to_string_lossy().into_owned());
        out_dir(None).join(format!("{stem}.{}.magma", what.name()))
    });
    write_file(&target, &format::write_magma(&table))?;

    let inverses: Vec<String> = set.pairs().map(|(a, b)| format!("{a}->{b}")).collect();
    writeln!(out, "members: {}", join(&set))?;
    writeln!(out, "inverses: {}", inverses.join(" "))?;
    writeln!(out, "order: {}", table.order())?;
    let verdicts = [
        magma::is_loop(&table),
        magma::check_right_bol(&table),
        magma::check_moufang(&table),
    ];
    for v in &verdicts {
        writeln!(out, "{v}")?;
    }
    writeln!(out, "wrote {}", target.display())?;
    Ok(if verdicts[0].holds && verdicts[1].holds {
        exit::OK
    } else {
        exit::PROPERTY_FAILS
    })
}

impl SearchArgs {
    pub fn spec(&self) -> Result<SearchSpec, Failure> {
        let order = match (self.kind.is_ring(), self.order) {
            (true, given) => {
                let product = self.add_group.iter().product::<usize>();
                if given.is_some_and(|o| o != product) {
                    return Err(Failure::input(format!(
                        "--order disagrees with --add-group (order {product})"
                    )));
                }
                product
            }
            (false, Some(order)) => order,
            (false, None) => return Err(Failure::input("--order is required for magma kinds")),
        };
        let spec = SearchSpec {
            kind: self.kind,
            order,
            additive_group: self.add_group.clone(),
            mode: self.mode,
            seed: self.seed,
            samples: if self.mode == SearchMode::Random {
                self.samples
            } else {
                0
            },
            iso_reduce: self.iso_reduce,
            target: self.target,
            limit: self.limit,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn options(&self) -> Result<SearchOptions, Failure> {
        let budget = match self.budget_seconds {
            Some(s) if !(s.is_finite() && s > 0.0) => {
                return Err(Failure::input("--budget-seconds must be positive"))
            }
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        if self.jobs == Some(0) {
            return Err(Failure::input("--jobs must be at least 1"));
        }
        Ok(SearchOptions {
            jobs: self.jobs,
            budget,
        })
    }
}

/// Dispatches to the certifying hunts when the target calls for them.
pub fn run_search(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult, Failure> {
    Ok(match spec.target {
        Target::JNotClosed => search::hunt_conjecture(spec, options)?,
        Target::NotAlternative | Target::NotBol => search::hunt_separating_rings(spec, options)?,
        Target::None => search::enumerate_structures(spec, options)?,
    })
}

fn search_cmd(args: &SearchArgs, out: &mut dyn Write) -> CmdResult {
    let spec = args.spec()?;
    let options = args.options()?;
    let result = run_search(&spec, &options)?;
    let summary = SearchSummary::new(&spec, &result);
    let summary_json = serde_json::to_string(&summary).expect("summary serializes") + "\n";

    let dir = out_dir(args.out.as_deref());
    let certificates: String = result
        .certificates
        .iter()
        .map(format::write_certificate)
        .collect();
    write_file(&dir.join("certificates.txt"), &certificates)?;
    write_file(&dir.join("summary.json"), &summary_json)?;
    out.write_all(summary_json.as_bytes())?;
    Ok(if result.budget_exceeded {
        exit::BUDGET_EXCEEDED
    } else {
        exit::OK
    })
}

/// Structure files under `path` (itself, or its non-JSON entries sorted by
/// name).
fn corpus_files(path: &Path) -> Result<Vec<PathBuf>, Failure> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(path).with_context(|| format!("listing {}", path.display()))? {
        let p = entry?.path();
        if p.is_file() && p.extension().is_none_or(|e| e != "json") {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let mut corpus = Vec::new();
    let mut origin = Vec::new();
    for file in corpus_files(&args.corpus)? {
        let text =
            fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
        let records = format::read_structures(&text).map_err(|e| parse_failure(&file, e))?;
        origin.extend((0..records.len()).map(|k| (file.clone(), k)));
        corpus.extend(records);
    }
    let summary: CorpusSummary = search::verify_corpus(&corpus);
    writeln!(
        out,
        "structures: {} (magmas {}, rings {}), skipped: {}, checks: {}, failures: {}",
        summary.structures,
        summary.magmas,
        summary.rings,
        summary.skipped,
        summary.checks,
        summary.failures.len()
    )?;
    for failure in &summary.failures {
        let (file, k) = &origin[failure.index];
        writeln!(out, "{} record {k}: {}", file.display(), failure.report)?;
    }
    Ok(if summary.passed() {
        exit::OK
    } else {
        exit::PROPERTY_FAILS
    })
}

/// Names written by `fixtures --all`.
pub fn standard_fixture_names() -> Vec<String> {
    let mut names: Vec<String> = fixtures::small_rings()
        .into_iter()
        .map(|(name, _)| name)
        .collect();
    names.push("zorn_gf2".into());
    names.extend(fixtures::groups_up_to(8).into_iter().map(|g| g.name));
    names
}

fn write_fixtures(args: &FixturesArgs, out: &mut dyn Write) -> CmdResult {
    let mut names = args.names.clone();
    if args.all {
        names.extend(standard_fixture_names());
    }
    if names.is_empty() {
        return Err(Failure::input("no fixture names given"));
    }
    let resolved = names
        .iter()
        .map(|name| {
            fixtures::by_name(name)
                .map(|s| (name, s))
                .ok_or_else(|| Failure::input(format!("unknown fixture `{name}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dir = out_dir(args.out.as_deref());
    for (name, structure) in resolved {
        let extension = match structure {
            Structure::Magma(_) => "magma",
            Structure::Ring(_) => "ring",
        };
        let path = dir.join(format!("{name}.{extension}"));
        write_file(&path, &format::write_structure(&structure))?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(exit::OK)
}
