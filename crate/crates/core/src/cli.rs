//! Command-line front end.
//!
//! Every invocation writes line-delimited JSON records: a `config` record
//! echoing the resolved configuration first, then the command's own records.
//! Settings resolve in three layers: built-in defaults, then a `key = value`
//! config file, then command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundVariant, Provenance};
use crate::classes::{
    caratheodory_from_atoms, check_membership_default, koebe, rotated_koebe, MemberSpec, MembershipReport, MembershipVerdict, SchwarzSpec,
    CONSTRUCTION_ORDER, GRID_ORDER,
};
use crate::error::Error;
use crate::fuzz::{
    audit_cell, audit_suite, AuditRecord, AuditSummary, Functional, ParamGrid, SearchConfig, Verdict, ALL_VARIANTS,
};
use crate::params::ClassParams;
use crate::series::{salagean_normalized, NormalizedFunction, TruncatedSeries};

/// Exit status when every verdict is validated, sharp or inconclusive.
pub const EXIT_OK: i32 = 0;
/// Exit status when a bound is counterexampled or a member fails its check.
pub const EXIT_FINDING: i32 = 1;
/// Exit status for usage and input errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "salagean", version, about = "Series, members, bounds and audits for the classes T_n^alpha(beta)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Coefficient tables of f, (f/z)^alpha and L_n(f)
    Expand,
    /// Build a class member from a Schwarz function or Herglotz atoms
    Member,
    /// Grid check of Re L_n(f) > beta
    Check,
    /// Coefficient bounds for a2, a3, a4
    Bounds,
    /// Fekete-Szego bound at --mu, with an empirical audit
    Fekete,
    /// Distortion bounds at --r, with an empirical audit
    Distortion,
    /// Randomized audit of every bound over a parameter grid
    Audit,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Expand => "expand",
            Command::Member => "member",
            Command::Check => "check",
            Command::Bounds => "bounds",
            Command::Fekete => "fekete",
            Command::Distortion => "distortion",
            Command::Audit => "audit",
        }
    }

    /// Truncation order used when none is configured. Commands that sample
    /// `L_n` on circles need the longer series.
    pub fn default_order(&self) -> usize {
        match self {
            Command::Check | Command::Distortion => GRID_ORDER,
            _ => CONSTRUCTION_ORDER,
        }
    }
}

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Exponent alpha > 0 [default: 1]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Order beta in [0, 1) [default: 0]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Operator power [default: 0]
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Fekete-Szego parameter [default: 0]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Distortion radius in (0, 1) [default: 0.5]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Truncation order [default: 32, or 64 for check and distortion]
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Random members per cell [default: 10000]
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Audit grid file (key = list lines)
    #[arg(long, global = true)]
    pub grid: Option<PathBuf>,
    /// Write records here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Which bound variants to report [default: both]
    #[arg(long, global = true, value_enum)]
    pub variant: Option<VariantChoice>,
    /// Function spec: identity | koebe[:xi] | coeffs:a2,a3,... | const:re:im |
    /// mono:re:im:m | poly:re,im;re,im;... | atoms:w@t;w@t;...
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Config file (key = value lines)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantChoice {
    Printed,
    Derived,
    Both,
}

impl VariantChoice {
    /// `printed` covers every transcription of the source, including the
    /// proof-internal distortion form.
    pub fn variants(&self) -> &'static [Provenance] {
        match self {
            VariantChoice::Printed => &[Provenance::Printed, Provenance::PrintedInProof],
            VariantChoice::Derived => &[Provenance::Derived],
            VariantChoice::Both => &ALL_VARIANTS,
        }
    }
}

/// Families of functionals an audit grid can select.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    A2,
    A3,
    A4,
    Fekete,
    Distortion,
}

impl Family {
    const ALL: [Family; 5] = [Family::A2, Family::A3, Family::A4, Family::Fekete, Family::Distortion];

    fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "a2" => Family::A2,
            "a3" => Family::A3,
            "a4" => Family::A4,
            "fekete" | "fekete_szego" => Family::Fekete,
            "distortion" => Family::Distortion,
            other => return Err(CliError::Usage(format!("unknown functional family {other:?}"))),
        })
    }
}

/// Parameter grid plus the functionals audited on each cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditGrid {
    pub n: Vec<u32>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub mu: Vec<f64>,
    pub r: Vec<f64>,
    pub functionals: Vec<Family>,
}

impl Default for AuditGrid {
    fn default() -> Self {
        let params = ParamGrid::default();
        Self {
            n: params.n,
            alpha: params.alpha,
            beta: params.beta,
            mu: vec![-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0],
            r: vec![0.25, 0.5, 0.75],
            functionals: Family::ALL.to_vec(),
        }
    }
}

impl AuditGrid {
    /// Reads `key = value` lines where values are comma-separated lists.
    /// Keys: `n`, `alpha`, `beta`, `mu`, `r`, `functionals`. Missing keys
    /// keep their defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut grid = AuditGrid::default();
        for (key, value) in parse_key_values(text)? {
            let items: Vec<&str> = value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            match key.as_str() {
                "n" => grid.n = items.iter().map(|s| parse_num(&key, s)).collect::<Result<_, _>>()?,
                "alpha" => grid.alpha = items.iter().map(|s| parse_num(&key, s)).collect::<Result<_, _>>()?,
                "beta" => grid.beta = items.iter().map(|s| parse_num(&key, s)).collect::<Result<_, _>>()?,
                "mu" => grid.mu = items.iter().map(|s| parse_num(&key, s)).collect::<Result<_, _>>()?,
                "r" => grid.r = items.iter().map(|s| parse_num(&key, s)).collect::<Result<_, _>>()?,
                "functionals" => grid.functionals = items.iter().map(|s| Family::parse(s)).collect::<Result<_, _>>()?,
                other => return Err(CliError::Usage(format!("unknown grid key {other:?}"))),
            }
        }
        Ok(grid)
    }

    pub fn params(&self) -> ParamGrid {
        ParamGrid { n: self.n.clone(), alpha: self.alpha.clone(), beta: self.beta.clone() }
    }

    /// Functionals in audit order: coefficients, then Fekete-Szego per `mu`,
    /// then the distortion pair per `r`.
    pub fn functionals(&self) -> Vec<Functional> {
        let has = |f: Family| self.functionals.contains(&f);
        let mut out = Vec::new();
        for (family, functional) in [(Family::A2, Functional::A2), (Family::A3, Functional::A3), (Family::A4, Functional::A4)] {
            if has(family) {
                out.push(functional);
            }
        }
        if has(Family::Fekete) {
            out.extend(self.mu.iter().map(|&mu| Functional::FeketeSzego { mu }));
        }
        if has(Family::Distortion) {
            for &r in &self.r {
                out.push(Functional::DistortionUpper { r });
                out.push(Functional::DistortionLower { r });
            }
        }
        out
    }
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub n: u32,
    pub mu: f64,
    pub r: f64,
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    pub variant: VariantChoice,
    pub f: String,
    /// Not echoed: where records go does not change what they say, and
    /// leaving it out keeps reruns into different files byte-identical.
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub grid: AuditGrid,
}

impl RunConfig {
    /// Defaults for `command`: `alpha = 1`, `beta = 0`, `n = 0`, `mu = 0`,
    /// `r = 0.5`, the command's default order, 10000 trials, seed 0, both
    /// variants, `f = identity` (`const:-1:0` for `member`), stdout, and the
    /// default audit grid.
    pub fn defaults(command: Command) -> Self {
        Self {
            alpha: 1.0,
            beta: 0.0,
            n: 0,
            mu: 0.0,
            r: 0.5,
            order: command.default_order(),
            trials: 10_000,
            seed: 0,
            variant: VariantChoice::Both,
            f: if command == Command::Member { "const:-1:0".into() } else { "identity".into() },
            out: None,
            grid: AuditGrid::default(),
        }
    }

    /// Layers the config file (if any) and then the flags over the defaults.
    pub fn resolve(command: Command, flags: &Flags) -> Result<Self, CliError> {
        let mut cfg = Self::defaults(command);
        let mut grid_path = None;
        if let Some(path) = &flags.config {
            let text = read_text(path)?;
            for (key, value) in parse_key_values(&text)? {
                let v = value.as_str();
                match key.as_str() {
                    "alpha" => cfg.alpha = parse_num(&key, v)?,
                    "beta" => cfg.beta = parse_num(&key, v)?,
                    "n" => cfg.n = parse_num(&key, v)?,
                    "mu" => cfg.mu = parse_num(&key, v)?,
                    "r" => cfg.r = parse_num(&key, v)?,
                    "order" => cfg.order = parse_num(&key, v)?,
                    "trials" => cfg.trials = parse_num(&key, v)?,
                    "seed" => cfg.seed = parse_num(&key, v)?,
                    "variant" => {
                        cfg.variant = VariantChoice::from_str(v, true)
                            .map_err(|_| CliError::Usage(format!("bad variant {v:?}")))?
                    }
                    "f" => cfg.f = v.to_string(),
                    "out" => cfg.out = Some(PathBuf::from(v)),
                    "grid" => grid_path = Some(PathBuf::from(v)),
                    other => return Err(CliError::Usage(format!("unknown config key {other:?}"))),
                }
            }
        }
        let f = flags.clone();
        cfg.alpha = f.alpha.unwrap_or(cfg.alpha);
        cfg.beta = f.beta.unwrap_or(cfg.beta);
        cfg.n = f.n.unwrap_or(cfg.n);
        cfg.mu = f.mu.unwrap_or(cfg.mu);
        cfg.r = f.r.unwrap_or(cfg.r);
        cfg.order = f.order.unwrap_or(cfg.order);
        cfg.trials = f.trials.unwrap_or(cfg.trials);
        cfg.seed = f.seed.unwrap_or(cfg.seed);
        cfg.variant = f.variant.unwrap_or(cfg.variant);
        cfg.f = f.f.unwrap_or(cfg.f);
        cfg.out = f.out.or(cfg.out);
        if let Some(path) = f.grid.or(grid_path) {
            cfg.grid = AuditGrid::parse(&read_text(&path)?)?;
        }
        if cfg.order < 5 {
            return Err(CliError::Usage(format!("order must be at least 5, got {}", cfg.order)));
        }
        Ok(cfg)
    }

    pub fn params(&self) -> Result<ClassParams, CliError> {
        Ok(ClassParams::new(self.alpha, self.beta, self.n)?)
    }
}

/// One line of output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Config {
        command: Command,
        config: RunConfig,
    },
    /// Row `k` of a coefficient table.
    Coefficient {
        series: SeriesName,
        k: usize,
        re: f64,
        im: f64,
        abs: f64,
    },
    Member {
        params: ClassParams,
        spec: MemberSpec,
        order: usize,
    },
    Membership(MembershipReport),
    /// A bound value. Distortion bounds are on `Re L_n` (the operator image
    /// divided by `alpha^n`).
    Bound {
        params: ClassParams,
        functional: Functional,
        variant: Provenance,
        bound: f64,
    },
    Audit(AuditLine),
    Summary {
        #[serde(flatten)]
        summary: AuditSummary,
        exit_code: i32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesName {
    /// `f` itself, rows from `k = 1`.
    F,
    /// `(f/z)^alpha`, rows from `k = 0`.
    Quotient,
    /// `L_n(f)`, rows from `k = 0`.
    Image,
}

/// Flat audit row for one (cell, functional, variant).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditLine {
    pub params: ClassParams,
    pub functional: Functional,
    pub variant: Provenance,
    pub bound: f64,
    pub empirical_max: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub seed: u64,
    pub cell: u64,
    pub trials: usize,
    pub order: usize,
    /// Member attaining `empirical_max`; rebuild it at `order` to replay.
    pub witness: MemberSpec,
}

impl AuditLine {
    pub fn from_record(record: &AuditRecord) -> Vec<AuditLine> {
        record
            .bounds
            .iter()
            .map(|check| AuditLine {
                params: record.params,
                functional: record.functional,
                variant: check.variant,
                bound: check.bound,
                empirical_max: record.empirical_max,
                margin: check.margin,
                verdict: check.verdict,
                seed: record.seed,
                cell: record.cell,
                trials: record.trials,
                order: record.order,
                witness: record.argmax_spec.clone(),
            })
            .collect()
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("line {}: expected key = value", i + 1)))?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("bad value {s:?} for {key}")))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// A function given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Identity,
    Koebe { xi: f64 },
    /// Real `a_2, a_3, ...`.
    Coeffs(Vec<f64>),
    /// A class member, built under the run's parameters.
    Member(MemberSpec),
}

impl FunctionSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("bad function spec {s:?}"));
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let nums = |text: &str, sep: char| -> Result<Vec<f64>, CliError> {
            text.split(sep).map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect()
        };
        Ok(match head {
            "identity" | "z" if rest.is_empty() => FunctionSpec::Identity,
            "koebe" if rest.is_empty() => FunctionSpec::Koebe { xi: 0.0 },
            "koebe" => FunctionSpec::Koebe { xi: nums(rest, ',')?[0] },
            "coeffs" => FunctionSpec::Coeffs(nums(rest, ',')?),
            "const" => {
                let v = nums(rest, ':')?;
                let [re, im] = v[..] else { return Err(bad()) };
                let phi = SchwarzSpec::constant(Complex64::new(re, im))?;
                FunctionSpec::Member(MemberSpec::Schwarz { phi })
            }
            "mono" => {
                let v = nums(rest, ':')?;
                let [re, im, m] = v[..] else { return Err(bad()) };
                if m < 0.0 || m.fract() != 0.0 {
                    return Err(bad());
                }
                let phi = SchwarzSpec::monomial(Complex64::new(re, im), m as u32)?;
                FunctionSpec::Member(MemberSpec::Schwarz { phi })
            }
            "poly" => {
                let raw = rest
                    .split(';')
                    .map(|pair| match nums(pair, ',')?[..] {
                        [re, im] => Ok(Complex64::new(re, im)),
                        [re] => Ok(Complex64::new(re, 0.0)),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let phi = SchwarzSpec::normalized_polynomial(raw)?;
                FunctionSpec::Member(MemberSpec::Schwarz { phi })
            }
            "atoms" => {
                let mut weights = Vec::new();
                let mut angles = Vec::new();
                for atom in rest.split(';') {
                    let (w, t) = atom.split_once('@').ok_or_else(bad)?;
                    weights.push(w.trim().parse::<f64>().map_err(|_| bad())?);
                    angles.push(t.trim().parse::<f64>().map_err(|_| bad())?);
                }
                caratheodory_from_atoms(&weights, &angles, 1)?;
                FunctionSpec::Member(MemberSpec::Atoms { weights, angles })
            }
            _ => return Err(bad()),
        })
    }

    pub fn build(&self, params: &ClassParams, order: usize) -> Result<NormalizedFunction, CliError> {
        Ok(match self {
            FunctionSpec::Identity => NormalizedFunction::identity(order),
            FunctionSpec::Koebe { xi } if *xi == 0.0 => koebe(order),
            FunctionSpec::Koebe { xi } => rotated_koebe(*xi, order),
            FunctionSpec::Coeffs(tail) => {
                let tail: Vec<Complex64> = tail.iter().map(|&a| Complex64::new(a, 0.0)).collect();
                NormalizedFunction::from_tail(&tail)?.padded(order)
            }
            FunctionSpec::Member(spec) => spec.build(params, order)?,
        })
    }
}

/// Parses arguments, runs, and returns the process exit code. Errors are
/// reported on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("salagean: {e}");
            EXIT_USAGE
        }
    }
}

/// Resolves the configuration and writes records to `--out` or stdout.
pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let config = RunConfig::resolve(cli.command, &cli.flags)?;
    match &config.out {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            let code = run(cli.command, &config, &mut file)?;
            file.flush()?;
            Ok(code)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            run(cli.command, &config, &mut lock)
        }
    }
}

fn emit<W: Write>(out: &mut W, record: &Record) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Runs one command against a resolved configuration.
pub fn run<W: Write>(command: Command, config: &RunConfig, out: &mut W) -> Result<i32, CliError> {
    // validate everything before the first byte is written
    let params = config.params();
    let uses_f = matches!(command, Command::Expand | Command::Member | Command::Check);
    let spec = if uses_f { Some(FunctionSpec::parse(&config.f)?) } else { None };
    if command == Command::Member && !matches!(spec, Some(FunctionSpec::Member(_))) {
        return Err(CliError::Usage("member needs a const, mono, poly or atoms spec".into()));
    }
    if command != Command::Audit {
        params.as_ref().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if command == Command::Audit {
        if config.trials == 0 {
            return Err(CliError::Usage("audit needs at least one trial".into()));
        }
        config.grid.params().cells().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if command == Command::Distortion && !(config.r > 0.0 && config.r < 1.0) {
        return Err(CliError::Usage(format!("radius must lie in (0, 1), got {}", config.r)));
    }
    let spec = || spec.as_ref().expect("parsed above");
    emit(out, &Record::Config { command, config: config.clone() })?;
    match command {
        Command::Expand => cmd_expand(spec(), &params?, config.order, out),
        Command::Member => cmd_member(spec(), &params?, config.order, out),
        Command::Check => cmd_check(spec(), &params?, config.order, out),
        Command::Bounds => cmd_bounds(&params?, config, out),
        Command::Fekete => {
            let functionals = [Functional::FeketeSzego { mu: config.mu }];
            cmd_single_cell(&params?, &functionals, config, out)
        }
        Command::Distortion => {
            let functionals = [Functional::DistortionUpper { r: config.r }, Functional::DistortionLower { r: config.r }];
            cmd_single_cell(&params?, &functionals, config, out)
        }
        Command::Audit => cmd_audit(config, out),
    }
}

fn coefficient_rows<W: Write>(out: &mut W, series: SeriesName, s: &TruncatedSeries, from: usize) -> Result<(), CliError> {
    for (k, c) in s.coeffs().iter().enumerate().skip(from) {
        emit(out, &Record::Coefficient { series, k, re: c.re, im: c.im, abs: c.norm() })?;
    }
    Ok(())
}

fn cmd_expand<W: Write>(spec: &FunctionSpec, params: &ClassParams, order: usize, out: &mut W) -> Result<i32, CliError> {
    let f = spec.build(params, order)?;
    coefficient_rows(out, SeriesName::F, f.series(), 1)?;
    coefficient_rows(out, SeriesName::Quotient, &f.quotient_pow(params.alpha())?, 0)?;
    coefficient_rows(out, SeriesName::Image, &salagean_normalized(&f, params)?, 0)?;
    Ok(EXIT_OK)
}

fn membership_exit(report: &MembershipReport) -> i32 {
    if report.verdict == MembershipVerdict::Violation {
        EXIT_FINDING
    } else {
        EXIT_OK
    }
}

fn cmd_member<W: Write>(spec: &FunctionSpec, params: &ClassParams, order: usize, out: &mut W) -> Result<i32, CliError> {
    let FunctionSpec::Member(member) = spec else {
        return Err(CliError::Usage("member needs a const, mono, poly or atoms spec".into()));
    };
    let f = member.build(params, order)?;
    emit(out, &Record::Member { params: *params, spec: member.clone(), order })?;
    coefficient_rows(out, SeriesName::F, f.series(), 1)?;
    // the grid check needs the longer series whatever order was asked for
    let report = check_membership_default(&member.build(params, order.max(GRID_ORDER))?, params)?;
    emit(out, &Record::Membership(report.clone()))?;
    Ok(membership_exit(&report))
}

fn cmd_check<W: Write>(spec: &FunctionSpec, params: &ClassParams, order: usize, out: &mut W) -> Result<i32, CliError> {
    let f = spec.build(params, order)?;
    let report = check_membership_default(&f, params)?;
    emit(out, &Record::Membership(report.clone()))?;
    Ok(membership_exit(&report))
}

fn bound_records<W: Write>(
    params: &ClassParams,
    functionals: &[Functional],
    variants: &[Provenance],
    out: &mut W,
) -> Result<(), CliError> {
    for functional in functionals {
        let name = functional.bound_name();
        for &variant in name.provenances().iter().filter(|p| variants.contains(p)) {
            let bound = BoundVariant::new(name, variant, *params, functional.extra()).value()?;
            emit(out, &Record::Bound { params: *params, functional: *functional, variant, bound })?;
        }
    }
    Ok(())
}

fn cmd_bounds<W: Write>(params: &ClassParams, config: &RunConfig, out: &mut W) -> Result<i32, CliError> {
    bound_records(params, &[Functional::A2, Functional::A3, Functional::A4], config.variant.variants(), out)?;
    Ok(EXIT_OK)
}

fn search_config(config: &RunConfig) -> SearchConfig {
    SearchConfig { trials: config.trials, ..SearchConfig::default() }
}

fn report_audit<W: Write>(records: &[AuditRecord], out: &mut W) -> Result<i32, CliError> {
    for record in records {
        for line in AuditLine::from_record(record) {
            emit(out, &Record::Audit(line))?;
        }
    }
    let summary = AuditSummary::of(records);
    let exit_code = if summary.total.counterexample > 0 { EXIT_FINDING } else { EXIT_OK };
    emit(out, &Record::Summary { summary, exit_code })?;
    Ok(exit_code)
}

/// Bound values, then (with `trials > 0`) an audit of the same functionals
/// on the single class.
fn cmd_single_cell<W: Write>(
    params: &ClassParams,
    functionals: &[Functional],
    config: &RunConfig,
    out: &mut W,
) -> Result<i32, CliError> {
    let variants = config.variant.variants();
    bound_records(params, functionals, variants, out)?;
    if config.trials == 0 {
        return Ok(EXIT_OK);
    }
    let records = audit_cell(params, functionals, &search_config(config), variants, config.seed, 0)?;
    report_audit(&records, out)
}

fn cmd_audit<W: Write>(config: &RunConfig, out: &mut W) -> Result<i32, CliError> {
    let report = audit_suite(
        &config.grid.params(),
        &config.grid.functionals(),
        &search_config(config),
        config.variant.variants(),
        config.seed,
    )?;
    report_audit(&report.records, out)
}

/// Reads back records written by [`run`].
pub fn parse_records(text: &str) -> Result<Vec<Record>, serde_json::Error> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

/// Per-variant verdict tallies of the audit lines in `records`.
pub fn tally(records: &[Record]) -> BTreeMap<Provenance, BTreeMap<Verdict, usize>> {
    let mut out: BTreeMap<Provenance, BTreeMap<Verdict, usize>> = BTreeMap::new();
    for record in records {
        if let Record::Audit(line) = record {
            *out.entry(line.variant).or_default().entry(line.verdict).or_default() += 1;
        }
    }
    out
}
