//! Command-line driver: counting, sector data, generating functions, lattice
//! orbits, S-matrices and the verification suites.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 input
//! outside the covered cases.

pub mod suites;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use dualcount_core::affine::{level_weights, s_matrix, verify_s_conjugation, AffineError};
use dualcount_core::counting::{
    all_sectors, count_homs, f_rep_character, verify_swap_equivalence, CountError, CountRow, FSide,
    SectorRow, Side, SwapPair, TargetFamily,
};
use dualcount_core::grouprep::GroupError;
use dualcount_core::lattice::{self, dual_pair_catalog, LatticeError, LieType, DEFAULT_POINT_CAP};
use dualcount_core::{mckay, GroupData, GroupSpec};
use dualcount_series::{
    builtin_genfun, max_order, parse_genexpr, GenExpr, GenTarget, Identity, Params, SeriesError,
};
use serde::Serialize;
use serde_json::Value;

use suites::{DualityPair, Failure, IdentitySelection, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Unsupported(String),
    Failed(Vec<Failure>),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Failed(_) | CliError::Io(_) => EXIT_FAILED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{}", m),
            CliError::Unsupported(m) => write!(f, "not covered: {}", m),
            CliError::Failed(v) => write!(f, "{} check(s) failed", v.len()),
            CliError::Io(e) => write!(f, "{}", e),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Parse(_) => CliError::Usage(e.to_string()),
            CountError::Unsupported(_) | CountError::TooLarge(_) => {
                CliError::Unsupported(e.to_string())
            }
            CountError::Inconsistent(_) => CliError::Failed(vec![Failure {
                item: "internal".into(),
                detail: e.to_string(),
            }]),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Unlisted(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::TooLarge { .. } | LatticeError::Unsupported(_) => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AffineError> for CliError {
    fn from(e: AffineError) -> Self {
        match e {
            AffineError::Unsupported(_) => CliError::Unsupported(e.to_string()),
            AffineError::BadLevel => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// A single n or an inclusive range `lo..hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: u32,
    pub hi: u32,
}

impl NRange {
    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl FromStr for NRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad n `{}`", s))
        };
        let r = match s.split_once("..") {
            Some((a, b)) => NRange {
                lo: num(a)?,
                hi: num(b)?,
            },
            None => {
                let n = num(s)?;
                NRange { lo: n, hi: n }
            }
        };
        if r.hi < r.lo {
            return Err(format!("empty range `{}`", s));
        }
        Ok(r)
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Target family named without its rank; the rank comes from --n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetName {
    Sp,
    SOOdd,
    OOdd,
    U,
    SU,
    PU,
    SpinOdd,
    PSp,
}

impl TargetName {
    const ALL: [(TargetName, &'static str, &'static [&'static str]); 8] = [
        (TargetName::Sp, "Sp", &[]),
        (TargetName::SOOdd, "SO_odd", &["SO"]),
        (TargetName::OOdd, "O_odd", &["O"]),
        (TargetName::U, "U", &[]),
        (TargetName::SU, "SU", &[]),
        (TargetName::PU, "PU", &[]),
        (TargetName::SpinOdd, "Spin_odd", &["Spin"]),
        (TargetName::PSp, "PSp", &[]),
    ];

    pub fn at(&self, n: u32) -> TargetFamily {
        match self {
            TargetName::Sp => TargetFamily::Sp(n),
            TargetName::SOOdd => TargetFamily::SOOdd(n),
            TargetName::OOdd => TargetFamily::OOdd(n),
            TargetName::U => TargetFamily::U(n),
            TargetName::SU => TargetFamily::SU(n),
            TargetName::PU => TargetFamily::PU(n),
            TargetName::SpinOdd => TargetFamily::SpinOdd(n),
            TargetName::PSp => TargetFamily::PSp(n),
        }
    }
}

impl FromStr for TargetName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TargetName::ALL
            .iter()
            .find(|(_, name, alias)| {
                name.eq_ignore_ascii_case(s) || alias.iter().any(|a| a.eq_ignore_ascii_case(s))
            })
            .map(|e| e.0)
            .ok_or_else(|| {
                format!(
                    "unknown target `{}`; expected Sp, SO_odd, O_odd, U, SU, PU, Spin_odd or PSp",
                    s
                )
            })
    }
}

impl fmt::Display for TargetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = TargetName::ALL
            .iter()
            .find(|e| e.0 == *self)
            .map(|e| e.1)
            .unwrap_or("?");
        write!(f, "{}", name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Sp,
    Spin,
}

impl SideArg {
    fn side(&self) -> Side {
        match self {
            SideArg::Sp => Side::Sp,
            SideArg::Spin => Side::Spin,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FSideArg {
    Su,
    Sp,
    Spin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SwapArg {
    SuPu,
    SpSpin,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: GroupError| e.to_string())
}

fn parse_lie(s: &str) -> Result<LieType, String> {
    s.parse().map_err(|e: LatticeError| e.to_string())
}

fn parse_gen_target(s: &str) -> Result<GenTarget, String> {
    s.parse().map_err(|e: SeriesError| e.to_string())
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse().map_err(|e: SeriesError| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(
    name = "dualcount",
    version,
    about = "Counts homomorphisms from finite subgroups of SU(2) into compact Lie groups"
)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Irreducible representations of Γ.
    Irreps {
        #[arg(long, value_parser = parse_group)]
        gamma: GroupSpec,
    },
    /// McKay graph of Γ.
    Mckay {
        #[arg(long, value_parser = parse_group)]
        gamma: GroupSpec,
    },
    /// N(Γ, G) for a target family and n or n-range.
    Count {
        #[arg(long, value_parser = parse_group)]
        gamma: GroupSpec,
        #[arg(long)]
        target: TargetName,
        /// n or lo..hi (inclusive).
        #[arg(long)]
        n: NRange,
    },
    /// Twisted-sector counts for T̂, Ô, Î.
    Sectors {
        #[arg(long, value_parser = parse_group)]
        gamma: GroupSpec,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        n: NRange,
    },
    /// Character of F(Γ; Z) on the graded space V_Z(Γ, G).
    Frep {
        #[arg(long, value_parser = parse_group)]
        gamma: GroupSpec,
        #[arg(long, value_enum)]
        side: FSideArg,
        #[arg(long)]
        n: u32,
    },
    /// Compares the F-characters of a Langlands pair under the swap.
    Swap {
        #[arg(long, value_parser = parse_group)]
        gamma: GroupSpec,
        #[arg(long, value_enum)]
        pair: SwapArg,
        #[arg(long)]
        n: u32,
    },
    /// Expands a builtin generating function or a DSL expression.
    Series {
        #[arg(long, value_parser = parse_group, requires = "target", conflicts_with = "expr")]
        gamma: Option<GroupSpec>,
        #[arg(long, value_parser = parse_gen_target, requires = "gamma")]
        target: Option<GenTarget>,
        #[arg(long)]
        expr: Option<String>,
        /// Truncation order (at most DUALCOUNT_MAX_ORDER, default 64).
        #[arg(long)]
        order: Option<usize>,
        /// Print only the coefficient of q^k.
        #[arg(long)]
        coeff: Option<usize>,
    },
    /// Weyl-orbit counts on (1/n)M*/M* for a named group, or for every
    /// catalogued dual pair with --pairs.
    Orbits {
        #[arg(long, required_unless_present = "pairs", conflicts_with = "pairs")]
        group: Option<String>,
        #[arg(long)]
        pairs: bool,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long)]
        n: NRange,
        #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
        cap: u64,
    },
    /// Modular S-matrix at a level, with the conjugation check.
    Smatrix {
        #[arg(long = "type", value_parser = parse_lie)]
        lie: LieType,
        #[arg(long)]
        level: u32,
        #[arg(long = "enable-e7-smatrix")]
        enable_e7_smatrix: bool,
    },
    /// Runs a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Suite {
    /// Count equalities across a dual pair.
    Duality {
        #[arg(long, value_enum)]
        pair: DualityPair,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        /// Restrict to one group (default: the standard list).
        #[arg(long, value_parser = parse_group)]
        gamma: Option<GroupSpec>,
    },
    /// Sector dimensions, swap and gauging relations.
    Refined {
        #[arg(long, value_parser = parse_group, default_value = "Ohat")]
        gamma: GroupSpec,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
    },
    /// Generating-function identities.
    Identities {
        #[arg(long, value_parser = parse_identity)]
        prop: Option<Identity>,
        /// Parameters as in `s;k;l;v`, with `;`-separated groups.
        #[arg(long, requires = "prop")]
        params: Option<String>,
        /// Random tuples per family.
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long, default_value_t = 1000)]
        seed: u64,
    },
    /// Orbit-count equality for every catalogued dual pair.
    ZnLattice {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
        cap: u64,
    },
    /// S-matrix unitarity and conjugation.
    Smatrix {
        #[arg(long = "type", value_parser = parse_lie, requires = "level")]
        lie: Option<LieType>,
        #[arg(long, requires = "lie")]
        level: Option<u32>,
        #[arg(long = "enable-e7-smatrix")]
        enable_e7_smatrix: bool,
    },
    /// Generating-function coefficients against enumeration.
    Oracle {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
    },
}

impl RunConfig {
    /// Arguments that parse back to this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut a: Vec<String> = Vec::new();
        let mut push = |k: &str, v: String| {
            a.push(format!("--{}", k));
            a.push(v);
        };
        let format = self
            .format
            .to_possible_value()
            .expect("named")
            .get_name()
            .to_string();
        push("format", format);
        let value = |v: &dyn ValueEnumName| v.name();
        let mut head: Vec<String> = Vec::new();
        match &self.command {
            Command::Irreps { gamma } | Command::Mckay { gamma } => {
                head.push(
                    if matches!(self.command, Command::Irreps { .. }) {
                        "irreps"
                    } else {
                        "mckay"
                    }
                    .into(),
                );
                push("gamma", gamma.to_string());
            }
            Command::Count { gamma, target, n } => {
                head.push("count".into());
                push("gamma", gamma.to_string());
                push("target", target.to_string());
                push("n", n.to_string());
            }
            Command::Sectors { gamma, side, n } => {
                head.push("sectors".into());
                push("gamma", gamma.to_string());
                push("side", value(side));
                push("n", n.to_string());
            }
            Command::Frep { gamma, side, n } => {
                head.push("frep".into());
                push("gamma", gamma.to_string());
                push("side", value(side));
                push("n", n.to_string());
            }
            Command::Swap { gamma, pair, n } => {
                head.push("swap".into());
                push("gamma", gamma.to_string());
                push("pair", value(pair));
                push("n", n.to_string());
            }
            Command::Series {
                gamma,
                target,
                expr,
                order,
                coeff,
            } => {
                head.push("series".into());
                if let Some(g) = gamma {
                    push("gamma", g.to_string());
                }
                if let Some(t) = target {
                    push("target", t.to_string());
                }
                if let Some(e) = expr {
                    push("expr", e.clone());
                }
                if let Some(o) = order {
                    push("order", o.to_string());
                }
                if let Some(k) = coeff {
                    push("coeff", k.to_string());
                }
            }
            Command::Orbits {
                group,
                pairs,
                max_rank,
                n,
                cap,
            } => {
                head.push("orbits".into());
                if let Some(g) = group {
                    push("group", g.clone());
                }
                push("max-rank", max_rank.to_string());
                push("n", n.to_string());
                push("cap", cap.to_string());
                if *pairs {
                    a.push("--pairs".into());
                }
            }
            Command::Smatrix {
                lie,
                level,
                enable_e7_smatrix,
            } => {
                head.push("smatrix".into());
                push("type", lie.to_string());
                push("level", level.to_string());
                if *enable_e7_smatrix {
                    a.push("--enable-e7-smatrix".into());
                }
            }
            Command::Verify { suite } => {
                head.push("verify".into());
                match suite {
                    Suite::Duality { pair, max_n, gamma } => {
                        head.push("duality".into());
                        push("pair", value(pair));
                        push("max-n", max_n.to_string());
                        if let Some(g) = gamma {
                            push("gamma", g.to_string());
                        }
                    }
                    Suite::Refined { gamma, max_n } => {
                        head.push("refined".into());
                        push("gamma", gamma.to_string());
                        push("max-n", max_n.to_string());
                    }
                    Suite::Identities {
                        prop,
                        params,
                        random,
                        seed,
                    } => {
                        head.push("identities".into());
                        if let Some(p) = prop {
                            push("prop", p.to_string());
                        }
                        if let Some(p) = params {
                            push("params", p.clone());
                        }
                        push("random", random.to_string());
                        push("seed", seed.to_string());
                    }
                    Suite::ZnLattice {
                        max_rank,
                        max_n,
                        cap,
                    } => {
                        head.push("zn-lattice".into());
                        push("max-rank", max_rank.to_string());
                        push("max-n", max_n.to_string());
                        push("cap", cap.to_string());
                    }
                    Suite::Smatrix {
                        lie,
                        level,
                        enable_e7_smatrix,
                    } => {
                        head.push("smatrix".into());
                        if let Some(t) = lie {
                            push("type", t.to_string());
                        }
                        if let Some(l) = level {
                            push("level", l.to_string());
                        }
                        if *enable_e7_smatrix {
                            a.push("--enable-e7-smatrix".into());
                        }
                    }
                    Suite::Oracle { max_n } => {
                        head.push("oracle".into());
                        push("max-n", max_n.to_string());
                    }
                }
            }
        }
        let mut out = vec!["dualcount".to_string()];
        out.extend(head);
        out.extend(a);
        out
    }
}

trait ValueEnumName {
    fn name(&self) -> String;
}

impl<T: ValueEnum> ValueEnumName for T {
    fn name(&self) -> String {
        self.to_possible_value()
            .expect("named")
            .get_name()
            .to_string()
    }
}

/// Rounds floats to 12 decimals so that JSON output is reproducible.
fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            let x = n.as_f64().unwrap_or(0.0);
            let r = (x * 1e12).round() / 1e12;
            let r = if r == 0.0 { 0.0 } else { r };
            serde_json::Number::from_f64(r)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    serde_json::to_string_pretty(&canonical(value)).expect("serializable")
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), CliError> {
    writeln!(out, "{}", to_json(v))?;
    Ok(())
}

fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| CliError::Io(io::Error::new(io::ErrorKind::Other, e)))?;
    }
    w.flush()?;
    Ok(())
}

fn no_csv(what: &str) -> CliError {
    CliError::Usage(format!("csv output is not available for {}", what))
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{}", text)
            } else {
                write!(out, "{}", text)
            };
            return code;
        }
    };
    match execute(&cfg, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Failed(f)) => {
            let _ = writeln!(out, "{}", to_json(&f));
            let _ = writeln!(err, "error: {} check(s) failed", f.len());
            EXIT_FAILED
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct FrepEntry {
    z: Vec<u32>,
    w_hat: Vec<u32>,
    value: String,
}

#[derive(Serialize)]
struct FrepReport {
    gamma: String,
    target: String,
    z_order: u32,
    entries: Vec<FrepEntry>,
    dim_h1_invariants: String,
    dim_h2_invariants: String,
}

#[derive(Serialize)]
struct SeriesReport {
    expression: String,
    order: usize,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct CoeffRow {
    k: usize,
    coefficient: String,
}

#[derive(Serialize)]
struct OrbitRow {
    group: String,
    n: u32,
    orbits: u64,
}

#[derive(Serialize)]
struct PairRow {
    pair: String,
    n: u32,
    left: u64,
    right: u64,
}

#[derive(Serialize)]
struct SmatrixReport {
    smatrix: dualcount_core::affine::SMatrixDump,
    unitarity_error: f64,
    symmetry_error: f64,
    conjugation: dualcount_core::affine::ConjugationReport,
}

#[derive(Serialize)]
struct SuiteSummary<'a> {
    suite: &'a str,
    checks: usize,
    failures: usize,
}

pub fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let fmt = cfg.format;
    match &cfg.command {
        Command::Irreps { gamma } => {
            let rep = GroupData::new(*gamma).irreps_report();
            match fmt {
                Format::Json => write_json(out, &rep)?,
                Format::Csv => write_csv(out, &rep.irreps)?,
                Format::Text => {
                    writeln!(out, "{} (order {})", rep.group, rep.order)?;
                    for r in &rep.irreps {
                        let v = serde_json::to_value(r).expect("serializable");
                        writeln!(out, "  {}", v)?;
                    }
                }
            }
        }
        Command::Mckay { gamma } => {
            let d = GroupData::new(*gamma);
            let g = mckay::build(&d).map_err(|e| {
                CliError::Failed(vec![Failure {
                    item: gamma.to_string(),
                    detail: e.to_string(),
                }])
            })?;
            let rep = g.report(&d);
            match fmt {
                Format::Json => write_json(out, &rep)?,
                Format::Csv => return Err(no_csv("mckay")),
                Format::Text => {
                    writeln!(out, "{}: {}", gamma, rep.ade_type)?;
                    for (i, n) in rep.nodes.iter().enumerate() {
                        writeln!(out, "  {} {} comark {}", i, n.irrep, n.comark)?;
                    }
                    let edges: Vec<String> = rep
                        .edges
                        .iter()
                        .map(|e| format!("{}-{}", e[0], e[1]))
                        .collect();
                    writeln!(out, "  edges {}", edges.join(" "))?;
                }
            }
        }
        Command::Count { gamma, target, n } => {
            let d = GroupData::new(*gamma);
            let mut rows = Vec::new();
            for k in n.iter() {
                let t = target.at(k);
                rows.push(CountRow {
                    gamma: gamma.to_string(),
                    target: t.to_string(),
                    n: k,
                    count: count_homs(&d, t)?,
                });
            }
            match fmt {
                Format::Json => write_json(out, &rows)?,
                Format::Csv => write_csv(out, &rows)?,
                Format::Text => {
                    for r in &rows {
                        writeln!(out, "N({}, {}) = {}", r.gamma, r.target, r.count)?;
                    }
                }
            }
        }
        Command::Sectors { gamma, side, n } => {
            let d = GroupData::new(*gamma);
            let mut rows = Vec::new();
            for k in n.iter() {
                for s in all_sectors(&d, side.side(), k)? {
                    rows.push(SectorRow::new(&d, side.side(), k, &s));
                }
            }
            match fmt {
                Format::Json => write_json(out, &rows)?,
                Format::Csv => write_csv(out, &rows)?,
                Format::Text => {
                    for r in &rows {
                        writeln!(
                            out,
                            "{} {:?} n={} w={}: fixed {} moved {} dimV0 {} dimV1 {}",
                            r.gamma, r.side, r.n, r.w, r.fixed, r.moved, r.dim_v0, r.dim_v1
                        )?;
                    }
                }
            }
        }
        Command::Frep { gamma, side, n } => {
            let d = GroupData::new(*gamma);
            let fs = match side {
                FSideArg::Su => FSide::SU(*n),
                FSideArg::Sp => FSide::Sp(*n),
                FSideArg::Spin => FSide::Spin(*n),
            };
            let t = f_rep_character(&d, fs)?;
            let rep = FrepReport {
                gamma: t.gamma.clone(),
                target: t.target.clone(),
                z_order: t.z_order,
                entries: t
                    .table
                    .iter()
                    .map(|((z, w), v)| FrepEntry {
                        z: z.clone(),
                        w_hat: w.clone(),
                        value: v.to_string(),
                    })
                    .collect(),
                dim_h1_invariants: t.dim_h1_invariants().to_string(),
                dim_h2_invariants: t.dim_h2_invariants().to_string(),
            };
            match fmt {
                Format::Json => write_json(out, &rep)?,
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        z: String,
                        w_hat: String,
                        value: &'a str,
                    }
                    let join = |v: &[u32]| {
                        v.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    let rows: Vec<Row> = rep
                        .entries
                        .iter()
                        .map(|e| Row {
                            z: join(&e.z),
                            w_hat: join(&e.w_hat),
                            value: &e.value,
                        })
                        .collect();
                    write_csv(out, &rows)?
                }
                Format::Text => {
                    writeln!(
                        out,
                        "F-character of {} on {} (Z of order {})",
                        rep.gamma, rep.target, rep.z_order
                    )?;
                    for e in &rep.entries {
                        writeln!(out, "  z={:?} w^={:?}: {}", e.z, e.w_hat, e.value)?;
                    }
                    writeln!(
                        out,
                        "  H1-invariants {}, H2-invariants {}",
                        rep.dim_h1_invariants, rep.dim_h2_invariants
                    )?;
                }
            }
        }
        Command::Swap { gamma, pair, n } => {
            let d = GroupData::new(*gamma);
            let p = match pair {
                SwapArg::SuPu => SwapPair::SuPu(*n),
                SwapArg::SpSpin => SwapPair::SpSpin(*n),
            };
            let rep = verify_swap_equivalence(&d, p)?;
            match fmt {
                Format::Json => write_json(out, &rep)?,
                Format::Csv => return Err(no_csv("swap")),
                Format::Text => writeln!(
                    out,
                    "{} {}: {} ({} of {} identifications: {})",
                    rep.gamma,
                    rep.pair,
                    if rep.equivalent {
                        "equivalent"
                    } else {
                        "not equivalent"
                    },
                    rep.identifications.len(),
                    rep.tried,
                    rep.identifications.join(", ")
                )?,
            }
            if !rep.equivalent {
                return Err(CliError::Failed(vec![Failure {
                    item: format!("{} {}", rep.gamma, rep.pair),
                    detail: format!("no identification among {}", rep.tried),
                }]));
            }
        }
        Command::Series {
            gamma,
            target,
            expr,
            order,
            coeff,
        } => {
            let e: GenExpr = match (gamma, target, expr) {
                (Some(g), Some(t), None) => builtin_genfun(*g, *t)?,
                (None, None, Some(text)) => parse_genexpr(text)?,
                _ => {
                    return Err(CliError::Usage(
                        "give either --gamma with --target, or --expr".into(),
                    ))
                }
            };
            if let Some(k) = coeff {
                let c = e.coeff(*k)?;
                let row = CoeffRow {
                    k: *k,
                    coefficient: c.to_string(),
                };
                match fmt {
                    Format::Json => write_json(out, &row)?,
                    Format::Csv => write_csv(out, &[row])?,
                    Format::Text => writeln!(out, "{}", row.coefficient)?,
                }
                return Ok(());
            }
            let max = max_order();
            let order = order.unwrap_or(max);
            if order > max {
                return Err(SeriesError::OrderTooLarge { k: order, max }.into());
            }
            let s = e.expand(order)?;
            let coefficients: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            match fmt {
                Format::Json => write_json(
                    out,
                    &SeriesReport {
                        expression: e.to_string(),
                        order,
                        coefficients,
                    },
                )?,
                Format::Csv => {
                    let rows: Vec<CoeffRow> = coefficients
                        .into_iter()
                        .enumerate()
                        .map(|(k, c)| CoeffRow { k, coefficient: c })
                        .collect();
                    write_csv(out, &rows)?
                }
                Format::Text => {
                    for (k, c) in coefficients.iter().enumerate() {
                        if c != "0" {
                            writeln!(out, "q^{}: {}", k, c)?;
                        }
                    }
                }
            }
        }
        Command::Orbits {
            group,
            pairs,
            max_rank,
            n,
            cap,
        } => {
            if *pairs {
                let mut rows = Vec::new();
                for p in dual_pair_catalog(*max_rank) {
                    for k in n.iter() {
                        let (l, r) = lattice::verify_zn_duality(&p.left, &p.right, k, *cap)?;
                        rows.push(PairRow {
                            pair: p.label(),
                            n: k,
                            left: l,
                            right: r,
                        });
                    }
                }
                match fmt {
                    Format::Json => write_json(out, &rows)?,
                    Format::Csv => write_csv(out, &rows)?,
                    Format::Text => {
                        for r in &rows {
                            writeln!(out, "{} n={}: {} / {}", r.pair, r.n, r.left, r.right)?;
                        }
                    }
                }
            } else {
                let name = group.as_deref().unwrap_or_default();
                let g = lattice::named_group(name)?;
                let mut rows = Vec::new();
                for k in n.iter() {
                    rows.push(OrbitRow {
                        group: g.name.clone(),
                        n: k,
                        orbits: lattice::weyl_orbit_count(&g, k, *cap)?,
                    });
                }
                match fmt {
                    Format::Json => write_json(out, &rows)?,
                    Format::Csv => write_csv(out, &rows)?,
                    Format::Text => {
                        for r in &rows {
                            writeln!(out, "{} n={}: {}", r.group, r.n, r.orbits)?;
                        }
                    }
                }
            }
        }
        Command::Smatrix {
            lie,
            level,
            enable_e7_smatrix,
        } => {
            let lw = level_weights(*lie, *level)?;
            let s = s_matrix(&lw, *enable_e7_smatrix)?;
            let rep = SmatrixReport {
                smatrix: s.dump(&lw),
                unitarity_error: s.unitarity_error(),
                symmetry_error: s.symmetry_error(),
                conjugation: verify_s_conjugation(&lw, &s),
            };
            match fmt {
                Format::Json => write_json(out, &rep)?,
                Format::Csv => return Err(no_csv("smatrix")),
                Format::Text => {
                    writeln!(out, "{} level {}: {} weights", lie, level, lw.len())?;
                    writeln!(
                        out,
                        "  unitarity error {:.3e}, symmetry error {:.3e}",
                        rep.unitarity_error, rep.symmetry_error
                    )?;
                    let c = &rep.conjugation;
                    writeln!(
                        out,
                        "  conjugation ({}) holds: {}, max error {:.3e}",
                        c.convention, c.holds, c.max_abs_error
                    )?;
                    for (a, b) in &c.identification {
                        writeln!(out, "    {} -> {}", a, b)?;
                    }
                }
            }
        }
        Command::Verify { suite } => {
            let rep = run_suite(suite)?;
            if !rep.passed() {
                return Err(CliError::Failed(rep.failures));
            }
            match fmt {
                Format::Json => write_json(out, &rep)?,
                Format::Csv => write_csv(
                    out,
                    &[SuiteSummary {
                        suite: &rep.suite,
                        checks: rep.checks,
                        failures: 0,
                    }],
                )?,
                Format::Text => writeln!(out, "{}: {} checks passed", rep.suite, rep.checks)?,
            }
        }
    }
    Ok(())
}

pub fn run_suite(suite: &Suite) -> Result<SuiteReport, CliError> {
    match suite {
        Suite::Duality { pair, max_n, gamma } => {
            let groups = match gamma {
                Some(g) => vec![*g],
                None => pair.default_groups(),
            };
            suites::duality(*pair, &groups, *max_n)
        }
        Suite::Refined { gamma, max_n } => suites::refined(*gamma, *max_n),
        Suite::Identities {
            prop,
            params,
            random,
            seed,
        } => {
            let sel = match (prop, params) {
                (Some(id), Some(text)) => IdentitySelection::Single(*id, Params::parse(*id, text)?),
                (Some(id), None) if !id.has_params() => {
                    IdentitySelection::Single(*id, Params::None)
                }
                (only, _) => IdentitySelection::Sweep {
                    only: *only,
                    random: *random,
                    seed: *seed,
                },
            };
            suites::identities(&sel)
        }
        Suite::ZnLattice {
            max_rank,
            max_n,
            cap,
        } => Ok(suites::zn_lattice(*max_rank, *max_n, *cap)),
        Suite::Smatrix {
            lie,
            level,
            enable_e7_smatrix,
        } => {
            let cases = match (lie, level) {
                (Some(t), Some(l)) => vec![(*t, *l)],
                _ => suites::default_smatrix_cases(),
            };
            suites::smatrix(&cases, *enable_e7_smatrix)
        }
        Suite::Oracle { max_n } => Ok(suites::oracle(
            &dualcount_core::grouprep::standard_groups(),
            *max_n,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(args).unwrap()
    }

    #[test]
    fn round_trip_is_stable() {
        for args in [
            &[
                "dualcount",
                "count",
                "--gamma",
                "Ohat",
                "--target",
                "Sp",
                "--n",
                "1",
            ][..],
            &[
                "dualcount",
                "--format",
                "json",
                "count",
                "--gamma",
                "Z:3",
                "--target",
                "SO",
                "--n",
                "0..5",
            ],
            &[
                "dualcount",
                "sectors",
                "--gamma",
                "Ohat",
                "--side",
                "spin",
                "--n",
                "2",
            ],
            &[
                "dualcount",
                "series",
                "--expr",
                "1/(1-q^2)",
                "--order",
                "10",
            ],
            &[
                "dualcount",
                "series",
                "--gamma",
                "Dhat:5",
                "--target",
                "y00-sp",
            ],
            &["dualcount", "orbits", "--pairs", "--n", "1..3"],
            &[
                "dualcount",
                "smatrix",
                "--type",
                "E7",
                "--level",
                "1",
                "--enable-e7-smatrix",
            ],
            &[
                "dualcount",
                "verify",
                "identities",
                "--prop",
                "KF4",
                "--params",
                "1,2;1;2",
            ],
            &[
                "dualcount",
                "verify",
                "duality",
                "--pair",
                "psp-spin",
                "--gamma",
                "That",
            ],
            &["dualcount", "verify", "zn-lattice", "--max-rank", "3"],
        ] {
            let c = parse(args);
            let again = parse(&c.to_args().iter().map(String::as_str).collect::<Vec<_>>());
            assert_eq!(c, again, "{:?}", args);
            assert_eq!(again.to_args(), c.to_args());
        }
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(RunConfig::try_parse_from([
            "dualcount",
            "count",
            "--gamma",
            "Ohat",
            "--n",
            "1",
            "--target",
            "Sp",
            "--bogus"
        ])
        .is_err());
        assert!(RunConfig::try_parse_from(["dualcount", "verify", "everything"]).is_err());
        assert!(RunConfig::try_parse_from([
            "dualcount",
            "count",
            "--gamma",
            "Q:3",
            "--target",
            "Sp",
            "--n",
            "1"
        ])
        .is_err());
        assert!(RunConfig::try_parse_from([
            "dualcount",
            "count",
            "--gamma",
            "Ohat",
            "--target",
            "G2",
            "--n",
            "1"
        ])
        .is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!("3".parse::<NRange>().unwrap(), NRange { lo: 3, hi: 3 });
        assert_eq!("0..12".parse::<NRange>().unwrap(), NRange { lo: 0, hi: 12 });
        assert!("5..2".parse::<NRange>().is_err());
    }

    #[test]
    fn floats_are_rounded() {
        let v = serde_json::json!({"b": 1e-17, "a": [0.1234567890123456, 2]});
        assert_eq!(
            to_json(&v).split_whitespace().collect::<String>(),
            r#"{"a":[0.123456789012,2],"b":0.0}"#
        );
    }
}
