//! `tzlab`: command-line front end for the exact Toeplitz/odometer toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification subcommand found
//! violations or counterexamples, 2 on usage, config or depth errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use toeplitz_core::error::Error;
use toeplitz_core::ndfinite;
use toeplitz_core::orbit::{
    fiber_certificate, parse_element_spec, point_eval, proximal_witness, rho_distance, EvalResult,
    FiberCertificate, OrbitPoint, ProximalOutcome, Window,
};
use toeplitz_core::period::{structure_from_file, GeneratorRule, PeriodStructure};
use toeplitz_core::saturation::{
    claim_check_exhaustive, nonsat_demo, ClaimReport, DemoConfig, DemoViolation, NonsatReport,
    OffsetCase,
};
use toeplitz_core::toeplitz::ToeplitzSequence;
use toeplitz_core::{Result, Symbol};

#[derive(Parser)]
#[command(
    name = "tzlab",
    version,
    about = "Exact computations on five-symbol Toeplitz sequences over mixed-radix odometers"
)]
struct Cli {
    /// Explicit comma-separated level moduli, e.g. 6,12,24
    #[arg(long, global = true, value_delimiter = ',')]
    q: Option<Vec<u64>>,

    /// Named generator rule: "geometric base=6 ratio=2" or
    /// "arithmetic start=6 step=2" (bare names take those defaults)
    #[arg(long = "q-rule", global = true)]
    q_rule: Option<String>,

    /// Number of levels for rule-generated structures (top-level flag:
    /// give it before the subcommand)
    #[arg(long, default_value_t = 8)]
    depth: usize,

    /// TOML config file declaring `q = [...]` or `rule = "..."` + `depth`
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the sequence: windows, skeletons, densities
    Toeplitz {
        #[command(subcommand)]
        cmd: ToeplitzCmd,
    },
    /// Orbit-closure points: evaluation, fibers, proximality
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// Digit-doubling checks and the non-saturation demonstration
    Saturation {
        #[command(subcommand)]
        cmd: SaturationCmd,
    },
    /// Diagonal-orbit sets of finite cyclic rotations
    Ndfinite {
        #[command(subcommand)]
        cmd: NdCmd,
    },
}

#[derive(Subcommand)]
enum ToeplitzCmd {
    /// Print the symbols at positions from..=to
    Window {
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Print the partial symbol table of one level
    Skeleton {
        #[arg(long)]
        level: usize,
    },
    /// Exact defined-position density of one level
    Density {
        #[arg(long)]
        level: usize,
    },
}

#[derive(Subcommand)]
enum OrbitCmd {
    /// Evaluate a fiber point on a position range
    Eval {
        /// Element spec: int:<m> or digits:<s0,s1,...>[+const:<c>|+unknown]
        #[arg(long)]
        g: String,
        /// Fill symbol (0..=4)
        #[arg(long)]
        fill: u8,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
        /// Digit window for the evaluation (defaults to the full depth)
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Fiber-size certificate of an element
    Fiber {
        #[arg(long)]
        g: String,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Search for a shift where two fiber mates provably coincide
    Proximal {
        #[arg(long)]
        g: String,
        /// Two fill symbols, e.g. 0,3
        #[arg(long, value_delimiter = ',')]
        fills: Vec<u8>,
        #[arg(long)]
        radius: i64,
        #[arg(long)]
        bound: i64,
    },
}

#[derive(Subcommand)]
enum SaturationCmd {
    /// Exhaustive digit-doubling check
    Claim {
        /// Window depth m (windows have m+1 digits)
        #[arg(long)]
        depth: usize,
        /// Offset cases to enumerate
        #[arg(long, value_delimiter = ',', default_values_t = [CaseArg::Plain, CaseArg::Shifted])]
        cases: Vec<CaseArg>,
    },
    /// Finite-scale non-saturation demonstration
    Demo {
        /// Element spec for the five-point fiber
        #[arg(long, default_value = "digits:0+const:3")]
        a: String,
        /// Half-width of the scanned position window
        #[arg(long)]
        window: Option<i64>,
        /// Inclusive level range, e.g. 3..5
        #[arg(long, default_value = "3..5")]
        levels: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    Plain,
    Shifted,
}

impl std::fmt::Display for CaseArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseArg::Plain => "plain",
            CaseArg::Shifted => "shifted",
        })
    }
}

impl From<CaseArg> for OffsetCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Plain => OffsetCase::Plain,
            CaseArg::Shifted => OffsetCase::Shifted,
        }
    }
}

#[derive(Subcommand)]
enum NdCmd {
    /// Scan all small rotations for the power-equality dichotomy
    Scan {
        #[arg(long, default_value_t = 12)]
        nmax: u64,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        /// Shorthand for --format json
        #[arg(long)]
        json: bool,
    },
    /// Show the orbit sets of one rotation and one power
    Show {
        #[arg(long = "N")]
        modulus: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn build_structure(cli: &Cli) -> Result<Arc<PeriodStructure>> {
    let sources = cli.q.is_some() as u8 + cli.q_rule.is_some() as u8 + cli.config.is_some() as u8;
    if sources > 1 {
        return Err(Error::InvalidArgument(
            "choose at most one of --q, --q-rule, --config".into(),
        ));
    }
    let structure = if let Some(q) = &cli.q {
        PeriodStructure::from_moduli(q.clone())?
    } else if let Some(rule) = &cli.q_rule {
        PeriodStructure::from_rule(GeneratorRule::parse(rule)?, cli.depth)?
    } else if let Some(path) = &cli.config {
        structure_from_file(path)?
    } else {
        PeriodStructure::from_rule(GeneratorRule::Geometric { base: 6, ratio: 2 }, cli.depth)?
    };
    Ok(Arc::new(structure))
}

fn parse_fill(v: u8) -> Result<Symbol> {
    Symbol::new(v).ok_or_else(|| Error::InvalidArgument(format!("fill symbol {v} out of range")))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn parse_levels(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::InvalidArgument(format!("bad level range `{text}`, want A..B")))?;
    let lo = lo
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad level range `{text}`")))?;
    let hi = hi
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad level range `{text}`")))?;
    Ok((lo, hi))
}

/// Renders the report (JSON) or the text body and writes it in one guarded
/// write, so downstream pipes closing early never panic.
fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&mut String)) -> Result<()> {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(report)
            .map_err(|e| Error::InvalidArgument(format!("JSON serialisation failed: {e}")))?,
        Format::Text => {
            let mut s = String::new();
            text(&mut s);
            s.trim_end_matches('\n').to_string()
        }
    };
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{body}");
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let structure = build_structure(&cli)?;
    let format = cli.format;
    match &cli.command {
        Command::Toeplitz { cmd } => run_toeplitz(structure, format, cmd),
        Command::Orbit { cmd } => run_orbit(structure, format, cmd),
        Command::Saturation { cmd } => run_saturation(structure, format, cmd),
        Command::Ndfinite { cmd } => run_ndfinite(format, cmd),
    }
}

// ---------------------------------------------------------------- toeplitz

#[derive(Serialize)]
struct WindowReport {
    from: i64,
    to: i64,
    symbols: Vec<u8>,
}

#[derive(Serialize)]
struct SkeletonReport {
    level: usize,
    p_i: u64,
    defined_count: u64,
    /// Symbol per residue, null when undefined.
    cells: Vec<Option<u8>>,
    essential: Option<bool>,
}

#[derive(Serialize)]
struct DensityJson {
    level: usize,
    defined_count: u64,
    p_i: u64,
    d_i_num: String,
    d_i_den: String,
    classification: String,
    recursion_num: String,
    recursion_den: String,
    step_constant: u64,
}

fn run_toeplitz(
    structure: Arc<PeriodStructure>,
    format: Format,
    cmd: &ToeplitzCmd,
) -> Result<ExitCode> {
    let seq = ToeplitzSequence::new(structure.clone());
    match *cmd {
        ToeplitzCmd::Window { from, to } => {
            let symbols = seq.window(from, to)?;
            let report = WindowReport {
                from,
                to,
                symbols: symbols.iter().map(|s| s.value()).collect(),
            };
            emit(format, &report, |out| {
                let line: Vec<String> = report.symbols.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            })?;
        }
        ToeplitzCmd::Skeleton { level } => {
            let table = seq.skeleton(level)?;
            let essential = if level < structure.depth() {
                Some(table.is_essential())
            } else {
                None
            };
            let report = SkeletonReport {
                level,
                p_i: table.period(),
                defined_count: table.defined_count(),
                cells: table.cells().iter().map(|c| c.map(|s| s.value())).collect(),
                essential,
            };
            emit(format, &report, |out| {
                let _ = writeln!(
                    out,
                    "level {}: period {}, defined {}/{}{}",
                    report.level,
                    report.p_i,
                    report.defined_count,
                    report.p_i,
                    match report.essential {
                        Some(true) => ", essential",
                        Some(false) => ", not essential",
                        None => "",
                    }
                );
                if report.p_i <= 4096 {
                    let row: String = report
                        .cells
                        .iter()
                        .map(|c| c.map_or('.', |v| char::from(b'0' + v)))
                        .collect();
                    for chunk in row.as_bytes().chunks(72) {
                        let _ = writeln!(out, "{}", std::str::from_utf8(chunk).unwrap());
                    }
                } else {
                    let _ = writeln!(out, "(table omitted: {} cells)", report.p_i);
                }
            })?;
        }
        ToeplitzCmd::Density { level } => {
            let d = seq.density(level)?;
            let report = DensityJson {
                level: d.level,
                defined_count: d.defined_count,
                p_i: d.period,
                d_i_num: d.density.numer().to_string(),
                d_i_den: d.density.denom().to_string(),
                classification: d.classification.to_string(),
                recursion_num: d.recursion_density.numer().to_string(),
                recursion_den: d.recursion_density.denom().to_string(),
                step_constant: d.step_constant,
            };
            emit(format, &report, |out| {
                let _ = writeln!(
                    out,
                    "level {}: defined {}/{} = {}/{} (recursion {}/{}, c = {}), classification {}",
                    report.level,
                    report.defined_count,
                    report.p_i,
                    report.d_i_num,
                    report.d_i_den,
                    report.recursion_num,
                    report.recursion_den,
                    report.step_constant,
                    report.classification
                );
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ------------------------------------------------------------------- orbit

#[derive(Serialize)]
struct EvalRow {
    n: i64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbol: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    horizon: Option<usize>,
}

#[derive(Serialize)]
struct EvalReport {
    g: String,
    fill: u8,
    max_level: usize,
    rows: Vec<EvalRow>,
}

#[derive(Serialize)]
struct FiberReport {
    g: String,
    certificate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_levels: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    defined_seen: Option<usize>,
}

#[derive(Serialize)]
struct ProximalReport {
    g: String,
    fills: (u8, u8),
    radius: i64,
    bound: i64,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<String>,
}

fn run_orbit(structure: Arc<PeriodStructure>, format: Format, cmd: &OrbitCmd) -> Result<ExitCode> {
    match cmd {
        OrbitCmd::Eval {
            g,
            fill,
            from,
            to,
            max_level,
        } => {
            let element = parse_element_spec(&structure, g)?;
            let fill = parse_fill(*fill)?;
            let max_level = max_level.unwrap_or_else(|| structure.depth());
            if *from > *to {
                return Err(Error::InvalidArgument(format!(
                    "window bounds out of order: {from} > {to}"
                )));
            }
            let point = OrbitPoint::new(element, fill);
            let mut rows = Vec::new();
            for n in *from..=*to {
                let row = match point_eval(&point, n, max_level)? {
                    EvalResult::Forced { symbol, level } => EvalRow {
                        n,
                        status: "forced",
                        symbol: Some(symbol.value()),
                        level: Some(level),
                        horizon: None,
                    },
                    EvalResult::AperiodicCertified { fill } => EvalRow {
                        n,
                        status: "aperiodic",
                        symbol: Some(fill.value()),
                        level: None,
                        horizon: None,
                    },
                    EvalResult::Undetermined { horizon } => EvalRow {
                        n,
                        status: "undetermined",
                        symbol: None,
                        level: None,
                        horizon: Some(horizon),
                    },
                };
                rows.push(row);
            }
            let report = EvalReport {
                g: g.clone(),
                fill: fill.value(),
                max_level,
                rows,
            };
            emit(format, &report, |out| {
                for row in &report.rows {
                    let _ = match row.status {
                        "forced" => writeln!(
                            out,
                            "{}: forced {} @ level {}",
                            row.n,
                            row.symbol.unwrap(),
                            row.level.unwrap()
                        ),
                        "aperiodic" => {
                            writeln!(out, "{}: aperiodic (fill {})", row.n, row.symbol.unwrap())
                        }
                        _ => writeln!(
                            out,
                            "{}: undetermined (horizon {})",
                            row.n,
                            row.horizon.unwrap()
                        ),
                    };
                }
            })?;
            Ok(ExitCode::SUCCESS)
        }
        OrbitCmd::Fiber { g, max_level } => {
            let element = parse_element_spec(&structure, g)?;
            let max_level = max_level.unwrap_or_else(|| structure.depth());
            let report = match fiber_certificate(&element, max_level) {
                FiberCertificate::SingletonCertified { witness_levels } => FiberReport {
                    g: g.clone(),
                    certificate: "singleton".into(),
                    witness_levels: Some(witness_levels),
                    level: None,
                    defined_seen: None,
                },
                FiberCertificate::FiveCertified => FiberReport {
                    g: g.clone(),
                    certificate: "five".into(),
                    witness_levels: None,
                    level: None,
                    defined_seen: None,
                },
                FiberCertificate::UnknownAt {
                    level,
                    defined_seen,
                } => FiberReport {
                    g: g.clone(),
                    certificate: "unknown".into(),
                    witness_levels: None,
                    level: Some(level),
                    defined_seen: Some(defined_seen),
                },
            };
            emit(format, &report, |out| {
                let _ = match report.certificate.as_str() {
                    "singleton" => writeln!(
                        out,
                        "singleton fiber (defined digit levels within depth: {:?})",
                        report.witness_levels.as_ref().unwrap()
                    ),
                    "five" => writeln!(out, "five-point fiber"),
                    _ => writeln!(
                        out,
                        "unknown at level {} ({} defined digits seen)",
                        report.level.unwrap(),
                        report.defined_seen.unwrap()
                    ),
                };
            })?;
            Ok(ExitCode::SUCCESS)
        }
        OrbitCmd::Proximal {
            g,
            fills,
            radius,
            bound,
        } => {
            if fills.len() != 2 {
                return Err(Error::InvalidArgument(
                    "--fills needs exactly two symbols".into(),
                ));
            }
            let element = parse_element_spec(&structure, g)?;
            let f1 = parse_fill(fills[0])?;
            let f2 = parse_fill(fills[1])?;
            let p1 = OrbitPoint::new(element.clone(), f1);
            let p2 = OrbitPoint::new(element, f2);
            let outcome = proximal_witness(&p1, &p2, *radius, *bound)?;
            let report = match outcome {
                ProximalOutcome::Shift(k) => {
                    // both windows are fully forced, so they coincide
                    let depth = structure.depth();
                    let mut w1 = Vec::new();
                    let mut w2 = Vec::new();
                    for n in k - radius..=k + radius {
                        if let (Ok(a), Ok(b)) =
                            (point_eval(&p1, n, depth), point_eval(&p2, n, depth))
                        {
                            if let (Some(a), Some(b)) = (a.symbol(), b.symbol()) {
                                w1.push(a);
                                w2.push(b);
                            }
                        }
                    }
                    let rho = if w1.len() == (2 * radius + 1) as usize {
                        let base = Window::new(-radius, w1);
                        let other = Window::new(-radius, w2);
                        rho_distance(&base, &other).ok().map(|r| r.to_string())
                    } else {
                        None
                    };
                    ProximalReport {
                        g: g.clone(),
                        fills: (fills[0], fills[1]),
                        radius: *radius,
                        bound: *bound,
                        found: true,
                        shift: Some(k),
                        rho,
                    }
                }
                ProximalOutcome::NotFound { bound } => ProximalReport {
                    g: g.clone(),
                    fills: (fills[0], fills[1]),
                    radius: *radius,
                    bound,
                    found: false,
                    shift: None,
                    rho: None,
                },
            };
            emit(format, &report, |out| {
                if report.found {
                    let _ = writeln!(
                        out,
                        "witness shift k = {} (window radius {}, rho = {})",
                        report.shift.unwrap(),
                        report.radius,
                        report.rho.as_deref().unwrap_or("?")
                    );
                } else {
                    let _ = writeln!(out, "no witness within bound {}", report.bound);
                }
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

// -------------------------------------------------------------- saturation

#[derive(Serialize)]
struct ClaimViolationJson {
    digits: Vec<u64>,
    case: String,
    carry_in: bool,
    t: usize,
    t_prime: usize,
    doubled: Vec<u64>,
}

#[derive(Serialize)]
struct ClaimJson {
    depth: usize,
    cases: Vec<String>,
    scanned: u64,
    eligible: u64,
    checked: u64,
    violations: Vec<ClaimViolationJson>,
}

#[derive(Serialize)]
struct TimedReport<T: Serialize> {
    report: T,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct DemoLevelJson {
    m: usize,
    shift: String,
    offset_case: String,
    forced_positions: u64,
    a_aperiodic: u64,
    a_out_of_domain: u64,
    a_side_reads: Vec<u8>,
    b_aperiodic: u64,
    b_out_of_domain: u64,
    b_side_reads: Vec<u8>,
    cover_symbols: Vec<u8>,
}

#[derive(Serialize)]
struct DemoViolationJson {
    kind: String,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<i64>,
    detail: String,
}

#[derive(Serialize)]
struct DemoJson {
    a: String,
    window: i64,
    levels: Vec<DemoLevelJson>,
    scanned: u64,
    violations: Vec<DemoViolationJson>,
    realized_fill_pairs: Vec<(u8, u8)>,
}

fn claim_json(report: &ClaimReport, cases: &[CaseArg]) -> ClaimJson {
    ClaimJson {
        depth: report.depth,
        cases: cases.iter().map(|c| c.to_string()).collect(),
        scanned: report.scanned,
        eligible: report.eligible,
        checked: report.checked,
        violations: report
            .violations
            .iter()
            .map(|v| ClaimViolationJson {
                digits: v.digits.clone(),
                case: v.case.name().into(),
                carry_in: v.carry_in,
                t: v.t,
                t_prime: v.t_prime,
                doubled: v.doubled.clone(),
            })
            .collect(),
    }
}

fn demo_json(report: &NonsatReport, a: &str, window: i64) -> DemoJson {
    DemoJson {
        a: a.to_string(),
        window,
        levels: report
            .levels
            .iter()
            .map(|l| DemoLevelJson {
                m: l.m,
                shift: l.shift.to_string(),
                offset_case: l.offset_case.name().into(),
                forced_positions: l.forced_positions,
                a_aperiodic: l.a_aperiodic_positions,
                a_out_of_domain: l.a_out_of_domain,
                a_side_reads: l.a_side_reads.iter().copied().collect(),
                b_aperiodic: l.b_aperiodic_positions,
                b_out_of_domain: l.b_out_of_domain,
                b_side_reads: l.b_side_reads.iter().copied().collect(),
                cover_symbols: l.cover_symbols.iter().copied().collect(),
            })
            .collect(),
        scanned: report.scanned,
        violations: report
            .violations
            .iter()
            .map(|v| match v {
                DemoViolation::ForcedMismatch {
                    m,
                    position,
                    expected,
                    read,
                } => DemoViolationJson {
                    kind: "forced-mismatch".into(),
                    m: *m,
                    position: Some(*position),
                    detail: format!("expected {expected}, read {read}"),
                },
                DemoViolation::ASideFillDrift { m, position, read } => DemoViolationJson {
                    kind: "a-side-fill-drift".into(),
                    m: *m,
                    position: Some(*position),
                    detail: format!("read {read}"),
                },
                DemoViolation::BSideSymbolTwo { m, position } => DemoViolationJson {
                    kind: "b-side-symbol-two".into(),
                    m: *m,
                    position: Some(*position),
                    detail: "doubled side read 2".into(),
                },
                DemoViolation::CoverageGap { m, missing } => DemoViolationJson {
                    kind: "coverage-gap".into(),
                    m: *m,
                    position: None,
                    detail: format!("missing symbols {missing:?}"),
                },
            })
            .collect(),
        realized_fill_pairs: report.realized_fill_pairs.iter().copied().collect(),
    }
}

fn run_saturation(
    structure: Arc<PeriodStructure>,
    format: Format,
    cmd: &SaturationCmd,
) -> Result<ExitCode> {
    if structure.depth() < 4 {
        return Err(Error::InvalidArgument(
            "saturation subcommands need a structure of depth at least 4".into(),
        ));
    }
    match cmd {
        SaturationCmd::Claim { depth, cases } => {
            let case_list: Vec<OffsetCase> = cases.iter().map(|&c| c.into()).collect();
            let started = Instant::now();
            let report = claim_check_exhaustive(&structure, *depth, &case_list)?;
            let ok = report.violations.is_empty();
            let body = claim_json(&report, cases);
            let timed = TimedReport {
                report: body,
                elapsed_ms: started.elapsed().as_millis(),
            };
            emit(format, &timed, |out| {
                let _ = writeln!(
                    out,
                    "depth {}: scanned {}, eligible {}, checked {}, violations: {}",
                    report.depth,
                    report.scanned,
                    report.eligible,
                    report.checked,
                    report.violations.len()
                );
            })?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        SaturationCmd::Demo { a, window, levels } => {
            let element = parse_element_spec(&structure, a)?;
            let levels = parse_levels(levels)?;
            let window = window.unwrap_or_else(|| {
                structure
                    .period(2)
                    .ok()
                    .and_then(|p| p.to_i64())
                    .unwrap_or(72)
            });
            let started = Instant::now();
            let report = nonsat_demo(&DemoConfig {
                a: element,
                window,
                levels,
            })?;
            let ok = report.violations.is_empty();
            let body = demo_json(&report, a, window);
            let timed = TimedReport {
                report: body,
                elapsed_ms: started.elapsed().as_millis(),
            };
            emit(format, &timed, |out| {
                for l in &report.levels {
                    let _ = writeln!(
                        out,
                        "m = {}: shift {} ({}), forced {}, a-aperiodic {} ({} out of domain) reading {:?}, b-aperiodic {} ({} out of domain) reading {:?}, cover {:?}",
                        l.m,
                        l.shift,
                        l.offset_case.name(),
                        l.forced_positions,
                        l.a_aperiodic_positions,
                        l.a_out_of_domain,
                        l.a_side_reads,
                        l.b_aperiodic_positions,
                        l.b_out_of_domain,
                        l.b_side_reads,
                        l.cover_symbols
                    );
                }
                let _ = writeln!(
                    out,
                    "scanned {}, realized fill pairs {:?}, violations: {}",
                    report.scanned,
                    report.realized_fill_pairs,
                    report.violations.len()
                );
            })?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

// ---------------------------------------------------------------- ndfinite

#[derive(Serialize)]
struct ScanRowJson {
    #[serde(rename = "N")]
    modulus: u64,
    r: u64,
    n: u64,
    d: usize,
    #[serde(rename = "size_T")]
    size_t: usize,
    #[serde(rename = "size_Tn")]
    size_tn: usize,
    equal: bool,
    gcd: u64,
    decomposition_ok: bool,
    condition_three: bool,
    condition_coherent: bool,
}

#[derive(Serialize)]
struct ScanJson {
    nmax: u64,
    dmax: usize,
    rows: Vec<ScanRowJson>,
    equality_counterexamples: usize,
    decomposition_failures: usize,
    coherence_failures: usize,
}

#[derive(Serialize)]
struct ShowJson {
    #[serde(rename = "N")]
    modulus: u64,
    r: u64,
    n: u64,
    d: usize,
    #[serde(rename = "size_T")]
    size_t: usize,
    #[serde(rename = "size_Tn")]
    size_tn: usize,
    equal: bool,
    gcd: u64,
    distinct_cells: usize,
    cell_sizes: Vec<usize>,
    partition_ok: bool,
}

fn run_ndfinite(format: Format, cmd: &NdCmd) -> Result<ExitCode> {
    match *cmd {
        NdCmd::Scan { nmax, dmax, json } => {
            let format = if json { Format::Json } else { format };
            let scan = ndfinite::full_scan(nmax, dmax)?;
            let report = ScanJson {
                nmax,
                dmax,
                rows: scan
                    .rows
                    .iter()
                    .map(|r| ScanRowJson {
                        modulus: r.modulus,
                        r: r.r,
                        n: r.n,
                        d: r.d,
                        size_t: r.size_t,
                        size_tn: r.size_tn,
                        equal: r.equal,
                        gcd: r.gcd,
                        decomposition_ok: r.decomposition_ok,
                        condition_three: r.condition_three,
                        condition_coherent: r.condition_matches_next_dim,
                    })
                    .collect(),
                equality_counterexamples: scan.equality_counterexamples.len(),
                decomposition_failures: scan.decomposition_failures.len(),
                coherence_failures: scan.coherence_failures.len(),
            };
            emit(format, &report, |out| {
                let _ = writeln!(
                    out,
                    "scanned {} rows over N <= {}, d <= {}",
                    report.rows.len(),
                    report.nmax,
                    report.dmax
                );
                let _ = writeln!(
                        out,
                    "equality counterexamples: {}, decomposition failures: {}, coherence failures: {}",
                    report.equality_counterexamples,
                    report.decomposition_failures,
                    report.coherence_failures
                );
            })?;
            Ok(if scan.all_clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        NdCmd::Show {
            modulus,
            r,
            d,
            power,
        } => {
            let sys = ndfinite::FiniteRotation::new(modulus, r)?;
            let full = ndfinite::nd_set(&sys, d);
            let powered = ndfinite::nd_power(&sys, power, d);
            let decomposition = ndfinite::decomposition_check(modulus, r, power, d)?;
            let report = ShowJson {
                modulus,
                r,
                n: power,
                d,
                size_t: full.len(),
                size_tn: powered.len(),
                equal: full == powered,
                gcd: gcd(power, modulus),
                distinct_cells: decomposition.distinct_cells,
                cell_sizes: decomposition.cell_sizes.clone(),
                partition_ok: decomposition.holds(),
            };
            emit(format, &report, |out| {
                let _ = writeln!(
                        out,
                    "N = {}, r = {}, d = {}: |orbit set| = {}, |power-{} orbit set| = {}, equal: {}, gcd = {}",
                    report.modulus,
                    report.r,
                    report.d,
                    report.size_t,
                    report.n,
                    report.size_tn,
                    report.equal,
                    report.gcd
                );
                let _ = writeln!(
                    out,
                    "partition: {} distinct cells of sizes {:?}, covering and disjoint: {}",
                    report.distinct_cells, report.cell_sizes, report.partition_ok
                );
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
