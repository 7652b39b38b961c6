//! Points of the orbit closure as (group element, fill symbol) pairs:
//! finite-horizon evaluation, fiber-size certificates, aperiodic-position
//! partitions and proximality witnesses.
//!
//! A finite machine cannot decide aperiodicity from a digit prefix alone,
//! so evaluation is tri-state: a position is `Forced` when some digit of
//! `g + n` inside the working window is defined, `AperiodicCertified` when
//! the tail rule proves every remaining digit undefined, and
//! `Undetermined` otherwise. Certificates never overstate what the tail
//! rule can actually prove.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::odometer::{
    constant_digit_fate, digit_defined_for_modulus, ConstantDigitFate, OdometerElement, Tail,
};
use crate::toeplitz::{symbol_of_digit, Symbol};

/// A point of the orbit closure over the fiber of `g`, with the symbol
/// filled in on aperiodic positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoint {
    g: OdometerElement,
    fill: Symbol,
}

impl OrbitPoint {
    pub fn new(g: OdometerElement, fill: Symbol) -> Self {
        OrbitPoint { g, fill }
    }

    pub fn group_element(&self) -> &OdometerElement {
        &self.g
    }

    pub fn fill(&self) -> Symbol {
        self.fill
    }
}

/// Outcome of evaluating one position at a finite working depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalResult {
    /// Some digit inside the window is defined; the symbol is forced at
    /// this level independently of the fill.
    Forced { symbol: Symbol, level: usize },
    /// The tail rule certifies that no digit is ever defined; the point
    /// reads its fill symbol here.
    AperiodicCertified { fill: Symbol },
    /// Neither forced inside the window nor certified aperiodic.
    Undetermined { horizon: usize },
}

impl EvalResult {
    pub fn is_forced(&self) -> bool {
        matches!(self, EvalResult::Forced { .. })
    }

    /// The symbol actually read at the position, when one is known.
    pub fn symbol(&self) -> Option<Symbol> {
        match self {
            EvalResult::Forced { symbol, .. } => Some(*symbol),
            EvalResult::AperiodicCertified { fill } => Some(*fill),
            EvalResult::Undetermined { .. } => None,
        }
    }
}

/// A finite proof object classifying the fiber size of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberCertificate {
    /// The tail rule guarantees infinitely many defined digits, so the
    /// fiber is a single point. The witness levels are the first defined
    /// digit levels inside the materialised depth.
    SingletonCertified { witness_levels: Vec<usize> },
    /// The tail rule guarantees all digits beyond some level are
    /// undefined, so the fiber carries one point per fill symbol.
    FiveCertified,
    /// A bare prefix proves nothing; reports how far we looked and how
    /// many defined digits were seen.
    UnknownAt { level: usize, defined_seen: usize },
}

/// Partition of a position range by evaluation outcome.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AperPartition {
    pub forced: Vec<(i64, Symbol, usize)>,
    pub certified_aperiodic: Vec<i64>,
    pub undetermined: Vec<i64>,
}

/// Result of the proximality witness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProximalOutcome {
    /// Least-|k| shift whose surrounding window is fully forced.
    Shift(i64),
    /// No shift within the bound qualified.
    NotFound { bound: i64 },
}

/// Evaluates `point` at position `n`, scanning digit indices below
/// `max_level` of `g + n`.
pub fn point_eval(point: &OrbitPoint, n: i64, max_level: usize) -> Result<EvalResult> {
    let g = &point.g;
    let structure = g.structure();
    let depth = structure.depth();
    if max_level > depth {
        return Err(Error::DepthExhausted {
            needed: max_level,
            available: depth,
        });
    }
    let shifted = g.add(&OdometerElement::embed(structure.clone(), n))?;
    let avail = max_level.min(shifted.horizon());
    let digits = shifted.digits_up_to(avail)?;
    for (j, &d) in digits.iter().enumerate() {
        let q = structure.modulus(j + 1)?;
        if digit_defined_for_modulus(d, q) {
            return Ok(EvalResult::Forced {
                symbol: symbol_of_digit(d, q).expect("defined digit has a symbol"),
                level: j + 1,
            });
        }
    }
    match shifted.tail() {
        Tail::ConstantDigit(c) => {
            // Any computable digit past the window that is defined rules
            // out both a forced answer inside the window and aperiodicity.
            let prefix = shifted.prefix();
            for (j, &d) in prefix.iter().enumerate().skip(avail) {
                let q = structure.modulus(j + 1)?;
                if digit_defined_for_modulus(d, q) {
                    return Ok(EvalResult::Undetermined { horizon: avail });
                }
            }
            match constant_digit_fate(structure, *c, prefix.len() + 1) {
                ConstantDigitFate::FinitelyDefined(levels) if levels.is_empty() => {
                    Ok(EvalResult::AperiodicCertified { fill: point.fill })
                }
                _ => Ok(EvalResult::Undetermined { horizon: avail }),
            }
        }
        // Integer tails are eventually defined, so the position is forced
        // at some level beyond the window; inside it we know nothing more.
        Tail::IntegerEmbed(_) => Ok(EvalResult::Undetermined { horizon: avail }),
        Tail::Unknown => {
            if avail < max_level {
                Err(Error::DepthExhausted {
                    needed: max_level,
                    available: avail,
                })
            } else {
                Ok(EvalResult::Undetermined { horizon: avail })
            }
        }
    }
}

/// Classifies the fiber of `g` from its tail rule.
pub fn fiber_certificate(g: &OdometerElement, max_level: usize) -> FiberCertificate {
    let structure = g.structure();
    let depth = structure.depth().min(max_level.max(1));
    match g.tail() {
        Tail::IntegerEmbed(_) => {
            // Digits are eventually 0 (nonnegative) or eventually maximal
            // (negative); both are defined at every level.
            FiberCertificate::SingletonCertified {
                witness_levels: defined_levels(g, depth, 3),
            }
        }
        Tail::ConstantDigit(c) => match constant_digit_fate(structure, *c, g.prefix().len() + 1) {
            ConstantDigitFate::AlwaysDefined => FiberCertificate::SingletonCertified {
                witness_levels: defined_levels(g, depth, 3),
            },
            ConstantDigitFate::FinitelyDefined(_) => FiberCertificate::FiveCertified,
            ConstantDigitFate::Unknown(level) => FiberCertificate::UnknownAt {
                level,
                defined_seen: defined_levels(g, depth, usize::MAX).len(),
            },
        },
        Tail::Unknown => {
            let horizon = g.horizon().min(max_level);
            FiberCertificate::UnknownAt {
                level: horizon,
                defined_seen: defined_levels(g, horizon, usize::MAX).len(),
            }
        }
    }
}

fn defined_levels(g: &OdometerElement, upto: usize, cap: usize) -> Vec<usize> {
    let structure = g.structure();
    let mut out = Vec::new();
    let Ok(digits) = g.digits_up_to(upto) else {
        return out;
    };
    for (j, &d) in digits.iter().enumerate() {
        let Ok(q) = structure.modulus(j + 1) else {
            break;
        };
        if digit_defined_for_modulus(d, q) {
            out.push(j + 1);
            if out.len() >= cap {
                break;
            }
        }
    }
    out
}

/// Partitions `[a, b]` into forced, certified-aperiodic and undetermined
/// positions of the fiber of `g`. Positions whose evaluation would need
/// depth past an unknown tail land in the undetermined bucket.
pub fn aper_positions(g: &OdometerElement, a: i64, b: i64, max_level: usize) -> AperPartition {
    let probe = OrbitPoint::new(g.clone(), Symbol::ALL[0]);
    let mut out = AperPartition::default();
    let mut n = a;
    while n <= b {
        match point_eval(&probe, n, max_level) {
            Ok(EvalResult::Forced { symbol, level }) => out.forced.push((n, symbol, level)),
            Ok(EvalResult::AperiodicCertified { .. }) => out.certified_aperiodic.push(n),
            Ok(EvalResult::Undetermined { .. }) | Err(_) => out.undetermined.push(n),
        }
        n += 1;
    }
    out
}

/// Searches for the least-|k| shift (ties resolved toward positive `k`)
/// with `|k| <= bound` such that every position of `[k - radius, k + radius]`
/// is forced at the working depth; fiber mates then coincide on the whole
/// window. Requires both points to sit over the same group element.
pub fn proximal_witness(
    p1: &OrbitPoint,
    p2: &OrbitPoint,
    radius: i64,
    bound: i64,
) -> Result<ProximalOutcome> {
    if p1.g != p2.g {
        return Err(Error::InvalidArgument(
            "proximal witness search needs points over the same fiber".into(),
        ));
    }
    if radius < 0 || bound < 0 {
        return Err(Error::InvalidArgument(
            "radius and bound must be nonnegative".into(),
        ));
    }
    if p1.fill == p2.fill {
        // Identical points coincide everywhere; the identity shift works.
        return Ok(ProximalOutcome::Shift(0));
    }
    let depth = p1.g.horizon();
    let window_forced = |k: i64| -> bool {
        (k - radius..=k + radius)
            .all(|n| matches!(point_eval(p1, n, depth), Ok(EvalResult::Forced { .. })))
    };
    for magnitude in 0..=bound {
        for k in [magnitude, -magnitude] {
            if window_forced(k) {
                return Ok(ProximalOutcome::Shift(k));
            }
            if magnitude == 0 {
                break;
            }
        }
    }
    Ok(ProximalOutcome::NotFound { bound })
}

/// A finite symbol window anchored at an absolute start position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    start: i64,
    symbols: Vec<Symbol>,
}

impl Window {
    pub fn new(start: i64, symbols: Vec<Symbol>) -> Self {
        Window { start, symbols }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }
}

/// Truncated orbit metric between two aligned windows:
/// `sum |x(n) - y(n)| / 2^|n|` over the covered positions, exactly.
pub fn rho_distance(w1: &Window, w2: &Window) -> Result<Ratio<BigInt>> {
    if w1.start != w2.start || w1.symbols.len() != w2.symbols.len() {
        return Err(Error::WindowMismatch);
    }
    let mut total: Ratio<BigInt> = Ratio::zero();
    for (i, (a, b)) in w1.symbols.iter().zip(&w2.symbols).enumerate() {
        let n = w1.start + i as i64;
        let diff = (i64::from(a.value()) - i64::from(b.value())).abs();
        if diff != 0 {
            let denom = BigInt::one() << n.unsigned_abs().min(u64::from(u32::MAX)) as usize;
            total += Ratio::new(BigInt::from(diff), denom);
        }
    }
    Ok(total)
}

/// Parses the element grammar used on the command line:
/// `int:<m>` or `digits:<s0,s1,...>[+const:<c>|+unknown]`.
pub fn parse_element_spec(
    structure: &std::sync::Arc<crate::period::PeriodStructure>,
    spec: &str,
) -> Result<OdometerElement> {
    if let Some(m) = spec.strip_prefix("int:") {
        let m: BigInt = m
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad integer in element spec `{spec}`")))?;
        return Ok(OdometerElement::embed(structure.clone(), m));
    }
    let Some(rest) = spec.strip_prefix("digits:") else {
        return Err(Error::InvalidArgument(format!(
            "element spec must start with `int:` or `digits:`, got `{spec}`"
        )));
    };
    let (digit_part, tail) = if let Some((d, c)) = rest.split_once("+const:") {
        let c: u64 = c.parse().map_err(|_| {
            Error::InvalidArgument(format!("bad constant digit in element spec `{spec}`"))
        })?;
        (d, Tail::ConstantDigit(c))
    } else if let Some(d) = rest.strip_suffix("+unknown") {
        (d, Tail::Unknown)
    } else {
        (rest, Tail::Unknown)
    };
    let mut digits = Vec::new();
    for tok in digit_part.split(',').filter(|t| !t.is_empty()) {
        let d: u64 = tok.parse().map_err(|_| {
            Error::InvalidArgument(format!("bad digit `{tok}` in element spec `{spec}`"))
        })?;
        digits.push(d);
    }
    OdometerElement::from_digits(structure.clone(), digits, tail)
}
