//! Exhaustive verification of the digit-doubling combinatorics behind the
//! non-saturation phenomenon, and a finite-scale demonstration that the
//! fiber combination (fill 0, fill 2) is never realised along doubled
//! shifts.
//!
//! The core fact being checked: take any digit window whose first defined
//! digit is 0, double it in mixed radix (with either incoming carry, with
//! or without a one-unit borrow at the bottom), and locate the first
//! defined digit of the result — its symbol is never 2. The checker
//! enumerates the full digit space rather than following the case split,
//! so every carry/borrow path is covered mechanically.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::odometer::{digit_defined_for_modulus, DefinedSet, OdometerElement};
use crate::orbit::{fiber_certificate, point_eval, EvalResult, FiberCertificate, OrbitPoint};
use crate::period::PeriodStructure;
use crate::toeplitz::{symbol_of_digit, Symbol, ToeplitzSequence};

/// Whether a doubled window models `2l` or `2l - p_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffsetCase {
    Plain,
    Shifted,
}

impl OffsetCase {
    pub const BOTH: [OffsetCase; 2] = [OffsetCase::Plain, OffsetCase::Shifted];

    pub fn name(self) -> &'static str {
        match self {
            OffsetCase::Plain => "plain",
            OffsetCase::Shifted => "shifted",
        }
    }
}

/// A digit window starting at level `start_level`: digit `j` ranges over
/// `[0, q_{start_level + j + 1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSequence {
    start_level: usize,
    digits: Vec<u64>,
}

impl DigitSequence {
    pub fn new(structure: &PeriodStructure, start_level: usize, digits: Vec<u64>) -> Result<Self> {
        for (j, &d) in digits.iter().enumerate() {
            let level = start_level + j + 1;
            let q = structure.modulus(level)?;
            if d >= q {
                return Err(Error::DigitOutOfRange {
                    level,
                    digit: d,
                    modulus: q,
                });
            }
        }
        Ok(DigitSequence {
            start_level,
            digits,
        })
    }

    pub fn start_level(&self) -> usize {
        self.start_level
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Index of the first defined digit, if any.
    pub fn annotation(&self, structure: &PeriodStructure) -> Result<Option<usize>> {
        first_defined(structure, self.start_level, &self.digits)
    }

    /// Absolute value `sum s_j p_{start_level + j}`.
    pub fn value(&self, structure: &PeriodStructure) -> Result<BigUint> {
        let mut acc = BigUint::from(0u32);
        for (j, &d) in self.digits.iter().enumerate() {
            acc += structure.period(self.start_level + j)? * d;
        }
        Ok(acc)
    }
}

fn first_defined(
    structure: &PeriodStructure,
    start_level: usize,
    digits: &[u64],
) -> Result<Option<usize>> {
    for (j, &d) in digits.iter().enumerate() {
        let q = structure.modulus(start_level + j + 1)?;
        if digit_defined_for_modulus(d, q) {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Result of doubling a digit window, with the full carry/borrow record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledSequence {
    start_level: usize,
    digits: Vec<u64>,
    /// Carry into each position during the doubling pass.
    carries: Vec<u8>,
    /// Net carry out of the top (negative after a borrow ran off the top).
    carry_out: i64,
    case: OffsetCase,
    carry_in: bool,
    annotation: Option<usize>,
}

impl DoubledSequence {
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn carries(&self) -> &[u8] {
        &self.carries
    }

    pub fn carry_out(&self) -> i64 {
        self.carry_out
    }

    pub fn case(&self) -> OffsetCase {
        self.case
    }

    /// Index `t'` of the first defined digit of the doubled window.
    pub fn annotation(&self) -> Option<usize> {
        self.annotation
    }

    pub fn value(&self, structure: &PeriodStructure) -> Result<BigUint> {
        let mut acc = BigUint::from(0u32);
        for (j, &d) in self.digits.iter().enumerate() {
            acc += structure.period(self.start_level + j)? * d;
        }
        Ok(acc)
    }
}

/// Doubles a digit window in mixed radix. `carry_in` is the unknown carry
/// arriving from the digits below the window; the `Shifted` case then
/// subtracts one unit at the start level, borrowing upward (a borrow from
/// a zero digit produces the maximal digit and propagates, never an error).
pub fn double_digits(
    structure: &PeriodStructure,
    s: &DigitSequence,
    case: OffsetCase,
    carry_in: bool,
) -> Result<DoubledSequence> {
    let r = s.start_level;
    let mut digits = Vec::with_capacity(s.digits.len());
    let mut carries = Vec::with_capacity(s.digits.len());
    let mut carry: u64 = carry_in as u64;
    for (j, &d) in s.digits.iter().enumerate() {
        let q = structure.modulus(r + j + 1)? as u128;
        carries.push(carry as u8);
        let sum = 2 * (d as u128) + carry as u128;
        digits.push((sum % q) as u64);
        carry = (sum / q) as u64;
    }
    let mut carry_out = carry as i64;
    if case == OffsetCase::Shifted {
        let mut j = 0;
        loop {
            if j == digits.len() {
                carry_out -= 1;
                break;
            }
            if digits[j] >= 1 {
                digits[j] -= 1;
                break;
            }
            digits[j] = structure.modulus(r + j + 1)? - 1;
            j += 1;
        }
    }
    let annotation = first_defined(structure, r, &digits)?;
    Ok(DoubledSequence {
        start_level: r,
        digits,
        carries,
        carry_out,
        case,
        carry_in,
        annotation,
    })
}

/// One offending digit window found by the exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimViolation {
    pub digits: Vec<u64>,
    pub case: OffsetCase,
    pub carry_in: bool,
    pub t: usize,
    pub t_prime: usize,
    pub doubled: Vec<u64>,
}

/// Tally of an exhaustive doubling scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    /// Window depth `m` (windows have `m + 1` digits).
    pub depth: usize,
    /// Digit windows enumerated.
    pub scanned: u64,
    /// Windows satisfying the hypothesis: a first defined digit exists and
    /// equals 0.
    pub eligible: u64,
    /// Doubled variants examined (eligible x cases x carries).
    pub checked: u64,
    /// Doubled windows whose first defined digit reads symbol 2.
    pub violations: Vec<ClaimViolation>,
}

/// Enumerates every digit window `(s_0, …, s_m)` over `q_1 … q_{m+1}`
/// whose first defined digit is 0, doubles it under each requested offset
/// case and both incoming carries, and records every doubled window whose
/// first defined digit reads symbol 2. The expected count is zero.
pub fn claim_check_exhaustive(
    structure: &PeriodStructure,
    depth: usize,
    cases: &[OffsetCase],
) -> Result<ClaimReport> {
    if depth + 1 > structure.depth() {
        return Err(Error::DepthExhausted {
            needed: depth + 1,
            available: structure.depth(),
        });
    }
    let moduli: Vec<u64> = (1..=depth + 1)
        .map(|l| structure.modulus(l))
        .collect::<Result<_>>()?;
    let mut report = ClaimReport {
        depth,
        scanned: 0,
        eligible: 0,
        checked: 0,
        violations: Vec::new(),
    };
    let mut digits = vec![0u64; depth + 1];
    loop {
        report.scanned += 1;
        let t = first_defined(structure, 0, &digits)?;
        if let Some(t) = t {
            if digits[t] == 0 {
                report.eligible += 1;
                let seq = DigitSequence {
                    start_level: 0,
                    digits: digits.clone(),
                };
                for &case in cases {
                    for carry_in in [false, true] {
                        report.checked += 1;
                        let doubled = double_digits(structure, &seq, case, carry_in)?;
                        if let Some(tp) = doubled.annotation() {
                            let q = structure.modulus(tp + 1)?;
                            if symbol_of_digit(doubled.digits[tp], q) == Symbol::new(2) {
                                report.violations.push(ClaimViolation {
                                    digits: digits.clone(),
                                    case,
                                    carry_in,
                                    t,
                                    t_prime: tp,
                                    doubled: doubled.digits.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        // mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(report);
            }
            digits[pos] += 1;
            if digits[pos] < moduli[pos] {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Configuration of the finite-scale non-saturation demonstration.
#[derive(Debug, Clone)]
pub struct DemoConfig {
    /// The five-point fiber the demonstration approximates.
    pub a: OdometerElement,
    /// Half-width of the position window scanned around 0.
    pub window: i64,
    /// Inclusive range of approximation levels.
    pub levels: (usize, usize),
}

/// A violation observed by the demonstration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DemoViolation {
    /// A forced position read a different symbol than the shifted sequence.
    ForcedMismatch {
        m: usize,
        position: i64,
        expected: Symbol,
        read: Symbol,
    },
    /// An aperiodic position on the fill-0 side did not read 0.
    ASideFillDrift {
        m: usize,
        position: i64,
        read: Symbol,
    },
    /// An aperiodic position on the doubled side read the symbol 2.
    BSideSymbolTwo { m: usize, position: i64 },
    /// The fill-variant control failed to realise all five symbols.
    CoverageGap { m: usize, missing: Vec<u8> },
}

/// Per-level tallies of the demonstration.
///
/// Readouts are only collected on aperiodic positions that the level-`m`
/// window actually approximates, i.e. those `n` with `n + k` (resp.
/// `n + 2k`, reduced mod `p_m`) inside `[0, p_m)`; positions outside that
/// fundamental domain consult digits the approximation does not control.
#[derive(Debug, Clone)]
pub struct LevelReport {
    pub m: usize,
    /// Shift `k`: the value of `a`'s first `m` digits.
    pub shift: BigUint,
    /// Whether `2k` stayed below `p_m` (plain) or wrapped (shifted).
    pub offset_case: OffsetCase,
    pub forced_positions: u64,
    pub a_aperiodic_positions: u64,
    /// Aperiodic positions outside the fill-0 side's fundamental domain.
    pub a_out_of_domain: u64,
    /// Symbols read on the fill-0 side's in-domain aperiodic positions.
    pub a_side_reads: BTreeSet<u8>,
    pub b_aperiodic_positions: u64,
    /// Aperiodic positions outside the doubled side's fundamental domain.
    pub b_out_of_domain: u64,
    /// Symbols read on the doubled side's in-domain aperiodic positions.
    pub b_side_reads: BTreeSet<u8>,
    /// Symbols realised on the fill-0 side across the five shift variants.
    pub cover_symbols: BTreeSet<u8>,
}

/// Full demonstration report.
#[derive(Debug, Clone)]
pub struct NonsatReport {
    pub levels: Vec<LevelReport>,
    pub scanned: u64,
    pub violations: Vec<DemoViolation>,
    /// Observed (fill-0 side, doubled side) symbol pairs.
    pub realized_fill_pairs: BTreeSet<(u8, u8)>,
}

/// Runs the finite-scale demonstration: at each level `m`, shift the base
/// sequence by `k` (the depth-`m` value of `a`) so it approximates the
/// fill-0 point over `a`, shift by `2k` to approximate a point over `2a`,
/// and record the symbols read on each side's certified-aperiodic
/// positions. The (0, 2) combination must never appear.
pub fn nonsat_demo(config: &DemoConfig) -> Result<NonsatReport> {
    let a = &config.a;
    let structure = a.structure().clone();
    let depth = structure.depth();
    match fiber_certificate(a, depth) {
        FiberCertificate::FiveCertified => {}
        other => {
            return Err(Error::CertificateMissing(format!(
                "demo needs a five-point fiber for a, got {other:?}"
            )));
        }
    }
    let b = a.scalar_multiple(2)?;
    match fiber_certificate(&b, depth) {
        FiberCertificate::FiveCertified => {}
        other => {
            return Err(Error::CertificateMissing(format!(
                "demo needs a five-point fiber for 2a, got {other:?}"
            )));
        }
    }
    let (m_lo, m_hi) = config.levels;
    if m_lo < 1 || m_lo > m_hi {
        return Err(Error::InvalidArgument(format!(
            "bad level range {m_lo}..{m_hi}"
        )));
    }
    if m_hi + 1 > depth {
        return Err(Error::DepthExhausted {
            needed: m_hi + 1,
            available: depth,
        });
    }

    let eta = ToeplitzSequence::new(structure.clone());
    let w = config.window;
    let mut report = NonsatReport {
        levels: Vec::new(),
        scanned: 0,
        violations: Vec::new(),
        realized_fill_pairs: BTreeSet::new(),
    };

    for m in m_lo..=m_hi {
        let k = BigInt::from(a.residue(m)?);
        let two_k: BigInt = &k * 2;
        let p_m = BigInt::from(structure.period(m)?.clone());
        let offset_case = if two_k < p_m {
            OffsetCase::Plain
        } else {
            OffsetCase::Shifted
        };
        let b_m = two_k.mod_floor(&p_m);
        // fundamental domains: n + k (resp. the reduced n + 2k) in [0, p_m)
        let in_a_domain = |n: i64| {
            let v = &k + n;
            v >= BigInt::from(0) && v < p_m
        };
        let in_b_domain = |n: i64| {
            let v = &b_m + n;
            v >= BigInt::from(0) && v < p_m
        };

        let mut level = LevelReport {
            m,
            shift: k.to_biguint().expect("residue is nonnegative"),
            offset_case,
            forced_positions: 0,
            a_aperiodic_positions: 0,
            a_out_of_domain: 0,
            a_side_reads: BTreeSet::new(),
            b_aperiodic_positions: 0,
            b_out_of_domain: 0,
            b_side_reads: BTreeSet::new(),
            cover_symbols: BTreeSet::new(),
        };
        let mut a_aperiodic = Vec::new();

        let fill0 = Symbol::new(0).unwrap();
        let pa = OrbitPoint::new(a.clone(), fill0);
        let pb = OrbitPoint::new(b.clone(), fill0);
        for n in -w..=w {
            report.scanned += 2;
            match point_eval(&pa, n, m)? {
                EvalResult::Forced { symbol, .. } => {
                    level.forced_positions += 1;
                    let read = eta.eta(&k + n)?;
                    if read != symbol {
                        report.violations.push(DemoViolation::ForcedMismatch {
                            m,
                            position: n,
                            expected: symbol,
                            read,
                        });
                    }
                }
                EvalResult::AperiodicCertified { .. } => {
                    level.a_aperiodic_positions += 1;
                    if in_a_domain(n) {
                        a_aperiodic.push(n);
                        let read = eta.eta(&k + n)?;
                        level.a_side_reads.insert(read.value());
                        if read.value() != 0 {
                            report.violations.push(DemoViolation::ASideFillDrift {
                                m,
                                position: n,
                                read,
                            });
                        }
                    } else {
                        level.a_out_of_domain += 1;
                    }
                }
                EvalResult::Undetermined { .. } => {}
            }
            match point_eval(&pb, n, m)? {
                EvalResult::AperiodicCertified { .. } => {
                    level.b_aperiodic_positions += 1;
                    if in_b_domain(n) {
                        let read = eta.eta(&two_k + n)?;
                        level.b_side_reads.insert(read.value());
                        if read.value() == 2 {
                            report
                                .violations
                                .push(DemoViolation::BSideSymbolTwo { m, position: n });
                        }
                    } else {
                        level.b_out_of_domain += 1;
                    }
                }
                EvalResult::Forced { .. } | EvalResult::Undetermined { .. } => {}
            }
        }

        for &a_read in &level.a_side_reads {
            for &b_read in &level.b_side_reads {
                report.realized_fill_pairs.insert((a_read, b_read));
            }
        }

        // positive control: shifting by k + c*p_m realises the symbol of c
        // on the fill-0 side's aperiodic positions
        for c in DefinedSet::new(&structure, m + 1)?.members() {
            let k_c = &k + &p_m * c;
            for &n in &a_aperiodic {
                let read = eta.eta(&k_c + n)?;
                level.cover_symbols.insert(read.value());
            }
        }
        let missing: Vec<u8> = (0..=4u8)
            .filter(|v| !level.cover_symbols.contains(v))
            .collect();
        if !missing.is_empty() {
            report
                .violations
                .push(DemoViolation::CoverageGap { m, missing });
        }

        report.levels.push(level);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odometer::Tail;
    use num_traits::ToPrimitive;
    use std::sync::Arc;

    fn q624() -> Arc<PeriodStructure> {
        Arc::new(PeriodStructure::from_moduli(vec![6, 12, 24]).unwrap())
    }

    #[test]
    fn double_digits_examples() {
        let s = q624();
        let seq = DigitSequence::new(&s, 0, vec![0, 3]).unwrap();
        assert_eq!(seq.value(&s).unwrap().to_u64(), Some(18));

        let plain = double_digits(&s, &seq, OffsetCase::Plain, false).unwrap();
        assert_eq!(plain.digits(), &[0, 6]);
        assert_eq!(plain.value(&s).unwrap().to_u64(), Some(36));
        assert_eq!(plain.carry_out(), 0);

        let single = DigitSequence::new(&s, 0, vec![3]).unwrap();
        let doubled = double_digits(&s, &single, OffsetCase::Plain, false).unwrap();
        assert_eq!(doubled.digits(), &[0]);
        assert_eq!(doubled.carry_out(), 1);

        // shifted case: 2*18 - p_0 = 35 = 5 + 5*6; the borrow turns the
        // leading 0 into the maximal digit and propagates one level up
        let shifted = double_digits(&s, &seq, OffsetCase::Shifted, false).unwrap();
        assert_eq!(shifted.digits(), &[5, 5]);
        assert_eq!(shifted.value(&s).unwrap().to_u64(), Some(35));
    }

    #[test]
    fn value_soundness_exhaustive_small() {
        // value(double(s)) == 2*value(s) + (carry_in - shifted)*p_r, mod p_{r+m+1}
        let s = PeriodStructure::stock_geometric(8);
        for r in [0usize, 1] {
            for m in 0..=1usize {
                let moduli: Vec<u64> = (1..=m + 1).map(|j| s.modulus(r + j).unwrap()).collect();
                let mut digits = vec![0u64; m + 1];
                'outer: loop {
                    let seq = DigitSequence::new(&s, r, digits.clone()).unwrap();
                    let v = BigInt::from(seq.value(&s).unwrap());
                    let p_r = BigInt::from(s.period(r).unwrap().clone());
                    let p_top = BigInt::from(s.period(r + m + 1).unwrap().clone());
                    for case in OffsetCase::BOTH {
                        for carry_in in [false, true] {
                            let d = double_digits(&s, &seq, case, carry_in).unwrap();
                            let got = BigInt::from(d.value(&s).unwrap());
                            let shift = i64::from(case == OffsetCase::Shifted);
                            let offset = BigInt::from(carry_in as i64 - shift) * &p_r;
                            let want = (BigInt::from(2) * &v + offset).mod_floor(&p_top);
                            assert_eq!(got, want, "digits {digits:?} case {case:?} cin {carry_in}");
                            // per-digit relation of the doubling pass:
                            // carries stay in {0,1} and each pre-borrow
                            // digit is 2 s_j or 2 s_j + 1 reduced mod q
                            if case == OffsetCase::Plain {
                                for (j, (&dj, &cj)) in digits.iter().zip(d.carries()).enumerate() {
                                    assert!(cj <= 1);
                                    let q = s.modulus(r + j + 1).unwrap() as u128;
                                    let out = d.digits()[j] as u128;
                                    assert!(
                                        out == (2 * dj as u128) % q
                                            || out == (2 * dj as u128 + 1) % q
                                    );
                                }
                            }
                        }
                    }
                    let mut pos = 0;
                    loop {
                        if pos == digits.len() {
                            break 'outer;
                        }
                        digits[pos] += 1;
                        if digits[pos] < moduli[pos] {
                            break;
                        }
                        digits[pos] = 0;
                        pos += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn plain_annotation_never_grows_when_hypothesis_holds() {
        // when the first defined digit is 0, the doubled window's first
        // defined digit comes no later, for both carries
        let s = q624();
        let moduli = [6u64, 12, 24];
        let mut digits = vec![0u64; 3];
        'outer: loop {
            let seq = DigitSequence::new(&s, 0, digits.clone()).unwrap();
            if let Some(t) = seq.annotation(&s).unwrap() {
                if digits[t] == 0 {
                    for carry_in in [false, true] {
                        let d = double_digits(&s, &seq, OffsetCase::Plain, carry_in).unwrap();
                        let tp = d.annotation().expect("doubled zero digit is defined");
                        assert!(tp <= t, "digits {digits:?} carry {carry_in}");
                    }
                }
            }
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break 'outer;
                }
                digits[pos] += 1;
                if digits[pos] < moduli[pos] {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn single_zero_digit_doubles_to_zero_or_one() {
        let s = q624();
        let seq = DigitSequence::new(&s, 0, vec![0]).unwrap();
        for carry_in in [false, true] {
            let d = double_digits(&s, &seq, OffsetCase::Plain, carry_in).unwrap();
            assert!(d.digits()[0] <= 1);
        }
    }

    #[test]
    fn claim_holds_at_depth_two() {
        let s = q624();
        let report = claim_check_exhaustive(&s, 2, &OffsetCase::BOTH).unwrap();
        assert_eq!(report.scanned, 6 * 12 * 24);
        assert!(report.eligible > 0);
        assert_eq!(report.checked, report.eligible * 4);
        assert!(report.violations.is_empty(), "{:?}", report.violations);
    }

    #[test]
    fn claim_depth_validation() {
        let s = q624();
        assert!(matches!(
            claim_check_exhaustive(&s, 3, &OffsetCase::BOTH),
            Err(Error::DepthExhausted { .. })
        ));
    }

    #[test]
    fn demo_runs_clean_at_level_three() {
        let s = PeriodStructure::stock_geometric(8);
        let a = OdometerElement::from_digits(s.clone(), vec![0], Tail::ConstantDigit(3)).unwrap();
        let report = nonsat_demo(&DemoConfig {
            a,
            window: 72,
            levels: (3, 3),
        })
        .unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        let level = &report.levels[0];
        assert_eq!(level.shift.to_u64(), Some(234));
        assert_eq!(level.offset_case, OffsetCase::Plain);
        assert!(level.a_aperiodic_positions > 0);
        assert!(level.b_aperiodic_positions > 0);
        // the whole window sits inside both fundamental domains here
        assert_eq!(level.a_out_of_domain, 0);
        assert_eq!(level.b_out_of_domain, 0);
        assert_eq!(level.a_side_reads, BTreeSet::from([0]));
        assert!(level.b_side_reads.iter().all(|&v| v <= 1));
        assert_eq!(level.cover_symbols, BTreeSet::from([0, 1, 2, 3, 4]));
        assert!(!report.realized_fill_pairs.is_empty());
        assert!(report
            .realized_fill_pairs
            .iter()
            .all(|&(a, b)| a == 0 && b <= 1));
    }

    #[test]
    fn demo_domain_restriction_at_level_two() {
        // at m = 2 the +-72 window leaves both fundamental domains;
        // in-domain readouts still stay in {0, 1}
        let s = PeriodStructure::stock_geometric(8);
        let a = OdometerElement::from_digits(s.clone(), vec![0], Tail::ConstantDigit(3)).unwrap();
        let report = nonsat_demo(&DemoConfig {
            a,
            window: 72,
            levels: (2, 2),
        })
        .unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        let level = &report.levels[0];
        assert_eq!(level.shift.to_u64(), Some(18));
        assert!(level.b_out_of_domain > 0);
        assert!(level.b_side_reads.iter().all(|&v| v <= 1));
        assert!(report
            .realized_fill_pairs
            .iter()
            .all(|&(a, b)| a == 0 && b <= 1));
    }

    #[test]
    fn demo_rejects_singleton_fibers() {
        let s = PeriodStructure::stock_geometric(8);
        let a = OdometerElement::embed(s, 5);
        let err = nonsat_demo(&DemoConfig {
            a,
            window: 10,
            levels: (3, 3),
        });
        assert!(matches!(err, Err(Error::CertificateMissing(_))));
    }
}
