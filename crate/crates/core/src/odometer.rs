//! Mixed-radix digit arithmetic for the inverse-limit group over a period
//! structure, together with the "defined digit" sets that drive the symbol
//! construction.
//!
//! Group elements are digit streams `(s_0, s_1, …)` with `s_j ∈ [0, q_{j+1})`;
//! the residue at level `i` is `s_0 + s_1 p_1 + … + s_{i-1} p_{i-1}`. A
//! stream is stored as an explicit prefix plus a tail that records what is
//! known beyond it: the digits of a concrete integer, a constant digit, or
//! nothing. Operations only ever claim knowledge they can prove: adding an
//! element with an unknown tail yields an unknown tail, while constant and
//! integer tails combine exactly whenever the carry analysis stabilises.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::period::{LevelModulus, PeriodStructure};

/// Residue classes of one level that receive a symbol: `{0, 1, 2, q/2+1, q-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefinedSet {
    level: usize,
    modulus: u64,
    members: [u64; 5],
}

impl DefinedSet {
    /// The defined residues of `level` (1-based).
    pub fn new(structure: &PeriodStructure, level: usize) -> Result<Self> {
        let q = structure.modulus(level)?;
        Ok(DefinedSet {
            level,
            modulus: q,
            members: [0, 1, 2, q / 2 + 1, q - 1],
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Members in increasing order (distinct whenever `q >= 6`).
    pub fn members(&self) -> [u64; 5] {
        self.members
    }

    pub fn contains(&self, digit: u64) -> bool {
        self.members.contains(&digit)
    }
}

/// Whether `digit` belongs to the defined set of a level with modulus `q`.
pub fn digit_defined_for_modulus(digit: u64, q: u64) -> bool {
    digit <= 2 || digit == q / 2 + 1 || digit == q - 1
}

/// Defined-set membership when the modulus may exceed `u64`: a huge modulus
/// puts `q/2+1` and `q-1` far above any representable digit.
pub fn digit_defined_extended(digit: u64, modulus: LevelModulus) -> bool {
    match modulus {
        LevelModulus::Exact(q) => digit_defined_for_modulus(digit, q),
        LevelModulus::Huge => digit <= 2,
    }
}

/// `is_defined_digit(s, i)` with range validation against `q_i`.
pub fn is_defined_digit(structure: &PeriodStructure, digit: u64, level: usize) -> Result<bool> {
    let q = structure.modulus(level)?;
    if digit >= q {
        return Err(Error::DigitOutOfRange {
            level,
            digit,
            modulus: q,
        });
    }
    Ok(digit_defined_for_modulus(digit, q))
}

/// Mixed-radix digits of `n mod p_k`, least significant first.
pub fn digits_of_integer(structure: &PeriodStructure, n: &BigInt, k: usize) -> Result<Vec<u64>> {
    if k > structure.depth() {
        return Err(Error::DepthExhausted {
            needed: k,
            available: structure.depth(),
        });
    }
    let pk = BigInt::from(structure.period(k)?.clone());
    let mut rem = n
        .mod_floor(&pk)
        .to_biguint()
        .expect("floor-mod residue is nonnegative");
    let mut digits = Vec::with_capacity(k);
    for level in 1..=k {
        let q = BigUint::from(structure.modulus(level)?);
        let (quot, digit) = rem.div_rem(&q);
        digits.push(digit.to_u64().expect("digit below a u64 modulus"));
        rem = quot;
    }
    Ok(digits)
}

/// Inverse of [`digits_of_integer`]: `sum s_j p_j`, a residue in `[0, p_k)`.
pub fn value_of_digits(structure: &PeriodStructure, digits: &[u64]) -> Result<BigUint> {
    if digits.len() > structure.depth() {
        return Err(Error::DepthExhausted {
            needed: digits.len(),
            available: structure.depth(),
        });
    }
    let mut acc = BigUint::zero();
    for (j, &d) in digits.iter().enumerate() {
        let q = structure.modulus(j + 1)?;
        if d >= q {
            return Err(Error::DigitOutOfRange {
                level: j + 1,
                digit: d,
                modulus: q,
            });
        }
        acc += structure.period(j)? * d;
    }
    Ok(acc)
}

/// What is known about the digits beyond an element's explicit prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// All further digits are those of this integer (eventually `0` for
    /// nonnegative values, eventually maximal for negative ones).
    IntegerEmbed(BigInt),
    /// Every digit beyond the prefix equals this constant.
    ConstantDigit(u64),
    /// No information beyond the prefix.
    Unknown,
}

/// The fate of a constant digit across all levels from some starting level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantDigitFate {
    /// Defined at every level (the digit is `0`, `1` or `2`).
    AlwaysDefined,
    /// Defined exactly at the listed levels and at no level beyond.
    FinitelyDefined(Vec<usize>),
    /// Undecidable: the structure ran out of known moduli at this level.
    Unknown(usize),
}

/// Resolves whether the constant digit `c` is defined at each level
/// `>= from_level`, using the generator rule to look past the materialised
/// depth. Strictly increasing moduli make the scan finite: once `q > 2c`
/// both `q/2 + 1` and `q - 1` exceed `c` forever.
pub fn constant_digit_fate(
    structure: &PeriodStructure,
    c: u64,
    from_level: usize,
) -> ConstantDigitFate {
    if c <= 2 {
        return ConstantDigitFate::AlwaysDefined;
    }
    let mut defined_at = Vec::new();
    let mut level = from_level.max(1);
    loop {
        match structure.modulus_at(level) {
            None => return ConstantDigitFate::Unknown(level),
            Some(LevelModulus::Huge) => {
                // A huge modulus exceeds 2c only if c stays clear of q/2+1,
                // which we can only bound when c fits in half a u64.
                if c <= u64::MAX / 2 {
                    return ConstantDigitFate::FinitelyDefined(defined_at);
                }
                return ConstantDigitFate::Unknown(level);
            }
            Some(LevelModulus::Exact(q)) => {
                if q > 2 * c {
                    return ConstantDigitFate::FinitelyDefined(defined_at);
                }
                if digit_defined_for_modulus(c, q) {
                    defined_at.push(level);
                }
                level += 1;
            }
        }
    }
}

/// Digit source beyond a stream's explicit part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Const(u64),
    Zero,
    Maximal,
}

/// A readable view of an element as explicit digits plus a regime.
struct DigitStream {
    explicit: Vec<u64>,
    regime: Option<Regime>,
}

impl DigitStream {
    fn of(element: &OdometerElement) -> Result<Self> {
        let s = element.structure();
        let k = s.depth();
        match &element.tail {
            Tail::Unknown => Ok(DigitStream {
                explicit: element.prefix.clone(),
                regime: None,
            }),
            Tail::ConstantDigit(c) => Ok(DigitStream {
                explicit: element.prefix.clone(),
                regime: Some(Regime::Const(*c)),
            }),
            Tail::IntegerEmbed(m) => {
                // First level from which the digits of m are constant.
                let mag = m.magnitude();
                let j0 = (0..=k).find(|&j| s.period(j).map(|p| p > mag).unwrap_or(false));
                match j0 {
                    Some(j0) => Ok(DigitStream {
                        explicit: digits_of_integer(s, m, j0)?,
                        regime: Some(if m.is_negative() {
                            Regime::Maximal
                        } else {
                            Regime::Zero
                        }),
                    }),
                    None => Ok(DigitStream {
                        explicit: digits_of_integer(s, m, k)?,
                        regime: None,
                    }),
                }
            }
        }
    }

    fn in_regime(&self, j: usize) -> bool {
        j >= self.explicit.len() && self.regime.is_some()
    }

    /// Constant digit value of the regime, when it has one.
    fn const_value(&self) -> Option<u64> {
        match self.regime {
            Some(Regime::Const(c)) => Some(c),
            Some(Regime::Zero) => Some(0),
            _ => None,
        }
    }

    fn digit(&self, structure: &PeriodStructure, j: usize) -> Result<Option<u64>> {
        if j < self.explicit.len() {
            return Ok(Some(self.explicit[j]));
        }
        match self.regime {
            None => Ok(None),
            Some(Regime::Const(c)) => Ok(Some(c)),
            Some(Regime::Zero) => Ok(Some(0)),
            Some(Regime::Maximal) => Ok(Some(structure.modulus(j + 1)? - 1)),
        }
    }
}

/// An element of the inverse-limit group: an explicit digit prefix plus a
/// tail rule with an honest knowledge horizon.
#[derive(Debug, Clone)]
pub struct OdometerElement {
    structure: Arc<PeriodStructure>,
    prefix: Vec<u64>,
    tail: Tail,
}

impl PartialEq for OdometerElement {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure && self.prefix == other.prefix && self.tail == other.tail
    }
}

impl Eq for OdometerElement {}

impl fmt::Display for OdometerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tail {
            Tail::IntegerEmbed(m) if self.prefix.is_empty() => write!(f, "int:{m}"),
            _ => {
                write!(f, "digits:")?;
                for (i, d) in self.prefix.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                match &self.tail {
                    Tail::ConstantDigit(c) => write!(f, "+const:{c}"),
                    Tail::Unknown => write!(f, "+unknown"),
                    Tail::IntegerEmbed(m) => write!(f, "+int:{m}"),
                }
            }
        }
    }
}

impl OdometerElement {
    /// The image of the integer `m` under the canonical embedding.
    pub fn embed(structure: Arc<PeriodStructure>, m: impl Into<BigInt>) -> Self {
        OdometerElement {
            structure,
            prefix: Vec::new(),
            tail: Tail::IntegerEmbed(m.into()),
        }
    }

    /// Builds an element from an explicit digit prefix and tail rule,
    /// validating digit ranges and tail admissibility.
    pub fn from_digits(
        structure: Arc<PeriodStructure>,
        prefix: Vec<u64>,
        tail: Tail,
    ) -> Result<Self> {
        if prefix.len() > structure.depth() {
            return Err(Error::DepthExhausted {
                needed: prefix.len(),
                available: structure.depth(),
            });
        }
        for (j, &d) in prefix.iter().enumerate() {
            let q = structure.modulus(j + 1)?;
            if d >= q {
                return Err(Error::DigitOutOfRange {
                    level: j + 1,
                    digit: d,
                    modulus: q,
                });
            }
        }
        if let Tail::ConstantDigit(c) = tail {
            // Strictly increasing moduli: admissible iff c fits the first
            // covered level.
            match structure.modulus_at(prefix.len() + 1) {
                Some(LevelModulus::Exact(q)) if c < q => {}
                Some(LevelModulus::Huge) => {}
                Some(LevelModulus::Exact(q)) => {
                    return Err(Error::DigitOutOfRange {
                        level: prefix.len() + 1,
                        digit: c,
                        modulus: q,
                    });
                }
                None => {
                    return Err(Error::InvalidArgument(
                        "constant tail needs a modulus beyond the prefix".into(),
                    ));
                }
            }
        }
        Ok(Self::canonical(structure, prefix, tail))
    }

    /// Canonical form: integer tails absorb the prefix into a single
    /// integer, and an all-zero constant tail is an integer tail.
    fn canonical(structure: Arc<PeriodStructure>, prefix: Vec<u64>, tail: Tail) -> Self {
        match tail {
            Tail::IntegerEmbed(m) => {
                if prefix.is_empty() {
                    return OdometerElement {
                        structure,
                        prefix,
                        tail: Tail::IntegerEmbed(m),
                    };
                }
                let p_len = BigInt::from(
                    structure
                        .period(prefix.len())
                        .expect("validated prefix length")
                        .clone(),
                );
                let prefix_value = BigInt::from(
                    value_of_digits(&structure, &prefix).expect("validated prefix digits"),
                );
                let absorbed = prefix_value + &m - m.mod_floor(&p_len);
                OdometerElement {
                    structure,
                    prefix: Vec::new(),
                    tail: Tail::IntegerEmbed(absorbed),
                }
            }
            Tail::ConstantDigit(0) => {
                let value = BigInt::from(
                    value_of_digits(&structure, &prefix).expect("validated prefix digits"),
                );
                OdometerElement {
                    structure,
                    prefix: Vec::new(),
                    tail: Tail::IntegerEmbed(value),
                }
            }
            tail => OdometerElement {
                structure,
                prefix,
                tail,
            },
        }
    }

    pub fn structure(&self) -> &Arc<PeriodStructure> {
        &self.structure
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    /// Levels up to which digits can be produced: the prefix length for
    /// unknown tails, the full materialised depth otherwise.
    pub fn horizon(&self) -> usize {
        match self.tail {
            Tail::Unknown => self.prefix.len(),
            _ => self.structure.depth(),
        }
    }

    /// Digit `s_j`, or `Ok(None)` past an unknown tail's horizon.
    pub fn digit(&self, j: usize) -> Result<Option<u64>> {
        if j >= self.structure.depth() {
            return Err(Error::DepthExhausted {
                needed: j + 1,
                available: self.structure.depth(),
            });
        }
        if j < self.prefix.len() {
            return Ok(Some(self.prefix[j]));
        }
        match &self.tail {
            Tail::Unknown => Ok(None),
            Tail::ConstantDigit(c) => Ok(Some(*c)),
            Tail::IntegerEmbed(m) => Ok(Some(digits_of_integer(&self.structure, m, j + 1)?[j])),
        }
    }

    /// Digits `s_0 … s_{k-1}`; requires `k` within the horizon.
    pub fn digits_up_to(&self, k: usize) -> Result<Vec<u64>> {
        if k > self.horizon() {
            return Err(Error::DepthExhausted {
                needed: k,
                available: self.horizon(),
            });
        }
        match &self.tail {
            Tail::IntegerEmbed(m) => digits_of_integer(&self.structure, m, k),
            _ => {
                let mut digits = self.prefix.clone();
                digits.truncate(k);
                if let Tail::ConstantDigit(c) = self.tail {
                    while digits.len() < k {
                        digits.push(c);
                    }
                }
                Ok(digits)
            }
        }
    }

    /// Residue `g_i = s_0 + s_1 p_1 + … + s_{i-1} p_{i-1}` at level `i`.
    pub fn residue(&self, i: usize) -> Result<BigUint> {
        let digits = self.digits_up_to(i)?;
        value_of_digits(&self.structure, &digits)
    }

    /// Keeps the first `j` digits and forgets the tail.
    pub fn truncate(&self, j: usize) -> Result<Self> {
        let upto = j.min(self.horizon());
        let digits = self.digits_up_to(upto)?;
        Ok(Self::canonical(
            self.structure.clone(),
            digits,
            Tail::Unknown,
        ))
    }

    /// Digitwise addition with carry propagation. Integer tails add as
    /// integers; constant and integer tails combine into an exact constant
    /// tail once the carry stabilises; anything touching an unknown tail
    /// stays unknown beyond the joint horizon.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.structure != other.structure {
            return Err(Error::MismatchedPeriodStructures);
        }
        let s = &self.structure;
        if let (Tail::IntegerEmbed(a), Tail::IntegerEmbed(b)) = (&self.tail, &other.tail) {
            // Canonical integer tails carry no prefix.
            return Ok(Self::embed(s.clone(), a + b));
        }
        let k = s.depth();
        let st1 = DigitStream::of(self)?;
        let st2 = DigitStream::of(other)?;
        let mut digits: Vec<u64> = Vec::new();
        let mut carry: u64 = 0;
        let mut j = 0;
        loop {
            if st1.in_regime(j) && st2.in_regime(j) {
                match (st1.const_value(), st2.const_value()) {
                    (Some(u), Some(v)) => {
                        // Constant-against-constant: stable once the sum
                        // fits without carry; moduli only grow from here.
                        if carry == 0 && j < k {
                            let q = s.modulus(j + 1)?;
                            if (u as u128) + (v as u128) < q as u128 {
                                return Self::from_digits(
                                    s.clone(),
                                    digits,
                                    Tail::ConstantDigit(u + v),
                                );
                            }
                        }
                    }
                    (Some(u), None) | (None, Some(u)) => {
                        // Constant against a maximal run: with an incoming
                        // carry, every further digit is exactly u.
                        if carry == 1 && (j < k || s.modulus_at(j + 1).is_some()) {
                            return Self::from_digits(s.clone(), digits, Tail::ConstantDigit(u));
                        }
                    }
                    (None, None) => unreachable!("two integer tails are added as integers"),
                }
            }
            if j >= k {
                break;
            }
            let (d1, d2) = match (st1.digit(s, j)?, st2.digit(s, j)?) {
                (Some(d1), Some(d2)) => (d1, d2),
                _ => break,
            };
            let q = s.modulus(j + 1)? as u128;
            let sum = d1 as u128 + d2 as u128 + carry as u128;
            digits.push((sum % q) as u64);
            carry = (sum / q) as u64;
            j += 1;
        }
        Self::from_digits(s.clone(), digits, Tail::Unknown)
    }

    /// Additive inverse. Exact for integer tails; otherwise the complement
    /// of a constant tail varies with the level, so the result is an
    /// explicit prefix with an unknown tail.
    pub fn neg(&self) -> Result<Self> {
        if let Tail::IntegerEmbed(m) = &self.tail {
            return Ok(Self::embed(self.structure.clone(), -m));
        }
        let h = self.horizon();
        let digits = self.digits_up_to(h)?;
        let mut out = Vec::with_capacity(h);
        let mut carry = 1u64;
        for (j, &d) in digits.iter().enumerate() {
            let q = self.structure.modulus(j + 1)?;
            let comp = q - 1 - d + carry;
            if comp >= q {
                out.push(comp - q);
                carry = 1;
            } else {
                out.push(comp);
                carry = 0;
            }
        }
        Self::from_digits(self.structure.clone(), out, Tail::Unknown)
    }

    /// `m`-fold sum with repeated-add semantics; agrees with the integer
    /// embedding on integer tails.
    pub fn scalar_multiple(&self, m: i64) -> Result<Self> {
        if let Tail::IntegerEmbed(v) = &self.tail {
            return Ok(Self::embed(self.structure.clone(), v * m));
        }
        if m == 0 {
            return Ok(Self::embed(self.structure.clone(), 0));
        }
        if m < 0 {
            return self.scalar_multiple_unsigned(m.unsigned_abs())?.neg();
        }
        self.scalar_multiple_unsigned(m.unsigned_abs())
    }

    fn scalar_multiple_unsigned(&self, mut m: u64) -> Result<Self> {
        debug_assert!(m > 0);
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        loop {
            if m & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.add(&base)?,
                });
            }
            m >>= 1;
            if m == 0 {
                break;
            }
            base = base.add(&base)?;
        }
        Ok(acc.expect("m > 0 sets the accumulator"))
    }
}
