//! Construction and evaluation of the five-symbol sequence family over a
//! period structure: pointwise evaluation through the minimal-defined-digit
//! rule, finite skeletons, exact defined-position densities and the
//! essential-period check.
//!
//! Every position `n` is evaluated by writing `n` in mixed radix and
//! locating the first digit that falls in its level's defined set; the
//! symbol is read off that digit. This is equivalent to the inductive
//! block-filling construction (the equivalence is exercised by an
//! independent simulation in the integration tests) but costs one digit
//! scan per query.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::odometer::{digit_defined_for_modulus, digits_of_integer, DefinedSet};
use crate::period::{Classification, PeriodStructure};

/// Largest table the skeleton and density enumerators will materialise.
pub const MAX_ENUMERABLE_PERIOD: u64 = 1 << 27;

/// One of the five letters of the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    /// All five symbols in order.
    pub const ALL: [Symbol; 5] = [Symbol(0), Symbol(1), Symbol(2), Symbol(3), Symbol(4)];

    pub fn new(value: u8) -> Option<Self> {
        (value <= 4).then_some(Symbol(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Symbol assigned to a defined digit of a level with modulus `q`:
/// `0, 1, 2` map to themselves, `q/2 + 1` to `3`, `q - 1` to `4`.
pub fn symbol_of_digit(digit: u64, q: u64) -> Option<Symbol> {
    match digit {
        0 => Some(Symbol(0)),
        1 => Some(Symbol(1)),
        2 => Some(Symbol(2)),
        d if d == q / 2 + 1 => Some(Symbol(3)),
        d if d == q - 1 => Some(Symbol(4)),
        _ => None,
    }
}

/// The partial symbol table of one level: residues mod `p_level` that are
/// already forced, the rest undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonTable {
    level: usize,
    cells: Vec<Option<Symbol>>,
    defined_count: u64,
}

impl SkeletonTable {
    /// Wraps an explicit cell vector (used for synthetic tables in tests
    /// and for the essential-period check on arbitrary partial words).
    pub fn from_cells(level: usize, cells: Vec<Option<Symbol>>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidArgument(
                "skeleton table must be nonempty".into(),
            ));
        }
        let defined_count = cells.iter().filter(|c| c.is_some()).count() as u64;
        Ok(SkeletonTable {
            level,
            cells,
            defined_count,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn period(&self) -> u64 {
        self.cells.len() as u64
    }

    pub fn defined_count(&self) -> u64 {
        self.defined_count
    }

    pub fn cell(&self, residue: usize) -> Option<Symbol> {
        self.cells[residue]
    }

    pub fn cells(&self) -> &[Option<Symbol>] {
        &self.cells
    }

    /// Whether the partial word is invariant under translation by `d`.
    fn invariant_under(&self, d: usize) -> bool {
        let p = self.cells.len();
        (0..p).all(|r| self.cells[r] == self.cells[(r + d) % p])
    }

    /// True iff no proper divisor of the table period leaves the partial
    /// word invariant.
    pub fn is_essential(&self) -> bool {
        let p = self.cells.len();
        for d in 1..p {
            if p.is_multiple_of(d) && self.invariant_under(d) {
                return false;
            }
        }
        true
    }
}

/// Exact density data of one level.
#[derive(Debug, Clone)]
pub struct DensityReport {
    /// Level the report is about.
    pub level: usize,
    /// Residues forced at this level, by direct enumeration.
    pub defined_count: u64,
    /// Table period `p_level`.
    pub period: u64,
    /// Enumerated density `defined_count / period`.
    pub density: Ratio<BigInt>,
    /// Density predicted by the per-level recursion
    /// `d_{i+1} = d_i + (1 - d_i) * c / q_{i+1}`.
    pub recursion_density: Ratio<BigInt>,
    /// The enumerated per-level constant `c = |DefinedSet|`.
    pub step_constant: u64,
    /// Regular/irregular dichotomy of the declared generator rule.
    pub classification: Classification,
}

/// The sequence built over a period structure.
#[derive(Debug, Clone)]
pub struct ToeplitzSequence {
    structure: Arc<PeriodStructure>,
}

impl ToeplitzSequence {
    pub fn new(structure: Arc<PeriodStructure>) -> Self {
        ToeplitzSequence { structure }
    }

    pub fn structure(&self) -> &Arc<PeriodStructure> {
        &self.structure
    }

    /// The smallest digit index `j` of `n` whose digit is defined at level
    /// `j + 1`, together with that digit. Always exists for integers with
    /// enough depth: digits are eventually `0` or eventually maximal, and
    /// both are defined.
    pub fn min_defined_level(&self, n: impl Into<BigInt>) -> Result<(usize, u64)> {
        let n = n.into();
        let k = self.structure.depth();
        let digits = digits_of_integer(&self.structure, &n, k)?;
        for (j, &d) in digits.iter().enumerate() {
            let q = self.structure.modulus(j + 1)?;
            if digit_defined_for_modulus(d, q) {
                return Ok((j, d));
            }
        }
        Err(Error::DepthExhausted {
            needed: k + 1,
            available: k,
        })
    }

    /// The symbol at position `n`.
    pub fn eta(&self, n: impl Into<BigInt>) -> Result<Symbol> {
        let (j, digit) = self.min_defined_level(n)?;
        let q = self.structure.modulus(j + 1)?;
        Ok(symbol_of_digit(digit, q).expect("minimal defined digit has a symbol"))
    }

    /// Symbols at positions `a..=b`.
    pub fn window(&self, a: i64, b: i64) -> Result<Vec<Symbol>> {
        if a > b {
            return Err(Error::InvalidArgument(format!(
                "window bounds out of order: {a} > {b}"
            )));
        }
        (a..=b).map(|n| self.eta(n)).collect()
    }

    /// The level-`i` skeleton: residue `r` is forced iff some digit of `r`
    /// below index `i` is defined; the table of level `i` extends the table
    /// of level `i - 1` blockwise.
    pub fn skeleton(&self, level: usize) -> Result<SkeletonTable> {
        if level > self.structure.depth() {
            return Err(Error::DepthExhausted {
                needed: level,
                available: self.structure.depth(),
            });
        }
        let p = self.enumerable_period(level)?;
        let mut cells: Vec<Option<Symbol>> = vec![None];
        for l in 1..=level {
            let q = self.structure.modulus(l)?;
            let mut next = Vec::with_capacity(cells.len() * q as usize);
            for block in 0..q {
                let forced = symbol_of_digit(block, q);
                next.extend(cells.iter().map(|&cell| cell.or(forced)));
            }
            cells = next;
        }
        debug_assert_eq!(cells.len() as u64, p);
        let defined_count = cells.iter().filter(|c| c.is_some()).count() as u64;
        Ok(SkeletonTable {
            level,
            cells,
            defined_count,
        })
    }

    /// Exact density of forced residues at `level`, with the recursion
    /// cross-value and the regularity classification.
    pub fn density(&self, level: usize) -> Result<DensityReport> {
        let table = self.skeleton(level)?;
        let period = table.period();
        let density = Ratio::new(BigInt::from(table.defined_count()), BigInt::from(period));

        let mut step_constant = 0u64;
        let mut recursion: Ratio<BigInt> = Ratio::zero();
        for l in 1..=level {
            let members = DefinedSet::new(&self.structure, l)?.members();
            let mut distinct = members.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            step_constant = distinct.len() as u64;
            let q = self.structure.modulus(l)?;
            let step = Ratio::new(BigInt::from(step_constant), BigInt::from(q));
            recursion = &recursion + (Ratio::one() - &recursion) * step;
        }

        Ok(DensityReport {
            level,
            defined_count: table.defined_count(),
            period,
            density,
            recursion_density: recursion,
            step_constant,
            classification: self.structure.classification(),
        })
    }

    /// Whether `p_level` is an essential period of the skeleton.
    pub fn essential_period_check(&self, level: usize) -> Result<bool> {
        if level + 1 > self.structure.depth() {
            return Err(Error::DepthExhausted {
                needed: level + 1,
                available: self.structure.depth(),
            });
        }
        Ok(self.skeleton(level)?.is_essential())
    }

    fn enumerable_period(&self, level: usize) -> Result<u64> {
        let p = self.structure.period(level)?;
        match p.to_u64() {
            Some(p) if p <= MAX_ENUMERABLE_PERIOD => Ok(p),
            _ => Err(Error::InvalidArgument(format!(
                "period p_{level} = {p} is too large to enumerate"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::GeneratorRule;

    fn seq624() -> ToeplitzSequence {
        ToeplitzSequence::new(Arc::new(
            PeriodStructure::from_moduli(vec![6, 12, 24]).unwrap(),
        ))
    }

    fn sym(v: u8) -> Symbol {
        Symbol::new(v).unwrap()
    }

    #[test]
    fn min_defined_level_examples() {
        let t = seq624();
        assert_eq!(t.min_defined_level(3).unwrap(), (1, 0));
        assert_eq!(t.min_defined_level(0).unwrap(), (0, 0));
        // 45 = 3 + 7*6, and 7 = 12/2 + 1
        assert_eq!(t.min_defined_level(45).unwrap(), (1, 7));
    }

    #[test]
    fn step_one_and_two_tables() {
        let t = seq624();
        for (n, want) in [(0, 0), (1, 1), (2, 2), (4, 3), (5, 4)] {
            assert_eq!(t.eta(n).unwrap(), sym(want), "step 1, n = {n}");
        }
        for (n, want) in [(3, 0), (9, 1), (15, 2), (45, 3), (69, 4)] {
            assert_eq!(t.eta(n).unwrap(), sym(want), "step 2, n = {n}");
        }
        // -7 = 65 mod 72 = 5 + 10*6; digit 5 = q_1 - 1
        assert_eq!(t.eta(-7).unwrap(), sym(4));
    }

    #[test]
    fn window_examples() {
        let t = seq624();
        let w = t.window(0, 5).unwrap();
        assert_eq!(w, vec![sym(0), sym(1), sym(2), sym(0), sym(3), sym(4)]);
        assert_eq!(t.window(7, 7).unwrap(), vec![t.eta(7).unwrap()]);
        assert!(t.window(3, 2).is_err());

        // one period over: agreement except at the position forced later
        let w0 = t.window(0, 5).unwrap();
        let w1 = t.window(6, 11).unwrap();
        for off in 0..6usize {
            let (j, _) = t.min_defined_level(off as i64).unwrap();
            if j == 0 {
                assert_eq!(w0[off], w1[off], "offset {off}");
            }
        }
        assert_ne!(w0[3], w1[3]);
    }

    #[test]
    fn skeleton_examples() {
        let t = seq624();
        let zero = t.skeleton(0).unwrap();
        assert_eq!(zero.period(), 1);
        assert_eq!(zero.defined_count(), 0);

        let one = t.skeleton(1).unwrap();
        assert_eq!(one.period(), 6);
        assert_eq!(one.defined_count(), 5);
        assert_eq!(one.cell(3), None);
        assert_eq!(
            (0..6).map(|r| one.cell(r)).collect::<Vec<_>>(),
            vec![
                Some(sym(0)),
                Some(sym(1)),
                Some(sym(2)),
                None,
                Some(sym(3)),
                Some(sym(4))
            ]
        );

        let two = t.skeleton(2).unwrap();
        assert_eq!(two.period(), 72);
        assert_eq!(two.defined_count(), 65);

        // extension: level-2 cells agree with level-1 cells wherever defined
        for r in 0..72usize {
            if let Some(s) = one.cell(r % 6) {
                assert_eq!(two.cell(r), Some(s));
            }
        }

        // consistency with eta on [0, p_2)
        for r in 0..72usize {
            if let Some(s) = two.cell(r) {
                assert_eq!(t.eta(r as i64).unwrap(), s);
            } else {
                let (j, _) = t.min_defined_level(r as i64).unwrap();
                assert!(j >= 2);
            }
        }
    }

    #[test]
    fn density_examples() {
        let t = seq624();
        let d1 = t.density(1).unwrap();
        assert_eq!(d1.defined_count, 5);
        assert_eq!(d1.density, Ratio::new(BigInt::from(5), BigInt::from(6)));
        assert_eq!(d1.density, d1.recursion_density);
        assert_eq!(d1.step_constant, 5);
        assert_eq!(d1.classification, Classification::UndecidableFromPrefix);

        let geo = ToeplitzSequence::new(PeriodStructure::stock_geometric(8));
        assert_eq!(
            geo.density(3).unwrap().classification,
            Classification::Irregular
        );
        let ari = ToeplitzSequence::new(PeriodStructure::stock_arithmetic(8));
        assert_eq!(
            ari.density(3).unwrap().classification,
            Classification::Regular
        );
    }

    #[test]
    fn density_monotone_and_matches_recursion() {
        let t = ToeplitzSequence::new(PeriodStructure::stock_geometric(8));
        let mut last = Ratio::zero();
        for level in 1..=4 {
            let d = t.density(level).unwrap();
            assert_eq!(d.density, d.recursion_density, "level {level}");
            assert!(d.density >= last);
            last = d.density;
        }
    }

    #[test]
    fn essential_periods() {
        let t = seq624();
        assert!(t.essential_period_check(1).unwrap());
        assert!(t.essential_period_check(2).unwrap());
        assert!(t.essential_period_check(3).is_err());

        // a constant synthetic table is 1-periodic, hence inessential
        let constant = SkeletonTable::from_cells(1, vec![Some(sym(0)); 6]).unwrap();
        assert!(!constant.is_essential());
    }

    #[test]
    fn toeplitz_window_property_small() {
        let t = ToeplitzSequence::new(PeriodStructure::stock_geometric(8));
        for i in 1..=2usize {
            let p_i = t.structure().period(i).unwrap().to_i64().unwrap();
            for n in -p_i..=3 * p_i {
                let (j, _) = t.min_defined_level(n).unwrap();
                assert!(j <= i, "n = {n}, level {j} > {i}");
            }
        }
    }

    #[test]
    fn aperiodicity_witnesses() {
        // digits (3, 3, ..., 3, 0) vs (3, ..., 3, 1): equal mod p_i,
        // different symbols, distinct mod p_{i+1}
        let t = ToeplitzSequence::new(PeriodStructure::stock_geometric(8));
        let s = t.structure().clone();
        for i in 0..=7usize {
            let base: i64 = (0..i)
                .map(|j| 3 * s.period(j).unwrap().to_i64().unwrap())
                .sum();
            let p_i = s.period(i).unwrap().to_i64().unwrap();
            let n = base;
            let m = base + p_i;
            assert_eq!(t.eta(n).unwrap(), sym(0), "i = {i}");
            assert_eq!(t.eta(m).unwrap(), sym(1), "i = {i}");
        }
    }

    #[test]
    fn arithmetic_rule_tables_also_work() {
        // moduli 6, 8, 10, ...: defined set of level 2 is {0,1,2,5,7}
        let s = Arc::new(
            PeriodStructure::from_rule(GeneratorRule::Arithmetic { start: 6, step: 2 }, 4).unwrap(),
        );
        let t = ToeplitzSequence::new(s);
        let sk = t.skeleton(2).unwrap();
        assert_eq!(sk.period(), 48);
        assert_eq!(sk.defined_count(), 5 * 8 + 5);
    }
}
