//! Period structures: the level moduli `q_1 < q_2 < …` and the cumulative
//! periods `p_0 = 1`, `p_i = p_{i-1} * q_i` that drive every digit
//! computation in the crate.
//!
//! A structure either carries an explicit finite modulus list or a named
//! generator rule that can produce moduli beyond the materialised depth.
//! The rule is what makes tail certificates and the regular/irregular
//! classification decidable; an explicit list only supports statements
//! about the levels it contains.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Smallest admissible first-level modulus.
pub const MIN_FIRST_MODULUS: u64 = 6;

/// A rule producing the level modulus `q_i` for every `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorRule {
    /// `q_i = base * ratio^(i-1)`.
    Geometric { base: u64, ratio: u64 },
    /// `q_i = start + step * (i-1)`.
    Arithmetic { start: u64, step: u64 },
}

impl GeneratorRule {
    /// Modulus at a 1-based level, or `None` when it no longer fits in `u64`
    /// (in which case it is still known to exceed every `u64`).
    pub fn modulus(&self, level: usize) -> Option<u64> {
        if level == 0 {
            return None;
        }
        let n = (level - 1) as u64;
        match *self {
            GeneratorRule::Geometric { base, ratio } => {
                let mut q = base;
                for _ in 0..n {
                    q = q.checked_mul(ratio)?;
                }
                Some(q)
            }
            GeneratorRule::Arithmetic { start, step } => start.checked_add(step.checked_mul(n)?),
        }
    }

    /// Whether the reciprocal series over all levels has a finite sum.
    ///
    /// Geometric moduli give a convergent geometric series; arithmetic
    /// moduli give a harmonic-type divergent series.
    pub fn reciprocal_sum_converges(&self) -> bool {
        match self {
            GeneratorRule::Geometric { .. } => true,
            GeneratorRule::Arithmetic { .. } => false,
        }
    }

    /// Parses the textual form used in config files and on the command
    /// line: `"geometric base=6 ratio=2"`, `"arithmetic start=6 step=2"`.
    /// Parameters may be omitted; the stock values above are the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let name = tokens
            .next()
            .ok_or_else(|| Error::Config("empty generator rule".into()))?;
        let mut params: Vec<(&str, u64)> = Vec::new();
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("bad rule parameter `{tok}`")))?;
            let value: u64 = value
                .parse()
                .map_err(|_| Error::Config(format!("bad rule parameter `{tok}`")))?;
            params.push((key, value));
        }
        let get = |key: &str, default: u64| -> Result<u64> {
            let mut found = default;
            for (k, v) in &params {
                if *k == key {
                    found = *v;
                } else if !matches!(*k, "base" | "ratio" | "start" | "step") {
                    return Err(Error::Config(format!("unknown rule parameter `{k}`")));
                }
            }
            Ok(found)
        };
        match name {
            "geometric" => Ok(GeneratorRule::Geometric {
                base: get("base", 6)?,
                ratio: get("ratio", 2)?,
            }),
            "arithmetic" => Ok(GeneratorRule::Arithmetic {
                start: get("start", 6)?,
                step: get("step", 2)?,
            }),
            other => Err(Error::Config(format!("unknown generator rule `{other}`"))),
        }
    }
}

impl fmt::Display for GeneratorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorRule::Geometric { base, ratio } => {
                write!(f, "geometric base={base} ratio={ratio}")
            }
            GeneratorRule::Arithmetic { start, step } => {
                write!(f, "arithmetic start={start} step={step}")
            }
        }
    }
}

/// Regularity classification of the sequence family built over a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Divergent reciprocal sum: defined-position densities tend to 1.
    Regular,
    /// Convergent reciprocal sum: densities stay bounded away from 1.
    Irregular,
    /// An explicit finite modulus list cannot decide the dichotomy.
    UndecidableFromPrefix,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Regular => "regular",
            Classification::Irregular => "irregular",
            Classification::UndecidableFromPrefix => "undecidable-from-prefix",
        };
        f.write_str(s)
    }
}

/// A modulus at some level, possibly only known to be enormous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelModulus {
    /// The exact value.
    Exact(u64),
    /// Produced by a generator rule but overflowing `u64`; every digit value
    /// we can represent is strictly below it.
    Huge,
}

/// The backbone of every computation: moduli `q_1..q_K` with cumulative
/// periods `p_0..p_K`, plus the optional rule the moduli came from.
#[derive(Debug, Clone)]
pub struct PeriodStructure {
    q: Vec<u64>,
    p: Vec<BigUint>,
    rule: Option<GeneratorRule>,
}

impl PartialEq for PeriodStructure {
    fn eq(&self, other: &Self) -> bool {
        // Arithmetic compatibility is decided by the moduli alone.
        self.q == other.q
    }
}

impl Eq for PeriodStructure {}

impl PeriodStructure {
    /// Builds a structure from an explicit modulus list.
    pub fn from_moduli(q: Vec<u64>) -> Result<Self> {
        Self::build(q, None)
    }

    /// Builds a structure of `depth` levels from a generator rule.
    pub fn from_rule(rule: GeneratorRule, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidPeriodStructure(
                "depth must be at least 1".into(),
            ));
        }
        let mut q = Vec::with_capacity(depth);
        for level in 1..=depth {
            let m = rule.modulus(level).ok_or_else(|| {
                Error::InvalidPeriodStructure(format!("modulus overflow at level {level}"))
            })?;
            q.push(m);
        }
        Self::build(q, Some(rule))
    }

    /// Stock structure `q_i = 6 * 2^(i-1)`: convergent reciprocal sum.
    pub fn stock_geometric(depth: usize) -> Arc<Self> {
        Arc::new(
            Self::from_rule(GeneratorRule::Geometric { base: 6, ratio: 2 }, depth)
                .expect("stock geometric structure is valid"),
        )
    }

    /// Stock structure `q_i = 2i + 4`: divergent reciprocal sum.
    pub fn stock_arithmetic(depth: usize) -> Arc<Self> {
        Arc::new(
            Self::from_rule(GeneratorRule::Arithmetic { start: 6, step: 2 }, depth)
                .expect("stock arithmetic structure is valid"),
        )
    }

    fn build(q: Vec<u64>, rule: Option<GeneratorRule>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::InvalidPeriodStructure(
                "modulus list must not be empty".into(),
            ));
        }
        if q[0] < MIN_FIRST_MODULUS {
            return Err(Error::InvalidPeriodStructure(format!(
                "q_1 = {} but the construction needs q_1 >= {MIN_FIRST_MODULUS}",
                q[0]
            )));
        }
        for (idx, &m) in q.iter().enumerate() {
            if m % 2 != 0 {
                return Err(Error::InvalidPeriodStructure(format!(
                    "q_{} = {m} is odd; every level modulus must be even",
                    idx + 1
                )));
            }
            if idx > 0 && m <= q[idx - 1] {
                return Err(Error::InvalidPeriodStructure(format!(
                    "moduli must be strictly increasing (q_{} = {} !< q_{} = {m})",
                    idx,
                    q[idx - 1],
                    idx + 1
                )));
            }
        }
        let mut p = Vec::with_capacity(q.len() + 1);
        p.push(BigUint::one());
        for &m in &q {
            let next = p.last().unwrap() * m;
            p.push(next);
        }
        Ok(PeriodStructure { q, p, rule })
    }

    /// Number of materialised levels `K`.
    pub fn depth(&self) -> usize {
        self.q.len()
    }

    /// The generator rule, when the structure has one.
    pub fn rule(&self) -> Option<GeneratorRule> {
        self.rule
    }

    /// Modulus `q_level` for `1 <= level <= K`.
    pub fn modulus(&self, level: usize) -> Result<u64> {
        if level == 0 || level > self.q.len() {
            return Err(Error::DepthExhausted {
                needed: level,
                available: self.q.len(),
            });
        }
        Ok(self.q[level - 1])
    }

    /// Modulus at any level, reaching past the materialised depth through
    /// the generator rule when there is one. `None` means genuinely unknown.
    pub fn modulus_at(&self, level: usize) -> Option<LevelModulus> {
        if level == 0 {
            return None;
        }
        if level <= self.q.len() {
            return Some(LevelModulus::Exact(self.q[level - 1]));
        }
        self.rule.map(|rule| match rule.modulus(level) {
            Some(m) => LevelModulus::Exact(m),
            None => LevelModulus::Huge,
        })
    }

    /// Cumulative period `p_i` for `0 <= i <= K`.
    pub fn period(&self, i: usize) -> Result<&BigUint> {
        self.p.get(i).ok_or(Error::DepthExhausted {
            needed: i,
            available: self.q.len(),
        })
    }

    /// All materialised moduli.
    pub fn moduli(&self) -> &[u64] {
        &self.q
    }

    /// Whether the reciprocal modulus series converges, when decidable.
    pub fn reciprocal_sum_converges(&self) -> Option<bool> {
        self.rule.map(|r| r.reciprocal_sum_converges())
    }

    /// Regular/irregular dichotomy from the declared rule; explicit lists
    /// are honest about not knowing.
    pub fn classification(&self) -> Classification {
        match self.reciprocal_sum_converges() {
            Some(true) => Classification::Irregular,
            Some(false) => Classification::Regular,
            None => Classification::UndecidableFromPrefix,
        }
    }
}

/// Serde shape of a period-structure config file.
///
/// Either `q = [6, 12, 24]` or `rule = "geometric base=6 ratio=2"` with
/// `depth = 8`.
#[derive(Debug, Deserialize)]
pub struct PeriodConfig {
    /// Explicit modulus list.
    pub q: Option<Vec<u64>>,
    /// Named generator rule.
    pub rule: Option<String>,
    /// Depth for rule-generated structures.
    pub depth: Option<usize>,
}

impl PeriodConfig {
    /// Turns the parsed config into a validated structure.
    pub fn into_structure(self) -> Result<PeriodStructure> {
        match (self.q, self.rule) {
            (Some(_), Some(_)) => Err(Error::Config(
                "config declares both an explicit q-list and a rule".into(),
            )),
            (Some(q), None) => PeriodStructure::from_moduli(q),
            (None, Some(rule)) => {
                let depth = self
                    .depth
                    .ok_or_else(|| Error::Config("rule-based config needs `depth`".into()))?;
                PeriodStructure::from_rule(GeneratorRule::parse(&rule)?, depth)
            }
            (None, None) => Err(Error::Config(
                "config must declare either `q` or `rule`".into(),
            )),
        }
    }
}

/// Loads a period structure from TOML text.
pub fn structure_from_toml(text: &str) -> Result<PeriodStructure> {
    let cfg: PeriodConfig =
        toml::from_str(text).map_err(|e| Error::Config(format!("TOML parse error: {e}")))?;
    cfg.into_structure()
}

/// Loads a period structure from a TOML config file.
pub fn structure_from_file(path: &Path) -> Result<PeriodStructure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    structure_from_toml(&text)
}
