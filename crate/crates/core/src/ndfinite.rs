//! Exact diagonal-orbit computations on finite cyclic rotations.
//!
//! On a finite rotation every orbit closure is an orbit, so the statements
//! about the sets generated from the diagonal by `T x … x T` and
//! `T x T^2 x … x T^d` become finitely decidable. The breadth-first
//! closure is the oracle; closed forms and theorem-level dichotomies are
//! the claims tested against it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Rotation `x -> x + step` on `Z/modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteRotation {
    modulus: u64,
    step: u64,
}

impl FiniteRotation {
    pub fn new(modulus: u64, step: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        Ok(FiniteRotation {
            modulus,
            step: step % modulus,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    /// Minimal iff the step generates the whole cyclic group.
    pub fn is_minimal(&self) -> bool {
        self.step.gcd(&self.modulus) == 1 || self.modulus == 1
    }

    /// The rotation realising the `n`-th power map.
    pub fn power(&self, n: u64) -> Self {
        let step = ((self.step as u128 * n as u128) % self.modulus as u128) as u64;
        FiniteRotation {
            modulus: self.modulus,
            step,
        }
    }
}

/// An exact set of `dim`-tuples over `Z/modulus`, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSet {
    dim: usize,
    modulus: u64,
    tuples: BTreeSet<Vec<u64>>,
}

impl TupleSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[u64]) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.tuples.iter()
    }

    /// Translate every tuple by `offset` (componentwise, mod the modulus).
    fn translate(&self, offset: &[u64]) -> TupleSet {
        let m = self.modulus;
        let tuples = self
            .tuples
            .iter()
            .map(|t| {
                t.iter()
                    .zip(offset)
                    .map(|(&a, &b)| (a + b) % m)
                    .collect::<Vec<u64>>()
            })
            .collect();
        TupleSet {
            dim: self.dim,
            modulus: m,
            tuples,
        }
    }

    /// Whether applying the two generator translations and their inverses
    /// stays inside the set.
    pub fn is_closed_under(&self, sys: &FiniteRotation, d: usize) -> bool {
        let gens = generator_offsets(sys, d);
        gens.iter().all(|g| self.translate(g).tuples == self.tuples)
    }
}

/// Offsets of the two generators and their inverses as translation vectors.
fn generator_offsets(sys: &FiniteRotation, d: usize) -> Vec<Vec<u64>> {
    let m = sys.modulus();
    let r = sys.step();
    let sigma: Vec<u64> = vec![r; d];
    let tau: Vec<u64> = (1..=d as u64)
        .map(|i| (r as u128 * i as u128 % m as u128) as u64)
        .collect();
    let inv = |v: &[u64]| v.iter().map(|&x| (m - x % m) % m).collect::<Vec<u64>>();
    vec![inv(&sigma), inv(&tau), sigma, tau]
}

/// Orbit of the diagonal point `(0, …, 0)` under the group generated by
/// `T x … x T` and `T x T^2 x … x T^d`, by breadth-first closure.
pub fn nd_set(sys: &FiniteRotation, d: usize) -> TupleSet {
    assert!(d >= 1, "dimension must be at least 1");
    let gens = generator_offsets(sys, d);
    let m = sys.modulus();
    let start = vec![0u64; d];
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for g in &gens {
            let next: Vec<u64> = t.iter().zip(g).map(|(&a, &b)| (a + b) % m).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let set = TupleSet {
        dim: d,
        modulus: m,
        tuples: seen,
    };
    debug_assert!(set.is_closed_under(sys, d));
    set
}

/// The same orbit for the power system `(X, T^n)`.
pub fn nd_power(sys: &FiniteRotation, n: u64, d: usize) -> TupleSet {
    nd_set(&sys.power(n), d)
}

/// Closed form claimed for minimal rotations:
/// `{(a + b, a + 2b, …, a + db) : a, b in Z/N}`.
pub fn closed_form_nd(modulus: u64, d: usize) -> TupleSet {
    let mut tuples = BTreeSet::new();
    for a in 0..modulus {
        for b in 0..modulus {
            let t: Vec<u64> = (1..=d as u64)
                .map(|i| ((a as u128 + b as u128 * i as u128) % modulus as u128) as u64)
                .collect();
            tuples.insert(t);
        }
    }
    TupleSet {
        dim: d,
        modulus,
        tuples,
    }
}

/// Outcome of the cell-decomposition check for one `(N, r, n, d)`.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub n: u64,
    /// Union of all cells equals the full orbit set.
    pub union_covers: bool,
    /// Any two cells are identical or disjoint.
    pub pairwise_ok: bool,
    /// Number of distinct cells.
    pub distinct_cells: usize,
    /// Size of each distinct cell.
    pub cell_sizes: Vec<usize>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.union_covers && self.pairwise_ok
    }
}

/// Partitions the full orbit set into the `n x n` family of translated
/// power-system cells and verifies covering and identical-or-disjointness.
pub fn decomposition_check(modulus: u64, r: u64, n: u64, d: usize) -> Result<DecompositionReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    let sys = FiniteRotation::new(modulus, r)?;
    let full = nd_set(&sys, d);
    let base = nd_power(&sys, n, d);
    let m = sys.modulus();
    let rr = sys.step();
    let tau: Vec<u64> = (1..=d as u64)
        .map(|i| (rr as u128 * i as u128 % m as u128) as u64)
        .collect();
    let sigma: Vec<u64> = vec![rr; d];

    let mut distinct: Vec<TupleSet> = Vec::new();
    let mut union: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut pairwise_ok = true;
    for i in 0..n {
        for j in 0..n {
            let offset: Vec<u64> = (0..d)
                .map(|c| {
                    ((tau[c] as u128 * i as u128 + sigma[c] as u128 * j as u128) % m as u128) as u64
                })
                .collect();
            let cell = base.translate(&offset);
            union.extend(cell.tuples.iter().cloned());
            let mut is_new = true;
            for known in &distinct {
                if known.tuples == cell.tuples {
                    is_new = false;
                    break;
                }
                if !known.tuples.is_disjoint(&cell.tuples) {
                    pairwise_ok = false;
                }
            }
            if is_new {
                distinct.push(cell);
            }
        }
    }
    Ok(DecompositionReport {
        n,
        union_covers: union == full.tuples,
        pairwise_ok,
        distinct_cells: distinct.len(),
        cell_sizes: distinct.iter().map(|c| c.len()).collect(),
    })
}

/// Exhaustive orbit-return condition at dimension `d`: for every target
/// shift `l` there is a single `q` with `i n q r = i l r (mod N)` for all
/// `1 <= i <= d`. On a rotation the base point is irrelevant.
pub fn condition_three_check(modulus: u64, r: u64, n: u64, d: usize) -> bool {
    let m = modulus as u128;
    let r = r as u128;
    let n = n as u128;
    (0..m).all(|l| {
        (0..m).any(|q| (1..=d as u128).all(|i| (i * n % m) * q % m * r % m == (i * l % m) * r % m))
    })
}

/// One row of the power-equality scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub modulus: u64,
    pub r: u64,
    pub n: u64,
    pub d: usize,
    pub size_t: usize,
    pub size_tn: usize,
    pub equal: bool,
    pub gcd: u64,
    pub decomposition_ok: bool,
    pub condition_three: bool,
    /// The dimension-`d` return condition agrees with set equality at
    /// dimension `d + 1`.
    pub condition_matches_next_dim: bool,
}

/// Aggregate result of the scan over all small parameters.
#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// Rows where set equality disagrees with the gcd dichotomy.
    pub equality_counterexamples: Vec<ScanRow>,
    /// Rows whose cell decomposition failed.
    pub decomposition_failures: Vec<ScanRow>,
    /// Rows where the return condition disagrees with the next dimension.
    pub coherence_failures: Vec<ScanRow>,
}

impl ScanReport {
    pub fn all_clean(&self) -> bool {
        self.equality_counterexamples.is_empty()
            && self.decomposition_failures.is_empty()
            && self.coherence_failures.is_empty()
    }
}

/// Scans every modulus up to `n_max`, every coprime step, every power
/// `n <= N` and every dimension up to `d_max`, checking the equality
/// dichotomy, the cell decomposition and the return-condition coherence.
pub fn full_scan(n_max: u64, d_max: usize) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    let mut cache: BTreeMap<(u64, u64, usize), TupleSet> = BTreeMap::new();
    let mut sized = |modulus: u64, step: u64, d: usize| -> TupleSet {
        cache
            .entry((modulus, step % modulus, d))
            .or_insert_with(|| nd_set(&FiniteRotation::new(modulus, step).unwrap(), d))
            .clone()
    };
    for modulus in 1..=n_max {
        for r in 0..modulus.max(1) {
            if modulus > 1 && r.gcd(&modulus) != 1 {
                continue;
            }
            let sys = FiniteRotation::new(modulus, r)?;
            for n in 1..=modulus {
                let g = n.gcd(&modulus);
                for d in 1..=d_max {
                    let full = sized(modulus, r, d);
                    let power = sized(modulus, sys.power(n).step(), d);
                    let equal = full == power;
                    let decomposition = decomposition_check(modulus, r, n, d)?;
                    let cond = condition_three_check(modulus, r, n, d);
                    let full_next = sized(modulus, r, d + 1);
                    let power_next = sized(modulus, sys.power(n).step(), d + 1);
                    let row = ScanRow {
                        modulus,
                        r,
                        n,
                        d,
                        size_t: full.len(),
                        size_tn: power.len(),
                        equal,
                        gcd: g,
                        decomposition_ok: decomposition.holds(),
                        condition_three: cond,
                        condition_matches_next_dim: cond == (full_next == power_next),
                    };
                    if row.equal != (row.gcd == 1) {
                        report.equality_counterexamples.push(row.clone());
                    }
                    if !row.decomposition_ok {
                        report.decomposition_failures.push(row.clone());
                    }
                    if !row.condition_matches_next_dim {
                        report.coherence_failures.push(row.clone());
                    }
                    report.rows.push(row);
                }
            }
        }
    }
    Ok(report)
}

/// `rA` for `r = p/q`: the exact set `{g : q g = p a (mod N) for some a in A}`.
pub fn rational_multiple_set(
    modulus: u64,
    p: i64,
    q: i64,
    a: &BTreeSet<u64>,
) -> Result<BTreeSet<u64>> {
    if q == 0 {
        return Err(Error::InvalidArgument(
            "rational multiple needs a nonzero denominator".into(),
        ));
    }
    let m = modulus as i128;
    let p = (p as i128).rem_euclid(m) as u128;
    let q = (q as i128).rem_euclid(m) as u128;
    let m = modulus as u128;
    let mut out = BTreeSet::new();
    for g in 0..modulus {
        let lhs = q * g as u128 % m;
        if a.iter().any(|&x| p * x as u128 % m == lhs) {
            out.insert(g);
        }
    }
    Ok(out)
}

/// Union of the difference sets `(j/(j-i))A - (i/(j-i))A` over
/// `1 <= i < j <= d` (at `i = j` the coefficients are undefined, so the
/// union runs over strict pairs).
pub fn b_d_set(modulus: u64, a: &BTreeSet<u64>, d: usize) -> Result<BTreeSet<u64>> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "difference-set union needs dimension at least 2".into(),
        ));
    }
    let m = modulus;
    let mut out = BTreeSet::new();
    for j in 1..=d as i64 {
        for i in 1..j {
            let den = j - i;
            let left = rational_multiple_set(m, j, den, a)?;
            let right = rational_multiple_set(m, i, den, a)?;
            for &u in &left {
                for &v in &right {
                    out.insert(((u + m) - v) % m);
                }
            }
        }
    }
    Ok(out)
}
