//! Independent oracle for the sequence construction: simulate the stepwise
//! block filling literally on a finite range (arrays and block indices,
//! no digit arithmetic) and compare against the digit-rule evaluation.

use std::sync::Arc;

use toeplitz_core::toeplitz::ToeplitzSequence;
use toeplitz_core::PeriodStructure;

/// Symbol assigned by one filling step to residue class `r` of modulus `q`.
fn step_symbol(r: u64, q: u64) -> Option<u8> {
    match r {
        0 => Some(0),
        1 => Some(1),
        2 => Some(2),
        r if r == q / 2 + 1 => Some(3),
        r if r == q - 1 => Some(4),
        _ => None,
    }
}

/// Runs `steps` filling rounds over `[lo, hi]`, returning per position the
/// symbol and the 1-based step at which it was set.
fn inductive_fill(moduli: &[u64], lo: i64, hi: i64, steps: usize) -> Vec<Option<(u8, usize)>> {
    assert!(steps <= moduli.len());
    let len = (hi - lo + 1) as usize;
    let mut cells: Vec<Option<(u8, usize)>> = vec![None; len];

    // step 1: residues mod q_1 over the whole line
    let q1 = moduli[0];
    for (idx, cell) in cells.iter_mut().enumerate() {
        let n = lo + idx as i64;
        if let Some(sym) = step_symbol(n.rem_euclid(q1 as i64) as u64, q1) {
            *cell = Some((sym, 1));
        }
    }

    // step i+1: the undefined positions of block k (of length p_i) all
    // receive the symbol of the residue class of k mod q_{i+1}
    let mut p_i: i64 = q1 as i64;
    for (i, &q_next) in moduli.iter().enumerate().skip(1).take(steps - 1) {
        for (idx, cell) in cells.iter_mut().enumerate() {
            if cell.is_some() {
                continue;
            }
            let n = lo + idx as i64;
            let block = n.div_euclid(p_i);
            if let Some(sym) = step_symbol(block.rem_euclid(q_next as i64) as u64, q_next) {
                *cell = Some((sym, i + 1));
            }
        }
        p_i *= q_next as i64;
    }
    cells
}

#[test]
fn digit_rule_matches_inductive_fill() {
    let structure = PeriodStructure::stock_geometric(8);
    let seq = ToeplitzSequence::new(structure.clone());
    let p3 = 6i64 * 12 * 24;
    let (lo, hi) = (-p3, 3 * p3);
    let filled = inductive_fill(structure.moduli(), lo, hi, 4);

    for (idx, cell) in filled.iter().enumerate() {
        let n = lo + idx as i64;
        let (sym, step) = cell.unwrap_or_else(|| {
            panic!("position {n} still undefined after 4 steps");
        });
        assert_eq!(seq.eta(n).unwrap().value(), sym, "symbol mismatch at {n}");
        let (level, _) = seq.min_defined_level(n).unwrap();
        assert_eq!(level + 1, step, "defining step mismatch at {n}");
    }
}

#[test]
fn inductive_fill_matches_on_arithmetic_moduli() {
    let structure = Arc::new(
        PeriodStructure::from_rule(
            toeplitz_core::GeneratorRule::Arithmetic { start: 6, step: 2 },
            6,
        )
        .unwrap(),
    );
    let seq = ToeplitzSequence::new(structure.clone());
    let p2 = 6i64 * 8;
    let filled = inductive_fill(structure.moduli(), -p2, 3 * p2, 3);
    for (idx, cell) in filled.iter().enumerate() {
        let n = -p2 + idx as i64;
        if let Some((sym, _)) = cell {
            assert_eq!(seq.eta(n).unwrap().value(), *sym, "position {n}");
        }
    }
}
