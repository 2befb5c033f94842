//! Atoms of basis elements and the unitarity criterion.
//!
//! The atom ⟨x⟩ of a nonnegative chain x of degree i is the i-cell table
//! with top x whose lower entries are the negative (row 0) and positive
//! (row 1) parts of the boundaries of the entries above them. The boundary
//! and top conditions hold automatically; only the augmentation-1 condition
//! can fail, and a base is unitary when it never does.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::adc::{Adc, Report};
use crate::chains::{BasisElement, Chain, Name};

use super::{Cell, CellError};

/// The atom of a nonnegative chain, together with whether it is a valid
/// cell (the augmentation-1 test; the other conditions hold by
/// construction).
pub fn atom_of_chain(k: &Arc<Adc>, top: &Chain) -> Result<(Cell, bool), CellError> {
    if !top.is_nonneg() {
        return Err(CellError::NegativeAtomTop);
    }
    let i = top.degree();
    let mut row0 = vec![Chain::zero(0); i + 1];
    let mut row1 = vec![Chain::zero(0); i + 1];
    row0[i] = top.clone();
    row1[i] = top.clone();
    for kdeg in (1..=i).rev() {
        let (_, neg) = k.diff_chain(&row0[kdeg]).pos_neg_parts();
        let (pos, _) = k.diff_chain(&row1[kdeg]).pos_neg_parts();
        row0[kdeg - 1] = neg;
        row1[kdeg - 1] = pos;
    }
    let cell = Cell::new(k.clone(), row0, row1)?;
    let one = BigInt::one();
    let valid = k.aug_chain(&cell.row0()[0]) == one && k.aug_chain(&cell.row1()[0]) == one;
    debug_assert!(!valid || cell.validate().is_valid());
    Ok((cell, valid))
}

/// The atom of a basis element.
pub fn atom(k: &Arc<Adc>, b: &BasisElement) -> (Cell, bool) {
    let top = Chain::generator(b.degree, b.name.clone());
    atom_of_chain(k, &top).expect("generators are nonnegative")
}

/// Entry (ε, q) of the atom of a simplex tuple, computed without the
/// recursion: the sum of all subtuples obtained by removing positions
/// k₁ < … < k_{p−q} of alternating parity, the first removed position even
/// exactly when ε = 1. For q = p the sum is the tuple itself; for q > p it
/// is zero.
pub fn atom_face_formula(k: &Adc, x: &[u32], q: usize, eps: u8) -> Chain {
    debug_assert!(k.contains(x.len() - 1, &Name::Simplex(x.to_vec())));
    let p = x.len() - 1;
    if q > p {
        return Chain::zero(q);
    }
    let removals = p - q;
    let mut terms: Vec<(Name, BigInt)> = Vec::new();
    let mut removed = Vec::with_capacity(removals);

    fn walk(
        x: &[u32],
        removals: usize,
        eps: u8,
        start: usize,
        removed: &mut Vec<usize>,
        terms: &mut Vec<(Name, BigInt)>,
    ) {
        if removed.len() == removals {
            let kept: Vec<u32> = x
                .iter()
                .enumerate()
                .filter(|(pos, _)| !removed.contains(pos))
                .map(|(_, &v)| v)
                .collect();
            terms.push((Name::Simplex(kept), BigInt::one()));
            return;
        }
        let j = removed.len() + 1;
        for pos in start..x.len() {
            if pos % 2 == (j + eps as usize) % 2 {
                removed.push(pos);
                walk(x, removals, eps, pos + 1, removed, terms);
                removed.pop();
            }
        }
    }

    walk(x, removals, eps, 0, &mut removed, &mut terms);
    Chain::from_terms(q, terms)
}

/// A base is unitary when both degree-0 entries of every atom have
/// augmentation 1; the report lists the failures.
pub fn check_unitary(k: &Arc<Adc>) -> Report {
    let mut report = Report::default();
    for b in k.basis_elements() {
        let (cell, _) = atom(k, &b);
        for (r, chain) in [(0u8, &cell.row0()[0]), (1u8, &cell.row1()[0])] {
            let aug = k.aug_chain(chain);
            if aug != BigInt::one() {
                report.push(
                    b.degree,
                    Some(b.name.clone()),
                    format!("atom row{r} has augmentation {aug}, expected 1"),
                );
            }
        }
    }
    report
}
