//! Property-based invariants: chain arithmetic, atom tables against the
//! face formula, duality involution, identity units, and inclusion
//! witnesses between path cells.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;

use orientals::chains::{BasisElement, Chain, Name};
use orientals::homcat::{one_cell_of_chain, two_cell_witness};
use orientals::simplicial::standard_simplex_adc;
use orientals::steiner::{
    atom, atom_face_formula, compose, enumerate_cells, Cell, Enumeration,
};
use orientals::Adc;

fn big(i: i64) -> BigInt {
    BigInt::from(i)
}

/// Oriental of the 3-simplex, enumerated once to dimension 3.
fn o3() -> &'static Enumeration {
    static CACHE: OnceLock<Enumeration> = OnceLock::new();
    CACHE.get_or_init(|| {
        let k = Arc::new(standard_simplex_adc(3));
        let e = enumerate_cells(&k, 3, &big(3));
        assert!(!e.truncated());
        e
    })
}

fn o3_cell(dim: usize, pick: usize) -> Cell {
    let cells = o3().cells(dim);
    cells[pick % cells.len()].clone()
}

/// All degree-one simplex names over the vertices 0..5.
fn edge_pool() -> Vec<Name> {
    let mut pool = Vec::new();
    for i in 0..5u32 {
        for j in (i + 1)..5 {
            pool.push(Name::simplex([i, j]));
        }
    }
    pool
}

fn chain_strategy() -> impl Strategy<Value = Chain> {
    let pool = edge_pool();
    prop::collection::btree_map(0..pool.len(), -9i64..=9, 0..=6).prop_map(move |terms| {
        Chain::from_terms(1, terms.into_iter().map(|(i, c)| (pool[i].clone(), big(c))))
    })
}

/// Strictly increasing vertex tuples inside 0..=6.
fn tuple_strategy() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(0u32..=6, 1..=7).prop_map(|s| s.into_iter().collect())
}

/// A pair of vertex subsets of 0..=n sharing their endpoints 0 and n.
fn endpoint_pair_strategy() -> impl Strategy<Value = (u32, Vec<u32>, Vec<u32>)> {
    (2u32..=4).prop_flat_map(|n| {
        let interior = prop::collection::btree_set(1..n, 0..=(n as usize - 1));
        (Just(n), interior.clone(), interior).prop_map(|(n, a, b)| {
            let close = |s: BTreeSet<u32>| {
                let mut v: Vec<u32> = s.into_iter().collect();
                v.insert(0, 0);
                v.push(n);
                v
            };
            (n, close(a), close(b))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_addition_round_trips(a in chain_strategy(), b in chain_strategy()) {
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(sum.sub(&b).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn positive_and_negative_parts_decompose(a in chain_strategy()) {
        let (pos, neg) = a.pos_neg_parts();
        prop_assert!(pos.is_nonneg());
        prop_assert!(neg.is_nonneg());
        prop_assert_eq!(pos.sub(&neg).unwrap(), a);
        prop_assert!(pos.meet(&neg).unwrap().is_zero());
    }

    #[test]
    fn atom_tables_match_the_face_formula(tuple in tuple_strategy()) {
        static K6: OnceLock<Arc<Adc>> = OnceLock::new();
        let k = K6.get_or_init(|| Arc::new(standard_simplex_adc(6)));
        let degree = tuple.len() - 1;
        let (cell, unitary) = atom(k, &BasisElement::new(degree, Name::simplex(tuple.clone())));
        prop_assert!(unitary);
        prop_assert!(cell.validate().is_valid());
        for q in 0..=degree {
            for eps in 0..2u8 {
                let expected = atom_face_formula(k, &tuple, q, eps);
                prop_assert_eq!(cell.entry(eps, q), &expected);
            }
        }
    }

    #[test]
    fn duality_is_an_involution(dim in 0..=3usize, pick in 0..200usize, mask in 0u8..8) {
        let degrees: BTreeSet<usize> =
            (1..=3).filter(|j| mask & (1 << (j - 1)) != 0).collect();
        let x = o3_cell(dim, pick);
        let dual = x.dual(&degrees);
        prop_assert!(dual.validate().is_valid());
        prop_assert_eq!(dual.dual(&degrees), x);
    }

    #[test]
    fn identities_are_units(dim in 1..=3usize, pick in 0..200usize) {
        let x = o3_cell(dim, pick);
        let j = dim - 1;
        let left = x.target_at(j).unwrap().identity_at(dim);
        let right = x.source_at(j).unwrap().identity_at(dim);
        prop_assert_eq!(compose(j, &left, &x).unwrap(), x.clone());
        prop_assert_eq!(compose(j, &x, &right).unwrap(), x);
    }

    #[test]
    fn witnesses_exist_exactly_for_inclusions(
        (n, from, to) in endpoint_pair_strategy(),
    ) {
        let k = Arc::new(standard_simplex_adc(n as usize));
        let source = one_cell_of_chain(&k, &from).unwrap();
        let target = one_cell_of_chain(&k, &to).unwrap();
        let witness = two_cell_witness(&k, &from, &to).unwrap();
        let included = from.iter().all(|v| to.contains(v));
        prop_assert_eq!(witness.is_some(), included);
        if let Some(w) = witness {
            prop_assert!(w.validate().is_valid());
            prop_assert_eq!(w.source().unwrap(), source);
            prop_assert_eq!(w.target().unwrap(), target);
        }
    }
}
