//! Exhaustive enumeration of ν-cells with bounded coefficients.
//!
//! Dimension 0 solves the augmentation-1 equation; dimension i groups the
//! (i−1)-cells into parallelism classes and, for each ordered pair (u, v)
//! in a class, solves d z = top(v) − top(u) for nonnegative z. Every entry
//! of a cell is bounded by its own top-level cap, so the boundary cells of
//! an in-cap cell are themselves in-cap and the `truncated` flag is exact
//! whenever the underlying solver certifies exactness.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::adc::Adc;
use crate::chains::Chain;
use crate::solve::{solve_aug, solve_boundary, Solutions};

use super::Cell;

/// All cells of ν(K) up to a dimension, with coefficients bounded by a cap.
#[derive(Debug, Clone)]
pub struct Enumeration {
    complex: Arc<Adc>,
    by_dim: Vec<Vec<Cell>>,
    truncated: bool,
    cap: BigInt,
}

impl Enumeration {
    pub fn complex(&self) -> &Arc<Adc> {
        &self.complex
    }

    /// Highest enumerated dimension.
    pub fn max_dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    /// The cells of one dimension, empty above [`Enumeration::max_dim`].
    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Whether cells beyond the cap exist (or could exist, for complexes
    /// where the solver cannot certify completeness).
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn cap(&self) -> &BigInt {
        &self.cap
    }

    /// Cell counts per dimension 0..=max_dim.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Index of a cell within its dimension's list.
    pub fn position_of(&self, cell: &Cell) -> Option<usize> {
        self.cells(cell.dim()).iter().position(|c| c == cell)
    }
}

fn enumerate_impl(k: &Arc<Adc>, dim: usize, cap: &BigInt, parallel: bool) -> Enumeration {
    let mut truncated = false;
    let mut by_dim: Vec<Vec<Cell>> = Vec::with_capacity(dim + 1);

    let sols = solve_aug(k, &BigInt::one(), cap);
    truncated |= sols.beyond_cap;
    by_dim.push(
        sols.chains
            .into_iter()
            .map(|c| Cell::object(k.clone(), c).expect("augmentation solutions are objects"))
            .collect(),
    );

    for i in 1..=dim {
        let prev = &by_dim[i - 1];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of: BTreeMap<(Vec<Chain>, Vec<Chain>), usize> = BTreeMap::new();
        for (idx, c) in prev.iter().enumerate() {
            let g = *group_of.entry(c.parallel_key()).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(idx);
        }
        let pairs: Vec<(usize, usize)> = groups
            .iter()
            .flat_map(|g| g.iter().flat_map(|&u| g.iter().map(move |&v| (u, v))))
            .collect();

        let solve_pair = |&(u, v): &(usize, usize)| -> Solutions {
            let target = prev[v].top().sub(prev[u].top()).expect("parallel tops share degree");
            solve_boundary(k, i, &target, cap)
        };
        let results = run_solves(&pairs, solve_pair, parallel);

        let mut cells = Vec::new();
        for (&(u, v), sol) in pairs.iter().zip(results) {
            truncated |= sol.beyond_cap;
            for z in sol.chains {
                cells.push(Cell::raise(&prev[u], &prev[v], z));
            }
        }
        by_dim.push(cells);
    }

    Enumeration { complex: k.clone(), by_dim, truncated, cap: cap.clone() }
}

#[cfg(feature = "parallel")]
fn run_solves<F>(pairs: &[(usize, usize)], solve_pair: F, parallel: bool) -> Vec<Solutions>
where
    F: Fn(&(usize, usize)) -> Solutions + Sync,
{
    use rayon::prelude::*;
    if parallel {
        pairs.par_iter().map(&solve_pair).collect()
    } else {
        pairs.iter().map(&solve_pair).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn run_solves<F>(pairs: &[(usize, usize)], solve_pair: F, _parallel: bool) -> Vec<Solutions>
where
    F: Fn(&(usize, usize)) -> Solutions + Sync,
{
    pairs.iter().map(&solve_pair).collect()
}

/// Enumerates all cells of dimension ≤ `dim` with coefficients ≤ `cap`,
/// solving independent boundary equations in parallel when the `parallel`
/// feature is enabled. The output order is identical to the sequential
/// variant.
pub fn enumerate_cells(k: &Arc<Adc>, dim: usize, cap: &BigInt) -> Enumeration {
    enumerate_impl(k, dim, cap, true)
}

/// Single-threaded enumeration; same output as [`enumerate_cells`].
pub fn enumerate_cells_sequential(k: &Arc<Adc>, dim: usize, cap: &BigInt) -> Enumeration {
    enumerate_impl(k, dim, cap, false)
}
