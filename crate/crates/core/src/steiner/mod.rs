//! Cells of the ∞-category ν(K) of an augmented directed complex.
//!
//! A cell of dimension i is a two-row table of nonnegative chains, one
//! entry per degree 0…i, subject to three conditions: boundaries relate
//! consecutive columns (`d(x^ε_k) = x¹_{k−1} − x⁰_{k−1}`), the degree-0
//! entries have augmentation 1, and the top entries of the two rows agree.
//! Sources and targets drop the top column, identities append a zero
//! column, and j-composition keeps the lower rows of the inner factors
//! while adding entries above level j.
//!
//! Submodules provide atoms and base criteria ([`atom`], [`loopfree`]),
//! exhaustive bounded enumeration ([`enumerate`]), intelligent truncation
//! ([`truncate`]), and bounded decomposition into atoms ([`decompose`]).

mod atom;
mod decompose;
mod enumerate;
mod loopfree;
mod truncate;

pub use atom::{atom, atom_face_formula, atom_of_chain, check_unitary};
pub use decompose::{decompose_cell, eval_expr, ExprTree};
pub use enumerate::{enumerate_cells, enumerate_cells_sequential, Enumeration};
pub use loopfree::{check_loop_free, check_strongly_loop_free};
pub use truncate::{truncate_intelligent, Truncation};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::adc::{Adc, Report};
use crate::chains::Chain;

/// Structural errors for cell construction and composition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("rows must have equal nonzero length, got {row0} and {row1}")]
    RowShape { row0: usize, row1: usize },
    #[error("entry {index} of row{row} has degree {got}, expected {index}")]
    EntryDegree { row: u8, index: usize, got: usize },
    #[error("entry {index} of row{row} uses a name outside the basis")]
    UnknownEntryName { row: u8, index: usize },
    #[error("cells live over different complexes")]
    ComplexMismatch,
    #[error("a 0-cell has no source or target")]
    ZeroDimensional,
    #[error("composition index {j} needs cells of dimension above {j}, got {xdim} and {ydim}")]
    CompositionIndex { j: usize, xdim: usize, ydim: usize },
    #[error("composition boundary mismatch at level {j}")]
    CompositionBoundary { j: usize },
    #[error("atoms need a nonnegative top chain")]
    NegativeAtomTop,
    #[error("operation requires a complete enumeration (truncated = false)")]
    IncompleteEnumeration,
    #[error("cells are not parallel")]
    NotParallel,
    #[error("unknown atom name {0}")]
    UnknownAtom(String),
}

/// A ν-cell: two rows of chains over a shared complex.
#[derive(Debug, Clone)]
pub struct Cell {
    complex: Arc<Adc>,
    row0: Vec<Chain>,
    row1: Vec<Chain>,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.row0 == other.row0
            && self.row1 == other.row1
            && (Arc::ptr_eq(&self.complex, &other.complex) || self.complex == other.complex)
    }
}

impl Eq for Cell {}

impl Cell {
    /// Builds a cell table, checking structure only: equal row lengths,
    /// entry k of degree k, supports inside the basis. The table conditions
    /// are checked by [`Cell::validate`].
    pub fn new(complex: Arc<Adc>, row0: Vec<Chain>, row1: Vec<Chain>) -> Result<Cell, CellError> {
        if row0.is_empty() || row0.len() != row1.len() {
            return Err(CellError::RowShape { row0: row0.len(), row1: row1.len() });
        }
        for (r, row) in [(0u8, &row0), (1u8, &row1)] {
            for (k, entry) in row.iter().enumerate() {
                if entry.degree() != k {
                    return Err(CellError::EntryDegree { row: r, index: k, got: entry.degree() });
                }
                if !entry.support().all(|n| complex.contains(k, n)) {
                    return Err(CellError::UnknownEntryName { row: r, index: k });
                }
            }
        }
        Ok(Cell { complex, row0, row1 })
    }

    /// A 0-cell from a degree-0 chain.
    pub fn object(complex: Arc<Adc>, chain: Chain) -> Result<Cell, CellError> {
        Cell::new(complex, vec![chain.clone()], vec![chain])
    }

    pub fn complex(&self) -> &Arc<Adc> {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.row0.len() - 1
    }

    pub fn row0(&self) -> &[Chain] {
        &self.row0
    }

    pub fn row1(&self) -> &[Chain] {
        &self.row1
    }

    /// Row ε, entry k.
    pub fn entry(&self, eps: u8, k: usize) -> &Chain {
        match eps {
            0 => &self.row0[k],
            _ => &self.row1[k],
        }
    }

    /// The shared top entry.
    pub fn top(&self) -> &Chain {
        &self.row0[self.dim()]
    }

    /// Checks the table conditions: nonnegative entries, the boundary
    /// relation between consecutive columns, augmentation 1 at degree 0,
    /// and agreement of the two top entries.
    pub fn validate(&self) -> Report {
        let mut report = Report::default();
        let one = num_bigint::BigInt::from(1);
        for (r, row) in [(0u8, &self.row0), (1u8, &self.row1)] {
            for (k, entry) in row.iter().enumerate() {
                if !entry.is_nonneg() {
                    report.push(k, None, format!("row{r} entry {k} = {entry} is not nonnegative"));
                }
            }
            if self.complex.aug_chain(&row[0]) != one {
                report.push(0, None, format!("row{r} entry 0 has augmentation ≠ 1"));
            }
            for k in 1..row.len() {
                let got = self.complex.diff_chain(&row[k]);
                let want = self.row1[k - 1].sub(&self.row0[k - 1]).unwrap();
                if got != want {
                    report.push(
                        k,
                        None,
                        format!("row{r}: d(entry {k}) = {got}, expected {want}"),
                    );
                }
            }
        }
        if self.row0[self.dim()] != self.row1[self.dim()] {
            report.push(self.dim(), None, "top entries of the two rows differ".to_string());
        }
        report
    }

    fn boundary(&self, eps: u8) -> Result<Cell, CellError> {
        let i = self.dim();
        if i == 0 {
            return Err(CellError::ZeroDimensional);
        }
        let keep = self.entry(eps, i - 1).clone();
        let mut row0 = self.row0[..i].to_vec();
        let mut row1 = self.row1[..i].to_vec();
        row0[i - 1] = keep.clone();
        row1[i - 1] = keep;
        Ok(Cell { complex: self.complex.clone(), row0, row1 })
    }

    /// The (dim−1)-source: drop the top column and collapse the next one
    /// onto its row-0 entry.
    pub fn source(&self) -> Result<Cell, CellError> {
        self.boundary(0)
    }

    /// The (dim−1)-target: drop the top column and collapse the next one
    /// onto its row-1 entry.
    pub fn target(&self) -> Result<Cell, CellError> {
        self.boundary(1)
    }

    /// Iterated source down to dimension j (identity at j = dim).
    pub fn source_at(&self, j: usize) -> Result<Cell, CellError> {
        let mut c = self.clone();
        while c.dim() > j {
            c = c.source()?;
        }
        Ok(c)
    }

    /// Iterated target down to dimension j (identity at j = dim).
    pub fn target_at(&self, j: usize) -> Result<Cell, CellError> {
        let mut c = self.clone();
        while c.dim() > j {
            c = c.target()?;
        }
        Ok(c)
    }

    /// The identity (dim+1)-cell: append a zero column.
    pub fn identity(&self) -> Cell {
        let mut row0 = self.row0.clone();
        let mut row1 = self.row1.clone();
        row0.push(Chain::zero(self.dim() + 1));
        row1.push(Chain::zero(self.dim() + 1));
        Cell { complex: self.complex.clone(), row0, row1 }
    }

    /// Iterated identities up to dimension `dim ≥ self.dim()`.
    pub fn identity_at(&self, dim: usize) -> Cell {
        let mut c = self.clone();
        while c.dim() < dim {
            c = c.identity();
        }
        c
    }

    /// Whether the cell is an identity: zero top and, below it, equal rows.
    /// For valid tables the second condition follows from the first;
    /// 0-cells are never identities.
    pub fn is_identity(&self) -> bool {
        let i = self.dim();
        i >= 1 && self.top().is_zero() && self.row0[i - 1] == self.row1[i - 1]
    }

    /// Whether every entry above level j is zero, i.e. the cell is an
    /// iterated identity of its own j-boundary.
    pub fn is_identity_above(&self, j: usize) -> bool {
        (j + 1..=self.dim()).all(|k| self.row0[k].is_zero() && self.row1[k].is_zero())
    }

    /// The dual cell over [`Adc::j_dual`]: degree-j duality swaps the two
    /// rows at column j−1 for each j in the set. Involution; exchanges the
    /// (j−1)-sources and (j−1)-targets.
    pub fn dual(&self, j: &BTreeSet<usize>) -> Cell {
        let complex = Arc::new(self.complex.j_dual(j));
        let mut row0 = self.row0.clone();
        let mut row1 = self.row1.clone();
        for &degree in j {
            if degree >= 1 && degree - 1 < row0.len() {
                std::mem::swap(&mut row0[degree - 1], &mut row1[degree - 1]);
            }
        }
        Cell { complex, row0, row1 }
    }

    /// Largest absolute coefficient over all entries (0 for identity-like
    /// all-zero tables).
    pub fn max_coeff(&self) -> num_bigint::BigInt {
        self.row0
            .iter()
            .chain(self.row1.iter())
            .map(Chain::max_abs_coeff)
            .max()
            .unwrap_or_default()
    }

    /// The cell one dimension above `u` whose source is `u`, whose target
    /// is `v`, and whose top is `top`: u's rows extended by (top; v's top,
    /// top). Callers guarantee u ∥ v and deg(top) = dim + 1.
    pub(crate) fn raise(u: &Cell, v: &Cell, top: Chain) -> Cell {
        let i = u.dim() + 1;
        let mut row0 = u.row0.clone();
        row0.push(top.clone());
        let mut row1 = u.row1[..i - 1].to_vec();
        row1.push(v.top().clone());
        row1.push(top);
        Cell::new(u.complex.clone(), row0, row1).expect("raised rows are structurally valid")
    }

    /// Key identifying the boundary data: everything but the top column.
    /// Two cells of equal dimension are parallel iff their keys agree.
    pub(crate) fn parallel_key(&self) -> (Vec<Chain>, Vec<Chain>) {
        let i = self.dim();
        (self.row0[..i].to_vec(), self.row1[..i].to_vec())
    }

    /// Whether `other` has the same dimension, source, and target.
    pub fn is_parallel_to(&self, other: &Cell) -> bool {
        self.dim() == other.dim() && self.parallel_key() == other.parallel_key()
    }
}

/// The composite x ∘_j y: y's rows up to level j, x's row 1 up to level j,
/// sums above. Cells of different dimensions are padded with identities
/// first; requires j < min(dim x, dim y) and s_j(x) = t_j(y).
pub fn compose(j: usize, x: &Cell, y: &Cell) -> Result<Cell, CellError> {
    if !(Arc::ptr_eq(&x.complex, &y.complex) || x.complex == y.complex) {
        return Err(CellError::ComplexMismatch);
    }
    if j >= x.dim() || j >= y.dim() {
        return Err(CellError::CompositionIndex { j, xdim: x.dim(), ydim: y.dim() });
    }
    let dim = x.dim().max(y.dim());
    let x = x.identity_at(dim);
    let y = y.identity_at(dim);
    if x.source_at(j)? != y.target_at(j)? {
        return Err(CellError::CompositionBoundary { j });
    }
    let mut row0 = Vec::with_capacity(dim + 1);
    let mut row1 = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        if k <= j {
            row0.push(y.row0[k].clone());
            row1.push(x.row1[k].clone());
        } else {
            row0.push(x.row0[k].add(&y.row0[k]).unwrap());
            row1.push(x.row1[k].add(&y.row1[k]).unwrap());
        }
    }
    Ok(Cell { complex: x.complex.clone(), row0, row1 })
}

/// The counit to the underlying complex: the top chain. Additive on
/// composites, zero exactly on identities, and sends atoms to their basis
/// elements.
pub fn lambda_counit(c: &Cell) -> Chain {
    c.top().clone()
}

impl fmt::Display for Cell {
    /// Two-row matrix form: `((0),(0,2),(0,1,2);(2),(0,1)+(1,2),(0,1,2))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |row: &[Chain]| {
            row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "({};{})", row(&self.row0), row(&self.row1))
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("dim", &self.dim())?;
        map.serialize_entry("row0", &self.row0)?;
        map.serialize_entry("row1", &self.row1)?;
        map.end()
    }
}

/// Complex-free cell table as it appears in JSON; attach a complex with
/// [`Cell::from_data`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellData {
    pub dim: usize,
    pub row0: Vec<Chain>,
    pub row1: Vec<Chain>,
}

impl Cell {
    pub fn from_data(complex: Arc<Adc>, data: CellData) -> Result<Cell, CellError> {
        if data.row0.len() != data.dim + 1 || data.row1.len() != data.dim + 1 {
            return Err(CellError::RowShape { row0: data.row0.len(), row1: data.row1.len() });
        }
        Cell::new(complex, data.row0, data.row1)
    }

    pub fn to_data(&self) -> CellData {
        CellData { dim: self.dim(), row0: self.row0.clone(), row1: self.row1.clone() }
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;

    #[test]
    fn alpha_is_a_valid_cell() {
        let k = triangle();
        assert!(alpha(&k).validate().is_valid());
    }

    #[test]
    fn corrupted_boundary_is_reported() {
        let k = triangle();
        let a = alpha(&k);
        let broken = Cell::new(
            k.clone(),
            a.row0().to_vec(),
            vec![
                a.row1()[0].clone(),
                ch(1, &[("(0,1)", 1)]),
                a.row1()[2].clone(),
            ],
        )
        .unwrap();
        let report = broken.validate();
        assert!(!report.is_valid());
        // d of the top no longer matches row1[1] − row0[1].
        assert!(report.violations.iter().any(|v| v.degree == 2));
    }

    #[test]
    fn objects_validate() {
        let k = triangle();
        let obj = Cell::object(k.clone(), ch(0, &[("(0)", 1)])).unwrap();
        assert!(obj.validate().is_valid());
        assert_eq!(obj.dim(), 0);
        assert!(obj.source().is_err());
    }

    #[test]
    fn source_and_target_of_alpha() {
        let k = triangle();
        let a = alpha(&k);
        let s = a.source().unwrap();
        assert_eq!(s.to_string(), "((0),(0,2);(2),(0,2))");
        assert!(s.validate().is_valid());
        let t = a.target().unwrap();
        assert_eq!(t.top(), &ch(1, &[("(0,1)", 1), ("(1,2)", 1)]));
        assert!(t.validate().is_valid());
        let s0 = a.source_at(0).unwrap();
        assert_eq!(s0.top(), &ch(0, &[("(0)", 1)]));
        let t0 = a.target_at(0).unwrap();
        assert_eq!(t0.top(), &ch(0, &[("(2)", 1)]));
    }

    #[test]
    fn globularity_of_boundaries() {
        let k = triangle();
        let a = alpha(&k);
        assert_eq!(a.source().unwrap().source().unwrap(), a.target().unwrap().source().unwrap());
        assert_eq!(a.source().unwrap().target().unwrap(), a.target().unwrap().target().unwrap());
    }

    #[test]
    fn identity_round_trip() {
        let k = triangle();
        let obj = Cell::object(k.clone(), ch(0, &[("(0)", 1)])).unwrap();
        let id = obj.identity();
        assert_eq!(id.to_string(), "((0),0;(0),0)");
        assert!(id.validate().is_valid());
        assert!(id.is_identity());
        assert_eq!(id.source().unwrap(), obj);
        assert_eq!(id.target().unwrap(), obj);

        let a = alpha(&k);
        assert!(!a.is_identity());
        assert!(a.identity().is_identity());
        assert_eq!(a.identity().source().unwrap(), a);
    }

    #[test]
    fn composition_of_edges() {
        let k = triangle();
        let e01 = Cell::new(
            k.clone(),
            vec![ch(0, &[("(0)", 1)]), ch(1, &[("(0,1)", 1)])],
            vec![ch(0, &[("(1)", 1)]), ch(1, &[("(0,1)", 1)])],
        )
        .unwrap();
        let e12 = Cell::new(
            k.clone(),
            vec![ch(0, &[("(1)", 1)]), ch(1, &[("(1,2)", 1)])],
            vec![ch(0, &[("(2)", 1)]), ch(1, &[("(1,2)", 1)])],
        )
        .unwrap();
        let path = compose(0, &e12, &e01).unwrap();
        assert_eq!(path.to_string(), "((0),(0,1)+(1,2);(2),(0,1)+(1,2))");
        assert!(path.validate().is_valid());
        assert_eq!(lambda_counit(&path), ch(1, &[("(0,1)", 1), ("(1,2)", 1)]));

        // Wrong order fails the boundary condition.
        assert_eq!(
            compose(0, &e01, &e12).unwrap_err(),
            CellError::CompositionBoundary { j: 0 },
        );
    }

    #[test]
    fn unit_laws() {
        let k = triangle();
        let a = alpha(&k);
        let s1 = a.source().unwrap();
        assert_eq!(compose(1, &a, &s1.identity()).unwrap(), a);
        assert_eq!(compose(1, &a.target().unwrap().identity(), &a).unwrap(), a);
        // Whiskering with a padded object: 1_(0) ∘₀ nothing to attach on
        // the left of α's 0-source is α itself.
        let left = a.source_at(0).unwrap();
        assert_eq!(compose(0, &a, &left.identity()).unwrap(), a);
    }

    #[test]
    fn composite_boundaries_are_globular() {
        let k = triangle();
        let a = alpha(&k);
        let id_t = a.target().unwrap().identity();
        let c = compose(1, &id_t, &a).unwrap();
        assert_eq!(c.source_at(1).unwrap(), a.source().unwrap());
        assert_eq!(c.target_at(1).unwrap(), a.target().unwrap());
        assert_eq!(c, a);
    }

    #[test]
    fn lambda_counit_is_additive_and_kills_identities() {
        let k = triangle();
        let a = alpha(&k);
        let c = compose(1, &a.target().unwrap().identity(), &a).unwrap();
        assert_eq!(
            lambda_counit(&c),
            lambda_counit(&a).add(&lambda_counit(&a.target().unwrap().identity())).unwrap(),
        );
        assert!(lambda_counit(&a.identity()).is_zero());
    }

    #[test]
    fn dual_cells_validate_over_the_dual_complex() {
        let k = triangle();
        let a = alpha(&k);
        let all: BTreeSet<usize> = [1, 2].into();
        let d = a.dual(&all);
        assert!(d.validate().is_valid());
        assert_eq!(d.complex().as_ref(), &k.op_dual());
        // Involution.
        assert_eq!(d.dual(&all), a);
        // Objects exchanged at level 0.
        assert_eq!(d.source_at(0).unwrap().top(), a.target_at(0).unwrap().top());
        // Empty set is the identity.
        assert_eq!(a.dual(&BTreeSet::new()), a);
    }

    #[test]
    fn single_degree_dual_swaps_only_that_level() {
        let k = triangle();
        let a = alpha(&k);
        let j: BTreeSet<usize> = [2].into();
        let d = a.dual(&j);
        assert!(d.validate().is_valid());
        assert_eq!(d.row0()[0], a.row0()[0]);
        assert_eq!(d.row0()[1], a.row1()[1]);
        assert_eq!(d.dual(&j), a);
    }

    #[test]
    fn cell_json_round_trip() {
        let k = triangle();
        let a = alpha(&k);
        let js = serde_json::to_string(&a).unwrap();
        assert!(js.starts_with("{\"dim\":2,\"row0\":"));
        let data: CellData = serde_json::from_str(&js).unwrap();
        let back = Cell::from_data(k.clone(), data).unwrap();
        assert_eq!(back, a);
    }
}
