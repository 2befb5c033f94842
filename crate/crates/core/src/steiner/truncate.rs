//! Intelligent n-truncation of an enumerated ν-category.
//!
//! The n-cells are partitioned by the equivalence generated by "source and
//! target of a common (n+1)-cell". This is meaningful only when the
//! enumeration is complete at dimensions n and n+1, hence the
//! [`CellError::IncompleteEnumeration`] guard.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::chains::Chain;

use super::{Cell, CellError, Enumeration};

type Rows = (Vec<Chain>, Vec<Chain>);

fn rows_of(c: &Cell) -> Rows {
    (c.row0().to_vec(), c.row1().to_vec())
}

/// Partition of the n-cells into connectivity classes.
#[derive(Debug, Clone)]
pub struct Truncation {
    level: usize,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    index: BTreeMap<Rows, usize>,
}

impl Truncation {
    /// The dimension whose cells are being identified.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes as sorted lists of cell indices into the enumeration's
    /// level-n list, ordered by their smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Class of the cell at a given index.
    pub fn class_of_index(&self, idx: usize) -> usize {
        self.class_of[idx]
    }

    /// Class of a cell, if it was enumerated.
    pub fn class_of(&self, cell: &Cell) -> Option<usize> {
        if cell.dim() != self.level {
            return None;
        }
        self.index.get(&rows_of(cell)).map(|&i| self.class_of[i])
    }
}

/// Identifies n-cells connected by an (n+1)-cell, transitively. Requires
/// the enumeration to be complete (not truncated) and to reach dimension
/// n+1.
pub fn truncate_intelligent(e: &Enumeration, n: usize) -> Result<Truncation, CellError> {
    if e.truncated() || e.max_dim() < n + 1 {
        return Err(CellError::IncompleteEnumeration);
    }
    let cells = e.cells(n);
    let index: BTreeMap<Rows, usize> =
        cells.iter().enumerate().map(|(i, c)| (rows_of(c), i)).collect();
    let mut uf = UnionFind::<usize>::new(cells.len());
    for z in e.cells(n + 1) {
        let lookup = |side: Result<Cell, CellError>| -> usize {
            let cell = side.expect("cells above dimension 0 have boundaries");
            *index
                .get(&rows_of(&cell))
                .expect("boundaries of enumerated cells are enumerated")
        };
        uf.union(lookup(z.source()), lookup(z.target()));
    }
    let labels = uf.into_labeling();
    let mut class_of = vec![0usize; cells.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut rep_to_class: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &rep) in labels.iter().enumerate() {
        let class = *rep_to_class.entry(rep).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        class_of[i] = class;
        classes[class].push(i);
    }
    Ok(Truncation { level: n, class_of, classes, index })
}
