//! Bounded decomposition of cells into atoms, identities, and composites.
//!
//! The search enumerates all cells of the same dimension whose coefficients
//! fit inside the decomposed cell's largest coefficient, then tries to
//! split the cell as x ∘_j y over ordered pairs of non-j-trivial factors,
//! highest j first. Entries above level j of a composite are the sums of
//! the factors' entries, so each factor is strictly smaller there and the
//! recursion terminates; the step budget merely caps the work.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::adc::Adc;
use crate::chains::{BasisElement, Name};

use super::atom::atom;
use super::enumerate::{enumerate_cells, Enumeration};
use super::{compose, Cell, CellError};

/// Expression over ν(K): an atom of a basis element, an identity of a
/// lower cell, or a j-composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprTree {
    Atom(Name),
    Identity(Box<ExprTree>),
    Compose { j: usize, left: Box<ExprTree>, right: Box<ExprTree> },
}

impl fmt::Display for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprTree::Atom(name) => write!(f, "<{name}>"),
            ExprTree::Identity(inner) => write!(f, "id({inner})"),
            ExprTree::Compose { j, left, right } => write!(f, "({left} o{j} {right})"),
        }
    }
}

impl Serialize for ExprTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            ExprTree::Atom(name) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("atom", &name.to_string())?;
                map.end()
            }
            ExprTree::Identity(inner) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("op", "identity")?;
                map.serialize_entry("cell", inner)?;
                map.end()
            }
            ExprTree::Compose { j, left, right } => {
                let mut map = serializer.serialize_map(Some(4))?;
                map.serialize_entry("op", "compose")?;
                map.serialize_entry("j", j)?;
                map.serialize_entry("left", left)?;
                map.serialize_entry("right", right)?;
                map.end()
            }
        }
    }
}

#[derive(Deserialize)]
struct ExprRepr {
    atom: Option<String>,
    op: Option<String>,
    j: Option<usize>,
    left: Option<Box<ExprRepr>>,
    right: Option<Box<ExprRepr>>,
    cell: Option<Box<ExprRepr>>,
}

fn expr_from_repr(r: ExprRepr) -> Result<ExprTree, String> {
    match (r.atom, r.op.as_deref()) {
        (Some(name), None) => Ok(ExprTree::Atom(name.parse().expect("name parsing is total"))),
        (None, Some("identity")) => {
            let cell = r.cell.ok_or("identity needs a \"cell\" field")?;
            Ok(ExprTree::Identity(Box::new(expr_from_repr(*cell)?)))
        }
        (None, Some("compose")) => {
            let j = r.j.ok_or("compose needs a \"j\" field")?;
            let left = r.left.ok_or("compose needs a \"left\" field")?;
            let right = r.right.ok_or("compose needs a \"right\" field")?;
            Ok(ExprTree::Compose {
                j,
                left: Box::new(expr_from_repr(*left)?),
                right: Box::new(expr_from_repr(*right)?),
            })
        }
        (None, Some(other)) => Err(format!("unknown op {other:?}")),
        _ => Err("expected {\"atom\": …} or an \"op\" object".to_string()),
    }
}

impl<'de> Deserialize<'de> for ExprTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ExprRepr::deserialize(deserializer)?;
        expr_from_repr(repr).map_err(serde::de::Error::custom)
    }
}

/// Evaluates an expression to a cell over the given complex.
pub fn eval_expr(k: &Arc<Adc>, expr: &ExprTree) -> Result<Cell, CellError> {
    match expr {
        ExprTree::Atom(name) => {
            let degree = k
                .degree_of(name)
                .ok_or_else(|| CellError::UnknownAtom(name.to_string()))?;
            Ok(atom(k, &BasisElement::new(degree, name.clone())).0)
        }
        ExprTree::Identity(inner) => Ok(eval_expr(k, inner)?.identity()),
        ExprTree::Compose { j, left, right } => {
            compose(*j, &eval_expr(k, left)?, &eval_expr(k, right)?)
        }
    }
}

fn search(c: &Cell, e: &Enumeration, steps: &mut usize) -> Option<ExprTree> {
    if *steps == 0 {
        return None;
    }
    *steps -= 1;

    if c.top().num_terms() == 1 {
        let (name, coeff) = c.top().terms().next().unwrap();
        if coeff == &BigInt::one() {
            let (candidate, _) = atom(c.complex(), &BasisElement::new(c.dim(), name.clone()));
            if &candidate == c {
                return Some(ExprTree::Atom(name.clone()));
            }
        }
    }
    if c.is_identity() {
        let inner = c.source().expect("identities have positive dimension");
        return search(&inner, e, steps).map(|t| ExprTree::Identity(Box::new(t)));
    }
    if c.dim() == 0 {
        return None;
    }

    let peers = e.cells(c.dim());
    for j in (0..c.dim()).rev() {
        for x in peers {
            if *steps == 0 {
                return None;
            }
            if x.is_identity_above(j) || x.row1()[..=j] != c.row1()[..=j] {
                continue;
            }
            for y in peers {
                if y.is_identity_above(j)
                    || y.row0()[..=j] != c.row0()[..=j]
                    || &x.top().add(y.top()).unwrap() != c.top()
                {
                    continue;
                }
                match compose(j, x, y) {
                    Ok(candidate) if &candidate == c => {}
                    _ => continue,
                }
                if let Some(left) = search(x, e, steps) {
                    if let Some(right) = search(y, e, steps) {
                        return Some(ExprTree::Compose {
                            j,
                            left: Box::new(left),
                            right: Box::new(right),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Writes a cell as an expression in atoms, identities, and composites, or
/// `None` if no such expression exists within the step budget. The
/// enumeration cap is the cell's own largest coefficient, which bounds
/// every factor of a nonnegative composite.
pub fn decompose_cell(c: &Cell, budget: usize) -> Option<ExprTree> {
    let mut cap = c.max_coeff();
    if cap < BigInt::one() {
        cap = BigInt::one();
    }
    let e = enumerate_cells(c.complex(), c.dim(), &cap);
    let mut steps = budget;
    search(c, &e, &mut steps)
}
