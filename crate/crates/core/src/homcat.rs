//! Hom-categories between parallel cells of orientals of posets.
//!
//! Over the oriental of a finite poset, 1-cells are exactly the nonempty
//! totally ordered subsets, with endpoints their minimum and maximum and
//! composition their union. A 2-cell from one subset to another exists
//! precisely when the first is contained in the second, and an explicit
//! witness is assembled from single-insertion triangles. Hom cells between
//! parallel cells are the higher cells whose iterated boundaries freeze at
//! those cells; restricting to a totally ordered subset induces a bijection
//! on them. Cells sitting between a cut path and the unit path split into
//! interval factors whose horizontal composite recovers the cell, and the
//! inclusion-ordered subsets describe the 2-truncation directly.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::adc::{Adc, Report};
use crate::chains::{BasisElement, Chain, Name};
use crate::simplicial::{poset_oriental_adc, xi, Poset};
use crate::steiner::{
    atom, compose, enumerate_cells, truncate_intelligent, Cell, CellError, Enumeration,
};

/// Errors for Hom-category constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomcatError {
    #[error("{0} is not a strictly increasing chain of the order")]
    NotAChain(String),
    #[error("the enumerated one-cells do not match the totally ordered subsets")]
    OneCellMismatch,
    #[error("the cells are not supported inside the subset")]
    OutsideSubposet,
    #[error("the cell does not satisfy the interval-splitting hypotheses")]
    SplitHypotheses,
    #[error("nothing to merge")]
    NothingToMerge,
    #[error(transparent)]
    Cell(#[from] CellError),
}

/// The 1-cell of a poset oriental named by a totally ordered subset:
/// endpoints its minimum and maximum, top the path of consecutive pairs.
/// Singletons give identities.
pub fn one_cell_of_chain(k: &Arc<Adc>, subset: &[u32]) -> Result<Cell, HomcatError> {
    if subset.is_empty() || subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HomcatError::NotAChain(format!("{subset:?}")));
    }
    let source = Chain::generator(0, Name::Simplex(vec![subset[0]]));
    let target = Chain::generator(0, Name::Simplex(vec![*subset.last().unwrap()]));
    let top = Chain::from_terms(
        1,
        subset.windows(2).map(|w| (Name::Simplex(vec![w[0], w[1]]), 1)),
    );
    Ok(Cell::new(k.clone(), vec![source, top.clone()], vec![target, top])?)
}

/// The bijection between the nonempty totally ordered subsets and the
/// enumerated 1-cells of the poset oriental, in subset order. The cap must
/// be generous enough for a complete dimension-1 enumeration.
pub fn one_cells_of_poset_oriental(
    poset: &Poset,
    cap: &BigInt,
) -> Result<Vec<(Vec<u32>, Cell)>, HomcatError> {
    let k = Arc::new(poset_oriental_adc(poset));
    let e = enumerate_cells(&k, 1, cap);
    if e.truncated() {
        return Err(CellError::IncompleteEnumeration.into());
    }
    let subsets = xi(poset);
    if subsets.len() != e.cells(1).len() {
        return Err(HomcatError::OneCellMismatch);
    }
    let mut out = Vec::with_capacity(subsets.len());
    for subset in subsets {
        let cell = one_cell_of_chain(&k, &subset)?;
        if e.position_of(&cell).is_none() {
            return Err(HomcatError::OneCellMismatch);
        }
        out.push((subset, cell));
    }
    Ok(out)
}

/// A 2-cell from the 1-cell of `from` to the 1-cell of `to` when
/// `from ⊆ to`, and `None` otherwise (no 2-cell exists then). The witness
/// stacks single-insertion steps vertically; each step whiskers the
/// triangle atom of the inserted element between the unchanged stretches.
pub fn two_cell_witness(
    k: &Arc<Adc>,
    from: &[u32],
    to: &[u32],
) -> Result<Option<Cell>, HomcatError> {
    let lower = one_cell_of_chain(k, from)?;
    let upper = one_cell_of_chain(k, to)?;
    if !lower.is_parallel_to(&upper) {
        return Err(CellError::NotParallel.into());
    }
    let from_set: BTreeSet<u32> = from.iter().copied().collect();
    let to_set: BTreeSet<u32> = to.iter().copied().collect();
    if !from_set.is_subset(&to_set) {
        return Ok(None);
    }
    let mut current: Vec<u32> = from.to_vec();
    let mut acc = lower.identity();
    for &inserted in to_set.difference(&from_set) {
        let at = current.partition_point(|&l| l < inserted);
        let before = current[at - 1];
        let after = current[at];
        current.insert(at, inserted);
        let head = one_cell_of_chain(k, &current[..at])?;
        let tail = one_cell_of_chain(k, &current[at + 1..])?;
        let (triangle, unit) = atom(
            k,
            &BasisElement::new(2, Name::Simplex(vec![before, inserted, after])),
        );
        debug_assert!(unit, "triangle atoms over vertex complexes are unitary");
        let step = compose(0, &tail, &compose(0, &triangle, &head)?)?;
        acc = compose(1, &step, &acc)?;
    }
    Ok(Some(acc))
}

/// The j-dimensional Hom cells between parallel i-cells a and b: the
/// enumerated (i+1+j)-cells whose iterated i-source is a and i-target is
/// b, so their lower rows are frozen at a and b's tables. Requires a
/// complete enumeration up to that dimension.
pub fn hom_cells(
    e: &Enumeration,
    a: &Cell,
    b: &Cell,
    j: usize,
) -> Result<Vec<Cell>, CellError> {
    if a.complex() != e.complex() || b.complex() != e.complex() {
        return Err(CellError::ComplexMismatch);
    }
    if !a.is_parallel_to(b) {
        return Err(CellError::NotParallel);
    }
    let i = a.dim();
    let dim = i + 1 + j;
    if e.truncated() || e.max_dim() < dim {
        return Err(CellError::IncompleteEnumeration);
    }
    Ok(e.cells(dim)
        .iter()
        .filter(|z| {
            z.source_at(i).map_or(false, |s| &s == a) && z.target_at(i).map_or(false, |t| &t == b)
        })
        .cloned()
        .collect())
}

fn rows_of(c: &Cell) -> (Vec<Chain>, Vec<Chain>) {
    (c.row0().to_vec(), c.row1().to_vec())
}

/// The chain sub-complex spanned by tuples inside the subset.
fn chain_sub_adc(k: &Adc, inside: &BTreeSet<u32>) -> Adc {
    let keep = |name: &&Name| match name {
        Name::Simplex(t) => t.iter().all(|v| inside.contains(v)),
        Name::Token(_) => false,
    };
    let max_degree = k.max_degree().min(inside.len().saturating_sub(1));
    let mut basis = Vec::with_capacity(max_degree + 1);
    let mut diff = Vec::new();
    let mut aug = Vec::new();
    for p in 0..=max_degree {
        let names: Vec<Name> = k.basis(p).iter().filter(keep).cloned().collect();
        for name in &names {
            if p == 0 {
                aug.push((name.clone(), k.aug_of(name)));
            } else {
                diff.push((name.clone(), k.diff_of(p, name)));
            }
        }
        basis.push(names);
    }
    Adc::new(max_degree, basis, diff, aug).expect("chain restrictions stay structurally valid")
}

/// Per-dimension cell counts of a Hom restriction, with the violations
/// found while matching the included cells against the ambient ones.
#[derive(Debug, Clone)]
pub struct RestrictionReport {
    /// `(inside, ambient)` Hom cell counts for each dimension checked.
    pub counts: Vec<(usize, usize)>,
    pub report: Report,
}

impl RestrictionReport {
    pub fn is_valid(&self) -> bool {
        self.report.is_valid()
    }
}

/// Checks that the inclusion of a totally ordered subset induces a
/// bijection on the Hom cells between two parallel cells supported inside
/// it, dimension by dimension up to `bound`.
pub fn restrict_hom_iso(
    poset: &Poset,
    subset: &[u32],
    a: &Cell,
    b: &Cell,
    bound: usize,
    cap: &BigInt,
) -> Result<RestrictionReport, HomcatError> {
    let ambient = Arc::new(poset_oriental_adc(poset));
    if a.complex().as_ref() != ambient.as_ref() || b.complex().as_ref() != ambient.as_ref() {
        return Err(CellError::ComplexMismatch.into());
    }
    if !a.is_parallel_to(b) {
        return Err(CellError::NotParallel.into());
    }
    if subset.is_empty()
        || subset
            .windows(2)
            .any(|w| w[0] >= w[1] || !poset.leq_idx(w[0] as usize, w[1] as usize))
    {
        return Err(HomcatError::NotAChain(format!("{subset:?}")));
    }
    let inside: BTreeSet<u32> = subset.iter().copied().collect();
    let supported = |c: &Cell| {
        c.row0().iter().chain(c.row1()).all(|chain| {
            chain.support().all(|n| match n {
                Name::Simplex(t) => t.iter().all(|v| inside.contains(v)),
                Name::Token(_) => false,
            })
        })
    };
    if !supported(a) || !supported(b) {
        return Err(HomcatError::OutsideSubposet);
    }

    let sub = Arc::new(chain_sub_adc(&ambient, &inside));
    let a_sub = Cell::new(sub.clone(), a.row0().to_vec(), a.row1().to_vec())?;
    let b_sub = Cell::new(sub.clone(), b.row0().to_vec(), b.row1().to_vec())?;
    let top_dim = a.dim() + 1 + bound;
    let e_sub = enumerate_cells(&sub, top_dim, cap);
    let e_ambient = enumerate_cells(&ambient, top_dim, cap);
    if e_sub.truncated() || e_ambient.truncated() {
        return Err(CellError::IncompleteEnumeration.into());
    }

    let mut counts = Vec::with_capacity(bound + 1);
    let mut report = Report::default();
    for j in 0..=bound {
        let inside_cells = hom_cells(&e_sub, &a_sub, &b_sub, j)?;
        let ambient_cells = hom_cells(&e_ambient, a, b, j)?;
        let ambient_rows: BTreeSet<_> = ambient_cells.iter().map(rows_of).collect();
        for z in &inside_cells {
            if !ambient_rows.contains(&rows_of(z)) {
                report.push(
                    z.dim(),
                    None,
                    format!("included Hom cell {z} is missing from the ambient oriental"),
                );
            }
        }
        if inside_cells.len() != ambient_cells.len() {
            report.push(
                a.dim() + 1 + j,
                None,
                format!(
                    "Hom dimension {j}: {} cells inside the subset, {} in the ambient oriental",
                    inside_cells.len(),
                    ambient_cells.len()
                ),
            );
        }
        counts.push((inside_cells.len(), ambient_cells.len()));
    }
    Ok(RestrictionReport { counts, report })
}

fn restrict_window(chain: &Chain, lo: u32, hi: u32) -> Chain {
    Chain::from_terms(
        chain.degree(),
        chain.terms().filter_map(|(n, c)| match n {
            Name::Simplex(t) if t[0] >= lo && *t.last().unwrap() <= hi => {
                Some((n.clone(), c.clone()))
            }
            _ => None,
        }),
    )
}

/// Splits a cell running from the cut path to the unit path into its
/// interval factors: the factor for [i_{k−1}, i_k] keeps the entries
/// supported inside that window, with endpoints, single jump, and interval
/// unit path pinned in the two lowest degrees. [`merge_cells`] recovers
/// the cell as the horizontal composite of the factors.
pub fn split_cell(x: &Cell, cuts: &[u32]) -> Result<Vec<Cell>, HomcatError> {
    let q = x.dim();
    if q < 2 || cuts.len() < 2 || cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HomcatError::SplitHypotheses);
    }
    let lo = cuts[0];
    let hi = *cuts.last().unwrap();
    let vertex = |i: u32| Chain::generator(0, Name::Simplex(vec![i]));
    let unit_path = |a: u32, b: u32| {
        Chain::from_terms(1, (a + 1..=b).map(|l| (Name::Simplex(vec![l - 1, l]), 1)))
    };
    let cut_path = Chain::from_terms(
        1,
        cuts.windows(2).map(|w| (Name::Simplex(vec![w[0], w[1]]), 1)),
    );
    if x.row0()[0] != vertex(lo)
        || x.row1()[0] != vertex(hi)
        || x.row0()[1] != cut_path
        || x.row1()[1] != unit_path(lo, hi)
    {
        return Err(HomcatError::SplitHypotheses);
    }
    if x.row0()
        .iter()
        .chain(x.row1())
        .any(|chain| chain.support().any(|n| n.as_simplex().is_none()))
    {
        return Err(HomcatError::SplitHypotheses);
    }

    let mut pieces = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut row0 = vec![vertex(a), Chain::generator(1, Name::Simplex(vec![a, b]))];
        let mut row1 = vec![vertex(b), unit_path(a, b)];
        for p in 2..=q {
            row0.push(restrict_window(&x.row0()[p], a, b));
            row1.push(restrict_window(&x.row1()[p], a, b));
        }
        let piece = Cell::new(x.complex().clone(), row0, row1)?;
        if !piece.validate().is_valid() {
            return Err(HomcatError::SplitHypotheses);
        }
        pieces.push(piece);
    }
    // No coefficient may straddle a cut: the window restrictions must sum
    // back to the original entries.
    for p in 2..=q {
        for row in [0, 1] {
            let pick = |c: &Cell| if row == 0 { c.row0()[p].clone() } else { c.row1()[p].clone() };
            let mut sum = Chain::zero(p);
            for piece in &pieces {
                sum = sum.add(&pick(piece)).expect("window restrictions share the degree");
            }
            if sum != pick(x) {
                return Err(HomcatError::SplitHypotheses);
            }
        }
    }
    Ok(pieces)
}

/// Horizontal composite of consecutive factors, leftmost first.
pub fn merge_cells(pieces: &[Cell]) -> Result<Cell, HomcatError> {
    let mut iter = pieces.iter();
    let first = iter.next().ok_or(HomcatError::NothingToMerge)?.clone();
    iter.try_fold(first, |acc, piece| Ok(compose(0, piece, &acc)?))
}

/// One Hom poset of the direct 2-truncation: the totally ordered subsets
/// with the given endpoints, ordered by inclusion. `leq` lists the strict
/// inclusion pairs as element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomPoset {
    pub source: String,
    pub target: String,
    pub elements: Vec<Vec<String>>,
    pub leq: Vec<(usize, usize)>,
}

/// One horizontal-composition table: `table[g][f]` is the index in
/// `Hom(from, to)` of the union of the f-th element of `Hom(from, mid)`
/// and the g-th element of `Hom(mid, to)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionTable {
    pub from: String,
    pub mid: String,
    pub to: String,
    pub table: Vec<Vec<usize>>,
}

/// The 2-truncation of a poset oriental, described directly: objects the
/// elements, Hom posets the inclusion-ordered totally ordered subsets with
/// fixed endpoints, horizontal composition the union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoTruncation {
    pub objects: Vec<String>,
    pub homs: Vec<HomPoset>,
    pub compositions: Vec<CompositionTable>,
}

fn is_subset(u: &[u32], v: &[u32]) -> bool {
    u.iter().all(|x| v.binary_search(x).is_ok())
}

fn union_sorted(u: &[u32], v: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = u.iter().chain(v).copied().collect();
    out.sort();
    out.dedup();
    out
}

pub fn truncation2_of_poset_oriental(poset: &Poset) -> TwoTruncation {
    let mut hom_map: BTreeMap<(u32, u32), Vec<Vec<u32>>> = BTreeMap::new();
    for subset in xi(poset) {
        let key = (subset[0], *subset.last().unwrap());
        hom_map.entry(key).or_default().push(subset);
    }
    let token = |i: u32| poset.token(i as usize).to_string();
    let tokens = |s: &[u32]| s.iter().map(|&i| token(i)).collect::<Vec<_>>();

    let mut homs = Vec::with_capacity(hom_map.len());
    for ((a, b), elems) in &hom_map {
        let mut leq = Vec::new();
        for (ui, u) in elems.iter().enumerate() {
            for (vi, v) in elems.iter().enumerate() {
                if ui != vi && is_subset(u, v) {
                    leq.push((ui, vi));
                }
            }
        }
        homs.push(HomPoset {
            source: token(*a),
            target: token(*b),
            elements: elems.iter().map(|s| tokens(s)).collect(),
            leq,
        });
    }

    let mut compositions = Vec::new();
    for ((a, b), firsts) in &hom_map {
        for ((b2, c), seconds) in &hom_map {
            if b2 != b {
                continue;
            }
            let composites = &hom_map[&(*a, *c)];
            let table = seconds
                .iter()
                .map(|g| {
                    firsts
                        .iter()
                        .map(|f| {
                            composites
                                .binary_search(&union_sorted(f, g))
                                .expect("unions of composable chains are chains")
                        })
                        .collect()
                })
                .collect();
            compositions.push(CompositionTable {
                from: token(*a),
                mid: token(*b),
                to: token(*c),
                table,
            });
        }
    }

    TwoTruncation { objects: poset.tokens().to_vec(), homs, compositions }
}

/// Cross-checks the direct 2-truncation against the enumerated oriental:
/// objects against 0-cells, Hom elements against 1-cells, the inclusion
/// order against 2-cell existence with a single zigzag class per ordered
/// pair, and the union composition against ∘₀.
pub fn verify_two_truncation(poset: &Poset, cap: &BigInt) -> Result<Report, HomcatError> {
    let direct = truncation2_of_poset_oriental(poset);
    let k = Arc::new(poset_oriental_adc(poset));
    let e = enumerate_cells(&k, 3, cap);
    if e.truncated() {
        return Err(CellError::IncompleteEnumeration.into());
    }
    let tau = truncate_intelligent(&e, 2)?;
    let mut report = Report::default();

    if direct.objects != poset.tokens() {
        report.push(0, None, "truncation objects differ from the poset elements".to_string());
    }
    if e.cells(0).len() != direct.objects.len() {
        report.push(
            0,
            None,
            format!(
                "{} enumerated objects for {} elements",
                e.cells(0).len(),
                direct.objects.len()
            ),
        );
    }
    for i in 0..direct.objects.len() {
        let object = Cell::object(k.clone(), Chain::generator(0, Name::Simplex(vec![i as u32])))?;
        if e.position_of(&object).is_none() {
            report.push(0, None, format!("object {object} is not an enumerated 0-cell"));
        }
    }

    // Resolve each Hom element back to its index tuple and 1-cell.
    let index_of_token = |t: &str| {
        poset
            .index_of(t)
            .map(|i| i as u32)
            .ok_or_else(|| HomcatError::NotAChain(t.to_string()))
    };
    let mut total_elements = 0;
    let mut hom_cells_by_pair: Vec<Vec<Cell>> = Vec::with_capacity(direct.homs.len());
    for hom in &direct.homs {
        let mut cells = Vec::with_capacity(hom.elements.len());
        for elem in &hom.elements {
            let subset: Vec<u32> =
                elem.iter().map(|t| index_of_token(t)).collect::<Result<_, _>>()?;
            let cell = one_cell_of_chain(&k, &subset)?;
            if e.position_of(&cell).is_none() {
                report.push(1, None, format!("Hom element {cell} is not an enumerated 1-cell"));
            }
            cells.push(cell);
        }
        total_elements += cells.len();
        hom_cells_by_pair.push(cells);
    }
    if total_elements != e.cells(1).len() {
        report.push(
            1,
            None,
            format!(
                "{} Hom elements for {} enumerated 1-cells",
                total_elements,
                e.cells(1).len()
            ),
        );
    }

    // 2-cells grouped by their boundary rows, for existence and class counts.
    let mut two_cells: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (idx, z) in e.cells(2).iter().enumerate() {
        let s = z.source().expect("2-cells have sources");
        let t = z.target().expect("2-cells have targets");
        two_cells.entry((rows_of(&s), rows_of(&t))).or_default().push(idx);
    }
    for (hom, cells) in direct.homs.iter().zip(&hom_cells_by_pair) {
        for (ui, u) in cells.iter().enumerate() {
            for (vi, v) in cells.iter().enumerate() {
                let expected = ui == vi || hom.leq.contains(&(ui, vi));
                let group = two_cells.get(&(rows_of(u), rows_of(v)));
                if expected != group.is_some() {
                    report.push(
                        2,
                        None,
                        format!(
                            "2-cells from {u} to {v}: order says {expected}, enumeration says {}",
                            group.is_some()
                        ),
                    );
                }
                if let Some(group) = group {
                    let classes: BTreeSet<usize> =
                        group.iter().map(|&i| tau.class_of_index(i)).collect();
                    if classes.len() != 1 {
                        report.push(
                            2,
                            None,
                            format!("{} zigzag classes from {u} to {v}, expected 1", classes.len()),
                        );
                    }
                }
            }
        }
    }

    // Horizontal composition tables against ∘₀ of the 1-cells.
    let hom_index: BTreeMap<(String, String), usize> = direct
        .homs
        .iter()
        .enumerate()
        .map(|(i, h)| ((h.source.clone(), h.target.clone()), i))
        .collect();
    for table in &direct.compositions {
        let firsts = &hom_cells_by_pair[hom_index[&(table.from.clone(), table.mid.clone())]];
        let seconds = &hom_cells_by_pair[hom_index[&(table.mid.clone(), table.to.clone())]];
        let composites = &hom_cells_by_pair[hom_index[&(table.from.clone(), table.to.clone())]];
        for (gi, g) in seconds.iter().enumerate() {
            for (fi, f) in firsts.iter().enumerate() {
                let composed = compose(0, g, f)?;
                let expected = &composites[table.table[gi][fi]];
                if &composed != expected {
                    report.push(
                        1,
                        None,
                        format!("composite of {f} and {g} is {composed}, table says {expected}"),
                    );
                }
            }
        }
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn nm(s: &str) -> Name {
        s.parse().unwrap()
    }

    fn ch(degree: usize, terms: &[(&str, i64)]) -> Chain {
        Chain::from_terms(degree, terms.iter().map(|(s, c)| (nm(s), *c)))
    }

    fn oriental_arc(n: usize) -> Arc<Adc> {
        Arc::new(poset_oriental_adc(&Poset::total_order(n + 1)))
    }

    #[test]
    fn one_cells_count_subsets_and_compose_by_union() {
        let poset = Poset::total_order(4);
        let pairs = one_cells_of_poset_oriental(&poset, &BigInt::from(2)).unwrap();
        assert_eq!(pairs.len(), 15);
        for (subset, cell) in &pairs {
            if subset.len() == 1 {
                assert!(cell.is_identity());
            }
        }
        let cell_of: BTreeMap<&Vec<u32>, &Cell> =
            pairs.iter().map(|(s, c)| (s, c)).collect();
        for (s1, c1) in &pairs {
            for (s2, c2) in &pairs {
                if s1.last() != s2.first() {
                    continue;
                }
                let composite = compose(0, c2, c1).unwrap();
                assert_eq!(&&composite, cell_of.get(&union_sorted(s1, s2)).unwrap());
            }
        }
    }

    #[test]
    fn one_cells_of_a_non_total_poset() {
        let poset = Poset::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into())],
        )
        .unwrap();
        let pairs = one_cells_of_poset_oriental(&poset, &BigInt::from(2)).unwrap();
        let subsets: Vec<&Vec<u32>> = pairs.iter().map(|(s, _)| s).collect();
        assert_eq!(subsets, [&vec![0], &vec![0, 1], &vec![1], &vec![2]]);
    }

    #[test]
    fn insertion_witness_reproduces_the_triangle_atom() {
        let k = oriental_arc(2);
        let witness = two_cell_witness(&k, &[0, 2], &[0, 1, 2]).unwrap().unwrap();
        assert_eq!(
            witness.to_string(),
            "((0),(0,2),(0,1,2);(2),(0,1)+(1,2),(0,1,2))"
        );
        let identity = two_cell_witness(&k, &[0, 1, 2], &[0, 1, 2]).unwrap().unwrap();
        assert!(identity.is_identity());
    }

    #[test]
    fn iterated_insertion_gives_a_valid_witness() {
        let k = oriental_arc(3);
        let witness = two_cell_witness(&k, &[0, 3], &[0, 1, 2, 3]).unwrap().unwrap();
        assert!(witness.validate().is_valid());
        assert_eq!(witness.source().unwrap(), one_cell_of_chain(&k, &[0, 3]).unwrap());
        assert_eq!(
            witness.target().unwrap(),
            one_cell_of_chain(&k, &[0, 1, 2, 3]).unwrap()
        );
    }

    #[test]
    fn witness_existence_matches_exhaustive_search() {
        let k = oriental_arc(3);
        let e = enumerate_cells(&k, 2, &BigInt::from(2));
        assert!(!e.truncated());
        let poset = Poset::total_order(4);
        let subsets = xi(&poset);
        let mut by_rows: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (idx, z) in e.cells(2).iter().enumerate() {
            let s = z.source().unwrap();
            let t = z.target().unwrap();
            by_rows.entry((rows_of(&s), rows_of(&t))).or_default().push(idx);
        }
        for u in &subsets {
            for v in &subsets {
                let cu = one_cell_of_chain(&k, u).unwrap();
                let cv = one_cell_of_chain(&k, v).unwrap();
                if !cu.is_parallel_to(&cv) {
                    continue;
                }
                let witness = two_cell_witness(&k, u, v).unwrap();
                let found = by_rows.contains_key(&(rows_of(&cu), rows_of(&cv)));
                assert_eq!(witness.is_some(), found, "{u:?} -> {v:?}");
                if let Some(w) = witness {
                    assert!(e.position_of(&w).is_some(), "{u:?} -> {v:?}");
                }
            }
        }
    }

    #[test]
    fn non_parallel_chains_are_rejected() {
        let k = oriental_arc(3);
        let err = two_cell_witness(&k, &[0, 2], &[0, 1, 3]).unwrap_err();
        assert_eq!(err, HomcatError::Cell(CellError::NotParallel));
        assert!(two_cell_witness(&k, &[0, 1, 3], &[0, 2, 3]).unwrap().is_none());
    }

    #[test]
    fn hom_restriction_ignores_incomparable_junk() {
        let poset = Poset::new(
            vec!["0".into(), "1".into(), "2".into(), "j".into()],
            &[("0".into(), "1".into()), ("1".into(), "2".into())],
        )
        .unwrap();
        let k = Arc::new(poset_oriental_adc(&poset));
        let a = one_cell_of_chain(&k, &[0, 2]).unwrap();
        let b = one_cell_of_chain(&k, &[0, 1, 2]).unwrap();
        let outcome =
            restrict_hom_iso(&poset, &[0, 1, 2], &a, &b, 1, &BigInt::from(2)).unwrap();
        assert!(outcome.is_valid(), "{}", outcome.report);
        assert_eq!(outcome.counts[0].0, outcome.counts[0].1);
        assert_eq!(outcome.counts[0].0, 1);

        // Same counts as the full triangle oriental.
        let triangle = Poset::total_order(3);
        let k2 = oriental_arc(2);
        let a2 = one_cell_of_chain(&k2, &[0, 2]).unwrap();
        let b2 = one_cell_of_chain(&k2, &[0, 1, 2]).unwrap();
        let same = restrict_hom_iso(&triangle, &[0, 1, 2], &a2, &b2, 1, &BigInt::from(2)).unwrap();
        assert!(same.is_valid());
        assert_eq!(outcome.counts, same.counts);
    }

    #[test]
    fn hom_restriction_on_a_short_chain_is_trivial() {
        let poset = Poset::total_order(3);
        let k = oriental_arc(2);
        let a = one_cell_of_chain(&k, &[0, 1]).unwrap();
        let outcome = restrict_hom_iso(&poset, &[0, 1], &a, &a, 1, &BigInt::from(2)).unwrap();
        assert!(outcome.is_valid());
        assert_eq!(outcome.counts, [(1, 1), (1, 1)]);
    }

    #[test]
    fn cells_outside_the_subset_are_rejected() {
        let poset = Poset::total_order(3);
        let k = oriental_arc(2);
        let a = one_cell_of_chain(&k, &[0, 1, 2]).unwrap();
        let err = restrict_hom_iso(&poset, &[0, 1], &a, &a, 1, &BigInt::one()).unwrap_err();
        assert_eq!(err, HomcatError::OutsideSubposet);
    }

    #[test]
    fn splitting_factors_through_the_cuts() {
        // The 2-cell of the 3-simplex oriental from the cut path 0→2→3 to
        // the unit path, with top the single triangle (0,1,2).
        let k = oriental_arc(3);
        let x = Cell::new(
            k.clone(),
            vec![
                ch(0, &[("(0)", 1)]),
                ch(1, &[("(0,2)", 1), ("(2,3)", 1)]),
                ch(2, &[("(0,1,2)", 1)]),
            ],
            vec![
                ch(0, &[("(3)", 1)]),
                ch(1, &[("(0,1)", 1), ("(1,2)", 1), ("(2,3)", 1)]),
                ch(2, &[("(0,1,2)", 1)]),
            ],
        )
        .unwrap();
        assert!(x.validate().is_valid());
        let pieces = split_cell(&x, &[0, 2, 3]).unwrap();
        assert_eq!(pieces.len(), 2);
        assert_eq!(
            pieces[0].to_string(),
            "((0),(0,2),(0,1,2);(2),(0,1)+(1,2),(0,1,2))"
        );
        assert!(pieces[1].is_identity());
        assert_eq!(merge_cells(&pieces).unwrap(), x);
    }

    #[test]
    fn identity_of_the_unit_path_splits_into_identities() {
        let k = oriental_arc(2);
        let path = one_cell_of_chain(&k, &[0, 1, 2]).unwrap();
        let pieces = split_cell(&path.identity(), &[0, 1, 2]).unwrap();
        assert_eq!(pieces.len(), 2);
        assert!(pieces.iter().all(|p| p.is_identity()));
        assert_eq!(merge_cells(&pieces).unwrap(), path.identity());
    }

    #[test]
    fn split_hypotheses_are_enforced() {
        let k = oriental_arc(2);
        let direct = one_cell_of_chain(&k, &[0, 2]).unwrap();
        // Source is the jump 0→2, not the cut path 0→1→2.
        assert_eq!(
            split_cell(&direct.identity(), &[0, 1, 2]).unwrap_err(),
            HomcatError::SplitHypotheses
        );
        assert!(merge_cells(&[]).is_err());
    }

    #[test]
    fn two_truncation_of_small_chains() {
        let t1 = truncation2_of_poset_oriental(&Poset::total_order(2));
        let hom01 = t1
            .homs
            .iter()
            .find(|h| h.source == "0" && h.target == "1")
            .unwrap();
        assert_eq!(hom01.elements, [vec!["0", "1"]]);

        let t2 = truncation2_of_poset_oriental(&Poset::total_order(3));
        let hom02 = t2
            .homs
            .iter()
            .find(|h| h.source == "0" && h.target == "2")
            .unwrap();
        assert_eq!(hom02.elements, [vec!["0", "1", "2"], vec!["0", "2"]]);
        assert_eq!(hom02.leq, [(1, 0)]);

        let t3 = truncation2_of_poset_oriental(&Poset::total_order(4));
        let hom03 = t3
            .homs
            .iter()
            .find(|h| h.source == "0" && h.target == "3")
            .unwrap();
        assert_eq!(hom03.elements.len(), 4);
        assert_eq!(hom03.leq.len(), 5);
    }

    #[test]
    fn composition_tables_use_unions() {
        let t2 = truncation2_of_poset_oriental(&Poset::total_order(3));
        let table = t2
            .compositions
            .iter()
            .find(|c| c.from == "0" && c.mid == "1" && c.to == "2")
            .unwrap();
        // Hom(0,2) sorts (0,1,2) before (0,2): the union lands at index 0.
        assert_eq!(table.table, [vec![0]]);
    }

    #[test]
    fn direct_truncation_matches_the_enumerated_oriental() {
        for n in 0..=2 {
            let report =
                verify_two_truncation(&Poset::total_order(n + 1), &BigInt::from(2)).unwrap();
            assert!(report.is_valid(), "n = {n}: {report}");
        }
        let junk = Poset::new(
            vec!["0".into(), "1".into(), "2".into(), "j".into()],
            &[("0".into(), "1".into()), ("1".into(), "2".into())],
        )
        .unwrap();
        let report = verify_two_truncation(&junk, &BigInt::from(2)).unwrap();
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn truncation_json_is_deterministic() {
        let t = truncation2_of_poset_oriental(&Poset::total_order(3));
        let js = serde_json::to_string(&t).unwrap();
        assert!(js.starts_with("{\"objects\":[\"0\",\"1\",\"2\"]"));
        assert_eq!(js, serde_json::to_string(&t).unwrap());
    }
}
