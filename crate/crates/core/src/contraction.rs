//! Contractions of augmented directed complexes and their ∞-categorical
//! consequences.
//!
//! A contraction is a positivity-compatible square-zero homotopy from the
//! constant endomorphism at a center c₀ to the identity (the dual flips
//! the signs and the direction). Its data is c₀ plus one degree-raising
//! map h_p per degree. Negligible cells (those with h(top) = 0) produce
//! connecting cells to every parallel cell, which certifies them as
//! quasi-initial (quasi-final for duals) among their parallels; the
//! brute-force recursion over enumerated cells serves as an independent
//! oracle. The ν image of a homotopy is the cell-level transformation
//! whose contraction laws are checked by [`validate_infty_contraction`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::adc::{constant_morphism, Adc, AdcError, AdcHomotopy, AdcMorphism, Report};
use crate::chains::{Chain, Name};
use crate::simplicial::standard_simplex_adc;
use crate::steiner::{compose, Cell, CellError, Enumeration};

/// Errors for contraction-based constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractionError {
    #[error("cells and contraction live over different complexes")]
    ComplexMismatch,
    #[error("cells are not parallel")]
    NotParallel,
    #[error("the cell is not negligible under this contraction")]
    NotNegligible,
    #[error("a 0-cell witness must start from the center")]
    CenterMismatch,
    #[error("the contraction does not satisfy its defining identities")]
    InvalidContraction,
    #[error("the homotopy does not satisfy its defining identities")]
    InvalidHomotopy,
    #[error("the morphism does not satisfy its defining identities")]
    InvalidMorphism,
    #[error(transparent)]
    Cell(#[from] CellError),
}

/// A contraction candidate: center c₀ of degree 0 and degree-raising maps
/// h_p on basis elements, with a flag selecting the dual sign convention.
/// Construction checks structure only; [`validate_contraction`] checks the
/// defining identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    complex: Arc<Adc>,
    center: Chain,
    maps: Vec<BTreeMap<Name, Chain>>,
    dual: bool,
}

impl Contraction {
    /// Builds a contraction from per-degree tables `degree p ↦ chain of
    /// degree p+1`; missing entries are zero.
    pub fn new(
        complex: Arc<Adc>,
        center: Chain,
        entries: impl IntoIterator<Item = (usize, Name, Chain)>,
        dual: bool,
    ) -> Result<Contraction, AdcError> {
        if center.degree() != 0 {
            return Err(AdcError::ChainDegree {
                name: "center".to_string(),
                got: center.degree(),
                want: 0,
            });
        }
        for n in center.support() {
            if !complex.contains(0, n) {
                return Err(AdcError::UnknownName { name: n.to_string(), degree: 0 });
            }
        }
        let mut maps = vec![BTreeMap::new(); complex.max_degree() + 1];
        for (p, name, chain) in entries {
            if !complex.contains(p, &name) {
                return Err(AdcError::UnknownName { name: name.to_string(), degree: p });
            }
            if chain.degree() != p + 1 {
                return Err(AdcError::ChainDegree {
                    name: name.to_string(),
                    got: chain.degree(),
                    want: p + 1,
                });
            }
            for n in chain.support() {
                if !complex.contains(p + 1, n) {
                    return Err(AdcError::UnknownName { name: n.to_string(), degree: p + 1 });
                }
            }
            maps[p].insert(name, chain);
        }
        Ok(Contraction { complex, center, maps, dual })
    }

    pub fn complex(&self) -> &Arc<Adc> {
        &self.complex
    }

    pub fn center(&self) -> &Chain {
        &self.center
    }

    /// The center as a 0-cell.
    pub fn center_cell(&self) -> Result<Cell, CellError> {
        Cell::object(self.complex.clone(), self.center.clone())
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// h_p on one basis element.
    pub fn image_of(&self, degree: usize, name: &Name) -> Chain {
        self.maps
            .get(degree)
            .and_then(|m| m.get(name))
            .cloned()
            .unwrap_or_else(|| Chain::zero(degree + 1))
    }

    /// Linear extension of h to a chain.
    pub fn apply(&self, x: &Chain) -> Chain {
        let mut out = Chain::zero(x.degree() + 1);
        for (name, coeff) in x.terms() {
            out = out.add(&self.image_of(x.degree(), name).scaled(coeff)).unwrap();
        }
        out
    }

    /// The same data as an ADC homotopy: from the constant morphism at the
    /// center to the identity, or the other way around for duals.
    pub fn as_homotopy(&self) -> Result<AdcHomotopy, AdcError> {
        let constant = constant_morphism(&self.complex, &self.complex, &self.center)?;
        let identity = AdcMorphism::identity(&self.complex);
        let (from, to) = if self.dual { (identity, constant) } else { (constant, identity) };
        let entries = self.maps.iter().enumerate().flat_map(|(p, m)| {
            m.iter().map(move |(name, chain)| (p, name.clone(), chain.clone()))
        });
        AdcHomotopy::new(from, to, entries)
    }
}

impl Serialize for Contraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("center", &self.center)?;
        map.serialize_entry("dual", &self.dual)?;
        let h: BTreeMap<String, &Chain> = self
            .maps
            .iter()
            .flat_map(|m| m.iter().map(|(n, c)| (n.to_string(), c)))
            .collect();
        map.serialize_entry("h", &h)?;
        map.end()
    }
}

/// Complex-free contraction data as it appears in JSON; attach a complex
/// with [`Contraction::from_data`]. Degrees are resolved through the
/// complex's basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContractionData {
    pub center: Chain,
    #[serde(default)]
    pub dual: bool,
    #[serde(default)]
    pub h: BTreeMap<String, Chain>,
}

impl Contraction {
    pub fn from_data(complex: Arc<Adc>, data: ContractionData) -> Result<Contraction, AdcError> {
        let mut entries = Vec::new();
        for (name_str, chain) in data.h {
            let name: Name = name_str.parse().expect("name parsing is total");
            let degree = complex
                .degree_of(&name)
                .ok_or_else(|| AdcError::UnknownName { name: name.to_string(), degree: 0 })?;
            entries.push((degree, name, chain));
        }
        Contraction::new(complex, data.center, entries, data.dual)
    }

    pub fn to_data(&self) -> ContractionData {
        ContractionData {
            center: self.center.clone(),
            dual: self.dual,
            h: self
                .maps
                .iter()
                .flat_map(|m| m.iter().map(|(n, c)| (n.to_string(), c.clone())))
                .collect(),
        }
    }
}

/// The contraction of the n-simplex complex centered at (0):
/// h_p(i₀,…,i_p) = (0,i₀,…,i_p) when i₀ > 0, else 0.
pub fn standard_contraction(n: usize) -> Contraction {
    let k = Arc::new(standard_simplex_adc(n));
    let mut entries = Vec::new();
    for b in k.basis_elements() {
        let Name::Simplex(tuple) = &b.name else { unreachable!("simplex bases use tuples") };
        if tuple[0] > 0 {
            let mut cone = Vec::with_capacity(tuple.len() + 1);
            cone.push(0);
            cone.extend_from_slice(tuple);
            let image = Chain::generator(b.degree + 1, Name::Simplex(cone));
            entries.push((b.degree, b.name.clone(), image));
        }
    }
    let center = Chain::generator(0, Name::Simplex(vec![0]));
    Contraction::new(k, center, entries, false).expect("the simplex tables are structural")
}

/// The dual contraction of the n-simplex complex centered at (n):
/// h₀(i₀) = Σ_{i₀<k≤n} (k−1,k) and, for p ≥ 1,
/// h_p(i₀,i₁,…,i_p) = Σ_{i₀<k<i₁} (k−1,k,i₁,…,i_p).
pub fn dual_contraction(n: usize) -> Contraction {
    let k = Arc::new(standard_simplex_adc(n));
    let mut entries = Vec::new();
    for b in k.basis_elements() {
        let Name::Simplex(tuple) = &b.name else { unreachable!("simplex bases use tuples") };
        let mut terms = Vec::new();
        if b.degree == 0 {
            for step in tuple[0] + 1..=n as u32 {
                terms.push((Name::Simplex(vec![step - 1, step]), BigInt::one()));
            }
        } else {
            for step in tuple[0] + 1..tuple[1] {
                let mut widened = vec![step - 1, step];
                widened.extend_from_slice(&tuple[1..]);
                terms.push((Name::Simplex(widened), BigInt::one()));
            }
        }
        if !terms.is_empty() {
            entries.push((b.degree, b.name.clone(), Chain::from_terms(b.degree + 1, terms)));
        }
    }
    let center = Chain::generator(0, Name::Simplex(vec![n as u32]));
    Contraction::new(k, center, entries, true).expect("the simplex tables are structural")
}

/// Checks the contraction identities on every basis element: augmentation
/// 1 of the center (✶₋₁), the degree-0 and degree-j homotopy identities
/// (✶₀), (✶_j) with dual signs when flagged, positivity of the center and
/// all images (✶✶), and square-zero including h₀(c₀) = 0 (✶✶✶).
pub fn validate_contraction(c: &Contraction) -> Report {
    let mut report = Report::default();
    let k = &c.complex;
    let one = BigInt::one();

    let aug = k.aug_chain(&c.center);
    if aug != one {
        report.push(0, None, format!("(*_-1) center has augmentation {aug}, expected 1"));
    }
    if !c.center.is_nonneg() {
        report.push(0, None, format!("(**) center {} is not nonnegative", c.center));
    }
    if !c.apply(&c.center).is_zero() {
        report.push(0, None, format!("(***) h(center) = {}, expected 0", c.apply(&c.center)));
    }

    for p in 0..=k.max_degree() {
        for name in k.basis(p) {
            let image = c.image_of(p, name);
            if !image.is_nonneg() {
                report.push(p, Some(name.clone()), format!("(**) h({name}) = {image} is not nonnegative"));
            }

            let generator = Chain::generator(p, name.clone());
            let d_h = k.diff_chain(&image);
            let lhs = if p == 0 {
                let constant = c.center.scaled(&k.aug_of(name));
                if c.dual {
                    constant.sub(&d_h).unwrap()
                } else {
                    d_h.add(&constant).unwrap()
                }
            } else {
                let h_d = c.apply(&k.diff_of(p, name));
                if c.dual {
                    d_h.add(&h_d).unwrap().neg()
                } else {
                    d_h.add(&h_d).unwrap()
                }
            };
            if lhs != generator {
                report.push(
                    p,
                    Some(name.clone()),
                    format!("(*_{p}) homotopy identity gives {lhs}, expected {generator}"),
                );
            }

            let square = c.apply(&image);
            if !square.is_zero() {
                report.push(p, Some(name.clone()), format!("(***) h(h({name})) = {square}, expected 0"));
            }
        }
    }
    report
}

/// Whether h annihilates the cell's top chain. Negligible cells admit
/// connecting cells to all their parallels.
pub fn is_negligible(cell: &Cell, c: &Contraction) -> bool {
    debug_assert!(cell.complex() == &c.complex);
    c.apply(cell.top()).is_zero()
}

/// The connecting (i+1)-cell between parallel i-cells: top h(top of y),
/// running from x to y (from y to x for duals). Requires x negligible, or
/// for objects x = center.
pub fn connecting_cell(x: &Cell, y: &Cell, c: &Contraction) -> Result<Cell, ContractionError> {
    if x.complex() != &c.complex || y.complex() != &c.complex {
        return Err(ContractionError::ComplexMismatch);
    }
    if !x.is_parallel_to(y) {
        return Err(ContractionError::NotParallel);
    }
    if x.dim() == 0 {
        if x.top() != &c.center {
            return Err(ContractionError::CenterMismatch);
        }
    } else if !is_negligible(x, c) {
        return Err(ContractionError::NotNegligible);
    }
    let top = c.apply(y.top());
    Ok(if c.dual { Cell::raise(y, x, top) } else { Cell::raise(x, y, top) })
}

/// A replayable record that a negligible cell is quasi-initial
/// (quasi-final for duals) among its parallels: it embeds the contraction
/// so the connecting witnesses can be regenerated and re-checked.
#[derive(Debug, Clone)]
pub struct QuasiInitialCertificate {
    contraction: Contraction,
    cell: Cell,
}

impl QuasiInitialCertificate {
    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    pub fn contraction(&self) -> &Contraction {
        &self.contraction
    }

    /// Dual contractions certify quasi-final objects.
    pub fn is_quasi_final(&self) -> bool {
        self.contraction.dual
    }

    /// The connecting witness toward one parallel cell.
    pub fn witness(&self, y: &Cell) -> Result<Cell, ContractionError> {
        connecting_cell(&self.cell, y, &self.contraction)
    }

    /// Replays the certificate against a complete enumeration: every
    /// enumerated parallel cell must receive a validated witness with the
    /// certified cell as source (target for duals) and a negligible top.
    pub fn verify(&self, e: &Enumeration) -> Report {
        let mut report = Report::default();
        if e.truncated() || e.max_dim() < self.cell.dim() {
            report.push(self.cell.dim(), None, "enumeration is incomplete".to_string());
            return report;
        }
        for y in e.cells(self.cell.dim()) {
            if !y.is_parallel_to(&self.cell) {
                continue;
            }
            let z = match self.witness(y) {
                Ok(z) => z,
                Err(err) => {
                    report.push(y.dim(), None, format!("no witness toward {y}: {err}"));
                    continue;
                }
            };
            report.merge(z.validate());
            let (want_source, want_target) =
                if self.contraction.dual { (y, &self.cell) } else { (&self.cell, y) };
            if z.source().ok().as_ref() != Some(want_source)
                || z.target().ok().as_ref() != Some(want_target)
            {
                report.push(z.dim(), None, format!("witness {z} has wrong endpoints"));
            }
            if !is_negligible(&z, &self.contraction) {
                report.push(z.dim(), None, format!("witness {z} is not negligible"));
            }
        }
        report
    }
}

/// Certifies a negligible cell as quasi-initial (quasi-final for duals)
/// among its parallels. The contraction must validate and the cell must be
/// negligible; objects must moreover be the center, which is the unique
/// negligible object of a valid contraction.
pub fn quasi_initial_certificate(
    c: &Contraction,
    cell: &Cell,
) -> Result<QuasiInitialCertificate, ContractionError> {
    if cell.complex() != &c.complex {
        return Err(ContractionError::ComplexMismatch);
    }
    if !validate_contraction(c).is_valid() {
        return Err(ContractionError::InvalidContraction);
    }
    if cell.dim() == 0 && cell.top() != &c.center {
        return Err(ContractionError::CenterMismatch);
    }
    if !is_negligible(cell, c) {
        return Err(ContractionError::NotNegligible);
    }
    Ok(QuasiInitialCertificate { contraction: c.clone(), cell: cell.clone() })
}

/// The image of a cell under ν of a morphism: the morphism applied
/// entrywise. The morphism must validate.
pub fn nu_morphism_cell(f: &AdcMorphism, cell: &Cell) -> Result<Cell, ContractionError> {
    if cell.complex() != f.source() {
        return Err(ContractionError::ComplexMismatch);
    }
    if !f.validate().is_valid() {
        return Err(ContractionError::InvalidMorphism);
    }
    let row0 = cell.row0().iter().map(|c| f.apply(c)).collect();
    let row1 = cell.row1().iter().map(|c| f.apply(c)).collect();
    Ok(Cell::new(f.target().clone(), row0, row1)?)
}

/// The ν table of a homotopy on one cell, without validity checks.
fn homotopy_table(h: &AdcHomotopy, cell: &Cell) -> Cell {
    let f = h.from_morphism();
    let g = h.to_morphism();
    let i = cell.dim();
    let mut row0 = Vec::with_capacity(i + 2);
    let mut row1 = Vec::with_capacity(i + 2);
    row0.push(f.apply(&cell.row0()[0]));
    row1.push(g.apply(&cell.row1()[0]));
    for k in 1..=i {
        row0.push(f.apply(&cell.row0()[k]).add(&h.apply(&cell.row1()[k - 1])).unwrap());
        row1.push(g.apply(&cell.row1()[k]).add(&h.apply(&cell.row0()[k - 1])).unwrap());
    }
    let top = h.apply(cell.top());
    row0.push(top.clone());
    row1.push(top);
    Cell::new(f.target().clone(), row0, row1).expect("homotopy tables are structurally valid")
}

/// The (i+1)-cell ν(h)(x) over the target complex: row 0 is f on row 0
/// plus h shifted from row 1, row 1 is g on row 1 plus h shifted from
/// row 0, and the new top is h of the old one. Its source and target are
/// the composite boundary displays checked in the tests.
pub fn nu_homotopy_cell(h: &AdcHomotopy, cell: &Cell) -> Result<Cell, ContractionError> {
    if cell.complex() != h.from_morphism().source() {
        return Err(ContractionError::ComplexMismatch);
    }
    if !h.validate().is_valid() {
        return Err(ContractionError::InvalidHomotopy);
    }
    Ok(homotopy_table(h, cell))
}

/// Checks the ∞-contraction laws of ν(h) on a complete enumeration, for h
/// a homotopy from the constant morphism at a center c₀ to the identity:
/// (a) ν(h)(1_x) = 1_{ν(h)(x)}; (b) the composite law for j-composable
/// pairs; (c) ν(h)(c₀) = 1_{c₀}; (d) ν(h)(ν(h)(x)) = 1_{ν(h)(x)}.
pub fn validate_infty_contraction(h: &AdcHomotopy, e: &Enumeration) -> Report {
    let mut report = h.validate();
    let f = h.from_morphism();
    let g = h.to_morphism();
    let k = e.complex();
    if f.source() != k || f.target() != k {
        report.push(0, None, "not an endomorphism homotopy of the enumerated complex".to_string());
        return report;
    }

    let one = BigInt::one();
    let center = k
        .basis(0)
        .iter()
        .find(|v| k.aug_of(v) == one)
        .map(|v| f.image_of(0, v).scaled(&k.aug_of(v)));
    let Some(center) = center else {
        report.push(0, None, "no basis vertex of augmentation 1 to read the center from".to_string());
        return report;
    };
    for v in k.basis(0) {
        if f.image_of(0, v) != center.scaled(&k.aug_of(v)) {
            report.push(0, Some(v.clone()), "source morphism is not constant".to_string());
        }
    }
    for p in 1..=k.max_degree() {
        for b in k.basis(p) {
            if !f.image_of(p, b).is_zero() {
                report.push(p, Some(b.clone()), "source morphism is not constant".to_string());
            }
        }
    }
    for p in 0..=k.max_degree() {
        for b in k.basis(p) {
            if g.image_of(p, b) != Chain::generator(p, b.clone()) {
                report.push(p, Some(b.clone()), "target morphism is not the identity".to_string());
            }
        }
    }
    if !report.is_valid() {
        return report;
    }

    let alpha = |cell: &Cell| homotopy_table(h, cell);

    let center_cell = Cell::object(k.clone(), center).expect("centers are objects");
    if alpha(&center_cell) != center_cell.identity() {
        report.push(0, None, format!("(c) the transform of the center {center_cell} is not its identity"));
    }

    for dim in 0..=e.max_dim() {
        for x in e.cells(dim) {
            let ax = alpha(x);
            if alpha(&x.identity()) != ax.identity() {
                report.push(dim, None, format!("(a) unit law fails at {x}"));
            }
            if alpha(&ax) != ax.identity() {
                report.push(dim, None, format!("(d) idempotence fails at {x}"));
            }
        }
    }

    for i in 1..=e.max_dim() {
        let cells = e.cells(i);
        for j in 0..i {
            let mut by_target: BTreeMap<(Vec<Chain>, Vec<Chain>), Vec<usize>> = BTreeMap::new();
            for (idx, y) in cells.iter().enumerate() {
                let t = y.target_at(j).expect("iterated targets exist below the dimension");
                by_target.entry((t.row0().to_vec(), t.row1().to_vec())).or_default().push(idx);
            }
            for x in cells {
                let s = x.source_at(j).expect("iterated sources exist below the dimension");
                let Some(ys) = by_target.get(&(s.row0().to_vec(), s.row1().to_vec())) else {
                    continue;
                };
                for &yi in ys {
                    let y = &cells[yi];
                    let composite = compose(j, x, y).expect("matched boundaries compose");
                    let lhs = alpha(&composite);
                    let rhs = (|| -> Result<Cell, CellError> {
                        let mut acc = x.target_at(j + 1)?;
                        for level in 0..j {
                            acc = compose(level, &acc, &alpha(&x.source_at(level)?))?;
                        }
                        acc = compose(j, &acc, &alpha(y))?;
                        compose(j + 1, &acc, &alpha(x))
                    })();
                    match rhs {
                        Ok(rhs) if rhs == lhs => {}
                        Ok(rhs) => report.push(
                            i,
                            None,
                            format!("(b) composite law fails at j={j}: got {lhs}, expected {rhs}"),
                        ),
                        Err(err) => report.push(
                            i,
                            None,
                            format!("(b) composite law ill-formed at j={j}: {err}"),
                        ),
                    }
                }
            }
        }
    }
    report
}

type Rows = (Vec<Chain>, Vec<Chain>);

fn rows_of(c: &Cell) -> Rows {
    (c.row0().to_vec(), c.row1().to_vec())
}

struct BruteForce<'a> {
    e: &'a Enumeration,
    n: usize,
    finals: bool,
    hom: Vec<BTreeMap<(Rows, Rows), Vec<usize>>>,
    memo: BTreeMap<(usize, usize), bool>,
}

impl<'a> BruteForce<'a> {
    fn new(e: &'a Enumeration, n: usize, finals: bool) -> BruteForce<'a> {
        let mut hom = vec![BTreeMap::new()];
        for dim in 1..=n {
            let mut map: BTreeMap<(Rows, Rows), Vec<usize>> = BTreeMap::new();
            for (idx, z) in e.cells(dim).iter().enumerate() {
                let s = z.source().expect("positive dimension");
                let t = z.target().expect("positive dimension");
                map.entry((rows_of(&s), rows_of(&t))).or_default().push(idx);
            }
            hom.push(map);
        }
        BruteForce { e, n, finals, hom, memo: BTreeMap::new() }
    }

    fn quasi(&mut self, dim: usize, idx: usize) -> bool {
        if let Some(&v) = self.memo.get(&(dim, idx)) {
            return v;
        }
        let x = &self.e.cells(dim)[idx];
        let result = if dim == self.n {
            self.e.cells(dim).iter().filter(|y| y.is_parallel_to(x)).count() == 1
        } else {
            let parallels: Vec<usize> = self
                .e
                .cells(dim)
                .iter()
                .enumerate()
                .filter(|(_, y)| y.is_parallel_to(x))
                .map(|(i, _)| i)
                .collect();
            let x_rows = rows_of(x);
            parallels.into_iter().all(|yi| {
                let y_rows = rows_of(&self.e.cells(dim)[yi]);
                let key = if self.finals {
                    (y_rows, x_rows.clone())
                } else {
                    (x_rows.clone(), y_rows)
                };
                let witnesses = self.hom[dim + 1].get(&key).cloned().unwrap_or_default();
                witnesses.into_iter().any(|zi| self.quasi(dim + 1, zi))
            })
        };
        self.memo.insert((dim, idx), result);
        result
    }
}

fn quasi_brute(e: &Enumeration, x: &Cell, n: usize, finals: bool) -> Result<bool, CellError> {
    if x.complex() != e.complex() {
        return Err(CellError::ComplexMismatch);
    }
    if e.truncated() || e.max_dim() < n || x.dim() > n || e.complex().max_degree() > n {
        return Err(CellError::IncompleteEnumeration);
    }
    let idx = e.position_of(x).ok_or(CellError::IncompleteEnumeration)?;
    Ok(BruteForce::new(e, n, finals).quasi(x.dim(), idx))
}

/// Whether x is quasi-initial among its parallels, by the recursive
/// definition over the enumerated n-category: at dimension n, x must be
/// its only parallel; below, every parallel y needs some quasi-initial
/// (dim+1)-cell from x to y. Requires a complete enumeration up to
/// dimension n ≥ the complex's top degree.
pub fn quasi_initial_brute(e: &Enumeration, x: &Cell, n: usize) -> Result<bool, CellError> {
    quasi_brute(e, x, n, false)
}

/// The dual recursion: witnesses run from y to x.
pub fn quasi_final_brute(e: &Enumeration, x: &Cell, n: usize) -> Result<bool, CellError> {
    quasi_brute(e, x, n, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::enumerate_cells;

    fn nm(s: &str) -> Name {
        s.parse().unwrap()
    }

    fn ch(degree: usize, terms: &[(&str, i64)]) -> Chain {
        Chain::from_terms(degree, terms.iter().map(|(s, c)| (nm(s), *c)))
    }

    fn alpha(k: &Arc<Adc>) -> Cell {
        Cell::new(
            k.clone(),
            vec![ch(0, &[("(0)", 1)]), ch(1, &[("(0,2)", 1)]), ch(2, &[("(0,1,2)", 1)])],
            vec![
                ch(0, &[("(2)", 1)]),
                ch(1, &[("(0,1)", 1), ("(1,2)", 1)]),
                ch(2, &[("(0,1,2)", 1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn explicit_image_formulas() {
        let c = standard_contraction(2);
        assert_eq!(c.image_of(0, &nm("(2)")), ch(1, &[("(0,2)", 1)]));
        assert_eq!(c.image_of(1, &nm("(0,2)")), Chain::zero(2));
        assert_eq!(c.image_of(1, &nm("(1,2)")), ch(2, &[("(0,1,2)", 1)]));

        let d = dual_contraction(2);
        assert_eq!(d.image_of(1, &nm("(0,2)")), ch(2, &[("(0,1,2)", 1)]));
        assert_eq!(d.image_of(1, &nm("(0,1)")), Chain::zero(2));
        assert_eq!(d.image_of(0, &nm("(0)")), ch(1, &[("(0,1)", 1), ("(1,2)", 1)]));
        assert_eq!(d.center(), &ch(0, &[("(2)", 1)]));
    }

    #[test]
    fn simplex_contractions_validate_both_routes() {
        for n in 0..=4 {
            for c in [standard_contraction(n), dual_contraction(n)] {
                let report = validate_contraction(&c);
                assert!(report.is_valid(), "n = {n}, dual = {}: {report}", c.is_dual());
                let homotopy = c.as_homotopy().unwrap();
                let report = homotopy.validate();
                assert!(report.is_valid(), "n = {n}, dual = {}: {report}", c.is_dual());
            }
        }
    }

    #[test]
    fn zeroed_entry_breaks_the_degree_one_identity() {
        let good = standard_contraction(2);
        let entries = good.maps.iter().enumerate().flat_map(|(p, m)| {
            m.iter()
                .filter(|(name, _)| *name != &nm("(1,2)"))
                .map(move |(name, chain)| (p, name.clone(), chain.clone()))
        });
        let broken =
            Contraction::new(good.complex.clone(), good.center.clone(), entries, false).unwrap();
        let report = validate_contraction(&broken);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.name == Some(nm("(1,2)")) && v.message.starts_with("(*_1)")));
    }

    #[test]
    fn negligibility_of_the_named_cells() {
        let c = standard_contraction(3);
        let k = c.complex();
        let center = c.center_cell().unwrap();
        assert!(is_negligible(&center, &c));
        let other = Cell::object(k.clone(), ch(0, &[("(1)", 1)])).unwrap();
        assert!(!is_negligible(&other, &c));

        let jump = Cell::new(
            k.clone(),
            vec![ch(0, &[("(0)", 1)]), ch(1, &[("(0,3)", 1)])],
            vec![ch(0, &[("(3)", 1)]), ch(1, &[("(0,3)", 1)])],
        )
        .unwrap();
        assert!(is_negligible(&jump, &c));

        let fan = ch(2, &[("(0,1,2)", 1), ("(0,2,3)", 1)]);
        assert!(c.apply(&fan).is_zero());
    }

    #[test]
    fn connecting_cells_reproduce_the_triangle() {
        let c = standard_contraction(2);
        let k = c.complex().clone();
        let x = c.center_cell().unwrap();
        let y = Cell::object(k.clone(), ch(0, &[("(2)", 1)])).unwrap();
        let z = connecting_cell(&x, &y, &c).unwrap();
        assert_eq!(z.to_string(), "((0),(0,2);(2),(0,2))");
        assert!(z.validate().is_valid());
        assert!(is_negligible(&z, &c));

        let a = alpha(&k);
        let z2 = connecting_cell(&z, &a.target().unwrap(), &c).unwrap();
        assert_eq!(z2, a);

        let same = connecting_cell(&z, &z, &c).unwrap();
        assert!(same.is_identity());
    }

    #[test]
    fn dual_connecting_cells_run_backwards() {
        let c = dual_contraction(2);
        let k = c.complex().clone();
        let x = c.center_cell().unwrap();
        let y = Cell::object(k.clone(), ch(0, &[("(0)", 1)])).unwrap();
        let z = connecting_cell(&x, &y, &c).unwrap();
        assert!(z.validate().is_valid());
        assert_eq!(z.source().unwrap(), y);
        assert_eq!(z.target().unwrap(), x);
        assert_eq!(z.top(), &ch(1, &[("(0,1)", 1), ("(1,2)", 1)]));
    }

    #[test]
    fn connecting_cell_preconditions() {
        let c = standard_contraction(2);
        let k = c.complex().clone();
        let v0 = c.center_cell().unwrap();
        let v1 = Cell::object(k.clone(), ch(0, &[("(1)", 1)])).unwrap();
        let a = alpha(&k);
        assert_eq!(connecting_cell(&v0, &a, &c).unwrap_err(), ContractionError::NotParallel);
        assert_eq!(connecting_cell(&v1, &v0, &c).unwrap_err(), ContractionError::CenterMismatch);
        let edge12 = Cell::new(
            k.clone(),
            vec![ch(0, &[("(1)", 1)]), ch(1, &[("(1,2)", 1)])],
            vec![ch(0, &[("(2)", 1)]), ch(1, &[("(1,2)", 1)])],
        )
        .unwrap();
        assert_eq!(
            connecting_cell(&edge12, &edge12, &c).unwrap_err(),
            ContractionError::NotNegligible,
        );
    }

    #[test]
    fn homotopy_transform_matches_the_examples() {
        let c = standard_contraction(2);
        let h = c.as_homotopy().unwrap();
        let k = c.complex().clone();

        let v2 = Cell::object(k.clone(), ch(0, &[("(2)", 1)])).unwrap();
        let t = nu_homotopy_cell(&h, &v2).unwrap();
        assert_eq!(t.to_string(), "((0),(0,2);(2),(0,2))");

        let center = c.center_cell().unwrap();
        assert_eq!(nu_homotopy_cell(&h, &center).unwrap(), center.identity());

        let tt = nu_homotopy_cell(&h, &t).unwrap();
        assert_eq!(tt, t.identity());
    }

    #[test]
    fn homotopy_transform_boundaries_match_the_displays() {
        let c = standard_contraction(2);
        let h = c.as_homotopy().unwrap();
        let f = h.from_morphism();
        let g = h.to_morphism();
        let a = alpha(c.complex());
        let ta = nu_homotopy_cell(&h, &a).unwrap();
        assert!(ta.validate().is_valid());

        let mut source = nu_morphism_cell(f, &a).unwrap();
        for level in 0..a.dim() {
            let boundary = nu_homotopy_cell(&h, &a.target_at(level).unwrap()).unwrap();
            source = compose(level, &boundary, &source).unwrap();
        }
        assert_eq!(ta.source().unwrap(), source);

        let mut target = nu_morphism_cell(g, &a).unwrap();
        for level in 0..a.dim() {
            let boundary = nu_homotopy_cell(&h, &a.source_at(level).unwrap()).unwrap();
            target = compose(level, &target, &boundary).unwrap();
        }
        assert_eq!(ta.target().unwrap(), target);
    }

    #[test]
    fn infty_contraction_laws_hold_on_the_triangle() {
        let c = standard_contraction(2);
        let h = c.as_homotopy().unwrap();
        let e = enumerate_cells(c.complex(), 2, &BigInt::from(2));
        assert!(!e.truncated());
        let report = validate_infty_contraction(&h, &e);
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn corrupted_homotopy_fails_the_infty_laws() {
        let good = standard_contraction(2);
        let entries = good.maps.iter().enumerate().flat_map(|(p, m)| {
            m.iter().map(move |(name, chain)| {
                if name == &nm("(1)") {
                    (p, name.clone(), ch(1, &[("(0,1)", 1), ("(1,2)", 1), ("(0,2)", 1)]))
                } else {
                    (p, name.clone(), chain.clone())
                }
            })
        });
        let broken =
            Contraction::new(good.complex.clone(), good.center.clone(), entries, false).unwrap();
        let h = broken.as_homotopy().unwrap();
        let e = enumerate_cells(broken.complex(), 2, &BigInt::from(2));
        let report = validate_infty_contraction(&h, &e);
        assert!(!report.is_valid());
    }

    #[test]
    fn brute_force_recursion_on_the_triangle() {
        let c = standard_contraction(2);
        let k = c.complex().clone();
        let e = enumerate_cells(&k, 2, &BigInt::from(2));
        let objects = e.cells(0);
        let expected = [true, false, false];
        for (obj, want) in objects.iter().zip(expected) {
            assert_eq!(quasi_initial_brute(&e, obj, 2).unwrap(), want, "{obj}");
        }
        let finals = [false, false, true];
        for (obj, want) in objects.iter().zip(finals) {
            assert_eq!(quasi_final_brute(&e, obj, 2).unwrap(), want, "{obj}");
        }

        let direct = alpha(&k).source().unwrap();
        assert!(quasi_initial_brute(&e, &direct, 2).unwrap());
        let path = alpha(&k).target().unwrap();
        assert!(!quasi_initial_brute(&e, &path, 2).unwrap());
    }

    #[test]
    fn brute_force_on_degenerate_categories() {
        let point = Arc::new(standard_simplex_adc(0));
        let e = enumerate_cells(&point, 0, &BigInt::one());
        assert!(quasi_initial_brute(&e, &e.cells(0)[0], 0).unwrap());

        let two = Arc::new(
            Adc::new(
                0,
                vec![vec![nm("x"), nm("y")]],
                [],
                [(nm("x"), BigInt::one()), (nm("y"), BigInt::one())],
            )
            .unwrap(),
        );
        let e = enumerate_cells(&two, 0, &BigInt::one());
        assert!(!quasi_initial_brute(&e, &e.cells(0)[0], 0).unwrap());
        assert!(!quasi_final_brute(&e, &e.cells(0)[1], 0).unwrap());
    }

    #[test]
    fn certificates_agree_with_brute_force_on_the_triangle() {
        let c = standard_contraction(2);
        let k = c.complex().clone();
        let e = enumerate_cells(&k, 2, &BigInt::from(2));
        for dim in 0..=1 {
            for cell in e.cells(dim) {
                let certified = quasi_initial_certificate(&c, cell).is_ok();
                if certified {
                    assert!(quasi_initial_brute(&e, cell, 2).unwrap(), "{cell}");
                }
            }
        }
        let cert = quasi_initial_certificate(&c, &c.center_cell().unwrap()).unwrap();
        let report = cert.verify(&e);
        assert!(report.is_valid(), "{report}");
        assert!(!cert.is_quasi_final());

        let dual = dual_contraction(2);
        let final_cell = dual.center_cell().unwrap();
        let cert = quasi_initial_certificate(&dual, &final_cell).unwrap();
        assert!(cert.is_quasi_final());
        let dual_e = enumerate_cells(dual.complex(), 2, &BigInt::from(2));
        assert!(cert.verify(&dual_e).is_valid());
        assert!(quasi_final_brute(&dual_e, &final_cell, 2).unwrap());
    }

    #[test]
    fn unique_negligible_object_is_the_center() {
        let c = standard_contraction(3);
        let e = enumerate_cells(c.complex(), 0, &BigInt::from(2));
        let negligible: Vec<&Cell> =
            e.cells(0).iter().filter(|x| is_negligible(x, &c)).collect();
        assert_eq!(negligible, [&c.center_cell().unwrap()]);
    }

    #[test]
    fn contraction_json_round_trip() {
        let c = standard_contraction(2);
        let js = serde_json::to_string(&c).unwrap();
        assert!(js.contains("\"dual\":false"));
        assert!(js.contains("\"center\""));
        let data: ContractionData = serde_json::from_str(&js).unwrap();
        let back = Contraction::from_data(c.complex().clone(), data).unwrap();
        assert_eq!(back, c);

        let js = serde_json::to_string(&dual_contraction(3)).unwrap();
        let data: ContractionData = serde_json::from_str(&js).unwrap();
        let back = Contraction::from_data(dual_contraction(3).complex().clone(), data).unwrap();
        assert_eq!(back, dual_contraction(3));
    }
}
