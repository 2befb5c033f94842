//! Augmented directed complexes with distinguished bases.
//!
//! An [`Adc`] is a finitely graded chain complex of free abelian groups with
//! an augmentation to the integers in degree 0. Each degree carries a finite
//! basis; the nonnegative combinations of basis elements form the positivity
//! monoid of that degree. Differentials and augmentations are stored on basis
//! elements and extended linearly.
//!
//! Morphisms preserve differentials, augmentations, and positivity;
//! homotopies connect two parallel morphisms through degree-raising maps that
//! land in the positivity monoids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::chains::{BasisElement, Chain, Name};

/// Structural errors: malformed complexes, morphisms, or homotopies.
///
/// Mathematical failures (broken identities, lost positivity) are not
/// errors; they are collected in [`Report`]s by the `validate_*` functions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdcError {
    #[error("duplicate basis name {0}")]
    DuplicateName(String),
    #[error("unknown basis name {name} in degree {degree}")]
    UnknownName { name: String, degree: usize },
    #[error("chain for {name} has degree {got}, expected {want}")]
    ChainDegree { name: String, got: usize, want: usize },
    #[error("morphism endpoints do not match")]
    EndpointMismatch,
    #[error("constant morphism needs decent complexes")]
    NotDecent,
    #[error("constant center must be nonnegative")]
    CenterNotPositive,
    #[error("constant center must have augmentation 1, got {0}")]
    CenterAugmentation(BigInt),
}

/// One failed check, with the basis element it failed on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: usize,
    pub name: Option<Name>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "[deg {}] {}: {}", self.degree, n, self.message),
            None => write!(f, "[deg {}] {}", self.degree, self.message),
        }
    }
}

/// Outcome of a validation pass: empty means every check held.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, degree: usize, name: Option<Name>, message: impl Into<String>) {
        self.violations.push(Violation { degree, name, message: message.into() });
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Augmented directed complex over a finite graded basis.
///
/// Degrees run from 0 to `max_degree`; every group above `max_degree` is
/// zero. The positivity monoid of each degree is generated by the basis, so
/// a chain is positive exactly when its coefficients are all nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adc {
    max_degree: usize,
    basis: Vec<Vec<Name>>,
    diff: Vec<BTreeMap<Name, Chain>>,
    aug: BTreeMap<Name, BigInt>,
}

impl Adc {
    /// Builds a complex, checking structure only: names must be unique
    /// across all degrees (the JSON form keys tables by bare name), every
    /// differential and augmentation entry must name a basis element, and
    /// every differential chain must live one degree down with support
    /// inside the basis. Missing entries default to zero.
    pub fn new(
        max_degree: usize,
        mut basis: Vec<Vec<Name>>,
        diff: impl IntoIterator<Item = (Name, Chain)>,
        aug: impl IntoIterator<Item = (Name, BigInt)>,
    ) -> Result<Adc, AdcError> {
        basis.resize(max_degree + 1, Vec::new());
        for names in &mut basis {
            names.sort();
        }
        let mut degree_of: BTreeMap<&Name, usize> = BTreeMap::new();
        for (p, names) in basis.iter().enumerate() {
            for n in names {
                if degree_of.insert(n, p).is_some() {
                    return Err(AdcError::DuplicateName(n.to_string()));
                }
            }
        }
        let mut diff_tables: Vec<BTreeMap<Name, Chain>> = vec![BTreeMap::new(); max_degree + 1];
        for (name, chain) in diff {
            let &p = degree_of
                .get(&name)
                .ok_or_else(|| AdcError::UnknownName { name: name.to_string(), degree: 0 })?;
            if p == 0 {
                return Err(AdcError::ChainDegree { name: name.to_string(), got: chain.degree(), want: 0 });
            }
            if chain.degree() != p - 1 {
                return Err(AdcError::ChainDegree {
                    name: name.to_string(),
                    got: chain.degree(),
                    want: p - 1,
                });
            }
            for n in chain.support() {
                if degree_of.get(n) != Some(&(p - 1)) {
                    return Err(AdcError::UnknownName { name: n.to_string(), degree: p - 1 });
                }
            }
            diff_tables[p].insert(name, chain);
        }
        let mut aug_table = BTreeMap::new();
        for (name, value) in aug {
            if degree_of.get(&name) != Some(&0) {
                return Err(AdcError::UnknownName { name: name.to_string(), degree: 0 });
            }
            if !value.is_zero() {
                aug_table.insert(name, value);
            }
        }
        Ok(Adc { max_degree, basis, diff: diff_tables, aug: aug_table })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Basis names of one degree in canonical order (empty above
    /// `max_degree`).
    pub fn basis(&self, degree: usize) -> &[Name] {
        self.basis.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All basis elements, lowest degree first.
    pub fn basis_elements(&self) -> impl Iterator<Item = BasisElement> + '_ {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(p, names)| names.iter().map(move |n| BasisElement::new(p, n.clone())))
    }

    pub fn contains(&self, degree: usize, name: &Name) -> bool {
        self.basis(degree).binary_search(name).is_ok()
    }

    /// Degree of a basis name, if present anywhere.
    pub fn degree_of(&self, name: &Name) -> Option<usize> {
        (0..=self.max_degree).find(|&p| self.contains(p, name))
    }

    /// Differential of a degree-`degree` basis element.
    pub fn diff_of(&self, degree: usize, name: &Name) -> Chain {
        if degree == 0 || degree > self.max_degree {
            return Chain::zero(degree.saturating_sub(1));
        }
        self.diff[degree].get(name).cloned().unwrap_or_else(|| Chain::zero(degree - 1))
    }

    /// Linear extension of the differential; degree-0 and out-of-range
    /// chains map to zero.
    pub fn diff_chain(&self, x: &Chain) -> Chain {
        let p = x.degree();
        if p == 0 {
            return Chain::zero(0);
        }
        let mut out = Chain::zero(p - 1);
        for (name, c) in x.terms() {
            for (m, d) in self.diff_of(p, name).terms() {
                out.add_term(m.clone(), &(c * d));
            }
        }
        out
    }

    pub fn aug_of(&self, name: &Name) -> BigInt {
        self.aug.get(name).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Augmentation of a degree-0 chain.
    pub fn aug_chain(&self, x: &Chain) -> BigInt {
        debug_assert_eq!(x.degree(), 0);
        x.terms().map(|(n, c)| c * self.aug_of(n)).sum()
    }

    /// Checks the chain-complex identities `d∘d = 0` and `ε∘d = 0` on every
    /// basis element.
    pub fn validate(&self) -> Report {
        let mut report = Report::default();
        for p in 2..=self.max_degree {
            for name in self.basis(p) {
                let dd = self.diff_chain(&self.diff_of(p, name));
                if !dd.is_zero() {
                    report.push(p, Some(name.clone()), format!("d(d(-)) = {dd}, expected 0"));
                }
            }
        }
        if self.max_degree >= 1 {
            for name in self.basis(1) {
                let e = self.aug_chain(&self.diff_of(1, name));
                if !e.is_zero() {
                    report.push(1, Some(name.clone()), format!("aug(d(-)) = {e}, expected 0"));
                }
            }
        }
        report
    }

    /// A complex is decent when the augmentation is nonnegative on the
    /// positivity monoid, i.e. on every degree-0 basis element.
    pub fn is_decent(&self) -> bool {
        self.basis(0).iter().all(|n| !self.aug_of(n).is_negative())
    }

    /// The dual that negates differentials in the degrees listed in `j`.
    /// Basis and augmentation are untouched; applying the same `j` twice is
    /// the identity.
    pub fn j_dual(&self, j: &BTreeSet<usize>) -> Adc {
        let mut diff = self.diff.clone();
        for (p, table) in diff.iter_mut().enumerate() {
            if j.contains(&p) {
                for chain in table.values_mut() {
                    *chain = chain.neg();
                }
            }
        }
        Adc { max_degree: self.max_degree, basis: self.basis.clone(), diff, aug: self.aug.clone() }
    }

    /// The opposite complex: every positive degree dualized.
    pub fn op_dual(&self) -> Adc {
        self.j_dual(&(1..=self.max_degree).collect())
    }

    /// Total number of basis elements.
    pub fn basis_len(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }
}

impl Serialize for Adc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("max_degree", &self.max_degree)?;
        let basis: Vec<Vec<String>> = self
            .basis
            .iter()
            .map(|names| names.iter().map(Name::to_string).collect())
            .collect();
        map.serialize_entry("basis", &basis)?;
        let mut diff: BTreeMap<String, &Chain> = BTreeMap::new();
        for table in &self.diff {
            for (n, c) in table {
                diff.insert(n.to_string(), c);
            }
        }
        map.serialize_entry("diff", &diff)?;
        struct AugPairs<'a>(&'a BTreeMap<Name, BigInt>);
        impl Serialize for AugPairs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    match i64::try_from(v) {
                        Ok(small) => m.serialize_entry(&k.to_string(), &small)?,
                        Err(_) => m.serialize_entry(&k.to_string(), &v.to_string())?,
                    }
                }
                m.end()
            }
        }
        map.serialize_entry("aug", &AugPairs(&self.aug))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Adc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum IntRepr {
            Small(i64),
            Big(String),
        }
        #[derive(Deserialize)]
        struct Repr {
            max_degree: usize,
            basis: Vec<Vec<String>>,
            #[serde(default)]
            diff: BTreeMap<String, Chain>,
            #[serde(default)]
            aug: BTreeMap<String, IntRepr>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let basis: Vec<Vec<Name>> = repr
            .basis
            .into_iter()
            .map(|names| names.into_iter().map(|s| s.parse().unwrap()).collect())
            .collect();
        let diff = repr
            .diff
            .into_iter()
            .map(|(k, v)| (k.parse().unwrap(), v))
            .collect::<Vec<(Name, Chain)>>();
        let aug = repr
            .aug
            .into_iter()
            .map(|(k, v)| {
                let value = match v {
                    IntRepr::Small(x) => BigInt::from(x),
                    IntRepr::Big(s) => s
                        .parse::<BigInt>()
                        .map_err(|_| D::Error::custom(format!("invalid integer {s:?}")))?,
                };
                Ok((k.parse::<Name>().unwrap(), value))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Adc::new(repr.max_degree, basis, diff, aug).map_err(D::Error::custom)
    }
}

/// Degree-preserving map of complexes, stored on basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdcMorphism {
    source: Arc<Adc>,
    target: Arc<Adc>,
    maps: Vec<BTreeMap<Name, Chain>>,
}

impl AdcMorphism {
    /// Builds a morphism from per-degree tables; missing entries are zero.
    pub fn new(
        source: Arc<Adc>,
        target: Arc<Adc>,
        entries: impl IntoIterator<Item = (usize, Name, Chain)>,
    ) -> Result<AdcMorphism, AdcError> {
        let mut maps = vec![BTreeMap::new(); source.max_degree() + 1];
        for (p, name, chain) in entries {
            if !source.contains(p, &name) {
                return Err(AdcError::UnknownName { name: name.to_string(), degree: p });
            }
            if chain.degree() != p {
                return Err(AdcError::ChainDegree { name: name.to_string(), got: chain.degree(), want: p });
            }
            for n in chain.support() {
                if !target.contains(p, n) {
                    return Err(AdcError::UnknownName { name: n.to_string(), degree: p });
                }
            }
            maps[p].insert(name, chain);
        }
        Ok(AdcMorphism { source, target, maps })
    }

    pub fn identity(k: &Arc<Adc>) -> AdcMorphism {
        let entries = k
            .basis_elements()
            .map(|b| (b.degree, b.name.clone(), Chain::generator(b.degree, b.name)));
        AdcMorphism::new(k.clone(), k.clone(), entries.collect::<Vec<_>>()).unwrap()
    }

    pub fn source(&self) -> &Arc<Adc> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Adc> {
        &self.target
    }

    pub fn image_of(&self, degree: usize, name: &Name) -> Chain {
        self.maps
            .get(degree)
            .and_then(|t| t.get(name))
            .cloned()
            .unwrap_or_else(|| Chain::zero(degree))
    }

    /// Linear extension to chains.
    pub fn apply(&self, x: &Chain) -> Chain {
        let p = x.degree();
        let mut out = Chain::zero(p);
        for (name, c) in x.terms() {
            for (m, d) in self.image_of(p, name).terms() {
                out.add_term(m.clone(), &(c * d));
            }
        }
        out
    }

    /// Composite `self ∘ inner`.
    pub fn compose(&self, inner: &AdcMorphism) -> Result<AdcMorphism, AdcError> {
        if inner.target.as_ref() != self.source.as_ref() {
            return Err(AdcError::EndpointMismatch);
        }
        let entries: Vec<(usize, Name, Chain)> = inner
            .source
            .basis_elements()
            .map(|b| {
                let mid = inner.image_of(b.degree, &b.name);
                (b.degree, b.name, self.apply(&mid))
            })
            .collect();
        AdcMorphism::new(inner.source.clone(), self.target.clone(), entries)
    }

    /// Checks commutation with differentials, compatibility with the
    /// augmentations, and preservation of positivity.
    pub fn validate(&self) -> Report {
        let mut report = Report::default();
        for b in self.source.basis_elements() {
            let image = self.image_of(b.degree, &b.name);
            if !image.is_nonneg() {
                report.push(b.degree, Some(b.name.clone()), format!("image {image} not nonnegative"));
            }
            if b.degree == 0 {
                let want = self.source.aug_of(&b.name);
                let got = self.target.aug_chain(&image);
                if got != want {
                    report.push(0, Some(b.name.clone()), format!("aug(f(-)) = {got}, expected {want}"));
                }
            } else {
                let lhs = self.target.diff_chain(&image);
                let rhs = self.apply(&self.source.diff_of(b.degree, &b.name));
                if lhs != rhs {
                    report.push(
                        b.degree,
                        Some(b.name.clone()),
                        format!("d(f(-)) = {lhs} but f(d(-)) = {rhs}"),
                    );
                }
            }
        }
        report
    }
}

/// Constant endomorphism-style morphism: everything in degree 0 maps to its
/// augmentation times `center`, all higher degrees map to zero.
pub fn constant_morphism(
    source: &Arc<Adc>,
    target: &Arc<Adc>,
    center: &Chain,
) -> Result<AdcMorphism, AdcError> {
    if !source.is_decent() || !target.is_decent() {
        return Err(AdcError::NotDecent);
    }
    if !center.is_nonneg() {
        return Err(AdcError::CenterNotPositive);
    }
    let aug = target.aug_chain(center);
    if aug != BigInt::from(1) {
        return Err(AdcError::CenterAugmentation(aug));
    }
    let entries: Vec<(usize, Name, Chain)> = source
        .basis(0)
        .iter()
        .map(|n| (0, n.clone(), center.scaled(&source.aug_of(n))))
        .collect();
    AdcMorphism::new(source.clone(), target.clone(), entries)
}

/// Degree-raising homotopy between two parallel morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdcHomotopy {
    from: AdcMorphism,
    to: AdcMorphism,
    maps: Vec<BTreeMap<Name, Chain>>,
}

impl AdcHomotopy {
    /// Builds a homotopy from per-degree tables `degree p ↦ chain of degree
    /// p+1` over the target complex; missing entries are zero.
    pub fn new(
        from: AdcMorphism,
        to: AdcMorphism,
        entries: impl IntoIterator<Item = (usize, Name, Chain)>,
    ) -> Result<AdcHomotopy, AdcError> {
        if from.source() != to.source() || from.target() != to.target() {
            return Err(AdcError::EndpointMismatch);
        }
        let source = from.source().clone();
        let target = from.target().clone();
        let mut maps = vec![BTreeMap::new(); source.max_degree() + 1];
        for (p, name, chain) in entries {
            if !source.contains(p, &name) {
                return Err(AdcError::UnknownName { name: name.to_string(), degree: p });
            }
            if chain.degree() != p + 1 {
                return Err(AdcError::ChainDegree { name: name.to_string(), got: chain.degree(), want: p + 1 });
            }
            for n in chain.support() {
                if !target.contains(p + 1, n) {
                    return Err(AdcError::UnknownName { name: n.to_string(), degree: p + 1 });
                }
            }
            maps[p].insert(name, chain);
        }
        Ok(AdcHomotopy { from, to, maps })
    }

    pub fn from_morphism(&self) -> &AdcMorphism {
        &self.from
    }

    pub fn to_morphism(&self) -> &AdcMorphism {
        &self.to
    }

    pub fn image_of(&self, degree: usize, name: &Name) -> Chain {
        self.maps
            .get(degree)
            .and_then(|t| t.get(name))
            .cloned()
            .unwrap_or_else(|| Chain::zero(degree + 1))
    }

    /// Linear extension to chains.
    pub fn apply(&self, x: &Chain) -> Chain {
        let p = x.degree();
        let mut out = Chain::zero(p + 1);
        for (name, c) in x.terms() {
            for (m, d) in self.image_of(p, name).terms() {
                out.add_term(m.clone(), &(c * d));
            }
        }
        out
    }

    /// Checks positivity of every image and the boundary identity
    /// `d∘h + h∘d = g − f` (in degree 0, `d∘h = g − f`).
    pub fn validate(&self) -> Report {
        let mut report = Report::default();
        let source = self.from.source();
        let target = self.from.target();
        for b in source.basis_elements() {
            let image = self.image_of(b.degree, &b.name);
            if !image.is_nonneg() {
                report.push(b.degree, Some(b.name.clone()), format!("image {image} not nonnegative"));
            }
            let gen = Chain::generator(b.degree, b.name.clone());
            let mut lhs = target.diff_chain(&image);
            if b.degree > 0 {
                lhs = lhs.add(&self.apply(&source.diff_of(b.degree, &b.name))).unwrap();
            }
            let rhs = self.to.apply(&gen).sub(&self.from.apply(&gen)).unwrap();
            if lhs != rhs {
                report.push(
                    b.degree,
                    Some(b.name.clone()),
                    format!("d(h(-)) + h(d(-)) = {lhs}, expected g - f = {rhs}"),
                );
            }
        }
        report
    }
}
