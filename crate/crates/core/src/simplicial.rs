//! Finite posets, simplicial complexes, and their chain complexes.
//!
//! A simplicial complex here is a finite poset together with a down-closed
//! family of nonempty finite chains (totally ordered subsets), the faces.
//! Its normalized chains form an [`Adc`] whose degree-p basis consists of
//! the (p+1)-element faces written as strictly increasing tuples; the
//! standard simplexes arise from total orders, and their ν-images are the
//! orientals.
//!
//! Elements are numbered by a linear extension of the poset so that faces
//! have a canonical tuple notation. The extension is the input order
//! whenever that order is already compatible with the relation.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::adc::{Adc, AdcMorphism};
use crate::chains::{Chain, Name};
use crate::solve::{solve_aug, solve_boundary};

/// Structural errors raised while loading posets and complexes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("order is not antisymmetric: {0} and {1} are comparable both ways")]
    NotAntisymmetric(String, String),
    #[error("face {0} is not a chain of the order")]
    FaceNotChain(String),
    #[error("faces must be nonempty")]
    EmptyFace,
}

/// Finite partially ordered set.
///
/// Elements are stored in a linear extension of the order; all indices
/// refer to that extension, so `i ≤ j` holds in the order only if `i ≤ j`
/// as integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    tokens: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds a poset from the reflexive-transitive closure of the given
    /// pairs, rejecting antisymmetry violations. The element order is kept
    /// as given when it is a linear extension; otherwise elements are
    /// stably reordered into one.
    pub fn new(
        tokens: Vec<String>,
        pairs: &[(String, String)],
    ) -> Result<Poset, SimplicialError> {
        let n = tokens.len();
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, t) in tokens.iter().enumerate() {
            if index.insert(t, i).is_some() {
                return Err(SimplicialError::DuplicateElement(t.clone()));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            let &i = index.get(a.as_str()).ok_or_else(|| SimplicialError::UnknownElement(a.clone()))?;
            let &j = index.get(b.as_str()).ok_or_else(|| SimplicialError::UnknownElement(b.clone()))?;
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(SimplicialError::NotAntisymmetric(
                        tokens[i].clone(),
                        tokens[j].clone(),
                    ));
                }
            }
        }
        // Stable topological order: input order if already an extension.
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let next = (0..n)
                .find(|&i| {
                    !placed[i] && (0..n).all(|j| placed[j] || j == i || !leq[j][i])
                })
                .expect("acyclic by antisymmetry");
            placed[next] = true;
            order.push(next);
        }
        let tokens: Vec<String> = order.iter().map(|&i| tokens[i].clone()).collect();
        let leq: Vec<Vec<bool>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| leq[i][j]).collect())
            .collect();
        Ok(Poset { tokens, leq })
    }

    /// The total order `0 < 1 < … < count−1` with decimal tokens.
    pub fn total_order(count: usize) -> Poset {
        let tokens = (0..count).map(|i| i.to_string()).collect();
        let leq = (0..count)
            .map(|i| (0..count).map(|j| i <= j).collect())
            .collect();
        Poset { tokens, leq }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Element tokens in extension order.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, i: usize) -> &str {
        &self.tokens[i]
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt_idx(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.leq[i][j]))
    }
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("elements", &self.tokens)?;
        map.serialize_entry("leq", &strict_pairs(self))?;
        map.end()
    }
}

fn strict_pairs(poset: &Poset) -> Vec<(String, String)> {
    let n = poset.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if poset.lt_idx(i, j) {
                pairs.push((poset.token(i).to_string(), poset.token(j).to_string()));
            }
        }
    }
    pairs
}

#[derive(Deserialize)]
struct PosetRepr {
    elements: Vec<String>,
    #[serde(default)]
    leq: Vec<(String, String)>,
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PosetRepr::deserialize(deserializer)?;
        Poset::new(repr.elements, &repr.leq).map_err(D::Error::custom)
    }
}

/// All nonempty chains of the poset as strictly increasing index tuples,
/// lexicographically sorted.
pub fn xi(poset: &Poset) -> Vec<Vec<u32>> {
    let n = poset.len();
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn extend(poset: &Poset, n: usize, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let last = *stack.last().unwrap() as usize;
        out.push(stack.clone());
        for j in last + 1..n {
            if poset.leq_idx(last, j) {
                stack.push(j as u32);
                extend(poset, n, stack, out);
                stack.pop();
            }
        }
    }
    for start in 0..n {
        stack.push(start as u32);
        extend(poset, n, &mut stack, &mut out);
        stack.pop();
    }
    out.sort();
    out
}

/// Simplicial complex: a poset plus a down-closed family of chains.
///
/// Loading closes the face family downward and adjoins every singleton, so
/// the stored family always satisfies the complex axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    poset: Poset,
    faces: BTreeSet<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex from faces given as element tokens; each face must
    /// be a chain of the order.
    pub fn new(
        poset: Poset,
        token_faces: &[Vec<String>],
    ) -> Result<SimplicialComplex, SimplicialError> {
        let mut index_faces = Vec::with_capacity(token_faces.len());
        for face in token_faces {
            let mut idx: Vec<u32> = Vec::with_capacity(face.len());
            for t in face {
                let i = poset
                    .index_of(t)
                    .ok_or_else(|| SimplicialError::UnknownElement(t.clone()))?;
                idx.push(i as u32);
            }
            idx.sort();
            idx.dedup();
            index_faces.push(idx);
        }
        SimplicialComplex::from_index_faces(poset, index_faces)
    }

    /// Builds a complex from faces given as strictly increasing index
    /// tuples.
    pub fn from_index_faces(
        poset: Poset,
        index_faces: Vec<Vec<u32>>,
    ) -> Result<SimplicialComplex, SimplicialError> {
        let mut faces: BTreeSet<Vec<u32>> = BTreeSet::new();
        for i in 0..poset.len() {
            faces.insert(vec![i as u32]);
        }
        for face in index_faces {
            if face.is_empty() {
                return Err(SimplicialError::EmptyFace);
            }
            for w in face.windows(2) {
                if !poset.leq_idx(w[0] as usize, w[1] as usize) {
                    let tokens: Vec<&str> =
                        face.iter().map(|&i| poset.token(i as usize)).collect();
                    return Err(SimplicialError::FaceNotChain(tokens.join(",")));
                }
            }
            // Downward closure: every nonempty subset is a face.
            for mask in 1u64..(1 << face.len()) {
                let sub: Vec<u32> = face
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(sub);
            }
        }
        Ok(SimplicialComplex { poset, faces })
    }

    /// The full complex: every chain of the poset is a face.
    pub fn full(poset: Poset) -> SimplicialComplex {
        let faces = xi(&poset).into_iter().collect();
        SimplicialComplex { poset, faces }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.faces.iter()
    }

    pub fn has_face(&self, face: &[u32]) -> bool {
        self.faces.contains(face)
    }

    /// Largest face size minus one; 0 for a complex of vertices only.
    pub fn dimension(&self) -> usize {
        self.faces.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("elements", &self.poset.tokens)?;
        map.serialize_entry("leq", &strict_pairs(&self.poset))?;
        let faces: Vec<Vec<&str>> = self
            .faces
            .iter()
            .map(|f| f.iter().map(|&i| self.poset.token(i as usize)).collect())
            .collect();
        map.serialize_entry("faces", &faces)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            elements: Vec<String>,
            #[serde(default)]
            leq: Vec<(String, String)>,
            #[serde(default)]
            faces: Vec<Vec<String>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let poset = Poset::new(repr.elements, &repr.leq).map_err(D::Error::custom)?;
        SimplicialComplex::new(poset, &repr.faces).map_err(D::Error::custom)
    }
}

/// Normalized chains of a simplicial complex as an augmented directed
/// complex: degree-p basis the (p+1)-tuples in the face family, alternating
/// face-drop differential, augmentation 1 on every vertex.
pub fn chnorm_of_complex(c: &SimplicialComplex) -> Adc {
    let max_degree = c.dimension();
    let mut basis = vec![Vec::new(); max_degree + 1];
    let mut diff = Vec::new();
    for face in c.faces() {
        let p = face.len() - 1;
        basis[p].push(Name::Simplex(face.clone()));
        if p >= 1 {
            let chain = Chain::from_terms(
                p - 1,
                (0..=p).map(|k| {
                    let mut t = face.clone();
                    t.remove(k);
                    (Name::Simplex(t), BigInt::from(if k % 2 == 0 { 1 } else { -1 }))
                }),
            );
            diff.push((Name::Simplex(face.clone()), chain));
        }
    }
    let aug = basis[0]
        .iter()
        .map(|n| (n.clone(), BigInt::from(1)))
        .collect::<Vec<_>>();
    Adc::new(max_degree, basis, diff, aug).expect("tuple bases are structurally valid")
}

/// Normalized chains of the standard n-simplex: the full complex on the
/// total order 0 < … < n.
pub fn standard_simplex_adc(n: usize) -> Adc {
    chnorm_of_complex(&SimplicialComplex::full(Poset::total_order(n + 1)))
}

/// The base complex of the n-th oriental: same as
/// [`standard_simplex_adc`]; its ν-cells form the free ∞-category on one
/// n-cell.
pub fn oriental(n: usize) -> Adc {
    standard_simplex_adc(n)
}

/// The base complex of the oriental of a poset: normalized chains of the
/// full complex whose faces are all nonempty chains.
pub fn poset_oriental_adc(poset: &Poset) -> Adc {
    chnorm_of_complex(&SimplicialComplex::full(poset.clone()))
}

/// The recursive tuple order that witnesses strong loop-freeness of the
/// bases built by [`chnorm_of_complex`]: a singleton (i₀) precedes (j₀,…)
/// when i₀ ≤ j₀; otherwise (i₀,…,i_p) precedes (j₀,…,j_q) when i₀ < j₀, or
/// when i₀ = j₀, q > 0, and the tails compare in the opposite direction.
/// Comparisons are in the poset order, so incomparable heads yield false.
pub fn base_order_preccurlyeq(poset: &Poset, a: &[u32], b: &[u32]) -> bool {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 {
        return poset.leq_idx(a[0] as usize, b[0] as usize);
    }
    if poset.lt_idx(a[0] as usize, b[0] as usize) {
        return true;
    }
    a[0] == b[0] && b.len() > 1 && base_order_preccurlyeq(poset, &b[1..], &a[1..])
}

/// All morphisms from the normalized chains of the standard n-simplex to
/// `k`, with every image coefficient at most `cap`, plus a flag reporting
/// whether morphisms beyond the cap may exist. A false flag certifies that
/// the list is the complete nerve simplex set in dimension n.
pub fn nerve_simplices(
    k: &Arc<Adc>,
    n: usize,
    cap: &BigInt,
) -> (Vec<AdcMorphism>, bool) {
    let delta = Arc::new(standard_simplex_adc(n));
    let elements: Vec<(usize, Name)> = delta
        .basis_elements()
        .map(|b| (b.degree, b.name))
        .collect();
    let mut out = Vec::new();
    let mut truncated = false;
    let mut images: BTreeMap<Name, Chain> = BTreeMap::new();

    fn assign(
        delta: &Arc<Adc>,
        k: &Arc<Adc>,
        cap: &BigInt,
        elements: &[(usize, Name)],
        idx: usize,
        images: &mut BTreeMap<Name, Chain>,
        out: &mut Vec<AdcMorphism>,
        truncated: &mut bool,
    ) {
        if idx == elements.len() {
            let entries: Vec<(usize, Name, Chain)> = elements
                .iter()
                .map(|(p, n)| (*p, n.clone(), images[n].clone()))
                .collect();
            let f = AdcMorphism::new(delta.clone(), k.clone(), entries)
                .expect("images built over the target basis");
            debug_assert!(f.validate().is_valid());
            out.push(f);
            return;
        }
        let (p, name) = &elements[idx];
        let sols = if *p == 0 {
            solve_aug(k, &delta.aug_of(name), cap)
        } else {
            let mut target = Chain::zero(p - 1);
            for (m, c) in delta.diff_of(*p, name).terms() {
                for (t, d) in images[m].terms() {
                    target.add_term(t.clone(), &(c * d));
                }
            }
            solve_boundary(k, *p, &target, cap)
        };
        *truncated |= sols.beyond_cap;
        for chain in sols.chains {
            images.insert(name.clone(), chain);
            assign(delta, k, cap, elements, idx + 1, images, out, truncated);
        }
        images.remove(name);
    }

    assign(&delta, k, cap, &elements, 0, &mut images, &mut out, &mut truncated);
    (out, truncated)
}

/// Number of monotone maps from the chain 0 < … < m to the poset whose
/// image set is a face.
pub fn count_kappa_simplices(c: &SimplicialComplex, m: usize) -> u64 {
    let n = c.poset().len();
    let mut count = 0u64;

    fn dfs(
        c: &SimplicialComplex,
        n: usize,
        last: usize,
        image: &mut Vec<u32>,
        remaining: usize,
        count: &mut u64,
    ) {
        if remaining == 0 {
            *count += 1;
            return;
        }
        for j in 0..n {
            if !c.poset().leq_idx(last, j) {
                continue;
            }
            let pushed = if image.last() == Some(&(j as u32)) {
                false
            } else {
                image.push(j as u32);
                true
            };
            let mut sorted = image.clone();
            sorted.sort();
            if c.has_face(&sorted) {
                dfs(c, n, j, image, remaining - 1, count);
            }
            if pushed {
                image.pop();
            }
        }
    }

    for start in 0..n {
        let mut image = vec![start as u32];
        dfs(c, n, start, &mut image, m, &mut count);
    }
    count
}
