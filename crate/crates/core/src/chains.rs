//! Integer chains over named basis elements.
//!
//! A [`Chain`] is a finitely supported integer combination of basis elements
//! of one fixed degree. Coefficients are arbitrary-precision integers and all
//! operations are exact. A chain is *nonnegative* when every coefficient is
//! ≥ 0; the coefficientwise order, the meet, and the positive/negative-part
//! decomposition of that order are what the base and contraction criteria in
//! the rest of the crate are built from.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Canonical token naming a basis element.
///
/// Simplex bases use strictly increasing integer tuples, rendered
/// `(0,1,2)`; any other string is a free-form token. Tuples compare
/// lexicographically and sort before tokens, so every degree has a canonical
/// iteration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Name {
    Simplex(Vec<u32>),
    Token(String),
}

impl Name {
    /// Tuple name for a nonempty strictly increasing vertex sequence.
    pub fn simplex(vertices: impl Into<Vec<u32>>) -> Self {
        let vertices = vertices.into();
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Name::Simplex(vertices)
    }

    pub fn token(t: impl Into<String>) -> Self {
        Name::Token(t.into())
    }

    pub fn as_simplex(&self) -> Option<&[u32]> {
        match self {
            Name::Simplex(v) => Some(v),
            Name::Token(_) => None,
        }
    }

    /// Degree implied by the name itself: a (p+1)-tuple names a degree-p
    /// element. Tokens carry no degree of their own.
    pub fn implied_degree(&self) -> Option<usize> {
        self.as_simplex().map(|v| v.len() - 1)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Name::Simplex(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Name::Token(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for Name {
    type Err = std::convert::Infallible;

    /// Strings of the shape `(i0,i1,...)` with strictly increasing
    /// nonnegative integers parse as simplex tuples; everything else is a
    /// token. Round-trips with [`Display`](fmt::Display).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let parts: Option<Vec<u32>> =
                inner.split(',').map(|p| p.trim().parse::<u32>().ok()).collect();
            if let Some(v) = parts {
                if !v.is_empty() && v.windows(2).all(|w| w[0] < w[1]) {
                    return Ok(Name::Simplex(v));
                }
            }
        }
        Ok(Name::Token(s.to_owned()))
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Name {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(s.parse().unwrap())
    }
}

/// A named generator of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub degree: usize,
    pub name: Name,
}

impl BasisElement {
    pub fn new(degree: usize, name: Name) -> Self {
        BasisElement { degree, name }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.name.fmt(f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("meet is only defined for nonnegative chains")]
    NegativeMeetInput,
    #[error("name {name} implies degree {implied}, chain has degree {degree}")]
    NameDegree {
        name: String,
        implied: usize,
        degree: usize,
    },
}

/// Finitely supported integer combination of basis elements of one degree.
///
/// Zero coefficients are never stored; two chains are equal iff their degree
/// and coefficient maps are equal. Term iteration follows the canonical
/// [`Name`] order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    degree: usize,
    coeffs: BTreeMap<Name, BigInt>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, coeffs: BTreeMap::new() }
    }

    /// The chain `1·name`.
    pub fn generator(degree: usize, name: Name) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name, BigInt::from(1));
        Chain { degree, coeffs }
    }

    /// Builds a chain from terms, summing repeats and pruning zeros.
    pub fn from_terms<I, C>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Name, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: BTreeMap<Name, BigInt> = BTreeMap::new();
        for (name, c) in terms {
            *coeffs.entry(name).or_insert_with(BigInt::zero) += c.into();
        }
        coeffs.retain(|_, c| !c.is_zero());
        Chain { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, name: &Name) -> BigInt {
        self.coeffs.get(name).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in canonical name order.
    pub fn terms(&self) -> impl Iterator<Item = (&Name, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Name> {
        self.coeffs.keys()
    }

    fn check_degree(&self, other: &Chain) -> Result<(), ChainError> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(ChainError::DegreeMismatch { left: self.degree, right: other.degree })
        }
    }

    pub fn add(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.check_degree(other)?;
        let mut coeffs = self.coeffs.clone();
        for (name, c) in &other.coeffs {
            let entry = coeffs.entry(name.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(name);
            }
        }
        Ok(Chain { degree: self.degree, coeffs })
    }

    pub fn neg(&self) -> Chain {
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.add(&other.neg())
    }

    pub fn scaled(&self, k: &BigInt) -> Chain {
        if k.is_zero() {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
        }
    }

    /// Adds `k·name` in place.
    pub fn add_term(&mut self, name: Name, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(name.clone()).or_insert_with(BigInt::zero);
        *entry += k;
        if entry.is_zero() {
            self.coeffs.remove(&name);
        }
    }

    /// True when every coefficient is ≥ 0.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// The coefficientwise order: `a ≤ b` iff `b − a` is nonnegative.
    pub fn leq(&self, other: &Chain) -> Result<bool, ChainError> {
        Ok(other.sub(self)?.is_nonneg())
    }

    /// Coefficientwise minimum of two nonnegative chains.
    pub fn meet(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.check_degree(other)?;
        if !self.is_nonneg() || !other.is_nonneg() {
            return Err(ChainError::NegativeMeetInput);
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(n, c)| {
                let d = other.coeffs.get(n)?;
                let m = c.min(d).clone();
                (!m.is_zero()).then_some((n.clone(), m))
            })
            .collect();
        Ok(Chain { degree: self.degree, coeffs })
    }

    /// Splits into positive and negative parts: `x = x⁺ − x⁻` with both
    /// parts nonnegative and of disjoint support.
    pub fn pos_neg_parts(&self) -> (Chain, Chain) {
        let mut pos = BTreeMap::new();
        let mut neg = BTreeMap::new();
        for (n, c) in &self.coeffs {
            if c.is_positive() {
                pos.insert(n.clone(), c.clone());
            } else {
                neg.insert(n.clone(), -c);
            }
        }
        (
            Chain { degree: self.degree, coeffs: pos },
            Chain { degree: self.degree, coeffs: neg },
        )
    }

    /// Largest absolute coefficient (zero for the zero chain).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Sum of all coefficients.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl fmt::Display for Chain {
    /// Compact sum in canonical term order: `(0,1)+(1,2)`, `2(0,1)-(0,2)`,
    /// `0` for the zero chain. Unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (name, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if mag != BigInt::from(1) {
                write!(f, "{mag}")?;
            }
            write!(f, "{name}")?;
        }
        Ok(())
    }
}

/// Integer encoding used in JSON: a plain number when it fits `i64`, a
/// decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

fn bigint_repr(v: &BigInt) -> IntRepr {
    match v.to_i64() {
        Some(x) => IntRepr::Small(x),
        None => IntRepr::Big(v.to_string()),
    }
}

fn bigint_from_repr<E: serde::de::Error>(r: IntRepr) -> Result<BigInt, E> {
    match r {
        IntRepr::Small(x) => Ok(BigInt::from(x)),
        IntRepr::Big(s) => s
            .parse::<BigInt>()
            .map_err(|_| E::custom(format!("invalid integer literal {s:?}"))),
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("degree", &self.degree)?;
        // Entries emitted in canonical name order.
        let coeffs: Vec<(String, IntRepr)> = self
            .coeffs
            .iter()
            .map(|(n, c)| (n.to_string(), bigint_repr(c)))
            .collect();
        struct Pairs(Vec<(String, IntRepr)>);
        impl Serialize for Pairs {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in &self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        map.serialize_entry("coeffs", &Pairs(coeffs))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            degree: usize,
            #[serde(default)]
            coeffs: BTreeMap<String, IntRepr>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut coeffs = BTreeMap::new();
        for (key, val) in repr.coeffs {
            let name: Name = key.parse().unwrap();
            if let Some(implied) = name.implied_degree() {
                if implied != repr.degree {
                    return Err(D::Error::custom(format!(
                        "name {name} implies degree {implied}, chain has degree {}",
                        repr.degree
                    )));
                }
            }
            let c = bigint_from_repr(val)?;
            if c.is_zero() {
                continue;
            }
            if coeffs.insert(name, c).is_some() {
                return Err(D::Error::custom(format!("duplicate coefficient key {key:?}")));
            }
        }
        Ok(Chain { degree: repr.degree, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Name {
        Name::simplex(v.to_vec())
    }

    fn gen1(v: &[u32]) -> Chain {
        Chain::generator(v.len() - 1, s(v))
    }

    #[test]
    fn add_disjoint_supports() {
        let sum = gen1(&[0, 1]).add(&gen1(&[1, 2])).unwrap();
        assert_eq!(sum, Chain::from_terms(1, [(s(&[0, 1]), 1), (s(&[1, 2]), 1)]));
    }

    #[test]
    fn add_inverse_cancels() {
        let x = gen1(&[0, 1]);
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_cancellation_keeps_remainder() {
        let mixed = gen1(&[0, 2]).sub(&gen1(&[0, 1])).unwrap();
        assert_eq!(mixed.add(&gen1(&[0, 1])).unwrap(), gen1(&[0, 2]));
    }

    #[test]
    fn add_degree_mismatch_is_error() {
        let err = gen1(&[0, 1]).add(&Chain::generator(0, s(&[0]))).unwrap_err();
        assert_eq!(err, ChainError::DegreeMismatch { left: 1, right: 0 });
    }

    #[test]
    fn leq_examples() {
        assert!(Chain::zero(1).leq(&gen1(&[0, 1])).unwrap());
        assert!(!gen1(&[0, 1]).leq(&gen1(&[0, 2])).unwrap());
        let big = Chain::from_terms(1, [(s(&[0, 1]), 2), (s(&[1, 2]), 1)]);
        assert!(gen1(&[0, 1]).leq(&big).unwrap());
    }

    #[test]
    fn meet_examples() {
        let a = gen1(&[0, 1]).add(&gen1(&[1, 2])).unwrap();
        let b = gen1(&[1, 2]).add(&gen1(&[2, 3])).unwrap();
        assert_eq!(a.meet(&b).unwrap(), gen1(&[1, 2]));
        assert!(a.meet(&Chain::zero(1)).unwrap().is_zero());
        assert_eq!(gen1(&[0, 1]).scaled(&2.into()).meet(&gen1(&[0, 1])).unwrap(), gen1(&[0, 1]));
    }

    #[test]
    fn meet_rejects_negative_input() {
        let neg = gen1(&[0, 1]).neg();
        assert_eq!(neg.meet(&gen1(&[0, 1])).unwrap_err(), ChainError::NegativeMeetInput);
    }

    #[test]
    fn pos_neg_parts_sign_split() {
        let x = Chain::generator(0, s(&[1])).sub(&Chain::generator(0, s(&[0]))).unwrap();
        let (p, n) = x.pos_neg_parts();
        assert_eq!(p, Chain::generator(0, s(&[1])));
        assert_eq!(n, Chain::generator(0, s(&[0])));
    }

    #[test]
    fn pos_neg_parts_of_triangle_boundary() {
        // (1,2) - (0,2) + (0,1) splits into ((0,1)+(1,2), (0,2)).
        let d = Chain::from_terms(1, [(s(&[1, 2]), 1), (s(&[0, 2]), -1), (s(&[0, 1]), 1)]);
        let (p, n) = d.pos_neg_parts();
        assert_eq!(p, gen1(&[0, 1]).add(&gen1(&[1, 2])).unwrap());
        assert_eq!(n, gen1(&[0, 2]));
    }

    #[test]
    fn pos_neg_parts_of_zero() {
        let (p, n) = Chain::zero(2).pos_neg_parts();
        assert!(p.is_zero() && n.is_zero());
    }

    #[test]
    fn display_is_compact_and_ordered() {
        let d = Chain::from_terms(1, [(s(&[1, 2]), 1), (s(&[0, 2]), -1), (s(&[0, 1]), 2)]);
        assert_eq!(d.to_string(), "2(0,1)-(0,2)+(1,2)");
        assert_eq!(Chain::zero(0).to_string(), "0");
    }

    #[test]
    fn name_parse_round_trip() {
        let n: Name = "(0,1,2)".parse().unwrap();
        assert_eq!(n, s(&[0, 1, 2]));
        let t: Name = "(2,1)".parse().unwrap();
        assert_eq!(t, Name::token("(2,1)"));
        let w: Name = "w3".parse().unwrap();
        assert_eq!(w, Name::token("w3"));
        assert_eq!(n.to_string().parse::<Name>().unwrap(), n);
    }

    #[test]
    fn json_round_trip_and_shape() {
        let d = Chain::from_terms(1, [(s(&[1, 2]), 1), (s(&[0, 2]), -1), (s(&[0, 1]), 1)]);
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(js, r#"{"degree":1,"coeffs":{"(0,1)":1,"(0,2)":-1,"(1,2)":1}}"#);
        let back: Chain = serde_json::from_str(&js).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn json_rejects_degree_mismatched_simplex_names() {
        let err = serde_json::from_str::<Chain>(r#"{"degree":2,"coeffs":{"(0,1)":1}}"#);
        assert!(err.is_err());
    }
}
