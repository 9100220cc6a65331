//! The discrete groups `Z^d` with counting measure.
//!
//! Notation is additive: the right translate `x g^{-n}` of the multiplicative
//! setting is `x − n·g` here.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z^d`, `d ≥ 1`. Serializes as an integer array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("group elements need at least one coordinate".into()));
        }
        Ok(GroupElement(coords))
    }

    /// An element of `Z`.
    pub fn scalar(x: i64) -> Self {
        GroupElement(vec![x])
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1);
        GroupElement(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn first(&self) -> i64 {
        self.0[0]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `self + n·g`.
    pub fn translate(&self, g: &GroupElement, n: i64) -> GroupElement {
        assert_eq!(self.dim(), g.dim(), "dimension mismatch in translate");
        GroupElement(self.0.iter().zip(&g.0).map(|(x, s)| x + n * s).collect())
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        self.translate(other, 1)
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|c| -c).collect())
    }
}

impl TryFrom<Vec<i64>> for GroupElement {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        GroupElement::new(v)
    }
}

impl From<GroupElement> for Vec<i64> {
    fn from(g: GroupElement) -> Self {
        g.0
    }
}

impl From<i64> for GroupElement {
    fn from(x: i64) -> Self {
        GroupElement::scalar(x)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of group elements of a common dimension.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<GroupElement>", into = "Vec<GroupElement>")]
pub struct FiniteSet(BTreeSet<GroupElement>);

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet(BTreeSet::new())
    }

    pub fn from_elements<I: IntoIterator<Item = GroupElement>>(items: I) -> Result<Self> {
        let set: BTreeSet<GroupElement> = items.into_iter().collect();
        let mut dims = set.iter().map(GroupElement::dim);
        if let Some(d) = dims.next() {
            if let Some(bad) = dims.find(|&e| e != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: bad,
                });
            }
        }
        Ok(FiniteSet(set))
    }

    /// `{a, a+1, …, b}` in `Z`.
    pub fn range(a: i64, b: i64) -> Self {
        FiniteSet((a..=b).map(GroupElement::scalar).collect())
    }

    /// A subset of `Z` from its elements.
    pub fn integers<I: IntoIterator<Item = i64>>(items: I) -> Self {
        FiniteSet(items.into_iter().map(GroupElement::scalar).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.0.iter().next().map(GroupElement::dim)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.0.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.0.iter()
    }

    pub fn insert(&mut self, x: GroupElement) {
        if let Some(d) = self.dim() {
            assert_eq!(d, x.dim(), "dimension mismatch in FiniteSet::insert");
        }
        self.0.insert(x);
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &FiniteSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// `K + n·g`.
    pub fn shifted(&self, g: &GroupElement, n: i64) -> FiniteSet {
        FiniteSet(self.0.iter().map(|x| x.translate(g, n)).collect())
    }

    /// Whether `K ∩ (K + n·g)` is nonempty.
    fn meets_translate(&self, g: &GroupElement, n: i64) -> bool {
        self.0.iter().any(|x| self.0.contains(&x.translate(g, n)))
    }
}

impl TryFrom<Vec<GroupElement>> for FiniteSet {
    type Error = Error;
    fn try_from(v: Vec<GroupElement>) -> Result<Self> {
        FiniteSet::from_elements(v)
    }
}

impl From<FiniteSet> for Vec<GroupElement> {
    fn from(s: FiniteSet) -> Self {
        s.0.into_iter().collect()
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// In `Z^d` every nonzero element is non-torsion and generates an unbounded
/// subgroup.
pub fn is_aperiodic(g: &GroupElement) -> bool {
    !g.is_identity()
}

/// `x + n·g`.
pub fn translate(x: &GroupElement, g: &GroupElement, n: i64) -> GroupElement {
    x.translate(g, n)
}

/// Least `N` with `K ∩ (K ± n·g) = ∅` for every `n > N`.
///
/// Brute force over `n ≤ max_i diam_i(K)/|g_i| + 1` (nonzero `g_i`); past
/// that bound the translates cannot meet in coordinate `i`. The empty set
/// separates immediately.
pub fn separation_index(k: &FiniteSet, g: &GroupElement) -> Result<usize> {
    if !is_aperiodic(g) {
        return Err(Error::Torsion(g.to_string()));
    }
    let Some(d) = k.dim() else {
        return Ok(0);
    };
    if d != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: g.dim(),
        });
    }
    let mut bound = 0i64;
    for i in 0..d {
        let gi = g.coords()[i].abs();
        if gi == 0 {
            continue;
        }
        let (lo, hi) = k
            .iter()
            .map(|x| x.coords()[i])
            .fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c), hi.max(c)));
        bound = bound.max((hi - lo) / gi + 1);
    }
    for n in (1..=bound).rev() {
        if k.meets_translate(g, n) || k.meets_translate(g, -n) {
            return Ok(n as usize);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(a: i64, b: i64) -> GroupElement {
        GroupElement::new(vec![a, b]).unwrap()
    }

    #[test]
    fn aperiodicity() {
        assert!(!is_aperiodic(&GroupElement::scalar(0)));
        assert!(is_aperiodic(&GroupElement::scalar(1)));
        assert!(is_aperiodic(&z2(0, -2)));
        assert!(!is_aperiodic(&GroupElement::identity(3)));
    }

    #[test]
    fn separation_examples() {
        let g1 = GroupElement::scalar(1);
        assert_eq!(separation_index(&FiniteSet::range(-3, 3), &g1).unwrap(), 6);
        assert_eq!(
            separation_index(&FiniteSet::integers([0]), &GroupElement::scalar(5)).unwrap(),
            0
        );
        // Brute-force oracle: K − K = {−10, 0, 10} and 2n ∈ {±10} only at n = 5.
        let k = FiniteSet::integers([0, 10]);
        let g = GroupElement::scalar(2);
        let oracle = (1..=10)
            .filter(|&n| k.iter().any(|x| k.contains(&x.translate(&g, n))))
            .max()
            .unwrap_or(0);
        assert_eq!(oracle, 5);
        assert_eq!(separation_index(&k, &g).unwrap(), 5);
    }

    #[test]
    fn separation_rejects_identity() {
        let err = separation_index(&FiniteSet::range(0, 2), &GroupElement::scalar(0)).unwrap_err();
        assert!(matches!(err, Error::Torsion(_)));
    }

    #[test]
    fn separation_in_z2() {
        let k = FiniteSet::from_elements([z2(0, 0), z2(2, 1), z2(4, 2)]).unwrap();
        assert_eq!(separation_index(&k, &z2(2, 1)).unwrap(), 2);
        assert_eq!(separation_index(&k, &z2(1, 0)).unwrap(), 0);
        assert!(matches!(
            separation_index(&k, &GroupElement::scalar(1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn translation_examples() {
        let one = GroupElement::scalar(1);
        assert_eq!(translate(&GroupElement::scalar(0), &one, 3), GroupElement::scalar(3));
        assert_eq!(translate(&z2(1, 1), &z2(2, 0), -1), z2(-1, 1));
        assert_eq!(
            translate(&GroupElement::scalar(7), &GroupElement::scalar(0), 100),
            GroupElement::scalar(7)
        );
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let err = FiniteSet::from_elements([GroupElement::scalar(1), z2(0, 0)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn serde_shapes() {
        let g = z2(1, -2);
        assert_eq!(serde_json::to_string(&g).unwrap(), "[1,-2]");
        let back: GroupElement = serde_json::from_str("[3]").unwrap();
        assert_eq!(back, GroupElement::scalar(3));
        assert!(serde_json::from_str::<GroupElement>("[]").is_err());
        let k: FiniteSet = serde_json::from_str("[[0],[2],[1]]").unwrap();
        assert_eq!(k, FiniteSet::range(0, 2));
    }
}
