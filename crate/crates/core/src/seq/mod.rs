//! Finitely supported functions on `Z^d` and the Orlicz-space norms.

mod dual;
mod norm;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{FiniteSet, GroupElement};

pub use dual::{max_single_point_feasible, orlicz_norm_dual_bound};
pub use norm::{amemiya, luxemburg_norm, modular, orlicz_norm, Amemiya};

/// Value type of a sequence: real or complex.
pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// A finitely supported function `Z^d → S`. Only nonzero values are stored,
/// so the key set is exactly the support.
#[derive(Clone, PartialEq)]
pub struct FinSupSeq<S: Scalar = f64> {
    values: BTreeMap<GroupElement, S>,
}

impl<S: Scalar> Debug for FinSupSeq<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.values.iter()).finish()
    }
}

impl<S: Scalar> Default for FinSupSeq<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> FinSupSeq<S> {
    pub fn zero() -> Self {
        FinSupSeq {
            values: BTreeMap::new(),
        }
    }

    /// `value·δ_point`.
    pub fn delta(point: GroupElement, value: S) -> Self {
        let mut s = Self::zero();
        s.set(point, value);
        s
    }

    /// Builds a sequence from `(point, value)` pairs. Repeated points are
    /// summed; all points must share a dimension.
    pub fn from_pairs<I: IntoIterator<Item = (GroupElement, S)>>(pairs: I) -> Result<Self> {
        let mut out = Self::zero();
        let mut dim = None;
        for (x, v) in pairs {
            match dim {
                None => dim = Some(x.dim()),
                Some(d) if d != x.dim() => {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: x.dim(),
                    })
                }
                _ => {}
            }
            let cur = out.get(&x);
            out.set(x, cur + v);
        }
        Ok(out)
    }

    fn set(&mut self, x: GroupElement, v: S) {
        if v.is_zero() {
            self.values.remove(&x);
        } else {
            self.values.insert(x, v);
        }
    }

    pub fn get(&self, x: &GroupElement) -> S {
        self.values.get(x).copied().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> FiniteSet {
        FiniteSet::from_elements(self.values.keys().cloned()).expect("uniform dimension")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.values.keys().next().map(GroupElement::dim)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, S)> + '_ {
        self.values.iter().map(|(x, v)| (x, *v))
    }

    /// `|f(x)|` over the support, in point order.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.values().map(|v| v.magnitude()).collect()
    }

    /// Largest `|f(x)|`, or 0.
    pub fn sup_norm(&self) -> f64 {
        self.values.values().map(|v| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn abs(&self) -> FinSupSeq<f64> {
        FinSupSeq {
            values: self
                .values
                .iter()
                .map(|(x, v)| (x.clone(), v.magnitude()))
                .collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map_values(|v| v * c)
    }

    fn map_values<F: Fn(S) -> S>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (x, v) in &self.values {
            out.set(x.clone(), f(*v));
        }
        out
    }

    /// Pointwise product with a real sequence.
    pub fn mul_pointwise(&self, other: &FinSupSeq<f64>) -> Self {
        let mut out = Self::zero();
        for (x, v) in &self.values {
            out.set(x.clone(), *v * other.get(x));
        }
        out
    }

    /// `f·χ_E`.
    pub fn restrict(&self, e: &FiniteSet) -> Self {
        FinSupSeq {
            values: self
                .values
                .iter()
                .filter(|(x, _)| e.contains(x))
                .map(|(x, v)| (x.clone(), *v))
                .collect(),
        }
    }

    /// `x ↦ f(x − n·g)`, i.e. the support moves by `+n·g`.
    pub fn shifted(&self, g: &GroupElement, n: i64) -> Self {
        FinSupSeq {
            values: self
                .values
                .iter()
                .map(|(x, v)| (x.translate(g, n), *v))
                .collect(),
        }
    }

    /// Rebuilds the sequence by moving each support point and rescaling its
    /// value. Points mapped to the same target are summed.
    pub(crate) fn remap<F>(&self, f: F) -> Self
    where
        F: Fn(&GroupElement, S) -> (GroupElement, S),
    {
        let mut out = Self::zero();
        for (x, v) in &self.values {
            let (y, w) = f(x, *v);
            let cur = out.get(&y);
            out.set(y, cur + w);
        }
        out
    }
}

impl FinSupSeq<f64> {
    /// `χ_E`.
    pub fn indicator(e: &FiniteSet) -> Self {
        FinSupSeq {
            values: e.iter().map(|x| (x.clone(), 1.0)).collect(),
        }
    }

    /// `f⁺ = max(f, 0)`.
    pub fn positive_part(&self) -> Self {
        self.map_values(|v| v.max(0.0))
    }

    /// `f⁻ = max(−f, 0)`, so that `f = f⁺ − f⁻`.
    pub fn negative_part(&self) -> Self {
        self.map_values(|v| (-v).max(0.0))
    }

    pub fn to_complex(&self) -> FinSupSeq<Complex64> {
        FinSupSeq {
            values: self
                .values
                .iter()
                .map(|(x, v)| (x.clone(), Complex64::new(*v, 0.0)))
                .collect(),
        }
    }

    /// Whether every value is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.values.values().all(|&v| v >= 0.0)
    }
}

impl FinSupSeq<Complex64> {
    pub fn re(&self) -> FinSupSeq<f64> {
        FinSupSeq::from_pairs(self.values.iter().map(|(x, v)| (x.clone(), v.re)))
            .expect("uniform dimension")
    }

    pub fn im(&self) -> FinSupSeq<f64> {
        FinSupSeq::from_pairs(self.values.iter().map(|(x, v)| (x.clone(), v.im)))
            .expect("uniform dimension")
    }
}

impl<S: Scalar> Add for &FinSupSeq<S> {
    type Output = FinSupSeq<S>;
    fn add(self, rhs: &FinSupSeq<S>) -> FinSupSeq<S> {
        let mut out = self.clone();
        for (x, v) in &rhs.values {
            let cur = out.get(x);
            out.set(x.clone(), cur + *v);
        }
        out
    }
}

impl<S: Scalar> Sub for &FinSupSeq<S> {
    type Output = FinSupSeq<S>;
    fn sub(self, rhs: &FinSupSeq<S>) -> FinSupSeq<S> {
        let mut out = self.clone();
        for (x, v) in &rhs.values {
            let cur = out.get(x);
            out.set(x.clone(), cur - *v);
        }
        out
    }
}

impl<S: Scalar> Neg for &FinSupSeq<S> {
    type Output = FinSupSeq<S>;
    fn neg(self) -> FinSupSeq<S> {
        self.map_values(|v| -v)
    }
}

impl<S: Scalar> Mul<f64> for &FinSupSeq<S> {
    type Output = FinSupSeq<S>;
    fn mul(self, c: f64) -> FinSupSeq<S> {
        self.scale(c)
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    point: GroupElement,
    value: f64,
}

/// Serializes as an array of `{point, value}` records.
impl Serialize for FinSupSeq<f64> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let records: Vec<Record> = self
            .values
            .iter()
            .map(|(x, v)| Record {
                point: x.clone(),
                value: *v,
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinSupSeq<f64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<Record>::deserialize(d)?;
        FinSupSeq::from_pairs(records.into_iter().map(|r| (r.point, r.value)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64) -> GroupElement {
        GroupElement::scalar(x)
    }

    #[test]
    fn zeros_are_not_stored() {
        let f = FinSupSeq::from_pairs([(p(0), 1.0), (p(1), 2.0), (p(0), -1.0)]).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.support(), FiniteSet::integers([1]));
        let g = &f - &f;
        assert!(g.is_zero());
        assert!(f.scale(0.0).is_zero());
    }

    #[test]
    fn restriction_and_shift() {
        let f = FinSupSeq::indicator(&FiniteSet::range(-2, 2));
        let r = f.restrict(&FiniteSet::integers([0, 1, 7]));
        assert_eq!(r.support(), FiniteSet::integers([0, 1]));
        let s = f.shifted(&p(3), 2);
        assert_eq!(s.support(), FiniteSet::range(4, 8));
    }

    #[test]
    fn positive_negative_parts() {
        let f = FinSupSeq::from_pairs([(p(0), 1.5), (p(1), -2.0)]).unwrap();
        let back = &f.positive_part() - &f.negative_part();
        assert_eq!(back, f);
        assert!(f.positive_part().is_nonnegative());
    }

    #[test]
    fn complex_parts() {
        let z = FinSupSeq::from_pairs([
            (p(0), Complex64::new(1.0, 2.0)),
            (p(4), Complex64::new(0.0, -1.0)),
        ])
        .unwrap();
        assert_eq!(z.re().support(), FiniteSet::integers([0]));
        assert_eq!(z.im().get(&p(4)), -1.0);
        assert!((z.abs().get(&p(0)) - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let err = FinSupSeq::from_pairs([(p(0), 1.0), (GroupElement::identity(2), 1.0)]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_records() {
        let f = FinSupSeq::from_pairs([(p(0), 1.0), (p(1), 0.5)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"[{"point":[0],"value":1.0},{"point":[1],"value":0.5}]"#);
        let back: FinSupSeq = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
