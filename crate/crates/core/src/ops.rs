//! Weighted translations on `Z^d` and the cosine operators they generate.
//!
//! With `T f(x) = w(x) f(x − g)`:
//!
//! ```text
//! Tⁿ f(x) = w(x) w(x − g) ⋯ w(x − (n−1)g) · f(x − n g)
//! Sⁿ f(x) = f(x + n g) / (w(x + g) ⋯ w(x + n g))        (S = T⁻¹)
//! Cₙ      = ½ (Tⁿ + Sⁿ)
//! φₙ(x)   = w(x + g) ⋯ w(x + n g)
//! φ̃ₙ(x)   = 1 / (w(x − g) ⋯ w(x − n g))
//! ```
//!
//! so `Tⁿ δ_y = φₙ(y) δ_{y+ng}` and `Sⁿ δ_y = φ̃ₙ(y + g) δ_{y−ng}`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_aperiodic, FiniteSet, GroupElement};
use crate::seq::{FinSupSeq, Scalar};

/// Above this many factors, products are accumulated as sums of logarithms.
const LOG_SPACE_ABOVE: usize = 64;

type PointFn = Arc<dyn Fn(&GroupElement) -> f64 + Send + Sync>;

/// A strictly positive weight on the group.
#[derive(Clone)]
pub struct Weight {
    name: String,
    eval: PointFn,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({})", self.name)
    }
}

impl Weight {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> f64 + Send + Sync + 'static,
    {
        Weight {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn constant(c: f64) -> Self {
        Weight::new(format!("const:{c}"), move |_| c)
    }

    /// `w(i) = 1/2` for `i ≥ 0` and `3/2` for `i < 0` (first coordinate).
    pub fn paper_step() -> Self {
        let mut w = Weight::step_table(1.5, &[(0, 0.5)]);
        w.name = "paper-step".into();
        w
    }

    /// Piecewise constant in the first coordinate: `w(x)` is the value of the
    /// largest threshold `t ≤ x₀`, or `below` when `x₀` is under every
    /// threshold.
    pub fn step_table(below: f64, rules: &[(i64, f64)]) -> Self {
        let mut rules = rules.to_vec();
        rules.sort_by_key(|r| r.0);
        let name = {
            let parts: Vec<String> = rules.iter().map(|(t, v)| format!("{t}:{v}")).collect();
            format!("steps:{below};{}", parts.join(";"))
        };
        Weight::new(name, move |x| {
            let i = x.first();
            rules
                .iter()
                .rev()
                .find(|(t, _)| i >= *t)
                .map_or(below, |r| r.1)
        })
    }

    /// `w(x) = values[x₀ mod len]`.
    pub fn periodic(values: &[f64]) -> Self {
        assert!(!values.is_empty());
        let values = values.to_vec();
        let parts: Vec<String> = values.iter().map(f64::to_string).collect();
        let name = format!("periodic:{}", parts.join(","));
        Weight::new(name, move |x| {
            values[x.first().rem_euclid(values.len() as i64) as usize]
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn value(&self, x: &GroupElement) -> f64 {
        (self.eval)(x)
    }
}

/// Which orbit product: `φₙ` (forward, weights) or `φ̃ₙ` (backward,
/// reciprocal weights).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductVariant {
    Phi,
    PhiTilde,
}

/// Bounds of a weight over the orbit window `{x + j g : x ∈ K, |j| ≤ n_max}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowBounds {
    pub n_max: usize,
    pub points: usize,
    pub sup: f64,
    pub inf: f64,
    /// `sup ≤ 1` rules out a positive verdict on its own.
    pub sup_at_most_one: bool,
}

/// The weighted translation `T_{g,w}` for an aperiodic `g`.
#[derive(Clone, Debug)]
pub struct WeightedTranslation {
    g: GroupElement,
    w: Weight,
}

impl WeightedTranslation {
    pub fn new(g: GroupElement, w: Weight) -> Result<Self> {
        if !is_aperiodic(&g) {
            return Err(Error::Torsion(g.to_string()));
        }
        Ok(WeightedTranslation { g, w })
    }

    pub fn g(&self) -> &GroupElement {
        &self.g
    }

    pub fn weight(&self) -> &Weight {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `φₙ(x)` or `φ̃ₙ(x)` for `n ≥ 1`.
    pub fn weight_product(&self, x: &GroupElement, n: usize, variant: ProductVariant) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("weight products are defined for n >= 1".into()));
        }
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(self.product(x, n, variant))
    }

    pub(crate) fn product(&self, x: &GroupElement, n: usize, variant: ProductVariant) -> f64 {
        let (dir, invert) = match variant {
            ProductVariant::Phi => (1, false),
            ProductVariant::PhiTilde => (-1, true),
        };
        let factors = (1..=n as i64).map(|j| self.w.value(&x.translate(&self.g, dir * j)));
        if n > LOG_SPACE_ABOVE {
            let s: f64 = factors.map(f64::ln).sum();
            if invert {
                (-s).exp()
            } else {
                s.exp()
            }
        } else {
            let p: f64 = factors.product();
            if invert {
                1.0 / p
            } else {
                p
            }
        }
    }

    /// `Tⁿ f`; `T⁰` is the identity.
    pub fn apply_t<S: Scalar>(&self, f: &FinSupSeq<S>, n: usize) -> FinSupSeq<S> {
        if n == 0 {
            return f.clone();
        }
        let n_i = n as i64;
        f.remap(|y, v| {
            (
                y.translate(&self.g, n_i),
                v * self.product(y, n, ProductVariant::Phi),
            )
        })
    }

    /// `Sⁿ f = T⁻ⁿ f`.
    pub fn apply_s<S: Scalar>(&self, f: &FinSupSeq<S>, n: usize) -> FinSupSeq<S> {
        if n == 0 {
            return f.clone();
        }
        let n_i = n as i64;
        f.remap(|y, v| {
            let c = self.product(&y.translate(&self.g, 1), n, ProductVariant::PhiTilde);
            (y.translate(&self.g, -n_i), v * c)
        })
    }

    /// `Cₙ f = ½(Tⁿ f + Sⁿ f)`.
    pub fn apply_cosine<S: Scalar>(&self, f: &FinSupSeq<S>, n: usize) -> FinSupSeq<S> {
        if n == 0 {
            return f.clone();
        }
        &self.apply_t(f, n).scale(0.5) + &self.apply_s(f, n).scale(0.5)
    }

    /// Sup and inf of `w` over every weight value consumed by powers up to
    /// `n_max` on `K`. Fails if any such value is not finite and positive.
    pub fn window_bounds(&self, k: &FiniteSet, n_max: usize) -> Result<WindowBounds> {
        let mut window = FiniteSet::empty();
        for x in k.iter() {
            for j in -(n_max as i64)..=(n_max as i64) {
                window.insert(x.translate(&self.g, j));
            }
        }
        let mut sup = f64::NEG_INFINITY;
        let mut inf = f64::INFINITY;
        for x in window.iter() {
            let v = self.w.value(x);
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidWeight {
                    name: self.w.name.clone(),
                    point: x.to_string(),
                    value: v,
                });
            }
            sup = sup.max(v);
            inf = inf.min(v);
        }
        if window.is_empty() {
            sup = 0.0;
            inf = 0.0;
        }
        Ok(WindowBounds {
            n_max,
            points: window.len(),
            sup,
            inf,
            sup_at_most_one: sup <= 1.0,
        })
    }
}
