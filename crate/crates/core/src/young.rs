//! Young functions, their complementary functions, and the `Δ₂` test.
//!
//! A Young function here is a continuous, even, convex `φ: R → [0, ∞)` with
//! `φ(t) = 0` only at `t = 0` and `φ(t) → ∞`. Values are always taken at
//! `|t|`, so callers never need to fold the sign themselves.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solve::{bisect_increasing, expand_upper, golden_min};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Tolerance on the root of `φ′(x) = y` when conjugating.
const ROOT_TOL: f64 = 1e-12;
/// Largest `x` the derivative route will bracket before declaring `ψ(y)`
/// unbounded.
const ROOT_LIMIT: f64 = 1e300;

/// Points in the validation grid.
pub const VALIDATION_POINTS: usize = 512;
pub const VALIDATION_RANGE: (f64, f64) = (1e-8, 1e8);

#[derive(Clone)]
pub struct YoungFunction {
    name: String,
    eval: RealFn,
    derivative: Option<RealFn>,
    /// Closed-form complementary function, when known.
    complement: Option<Arc<YoungFunction>>,
}

impl fmt::Debug for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YoungFunction")
            .field("name", &self.name)
            .field("derivative", &self.derivative.is_some())
            .field("complement", &self.complement.as_ref().map(|c| c.name.clone()))
            .finish()
    }
}

/// Search grid for conjugating a Young function without a derivative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConjugateGrid {
    pub step: f64,
    pub x_max: f64,
}

impl Default for ConjugateGrid {
    fn default() -> Self {
        ConjugateGrid {
            step: 1e-2,
            x_max: 1e4,
        }
    }
}

/// Outcome of the sampled `Δ₂` test. The verdict is numerical evidence only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Delta2Report {
    pub satisfied: bool,
    /// `max φ(2t)/φ(t)` over the supplied grid.
    pub constant: f64,
    /// The same maximum on the grid with geometric midpoints inserted.
    pub refined_constant: f64,
    /// The maximum over one further decade beyond the grid.
    pub extended_constant: f64,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
    pub label: &'static str,
}

impl YoungFunction {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        YoungFunction {
            name: name.into(),
            eval: Arc::new(eval),
            derivative: None,
            complement: None,
        }
    }

    /// Attaches `φ′` on `[0, ∞)`. Must be nondecreasing.
    pub fn with_derivative<F>(mut self, derivative: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    /// Attaches a known closed-form complementary function.
    pub fn with_complement(mut self, psi: YoungFunction) -> Self {
        self.complement = Some(Arc::new(psi));
        self
    }

    /// `φ(x) = (1+|x|) ln(1+|x|) − |x|`, with complement `e^|x| − |x| − 1`.
    pub fn paper_entropy() -> Self {
        entropy_base().with_complement(exp_base())
    }

    /// `ψ(x) = e^|x| − |x| − 1`, with complement `(1+|x|) ln(1+|x|) − |x|`.
    pub fn paper_exp() -> Self {
        exp_base().with_complement(entropy_base())
    }

    /// `φ_p(x) = |x|^p / p` for `p > 1`; its complement is `φ_q` with
    /// `1/p + 1/q = 1`.
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::Domain(format!("power exponent must lie in (1, ∞), got {p}")));
        }
        let q = p / (p - 1.0);
        Ok(power_base(p).with_complement(power_base(q)))
    }

    /// `φ(x) = x²`; its complement is `y²/4`.
    pub fn square() -> Self {
        let quarter = YoungFunction::new("quarter-square", |t| 0.25 * t * t)
            .with_derivative(|t| 0.5 * t);
        square_base().with_complement(quarter)
    }

    /// Resolves a preset name: `paper-entropy`, `paper-exp`, `power:p`,
    /// `square`.
    pub fn from_preset(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "paper-entropy" => Ok(Self::paper_entropy()),
            "paper-exp" => Ok(Self::paper_exp()),
            "square" => Ok(Self::square()),
            _ => match spec.strip_prefix("power:") {
                Some(p) => {
                    let p: f64 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad exponent in `{spec}`")))?;
                    Self::power(p)
                }
                None => Err(Error::UnknownPreset(spec.to_string())),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// `φ(|t|)`, rejecting non-finite input.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("cannot evaluate {} at {t}", self.name)));
        }
        Ok(self.value(t))
    }

    /// `φ(|t|)` without input checks.
    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        (self.eval)(t.abs())
    }

    /// `φ′(|t|)` if a derivative was supplied.
    pub fn derivative_at(&self, t: f64) -> Option<f64> {
        self.derivative.as_ref().map(|d| d(t.abs()))
    }

    /// `φ′(|t|)`, falling back to a finite difference.
    pub fn slope(&self, t: f64) -> f64 {
        let t = t.abs();
        if let Some(d) = &self.derivative {
            return d(t);
        }
        let h = 1e-6 * t.max(1e-3);
        if t > h {
            (self.value(t + h) - self.value(t - h)) / (2.0 * h)
        } else {
            (self.value(t + h) - self.value(t)) / h
        }
    }

    /// The complementary function: the closed form when known, otherwise the
    /// numerical conjugate on the default grid.
    pub fn complement(&self) -> YoungFunction {
        match &self.complement {
            Some(psi) => (**psi).clone(),
            None => self.conjugate(ConjugateGrid::default()),
        }
    }

    pub fn closed_complement(&self) -> Option<&YoungFunction> {
        self.complement.as_deref()
    }

    /// `ψ(y) = sup_{x ≥ 0} (x|y| − φ(x))`.
    ///
    /// With a derivative the maximizer solves `φ′(x) = |y|` and is found by
    /// bisection; otherwise the grid is scanned up to the first decrease
    /// (the objective is concave) and the best cell is refined by
    /// golden-section search.
    pub fn conjugate_value(&self, y: f64, grid: ConjugateGrid) -> Result<f64> {
        if !y.is_finite() {
            return Err(Error::Domain(format!("conjugate of {} at {y}", self.name)));
        }
        let y = y.abs();
        if y == 0.0 {
            return Ok(0.0);
        }
        match &self.derivative {
            Some(_) => {
                let x = self.conjugate_argmax(y)?;
                Ok(x * y - self.value(x))
            }
            None => self.conjugate_on_grid(y, grid),
        }
    }

    /// Maximizer `x*` of `x y − φ(x)`, from `φ′(x*) = y`.
    fn conjugate_argmax(&self, y: f64) -> Result<f64> {
        let d = self.derivative.as_ref().expect("derivative route");
        let hi = expand_upper(|x| d(x), y, 1.0, ROOT_LIMIT).ok_or(Error::UnboundedConjugate {
            y,
            searched_to: ROOT_LIMIT,
        })?;
        let (lo, hi) = bisect_increasing(|x| d(x), y, 0.0, hi, ROOT_TOL);
        Ok(lo + 0.5 * (hi - lo))
    }

    fn conjugate_on_grid(&self, y: f64, grid: ConjugateGrid) -> Result<f64> {
        if !(grid.step > 0.0 && grid.x_max > grid.step) {
            return Err(Error::Domain(format!("bad conjugate grid {grid:?}")));
        }
        let objective = |x: f64| x * y - self.value(x);
        let last = (grid.x_max / grid.step).floor() as usize;
        let mut best_i = 0usize;
        let mut best = 0.0;
        for i in 1..=last {
            let v = objective(i as f64 * grid.step);
            if v > best {
                best = v;
                best_i = i;
            } else if v < best {
                break;
            }
        }
        if best_i == last {
            return Err(Error::UnboundedConjugate {
                y,
                searched_to: grid.x_max,
            });
        }
        let a = best_i.saturating_sub(1) as f64 * grid.step;
        let b = (best_i + 1) as f64 * grid.step;
        let (_, neg) = golden_min(|x| -objective(x), a, b, 1e-12, 200);
        Ok(best.max(-neg))
    }

    /// The numerical conjugate as a Young function. Points where the
    /// supremum is unbounded evaluate to `+∞`; use
    /// [`YoungFunction::conjugate_value`] to observe the error instead.
    ///
    /// When `φ′` is known the result carries `ψ′(y) = x*(y)`, so it can be
    /// conjugated again through the derivative route.
    pub fn conjugate(&self, grid: ConjugateGrid) -> YoungFunction {
        let phi = self.clone();
        let name = format!("conj({})", self.name);
        let base = {
            let phi = phi.clone();
            YoungFunction::new(name, move |y| {
                phi.conjugate_value(y, grid).unwrap_or(f64::INFINITY)
            })
        };
        if self.derivative.is_some() {
            base.with_derivative(move |y| {
                if y == 0.0 {
                    0.0
                } else {
                    phi.conjugate_argmax(y).unwrap_or(f64::INFINITY)
                }
            })
        } else {
            base
        }
    }

    /// Samples the Young-function invariants on the fixed log grid of
    /// [`VALIDATION_POINTS`] points over [`VALIDATION_RANGE`]. Reports the
    /// first violated invariant together with the witness point.
    pub fn validate(&self) -> Result<()> {
        let fail = |invariant: &'static str, at: f64| {
            Err(Error::InvalidYoung {
                name: self.name.clone(),
                invariant,
                at,
            })
        };
        let raw = |t: f64| (self.eval)(t);
        let zero = raw(0.0);
        if zero != 0.0 {
            return fail("φ(0) = 0", 0.0);
        }
        let grid = log_grid(VALIDATION_RANGE.0, VALIDATION_RANGE.1, VALIDATION_POINTS);
        let vals: Vec<f64> = grid.iter().map(|&t| raw(t)).collect();
        for (&t, &v) in grid.iter().zip(&vals) {
            if v.is_nan() || v <= 0.0 {
                return fail("φ(t) > 0 for t ≠ 0", t);
            }
            let mirrored = raw(-t);
            if !(mirrored == v || (mirrored - v).abs() <= 1e-12 * v.abs()) {
                return fail("evenness φ(−t) = φ(t)", t);
            }
        }
        for w in 0..grid.len() - 1 {
            if vals[w + 1] < vals[w] * (1.0 - 1e-12) {
                return fail("φ nondecreasing on [0, ∞)", grid[w + 1]);
            }
        }
        // Midpoint convexity on neighbouring pairs, pairs a few cells apart,
        // pairs straddling the origin and pairs anchored at 0.
        let convex = |a: f64, b: f64| {
            let mid = raw(0.5 * (a + b));
            let avg = 0.5 * (raw(a) + raw(b));
            mid <= avg + 1e-10 * avg.abs()
        };
        for i in 0..grid.len() {
            for j in [i + 1, i + 7, i + 64] {
                if j < grid.len() && !convex(grid[i], grid[j]) {
                    return fail("midpoint convexity", grid[i]);
                }
            }
            if !convex(-grid[i], 0.5 * grid[i]) || !convex(0.0, grid[i]) {
                return fail("midpoint convexity", grid[i]);
            }
        }
        let top = *vals.last().expect("nonempty grid");
        if top.is_nan() || top <= 1e6 {
            return fail("φ(t) → ∞", VALIDATION_RANGE.1);
        }
        Ok(())
    }

    /// Sampled `Δ₂` test: `φ(2t) ≤ k φ(t)` for all `t > 0`.
    ///
    /// `constant` is the maximum ratio over `t_grid`. The verdict requires a
    /// finite constant that neither grows when the grid is refined nor when
    /// it is extended by a decade.
    pub fn is_delta2(&self, t_grid: &[f64]) -> Result<Delta2Report> {
        if t_grid.is_empty() || t_grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::Domain("Δ₂ grid must be nonempty, finite and positive".into()));
        }
        let ratio = |t: f64| -> Result<f64> {
            let base = self.value(t);
            if base == 0.0 {
                return Err(Error::InvalidYoung {
                    name: self.name.clone(),
                    invariant: "φ(t) > 0 for t ≠ 0",
                    at: t,
                });
            }
            let r = self.value(2.0 * t) / base;
            Ok(if r.is_finite() { r } else { f64::INFINITY })
        };
        let mut sorted = t_grid.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut constant = 0.0f64;
        for &t in &sorted {
            constant = constant.max(ratio(t)?);
        }
        let mut refined_constant = constant;
        for w in sorted.windows(2) {
            refined_constant = refined_constant.max(ratio((w[0] * w[1]).sqrt())?);
        }
        let grid_min = sorted[0];
        let grid_max = *sorted.last().unwrap();
        let mut extended_constant = 0.0f64;
        for t in log_grid(grid_max, 10.0 * grid_max, 64) {
            extended_constant = extended_constant.max(ratio(t)?);
        }
        let stable = |other: f64| other <= constant * (1.0 + 1e-3);
        let satisfied =
            constant.is_finite() && stable(refined_constant) && stable(extended_constant);
        Ok(Delta2Report {
            satisfied,
            constant,
            refined_constant,
            extended_constant,
            grid_min,
            grid_max,
            grid_points: sorted.len(),
            label: "numerical evidence",
        })
    }
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

fn entropy_base() -> YoungFunction {
    YoungFunction::new("paper-entropy", |t: f64| {
        let t = t.abs();
        (1.0 + t) * t.ln_1p() - t
    })
    .with_derivative(|t: f64| t.abs().ln_1p())
}

fn exp_base() -> YoungFunction {
    YoungFunction::new("paper-exp", |t: f64| t.abs().exp_m1() - t.abs())
        .with_derivative(|t: f64| t.abs().exp_m1())
}

fn square_base() -> YoungFunction {
    YoungFunction::new("square", |t| t * t).with_derivative(|t| 2.0 * t)
}

fn power_base(p: f64) -> YoungFunction {
    YoungFunction::new(format!("power:{p}"), move |t: f64| t.abs().powf(p) / p)
        .with_derivative(move |t: f64| t.abs().powf(p - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn entropy_values() {
        let phi = YoungFunction::paper_entropy();
        assert_eq!(phi.eval(0.0).unwrap(), 0.0);
        assert!((phi.eval(1.0).unwrap() - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-15);
        assert!((phi.eval(1.0).unwrap() - 0.3862944).abs() < 1e-7);
    }

    #[test]
    fn square_is_even() {
        assert_eq!(YoungFunction::square().eval(-3.0).unwrap(), 9.0);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let phi = YoungFunction::square();
        assert!(matches!(phi.eval(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(phi.eval(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn conjugate_examples() {
        let grid = ConjugateGrid::default();
        let ent = YoungFunction::paper_entropy();
        let v = ent.conjugate_value(1.0, grid).unwrap();
        assert!((v - (std::f64::consts::E - 2.0)).abs() < 1e-12);
        assert_eq!(ent.conjugate_value(0.0, grid).unwrap(), 0.0);
        let sq = YoungFunction::square();
        assert!((sq.conjugate_value(2.0, grid).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_route_matches_derivative_route() {
        let grid = ConjugateGrid {
            step: 1e-3,
            x_max: 100.0,
        };
        let plain = YoungFunction::new("entropy-no-derivative", |t| (1.0 + t) * t.ln_1p() - t);
        for y in [0.1f64, 0.5, 1.0, 2.0, 3.5] {
            let exact = y.exp() - y - 1.0;
            let v = plain.conjugate_value(y, grid).unwrap();
            assert!(rel_close(v, exact, 1e-10), "y={y}: {v} vs {exact}");
        }
    }

    #[test]
    fn sublinear_function_has_unbounded_conjugate() {
        // Slope tends to 1, so x y − φ(x) is unbounded for y > 1.
        let hyp = |t: f64| (1.0 + t * t).sqrt() - 1.0;
        let sub = YoungFunction::new("hyperbolic", hyp);
        let err = sub.conjugate_value(2.0, ConjugateGrid::default()).unwrap_err();
        assert!(matches!(err, Error::UnboundedConjugate { .. }));
        assert!(sub.conjugate_value(0.5, ConjugateGrid::default()).unwrap().is_finite());
        let sub_d = sub.clone().with_derivative(|t| t / (1.0 + t * t).sqrt());
        assert!(matches!(
            sub_d.conjugate_value(2.0, ConjugateGrid::default()),
            Err(Error::UnboundedConjugate { .. })
        ));
        let psi = sub.conjugate(ConjugateGrid::default());
        assert_eq!(psi.value(2.0), f64::INFINITY);
    }

    #[test]
    fn presets_validate() {
        for phi in [
            YoungFunction::paper_entropy(),
            YoungFunction::paper_exp(),
            YoungFunction::square(),
            YoungFunction::power(1.5).unwrap(),
            YoungFunction::power(3.0).unwrap(),
        ] {
            phi.validate().unwrap_or_else(|e| panic!("{}: {e}", phi.name()));
        }
    }

    #[test]
    fn validation_names_the_broken_invariant() {
        let concave = YoungFunction::new("sqrt", |t: f64| t.abs().sqrt());
        match concave.validate() {
            Err(Error::InvalidYoung { invariant, .. }) => assert_eq!(invariant, "midpoint convexity"),
            other => panic!("{other:?}"),
        }
        let flat = YoungFunction::new("flat", |t| (t - 1.0).max(0.0));
        match flat.validate() {
            Err(Error::InvalidYoung { invariant, at, .. }) => {
                assert_eq!(invariant, "φ(t) > 0 for t ≠ 0");
                assert!(at < 1.0);
            }
            other => panic!("{other:?}"),
        }
        let bounded = YoungFunction::new("bounded", |t| t.min(1.0) * t.min(1.0));
        assert!(bounded.validate().is_err());
    }

    #[test]
    fn delta2_verdicts() {
        let grid = log_grid(1e-6, 1e6, 400);
        let sq = YoungFunction::square().is_delta2(&grid).unwrap();
        assert!(sq.satisfied);
        assert!((sq.constant - 4.0).abs() < 1e-12);
        assert_eq!(sq.label, "numerical evidence");

        let ent = YoungFunction::paper_entropy().is_delta2(&grid).unwrap();
        assert!(ent.satisfied);
        assert!(ent.constant <= 4.0 + 1e-9, "{}", ent.constant);

        let ex = YoungFunction::paper_exp().is_delta2(&grid).unwrap();
        assert!(!ex.satisfied);
        let ex_small = YoungFunction::paper_exp()
            .is_delta2(&log_grid(1e-3, 10.0, 100))
            .unwrap();
        assert!(!ex_small.satisfied);
        assert!(ex_small.extended_constant > ex_small.constant);
    }

    #[test]
    fn delta2_rejects_vanishing_function() {
        let flat = YoungFunction::new("flat", |t| (t - 1.0).max(0.0));
        assert!(matches!(
            flat.is_delta2(&[0.5, 2.0]),
            Err(Error::InvalidYoung { .. })
        ));
    }

    #[test]
    fn power_family_closed_form() {
        let p = 3.0;
        let phi = YoungFunction::power(p).unwrap();
        let q = p / (p - 1.0);
        for y in [0.3, 1.0, 2.7] {
            let v = phi.conjugate_value(y, ConjugateGrid::default()).unwrap();
            assert!(rel_close(v, y.powf(q) / q, 1e-10));
            assert!(rel_close(phi.complement().value(y), y.powf(q) / q, 1e-14));
        }
        assert!(YoungFunction::power(1.0).is_err());
    }

    #[test]
    fn preset_lookup() {
        assert_eq!(YoungFunction::from_preset("power:2.5").unwrap().name(), "power:2.5");
        assert!(matches!(
            YoungFunction::from_preset("cubic"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-8, 1e8, VALIDATION_POINTS);
        assert_eq!(g.len(), 512);
        assert!((g[0] - 1e-8).abs() < 1e-22);
        assert_eq!(*g.last().unwrap(), 1e8);
    }
}
