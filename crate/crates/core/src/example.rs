//! The reference setup on `Z`: `φ(x) = (1+|x|) ln(1+|x|) − |x|`, the step
//! weight `w = 1/2` on `i ≥ 0` and `3/2` on `i < 0`, and `g = 1`.
//!
//! Every `ν` in the dual unit ball has `|ν(x)| ≤ t*` where
//! `e^{t*} − t* − 1 = 1`, so each criterion quantity is at most
//! `2 Σ product`. With `K = {a₁ < ⋯ < a_m}` the products themselves obey
//!
//! ```text
//! Σ_K φₙ ≤ m (1/2)^{n−n₀} w(a₁)^{|a₁|}       for n ≥ n₀, a₁ + n₀g ≥ 0
//! Σ_K φ̃ₙ ≤ m (2/3)^{n−t₀} w(a_m)^{−|a_m|}    for n ≥ t₀, a_m − t₀g ≤ 0
//! ```

use serde::Serialize;

use crate::criteria::{
    check_mixing_with, check_transitive_with, CriterionReport, Strategy, Verdict,
};
use crate::error::Result;
use crate::exec::Exec;
use crate::group::{FiniteSet, GroupElement};
use crate::ops::{ProductVariant, Weight, WeightedTranslation};
use crate::seq::{max_single_point_feasible, FinSupSeq};
use crate::witness::{verify_witness_with, WitnessTrace};
use crate::young::{ConjugateGrid, YoungFunction};
use crate::REPORT_SCHEMA;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleSetup {
    #[serde(rename = "K")]
    pub k: FiniteSet,
    pub horizon: usize,
    pub eps: f64,
    pub strategy: Strategy,
}

impl Default for ExampleSetup {
    fn default() -> Self {
        ExampleSetup {
            k: FiniteSet::range(-3, 3),
            horizon: 80,
            eps: 1e-6,
            strategy: Strategy::AllPlus,
        }
    }
}

/// Per-row comparison of the computed quantities with the analytic bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub q_phi: f64,
    /// `2 Σ_K φₙ`.
    pub sum_phi: f64,
    /// `2m (1/2)^{n−n₀} w(a₁)^{|a₁|}`, from `n₀` on.
    pub geometric_phi: Option<f64>,
    pub q_tilde: f64,
    pub sum_tilde: f64,
    pub geometric_tilde: Option<f64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleReport {
    pub schema: &'static str,
    pub setup: ExampleSetup,
    /// Largest `|ψ_num − ψ| / max(1, ψ)` over 200 points of `[0, 20]`.
    pub conjugate_max_error: f64,
    /// Root of `e^t − t − 1 = 1`.
    pub feasibility_root: f64,
    pub feasibility_at_most_two: bool,
    pub bounds: Vec<BoundRow>,
    pub bounds_hold: bool,
    pub transitive: CriterionReport,
    pub mixing: CriterionReport,
    pub witness: WitnessTrace,
    /// The transitivity verdict, downgraded to inconclusive if any of the
    /// analytic checks fails.
    pub verdict: Verdict,
}

impl ExampleSetup {
    pub fn phi() -> YoungFunction {
        YoungFunction::paper_entropy()
    }

    pub fn operator() -> WeightedTranslation {
        WeightedTranslation::new(GroupElement::scalar(1), Weight::paper_step())
            .expect("g = 1 is aperiodic")
    }

    fn ends(&self) -> Option<(i64, i64)> {
        let first = self.k.iter().next()?.first();
        let last = self.k.iter().last()?.first();
        Some((first, last))
    }

    /// `2m (1/2)^{n−n₀} w(a₁)^{|a₁|}` with the least `n₀ ≥ 0` such that
    /// `a₁ + n₀ ≥ 0`; `None` before `n₀`.
    pub fn geometric_bound_phi(&self, n: usize) -> Option<f64> {
        let (a1, _) = self.ends()?;
        let n0 = (-a1).max(0) as usize;
        (n >= n0).then(|| {
            let w = Weight::paper_step().value(&GroupElement::scalar(a1));
            2.0 * self.k.len() as f64 * 0.5f64.powi((n - n0) as i32) * w.powi(a1.abs() as i32)
        })
    }

    /// `2m (2/3)^{n−t₀} w(a_m)^{−|a_m|}` with the least `t₀ ≥ 0` such that
    /// `a_m − t₀ ≤ 0`; `None` before `t₀`.
    pub fn geometric_bound_tilde(&self, n: usize) -> Option<f64> {
        let (_, am) = self.ends()?;
        let t0 = am.max(0) as usize;
        (n >= t0).then(|| {
            let w = Weight::paper_step().value(&GroupElement::scalar(am));
            2.0 * self.k.len() as f64
                * (2.0f64 / 3.0).powi((n - t0) as i32)
                * w.powi(-(am.abs() as i32))
        })
    }

    pub fn reproduce(&self) -> Result<ExampleReport> {
        self.reproduce_with(Exec::default())
    }

    pub fn reproduce_with(&self, exec: Exec) -> Result<ExampleReport> {
        let phi = Self::phi();
        let op = Self::operator();

        let conjugate_max_error = conjugate_error(&phi)?;
        let feasibility_root = max_single_point_feasible(&YoungFunction::paper_exp())?;

        let transitive =
            check_transitive_with(exec, &op, &phi, &self.k, self.horizon, self.eps, self.strategy)?;
        let mixing = check_mixing_with(exec, &op, &phi, &self.k, self.horizon, self.eps)?;

        let bounds: Vec<BoundRow> = transitive
            .rows
            .iter()
            .map(|row| self.bound_row(&op, row.n, row.q_phi, row.q_tilde))
            .collect();
        let bounds_hold = bounds.iter().all(|b| b.holds);

        let target = FinSupSeq::indicator(&self.k);
        let ns: Vec<usize> = transitive
            .subsequence
            .iter()
            .copied()
            .filter(|&n| n > transitive.separation_index)
            .collect();
        let witness = verify_witness_with(exec, &op, &phi, &target, &target, &ns, self.strategy)?;

        let feasibility_at_most_two = feasibility_root <= 2.0;
        let verdict = match transitive.verdict {
            Verdict::SatisfiedUpToHorizon
                if !(bounds_hold && feasibility_at_most_two && conjugate_max_error <= 1e-8) =>
            {
                Verdict::Inconclusive
            }
            v => v,
        };

        Ok(ExampleReport {
            schema: REPORT_SCHEMA,
            setup: self.clone(),
            conjugate_max_error,
            feasibility_root,
            feasibility_at_most_two,
            bounds,
            bounds_hold,
            transitive,
            mixing,
            witness,
            verdict,
        })
    }

    fn bound_row(&self, op: &WeightedTranslation, n: usize, q_phi: f64, q_tilde: f64) -> BoundRow {
        let sum = |v| 2.0 * self.k.iter().map(|x| op.product(x, n, v)).sum::<f64>();
        let sum_phi = sum(ProductVariant::Phi);
        let sum_tilde = sum(ProductVariant::PhiTilde);
        let geometric_phi = self.geometric_bound_phi(n);
        let geometric_tilde = self.geometric_bound_tilde(n);
        let slack = 1.0 + 1e-12;
        let holds = q_phi <= sum_phi * slack
            && q_tilde <= sum_tilde * slack
            && geometric_phi.is_none_or(|b| sum_phi <= b * slack)
            && geometric_tilde.is_none_or(|b| sum_tilde <= b * slack);
        BoundRow {
            n,
            q_phi,
            sum_phi,
            geometric_phi,
            q_tilde,
            sum_tilde,
            geometric_tilde,
            holds,
        }
    }
}

/// Largest relative gap between the numerical conjugate of `φ` and the
/// closed form `e^y − y − 1` over 200 equally spaced points of `[0, 20]`.
pub fn conjugate_error(phi: &YoungFunction) -> Result<f64> {
    let exact = |y: f64| y.exp_m1() - y;
    let mut worst = 0.0f64;
    for i in 0..200 {
        let y = 20.0 * i as f64 / 199.0;
        let v = phi.conjugate_value(y, ConjugateGrid::default())?;
        worst = worst.max((v - exact(y)).abs() / exact(y).max(1.0));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_bounds_start_at_the_crossing() {
        let s = ExampleSetup::default();
        assert_eq!(s.geometric_bound_phi(2), None);
        // 2·7·(1/2)^0·(3/2)^3 at n = n₀ = 3.
        assert!((s.geometric_bound_phi(3).unwrap() - 14.0 * 3.375).abs() < 1e-12);
        // 2·7·(2/3)^0·2^3 at n = t₀ = 3.
        assert!((s.geometric_bound_tilde(3).unwrap() - 112.0).abs() < 1e-12);
    }

    #[test]
    fn conjugate_of_entropy_matches_closed_form() {
        assert!(conjugate_error(&ExampleSetup::phi()).unwrap() <= 1e-8);
    }

    #[test]
    fn full_reproduction() {
        let report = ExampleSetup::default().reproduce().unwrap();
        assert_eq!(report.verdict, Verdict::SatisfiedUpToHorizon);
        assert!(report.bounds_hold);
        assert!(report.feasibility_at_most_two);
        assert!(!report.witness.rows.is_empty());
    }
}
