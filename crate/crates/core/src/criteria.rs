//! Finite-horizon evidence for transitivity and mixing of cosine operator
//! sequences on `ℓ^φ(Z^d)`.
//!
//! On a discrete group the transitivity criterion asks, for every finite
//! `K`, for a sequence `n_k` and splits `K = E⁺ ∪ E⁻` with
//!
//! ```text
//! sup_ν Σ_{x∈K}  φ_{n}(x)  |ν(x + n g)|   → 0      (Q_phi)
//! sup_ν Σ_{x∈K}  φ̃_{n}(x)  |ν(x + n g)|   → 0      (Q_tilde)
//! sup_ν Σ_{x∈E⁺} φ_{2n}(x) |ν(x + 2n g)|  → 0      (Q2_plus)
//! sup_ν Σ_{x∈E⁻} φ̃_{2n}(x) |ν(x + 2n g)|  → 0      (Q2_minus)
//! ```
//!
//! along `n = n_k`, the sup running over `Σψ(|ν|) ≤ 1`. Each such sup is the
//! Orlicz norm of the product sequence moved onto `E + n g`. A finite
//! computation can only grade the evidence, hence the three-valued
//! [`Verdict`].

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{separation_index, FiniteSet};
use crate::ops::{ProductVariant, WeightedTranslation, WindowBounds};
use crate::seq::{orlicz_norm, FinSupSeq};
use crate::young::YoungFunction;
use crate::REPORT_SCHEMA;

/// A quantity counts as nondecreasing if no step drops by more than this
/// relative amount.
const MONOTONE_SLACK: f64 = 1e-12;
/// Violation needs the persistent lower bound to exceed `eps` by this factor.
const VIOLATION_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// `(K, ∅)`.
    AllPlus,
    /// `(∅, K)`.
    AllMinus,
    /// Each point joins the side with the smaller `2n` product.
    #[default]
    Greedy,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").as_str() {
            "all_plus" => Ok(Strategy::AllPlus),
            "all_minus" => Ok(Strategy::AllMinus),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(Error::InvalidArgument(format!(
                "unknown strategy `{other}` (expected all_plus, all_minus or greedy)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub plus: FiniteSet,
    pub minus: FiniteSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SatisfiedUpToHorizon,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// Process exit status: 0 satisfied, 2 violated, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::SatisfiedUpToHorizon => 0,
            Verdict::Violated => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Transitive,
    Mixing,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionRow {
    pub n: usize,
    pub q_phi: f64,
    pub q_tilde: f64,
    /// Absent in mixing reports, which use no `±` split.
    pub q2_plus: Option<f64>,
    pub q2_minus: Option<f64>,
    pub partition: Option<Partition>,
}

impl CriterionRow {
    /// Largest of the quantities present in the row.
    pub fn max_quantity(&self) -> f64 {
        [Some(self.q_phi), Some(self.q_tilde), self.q2_plus, self.q2_minus]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max)
    }
}

/// Fitted geometric ratio per quantity, per unit of the operator power
/// (`n` for `Q_phi`/`Q_tilde`, `2n` for the doubled quantities). `None`
/// when the quantity has fewer than two positive values in the fit window.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Decay {
    pub q_phi: Option<f64>,
    pub q_tilde: Option<f64>,
    pub q2_plus: Option<f64>,
    pub q2_minus: Option<f64>,
}

impl Decay {
    fn all_below_one(&self) -> bool {
        [self.q_phi, self.q_tilde, self.q2_plus, self.q2_minus]
            .into_iter()
            .flatten()
            .all(|r| r < 1.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub schema: &'static str,
    pub kind: CheckKind,
    #[serde(rename = "K")]
    pub k: FiniteSet,
    pub g: crate::group::GroupElement,
    pub phi: String,
    pub weight: String,
    pub horizon: usize,
    pub eps: f64,
    pub strategy: Option<Strategy>,
    pub separation_index: usize,
    pub window: WindowBounds,
    /// Number of trailing rows used by the geometric fit.
    pub fit_window: usize,
    pub rows: Vec<CriterionRow>,
    pub verdict: Verdict,
    pub decay: Decay,
    /// Transitive checks: the `n_k` found (one per dyadic block). Mixing
    /// checks leave this empty.
    pub subsequence: Vec<usize>,
    /// Mixing checks: the first `n` from which every row is below `eps`.
    pub n0: Option<usize>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectSumReport {
    pub schema: &'static str,
    pub components: Vec<CriterionReport>,
    /// `n` at which every quantity of every component is below `eps`.
    pub joint_ns: Vec<usize>,
    pub verdict: Verdict,
}

/// `sup_ν Σ_{x∈E} p(x) |ν(x + n g)|` with `p = φₙ` or `φ̃ₙ`, evaluated as the
/// Orlicz norm of `Σ_{x∈E} p(x) δ_{x+ng}`.
pub fn criterion_quantity(
    op: &WeightedTranslation,
    phi: &YoungFunction,
    e: &FiniteSet,
    n: usize,
    variant: ProductVariant,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("criterion quantities need n >= 1".into()));
    }
    orlicz_norm(phi, &product_sequence(op, e, n, variant)?)
}

/// `Σ_{x∈E} p(x) δ_{x+ng}`.
pub fn product_sequence(
    op: &WeightedTranslation,
    e: &FiniteSet,
    n: usize,
    variant: ProductVariant,
) -> Result<FinSupSeq> {
    FinSupSeq::from_pairs(
        e.iter()
            .map(|x| (x.translate(op.g(), n as i64), op.product(x, n, variant))),
    )
}

/// Splits `K` into `(E⁺, E⁻)`. Greedy puts `x` in `E⁺` iff
/// `φ_{2n}(x) ≤ φ̃_{2n}(x)`.
pub fn choose_partition(
    op: &WeightedTranslation,
    k: &FiniteSet,
    n: usize,
    strategy: Strategy,
) -> Partition {
    match strategy {
        Strategy::AllPlus => Partition {
            plus: k.clone(),
            minus: FiniteSet::empty(),
        },
        Strategy::AllMinus => Partition {
            plus: FiniteSet::empty(),
            minus: k.clone(),
        },
        Strategy::Greedy => {
            let mut plus = FiniteSet::empty();
            let mut minus = FiniteSet::empty();
            for x in k.iter() {
                let forward = op.product(x, 2 * n, ProductVariant::Phi);
                let backward = op.product(x, 2 * n, ProductVariant::PhiTilde);
                if forward <= backward {
                    plus.insert(x.clone());
                } else {
                    minus.insert(x.clone());
                }
            }
            Partition { plus, minus }
        }
    }
}

pub fn check_transitive(
    op: &WeightedTranslation,
    phi: &YoungFunction,
    k: &FiniteSet,
    horizon: usize,
    eps: f64,
    strategy: Strategy,
) -> Result<CriterionReport> {
    check_transitive_with(Exec::default(), op, phi, k, horizon, eps, strategy)
}

/// [`check_transitive`] with an explicit execution policy.
pub fn check_transitive_with(
    exec: Exec,
    op: &WeightedTranslation,
    phi: &YoungFunction,
    k: &FiniteSet,
    horizon: usize,
    eps: f64,
    strategy: Strategy,
) -> Result<CriterionReport> {
    let setup = Setup::new(op, k, horizon, eps)?;
    let ns: Vec<usize> = (1..=horizon).collect();
    let rows = exec.try_map(&ns, |&n| {
        let partition = choose_partition(op, k, n, strategy);
        let q = |e: &FiniteSet, m: usize, v| criterion_quantity(op, phi, e, m, v);
        Ok::<_, Error>(CriterionRow {
            n,
            q_phi: q(k, n, ProductVariant::Phi)?,
            q_tilde: q(k, n, ProductVariant::PhiTilde)?,
            q2_plus: Some(q(&partition.plus, 2 * n, ProductVariant::Phi)?),
            q2_minus: Some(q(&partition.minus, 2 * n, ProductVariant::PhiTilde)?),
            partition: Some(partition),
        })
    })?;

    let decay = fit_decay(&rows, setup.fit_window);
    let picks = dyadic_picks(&rows);
    let first_good = picks.iter().position(|&n| rows[n - 1].max_quantity() < eps);
    let tail_good = first_good
        .is_some_and(|i| picks[i..].iter().all(|&n| rows[n - 1].max_quantity() < eps));

    let (verdict, subsequence) = if tail_good && decay.all_below_one() {
        let i = first_good.expect("tail_good implies a first good pick");
        (Verdict::SatisfiedUpToHorizon, picks[i..].to_vec())
    } else if persistent_lower_bound(&rows, eps) {
        (Verdict::Violated, picks)
    } else {
        (Verdict::Inconclusive, picks)
    };

    Ok(setup.report(
        CheckKind::Transitive,
        op,
        phi,
        k,
        Some(strategy),
        rows,
        verdict,
        decay,
        subsequence,
        None,
    ))
}

pub fn check_mixing(
    op: &WeightedTranslation,
    phi: &YoungFunction,
    k: &FiniteSet,
    horizon: usize,
    eps: f64,
) -> Result<CriterionReport> {
    check_mixing_with(Exec::default(), op, phi, k, horizon, eps)
}

/// Mixing needs the whole tail of the sequence below `eps`, not just a
/// subsequence, with `E_n = K` and no `±` split.
pub fn check_mixing_with(
    exec: Exec,
    op: &WeightedTranslation,
    phi: &YoungFunction,
    k: &FiniteSet,
    horizon: usize,
    eps: f64,
) -> Result<CriterionReport> {
    let setup = Setup::new(op, k, horizon, eps)?;
    let ns: Vec<usize> = (1..=horizon).collect();
    let rows = exec.try_map(&ns, |&n| {
        Ok::<_, Error>(CriterionRow {
            n,
            q_phi: criterion_quantity(op, phi, k, n, ProductVariant::Phi)?,
            q_tilde: criterion_quantity(op, phi, k, n, ProductVariant::PhiTilde)?,
            q2_plus: None,
            q2_minus: None,
            partition: None,
        })
    })?;

    let decay = fit_decay(&rows, setup.fit_window);
    let n0 = rows
        .iter()
        .rposition(|r| r.max_quantity() >= eps)
        .map_or(Some(1), |i| (i + 1 < rows.len()).then_some(i + 2));
    let latest_allowed = horizon.saturating_sub(setup.fit_window);
    let verdict = match n0 {
        Some(n0) if n0 <= latest_allowed && decay.all_below_one() => Verdict::SatisfiedUpToHorizon,
        _ if persistent_lower_bound(&rows, eps) => Verdict::Violated,
        _ => Verdict::Inconclusive,
    };

    Ok(setup.report(
        CheckKind::Mixing,
        op,
        phi,
        k,
        None,
        rows,
        verdict,
        decay,
        Vec::new(),
        n0,
    ))
}

pub fn check_direct_sum(
    ops: &[WeightedTranslation],
    phi: &YoungFunction,
    k: &FiniteSet,
    horizon: usize,
    eps: f64,
    strategy: Strategy,
) -> Result<DirectSumReport> {
    check_direct_sum_with(Exec::default(), ops, phi, k, horizon, eps, strategy)
}

/// Transitivity of `C_{1,n} ⊕ ⋯ ⊕ C_{M,n}` needs one sequence `n_k` shared by
/// all components, so the per-component "good" sets are intersected.
pub fn check_direct_sum_with(
    exec: Exec,
    ops: &[WeightedTranslation],
    phi: &YoungFunction,
    k: &FiniteSet,
    horizon: usize,
    eps: f64,
    strategy: Strategy,
) -> Result<DirectSumReport> {
    if ops.is_empty() {
        return Err(Error::Domain("a direct sum needs at least one component".into()));
    }
    let components = ops
        .iter()
        .map(|op| check_transitive_with(exec, op, phi, k, horizon, eps, strategy))
        .collect::<Result<Vec<_>>>()?;

    let good = |r: &CriterionReport| -> BTreeSet<usize> {
        r.rows
            .iter()
            .filter(|row| row.max_quantity() < eps)
            .map(|row| row.n)
            .collect()
    };
    let mut joint = good(&components[0]);
    for c in &components[1..] {
        let other = good(c);
        joint.retain(|n| other.contains(n));
    }
    let joint_ns: Vec<usize> = joint.into_iter().collect();

    let last_block_start = 1usize << horizon.ilog2();
    let verdict = if components.iter().any(|c| c.verdict == Verdict::Violated) {
        Verdict::Violated
    } else if components
        .iter()
        .all(|c| c.verdict == Verdict::SatisfiedUpToHorizon)
        && joint_ns.last().is_some_and(|&n| n >= last_block_start)
    {
        Verdict::SatisfiedUpToHorizon
    } else {
        Verdict::Inconclusive
    };

    Ok(DirectSumReport {
        schema: REPORT_SCHEMA,
        components,
        joint_ns,
        verdict,
    })
}

/// Validated inputs shared by the checks.
struct Setup {
    horizon: usize,
    eps: f64,
    separation_index: usize,
    window: WindowBounds,
    fit_window: usize,
}

impl Setup {
    fn new(op: &WeightedTranslation, k: &FiniteSet, horizon: usize, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
        }
        if k.is_empty() {
            return Err(Error::InvalidArgument("K must be nonempty".into()));
        }
        let separation_index = separation_index(k, op.g())?;
        if horizon <= separation_index {
            return Err(Error::Horizon {
                horizon,
                index: separation_index,
            });
        }
        let window = op.window_bounds(k, 2 * horizon)?;
        Ok(Setup {
            horizon,
            eps,
            separation_index,
            window,
            fit_window: fit_window(horizon),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn report(
        self,
        kind: CheckKind,
        op: &WeightedTranslation,
        phi: &YoungFunction,
        k: &FiniteSet,
        strategy: Option<Strategy>,
        rows: Vec<CriterionRow>,
        verdict: Verdict,
        decay: Decay,
        subsequence: Vec<usize>,
        n0: Option<usize>,
    ) -> CriterionReport {
        let mut warnings = Vec::new();
        if self.window.sup_at_most_one {
            warnings.push(format!(
                "sup of the weight over the orbit window is {} <= 1; a weighted translation with \
                 sup |w| <= 1 cannot be hypercyclic",
                self.window.sup
            ));
        }
        CriterionReport {
            schema: REPORT_SCHEMA,
            kind,
            k: k.clone(),
            g: op.g().clone(),
            phi: phi.name().to_string(),
            weight: op.weight().name().to_string(),
            horizon: self.horizon,
            eps: self.eps,
            strategy,
            separation_index: self.separation_index,
            window: self.window,
            fit_window: self.fit_window,
            rows,
            verdict,
            decay,
            subsequence,
            n0,
            warnings,
        }
    }
}

/// `max(8, horizon/4)`, capped at the horizon.
pub fn fit_window(horizon: usize) -> usize {
    (horizon / 4).max(8).min(horizon)
}

/// Least-squares slope of `ln q` against `x`, returned as `exp(slope)`.
/// Non-positive values are skipped.
pub fn geometric_ratio(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, q)| *q > 0.0 && q.is_finite())
        .map(|&(x, q)| (x, q.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some((sxy / sxx).exp())
}

fn fit_decay(rows: &[CriterionRow], window: usize) -> Decay {
    let tail = &rows[rows.len() - window.min(rows.len())..];
    let fit = |get: &dyn Fn(&CriterionRow) -> Option<f64>, doubled: bool| {
        let pts: Vec<(f64, f64)> = tail
            .iter()
            .filter_map(|r| {
                let x = if doubled { 2 * r.n } else { r.n } as f64;
                get(r).map(|q| (x, q))
            })
            .collect();
        geometric_ratio(&pts)
    };
    Decay {
        q_phi: fit(&|r| Some(r.q_phi), false),
        q_tilde: fit(&|r| Some(r.q_tilde), false),
        q2_plus: fit(&|r| r.q2_plus, true),
        q2_minus: fit(&|r| r.q2_minus, true),
    }
}

/// One `n` per dyadic block `[2^j, 2^{j+1}) ∩ [1, horizon]`: the one
/// minimizing the row maximum (smallest `n` on ties).
fn dyadic_picks(rows: &[CriterionRow]) -> Vec<usize> {
    let horizon = rows.len();
    let mut picks = Vec::new();
    let mut start = 1usize;
    while start <= horizon {
        let end = (2 * start - 1).min(horizon);
        let best = (start..=end)
            .min_by(|&a, &b| {
                rows[a - 1]
                    .max_quantity()
                    .total_cmp(&rows[b - 1].max_quantity())
            })
            .expect("nonempty block");
        picks.push(best);
        start *= 2;
    }
    picks
}

/// Whether `Q_phi` or `Q_tilde` is nondecreasing over the whole horizon
/// while staying above `10·eps`. Both are partition-independent and must
/// vanish along any admissible subsequence.
fn persistent_lower_bound(rows: &[CriterionRow], eps: f64) -> bool {
    let check = |get: fn(&CriterionRow) -> f64| {
        let nondecreasing = rows
            .windows(2)
            .all(|w| get(&w[1]) >= get(&w[0]) * (1.0 - MONOTONE_SLACK));
        let floor = rows.iter().map(get).fold(f64::INFINITY, f64::min);
        nondecreasing && floor > VIOLATION_FACTOR * eps
    };
    check(|r| r.q_phi) || check(|r| r.q_tilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::ops::Weight;

    fn p(x: i64) -> GroupElement {
        GroupElement::scalar(x)
    }

    fn example() -> (WeightedTranslation, YoungFunction) {
        (
            WeightedTranslation::new(p(1), Weight::paper_step()).unwrap(),
            YoungFunction::paper_entropy(),
        )
    }

    #[test]
    fn quantity_with_unit_weight_is_indicator_norm() {
        let op = WeightedTranslation::new(p(2), Weight::constant(1.0)).unwrap();
        let phi = YoungFunction::paper_entropy();
        let e = FiniteSet::integers([0, 3, 4]);
        let base = orlicz_norm(&phi, &FinSupSeq::indicator(&e)).unwrap();
        for n in [1, 7, 30] {
            for v in [ProductVariant::Phi, ProductVariant::PhiTilde] {
                assert_eq!(criterion_quantity(&op, &phi, &e, n, v).unwrap(), base);
            }
        }
    }

    #[test]
    fn quantity_single_point_example() {
        let (op, phi) = example();
        let q = criterion_quantity(&op, &phi, &FiniteSet::integers([0]), 3, ProductVariant::Phi)
            .unwrap();
        let single = orlicz_norm(&phi, &FinSupSeq::delta(p(0), 1.0)).unwrap();
        assert!((q - single / 8.0).abs() < 1e-15);
    }

    #[test]
    fn quantity_on_empty_set_is_zero() {
        let (op, phi) = example();
        assert_eq!(
            criterion_quantity(&op, &phi, &FiniteSet::empty(), 4, ProductVariant::PhiTilde).unwrap(),
            0.0
        );
        assert!(criterion_quantity(&op, &phi, &FiniteSet::range(0, 1), 0, ProductVariant::Phi).is_err());
    }

    #[test]
    fn partitions() {
        let (op, _) = example();
        let k = FiniteSet::range(-3, 3);
        let all = choose_partition(&op, &k, 5, Strategy::AllPlus);
        assert_eq!((all.plus, all.minus), (k.clone(), FiniteSet::empty()));
        let none = choose_partition(&op, &FiniteSet::empty(), 5, Strategy::Greedy);
        assert!(none.plus.is_empty() && none.minus.is_empty());

        let k2 = FiniteSet::integers([-5, 5]);
        let n = 40;
        let greedy = choose_partition(&op, &k2, n, Strategy::Greedy);
        assert!(greedy.plus.contains(&p(5)));
        // −5: forward product (3/2)^4 (1/2)^{2n−4} against (2/3)^{2n}.
        let fwd = 1.5f64.powi(4) * 0.5f64.powi(2 * n as i32 - 4);
        let bwd = (2.0f64 / 3.0).powi(2 * n as i32);
        assert_eq!(greedy.plus.contains(&p(-5)), fwd <= bwd);
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("all-plus".parse::<Strategy>().unwrap(), Strategy::AllPlus);
        assert_eq!("all_minus".parse::<Strategy>().unwrap(), Strategy::AllMinus);
        assert!("best".parse::<Strategy>().is_err());
    }

    #[test]
    fn horizon_must_pass_separation_index() {
        let (op, phi) = example();
        let err = check_transitive(&op, &phi, &FiniteSet::range(-3, 3), 6, 1e-6, Strategy::Greedy)
            .unwrap_err();
        assert_eq!(err, Error::Horizon { horizon: 6, index: 6 });
        assert!(err.to_string().contains("horizon >= 7"));
    }

    #[test]
    fn singleton_is_satisfied() {
        let (op, phi) = example();
        let r = check_transitive(&op, &phi, &FiniteSet::integers([0]), 80, 1e-6, Strategy::Greedy)
            .unwrap();
        assert_eq!(r.verdict, Verdict::SatisfiedUpToHorizon);
        assert!(!r.subsequence.is_empty());
    }

    #[test]
    fn unit_weight_is_violated() {
        let op = WeightedTranslation::new(p(1), Weight::constant(1.0)).unwrap();
        let phi = YoungFunction::paper_entropy();
        let k = FiniteSet::range(-3, 3);
        let r = check_transitive(&op, &phi, &k, 40, 1e-6, Strategy::Greedy).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(!r.warnings.is_empty());
        let constant = orlicz_norm(&phi, &FinSupSeq::indicator(&k)).unwrap();
        assert!(r.rows.iter().all(|row| row.q_phi == constant));
        let m = check_mixing(&op, &phi, &k, 40, 1e-6).unwrap();
        assert_eq!(m.verdict, Verdict::Violated);
    }

    #[test]
    fn oscillating_weight_is_never_satisfied() {
        let op = WeightedTranslation::new(p(1), Weight::periodic(&[0.25, 4.0])).unwrap();
        let phi = YoungFunction::paper_entropy();
        let k = FiniteSet::range(0, 3);
        let m = check_mixing(&op, &phi, &k, 60, 1e-6).unwrap();
        assert_ne!(m.verdict, Verdict::SatisfiedUpToHorizon);
        let t = check_transitive(&op, &phi, &k, 60, 1e-6, Strategy::Greedy).unwrap();
        assert_ne!(t.verdict, Verdict::SatisfiedUpToHorizon);
    }

    #[test]
    fn geometric_fit() {
        let pts: Vec<(f64, f64)> = (10..30).map(|n| (n as f64, 3.0 * 0.7f64.powi(n))).collect();
        assert!((geometric_ratio(&pts).unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(geometric_ratio(&[(1.0, 0.0), (2.0, 0.0)]), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::SatisfiedUpToHorizon.exit_code(), 0);
        assert_eq!(Verdict::Violated.exit_code(), 2);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
    }

    #[test]
    fn empty_direct_sum() {
        let phi = YoungFunction::square();
        assert!(matches!(
            check_direct_sum(&[], &phi, &FiniteSet::range(0, 1), 10, 1e-6, Strategy::Greedy),
            Err(Error::Domain(_))
        ));
    }
}
