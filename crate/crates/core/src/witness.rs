//! The explicit vectors behind "condition (ii) implies transitivity".
//!
//! For targets `f`, `h` supported in `K` and a split `K = E⁺ ∪ E⁻`,
//!
//! ```text
//! v = f χ_K + 2 Tⁿ(h χ_{E⁺}) + 2 Sⁿ(h χ_{E⁻})
//! ```
//!
//! satisfies `v → f` and `Cₙ v → h` along any sequence where the criterion
//! quantities vanish. Once `n` exceeds the separation index of `K`,
//!
//! ```text
//! Cₙ v = h χ_{E⁺} + h χ_{E⁻} + ½Tⁿ(f χ_K) + ½Sⁿ(f χ_K) + T²ⁿ(h χ_{E⁺}) + S²ⁿ(h χ_{E⁻})
//! ```
//!
//! with pairwise disjoint supports, and the last four terms bound
//! `‖Cₙ v − h‖_φ` through Minkowski's inequality.

use serde::Serialize;

use crate::criteria::{choose_partition, Partition, Strategy};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{separation_index, FiniteSet, GroupElement};
use crate::ops::WeightedTranslation;
use crate::seq::{orlicz_norm, FinSupSeq, Scalar};
use crate::young::YoungFunction;
use crate::REPORT_SCHEMA;

/// Slack allowed when comparing `dist_to_h` against the Minkowski total.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRow {
    pub n: usize,
    pub v: FinSupSeq,
    /// `‖v − f‖_φ`.
    pub dist_to_f: f64,
    /// `‖Cₙ v − h‖_φ`.
    pub dist_to_h: f64,
    /// `‖h − hχ_K‖`, `½‖Tⁿ(fχ_K)‖`, `½‖Sⁿ(fχ_K)‖`, `‖T²ⁿ(hχ_{E⁺})‖`,
    /// `‖S²ⁿ(hχ_{E⁻})‖`.
    pub bound_terms: [f64; 5],
    pub bound_total: f64,
    /// `‖f − fχ_K‖ + 2‖Tⁿ(hχ_{E⁺})‖ + 2‖Sⁿ(hχ_{E⁻})‖`, which dominates
    /// `dist_to_f`.
    pub f_bound: f64,
    /// `bound_total / dist_to_h`, absent when the distance is zero.
    pub tightness: Option<f64>,
    pub partition: Partition,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessTrace {
    pub schema: &'static str,
    pub phi: String,
    pub weight: String,
    pub g: GroupElement,
    #[serde(rename = "K")]
    pub k: FiniteSet,
    pub separation_index: usize,
    pub strategy: Strategy,
    pub f: FinSupSeq,
    pub h: FinSupSeq,
    pub rows: Vec<WitnessRow>,
}

/// `fχ_K + 2Tⁿ(hχ_{E⁺}) + 2Sⁿ(hχ_{E⁻})` with `K = E⁺ ∪ E⁻`.
pub fn build_vk<S: Scalar>(
    op: &WeightedTranslation,
    f: &FinSupSeq<S>,
    h: &FinSupSeq<S>,
    n: usize,
    partition: &Partition,
) -> Result<FinSupSeq<S>> {
    let k = partition.plus.union(&partition.minus);
    check_separation(op, &f.support().union(&h.support()).union(&k), n)?;
    let forward = op.apply_t(&h.restrict(&partition.plus), n).scale(2.0);
    let backward = op.apply_s(&h.restrict(&partition.minus), n).scale(2.0);
    Ok(&(&f.restrict(&k) + &forward) + &backward)
}

/// The six summands of `Cₙ v` in the order
/// `hχ_{E⁺}, hχ_{E⁻}, ½Tⁿ(fχ_K), ½Sⁿ(fχ_K), T²ⁿ(hχ_{E⁺}), S²ⁿ(hχ_{E⁻})`.
pub fn expand_cosine_terms<S: Scalar>(
    op: &WeightedTranslation,
    f: &FinSupSeq<S>,
    h: &FinSupSeq<S>,
    n: usize,
    partition: &Partition,
) -> Result<[FinSupSeq<S>; 6]> {
    let k = partition.plus.union(&partition.minus);
    check_separation(op, &f.support().union(&h.support()).union(&k), n)?;
    let fk = f.restrict(&k);
    let h_plus = h.restrict(&partition.plus);
    let h_minus = h.restrict(&partition.minus);
    Ok([
        h_plus.clone(),
        h_minus.clone(),
        op.apply_t(&fk, n).scale(0.5),
        op.apply_s(&fk, n).scale(0.5),
        op.apply_t(&h_plus, 2 * n),
        op.apply_s(&h_minus, 2 * n),
    ])
}

/// Builds `v` for every `n` in `ns` with `K = supp f ∪ supp h` and the split
/// from `strategy`, and records both distances with their bounds.
///
/// Fails if a distance exceeds its Minkowski bound beyond [`BOUND_SLACK`].
pub fn verify_witness(
    op: &WeightedTranslation,
    phi: &YoungFunction,
    f: &FinSupSeq,
    h: &FinSupSeq,
    ns: &[usize],
    strategy: Strategy,
) -> Result<WitnessTrace> {
    verify_witness_with(Exec::default(), op, phi, f, h, ns, strategy)
}

pub fn verify_witness_with(
    exec: Exec,
    op: &WeightedTranslation,
    phi: &YoungFunction,
    f: &FinSupSeq,
    h: &FinSupSeq,
    ns: &[usize],
    strategy: Strategy,
) -> Result<WitnessTrace> {
    let k = f.support().union(&h.support());
    let index = separation_index(&k, op.g())?;
    if let Some(&n) = ns.iter().find(|&&n| n <= index) {
        return Err(Error::Separation { n, min: index + 1 });
    }
    let rows = exec.try_map(ns, |&n| witness_row(op, phi, f, h, &k, n, strategy))?;
    Ok(WitnessTrace {
        schema: REPORT_SCHEMA,
        phi: phi.name().to_string(),
        weight: op.weight().name().to_string(),
        g: op.g().clone(),
        k,
        separation_index: index,
        strategy,
        f: f.clone(),
        h: h.clone(),
        rows,
    })
}

fn witness_row(
    op: &WeightedTranslation,
    phi: &YoungFunction,
    f: &FinSupSeq,
    h: &FinSupSeq,
    k: &FiniteSet,
    n: usize,
    strategy: Strategy,
) -> Result<WitnessRow> {
    let partition = choose_partition(op, k, n, strategy);
    let norm = |s: &FinSupSeq| orlicz_norm(phi, s);

    let v = build_vk(op, f, h, n, &partition)?;
    let cv = op.apply_cosine(&v, n);
    let dist_to_f = norm(&(&v - f))?;
    let dist_to_h = norm(&(&cv - h))?;

    let fk = f.restrict(k);
    let h_plus = h.restrict(&partition.plus);
    let h_minus = h.restrict(&partition.minus);
    let bound_terms = [
        norm(&(h - &h.restrict(k)))?,
        0.5 * norm(&op.apply_t(&fk, n))?,
        0.5 * norm(&op.apply_s(&fk, n))?,
        norm(&op.apply_t(&h_plus, 2 * n))?,
        norm(&op.apply_s(&h_minus, 2 * n))?,
    ];
    let bound_total: f64 = bound_terms.iter().sum();
    let f_bound = norm(&(f - &fk))?
        + 2.0 * norm(&op.apply_t(&h_plus, n))?
        + 2.0 * norm(&op.apply_s(&h_minus, n))?;

    if dist_to_h > bound_total + BOUND_SLACK * bound_total.max(1.0) {
        return Err(Error::Numeric(format!(
            "n = {n}: ‖Cₙv − h‖ = {dist_to_h:e} exceeds its Minkowski bound {bound_total:e}"
        )));
    }
    Ok(WitnessRow {
        n,
        v,
        dist_to_f,
        dist_to_h,
        bound_terms,
        bound_total,
        f_bound,
        tightness: (dist_to_h > 0.0).then(|| bound_total / dist_to_h),
        partition,
    })
}

fn check_separation(op: &WeightedTranslation, k: &FiniteSet, n: usize) -> Result<()> {
    let index = separation_index(k, op.g())?;
    if n <= index {
        return Err(Error::Separation { n, min: index + 1 });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::Weight;

    fn p(x: i64) -> GroupElement {
        GroupElement::scalar(x)
    }

    fn all_plus(k: &FiniteSet) -> Partition {
        Partition {
            plus: k.clone(),
            minus: FiniteSet::empty(),
        }
    }

    #[test]
    fn zero_tail_gives_f() {
        let op = WeightedTranslation::new(p(1), Weight::paper_step()).unwrap();
        let f = FinSupSeq::indicator(&FiniteSet::range(-1, 1));
        let v = build_vk(&op, &f, &FinSupSeq::zero(), 5, &all_plus(&f.support())).unwrap();
        assert_eq!(v, f);
    }

    #[test]
    fn unit_weight_shift() {
        let op = WeightedTranslation::new(p(1), Weight::constant(1.0)).unwrap();
        let d = FinSupSeq::delta(p(0), 1.0);
        let v = build_vk(&op, &d, &d, 10, &all_plus(&FiniteSet::integers([0]))).unwrap();
        let want = FinSupSeq::from_pairs([(p(0), 1.0), (p(10), 2.0)]).unwrap();
        assert_eq!(v, want);
    }

    #[test]
    fn step_weight_single_point() {
        let op = WeightedTranslation::new(p(1), Weight::paper_step()).unwrap();
        let d = FinSupSeq::delta(p(0), 1.0);
        let v = build_vk(&op, &d, &d, 10, &all_plus(&FiniteSet::integers([0]))).unwrap();
        assert_eq!(v.get(&p(0)), 1.0);
        assert_eq!(v.get(&p(10)), 2.0 * 0.5f64.powi(10));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn separation_error_names_minimum() {
        let op = WeightedTranslation::new(p(1), Weight::paper_step()).unwrap();
        let f = FinSupSeq::indicator(&FiniteSet::range(-1, 1));
        let err = build_vk(&op, &f, &f, 2, &all_plus(&f.support())).unwrap_err();
        assert_eq!(err, Error::Separation { n: 2, min: 3 });
    }

    #[test]
    fn expansion_matches_cosine_of_v() {
        let op = WeightedTranslation::new(p(1), Weight::paper_step()).unwrap();
        let f = FinSupSeq::from_pairs([(p(-1), 2.0), (p(0), -1.0), (p(1), 0.5)]).unwrap();
        let h = FinSupSeq::from_pairs([(p(-1), 1.0), (p(1), 3.0)]).unwrap();
        let k = FiniteSet::range(-1, 1);
        let partition = Partition {
            plus: FiniteSet::integers([1]),
            minus: FiniteSet::integers([-1, 0]),
        };
        let n = 4;
        let cv = op.apply_cosine(&build_vk(&op, &f, &h, n, &partition).unwrap(), n);
        let terms = expand_cosine_terms(&op, &f, &h, n, &partition).unwrap();
        let sum = terms.iter().fold(FinSupSeq::zero(), |acc, t| &acc + t);
        for x in cv.support().union(&sum.support()).iter() {
            assert!((cv.get(x) - sum.get(x)).abs() < 1e-12);
        }
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i + 1..] {
                assert!(a.support().is_disjoint(&b.support()));
            }
        }
        assert!(k.is_subset(&partition.plus.union(&partition.minus)));
    }

    #[test]
    fn example_distances_decay() {
        let op = WeightedTranslation::new(p(1), Weight::paper_step()).unwrap();
        let phi = YoungFunction::paper_entropy();
        let f = FinSupSeq::indicator(&FiniteSet::range(-1, 1));
        let trace = verify_witness(&op, &phi, &f, &f, &[10, 20, 40, 80], Strategy::AllPlus).unwrap();
        for w in trace.rows.windows(2) {
            assert!(w[1].dist_to_f < w[0].dist_to_f);
            assert!(w[1].dist_to_h < w[0].dist_to_h);
        }
        let last = trace.rows.last().unwrap();
        assert!(last.dist_to_f < 1e-4 && last.dist_to_h < 1e-4);
        for r in &trace.rows {
            assert_eq!(r.bound_terms[0], 0.0);
            assert!(r.dist_to_f <= r.f_bound * (1.0 + 1e-9));
        }
    }

    #[test]
    fn unit_weight_keeps_distance() {
        let op = WeightedTranslation::new(p(1), Weight::constant(1.0)).unwrap();
        let phi = YoungFunction::paper_entropy();
        let f = FinSupSeq::indicator(&FiniteSet::range(-1, 1));
        let half = 0.5 * orlicz_norm(&phi, &f).unwrap();
        let trace = verify_witness(&op, &phi, &f, &f, &[10, 20, 40], Strategy::AllPlus).unwrap();
        assert!(trace.rows.iter().all(|r| r.dist_to_h >= half * (1.0 - 1e-9)));
    }

    #[test]
    fn zero_targets() {
        let op = WeightedTranslation::new(p(1), Weight::paper_step()).unwrap();
        let phi = YoungFunction::square();
        let z = FinSupSeq::zero();
        let trace = verify_witness(&op, &phi, &z, &z, &[1, 5], Strategy::Greedy).unwrap();
        for r in &trace.rows {
            assert_eq!((r.dist_to_f, r.dist_to_h, r.bound_total), (0.0, 0.0, 0.0));
            assert_eq!(r.tightness, None);
        }
    }
}
