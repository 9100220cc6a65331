//! Lower bounds on the Orlicz norm from explicit feasible dual vectors.
//!
//! `‖f‖_φ = sup{Σ|f ν| : Σψ(|ν|) ≤ 1}`. For finitely supported `f` the
//! supremum may be restricted to `ν` supported on `supp f`. Every candidate
//! `ν` is projected radially onto `Σψ = 1` through the Luxemburg norm of
//! `ν`, and the objective becomes the scale-free ratio
//! `R(ν) = Σ|f|ν / N_ψ(ν)`, which is quasi-concave in each coordinate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::solve::{bisect_increasing, expand_upper, golden_min};
use crate::young::YoungFunction;

use super::norm::{amemiya_slice, luxemburg_slice};
use super::{FinSupSeq, Scalar};

const MAX_SWEEPS: usize = 30;
const LINE_ITERS: usize = 32;

/// Certified lower bound on `‖f‖_φ` by projected coordinate ascent over the
/// dual feasible set `{ν : Σψ(|ν|) ≤ 1}`.
///
/// Starts from `ν = φ′(k*|f|)` at the minimizer `k*` of the one-parameter
/// formula, plus `trials` random starts drawn from `seed`. Each candidate is
/// checked for feasibility before its value is accepted.
pub fn orlicz_norm_dual_bound<S: Scalar>(
    phi: &YoungFunction,
    f: &FinSupSeq<S>,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidArgument("dual ascent needs trials >= 1".into()));
    }
    let mags = f.magnitudes();
    let s = mags.iter().copied().fold(0.0, f64::max);
    if s == 0.0 {
        return Ok(0.0);
    }
    let a: Vec<f64> = mags.iter().map(|m| m / s).collect();
    let psi = phi.complement();
    if let Some(&y) = [1e-3, 1.0].iter().find(|&&y| !psi.value(y).is_finite()) {
        return Err(Error::UnboundedConjugate {
            y,
            searched_to: f64::INFINITY,
        });
    }

    let k = amemiya_slice(phi, &a)?.k;
    let mut starts = Vec::with_capacity(trials + 1);
    let det: Vec<f64> = a.iter().map(|&ai| phi.slope(k * ai)).collect();
    if det.iter().all(|v| v.is_finite()) && det.iter().any(|&v| v > 0.0) {
        starts.push(det);
    } else {
        starts.push(a.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        starts.push((0..a.len()).map(|_| rng.gen_range(1e-3..=1.0)).collect());
    }

    let mut best = 0.0f64;
    for start in starts {
        let nu = ascend(&psi, &a, start);
        if let Some(v) = certify(&psi, &a, &nu)? {
            best = best.max(v);
        }
    }
    Ok(s * best)
}

/// Largest `t` with `ψ(t) ≤ 1`: the bound on `|ν(x)|` at any single point
/// for `ν` in the dual feasible set.
pub fn max_single_point_feasible(psi: &YoungFunction) -> Result<f64> {
    let hi = expand_upper(|t| psi.value(t), 1.0, 1.0, 1e300)
        .ok_or_else(|| Error::Numeric(format!("{} never reaches 1", psi.name())))?;
    let (lo, _) = bisect_increasing(|t| psi.value(t), 1.0, 0.0, hi, 1e-15);
    Ok(lo)
}

/// Feasibility-checked value of the radial projection of `nu`.
fn certify(psi: &YoungFunction, a: &[f64], nu: &[f64]) -> Result<Option<f64>> {
    let n = luxemburg_slice(psi, nu)?;
    if n == 0.0 || !n.is_finite() {
        return Ok(None);
    }
    let projected: Vec<f64> = nu.iter().map(|v| v / n).collect();
    let used: f64 = projected.iter().map(|&v| psi.value(v)).sum();
    if used > 1.0 {
        return Ok(None);
    }
    Ok(Some(a.iter().zip(&projected).map(|(x, y)| x * y).sum()))
}

fn ascend(psi: &YoungFunction, a: &[f64], mut nu: Vec<f64>) -> Vec<f64> {
    let mut current = ratio(psi, a, &nu);
    for _ in 0..MAX_SWEEPS {
        let before = current;
        for i in 0..nu.len() {
            let (t, value) = line_search(psi, a, &mut nu, i);
            if value > current {
                nu[i] = t;
                current = value;
            }
        }
        if current - before <= 1e-13 * current.abs() {
            break;
        }
    }
    nu
}

/// Maximizes `R` over coordinate `i`, leaving `nu[i]` at its old value.
fn line_search(psi: &YoungFunction, a: &[f64], nu: &mut [f64], i: usize) -> (f64, f64) {
    let old = nu[i];
    let scale = nu.iter().copied().fold(0.0, f64::max).max(1e-12);
    let mut top = 2.0 * scale;
    let mut result = (old, f64::NEG_INFINITY);
    for _ in 0..20 {
        let (t, neg) = golden_min(
            |t| {
                nu[i] = t;
                -ratio(psi, a, nu)
            },
            0.0,
            top,
            1e-10,
            LINE_ITERS,
        );
        result = (t, -neg);
        if t < 0.9 * top {
            break;
        }
        top *= 4.0;
    }
    nu[i] = old;
    result
}

fn ratio(psi: &YoungFunction, a: &[f64], nu: &[f64]) -> f64 {
    let n = match luxemburg_newton(psi, nu) {
        Some(n) => n,
        None => luxemburg_slice(psi, nu).unwrap_or(f64::INFINITY),
    };
    if n == 0.0 || !n.is_finite() {
        return 0.0;
    }
    a.iter().zip(nu).map(|(x, y)| x * y).sum::<f64>() / n
}

/// Newton iteration for `Σψ(ν/k) = 1`, started left of the root where the
/// convex decreasing residual makes the iterates increase monotonically.
/// Returns `None` without `ψ′` or on any numerical trouble.
fn luxemburg_newton(psi: &YoungFunction, nu: &[f64]) -> Option<f64> {
    psi.derivative_at(0.0)?;
    let s = nu.iter().copied().fold(0.0, f64::max);
    if s == 0.0 {
        return Some(0.0);
    }
    let m = |k: f64| nu.iter().map(|&v| psi.value(v / k)).sum::<f64>() - 1.0;
    let mut k = s;
    while m(k) <= 0.0 {
        k *= 0.5;
        if k < 1e-300 {
            return None;
        }
    }
    for _ in 0..100 {
        let r = m(k);
        let slope: f64 = nu
            .iter()
            .map(|&v| psi.derivative_at(v / k).unwrap_or(0.0) * v / (k * k))
            .sum();
        if !(r.is_finite() && slope.is_finite()) || slope <= 0.0 {
            return None;
        }
        let step = r / slope;
        k += step;
        if step <= 1e-14 * k {
            return Some(k);
        }
    }
    None
}
