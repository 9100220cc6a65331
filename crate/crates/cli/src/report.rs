//! JSON and CSV writers.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use orlicz_dynamics::{CriterionReport, CriterionRow, DirectSumReport, WitnessRow};
use serde::Serialize;

use crate::commands::{verdict_name, NormKind};

/// Where reports go: JSON to a file or stdout, CSV only when asked for.
#[derive(Debug, Default)]
pub struct Emit {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl Emit {
    pub fn json<T: Serialize>(&self, report: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        match &self.json {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    pub fn csv<R: Serialize>(&self, rows: &[R]) -> Result<()> {
        let Some(path) = &self.csv else {
            return Ok(());
        };
        let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        for row in rows {
            w.serialize(row)?;
        }
        w.flush().with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

pub fn criterion(emit: &Emit, report: &CriterionReport) -> Result<()> {
    emit.json(report)?;
    emit.csv(&report.rows.iter().map(CriterionCsv::from).collect::<Vec<_>>())?;
    eprintln!("verdict: {}", verdict_name(report.verdict));
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct CriterionCsv {
    pub n: usize,
    #[serde(rename = "Q_phi")]
    pub q_phi: f64,
    #[serde(rename = "Q_tilde")]
    pub q_tilde: f64,
    #[serde(rename = "Q2_plus")]
    pub q2_plus: Option<f64>,
    #[serde(rename = "Q2_minus")]
    pub q2_minus: Option<f64>,
    pub partition_size_plus: Option<usize>,
}

impl From<&CriterionRow> for CriterionCsv {
    fn from(r: &CriterionRow) -> Self {
        CriterionCsv {
            n: r.n,
            q_phi: r.q_phi,
            q_tilde: r.q_tilde,
            q2_plus: r.q2_plus,
            q2_minus: r.q2_minus,
            partition_size_plus: r.partition.as_ref().map(|p| p.plus.len()),
        }
    }
}

/// One row per `(n, component)` with that component's largest quantity.
#[derive(Debug, Serialize)]
pub struct JointCsv {
    pub n: usize,
    pub component: usize,
    pub max_quantity: f64,
    pub joint: bool,
}

pub fn joint_rows(report: &DirectSumReport) -> Vec<JointCsv> {
    let mut out = Vec::new();
    for (component, c) in report.components.iter().enumerate() {
        for r in &c.rows {
            out.push(JointCsv {
                n: r.n,
                component,
                max_quantity: r.max_quantity(),
                joint: report.joint_ns.binary_search(&r.n).is_ok(),
            });
        }
    }
    out.sort_by_key(|r| (r.n, r.component));
    out
}

#[derive(Debug, Serialize)]
pub struct WitnessCsv {
    pub n: usize,
    pub dist_to_f: f64,
    pub dist_to_h: f64,
    pub term_1: f64,
    pub term_2: f64,
    pub term_3: f64,
    pub term_4: f64,
    pub term_5: f64,
    pub bound_total: f64,
    pub f_bound: f64,
}

impl From<&WitnessRow> for WitnessCsv {
    fn from(r: &WitnessRow) -> Self {
        let [term_1, term_2, term_3, term_4, term_5] = r.bound_terms;
        WitnessCsv {
            n: r.n,
            dist_to_f: r.dist_to_f,
            dist_to_h: r.dist_to_h,
            term_1,
            term_2,
            term_3,
            term_4,
            term_5,
            bound_total: r.bound_total,
            f_bound: r.f_bound,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct NormRow {
    pub kind: NormKind,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct ConjugateRow {
    pub y: f64,
    pub psi: f64,
}
