//! Text forms of the command-line inputs.
//!
//! * Young functions: a preset (`paper-entropy`, `paper-exp`, `power:p`,
//!   `square`) or an expression in `x`, validated before use.
//! * Weights: `paper-step`, `const:c`, `steps:below;t:v;...`,
//!   `periodic:a,b,...`, a number, or an expression in `x` (the first
//!   coordinate).
//! * Group elements: `1`, `-2` or `[1,-2]`.
//! * Finite sets: `a..b`, `[0,1,5]` or `[[0,1],[2,3]]`.
//! * Sequences: JSON records `[{"point":[0],"value":1}]` or the shorthand
//!   `[{[0],1},{[1],-2.5}]`.

use anyhow::{anyhow, bail, Context, Result};
use orlicz_dynamics::error::Error as CoreError;
use orlicz_dynamics::{FinSupSeq, FiniteSet, GroupElement, Weight, YoungFunction};

use crate::expr::parse_expr;

pub fn parse_phi(src: &str) -> Result<YoungFunction> {
    match YoungFunction::from_preset(src) {
        Ok(phi) => return Ok(phi),
        Err(CoreError::UnknownPreset(_)) => {}
        Err(e) => return Err(e.into()),
    }
    let expr = parse_expr(src).with_context(|| format!("`{src}` is neither a preset nor an expression"))?;
    let phi = YoungFunction::new(src.trim(), move |t| expr.eval(t).unwrap_or(f64::NAN));
    phi.validate()?;
    Ok(phi)
}

pub fn parse_weight(src: &str) -> Result<Weight> {
    let s = src.trim();
    if s == "paper-step" {
        return Ok(Weight::paper_step());
    }
    if let Some(c) = s.strip_prefix("const:") {
        return Ok(Weight::constant(number(c)?));
    }
    if let Some(rest) = s.strip_prefix("steps:") {
        let mut parts = rest.split(';');
        let below = number(parts.next().unwrap_or(""))?;
        let rules = parts
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let (t, v) = p
                    .split_once(':')
                    .ok_or_else(|| anyhow!("step rule `{p}` must look like threshold:value"))?;
                Ok((t.trim().parse::<i64>().with_context(|| format!("threshold `{t}`"))?, number(v)?))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Weight::step_table(below, &rules));
    }
    if let Some(rest) = s.strip_prefix("periodic:") {
        let values = rest.split(',').map(number).collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            bail!("periodic weight needs at least one value");
        }
        return Ok(Weight::periodic(&values));
    }
    if let Ok(c) = s.parse::<f64>() {
        return Ok(Weight::constant(c));
    }
    let expr = parse_expr(s).with_context(|| format!("weight `{s}`"))?;
    Ok(Weight::new(s, move |x| expr.eval(x.first() as f64).unwrap_or(f64::NAN)))
}

fn number(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().with_context(|| format!("`{}` is not a number", s.trim()))
}

pub fn parse_group_element(src: &str) -> Result<GroupElement> {
    let s = src.trim();
    if s.starts_with('[') {
        let coords: Vec<i64> = serde_json::from_str(s).with_context(|| format!("group element `{s}`"))?;
        Ok(GroupElement::new(coords)?)
    } else {
        Ok(GroupElement::scalar(s.parse().with_context(|| format!("group element `{s}`"))?))
    }
}

pub fn parse_set(src: &str) -> Result<FiniteSet> {
    let s = src.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().with_context(|| format!("range start in `{s}`"))?;
        let b: i64 = b.trim().parse().with_context(|| format!("range end in `{s}`"))?;
        if a > b {
            bail!("empty range `{s}`");
        }
        return Ok(FiniteSet::range(a, b));
    }
    let value: serde_json::Value = serde_json::from_str(s).with_context(|| format!("set `{s}`"))?;
    let items = value.as_array().ok_or_else(|| anyhow!("set `{s}` must be a list"))?;
    let points = items
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(_) => Ok(GroupElement::scalar(
                v.as_i64().ok_or_else(|| anyhow!("`{v}` is not an integer"))?,
            )),
            _ => Ok(GroupElement::new(serde_json::from_value(v.clone())?)?),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteSet::from_elements(points)?)
}

pub fn parse_seq(src: &str) -> Result<FinSupSeq> {
    let s = src.trim();
    if let Ok(seq) = serde_json::from_str::<FinSupSeq>(s) {
        return Ok(seq);
    }
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| anyhow!("sequence `{s}` must be a bracketed list"))?;
    let mut pairs = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('{')
            .ok_or_else(|| anyhow!("expected `{{` in sequence at `{rest}`"))?;
        let close = body_start
            .find('}')
            .ok_or_else(|| anyhow!("unclosed `{{` in sequence `{s}`"))?;
        let body = &body_start[..close];
        let (point, value) = body
            .rsplit_once(',')
            .ok_or_else(|| anyhow!("entry `{{{body}}}` must look like {{point,value}}"))?;
        pairs.push((parse_group_element(point)?, number(value)?));
        rest = body_start[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(FinSupSeq::from_pairs(pairs)?)
}

/// Comma-separated positive integers.
pub fn parse_ns(src: &str) -> Result<Vec<usize>> {
    src.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<usize>().with_context(|| format!("`{p}` is not a count")))
        .collect()
}
