//! Subcommand definitions and their execution.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use orlicz_dynamics::example::ExampleSetup;
use orlicz_dynamics::young::log_grid;
use orlicz_dynamics::{
    check_direct_sum, check_mixing, check_transitive, luxemburg_norm, modular, orlicz_norm,
    orlicz_norm_dual_bound, verify_witness, ConjugateGrid, FinSupSeq, Strategy,
    Verdict, WeightedTranslation, YoungFunction, REPORT_SCHEMA,
};
use serde::Serialize;

use crate::config::Settings;
use crate::inputs::{parse_group_element, parse_ns, parse_phi, parse_seq, parse_set, parse_weight};
use crate::report::{self, Emit};

const DEFAULT_PHI: &str = "paper-entropy";
const DEFAULT_WEIGHT: &str = "paper-step";
const DEFAULT_G: &str = "1";
const DEFAULT_K: &str = "-3..3";
const DEFAULT_HORIZON: usize = 80;
const DEFAULT_EPS: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "orlicz", version, about = "Orlicz norms and cosine-operator dynamics on Z^d")]
pub struct Cli {
    /// TOML or JSON file whose keys supply defaults for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also write the report rows as CSV.
    #[arg(long, global = true, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm or modular of a finitely supported sequence.
    Norm(NormArgs),
    /// Values of the complementary function ψ.
    Conjugate(ConjugateArgs),
    /// Finite-horizon transitivity check.
    CheckTransitive(CheckArgs),
    /// Finite-horizon mixing check.
    CheckMixing(MixingArgs),
    /// Transitivity of a direct sum; repeat --weight and --g per component.
    CheckDirectSum(DirectSumArgs),
    /// Build the approximating vectors and their distance ledger.
    Witness(WitnessArgs),
    /// Run the reference step-weight setup end to end.
    ReproduceExample(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Luxemburg,
    Orlicz,
    Modular,
    /// Certified lower bound on the Orlicz norm by dual ascent.
    Dual,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    /// Preset or expression in x.
    #[arg(long)]
    phi: Option<String>,
    /// Sequence, e.g. "[{[0],1},{[1],1}]".
    #[arg(long)]
    f: Option<String>,
    #[arg(long, value_enum)]
    kind: Option<NormKind>,
    /// Random restarts for --kind dual.
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Digits after the decimal point on stdout.
    #[arg(long)]
    precision: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConjugateArgs {
    #[arg(long)]
    phi: Option<String>,
    /// Comma-separated points.
    #[arg(long)]
    y: Option<String>,
    /// Grid step for functions without a derivative.
    #[arg(long)]
    step: Option<String>,
    /// Grid end for functions without a derivative.
    #[arg(long)]
    x_max: Option<String>,
    #[arg(long)]
    precision: Option<String>,
}

#[derive(Debug, Args)]
pub struct Shared {
    /// Preset or expression in x [default: paper-entropy].
    #[arg(long)]
    phi: Option<String>,
    /// Finite set: a..b or a JSON list [default: -3..3].
    #[arg(long)]
    k: Option<String>,
    /// [default: 80]
    #[arg(long)]
    horizon: Option<String>,
    /// [default: 1e-6]
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    shared: Shared,
    /// paper-step, const:c, steps:..., periodic:..., a number or an expression [default: paper-step].
    #[arg(long)]
    weight: Option<String>,
    /// Translation element, e.g. 1 or [1,-2] [default: 1].
    #[arg(long)]
    g: Option<String>,
    /// all-plus, all-minus or greedy [default: greedy].
    #[arg(long)]
    strategy: Option<String>,
}

#[derive(Debug, Args)]
pub struct MixingArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    g: Option<String>,
}

#[derive(Debug, Args)]
pub struct DirectSumArgs {
    #[command(flatten)]
    shared: Shared,
    /// One per component.
    #[arg(long = "weight")]
    weights: Vec<String>,
    /// One per component, or a single element shared by all.
    #[arg(long = "g")]
    gs: Vec<String>,
    #[arg(long)]
    strategy: Option<String>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    strategy: Option<String>,
    /// Target near the starting point [default: indicator of K].
    #[arg(long)]
    f: Option<String>,
    /// Target near the image [default: f].
    #[arg(long)]
    h: Option<String>,
    /// Comma-separated powers [default: the transitive subsequence].
    #[arg(long)]
    ns: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    horizon: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    /// [default: all-plus]
    #[arg(long)]
    strategy: Option<String>,
}

impl Shared {
    fn record(self, s: &mut Settings) {
        s.flag("phi", self.phi);
        s.flag("k", self.k);
        s.flag("horizon", self.horizon);
        s.flag("eps", self.eps);
    }
}

/// Loads `--config`, overlays the flags and runs the command. Returns the
/// process exit status.
pub fn execute(cli: Cli) -> Result<i32> {
    let mut s = Settings::load(cli.config.as_deref())?;
    s.flag("output", cli.output.map(|p| p.display().to_string()));
    s.flag("csv", cli.csv.map(|p| p.display().to_string()));
    let emit = Emit {
        json: s.get("output").map(PathBuf::from),
        csv: s.get("csv").map(PathBuf::from),
    };
    match cli.command {
        Command::Norm(a) => {
            s.flag("phi", a.phi);
            s.flag("f", a.f);
            s.flag("kind", a.kind.map(|k| format!("{k:?}").to_ascii_lowercase()));
            s.flag("trials", a.trials);
            s.flag("seed", a.seed);
            s.flag("precision", a.precision);
            norm(&s, &emit)
        }
        Command::Conjugate(a) => {
            s.flag("phi", a.phi);
            s.flag("y", a.y);
            s.flag("step", a.step);
            s.flag("x_max", a.x_max);
            s.flag("precision", a.precision);
            conjugate(&s, &emit)
        }
        Command::CheckTransitive(a) => {
            a.shared.record(&mut s);
            s.flag("weight", a.weight);
            s.flag("g", a.g);
            s.flag("strategy", a.strategy);
            let c = common(&s)?;
            let op = operator(s.text_or("g", DEFAULT_G), s.text_or("weight", DEFAULT_WEIGHT))?;
            let report = check_transitive(&op, &c.phi, &c.k, c.horizon, c.eps, strategy(&s, Strategy::Greedy)?)?;
            report::criterion(&emit, &report)?;
            Ok(report.verdict.exit_code())
        }
        Command::CheckMixing(a) => {
            a.shared.record(&mut s);
            s.flag("weight", a.weight);
            s.flag("g", a.g);
            let c = common(&s)?;
            let op = operator(s.text_or("g", DEFAULT_G), s.text_or("weight", DEFAULT_WEIGHT))?;
            let report = check_mixing(&op, &c.phi, &c.k, c.horizon, c.eps)?;
            report::criterion(&emit, &report)?;
            Ok(report.verdict.exit_code())
        }
        Command::CheckDirectSum(a) => {
            a.shared.record(&mut s);
            s.flag_list("weights", a.weights);
            s.flag_list("gs", a.gs);
            s.flag("strategy", a.strategy);
            direct_sum(&s, &emit)
        }
        Command::Witness(a) => {
            a.shared.record(&mut s);
            s.flag("weight", a.weight);
            s.flag("g", a.g);
            s.flag("strategy", a.strategy);
            s.flag("f", a.f);
            s.flag("h", a.h);
            s.flag("ns", a.ns);
            witness(&s, &emit)
        }
        Command::ReproduceExample(a) => {
            s.flag("k", a.k);
            s.flag("horizon", a.horizon);
            s.flag("eps", a.eps);
            s.flag("strategy", a.strategy);
            let defaults = ExampleSetup::default();
            let setup = ExampleSetup {
                k: s.get("k").map(parse_set).transpose()?.unwrap_or(defaults.k),
                horizon: s.parse_or("horizon", defaults.horizon)?,
                eps: s.parse_or("eps", defaults.eps)?,
                strategy: strategy(&s, defaults.strategy)?,
            };
            let report = setup.reproduce()?;
            emit.json(&report)?;
            emit.csv(&report.bounds)?;
            eprintln!("verdict: {}", verdict_name(report.verdict));
            Ok(report.verdict.exit_code())
        }
    }
}

struct Common {
    phi: YoungFunction,
    k: orlicz_dynamics::FiniteSet,
    horizon: usize,
    eps: f64,
}

fn common(s: &Settings) -> Result<Common> {
    let horizon = s.parse_or("horizon", DEFAULT_HORIZON)?;
    let eps = s.parse_or("eps", DEFAULT_EPS)?;
    if horizon == 0 {
        bail!("--horizon must be at least 1");
    }
    if !(eps > 0.0 && eps.is_finite()) {
        bail!("--eps must be positive and finite, got {eps}");
    }
    Ok(Common {
        phi: parse_phi(s.text_or("phi", DEFAULT_PHI)).context("--phi")?,
        k: parse_set(s.text_or("k", DEFAULT_K)).context("--k")?,
        horizon,
        eps,
    })
}

fn operator(g: &str, weight: &str) -> Result<WeightedTranslation> {
    let g = parse_group_element(g).context("--g")?;
    let w = parse_weight(weight).context("--weight")?;
    Ok(WeightedTranslation::new(g, w)?)
}

fn strategy(s: &Settings, default: Strategy) -> Result<Strategy> {
    Ok(s.get("strategy").map(str::parse).transpose()?.unwrap_or(default))
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::SatisfiedUpToHorizon => "satisfied_up_to_horizon",
        Verdict::Violated => "violated",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
struct NormReport<'a> {
    schema: &'static str,
    phi: &'a str,
    kind: NormKind,
    f: &'a FinSupSeq,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn norm(s: &Settings, emit: &Emit) -> Result<i32> {
    let phi = parse_phi(s.require("phi")?).context("--phi")?;
    let f = parse_seq(s.require("f")?).context("--f")?;
    let kind = match s.text_or("kind", "orlicz") {
        "luxemburg" => NormKind::Luxemburg,
        "orlicz" => NormKind::Orlicz,
        "modular" => NormKind::Modular,
        "dual" => NormKind::Dual,
        other => bail!("unknown --kind `{other}` (expected luxemburg, orlicz, modular or dual)"),
    };
    let precision: usize = s.parse_or("precision", 7)?;
    let (value, trials, seed) = match kind {
        NormKind::Luxemburg => (luxemburg_norm(&phi, &f)?, None, None),
        NormKind::Orlicz => (orlicz_norm(&phi, &f)?, None, None),
        NormKind::Modular => (modular(&phi, &f), None, None),
        NormKind::Dual => {
            let trials = s.parse_or("trials", 4usize)?;
            let seed = s.parse_or("seed", 0u64)?;
            (orlicz_norm_dual_bound(&phi, &f, trials, seed)?, Some(trials), Some(seed))
        }
    };
    println!("{value:.precision$}");
    let report = NormReport {
        schema: REPORT_SCHEMA,
        phi: phi.name(),
        kind,
        f: &f,
        value,
        trials,
        seed,
    };
    if emit.json.is_some() {
        emit.json(&report)?;
    }
    emit.csv(&[report::NormRow { kind, value }])?;
    Ok(0)
}

#[derive(Serialize)]
struct ConjugateReport<'a> {
    schema: &'static str,
    phi: &'a str,
    closed_form: bool,
    grid: Option<ConjugateGrid>,
    rows: Vec<report::ConjugateRow>,
    delta2: orlicz_dynamics::Delta2Report,
}

fn conjugate(s: &Settings, emit: &Emit) -> Result<i32> {
    let phi = parse_phi(s.require("phi")?).context("--phi")?;
    let ys = s
        .require("y")?
        .split(',')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("--y entry `{p}`")))
        .collect::<Result<Vec<_>>>()?;
    let defaults = ConjugateGrid::default();
    let grid = ConjugateGrid {
        step: s.parse_or("step", defaults.step)?,
        x_max: s.parse_or("x_max", defaults.x_max)?,
    };
    let precision: usize = s.parse_or("precision", 7)?;
    let rows = ys
        .iter()
        .map(|&y| {
            let psi = phi.conjugate_value(y, grid)?;
            println!("{y} {psi:.precision$}");
            Ok(report::ConjugateRow { y, psi })
        })
        .collect::<Result<Vec<_>>>()?;
    let closed_form = phi.closed_complement().is_some();
    let report = ConjugateReport {
        schema: REPORT_SCHEMA,
        phi: phi.name(),
        closed_form,
        grid: (!closed_form && !phi.has_derivative()).then_some(grid),
        rows,
        delta2: phi.is_delta2(&log_grid(1e-3, 1e3, 64))?,
    };
    if emit.json.is_some() {
        emit.json(&report)?;
    }
    emit.csv(&report.rows)?;
    Ok(0)
}

fn direct_sum(s: &Settings, emit: &Emit) -> Result<i32> {
    let c = common(s)?;
    let mut weights = s.list("weights");
    if weights.is_empty() {
        weights = s.get("weight").map(|w| vec![w.to_string()]).unwrap_or_default();
    }
    if weights.is_empty() {
        bail!("check-direct-sum needs at least one --weight");
    }
    let mut gs = s.list("gs");
    if gs.is_empty() {
        gs = vec![s.text_or("g", DEFAULT_G).to_string()];
    }
    if gs.len() == 1 {
        gs = vec![gs[0].clone(); weights.len()];
    }
    if gs.len() != weights.len() {
        bail!("got {} --g values for {} --weight values", gs.len(), weights.len());
    }
    let ops = gs
        .iter()
        .zip(&weights)
        .map(|(g, w)| operator(g, w))
        .collect::<Result<Vec<_>>>()?;
    let report = check_direct_sum(&ops, &c.phi, &c.k, c.horizon, c.eps, strategy(s, Strategy::Greedy)?)?;
    emit.json(&report)?;
    emit.csv(&report::joint_rows(&report))?;
    eprintln!("verdict: {}", verdict_name(report.verdict));
    Ok(report.verdict.exit_code())
}

fn witness(s: &Settings, emit: &Emit) -> Result<i32> {
    let c = common(s)?;
    let op = operator(s.text_or("g", DEFAULT_G), s.text_or("weight", DEFAULT_WEIGHT))?;
    let strategy = strategy(s, Strategy::Greedy)?;
    let f = match s.get("f") {
        Some(src) => parse_seq(src).context("--f")?,
        None => FinSupSeq::indicator(&c.k),
    };
    let h = match s.get("h") {
        Some(src) => parse_seq(src).context("--h")?,
        None => f.clone(),
    };
    let ns = match s.get("ns") {
        Some(src) => parse_ns(src).context("--ns")?,
        None => {
            let k = f.support().union(&h.support());
            let report = check_transitive(&op, &c.phi, &k, c.horizon, c.eps, strategy)?;
            report
                .subsequence
                .into_iter()
                .filter(|&n| n > report.separation_index)
                .collect()
        }
    };
    if ns.is_empty() {
        bail!("no powers to evaluate; pass --ns or raise --horizon");
    }
    let trace = verify_witness(&op, &c.phi, &f, &h, &ns, strategy)?;
    emit.json(&trace)?;
    emit.csv(&trace.rows.iter().map(report::WitnessCsv::from).collect::<Vec<_>>())?;
    Ok(0)
}
