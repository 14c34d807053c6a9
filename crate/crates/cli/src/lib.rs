//! Command implementations behind the `nfi` binary.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use nfi_core::ext::{ExtNat, Fin};
use nfi_core::generate::{generate, BudgetRule, GenKind, GenParams};
use nfi_core::instance_file::InstanceFile;
use nfi_core::interdiction::MAX_CUTWISE_VERTICES;
use nfi_core::reductions::{
    bmstc_to_nfi, bmstc_via_nfi, dks_approx_pipeline, dks_to_nfi, AuxiliaryGraph, DksInstance,
};
use nfi_core::{
    bmstc_exact, evaluate, gomory_hu, nfi_approx, nfi_exact_cutwise, nfi_exact_subsets, Error,
    InterdictionSolution, NfiInstance, WeightedCut,
};

#[derive(Debug, Parser)]
#[command(name = "nfi", version, about = "Network flow interdiction and budgeted s-t cut toolkit")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line, fixed field order.
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InnerSolver {
    Exact,
    Approx,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate NFI with guess size k.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Exact NFI by both small-instance oracles, checking that they agree.
    Exact {
        instance: PathBuf,
        /// Not honoured: the oracle size guards are fixed.
        #[arg(long)]
        guard_override: bool,
    },
    /// Rewrite a BMstC instance as an NFI instance.
    ReduceBmstc { instance: PathBuf },
    /// Build the NFI auxiliary graph of a densest-k-subgraph instance.
    ReduceDks {
        instance: PathBuf,
        #[arg(long)]
        budget: u64,
    },
    /// Densest-k-subgraph estimate through NFI on the auxiliary graph.
    Dks {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = InnerSolver::Exact)]
        solver: InnerSolver,
        /// Guess size of the approximate inner solver.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Gomory-Hu tree under the capacities (unit capacities for dks files).
    Ghtree { instance: PathBuf },
    /// Re-evaluate every report record against its instance.
    Verify { instance: PathBuf, report: PathBuf },
    /// Approximate-versus-exact residuals over a generated suite.
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        max_u: u64,
        #[arg(long, default_value_t = 5)]
        max_c: u64,
        #[arg(long, default_value_t = 5)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PARSE: u8 = 3;
    pub const INFEASIBLE: u8 = 4;
    pub const SIZE_GUARD: u8 = 5;
    pub const VERIFY: u8 = 6;
    pub const IO: u8 = 7;
    pub const INVALID: u8 = 8;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        CliError { code, kind, message: message.into() }
    }

    fn verify(message: impl Into<String>) -> Self {
        CliError::new(exit::VERIFY, "verify", message)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => format!("error ({}): {}", self.kind, self.message),
            Format::Records => {
                json!({ "error": self.kind, "exit_code": self.code, "message": self.message }).to_string()
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::Parse { .. } => (exit::PARSE, "parse"),
            Error::Infeasible(_) => (exit::INFEASIBLE, "infeasible"),
            Error::SizeGuard { .. } => (exit::SIZE_GUARD, "size-guard"),
            Error::InvalidInstance(_) | Error::InvalidCut(_) | Error::MalformedInput(_) | Error::Generation(_) => {
                (exit::INVALID, "invalid")
            }
        };
        CliError::new(code, kind, e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::new(exit::IO, "io", format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn load(path: &Path) -> Result<InstanceFile, CliError> {
    Ok(InstanceFile::parse(&read(path)?)?)
}

fn flow_instance(file: InstanceFile) -> Result<NfiInstance, CliError> {
    match file {
        InstanceFile::Nfi(i) | InstanceFile::Bmstc(i) => Ok(i),
        InstanceFile::Dks(_) => Err(CliError::new(exit::INVALID, "invalid", "expected an nfi or bmstc instance")),
    }
}

fn dks_instance(file: InstanceFile) -> Result<DksInstance, CliError> {
    match file {
        InstanceFile::Dks(d) => Ok(d),
        _ => Err(CliError::new(exit::INVALID, "invalid", "expected a dks instance")),
    }
}

/// Hex SHA-256 of the canonical serialization.
pub fn digest(file: &InstanceFile) -> String {
    hex::encode(Sha256::digest(file.serialize().as_bytes()))
}

fn ext_json(x: ExtNat) -> Value {
    match x {
        Fin(v) => json!(v),
        ExtNat::Inf => json!("inf"),
    }
}

/// One solve, serialized with a fixed field order.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub digest: String,
    pub solver: String,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub removed: Vec<usize>,
    pub cost: Value,
    pub residual: Value,
    pub budget_feasible: bool,
    pub wall_time_ms: f64,
    pub optimal: Option<bool>,
}

impl SolveReport {
    fn new(file: &InstanceFile, solver: &str, k: Option<usize>, sol: &InterdictionSolution, start: Instant) -> Self {
        SolveReport {
            digest: digest(file),
            solver: solver.into(),
            k,
            seed: None,
            removed: sol.removed.clone(),
            cost: ext_json(sol.cost),
            residual: ext_json(sol.residual),
            budget_feasible: sol.budget_feasible,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            optimal: None,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Records => serde_json::to_string(self).expect("report serializes"),
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "solver:   {}", self.solver).unwrap();
                if let Some(k) = self.k {
                    writeln!(s, "k:        {k}").unwrap();
                }
                writeln!(s, "digest:   {}", self.digest).unwrap();
                let removed: Vec<String> = self.removed.iter().map(|r| r.to_string()).collect();
                writeln!(s, "removed:  {}", removed.join(" ")).unwrap();
                writeln!(s, "cost:     {}", plain(&self.cost)).unwrap();
                writeln!(s, "residual: {}", plain(&self.residual)).unwrap();
                writeln!(s, "feasible: {}", self.budget_feasible).unwrap();
                if let Some(o) = self.optimal {
                    writeln!(s, "optimal:  {o}").unwrap();
                }
                write!(s, "time:     {:.3} ms", self.wall_time_ms).unwrap();
                s
            }
        }
    }
}

fn plain(v: &Value) -> String {
    v.as_str().map_or_else(|| v.to_string(), str::to_string)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::new(exit::IO, "io", e.to_string()))
}

/// Exact optimum by whichever oracles fit their size guards; when both fit
/// their objectives must agree.
fn exact_solve(inst: &NfiInstance) -> Result<(InterdictionSolution, &'static str), CliError> {
    let cut = nfi_exact_cutwise(inst);
    let sub = nfi_exact_subsets(inst);
    match (cut, sub) {
        (Ok(a), Ok(b)) => {
            if a.residual != b.residual {
                return Err(CliError::verify(format!(
                    "oracles disagree: cutwise residual {}, subset residual {}",
                    a.residual, b.residual
                )));
            }
            Ok((a, "exact-cutwise+subsets"))
        }
        (Ok(a), Err(Error::SizeGuard { .. })) => Ok((a, "exact-cutwise")),
        (Err(Error::SizeGuard { .. }), Ok(b)) => Ok((b, "exact-subsets")),
        (Err(e), _) | (_, Err(e)) => Err(e.into()),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Solve { instance, k } => {
            let file = load(instance)?;
            let inst = match &file {
                InstanceFile::Nfi(i) => i.clone(),
                _ => {
                    return Err(CliError::new(
                        exit::INVALID,
                        "invalid",
                        "solve takes nfi instances; use exact or reduce-bmstc for bmstc files",
                    ))
                }
            };
            let start = Instant::now();
            let sol = nfi_approx(&inst, *k)?;
            emit(out, &SolveReport::new(&file, "approx", Some(*k), &sol, start).render(format))
        }
        Command::Exact { instance, guard_override } => {
            if *guard_override {
                return Err(CliError::new(
                    exit::INVALID,
                    "invalid",
                    "--guard-override is refused: exact oracles keep their size guards",
                ));
            }
            let file = load(instance)?;
            let start = Instant::now();
            let (sol, name) = match &file {
                InstanceFile::Nfi(inst) => exact_solve(inst)?,
                InstanceFile::Bmstc(inst) => (cut_solution(inst, &exact_bmstc(inst)?), "bmstc-exact+via-nfi"),
                InstanceFile::Dks(_) => {
                    return Err(CliError::new(exit::INVALID, "invalid", "exact takes nfi or bmstc instances"))
                }
            };
            let mut report = SolveReport::new(&file, name, None, &sol, start);
            report.optimal = Some(true);
            emit(out, &report.render(format))
        }
        Command::ReduceBmstc { instance } => {
            let inst = match load(instance)? {
                InstanceFile::Bmstc(i) => i,
                _ => return Err(CliError::new(exit::INVALID, "invalid", "expected a bmstc instance")),
            };
            let text = InstanceFile::Nfi(bmstc_to_nfi(&inst)).serialize();
            write!(out, "{text}").map_err(|e| CliError::new(exit::IO, "io", e.to_string()))
        }
        Command::ReduceDks { instance, budget } => {
            let dks = dks_instance(load(instance)?)?;
            let text = InstanceFile::Nfi(dks_to_nfi(&dks).instance(*budget)).serialize();
            write!(out, "{text}").map_err(|e| CliError::new(exit::IO, "io", e.to_string()))
        }
        Command::Dks { instance, solver, k } => {
            let file = load(instance)?;
            let dks = dks_instance(file.clone())?;
            let start = Instant::now();
            let est = match solver {
                InnerSolver::Exact => {
                    let n = dks.graph().vertex_count();
                    if n > MAX_CUTWISE_VERTICES {
                        return Err(Error::SizeGuard {
                            what: "host vertex count",
                            actual: n as u128,
                            limit: MAX_CUTWISE_VERTICES as u128,
                        }
                        .into());
                    }
                    let aux = AuxiliaryGraph::new(dks.graph())?;
                    dks_approx_pipeline(&dks, &|i: &NfiInstance| aux.solve_exact(i.budget()))?
                }
                InnerSolver::Approx => dks_approx_pipeline(&dks, &|i: &NfiInstance| nfi_approx(i, *k))?,
            };
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let estimate = if est.estimate.is_integer() {
                est.estimate.to_integer().to_string()
            } else {
                est.estimate.to_string()
            };
            let text = match format {
                Format::Records => json!({
                    "digest": digest(&file),
                    "solver": match solver { InnerSolver::Exact => "exact", InnerSolver::Approx => "approx" },
                    "k": dks.k(),
                    "estimate": estimate,
                    "best_level": est.best_level,
                    "witness": est.witness,
                    "witness_edges": est.witness_edges,
                    "wall_time_ms": ms,
                })
                .to_string(),
                Format::Text => {
                    let w: Vec<String> = est.witness.iter().map(|v| v.to_string()).collect();
                    format!(
                        "estimate: {estimate}\nwitness:  {}\nedges:    {}\ntime:     {ms:.3} ms",
                        w.join(" "),
                        est.witness_edges
                    )
                }
            };
            emit(out, &text)
        }
        Command::Ghtree { instance } => {
            let (g, u) = match load(instance)? {
                InstanceFile::Nfi(i) | InstanceFile::Bmstc(i) => (i.graph().clone(), i.capacity().to_vec()),
                InstanceFile::Dks(d) => (d.graph().clone(), vec![Fin(1); d.graph().id_bound()]),
            };
            let tree = gomory_hu(&g, &u)?;
            for &(a, b, kappa) in tree.tree_edges() {
                let line = match format {
                    Format::Records => json!({ "a": a, "b": b, "kappa": ext_json(kappa) }).to_string(),
                    Format::Text => format!("{a} {b} {kappa}"),
                };
                emit(out, &line)?;
            }
            Ok(())
        }
        Command::Verify { instance, report } => {
            let file = load(instance)?;
            let inst = flow_instance(file.clone())?;
            let bmstc = matches!(file, InstanceFile::Bmstc(_));
            let text = read(report)?;
            let mut checked = 0;
            for (idx, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                verify_record(&file, &inst, bmstc, line).map_err(|e| CliError::verify(format!("record {}: {e}", idx + 1)))?;
                checked += 1;
            }
            if checked == 0 {
                return Err(CliError::verify("report has no records"));
            }
            let msg = match format {
                Format::Records => json!({ "verified": checked }).to_string(),
                Format::Text => format!("verified {checked} record(s)"),
            };
            emit(out, &msg)
        }
        Command::Bench { seed, count, n, m, max_u, max_c, budget, k } => {
            let rows: Vec<Result<Value, CliError>> = (0..*count)
                .into_par_iter()
                .map(|i| {
                    let file = generate(&GenParams {
                        kind: GenKind::Nfi,
                        n: *n,
                        m: *m,
                        max_u: *max_u,
                        max_c: *max_c,
                        budget: BudgetRule::Absolute(*budget),
                        seed: seed.wrapping_add(i),
                    })?;
                    let inst = flow_instance(file.clone())?;
                    let approx = nfi_approx(&inst, *k)?;
                    let (exact, _) = exact_solve(&inst)?;
                    Ok(json!({
                        "index": i,
                        "seed": seed.wrapping_add(i),
                        "digest": digest(&file),
                        "approx_residual": ext_json(approx.residual),
                        "exact_residual": ext_json(exact.residual),
                        "bound": ((*k as u64 + 1) * (*n as u64 - 1)) as f64 / *k as f64,
                    }))
                })
                .collect();
            if format == Format::Text {
                emit(out, "index  seed  approx  exact  ratio")?;
            }
            for row in rows {
                let row = row?;
                let line = match format {
                    Format::Records => row.to_string(),
                    Format::Text => {
                        let (a, e) = (&row["approx_residual"], &row["exact_residual"]);
                        let ratio = match (a.as_u64(), e.as_u64()) {
                            (Some(_), Some(0)) => "-".to_string(),
                            (Some(a), Some(e)) => format!("{:.3}", a as f64 / e as f64),
                            _ => "-".to_string(),
                        };
                        format!("{:>5}  {:>4}  {:>6}  {:>5}  {ratio}", plain(&row["index"]), plain(&row["seed"]), plain(a), plain(e))
                    }
                };
                emit(out, &line)?;
            }
            Ok(())
        }
    }
}

/// BMstC exactly, once directly over cuts and once through the NFI reduction;
/// the two cut capacities must agree.
fn exact_bmstc(inst: &NfiInstance) -> Result<WeightedCut, CliError> {
    let direct = bmstc_exact(inst);
    let via = bmstc_via_nfi(inst, &nfi_exact_cutwise);
    match (direct, via) {
        (Ok(a), Ok(b)) if a.weight == b.weight => Ok(a),
        (Ok(a), Ok(b)) => Err(CliError::verify(format!(
            "oracles disagree: direct cut capacity {}, via NFI {}",
            a.weight, b.weight
        ))),
        (Err(Error::Infeasible(m)), Err(Error::Infeasible(_))) => Err(Error::Infeasible(m).into()),
        (Err(e), _) | (_, Err(e)) => Err(e.into()),
    }
}

/// A BMstC cut in report form: the cut edges, their cost, and their capacity
/// in the residual slot.
fn cut_solution(inst: &NfiInstance, cut: &WeightedCut) -> InterdictionSolution {
    let cost = inst.cost_of(&cut.edge_ids);
    InterdictionSolution {
        removed: cut.edge_ids.clone(),
        cost,
        residual: cut.weight,
        budget_feasible: cost <= Fin(inst.budget()),
    }
}

/// Re-evaluates a BMstC record: the edges must form an s-t cut.
fn evaluate_cut(inst: &NfiInstance, removed: &[usize]) -> Result<InterdictionSolution, String> {
    let sol = evaluate(inst, removed).map_err(|e| e.to_string())?;
    if sol.residual != Fin(0) {
        return Err("removed edges do not separate s from t".into());
    }
    Ok(InterdictionSolution { residual: inst.capacity_of(&sol.removed), ..sol })
}

/// Checks one JSON report record against a fresh evaluation.
fn verify_record(file: &InstanceFile, inst: &NfiInstance, bmstc: bool, line: &str) -> Result<(), String> {
    let rec: Value = serde_json::from_str(line).map_err(|e| format!("not a JSON record: {e}"))?;
    if rec["digest"] != json!(digest(file)) {
        return Err("digest does not match the instance".into());
    }
    let removed: Vec<usize> =
        serde_json::from_value(rec["removed"].clone()).map_err(|_| "removed is not a list of edge ids".to_string())?;
    let sol = if bmstc { evaluate_cut(inst, &removed)? } else { evaluate(inst, &removed).map_err(|e| e.to_string())? };
    if removed != sol.removed {
        return Err("removed ids are not sorted and distinct".into());
    }
    for (field, expected) in [
        ("cost", ext_json(sol.cost)),
        ("residual", ext_json(sol.residual)),
        ("budget_feasible", json!(sol.budget_feasible)),
    ] {
        if rec[field] != expected {
            return Err(format!("{field} is {}, re-evaluation gives {expected}", rec[field]));
        }
    }
    if rec["optimal"] == json!(true) {
        let best = if bmstc {
            exact_bmstc(inst).map_err(|e| e.message)?.weight
        } else {
            exact_solve(inst).map_err(|e| e.message)?.0.residual
        };
        if best != sol.residual {
            return Err(format!("claimed optimal, but the optimum is {best}"));
        }
    }
    Ok(())
}
