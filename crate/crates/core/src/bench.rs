//! Benchmark suites: generate instances, run solvers, verify every answer
//! and compare against the oracle where it fits.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen::{generate, GenKind, UniformConfig};
use crate::geom::{verify, Instance};
use crate::laminar::is_laminar;
use crate::oracle::{exact_opt_with_limit, DEFAULT_ORACLE_LIMIT};
use crate::scalar::Scalar;
use crate::solver::{solve, within_bound, Algo, SolveParams};

/// One family of generated instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GenKind,
    pub n: Vec<usize>,
    /// Width ratio for [`GenKind::Bounded`].
    #[serde(default)]
    pub delta: Option<Scalar>,
    #[serde(default)]
    pub uniform: UniformConfig,
}

/// Suite file contents. Every field may be omitted; `{}` is the empty suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Suite {
    pub instances: Vec<GeneratorSpec>,
    pub seeds: Vec<u64>,
    /// Shorthand for seeds `1..=seed_count`, appended to `seeds`.
    pub seed_count: Option<u64>,
    pub algos: Vec<Algo>,
    /// Grid for ptas and qptas; defaults to `[1/2]`.
    pub eps: Vec<Scalar>,
    /// Grid for ptas; defaults to each instance's own width ratio.
    pub delta: Vec<Scalar>,
    pub oracle_limit: Option<usize>,
    pub mu: Option<Scalar>,
    pub klong: Option<usize>,
    pub node_budget: Option<u64>,
}

impl Suite {
    pub fn seeds(&self) -> Vec<u64> {
        let mut s = self.seeds.clone();
        s.extend(1..=self.seed_count.unwrap_or(0));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance_id: String,
    pub n: usize,
    pub seed: u64,
    pub algo: Algo,
    pub params: String,
    pub cost: Scalar,
    pub opt: Option<Scalar>,
    /// `cost / opt` rendered to 6 decimals.
    pub ratio: Option<String>,
    pub feasible: bool,
    pub millis: u128,
    #[serde(skip)]
    pub exact_ratio: Option<Scalar>,
    #[serde(skip)]
    pub within_bound: bool,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Rows whose ratio exceeds the algorithm's guarantee.
    pub fn violations(&self) -> Vec<&BenchRow> {
        self.rows.iter().filter(|r| !r.within_bound).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["instance_id", "n", "seed", "algo", "params", "cost", "opt", "ratio", "feasible", "millis"])?;
        for r in &self.rows {
            w.write_record([
                r.instance_id.clone(),
                r.n.to_string(),
                r.seed.to_string(),
                r.algo.to_string(),
                r.params.clone(),
                r.cost.to_string(),
                r.opt.as_ref().map(Scalar::to_string).unwrap_or_default(),
                r.ratio.clone().unwrap_or_default(),
                r.feasible.to_string(),
                r.millis.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Mean and max ratio per algorithm as a markdown table.
    pub fn summary_markdown(&self) -> String {
        let mut per: BTreeMap<Algo, (usize, Vec<Scalar>, usize)> = BTreeMap::new();
        for r in &self.rows {
            let e = per.entry(r.algo).or_default();
            e.0 += 1;
            e.1.extend(r.exact_ratio.clone());
            e.2 += usize::from(!r.within_bound);
        }
        let mut s = String::from("| algo | runs | with opt | mean ratio | max ratio | violations |\n");
        s += "|---|---|---|---|---|---|\n";
        for (algo, (runs, ratios, bad)) in per {
            let (mean, max) = if ratios.is_empty() {
                ("-".to_string(), "-".to_string())
            } else {
                let sum: Scalar = ratios.iter().sum();
                let mean = sum / Scalar::from_int(ratios.len() as i64);
                let max = ratios.iter().max().expect("non-empty");
                (mean.to_decimal(6), max.to_decimal(6))
            };
            s += &format!("| {algo} | {runs} | {} | {mean} | {max} | {bad} |\n", ratios.len());
        }
        s
    }
}

struct Job {
    id: String,
    seed: u64,
    instance: Instance,
}

fn param_grid(suite: &Suite, algo: Algo, base: &SolveParams) -> Vec<SolveParams> {
    let eps = if suite.eps.is_empty() { vec![Scalar::ratio(1, 2)] } else { suite.eps.clone() };
    let delta: Vec<Option<Scalar>> =
        if suite.delta.is_empty() { vec![None] } else { suite.delta.iter().cloned().map(Some).collect() };
    match algo {
        Algo::Ptas => eps
            .iter()
            .flat_map(|e| delta.iter().map(move |d| SolveParams { eps: e.clone(), delta: d.clone(), ..base.clone() }))
            .collect(),
        Algo::Qptas => eps.iter().map(|e| SolveParams { eps: e.clone(), ..base.clone() }).collect(),
        _ => vec![base.clone()],
    }
}

/// Runs the whole suite. Instances are processed in parallel; rows come
/// out in generation order. `laminar-dp` is skipped on non-laminar
/// instances. Any infeasible solver output aborts the run.
pub fn run_bench(suite: &Suite) -> Result<BenchReport> {
    let oracle_limit = suite.oracle_limit.unwrap_or(DEFAULT_ORACLE_LIMIT.min(12));
    let base = SolveParams {
        mu: suite.mu.clone(),
        klong: suite.klong,
        oracle_limit,
        node_budget: suite.node_budget,
        ..SolveParams::default()
    };

    let mut jobs = Vec::new();
    for g in &suite.instances {
        for &n in &g.n {
            for seed in suite.seeds() {
                let instance = generate(g.kind, n, seed, g.delta.as_ref(), &g.uniform)?;
                let kind = serde_json::to_value(g.kind)?;
                let id = format!("{}-n{n}-s{seed}", kind.as_str().unwrap_or("instance"));
                jobs.push(Job { id, seed, instance });
            }
        }
    }

    let per_job: Vec<Result<Vec<BenchRow>>> = jobs
        .par_iter()
        .map(|job| {
            let inst = &job.instance;
            let opt = if inst.len() <= oracle_limit {
                Some(exact_opt_with_limit(inst, oracle_limit)?.cost().clone())
            } else {
                None
            };
            let mut rows = Vec::new();
            for &algo in &suite.algos {
                if algo == Algo::LaminarDp && !is_laminar(inst) {
                    continue;
                }
                for p in param_grid(suite, algo, &base) {
                    let start = Instant::now();
                    let sol = solve(inst, algo, &p)?;
                    let millis = start.elapsed().as_millis();
                    let report = verify(inst, &sol);
                    if !report.feasible {
                        return Err(Error::Corruption(format!(
                            "{algo} left rectangles {:?} of {} unstabbed",
                            report.unstabbed_ids, job.id
                        )));
                    }
                    let exact_ratio = opt.as_ref().map(|o| if o.is_zero() { Scalar::one() } else { sol.cost() / o });
                    let ok = opt.as_ref().is_none_or(|o| within_bound(algo, inst.len(), &p, sol.cost(), o));
                    rows.push(BenchRow {
                        instance_id: job.id.clone(),
                        n: inst.len(),
                        seed: job.seed,
                        algo,
                        params: p.describe(algo, inst),
                        cost: sol.cost().clone(),
                        opt: opt.clone(),
                        ratio: exact_ratio.as_ref().map(|r| r.to_decimal(6)),
                        feasible: true,
                        millis,
                        exact_ratio,
                        within_bound: ok,
                    });
                }
            }
            Ok(rows)
        })
        .collect();

    let mut rows = Vec::new();
    for r in per_job {
        rows.extend(r?);
    }
    Ok(BenchReport { rows })
}
