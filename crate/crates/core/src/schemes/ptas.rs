//! PTAS for instances whose narrowest rectangle is at least `delta` times
//! the widest.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::decompose::{decompose, APPROX_FACTOR};
use crate::error::{Error, Result};
use crate::geom::{Instance, Solution};
use crate::oracle::greedy_cover;
use crate::scalar::Scalar;
use crate::schemes::{check_unit_open, small::solve_small, Budget, SearchLimits};

/// `K = ceil((8 / eps^2 + 1 / eps) / delta)`: every chunk left by the
/// decomposition has an optimum using at most this many segments.
pub fn ptas_segment_bound(eps: &Scalar, delta: &Scalar) -> usize {
    let c = Scalar::from_int(APPROX_FACTOR);
    let k = (c / (eps * eps) + eps.recip()) / delta;
    k.ceil_int().to_usize().expect("segment bound fits in usize")
}

#[derive(Clone, Debug, Serialize)]
pub struct PtasReport {
    pub solution: Solution,
    pub k: usize,
    pub paid_cost: Scalar,
    pub chunk_costs: Vec<Scalar>,
    pub nodes: u64,
}

pub fn ptas(inst: &Instance, eps: &Scalar, delta: &Scalar) -> Result<Solution> {
    ptas_with(inst, eps, delta, &SearchLimits::default()).map(|r| r.solution)
}

/// Decomposes with `eps` and solves each chunk exactly within `K`
/// segments. Cost is at most `(1 + 17 eps)` times optimal.
pub fn ptas_with(inst: &Instance, eps: &Scalar, delta: &Scalar, limits: &SearchLimits) -> Result<PtasReport> {
    check_unit_open("eps", eps)?;
    if !delta.is_positive() || *delta > Scalar::one() {
        return Err(Error::Parameter(format!("delta must lie in (0, 1], got {delta}")));
    }
    let k = ptas_segment_bound(eps, delta);
    if inst.is_empty() {
        return Ok(PtasReport {
            solution: Solution::empty(),
            k,
            paid_cost: Scalar::zero(),
            chunk_costs: Vec::new(),
            nodes: 0,
        });
    }
    let min = inst.min_width().expect("non-empty");
    if min < delta * inst.max_width() {
        return Err(Error::Parameter(format!(
            "width ratio violated: narrowest {min} is below delta * widest = {}",
            delta * inst.max_width()
        )));
    }

    let d = decompose(inst, eps)?;
    let budget = Budget::new(limits.node_budget);
    let results: Vec<Result<Solution>> =
        d.sub_instances.par_iter().map(|chunk| solve_small(chunk, k, limits.oracle_limit, &budget)).collect();

    let mut solution = Solution::new(d.paid_segments.clone());
    let mut chunk_costs = Vec::with_capacity(results.len());
    let mut exhausted = None;
    for (chunk, r) in d.sub_instances.iter().zip(results) {
        let part = match r {
            Ok(sol) => sol,
            Err(Error::Budget { budget, best }) => {
                exhausted = Some(budget);
                best.map(|b| *b).unwrap_or_else(|| greedy_cover(chunk))
            }
            Err(e) => return Err(e),
        };
        chunk_costs.push(part.cost().clone());
        solution.extend(part);
    }
    if let Some(budget) = exhausted {
        return Err(Error::Budget { budget, best: Some(Box::new(solution)) });
    }
    Ok(PtasReport { solution, k, paid_cost: d.paid_cost, chunk_costs, nodes: budget.used() })
}
