//! Quasi-polynomial approximation scheme for arbitrary widths.
//!
//! After normalizing so the widest rectangle has width 1, each level
//! decomposes its instance with parameter `mu`, then for every chunk
//! guesses the set of long segments (length at least half the current
//! width) of an optimal chunk solution. Guesses that leave a rectangle of
//! width at least half the current width unstabbed are discarded; the
//! rest recurse on the residual with the width halved.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::decompose::{decompose, APPROX_FACTOR};
use crate::error::{Error, Result};
use crate::geom::{Instance, Segment, Solution};
use crate::normalize::{denormalize, normalize};
use crate::oracle::{exact_opt_with_limit, greedy_cover, reduced_candidates, Candidate, DEFAULT_ORACLE_LIMIT};
use crate::scalar::Scalar;
use crate::schemes::{check_unit_open, Budget};

/// Explicit replacements for the derived parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QptasOverrides {
    pub mu: Option<Scalar>,
    pub klong: Option<usize>,
    pub oracle_limit: Option<usize>,
    pub node_budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeParams {
    pub eps: Scalar,
    pub mu: Scalar,
    /// Depth bound `ceil(log2(n / eps))`.
    pub h: u32,
    pub klong: usize,
    pub oracle_limit: usize,
    pub node_budget: Option<u64>,
}

impl SchemeParams {
    /// `mu = eps / (17 (H + 1))` and `Klong = ceil(2 (8 / mu^2 + 1 / mu))`
    /// unless overridden.
    pub fn for_qptas(n: usize, eps: &Scalar, o: &QptasOverrides) -> Result<Self> {
        check_unit_open("eps", eps)?;
        let ratio = Scalar::from_int(n.max(1) as i64) / eps;
        let h = ratio.ceil_log2().max(0) as u32;
        let mu = match &o.mu {
            Some(mu) => {
                check_unit_open("mu", mu)?;
                mu.clone()
            }
            None => eps / Scalar::from_int(17 * (h as i64 + 1)),
        };
        let klong = match o.klong {
            Some(k) => k,
            None => Self::klong_for(&mu),
        };
        Ok(SchemeParams {
            eps: eps.clone(),
            mu,
            h,
            klong,
            oracle_limit: o.oracle_limit.unwrap_or(DEFAULT_ORACLE_LIMIT),
            node_budget: o.node_budget,
        })
    }

    pub fn klong_for(mu: &Scalar) -> usize {
        let c = Scalar::from_int(APPROX_FACTOR);
        let k = Scalar::from_int(2) * (c / (mu * mu) + mu.recip());
        k.ceil_int().to_usize().expect("Klong fits in usize")
    }

    /// `1 + 17 (H + 1) mu`.
    pub fn level_ratio(&self) -> Scalar {
        Scalar::one() + Scalar::from_int(17 * (self.h as i64 + 1)) * &self.mu
    }
}

/// A set of long segments with the rectangles they stab.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guess {
    pub segments: Vec<Segment>,
    pub union: FixedBitSet,
    pub cost: Scalar,
}

/// Reduced candidates of at least a given length, enumerated as subsets
/// of bounded size.
pub struct LongCandidates {
    cands: Vec<Candidate>,
    k: usize,
    n: usize,
}

impl LongCandidates {
    pub fn new(inst: &Instance, min_len: &Scalar, k: usize) -> Self {
        let cands = reduced_candidates(inst).into_iter().filter(|c| c.length >= *min_len).collect();
        LongCandidates { cands, k, n: inst.len() }
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.cands
    }

    /// Depth-first walk over index-increasing subsets of size at most `k`,
    /// starting with the empty set. The visitor gets the picked indices,
    /// their stab-set union and cost, and whether the last pick stabbed
    /// anything new; it returns whether to extend the subset. The walk
    /// returns whether the size bound cut off a useful extension.
    pub fn walk<F>(&self, mut visit: F) -> Result<bool>
    where
        F: FnMut(&[usize], &FixedBitSet, &Scalar, bool) -> Result<bool>,
    {
        let mut picks = Vec::new();
        let mut truncated = false;
        let union = FixedBitSet::with_capacity(self.n);
        self.walk_from(0, &mut picks, &union, &Scalar::zero(), true, &mut visit, &mut truncated)?;
        Ok(truncated)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_from<F>(
        &self,
        start: usize,
        picks: &mut Vec<usize>,
        union: &FixedBitSet,
        cost: &Scalar,
        grew: bool,
        visit: &mut F,
        truncated: &mut bool,
    ) -> Result<()>
    where
        F: FnMut(&[usize], &FixedBitSet, &Scalar, bool) -> Result<bool>,
    {
        if !visit(picks, union, cost, grew)? {
            return Ok(());
        }
        if picks.len() == self.k {
            if self.cands[start..].iter().any(|c| !c.stab_set.is_subset(union)) {
                *truncated = true;
            }
            return Ok(());
        }
        for j in start..self.cands.len() {
            let c = &self.cands[j];
            let mut next = union.clone();
            next.union_with(&c.stab_set);
            let grew = next != *union;
            picks.push(j);
            let r = self.walk_from(j + 1, picks, &next, &(cost + &c.length), grew, visit, truncated);
            picks.pop();
            r?;
        }
        Ok(())
    }
}

/// All subsets of at most `k` reduced candidates with length at least
/// `min_len`, keeping the cheapest guess per stab-set union. Order is that
/// of first appearance in the walk, beginning with the empty guess.
pub fn guess_long(inst: &Instance, min_len: &Scalar, k: usize) -> Vec<Guess> {
    let long = LongCandidates::new(inst, min_len, k);
    let mut slot: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut out: Vec<Guess> = Vec::new();
    long.walk(|picks, union, cost, _| {
        match slot.get(union) {
            Some(&i) if out[i].cost <= *cost => {}
            Some(&i) => {
                out[i].segments = picks.iter().map(|&j| long.cands[j].segment.clone()).collect();
                out[i].cost = cost.clone();
            }
            None => {
                slot.insert(union.clone(), out.len());
                out.push(Guess {
                    segments: picks.iter().map(|&j| long.cands[j].segment.clone()).collect(),
                    union: union.clone(),
                    cost: cost.clone(),
                });
            }
        }
        Ok(true)
    })
    .expect("visitor never fails");
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QptasStats {
    /// Recursion levels entered, counting the top level as 1.
    pub max_depth: u32,
    pub nodes: u64,
    pub guesses: u64,
    pub max_guess_size: usize,
    /// Every explored guess segment had length at least half its level's width.
    pub guess_lengths_ok: bool,
    /// Some guess enumeration was cut short by `klong`.
    pub klong_binding: bool,
    pub oracle_calls: u64,
    /// Cost of the rectangles stabbed individually during normalization.
    pub presolved_cost: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct QptasReport {
    pub solution: Solution,
    pub params: SchemeParams,
    pub stats: QptasStats,
    /// Proven ratio bound for this run: `1 + 17 (H + 1) mu` plus the
    /// presolved cost relative to the widest rectangle. Absent when the
    /// guess size bound cut off part of the search.
    pub certified_ratio: Option<Scalar>,
}

pub fn qptas(inst: &Instance, eps: &Scalar, overrides: &QptasOverrides) -> Result<Solution> {
    qptas_with_stats(inst, eps, overrides).map(|r| r.solution)
}

pub fn qptas_with_stats(inst: &Instance, eps: &Scalar, overrides: &QptasOverrides) -> Result<QptasReport> {
    let params = SchemeParams::for_qptas(inst.len(), eps, overrides)?;
    let mut stats = QptasStats { guess_lengths_ok: true, ..QptasStats::default() };
    if inst.is_empty() {
        return Ok(QptasReport {
            solution: Solution::empty(),
            certified_ratio: Some(params.level_ratio()),
            params,
            stats,
        });
    }

    let norm = normalize(inst, eps)?;
    let presolved: Solution = norm.presolved.iter().cloned().collect();
    let budget = Budget::new(params.node_budget);
    let mut run = Run { params: &params, budget: &budget, stats: &mut stats };
    let result = run.recurse(&norm.instance, &Scalar::one(), 1);
    stats.nodes = budget.used();
    let width_scale = inst.max_width();
    stats.presolved_cost = presolved.cost() * width_scale;

    match result {
        Ok(sol) => {
            let solution = denormalize(&sol, &norm.transform)?;
            let certified_ratio =
                (!stats.klong_binding).then(|| params.level_ratio() + &stats.presolved_cost / width_scale);
            Ok(QptasReport { solution, params, stats, certified_ratio })
        }
        Err(Error::Budget { budget, best }) => {
            let best = match best {
                Some(b) => Some(Box::new(denormalize(&b, &norm.transform)?)),
                None => None,
            };
            Err(Error::Budget { budget, best })
        }
        Err(e) => Err(e),
    }
}

struct Run<'a> {
    params: &'a SchemeParams,
    budget: &'a Budget,
    stats: &'a mut QptasStats,
}

impl Run<'_> {
    /// Solves `inst`, all of whose rectangles are narrower than `w`, or
    /// at most `w` at the top level.
    fn recurse(&mut self, inst: &Instance, w: &Scalar, depth: u32) -> Result<Solution> {
        if inst.is_empty() {
            return Ok(Solution::empty());
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let d = decompose(inst, &self.params.mu)?;
        let mut out = Solution::new(d.paid_segments);
        let mut exhausted: Option<u64> = None;
        for chunk in &d.sub_instances {
            if exhausted.is_some() {
                out.extend(greedy_cover(chunk));
                continue;
            }
            match self.solve_chunk(chunk, w, depth) {
                Ok(sol) => out.extend(sol),
                Err(Error::Budget { budget, best }) => {
                    exhausted = Some(budget);
                    out.extend(best.map(|b| *b).unwrap_or_else(|| greedy_cover(chunk)));
                }
                Err(e) => return Err(e),
            }
        }
        match exhausted {
            Some(budget) => Err(Error::Budget { budget, best: Some(Box::new(out)) }),
            None => Ok(out),
        }
    }

    fn solve_chunk(&mut self, chunk: &Instance, w: &Scalar, depth: u32) -> Result<Solution> {
        if chunk.len() <= self.params.oracle_limit {
            self.budget.tick()?;
            self.stats.oracle_calls += 1;
            match exact_opt_with_limit(chunk, self.params.oracle_limit) {
                Err(Error::OracleLimit { .. }) => {}
                other => return other,
            }
        }

        let half = w / Scalar::from_int(2);
        let long = LongCandidates::new(chunk, &half, self.params.klong);
        let mut seen: HashMap<FixedBitSet, Scalar> = HashMap::new();
        let mut residuals: HashMap<FixedBitSet, Solution> = HashMap::new();
        let mut best: Option<Solution> = None;

        let walked = long.walk(|picks, union, cost, grew| {
            self.budget.tick()?;
            self.stats.guesses += 1;
            self.stats.max_guess_size = self.stats.max_guess_size.max(picks.len());
            if picks.len() > self.params.klong || picks.iter().any(|&j| long.cands[j].length < half) {
                self.stats.guess_lengths_ok = false;
            }
            if !grew {
                return Ok(false);
            }
            if best.as_ref().is_some_and(|b| cost >= b.cost()) {
                return Ok(false);
            }
            if seen.get(union).is_some_and(|c| c <= cost) {
                return Ok(true);
            }
            seen.insert(union.clone(), cost.clone());

            let residual = chunk.filter_mask(&(0..chunk.len()).map(|i| !union.contains(i)).collect::<Vec<_>>());
            if residual.rects().iter().any(|r| r.width() >= half) {
                return Ok(true);
            }
            let guess: Vec<Segment> = picks.iter().map(|&j| long.cands[j].segment.clone()).collect();
            let (rest, failure) = match residuals.get(union) {
                Some(sol) => (sol.clone(), None),
                None => match self.recurse(&residual, &half, depth + 1) {
                    Ok(sol) => {
                        residuals.insert(union.clone(), sol.clone());
                        (sol, None)
                    }
                    Err(Error::Budget { budget, best: Some(b) }) => (*b, Some(budget)),
                    Err(e) => return Err(e),
                },
            };
            if best.as_ref().is_none_or(|b| &(cost + rest.cost()) < b.cost()) {
                let mut sol = Solution::new(guess);
                sol.extend(rest);
                best = Some(sol);
            }
            match failure {
                Some(budget) => Err(Error::Budget { budget, best: None }),
                None => Ok(true),
            }
        });

        match walked {
            Ok(truncated) => {
                self.stats.klong_binding |= truncated;
                best.ok_or(Error::SegmentLimit { k: self.params.klong })
            }
            Err(Error::Budget { budget, .. }) => Err(Error::Budget { budget, best: best.map(Box::new) }),
            Err(e) => Err(e),
        }
    }
}
