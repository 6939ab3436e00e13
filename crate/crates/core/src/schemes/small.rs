//! Exact search restricted to solutions with few segments.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::geom::{Instance, Solution};
use crate::oracle::{exact_opt_with_limit, greedy_cover, reduced_candidates, Candidate};
use crate::scalar::Scalar;
use crate::schemes::Budget;

/// Cheapest solution using at most `k` segments.
///
/// Instances up to `oracle_limit` rectangles go to the subset oracle; its
/// answer is used when it has at most `k` segments. Otherwise, and for
/// larger instances, [`branch_and_bound`] searches the `k`-segment space.
pub fn solve_small(inst: &Instance, k: usize, oracle_limit: usize, budget: &Budget) -> Result<Solution> {
    if k == 0 {
        return Err(Error::Parameter("segment bound K must be at least 1".into()));
    }
    if inst.is_empty() {
        return Ok(Solution::empty());
    }
    if inst.len() <= oracle_limit {
        budget.tick()?;
        match exact_opt_with_limit(inst, oracle_limit) {
            Ok(sol) if sol.len() <= k => return Ok(sol),
            Ok(_) | Err(Error::OracleLimit { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    branch_and_bound(inst, k, budget)
}

/// Complete search over reduced candidates with at most `k` segments.
///
/// Branches on the unstabbed rectangle with the fewest covering
/// candidates, trying them cheapest first. A branch is cut when its cost
/// plus the cheapest way to stab any single remaining rectangle reaches
/// the incumbent. The greedy cover seeds the incumbent when it fits.
pub fn branch_and_bound(inst: &Instance, k: usize, budget: &Budget) -> Result<Solution> {
    if inst.is_empty() {
        return Ok(Solution::empty());
    }
    let cands = reduced_candidates(inst);
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); inst.len()];
    for (ci, c) in cands.iter().enumerate() {
        for i in c.stab_set.ones() {
            covers[i].push(ci);
        }
    }
    let cheapest = covers.iter().map(|l| cands[l[0]].length.clone()).collect();
    let greedy = greedy_cover(inst);
    let mut search = Search { cands: &cands, covers, cheapest, k, budget, best: (greedy.len() <= k).then_some(greedy) };
    let mut picks = Vec::with_capacity(k);
    let run = search.run(&FixedBitSet::with_capacity(inst.len()), &Scalar::zero(), &mut picks);
    match run {
        Ok(()) => search.best.ok_or(Error::SegmentLimit { k }),
        Err(Error::Budget { budget, .. }) => Err(Error::Budget { budget, best: search.best.map(Box::new) }),
        Err(e) => Err(e),
    }
}

struct Search<'a> {
    cands: &'a [Candidate],
    /// Per rectangle, covering candidates in increasing length.
    covers: Vec<Vec<usize>>,
    cheapest: Vec<Scalar>,
    k: usize,
    budget: &'a Budget,
    best: Option<Solution>,
}

impl Search<'_> {
    fn run(&mut self, covered: &FixedBitSet, cost: &Scalar, picks: &mut Vec<usize>) -> Result<()> {
        self.budget.tick()?;
        let mut pivot: Option<usize> = None;
        let mut bound = Scalar::zero();
        for i in (0..self.covers.len()).filter(|&i| !covered.contains(i)) {
            if pivot.is_none_or(|p| self.covers[i].len() < self.covers[p].len()) {
                pivot = Some(i);
            }
            if self.cheapest[i] > bound {
                bound = self.cheapest[i].clone();
            }
        }
        let Some(p) = pivot else {
            if self.best.as_ref().is_none_or(|b| cost < b.cost()) {
                self.best = Some(picks.iter().map(|&ci| self.cands[ci].segment.clone()).collect());
            }
            return Ok(());
        };
        if picks.len() == self.k {
            return Ok(());
        }
        if self.best.as_ref().is_some_and(|b| &(cost + &bound) >= b.cost()) {
            return Ok(());
        }
        for j in 0..self.covers[p].len() {
            let ci = self.covers[p][j];
            let next_cost = cost + &self.cands[ci].length;
            if self.best.as_ref().is_some_and(|b| &next_cost >= b.cost()) {
                break;
            }
            let mut next = covered.clone();
            next.union_with(&self.cands[ci].stab_set);
            picks.push(ci);
            let r = self.run(&next, &next_cost, picks);
            picks.pop();
            r?;
        }
        Ok(())
    }
}
