//! Ground truth: exact weighted set cover over the candidate segments, and
//! the classical greedy baseline.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::Add;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::geom::{candidate_segments, stabs, Instance, Segment, Solution};
use crate::scalar::Scalar;

/// Default rectangle cap for [`exact_opt`]; the table has `2^n` entries.
pub const DEFAULT_ORACLE_LIMIT: usize = 20;
const HARD_ORACLE_LIMIT: usize = 30;

/// A segment viewed as a set-cover column over rectangle positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub segment: Segment,
    pub stab_set: FixedBitSet,
    pub length: Scalar,
}

impl Candidate {
    pub fn new(inst: &Instance, segment: Segment) -> Self {
        let mut stab_set = FixedBitSet::with_capacity(inst.len());
        for (i, r) in inst.rects().iter().enumerate() {
            if stabs(&segment, r) {
                stab_set.insert(i);
            }
        }
        let length = segment.length();
        Candidate { segment, stab_set, length }
    }

    fn mask(&self) -> u64 {
        self.stab_set.ones().fold(0u64, |m, i| m | (1 << i))
    }
}

fn by_length_then_segment(a: &Candidate, b: &Candidate) -> Ordering {
    a.length.cmp(&b.length).then_with(|| a.segment.cmp(&b.segment))
}

/// Keeps one cheapest candidate per distinct non-empty stab set and drops
/// candidates whose stab set is covered by another at no greater length.
/// The optimal cover cost over the result equals that over `cands`.
/// Output is sorted by length, then segment.
pub fn reduce_candidates(inst: &Instance, cands: &[Segment]) -> Vec<Candidate> {
    let mut best: HashMap<FixedBitSet, Candidate> = HashMap::new();
    for s in cands {
        let c = Candidate::new(inst, s.clone());
        if c.stab_set.is_clear() {
            continue;
        }
        match best.get(&c.stab_set) {
            Some(prev) if by_length_then_segment(prev, &c) != Ordering::Greater => {}
            _ => {
                best.insert(c.stab_set.clone(), c);
            }
        }
    }
    let mut pool: Vec<Candidate> = best.into_values().collect();
    pool.sort_by(by_length_then_segment);

    // Stab sets are pairwise distinct here, so a dominator is a strict superset.
    let keep: Vec<bool> = pool
        .iter()
        .map(|c| {
            !pool.iter().any(|d| d.length <= c.length && d.stab_set != c.stab_set && c.stab_set.is_subset(&d.stab_set))
        })
        .collect();
    pool.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect()
}

/// Reduced candidates of `inst` itself.
pub fn reduced_candidates(inst: &Instance) -> Vec<Candidate> {
    reduce_candidates(inst, &candidate_segments(inst))
}

/// Exact optimum with the default size cap.
pub fn exact_opt(inst: &Instance) -> Result<Solution> {
    exact_opt_with_limit(inst, DEFAULT_ORACLE_LIMIT)
}

/// Exact optimum by dynamic programming over covered-rectangle subsets.
///
/// `dp[mask]` is the cheapest way to stab at least the rectangles in
/// `mask`; states are expanded in increasing order by branching on the
/// lowest unstabbed rectangle. Ties resolve to the first candidate in
/// [`reduce_candidates`] order, so the output is deterministic.
pub fn exact_opt_with_limit(inst: &Instance, limit: usize) -> Result<Solution> {
    let n = inst.len();
    if n > limit.min(HARD_ORACLE_LIMIT) {
        return Err(Error::OracleLimit { n, limit: limit.min(HARD_ORACLE_LIMIT) });
    }
    if n == 0 {
        return Ok(Solution::empty());
    }
    let cands = reduced_candidates(inst);
    let masks: Vec<u64> = cands.iter().map(Candidate::mask).collect();

    let chosen = match integer_lengths(&cands) {
        Some(lengths) => subset_dp(n, &masks, &lengths, 0u128),
        None => {
            let lengths: Vec<Scalar> = cands.iter().map(|c| c.length.clone()).collect();
            subset_dp(n, &masks, &lengths, Scalar::zero())
        }
    };
    Ok(chosen.into_iter().map(|i| cands[i].segment.clone()).collect())
}

/// Lengths scaled to a common integer denominator, when they fit in `u128`
/// with room for summing all of them.
fn integer_lengths(cands: &[Candidate]) -> Option<Vec<u128>> {
    let lcm = cands.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.length.denom()));
    let bound = u128::MAX / (cands.len() as u128 + 1);
    cands
        .iter()
        .map(|c| {
            let scaled = c.length.numer() * (&lcm / c.length.denom());
            scaled.to_u128().filter(|v| *v <= bound)
        })
        .collect()
}

fn subset_dp<C>(n: usize, masks: &[u64], lengths: &[C], zero: C) -> Vec<usize>
where
    C: Clone + Ord,
    for<'a> &'a C: Add<&'a C, Output = C>,
{
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let size = 1usize << n;
    let mut by_elem: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, &m) in masks.iter().enumerate() {
        for (e, list) in by_elem.iter_mut().enumerate() {
            if m & (1 << e) != 0 {
                list.push(ci);
            }
        }
    }

    let mut dp: Vec<Option<C>> = vec![None; size];
    let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX); size];
    dp[0] = Some(zero);
    for mask in 0..full {
        let Some(base) = dp[mask as usize].clone() else { continue };
        let lowest = (!mask).trailing_zeros() as usize;
        for &ci in &by_elem[lowest] {
            let next = (mask | masks[ci]) as usize;
            let cost = &base + &lengths[ci];
            let better = match &dp[next] {
                None => true,
                Some(cur) => cost < *cur,
            };
            if better {
                dp[next] = Some(cost);
                parent[next] = (mask as u32, ci as u32);
            }
        }
    }

    let mut picks = Vec::new();
    let mut at = full as usize;
    while at != 0 {
        let (prev, ci) = parent[at];
        picks.push(ci as usize);
        at = prev as usize;
    }
    picks.reverse();
    picks
}

/// Greedy set cover: repeatedly take the candidate stabbing the most new
/// rectangles per unit length. Ties go to the candidate stabbing more new
/// rectangles, then to the smaller segment.
pub fn greedy_cover(inst: &Instance) -> Solution {
    let cands = reduced_candidates(inst);
    let mut covered = FixedBitSet::with_capacity(inst.len());
    let mut out = Vec::new();
    while covered.count_ones(..) < inst.len() {
        let mut best: Option<(usize, usize)> = None;
        for (i, c) in cands.iter().enumerate() {
            let fresh = c.stab_set.difference(&covered).count();
            if fresh == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bf)) => {
                    let b = &cands[bi];
                    let lhs = Scalar::from_int(fresh as i64) * &b.length;
                    let rhs = Scalar::from_int(bf as i64) * &c.length;
                    lhs.cmp(&rhs).then(fresh.cmp(&bf)).then_with(|| b.segment.cmp(&c.segment)) == Ordering::Greater
                }
            };
            if better {
                best = Some((i, fresh));
            }
        }
        let (bi, _) = best.expect("every rectangle has a covering candidate");
        covered.union_with(&cands[bi].stab_set);
        out.push(cands[bi].segment.clone());
    }
    Solution::new(out)
}
