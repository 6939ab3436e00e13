mod common;

use std::collections::{BTreeSet, HashSet};

use common::{brute_opt, instance, nonempty_instance};
use proptest::prelude::*;
use stabkit::approx8::{approx8, approx8_cost, round_rect, shrink, stretch_segment, to_laminar};
use stabkit::decompose::{crossed, decompose, offset_grid, strip_partition};
use stabkit::gen::{gen_bounded_ratio, gen_laminar};
use stabkit::laminar::{is_laminar, solve_laminar, LaminarDp};
use stabkit::normalize::{denormalize, normalize};
use stabkit::oracle::{exact_opt, greedy_cover, reduced_candidates};
use stabkit::schemes::{ptas, qptas_with_stats, solve_small, Budget, QptasOverrides};
use stabkit::{candidate_segments, split_independent, stabs, verify, Instance, Rect, Scalar, Segment, Solution};

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

/// Moves each segment onto the candidate grid: shrink to the span of what
/// it stabs and lift to the lowest top edge among those rectangles.
fn canonicalize(inst: &Instance, sol: &Solution) -> Solution {
    sol.segments()
        .iter()
        .filter_map(|seg| {
            let hit: Vec<&Rect> = inst.rects().iter().filter(|r| stabs(seg, r)).collect();
            let xl = hit.iter().map(|r| &r.xl).min()?.clone();
            let xr = hit.iter().map(|r| &r.xr).max()?.clone();
            let y = hit.iter().map(|r| &r.yt).min()?.clone();
            Some(Segment { xl, xr, y })
        })
        .collect()
}

/// Rounds both endpoints outward to multiples of `2^t`, where
/// `2^(t-1) < |s| <= 2^t`.
fn round_segment_outward(seg: &Segment) -> Segment {
    let p = Scalar::pow2(seg.length().ceil_log2());
    let xl = Scalar::from_bigint((&seg.xl / &p).floor_int()) * &p;
    let xr = Scalar::from_bigint((&seg.xr / &p).ceil_int()) * &p;
    Segment { xl, xr, y: seg.y.clone() }
}

fn rational_rect() -> impl Strategy<Value = Rect> {
    (-40i64..40, 1i64..40, 1i64..9, 0i64..5, 0i64..5).prop_map(|(x, w, den, a, b)| {
        Rect::new(1, Scalar::ratio(x, den), Scalar::ratio(x + w, den), s(a.min(b)), s(a.max(b))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stabbing_is_monotone(inst in nonempty_instance(6), dl in 0i64..4, dr in 0i64..4, pick in 0usize..6) {
        let r = &inst.rects()[pick % inst.len()];
        let seg = Segment::spanning(r);
        prop_assert!(stabs(&seg, r));
        let wider = Segment { xl: &seg.xl - s(dl), xr: &seg.xr + s(dr), y: seg.y.clone() };
        prop_assert!(stabs(&wider, r));
        let lower = Segment { y: r.yb.clone(), ..seg };
        prop_assert!(stabs(&lower, r));
    }

    #[test]
    fn feasible_solutions_move_onto_candidates(inst in nonempty_instance(7), ext in prop::collection::vec((0i64..3, 0i64..3), 7)) {
        // one padded segment per rectangle at its bottom edge
        let sol: Solution = inst
            .rects()
            .iter()
            .zip(ext.iter().cycle())
            .map(|(r, &(a, b))| Segment { xl: &r.xl - s(a), xr: &r.xr + s(b), y: r.yb.clone() })
            .collect();
        prop_assert!(verify(&inst, &sol).feasible);
        let canon = canonicalize(&inst, &sol);
        let cands: HashSet<Segment> = candidate_segments(&inst).into_iter().collect();
        prop_assert!(canon.segments().iter().all(|c| cands.contains(c)));
        prop_assert!(verify(&inst, &canon).feasible);
        prop_assert!(canon.cost() <= sol.cost());
    }

    #[test]
    fn candidate_count_is_at_most_cubic(inst in nonempty_instance(8)) {
        let c = candidate_segments(&inst);
        prop_assert!(c.len() <= inst.len().pow(3));
        prop_assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn normalize_preserves_stab_sets(inst in nonempty_instance(7), eps_den in 2i64..20) {
        let eps = Scalar::ratio(1, eps_den);
        let norm = normalize(&inst, &eps).unwrap();
        let t = &norm.transform;
        let presolved: HashSet<u64> = t.presolved.iter().map(|(id, _)| *id).collect();
        prop_assert_eq!(norm.instance.len() + presolved.len(), inst.len());
        prop_assert_eq!(norm.instance.max_width(), &Scalar::one());
        let ys: BTreeSet<&Scalar> = inst.rects().iter().flat_map(|r| [&r.yb, &r.yt]).collect();
        let rank = |y: &Scalar| s(ys.iter().position(|v| *v == y).unwrap() as i64);
        for seg in candidate_segments(&inst) {
            let image = Segment { xl: t.map_x(&seg.xl), xr: t.map_x(&seg.xr), y: rank(&seg.y) };
            let before: BTreeSet<u64> =
                inst.rects().iter().filter(|r| stabs(&seg, r) && !presolved.contains(&r.id)).map(|r| r.id).collect();
            let after: BTreeSet<u64> = norm.instance.rects().iter().filter(|r| stabs(&image, r)).map(|r| r.id).collect();
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn normalize_round_trip_is_feasible(inst in instance(8), eps_den in 2i64..6) {
        let norm = normalize(&inst, &Scalar::ratio(1, eps_den)).unwrap();
        let back = denormalize(&greedy_cover(&norm.instance), &norm.transform).unwrap();
        prop_assert!(verify(&inst, &back).feasible);
    }

    #[test]
    fn components_add_up(inst in instance(8)) {
        let parts = split_independent(&inst);
        let total: Scalar = parts.iter().map(|p| exact_opt(p).unwrap().cost().clone()).sum();
        let whole = exact_opt(&inst).unwrap();
        prop_assert_eq!(&total, whole.cost());
        let ids: usize = parts.iter().map(Instance::len).sum();
        prop_assert_eq!(ids, inst.len());
    }

    #[test]
    fn exact_matches_independent_brute_force(inst in instance(7)) {
        let sol = exact_opt(&inst).unwrap();
        prop_assert!(verify(&inst, &sol).feasible);
        prop_assert_eq!(sol.cost(), &brute_opt(&inst));
    }

    #[test]
    fn exact_is_deterministic(inst in instance(8)) {
        let a = serde_json::to_string(&exact_opt(&inst).unwrap()).unwrap();
        let b = serde_json::to_string(&exact_opt(&inst).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exact_is_a_lower_bound(inst in instance(8)) {
        let opt = exact_opt(&inst).unwrap();
        for other in [greedy_cover(&inst), approx8(&inst).unwrap()] {
            prop_assert!(opt.cost() <= other.cost());
        }
    }

    #[test]
    fn greedy_within_log_factor(inst in nonempty_instance(10)) {
        let g = greedy_cover(&inst);
        prop_assert!(verify(&inst, &g).feasible);
        let bound = (1.0 + (inst.len() as f64).ln()) * exact_opt(&inst).unwrap().cost().to_f64();
        prop_assert!(g.cost().to_f64() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn laminar_dp_matches_oracle(n in 0usize..10, seed in any::<u64>()) {
        let inst = gen_laminar(n, seed);
        prop_assert!(is_laminar(&inst));
        let sol = solve_laminar(&inst).unwrap();
        prop_assert!(verify(&inst, &sol).feasible);
        let opt = exact_opt(&inst).unwrap();
        prop_assert_eq!(sol.cost(), opt.cost());
    }

    #[test]
    fn laminar_dp_without_memo_agrees(n in 0usize..6, seed in any::<u64>()) {
        let inst = gen_laminar(n, seed);
        let a = LaminarDp::new(&inst).unwrap().solve().unwrap();
        let b = LaminarDp::new(&inst).unwrap().with_memo(false).solve().unwrap();
        prop_assert_eq!(a.cost(), b.cost());
    }

    #[test]
    fn rounding_invariants(r in rational_rect()) {
        let q = round_rect(&r);
        let w = r.width();
        let wq = q.width();
        prop_assert_eq!(Scalar::pow2(wq.ceil_log2()), wq.clone());
        prop_assert!(w <= wq && wq < &w * s(2));
        prop_assert!((&q.xl / &wq).is_integer());
        prop_assert!(q.xl <= r.xl && r.xl < q.xr);
        prop_assert!(r.xr <= &q.xl + &wq * s(2));
        prop_assert_eq!((q.yb, q.yt), (r.yb, r.yt));
    }

    #[test]
    fn stretching_transfers_feasibility(r in rational_rect(), dl in 0i64..5, dr in 0i64..5, den in 1i64..5, yy in 0i64..5) {
        let q = round_rect(&r);
        let y = s(yy).max(q.yb.clone()).min(q.yt.clone());
        let seg = Segment { xl: &q.xl - Scalar::ratio(dl, den), xr: &q.xr + Scalar::ratio(dr, den), y };
        prop_assert!(stabs(&seg, &q));
        prop_assert!(stabs(&stretch_segment(&seg), &r));
    }

    #[test]
    fn rounded_families_are_laminar(inst in instance(10)) {
        let (lam, _) = to_laminar(&inst);
        prop_assert!(is_laminar(&lam));
        prop_assert_eq!(lam.ids(), inst.ids());
    }

    #[test]
    fn rounding_costs_at_most_four(inst in nonempty_instance(8)) {
        let opt = exact_opt(&inst).unwrap();
        let (lam, _) = to_laminar(&inst);
        let rounded: Solution = opt.segments().iter().map(round_segment_outward).collect();
        prop_assert!(verify(&lam, &rounded).feasible);
        prop_assert!(rounded.cost() <= &(opt.cost() * s(4)));
        prop_assert!(solve_laminar(&lam).unwrap().cost() <= rounded.cost());
    }

    #[test]
    fn approx8_within_factor_eight(inst in instance(9)) {
        let sol = approx8(&inst).unwrap();
        prop_assert!(verify(&inst, &sol).feasible);
        prop_assert!(sol.cost() <= &(exact_opt(&inst).unwrap().cost() * s(8)));
        let small = shrink(&inst, &sol);
        prop_assert!(verify(&inst, &small).feasible);
        prop_assert!(small.cost() <= sol.cost());
    }

    #[test]
    fn solve_small_matches_oracle(inst in instance(7), k in 1usize..8) {
        let opt = exact_opt(&inst).unwrap();
        if opt.len() <= k {
            let a = solve_small(&inst, k, 20, &Budget::unlimited()).unwrap();
            prop_assert_eq!(a.cost(), opt.cost());
            let b = solve_small(&inst, k, 0, &Budget::unlimited()).unwrap();
            prop_assert_eq!(b.cost(), opt.cost());
            prop_assert!(b.len() <= k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn chosen_offset_is_the_exhaustive_minimum(inst in nonempty_instance(6), eps_den in 2i64..4) {
        let eps = Scalar::ratio(1, eps_den);
        let sp = strip_partition(&inst, &eps).unwrap();
        let (step, count) = offset_grid(&inst, &eps);
        let org = inst.rects().iter().map(|r| &r.xl).min().unwrap().clone();
        let mut best: Option<(Scalar, u64)> = None;
        for k in 0..count {
            let z = s(k as i64) * &step;
            let e = inst.filter(|r| crossed(r, &org, &z, &sp.spacing));
            let c = approx8_cost(&e);
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, k));
            }
        }
        let (cost, k) = best.unwrap();
        prop_assert_eq!(&sp.paid_cost, &cost);
        prop_assert_eq!(&sp.offset, &(s(k as i64) * &step));
        prop_assert_eq!(sp.offsets, count);
    }

    #[test]
    fn crossing_matches_line_enumeration(inst in nonempty_instance(6), k in 0i64..50) {
        let eps = half();
        let (step, count) = offset_grid(&inst, &eps);
        let spacing = inst.max_width() / &eps;
        let z = s(k % count as i64) * &step;
        let org = inst.rects().iter().map(|r| &r.xl).min().unwrap().clone();
        for r in inst.rects() {
            let mut hit = false;
            for i in -2i64..40 {
                let line = &org + &z + s(i) * &spacing;
                if r.xl < line && line < r.xr {
                    hit = true;
                }
            }
            prop_assert_eq!(crossed(r, &org, &z, &spacing), hit);
        }
    }

    #[test]
    fn decomposition_is_a_sound_partition(inst in instance(9), eps_den in 2i64..5) {
        let eps = Scalar::ratio(1, eps_den);
        let d = decompose(&inst, &eps).unwrap();
        let mut seen: HashSet<u64> = HashSet::new();
        for sub in &d.sub_instances {
            for r in sub.rects() {
                prop_assert!(seen.insert(r.id), "rect {} in two sub-instances", r.id);
            }
            if let Some(bb) = sub.bounding_box() {
                prop_assert!(bb.width() <= inst.max_width() / &eps);
            }
        }
        for r in inst.rects() {
            let paid = d.paid_segments.iter().any(|s| stabs(s, r));
            prop_assert!(paid || seen.contains(&r.id));
        }
        let paid: Scalar = d.paid_segments.iter().map(Segment::length).sum();
        prop_assert_eq!(&paid, &d.paid_cost);
        for t in &d.trigger_costs {
            prop_assert!(t > &d.cut_threshold);
        }
        let opt = exact_opt(&inst).unwrap();
        let parts: Scalar = d.sub_instances.iter().map(|p| exact_opt(p).unwrap().cost().clone()).sum();
        prop_assert!(parts <= *opt.cost());
        prop_assert!(d.paid_cost <= opt.cost() * (s(17) * &eps));
    }

    #[test]
    fn ptas_and_qptas_stay_within_bounds(n in 1usize..7, seed in any::<u64>()) {
        let inst = gen_bounded_ratio(n, &half(), seed).unwrap();
        let opt = exact_opt(&inst).unwrap();
        let p = ptas(&inst, &half(), &half()).unwrap();
        prop_assert!(verify(&inst, &p).feasible);
        prop_assert!(p.cost() <= &(opt.cost() * (Scalar::one() + s(17) * half())));

        let o = QptasOverrides { oracle_limit: Some(3), klong: Some(4), node_budget: Some(200_000), ..Default::default() };
        let q = qptas_with_stats(&inst, &half(), &o).unwrap();
        prop_assert!(verify(&inst, &q.solution).feasible);
        prop_assert!(q.stats.guess_lengths_ok);
        prop_assert!(q.stats.max_guess_size <= 4);
        let h = (Scalar::from_int(n as i64) / half()).ceil_log2() as u32;
        prop_assert!(q.stats.max_depth <= h + 1);
        if let Some(ratio) = q.certified_ratio {
            prop_assert!(q.solution.cost() <= &(opt.cost() * ratio));
        }
    }
}

#[test]
fn reduced_candidates_keep_the_optimum() {
    // Oracle over the unreduced list, as a plain set-cover DP.
    for seed in 0..40u64 {
        let inst = stabkit::gen::gen_uniform(6, seed, &Default::default()).unwrap();
        let all = candidate_segments(&inst);
        let n = inst.len();
        let masks: Vec<(usize, Scalar)> = all
            .iter()
            .map(|c| {
                let m = inst.rects().iter().enumerate().filter(|(_, r)| stabs(c, r)).fold(0, |m, (i, _)| m | 1 << i);
                (m, c.length())
            })
            .collect();
        let full = (1usize << n) - 1;
        let mut dp: Vec<Option<Scalar>> = vec![None; full + 1];
        dp[0] = Some(Scalar::zero());
        for m in 0..=full {
            let Some(base) = dp[m].clone() else { continue };
            for (cm, len) in &masks {
                let next = m | cm;
                let c = &base + len;
                if dp[next].as_ref().is_none_or(|d| c < *d) {
                    dp[next] = Some(c);
                }
            }
        }
        assert_eq!(dp[full].as_ref().unwrap(), exact_opt(&inst).unwrap().cost(), "seed {seed}");
        assert!(reduced_candidates(&inst).len() <= all.len());
    }
}
