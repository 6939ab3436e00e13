#![allow(dead_code)]

use proptest::prelude::*;
use stabkit::{Instance, Scalar};

/// Optimum computed without candidate segments: a group of rectangles can
/// share one segment iff their y-ranges have a common point, and then the
/// cheapest such segment spans from the leftmost xl to the rightmost xr.
/// The optimum is the cheapest partition into such groups.
pub fn brute_opt(inst: &Instance) -> Scalar {
    let rects = inst.rects();
    let n = rects.len();
    assert!(n <= 12, "brute force is exponential");
    let full = (1usize << n) - 1;
    let group_cost: Vec<Option<Scalar>> = (0..=full)
        .map(|m| {
            if m == 0 {
                return Some(Scalar::zero());
            }
            let members: Vec<_> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| &rects[i]).collect();
            let lo_y = members.iter().map(|r| &r.yb).max().unwrap();
            let hi_y = members.iter().map(|r| &r.yt).min().unwrap();
            if lo_y > hi_y {
                return None;
            }
            let lo = members.iter().map(|r| &r.xl).min().unwrap();
            let hi = members.iter().map(|r| &r.xr).max().unwrap();
            Some(hi - lo)
        })
        .collect();
    let mut best: Vec<Option<Scalar>> = vec![None; full + 1];
    best[0] = Some(Scalar::zero());
    for m in 1..=full {
        let low = m & m.wrapping_neg();
        let rest = m ^ low;
        let mut sub = rest;
        let mut acc: Option<Scalar> = None;
        loop {
            let group = sub | low;
            if let (Some(g), Some(b)) = (&group_cost[group], &best[m ^ group]) {
                let c = g + b;
                if acc.as_ref().is_none_or(|a| c < *a) {
                    acc = Some(c);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[m] = acc;
    }
    best[full].clone().expect("singletons are always stabbable")
}

/// Integer rectangles `(xl, xr, yb, yt)` on a small grid.
pub fn int_rects(max_n: usize) -> impl Strategy<Value = Vec<(i64, i64, i64, i64)>> {
    prop::collection::vec((0i64..12, 1i64..7, 0i64..9, 0i64..9), 0..=max_n)
        .prop_map(|v| v.into_iter().map(|(x, w, a, b)| (x, x + w, a.min(b), a.max(b))).collect())
}

pub fn instance(max_n: usize) -> impl Strategy<Value = Instance> {
    int_rects(max_n).prop_map(|v| Instance::from_ints(&v))
}

pub fn nonempty_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    instance(max_n).prop_filter("non-empty", |i| !i.is_empty())
}
