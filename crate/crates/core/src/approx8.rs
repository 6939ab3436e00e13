//! Constant-factor approximation through a laminar rounding.
//!
//! Each rectangle is widened to the next power of two and slid left onto
//! a multiple of its new width. Aligned power-of-two intervals are
//! laminar, so the rounded instance is solved exactly; doubling every
//! segment of that solution to the right stabs the original rectangles.
//! The rounding costs at most a factor 4 and the doubling a factor 2.

use std::collections::HashMap;

use crate::error::Result;
use crate::geom::{stabs, Instance, Rect, RectId, Segment, Solution};
use crate::laminar::solve_laminar;
use crate::scalar::Scalar;

/// Rounds the width up to `2^t` with `2^(t-1) < w <= 2^t` and moves the
/// left edge down to the nearest multiple of `2^t`. The result contains
/// `r`'s left edge and satisfies `r.xr <= xl' + 2 * 2^t`.
pub fn round_rect(r: &Rect) -> Rect {
    let w = Scalar::pow2(r.width().ceil_log2());
    let k = (&r.xl / &w).floor_int();
    let xl = Scalar::from_bigint(k) * &w;
    let xr = &xl + &w;
    Rect { id: r.id, xl, xr, yb: r.yb.clone(), yt: r.yt.clone() }
}

/// Rounds every rectangle, keeping ids. The map sends each id to the
/// original rectangle it came from.
pub fn to_laminar(inst: &Instance) -> (Instance, HashMap<RectId, Rect>) {
    let rounded: Vec<Rect> = inst.rects().iter().map(round_rect).collect();
    let id_map = inst.rects().iter().map(|r| (r.id, r.clone())).collect();
    let out = Instance::new(rounded).expect("rounding preserves id uniqueness and positive width");
    (out, id_map)
}

/// `[a, b] x y` becomes `[a, 2b - a] x y`.
pub fn stretch_segment(s: &Segment) -> Segment {
    let xr = Scalar::from_int(2) * &s.xr - &s.xl;
    Segment { xl: s.xl.clone(), xr, y: s.y.clone() }
}

/// 8-approximation: exact optimum of the rounded instance, stretched.
pub fn approx8(inst: &Instance) -> Result<Solution> {
    let (rounded, _) = to_laminar(inst);
    let laminar = solve_laminar(&rounded)?;
    Ok(laminar.segments().iter().map(stretch_segment).collect())
}

/// Cost of [`approx8`], for callers that only need the number.
pub fn approx8_cost(inst: &Instance) -> Scalar {
    approx8(inst).expect("rounded instances are laminar").cost().clone()
}

/// Shrinks each segment to the span of the rectangles only it stabs and
/// drops segments left with nothing to do. Feasibility is preserved and
/// cost never increases.
pub fn shrink(inst: &Instance, sol: &Solution) -> Solution {
    let mut segs: Vec<Option<Segment>> = sol.segments().iter().cloned().map(Some).collect();
    for k in 0..segs.len() {
        let Some(s) = segs[k].clone() else { continue };
        let owned: Vec<&Rect> = inst
            .rects()
            .iter()
            .filter(|r| {
                stabs(&s, r) && !segs.iter().enumerate().any(|(j, o)| j != k && o.as_ref().is_some_and(|o| stabs(o, r)))
            })
            .collect();
        segs[k] = match (owned.iter().map(|r| &r.xl).min(), owned.iter().map(|r| &r.xr).max()) {
            (Some(lo), Some(hi)) => Some(Segment { xl: lo.clone(), xr: hi.clone(), y: s.y.clone() }),
            _ => None,
        };
    }
    segs.into_iter().flatten().collect()
}
