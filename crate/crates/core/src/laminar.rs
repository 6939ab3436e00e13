//! Exact solver for laminar instances.
//!
//! An instance is laminar when any two x-projections are nested or share
//! no interior point. For such instances the widest rectangle `W` inside a
//! box can always be stabbed by `[xl_W, xr_W] x y`, and after doing so the
//! remaining rectangles of the box fall into four independent boxes: left
//! of `W`, right of `W`, and below / above `y` within `W`'s x-range.
//! Memoizing over boxes on compressed coordinates gives an exact
//! polynomial algorithm.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{Instance, Rect, Segment, Solution};
use crate::scalar::Scalar;

/// Whether the x-projections form a laminar family. Intervals sharing only
/// an endpoint count as disjoint.
pub fn is_laminar(inst: &Instance) -> bool {
    let rects = inst.rects();
    rects.iter().enumerate().all(|(i, a)| {
        rects[i + 1..].iter().all(|b| {
            let disjoint = a.xr <= b.xl || b.xr <= a.xl;
            let nested = (a.xl <= b.xl && b.xr <= a.xr) || (b.xl <= a.xl && a.xr <= b.xr);
            disjoint || nested
        })
    })
}

/// Exact optimum of a laminar instance.
pub fn solve_laminar(inst: &Instance) -> Result<Solution> {
    LaminarDp::new(inst)?.solve()
}

/// Box `[xs[x0], xs[x1]] x [ys[y0], ys[y1]]` on compressed coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DpKey {
    pub x0: u32,
    pub x1: u32,
    pub y0: u32,
    pub y1: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Idx {
    xl: u32,
    xr: u32,
    yb: u32,
    yt: u32,
}

#[derive(Clone, Debug)]
struct Entry {
    cost: Scalar,
    /// Widest rectangle and chosen height level; `None` for an empty box.
    choice: Option<(usize, u32)>,
}

/// Memoized box recursion. Construct once per instance.
pub struct LaminarDp<'a> {
    rects: &'a [Rect],
    idx: Vec<Idx>,
    ys: Vec<Scalar>,
    /// Positions sorted by width descending, then id ascending.
    by_width: Vec<usize>,
    /// `is_top[l]`: some rectangle has its top edge on level `l`.
    is_top: Vec<bool>,
    memoize: bool,
    memo: HashMap<DpKey, Entry>,
    evaluated: u64,
}

impl<'a> LaminarDp<'a> {
    pub fn new(inst: &'a Instance) -> Result<Self> {
        if !is_laminar(inst) {
            return Err(Error::Precondition("instance is not laminar".into()));
        }
        let rects = inst.rects();
        let mut xs: Vec<&Scalar> = rects.iter().flat_map(|r| [&r.xl, &r.xr]).collect();
        xs.sort();
        xs.dedup();
        let mut ys: Vec<&Scalar> = rects.iter().flat_map(|r| [&r.yb, &r.yt]).collect();
        ys.sort();
        ys.dedup();
        let pos = |v: &[&Scalar], x: &Scalar| v.binary_search(&x).expect("coordinate present") as u32;
        let idx: Vec<Idx> = rects
            .iter()
            .map(|r| Idx { xl: pos(&xs, &r.xl), xr: pos(&xs, &r.xr), yb: pos(&ys, &r.yb), yt: pos(&ys, &r.yt) })
            .collect();
        let mut is_top = vec![false; ys.len()];
        for i in &idx {
            is_top[i.yt as usize] = true;
        }
        let widths: Vec<Scalar> = rects.iter().map(Rect::width).collect();
        let mut by_width: Vec<usize> = (0..rects.len()).collect();
        by_width.sort_by(|&a, &b| widths[b].cmp(&widths[a]).then(rects[a].id.cmp(&rects[b].id)));

        Ok(LaminarDp {
            rects,
            idx,
            ys: ys.into_iter().cloned().collect(),
            by_width,
            is_top,
            memoize: true,
            memo: HashMap::new(),
            evaluated: 0,
        })
    }

    /// Turns the memo table off. Only useful for cross-checking on tiny
    /// inputs; the running time becomes exponential.
    pub fn with_memo(mut self, on: bool) -> Self {
        self.memoize = on;
        self
    }

    /// Number of box evaluations performed so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluated
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn solve(&mut self) -> Result<Solution> {
        if self.rects.is_empty() {
            return Ok(Solution::empty());
        }
        let root = DpKey {
            x0: 0,
            x1: self.idx.iter().map(|i| i.xr).max().unwrap_or(0),
            y0: 0,
            y1: (self.ys.len() - 1) as u32,
        };
        let mut segments = Vec::new();
        self.reconstruct(root, &mut segments);
        Ok(Solution::new(segments))
    }

    fn inside(&self, i: usize, k: DpKey) -> bool {
        let r = self.idx[i];
        k.x0 <= r.xl && r.xr <= k.x1 && k.y0 <= r.yb && r.yt <= k.y1
    }

    fn widest_in(&self, k: DpKey) -> Option<usize> {
        self.by_width.iter().copied().find(|&i| self.inside(i, k))
    }

    /// Sub-boxes left of, right of, below and above the segment through `w`
    /// at level `y`. Below/above are absent when no level remains.
    fn children(&self, k: DpKey, w: usize, y: u32) -> [Option<DpKey>; 4] {
        let wi = self.idx[w];
        [
            Some(DpKey { x1: wi.xl, ..k }),
            Some(DpKey { x0: wi.xr, ..k }),
            (y > k.y0).then(|| DpKey { x0: wi.xl, x1: wi.xr, y0: k.y0, y1: y - 1 }),
            (y < k.y1).then(|| DpKey { x0: wi.xl, x1: wi.xr, y0: y + 1, y1: k.y1 }),
        ]
    }

    fn opt(&mut self, k: Option<DpKey>) -> Scalar {
        match k {
            None => Scalar::zero(),
            Some(k) => self.entry(k).cost,
        }
    }

    fn entry(&mut self, k: DpKey) -> Entry {
        if let Some(e) = self.memo.get(&k) {
            return e.clone();
        }
        self.evaluated += 1;
        let e = self.evaluate(k);
        if self.memoize {
            self.memo.insert(k, e.clone());
        }
        e
    }

    fn evaluate(&mut self, k: DpKey) -> Entry {
        let Some(w) = self.widest_in(k) else {
            return Entry { cost: Scalar::zero(), choice: None };
        };
        let wi = self.idx[w];
        let width = self.rects[w].width();
        let [left, right, _, _] = self.children(k, w, wi.yt);
        let sides = self.opt(left) + self.opt(right);

        let mut best: Option<(Scalar, u32)> = None;
        for y in wi.yb..=wi.yt {
            if !self.is_top[y as usize] {
                continue;
            }
            let [_, _, below, above] = self.children(k, w, y);
            let c = self.opt(below) + self.opt(above);
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, y));
            }
        }
        // W's own top edge is always a level, so `best` is set.
        let (inner, y) = best.expect("top edge of W is a candidate level");
        Entry { cost: width + sides + inner, choice: Some((w, y)) }
    }

    fn reconstruct(&mut self, k: DpKey, out: &mut Vec<Segment>) {
        let Some((w, y)) = self.entry(k).choice else { return };
        let r = &self.rects[w];
        out.push(Segment { xl: r.xl.clone(), xr: r.xr.clone(), y: self.ys[y as usize].clone() });
        for child in self.children(k, w, y).into_iter().flatten() {
            self.reconstruct(child, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::fixtures::i1;
    use crate::geom::verify;
    use crate::oracle::exact_opt;

    #[test]
    fn laminarity_examples() {
        assert!(is_laminar(&i1()));
        assert!(!is_laminar(&Instance::from_ints(&[(0, 4, 0, 1), (2, 6, 0, 1)])));
        assert!(is_laminar(&Instance::from_ints(&[(0, 4, 0, 1)])));
        assert!(is_laminar(&Instance::from_ints(&[(0, 2, 0, 1), (2, 4, 0, 1)])));
        assert!(is_laminar(&Instance::empty()));
    }

    #[test]
    fn solve_examples() {
        let sol = solve_laminar(&i1()).unwrap();
        assert_eq!(sol.cost(), &Scalar::from_int(6));
        assert!(verify(&i1(), &sol).feasible);

        let two = Instance::from_ints(&[(0, 4, 0, 1), (6, 8, 0, 1)]);
        assert_eq!(solve_laminar(&two).unwrap().cost(), &Scalar::from_int(6));

        let nested = Instance::from_ints(&[(0, 8, 0, 2), (2, 4, 0, 2)]);
        let sol = solve_laminar(&nested).unwrap();
        assert_eq!(sol.cost(), &Scalar::from_int(8));
        assert_eq!(sol.segments(), &[Segment::ints(0, 8, 2)]);
        assert_eq!(exact_opt(&nested).unwrap().cost(), sol.cost());
    }

    #[test]
    fn rejects_non_laminar() {
        let inst = Instance::from_ints(&[(0, 4, 0, 1), (2, 6, 0, 1)]);
        assert!(matches!(solve_laminar(&inst), Err(Error::Precondition(_))));
    }

    #[test]
    fn empty_and_single() {
        assert!(solve_laminar(&Instance::empty()).unwrap().is_empty());
        let one = Instance::from_ints(&[(1, 4, 2, 3)]);
        assert_eq!(solve_laminar(&one).unwrap().segments(), &[Segment::ints(1, 4, 3)]);
    }

    #[test]
    fn stacked_nested_rects_need_the_middle_height() {
        // W spans everything; two inner rects at disjoint heights force a
        // choice of W's height that also hits one of them.
        let inst = Instance::from_ints(&[(0, 8, 0, 10), (1, 3, 0, 2), (4, 6, 8, 9), (1, 3, 8, 10)]);
        let sol = solve_laminar(&inst).unwrap();
        assert_eq!(sol.cost(), exact_opt(&inst).unwrap().cost());
        assert!(verify(&inst, &sol).feasible);
    }

    #[test]
    fn memo_table_is_polynomial() {
        let inst = Instance::from_ints(&[
            (0, 16, 0, 3),
            (0, 8, 1, 5),
            (8, 16, 2, 4),
            (0, 4, 0, 6),
            (4, 8, 3, 7),
            (8, 12, 1, 2),
            (12, 16, 5, 9),
            (0, 2, 4, 8),
        ]);
        let mut dp = LaminarDp::new(&inst).unwrap();
        let sol = dp.solve().unwrap();
        assert_eq!(sol.cost(), exact_opt(&inst).unwrap().cost());
        let n = inst.len();
        assert!(dp.memo_len() <= (2 * n).pow(2) * (2 * n).pow(2));
    }
}
