//! Rectangles, segments, instances and solutions, plus the stabbing
//! predicate and everything that only needs it.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type RectId = u64;

/// Closed axis-aligned rectangle `[xl, xr] x [yb, yt]` with `xl < xr`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub id: RectId,
    pub xl: Scalar,
    pub xr: Scalar,
    pub yb: Scalar,
    pub yt: Scalar,
}

impl Rect {
    pub fn new(id: RectId, xl: Scalar, xr: Scalar, yb: Scalar, yt: Scalar) -> Result<Self> {
        if xl >= xr {
            return Err(Error::InvalidInstance(format!("rect {id}: width must be positive (xl={xl}, xr={xr})")));
        }
        if yb > yt {
            return Err(Error::InvalidInstance(format!("rect {id}: yb={yb} above yt={yt}")));
        }
        Ok(Rect { id, xl, xr, yb, yt })
    }

    /// Convenience constructor from integers; panics on invalid geometry.
    pub fn ints(id: RectId, xl: i64, xr: i64, yb: i64, yt: i64) -> Self {
        Rect::new(id, xl.into(), xr.into(), yb.into(), yt.into()).expect("valid rect")
    }

    pub fn width(&self) -> Scalar {
        &self.xr - &self.xl
    }

    /// Whether `[xl, xr]` lies inside `[lo, hi]`.
    pub fn x_within(&self, lo: &Scalar, hi: &Scalar) -> bool {
        *lo <= self.xl && self.xr <= *hi
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}[{},{}]x[{},{}]", self.id, self.xl, self.xr, self.yb, self.yt)
    }
}

/// Closed horizontal segment `[xl, xr] x y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub xl: Scalar,
    pub xr: Scalar,
    pub y: Scalar,
}

impl Segment {
    pub fn new(xl: Scalar, xr: Scalar, y: Scalar) -> Result<Self> {
        if xl > xr {
            return Err(Error::InvalidInstance(format!("segment with xl={xl} > xr={xr}")));
        }
        Ok(Segment { xl, xr, y })
    }

    pub fn ints(xl: i64, xr: i64, y: i64) -> Self {
        Segment::new(xl.into(), xr.into(), y.into()).expect("valid segment")
    }

    pub fn length(&self) -> Scalar {
        &self.xr - &self.xl
    }

    /// The tight segment for a single rectangle, at its top edge.
    pub fn spanning(r: &Rect) -> Self {
        Segment { xl: r.xl.clone(), xr: r.xr.clone(), y: r.yt.clone() }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x{}", self.xl, self.xr, self.y)
    }
}

/// A segment stabs a rectangle when it reaches both vertical edges at a
/// height inside the rectangle. All boundaries are closed.
pub fn stabs(s: &Segment, r: &Rect) -> bool {
    s.xl <= r.xl && s.xr >= r.xr && r.yb <= s.y && s.y <= r.yt
}

/// Axis-aligned box `[x0, x1] x [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x0: Scalar,
    pub x1: Scalar,
    pub y0: Scalar,
    pub y1: Scalar,
}

impl BoundingBox {
    pub fn contains(&self, r: &Rect) -> bool {
        self.x0 <= r.xl && r.xr <= self.x1 && self.y0 <= r.yb && r.yt <= self.y1
    }

    pub fn width(&self) -> Scalar {
        &self.x1 - &self.x0
    }
}

/// A finite set of rectangles with unique ids.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    rects: Vec<Rect>,
    max_width: Scalar,
}

impl Instance {
    pub fn new(rects: Vec<Rect>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(rects.len());
        for r in &rects {
            if !seen.insert(r.id) {
                return Err(Error::InvalidInstance(format!("duplicate rect id {}", r.id)));
            }
            if r.xl >= r.xr || r.yb > r.yt {
                return Err(Error::InvalidInstance(format!("malformed rect {r:?}")));
            }
        }
        let max_width = rects.iter().map(Rect::width).max().unwrap_or_else(Scalar::zero);
        Ok(Instance { rects, max_width })
    }

    pub fn empty() -> Self {
        Instance { rects: Vec::new(), max_width: Scalar::zero() }
    }

    /// Builds an instance from integer tuples `(xl, xr, yb, yt)`, numbering
    /// ids from 1. Panics on invalid geometry.
    pub fn from_ints(rects: &[(i64, i64, i64, i64)]) -> Self {
        let rects = rects
            .iter()
            .enumerate()
            .map(|(i, &(xl, xr, yb, yt))| Rect::ints(i as RectId + 1, xl, xr, yb, yt))
            .collect();
        Instance::new(rects).expect("valid instance")
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Width of the widest rectangle; zero when empty.
    pub fn max_width(&self) -> &Scalar {
        &self.max_width
    }

    pub fn min_width(&self) -> Option<Scalar> {
        self.rects.iter().map(Rect::width).min()
    }

    pub fn ids(&self) -> Vec<RectId> {
        self.rects.iter().map(|r| r.id).collect()
    }

    pub fn bounding_box(&self) -> Option<BoundingBox> {
        let first = self.rects.first()?;
        let mut b =
            BoundingBox { x0: first.xl.clone(), x1: first.xr.clone(), y0: first.yb.clone(), y1: first.yt.clone() };
        for r in &self.rects[1..] {
            if r.xl < b.x0 {
                b.x0 = r.xl.clone();
            }
            if r.xr > b.x1 {
                b.x1 = r.xr.clone();
            }
            if r.yb < b.y0 {
                b.y0 = r.yb.clone();
            }
            if r.yt > b.y1 {
                b.y1 = r.yt.clone();
            }
        }
        Some(b)
    }

    /// Sub-instance of the rectangles satisfying `keep`, order preserved.
    pub fn filter<F: FnMut(&Rect) -> bool>(&self, mut keep: F) -> Instance {
        let rects: Vec<Rect> = self.rects.iter().filter(|r| keep(r)).cloned().collect();
        let max_width = rects.iter().map(Rect::width).max().unwrap_or_else(Scalar::zero);
        Instance { rects, max_width }
    }

    /// Sub-instance of the rectangles at the given positions.
    pub fn subset(&self, indices: &[usize]) -> Instance {
        let rects: Vec<Rect> = indices.iter().map(|&i| self.rects[i].clone()).collect();
        let max_width = rects.iter().map(Rect::width).max().unwrap_or_else(Scalar::zero);
        Instance { rects, max_width }
    }

    /// Sub-instance of the rectangles whose position is flagged in `mask`.
    pub fn filter_mask(&self, mask: &[bool]) -> Instance {
        let idx: Vec<usize> = mask.iter().enumerate().filter_map(|(i, &m)| m.then_some(i)).collect();
        self.subset(&idx)
    }

    /// Rectangles not stabbed by any of `segments`.
    pub fn without_stabbed(&self, segments: &[Segment]) -> Instance {
        self.filter(|r| !segments.iter().any(|s| stabs(s, r)))
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rects).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct RawRect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<RectId>,
    xl: Scalar,
    xr: Scalar,
    yb: Scalar,
    yt: Scalar,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    rects: Vec<RawRect>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        let rects = raw
            .rects
            .into_iter()
            .enumerate()
            .map(|(i, r)| Rect::new(r.id.unwrap_or(i as RectId + 1), r.xl, r.xr, r.yb, r.yt))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(rects)
    }
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> Self {
        RawInstance {
            rects: inst
                .rects
                .into_iter()
                .map(|r| RawRect { id: Some(r.id), xl: r.xl, xr: r.xr, yb: r.yb, yt: r.yt })
                .collect(),
        }
    }
}

/// A set of segments and their total length. Overlapping segments are
/// charged separately.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSolution", into = "RawSolution")]
pub struct Solution {
    segments: Vec<Segment>,
    cost: Scalar,
}

impl Solution {
    pub fn new(segments: Vec<Segment>) -> Self {
        let cost = segments.iter().map(Segment::length).sum();
        Solution { segments, cost }
    }

    pub fn empty() -> Self {
        Solution { segments: Vec::new(), cost: Scalar::zero() }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<Segment> {
        self.segments
    }

    pub fn cost(&self) -> &Scalar {
        &self.cost
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn extend(&mut self, other: Solution) {
        self.cost += other.cost;
        self.segments.extend(other.segments);
    }

    pub fn push(&mut self, s: Segment) {
        self.cost += s.length();
        self.segments.push(s);
    }
}

impl FromIterator<Segment> for Solution {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Solution::new(iter.into_iter().collect())
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Solution(cost={}, {:?})", self.cost, self.segments)
    }
}

#[derive(Serialize, Deserialize)]
struct RawSolution {
    segments: Vec<Segment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cost: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cost_decimal: Option<String>,
}

impl TryFrom<RawSolution> for Solution {
    type Error = Error;

    fn try_from(raw: RawSolution) -> Result<Self> {
        for s in &raw.segments {
            if s.xl > s.xr {
                return Err(Error::InvalidInstance(format!("segment {s:?} has xl > xr")));
            }
        }
        // The declared cost is informational; it is always recomputed.
        Ok(Solution::new(raw.segments))
    }
}

impl From<Solution> for RawSolution {
    fn from(sol: Solution) -> Self {
        let dec = sol.cost.to_decimal(6);
        RawSolution { segments: sol.segments, cost: Some(sol.cost), cost_decimal: Some(dec) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub feasible: bool,
    pub unstabbed_ids: Vec<RectId>,
    pub recomputed_cost: Scalar,
}

/// Checks that every rectangle is stabbed and recomputes the cost. Depends
/// on nothing but [`stabs`].
pub fn verify(inst: &Instance, sol: &Solution) -> VerifyReport {
    let unstabbed_ids: Vec<RectId> =
        inst.rects().iter().filter(|r| !sol.segments().iter().any(|s| stabs(s, r))).map(|r| r.id).collect();
    VerifyReport {
        feasible: unstabbed_ids.is_empty(),
        unstabbed_ids,
        recomputed_cost: sol.segments().iter().map(Segment::length).sum(),
    }
}

/// All segments `[xl_i, xr_j] x yt_k` with `xl_i <= xr_j`, deduplicated and
/// sorted. Any feasible solution can be shrunk and lifted onto this set
/// without increasing its cost.
pub fn candidate_segments(inst: &Instance) -> Vec<Segment> {
    let lefts: BTreeSet<&Scalar> = inst.rects().iter().map(|r| &r.xl).collect();
    let rights: BTreeSet<&Scalar> = inst.rects().iter().map(|r| &r.xr).collect();
    let tops: BTreeSet<&Scalar> = inst.rects().iter().map(|r| &r.yt).collect();
    let mut out = Vec::new();
    for &xl in &lefts {
        for &xr in rights.range::<&Scalar, _>(xl..) {
            for &y in &tops {
                out.push(Segment { xl: xl.clone(), xr: xr.clone(), y: y.clone() });
            }
        }
    }
    out
}

/// Splits into connected components of the x-overlap graph, where two
/// rectangles are adjacent when their x-projections share interior points.
/// Components are ordered by leftmost edge; rectangles keep input order.
pub fn split_independent(inst: &Instance) -> Vec<Instance> {
    let mut order: Vec<usize> = (0..inst.len()).collect();
    let rects = inst.rects();
    order.sort_by(|&a, &b| rects[a].xl.cmp(&rects[b].xl).then(a.cmp(&b)));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut reach: Option<&Scalar> = None;
    for i in order {
        let r = &rects[i];
        match reach {
            Some(x) if r.xl < *x => {
                groups.last_mut().expect("open group").push(i);
                if r.xr > *x {
                    reach = Some(&r.xr);
                }
            }
            _ => {
                groups.push(vec![i]);
                reach = Some(&r.xr);
            }
        }
    }
    groups
        .into_iter()
        .map(|mut g| {
            g.sort_unstable();
            inst.subset(&g)
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// R1=[0,4]x[0,2], R2=[1,3]x[1,5], R3=[5,7]x[0,3]; optimum 6.
    pub fn i1() -> Instance {
        Instance::from_ints(&[(0, 4, 0, 2), (1, 3, 1, 5), (5, 7, 0, 3)])
    }
}
