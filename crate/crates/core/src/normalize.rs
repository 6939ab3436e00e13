//! Passing to a combinatorially equivalent instance and back.
//!
//! `normalize` compresses y-coordinates to ranks, rescales x so the widest
//! rectangle has width 1 and the leftmost edge sits at 0, and stabs very
//! narrow rectangles up front. `denormalize` maps a solution of the
//! normalized instance back to the original coordinates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Instance, Rect, RectId, Segment, Solution};
use crate::scalar::Scalar;

/// Everything needed to map a normalized solution back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transform {
    /// `x_norm = x * x_scale + x_shift`
    pub x_scale: Scalar,
    pub x_shift: Scalar,
    /// `(original y, compressed y)` pairs, strictly increasing in both.
    /// `None` leaves y untouched.
    pub y_map: Option<Vec<(Scalar, u64)>>,
    /// Segments for presolved rectangles, in original coordinates.
    pub presolved: Vec<(RectId, Segment)>,
}

impl Transform {
    pub fn identity() -> Self {
        Transform { x_scale: Scalar::one(), x_shift: Scalar::zero(), y_map: None, presolved: Vec::new() }
    }

    pub fn map_x(&self, x: &Scalar) -> Scalar {
        x * &self.x_scale + &self.x_shift
    }

    pub fn unmap_x(&self, x: &Scalar) -> Scalar {
        (x - &self.x_shift) / &self.x_scale
    }

    fn compress_y(&self, y: &Scalar) -> Scalar {
        match &self.y_map {
            None => y.clone(),
            Some(map) => {
                let i = map.binary_search_by(|(orig, _)| orig.cmp(y)).expect("y recorded in map");
                Scalar::from_int(map[i].1 as i64)
            }
        }
    }

    pub fn uncompress_y(&self, y: &Scalar) -> Result<Scalar> {
        let Some(map) = &self.y_map else {
            return Ok(y.clone());
        };
        let missing = || Error::Corruption(format!("compressed y={y} not present in transform"));
        if !y.is_integer() || y.is_negative() {
            return Err(missing());
        }
        let key: u64 = y.numer().try_into().map_err(|_| missing())?;
        map.binary_search_by(|(_, c)| c.cmp(&key)).map(|i| map[i].0.clone()).map_err(|_| missing())
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub instance: Instance,
    /// Presolved segments in normalized coordinates.
    pub presolved: Vec<Segment>,
    pub transform: Transform,
}

/// Normalizes `inst`. Rectangles whose scaled width is at most `eps / n`
/// are removed and stabbed by their own top edge.
pub fn normalize(inst: &Instance, eps: &Scalar) -> Result<Normalized> {
    if !eps.is_positive() {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    if inst.is_empty() {
        return Ok(Normalized { instance: Instance::empty(), presolved: Vec::new(), transform: Transform::identity() });
    }

    let mut ys: Vec<&Scalar> = inst.rects().iter().flat_map(|r| [&r.yb, &r.yt]).collect();
    ys.sort();
    ys.dedup();
    let y_map: Vec<(Scalar, u64)> = ys.into_iter().enumerate().map(|(i, y)| (y.clone(), i as u64)).collect();

    let min_xl = inst.rects().iter().map(|r| &r.xl).min().expect("non-empty").clone();
    let x_scale = inst.max_width().recip();
    let x_shift = -(min_xl * &x_scale);
    let mut transform = Transform { x_scale, x_shift, y_map: Some(y_map), presolved: Vec::new() };

    let threshold = eps / Scalar::from_int(inst.len() as i64);
    let mut kept = Vec::with_capacity(inst.len());
    let mut presolved = Vec::new();
    for r in inst.rects() {
        let nr = Rect {
            id: r.id,
            xl: transform.map_x(&r.xl),
            xr: transform.map_x(&r.xr),
            yb: transform.compress_y(&r.yb),
            yt: transform.compress_y(&r.yt),
        };
        if nr.width() <= threshold {
            presolved.push(Segment::spanning(&nr));
            transform.presolved.push((r.id, Segment::spanning(r)));
        } else {
            kept.push(nr);
        }
    }
    Ok(Normalized { instance: Instance::new(kept)?, presolved, transform })
}

/// Maps a normalized solution back and appends the presolved segments.
pub fn denormalize(sol: &Solution, t: &Transform) -> Result<Solution> {
    let mut out = Vec::with_capacity(sol.len() + t.presolved.len());
    for s in sol.segments() {
        out.push(Segment::new(t.unmap_x(&s.xl), t.unmap_x(&s.xr), t.uncompress_y(&s.y)?)?);
    }
    out.extend(t.presolved.iter().map(|(_, s)| s.clone()));
    Ok(Solution::new(out))
}
