//! Seeded instance generators.
//!
//! All randomness comes from [`SplitMix64`], a 64-bit generator with a
//! fixed, published algorithm, so the same `(kind, n, seed)` produces the
//! same instance in any language. Bounded draws use the multiply-high
//! method: `below(m) = (next_u64() * m) >> 64` computed in 128 bits.
//! Rectangle ids are `1..=n` in generation order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Instance, Rect, RectId};
use crate::scalar::Scalar;

/// SplitMix64 (Steele, Lea and Flood). State advances by the golden-ratio
/// increment and the output is a 3-step xor-shift-multiply mix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..m`; `m` must be positive.
    pub fn below(&mut self, m: u64) -> u64 {
        ((self.next_u64() as u128 * m as u128) >> 64) as u64
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo) as u64 + 1;
        lo + self.below(span) as i64
    }

    /// Independent child stream seeded from the next output.
    pub fn split(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    #[default]
    Uniform,
    Laminar,
    Bounded,
}

impl std::str::FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GenKind::Uniform),
            "laminar" => Ok(GenKind::Laminar),
            "bounded" => Ok(GenKind::Bounded),
            _ => Err(Error::Parameter(format!("unknown generator kind {s:?}"))),
        }
    }
}

/// Grid parameters for [`gen_uniform`], in units of `1 / resolution`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct UniformConfig {
    pub x_range: i64,
    pub y_range: i64,
    pub w_min: i64,
    pub w_max: i64,
    pub resolution: i64,
}

impl Default for UniformConfig {
    fn default() -> Self {
        UniformConfig { x_range: 20, y_range: 20, w_min: 1, w_max: 8, resolution: 1 }
    }
}

/// `xl` uniform on `0..=x_range`, width uniform on `w_min..=w_max`, and
/// the y-extent is a sorted pair of uniform draws on `0..=y_range`.
pub fn gen_uniform(n: usize, seed: u64, cfg: &UniformConfig) -> Result<Instance> {
    if cfg.x_range < 0 || cfg.y_range < 0 {
        return Err(Error::Parameter("x_range and y_range must be non-negative".into()));
    }
    if cfg.w_min < 1 || cfg.w_min > cfg.w_max {
        return Err(Error::Parameter(format!("need 1 <= w_min <= w_max, got {} and {}", cfg.w_min, cfg.w_max)));
    }
    if cfg.resolution < 1 {
        return Err(Error::Parameter("resolution must be at least 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let unit = |v: i64| Scalar::ratio(v, cfg.resolution);
    let rects = (0..n)
        .map(|i| {
            let xl = rng.range(0, cfg.x_range);
            let w = rng.range(cfg.w_min, cfg.w_max);
            let (a, b) = (rng.range(0, cfg.y_range), rng.range(0, cfg.y_range));
            Rect { id: i as RectId + 1, xl: unit(xl), xr: unit(xl + w), yb: unit(a.min(b)), yt: unit(a.max(b)) }
        })
        .collect();
    Instance::new(rects)
}

/// Random aligned dyadic intervals of `[0, 2^k]` with `k = max(3,
/// ceil(log2 n) + 1)`: each rectangle picks a level `d` in `0..k` and a
/// slot in `0..2^d`. Any two aligned dyadic intervals are nested or
/// disjoint. Heights are sorted pairs on `0..=2n`.
pub fn gen_laminar(n: usize, seed: u64) -> Instance {
    let mut rng = SplitMix64::new(seed);
    let k = (usize::BITS - n.saturating_sub(1).leading_zeros()).max(2) as i64 + 1;
    let y_max = 2 * n as i64;
    let rects = (0..n)
        .map(|i| {
            let d = rng.range(0, k - 1);
            let slot = rng.range(0, (1 << d) - 1);
            let w = 1i64 << (k - d);
            let (a, b) = (rng.range(0, y_max), rng.range(0, y_max));
            Rect::ints(i as RectId + 1, slot * w, (slot + 1) * w, a.min(b), a.max(b))
        })
        .collect();
    Instance::new(rects).expect("generated ids are unique")
}

/// Widths `delta + (1 - delta) * u / 16` with `u` uniform on `0..=16`, so
/// every width lies in `[delta, 1]`. Left edges are multiples of 1/4 in
/// `[0, n]`; heights are sorted pairs on `0..=2n`.
pub fn gen_bounded_ratio(n: usize, delta: &Scalar, seed: u64) -> Result<Instance> {
    if !delta.is_positive() || *delta > Scalar::one() {
        return Err(Error::Parameter(format!("delta must lie in (0, 1], got {delta}")));
    }
    let mut rng = SplitMix64::new(seed);
    let y_max = 2 * n as i64;
    let slack = Scalar::one() - delta;
    let rects = (0..n)
        .map(|i| {
            let xl = Scalar::ratio(rng.range(0, 4 * n as i64), 4);
            let w = delta + &slack * Scalar::ratio(rng.range(0, 16), 16);
            let (a, b) = (rng.range(0, y_max), rng.range(0, y_max));
            Rect { id: i as RectId + 1, xr: &xl + w, xl, yb: a.min(b).into(), yt: a.max(b).into() }
        })
        .collect();
    Instance::new(rects)
}

/// Dispatches on `kind`; `delta` is used by [`GenKind::Bounded`] only.
pub fn generate(kind: GenKind, n: usize, seed: u64, delta: Option<&Scalar>, cfg: &UniformConfig) -> Result<Instance> {
    match kind {
        GenKind::Uniform => gen_uniform(n, seed, cfg),
        GenKind::Laminar => Ok(gen_laminar(n, seed)),
        GenKind::Bounded => gen_bounded_ratio(n, delta.unwrap_or(&Scalar::ratio(1, 2)), seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laminar::{is_laminar, solve_laminar};
    use crate::oracle::exact_opt;

    #[test]
    fn splitmix_reference_values() {
        // Known first outputs for seed 1234567.
        let mut r = SplitMix64::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
        assert_eq!(r.next_u64(), 9817491932198370423);
    }

    #[test]
    fn bounded_draws_stay_in_range() {
        let mut r = SplitMix64::new(9);
        for m in 1..50 {
            assert!(r.below(m) < m);
        }
        for _ in 0..200 {
            let v = r.range(-3, 3);
            assert!((-3..=3).contains(&v));
        }
    }

    #[test]
    fn uniform_examples() {
        let cfg = UniformConfig::default();
        assert!(gen_uniform(0, 1, &cfg).unwrap().is_empty());
        let a = serde_json::to_string(&gen_uniform(5, 1, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&gen_uniform(5, 1, &cfg).unwrap()).unwrap();
        let c = serde_json::to_string(&gen_uniform(5, 2, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(gen_uniform(5, 1, &cfg).unwrap().ids(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn uniform_rejects_bad_config() {
        let bad = UniformConfig { w_min: 5, w_max: 2, ..Default::default() };
        assert!(matches!(gen_uniform(3, 1, &bad), Err(Error::Parameter(_))));
        let bad = UniformConfig { resolution: 0, ..Default::default() };
        assert!(matches!(gen_uniform(3, 1, &bad), Err(Error::Parameter(_))));
    }

    #[test]
    fn uniform_resolution_scales() {
        let cfg = UniformConfig { resolution: 4, ..Default::default() };
        let inst = gen_uniform(10, 3, &cfg).unwrap();
        assert!(inst.max_width() <= &Scalar::from_int(2));
    }

    #[test]
    fn laminar_examples() {
        for seed in 0..20 {
            for n in [1, 2, 7, 20, 50] {
                assert!(is_laminar(&gen_laminar(n, seed)));
            }
        }
        assert_eq!(gen_laminar(1, 5).len(), 1);
        let inst = gen_laminar(10, 7);
        assert_eq!(solve_laminar(&inst).unwrap().cost(), exact_opt(&inst).unwrap().cost());
    }

    #[test]
    fn bounded_examples() {
        let one = gen_bounded_ratio(10, &Scalar::one(), 4).unwrap();
        assert!(one.rects().iter().all(|r| r.width() == Scalar::one()));
        let half = Scalar::ratio(1, 2);
        let inst = gen_bounded_ratio(20, &half, 4).unwrap();
        let min = inst.min_width().unwrap();
        assert!(inst.max_width() <= &(min * Scalar::from_int(2)));
        assert_eq!(gen_bounded_ratio(20, &half, 4).unwrap(), inst);
        assert!(gen_bounded_ratio(3, &Scalar::zero(), 1).is_err());
    }
}
