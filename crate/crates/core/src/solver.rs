//! One entry point over every algorithm, as used by the command line and
//! the bench harness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approx8::{approx8, shrink};
use crate::error::{Error, Result};
use crate::geom::{Instance, Solution};
use crate::laminar::solve_laminar;
use crate::oracle::{exact_opt_with_limit, greedy_cover, DEFAULT_ORACLE_LIMIT};
use crate::scalar::Scalar;
use crate::schemes::{ptas_with, qptas_with_stats, QptasOverrides, SearchLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Exact,
    Greedy,
    LaminarDp,
    Approx8,
    Ptas,
    Qptas,
}

impl Algo {
    pub const ALL: [Algo; 6] = [Algo::Exact, Algo::Greedy, Algo::LaminarDp, Algo::Approx8, Algo::Ptas, Algo::Qptas];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Exact => "exact",
            Algo::Greedy => "greedy",
            Algo::LaminarDp => "laminar-dp",
            Algo::Approx8 => "approx8",
            Algo::Ptas => "ptas",
            Algo::Qptas => "qptas",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm {s:?}")))
    }
}

/// Knobs for [`solve`]. Fields irrelevant to the chosen algorithm are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveParams {
    pub eps: Scalar,
    /// PTAS width ratio; defaults to the instance's own `min / max` width.
    pub delta: Option<Scalar>,
    pub mu: Option<Scalar>,
    pub klong: Option<usize>,
    pub oracle_limit: usize,
    pub node_budget: Option<u64>,
    /// Post-process the 8-approximation by shrinking segments.
    pub shrink: bool,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            eps: Scalar::ratio(1, 2),
            delta: None,
            mu: None,
            klong: None,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            node_budget: None,
            shrink: false,
        }
    }
}

impl SolveParams {
    /// Delta used for `inst`: the explicit value or the observed width ratio.
    pub fn delta_for(&self, inst: &Instance) -> Scalar {
        match (&self.delta, inst.min_width()) {
            (Some(d), _) => d.clone(),
            (None, Some(min)) => min / inst.max_width(),
            (None, None) => Scalar::one(),
        }
    }

    pub fn qptas_overrides(&self) -> QptasOverrides {
        QptasOverrides {
            mu: self.mu.clone(),
            klong: self.klong,
            oracle_limit: Some(self.oracle_limit),
            node_budget: self.node_budget,
        }
    }

    /// Short `key=value` list of the parameters that affect `algo`.
    pub fn describe(&self, algo: Algo, inst: &Instance) -> String {
        match algo {
            Algo::Ptas => format!("eps={};delta={}", self.eps, self.delta_for(inst)),
            Algo::Qptas => {
                let mut s = format!("eps={}", self.eps);
                if let Some(mu) = &self.mu {
                    s += &format!(";mu={mu}");
                }
                if let Some(k) = self.klong {
                    s += &format!(";klong={k}");
                }
                s
            }
            Algo::Approx8 if self.shrink => "shrink".into(),
            _ => String::new(),
        }
    }
}

/// Runs `algo` on `inst`.
pub fn solve(inst: &Instance, algo: Algo, p: &SolveParams) -> Result<Solution> {
    let limits = SearchLimits { oracle_limit: p.oracle_limit, node_budget: p.node_budget };
    match algo {
        Algo::Exact => exact_opt_with_limit(inst, p.oracle_limit),
        Algo::Greedy => Ok(greedy_cover(inst)),
        Algo::LaminarDp => solve_laminar(inst),
        Algo::Approx8 => {
            let sol = approx8(inst)?;
            Ok(if p.shrink { shrink(inst, &sol) } else { sol })
        }
        Algo::Ptas => ptas_with(inst, &p.eps, &p.delta_for(inst), &limits).map(|r| r.solution),
        Algo::Qptas => qptas_with_stats(inst, &p.eps, &p.qptas_overrides()).map(|r| r.solution),
    }
}

/// Guaranteed ratio bound of `algo` on an instance of `n` rectangles, as
/// `f64` (the greedy bound `1 + ln n` is irrational).
pub fn ratio_bound(algo: Algo, n: usize, p: &SolveParams) -> f64 {
    match algo {
        Algo::Exact | Algo::LaminarDp => 1.0,
        Algo::Greedy => 1.0 + (n.max(1) as f64).ln(),
        Algo::Approx8 => 8.0,
        Algo::Ptas => 1.0 + 17.0 * p.eps.to_f64(),
        Algo::Qptas => 1.0 + p.eps.to_f64(),
    }
}

/// Exact check of `cost <= bound * opt` for the rational bounds; the greedy
/// bound is compared in floating point with a small tolerance.
pub fn within_bound(algo: Algo, n: usize, p: &SolveParams, cost: &Scalar, opt: &Scalar) -> bool {
    let exact = |b: Scalar| *cost <= b * opt;
    match algo {
        Algo::Exact | Algo::LaminarDp => cost == opt,
        Algo::Approx8 => exact(Scalar::from_int(8)),
        Algo::Ptas => exact(Scalar::one() + Scalar::from_int(17) * &p.eps),
        Algo::Qptas => exact(Scalar::one() + &p.eps),
        Algo::Greedy => cost.to_f64() <= ratio_bound(algo, n, p) * opt.to_f64() * (1.0 + 1e-12),
    }
}
