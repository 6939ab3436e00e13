//! Stabbing axis-aligned rectangles with horizontal segments of minimum
//! total length.
//!
//! A segment `[a, b] x y` stabs a rectangle `[xl, xr] x [yb, yt]` when
//! `a <= xl`, `b >= xr` and `yb <= y <= yt`. All coordinates are exact
//! rationals ([`Scalar`]); no solver touches floating point.
//!
//! | module | what it provides |
//! |---|---|
//! | [`geom`] | rectangles, segments, instances, verification, candidate segments |
//! | [`normalize`] | rescaling, y-compression and tiny-rectangle presolve |
//! | [`oracle`] | exact subset DP for small inputs, greedy set cover |
//! | [`laminar`] | exact DP when x-projections are nested or disjoint |
//! | [`approx8`] | power-of-two rounding to a laminar instance, 8-approximation |
//! | [`decompose`] | shifted vertical strips and horizontal cuts |
//! | [`schemes`] | PTAS for bounded width ratio, recursive QPTAS |
//! | [`gen`] | seeded generators |
//! | [`bench`] | suites with oracle comparison, CSV and markdown reports |
//!
//! ```
//! use stabkit::{approx8::approx8, oracle::exact_opt, verify, Instance};
//!
//! let inst = Instance::from_ints(&[(0, 4, 0, 2), (1, 3, 1, 5), (5, 7, 0, 3)]);
//! let opt = exact_opt(&inst)?;
//! let apx = approx8(&inst)?;
//! assert!(verify(&inst, &apx).feasible);
//! assert!(apx.cost() <= &(opt.cost() * stabkit::Scalar::from_int(8)));
//! # Ok::<(), stabkit::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per capability.

pub mod approx8;
pub mod bench;
pub mod decompose;
pub mod error;
pub mod gen;
pub mod geom;
pub mod laminar;
pub mod normalize;
pub mod oracle;
pub mod parallel;
pub mod scalar;
pub mod schemes;
pub mod solver;

pub use error::{Error, Result};
pub use geom::{
    candidate_segments, split_independent, stabs, verify, Instance, Rect, RectId, Segment, Solution, VerifyReport,
};
pub use scalar::Scalar;
pub use solver::{solve, Algo, SolveParams};
