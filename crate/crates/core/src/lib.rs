//! Simulated annealing with partial-coordinate Metropolis-Hastings moves.
//!
//! Each proposal perturbs `d` of the `N` coordinates with Gaussian noise whose
//! total variance is fixed, so `d` trades step direction against step size per
//! coordinate. The crate provides:
//!
//! - [`objectives`]: Lennard-Jones clusters, Rosenbrock, hyper-ellipsoid
//! - [`proposal`] and [`chain`]: the move and the MH transition
//! - [`annealing`]: geometric cooling over stages
//! - [`diagnostics`]: acceptance rate, autocorrelation, replicate summaries
//! - [`theory`]: cumulant-based acceptance predictions from a local quadratic model
//! - [`experiments`]: seeded, resumable grids with CSV output
//!
//! ```
//! use pcsa::annealing::{anneal, CoolingSchedule};
//! use pcsa::objectives::HyperEllipsoid;
//! use pcsa::proposal::ProposalPolicy;
//!
//! let f = HyperEllipsoid::standard(2).unwrap();
//! let schedule = CoolingSchedule::new(2.0, 0.2, 50, 100).unwrap();
//! let r = anneal(&f, &ProposalPolicy::new(1, 1.0 / 600.0), &schedule, 42).unwrap();
//! assert!(r.best_value <= r.final_value);
//! ```

pub mod annealing;
pub mod chain;
pub mod diagnostics;
pub mod error;
pub mod experiments;
pub mod objectives;
pub mod proposal;
pub mod theory;
