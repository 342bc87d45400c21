//! Hyper-ellipsoid `sum (N - i + 1) x_i^2`: the three cooling-factor modes on
//! the 2D case, then the 30D case over `d`.
//!
//! ```bash
//! cargo run --release -p pcsa --example hyper_ellipsoid
//! ```

use pcsa::annealing::{anneal, CoolingSchedule, StageFactor};
use pcsa::diagnostics::summarize;
use pcsa::objectives::HyperEllipsoid;
use pcsa::proposal::ProposalPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = CoolingSchedule::preset_20k();
    let modes = [
        ("derived", StageFactor::Derived),
        ("0.9999 per stage", StageFactor::Explicit(0.9999)),
        ("0.9999 per step", StageFactor::PerStep(0.9999)),
    ];
    let f2 = HyperEllipsoid::standard(2)?;
    let policy = ProposalPolicy::new(1, 1.0 / 600.0);
    for (label, factor) in modes {
        let schedule = base.with_factor(factor)?;
        let best: Vec<f64> = (0..20)
            .map(|seed| anneal(&f2, &policy, &schedule, seed).map(|r| r.best_value))
            .collect::<Result<_, _>>()?;
        let s = summarize(&best)?;
        println!(
            "N = 2, {label:<17} final T {:.3}: best {:.2e} ± {:.1e}",
            schedule.temperature_at(schedule.n_stages),
            s.mean,
            s.std_dev.unwrap_or(0.0)
        );
    }

    let f30 = HyperEllipsoid::standard(30)?;
    for d in [1, 2, 3, 6] {
        let policy = ProposalPolicy::new(d, 1.0 / 600.0);
        let best: Vec<f64> = (0..10)
            .map(|seed| anneal(&f30, &policy, &base, seed).map(|r| r.best_value))
            .collect::<Result<_, _>>()?;
        let s = summarize(&best)?;
        println!("N = 30, d = {d}: best {:.3e} ± {:.1e}", s.mean, s.std_dev.unwrap_or(0.0));
    }
    Ok(())
}
