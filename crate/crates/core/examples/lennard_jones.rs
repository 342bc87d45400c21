//! Anneals a small Lennard-Jones cluster and reports the relative error of the
//! best energy against the bundled reference minimum, for several `d`.
//!
//! ```bash
//! cargo run --release -p pcsa --example lennard_jones -- 6 10
//! ```
//!
//! Arguments: particle count (default 6) and `1/sigma2_total` (default 10).

use pcsa::annealing::{anneal, CoolingSchedule};
use pcsa::diagnostics::summarize;
use pcsa::objectives::{LennardJones, LennardJonesParams, Objective};
use pcsa::proposal::ProposalPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(6), |s| s.parse())?;
    let inv_sigma2: f64 = args.next().map_or(Ok(10.0), |s| s.parse())?;

    let lj = LennardJones::new(LennardJonesParams::reduced(n))?;
    let reference = lj.known_minimum().ok_or("no reference minimum for this size")?;
    let schedule = CoolingSchedule::preset_20k();
    println!(
        "LJ{n}: reference {reference:.6}, {} steps, 1/sigma2_total = {inv_sigma2}",
        schedule.total_steps()
    );

    for d in [1, 2, 4, n] {
        let policy = ProposalPolicy::new(d, 1.0 / inv_sigma2);
        let mut errors = Vec::new();
        let mut spread = Vec::new();
        for seed in 0..10 {
            let r = anneal(&lj, &policy, &schedule, seed)?;
            errors.push(100.0 * (r.best_value - reference) / reference.abs());
            spread.push(lj.min_pair_distance(&r.best_state));
        }
        let s = summarize(&errors)?;
        println!(
            "d = {d:>2}: relative error {:6.2} ± {:5.2} %   closest pair in best state {:.3}",
            s.mean,
            s.std_dev.unwrap_or(0.0),
            spread.iter().copied().fold(f64::INFINITY, f64::min)
        );
    }
    Ok(())
}
