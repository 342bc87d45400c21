//! Anneals the 30-dimensional Rosenbrock function at `1/sigma2_total = 6000`
//! and prints how acceptance and best value evolve over the schedule.
//!
//! ```bash
//! cargo run --release -p pcsa --example rosenbrock
//! ```

use pcsa::annealing::{anneal, CoolingSchedule};
use pcsa::objectives::Rosenbrock;
use pcsa::proposal::ProposalPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Rosenbrock::new(30)?;
    let schedule = CoolingSchedule::preset_20k();

    for d in [1, 2, 3, 6] {
        let r = anneal(&f, &ProposalPolicy::new(d, 1.0 / 6000.0), &schedule, 11)?;
        println!(
            "d = {d}: best {:.4e} (step {}), overall acceptance {:.3}",
            r.best_value,
            r.step_of_best,
            r.acceptance_rate()
        );
        for stage in [0, 50, 100, 150, 199] {
            let s = &r.stages[stage];
            println!(
                "    stage {stage:>3}  T = {:.3}  acceptance {:.2}  best {:.4e}",
                s.temperature, s.acceptance_rate, s.best_value
            );
        }
    }
    Ok(())
}
