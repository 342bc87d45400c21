//! Fixed-temperature chains on the 30D Rosenbrock function: acceptance rate,
//! mean absolute increment and autocorrelation of `f` over `d`.
//!
//! ```bash
//! cargo run --release -p pcsa --example autocorrelation
//! ```

use pcsa::annealing::SeededRng;
use pcsa::chain::{run_fixed_temperature, ChainState};
use pcsa::diagnostics::{acceptance_rate, autocorrelation, mean_abs_increment, DEFAULT_BURN_IN};
use pcsa::objectives::Rosenbrock;
use pcsa::proposal::ProposalPolicy;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Rosenbrock::new(30)?;
    let start = vec![1.0; 30];
    let lags = [1, 10, 100, 1000];

    println!("   d  accept   E|df|      rho(1)  rho(10) rho(100) rho(1000)");
    for d in [1, 2, 3, 6, 15, 30] {
        let mut rng = SeededRng::seed_from_u64(d as u64);
        let mut state = ChainState::new(&f, start.clone(), 0.5);
        let policy = ProposalPolicy::new(d, 1.0 / 600.0);
        let trace = run_fixed_temperature(&mut state, &f, &policy, 200_000, &mut rng).after_burn_in(DEFAULT_BURN_IN);
        let rho = autocorrelation(&trace.f_series, 1000)?;
        print!(
            "{d:>4}  {:.3}   {:.3e}",
            acceptance_rate(&trace, None)?,
            mean_abs_increment(&trace)?.unwrap_or(f64::NAN)
        );
        for l in lags {
            print!("  {:+.3}", rho[l]);
        }
        println!();
    }
    Ok(())
}
