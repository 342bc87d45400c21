//! Predicted versus measured one-shot acceptance on the 30D hyper-ellipsoid
//! at `T = 1`, `sigma2_total = 0.01`, from a random starting point.
//!
//! ```bash
//! cargo run --release -p pcsa --example acceptance_theory
//! ```

use pcsa::annealing::SeededRng;
use pcsa::objectives::{HyperEllipsoid, Objective};
use pcsa::proposal::ProposalPolicy;
use pcsa::theory::{acceptance_edgeworth, acceptance_gaussian, predict_vs_empirical, CumulantTriple};
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = HyperEllipsoid::standard(30)?;
    let mut rng = SeededRng::seed_from_u64(5);
    let x = f.random_initial_state(&mut rng)?;

    println!("   d   empirical (se)      gaussian  edgeworth   k1        k2        k3");
    for d in [1, 2, 4, 8, 16, 30] {
        let policy = ProposalPolicy::new(d, 0.01);
        let r = predict_vs_empirical(&f, &x, &policy, 1.0, 20_000, &mut rng);
        let k = r.cumulants.mean;
        println!(
            "{d:>4}   {:.4} ({:.4})    {:.4}    {:.4}    {:+.3e} {:.3e} {:+.3e}{}",
            r.empirical,
            r.std_error,
            r.gaussian,
            r.edgeworth,
            k.kappa1,
            k.kappa2,
            k.kappa3,
            if r.cumulants.exact { "" } else { "  (sampled subsets)" }
        );
    }

    // the skewness correction on its own
    println!();
    for k3 in [-0.5, 0.0, 0.5] {
        let c = CumulantTriple {
            kappa1: -0.5,
            kappa2: 1.0,
            kappa3: k3,
        };
        println!(
            "k1 = -0.5, k2 = 1, k3 = {k3:+.1}: gaussian {:.4}, edgeworth {:.4}",
            acceptance_gaussian(&c),
            acceptance_edgeworth(&c).value
        );
    }
    Ok(())
}
