//! Partial-coordinate proposals: which coordinates move, how far, and what the
//! fixed variance budget means for the per-coordinate step.
//!
//! ```bash
//! cargo run --release -p pcsa --example proposals
//! ```

use pcsa::annealing::SeededRng;
use pcsa::proposal::{expected_squared_displacement, propose, ProposalPolicy, VarianceAllocation};
use rand::SeedableRng;

fn main() {
    let mut rng = SeededRng::seed_from_u64(7);
    let x = vec![0.0; 8];

    let policy = ProposalPolicy::new(3, 0.3);
    let out = propose(&policy, &x, &mut rng);
    println!("one move of d = 3 on 8 coordinates: subset {:?}", out.subset);
    println!("  increments {:.4?}", out.increments);

    println!("\n   d   per-coord var   E|y-x|^2 (equal split)   measured   E|y-x|^2 (per coordinate)");
    for d in [1, 2, 4, 8] {
        let policy = ProposalPolicy::new(d, 0.3);
        let measured = (0..50_000)
            .map(|_| propose(&policy, &x, &mut rng).increments.iter().map(|v| v * v).sum::<f64>())
            .sum::<f64>()
            / 50_000.0;
        let wide = policy.with_allocation(VarianceAllocation::PerCoordinate);
        println!(
            "{d:>4}   {:>13.4}   {:>22.4}   {measured:>8.4}   {:>25.4}",
            policy.per_coordinate_variance(),
            expected_squared_displacement(&policy),
            expected_squared_displacement(&wide)
        );
    }
}
