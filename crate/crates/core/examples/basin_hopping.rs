//! Computes Lennard-Jones reference minima by basin hopping and writes them in
//! the reference-table format used by `ReferenceTable`.
//!
//! Each walker alternates random rigid displacements of all atoms with an
//! L-BFGS relaxation and accepts new minima with a Metropolis test on the
//! relaxed energies. Independent walkers run in parallel; the lowest minimum
//! found for each size is kept.
//!
//! ```bash
//! cargo run --release -p pcsa --example basin_hopping -- --sizes 6,39,69,89 \
//!     --output crates/core/data/lj_reference.txt
//! ```

use std::collections::VecDeque;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use pcsa::annealing::SeededRng;
use pcsa::objectives::{LennardJones, LennardJonesParams, Objective, ReferenceTable};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

#[derive(Parser)]
struct Args {
    /// Cluster sizes (particle counts).
    #[arg(long, value_delimiter = ',', default_value = "6,39")]
    sizes: Vec<usize>,
    /// Basin-hopping steps per walker.
    #[arg(long, default_value_t = 3000)]
    hops: usize,
    /// Independent walkers per size.
    #[arg(long, default_value_t = 16)]
    walkers: usize,
    /// Metropolis temperature on relaxed energies.
    #[arg(long, default_value_t = 0.8)]
    temperature: f64,
    /// Maximum random displacement per coordinate.
    #[arg(long, default_value_t = 0.4)]
    step: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Reference file to merge results into (created if missing).
    #[arg(long)]
    output: Option<PathBuf>,
}

/// L-BFGS with a backtracking Armijo line search and a cap on the largest
/// coordinate move per iteration.
fn relax(f: &LennardJones, mut x: Vec<f64>) -> (Vec<f64>, f64) {
    const MEMORY: usize = 12;
    const MAX_MOVE: f64 = 0.15;
    let mut e = f.evaluate(&x);
    let mut g = f.gradient(&x);
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut flat = 0;

    for _ in 0..5_000 {
        if g.iter().all(|v| v.abs() < 1e-7) {
            break;
        }
        // two-loop recursion
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dot(s, &q);
            axpy(-a, y, &mut q);
            alphas.push(a);
        }
        if let Some((s, y, _)) = history.back() {
            let gamma = dot(s, y) / dot(y, y);
            q.iter_mut().for_each(|v| *v *= gamma);
        } else {
            let scale = 0.01 / g.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12);
            q.iter_mut().for_each(|v| *v *= scale);
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &q);
            axpy(a - b, s, &mut q);
        }
        let mut dir: Vec<f64> = q.iter().map(|v| -v).collect();
        if dot(&dir, &g) >= 0.0 {
            history.clear();
            dir = g.iter().map(|v| -v * 1e-3).collect();
        }
        let biggest = dir.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if biggest > MAX_MOVE {
            dir.iter_mut().for_each(|v| *v *= MAX_MOVE / biggest);
        }

        let slope = dot(&dir, &g);
        let mut t = 1.0;
        let (x_new, e_new) = loop {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            let et = f.evaluate(&trial);
            if et <= e + 1e-4 * t * slope || t < 1e-10 {
                break (trial, et);
            }
            t *= 0.5;
        };
        let g_new = f.gradient(&x_new);
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 {
            if history.len() == MEMORY {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        flat = if e - e_new < 1e-13 * e.abs() { flat + 1 } else { 0 };
        x = x_new;
        e = e_new;
        g = g_new;
        if flat >= 5 {
            break;
        }
    }
    (x, e)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += a * xi);
}

fn recenter(x: &mut [f64]) {
    let n = x.len() / 3;
    for a in 0..3 {
        let c = x.iter().skip(a).step_by(3).sum::<f64>() / n as f64;
        x.iter_mut().skip(a).step_by(3).for_each(|v| *v -= c);
    }
}

fn walker(f: &LennardJones, args: &Args, seed: u64) -> f64 {
    let mut rng = SeededRng::seed_from_u64(seed);
    let start = f.random_initial_state(&mut rng).expect("initial state");
    let (mut x, mut e) = relax(f, start);
    let mut best = e;
    for _ in 0..args.hops {
        let mut trial: Vec<f64> = x
            .iter()
            .map(|v| v + rng.random_range(-args.step..=args.step))
            .collect();
        recenter(&mut trial);
        let (xt, et) = relax(f, trial);
        // discard minima with atoms that drifted away from the cluster
        if f.min_pair_distance(&xt) < 0.7 {
            continue;
        }
        if et < e || rng.random::<f64>() < ((e - et) / args.temperature).exp() {
            x = xt;
            e = et;
        }
        best = best.min(e);
    }
    best
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args = Args::parse();
    let mut table = match &args.output {
        Some(p) if p.exists() => ReferenceTable::load(p)?,
        _ => ReferenceTable::default(),
    };

    for &n in &args.sizes {
        let f = LennardJones::with_reference(LennardJonesParams::reduced(n), None)?;
        let started = Instant::now();
        let minima: Vec<f64> = (0..args.walkers as u64)
            .into_par_iter()
            .map(|w| walker(&f, &args, args.seed.wrapping_mul(1_000_003).wrapping_add(w * 7919 + n as u64)))
            .collect();
        let best = minima.iter().copied().fold(f64::INFINITY, f64::min);
        let hits = minima.iter().filter(|&&m| (m - best).abs() < 1e-6).count();
        println!(
            "LJ{n:<3} best {best:.6}  ({hits}/{} walkers, {:.1}s)",
            args.walkers,
            started.elapsed().as_secs_f64()
        );
        match table.lennard_jones(n) {
            Some(old) if old <= best => println!("       keeping existing {old:.6}"),
            _ => table.insert_lennard_jones(n, best),
        }
    }

    if let Some(path) = &args.output {
        let header = "# Lennard-Jones cluster reference minima, reduced units (epsilon = sigma = 1).\n\
                      # Format: lj <particle_count> <energy>\n\
                      # Regenerate with: cargo run --release -p pcsa --example basin_hopping\n";
        std::fs::write(path, format!("{header}{}", table.to_text()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
