//! Degree bias of three samplers on a heavy-tailed graph: uniform rejection
//! over a sparse id space, Metropolis-Hastings walks and plain random walks.
//!
//! cargo run --example sampling_bias

use weakties::synth::{
    bias_report, choose_walk_seeds, mhrw_sample, preferential_attachment, random_walk_sample,
    uniform_sample, DEFAULT_MHRW_SEEDS,
};

fn main() -> weakties::Result<()> {
    let g = preferential_attachment(5_000, 3, 11)?;
    let seeds = choose_walk_seeds(&g, DEFAULT_MHRW_SEEDS, 12)?;

    let traces = [
        ("uniform", uniform_sample(&g, 50_000, 1_000, 13)?),
        ("mhrw", mhrw_sample(&g, &seeds, 5_000, 14)?),
        ("random walk", random_walk_sample(&g, &seeds, 5_000, 14)?),
    ];
    println!("population mean degree {:.3}", g.mean_degree());
    for (name, trace) in &traces {
        let b = bias_report(&g, trace)?;
        println!(
            "{name:>11}: {:>7} samples, acceptance {:.3}, mean degree {:>7.3}, bias {:+6.1}%",
            b.samples,
            trace.acceptance_rate(),
            b.sample_mean_degree,
            100.0 * b.relative_bias
        );
    }
    Ok(())
}
