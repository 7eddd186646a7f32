//! The statistical summaries: degree CCDF with a log-log fit, community
//! sizes, the weak-tie density map and link fractions.
//!
//! cargo run --example stats_battery

use weakties::community::{louvain, LouvainConfig};
use weakties::stats::{ccdf_of_counts, density_map, link_fraction, loglog_slope, size_histogram};
use weakties::synth::preferential_attachment;
use weakties::ties::classify_ties;

fn main() -> weakties::Result<()> {
    let g = preferential_attachment(10_000, 3, 9)?;
    let p = louvain(&g, &LouvainConfig::default())?
        .top()
        .partition
        .clone();
    let t = classify_ties(&g, &p)?;

    let degrees = ccdf_of_counts(g.degrees())?;
    println!("degree CCDF (log-binned):");
    for (x, prob) in degrees.log_binned(8).points() {
        println!("  P(k > {x:>7.1}) = {prob:.5}");
    }
    let tail: Vec<(f64, f64)> = degrees
        .points()
        .iter()
        .copied()
        .filter(|&(x, prob)| x > 0.0 && prob > 0.0)
        .collect();
    let fit = loglog_slope(&tail)?;
    println!("log-log slope {:.3} (r2 {:.3})", fit.slope, fit.r2);

    let sizes = size_histogram(&p.sizes());
    println!(
        "{} distinct community sizes, largest {}",
        sizes.len(),
        sizes.last().map_or(0, |s| s.0)
    );

    let map = density_map(&g, &p, &t)?;
    let densest = map.entries().max_by_key(|&(_, c)| c).unwrap();
    println!(
        "density map: {} cells, mass {}; densest cell sizes {:?} with {} endpoints",
        map.entries().count(),
        map.total(),
        densest.0,
        densest.1
    );

    let lf = link_fraction(&g, &p, &t)?;
    println!("size  mean weak-link fraction");
    for row in lf.by_size.iter().take(8) {
        println!("{:>4}  {:.4}", row.size, row.mean_fraction);
    }
    Ok(())
}
