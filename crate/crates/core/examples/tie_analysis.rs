//! Strong and weak ties on a heavy-tailed graph with community structure.
//!
//! cargo run --example tie_analysis

use weakties::community::{louvain, LouvainConfig};
use weakties::synth::preferential_attachment;
use weakties::ties::{
    classify_ties, degree_binned_means, tie_counts_per_node, tie_ratio, tipping_point,
};

fn main() -> weakties::Result<()> {
    let g = preferential_attachment(5_000, 3, 5)?;
    let communities = louvain(&g, &LouvainConfig::default())?;
    let p = &communities.top().partition;

    let t = classify_ties(&g, p)?;
    let ratio = tie_ratio(&t)?;
    println!(
        "{} communities; {} strong / {} weak ties ({:.1}% weak)",
        p.community_count(),
        t.strong_count(),
        t.weak_count(),
        100.0 * ratio.weak_fraction
    );

    let counts = tie_counts_per_node(&g, &t)?;
    match tipping_point(&counts) {
        Some(k) => println!("weak ties dominate above degree {k}"),
        None => println!("strong ties dominate at every degree"),
    }
    println!("degree  vertices  mean strong  mean weak");
    for bin in degree_binned_means(&counts)
        .iter()
        .filter(|b| b.vertices >= 20)
    {
        println!(
            "{:>6}  {:>8}  {:>11.2}  {:>9.2}",
            bin.degree, bin.vertices, bin.mean_strong, bin.mean_weak
        );
    }
    Ok(())
}
