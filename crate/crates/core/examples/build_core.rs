//! Simulates two crawls of one network (uniform and MHRW), merges them and
//! keeps only the subgraph among users that were actually visited.
//!
//! cargo run --example build_core

use weakties::ingest::{extract_visited_core, merge_samples, CrawlSample};
use weakties::synth::{
    choose_walk_seeds, ego_edges, mhrw_sample, preferential_attachment, uniform_sample,
};

fn crawl(g: &weakties::Graph, visited: &[usize]) -> CrawlSample {
    let edges = ego_edges(g, visited)
        .into_iter()
        .map(|(u, v)| (u as u64, v as u64))
        .collect();
    let (sample, _) = CrawlSample::new(edges, visited.iter().map(|&v| v as u64));
    sample
}

fn main() -> weakties::Result<()> {
    let population = preferential_attachment(20_000, 4, 1)?;

    let uni = uniform_sample(&population, 100_000, 2_000, 2)?;
    let seeds = choose_walk_seeds(&population, 28, 3)?;
    let walk = mhrw_sample(&population, &seeds, 150, 4)?;

    let a = crawl(&population, &uni.distinct_visited());
    let b = crawl(&population, &walk.distinct_visited());
    let (merged, merge) = merge_samples(&a, &b);
    println!(
        "UNI visited {}, MHRW visited {}, overlap {}, merged {}",
        a.visited().len(),
        b.visited().len(),
        merge.overlap,
        merge.visited
    );

    let (core, report) = extract_visited_core(&merged);
    println!(
        "raw edges {}, frontier edges dropped {}, duplicates {}",
        report.raw_edges, report.frontier_edges_dropped, report.duplicates_dropped
    );
    println!(
        "visited core: {} nodes, {} edges, mean degree {:.2} (population {:.2})",
        core.graph.node_count(),
        core.graph.edge_count(),
        core.graph.mean_degree(),
        population.mean_degree()
    );
    Ok(())
}
