//! Generate, detect, classify and summarize, writing every artifact the CLI
//! would produce into one directory.
//!
//! cargo run --example full_pipeline -- [output-dir]

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use weakties::community::{louvain, LouvainConfig};
use weakties::{build_graph, io, stats, synth, ties};

fn main() -> weakties::Result<()> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("weakties-pipeline"));
    std::fs::create_dir_all(&dir)?;
    let create = |name: &str| File::create(dir.join(name)).map(BufWriter::new);

    let raw = synth::preferential_attachment(3_000, 4, 21)?;
    let edges: Vec<(u64, u64)> = raw.edges().map(|(u, v)| (u as u64, v as u64)).collect();
    let g = build_graph(&edges);
    io::write_graph(create("graph.txt")?, &g)?;

    let dendrogram = louvain(&g.graph, &LouvainConfig::with_seed(21))?;
    let p = &dendrogram.top().partition;
    io::write_partition(create("partition.txt")?, &g, p)?;

    let t = ties::classify_ties(&g.graph, p)?;
    io::write_labeling(create("labeling.txt")?, &g, &t)?;
    let counts = ties::tie_counts_per_node(&g.graph, &t)?;
    io::write_node_ties(create("node_ties.csv")?, &g, &counts)?;

    io::write_ccdf(
        create("ccdf.csv")?,
        &stats::ccdf_of_counts(g.graph.degrees())?,
    )?;
    io::write_sizes(create("sizes.csv")?, &stats::size_histogram(&p.sizes()))?;
    io::write_density(
        create("density.csv")?,
        &stats::density_map(&g.graph, p, &t)?,
    )?;
    io::write_link_fraction(
        create("linkfraction.csv")?,
        &stats::link_fraction(&g.graph, p, &t)?,
    )?;

    println!(
        "{} communities, Q = {:.4}, {:.1}% weak ties; files in {}",
        p.community_count(),
        dendrogram.top().modularity,
        100.0 * ties::tie_ratio(&t)?.weak_fraction,
        dir.display()
    );
    Ok(())
}
