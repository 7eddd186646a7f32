//! Text and CSV file formats.
//!
//! Vertex ids in every file are the original ids of the graph file, never
//! the dense internal ids.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{build_graph, BuiltGraph};
use crate::ingest::parse_edge_list;
use crate::stats::{CcdfSeries, DensityMap, LinkFraction, PowerFit};
use crate::synth::SampleTrace;
use crate::ties::{DegreeBin, NodeTies, Tie, TieLabeling};

/// Formats a real with 12 significant digits, `%.12g` style: fixed notation
/// for exponents in `[-4, 12)`, scientific otherwise, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let fixed = format!("{:.*}", (11 - exp) as usize, x);
    trim_fraction(&fixed).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

pub fn read_graph(path: &Path) -> Result<BuiltGraph> {
    let edges = parse_edge_list(open(path)?)?;
    Ok(build_graph(&edges))
}

/// Edge list in canonical order, one `u v` line per edge.
pub fn write_graph<W: Write>(mut w: W, g: &BuiltGraph) -> Result<()> {
    writeln!(
        w,
        "# nodes {} edges {}",
        g.graph.node_count(),
        g.graph.edge_count()
    )?;
    for (u, v) in g.labeled_edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

fn data_lines<R: BufRead>(r: R) -> impl Iterator<Item = Result<(usize, String)>> {
    r.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let t = l.trim();
            (!t.is_empty() && !t.starts_with('#')).then(|| Ok((i + 1, t.to_string())))
        }
    })
}

fn field<'a, T: std::str::FromStr>(
    fields: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<T> {
    let f = fields.next().ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    f.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} {f:?}"),
    })
}

fn vertex(g: &BuiltGraph, label: u64, line: usize) -> Result<usize> {
    g.index_of(label).ok_or_else(|| Error::Parse {
        line,
        message: format!("vertex {label} is not in the graph"),
    })
}

/// `vertex community` lines.
pub fn write_partition<W: Write>(mut w: W, g: &BuiltGraph, p: &Partition) -> Result<()> {
    for (v, &label) in g.labels().iter().enumerate() {
        writeln!(w, "{label} {}", p.community_of(v))?;
    }
    Ok(())
}

/// Reads `vertex community` lines; every graph vertex must appear exactly
/// once. Community labels are arbitrary integers and get renumbered densely.
pub fn read_partition<R: BufRead>(r: R, g: &BuiltGraph) -> Result<Partition> {
    read_partition_impl(r, g, false).map(|(p, _)| p)
}

/// Like [`read_partition`] but skips vertices that are not in the graph, so a
/// ground truth for a larger vertex set can be restricted to a core. Returns
/// the number of skipped lines.
pub fn read_ground_truth<R: BufRead>(r: R, g: &BuiltGraph) -> Result<(Partition, usize)> {
    read_partition_impl(r, g, true)
}

fn read_partition_impl<R: BufRead>(
    r: R,
    g: &BuiltGraph,
    skip_unknown: bool,
) -> Result<(Partition, usize)> {
    let n = g.graph.node_count();
    let mut skipped = 0;
    let mut labels: Vec<Option<u64>> = vec![None; n];
    let mut seen = 0;
    for item in data_lines(r) {
        let (line, text) = item?;
        let mut fields = text.split_whitespace();
        let label: u64 = field(&mut fields, line, "vertex")?;
        let community: u64 = field(&mut fields, line, "community")?;
        if skip_unknown && g.index_of(label).is_none() {
            skipped += 1;
            continue;
        }
        let v = vertex(g, label, line)?;
        if labels[v].replace(community).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("vertex {label} assigned twice"),
            });
        }
        seen += 1;
    }
    if seen != n {
        return Err(Error::PartitionMismatch {
            expected: n,
            found: seen,
        });
    }
    let labels: Vec<u64> = labels.into_iter().map(|c| c.expect("all seen")).collect();
    Ok((Partition::from_labels(&labels), skipped))
}

/// `u v S|W` lines in canonical edge order.
pub fn write_labeling<W: Write>(mut w: W, g: &BuiltGraph, t: &TieLabeling) -> Result<()> {
    for ((u, v), tie) in g.labeled_edges().zip(t.labels()) {
        writeln!(w, "{u} {v} {tie}")?;
    }
    Ok(())
}

/// Reads `u v S|W` lines in any order and orientation; every edge of the
/// graph must be labeled exactly once.
pub fn read_labeling<R: BufRead>(r: R, g: &BuiltGraph) -> Result<TieLabeling> {
    let index: HashMap<(usize, usize), usize> =
        g.graph.edges().enumerate().map(|(i, e)| (e, i)).collect();
    let mut labels: Vec<Option<Tie>> = vec![None; index.len()];
    for item in data_lines(r) {
        let (line, text) = item?;
        let mut fields = text.split_whitespace();
        let u = vertex(g, field(&mut fields, line, "vertex")?, line)?;
        let v = vertex(g, field(&mut fields, line, "vertex")?, line)?;
        let sym: String = field(&mut fields, line, "tie label")?;
        let tie = Tie::from_symbol(&sym).ok_or_else(|| Error::Parse {
            line,
            message: format!("tie label must be S or W, got {sym:?}"),
        })?;
        let i = *index
            .get(&(u.min(v), u.max(v)))
            .ok_or_else(|| Error::Parse {
                line,
                message: "edge is not in the graph".into(),
            })?;
        if labels[i].replace(tie).is_some() {
            return Err(Error::Parse {
                line,
                message: "edge labeled twice".into(),
            });
        }
    }
    let missing = labels.iter().filter(|l| l.is_none()).count();
    if missing > 0 {
        return Err(Error::LabelingMismatch(format!(
            "{missing} edges unlabeled"
        )));
    }
    Ok(TieLabeling::from_labels(
        labels.into_iter().map(|l| l.expect("checked")).collect(),
    ))
}

pub fn write_ccdf<W: Write>(mut w: W, c: &CcdfSeries) -> Result<()> {
    writeln!(w, "x,prob")?;
    for &(x, p) in c.points() {
        writeln!(w, "{},{}", format_real(x), format_real(p))?;
    }
    Ok(())
}

pub fn write_sizes<W: Write>(mut w: W, histogram: &[(usize, usize)]) -> Result<()> {
    writeln!(w, "size,count")?;
    for &(s, n) in histogram {
        writeln!(w, "{s},{n}")?;
    }
    Ok(())
}

pub fn write_density<W: Write>(mut w: W, map: &DensityMap) -> Result<()> {
    writeln!(w, "s1,s2,count")?;
    for ((a, b), n) in map.entries() {
        writeln!(w, "{a},{b},{n}")?;
    }
    Ok(())
}

pub fn write_link_fraction<W: Write>(mut w: W, lf: &LinkFraction) -> Result<()> {
    writeln!(w, "size,mean_fraction,community_count")?;
    for row in &lf.by_size {
        writeln!(
            w,
            "{},{},{}",
            row.size,
            format_real(row.mean_fraction),
            row.community_count
        )?;
    }
    Ok(())
}

pub fn write_link_fraction_communities<W: Write>(mut w: W, lf: &LinkFraction) -> Result<()> {
    writeln!(w, "community,size,weak_incident,fraction")?;
    for row in &lf.per_community {
        writeln!(
            w,
            "{},{},{},{}",
            row.community,
            row.size,
            row.weak_incident,
            format_real(row.fraction)
        )?;
    }
    Ok(())
}

pub fn write_fit<W: Write>(mut w: W, fit: &PowerFit) -> Result<()> {
    writeln!(w, "slope,intercept,r2")?;
    writeln!(
        w,
        "{},{},{}",
        format_real(fit.slope),
        format_real(fit.intercept),
        format_real(fit.r2)
    )?;
    Ok(())
}

pub fn write_node_ties<W: Write>(mut w: W, g: &BuiltGraph, counts: &[NodeTies]) -> Result<()> {
    writeln!(w, "vertex,degree,strong,weak")?;
    for (v, c) in counts.iter().enumerate() {
        writeln!(w, "{},{},{},{}", g.label(v), c.degree(), c.strong, c.weak)?;
    }
    Ok(())
}

pub fn write_degree_bins<W: Write>(mut w: W, bins: &[DegreeBin]) -> Result<()> {
    writeln!(w, "degree,vertices,mean_strong,mean_weak")?;
    for b in bins {
        writeln!(
            w,
            "{},{},{},{}",
            b.degree,
            b.vertices,
            format_real(b.mean_strong),
            format_real(b.mean_weak)
        )?;
    }
    Ok(())
}

/// `step,proposed,accepted,current`. Walk positions are written as original
/// vertex ids; a uniform draw that hit a hole has an empty `current`.
pub fn write_trace<W: Write>(mut w: W, g: &BuiltGraph, trace: &SampleTrace) -> Result<()> {
    use crate::synth::SampleMethod;
    writeln!(w, "step,proposed,accepted,current")?;
    for s in &trace.steps {
        let proposed = match trace.method {
            SampleMethod::UniformRejection => s.proposed,
            _ => g.label(s.proposed as usize),
        };
        let current = s
            .current
            .map(|v| g.label(v).to_string())
            .unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{}",
            s.step,
            proposed,
            u8::from(s.accepted),
            current
        )?;
    }
    Ok(())
}

/// One id per line.
pub fn write_ids<W: Write>(mut w: W, ids: impl IntoIterator<Item = u64>) -> Result<()> {
    for id in ids {
        writeln!(w, "{id}")?;
    }
    Ok(())
}
