//! Distribution statistics over degrees, communities and weak ties.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ties::{Tie, TieLabeling};

/// Empirical complementary CDF: for each distinct sample value `x`, the
/// fraction of samples strictly greater than `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CcdfSeries {
    points: Vec<(f64, f64)>,
}

impl CcdfSeries {
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// `Pr(X > x)` read off the step function.
    pub fn eval(&self, x: f64) -> f64 {
        match self.points.partition_point(|&(px, _)| px <= x) {
            0 => 1.0,
            i => self.points[i - 1].1,
        }
    }

    /// Samples the step function at `bins + 1` logarithmically spaced points
    /// between the smallest positive and the largest value. Used to thin out
    /// plots; the raw series stays the reference.
    pub fn log_binned(&self, bins: usize) -> CcdfSeries {
        let positive: Vec<f64> = self
            .points
            .iter()
            .map(|&(x, _)| x)
            .filter(|&x| x > 0.0)
            .collect();
        let (Some(&lo), Some(&hi)) = (positive.first(), positive.last()) else {
            return CcdfSeries { points: Vec::new() };
        };
        if bins == 0 || lo == hi {
            return CcdfSeries {
                points: vec![(lo, self.eval(lo))],
            };
        }
        let (llo, lhi) = (lo.ln(), hi.ln());
        let mut points: Vec<(f64, f64)> = (0..=bins)
            .map(|i| {
                let x = if i == bins {
                    hi
                } else {
                    (llo + (lhi - llo) * i as f64 / bins as f64).exp()
                };
                (x, self.eval(x))
            })
            .collect();
        points.dedup_by(|a, b| a.0 == b.0);
        CcdfSeries { points }
    }
}

pub fn ccdf(samples: &[f64]) -> Result<CcdfSeries> {
    if samples.is_empty() {
        return Err(Error::Empty("ccdf of no samples"));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::invalid("ccdf sample is NaN"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    let n = sorted.len() as f64;
    let mut points = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        points.push((x, (sorted.len() - j) as f64 / n));
        i = j;
    }
    Ok(CcdfSeries { points })
}

pub fn ccdf_of_counts(samples: impl IntoIterator<Item = usize>) -> Result<CcdfSeries> {
    let samples: Vec<f64> = samples.into_iter().map(|x| x as f64).collect();
    ccdf(&samples)
}

/// Cardinality of each community, indexed by community id.
pub fn community_sizes(p: &Partition) -> Vec<usize> {
    p.sizes()
}

/// `(size, number of communities of that size)`, ascending by size.
pub fn size_histogram(sizes: &[usize]) -> Vec<(usize, usize)> {
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in sizes {
        *hist.entry(s).or_default() += 1;
    }
    hist.into_iter().collect()
}

fn check_consistent(g: &Graph, p: &Partition, t: &TieLabeling) -> Result<()> {
    if p.len() != g.node_count() {
        return Err(Error::PartitionMismatch {
            expected: g.node_count(),
            found: p.len(),
        });
    }
    if t.len() != g.edge_count() {
        return Err(Error::LabelingMismatch(format!(
            "{} labels for {} edges",
            t.len(),
            g.edge_count()
        )));
    }
    for ((u, v), &tie) in g.edges().zip(t.labels()) {
        let same = p.community_of(u) == p.community_of(v);
        if same != (tie == Tie::Strong) {
            return Err(Error::LabelingMismatch(format!(
                "edge {u}-{v} labeled {tie} against the partition"
            )));
        }
    }
    Ok(())
}

/// Weak-tie counts keyed by the sizes of the two communities they join.
/// Every weak tie is entered once per orientation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DensityMap {
    entries: BTreeMap<(usize, usize), u64>,
}

impl DensityMap {
    pub fn get(&self, s1: usize, s2: usize) -> u64 {
        self.entries.get(&(s1, s2)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(a, b), &n)| self.get(b, a) == n)
    }
}

pub fn density_map(g: &Graph, p: &Partition, t: &TieLabeling) -> Result<DensityMap> {
    check_consistent(g, p, t)?;
    let sizes = p.sizes();
    let mut map = DensityMap::default();
    for ((u, v), &tie) in g.edges().zip(t.labels()) {
        if tie == Tie::Weak {
            let (su, sv) = (sizes[p.community_of(u)], sizes[p.community_of(v)]);
            *map.entries.entry((su, sv)).or_default() += 1;
            *map.entries.entry((sv, su)).or_default() += 1;
        }
    }
    Ok(map)
}

pub const LINK_FRACTION_DEFINITION: &str = "per community: weak ties with at least one endpoint \
in the community divided by all weak ties; per size: mean over communities of that size \
incident to at least one weak tie";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CommunityLinkFraction {
    pub community: usize,
    pub size: usize,
    pub weak_incident: usize,
    pub fraction: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SizeLinkFraction {
    pub size: usize,
    pub mean_fraction: f64,
    pub community_count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkFraction {
    /// Every community, including those without weak ties.
    pub per_community: Vec<CommunityLinkFraction>,
    /// Size-grouped means over communities with a non-zero fraction.
    pub by_size: Vec<SizeLinkFraction>,
}

/// Share of all weak ties touching each community, and its mean per
/// community size. See [`LINK_FRACTION_DEFINITION`].
pub fn link_fraction(g: &Graph, p: &Partition, t: &TieLabeling) -> Result<LinkFraction> {
    check_consistent(g, p, t)?;
    if t.weak_count() == 0 {
        return Err(Error::NoWeakTies("link fraction is undefined"));
    }
    let sizes = p.sizes();
    let mut incident = vec![0usize; p.community_count()];
    for ((u, v), &tie) in g.edges().zip(t.labels()) {
        if tie == Tie::Weak {
            // endpoints lie in different communities
            incident[p.community_of(u)] += 1;
            incident[p.community_of(v)] += 1;
        }
    }
    let total = t.weak_count() as f64;
    let per_community: Vec<_> = incident
        .iter()
        .enumerate()
        .map(|(c, &k)| CommunityLinkFraction {
            community: c,
            size: sizes[c],
            weak_incident: k,
            fraction: k as f64 / total,
        })
        .collect();
    let mut groups: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for row in per_community.iter().filter(|r| r.weak_incident > 0) {
        let e = groups.entry(row.size).or_default();
        e.0 += row.fraction;
        e.1 += 1;
    }
    let by_size = groups
        .into_iter()
        .map(|(size, (sum, n))| SizeLinkFraction {
            size,
            mean_fraction: sum / n as f64,
            community_count: n,
        })
        .collect();
    Ok(LinkFraction {
        per_community,
        by_size,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares of `ln y` on `ln x`. The intercept is in natural-log
/// units, so `y ~ exp(intercept) * x^slope`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<PowerFit> {
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::invalid("log-log fit needs positive coordinates"));
    }
    if points.len() < 2 {
        return Err(Error::invalid("log-log fit needs at least two points"));
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(lx, ly) in &logs {
        let (dx, dy) = (lx - mean_x, ly - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::invalid("log-log fit needs two distinct x values"));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|&(lx, ly)| {
            let r = ly - (intercept + slope * lx);
            r * r
        })
        .sum();
    // a constant y is fitted exactly
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(PowerFit {
        slope,
        intercept,
        r2,
    })
}

/// Normalized mutual information with arithmetic-mean normalization,
/// `2 I(X;Y) / (H(X) + H(Y))`. Two single-community partitions score 1.
pub fn nmi(a: &Partition, b: &Partition) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::PartitionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Empty("partitions cover no vertices"));
    }
    let n = a.len() as f64;
    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..a.len() {
        *joint
            .entry((a.community_of(v), b.community_of(v)))
            .or_default() += 1;
    }
    let (sa, sb) = (a.sizes(), b.sizes());
    let entropy = |sizes: &[usize]| -> f64 {
        sizes
            .iter()
            .map(|&s| {
                let q = s as f64 / n;
                -q * q.ln()
            })
            .sum()
    };
    let (ha, hb) = (entropy(&sa), entropy(&sb));
    if ha + hb == 0.0 {
        return Ok(1.0);
    }
    let mut mutual = 0.0;
    for (&(i, j), &nij) in &joint {
        let nij = nij as f64;
        mutual += nij / n * (n * nij / (sa[i] as f64 * sb[j] as f64)).ln();
    }
    Ok((2.0 * mutual / (ha + hb)).clamp(0.0, 1.0))
}
