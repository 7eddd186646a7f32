//! Independent reference implementations used by the integration and
//! acceptance tests. Nothing here calls into the library's modularity,
//! aggregation or statistics code.

#![allow(dead_code)]

use weakties::graph::WeightedAdjacency;
use weakties::Graph;

/// Dense symmetric weight matrix. A self-loop of weight `w` sits on the
/// diagonal as `2w`, matching the adjacency-matrix convention.
pub struct Dense {
    pub a: Vec<Vec<f64>>,
}

impl Dense {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut a = vec![vec![0.0; n]; n];
        for &(u, v) in edges {
            a[u][v] = 1.0;
            a[v][u] = 1.0;
        }
        Dense { a }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let mut a = vec![vec![0.0; n]; n];
        for (u, row) in a.iter_mut().enumerate() {
            for &v in g.neighbors(u) {
                row[v] = 1.0;
            }
        }
        Dense { a }
    }

    pub fn from_weighted<G: WeightedAdjacency>(g: &G) -> Self {
        let n = g.node_count();
        let mut a = vec![vec![0.0; n]; n];
        for (u, row) in a.iter_mut().enumerate() {
            row[u] = 2.0 * g.self_loop(u);
            for (v, w) in g.weighted_neighbors(u) {
                row[v] += w;
            }
        }
        Dense { a }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `Q = 1/(2m) * sum_ij [A_ij - k_i k_j / (2m)] * delta(c_i, c_j)`.
    pub fn modularity(&self, labels: &[usize]) -> f64 {
        let n = self.n();
        let k: Vec<f64> = self.a.iter().map(|row| row.iter().sum()).collect();
        let two_m: f64 = k.iter().sum();
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if labels[i] == labels[j] {
                    q += self.a[i][j] - k[i] * k[j] / two_m;
                }
            }
        }
        q / two_m
    }

    /// Best modularity over every set partition of the vertices.
    pub fn exhaustive_max(&self) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for_each_set_partition(self.n(), |labels| {
            best = best.max(self.modularity(labels));
        });
        best
    }
}

/// Calls `f` once per set partition of `0..n`, encoded as a restricted
/// growth string.
pub fn for_each_set_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        let limit = if labels.is_empty() { 0 } else { max + 1 };
        for c in 0..=limit {
            labels.push(c);
            rec(labels, n, max.max(c), f);
            labels.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, 0, &mut f);
}

/// `(name, vertex count, edges)`
pub type Fixture = (&'static str, usize, Vec<(usize, usize)>);

/// Small connected graphs.
pub fn fixtures() -> Vec<Fixture> {
    let cycle = |n: usize| (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>();
    let path = |n: usize| (0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let complete = |n: usize| {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        e
    };
    let mut out = vec![
        ("triangle", 3, cycle(3)),
        ("path-4", 4, path(4)),
        (
            "two-triangle bridge",
            6,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        ),
        ("K4", 4, complete(4)),
        ("star-6", 6, (1..6).map(|v| (0, v)).collect()),
        ("cycle-5", 5, cycle(5)),
        ("cycle-6", 6, cycle(6)),
        ("cycle-8", 8, cycle(8)),
        ("path-8", 8, path(8)),
        ("K5", 5, complete(5)),
        (
            "K3,3",
            6,
            (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect(),
        ),
        ("wheel-6", 6, {
            let mut e: Vec<_> = (1..6).map(|v| (0, v)).collect();
            e.extend((0..5).map(|i| (1 + i, 1 + (i + 1) % 5)));
            e
        }),
        ("barbell K4-K4", 8, {
            let mut e = complete(4);
            e.extend(complete(4).into_iter().map(|(u, v)| (u + 4, v + 4)));
            e.push((3, 4));
            e
        }),
        ("two squares", 8, {
            let mut e = cycle(4);
            e.extend(cycle(4).into_iter().map(|(u, v)| (u + 4, v + 4)));
            e.push((0, 4));
            e
        }),
        ("ladder 2x4", 8, {
            let mut e = path(4);
            e.extend(path(4).into_iter().map(|(u, v)| (u + 4, v + 4)));
            e.extend((0..4).map(|i| (i, i + 4)));
            e
        }),
        (
            "binary tree 7",
            7,
            vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)],
        ),
        ("cube", 8, {
            let mut e = Vec::new();
            for u in 0..8usize {
                for b in 0..3 {
                    let v = u ^ (1 << b);
                    if u < v {
                        e.push((u, v));
                    }
                }
            }
            e
        }),
        ("lollipop", 7, {
            let mut e = complete(4);
            e.extend([(3, 4), (4, 5), (5, 6)]);
            e
        }),
        (
            "triangle chain",
            7,
            vec![
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 2),
                (4, 5),
                (5, 6),
                (6, 4),
            ],
        ),
        (
            "house",
            5,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)],
        ),
    ];
    out.sort_by_key(|f| f.1);
    out
}

pub fn fixture_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).expect("valid fixture")
}

/// Expected fraction and delta-method standard deviation of `X / (X + Y)`
/// for independent `X ~ Bin(nx, px)` and `Y ~ Bin(ny, py)`.
pub fn ratio_moments(nx: f64, px: f64, ny: f64, py: f64) -> (f64, f64) {
    let (ex, ey) = (nx * px, ny * py);
    let (vx, vy) = (nx * px * (1.0 - px), ny * py * (1.0 - py));
    let t = ex + ey;
    let var = (ey * ey * vx + ex * ex * vy) / t.powi(4);
    (ex / t, var.sqrt())
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn population_sd(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
}

/// Plain-entropy NMI with arithmetic-mean normalization, straight from the
/// contingency table.
pub fn nmi_oracle(a: &[usize], b: &[usize]) -> f64 {
    use std::collections::HashMap;
    let n = a.len() as f64;
    let mut joint: HashMap<(usize, usize), f64> = HashMap::new();
    let mut pa: HashMap<usize, f64> = HashMap::new();
    let mut pb: HashMap<usize, f64> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1.0 / n;
        *pa.entry(x).or_default() += 1.0 / n;
        *pb.entry(y).or_default() += 1.0 / n;
    }
    let h = |m: &HashMap<usize, f64>| -m.values().map(|p| p * p.ln()).sum::<f64>();
    let (ha, hb) = (h(&pa), h(&pb));
    if ha + hb == 0.0 {
        return 1.0;
    }
    let mi: f64 = joint
        .iter()
        .map(|(&(x, y), &p)| p * (p / (pa[&x] * pb[&y])).ln())
        .sum();
    2.0 * mi / (ha + hb)
}
