use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected graph joining every pair of points within distance `radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityGraph {
    pub points: Vec<(f64, f64)>,
    pub radius: f64,
    /// Sorted neighbour lists.
    pub adjacency: Vec<Vec<usize>>,
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

pub fn proximity_graph(points: &[(f64, f64)], radius: f64) -> Result<ProximityGraph> {
    if !(radius >= 0.0) {
        return Err(Error::invalid(format!("radius must be >= 0, got {radius}")));
    }
    if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(Error::invalid("non-finite point coordinate"));
    }
    let n = points.len();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if dist(points[i], points[j]) <= radius {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    Ok(ProximityGraph { points: points.to_vec(), radius, adjacency })
}

impl ProximityGraph {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// How path length is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PathMetric {
    /// Number of edges.
    #[default]
    Hops,
    /// Sum of Euclidean edge lengths.
    Euclidean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Centrality {
    pub values: Vec<f64>,
    pub max: f64,
    pub argmax: Vec<usize>,
}

fn hop_distances(g: &ProximityGraph, src: usize) -> Vec<Option<f64>> {
    let mut d = vec![None; g.len()];
    d[src] = Some(0usize);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = d[u].unwrap();
        for &v in &g.adjacency[u] {
            if d[v].is_none() {
                d[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    d.into_iter().map(|x| x.map(|h| h as f64)).collect()
}

#[derive(PartialEq)]
struct State(f64, usize);

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn euclidean_distances(g: &ProximityGraph, src: usize) -> Vec<Option<f64>> {
    let mut d: Vec<Option<f64>> = vec![None; g.len()];
    d[src] = Some(0.0);
    let mut heap = BinaryHeap::from([State(0.0, src)]);
    while let Some(State(du, u)) = heap.pop() {
        if d[u].is_some_and(|best| du > best) {
            continue;
        }
        for &v in &g.adjacency[u] {
            let nd = du + dist(g.points[u], g.points[v]);
            if d[v].is_none_or(|best| nd < best) {
                d[v] = Some(nd);
                heap.push(State(nd, v));
            }
        }
    }
    d
}

/// Closeness within each node's connected component:
/// `(n_comp - 1) / sum of distances`, and 0 for isolated nodes.
pub fn closeness_centrality(g: &ProximityGraph, metric: PathMetric) -> Centrality {
    let values: Vec<f64> = (0..g.len())
        .map(|v| {
            let d = match metric {
                PathMetric::Hops => hop_distances(g, v),
                PathMetric::Euclidean => euclidean_distances(g, v),
            };
            let reached: Vec<f64> = d.into_iter().flatten().collect();
            let total: f64 = reached.iter().sum();
            if reached.len() <= 1 || total == 0.0 {
                0.0
            } else {
                (reached.len() - 1) as f64 / total
            }
        })
        .collect();
    let max = values.iter().copied().fold(0.0, f64::max);
    // Hop-count values are exact ratios; Euclidean sums can differ by
    // rounding along equivalent paths.
    let tol = match metric {
        PathMetric::Hops => 0.0,
        PathMetric::Euclidean => 1e-12 * max,
    };
    let argmax = (0..values.len()).filter(|&i| max - values[i] <= tol).collect();
    Centrality { values, max, argmax }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusStat {
    pub radius: f64,
    pub max: f64,
    pub argmax_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusSweep {
    pub stats: Vec<RadiusStat>,
    pub selected_radius: f64,
    pub sources: Vec<usize>,
}

/// Picks the radius with the fewest maximal-closeness nodes, then the highest
/// maximum, then the smallest radius.
pub fn sweep_radius(points: &[(f64, f64)], radii: &[f64], metric: PathMetric) -> Result<RadiusSweep> {
    if points.is_empty() {
        return Err(Error::invalid("radius sweep needs at least one point"));
    }
    if radii.is_empty() {
        return Err(Error::invalid("radius sweep needs at least one radius"));
    }
    let mut best: Option<(RadiusStat, Vec<usize>)> = None;
    let mut stats = Vec::with_capacity(radii.len());
    for &r in radii {
        let c = closeness_centrality(&proximity_graph(points, r)?, metric);
        let stat = RadiusStat { radius: r, max: c.max, argmax_count: c.argmax.len() };
        let better = match &best {
            None => true,
            Some((b, _)) => {
                stat.argmax_count < b.argmax_count
                    || (stat.argmax_count == b.argmax_count
                        && (stat.max > b.max || (stat.max == b.max && stat.radius < b.radius)))
            }
        };
        if better {
            best = Some((stat.clone(), c.argmax));
        }
        stats.push(stat);
    }
    let (b, sources) = best.expect("radii is nonempty");
    Ok(RadiusSweep { stats, selected_radius: b.radius, sources })
}
