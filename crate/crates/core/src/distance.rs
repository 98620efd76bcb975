//! Direct and geodesic distance matrices.
//!
//! Direct distances are plain Euclidean distances between rows (on a uniform
//! grid this is proportional to the integral L2 distance, and all rank-based
//! measures downstream are scale invariant). Geodesic distances are
//! all-pairs shortest paths over a symmetrized k-NN graph, with disconnected
//! components bridged by minimum direct-distance edges.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[serde(rename = "dir")]
    Direct,
    #[serde(rename = "geo")]
    Geodesic,
}

impl Metric {
    pub fn label(self) -> &'static str {
        match self {
            Metric::Direct => "dir",
            Metric::Geodesic => "geo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Function,
    Parameter,
    Embedding,
}

impl Space {
    pub fn label(self) -> &'static str {
        match self {
            Space::Function => "function",
            Space::Parameter => "parameter",
            Space::Embedding => "embedding",
        }
    }
}

/// Dense symmetric nonnegative dissimilarity matrix with provenance tags.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    pub d: Array2<f64>,
    pub metric: Metric,
    pub space: Space,
    /// Neighbor count used to build the geodesic (geodesic matrices only).
    pub geodesic_k: Option<usize>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.d.nrows()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.d.ncols() != n {
            return Err(Error::invalid("distance matrix must be square"));
        }
        if n < 3 {
            return Err(Error::invalid("distance matrix needs n >= 3"));
        }
        for i in 0..n {
            if self.d[[i, i]] != 0.0 {
                return Err(Error::invalid(format!("nonzero diagonal at {i}")));
            }
            for j in (i + 1)..n {
                let v = self.d[[i, j]];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::NonFinite(format!("distance [{i},{j}] = {v}")));
                }
                if v != self.d[[j, i]] {
                    return Err(Error::invalid(format!("asymmetry at [{i},{j}]")));
                }
            }
        }
        Ok(())
    }
}

/// Euclidean distances between all row pairs, each pair computed once.
/// Optional per-column quadrature weights scale column `c` by `sqrt(w[c])`.
pub fn pairwise_direct(
    points: &Array2<f64>,
    space: Space,
    weights: Option<&[f64]>,
) -> Result<DistanceMatrix> {
    let n = points.nrows();
    let m = points.ncols();
    if n < 3 {
        return Err(Error::invalid(format!("need n >= 3 rows, got {n}")));
    }
    if points.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("points contain non-finite entries".into()));
    }
    if let Some(w) = weights {
        if w.len() != m {
            return Err(Error::invalid(format!(
                "weights length {} does not match {} columns",
                w.len(),
                m
            )));
        }
        if w.iter().any(|&v| !v.is_finite() || v < 0.0) {
            return Err(Error::invalid("weights must be finite and nonnegative"));
        }
    }
    let mut d = Array2::zeros((n, n));
    for i in 0..n {
        let ri = points.row(i);
        for j in (i + 1)..n {
            let rj = points.row(j);
            let mut acc = 0.0;
            match weights {
                Some(w) => {
                    for c in 0..m {
                        let diff = ri[c] - rj[c];
                        acc += w[c] * diff * diff;
                    }
                }
                None => {
                    for c in 0..m {
                        let diff = ri[c] - rj[c];
                        acc += diff * diff;
                    }
                }
            }
            let dist = acc.sqrt();
            d[[i, j]] = dist;
            d[[j, i]] = dist;
        }
    }
    Ok(DistanceMatrix {
        d,
        metric: Metric::Direct,
        space,
        geodesic_k: None,
    })
}

/// Symmetrized k-nearest-neighbor graph with direct-distance edge weights.
#[derive(Clone, Debug)]
pub struct NeighborGraph {
    pub n: usize,
    pub k: usize,
    /// Sorted adjacency lists (neighbor index, direct distance).
    pub adj: Vec<Vec<(usize, f64)>>,
    /// Connected-component label per vertex.
    pub component: Vec<usize>,
    pub n_components: usize,
}

/// Indices of the `k` nearest neighbors of each row (self excluded), ties in
/// distance broken by ascending index.
pub fn knn_indices(d: &Array2<f64>, k: usize) -> Vec<Vec<usize>> {
    let n = d.nrows();
    (0..n)
        .map(|i| {
            let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            order.sort_by(|&a, &b| {
                d[[i, a]]
                    .partial_cmp(&d[[i, b]])
                    .unwrap_or(Ordering::Equal)
                    .then(a.cmp(&b))
            });
            order.truncate(k);
            order
        })
        .collect()
}

fn components_of(adj: &[Vec<(usize, f64)>]) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut label = vec![usize::MAX; n];
    let mut n_components = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = n_components;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if label[u] == usize::MAX {
                    label[u] = n_components;
                    stack.push(u);
                }
            }
        }
        n_components += 1;
    }
    (label, n_components)
}

/// Build the symmetrized k-NN graph of a direct distance matrix.
pub fn knn_graph(d: &DistanceMatrix, k: usize) -> Result<NeighborGraph> {
    if d.metric != Metric::Direct {
        return Err(Error::invalid("knn_graph expects a direct distance matrix"));
    }
    let n = d.n();
    if k == 0 || k > n - 1 {
        return Err(Error::invalid(format!("k must be in [1, {}], got {k}", n - 1)));
    }
    let nn = knn_indices(&d.d, k);
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (i, neigh) in nn.iter().enumerate() {
        for &j in neigh {
            adj[i].push((j, d.d[[i, j]]));
            adj[j].push((i, d.d[[i, j]]));
        }
    }
    for list in adj.iter_mut() {
        list.sort_by(|a, b| a.0.cmp(&b.0));
        list.dedup_by_key(|e| e.0);
    }
    let (component, n_components) = components_of(&adj);
    Ok(NeighborGraph {
        n,
        k,
        adj,
        component,
        n_components,
    })
}

/// Connect a disconnected graph by inserting, for each edge of a minimum
/// spanning tree over components, the single minimum direct-distance edge
/// between the two components. Returns the number of bridge edges added.
pub fn bridge_components(graph: &mut NeighborGraph, direct: &Array2<f64>) -> usize {
    if graph.n_components <= 1 {
        return 0;
    }
    let nc = graph.n_components;
    let n = graph.n;
    // Minimum direct edge between every pair of components.
    let mut best: Vec<Vec<(f64, usize, usize)>> =
        vec![vec![(f64::INFINITY, usize::MAX, usize::MAX); nc]; nc];
    for i in 0..n {
        for j in (i + 1)..n {
            let (ci, cj) = (graph.component[i], graph.component[j]);
            if ci == cj {
                continue;
            }
            let v = direct[[i, j]];
            if v < best[ci][cj].0 {
                best[ci][cj] = (v, i, j);
                best[cj][ci] = (v, i, j);
            }
        }
    }
    // Prim's algorithm over the component graph.
    let mut in_tree = vec![false; nc];
    in_tree[0] = true;
    let mut bridges = 0;
    for _ in 1..nc {
        let mut pick = (f64::INFINITY, usize::MAX, usize::MAX, usize::MAX);
        for a in 0..nc {
            if !in_tree[a] {
                continue;
            }
            for b in 0..nc {
                if in_tree[b] {
                    continue;
                }
                let (w, i, j) = best[a][b];
                if w < pick.0 {
                    pick = (w, i, j, b);
                }
            }
        }
        let (w, i, j, b) = pick;
        in_tree[b] = true;
        graph.adj[i].push((j, w));
        graph.adj[j].push((i, w));
        bridges += 1;
    }
    for list in graph.adj.iter_mut() {
        list.sort_by(|a, b| a.0.cmp(&b.0));
        list.dedup_by_key(|e| e.0);
    }
    let (component, n_components) = components_of(&graph.adj);
    graph.component = component;
    graph.n_components = n_components;
    bridges
}

#[derive(PartialEq)]
struct HeapState {
    dist: f64,
    node: usize,
}

impl Eq for HeapState {}

impl Ord for HeapState {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance; inputs are finite so the comparison is total.
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let n = adj.len();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapState {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapState { dist: du, node: u }) = heap.pop() {
        if du > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let cand = du + w;
            if cand < dist[v] {
                dist[v] = cand;
                heap.push(HeapState { dist: cand, node: v });
            }
        }
    }
    dist
}

/// All-pairs shortest-path distances over the graph (per-source Dijkstra,
/// sources in parallel). The result is exactly symmetrized from the upper
/// triangle.
pub fn shortest_path_matrix(graph: &NeighborGraph) -> Array2<f64> {
    let n = graph.n;
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| dijkstra(&graph.adj, s))
        .collect();
    let mut d = Array2::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            d[[i, j]] = rows[i][j];
            d[[j, i]] = rows[i][j];
        }
    }
    d
}

/// Geodesic distances from a direct distance matrix via the symmetrized
/// k-NN graph, with component bridging. Also returns the bridge-edge count.
pub fn geodesic_with_diagnostics(
    d: &DistanceMatrix,
    k: usize,
) -> Result<(DistanceMatrix, usize)> {
    let mut graph = knn_graph(d, k)?;
    let bridges = bridge_components(&mut graph, &d.d);
    let geo = shortest_path_matrix(&graph);
    debug_assert!(geo.iter().all(|v| v.is_finite()));
    Ok((
        DistanceMatrix {
            d: geo,
            metric: Metric::Geodesic,
            space: d.space,
            geodesic_k: Some(k),
        },
        bridges,
    ))
}

/// Geodesic distances from a direct distance matrix.
pub fn geodesic_from_direct(d: &DistanceMatrix, k: usize) -> Result<DistanceMatrix> {
    geodesic_with_diagnostics(d, k).map(|(g, _)| g)
}

/// Kernel-width starting value for diffusion maps:
/// `eps_s = 2 * median_i (distance from i to its ceil(p*n)-th neighbor)^2`.
pub fn epsilon_compute(d: &DistanceMatrix, p: f64) -> Result<f64> {
    if d.metric != Metric::Direct {
        return Err(Error::invalid("epsilon_compute expects direct distances"));
    }
    let n = d.n();
    if !(0.0 < p && p < 1.0) {
        return Err(Error::invalid(format!("quantile fraction p={p} outside (0, 1)")));
    }
    let k = ((p * n as f64).ceil() as usize).clamp(1, n - 1);
    let mut knn_sq: Vec<f64> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| d.d[[i, j]]).collect();
            row.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
            let v = row[k - 1];
            v * v
        })
        .collect();
    knn_sq.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let median = if n % 2 == 1 {
        knn_sq[n / 2]
    } else {
        0.5 * (knn_sq[n / 2 - 1] + knn_sq[n / 2])
    };
    let eps = 2.0 * median;
    if eps <= 0.0 {
        return Err(Error::Degenerate(
            "all k-th neighbor distances are zero; kernel width undefined".into(),
        ));
    }
    Ok(eps)
}
