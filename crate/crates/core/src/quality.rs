//! Rank-based embedding quality measures.
//!
//! For every neighborhood size g, `Q_RX(g)` is the mean overlap between the
//! g-neighborhoods of each point in a reference space and in the embedding
//! space, normalized by g. `R_NX(g)` corrects `Q_RX` for random overlap.
//! Scalar summaries: the 1/g-weighted area under the R_NX curve, and
//! local/global averages of Q_RX split at the curve's maximum.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::distance::{
    geodesic_from_direct, pairwise_direct, DistanceMatrix, Metric, Space,
};
use crate::embed::Embedding;
use crate::error::{Error, Result};

/// Per-point neighbor orderings by ascending distance, ties by index.
#[derive(Clone, Debug)]
pub struct RankTable {
    /// Row i is the permutation of all other points, nearest first.
    pub ranks: Vec<Vec<usize>>,
    pub metric: Metric,
    pub space: Space,
}

impl RankTable {
    pub fn n(&self) -> usize {
        self.ranks.len()
    }
}

/// Sort every row of a distance matrix into a neighbor ranking.
pub fn rank_table(d: &DistanceMatrix) -> RankTable {
    let n = d.n();
    let ranks = (0..n)
        .map(|i| {
            let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            order.sort_by(|&a, &b| {
                d.d[[i, a]]
                    .partial_cmp(&d.d[[i, b]])
                    .unwrap_or(Ordering::Equal)
                    .then(a.cmp(&b))
            });
            order
        })
        .collect();
    RankTable {
        ranks,
        metric: d.metric,
        space: d.space,
    }
}

/// The Q_RX and R_NX curves over all neighborhood sizes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QualityCurve {
    /// Q_RX(g) for g = 1..n-1.
    pub qrx: Vec<f64>,
    /// R_NX(g) for g = 1..n-2.
    pub rnx: Vec<f64>,
    /// Argmax of R_NX (1-based neighborhood size), ties to the smallest g.
    pub g_max: usize,
    pub metric: Metric,
    pub space: Space,
}

impl QualityCurve {
    pub fn n(&self) -> usize {
        self.qrx.len() + 1
    }
}

/// Compute the overlap curves incrementally: both neighbor sets grow one
/// rank at a time while an overlap counter is maintained, O(n^2) overall.
pub fn rnx_curve(ref_table: &RankTable, emb_table: &RankTable) -> Result<QualityCurve> {
    let n = ref_table.n();
    if emb_table.n() != n {
        return Err(Error::invalid(format!(
            "rank table size mismatch: {} vs {}",
            n,
            emb_table.n()
        )));
    }
    if n < 4 {
        return Err(Error::invalid("quality curves need n >= 4"));
    }
    let mut overlap_sum = vec![0u64; n]; // index g, used for g = 1..n-1
    let mut in_ref = vec![false; n];
    let mut in_emb = vec![false; n];
    for i in 0..n {
        let rrow = &ref_table.ranks[i];
        let erow = &emb_table.ranks[i];
        let mut count = 0u64;
        for g in 1..n {
            let r = rrow[g - 1];
            let e = erow[g - 1];
            if r == e {
                count += 1;
            } else {
                if in_emb[r] {
                    count += 1;
                }
                if in_ref[e] {
                    count += 1;
                }
            }
            in_ref[r] = true;
            in_emb[e] = true;
            overlap_sum[g] += count;
        }
        for g in 0..n - 1 {
            in_ref[rrow[g]] = false;
            in_emb[erow[g]] = false;
        }
    }
    let nf = n as f64;
    let qrx: Vec<f64> = (1..n)
        .map(|g| overlap_sum[g] as f64 / (g as f64 * nf))
        .collect();
    let rnx: Vec<f64> = (1..n - 1)
        .map(|g| {
            let q = qrx[g - 1];
            ((nf - 1.0) * q - g as f64) / (nf - 1.0 - g as f64)
        })
        .collect();
    let mut g_max = 1usize;
    let mut best = f64::NEG_INFINITY;
    for (idx, &v) in rnx.iter().enumerate() {
        if v > best {
            best = v;
            g_max = idx + 1;
        }
    }
    Ok(QualityCurve {
        qrx,
        rnx,
        g_max,
        metric: ref_table.metric,
        space: ref_table.space,
    })
}

/// 1/g-weighted (log-scale) area under the R_NX curve; 1 iff R_NX is
/// identically 1.
pub fn auc_rnx(curve: &QualityCurve) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (idx, &r) in curve.rnx.iter().enumerate() {
        let g = (idx + 1) as f64;
        num += r / g;
        den += 1.0 / g;
    }
    num / den
}

/// Literal unweighted-numerator variant `sum R_NX(g) / sum 1/g`. Kept for
/// comparison; it does not evaluate to 1 for a perfect embedding.
pub fn auc_rnx_literal(curve: &QualityCurve) -> f64 {
    let num: f64 = curve.rnx.iter().sum();
    let den: f64 = (1..=curve.rnx.len()).map(|g| 1.0 / g as f64).sum();
    num / den
}

/// Average Q_RX on either side of the R_NX maximum:
/// `q_local = mean of Q_RX(1..g_max)`, `q_global = mean of Q_RX(g_max..n-1)`.
pub fn q_local_global(curve: &QualityCurve) -> (f64, f64) {
    let n = curve.n();
    let g_max = curve.g_max;
    let q_local = curve.qrx[..g_max].iter().sum::<f64>() / g_max as f64;
    let q_global = curve.qrx[g_max - 1..].iter().sum::<f64>() / (n - g_max) as f64;
    (q_local, q_global)
}

/// Scalar quality summary with full provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QualityReport {
    /// Identifier of the evaluated embedding (method plus hyperparameters).
    pub embedding: String,
    pub auc: f64,
    pub q_local: f64,
    pub q_global: f64,
    pub g_max: usize,
    #[serde(rename = "m")]
    pub metric: Metric,
    pub space: Space,
    pub geodesic_k: usize,
    #[serde(skip)]
    pub curve: Option<QualityCurve>,
}

/// Evaluate an embedding against a reference space.
///
/// Reference neighborhoods use the direct distances as given, or geodesic
/// distances built from them when `m` is geodesic. Embedding neighborhoods
/// always use direct distances on the embedding coordinates.
pub fn evaluate_embedding(
    ref_d: &DistanceMatrix,
    emb: &Embedding,
    m: Metric,
    geodesic_k: usize,
) -> Result<QualityReport> {
    if ref_d.metric != Metric::Direct {
        return Err(Error::invalid(
            "evaluate_embedding expects direct reference distances",
        ));
    }
    let ref_table = match m {
        Metric::Direct => rank_table(ref_d),
        Metric::Geodesic => rank_table(&geodesic_from_direct(ref_d, geodesic_k)?),
    };
    let emb_d = pairwise_direct(&emb.coords, Space::Embedding, None)?;
    let emb_table = rank_table(&emb_d);
    let curve = rnx_curve(&ref_table, &emb_table)?;
    let auc = auc_rnx(&curve);
    let (q_local, q_global) = q_local_global(&curve);
    Ok(QualityReport {
        embedding: emb.id(),
        auc,
        q_local,
        q_global,
        g_max: curve.g_max,
        metric: m,
        space: ref_d.space,
        geodesic_k,
        curve: Some(curve),
    })
}

/// Write the full curve as CSV columns (g, Q_RX, R_NX).
pub fn write_curve_csv(curve: &QualityCurve, path: &Path) -> Result<()> {
    let mut out = String::from("g,q_rx,r_nx\n");
    for (idx, &q) in curve.qrx.iter().enumerate() {
        let g = idx + 1;
        let r = curve
            .rnx
            .get(idx)
            .map(|v| v.to_string())
            .unwrap_or_default();
        let _ = writeln!(out, "{g},{q},{r}");
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Absolute Spearman rank correlation (average ranks on ties).
pub fn spearman_abs(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    pearson(&rx, &ry).abs()
}

fn average_ranks(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    sxy / (sxx * syy).sqrt()
}
