//! Manifold learning toolkit for functional data.
//!
//! The crate covers the full pipeline for studying nonlinear dimension
//! reduction on discretized functions:
//!
//! * [`synthdata`] — synthetic functional datasets generated from linear or
//!   nonlinear parameter manifolds through amplitude and warping models.
//! * [`distance`] — direct (Euclidean/L2) and geodesic (k-NN shortest path)
//!   distance matrices, plus the diffusion-map kernel width heuristic.
//! * [`embed`] — MDS, ISOMAP, diffusion maps, t-SNE and UMAP, all consuming
//!   a precomputed distance matrix.
//! * [`quality`] — rank-based embedding quality (Q_RX/R_NX curves, AUC,
//!   local/global summaries) with direct or geodesic reference neighborhoods.
//! * [`tune`] — deterministic grid-search tuning of the embedding methods
//!   against a chosen quality objective.
//!
//! All operations are pure functions of their inputs and an explicit seed;
//! repeated runs produce bitwise-identical results independent of the
//! worker count.

pub mod distance;
pub mod embed;
pub mod error;
pub mod io;
pub mod quality;
pub mod synthdata;
pub mod tune;

pub use error::{Error, Result};
