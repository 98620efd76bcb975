//! Nonlinear parameter manifolds and the ambient-to-parameter rescaling.

use ndarray::Array2;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManifoldId {
    /// Linear parameter space (axis-aligned box); not a curved manifold.
    LinearBox,
    Swiss1d,
    Swiss2d,
    Helix1d,
    Scurve2d,
    Twopeaks2d,
}

impl ManifoldId {
    /// Intrinsic dimension of the manifold.
    pub fn intrinsic_dim(self) -> usize {
        match self {
            ManifoldId::LinearBox => 0,
            ManifoldId::Swiss1d | ManifoldId::Helix1d => 1,
            ManifoldId::Swiss2d | ManifoldId::Scurve2d | ManifoldId::Twopeaks2d => 2,
        }
    }

    /// Ambient dimension of the embedded manifold.
    pub fn ambient_dim(self) -> usize {
        match self {
            ManifoldId::LinearBox => 0,
            ManifoldId::Swiss1d => 2,
            _ => 3,
        }
    }
}

/// Sample `n` points uniformly in the manifold's intrinsic coordinates and
/// map them to ambient coordinates. Returns `(intrinsic, ambient)`.
pub fn sample_ambient<R: Rng>(id: ManifoldId, n: usize, rng: &mut R) -> Result<(Array2<f64>, Array2<f64>)> {
    let pi = std::f64::consts::PI;
    let d_int = id.intrinsic_dim();
    let d_amb = id.ambient_dim();
    if d_amb == 0 {
        return Err(Error::invalid("linear-box has no ambient parameterization"));
    }
    let mut intrinsic = Array2::zeros((n, d_int));
    let mut ambient = Array2::zeros((n, d_amb));
    for i in 0..n {
        match id {
            ManifoldId::Swiss1d => {
                let u = rng.random_range(1.5 * pi..4.5 * pi);
                intrinsic[[i, 0]] = u;
                ambient[[i, 0]] = u * u.cos();
                ambient[[i, 1]] = u * u.sin();
            }
            ManifoldId::Swiss2d => {
                let u = rng.random_range(1.5 * pi..4.5 * pi);
                let h = rng.random_range(0.0..20.0);
                intrinsic[[i, 0]] = u;
                intrinsic[[i, 1]] = h;
                ambient[[i, 0]] = u * u.cos();
                ambient[[i, 1]] = h;
                ambient[[i, 2]] = u * u.sin();
            }
            ManifoldId::Helix1d => {
                // Closed 1-D loop in 3-D.
                let u = rng.random_range(0.0..1.0);
                intrinsic[[i, 0]] = u;
                ambient[[i, 0]] = (2.0 * pi * u).cos();
                ambient[[i, 1]] = (2.0 * pi * u).sin();
                ambient[[i, 2]] = (4.0 * pi * u).cos();
            }
            ManifoldId::Scurve2d => {
                let u = rng.random_range(-1.5 * pi..1.5 * pi);
                let h = rng.random_range(0.0..2.0);
                intrinsic[[i, 0]] = u;
                intrinsic[[i, 1]] = h;
                ambient[[i, 0]] = u.sin();
                ambient[[i, 1]] = h;
                ambient[[i, 2]] = u.signum() * (u.cos() - 1.0);
            }
            ManifoldId::Twopeaks2d => {
                let u = rng.random_range(-1.0..1.0);
                let v = rng.random_range(-1.0..1.0);
                intrinsic[[i, 0]] = u;
                intrinsic[[i, 1]] = v;
                ambient[[i, 0]] = u;
                ambient[[i, 1]] = v;
                ambient[[i, 2]] = peak(u, v);
            }
            ManifoldId::LinearBox => unreachable!(),
        }
    }
    Ok((intrinsic, ambient))
}

fn peak(u: f64, v: f64) -> f64 {
    let lobe = |cu: f64| (-(((u - cu) * (u - cu)) + v * v) / 0.08).exp();
    lobe(-0.5) + lobe(0.5)
}

/// Affinely rescale each column into `[lo, hi]` using the sample min/max.
/// Returns the per-column raw `(min, max)` ranges used for the map.
pub fn rescale_columns(values: &mut Array2<f64>, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>> {
    let mut ranges = Vec::with_capacity(values.ncols());
    for mut col in values.columns_mut() {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in col.iter() {
            min = min.min(v);
            max = max.max(v);
        }
        if !(max > min) {
            return Err(Error::Degenerate(format!(
                "cannot rescale a constant column (min = max = {min})"
            )));
        }
        let scale = (hi - lo) / (max - min);
        for v in col.iter_mut() {
            *v = lo + (*v - min) * scale;
        }
        ranges.push((min, max));
    }
    Ok(ranges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rescale_hits_bounds_and_preserves_order() {
        let mut m = Array2::from_shape_vec((5, 1), vec![3.0, -1.0, 0.5, 7.0, 2.0]).unwrap();
        let ranges = rescale_columns(&mut m, 0.5, 3.0).unwrap();
        assert_eq!(ranges, vec![(-1.0, 7.0)]);
        let col: Vec<f64> = m.column(0).to_vec();
        assert_eq!(col.iter().cloned().fold(f64::INFINITY, f64::min), 0.5);
        assert_eq!(col.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 3.0);
        // Order of the original values is preserved.
        let mut idx: Vec<usize> = (0..5).collect();
        idx.sort_by(|&a, &b| col[a].partial_cmp(&col[b]).unwrap());
        assert_eq!(idx, vec![1, 2, 4, 0, 3]);
    }

    #[test]
    fn rescale_rejects_constant_column() {
        let mut m = Array2::from_elem((4, 1), 2.0);
        assert!(rescale_columns(&mut m, 0.5, 3.0).is_err());
    }

    #[test]
    fn ambient_dims_match_declaration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for id in [
            ManifoldId::Swiss1d,
            ManifoldId::Swiss2d,
            ManifoldId::Helix1d,
            ManifoldId::Scurve2d,
            ManifoldId::Twopeaks2d,
        ] {
            let (intr, amb) = sample_ambient(id, 20, &mut rng).unwrap();
            assert_eq!(intr.ncols(), id.intrinsic_dim());
            assert_eq!(amb.ncols(), id.ambient_dim());
            assert_eq!(amb.nrows(), 20);
        }
    }

    #[test]
    fn helix_lies_on_unit_circle_before_rescale() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (_, amb) = sample_ambient(ManifoldId::Helix1d, 200, &mut rng).unwrap();
        for i in 0..200 {
            let r2 = amb[[i, 0]] * amb[[i, 0]] + amb[[i, 1]] * amb[[i, 1]];
            assert!((r2 - 1.0).abs() < 1e-12);
        }
    }
}
