//! Synthetic functional datasets on known parameter manifolds.
//!
//! A dataset is generated in two stages: parameter vectors are drawn from a
//! linear box or from one of five nonlinear manifolds, then mapped through
//! the composition `x(t) = b(w(t; p); a)` of a domain warping and the
//! two-peak amplitude model, evaluated on a shared grid over [0, 1].

mod beta;
mod manifolds;
mod model;

pub use beta::{ln_gamma, regularized_incomplete_beta};
pub use manifolds::{rescale_columns, sample_ambient, ManifoldId};
pub use model::{amplitude_curve, warp, WarpSpec};

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Names of the eight model parameters a setting can activate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamName {
    A1,
    A2,
    A3,
    A4,
    P1,
    P2,
    P3,
    P4,
}

impl ParamName {
    pub fn label(self) -> &'static str {
        match self {
            ParamName::A1 => "a1",
            ParamName::A2 => "a2",
            ParamName::A3 => "a3",
            ParamName::A4 => "a4",
            ParamName::P1 => "p1",
            ParamName::P2 => "p2",
            ParamName::P3 => "p3",
            ParamName::P4 => "p4",
        }
    }

    /// Valid sampling range of the parameter.
    pub fn range(self) -> (f64, f64) {
        match self {
            ParamName::P1 => (0.01, 0.99),
            _ => (0.5, 3.0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamSpace {
    Linear,
    Manifold(ManifoldId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variation {
    Amplitude,
    Phase,
    Coupled,
    Independent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WarpKind {
    Identity,
    Linear,
    Power,
    BetaCdf,
}

/// One row of the simulation-settings table: which parameters vary, over
/// which space, and which warping applies.
#[derive(Clone, Copy, Debug)]
pub struct SettingSpec {
    pub name: &'static str,
    pub df: usize,
    pub space: ParamSpace,
    pub variation: Variation,
    /// Per sampled column, the parameter slot(s) it feeds. A column feeding
    /// two slots expresses a coupled setting (c1-l: a1 = p2).
    pub active: &'static [&'static [ParamName]],
    pub warp: WarpKind,
}

use ParamName::*;

/// Registry of the eleven simulation settings.
pub const SETTINGS: [SettingSpec; 11] = [
    SettingSpec {
        name: "a1-l",
        df: 1,
        space: ParamSpace::Linear,
        variation: Variation::Amplitude,
        active: &[&[A1]],
        warp: WarpKind::Identity,
    },
    SettingSpec {
        name: "p1-l",
        df: 1,
        space: ParamSpace::Linear,
        variation: Variation::Phase,
        active: &[&[P1]],
        warp: WarpKind::Linear,
    },
    SettingSpec {
        name: "c1-l",
        df: 1,
        space: ParamSpace::Linear,
        variation: Variation::Coupled,
        active: &[&[A1, P2]],
        warp: WarpKind::Power,
    },
    SettingSpec {
        name: "a2-l",
        df: 2,
        space: ParamSpace::Linear,
        variation: Variation::Amplitude,
        active: &[&[A2], &[A3]],
        warp: WarpKind::Identity,
    },
    SettingSpec {
        name: "p2-l",
        df: 2,
        space: ParamSpace::Linear,
        variation: Variation::Phase,
        active: &[&[P3], &[P4]],
        warp: WarpKind::BetaCdf,
    },
    SettingSpec {
        name: "i2-l",
        df: 2,
        space: ParamSpace::Linear,
        variation: Variation::Independent,
        active: &[&[A1], &[P2]],
        warp: WarpKind::Power,
    },
    SettingSpec {
        name: "a2-sr",
        df: 2,
        space: ParamSpace::Manifold(ManifoldId::Swiss1d),
        variation: Variation::Amplitude,
        active: &[&[A1], &[A2]],
        warp: WarpKind::Identity,
    },
    SettingSpec {
        name: "a3-hx",
        df: 3,
        space: ParamSpace::Manifold(ManifoldId::Helix1d),
        variation: Variation::Amplitude,
        active: &[&[A1], &[A2], &[A3]],
        warp: WarpKind::Identity,
    },
    SettingSpec {
        name: "a3-sr",
        df: 3,
        space: ParamSpace::Manifold(ManifoldId::Swiss2d),
        variation: Variation::Amplitude,
        active: &[&[A2], &[A3], &[A4]],
        warp: WarpKind::Identity,
    },
    SettingSpec {
        name: "a3-sc",
        df: 3,
        space: ParamSpace::Manifold(ManifoldId::Scurve2d),
        variation: Variation::Amplitude,
        active: &[&[A2], &[A3], &[A4]],
        warp: WarpKind::Identity,
    },
    SettingSpec {
        name: "a3-tp",
        df: 3,
        space: ParamSpace::Manifold(ManifoldId::Twopeaks2d),
        variation: Variation::Amplitude,
        active: &[&[A2], &[A3], &[A4]],
        warp: WarpKind::Identity,
    },
];

/// Look up a setting by name.
pub fn setting(name: &str) -> Result<&'static SettingSpec> {
    SETTINGS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSetting(name.to_string()))
}

/// Position of a setting in the registry (stable across runs).
pub fn setting_index(name: &str) -> Result<usize> {
    SETTINGS
        .iter()
        .position(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSetting(name.to_string()))
}

/// Ground-truth parameter vectors plus manifold metadata.
#[derive(Clone, Debug)]
pub struct ParamSample {
    /// n x q matrix of parameter coordinates.
    pub values: Array2<f64>,
    pub manifold: ManifoldId,
    /// Per column, the parameter slot(s) the column feeds.
    pub active: Vec<Vec<ParamName>>,
    /// Intrinsic manifold coordinates used by the sampler (nonlinear only).
    pub intrinsic: Option<Array2<f64>>,
    /// Pre-rescale ambient (min, max) per column (nonlinear only).
    pub raw_ranges: Option<Vec<(f64, f64)>>,
}

impl ParamSample {
    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn q(&self) -> usize {
        self.values.ncols()
    }

    /// Column labels for CSV headers; coupled columns join slot names with '='.
    pub fn column_labels(&self) -> Vec<String> {
        self.active
            .iter()
            .map(|slots| {
                slots
                    .iter()
                    .map(|p| p.label())
                    .collect::<Vec<_>>()
                    .join("=")
            })
            .collect()
    }
}

/// Functional observations evaluated on a shared grid.
#[derive(Clone, Debug)]
pub struct FunctionalDataset {
    /// m strictly increasing points in [0, 1].
    pub grid: Vec<f64>,
    /// n x m matrix of function evaluations.
    pub values: Array2<f64>,
    /// Setting name or "external".
    pub provenance: String,
}

impl FunctionalDataset {
    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn m(&self) -> usize {
        self.values.ncols()
    }

    pub fn validate(&self) -> Result<()> {
        if self.m() < 2 {
            return Err(Error::invalid("dataset needs at least 2 grid points"));
        }
        if self.n() < 3 {
            return Err(Error::invalid("dataset needs at least 3 observations"));
        }
        if self.grid.len() != self.m() {
            return Err(Error::invalid(format!(
                "grid length {} does not match value columns {}",
                self.grid.len(),
                self.m()
            )));
        }
        for w in self.grid.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::invalid(format!(
                    "grid must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if self.grid.iter().any(|v| !v.is_finite())
            || self.values.iter().any(|v| !v.is_finite())
        {
            return Err(Error::NonFinite("dataset contains non-finite values".into()));
        }
        Ok(())
    }
}

/// Draw i.i.d. uniform parameters for a linear-space setting.
pub fn sample_linear_params(setting: &SettingSpec, n: usize, seed: u64) -> Result<ParamSample> {
    if setting.space != ParamSpace::Linear {
        return Err(Error::invalid(format!(
            "setting {} does not have a linear parameter space",
            setting.name
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = setting.active.len();
    let mut values = Array2::zeros((n, q));
    for (c, slots) in setting.active.iter().enumerate() {
        let (lo, hi) = slots[0].range();
        for i in 0..n {
            values[[i, c]] = rng.random_range(lo..hi);
        }
    }
    Ok(ParamSample {
        values,
        manifold: ManifoldId::LinearBox,
        active: setting.active.iter().map(|s| s.to_vec()).collect(),
        intrinsic: None,
        raw_ranges: None,
    })
}

/// Draw parameters uniformly on a nonlinear manifold and rescale each
/// ambient coordinate into the valid parameter box [0.5, 3].
pub fn sample_manifold_params(setting: &SettingSpec, n: usize, seed: u64) -> Result<ParamSample> {
    let id = match setting.space {
        ParamSpace::Manifold(id) => id,
        ParamSpace::Linear => {
            return Err(Error::invalid(format!(
                "setting {} does not have a manifold parameter space",
                setting.name
            )))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (intrinsic, mut ambient) = sample_ambient(id, n, &mut rng)?;
    debug_assert_eq!(ambient.ncols(), setting.active.len());
    let raw_ranges = rescale_columns(&mut ambient, 0.5, 3.0)?;
    Ok(ParamSample {
        values: ambient,
        manifold: id,
        active: setting.active.iter().map(|s| s.to_vec()).collect(),
        intrinsic: Some(intrinsic),
        raw_ranges: Some(raw_ranges),
    })
}

/// Dispatch on the setting's parameter-space kind.
pub fn sample_params(setting: &SettingSpec, n: usize, seed: u64) -> Result<ParamSample> {
    match setting.space {
        ParamSpace::Linear => sample_linear_params(setting, n, seed),
        ParamSpace::Manifold(_) => sample_manifold_params(setting, n, seed),
    }
}

/// Assemble the amplitude vector and warp for one parameter row.
fn assemble_row(setting: &SettingSpec, row: &[f64]) -> ([f64; 4], WarpSpec) {
    let mut a = [1.0, 1.0, 1.0, 0.0];
    // Neutral warp-parameter defaults; the registry always activates the
    // parameters its warp kind consumes.
    let mut p = [0.5, 1.0, 1.0, 1.0];
    for (c, slots) in setting.active.iter().enumerate() {
        for slot in slots.iter() {
            match slot {
                ParamName::A1 => a[0] = row[c],
                ParamName::A2 => a[1] = row[c],
                ParamName::A3 => a[2] = row[c],
                ParamName::A4 => a[3] = row[c],
                ParamName::P1 => p[0] = row[c],
                ParamName::P2 => p[1] = row[c],
                ParamName::P3 => p[2] = row[c],
                ParamName::P4 => p[3] = row[c],
            }
        }
    }
    let warp = match setting.warp {
        WarpKind::Identity => WarpSpec::Identity,
        WarpKind::Linear => WarpSpec::Linear { p1: p[0] },
        WarpKind::Power => WarpSpec::Power { p2: p[1] },
        WarpKind::BetaCdf => WarpSpec::BetaCdf { p3: p[2], p4: p[3] },
    };
    (a, warp)
}

/// Generate a full synthetic dataset: parameters plus discretized functions
/// `x_i(t_j) = b(w(t_j; p_i); a_i)` on `m` equispaced grid points in [0, 1].
pub fn generate_setting(
    setting: &SettingSpec,
    n: usize,
    m: usize,
    seed: u64,
) -> Result<(FunctionalDataset, ParamSample)> {
    if n < 3 {
        return Err(Error::invalid(format!("need n >= 3 observations, got {n}")));
    }
    if m < 2 {
        return Err(Error::invalid(format!("need m >= 2 grid points, got {m}")));
    }
    let params = sample_params(setting, n, seed)?;
    let grid: Vec<f64> = (0..m).map(|j| j as f64 / (m - 1) as f64).collect();
    let mut values = Array2::zeros((n, m));
    for i in 0..n {
        let row: Vec<f64> = params.values.row(i).to_vec();
        let (a, w) = assemble_row(setting, &row);
        w.validate()?;
        for (j, &t) in grid.iter().enumerate() {
            let wt = w.apply(t)?.clamp(0.0, 1.0);
            values[[i, j]] = amplitude_curve(wt, a)?;
        }
    }
    let dataset = FunctionalDataset {
        grid,
        values,
        provenance: setting.name.to_string(),
    };
    dataset.validate()?;
    Ok((dataset, params))
}
