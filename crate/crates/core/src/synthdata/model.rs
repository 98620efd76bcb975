//! The two-peak amplitude model and the domain warpings.

use serde::{Deserialize, Serialize};

use super::beta::regularized_incomplete_beta;
use crate::error::{Error, Result};

/// Gaussian-shaped bump `exp(-(t - mu)^2 / 0.1)`.
#[inline]
fn bump(t: f64, mu: f64) -> f64 {
    (-(t - mu) * (t - mu) / 0.1).exp()
}

/// Two-peak amplitude model
/// `b(t; a) = a1/sqrt(0.1*pi) * { a2*n(t, 0.25) + a3*n(t, 0.75) } + a4`.
pub fn amplitude_curve(t: f64, a: [f64; 4]) -> Result<f64> {
    if !t.is_finite() || a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("amplitude_curve(t={t}, a={a:?})")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::invalid(format!("amplitude_curve: t={t} outside [0, 1]")));
    }
    let scale = a[0] / (0.1 * std::f64::consts::PI).sqrt();
    Ok(scale * (a[1] * bump(t, 0.25) + a[2] * bump(t, 0.75)) + a[3])
}

/// A monotone warping of the domain [0, 1] with fixed endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WarpSpec {
    Identity,
    /// Piecewise-linear warp with breakpoint value `p1 * 0.5` at t = 0.5.
    Linear { p1: f64 },
    /// Power warp `t^p2`.
    Power { p2: f64 },
    /// Beta(p3, p4) cdf warp.
    #[serde(rename = "betacdf")]
    BetaCdf { p3: f64, p4: f64 },
}

impl WarpSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WarpSpec::Identity => Ok(()),
            WarpSpec::Linear { p1 } => {
                if p1.is_finite() && 0.0 < p1 && p1 < 1.0 {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("linear warp requires p1 in (0, 1), got {p1}")))
                }
            }
            WarpSpec::Power { p2 } => {
                if p2.is_finite() && p2 > 0.0 {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("power warp requires p2 > 0, got {p2}")))
                }
            }
            WarpSpec::BetaCdf { p3, p4 } => {
                if p3.is_finite() && p4.is_finite() && p3 > 0.0 && p4 > 0.0 {
                    Ok(())
                } else {
                    Err(Error::invalid(format!(
                        "beta cdf warp requires p3, p4 > 0, got p3={p3}, p4={p4}"
                    )))
                }
            }
        }
    }

    /// Evaluate the warp at `t`, assuming parameters already validated.
    pub fn apply(&self, t: f64) -> Result<f64> {
        match *self {
            WarpSpec::Identity => Ok(t),
            WarpSpec::Linear { p1 } => Ok(if t <= 0.5 {
                p1 * t
            } else {
                (2.0 - p1) * (t - 1.0) + 1.0
            }),
            WarpSpec::Power { p2 } => Ok(t.powf(p2)),
            WarpSpec::BetaCdf { p3, p4 } => regularized_incomplete_beta(p3, p4, t),
        }
    }
}

/// Validated warp evaluation: checks the parameter ranges and `t` in [0, 1].
pub fn warp(t: f64, w: &WarpSpec) -> Result<f64> {
    if !t.is_finite() || !(0.0..=1.0).contains(&t) {
        return Err(Error::invalid(format!("warp: t={t} outside [0, 1]")));
    }
    w.validate()?;
    w.apply(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn amplitude_reduces_to_offset_when_peaks_vanish() {
        // a2 = a3 = 0 zeroes both peak terms; only a4 remains.
        let v = amplitude_curve(0.5, [1.0, 0.0, 0.0, 0.7]).unwrap();
        assert!((v - 0.7).abs() < 1e-15);
    }

    #[test]
    fn amplitude_annihilated_by_zero_scale() {
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let v = amplitude_curve(t, [0.0, 1.3, -0.2, 0.0]).unwrap();
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn amplitude_matches_closed_form_values() {
        // Frozen from an independent high-precision evaluation.
        let v = amplitude_curve(0.25, [1.0, 1.0, 1.0, 0.0]).unwrap();
        assert!((v - 1.930_573_941_772_036).abs() < 1e-12);
        let v = amplitude_curve(0.6, [1.3, 0.8, 2.1, 0.45]).unwrap();
        assert!((v - 4.884_364_282_816_598).abs() < 1e-12);
    }

    #[test]
    fn amplitude_rejects_non_finite() {
        assert!(amplitude_curve(f64::NAN, [1.0; 4]).is_err());
        assert!(amplitude_curve(0.5, [1.0, f64::INFINITY, 0.0, 0.0]).is_err());
        assert!(amplitude_curve(1.5, [1.0; 4]).is_err());
    }

    #[test]
    fn power_warp_with_unit_exponent_is_identity() {
        for t in [0.0, 0.2, 0.5, 0.9, 1.0] {
            assert_eq!(warp(t, &WarpSpec::Power { p2: 1.0 }).unwrap(), t);
        }
    }

    #[test]
    fn linear_warp_piecewise_values() {
        let w = WarpSpec::Linear { p1: 0.3 };
        assert!((warp(0.5, &w).unwrap() - 0.15).abs() < 1e-15);
        assert!((warp(0.75, &w).unwrap() - 0.575).abs() < 1e-15);
    }

    #[test]
    fn beta_warp_symmetric_at_half() {
        let w = WarpSpec::BetaCdf { p3: 2.0, p4: 2.0 };
        assert!((warp(0.5, &w).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn warp_rejects_out_of_range_parameters() {
        assert!(warp(0.5, &WarpSpec::Linear { p1: 1.2 }).is_err());
        assert!(warp(0.5, &WarpSpec::Power { p2: 0.0 }).is_err());
        assert!(warp(0.5, &WarpSpec::BetaCdf { p3: -1.0, p4: 2.0 }).is_err());
    }

    fn arb_warp() -> impl Strategy<Value = WarpSpec> {
        prop_oneof![
            Just(WarpSpec::Identity),
            (0.01f64..0.99).prop_map(|p1| WarpSpec::Linear { p1 }),
            (0.05f64..5.0).prop_map(|p2| WarpSpec::Power { p2 }),
            ((0.2f64..5.0), (0.2f64..5.0)).prop_map(|(p3, p4)| WarpSpec::BetaCdf { p3, p4 }),
        ]
    }

    proptest! {
        #[test]
        fn warps_are_monotone(w in arb_warp(), t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0) {
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let wlo = warp(lo, &w).unwrap();
            let whi = warp(hi, &w).unwrap();
            prop_assert!(wlo <= whi + 1e-12);
        }

        #[test]
        fn warps_fix_endpoints(w in arb_warp()) {
            prop_assert!(warp(0.0, &w).unwrap().abs() <= 1e-12);
            prop_assert!((warp(1.0, &w).unwrap() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn warps_stay_in_unit_interval(w in arb_warp(), t in 0.0f64..=1.0) {
            let v = warp(t, &w).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        }
    }
}
