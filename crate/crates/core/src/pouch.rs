//! Pouch-motor geometry and the input moment it applies to the input fold.

use core::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};
use crate::linkage::check_self_lock_alpha;

/// Pouch dimensions cut from the two input plates, in millimetres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PouchGeometry {
    /// Plate side before cutting.
    pub m: f64,
    pub alpha: f64,
    /// Reduction of the far side of the cut plate.
    pub l1: f64,
    /// Offset of the pouch corner along the plate side.
    pub n: f64,
    /// Half-length of the pouch.
    pub lp: f64,
    /// Width of the pouch.
    pub d: f64,
    /// Full length of the uninflated pouch.
    pub l0: f64,
}

/// Gauge pressure in the pouch, in pascals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActuatorConditions {
    pub pressure: f64,
}

impl ActuatorConditions {
    pub fn new(pressure: f64) -> Result<Self> {
        if pressure >= 0.0 && pressure.is_finite() {
            Ok(Self { pressure })
        } else {
            Err(domain("pressure", pressure))
        }
    }
}

impl Default for ActuatorConditions {
    fn default() -> Self {
        Self { pressure: 10_000.0 }
    }
}

pub fn pouch_geometry(m: f64, alpha: f64) -> Result<PouchGeometry> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(domain("m", m));
    }
    check_self_lock_alpha(alpha)?;
    let (s, c) = libm::sincos(alpha);
    let cot = c / s;
    let l1 = m * cot;
    let n = (m - l1) * cot;
    let lp = (m - l1) / s;
    let d = (m - n) / s;
    if !(lp > 0.0 && d > 0.0) {
        return Err(domain("alpha", alpha));
    }
    Ok(PouchGeometry { m, alpha, l1, n, lp, d, l0: 2.0 * lp })
}

/// Chord between the pouch ends at input deviation `theta1`.
pub fn chord_length(theta1: f64, l0: f64) -> f64 {
    l0 * libm::cos(0.5 * theta1)
}

/// Central angle of the inflated pouch cross-section, in radians.
///
/// `sqrt(6 (1 - L/L0))` with `L/L0 = cos(θ1/2)`, written as
/// `sqrt(12) |sin(θ1/4)|` to keep precision near the flat state.
pub fn central_angle(theta1: f64) -> f64 {
    libm::sqrt(12.0) * libm::sin(0.25 * theta1).abs()
}

/// Chord model used to turn `theta1` into a pouch central angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChordModel {
    /// `L = L0 cos(θ1/2)`, zero inflation at the flat state.
    #[default]
    Hinge,
    /// `L = L0 sqrt(2 (1 + cos θ1))` as printed in the source; only real for
    /// `|θ1| >= 120°`.
    Printed,
}

/// Central angle under a chosen chord model.
pub fn central_angle_with(theta1: f64, model: ChordModel) -> Result<f64> {
    match model {
        ChordModel::Hinge => Ok(central_angle(theta1)),
        ChordModel::Printed => {
            let ratio = libm::sqrt(2.0 * (1.0 + libm::cos(theta1)));
            let r = 6.0 * (1.0 - ratio);
            if r < 0.0 {
                Err(domain("theta1", theta1))
            } else {
                Ok(libm::sqrt(r))
            }
        }
    }
}

/// Below this central angle the moment uses its flat-state limit.
pub const SERIES_SWITCH: f64 = 1e-4;

/// `(1 + 2/√3) / 2`, the flat-state moment in units of `Lp² D P`.
pub fn flat_moment_factor() -> f64 {
    0.5 * (1.0 + 2.0 / libm::sqrt(3.0))
}

/// `S - sin S` without cancellation for small `S`.
fn s_minus_sin(s: f64) -> f64 {
    if s.abs() < 0.5 {
        let s2 = s * s;
        s * s2 / 6.0
            * (1.0 - s2 / 20.0 * (1.0 - s2 / 42.0 * (1.0 - s2 / 72.0 * (1.0 - s2 / 110.0 * (1.0 - s2 / 156.0)))))
    } else {
        s - libm::sin(s)
    }
}

/// Bracketed factor of the pouch moment:
/// `-1 + S² + cos 2S - √2 cos S sqrt(-1 + 2S² + cos 2S)`.
///
/// Rewritten with `cos 2S - 1 = -2 sin² S` so that neither term cancels.
pub fn moment_bracket(s: f64) -> f64 {
    let sin = libm::sin(s);
    let root = libm::sqrt(s_minus_sin(s) * (s + sin));
    s * s - 2.0 * sin * sin - 2.0 * libm::cos(s) * root
}

/// Moment magnitude from the full expression at central angle `s`, N·m.
pub fn moment_at(geom: &PouchGeometry, cond: &ActuatorConditions, s: f64) -> f64 {
    let scale = lp_sq_d_p(geom, cond);
    (scale * moment_bracket(s) / (2.0 * s * s)).abs()
}

/// Flat-state moment magnitude, N·m.
pub fn flat_moment(geom: &PouchGeometry, cond: &ActuatorConditions) -> f64 {
    flat_moment_factor() * lp_sq_d_p(geom, cond)
}

fn lp_sq_d_p(geom: &PouchGeometry, cond: &ActuatorConditions) -> f64 {
    let lp = geom.lp * 1e-3;
    let d = geom.d * 1e-3;
    lp * lp * d * cond.pressure
}

/// Magnitude of the moment the pouch applies about the input fold, N·m.
///
/// Which pouch is inflated (top or bottom) sets the direction.
pub fn input_moment(geom: &PouchGeometry, cond: &ActuatorConditions, theta1: f64) -> Result<f64> {
    if !(theta1.abs() <= FRAC_PI_2) {
        return Err(domain("theta1", theta1));
    }
    let s = central_angle(theta1);
    if s < SERIES_SWITCH {
        Ok(flat_moment(geom, cond))
    } else {
        Ok(moment_at(geom, cond, s))
    }
}
