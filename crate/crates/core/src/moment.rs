//! Mechanical advantage of the linkage and the resulting output moment.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};
use crate::linkage::{grid, joint_state, theta4_of_theta1, Configuration};
use crate::pouch::{central_angle, input_moment, ActuatorConditions, PouchGeometry};

/// Ratio of output to input moment, `|sin θ3| / (sin α |sin θ2|)`.
///
/// Equal for both configurations.
pub fn mechanical_advantage(alpha: f64, theta1: f64, config: Configuration) -> Result<f64> {
    let s = joint_state(alpha, theta1, config)?;
    let s2 = libm::sin(s.theta2).abs();
    if s2 < 1e-12 {
        return Err(Error::Singular(theta1));
    }
    Ok(libm::sin(s.theta3).abs() / (libm::sin(alpha) * s2))
}

/// Sense of a moment about its fold axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Positive,
    Negative,
}

impl Sense {
    pub fn reversed(self) -> Self {
        match self {
            Sense::Positive => Sense::Negative,
            Sense::Negative => Sense::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputMoment {
    /// Magnitude in N·m.
    pub magnitude: f64,
    /// Sense of the input moment; the top pouch drives `Up`, the bottom one `Down`.
    pub input_sense: Sense,
    /// Always opposite to `input_sense`.
    pub output_sense: Sense,
}

pub fn output_moment(
    geom: &PouchGeometry,
    cond: &ActuatorConditions,
    alpha: f64,
    theta1: f64,
    config: Configuration,
) -> Result<OutputMoment> {
    let ma = mechanical_advantage(alpha, theta1, config)?;
    let input = input_moment(geom, cond, theta1)?;
    let input_sense = match config {
        Configuration::Up => Sense::Positive,
        Configuration::Down => Sense::Negative,
    };
    Ok(OutputMoment { magnitude: ma * input, input_sense, output_sense: input_sense.reversed() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentCurveRow {
    pub theta1: f64,
    /// Pouch central angle, rad.
    pub s: f64,
    pub m_input: f64,
    pub ma: f64,
    pub m_output: f64,
}

/// Moment and mechanical-advantage curve on a uniform `theta1` grid.
pub fn moment_curve(
    alpha: f64,
    config: Configuration,
    geom: &PouchGeometry,
    cond: &ActuatorConditions,
    theta1_min: f64,
    theta1_max: f64,
    steps: usize,
) -> Result<Vec<MomentCurveRow>> {
    if steps < 2 {
        return Err(domain("steps", steps as f64));
    }
    if !(theta1_min >= -FRAC_PI_2 && theta1_min < theta1_max && theta1_max <= FRAC_PI_2) {
        return Err(domain("theta1_min", theta1_min));
    }
    grid(theta1_min, theta1_max, steps)
        .map(|t| {
            let ma = mechanical_advantage(alpha, t, config)?;
            let m_input = input_moment(geom, cond, t)?;
            Ok(MomentCurveRow { theta1: t, s: central_angle(t), m_input, ma, m_output: ma * m_input })
        })
        .collect()
}

/// Central-difference estimate of `dθ4/dθ1` on the `Up` branch.
pub fn theta4_rate(alpha: f64, theta1: f64, h: f64) -> Result<f64> {
    let a = theta4_of_theta1(alpha, theta1 + h, Configuration::Up)?;
    let b = theta4_of_theta1(alpha, theta1 - h, Configuration::Up)?;
    Ok((a - b) / (2.0 * h))
}
