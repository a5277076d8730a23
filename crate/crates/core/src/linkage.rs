//! Spherical four-bar kinematics of a single Self-Lock unit.
//!
//! Plate 1 is grounded. The fold between plates 1 and 2 is the input
//! (`theta1`), the fold between plates 4 and 1 is the output (`theta4`).
//! Every fold angle is a signed deviation from coplanar, so a flat sheet has
//! all four angles at zero.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};
use crate::solve::{bisect, golden_section, lerp};

/// Central angles of the four plates at the shared vertex.
///
/// `alpha12` and `alpha23` are the two cut input plates (plates 1 and 2);
/// `alpha34` and `alpha41` are the square output plates (plates 3 and 4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralAngles {
    pub alpha12: f64,
    pub alpha23: f64,
    pub alpha34: f64,
    pub alpha41: f64,
}

impl CentralAngles {
    pub fn new(alpha12: f64, alpha23: f64, alpha34: f64, alpha41: f64) -> Result<Self> {
        for (what, v) in [
            ("alpha12", alpha12),
            ("alpha23", alpha23),
            ("alpha34", alpha34),
            ("alpha41", alpha41),
        ] {
            if !(v > 0.0 && v < PI) {
                return Err(domain(what, v));
            }
        }
        Ok(Self { alpha12, alpha23, alpha34, alpha41 })
    }

    /// Self-lock linkage with two cut plates of angle `alpha`.
    pub fn self_lock(alpha: f64) -> Result<Self> {
        check_self_lock_alpha(alpha)?;
        Ok(Self { alpha12: alpha, alpha23: alpha, alpha34: FRAC_PI_2, alpha41: FRAC_PI_2 })
    }

    pub fn is_self_lock_valid(&self) -> bool {
        self.alpha34 == FRAC_PI_2
            && self.alpha41 == FRAC_PI_2
            && self.alpha12 == self.alpha23
            && check_self_lock_alpha(self.alpha12).is_ok()
    }

    /// `2π` minus the sum of the central angles.
    pub fn deficit(&self) -> f64 {
        2.0 * PI - (self.alpha12 + self.alpha23 + self.alpha34 + self.alpha41)
    }
}

/// Rejects cut angles outside `(π/4, π/2)`.
pub fn check_self_lock_alpha(alpha: f64) -> Result<()> {
    if alpha > PI / 4.0 && alpha < FRAC_PI_2 {
        Ok(())
    } else {
        Err(domain("alpha", alpha))
    }
}

/// Assembly branch of the linkage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Configuration {
    Up,
    Down,
}

impl Configuration {
    /// `+1` for `Up`, `-1` for `Down`.
    pub fn sign(self) -> f64 {
        match self {
            Configuration::Up => 1.0,
            Configuration::Down => -1.0,
        }
    }
}

/// The four fold angles of a unit.
///
/// `Down` stores the `Up` values with `theta2..theta4` negated and `theta1`
/// unchanged. Physically the `Down` unit is the mirror image of the `Up` one,
/// so its input fold sits at `-theta1` in world terms; see [`world_angles`].
///
/// [`world_angles`]: JointState::world_angles
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointState {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub theta4: f64,
    pub config: Configuration,
}

impl JointState {
    /// Fold deviations as seen by the plate chain, in the order
    /// `[theta1, theta2, theta3, theta4]`.
    pub fn world_angles(&self) -> [f64; 4] {
        let input = match self.config {
            Configuration::Up => self.theta1,
            Configuration::Down => -self.theta1,
        };
        [input, self.theta2, self.theta3, self.theta4]
    }

    /// Closure residual of this state under `angles`.
    pub fn closure_residual(&self, angles: &CentralAngles) -> f64 {
        let w = self.world_angles();
        closure_residual(angles, w[0], w[3])
    }
}

/// Residual of the spherical four-bar closure equation.
///
/// Zero exactly when the input deviation `theta1` and output deviation
/// `theta4` can coexist in one assembly.
pub fn closure_residual(angles: &CentralAngles, theta1: f64, theta4: f64) -> f64 {
    let (s12, c12) = libm::sincos(angles.alpha12);
    let (s23, c23) = libm::sincos(angles.alpha23);
    let (s41, c41) = libm::sincos(angles.alpha41);
    let (s1, c1) = libm::sincos(theta1);
    let (s4, c4) = libm::sincos(theta4);
    let lhs = c23 * c41 * c12 - (s23 * c41 * c1 + c23 * s41 * c4) * s12
        + s23 * s41 * (s1 * s4 - c1 * c4 * c12);
    lhs - libm::cos(angles.alpha34)
}

fn check_theta1(theta1: f64) -> Result<()> {
    if theta1 > -PI && theta1 <= PI {
        Ok(())
    } else {
        Err(domain("theta1", theta1))
    }
}

fn check_formula_alpha(alpha: f64) -> Result<()> {
    // The closed forms stay evaluable at α = π/2, where the joint no longer works.
    if alpha > 0.0 && alpha <= FRAC_PI_2 {
        Ok(())
    } else {
        Err(domain("alpha", alpha))
    }
}

/// Output deviation for a given input deviation.
///
/// The `Up` branch lies in `(0, π)` and decreases strictly with `theta1`.
pub fn theta4_of_theta1(alpha: f64, theta1: f64, config: Configuration) -> Result<f64> {
    check_formula_alpha(alpha)?;
    check_theta1(theta1)?;
    let (s, c) = libm::sincos(0.5 * theta1);
    Ok(config.sign() * libm::atan2(libm::cos(alpha) * c, s))
}

/// Deviation of the fold between plates 2 and 3.
pub fn theta3_of_theta1(alpha: f64, theta1: f64, config: Configuration) -> Result<f64> {
    check_formula_alpha(alpha)?;
    check_theta1(theta1)?;
    let (sa, ca) = libm::sincos(alpha);
    let x = sa * sa * libm::cos(theta1) - ca * ca;
    assert!(x.abs() <= 1.0 + 1e-12, "arccos argument {x} out of range");
    Ok(config.sign() * libm::acos(x.clamp(-1.0, 1.0)))
}

/// Full state of a self-lock unit at input deviation `theta1`.
pub fn joint_state(alpha: f64, theta1: f64, config: Configuration) -> Result<JointState> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(domain("alpha", alpha));
    }
    let theta4 = theta4_of_theta1(alpha, theta1, config)?;
    let theta3 = theta3_of_theta1(alpha, theta1, config)?;
    Ok(JointState { theta1, theta2: theta4, theta3, theta4, config })
}

/// Input deviation that produces the output deviation `theta4`.
pub fn theta1_of_theta4(alpha: f64, theta4: f64, config: Configuration) -> Result<f64> {
    check_formula_alpha(alpha)?;
    let t = config.sign() * theta4;
    if !(t > 0.0 && t < PI) {
        return Err(domain("theta4", theta4));
    }
    let (s, c) = libm::sincos(t);
    Ok(2.0 * libm::atan2(libm::cos(alpha) * c, s))
}

/// Number of samples in the dense scan of [`oracle_roots`].
pub const ORACLE_SAMPLES: usize = 3600;

/// All output deviations in `(-π, π]` that close the linkage at `theta1`.
///
/// Found by a dense sign-change scan of [`closure_residual`] refined by
/// bisection. Independent of the closed forms; used to check them.
pub fn oracle_roots(angles: &CentralAngles, theta1: f64) -> Vec<f64> {
    let f = |t4: f64| closure_residual(angles, theta1, t4);
    let h = 2.0 * PI / ORACLE_SAMPLES as f64;
    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        let r = wrap_angle(r);
        if !roots.iter().any(|&q| wrap_angle(q - r).abs() < 1e-9) {
            roots.push(r);
        }
    };
    // Samples at -π + k·h for k = 1..=N, then the wrap interval back to -π + h.
    let mut a = -PI + h;
    let mut fa = f(a);
    for k in 2..=ORACLE_SAMPLES + 1 {
        let b = -PI + k as f64 * h;
        let fb = f(b);
        if fa == 0.0 {
            push(a, &mut roots);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            if let Some(r) = bisect(f, a, b, 1e-12) {
                push(r, &mut roots);
            }
        }
        a = b;
        fa = fb;
    }
    roots.sort_by(|x, y| x.total_cmp(y));
    roots
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = libm::remainder(x, 2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    }
    y
}

/// Input deviation at which `|theta4|` reaches the MPF angle `gamma`.
pub fn mpf_theta1(alpha: f64, gamma: f64, config: Configuration) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= FRAC_PI_2) {
        return Err(domain("gamma", gamma));
    }
    theta1_of_theta4(alpha, config.sign() * gamma, config)
}

/// Total plate deviation `|θ1| + |θ2| + |θ3| + |θ4|` at `theta1`.
pub fn total_deviation(alpha: f64, theta1: f64) -> f64 {
    let (s, c) = libm::sincos(0.5 * theta1);
    let t4 = libm::atan2(libm::cos(alpha) * c, s).abs();
    let (sa, ca) = libm::sincos(alpha);
    let t3 = libm::acos((sa * sa * libm::cos(theta1) - ca * ca).clamp(-1.0, 1.0));
    theta1.abs() + 2.0 * t4 + t3
}

/// Input deviation of the semi-flat state, the reachable state closest to flat.
///
/// Minimises [`total_deviation`] over `(0, π)` with a 0.1° grid followed by a
/// golden-section refinement.
pub fn semi_flat_theta1(alpha: f64, config: Configuration) -> Result<f64> {
    check_self_lock_alpha(alpha)?;
    let _ = config;
    let step = PI / 1800.0;
    let mut best = step;
    let mut best_f = f64::INFINITY;
    for k in 1..1800 {
        let t = k as f64 * step;
        let v = total_deviation(alpha, t);
        if v < best_f {
            best_f = v;
            best = t;
        }
    }
    let lo = (best - step).max(0.0);
    let hi = (best + step).min(PI);
    Ok(golden_section(|t| total_deviation(alpha, t), lo, hi, 1e-7))
}

/// Joint states on a uniform input grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub alpha: f64,
    pub config: Configuration,
    pub theta1_min: f64,
    pub theta1_max: f64,
    pub steps: usize,
    pub rows: Vec<JointState>,
}

/// `steps` evenly spaced states from `theta1_min` to `theta1_max` inclusive.
pub fn sweep(
    alpha: f64,
    config: Configuration,
    theta1_min: f64,
    theta1_max: f64,
    steps: usize,
) -> Result<SweepTable> {
    if steps < 2 {
        return Err(domain("steps", steps as f64));
    }
    if !(theta1_min > -PI && theta1_min < theta1_max && theta1_max < PI) {
        return Err(domain("theta1_min", theta1_min));
    }
    let rows = grid(theta1_min, theta1_max, steps)
        .map(|t| joint_state(alpha, t, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { alpha, config, theta1_min, theta1_max, steps, rows })
}

/// Uniform grid with both end points hit exactly.
pub fn grid(min: f64, max: f64, steps: usize) -> impl Iterator<Item = f64> {
    let n = (steps.max(2) - 1) as f64;
    (0..steps).map(move |i| lerp(min, max, i as f64 / n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Configuration::{Down, Up};

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    /// Root of the closure equation on the `Up` branch, independent of the closed form.
    fn bisect_theta4(alpha: f64, theta1: f64) -> f64 {
        let a = CentralAngles::self_lock(alpha).unwrap();
        bisect(|t| closure_residual(&a, theta1, t), 1e-9, PI - 1e-9, 1e-14).unwrap()
    }

    #[test]
    fn residual_right_angle_linkage() {
        let a = CentralAngles::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(closure_residual(&a, FRAC_PI_2, 0.0).abs() < 1e-15);
    }

    #[test]
    fn residual_vanishes_on_closed_form() {
        let a = CentralAngles::self_lock(deg(89.0)).unwrap();
        let t4 = libm::atan(libm::cos(deg(89.0)));
        assert!(closure_residual(&a, deg(90.0), t4).abs() < 1e-12);
    }

    #[test]
    fn residual_nonzero_off_solution() {
        let a = CentralAngles::self_lock(deg(80.0)).unwrap();
        assert!(closure_residual(&a, deg(45.0), 0.0).abs() > 1e-2);
    }

    #[test]
    fn theta4_examples() {
        for alpha in [60.0, 80.0, 89.0] {
            assert_eq!(theta4_of_theta1(deg(alpha), 0.0, Up).unwrap(), FRAC_PI_2);
            assert!(theta4_of_theta1(deg(alpha), PI, Up).unwrap().abs() < 1e-15);
        }
        let t = theta4_of_theta1(deg(80.0), deg(90.0), Up).unwrap();
        assert!((t - bisect_theta4(deg(80.0), deg(90.0))).abs() < 1e-12);
        assert!((t.to_degrees() - 9.851).abs() < 1e-3);
        let d = theta4_of_theta1(deg(89.0), deg(90.0), Down).unwrap();
        assert!((d + bisect_theta4(deg(89.0), deg(90.0))).abs() < 1e-12);
        assert!((d.to_degrees() + 1.0).abs() < 1e-2);
    }

    #[test]
    fn theta4_rejects_bad_alpha() {
        assert!(theta4_of_theta1(0.0, 0.1, Up).is_err());
        assert!(theta4_of_theta1(deg(91.0), 0.1, Up).is_err());
    }

    #[test]
    fn theta4_degenerate_square() {
        for t in [0.1, 1.0, 3.0] {
            assert!(theta4_of_theta1(FRAC_PI_2, t, Up).unwrap().abs() < 1e-14);
        }
        assert!(CentralAngles::self_lock(FRAC_PI_2).is_err());
    }

    #[test]
    fn theta3_examples() {
        let t = theta3_of_theta1(deg(80.0), 0.0, Up).unwrap();
        assert!((t - deg(20.0)).abs() < 1e-12);
        let t = theta3_of_theta1(deg(80.0), PI, Up).unwrap();
        assert!((t - PI).abs() < 1e-7);
        let t = theta3_of_theta1(deg(80.0), deg(90.0), Up).unwrap();
        let c = libm::cos(deg(80.0));
        assert!((t - libm::acos(-c * c)).abs() < 1e-12);
        assert!((t.to_degrees() - 91.73).abs() < 5e-3);
    }

    #[test]
    fn joint_state_examples() {
        let s = joint_state(deg(89.0), 0.0, Up).unwrap();
        assert_eq!(s.theta1, 0.0);
        assert_eq!(s.theta4, FRAC_PI_2);
        assert_eq!(s.theta2, s.theta4);
        assert!((s.theta3 - deg(2.0)).abs() < 1e-12);

        let up = joint_state(deg(80.0), deg(90.0), Up).unwrap();
        let down = joint_state(deg(80.0), deg(90.0), Down).unwrap();
        assert_eq!(down.theta1, up.theta1);
        assert_eq!(down.theta2, -up.theta2);
        assert_eq!(down.theta3, -up.theta3);
        assert_eq!(down.theta4, -up.theta4);
        let a = CentralAngles::self_lock(deg(80.0)).unwrap();
        assert!(up.closure_residual(&a).abs() < 1e-12);
        assert!(down.closure_residual(&a).abs() < 1e-12);
    }

    #[test]
    fn inverse_examples() {
        assert!(theta1_of_theta4(deg(70.0), FRAC_PI_2, Up).unwrap().abs() < 1e-15);
        let t1 = theta1_of_theta4(deg(89.0), deg(36.5), Up).unwrap();
        let oracle = bisect(
            |t| theta4_of_theta1(deg(89.0), t, Up).unwrap() - deg(36.5),
            1e-9,
            PI - 1e-9,
            1e-14,
        )
        .unwrap();
        assert!((t1 - oracle).abs() < 1e-12);
        assert!((t1.to_degrees() - 2.702).abs() < 1e-3);
        let t4 = theta4_of_theta1(deg(80.0), deg(90.0), Up).unwrap();
        assert!((theta1_of_theta4(deg(80.0), t4, Up).unwrap() - deg(90.0)).abs() < 1e-12);
        assert!(theta1_of_theta4(deg(80.0), 0.0, Up).is_err());
        assert!(theta1_of_theta4(deg(80.0), 0.5, Down).is_err());
    }

    #[test]
    fn oracle_examples() {
        // Self-lock 89° at 90°: the Up root plus the mirror root of the Down
        // unit driven to -90° in world terms.
        let a = CentralAngles::self_lock(deg(89.0)).unwrap();
        let r = oracle_roots(&a, deg(90.0));
        assert_eq!(r.len(), 2);
        let up = theta4_of_theta1(deg(89.0), deg(90.0), Up).unwrap();
        let down = theta4_of_theta1(deg(89.0), deg(-90.0), Down).unwrap();
        assert!((r[1] - up).abs() < 1e-10);
        assert!((r[0] - down).abs() < 1e-10);

        let a = CentralAngles::self_lock(deg(80.0)).unwrap();
        let r = oracle_roots(&a, 0.0);
        assert_eq!(r.len(), 2);
        assert!((r[0] + FRAC_PI_2).abs() < 1e-10 && (r[1] - FRAC_PI_2).abs() < 1e-10);

        let a = CentralAngles::new(deg(60.0), deg(60.0), deg(60.0), deg(60.0)).unwrap();
        let r = oracle_roots(&a, deg(40.0));
        assert!(!r.is_empty());
        for t in r {
            assert!(closure_residual(&a, deg(40.0), t).abs() < 1e-10);
        }
    }

    #[test]
    fn mpf_examples() {
        let t = mpf_theta1(deg(89.0), deg(36.5), Up).unwrap();
        assert!((t.to_degrees() - 2.702).abs() < 1e-3);
        let t = mpf_theta1(deg(80.0), deg(36.5), Up).unwrap();
        let direct = 2.0 * libm::atan(libm::cos(deg(80.0)) / libm::tan(deg(36.5)));
        assert!((t - direct).abs() < 1e-12);
        assert!((t.to_degrees() - 26.41).abs() < 1e-2);
        assert!(mpf_theta1(deg(80.0), FRAC_PI_2, Up).unwrap().abs() < 1e-15);
        assert_eq!(mpf_theta1(deg(80.0), deg(36.5), Down).unwrap(), mpf_theta1(deg(80.0), deg(36.5), Up).unwrap());
    }

    /// Exhaustive scan of the total deviation at 0.001° spacing.
    fn semi_flat_grid(alpha: f64) -> (f64, f64) {
        let mut best = (0.0, f64::INFINITY);
        for k in 1..180_000 {
            let t = deg(k as f64 * 0.001);
            let v = total_deviation(alpha, t);
            if v < best.1 {
                best = (t, v);
            }
        }
        best
    }

    #[test]
    fn semi_flat_matches_grid_oracle() {
        let (t_grid, f_grid) = semi_flat_grid(deg(89.0));
        let t = semi_flat_theta1(deg(89.0), Up).unwrap();
        assert!((t - t_grid).abs() < deg(0.002));
        assert!((total_deviation(deg(89.0), t) - f_grid).abs() < 1e-9);
        assert!((t.to_degrees() - 10.58).abs() < 0.01);
        assert!((f_grid.to_degrees() - 42.7).abs() < 0.1);
    }

    #[test]
    fn semi_flat_is_local_minimum() {
        let a = deg(85.0);
        let t = semi_flat_theta1(a, Up).unwrap();
        let f = total_deviation(a, t);
        assert!(f <= total_deviation(a, t + deg(0.01)));
        assert!(f <= total_deviation(a, t - deg(0.01)));
    }

    #[test]
    fn semi_flat_deviation_falls_toward_square() {
        let f: Vec<f64> = [75.0, 80.0, 85.0, 89.0].iter().map(|&a| semi_flat_grid(deg(a)).1).collect();
        assert!(f.windows(2).all(|w| w[1] < w[0]));
        assert!(semi_flat_theta1(deg(45.0), Up).is_err());
    }

    #[test]
    fn sweep_examples() {
        let s = sweep(deg(89.0), Up, deg(-90.0), deg(90.0), 181).unwrap();
        assert_eq!(s.rows.len(), 181);
        assert_eq!(s.rows[90], joint_state(deg(89.0), 0.0, Up).unwrap());
        let a = CentralAngles::self_lock(deg(89.0)).unwrap();
        assert!(s.rows.iter().all(|r| r.closure_residual(&a).abs() < 1e-9));
        assert!(s.rows.windows(2).all(|w| w[1].theta4 < w[0].theta4));
        assert!(sweep(deg(89.0), Up, 0.0, 1.0, 1).is_err());
        assert!(sweep(deg(89.0), Up, 1.0, 0.0, 5).is_err());
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI / 2.0) + FRAC_PI_2).abs() < 1e-15);
    }
}
