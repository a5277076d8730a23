//! Plate polygons and forward kinematics of one Self-Lock unit.
//!
//! World frame of a unit: plate 1 lies in `z = 0` with the shared vertex at
//! the origin. The fold with plate 4 runs along `+y`; the fold with plate 2
//! lies in the ground plane at `90° - alpha` from `+x`. A positive deviation
//! lifts the next plate towards `+z`.
//!
//! Each plate's local frame has the vertex at the origin, its leading fold
//! along local `+y`, and its trailing fold at `90° - c` from local `+x`,
//! where `c` is the plate's central angle.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use nalgebra::{Point2, Point3};

use crate::error::{domain, Error, Result};
use crate::geometry::{angle_between, rot_y, rot_z, Pose, Vec3};
use crate::linkage::{check_self_lock_alpha, joint_state, wrap_angle, Configuration, JointState};

/// Planar convex plate outline in its local frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateMesh {
    /// Counterclockwise vertices, the shared origami vertex first.
    pub vertices: Vec<Point2<f64>>,
    pub central_angle: f64,
    /// True for the two cut input plates.
    pub cut: bool,
}

impl PlateMesh {
    /// Square of side `side` in the `[0, side]²` quadrant.
    pub fn square(side: f64) -> Self {
        Self {
            vertices: alloc::vec![
                Point2::new(0.0, 0.0),
                Point2::new(side, 0.0),
                Point2::new(side, side),
                Point2::new(0.0, side),
            ],
            central_angle: FRAC_PI_2,
            cut: false,
        }
    }

    /// Vertices lifted into 3D and placed by `pose`.
    pub fn placed(&self, pose: &Pose) -> Vec<Vec3> {
        self.vertices.iter().map(|v| (pose * Point3::new(v.x, v.y, 0.0)).coords).collect()
    }

    /// Polygon shrunk by moving every edge inward by `margin`.
    ///
    /// Valid while `margin` is small against the shortest edge.
    pub fn inset(&self, margin: f64) -> PlateMesh {
        let n = self.vertices.len();
        let inward = |i: usize| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = (b - a).normalize();
            (a, e, nalgebra::Vector2::new(-e.y, e.x))
        };
        let vertices = (0..n)
            .map(|i| {
                let (a0, e0, n0) = inward((i + n - 1) % n);
                let (a1, e1, n1) = inward(i);
                let p0 = a0 + n0 * margin;
                let p1 = a1 + n1 * margin;
                // p0 + s e0 = p1 + t e1
                let det = e0.x * (-e1.y) - e0.y * (-e1.x);
                let d = p1 - p0;
                let s = (d.x * (-e1.y) - d.y * (-e1.x)) / det;
                p0 + e0 * s
            })
            .collect();
        PlateMesh { vertices, central_angle: self.central_angle, cut: self.cut }
    }

    /// Outline with corner `i` cut off by `cut` along both adjacent edges.
    ///
    /// The shared vertex (corner 0) cannot be cut, and `cut` must stay below
    /// half of each adjacent edge.
    pub fn chamfered(&self, i: usize, cut: f64) -> Result<PlateMesh> {
        let n = self.vertices.len();
        if i == 0 || i >= n {
            return Err(Error::Index("corner"));
        }
        let (prev, next) = (self.vertices[i - 1], self.vertices[(i + 1) % n]);
        let a = self.vertices[i];
        let (lp, ln) = ((prev - a).norm(), (next - a).norm());
        if !(cut > 0.0 && 2.0 * cut < lp.min(ln)) {
            return Err(domain("corner cut", cut));
        }
        let mut vertices = self.vertices.clone();
        vertices.splice(i..=i, [a + (prev - a) * (cut / lp), a + (next - a) * (cut / ln)]);
        Ok(PlateMesh { vertices, central_angle: self.central_angle, cut: self.cut })
    }

    /// Length of the edge from vertex `i` to vertex `i + 1`.
    pub fn edge_length(&self, i: usize) -> f64 {
        let n = self.vertices.len();
        (self.vertices[(i + 1) % n] - self.vertices[i]).norm()
    }
}

/// Outline of plate `index` (0-based) of a unit with cut angle `alpha`,
/// scaled so that its uncut side is `side`.
pub fn plate_mesh(alpha: f64, index: usize, side: f64) -> Result<PlateMesh> {
    check_self_lock_alpha(alpha)?;
    if !(side > 0.0 && side.is_finite()) {
        return Err(domain("side", side));
    }
    let l1 = side / libm::tan(alpha);
    let p = Point2::new;
    match index {
        0 => Ok(PlateMesh {
            vertices: alloc::vec![p(0.0, 0.0), p(side, l1), p(side, side), p(0.0, side)],
            central_angle: alpha,
            cut: true,
        }),
        1 => {
            // Mirror image of plate 1 turned into the same wedge.
            let (s, c) = libm::sincos(FRAC_PI_2 - alpha);
            let r = |x: f64, y: f64| p(c * x - s * y, s * x + c * y);
            Ok(PlateMesh {
                vertices: alloc::vec![r(0.0, 0.0), r(side, 0.0), r(side, side), r(l1, side)],
                central_angle: alpha,
                cut: true,
            })
        }
        2 | 3 => Ok(PlateMesh::square(side)),
        _ => Err(Error::Index("plate")),
    }
}

/// The four plate outlines of a unit with uncut side `m`.
pub fn plate_meshes(alpha: f64, m: f64) -> Result<[PlateMesh; 4]> {
    Ok([plate_mesh(alpha, 0, m)?, plate_mesh(alpha, 1, m)?, plate_mesh(alpha, 2, m)?, plate_mesh(alpha, 3, m)?])
}

/// Plate poses for world fold deviations `w = [w1, w2, w3, w4]`.
///
/// The chain is built from plate 1 through plate 4; `w4` is not used, so
/// an inconsistent `w` shows up as a loop-closure error.
pub fn chain_poses(alpha: f64, w: [f64; 4]) -> [Pose; 4] {
    let p1 = Pose::identity();
    let p2 = rot_z(-alpha) * rot_y(-w[0]);
    let p3 = p2 * rot_z(-alpha) * rot_y(-w[1]);
    let p4 = p3 * rot_z(-FRAC_PI_2) * rot_y(-w[2]);
    [p1, p2, p3, p4]
}

/// Poses, fold axes and state of one unit.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPoseSet {
    pub poses: [Pose; 4],
    /// Unit directions of the folds `[u12, u23, u34, u41]` in the unit frame.
    pub fold_axes: [Vec3; 4],
    pub joint_state: JointState,
    pub alpha: f64,
    pub m: f64,
}

/// Forward kinematics of a unit at input deviation `theta1`.
pub fn unit_poses(alpha: f64, theta1: f64, config: Configuration, m: f64) -> Result<UnitPoseSet> {
    check_self_lock_alpha(alpha)?;
    let state = joint_state(alpha, theta1, config)?;
    unit_poses_for_state(alpha, state, m)
}

/// Forward kinematics for an arbitrary, possibly inconsistent, state.
pub fn unit_poses_for_state(alpha: f64, state: JointState, m: f64) -> Result<UnitPoseSet> {
    check_self_lock_alpha(alpha)?;
    if !(m > 0.0) {
        return Err(domain("m", m));
    }
    let poses = chain_poses(alpha, state.world_angles());
    let (s, c) = libm::sincos(alpha);
    let lead = Vec3::new(s, c, 0.0);
    let fold_axes = [
        lead,
        poses[1].rotation * lead,
        poses[2].rotation * Vec3::x(),
        Vec3::y(),
    ];
    Ok(UnitPoseSet { poses, fold_axes, joint_state: state, alpha, m })
}

/// Mismatch between the chain-propagated plate 4 and the grounded fold with
/// plate 1: the larger of the axis misalignment and the output-angle error.
pub fn loop_closure_error(set: &UnitPoseSet) -> f64 {
    let p4 = &set.poses[3];
    let axis = p4.rotation * Vec3::x();
    let axis_err = angle_between(&axis, &Vec3::y());
    // A closed chain has p4 = Ry(w4) Rz(π/2).
    let rel = (p4 * rot_z(-FRAC_PI_2)).rotation;
    let r = rel.matrix();
    let measured = libm::atan2(r[(0, 2)], r[(0, 0)]);
    let w4 = set.joint_state.world_angles()[3];
    axis_err.max(wrap_angle(measured - w4).abs())
}

/// A corner of one plate of a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkerRef {
    pub plate: usize,
    pub corner: usize,
}

impl Default for MarkerRef {
    /// Outer corner of plate 4.
    fn default() -> Self {
        Self { plate: 3, corner: 2 }
    }
}

/// Unit-frame position of the marked corner.
pub fn marker_position(set: &UnitPoseSet, which: MarkerRef) -> Result<Vec3> {
    let mesh = plate_mesh(set.alpha, which.plate, set.m)?;
    let v = mesh.vertices.get(which.corner).ok_or(Error::Index("corner"))?;
    Ok((set.poses[which.plate] * Point3::new(v.x, v.y, 0.0)).coords)
}

/// Dihedral deviation between two placed plates about their common fold.
pub fn deviation_about(axis: &Vec3, normal_a: &Vec3, normal_b: &Vec3) -> f64 {
    let s = axis.dot(&normal_a.cross(normal_b));
    let c = normal_a.dot(normal_b);
    libm::atan2(s, c)
}
