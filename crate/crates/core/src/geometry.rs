//! Rigid-body types shared by the plate and manipulator code.

use nalgebra::{IsometryMatrix3, Matrix3, Rotation3, Translation3, Vector3};

pub type Vec3 = Vector3<f64>;

/// Rigid placement: a proper rotation matrix plus a translation in mm.
pub type Pose = IsometryMatrix3<f64>;

pub fn rot_x(a: f64) -> Pose {
    Pose::from_parts(Translation3::identity(), Rotation3::from_axis_angle(&Vector3::x_axis(), a))
}

pub fn rot_y(a: f64) -> Pose {
    Pose::from_parts(Translation3::identity(), Rotation3::from_axis_angle(&Vector3::y_axis(), a))
}

pub fn rot_z(a: f64) -> Pose {
    Pose::from_parts(Translation3::identity(), Rotation3::from_axis_angle(&Vector3::z_axis(), a))
}

pub fn translate(x: f64, y: f64, z: f64) -> Pose {
    Pose::translation(x, y, z)
}

/// Pose from a translation and the rotation `Rz(z) · Ry(y) · Rx(x)`.
pub fn pose_from_euler(translation: [f64; 3], xyz: [f64; 3]) -> Pose {
    let [tx, ty, tz] = translation;
    Pose::from_parts(Translation3::new(tx, ty, tz), Rotation3::from_euler_angles(xyz[0], xyz[1], xyz[2]))
}

/// Inverse of [`pose_from_euler`].
pub fn euler_of(pose: &Pose) -> ([f64; 3], [f64; 3]) {
    let (x, y, z) = pose.rotation.euler_angles();
    let t = pose.translation.vector;
    ([t.x, t.y, t.z], [x, y, z])
}

/// Reflection through the ground plane `z = 0`.
pub fn mirror_z() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

/// Conjugates `pose` by the `z = 0` reflection, which keeps it proper.
pub fn mirrored(pose: &Pose) -> Pose {
    let m = mirror_z();
    let r = m * pose.rotation.matrix() * m;
    let t = m * pose.translation.vector;
    Pose::from_parts(Translation3::from(t), Rotation3::from_matrix_unchecked(r))
}

/// Angle between two nonzero vectors, accurate near 0 and π.
pub fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    libm::atan2(a.cross(b).norm(), a.dot(b))
}

/// Largest deviation of `pose.rotation` from orthonormality, and its determinant.
pub fn orthonormality_error(pose: &Pose) -> (f64, f64) {
    let r = pose.rotation.matrix();
    let e = (r.transpose() * r - Matrix3::identity()).abs().max();
    (e, r.determinant())
}
