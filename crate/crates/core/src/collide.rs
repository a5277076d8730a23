//! Separating-axis test for placed convex plates.

use alloc::vec::Vec;

use crate::fold::PlateMesh;
use crate::geometry::{Pose, Vec3};

/// True when the placed plates come within `clearance` of each other.
///
/// The plates have zero thickness. Candidate axes are both face normals,
/// the in-plane edge normals of each plate, and all edge-pair cross products.
pub fn plates_collide(mesh_a: &PlateMesh, pose_a: &Pose, mesh_b: &PlateMesh, pose_b: &Pose, clearance: f64) -> bool {
    polygons_collide(&mesh_a.placed(pose_a), &mesh_b.placed(pose_b), clearance)
}

/// Separating-axis test for two planar convex polygons in 3D.
pub fn polygons_collide(a: &[Vec3], b: &[Vec3], clearance: f64) -> bool {
    let na = normal(a);
    let nb = normal(b);
    let ea = edges(a);
    let eb = edges(b);
    let mut axes: Vec<Vec3> = Vec::with_capacity(2 + ea.len() + eb.len() + ea.len() * eb.len());
    axes.push(na);
    axes.push(nb);
    axes.extend(ea.iter().map(|e| na.cross(e)));
    axes.extend(eb.iter().map(|e| nb.cross(e)));
    for e in &ea {
        for f in &eb {
            axes.push(e.cross(f));
        }
    }
    for axis in axes {
        let len = axis.norm();
        if len < 1e-12 {
            continue;
        }
        let u = axis / len;
        let (amin, amax) = project(a, &u);
        let (bmin, bmax) = project(b, &u);
        if bmin - amax > clearance || amin - bmax > clearance {
            return false;
        }
    }
    true
}

fn normal(p: &[Vec3]) -> Vec3 {
    // Newell's method, robust for any vertex order.
    let mut n = Vec3::zeros();
    for i in 0..p.len() {
        let a = p[i];
        let b = p[(i + 1) % p.len()];
        n += a.cross(&b);
    }
    n
}

fn edges(p: &[Vec3]) -> Vec<Vec3> {
    (0..p.len()).map(|i| p[(i + 1) % p.len()] - p[i]).collect()
}

fn project(p: &[Vec3], u: &Vec3) -> (f64, f64) {
    p.iter().map(|v| v.dot(u)).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(d), hi.max(d)))
}
