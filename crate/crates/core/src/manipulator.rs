//! Manipulators assembled from welded Self-Lock units.
//!
//! Every unit contributes one free joint, its input deviation `theta1`. Units
//! hang off each other through plate-to-plate welds or through a rigid
//! bounding plate, forming a tree rooted at a single grounded base.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Point3;

use crate::collide::polygons_collide;
use crate::error::{domain, Error, Result};
use crate::fold::{chain_poses, plate_mesh, PlateMesh};
use crate::geometry::{rot_x, rot_z, translate, Pose, Vec3};
use crate::linkage::{
    check_self_lock_alpha, joint_state, mpf_theta1, semi_flat_theta1, theta1_of_theta4, Configuration,
};
use crate::solve::lerp;

/// Edges within this distance of a shared fold or weld seam are ignored by
/// the collision test, so that touching at a hinge does not count.
pub const CONTACT_MARGIN: f64 = 0.5;

/// Default collision clearance, mm.
pub const DEFAULT_CLEARANCE: f64 = 0.1;

/// Length cut from each edge at a trimmed corner, mm.
pub const CORNER_TRIM: f64 = 2.0;

/// Axis convention of every world frame in this module.
pub const AXES: &str = "ground plate in z=0, vertex at origin, u41=+y, u12 in xy-plane at (90deg-alpha) from +x";

#[derive(Debug, Clone, PartialEq)]
pub struct UnitSpec {
    pub alpha: f64,
    pub config: Configuration,
    /// Default plate side, mm.
    pub m: f64,
    /// Per-plate side overrides, mm; outlines scale uniformly so central
    /// angles are kept.
    pub plate_sides: Option<[f64; 4]>,
    /// Corners `(plate, corner)` trimmed by [`CORNER_TRIM`] to keep them
    /// clear of neighbours. Trims change collision outlines only.
    pub trims: Vec<(usize, usize)>,
}

impl UnitSpec {
    pub fn new(alpha: f64, config: Configuration, m: f64) -> Result<Self> {
        let u = Self { alpha, config, m, plate_sides: None, trims: Vec::new() };
        u.validate()?;
        Ok(u)
    }

    pub fn with_sides(mut self, sides: [f64; 4]) -> Result<Self> {
        self.plate_sides = Some(sides);
        self.validate()?;
        Ok(self)
    }

    pub fn with_trims(mut self, trims: Vec<(usize, usize)>) -> Result<Self> {
        self.trims = trims;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_self_lock_alpha(self.alpha)?;
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(domain("m", self.m));
        }
        if let Some(s) = self.plate_sides {
            for v in s {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(domain("plate side", v));
                }
            }
        }
        for p in 0..4 {
            self.contact_mesh(p)?;
        }
        Ok(())
    }

    pub fn side(&self, plate: usize) -> f64 {
        self.plate_sides.map_or(self.m, |s| s[plate])
    }

    /// Untrimmed outline of `plate`.
    pub fn mesh(&self, plate: usize) -> Result<PlateMesh> {
        plate_mesh(self.alpha, plate, self.side(plate))
    }

    /// Outline of `plate` after trims; corners are numbered on the
    /// untrimmed outline.
    pub fn contact_mesh(&self, plate: usize) -> Result<PlateMesh> {
        let mut corners: Vec<usize> = self.trims.iter().filter(|t| t.0 == plate).map(|t| t.1).collect();
        if self.trims.iter().any(|t| t.0 >= 4) {
            return Err(Error::Index("plate"));
        }
        corners.sort_unstable();
        if corners.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Spec("corner trimmed twice".into()));
        }
        let mut mesh = self.mesh(plate)?;
        for &c in corners.iter().rev() {
            mesh = mesh.chamfered(c, CORNER_TRIM)?;
        }
        Ok(mesh)
    }
}

/// One plate of one unit, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlateRef {
    pub unit: usize,
    pub plate: usize,
}

impl PlateRef {
    pub fn new(unit: usize, plate: usize) -> Self {
        Self { unit, plate }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Connection {
    /// Places plate `at` in the world.
    Base { at: PlateRef, pose: Pose },
    /// `child` plate pose = `parent` plate pose · `relative`.
    Weld { parent: PlateRef, child: PlateRef, relative: Pose },
    /// Square plate of side `side` placed at `parent · parent_to_plate`;
    /// the child plate sits at `plate · plate_to_child`.
    BoundingPlate { side: f64, parent: PlateRef, parent_to_plate: Pose, child: PlateRef, plate_to_child: Pose },
}

/// A corner of a plate of a unit, all 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Marker {
    pub unit: usize,
    pub plate: usize,
    pub corner: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManipulatorSpec {
    pub units: Vec<UnitSpec>,
    pub connections: Vec<Connection>,
    pub marker: Marker,
}

/// How a unit is located relative to what came before it.
#[derive(Debug, Clone, PartialEq)]
enum Link {
    Base { plate: usize, pose: Pose },
    Plate { parent: PlateRef, plate: usize, relative: Pose },
    Bounding { index: usize, plate: usize, relative: Pose },
}

#[derive(Debug, Clone, PartialEq)]
struct Bounding {
    parent: PlateRef,
    pose: Pose,
    mesh: PlateMesh,
}

/// Something that can take part in a collision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Body {
    Plate(PlateRef),
    Bounding(usize),
}

/// A validated manipulator.
#[derive(Debug, Clone, PartialEq)]
pub struct Manipulator {
    spec: ManipulatorSpec,
    order: Vec<usize>,
    links: Vec<Link>,
    bounding: Vec<Bounding>,
    meshes: Vec<[PlateMesh; 4]>,
    contact: Vec<[PlateMesh; 4]>,
    exempt: Vec<(Body, Body)>,
}

fn check_plate(spec: &ManipulatorSpec, r: PlateRef) -> Result<()> {
    if r.unit >= spec.units.len() {
        return Err(Error::Spec(format!("unit {} does not exist", r.unit + 1)));
    }
    if r.plate >= 4 {
        return Err(Error::Spec(format!("plate {} does not exist", r.plate + 1)));
    }
    Ok(())
}

fn ordered(a: Body, b: Body) -> (Body, Body) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Validates `spec` and resolves the frame chain from the base to every unit.
pub fn build(spec: ManipulatorSpec) -> Result<Manipulator> {
    let n = spec.units.len();
    if n == 0 {
        return Err(Error::Spec("no units".into()));
    }
    for u in &spec.units {
        u.validate()?;
    }
    let mut links: Vec<Option<Link>> = vec![None; n];
    let mut bounding = Vec::new();
    let mut bases = 0;
    let mut exempt = Vec::new();
    for c in &spec.connections {
        let (child, link) = match c {
            Connection::Base { at, pose } => {
                check_plate(&spec, *at)?;
                bases += 1;
                (at.unit, Link::Base { plate: at.plate, pose: *pose })
            }
            Connection::Weld { parent, child, relative } => {
                check_plate(&spec, *parent)?;
                check_plate(&spec, *child)?;
                exempt.push(ordered(Body::Plate(*parent), Body::Plate(*child)));
                (child.unit, Link::Plate { parent: *parent, plate: child.plate, relative: *relative })
            }
            Connection::BoundingPlate { side, parent, parent_to_plate, child, plate_to_child } => {
                check_plate(&spec, *parent)?;
                check_plate(&spec, *child)?;
                if !(*side > 0.0 && side.is_finite()) {
                    return Err(domain("bounding plate side", *side));
                }
                let index = bounding.len();
                bounding.push(Bounding { parent: *parent, pose: *parent_to_plate, mesh: PlateMesh::square(*side) });
                exempt.push(ordered(Body::Plate(*parent), Body::Bounding(index)));
                exempt.push(ordered(Body::Bounding(index), Body::Plate(*child)));
                (child.unit, Link::Bounding { index, plate: child.plate, relative: *plate_to_child })
            }
        };
        if links[child].is_some() {
            return Err(Error::Spec(format!("unit {} is attached more than once", child + 1)));
        }
        links[child] = Some(link);
    }
    if bases != 1 {
        return Err(Error::Spec(format!("expected exactly one base, found {bases}")));
    }
    let links: Vec<Link> = links
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| Error::Spec(format!("unit {} is not attached", i + 1))))
        .collect::<Result<_>>()?;

    // Breadth-first order from the base; units not reached sit on a cycle.
    let parent_of = |l: &Link| match l {
        Link::Base { .. } => None,
        Link::Plate { parent, .. } => Some(parent.unit),
        Link::Bounding { index, .. } => Some(bounding[*index].parent.unit),
    };
    let mut order = Vec::with_capacity(n);
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| parent_of(&links[i]).is_none()).collect();
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for (c, l) in links.iter().enumerate() {
            if parent_of(l) == Some(u) {
                queue.push_back(c);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Spec("connections contain a cycle".into()));
    }

    let m = spec.marker;
    if m.unit >= n || m.plate >= 4 {
        return Err(Error::Spec("marker does not resolve".into()));
    }
    let meshes = spec
        .units
        .iter()
        .map(|u| Ok([u.mesh(0)?, u.mesh(1)?, u.mesh(2)?, u.mesh(3)?]))
        .collect::<Result<Vec<_>>>()?;
    let contact = spec
        .units
        .iter()
        .map(|u| {
            let c = |p| u.contact_mesh(p).map(|x| x.inset(CONTACT_MARGIN));
            Ok([c(0)?, c(1)?, c(2)?, c(3)?])
        })
        .collect::<Result<Vec<_>>>()?;
    if m.corner >= meshes[m.unit][m.plate].vertices.len() {
        return Err(Error::Spec("marker corner does not resolve".into()));
    }
    for u in 0..n {
        for p in 0..4 {
            let q = (p + 1) % 4;
            exempt.push(ordered(Body::Plate(PlateRef::new(u, p)), Body::Plate(PlateRef::new(u, q))));
        }
    }
    exempt.sort();
    exempt.dedup();
    Ok(Manipulator { spec, order, links, bounding, meshes, contact, exempt })
}

/// World placement of every plate for one set of joint values.
#[derive(Debug, Clone, PartialEq)]
pub struct Assembly {
    /// Plate poses per unit.
    pub plates: Vec<[Pose; 4]>,
    pub bounding: Vec<Pose>,
}

impl Manipulator {
    pub fn spec(&self) -> &ManipulatorSpec {
        &self.spec
    }

    /// Number of free scalar joints.
    pub fn degrees_of_freedom(&self) -> usize {
        self.spec.units.len()
    }

    /// Plate outline of `r`.
    pub fn mesh(&self, r: PlateRef) -> &PlateMesh {
        &self.meshes[r.unit][r.plate]
    }

    pub fn bounding_mesh(&self, i: usize) -> &PlateMesh {
        &self.bounding[i].mesh
    }

    /// Places every plate for input deviations `theta1`, one per unit.
    pub fn assemble(&self, theta1: &[f64]) -> Result<Assembly> {
        let n = self.spec.units.len();
        if theta1.len() != n {
            return Err(Error::Index("joint"));
        }
        let mut plates: Vec<Option<[Pose; 4]>> = vec![None; n];
        let mut bounding: Vec<Option<Pose>> = vec![None; self.bounding.len()];
        for &u in &self.order {
            let spec = &self.spec.units[u];
            let local = chain_poses(spec.alpha, joint_state(spec.alpha, theta1[u], spec.config)?.world_angles());
            let world_of = |plates: &[Option<[Pose; 4]>], r: PlateRef| plates[r.unit].expect("parent placed")[r.plate];
            let (anchor, plate) = match &self.links[u] {
                Link::Base { plate, pose } => (*pose, *plate),
                Link::Plate { parent, plate, relative } => (world_of(&plates, *parent) * relative, *plate),
                Link::Bounding { index, plate, relative } => {
                    let b = &self.bounding[*index];
                    let bp = world_of(&plates, b.parent) * b.pose;
                    bounding[*index] = Some(bp);
                    (bp * relative, *plate)
                }
            };
            let frame = anchor * local[plate].inverse();
            plates[u] = Some(local.map(|p| frame * p));
        }
        Ok(Assembly {
            plates: plates.into_iter().map(|p| p.expect("all units placed")).collect(),
            bounding: bounding.into_iter().map(|p| p.expect("all bounding plates placed")).collect(),
        })
    }

    /// World position of the marker.
    pub fn marker(&self, assembly: &Assembly) -> Vec3 {
        let m = self.spec.marker;
        let v = self.meshes[m.unit][m.plate].vertices[m.corner];
        (assembly.plates[m.unit][m.plate] * Point3::new(v.x, v.y, 0.0)).coords
    }

    fn bodies(&self) -> Vec<Body> {
        let mut out = Vec::new();
        for u in 0..self.spec.units.len() {
            for p in 0..4 {
                out.push(Body::Plate(PlateRef::new(u, p)));
            }
        }
        out.extend((0..self.bounding.len()).map(Body::Bounding));
        out
    }

    /// Pairs of bodies checked for collision: everything except plates that
    /// share a fold, a weld or a bounding-plate attachment.
    pub fn checked_pairs(&self) -> Vec<(Body, Body)> {
        let b = self.bodies();
        let mut out = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let pair = ordered(b[i], b[j]);
                if self.exempt.binary_search(&pair).is_err() {
                    out.push(pair);
                }
            }
        }
        out
    }

    /// First colliding pair, if any.
    pub fn first_collision(&self, assembly: &Assembly, clearance: f64) -> Option<(Body, Body)> {
        let placed = |b: Body| -> Vec<Vec3> {
            match b {
                Body::Plate(r) => self.contact[r.unit][r.plate].placed(&assembly.plates[r.unit][r.plate]),
                Body::Bounding(i) => self.bounding[i].mesh.inset(CONTACT_MARGIN).placed(&assembly.bounding[i]),
            }
        };
        let bodies = self.bodies();
        let polys: Vec<Vec<Vec3>> = bodies.iter().map(|&b| placed(b)).collect();
        let index = |b: Body| bodies.iter().position(|&x| x == b).expect("known body");
        self.checked_pairs()
            .into_iter()
            .find(|&(a, b)| polygons_collide(&polys[index(a)], &polys[index(b)], clearance))
    }
}

/// Where a phase drives its unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// `|theta4|` equal to the schedule's MPF angle.
    Mpf,
    SemiFlat,
    /// `|theta4|` equal to the given angle.
    OutputAngle(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    /// 0-based unit index.
    pub unit: usize,
    pub target: Target,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// One phase after another.
    Sequential,
    /// All phases in lockstep.
    Simultaneous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActivationSchedule {
    pub phases: Vec<Phase>,
    pub mode: Mode,
    /// MPF angle, rad.
    pub gamma: f64,
}

impl ActivationSchedule {
    pub fn new(phases: Vec<Phase>, mode: Mode) -> Self {
        Self { phases, mode, gamma: crate::DEFAULT_GAMMA }
    }

    /// Sequential MPF folds of the given 0-based units.
    pub fn sequential_mpf(units: &[usize], steps: usize) -> Self {
        Self::new(units.iter().map(|&unit| Phase { unit, target: Target::Mpf, steps }).collect(), Mode::Sequential)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    /// Phase index plus the fraction of that phase completed.
    pub t: f64,
    /// `theta1` of every unit.
    pub joints: Vec<f64>,
    pub marker: Vec3,
    pub assembly: Option<Assembly>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseReport {
    pub unit: usize,
    pub target_theta1: f64,
    pub requested: usize,
    pub committed: usize,
    /// Set when a collision ended the phase early.
    pub collided: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub frames: Vec<Frame>,
    pub phases: Vec<PhaseReport>,
    pub gamma: f64,
    pub alphas: Vec<f64>,
    pub axes: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub clearance: f64,
    /// Keep every plate pose in the frames.
    pub record_poses: bool,
    /// Skip collision checks entirely.
    pub ignore_collisions: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { clearance: DEFAULT_CLEARANCE, record_poses: false, ignore_collisions: false }
    }
}

/// Input deviation reached by `target` on `unit`.
pub fn target_theta1(unit: &UnitSpec, target: Target, gamma: f64) -> Result<f64> {
    match target {
        Target::Mpf => mpf_theta1(unit.alpha, gamma, unit.config),
        Target::SemiFlat => semi_flat_theta1(unit.alpha, unit.config),
        Target::OutputAngle(a) => {
            if !(a > 0.0 && a < PI) {
                return Err(domain("output angle", a));
            }
            theta1_of_theta4(unit.alpha, unit.config.sign() * a, unit.config)
        }
    }
}

fn validate_schedule(m: &Manipulator, s: &ActivationSchedule) -> Result<()> {
    for p in &s.phases {
        if p.unit >= m.spec.units.len() {
            return Err(Error::Schedule(format!("unit {} does not exist", p.unit + 1)));
        }
        if p.steps == 0 {
            return Err(Error::Schedule("steps must be at least 1".into()));
        }
    }
    if s.mode == Mode::Simultaneous {
        let mut seen: Vec<usize> = s.phases.iter().map(|p| p.unit).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Schedule("a unit appears twice in a simultaneous schedule".into()));
        }
    }
    if !(s.gamma > 0.0 && s.gamma <= FRAC_PI_2) {
        return Err(domain("gamma", s.gamma));
    }
    Ok(())
}

/// Runs `schedule` from the semi-flat state, stopping any phase at its last
/// collision-free step.
pub fn run(manipulator: &Manipulator, schedule: &ActivationSchedule, collision_clearance: f64) -> Result<Trajectory> {
    run_with(manipulator, schedule, RunOptions { clearance: collision_clearance, ..RunOptions::default() })
}

pub fn run_with(m: &Manipulator, schedule: &ActivationSchedule, opts: RunOptions) -> Result<Trajectory> {
    validate_schedule(m, schedule)?;
    if !(opts.clearance >= 0.0) {
        return Err(domain("clearance", opts.clearance));
    }
    let units = &m.spec.units;
    let mut theta: Vec<f64> = units.iter().map(|u| semi_flat_theta1(u.alpha, u.config)).collect::<Result<_>>()?;
    let frame = |t: f64, theta: &[f64], asm: Assembly| Frame {
        t,
        joints: theta.to_vec(),
        marker: m.marker(&asm),
        assembly: if opts.record_poses { Some(asm) } else { None },
    };
    let blocked = |asm: &Assembly| !opts.ignore_collisions && m.first_collision(asm, opts.clearance).is_some();
    let mut frames = vec![frame(0.0, &theta, m.assemble(&theta)?)];
    let mut reports = Vec::with_capacity(schedule.phases.len());
    match schedule.mode {
        Mode::Sequential => {
            for (i, ph) in schedule.phases.iter().enumerate() {
                let target = target_theta1(&units[ph.unit], ph.target, schedule.gamma)?;
                let start = theta[ph.unit];
                let mut report =
                    PhaseReport { unit: ph.unit, target_theta1: target, requested: ph.steps, committed: 0, collided: false };
                for k in 1..=ph.steps {
                    let f = k as f64 / ph.steps as f64;
                    let mut next = theta.clone();
                    next[ph.unit] = lerp(start, target, f);
                    let asm = m.assemble(&next)?;
                    if blocked(&asm) {
                        report.collided = true;
                        break;
                    }
                    theta = next;
                    report.committed = k;
                    frames.push(frame(i as f64 + f, &theta, asm));
                }
                reports.push(report);
            }
        }
        Mode::Simultaneous => {
            let steps = schedule.phases.iter().map(|p| p.steps).max().unwrap_or(0);
            let targets: Vec<f64> = schedule
                .phases
                .iter()
                .map(|p| target_theta1(&units[p.unit], p.target, schedule.gamma))
                .collect::<Result<_>>()?;
            let start = theta.clone();
            let mut committed = 0;
            let mut collided = false;
            for k in 1..=steps {
                let f = k as f64 / steps as f64;
                let mut next = theta.clone();
                for (p, &t) in schedule.phases.iter().zip(&targets) {
                    next[p.unit] = lerp(start[p.unit], t, f);
                }
                let asm = m.assemble(&next)?;
                if blocked(&asm) {
                    collided = true;
                    break;
                }
                theta = next;
                committed = k;
                frames.push(frame(f, &theta, asm));
            }
            for (p, &t) in schedule.phases.iter().zip(&targets) {
                reports.push(PhaseReport { unit: p.unit, target_theta1: t, requested: steps, committed, collided });
            }
        }
    }
    Ok(Trajectory {
        frames,
        phases: reports,
        gamma: schedule.gamma,
        alphas: units.iter().map(|u| u.alpha).collect(),
        axes: AXES,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    XY,
    YZ,
    XZ,
}

/// Marker path projected onto `plane`.
pub fn workspace_projection(traj: &Trajectory, plane: Plane) -> Vec<[f64; 2]> {
    traj.frames
        .iter()
        .map(|f| {
            let p = f.marker;
            match plane {
                Plane::XY => [p.x, p.y],
                Plane::YZ => [p.y, p.z],
                Plane::XZ => [p.x, p.z],
            }
        })
        .collect()
}

/// Face-to-face weld onto a square of side `s`, turned half a revolution
/// about the plate normal so the two vertices sit at opposite corners.
pub fn weld_opposite_corner(s: f64) -> Pose {
    translate(s, s, 0.0) * rot_z(PI)
}

/// Face-to-face weld onto a square of side `s`, turned a quarter revolution
/// clockwise so the child vertex lands on the parent corner `(0, s)`.
pub fn weld_quarter_turn(s: f64) -> Pose {
    translate(0.0, s, 0.0) * rot_z(3.0 * FRAC_PI_2)
}

/// Back-to-back weld onto a square of side `s`, flipped about the diagonal
/// through `(0, s)` and `(s, 0)`.
pub fn weld_flip_diagonal(s: f64) -> Pose {
    translate(s, s, 0.0) * rot_z(3.0 * FRAC_PI_2) * rot_x(PI)
}

/// Two `Down` units; plate 4 of the first is welded to plate 1 of the
/// second, and the marker is the outer corner of the second unit's plate 4.
pub fn preset_rotational(alpha1: f64, alpha2: f64) -> Result<ManipulatorSpec> {
    let m = crate::DEFAULT_PLATE_SIDE;
    let units = vec![
        UnitSpec::new(alpha1, Configuration::Down, m)?,
        UnitSpec::new(alpha2, Configuration::Down, m)?,
    ];
    Ok(ManipulatorSpec {
        units,
        connections: vec![
            Connection::Base { at: PlateRef::new(0, 0), pose: Pose::identity() },
            Connection::Weld { parent: PlateRef::new(0, 3), child: PlateRef::new(1, 0), relative: weld_opposite_corner(m) },
        ],
        marker: Marker { unit: 1, plate: 3, corner: 2 },
    })
}

/// Units chained plate 3 to plate 4 with back-to-back welds. The chain
/// splits after its first half; a square bounding plate of side
/// `bounding_plate_side` stands at a right angle on an edge of plate 3 of
/// the last unit in the first half and carries plate 2 of the next unit.
/// Unit 1 is grounded; the marker is on plate 3 of the last unit.
pub fn preset_modular(units: Vec<UnitSpec>, bounding_plate_side: f64) -> Result<ManipulatorSpec> {
    if units.is_empty() {
        return Err(Error::Spec("no units".into()));
    }
    if !(bounding_plate_side > 0.0 && bounding_plate_side.is_finite()) {
        return Err(domain("bounding plate side", bounding_plate_side));
    }
    for u in &units {
        u.validate()?;
    }
    let n = units.len();
    let split = n.div_ceil(2);
    let b = bounding_plate_side;
    let mut connections = vec![Connection::Base { at: PlateRef::new(0, 0), pose: Pose::identity() }];
    for i in 1..n {
        let parent = PlateRef::new(i - 1, 2);
        let s = units[i - 1].side(2);
        connections.push(if i == split {
            Connection::BoundingPlate {
                side: b,
                parent,
                parent_to_plate: translate(s, 0.0, 0.0) * rot_z(FRAC_PI_2) * rot_x(FRAC_PI_2),
                child: PlateRef::new(i, 1),
                plate_to_child: translate(0.0, b, 0.0) * rot_x(PI),
            }
        } else {
            Connection::Weld { parent, child: PlateRef::new(i, 3), relative: weld_flip_diagonal(s) }
        });
    }
    Ok(ManipulatorSpec { units, connections, marker: Marker { unit: n - 1, plate: 2, corner: 2 } })
}

/// Eight `Down` units of equal `alpha` and the default plate side.
pub fn preset_modular_uniform(alpha: f64) -> Result<ManipulatorSpec> {
    let m = crate::DEFAULT_PLATE_SIDE;
    let unit = UnitSpec::new(alpha, Configuration::Down, m)?;
    preset_modular(vec![unit; 8], m)
}

/// Inner plate lengths `(f, q) = (d cot γ, d sec γ)` of the zigzag.
pub fn translational_sizing(gamma: f64, d: f64) -> Result<(f64, f64)> {
    if !(gamma > 0.0 && gamma < FRAC_PI_2) {
        return Err(domain("gamma", gamma));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(domain("d", d));
    }
    let (s, c) = libm::sincos(gamma);
    Ok((d * c / s, d / c))
}

/// Four units alternating `Down` and `Up`, joined through shared square
/// plates: plate 4 to plate 4 face-to-face, then plate 3 to plate 3
/// back-to-back, then plate 4 to plate 4 again. The shared plates measure
/// `q`, `f`, `q`; all other plates keep the default side.
pub fn preset_translational(alpha: f64, gamma: f64, d: f64) -> Result<ManipulatorSpec> {
    let (f, q) = translational_sizing(gamma, d)?;
    let m = crate::DEFAULT_PLATE_SIDE;
    use Configuration::{Down, Up};
    let units = vec![
        UnitSpec::new(alpha, Down, m)?.with_sides([m, m, m, q])?,
        UnitSpec::new(alpha, Up, m)?.with_sides([m, m, f, q])?,
        UnitSpec::new(alpha, Down, m)?.with_sides([m, m, f, q])?,
        UnitSpec::new(alpha, Up, m)?.with_sides([m, m, m, q])?,
    ];
    Ok(ManipulatorSpec {
        units,
        connections: vec![
            Connection::Base { at: PlateRef::new(0, 0), pose: Pose::identity() },
            Connection::Weld { parent: PlateRef::new(0, 3), child: PlateRef::new(1, 3), relative: weld_quarter_turn(q) },
            Connection::Weld { parent: PlateRef::new(1, 2), child: PlateRef::new(2, 2), relative: weld_flip_diagonal(f) },
            Connection::Weld { parent: PlateRef::new(2, 3), child: PlateRef::new(3, 3), relative: weld_quarter_turn(q) },
        ],
        marker: Marker { unit: 3, plate: 1, corner: 2 },
    })
}

/// Simultaneous drive of the translational preset: outer joints to a 90°
/// output angle, inner joints to MPF.
pub fn translational_schedule(gamma: f64, steps: usize) -> ActivationSchedule {
    let phase = |unit, target| Phase { unit, target, steps };
    ActivationSchedule {
        phases: vec![
            phase(0, Target::OutputAngle(FRAC_PI_2)),
            phase(1, Target::Mpf),
            phase(2, Target::Mpf),
            phase(3, Target::OutputAngle(FRAC_PI_2)),
        ],
        mode: Mode::Simultaneous,
        gamma,
    }
}
