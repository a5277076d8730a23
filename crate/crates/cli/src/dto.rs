//! JSON records. Angles are degrees and unit, plate and corner numbers are
//! 1-based at this boundary.

use serde::{Deserialize, Serialize};

use selflock_core::geometry::{euler_of, pose_from_euler, Pose};
use selflock_core::manipulator::{
    ActivationSchedule, Connection, ManipulatorSpec, Marker, Mode, Phase, PlateRef, Target, UnitSpec,
};
use selflock_core::{Configuration, JointState};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConfigDto {
    Up,
    Down,
}

impl From<ConfigDto> for Configuration {
    fn from(c: ConfigDto) -> Self {
        match c {
            ConfigDto::Up => Configuration::Up,
            ConfigDto::Down => Configuration::Down,
        }
    }
}

impl From<Configuration> for ConfigDto {
    fn from(c: Configuration) -> Self {
        match c {
            Configuration::Up => ConfigDto::Up,
            Configuration::Down => ConfigDto::Down,
        }
    }
}

fn default_m() -> f64 {
    selflock_core::DEFAULT_PLATE_SIDE
}

fn default_gamma() -> f64 {
    36.5
}

fn default_steps() -> usize {
    30
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitDto {
    pub alpha_deg: f64,
    pub config: ConfigDto,
    #[serde(default = "default_m")]
    pub m_mm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plate_sides_mm: Option<[f64; 4]>,
    /// `[plate, corner]` pairs, 1-based, of corners cut for clearance.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trim_corners: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlateDto {
    pub unit: usize,
    pub plate: usize,
}

/// Rigid pose; the rotation is `Rz(z) · Ry(y) · Rx(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseDto {
    #[serde(default)]
    pub translation_mm: [f64; 3],
    #[serde(default)]
    pub rotation_deg: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ConnectionDto {
    Base {
        at: PlateDto,
        #[serde(default)]
        pose: PoseDto,
    },
    Weld {
        parent: PlateDto,
        child: PlateDto,
        relative: PoseDto,
    },
    BoundingPlate {
        side_mm: f64,
        parent: PlateDto,
        parent_to_plate: PoseDto,
        child: PlateDto,
        plate_to_child: PoseDto,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkerDto {
    pub unit: usize,
    pub plate: usize,
    pub corner: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeDto {
    #[default]
    Sequential,
    Simultaneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetDto {
    Mpf,
    SemiFlat,
    OutputDeg(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseDto {
    pub unit: usize,
    pub target: TargetDto,
    #[serde(default = "default_steps")]
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDto {
    #[serde(default)]
    pub mode: ModeDto,
    #[serde(default = "default_gamma")]
    pub gamma_deg: f64,
    pub phases: Vec<PhaseDto>,
}

/// A manipulator description with an optional schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub units: Vec<UnitDto>,
    pub connections: Vec<ConnectionDto>,
    pub marker: MarkerDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleDto>,
}

fn index(n: usize, what: &str) -> Result<usize, CliError> {
    n.checked_sub(1).ok_or_else(|| CliError::Spec(format!("{what} numbers start at 1")))
}

impl PlateDto {
    fn to_core(self) -> Result<PlateRef, CliError> {
        Ok(PlateRef::new(index(self.unit, "unit")?, index(self.plate, "plate")?))
    }

    fn from_core(r: PlateRef) -> Self {
        Self { unit: r.unit + 1, plate: r.plate + 1 }
    }
}

impl PoseDto {
    pub fn to_core(self) -> Pose {
        pose_from_euler(self.translation_mm, self.rotation_deg.map(f64::to_radians))
    }

    pub fn from_core(p: &Pose) -> Self {
        let (t, r) = euler_of(p);
        // Adding zero turns -0.0 into 0.0.
        Self { translation_mm: t.map(|v| v + 0.0), rotation_deg: r.map(|v| v.to_degrees() + 0.0) }
    }
}

impl SpecFile {
    pub fn to_core(&self) -> Result<ManipulatorSpec, CliError> {
        let units = self
            .units
            .iter()
            .map(|u| {
                Ok(UnitSpec {
                    alpha: u.alpha_deg.to_radians(),
                    config: u.config.into(),
                    m: u.m_mm,
                    plate_sides: u.plate_sides_mm,
                    trims: u
                        .trim_corners
                        .iter()
                        .map(|&[p, c]| Ok((index(p, "plate")?, index(c, "corner")?)))
                        .collect::<Result<_, CliError>>()?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let connections = self
            .connections
            .iter()
            .map(|c| {
                Ok(match c {
                    ConnectionDto::Base { at, pose } => Connection::Base { at: at.to_core()?, pose: pose.to_core() },
                    ConnectionDto::Weld { parent, child, relative } => Connection::Weld {
                        parent: parent.to_core()?,
                        child: child.to_core()?,
                        relative: relative.to_core(),
                    },
                    ConnectionDto::BoundingPlate { side_mm, parent, parent_to_plate, child, plate_to_child } => {
                        Connection::BoundingPlate {
                            side: *side_mm,
                            parent: parent.to_core()?,
                            parent_to_plate: parent_to_plate.to_core(),
                            child: child.to_core()?,
                            plate_to_child: plate_to_child.to_core(),
                        }
                    }
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let m = self.marker;
        let marker =
            Marker { unit: index(m.unit, "unit")?, plate: index(m.plate, "plate")?, corner: index(m.corner, "corner")? };
        Ok(ManipulatorSpec { units, connections, marker })
    }

    pub fn from_core(spec: &ManipulatorSpec, schedule: Option<&ActivationSchedule>) -> Self {
        let units = spec
            .units
            .iter()
            .map(|u| UnitDto {
                alpha_deg: u.alpha.to_degrees(),
                config: u.config.into(),
                m_mm: u.m,
                plate_sides_mm: u.plate_sides,
                trim_corners: u.trims.iter().map(|&(p, c)| [p + 1, c + 1]).collect(),
            })
            .collect();
        let connections = spec
            .connections
            .iter()
            .map(|c| match c {
                Connection::Base { at, pose } => {
                    ConnectionDto::Base { at: PlateDto::from_core(*at), pose: PoseDto::from_core(pose) }
                }
                Connection::Weld { parent, child, relative } => ConnectionDto::Weld {
                    parent: PlateDto::from_core(*parent),
                    child: PlateDto::from_core(*child),
                    relative: PoseDto::from_core(relative),
                },
                Connection::BoundingPlate { side, parent, parent_to_plate, child, plate_to_child } => {
                    ConnectionDto::BoundingPlate {
                        side_mm: *side,
                        parent: PlateDto::from_core(*parent),
                        parent_to_plate: PoseDto::from_core(parent_to_plate),
                        child: PlateDto::from_core(*child),
                        plate_to_child: PoseDto::from_core(plate_to_child),
                    }
                }
            })
            .collect();
        let m = spec.marker;
        Self {
            units,
            connections,
            marker: MarkerDto { unit: m.unit + 1, plate: m.plate + 1, corner: m.corner + 1 },
            schedule: schedule.map(ScheduleDto::from_core),
        }
    }
}

impl ScheduleDto {
    pub fn to_core(&self) -> Result<ActivationSchedule, CliError> {
        let phases = self
            .phases
            .iter()
            .map(|p| {
                Ok(Phase {
                    unit: p.unit.checked_sub(1).ok_or_else(|| CliError::Usage("unit numbers start at 1".into()))?,
                    target: match p.target {
                        TargetDto::Mpf => Target::Mpf,
                        TargetDto::SemiFlat => Target::SemiFlat,
                        TargetDto::OutputDeg(d) => Target::OutputAngle(d.to_radians()),
                    },
                    steps: p.steps,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let mode = match self.mode {
            ModeDto::Sequential => Mode::Sequential,
            ModeDto::Simultaneous => Mode::Simultaneous,
        };
        Ok(ActivationSchedule { phases, mode, gamma: self.gamma_deg.to_radians() })
    }

    pub fn from_core(s: &ActivationSchedule) -> Self {
        Self {
            mode: match s.mode {
                Mode::Sequential => ModeDto::Sequential,
                Mode::Simultaneous => ModeDto::Simultaneous,
            },
            gamma_deg: s.gamma.to_degrees(),
            phases: s
                .phases
                .iter()
                .map(|p| PhaseDto {
                    unit: p.unit + 1,
                    target: match p.target {
                        Target::Mpf => TargetDto::Mpf,
                        Target::SemiFlat => TargetDto::SemiFlat,
                        Target::OutputAngle(a) => TargetDto::OutputDeg(a.to_degrees()),
                    },
                    steps: p.steps,
                })
                .collect(),
        }
    }

    /// Parses `1:mpf,2:mpf` (one phase after another) or
    /// `1:out=90&2:mpf` (phases in lockstep). A phase may end in `@steps`.
    pub fn parse(text: &str, default_steps: usize, gamma_deg: f64) -> Result<Self, CliError> {
        let text = text.trim();
        let (mode, parts): (ModeDto, Vec<&str>) = match (text.contains(','), text.contains('&')) {
            (true, true) => return Err(CliError::Usage("a schedule cannot mix ',' and '&'".into())),
            (false, true) => (ModeDto::Simultaneous, text.split('&').collect()),
            _ => (ModeDto::Sequential, if text.is_empty() { vec![] } else { text.split(',').collect() }),
        };
        let bad = |p: &str| CliError::Usage(format!("bad schedule phase '{p}'"));
        let phases = parts
            .into_iter()
            .map(|p| {
                let (body, steps) = match p.split_once('@') {
                    Some((b, s)) => (b, s.trim().parse().map_err(|_| bad(p))?),
                    None => (p, default_steps),
                };
                let (unit, target) = body.split_once(':').ok_or_else(|| bad(p))?;
                let unit: usize = unit.trim().parse().map_err(|_| bad(p))?;
                let target = match target.trim() {
                    "mpf" => TargetDto::Mpf,
                    "semiflat" | "semi-flat" | "semi_flat" => TargetDto::SemiFlat,
                    t => {
                        let deg = t.strip_prefix("out=").ok_or_else(|| bad(p))?;
                        TargetDto::OutputDeg(deg.trim().parse().map_err(|_| bad(p))?)
                    }
                };
                Ok(PhaseDto { unit, target, steps })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Self { mode, gamma_deg, phases })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointStateDto {
    pub theta1_deg: f64,
    pub theta2_deg: f64,
    pub theta3_deg: f64,
    pub theta4_deg: f64,
}

impl From<&JointState> for JointStateDto {
    fn from(s: &JointState) -> Self {
        Self {
            theta1_deg: s.theta1.to_degrees(),
            theta2_deg: s.theta2.to_degrees(),
            theta3_deg: s.theta3.to_degrees(),
            theta4_deg: s.theta4.to_degrees(),
        }
    }
}
