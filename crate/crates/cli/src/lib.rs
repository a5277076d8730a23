//! Command-line front end: kinematic sweeps, moment curves, manipulator
//! trajectories and joint states, exported as CSV, JSON or SVG.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use selflock_core::linkage::{check_self_lock_alpha, joint_state, mpf_theta1, semi_flat_theta1, sweep};
use selflock_core::manipulator::{
    self, build, preset_modular, preset_rotational, preset_translational, run, translational_sizing,
    translational_schedule, workspace_projection, ActivationSchedule, ManipulatorSpec, Plane, Trajectory, UnitSpec,
};
use selflock_core::moment::moment_curve;
use selflock_core::pouch::{pouch_geometry, ActuatorConditions};
use selflock_core::Configuration;

pub mod dto;
pub mod error;
pub mod format;
pub mod svg;

use dto::{ConfigDto, JointStateDto, ScheduleDto, SpecFile};
pub use error::CliError;
use format::{csv_row, round9};

pub const SWEEP_HEADER: &str = "theta1_deg,theta2_deg,theta3_deg,theta4_deg";
pub const MOMENT_HEADER: &str = "theta1_deg,S_rad,M_input_Nm,MA,M_output_Nm";

#[derive(Debug, Parser)]
#[command(name = "selflock", version, about = "Self-Lock Origami joint and manipulator simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint angles over a range of input angles.
    Sweep(SweepArgs),
    /// Pouch moment, mechanical advantage and output moment.
    Moment(MomentArgs),
    /// Manipulator trajectory from a preset or a spec file.
    Manip(ManipArgs),
    /// Semi-flat and MPF states of one joint, printed as JSON.
    States(StatesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrajectoryFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Xy,
    Yz,
    Xz,
}

impl PlaneArg {
    fn plane(self) -> Plane {
        match self {
            PlaneArg::Xy => Plane::XY,
            PlaneArg::Yz => Plane::YZ,
            PlaneArg::Xz => Plane::XZ,
        }
    }

    fn label(self) -> &'static str {
        match self {
            PlaneArg::Xy => "xy",
            PlaneArg::Yz => "yz",
            PlaneArg::Xz => "xz",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_deg: f64,
    #[arg(long, value_enum, default_value = "up")]
    pub config: ConfigDto,
    #[arg(long, default_value_t = -179.0, allow_hyphen_values = true)]
    pub min_deg: f64,
    #[arg(long, default_value_t = 179.0, allow_hyphen_values = true)]
    pub max_deg: f64,
    #[arg(long, default_value_t = 359)]
    pub steps: usize,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_deg: f64,
    #[arg(long, value_enum, default_value = "up")]
    pub config: ConfigDto,
    #[arg(long, default_value_t = -90.0, allow_hyphen_values = true)]
    pub min_deg: f64,
    #[arg(long, default_value_t = 90.0, allow_hyphen_values = true)]
    pub max_deg: f64,
    #[arg(long, default_value_t = 181)]
    pub steps: usize,
    #[arg(long, default_value_t = 10_000.0, allow_hyphen_values = true)]
    pub pressure_pa: f64,
    #[arg(long, default_value_t = 25.0, allow_hyphen_values = true)]
    pub m_mm: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct ManipArgs {
    #[command(subcommand)]
    pub preset: Option<Preset>,
    /// Manipulator spec file (JSON); replaces the preset.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Phases such as `1:mpf,2:mpf` or `1:out=90&2:mpf`; a phase may end in `@steps`.
    #[arg(long, global = true)]
    pub schedule: Option<String>,
    /// Steps per phase when the schedule does not say.
    #[arg(long, global = true, default_value_t = 30)]
    pub steps: usize,
    #[arg(long, global = true, default_value_t = manipulator::DEFAULT_CLEARANCE)]
    pub clearance_mm: f64,
    #[arg(long, global = true, default_value_t = 36.5)]
    pub gamma_deg: f64,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: TrajectoryFormat,
    /// Planes drawn in SVG output.
    #[arg(long, global = true, value_enum, value_delimiter = ',', default_value = "xy")]
    pub projection: Vec<PlaneArg>,
}

#[derive(Debug, Subcommand)]
pub enum Preset {
    /// Two downward units welded output plate to input plate.
    Rotational {
        #[arg(long, value_delimiter = ',', default_value = "80,80")]
        alpha_deg: Vec<f64>,
    },
    /// Four units alternating down and up, sized for straight travel.
    Translational {
        #[arg(long, default_value_t = 89.0)]
        alpha_deg: f64,
        #[arg(long, default_value_t = 25.0)]
        d_mm: f64,
    },
    /// Two chains joined at a right angle by a bounding plate.
    Modular {
        /// One value per unit, or a single value shared by `--units` units.
        #[arg(long, value_delimiter = ',', default_value = "89")]
        alpha_deg: Vec<f64>,
        #[arg(long)]
        units: Option<usize>,
        #[arg(long, value_enum, default_value = "down")]
        config: ConfigDto,
        #[arg(long, default_value_t = 25.0)]
        bounding_side_mm: f64,
    },
}

#[derive(Debug, Args)]
pub struct StatesArgs {
    #[arg(long)]
    pub alpha_deg: f64,
    #[arg(long, value_enum, default_value = "up")]
    pub config: ConfigDto,
    #[arg(long, default_value_t = 36.5)]
    pub gamma_deg: f64,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Sweep(a) => emit(a.out.as_deref(), &cmd_sweep(a)?),
        Command::Moment(a) => emit(a.out.as_deref(), &cmd_moment(a)?),
        Command::Manip(a) => emit(a.out.as_deref(), &cmd_manip(a)?),
        Command::States(a) => emit(None, &cmd_states(a)?),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn usage(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg.into()))
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct SweepJson {
    alpha_deg: f64,
    config: ConfigDto,
    theta1_min_deg: f64,
    theta1_max_deg: f64,
    steps: usize,
    rows: Vec<JointStateDto>,
}

fn rounded_state(s: &selflock_core::JointState) -> JointStateDto {
    let d = JointStateDto::from(s);
    JointStateDto {
        theta1_deg: round9(d.theta1_deg),
        theta2_deg: round9(d.theta2_deg),
        theta3_deg: round9(d.theta3_deg),
        theta4_deg: round9(d.theta4_deg),
    }
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<String, CliError> {
    usage(a.steps >= 2, "--steps must be at least 2")?;
    usage(a.min_deg < a.max_deg, "--min-deg must be below --max-deg")?;
    check_self_lock_alpha(a.alpha_deg.to_radians())?;
    let table = sweep(a.alpha_deg.to_radians(), a.config.into(), a.min_deg.to_radians(), a.max_deg.to_radians(), a.steps)?;
    Ok(match a.format {
        TableFormat::Csv => {
            let mut s = String::from(SWEEP_HEADER);
            s.push('\n');
            for r in &table.rows {
                let d = JointStateDto::from(r);
                s.push_str(&csv_row(&[d.theta1_deg, d.theta2_deg, d.theta3_deg, d.theta4_deg]));
                s.push('\n');
            }
            s
        }
        TableFormat::Json => to_json(&SweepJson {
            alpha_deg: a.alpha_deg,
            config: a.config,
            theta1_min_deg: a.min_deg,
            theta1_max_deg: a.max_deg,
            steps: a.steps,
            rows: table.rows.iter().map(rounded_state).collect(),
        }),
    })
}

#[derive(Serialize)]
struct MomentRowJson {
    theta1_deg: f64,
    #[serde(rename = "S_rad")]
    s_rad: f64,
    #[serde(rename = "M_input_Nm")]
    m_input_nm: f64,
    #[serde(rename = "MA")]
    ma: f64,
    #[serde(rename = "M_output_Nm")]
    m_output_nm: f64,
}

#[derive(Serialize)]
struct MomentJson {
    alpha_deg: f64,
    config: ConfigDto,
    pressure_pa: f64,
    m_mm: f64,
    rows: Vec<MomentRowJson>,
}

pub fn cmd_moment(a: &MomentArgs) -> Result<String, CliError> {
    usage(a.steps >= 2, "--steps must be at least 2")?;
    usage(a.min_deg < a.max_deg, "--min-deg must be below --max-deg")?;
    let alpha = a.alpha_deg.to_radians();
    check_self_lock_alpha(alpha)?;
    let geom = pouch_geometry(a.m_mm, alpha)?;
    let cond = ActuatorConditions::new(a.pressure_pa)?;
    let rows = moment_curve(alpha, a.config.into(), &geom, &cond, a.min_deg.to_radians(), a.max_deg.to_radians(), a.steps)?;
    let values = |r: &selflock_core::moment::MomentCurveRow| [r.theta1.to_degrees(), r.s, r.m_input, r.ma, r.m_output];
    Ok(match a.format {
        TableFormat::Csv => {
            let mut s = String::from(MOMENT_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&csv_row(&values(r)));
                s.push('\n');
            }
            s
        }
        TableFormat::Json => to_json(&MomentJson {
            alpha_deg: a.alpha_deg,
            config: a.config,
            pressure_pa: a.pressure_pa,
            m_mm: a.m_mm,
            rows: rows
                .iter()
                .map(|r| {
                    let [t, s, mi, ma, mo] = values(r).map(round9);
                    MomentRowJson { theta1_deg: t, s_rad: s, m_input_nm: mi, ma, m_output_nm: mo }
                })
                .collect(),
        }),
    })
}

/// A manipulator ready to run, with what the exports need to describe it.
pub struct ManipJob {
    pub spec: ManipulatorSpec,
    pub schedule: ActivationSchedule,
    pub sizing: Option<(f64, f64)>,
}

fn read_spec(path: &Path) -> Result<SpecFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Spec(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Spec(e.to_string()))
}

fn sequential_all(n: usize, steps: usize, gamma: f64) -> ActivationSchedule {
    let mut s = ActivationSchedule::sequential_mpf(&(0..n).collect::<Vec<_>>(), steps);
    s.gamma = gamma;
    s
}

/// Resolves the manipulator and schedule described by the flags.
pub fn manip_job(a: &ManipArgs) -> Result<ManipJob, CliError> {
    usage(a.steps >= 1, "--steps must be at least 1")?;
    let gamma = a.gamma_deg.to_radians();
    let (spec, default_schedule, sizing) = match (&a.spec, &a.preset) {
        (Some(_), Some(_)) => return Err(CliError::Usage("--spec cannot be combined with a preset".into())),
        (None, None) => return Err(CliError::Usage("give a preset or --spec".into())),
        (Some(path), None) => {
            let file = read_spec(path)?;
            let spec = file.to_core()?;
            let schedule = match &file.schedule {
                Some(s) => s.to_core().map_err(|e| CliError::Spec(e.to_string()))?,
                None => sequential_all(spec.units.len(), a.steps, gamma),
            };
            (spec, schedule, None)
        }
        (None, Some(Preset::Rotational { alpha_deg })) => {
            usage(alpha_deg.len() == 2, "rotational takes two --alpha-deg values")?;
            let spec = preset_rotational(alpha_deg[0].to_radians(), alpha_deg[1].to_radians())?;
            (spec, sequential_all(2, a.steps, gamma), None)
        }
        (None, Some(Preset::Translational { alpha_deg, d_mm })) => {
            let spec = preset_translational(alpha_deg.to_radians(), gamma, *d_mm)?;
            let sizing = translational_sizing(gamma, *d_mm)?;
            (spec, translational_schedule(gamma, a.steps), Some(sizing))
        }
        (None, Some(Preset::Modular { alpha_deg, units, config, bounding_side_mm })) => {
            let alphas: Vec<f64> = match (alpha_deg.len(), units) {
                (1, n) => vec![alpha_deg[0]; n.unwrap_or(8)],
                (_, None) => alpha_deg.clone(),
                (k, Some(n)) if k == *n => alpha_deg.clone(),
                _ => return Err(CliError::Usage("--units does not match the --alpha-deg list".into())),
            };
            usage(!alphas.is_empty(), "modular needs at least one unit")?;
            let list = alphas
                .iter()
                .map(|al| UnitSpec::new(al.to_radians(), (*config).into(), selflock_core::DEFAULT_PLATE_SIDE))
                .collect::<Result<Vec<_>, _>>()?;
            let n = list.len();
            (preset_modular(list, *bounding_side_mm)?, sequential_all(n, a.steps, gamma), None)
        }
    };
    let schedule = match &a.schedule {
        Some(text) => ScheduleDto::parse(text, a.steps, a.gamma_deg)?.to_core()?,
        None => default_schedule,
    };
    Ok(ManipJob { spec, schedule, sizing })
}

/// SHA-256 of the spec file form of `job`, hex encoded.
pub fn spec_hash(job: &ManipJob) -> String {
    let file = SpecFile::from_core(&job.spec, Some(&job.schedule));
    let digest = Sha256::digest(serde_json::to_string(&file).expect("serializable").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
struct PhaseJson {
    unit: usize,
    target_theta1_deg: f64,
    requested: usize,
    committed: usize,
    collided: bool,
}

#[derive(Serialize)]
struct MetaJson {
    gamma_deg: f64,
    alphas_deg: Vec<f64>,
    axes: &'static str,
    spec_sha256: String,
    clearance_mm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_mm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_mm: Option<f64>,
    phases: Vec<PhaseJson>,
}

#[derive(Serialize)]
struct FrameJson {
    t: f64,
    joints_deg: Vec<f64>,
    marker_mm: [f64; 3],
}

#[derive(Serialize)]
struct TrajectoryJson {
    meta: MetaJson,
    frames: Vec<FrameJson>,
}

pub fn run_job(job: &ManipJob, clearance: f64) -> Result<Trajectory, CliError> {
    let m = match build(job.spec.clone()) {
        Ok(m) => m,
        Err(e) => return Err(CliError::from_spec(e)),
    };
    Ok(run(&m, &job.schedule, clearance)?)
}

pub fn cmd_manip(a: &ManipArgs) -> Result<String, CliError> {
    usage(a.clearance_mm >= 0.0, "--clearance-mm must not be negative")?;
    let job = manip_job(a)?;
    let traj = run_job(&job, a.clearance_mm)?;
    Ok(match a.format {
        TrajectoryFormat::Csv => {
            let n = job.spec.units.len();
            let mut head = vec!["t".to_string()];
            head.extend((1..=n).map(|i| format!("joint{i}_deg")));
            head.extend(["marker_x_mm", "marker_y_mm", "marker_z_mm"].map(String::from));
            let mut s = head.join(",");
            s.push('\n');
            for f in &traj.frames {
                let mut v = vec![f.t];
                v.extend(f.joints.iter().map(|j| j.to_degrees()));
                v.extend(f.marker.iter());
                s.push_str(&csv_row(&v));
                s.push('\n');
            }
            s
        }
        TrajectoryFormat::Json => to_json(&TrajectoryJson {
            meta: MetaJson {
                gamma_deg: round9(traj.gamma.to_degrees()),
                alphas_deg: traj.alphas.iter().map(|x| round9(x.to_degrees())).collect(),
                axes: traj.axes,
                spec_sha256: spec_hash(&job),
                clearance_mm: a.clearance_mm,
                f_mm: job.sizing.map(|s| round9(s.0)),
                q_mm: job.sizing.map(|s| round9(s.1)),
                phases: traj
                    .phases
                    .iter()
                    .map(|p| PhaseJson {
                        unit: p.unit + 1,
                        target_theta1_deg: round9(p.target_theta1.to_degrees()),
                        requested: p.requested,
                        committed: p.committed,
                        collided: p.collided,
                    })
                    .collect(),
            },
            frames: traj
                .frames
                .iter()
                .map(|f| FrameJson {
                    t: round9(f.t),
                    joints_deg: f.joints.iter().map(|j| round9(j.to_degrees())).collect(),
                    marker_mm: [f.marker.x, f.marker.y, f.marker.z].map(round9),
                })
                .collect(),
        }),
        TrajectoryFormat::Svg => {
            let series: Vec<svg::Series> = a
                .projection
                .iter()
                .map(|p| svg::Series { label: p.label(), points: workspace_projection(&traj, p.plane()) })
                .collect();
            svg::plot("marker workspace (mm)", &series)
        }
    })
}

#[derive(Serialize)]
struct StatesJson {
    alpha_deg: f64,
    config: ConfigDto,
    gamma_deg: f64,
    semi_flat: JointStateDto,
    mpf: JointStateDto,
}

pub fn cmd_states(a: &StatesArgs) -> Result<String, CliError> {
    let alpha = a.alpha_deg.to_radians();
    let config: Configuration = a.config.into();
    let semi = joint_state(alpha, semi_flat_theta1(alpha, config)?, config)?;
    let mpf = joint_state(alpha, mpf_theta1(alpha, a.gamma_deg.to_radians(), config)?, config)?;
    Ok(to_json(&StatesJson {
        alpha_deg: a.alpha_deg,
        config: a.config,
        gamma_deg: a.gamma_deg,
        semi_flat: rounded_state(&semi),
        mpf: rounded_state(&mpf),
    }))
}
