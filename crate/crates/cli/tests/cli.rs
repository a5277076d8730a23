use std::path::Path;
use std::process::{Command, Output};

use selflock::dto::{ScheduleDto, SpecFile};
use selflock::{MOMENT_HEADER, SWEEP_HEADER};
use selflock_core::manipulator::{preset_modular_uniform, preset_rotational, preset_translational, translational_schedule};

fn selflock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selflock")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = selflock(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    selflock(args).status.code().unwrap()
}

fn column(csv: &str, i: usize) -> Vec<f64> {
    csv.lines().skip(1).map(|l| l.split(',').nth(i).unwrap().parse().unwrap()).collect()
}

#[test]
fn sweep_table_shape() {
    let csv = stdout(&["sweep", "--alpha-deg", "89", "--config", "up", "--min-deg", "-90", "--max-deg", "90", "--steps", "181"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 182);
    assert_eq!(lines[0], SWEEP_HEADER);
    assert_eq!(lines[91], "0,90,2,90");
    let t4 = column(&csv, 3);
    assert!(t4.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn sweep_json_rows_match_csv() {
    let csv = stdout(&["sweep", "--alpha-deg", "80", "--steps", "11", "--min-deg", "-50", "--max-deg", "50"]);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["sweep", "--alpha-deg", "80", "--steps", "11", "--min-deg", "-50", "--max-deg", "50", "--format", "json"]))
            .unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    for (r, t3) in rows.iter().zip(column(&csv, 2)) {
        assert_eq!(r["theta3_deg"].as_f64().unwrap(), t3);
    }
}

#[test]
fn down_sweep_negates_outputs() {
    let up = stdout(&["sweep", "--alpha-deg", "85", "--steps", "37"]);
    let down = stdout(&["sweep", "--alpha-deg", "85", "--steps", "37", "--config", "down"]);
    for i in 1..4 {
        for (u, d) in column(&up, i).iter().zip(column(&down, i)) {
            assert_eq!(*u, -d);
        }
    }
}

#[test]
fn moment_columns() {
    let csv = stdout(&["moment", "--alpha-deg", "89"]);
    assert_eq!(csv.lines().next().unwrap(), MOMENT_HEADER);
    let m = column(&csv, 2);
    let argmax = m.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert_eq!(column(&csv, 0)[argmax], 0.0);
    let zero = stdout(&["moment", "--alpha-deg", "89", "--pressure-pa", "0"]);
    for i in [2, 4] {
        assert!(column(&zero, i).iter().all(|&v| v == 0.0));
    }
}

#[test]
fn moment_doubles_with_pressure() {
    let one = column(&stdout(&["moment", "--alpha-deg", "80", "--pressure-pa", "10000"]), 2);
    let two = column(&stdout(&["moment", "--alpha-deg", "80", "--pressure-pa", "20000"]), 2);
    for (a, b) in one.iter().zip(&two) {
        assert!((b - 2.0 * a).abs() <= 1e-8 * b.abs(), "{a} {b}");
    }
}

#[test]
fn states_report() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["states", "--alpha-deg", "89", "--config", "up"])).unwrap();
    assert!((v["mpf"]["theta1_deg"].as_f64().unwrap() - 2.70).abs() < 0.01);
    assert!((v["mpf"]["theta4_deg"].as_f64().unwrap() - 36.5).abs() < 1e-6);
    assert!((v["semi_flat"]["theta1_deg"].as_f64().unwrap() - 10.58).abs() < 0.01);
    let flat: serde_json::Value =
        serde_json::from_str(&stdout(&["states", "--alpha-deg", "89", "--gamma-deg", "90"])).unwrap();
    assert!(flat["mpf"]["theta1_deg"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn rotational_first_frame_is_semi_flat() {
    let csv = stdout(&["manip", "rotational", "--alpha-deg", "80,80"]);
    let header = csv.lines().next().unwrap();
    assert_eq!(header, "t,joint1_deg,joint2_deg,marker_x_mm,marker_y_mm,marker_z_mm");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["states", "--alpha-deg", "80", "--config", "down"])).unwrap();
    let semi = v["semi_flat"]["theta1_deg"].as_f64().unwrap();
    let first: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!((first[0], first[1], first[2]), (0.0, semi, semi));
    assert_eq!(csv.lines().count(), 1 + 61);
}

#[test]
fn translational_meta_records_sizing() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["manip", "translational", "--alpha-deg", "89", "--format", "json"])).unwrap();
    let meta = &v["meta"];
    assert!((meta["f_mm"].as_f64().unwrap() - 33.78).abs() < 0.01);
    assert!((meta["q_mm"].as_f64().unwrap() - 31.10).abs() < 0.01);
    assert_eq!(meta["gamma_deg"].as_f64().unwrap(), 36.5);
    assert_eq!(meta["alphas_deg"].as_array().unwrap().len(), 4);
    assert!(meta["axes"].as_str().unwrap().contains("z=0"));
    assert_eq!(meta["spec_sha256"].as_str().unwrap().len(), 64);
    for f in v["frames"].as_array().unwrap() {
        assert_eq!(f["joints_deg"].as_array().unwrap().len(), 4);
        assert_eq!(f["marker_mm"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn svg_has_one_polyline_per_projection() {
    let svg = stdout(&["manip", "rotational", "--format", "svg", "--projection", "xy,xz,yz"]);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"width="800" height="600""#));
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn modular_schedule_stops_joint_four() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "manip", "modular", "--alpha-deg", "89", "--schedule", "1:mpf,2:mpf,3:mpf,4:mpf", "--steps", "20", "--format", "json",
    ]))
    .unwrap();
    let phases = v["meta"]["phases"].as_array().unwrap();
    assert_eq!(phases.len(), 4);
    assert!(phases[3]["collided"].as_bool().unwrap());
    assert!(phases[3]["committed"].as_u64().unwrap() < 20);
}

#[test]
fn spec_file_reproduces_the_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let spec = preset_rotational(85f64.to_radians(), 85f64.to_radians()).unwrap();
    std::fs::write(&path, serde_json::to_string_pretty(&SpecFile::from_core(&spec, None)).unwrap()).unwrap();
    let from_file = stdout(&["manip", "--spec", path.to_str().unwrap()]);
    let preset = stdout(&["manip", "rotational", "--alpha-deg", "85,85"]);
    assert_eq!(from_file, preset);
}

#[test]
fn spec_file_schedule_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let spec = preset_translational(89f64.to_radians(), 36.5f64.to_radians(), 25.0).unwrap();
    let schedule = translational_schedule(36.5f64.to_radians(), 12);
    std::fs::write(&path, serde_json::to_string(&SpecFile::from_core(&spec, Some(&schedule))).unwrap()).unwrap();
    let csv = stdout(&["manip", "--spec", path.to_str().unwrap()]);
    assert_eq!(csv.lines().count(), 1 + 13);
}

#[test]
fn spec_documents_round_trip() {
    for spec in [
        preset_rotational(80f64.to_radians(), 89f64.to_radians()).unwrap(),
        preset_translational(85f64.to_radians(), 36.5f64.to_radians(), 25.0).unwrap(),
        preset_modular_uniform(89f64.to_radians()).unwrap(),
    ] {
        let dto = SpecFile::from_core(&spec, Some(&translational_schedule(0.5, 7)));
        let text = serde_json::to_string(&dto).unwrap();
        let back: SpecFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, dto);
        let core = back.to_core().unwrap();
        assert_eq!(core.units.len(), spec.units.len());
        assert_eq!(core.marker, spec.marker);
        assert_eq!(serde_json::to_string(&SpecFile::from_core(&core, None)).unwrap(), serde_json::to_string(&SpecFile::from_core(&spec, None)).unwrap());
    }
}

#[test]
fn inline_schedule_syntax() {
    let s = ScheduleDto::parse("1:mpf@5,2:out=45", 9, 36.5).unwrap();
    assert_eq!(s.phases.len(), 2);
    assert_eq!((s.phases[0].steps, s.phases[1].steps), (5, 9));
    assert!(ScheduleDto::parse("1:mpf,2:mpf&3:mpf", 9, 36.5).is_err());
    assert!(ScheduleDto::parse("1:fold", 9, 36.5).is_err());
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    assert_eq!(code(&["sweep", "--alpha-deg", "89", "--out", out.to_str().unwrap()]), 0);
    assert!(std::fs::read_to_string(&out).unwrap().starts_with(SWEEP_HEADER));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["sweep"]), 2);
    assert_eq!(code(&["sweep", "--alpha-deg", "89", "--steps", "1"]), 2);
    assert_eq!(code(&["sweep", "--alpha-deg", "89", "--min-deg", "10", "--max-deg", "5"]), 2);
    assert_eq!(code(&["sweep", "--alpha-deg", "89", "--format", "xml"]), 2);
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["sweep", "--alpha-deg", "30"]), 3);
    assert_eq!(code(&["sweep", "--alpha-deg", "90"]), 3);
    assert_eq!(code(&["moment", "--alpha-deg", "45"]), 3);
    assert_eq!(code(&["moment", "--alpha-deg", "89", "--pressure-pa", "-1"]), 3);
    assert_eq!(code(&["moment", "--alpha-deg", "89", "--max-deg", "120"]), 3);
    assert_eq!(code(&["states", "--alpha-deg", "95"]), 3);
    assert_eq!(code(&["manip", "rotational", "--alpha-deg", "45,89"]), 3);
    assert_eq!(code(&["manip", "rotational", "--alpha-deg", "80"]), 2);
    assert_eq!(code(&["manip", "rotational", "--schedule", "3:mpf"]), 2);
    assert_eq!(code(&["manip", "translational", "--gamma-deg", "90"]), 3);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn malformed_spec_exits_4_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.json");
    let out = dir.path().join("out.csv");
    for body in ["{ not json", r#"{"units": [], "connections": [], "marker": {"unit": 1, "plate": 4, "corner": 3}}"#] {
        std::fs::write(&spec, body).unwrap();
        assert_eq!(code(&["manip", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap()]), 4);
        assert!(!Path::new(&out).exists());
    }
    assert_eq!(code(&["manip", "--spec", dir.path().join("missing.json").to_str().unwrap()]), 4);
}
