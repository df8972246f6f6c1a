//! Scenario files in, result files out.
//!
//! Scenarios are JSON documents with explicit unit suffixes (`_cm`, `_deg`)
//! on every length and angle; unknown fields are rejected. Results land in
//! a six-file bundle per run directory:
//!
//! * `configurations.csv` — one row per accepted configuration;
//! * `weights.csv` — per-finger effort weights;
//! * `clusters.csv` — centroid rows then point rows with assignments;
//! * `workspace.svg` — object profile, initial chains, sampled cloud,
//!   selected configurations;
//! * `report.txt` — human-readable run or suite summary;
//! * `trace.csv` — interpolated contact trajectories for a plan.
//!
//! All six files are written on every emit (headers-only when a section is
//! empty), atomically (temp file then rename), with floats carrying 12
//! significant digits so reruns are byte-identical.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::angles::{AngleRecovery, JointAngles, RecoveredAngles};
use crate::error::{Error, Result};
use crate::geometry::{rotate_about, Angle, Vec2};
use crate::model::{ContactUpdateMode, GraspScene, MotionTask};
use crate::planner::{ClusterModel, ManipulationPlan, WeightAllocation};
use crate::sampler::FingerSolution;
use crate::scenario::{
    ray_boundary, CaseLabel, ObjectShape, PlaneProjection, Pose6, ScenarioSpec, ShapeProfile,
    SweepRange,
};

/// Steps in a plan's interpolated contact trace (rows per finger: steps+1).
pub const DEFAULT_TRACE_STEPS: usize = 24;

pub const CONFIGURATIONS_HEADER: &str = "finger_id,sample,q2_x,q2_y,q3_x,q3_y,contact_x,contact_y,e2,e3,cost,theta1_loc,theta2_loc,theta3_loc,theta1_dir,theta2_dir,theta3_dir";
pub const WEIGHTS_HEADER: &str = "finger_id,gamma_i,f_i,magnitude,gamma";
pub const TRACE_HEADER: &str = "step,t,finger_id,contact_x,contact_y,displacement";
pub const CLUSTERS_HEADER_PREFIX: &str = "record,index,cluster";

/// Twelve significant digits, fixed notation (`-1.23456789012e-3`).
fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

fn parse_float(field: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .map_err(|_| Error::validation(field, format!("not a number: {raw:?}")))
}

// ---------------------------------------------------------------------------
// Scenario documents

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    name: String,
    object: ObjectDoc,
    case: CaseDoc,
    initial_pose: PoseDoc,
    desired_pose: PoseDoc,
    fingers: FingersDoc,
    #[serde(default)]
    projection: Option<ProjectionDoc>,
    #[serde(default)]
    sweep: Option<SweepDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
enum ObjectDoc {
    Ellipse { a_cm: f64, b_cm: f64 },
    Sphere { radius_cm: f64 },
    Cylinder { radius_cm: f64 },
    Cone { base_cm: f64, height_cm: f64 },
    Cube { side_cm: f64 },
}

#[derive(Debug, Deserialize)]
#[allow(clippy::enum_variant_names)] // mirrors the public CaseLabel names
enum CaseDoc {
    #[serde(rename = "1F")]
    SingleFinger,
    #[serde(rename = "2F")]
    TwoFinger,
    #[serde(rename = "3F")]
    ThreeFinger,
    #[serde(rename = "B2F")]
    BimanualTwoFinger,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoseDoc {
    x_cm: f64,
    y_cm: f64,
    z_cm: f64,
    rho_deg: f64,
    beta_deg: f64,
    gamma_deg: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FingersDoc {
    link_lengths_cm: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProjectionDoc {
    #[serde(default = "axis_x")]
    x: PositionAxis,
    #[serde(default = "axis_y")]
    y: PositionAxis,
    #[serde(default = "axis_beta")]
    angle: OrientationAxis,
}

fn axis_x() -> PositionAxis {
    PositionAxis::X
}
fn axis_y() -> PositionAxis {
    PositionAxis::Y
}
fn axis_beta() -> OrientationAxis {
    OrientationAxis::Beta
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum PositionAxis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OrientationAxis {
    Rho,
    Beta,
    Gamma,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepDoc {
    min_deg: f64,
    max_deg: f64,
    steps: usize,
}

impl From<PoseDoc> for Pose6 {
    fn from(p: PoseDoc) -> Self {
        Pose6::new([p.x_cm, p.y_cm, p.z_cm], [p.rho_deg, p.beta_deg, p.gamma_deg])
    }
}

impl ScenarioDoc {
    fn into_spec(self) -> ScenarioSpec {
        let shape = match self.object {
            ObjectDoc::Ellipse { a_cm, b_cm } => ObjectShape::Ellipse { a: a_cm, b: b_cm },
            ObjectDoc::Sphere { radius_cm } => ObjectShape::Sphere { radius: radius_cm },
            ObjectDoc::Cylinder { radius_cm } => ObjectShape::Cylinder { radius: radius_cm },
            ObjectDoc::Cone { base_cm, height_cm } => ObjectShape::Cone {
                base: base_cm,
                height: height_cm,
            },
            ObjectDoc::Cube { side_cm } => ObjectShape::Cube { side: side_cm },
        };
        let case = match self.case {
            CaseDoc::SingleFinger => CaseLabel::SingleFinger,
            CaseDoc::TwoFinger => CaseLabel::TwoFinger,
            CaseDoc::ThreeFinger => CaseLabel::ThreeFinger,
            CaseDoc::BimanualTwoFinger => CaseLabel::BimanualTwoFinger,
        };
        let projection = self
            .projection
            .map(|p| PlaneProjection {
                x_axis: p.x as usize,
                y_axis: p.y as usize,
                angle_axis: p.angle as usize,
            })
            .unwrap_or_default();
        ScenarioSpec {
            name: self.name,
            shape,
            case,
            initial: self.initial_pose.into(),
            desired: self.desired_pose.into(),
            projection,
            link_lengths_cm: self.fingers.link_lengths_cm,
            sweep: self.sweep.map(|s| SweepRange {
                min: Angle::from_degrees(s.min_deg),
                max: Angle::from_degrees(s.max_deg),
                steps: s.steps,
            }),
        }
    }
}

/// Parse and validate a scenario document.
pub fn parse_scenario(path: &Path) -> Result<ScenarioSpec> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: ScenarioDoc = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let spec = doc.into_spec();
    spec.validate()?;
    Ok(spec)
}

// ---------------------------------------------------------------------------
// CSV sections

/// One `configurations.csv` row: which draw of which finger.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationRow {
    /// Sample index within the finger's batch; for sweeps, the task index.
    pub sample: usize,
    pub solution: FingerSolution,
}

fn write_atomic(path: &Path, content: &str) -> Result<u64> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("output");
    let tmp = dir.join(format!(".{name}.tmp"));
    let mut file = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    file.write_all(content.as_bytes())
        .map_err(|e| Error::io(&tmp, e))?;
    file.sync_all().map_err(|e| Error::io(&tmp, e))?;
    drop(file);
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))?;
    Ok(content.len() as u64)
}

fn angle_fields(angles: &Option<RecoveredAngles>) -> [String; 6] {
    match angles {
        Some(a) => {
            let mut out: Vec<String> = a
                .law_of_cosines
                .values
                .iter()
                .map(|v| fmt_float(v.radians()))
                .collect();
            out.extend(a.direction_delta.values.iter().map(|v| fmt_float(v.radians())));
            out.try_into().expect("six angle fields")
        }
        None => Default::default(),
    }
}

/// Render `configurations.csv` (header always present).
pub fn configurations_csv(rows: &[ConfigurationRow]) -> String {
    let mut out = String::from(CONFIGURATIONS_HEADER);
    out.push('\n');
    for row in rows {
        let s = &row.solution;
        let [a1, a2, a3, b1, b2, b3] = angle_fields(&s.angles);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{a1},{a2},{a3},{b1},{b2},{b3}\n",
            s.finger_id,
            row.sample,
            fmt_float(s.q2.x),
            fmt_float(s.q2.y),
            fmt_float(s.q3.x),
            fmt_float(s.q3.y),
            fmt_float(s.contact.x),
            fmt_float(s.contact.y),
            fmt_float(s.e2),
            fmt_float(s.e3),
            fmt_float(s.cost),
        ));
    }
    out
}

/// Parse a written `configurations.csv` back into rows.
pub fn read_configurations_csv(path: &Path) -> Result<Vec<ConfigurationRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let expected: Vec<&str> = CONFIGURATIONS_HEADER.split(',').collect();
    let header = reader.headers().map_err(|e| csv_error(path, &e))?;
    if header.iter().collect::<Vec<_>>() != expected {
        return Err(Error::validation(
            "configurations.csv",
            "unexpected header row",
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, &e))?;
        if record.len() != expected.len() {
            return Err(Error::validation(
                "configurations.csv",
                format!("expected {} fields, got {}", expected.len(), record.len()),
            ));
        }
        let field = |i: usize| record.get(i).unwrap_or("");
        let finger_id: usize = field(0)
            .parse()
            .map_err(|_| Error::validation("finger_id", format!("not an index: {:?}", field(0))))?;
        let sample: usize = field(1)
            .parse()
            .map_err(|_| Error::validation("sample", format!("not an index: {:?}", field(1))))?;
        let num = |i: usize, name: &str| parse_float(name, field(i));
        let angles = if (11..17).all(|i| field(i).is_empty()) {
            None
        } else {
            let mut v = [Angle::ZERO; 6];
            for (slot, i) in v.iter_mut().zip(11..17) {
                *slot = Angle::from_radians(num(i, "theta")?);
            }
            Some(RecoveredAngles {
                law_of_cosines: JointAngles {
                    method: AngleRecovery::LawOfCosines,
                    values: [v[0], v[1], v[2]],
                },
                direction_delta: JointAngles {
                    method: AngleRecovery::DirectionDelta,
                    values: [v[3], v[4], v[5]],
                },
            })
        };
        rows.push(ConfigurationRow {
            sample,
            solution: FingerSolution {
                finger_id,
                q2: Vec2::new(num(2, "q2_x")?, num(3, "q2_y")?),
                q3: Vec2::new(num(4, "q3_x")?, num(5, "q3_y")?),
                contact: Vec2::new(num(6, "contact_x")?, num(7, "contact_y")?),
                e2: num(8, "e2")?,
                e3: num(9, "e3")?,
                cost: num(10, "cost")?,
                angles,
            },
        });
    }
    Ok(rows)
}

fn csv_error(path: &Path, e: &csv::Error) -> Error {
    let (line, column) = match e.position() {
        Some(p) => (p.line() as usize, 0),
        None => (0, 0),
    };
    Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message: e.to_string(),
    }
}

/// Render `weights.csv`; `None` yields the bare header.
pub fn weights_csv(weights: Option<&WeightAllocation>) -> String {
    let mut out = String::from(WEIGHTS_HEADER);
    out.push('\n');
    if let Some(w) = weights {
        for (i, (gamma_i, f_i)) in w.gammas.iter().zip(&w.costs).enumerate() {
            out.push_str(&format!(
                "{i},{},{},{},{}\n",
                fmt_float(*gamma_i),
                fmt_float(*f_i),
                fmt_float(w.magnitude),
                fmt_float(w.gamma),
            ));
        }
    }
    out
}

/// Render `clusters.csv`: centroid rows (`record=centroid`, index = cluster)
/// then point rows (`record=point`, index = sample, cluster = assignment).
pub fn clusters_csv(clusters: Option<(&ClusterModel, &[Vec<f64>])>) -> String {
    let mut out = String::from(CLUSTERS_HEADER_PREFIX);
    match clusters {
        None => {
            out.push('\n');
        }
        Some((model, points)) => {
            for d in 0..model.dim {
                out.push_str(&format!(",dim{d}"));
            }
            out.push('\n');
            for (i, centroid) in model.centroids.iter().enumerate() {
                out.push_str(&format!("centroid,{i},{i}"));
                for x in centroid {
                    out.push(',');
                    out.push_str(&fmt_float(*x));
                }
                out.push('\n');
            }
            for (s, point) in points.iter().enumerate() {
                out.push_str(&format!("point,{s},{}", model.assignments[s]));
                for x in point {
                    out.push(',');
                    out.push_str(&fmt_float(*x));
                }
                out.push('\n');
            }
        }
    }
    out
}

/// One interpolated step of a planned contact trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    /// Interpolation parameter in [0, 1].
    pub t: f64,
    pub finger_id: usize,
    pub contact: Vec2,
    /// Distance from the initial contact.
    pub displacement: f64,
}

/// Interpolate each finger's contact from start to target in `steps` equal
/// increments, following the plan's contact-update rule. The polar-offset
/// rolling path evaluates the offset formula at intermediate angles, which
/// does not start at the initial contact — that jump is a property of the
/// formula, preserved rather than smoothed over.
pub fn plan_trace(plan: &ManipulationPlan, steps: usize) -> Vec<TraceRow> {
    let object0 = plan.scene.object0();
    let mut rows = Vec::new();
    for finger in plan.scene.fingers() {
        let c0 = finger.contact();
        for step in 0..=steps {
            let t = step as f64 / steps.max(1) as f64;
            let contact = match plan.task {
                MotionTask::Translate(dp) => c0 + t * dp,
                MotionTask::Roll(phi) => {
                    let partial = Angle::from_radians(t * phi.radians());
                    match plan.contact_mode {
                        ContactUpdateMode::RigidRotation => {
                            rotate_about(c0, object0.position, partial)
                        }
                        ContactUpdateMode::PolarOffset => {
                            let radius = (c0 - object0.position).norm();
                            c0 + radius * Vec2::unit(partial)
                        }
                    }
                }
            };
            rows.push(TraceRow {
                step,
                t,
                finger_id: finger.id(),
                contact,
                displacement: (contact - c0).norm(),
            });
        }
    }
    rows
}

/// Render `trace.csv` (header always present).
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.step,
            fmt_float(r.t),
            r.finger_id,
            fmt_float(r.contact.x),
            fmt_float(r.contact.y),
            fmt_float(r.displacement),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// SVG

/// What `workspace.svg` draws.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WorkspacePlot {
    pub scene: Option<GraspScene>,
    /// Object profile, drawn at the scene's object pose.
    pub profile: Option<ShapeProfile>,
    /// Sampled configurations (middle/distal joints as dots).
    pub cloud: Vec<ConfigurationRow>,
    /// Bold chains for the chosen configurations.
    pub selected: Vec<FingerSolution>,
}

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn color(finger_id: usize) -> &'static str {
    PALETTE[finger_id % PALETTE.len()]
}

fn f4(x: f64) -> String {
    format!("{x:.4}")
}

/// Render the workspace plot as a standalone SVG document.
pub fn render_workspace_svg(plot: &WorkspacePlot) -> String {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut push = |p: Vec2| {
        xs.push(p.x);
        ys.push(p.y);
    };
    if let Some(scene) = &plot.scene {
        for f in scene.fingers() {
            push(f.base());
            push(f.q2());
            push(f.q3());
            push(f.contact());
        }
        push(scene.object0().position);
        if let Some(profile) = plot.profile {
            let pose = scene.object0();
            for k in 0..64 {
                let local = Angle::from_degrees(k as f64 * 360.0 / 64.0);
                if let Ok(t) = ray_boundary(profile, Vec2::unit(local)) {
                    push(pose.position + rotate_about(t * Vec2::unit(local), Vec2::ZERO, pose.orientation));
                }
            }
        }
    }
    for row in &plot.cloud {
        push(row.solution.q2);
        push(row.solution.q3);
        push(row.solution.contact);
    }
    for s in &plot.selected {
        push(s.q2);
        push(s.q3);
        push(s.contact);
    }

    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    if xs.is_empty() {
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 100 100\">\
             <text x=\"10\" y=\"50\" font-size=\"8\">no data</text></svg>\n",
        );
        return out;
    }
    let (min_x, max_x) = bounds(&xs);
    let (min_y, max_y) = bounds(&ys);
    let span = (max_x - min_x).max(max_y - min_y).max(1e-6);
    let margin = 0.08 * span;
    let view = format!(
        "{} {} {} {}",
        f4(min_x - margin),
        f4(-(max_y + margin)),
        f4(max_x - min_x + 2.0 * margin),
        f4(max_y - min_y + 2.0 * margin)
    );
    let stroke = 0.006 * span;
    let dot = 0.004 * span;
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view}\">\n<!-- generator: handplan workspace plot -->\n<g transform=\"scale(1,-1)\">\n"
    ));

    if let (Some(scene), Some(profile)) = (&plot.scene, plot.profile) {
        let pose = scene.object0();
        let transform = format!(
            "translate({} {}) rotate({})",
            f4(pose.position.x),
            f4(pose.position.y),
            f4(pose.orientation.degrees())
        );
        let style = format!(
            "fill=\"none\" stroke=\"#444444\" stroke-width=\"{}\"",
            f4(stroke)
        );
        match profile {
            ShapeProfile::Circle { radius } => out.push_str(&format!(
                "<circle transform=\"{transform}\" r=\"{}\" {style}/>\n",
                f4(radius)
            )),
            ShapeProfile::Ellipse { a, b } => out.push_str(&format!(
                "<ellipse transform=\"{transform}\" rx=\"{}\" ry=\"{}\" {style}/>\n",
                f4(a),
                f4(b)
            )),
            ShapeProfile::Square { side } => {
                let h = side / 2.0;
                out.push_str(&format!(
                    "<rect transform=\"{transform}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {style}/>\n",
                    f4(-h),
                    f4(-h),
                    f4(side),
                    f4(side)
                ));
            }
            ShapeProfile::IsoscelesTriangle { base, height } => {
                out.push_str(&format!(
                    "<polygon transform=\"{transform}\" points=\"{},{} {},{} {},{}\" {style}/>\n",
                    f4(-base / 2.0),
                    f4(-height / 3.0),
                    f4(base / 2.0),
                    f4(-height / 3.0),
                    f4(0.0),
                    f4(2.0 * height / 3.0)
                ));
            }
        }
    }

    for row in &plot.cloud {
        let s = &row.solution;
        let c = color(s.finger_id);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{c}\" fill-opacity=\"0.35\"/>\n",
            f4(s.q2.x),
            f4(s.q2.y),
            f4(dot)
        ));
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{c}\" fill-opacity=\"0.18\"/>\n",
            f4(s.q3.x),
            f4(s.q3.y),
            f4(dot)
        ));
    }

    if let Some(scene) = &plot.scene {
        for f in scene.fingers() {
            out.push_str(&format!(
                "<polyline points=\"{},{} {},{} {},{} {},{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-opacity=\"0.55\"/>\n",
                f4(f.base().x),
                f4(f.base().y),
                f4(f.q2().x),
                f4(f.q2().y),
                f4(f.q3().x),
                f4(f.q3().y),
                f4(f.contact().x),
                f4(f.contact().y),
                color(f.id()),
                f4(stroke)
            ));
        }
        for s in &plot.selected {
            if let Some(f) = scene.fingers().iter().find(|f| f.id() == s.finger_id) {
                out.push_str(&format!(
                    "<polyline points=\"{},{} {},{} {},{} {},{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                    f4(f.base().x),
                    f4(f.base().y),
                    f4(s.q2.x),
                    f4(s.q2.y),
                    f4(s.q3.x),
                    f4(s.q3.y),
                    f4(s.contact.x),
                    f4(s.contact.y),
                    color(s.finger_id),
                    f4(2.5 * stroke)
                ));
            }
        }
    }

    out.push_str("</g>\n</svg>\n");
    out
}

fn bounds(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    })
}

// ---------------------------------------------------------------------------
// Bundle

/// Everything one run wants written.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputBundle {
    pub configurations: Vec<ConfigurationRow>,
    pub weights: Option<WeightAllocation>,
    pub clusters: Option<(ClusterModel, Vec<Vec<f64>>)>,
    pub trace: Vec<TraceRow>,
    pub report: String,
    pub plot: WorkspacePlot,
}

/// Paths written by [`emit_bundle`], with byte sizes, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileManifest {
    pub files: Vec<(PathBuf, u64)>,
}

/// Write the six bundle files into `dir` (created if missing), atomically,
/// and return the manifest.
pub fn emit_bundle(dir: &Path, bundle: &OutputBundle) -> Result<FileManifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let sections: [(&str, String); 6] = [
        ("configurations.csv", configurations_csv(&bundle.configurations)),
        ("weights.csv", weights_csv(bundle.weights.as_ref())),
        (
            "clusters.csv",
            clusters_csv(bundle.clusters.as_ref().map(|(m, p)| (m, p.as_slice()))),
        ),
        ("workspace.svg", render_workspace_svg(&bundle.plot)),
        ("report.txt", bundle.report.clone()),
        ("trace.csv", trace_csv(&bundle.trace)),
    ];
    let mut files = Vec::with_capacity(sections.len());
    for (name, content) in sections {
        let path = dir.join(name);
        let size = write_atomic(&path, &content)?;
        files.push((path, size));
    }
    Ok(FileManifest { files })
}
