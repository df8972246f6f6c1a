//! Benchmark scenarios: object shapes, six-component pose fixtures
//! projected into the working plane, grasp-scene synthesis for the standard
//! finger arrangements, the rigid-fit evaluation metric, and the repetition
//! suite.

use crate::error::{Error, Result};
use crate::geometry::{rotate_about, triangle_angle, Angle, Vec2};
use crate::model::{FingerChain, GraspScene, MotionTask, ObjectPose};
use crate::planner::{plan, ManipulationPlan, PlanConfig};
use crate::sampler::{circle_intersection, derive_seed};

/// Pose components smaller than this count as unchanged when deriving the
/// task from an initial/desired pose pair.
const POSE_EPS: f64 = 1e-9;

/// Relative error at or below which a completed plan counts as a kinematic
/// success.
pub const SUCCESS_THRESHOLD: f64 = 0.15;

/// Ratio of base standoff to `l1 + max(l2, l3)` used when synthesizing
/// finger chains around an object.
const STANDOFF_RATIO: f64 = 0.9;

/// The benchmark solids; each projects to a planar profile in the working
/// plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObjectShape {
    Ellipse { a: f64, b: f64 },
    Sphere { radius: f64 },
    Cylinder { radius: f64 },
    Cone { base: f64, height: f64 },
    Cube { side: f64 },
}

/// Planar cross-section of an [`ObjectShape`], centred on the object
/// position (the triangle on its centroid).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeProfile {
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64 },
    Square { side: f64 },
    IsoscelesTriangle { base: f64, height: f64 },
}

impl ObjectShape {
    pub fn profile(self) -> ShapeProfile {
        match self {
            ObjectShape::Ellipse { a, b } => ShapeProfile::Ellipse { a, b },
            ObjectShape::Sphere { radius } | ObjectShape::Cylinder { radius } => {
                ShapeProfile::Circle { radius }
            }
            ObjectShape::Cone { base, height } => ShapeProfile::IsoscelesTriangle { base, height },
            ObjectShape::Cube { side } => ShapeProfile::Square { side },
        }
    }

    pub fn validate(self) -> Result<()> {
        let bad = |field: &str, value: f64| {
            Err(Error::validation(
                field,
                format!("must be positive and finite, got {value}"),
            ))
        };
        match self {
            ObjectShape::Ellipse { a, b } => {
                if !(a.is_finite() && a > 0.0) {
                    return bad("object.a_cm", a);
                }
                if !(b.is_finite() && b > 0.0) {
                    return bad("object.b_cm", b);
                }
            }
            ObjectShape::Sphere { radius } | ObjectShape::Cylinder { radius } => {
                if !(radius.is_finite() && radius > 0.0) {
                    return bad("object.radius_cm", radius);
                }
            }
            ObjectShape::Cone { base, height } => {
                if !(base.is_finite() && base > 0.0) {
                    return bad("object.base_cm", base);
                }
                if !(height.is_finite() && height > 0.0) {
                    return bad("object.height_cm", height);
                }
            }
            ObjectShape::Cube { side } => {
                if !(side.is_finite() && side > 0.0) {
                    return bad("object.side_cm", side);
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ObjectShape::Ellipse { .. } => "ellipse",
            ObjectShape::Sphere { .. } => "sphere",
            ObjectShape::Cylinder { .. } => "cylinder",
            ObjectShape::Cone { .. } => "cone",
            ObjectShape::Cube { .. } => "cube",
        }
    }
}

/// Distance from the profile centre to its boundary along `direction`
/// (need not be normalised). Every profile is star-shaped around its
/// centre, so the hit is unique.
pub fn ray_boundary(profile: ShapeProfile, direction: Vec2) -> Result<f64> {
    let n = direction.norm();
    if n < crate::geometry::DIRECTION_EPS {
        return Err(Error::ZeroVector);
    }
    let u = direction / n;
    let t = match profile {
        ShapeProfile::Circle { radius } => radius,
        ShapeProfile::Ellipse { a, b } => {
            1.0 / ((u.x / a).powi(2) + (u.y / b).powi(2)).sqrt()
        }
        ShapeProfile::Square { side } => (side / 2.0) / u.x.abs().max(u.y.abs()),
        ShapeProfile::IsoscelesTriangle { base, height } => {
            let apex = Vec2::new(0.0, 2.0 * height / 3.0);
            let left = Vec2::new(-base / 2.0, -height / 3.0);
            let right = Vec2::new(base / 2.0, -height / 3.0);
            [(left, right), (right, apex), (apex, left)]
                .into_iter()
                .filter_map(|(a, b)| ray_segment(u, a, b))
                .fold(f64::INFINITY, f64::min)
        }
    };
    debug_assert!(t.is_finite() && t > 0.0);
    Ok(t)
}

/// Positive ray parameter where `t * u` crosses segment `a..b`, if it does.
fn ray_segment(u: Vec2, a: Vec2, b: Vec2) -> Option<f64> {
    let d = b - a;
    let denom = u.cross(d);
    if denom.abs() < 1e-15 {
        return None;
    }
    let t = a.cross(d) / denom;
    let s = a.cross(u) / denom;
    (t > 0.0 && (-1e-12..=1.0 + 1e-12).contains(&s)).then_some(t)
}

/// Boundary point of the profile in the object's local frame.
pub fn boundary_point(profile: ShapeProfile, local_angle: Angle) -> Result<Vec2> {
    let u = Vec2::unit(local_angle);
    Ok(ray_boundary(profile, u)? * u)
}

/// How far a local-frame point is from the profile boundary along its own
/// ray from the centre (0 exactly on the boundary).
pub fn boundary_distance(profile: ShapeProfile, local_point: Vec2) -> Result<f64> {
    let t = ray_boundary(profile, local_point)?;
    Ok((local_point.norm() - t).abs())
}

/// The grasp arrangements: how many fingers and where their contacts sit
/// around the object, as directions in the object's local frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    /// One finger ("1F"), for single-chain studies.
    SingleFinger,
    /// Antipodal pair from one hand ("2F").
    TwoFinger,
    /// Tripod from one hand ("3F").
    ThreeFinger,
    /// Two antipodal pairs, one per hand ("B2F").
    BimanualTwoFinger,
}

impl CaseLabel {
    pub fn contact_directions(self) -> Vec<Angle> {
        let degrees: &[f64] = match self {
            CaseLabel::SingleFinger => &[0.0],
            CaseLabel::TwoFinger => &[0.0, 180.0],
            CaseLabel::ThreeFinger => &[90.0, 210.0, 330.0],
            CaseLabel::BimanualTwoFinger => &[45.0, 135.0, 225.0, 315.0],
        };
        degrees.iter().map(|&d| Angle::from_degrees(d)).collect()
    }

    pub fn finger_count(self) -> usize {
        self.contact_directions().len()
    }

    pub fn code(self) -> &'static str {
        match self {
            CaseLabel::SingleFinger => "1F",
            CaseLabel::TwoFinger => "2F",
            CaseLabel::ThreeFinger => "3F",
            CaseLabel::BimanualTwoFinger => "B2F",
        }
    }
}

/// A six-component object pose as the benchmark tables give it:
/// three positions in cm and three orientation angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose6 {
    pub position_cm: [f64; 3],
    pub orientation_deg: [f64; 3],
}

impl Pose6 {
    pub fn new(position_cm: [f64; 3], orientation_deg: [f64; 3]) -> Self {
        Pose6 {
            position_cm,
            orientation_deg,
        }
    }
}

/// Which components of a [`Pose6`] span the working plane.
///
/// Defaults to the first two positions and the middle orientation angle —
/// the angle with the largest and most consistent change across the
/// benchmark pose table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneProjection {
    /// Index into `position_cm` for the planar x.
    pub x_axis: usize,
    /// Index into `position_cm` for the planar y.
    pub y_axis: usize,
    /// Index into `orientation_deg` for the planar orientation.
    pub angle_axis: usize,
}

impl Default for PlaneProjection {
    fn default() -> Self {
        PlaneProjection {
            x_axis: 0,
            y_axis: 1,
            angle_axis: 1,
        }
    }
}

impl PlaneProjection {
    pub fn validate(self) -> Result<()> {
        if self.x_axis > 2 || self.y_axis > 2 || self.angle_axis > 2 {
            return Err(Error::validation(
                "projection",
                "axis indices must be 0, 1, or 2",
            ));
        }
        if self.x_axis == self.y_axis {
            return Err(Error::validation(
                "projection",
                "x and y must project distinct axes",
            ));
        }
        Ok(())
    }

    pub fn project(self, pose: Pose6) -> ObjectPose {
        ObjectPose::new(
            Vec2::new(pose.position_cm[self.x_axis], pose.position_cm[self.y_axis]),
            Angle::from_degrees(pose.orientation_deg[self.angle_axis]),
        )
    }
}

/// A complete benchmark scenario: the object, where it starts, where it
/// should end up, and the hand that holds it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub name: String,
    pub shape: ObjectShape,
    pub case: CaseLabel,
    pub initial: Pose6,
    pub desired: Pose6,
    pub projection: PlaneProjection,
    /// Proximal, middle, distal link lengths in cm, shared by all fingers.
    pub link_lengths_cm: [f64; 3],
    /// Optional rolling-sweep range for workspace studies.
    pub sweep: Option<SweepRange>,
}

/// Evenly spaced rolling tasks from `min` to `max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub min: Angle,
    pub max: Angle,
    pub steps: usize,
}

impl SweepRange {
    pub fn tasks(self) -> Vec<MotionTask> {
        let (lo, hi) = (self.min.radians(), self.max.radians());
        (0..self.steps)
            .map(|j| {
                let t = if self.steps == 1 {
                    0.5
                } else {
                    j as f64 / (self.steps - 1) as f64
                };
                MotionTask::Roll(Angle::from_radians(lo + t * (hi - lo)))
            })
            .collect()
    }
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::validation("name", "must not be empty"));
        }
        self.shape.validate()?;
        self.projection.validate()?;
        for (i, l) in self.link_lengths_cm.iter().enumerate() {
            if !(l.is_finite() && *l > 0.0) {
                return Err(Error::validation(
                    "fingers.link_lengths_cm",
                    format!("length {i} must be positive and finite, got {l}"),
                ));
            }
        }
        for pose in [&self.initial, &self.desired] {
            let finite = pose.position_cm.iter().all(|v| v.is_finite())
                && pose.orientation_deg.iter().all(|v| v.is_finite());
            if !finite {
                return Err(Error::validation(
                    "initial_pose/desired_pose",
                    "components must be finite",
                ));
            }
        }
        if let Some(sweep) = self.sweep {
            if sweep.steps == 0 {
                return Err(Error::validation("sweep.steps", "must be at least 1"));
            }
            if sweep.max.radians() < sweep.min.radians() {
                return Err(Error::validation(
                    "sweep.max_deg",
                    "must be at least sweep.min_deg",
                ));
            }
        }
        Ok(())
    }

    /// The planar motion from the initial to the desired pose: a
    /// translation, a roll, or the identity. A pose pair that changes both
    /// position and orientation is out of scope and rejected.
    pub fn task(&self) -> Result<MotionTask> {
        let start = self.projection.project(self.initial);
        let goal = self.projection.project(self.desired);
        let dp = goal.position - start.position;
        let dphi = (goal.orientation - start.orientation).normalized();
        let moves = dp.norm() > POSE_EPS;
        let turns = dphi.abs().radians() > POSE_EPS;
        match (moves, turns) {
            (false, false) => Ok(MotionTask::identity()),
            (true, false) => Ok(MotionTask::Translate(dp)),
            (false, true) => Ok(MotionTask::Roll(dphi)),
            (true, true) => Err(Error::validation(
                "desired_pose",
                "combined translation and rotation in one task is not supported",
            )),
        }
    }
}

/// A scenario made concrete: the initial grasp and the motion to plan.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltScenario {
    pub scene: GraspScene,
    pub task: MotionTask,
}

/// Synthesize one finger chain grasping `contact`, with its base at a
/// standoff along `outward` (unit direction away from the object).
///
/// The base sits at `STANDOFF_RATIO * (l1 + max(l2, l3))` from the contact;
/// the proximal joint is placed so the middle joint can bridge the gap, and
/// the chain closes through an exact circle intersection.
pub fn synthesize_finger(
    id: usize,
    contact: Vec2,
    outward: Vec2,
    lengths: [f64; 3],
) -> Result<FingerChain> {
    let [l1, l2, l3] = lengths;
    let m = l2.max(l3);
    let standoff = STANDOFF_RATIO * (l1 + m);
    let base = contact + standoff * outward;
    let psi = triangle_angle(l1, standoff, m).map_err(|_| Error::InfeasibleGrasp {
        reason: format!(
            "finger {id}: links {lengths:?} cannot bridge a standoff of {standoff}"
        ),
    })?;
    let toward = -outward;
    let dir_angle = Angle::from_radians(toward.y.atan2(toward.x));
    let q2 = base + l1 * Vec2::unit(dir_angle + psi);
    let q3 = circle_intersection(q2, l2, contact, l3, true).ok_or_else(|| {
        Error::InfeasibleGrasp {
            reason: format!(
                "finger {id}: middle and distal links cannot close between the proximal joint and the contact"
            ),
        }
    })?;
    FingerChain::from_points(id, base, q2, q3, contact)
}

/// Build the initial grasp scene and the motion task for `spec`.
///
/// Contacts sit on the shape boundary along the case's local directions
/// (rotated with the object), and every finger chain is synthesized
/// deterministically — no randomness enters here.
pub fn build_scenario(spec: &ScenarioSpec) -> Result<BuiltScenario> {
    spec.validate()?;
    let task = spec.task()?;
    let pose = spec.projection.project(spec.initial);
    let profile = spec.shape.profile();
    let mut fingers = Vec::new();
    for (id, local) in spec.case.contact_directions().into_iter().enumerate() {
        let world_angle = local + pose.orientation;
        let radius = ray_boundary(profile, Vec2::unit(local))?;
        let outward = Vec2::unit(world_angle);
        let contact = pose.position + radius * outward;
        fingers.push(synthesize_finger(id, contact, outward, spec.link_lengths_cm)?);
    }
    let scene = GraspScene::new(pose, fingers)?;
    Ok(BuiltScenario { scene, task })
}

/// The planar rigid transform `x -> R(x - old_centroid) + new_centroid`
/// best fitting a point correspondence in the least-squares sense.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidFit {
    pub rotation: Angle,
    pub old_centroid: Vec2,
    pub new_centroid: Vec2,
}

impl RigidFit {
    pub fn apply(&self, p: Vec2) -> Vec2 {
        rotate_about(p, self.old_centroid, self.rotation) + self.new_centroid
            - self.old_centroid
    }

    /// How far the point-set centroid moved.
    pub fn centroid_shift(&self) -> Vec2 {
        self.new_centroid - self.old_centroid
    }

    /// Translation component in the `x -> Rx + t` form.
    pub fn translation(&self) -> Vec2 {
        self.new_centroid - rotate_about(self.old_centroid, Vec2::ZERO, self.rotation)
    }
}

/// Least-squares planar rotation + translation mapping `old` onto `new`
/// (centred formulation). A single point, or points concentrated at the
/// centroid, fit a pure translation.
pub fn rigid_fit(old: &[Vec2], new: &[Vec2]) -> RigidFit {
    assert_eq!(old.len(), new.len());
    assert!(!old.is_empty());
    let n = old.len() as f64;
    let old_centroid = old.iter().fold(Vec2::ZERO, |a, &p| a + p) / n;
    let new_centroid = new.iter().fold(Vec2::ZERO, |a, &p| a + p) / n;
    let (mut cross_sum, mut dot_sum) = (0.0, 0.0);
    for (&u, &v) in old.iter().zip(new) {
        let cu = u - old_centroid;
        let cv = v - new_centroid;
        cross_sum += cu.cross(cv);
        dot_sum += cu.dot(cv);
    }
    RigidFit {
        rotation: Angle::from_radians(cross_sum.atan2(dot_sum)),
        old_centroid,
        new_centroid,
    }
}

/// Outcome of comparing a plan's contact displacements against its task.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunMetrics {
    pub target: ObjectPose,
    /// Object pose implied by the fitted contact transform.
    pub achieved: ObjectPose,
    pub fitted_rotation: Angle,
    pub fitted_shift: Vec2,
    /// Achieved vs desired motion, relative to the desired magnitude;
    /// 0 for an identity task.
    pub relative_error: f64,
    /// Complete plan with `relative_error <= SUCCESS_THRESHOLD`.
    pub success: bool,
}

/// Reconstruct the achieved object motion from a plan's contact
/// displacements and compare it with the task.
pub fn evaluate(plan: &ManipulationPlan) -> RunMetrics {
    let old: Vec<Vec2> = plan.scene.fingers().iter().map(|f| f.contact()).collect();
    let new: Vec<Vec2> = plan.fingers.iter().map(|f| f.contact_target).collect();
    let fit = rigid_fit(&old, &new);
    let object0 = plan.scene.object0();
    let achieved = ObjectPose::new(
        fit.apply(object0.position),
        object0.orientation + fit.rotation,
    );
    let relative_error = match plan.task {
        _ if plan.task.is_identity() => 0.0,
        MotionTask::Translate(dp) => (fit.centroid_shift() - dp).norm() / dp.norm(),
        MotionTask::Roll(phi) => {
            (fit.rotation - phi).normalized().abs().radians() / phi.abs().radians()
        }
    };
    RunMetrics {
        target: plan.object_target,
        achieved,
        fitted_rotation: fit.rotation,
        fitted_shift: fit.centroid_shift(),
        relative_error,
        success: relative_error <= SUCCESS_THRESHOLD,
    }
}

/// Aggregated repetitions of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCell {
    pub name: String,
    pub case_code: &'static str,
    pub repetitions: usize,
    /// Runs that produced a complete plan.
    pub completed: usize,
    /// Completed runs within the error threshold.
    pub successes: usize,
    /// Mean relative error over completed runs only.
    pub mean_relative_error: Option<f64>,
    /// Accepted / attempted draws, pooled over completed runs.
    pub acceptance_rate: f64,
    pub total_attempts: u64,
    pub singularity_rejects: u64,
    /// One entry per failed run: `"rep N: reason"`.
    pub failures: Vec<String>,
}

impl SuiteCell {
    pub fn success_rate(&self) -> f64 {
        if self.repetitions == 0 {
            0.0
        } else {
            self.successes as f64 / self.repetitions as f64
        }
    }
}

/// Results of [`run_suite`] across all scenarios.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub cells: Vec<SuiteCell>,
    pub repetitions: usize,
    pub base_seed: u64,
}

impl SuiteReport {
    /// Fixed-width text table, one row per scenario, with a footer giving
    /// the success definition and the pooled singularity-filter count.
    pub fn render(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<22} {:>4} {:>5} {:>5} {:>5} {:>14} {:>8} {:>12} {:>10}",
            "scenario",
            "case",
            "reps",
            "done",
            "ok",
            "mean_rel_err",
            "kin_SR",
            "acceptance",
            "singular"
        );
        for cell in &self.cells {
            let err = cell
                .mean_relative_error
                .map(|e| format!("{e:.6e}"))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "{:<22} {:>4} {:>5} {:>5} {:>5} {:>14} {:>7.0}% {:>12.6} {:>10}",
                cell.name,
                cell.case_code,
                cell.repetitions,
                cell.completed,
                cell.successes,
                err,
                100.0 * cell.success_rate(),
                cell.acceptance_rate,
                cell.singularity_rejects,
            );
        }
        let singular: u64 = self.cells.iter().map(|c| c.singularity_rejects).sum();
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "kinematic success: complete plan with relative error <= {SUCCESS_THRESHOLD}"
        );
        let _ = writeln!(
            out,
            "singularity filter rejections across the suite: {singular}"
        );
        let _ = writeln!(out, "base seed: {}", self.base_seed);
        for cell in &self.cells {
            for failure in &cell.failures {
                let _ = writeln!(out, "note [{}]: {failure}", cell.name);
            }
        }
        out
    }
}

/// Run every scenario `repetitions` times with derived seeds and aggregate
/// the metrics. Per-run failures (including scenarios that cannot even be
/// built) are recorded in their cell, never aborting the suite.
///
/// Repetition `r` of scenario `i` plans with the sampler seed
/// `derive_seed(derive_seed(base_seed, i), r)`.
pub fn run_suite(
    specs: &[ScenarioSpec],
    repetitions: usize,
    base_seed: u64,
    config: &PlanConfig,
) -> SuiteReport {
    let mut cells = Vec::with_capacity(specs.len());
    for (i, spec) in specs.iter().enumerate() {
        let mut cell = SuiteCell {
            name: spec.name.clone(),
            case_code: spec.case.code(),
            repetitions,
            completed: 0,
            successes: 0,
            mean_relative_error: None,
            acceptance_rate: 0.0,
            total_attempts: 0,
            singularity_rejects: 0,
            failures: Vec::new(),
        };
        match build_scenario(spec) {
            Ok(built) => {
                let spec_seed = derive_seed(base_seed, i as u64);
                let mut error_sum = 0.0;
                let mut accepted_total = 0u64;
                for r in 0..repetitions {
                    let mut run_config = config.clone();
                    run_config.sampler.seed = derive_seed(spec_seed, r as u64);
                    match plan(&built.scene, built.task, &run_config) {
                        Ok(p) => {
                            let metrics = evaluate(&p);
                            cell.completed += 1;
                            if metrics.success {
                                cell.successes += 1;
                            }
                            error_sum += metrics.relative_error;
                            for f in &p.fingers {
                                accepted_total += f.stats.accepted;
                                cell.total_attempts += f.stats.attempts;
                                cell.singularity_rejects += f.stats.singularity_rejects;
                            }
                        }
                        Err(e) => cell.failures.push(format!("rep {r}: {e}")),
                    }
                }
                if cell.completed > 0 {
                    cell.mean_relative_error = Some(error_sum / cell.completed as f64);
                }
                if cell.total_attempts > 0 {
                    cell.acceptance_rate = accepted_total as f64 / cell.total_attempts as f64;
                }
            }
            Err(e) => cell.failures.push(format!("build: {e}")),
        }
        cells.push(cell);
    }
    SuiteReport {
        cells,
        repetitions,
        base_seed,
    }
}

/// Ready-made scenarios: the pose-table benchmarks and the fixtures the
/// tests and examples lean on.
pub mod presets {
    use super::*;

    pub const DEFAULT_LINKS_CM: [f64; 3] = [5.0, 3.5, 2.5];

    fn spec(
        name: &str,
        shape: ObjectShape,
        case: CaseLabel,
        initial: Pose6,
        desired: Pose6,
    ) -> ScenarioSpec {
        ScenarioSpec {
            name: name.into(),
            shape,
            case,
            initial,
            desired,
            projection: PlaneProjection::default(),
            link_lengths_cm: DEFAULT_LINKS_CM,
            sweep: None,
        }
    }

    /// The workhorse test scenario: a two-finger grasp of a circle-profile
    /// object at the origin, rolled by 10 degrees.
    pub fn stock_two_finger() -> ScenarioSpec {
        spec(
            "circle_2f_roll10",
            ObjectShape::Sphere { radius: 4.0 },
            CaseLabel::TwoFinger,
            Pose6::new([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
            Pose6::new([0.0, 0.0, 0.0], [0.0, 10.0, 0.0]),
        )
    }

    /// Ellipse benchmark row: roll 12 degrees (62 -> 74), position fixed.
    pub fn ellipse_b2f() -> ScenarioSpec {
        spec(
            "ellipse_b2f",
            ObjectShape::Ellipse { a: 6.0, b: 4.0 },
            CaseLabel::BimanualTwoFinger,
            Pose6::new([35.0, 28.0, 45.0], [37.0, 62.0, 25.0]),
            Pose6::new([35.0, 28.0, 45.0], [43.0, 74.0, 29.0]),
        )
    }

    /// Sphere benchmark row: roll 9 degrees (58 -> 67).
    pub fn sphere_b2f() -> ScenarioSpec {
        spec(
            "sphere_b2f",
            ObjectShape::Sphere { radius: 4.0 },
            CaseLabel::BimanualTwoFinger,
            Pose6::new([32.0, 26.0, 47.0], [36.0, 58.0, 25.0]),
            Pose6::new([32.0, 26.0, 47.0], [39.0, 67.0, 29.0]),
        )
    }

    /// Cylinder benchmark row: roll 6 degrees (66 -> 72).
    pub fn cylinder_b2f() -> ScenarioSpec {
        spec(
            "cylinder_b2f",
            ObjectShape::Cylinder { radius: 3.5 },
            CaseLabel::BimanualTwoFinger,
            Pose6::new([36.0, 30.0, 46.0], [35.0, 66.0, 28.0]),
            Pose6::new([36.0, 30.0, 46.0], [37.0, 72.0, 32.0]),
        )
    }

    /// Cone benchmark row: roll 6 degrees (56 -> 62).
    pub fn cone_b2f() -> ScenarioSpec {
        spec(
            "cone_b2f",
            ObjectShape::Cone {
                base: 6.0,
                height: 7.0,
            },
            CaseLabel::BimanualTwoFinger,
            Pose6::new([47.0, 22.0, 41.0], [31.0, 56.0, 29.0]),
            Pose6::new([47.0, 22.0, 41.0], [37.0, 62.0, 35.0]),
        )
    }

    /// Cube benchmark row: roll 7 degrees (59 -> 66).
    pub fn cube_b2f() -> ScenarioSpec {
        spec(
            "cube_b2f",
            ObjectShape::Cube { side: 5.0 },
            CaseLabel::BimanualTwoFinger,
            Pose6::new([49.0, 32.0, 44.0], [36.0, 59.0, 25.0]),
            Pose6::new([49.0, 32.0, 44.0], [42.0, 66.0, 31.0]),
        )
    }

    /// All five benchmark rows under the four-finger bimanual arrangement.
    pub fn bimanual_suite() -> Vec<ScenarioSpec> {
        vec![
            ellipse_b2f(),
            sphere_b2f(),
            cylinder_b2f(),
            cone_b2f(),
            cube_b2f(),
        ]
    }

    /// Two-finger ellipse roll of 15 degrees, for contact-mode comparisons.
    pub fn ellipse_2f_roll15() -> ScenarioSpec {
        spec(
            "ellipse_2f_roll15",
            ObjectShape::Ellipse { a: 6.0, b: 4.0 },
            CaseLabel::TwoFinger,
            Pose6::new([35.0, 28.0, 45.0], [37.0, 62.0, 25.0]),
            Pose6::new([35.0, 28.0, 45.0], [37.0, 77.0, 25.0]),
        )
    }

    /// Single finger on a circle-profile object with a rolling sweep from
    /// -10 to +10 degrees in 1-degree steps.
    pub fn circle_sweep() -> ScenarioSpec {
        let mut s = spec(
            "circle_sweep",
            ObjectShape::Sphere { radius: 4.0 },
            CaseLabel::SingleFinger,
            Pose6::new([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
            Pose6::new([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
        );
        s.sweep = Some(SweepRange {
            min: Angle::from_degrees(-10.0),
            max: Angle::from_degrees(10.0),
            steps: 21,
        });
        s
    }

    /// Single finger, initial pose equal to the desired pose.
    pub fn identity_single_finger() -> ScenarioSpec {
        spec(
            "identity_1f",
            ObjectShape::Sphere { radius: 4.0 },
            CaseLabel::SingleFinger,
            Pose6::new([32.0, 26.0, 47.0], [36.0, 58.0, 25.0]),
            Pose6::new([32.0, 26.0, 47.0], [36.0, 58.0, 25.0]),
        )
    }

    /// A translation far beyond total finger reach, to exercise the
    /// unreachable-target error path end to end.
    pub fn unreachable_translation() -> ScenarioSpec {
        spec(
            "unreachable_translation",
            ObjectShape::Sphere { radius: 4.0 },
            CaseLabel::TwoFinger,
            Pose6::new([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
            Pose6::new([20.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distance;
    use crate::model::{contact_target, ContactUpdateMode};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn ray_boundary_matches_each_profile_closed_form() {
        let circle = ShapeProfile::Circle { radius: 4.0 };
        assert_abs_diff_eq!(
            ray_boundary(circle, Vec2::new(3.0, 4.0)).unwrap(),
            4.0,
            epsilon = 1e-12
        );

        let ellipse = ShapeProfile::Ellipse { a: 6.0, b: 4.0 };
        assert_abs_diff_eq!(
            ray_boundary(ellipse, Vec2::new(1.0, 0.0)).unwrap(),
            6.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            ray_boundary(ellipse, Vec2::new(0.0, -1.0)).unwrap(),
            4.0,
            epsilon = 1e-12
        );

        let square = ShapeProfile::Square { side: 5.0 };
        assert_abs_diff_eq!(
            ray_boundary(square, Vec2::new(1.0, 0.0)).unwrap(),
            2.5,
            epsilon = 1e-12
        );
        // Along the diagonal the corner sits at 2.5 * sqrt(2).
        assert_abs_diff_eq!(
            ray_boundary(square, Vec2::new(1.0, 1.0)).unwrap(),
            2.5 * 2.0f64.sqrt(),
            epsilon = 1e-12
        );

        let triangle = ShapeProfile::IsoscelesTriangle {
            base: 6.0,
            height: 7.0,
        };
        // Straight up hits the apex at 2h/3; straight down the base at h/3.
        assert_abs_diff_eq!(
            ray_boundary(triangle, Vec2::new(0.0, 1.0)).unwrap(),
            14.0 / 3.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            ray_boundary(triangle, Vec2::new(0.0, -1.0)).unwrap(),
            7.0 / 3.0,
            epsilon = 1e-12
        );
    }

    proptest! {
        #[test]
        fn boundary_points_have_zero_boundary_distance(theta in 0.0..std::f64::consts::TAU) {
            for profile in [
                ShapeProfile::Circle { radius: 4.0 },
                ShapeProfile::Ellipse { a: 6.0, b: 4.0 },
                ShapeProfile::Square { side: 5.0 },
                ShapeProfile::IsoscelesTriangle { base: 6.0, height: 7.0 },
            ] {
                let p = boundary_point(profile, Angle::from_radians(theta)).unwrap();
                prop_assert!(boundary_distance(profile, p).unwrap() <= 1e-9);
            }
        }
    }

    #[test]
    fn projection_extracts_the_planar_components() {
        let pose = Pose6::new([35.0, 28.0, 45.0], [37.0, 62.0, 25.0]);
        let planar = PlaneProjection::default().project(pose);
        assert_eq!(planar.position, Vec2::new(35.0, 28.0));
        assert_abs_diff_eq!(planar.orientation.degrees(), 62.0, epsilon = 1e-12);
    }

    #[test]
    fn benchmark_pose_rows_derive_pure_rolls() {
        for (spec, expected_deg) in [
            (presets::ellipse_b2f(), 12.0),
            (presets::sphere_b2f(), 9.0),
            (presets::cylinder_b2f(), 6.0),
            (presets::cone_b2f(), 6.0),
            (presets::cube_b2f(), 7.0),
        ] {
            match spec.task().unwrap() {
                MotionTask::Roll(phi) => {
                    assert_abs_diff_eq!(phi.degrees(), expected_deg, epsilon = 1e-9)
                }
                other => panic!("{}: expected a roll, got {other:?}", spec.name),
            }
        }
    }

    #[test]
    fn identity_and_translation_and_mixed_pose_pairs() {
        assert!(presets::identity_single_finger()
            .task()
            .unwrap()
            .is_identity());

        match presets::unreachable_translation().task().unwrap() {
            MotionTask::Translate(dp) => assert_eq!(dp, Vec2::new(20.0, 0.0)),
            other => panic!("expected a translation, got {other:?}"),
        }

        let mut mixed = presets::stock_two_finger();
        mixed.desired.position_cm[0] += 1.0;
        match mixed.task().unwrap_err() {
            Error::Validation { field, .. } => assert_eq!(field, "desired_pose"),
            other => panic!("expected Validation, got {other:?}"),
        }
    }

    #[test]
    fn built_scenes_put_contacts_on_the_boundary_with_closed_chains() {
        for spec in [
            presets::stock_two_finger(),
            presets::ellipse_b2f(),
            presets::sphere_b2f(),
            presets::cylinder_b2f(),
            presets::cone_b2f(),
            presets::cube_b2f(),
            presets::circle_sweep(),
        ] {
            let built = build_scenario(&spec).unwrap();
            let pose = built.scene.object0();
            let profile = spec.shape.profile();
            assert_eq!(built.scene.fingers().len(), spec.case.finger_count());
            for finger in built.scene.fingers() {
                // Undo the object pose to check boundary membership locally.
                let local = rotate_about(
                    finger.contact() - pose.position,
                    Vec2::ZERO,
                    -pose.orientation,
                );
                assert!(
                    boundary_distance(profile, local).unwrap() <= 1e-9,
                    "{}: finger {} off the boundary",
                    spec.name,
                    finger.id()
                );
                let [l1, l2, l3] = finger.lengths();
                assert_abs_diff_eq!(l1, spec.link_lengths_cm[0], epsilon = 1e-9);
                assert_abs_diff_eq!(l2, spec.link_lengths_cm[1], epsilon = 1e-9);
                assert_abs_diff_eq!(l3, spec.link_lengths_cm[2], epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn rolling_targets_of_built_scenes_stay_reachable() {
        for spec in presets::bimanual_suite() {
            let built = build_scenario(&spec).unwrap();
            for finger in built.scene.fingers() {
                let target = contact_target(
                    finger,
                    built.scene.object0(),
                    built.task,
                    ContactUpdateMode::RigidRotation,
                )
                .unwrap();
                assert!(
                    crate::model::reachability_check(finger, target),
                    "{}: finger {} target unreachable",
                    spec.name,
                    finger.id()
                );
            }
        }
    }

    #[test]
    fn rigid_fit_recovers_a_known_transform_exactly() {
        let old = [
            Vec2::new(1.0, 0.0),
            Vec2::new(3.0, 2.0),
            Vec2::new(-1.0, 4.0),
            Vec2::new(2.0, -2.0),
        ];
        let theta = Angle::from_radians(0.7);
        let t = Vec2::new(1.5, -0.25);
        let new: Vec<Vec2> = old
            .iter()
            .map(|&p| rotate_about(p, Vec2::ZERO, theta) + t)
            .collect();
        let fit = rigid_fit(&old, &new);
        assert_abs_diff_eq!(fit.rotation.radians(), 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.translation().x, t.x, epsilon = 1e-9);
        assert_abs_diff_eq!(fit.translation().y, t.y, epsilon = 1e-9);
        for (&u, &v) in old.iter().zip(&new) {
            assert!(distance(fit.apply(u), v) <= 1e-9);
        }
    }

    proptest! {
        #[test]
        fn rigid_fit_is_exact_on_exact_rigid_motions(
            theta in -3.0f64..3.0,
            tx in -5.0f64..5.0,
            ty in -5.0f64..5.0,
            points in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..6),
        ) {
            let old: Vec<Vec2> = points.iter().map(|&(x, y)| Vec2::new(x, y)).collect();
            let rot = Angle::from_radians(theta);
            let t = Vec2::new(tx, ty);
            let new: Vec<Vec2> = old
                .iter()
                .map(|&p| rotate_about(p, Vec2::ZERO, rot) + t)
                .collect();
            let fit = rigid_fit(&old, &new);
            for (&u, &v) in old.iter().zip(&new) {
                prop_assert!(distance(fit.apply(u), v) <= 1e-9);
            }
            // With at least two distinct points the rotation itself is
            // identifiable, not just the transform's action on the inputs.
            let spread = old.iter().any(|&p| distance(p, old[0]) > 1e-6);
            if spread {
                prop_assert!((fit.rotation - rot).normalized().abs().radians() <= 1e-9);
                prop_assert!(distance(fit.translation(), t) <= 1e-9);
            }
        }
    }

    #[test]
    fn single_point_fit_is_a_pure_translation() {
        let fit = rigid_fit(&[Vec2::new(2.0, 1.0)], &[Vec2::new(3.0, 4.0)]);
        assert_eq!(fit.rotation, Angle::ZERO);
        assert_eq!(fit.centroid_shift(), Vec2::new(1.0, 3.0));
        assert_eq!(fit.apply(Vec2::new(2.0, 1.0)), Vec2::new(3.0, 4.0));
    }

    #[test]
    fn synthesized_fingers_reject_impossible_link_sets() {
        // The standoff ring sits at 0.9 * (l1 + max(l2, l3)); once the
        // proximal link dwarfs the rest, the remaining links cannot span
        // the gap and the placement triangle degenerates.
        let err = synthesize_finger(0, Vec2::ZERO, Vec2::new(1.0, 0.0), [20.0, 0.5, 1.0])
            .unwrap_err();
        assert!(matches!(err, Error::InfeasibleGrasp { .. }));
    }

    #[test]
    fn sweep_range_spaces_tasks_evenly() {
        let spec = presets::circle_sweep();
        let tasks = spec.sweep.unwrap().tasks();
        assert_eq!(tasks.len(), 21);
        match (tasks[0], tasks[10], tasks[20]) {
            (MotionTask::Roll(a), MotionTask::Roll(b), MotionTask::Roll(c)) => {
                assert_abs_diff_eq!(a.degrees(), -10.0, epsilon = 1e-12);
                assert_abs_diff_eq!(b.degrees(), 0.0, epsilon = 1e-12);
                assert_abs_diff_eq!(c.degrees(), 10.0, epsilon = 1e-12);
            }
            other => panic!("expected rolls, got {other:?}"),
        }
    }

    #[test]
    fn quarter_turn_contact_rotation_is_recovered_exactly() {
        let spec = presets::stock_two_finger();
        let built = build_scenario(&spec).unwrap();
        let centre = built.scene.object0().position;
        let old: Vec<Vec2> = built.scene.fingers().iter().map(|f| f.contact()).collect();
        let new: Vec<Vec2> = old
            .iter()
            .map(|&c| rotate_about(c, centre, Angle::from_radians(FRAC_PI_2)))
            .collect();
        let fit = rigid_fit(&old, &new);
        assert_abs_diff_eq!(fit.rotation.radians(), FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn suite_report_is_deterministic_and_counts_failures() {
        use crate::sampler::SamplerConfig;
        let specs = [presets::identity_single_finger(), presets::unreachable_translation()];
        let config = PlanConfig {
            sampler: SamplerConfig {
                target_count: 4,
                ..SamplerConfig::default()
            },
            ..PlanConfig::default()
        };
        let a = run_suite(&specs, 3, 17, &config);
        let b = run_suite(&specs, 3, 17, &config);
        assert_eq!(a, b);

        let identity_cell = &a.cells[0];
        assert_eq!(identity_cell.completed, 3);
        assert_eq!(identity_cell.successes, 3);
        assert_eq!(identity_cell.mean_relative_error, Some(0.0));

        let unreachable_cell = &a.cells[1];
        assert_eq!(unreachable_cell.completed, 0);
        assert_eq!(unreachable_cell.failures.len(), 3);
        assert!(unreachable_cell.failures[0].contains("finger"));
        assert!(a.render().contains("unreachable_translation"));
    }
}
