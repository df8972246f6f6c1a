//! Monte Carlo sampling of finger configurations that realise a contact
//! target under the effort filter.
//!
//! Strategies:
//!
//! * [`SampleStrategy::ManifoldClosure`] (default) draws the distal joint on
//!   the circle the contact constraint dictates and closes the chain through
//!   an exact circle-circle intersection, leaving a sampled base-closure
//!   residual inside the admissible band. Plain rejection of uniform joint
//!   draws against a near-equality length constraint has acceptance
//!   probability on the order of the tolerance itself, so the closure is
//!   solved rather than tested; the accepted set is the same.
//! * [`SampleStrategy::DiskRejection`] draws both free joints uniformly from
//!   disks around their initial positions and tests every link-length
//!   constraint against the tolerance band. Kept as the plain-rejection
//!   rendition for cross-checks; its acceptance rate collapses quickly as
//!   tolerances tighten.
//!
//! All length tolerances are relative residuals: a constraint `|x| = l`
//! passes when `| ||x|| - l | <= tol * l`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::cost::{accepts, cost_closed_form, CostInput, DEFAULT_COST_TOLERANCE};
use crate::error::{Error, Result};
use crate::geometry::{distance, Angle, Vec2};
use crate::model::{
    contact_target, displacement, reach_bounds, reachability_check, ContactUpdateMode,
    FingerChain, MotionTask, ObjectPose,
};

/// Default relative closure residual for [`SampleStrategy::ManifoldClosure`].
pub const DEFAULT_CLOSURE_TOLERANCE: f64 = 1e-6;

/// Default relative length residual for [`SampleStrategy::DiskRejection`].
pub const DEFAULT_REJECTION_TOLERANCE: f64 = 1e-3;

/// Default minimum triangle altitude for the singularity filter, as a
/// fraction of the finger's total length.
pub const DEFAULT_SINGULARITY_MARGIN: f64 = 1e-6;

/// Task motions smaller than this fraction of the finger's total length are
/// treated as the identity.
const IDENTITY_EPS: f64 = 1e-12;

/// Attempts drawn per derived-seed batch; parallel or resumed runs that
/// merge batches in index order reproduce the sequential stream.
const BATCH_SIZE: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleStrategy {
    DiskRejection,
    #[default]
    ManifoldClosure,
}

/// Knobs for [`sample_finger`] and [`workspace_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub strategy: SampleStrategy,
    /// Half-width of the effort acceptance band around 1.
    pub cost_tolerance: f64,
    /// Relative link-length / closure residual tolerance.
    pub length_tolerance: f64,
    /// Solutions to collect before stopping.
    pub target_count: usize,
    /// Attempt budget across all batches.
    pub max_attempts: u64,
    pub seed: u64,
    /// Disk radius for [`SampleStrategy::DiskRejection`]; `None` means twice
    /// the finger's total length.
    pub box_radius: Option<f64>,
    /// Minimum triangle altitude, as a fraction of total finger length,
    /// below which a configuration counts as kinematically singular.
    pub singularity_margin: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            strategy: SampleStrategy::ManifoldClosure,
            cost_tolerance: DEFAULT_COST_TOLERANCE,
            length_tolerance: DEFAULT_CLOSURE_TOLERANCE,
            target_count: 50,
            max_attempts: 1_000_000,
            seed: 0,
            box_radius: None,
            singularity_margin: DEFAULT_SINGULARITY_MARGIN,
        }
    }
}

impl SamplerConfig {
    /// Defaults for the given strategy (the two differ in their natural
    /// length tolerance).
    pub fn for_strategy(strategy: SampleStrategy) -> Self {
        let length_tolerance = match strategy {
            SampleStrategy::DiskRejection => DEFAULT_REJECTION_TOLERANCE,
            SampleStrategy::ManifoldClosure => DEFAULT_CLOSURE_TOLERANCE,
        };
        SamplerConfig {
            strategy,
            length_tolerance,
            ..SamplerConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cost_tolerance.is_finite() && self.cost_tolerance > 0.0) {
            return Err(Error::validation(
                "cost_tolerance",
                format!("must be positive, got {}", self.cost_tolerance),
            ));
        }
        if !(self.length_tolerance > 0.0 && self.length_tolerance < 1.0) {
            return Err(Error::validation(
                "length_tolerance",
                format!("must be in (0, 1), got {}", self.length_tolerance),
            ));
        }
        if self.target_count == 0 {
            return Err(Error::validation("target_count", "must be at least 1"));
        }
        if self.max_attempts == 0 {
            return Err(Error::validation("max_attempts", "must be at least 1"));
        }
        if let Some(r) = self.box_radius {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::validation(
                    "box_radius",
                    format!("must be positive, got {r}"),
                ));
            }
        }
        if !(self.singularity_margin.is_finite() && self.singularity_margin >= 0.0) {
            return Err(Error::validation(
                "singularity_margin",
                format!("must be nonnegative, got {}", self.singularity_margin),
            ));
        }
        Ok(())
    }
}

/// One accepted configuration of one finger.
#[derive(Debug, Clone, PartialEq)]
pub struct FingerSolution {
    pub finger_id: usize,
    pub q2: Vec2,
    pub q3: Vec2,
    /// The achieved contact (the sampler pins it to the target).
    pub contact: Vec2,
    /// Middle-joint displacement from the initial configuration.
    pub e2: f64,
    /// Distal-joint displacement from the initial configuration.
    pub e3: f64,
    /// Effort-functional value (0 for the bypassed identity case).
    pub cost: f64,
    /// Filled in by the planner.
    pub angles: Option<crate::angles::RecoveredAngles>,
}

/// Where rejected attempts went.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SampleStats {
    pub attempts: u64,
    pub accepted: u64,
    /// Draws where the closure circles did not intersect.
    pub closure_infeasible: u64,
    pub cost_rejects: u64,
    pub length_rejects: u64,
    pub singularity_rejects: u64,
}

impl SampleStats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            self.accepted as f64 / self.attempts as f64
        }
    }

    pub fn merge(&mut self, other: &SampleStats) {
        self.attempts += other.attempts;
        self.accepted += other.accepted;
        self.closure_infeasible += other.closure_infeasible;
        self.cost_rejects += other.cost_rejects;
        self.length_rejects += other.length_rejects;
        self.singularity_rejects += other.singularity_rejects;
    }
}

/// Solutions plus the attempt statistics that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub solutions: Vec<FingerSolution>,
    pub stats: SampleStats,
}

/// Mix a base seed with a stream index into an independent child seed
/// (splitmix64 finaliser, so nearby indices land far apart).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(base ^ mix(stream))
}

/// Draw up to `target_count` configurations of `finger` that place its tip
/// at `contact_target` for a task motion of magnitude `delta_norm`.
///
/// An identity task (zero motion, unchanged target) returns the initial
/// configuration as the single solution, bypassing every filter. When the
/// attempt budget runs out first the partial batch rides along inside
/// [`Error::BudgetExhausted`].
pub fn sample_finger(
    finger: &FingerChain,
    contact_target: Vec2,
    delta_norm: f64,
    config: &SamplerConfig,
) -> Result<SampleBatch> {
    config.validate()?;
    debug_assert!(contact_target.is_finite() && delta_norm >= 0.0);

    let total = finger.total_length();
    if delta_norm <= IDENTITY_EPS * total
        && distance(contact_target, finger.contact()) <= IDENTITY_EPS * total
    {
        return Ok(SampleBatch {
            solutions: vec![FingerSolution {
                finger_id: finger.id(),
                q2: finger.q2(),
                q3: finger.q3(),
                contact: finger.contact(),
                e2: 0.0,
                e3: 0.0,
                cost: 0.0,
                angles: None,
            }],
            stats: SampleStats {
                attempts: 1,
                accepted: 1,
                ..SampleStats::default()
            },
        });
    }

    if !reachability_check(finger, contact_target) {
        let (min_reach, max_reach) = reach_bounds(finger.lengths());
        return Err(Error::Unreachable {
            finger_id: finger.id(),
            distance: distance(finger.base(), contact_target),
            min_reach,
            max_reach,
        });
    }

    let mut solutions = Vec::with_capacity(config.target_count);
    let mut stats = SampleStats::default();
    let mut batch_index = 0u64;
    'outer: while stats.attempts < config.max_attempts && solutions.len() < config.target_count {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, batch_index));
        batch_index += 1;
        for _ in 0..BATCH_SIZE {
            if stats.attempts >= config.max_attempts || solutions.len() >= config.target_count {
                break 'outer;
            }
            stats.attempts += 1;
            let drawn = match config.strategy {
                SampleStrategy::ManifoldClosure => {
                    draw_on_manifold(finger, contact_target, config, &mut rng, &mut stats)
                }
                SampleStrategy::DiskRejection => {
                    draw_by_rejection(finger, contact_target, config, &mut rng, &mut stats)
                }
            };
            let Some((q2, q3)) = drawn else { continue };

            let (e2, e3) = displacement(finger, q2, q3);
            let input = CostInput::new(delta_norm, e2, e3);
            if !accepts(input, config.cost_tolerance) {
                stats.cost_rejects += 1;
                continue;
            }
            if is_singular(
                finger.base(),
                q2,
                q3,
                contact_target,
                config.singularity_margin * total,
            ) {
                stats.singularity_rejects += 1;
                continue;
            }
            stats.accepted += 1;
            solutions.push(FingerSolution {
                finger_id: finger.id(),
                q2,
                q3,
                contact: contact_target,
                e2,
                e3,
                cost: cost_closed_form(input),
                angles: None,
            });
        }
    }

    let batch = SampleBatch { solutions, stats };
    if batch.solutions.len() < config.target_count {
        return Err(Error::BudgetExhausted {
            requested: config.target_count,
            partial: Box::new(batch),
        });
    }
    Ok(batch)
}

/// Distal joint on the contact circle, middle joint from the exact closure
/// intersection — candidates sit on the link circles to rounding error, so
/// only closure feasibility remains to test.
fn draw_on_manifold(
    finger: &FingerChain,
    target: Vec2,
    config: &SamplerConfig,
    rng: &mut ChaCha8Rng,
    stats: &mut SampleStats,
) -> Option<(Vec2, Vec2)> {
    let [l1, l2, l3] = finger.lengths();
    let alpha = Angle::from_radians(rng.gen_range(0.0..TAU));
    let q3 = target + l3 * Vec2::unit(alpha);
    let left_branch = rng.gen::<bool>();
    let Some(q2) = circle_intersection(finger.base(), l1, q3, l2, left_branch) else {
        stats.closure_infeasible += 1;
        return None;
    };
    if (distance(finger.base(), q2) - l1).abs() > config.length_tolerance * l1 {
        stats.length_rejects += 1;
        return None;
    }
    Some((q2, q3))
}

/// Both free joints uniform in disks around their initial positions; all
/// three length constraints tested against the tolerance band.
fn draw_by_rejection(
    finger: &FingerChain,
    target: Vec2,
    config: &SamplerConfig,
    rng: &mut ChaCha8Rng,
    stats: &mut SampleStats,
) -> Option<(Vec2, Vec2)> {
    let [l1, l2, l3] = finger.lengths();
    let radius = config.box_radius.unwrap_or(2.0 * finger.total_length());
    let q2 = uniform_in_disk(rng, finger.q2(), radius);
    let q3 = uniform_in_disk(rng, finger.q3(), radius);
    let tol = config.length_tolerance;
    let ok = (distance(finger.base(), q2) - l1).abs() <= tol * l1
        && (distance(q2, q3) - l2).abs() <= tol * l2
        && (distance(q3, target) - l3).abs() <= tol * l3;
    if !ok {
        stats.length_rejects += 1;
        return None;
    }
    Some((q2, q3))
}

fn uniform_in_disk(rng: &mut ChaCha8Rng, center: Vec2, radius: f64) -> Vec2 {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        if x * x + y * y <= 1.0 {
            return center + Vec2::new(x * radius, y * radius);
        }
    }
}

/// Intersection of circles `(c1, r1)` and `(c2, r2)`; `left` selects the
/// point on the +perpendicular side of the centre line.
pub(crate) fn circle_intersection(c1: Vec2, r1: f64, c2: Vec2, r2: f64, left: bool) -> Option<Vec2> {
    let d = distance(c1, c2);
    if d < 1e-12 || d > r1 + r2 || d < (r1 - r2).abs() {
        return None;
    }
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let u = (c2 - c1) / d;
    let v = Vec2::new(-u.y, u.x);
    let sign = if left { 1.0 } else { -1.0 };
    Some(c1 + a * u + (sign * h) * v)
}

/// A configuration is singular when either consecutive joint triple is
/// within `margin` of collinear, measured by the smallest triangle altitude.
pub(crate) fn is_singular(base: Vec2, q2: Vec2, q3: Vec2, contact: Vec2, margin: f64) -> bool {
    min_altitude(base, q2, q3) <= margin || min_altitude(q2, q3, contact) <= margin
}

fn min_altitude(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    let area2 = (b - a).cross(c - a).abs();
    let longest = distance(a, b).max(distance(b, c)).max(distance(a, c));
    if longest == 0.0 {
        0.0
    } else {
        area2 / longest
    }
}

/// Re-run every acceptance check on an emitted solution from scratch.
/// Returns the first violated condition, if any.
pub fn revalidate(
    finger: &FingerChain,
    contact_target: Vec2,
    delta_norm: f64,
    config: &SamplerConfig,
    solution: &FingerSolution,
) -> std::result::Result<(), String> {
    let [l1, l2, l3] = finger.lengths();
    let total = finger.total_length();
    if delta_norm <= IDENTITY_EPS * total
        && distance(contact_target, finger.contact()) <= IDENTITY_EPS * total
    {
        let same = solution.q2 == finger.q2()
            && solution.q3 == finger.q3()
            && solution.contact == finger.contact();
        return if same {
            Ok(())
        } else {
            Err("identity task must return the initial configuration".into())
        };
    }
    let tol = config.length_tolerance;
    let checks = [
        (
            "base link length",
            (distance(finger.base(), solution.q2) - l1).abs(),
            tol * l1,
        ),
        (
            "middle link length",
            (distance(solution.q2, solution.q3) - l2).abs(),
            tol * l2,
        ),
        (
            "distal link length",
            (distance(solution.q3, contact_target) - l3).abs(),
            tol * l3,
        ),
    ];
    for (what, residual, bound) in checks {
        if residual > bound {
            return Err(format!("{what} residual {residual:e} exceeds {bound:e}"));
        }
    }
    if solution.contact != contact_target {
        return Err("solution contact differs from the target".into());
    }
    let (e2, e3) = displacement(finger, solution.q2, solution.q3);
    if (e2 - solution.e2).abs() > 1e-12 * (1.0 + e2) || (e3 - solution.e3).abs() > 1e-12 * (1.0 + e3)
    {
        return Err("stored displacements disagree with the joint positions".into());
    }
    let input = CostInput::new(delta_norm, e2, e3);
    let cost = cost_closed_form(input);
    if (cost - solution.cost).abs() > 1e-12 * (1.0 + cost.abs()) {
        return Err("stored cost disagrees with a fresh evaluation".into());
    }
    if !accepts(input, config.cost_tolerance) {
        return Err(format!("cost {cost} outside the acceptance band"));
    }
    if is_singular(
        finger.base(),
        solution.q2,
        solution.q3,
        contact_target,
        config.singularity_margin * total,
    ) {
        return Err("configuration is kinematically singular".into());
    }
    Ok(())
}

/// One sweep sample: which task produced which solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub task_index: usize,
    pub solution: FingerSolution,
}

/// Pooled solutions across a family of tasks, with per-task failures
/// annotated rather than aborting the sweep.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepCloud {
    pub points: Vec<SweepPoint>,
    /// `(task_index, reason)` for tasks that produced no full batch.
    pub task_errors: Vec<(usize, String)>,
    pub stats: SampleStats,
}

/// Sample every task in `tasks` for one finger and pool the results.
/// Task `t` runs under the derived seed `derive_seed(config.seed, t)`.
pub fn workspace_sweep(
    finger: &FingerChain,
    object0: ObjectPose,
    tasks: &[MotionTask],
    mode: ContactUpdateMode,
    config: &SamplerConfig,
) -> Result<SweepCloud> {
    config.validate()?;
    let mut cloud = SweepCloud::default();
    for (t, task) in tasks.iter().enumerate() {
        let target = match contact_target(finger, object0, *task, mode) {
            Ok(p) => p,
            Err(e) => {
                cloud.task_errors.push((t, e.to_string()));
                continue;
            }
        };
        let task_config = SamplerConfig {
            seed: derive_seed(config.seed, t as u64),
            ..config.clone()
        };
        let delta_norm = distance(target, finger.contact());
        match sample_finger(finger, target, delta_norm, &task_config) {
            Ok(batch) => {
                cloud.stats.merge(&batch.stats);
                cloud
                    .points
                    .extend(batch.solutions.into_iter().map(|solution| SweepPoint {
                        task_index: t,
                        solution,
                    }));
            }
            Err(Error::BudgetExhausted { requested, partial }) => {
                cloud.stats.merge(&partial.stats);
                let got = partial.solutions.len();
                cloud
                    .points
                    .extend(partial.solutions.into_iter().map(|solution| SweepPoint {
                        task_index: t,
                        solution,
                    }));
                cloud
                    .task_errors
                    .push((t, format!("budget exhausted: {got} of {requested} solutions")));
            }
            Err(e) => cloud.task_errors.push((t, e.to_string())),
        }
    }
    Ok(cloud)
}
