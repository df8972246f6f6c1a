//! Planar multi-fingered manipulation planning.
//!
//! The library models each finger as a three-link planar chain that keeps a
//! fixed contact on a grasped object. Given a desired object motion — a
//! translation or an in-place roll — it:
//!
//! 1. computes where each contact must move ([`contact_target`]),
//! 2. samples middle-joint configurations that keep the chain closed and
//!    whose effort functional lands in an accepted band ([`sample_finger`]),
//! 3. recovers joint angles for each configuration two independent ways
//!    ([`recover_both`]),
//! 4. allocates minimum-norm effort weights across fingers
//!    ([`allocate_weights`]),
//! 5. clusters the sampled configurations into candidate strategies and
//!    picks one ([`kmeans`], [`plan`]), and
//! 6. scores the chosen strategy against the requested motion
//!    ([`evaluate`]).
//!
//! Scenario files (JSON), CSV/SVG emission, and the `handplan` binary's
//! subcommands live in [`io`] and [`cli`].
//!
//! ```
//! use handplan::{plan, evaluate, MotionTask, PlanConfig, presets};
//!
//! let scenario = presets::stock_two_finger();
//! let built = handplan::build_scenario(&scenario).unwrap();
//! assert!(matches!(built.task, MotionTask::Roll(_)));
//!
//! let config = PlanConfig {
//!     sampler: handplan::SamplerConfig {
//!         target_count: 4,
//!         ..Default::default()
//!     },
//!     ..Default::default()
//! };
//! let result = plan(&built.scene, built.task, &config).unwrap();
//! assert_eq!(result.fingers.len(), 2);
//! assert!(evaluate(&result).relative_error < 0.15);
//! ```

pub mod angles;
pub mod cli;
pub mod cost;
pub mod error;
pub mod geometry;
pub mod io;
pub mod model;
pub mod planner;
pub mod sampler;
pub mod scenario;

pub use angles::{
    forward_kinematics, recover_all, recover_both, AngleRecovery, JointAngles, RecoveredAngles,
};
pub use cost::{accepts, cost_closed_form, cost_quadrature, CostInput, DEFAULT_COST_TOLERANCE};
pub use error::{Error, Result};
pub use geometry::{Angle, Vec2};
pub use model::{
    contact_target, object_target, ContactUpdateMode, FingerChain, GraspScene, MotionTask,
    ObjectPose, MAX_FINGERS,
};
pub use planner::{
    allocate_weights, kmeans, plan, select_strategy, ClusterModel, ClusterSpace,
    ManipulationPlan, PlanConfig, PlannedFinger, SeedMode, StrategySelection, TaskAnchors,
    WeightAllocation,
};
pub use sampler::{
    derive_seed, sample_finger, workspace_sweep, FingerSolution, SampleBatch, SampleStats,
    SampleStrategy, SamplerConfig, SweepCloud, SweepPoint,
};
pub use scenario::{
    build_scenario, evaluate, presets, ray_boundary, rigid_fit, run_suite, BuiltScenario,
    CaseLabel, ObjectShape, Pose6, RigidFit, RunMetrics, ScenarioSpec, ShapeProfile, SuiteReport,
    SUCCESS_THRESHOLD,
};
