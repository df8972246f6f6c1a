//! Finger chains, object poses, motion tasks and contact-target rules.
//!
//! A finger is a fixed-base planar 3-link chain `base -> q2 -> q3 -> contact`.
//! The base joint is anchored to the palm; the chain tip is the fingertip
//! contact on the object boundary.

use crate::error::{Error, Result};
use crate::geometry::{distance, rotate_about, Angle, Vec2};

/// Relative tolerance for the stored-length vs. stored-position consistency
/// check at construction time.
pub const CHAIN_CONSISTENCY_EPS: f64 = 1e-9;

/// Maximum number of fingers a grasp scene accepts (two per hand, two hands).
pub const MAX_FINGERS: usize = 4;

/// One planar 3-link finger in its initial (pre-motion) configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FingerChain {
    id: usize,
    base: Vec2,
    q2: Vec2,
    q3: Vec2,
    contact: Vec2,
    lengths: [f64; 3],
}

impl FingerChain {
    /// Build a chain from explicit joint positions and link lengths,
    /// validating that the two agree to [`CHAIN_CONSISTENCY_EPS`] relative.
    pub fn new(
        id: usize,
        base: Vec2,
        q2: Vec2,
        q3: Vec2,
        contact: Vec2,
        lengths: [f64; 3],
    ) -> Result<Self> {
        for (i, &l) in lengths.iter().enumerate() {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::validation(
                    format!("finger[{id}].lengths[{i}]"),
                    format!("link length must be positive and finite, got {l}"),
                ));
            }
        }
        for (name, p) in [("base", base), ("q2", q2), ("q3", q3), ("contact", contact)] {
            if !p.is_finite() {
                return Err(Error::validation(
                    format!("finger[{id}].{name}"),
                    "coordinates must be finite",
                ));
            }
        }
        let spans = [
            distance(base, q2),
            distance(q2, q3),
            distance(q3, contact),
        ];
        for i in 0..3 {
            let rel = (spans[i] - lengths[i]).abs() / lengths[i];
            if rel > CHAIN_CONSISTENCY_EPS {
                return Err(Error::validation(
                    format!("finger[{id}].lengths[{i}]"),
                    format!(
                        "stored length {} disagrees with joint span {} (relative error {rel:e})",
                        lengths[i], spans[i]
                    ),
                ));
            }
        }
        Ok(FingerChain {
            id,
            base,
            q2,
            q3,
            contact,
            lengths,
        })
    }

    /// Build a chain from joint positions alone; link lengths are derived
    /// from the spans, so the consistency invariant holds by construction.
    pub fn from_points(id: usize, base: Vec2, q2: Vec2, q3: Vec2, contact: Vec2) -> Result<Self> {
        let lengths = [
            distance(base, q2),
            distance(q2, q3),
            distance(q3, contact),
        ];
        FingerChain::new(id, base, q2, q3, contact, lengths)
    }

    pub fn id(&self) -> usize {
        self.id
    }

    /// Palm-anchored base joint (never moves).
    pub fn base(&self) -> Vec2 {
        self.base
    }

    /// Initial middle joint.
    pub fn q2(&self) -> Vec2 {
        self.q2
    }

    /// Initial distal joint.
    pub fn q3(&self) -> Vec2 {
        self.q3
    }

    /// Initial fingertip contact.
    pub fn contact(&self) -> Vec2 {
        self.contact
    }

    /// Link lengths `[base->q2, q2->q3, q3->contact]`.
    pub fn lengths(&self) -> [f64; 3] {
        self.lengths
    }

    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }
}

/// Planar pose of the manipulated object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectPose {
    pub position: Vec2,
    pub orientation: Angle,
}

impl ObjectPose {
    pub fn new(position: Vec2, orientation: Angle) -> Self {
        ObjectPose {
            position,
            orientation: orientation.normalized(),
        }
    }
}

/// The one in-hand motion a plan realises. Translation carries orientation
/// unchanged; rolling pivots about the object centre with the centre fixed.
/// The two are never composed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MotionTask {
    Translate(Vec2),
    Roll(Angle),
}

impl MotionTask {
    /// A task that asks for no motion at all.
    pub fn identity() -> Self {
        MotionTask::Translate(Vec2::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        match self {
            MotionTask::Translate(dp) => dp.norm() == 0.0,
            MotionTask::Roll(phi) => phi.radians() == 0.0,
        }
    }
}

/// How a rolling task maps an initial contact to its target position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContactUpdateMode {
    /// Offset the initial contact by `radius * (cos phi, sin phi)`: the
    /// contact radius is preserved only incidentally and the update is not a
    /// rigid motion. Kept as the faithful rendition of the polar update rule;
    /// see the regression tests before relying on it.
    #[default]
    PolarOffset,
    /// Rigidly rotate the contact about the object centre by phi. This is
    /// the physically meaningful rolling update and what the scenario
    /// pipeline uses unless told otherwise.
    RigidRotation,
}

/// A complete initial grasp: object pose plus one to four fingers.
#[derive(Debug, Clone, PartialEq)]
pub struct GraspScene {
    object0: ObjectPose,
    fingers: Vec<FingerChain>,
}

impl GraspScene {
    pub fn new(object0: ObjectPose, fingers: Vec<FingerChain>) -> Result<Self> {
        if fingers.is_empty() || fingers.len() > MAX_FINGERS {
            return Err(Error::validation(
                "fingers",
                format!("expected 1 to {MAX_FINGERS} fingers, got {}", fingers.len()),
            ));
        }
        for (i, f) in fingers.iter().enumerate() {
            if fingers[..i].iter().any(|g| g.id() == f.id()) {
                return Err(Error::validation(
                    format!("finger[{}].id", f.id()),
                    "finger ids must be unique",
                ));
            }
            let reach = f.total_length();
            let d = distance(f.base(), f.contact());
            if d > reach {
                return Err(Error::validation(
                    format!("finger[{}].contact", f.id()),
                    format!("initial contact at distance {d} exceeds total length {reach}"),
                ));
            }
        }
        Ok(GraspScene { object0, fingers })
    }

    pub fn object0(&self) -> ObjectPose {
        self.object0
    }

    pub fn fingers(&self) -> &[FingerChain] {
        &self.fingers
    }
}

/// Pose the object should reach after `task`.
pub fn object_target(object0: ObjectPose, task: MotionTask) -> ObjectPose {
    match task {
        MotionTask::Translate(dp) => ObjectPose::new(object0.position + dp, object0.orientation),
        MotionTask::Roll(phi) => ObjectPose::new(object0.position, object0.orientation + phi),
    }
}

/// Where `finger`'s contact must end up for `task`.
///
/// Translation carries every contact by the same displacement. Rolling uses
/// the selected [`ContactUpdateMode`] and is undefined for a contact at the
/// object centre.
pub fn contact_target(
    finger: &FingerChain,
    object0: ObjectPose,
    task: MotionTask,
    mode: ContactUpdateMode,
) -> Result<Vec2> {
    match task {
        MotionTask::Translate(dp) => Ok(finger.contact() + dp),
        MotionTask::Roll(phi) => {
            let radius = distance(object0.position, finger.contact());
            if radius < crate::geometry::DIRECTION_EPS {
                return Err(Error::ContactAtCenter);
            }
            match mode {
                ContactUpdateMode::PolarOffset => {
                    Ok(finger.contact() + radius * Vec2::unit(phi))
                }
                ContactUpdateMode::RigidRotation => {
                    Ok(rotate_about(finger.contact(), object0.position, phi))
                }
            }
        }
    }
}

/// Displacements of the middle and distal joints from their initial
/// positions: `(e2, e3)`.
pub fn displacement(finger: &FingerChain, q2_new: Vec2, q3_new: Vec2) -> (f64, f64) {
    (
        distance(q2_new, finger.q2()),
        distance(q3_new, finger.q3()),
    )
}

/// Whether a fixed-base 3-link chain can place its tip at `target`:
/// the distance from the base must lie in the annulus
/// `[max(0, l_max - (sum of the other two)), l1 + l2 + l3]`.
pub fn reachability_check(finger: &FingerChain, target: Vec2) -> bool {
    let d = distance(finger.base(), target);
    let (min_reach, max_reach) = reach_bounds(finger.lengths());
    d >= min_reach && d <= max_reach
}

/// Reachable annulus `[min, max]` for the given link lengths.
pub fn reach_bounds(lengths: [f64; 3]) -> (f64, f64) {
    let total: f64 = lengths.iter().sum();
    let l_max = lengths.iter().fold(0.0f64, |a, &b| a.max(b));
    let min_reach = (l_max - (total - l_max)).max(0.0);
    (min_reach, total)
}
