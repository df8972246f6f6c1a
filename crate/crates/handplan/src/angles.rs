//! Joint-angle recovery: how far did each joint turn between the initial
//! configuration and a sampled one?
//!
//! Two routes are provided and kept side by side:
//!
//! * [`AngleRecovery::LawOfCosines`] recovers each magnitude from chord and
//!   triangle relations on the old/new joint positions, signed by the turn
//!   direction. The middle and distal relations measure the angle subtended
//!   at the *new* joint between the old and new positions of its distal
//!   endpoint.
//! * [`AngleRecovery::DirectionDelta`] differences the relative link
//!   direction angles of the old and new chains — the exact joint-space
//!   delta of a planar chain, and the route that round-trips through
//!   [`forward_kinematics`].
//!
//! The two agree exactly on the base joint; [`compare_chord_readings`]
//! quantifies how the subtended-angle reading relates to a law-of-cosines
//! variant driven by each joint's own displacement chord, which is not
//! always within the arccos domain.

use crate::error::{Error, Result};
use crate::geometry::{
    chord_angle, distance, signed_turn, triangle_angle, Angle, Vec2,
};
use crate::model::FingerChain;

/// Relative tolerance for the joints-on-their-link-circles preconditions.
pub const ON_CIRCLE_EPS: f64 = 1e-6;

/// Which recovery route produced a set of joint angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleRecovery {
    LawOfCosines,
    DirectionDelta,
}

/// Signed joint rotations `[base, middle, distal]`, each in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointAngles {
    pub method: AngleRecovery,
    pub values: [Angle; 3],
}

/// Both recovery routes for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveredAngles {
    pub law_of_cosines: JointAngles,
    pub direction_delta: JointAngles,
}

fn check_on_circle(dist: f64, radius: f64) -> Result<()> {
    let tol = ON_CIRCLE_EPS * radius;
    if (dist - radius).abs() > tol {
        return Err(Error::OffCircle {
            distance: dist,
            radius,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Signed rotation of the base joint, from the chord the middle joint sweeps
/// on its circle about the base.
///
/// Requires `q2_new` on the circle of radius `l1` about the base (within
/// [`ON_CIRCLE_EPS`] relative).
pub fn base_angle(finger: &FingerChain, q2_new: Vec2) -> Result<Angle> {
    let l1 = finger.lengths()[0];
    check_on_circle(distance(finger.base(), q2_new), l1)?;
    let chord = distance(q2_new, finger.q2());
    let magnitude = chord_angle(chord, l1)?;
    if magnitude.radians() == 0.0 {
        return Ok(Angle::ZERO);
    }
    let turn = signed_turn(finger.q2() - finger.base(), q2_new - finger.base())?;
    Ok(signed_by(magnitude, turn))
}

/// Signed angle subtended at the (new) middle joint between the old and new
/// positions of the distal joint, whose link has length `link`.
///
/// Requires `distal_new` on the circle of radius `link` about `vertex_new`.
pub fn interior_angle(
    vertex_new: Vec2,
    distal_old: Vec2,
    distal_new: Vec2,
    link: f64,
) -> Result<Angle> {
    subtended_at(vertex_new, distal_old, distal_new, link)
}

/// Signed angle subtended at the (new) distal joint between the old and new
/// contact positions, whose link has length `link`.
///
/// Requires `contact_new` on the circle of radius `link` about `q3_new`.
pub fn distal_angle(q3_new: Vec2, contact_old: Vec2, contact_new: Vec2, link: f64) -> Result<Angle> {
    subtended_at(q3_new, contact_old, contact_new, link)
}

fn subtended_at(vertex: Vec2, endpoint_old: Vec2, endpoint_new: Vec2, link: f64) -> Result<Angle> {
    check_on_circle(distance(vertex, endpoint_new), link)?;
    let d = distance(endpoint_old, vertex);
    let opposite = distance(endpoint_new, endpoint_old);
    let magnitude = triangle_angle(d, link, opposite)?;
    if magnitude.radians() == 0.0 {
        return Ok(Angle::ZERO);
    }
    let turn = signed_turn(endpoint_old - vertex, endpoint_new - vertex)?;
    Ok(signed_by(magnitude, turn))
}

fn signed_by(magnitude: Angle, turn: Angle) -> Angle {
    if turn.radians() < 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

/// Recover all three signed joint rotations for a new configuration of
/// `finger` by the requested route.
pub fn recover_all(
    finger: &FingerChain,
    q2_new: Vec2,
    q3_new: Vec2,
    contact_new: Vec2,
    method: AngleRecovery,
) -> Result<JointAngles> {
    let values = match method {
        AngleRecovery::LawOfCosines => {
            let [_, l2, l3] = finger.lengths();
            [
                base_angle(finger, q2_new)?,
                interior_angle(q2_new, finger.q3(), q3_new, l2)?,
                distal_angle(q3_new, finger.contact(), contact_new, l3)?,
            ]
        }
        AngleRecovery::DirectionDelta => {
            let t1 = signed_turn(finger.q2() - finger.base(), q2_new - finger.base())?;
            let t2 = signed_turn(finger.q3() - finger.q2(), q3_new - q2_new)?;
            let t3 = signed_turn(finger.contact() - finger.q3(), contact_new - q3_new)?;
            [t1, (t2 - t1).normalized(), (t3 - t2).normalized()]
        }
    };
    Ok(JointAngles { method, values })
}

/// Run both recovery routes.
pub fn recover_both(
    finger: &FingerChain,
    q2_new: Vec2,
    q3_new: Vec2,
    contact_new: Vec2,
) -> Result<RecoveredAngles> {
    Ok(RecoveredAngles {
        law_of_cosines: recover_all(finger, q2_new, q3_new, contact_new, AngleRecovery::LawOfCosines)?,
        direction_delta: recover_all(
            finger,
            q2_new,
            q3_new,
            contact_new,
            AngleRecovery::DirectionDelta,
        )?,
    })
}

/// Joint coordinates `[r1, r2, r3]` of the initial chain: the first link's
/// absolute direction angle, then each link's direction relative to its
/// predecessor.
pub fn initial_joint_coordinates(finger: &FingerChain) -> Result<[Angle; 3]> {
    let d1 = finger.q2() - finger.base();
    let d2 = finger.q3() - finger.q2();
    let d3 = finger.contact() - finger.q3();
    let a1 = Angle::from_radians(d1.y.atan2(d1.x));
    let a2 = Angle::from_radians(d2.y.atan2(d2.x));
    let a3 = Angle::from_radians(d3.y.atan2(d3.x));
    Ok([a1, (a2 - a1).normalized(), (a3 - a2).normalized()])
}

/// Positions `(q2, q3, contact)` of a chain with the given joint
/// coordinates: each link extends from the previous joint at the cumulative
/// sum of the angles so far.
pub fn forward_kinematics(base: Vec2, joint_angles: [Angle; 3], lengths: [f64; 3]) -> (Vec2, Vec2, Vec2) {
    let a1 = joint_angles[0];
    let a2 = a1 + joint_angles[1];
    let a3 = a2 + joint_angles[2];
    let q2 = base + lengths[0] * Vec2::unit(a1);
    let q3 = q2 + lengths[1] * Vec2::unit(a2);
    let contact = q3 + lengths[2] * Vec2::unit(a3);
    (q2, q3, contact)
}

/// One joint's two chord readings: the subtended-angle route actually used,
/// and the variant that puts the joint's *own* displacement chord opposite
/// the link — whose arccos argument can leave [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordReadingComparison {
    /// 1-based joint index (2 = middle, 3 = distal).
    pub joint: usize,
    /// Unsigned angle from the distal-endpoint chord (the implemented route).
    pub distal_chord_angle: Angle,
    /// Raw arccos argument when the joint's own displacement is used instead.
    pub own_displacement_arg: f64,
    /// The own-displacement angle, when its argument is within domain.
    pub own_displacement_angle: Option<Angle>,
}

/// Quantify, for the middle and distal joints, how the implemented
/// subtended-angle reading compares with the own-displacement variant.
pub fn compare_chord_readings(
    finger: &FingerChain,
    q2_new: Vec2,
    q3_new: Vec2,
    contact_new: Vec2,
) -> Result<Vec<ChordReadingComparison>> {
    let [_, l2, l3] = finger.lengths();
    let e2 = distance(q2_new, finger.q2());
    let e3 = distance(q3_new, finger.q3());
    let entries = [
        (2usize, q2_new, finger.q3(), q3_new, l2, e2),
        (3usize, q3_new, finger.contact(), contact_new, l3, e3),
    ];
    let mut out = Vec::with_capacity(2);
    for (joint, vertex, endpoint_old, endpoint_new, link, own) in entries {
        let implemented = subtended_at(vertex, endpoint_old, endpoint_new, link)?;
        // Own-displacement reading: treat the joint's displacement as a
        // chord of its link circle, cos(theta) = 1 - e^2 / (2 l^2). The
        // joint moves on the *previous* link's circle, so nothing caps e
        // at 2l and the argument can fall below -1.
        let arg = 1.0 - own * own / (2.0 * link * link);
        let own_angle = (-1.0..=1.0)
            .contains(&arg)
            .then(|| Angle::from_radians(arg.acos()));
        out.push(ChordReadingComparison {
            joint,
            distal_chord_angle: implemented.abs(),
            own_displacement_arg: arg,
            own_displacement_angle: own_angle,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rotate_about;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn bent_finger() -> FingerChain {
        FingerChain::from_points(
            0,
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.5, -0.8),
        )
        .unwrap()
    }

    #[test]
    fn base_rotation_of_sixty_degrees_is_recovered_with_sign() {
        let f = FingerChain::from_points(
            0,
            Vec2::ZERO,
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(3.0, 0.0),
        )
        .unwrap();
        let q2_new = Vec2::new(0.5, 3f64.sqrt() / 2.0);
        let a = base_angle(&f, q2_new).unwrap();
        assert_abs_diff_eq!(a.radians(), FRAC_PI_3, epsilon = 1e-12);
        let a_cw = base_angle(&f, Vec2::new(0.5, -(3f64.sqrt()) / 2.0)).unwrap();
        assert_abs_diff_eq!(a_cw.radians(), -FRAC_PI_3, epsilon = 1e-12);
    }

    #[test]
    fn unmoved_middle_joint_recovers_zero() {
        let f = bent_finger();
        assert_eq!(base_angle(&f, f.q2()).unwrap().radians(), 0.0);
    }

    #[test]
    fn off_circle_middle_joint_is_rejected() {
        let f = bent_finger();
        let err = base_angle(&f, f.q2() * 1.001).unwrap_err();
        assert!(matches!(err, Error::OffCircle { .. }));
    }

    #[test]
    fn quarter_swing_of_the_distal_joint() {
        let a = interior_angle(Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), 1.0).unwrap();
        assert_abs_diff_eq!(a.radians(), FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn full_reversal_of_the_contact_is_a_canonical_positive_pi() {
        let a = distal_angle(Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0), 1.0).unwrap();
        assert_eq!(a.radians(), PI);
    }

    #[test]
    fn unmoved_endpoint_subtends_zero() {
        let p = Vec2::new(0.3, 0.9);
        let a = interior_angle(Vec2::ZERO, p, p, p.norm()).unwrap();
        assert_eq!(a.radians(), 0.0);
    }

    #[test]
    fn forward_kinematics_accumulates_joint_angles() {
        let (q2, q3, c) = forward_kinematics(
            Vec2::ZERO,
            [Angle::ZERO, Angle::from_radians(FRAC_PI_2), Angle::ZERO],
            [1.0, 1.0, 1.0],
        );
        assert_abs_diff_eq!(q2.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q2.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q3.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q3.y, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.y, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn direction_delta_reads_a_pure_base_rotation_exactly() {
        let f = bent_finger();
        let alpha = Angle::from_radians(0.37);
        let q2n = rotate_about(f.q2(), f.base(), alpha);
        let q3n = rotate_about(f.q3(), f.base(), alpha);
        let cn = rotate_about(f.contact(), f.base(), alpha);
        let angles = recover_all(&f, q2n, q3n, cn, AngleRecovery::DirectionDelta).unwrap();
        assert_abs_diff_eq!(angles.values[0].radians(), 0.37, epsilon = 1e-12);
        assert_abs_diff_eq!(angles.values[1].radians(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(angles.values[2].radians(), 0.0, epsilon = 1e-12);
        let loc = recover_all(&f, q2n, q3n, cn, AngleRecovery::LawOfCosines).unwrap();
        assert_abs_diff_eq!(loc.values[0].radians(), 0.37, epsilon = 1e-12);
    }

    #[test]
    fn both_routes_see_an_identity_move_as_all_zero() {
        let f = bent_finger();
        let both = recover_both(&f, f.q2(), f.q3(), f.contact()).unwrap();
        for v in both.law_of_cosines.values.iter().chain(both.direction_delta.values.iter()) {
            assert_eq!(v.radians(), 0.0);
        }
    }

    #[test]
    fn own_displacement_reading_can_leave_the_arccos_domain() {
        // A long proximal link lets the middle joint travel much farther
        // than twice the short middle link: the own-displacement chord then
        // exceeds what its circle admits.
        let f = FingerChain::from_points(
            0,
            Vec2::ZERO,
            Vec2::new(2.0, 0.0),
            Vec2::new(2.5, 0.0),
            Vec2::new(2.5, 1.0),
        )
        .unwrap();
        let q2n = Vec2::new(-2.0, 0.0);
        let q3n = Vec2::new(-2.5, 0.0);
        let cn = Vec2::new(-2.5, 1.0);
        let cmp = compare_chord_readings(&f, q2n, q3n, cn).unwrap();
        assert_eq!(cmp.len(), 2);
        let middle = &cmp[0];
        assert_eq!(middle.joint, 2);
        // e2 = 4 on a link of 0.5: arg = 1 - 16/0.5 = -31.
        assert_abs_diff_eq!(middle.own_displacement_arg, -31.0, epsilon = 1e-12);
        assert!(middle.own_displacement_angle.is_none());
        // The implemented reading is always defined.
        assert!(middle.distal_chord_angle.radians().is_finite());
    }

    #[test]
    fn own_displacement_reading_matches_the_chord_angle_when_in_domain() {
        let f = bent_finger();
        let alpha = Angle::from_radians(0.4);
        let q2n = rotate_about(f.q2(), f.base(), alpha);
        let q3n = rotate_about(f.q3(), f.base(), alpha);
        let cn = rotate_about(f.contact(), f.base(), alpha);
        let cmp = compare_chord_readings(&f, q2n, q3n, cn).unwrap();
        for reading in &cmp {
            let own = reading
                .own_displacement_angle
                .expect("small rigid turn stays in domain");
            assert!(own.radians() >= 0.0);
            assert!(own.radians() <= std::f64::consts::PI);
        }
    }

    proptest! {
        #[test]
        fn direction_delta_roundtrips_through_forward_kinematics(
            b1 in -PI..PI, b2 in -PI..PI, b3 in -PI..PI,
            n1 in -PI..PI, n2 in -PI..PI, n3 in -PI..PI,
            l1 in 0.2..4.0f64, l2 in 0.2..4.0f64, l3 in 0.2..4.0f64,
        ) {
            let base = Vec2::new(0.3, -0.8);
            let mk = |a1: f64, a2: f64, a3: f64| {
                forward_kinematics(
                    base,
                    [Angle::from_radians(a1), Angle::from_radians(a2), Angle::from_radians(a3)],
                    [l1, l2, l3],
                )
            };
            let (q2o, q3o, co) = mk(b1, b2, b3);
            let f = FingerChain::from_points(0, base, q2o, q3o, co).unwrap();
            let (q2n, q3n, cn) = mk(n1, n2, n3);
            let deltas = recover_all(&f, q2n, q3n, cn, AngleRecovery::DirectionDelta).unwrap();
            let initial = initial_joint_coordinates(&f).unwrap();
            let composed = [
                initial[0] + deltas.values[0],
                initial[1] + deltas.values[1],
                initial[2] + deltas.values[2],
            ];
            let (q2r, q3r, cr) = forward_kinematics(base, composed, f.lengths());
            prop_assert!(distance(q2r, q2n) <= 1e-9);
            prop_assert!(distance(q3r, q3n) <= 1e-9);
            prop_assert!(distance(cr, cn) <= 1e-9);
        }

        #[test]
        fn base_angle_magnitude_agrees_across_routes(
            a_old in -PI..PI, a_new in -PI..PI, l1 in 0.2..4.0f64,
        ) {
            let base = Vec2::new(-0.2, 0.5);
            let q2o = base + l1 * Vec2::unit(Angle::from_radians(a_old));
            let q2n = base + l1 * Vec2::unit(Angle::from_radians(a_new));
            // Keep the chain valid; the distal links are irrelevant here.
            let f = FingerChain::from_points(
                0, base, q2o, q2o + Vec2::new(0.5, 0.3), q2o + Vec2::new(0.9, 0.7),
            ).unwrap();
            let loc = base_angle(&f, q2n).unwrap();
            let direct = signed_turn(q2o - base, q2n - base).unwrap();
            prop_assert!((loc.radians() - direct.radians()).abs() <= 1e-9);
        }

        #[test]
        fn subtended_angle_matches_signed_turn_on_valid_triangles(
            vx in -3.0..3.0f64, vy in -3.0..3.0f64,
            a_old in -PI..PI, r_old in 0.1..5.0f64,
            a_new in -PI..PI, link in 0.1..5.0f64,
        ) {
            let vertex = Vec2::new(vx, vy);
            let old = vertex + r_old * Vec2::unit(Angle::from_radians(a_old));
            let new = vertex + link * Vec2::unit(Angle::from_radians(a_new));
            let sub = subtended_at(vertex, old, new, link).unwrap();
            let turn = signed_turn(old - vertex, new - vertex).unwrap();
            prop_assert!((sub.radians() - turn.radians()).abs() <= 1e-9
                || (sub.radians() - turn.radians()).abs() >= 2.0 * PI - 1e-9);
        }
    }
}
