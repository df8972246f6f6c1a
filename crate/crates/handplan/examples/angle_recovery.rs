//! Recover joint angles for sampled configurations along two independent
//! routes and check them against forward kinematics.
//!
//! The law-of-cosines route measures each joint's turn from chord and
//! triangle relations; the direction-delta route differences the link
//! direction angles and is exact for a planar chain. The example also shows
//! why a third, naive reading — treating a joint's own displacement as a
//! chord of its link circle — is not always defined.
//!
//!     cargo run --example angle_recovery

use handplan::angles::{compare_chord_readings, initial_joint_coordinates};
use handplan::{
    build_scenario, contact_target, forward_kinematics, presets, recover_both, sample_finger,
    ContactUpdateMode, FingerChain, SamplerConfig, Vec2,
};

fn main() -> handplan::Result<()> {
    let built = build_scenario(&presets::stock_two_finger())?;
    let finger = &built.scene.fingers()[0];
    let target = contact_target(
        finger,
        built.scene.object0(),
        built.task,
        ContactUpdateMode::RigidRotation,
    )?;
    let delta = handplan::geometry::distance(target, finger.contact());
    let config = SamplerConfig {
        target_count: 3,
        seed: 3,
        ..SamplerConfig::default()
    };
    let batch = sample_finger(finger, target, delta, &config)?;

    let initial = initial_joint_coordinates(finger)?;
    for (index, solution) in batch.solutions.iter().enumerate() {
        let both = recover_both(finger, solution.q2, solution.q3, solution.contact)?;

        // Drive the initial joint coordinates by the direction-delta angles:
        // the chain must land exactly on the sampled configuration.
        let absolute = [
            initial[0] + both.direction_delta.values[0],
            initial[1] + both.direction_delta.values[1],
            initial[2] + both.direction_delta.values[2],
        ];
        let (q2, q3, contact) = forward_kinematics(finger.base(), absolute, finger.lengths());
        let replay_error = handplan::geometry::distance(q2, solution.q2)
            .max(handplan::geometry::distance(q3, solution.q3))
            .max(handplan::geometry::distance(contact, solution.contact));

        println!("sample {index}:");
        println!(
            "  law of cosines  [{:+.5}, {:+.5}, {:+.5}] rad",
            both.law_of_cosines.values[0].radians(),
            both.law_of_cosines.values[1].radians(),
            both.law_of_cosines.values[2].radians()
        );
        println!(
            "  direction delta [{:+.5}, {:+.5}, {:+.5}] rad (replay error {:.2e})",
            both.direction_delta.values[0].radians(),
            both.direction_delta.values[1].radians(),
            both.direction_delta.values[2].radians(),
            replay_error
        );
    }

    // A long proximal link can move the middle joint farther than twice the
    // middle link: the naive own-displacement chord reading then has no
    // angle at all, while the implemented readings stay defined.
    let chain = FingerChain::from_points(
        0,
        Vec2::ZERO,
        Vec2::new(2.0, 0.0),
        Vec2::new(2.5, 0.0),
        Vec2::new(2.5, 1.0),
    )?;
    let readings = compare_chord_readings(
        &chain,
        Vec2::new(-2.0, 0.0),
        Vec2::new(-2.5, 0.0),
        Vec2::new(-2.5, 1.0),
    )?;
    println!("\nmirrored extreme move on a 2 / 0.5 / 1 chain:");
    for reading in readings {
        println!(
            "  joint {}: subtended reading {:+.5} rad; own-displacement arccos arg {:.1} -> {}",
            reading.joint,
            reading.distal_chord_angle.radians(),
            reading.own_displacement_arg,
            match reading.own_displacement_angle {
                Some(a) => format!("{:+.5} rad", a.radians()),
                None => "undefined".to_owned(),
            }
        );
    }
    Ok(())
}
