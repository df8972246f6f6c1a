//! Roll an ellipse by 15 degrees under both contact-update conventions and
//! compare what they demand of each finger.
//!
//! The polar-offset convention re-derives a rolled contact from its polar
//! angle in the object frame; it is not a rigid rotation, and on elongated
//! profiles it can push a target clean out of reach. The rigid-rotation
//! convention always keeps targets on the object.
//!
//!     cargo run --example roll_contact_modes

use handplan::{
    build_scenario, contact_target, plan, presets, ContactUpdateMode, PlanConfig, SamplerConfig,
};

fn main() -> handplan::Result<()> {
    let built = build_scenario(&presets::ellipse_2f_roll15())?;
    let scene = &built.scene;

    for mode in [
        ContactUpdateMode::RigidRotation,
        ContactUpdateMode::PolarOffset,
    ] {
        println!("{mode:?}:");
        for finger in scene.fingers() {
            let reach = finger.total_length();
            match contact_target(finger, scene.object0(), built.task, mode) {
                Ok(target) => {
                    let distance = handplan::geometry::distance(target, finger.base());
                    println!(
                        "  finger {}: target ({:.3}, {:.3}), {:.2} cm from base (reach {:.2})",
                        finger.id(),
                        target.x,
                        target.y,
                        distance,
                        reach
                    );
                }
                Err(e) => println!("  finger {}: {e}", finger.id()),
            }
        }
    }

    let config = PlanConfig {
        sampler: SamplerConfig {
            target_count: 12,
            ..SamplerConfig::default()
        },
        k: 3,
        ..PlanConfig::default()
    };

    println!("\nplanning under each mode:");
    for mode in [
        ContactUpdateMode::RigidRotation,
        ContactUpdateMode::PolarOffset,
    ] {
        let mode_config = PlanConfig {
            contact_mode: mode,
            ..config.clone()
        };
        match plan(scene, built.task, &mode_config) {
            Ok(result) => {
                let metrics = handplan::evaluate(&result);
                println!(
                    "  {mode:?}: fitted roll {:.3} deg, relative error {:.6}",
                    metrics.fitted_rotation.degrees(),
                    metrics.relative_error
                );
            }
            Err(e) => println!("  {mode:?}: {e}"),
        }
    }
    Ok(())
}
