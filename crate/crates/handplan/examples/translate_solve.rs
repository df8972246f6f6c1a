//! Sample admissible joint configurations for a two-finger grasp whose
//! object is pushed 3 mm sideways.
//!
//!     cargo run --example translate_solve

use handplan::{
    build_scenario, contact_target, derive_seed, presets, sample_finger, ContactUpdateMode,
    MotionTask, SamplerConfig, Vec2,
};

fn main() -> handplan::Result<()> {
    let built = build_scenario(&presets::stock_two_finger())?;
    let task = MotionTask::Translate(Vec2::new(0.3, -0.1));

    let config = SamplerConfig {
        target_count: 8,
        seed: 7,
        ..SamplerConfig::default()
    };

    for finger in built.scene.fingers() {
        let target = contact_target(
            finger,
            built.scene.object0(),
            task,
            ContactUpdateMode::RigidRotation,
        )?;
        let delta = handplan::geometry::distance(target, finger.contact());
        let finger_config = SamplerConfig {
            seed: derive_seed(config.seed, finger.id() as u64),
            ..config.clone()
        };
        let batch = sample_finger(finger, target, delta, &finger_config)?;

        println!(
            "finger {}: contact ({:.3}, {:.3}) -> ({:.3}, {:.3})",
            finger.id(),
            finger.contact().x,
            finger.contact().y,
            target.x,
            target.y
        );
        println!(
            "  {} accepted of {} attempts (rate {:.4})",
            batch.stats.accepted,
            batch.stats.attempts,
            batch.stats.acceptance_rate()
        );
        for solution in batch.solutions.iter().take(3) {
            println!(
                "  q2 ({:+.4}, {:+.4})  q3 ({:+.4}, {:+.4})  e2 {:.4}  e3 {:.4}  cost {:.4}",
                solution.q2.x,
                solution.q2.y,
                solution.q3.x,
                solution.q3.y,
                solution.e2,
                solution.e3,
                solution.cost
            );
        }
    }
    Ok(())
}
