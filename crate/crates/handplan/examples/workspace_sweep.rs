//! Sweep a single finger across a range of roll angles and render the
//! accepted middle-joint cloud to an SVG.
//!
//!     cargo run --example workspace_sweep

use handplan::io::{render_workspace_svg, ConfigurationRow, WorkspacePlot};
use handplan::{
    build_scenario, presets, workspace_sweep, ContactUpdateMode, MotionTask, SamplerConfig,
};

fn main() -> handplan::Result<()> {
    let spec = presets::circle_sweep();
    let built = build_scenario(&spec)?;
    let range = spec.sweep.expect("preset carries a sweep block");
    let tasks = range.tasks();

    let finger = &built.scene.fingers()[0];
    let config = SamplerConfig {
        target_count: 30,
        max_attempts: 200_000,
        ..SamplerConfig::default()
    };
    let cloud = workspace_sweep(
        finger,
        built.scene.object0(),
        &tasks,
        ContactUpdateMode::RigidRotation,
        &config,
    )?;

    println!(
        "{} accepted configurations across {} roll angles ({} attempts)",
        cloud.points.len(),
        tasks.len(),
        cloud.stats.attempts
    );
    for (index, message) in &cloud.task_errors {
        let angle = match tasks[*index] {
            MotionTask::Roll(a) => a.degrees(),
            MotionTask::Translate(_) => f64::NAN,
        };
        println!("  task {index} ({angle:+.1} deg): {message}");
    }

    let rows: Vec<ConfigurationRow> = cloud
        .points
        .into_iter()
        .map(|p| ConfigurationRow {
            sample: p.task_index,
            solution: p.solution,
        })
        .collect();
    let svg = render_workspace_svg(&WorkspacePlot {
        scene: Some(built.scene.clone()),
        profile: Some(spec.shape.profile()),
        cloud: rows,
        selected: Vec::new(),
    });

    let path = std::env::temp_dir().join("handplan_sweep.svg");
    std::fs::write(&path, svg).expect("write svg");
    println!("wrote {}", path.display());
    Ok(())
}
