//! Full pipeline on a benchmark scenario: sample every finger, allocate
//! minimum-norm effort weights, cluster the per-sample weight vectors into
//! candidate strategies, and evaluate the selected one.
//!
//!     cargo run --example weight_clustering

use handplan::{build_scenario, evaluate, plan, presets, PlanConfig, SamplerConfig};

fn main() -> handplan::Result<()> {
    let built = build_scenario(&presets::ellipse_b2f())?;
    let config = PlanConfig {
        sampler: SamplerConfig {
            target_count: 40,
            seed: 11,
            ..SamplerConfig::default()
        },
        k: 4,
        ..PlanConfig::default()
    };
    let result = plan(&built.scene, built.task, &config)?;

    println!("weights (gamma_i = gamma * M * f_i / sum f_j^2):");
    for (i, (gamma, cost)) in result
        .weights
        .gammas
        .iter()
        .zip(&result.weights.costs)
        .enumerate()
    {
        println!("  finger {i}: gamma_i {gamma:.6}  effort f_i {cost:.6}");
    }
    println!(
        "  magnitude M {:.6}, allocation residual {:.3e}",
        result.weights.magnitude,
        result.weights.residual()
    );

    match &result.clusters {
        None => println!("too few distinct samples to cluster"),
        Some(model) => {
            println!(
                "\n{} clusters over {}-dimensional weight vectors (inertia {:.6}, {} iterations):",
                model.k, model.dim, model.inertia, model.iterations
            );
            for (index, population) in model.population().iter().enumerate() {
                println!("  cluster {index}: {population} samples");
            }
        }
    }

    if let Some(winner) = result.selected.cluster {
        println!("selected cluster {winner}");
    }
    for (finger, sample) in result.selected.per_finger.iter().enumerate() {
        let cost = result.fingers[finger].solutions[*sample].cost;
        println!("  finger {finger}: sample {sample} (cost {cost:.4})");
    }

    let metrics = evaluate(&result);
    println!(
        "\ncommanded roll 12 deg -> fitted {:.4} deg, relative error {:.2e}, success: {}",
        metrics.fitted_rotation.degrees(),
        metrics.relative_error,
        metrics.success
    );
    Ok(())
}
