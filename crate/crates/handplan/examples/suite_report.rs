//! Replay all five bimanual benchmark scenarios a few times each and print
//! the aggregate table.
//!
//!     cargo run --release --example suite_report

use handplan::{presets, run_suite, PlanConfig};

fn main() {
    let specs = presets::bimanual_suite();
    let report = run_suite(&specs, 5, 0, &PlanConfig::default());
    print!("{}", report.render());
}
