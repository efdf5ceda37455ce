//! Traces how the self-adjusting operator moves its mutation strength.
//!
//! On OneMax every incorrect bit is a zero-bit, so raising the zero-side
//! strength r0 always helps: after a burn-in the phase random walk pins r0 at
//! the top of its grid, 1 - 2*alpha. The trace below prints one line per
//! phase; watch r0 climb and then sit at 0.8.
//!
//! ```sh
//! cargo run --example strength_trace
//! ```

use asym_ea::ea::{run, MutationOperator, RunConfig};

fn main() -> asym_ea::Result<()> {
    let config = RunConfig {
        record_trace: true,
        ..RunConfig::new(3000, MutationOperator::SelfAdjustingAsymmetric, 11)
    };
    let record = run(&config)?;

    println!("{:>6} {:>6} {:>9} {:>10}", "phase", "r0", "balance", "step");
    for event in &record.trace {
        println!(
            "{:>6} {:>6.2} {:>9} {:>10}",
            event.phase, event.r0, event.balance, event.direction
        );
    }
    let top = 1.0 - 2.0 * config.alpha;
    let pinned = record
        .trace
        .iter()
        .filter(|event| event.r0 == top)
        .count();
    println!(
        "\noptimum after {} evaluations; r0 sat at {top} in {pinned} of {} phases",
        record.evaluations,
        record.trace.len()
    );
    Ok(())
}
