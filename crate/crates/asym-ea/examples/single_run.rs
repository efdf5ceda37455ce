//! Runs each mutation operator once on a 1000-bit OneMax instance and prints
//! what happened.
//!
//! ```sh
//! cargo run --example single_run
//! ```

use asym_ea::ea::{run, MutationOperator, RunConfig, RunOutcome};

fn main() -> asym_ea::Result<()> {
    let n = 1000;
    for operator in MutationOperator::ALL {
        let record = run(&RunConfig::new(n, operator, 7))?;
        let ending = match record.outcome {
            RunOutcome::Reached(evals) => format!("optimum after {evals} evaluations"),
            RunOutcome::CapReached => format!("cap hit at fitness {}", record.final_fitness),
        };
        println!(
            "{operator:<22} {ending} ({} strict improvements)",
            record.strict_improvements
        );
    }
    Ok(())
}
