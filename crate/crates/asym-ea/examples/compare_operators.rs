//! Compares two operators statistically on the same problem.
//!
//! On plain OneMax the static asymmetric operator beats the standard one
//! decisively. On the half-split target (half zeros, half ones) the asymmetry
//! cancels out and the two are statistically indistinguishable. The
//! Mann-Whitney U test quantifies both claims from the same run budget.
//!
//! ```sh
//! cargo run --example compare_operators
//! ```

use asym_ea::ea::{run_batch, MutationOperator, RunConfig, TargetSpec};
use asym_ea::stats::{mann_whitney_u, summarize};

fn runtimes(
    n: usize,
    operator: MutationOperator,
    target: TargetSpec,
    seed: u64,
) -> asym_ea::Result<Vec<f64>> {
    let config = RunConfig {
        target,
        ..RunConfig::new(n, operator, 0)
    };
    let records = run_batch(&config, 60, seed, 1)?;
    Ok(records.iter().map(|r| r.evaluations as f64).collect())
}

fn report(label: &str, a: &[f64], b: &[f64]) -> asym_ea::Result<()> {
    let summary_a = summarize(a)?;
    let summary_b = summarize(b)?;
    let (u, p) = mann_whitney_u(a, b)?;
    println!("{label}");
    println!("  standard:    mean {:>9.1}, std {:>8.1}", summary_a.mean, summary_a.std);
    println!("  static-asym: mean {:>9.1}, std {:>8.1}", summary_b.mean, summary_b.std);
    println!("  mann-whitney U = {u}, two-sided p = {p:.4}");
    let verdict = if p < 0.01 {
        "clearly different"
    } else {
        "statistically indistinguishable here"
    };
    println!("  verdict: {verdict}\n");
    Ok(())
}

fn main() -> asym_ea::Result<()> {
    let n = 1000;

    let standard = runtimes(n, MutationOperator::Standard, TargetSpec::AllOnes, 1)?;
    let asymmetric = runtimes(n, MutationOperator::StaticAsymmetric, TargetSpec::AllOnes, 2)?;
    report("all-ones target:", &standard, &asymmetric)?;

    let standard = runtimes(n, MutationOperator::Standard, TargetSpec::HalfSplit, 3)?;
    let asymmetric = runtimes(n, MutationOperator::StaticAsymmetric, TargetSpec::HalfSplit, 4)?;
    report("half-split target:", &standard, &asymmetric)?;
    Ok(())
}
