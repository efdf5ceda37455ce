//! Checks the inequality that justifies self-adjustment: shifting mutation
//! strength from correct one-bits to incorrect zero-bits raises the
//! improvement probability by a guaranteed amount.
//!
//! For a parent with `zeros` incorrect and `ones` correct bits, strengths
//! `(r0/zeros, r1/ones)` with r1 = 1 - r0, and an offset beta, the claim is
//!
//!   P[improve with ((r0+beta)/zeros, (r1-beta)/ones)]
//!     >= P[improve with (r0/zeros, r1/ones)] + r1 * r0 * (1 - e^(-beta)).
//!
//! `lemma1_check` evaluates both sides with the exact oracle. At beta = 0 the
//! two sides coincide, so the margin is zero; it grows with beta.
//!
//! ```sh
//! cargo run --example drift_inequality
//! ```

use asym_ea::oracle::lemma1_check;

fn main() -> asym_ea::Result<()> {
    println!(
        "{:>6} {:>6} {:>5} {:>6} {:>12} {:>12} {:>12}",
        "zeros", "ones", "r0", "beta", "lhs", "rhs", "margin"
    );
    let mut worst = f64::INFINITY;
    for zeros in [1usize, 5, 50, 500] {
        for ones in [1usize, 5, 50, 500] {
            for r0 in [0.2, 0.5, 0.8] {
                for beta in [0.0, 0.05, 0.15] {
                    let outcome = lemma1_check(zeros, ones, r0, beta)?;
                    assert!(outcome.satisfied);
                    worst = worst.min(outcome.margin);
                    println!(
                        "{zeros:>6} {ones:>6} {r0:>5.1} {beta:>6.2} {:>12.6} {:>12.6} {:>12.3e}",
                        outcome.lhs, outcome.rhs, outcome.margin
                    );
                }
            }
        }
    }
    println!("\nno violations; smallest margin {worst:.3e}");
    Ok(())
}
