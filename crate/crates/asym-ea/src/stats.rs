//! Sample summaries and the Mann-Whitney U test.
//!
//! The U statistic counts pairs `(a, b)` with `a > b`, plus half a count per
//! tied pair. Small samples (either side below 20) get an exact two-sided
//! p-value from the permutation distribution of the rank sum; larger samples
//! use the normal approximation with tie correction and continuity
//! correction.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Count, mean, and sample standard deviation of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleSummary {
    /// Number of observations.
    pub count: usize,
    /// Arithmetic mean.
    pub mean: f64,
    /// Sample standard deviation (Bessel-corrected; 0 for a single value).
    pub std: f64,
}

/// Summarizes a sample. Errors on empty or non-finite input.
pub fn summarize(values: &[f64]) -> Result<SampleSummary> {
    check_finite(values)?;
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let count = values.len();
    let mean = values.iter().sum::<f64>() / count as f64;
    let std = if count == 1 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (count - 1) as f64).sqrt()
    };
    Ok(SampleSummary { count, mean, std })
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample);
    }
    Ok(())
}

/// Below this size on either side the exact permutation distribution is used.
const EXACT_THRESHOLD: usize = 20;

/// Two-sided Mann-Whitney U test. Returns `(U, p)` where `U` counts pairs
/// won by `a` (ties count half) and `p` is the two-sided p-value.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    check_finite(a)?;
    check_finite(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let n_a = a.len();
    let n_b = b.len();

    // Pool the samples and assign midranks, doubled so they stay integers.
    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&v| (v, true))
        .chain(b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("values checked finite"));
    let total = pooled.len();
    let mut doubled_ranks = vec![0u64; total];
    let mut tie_sizes = Vec::new();
    let mut start = 0;
    while start < total {
        let mut end = start + 1;
        while end < total && pooled[end].0 == pooled[start].0 {
            end += 1;
        }
        // Positions start..end share the midrank (start + end + 1) / 2
        // (1-based), which doubled is exactly start + end + 1.
        for rank in doubled_ranks.iter_mut().take(end).skip(start) {
            *rank = (start + end + 1) as u64;
        }
        tie_sizes.push(end - start);
        start = end;
    }

    let doubled_rank_sum_a: u64 = pooled
        .iter()
        .zip(&doubled_ranks)
        .filter(|((_, from_a), _)| *from_a)
        .map(|(_, &r)| r)
        .sum();
    let u = doubled_rank_sum_a as f64 / 2.0 - (n_a * (n_a + 1)) as f64 / 2.0;

    let p = if n_a.min(n_b) < EXACT_THRESHOLD {
        exact_two_sided_p(&doubled_ranks, n_a, doubled_rank_sum_a)
    } else {
        approx_two_sided_p(n_a, n_b, &tie_sizes, u)
    };
    Ok((u, p))
}

/// Exact two-sided p-value: enumerates the distribution of the group-a rank
/// sum over all equally likely assignments of ranks to groups, by counting
/// subsets with a sum-indexed dynamic program over the doubled midranks.
///
/// Subset counts are tracked in f64 (they overflow u128 already for moderate
/// pools); the relative rounding error is far below any p-value threshold.
fn exact_two_sided_p(doubled_ranks: &[u64], n_a: usize, doubled_rank_sum_a: u64) -> f64 {
    let total = doubled_ranks.len();
    let n_b = total - n_a;
    // Count subsets of the smaller group's size; complementary subsets have
    // mirrored rank sums, so the smaller side fully determines the test.
    let (k, observed) = if n_a <= n_b {
        (n_a, doubled_rank_sum_a)
    } else {
        let whole: u64 = doubled_ranks.iter().sum();
        (n_b, whole - doubled_rank_sum_a)
    };

    let mut sorted = doubled_ranks.to_vec();
    sorted.sort_unstable();
    let cap: u64 = sorted.iter().rev().take(k).sum();

    // ways[j][s] = number of ways to pick j of the processed ranks with
    // doubled sum s.
    let mut ways = vec![vec![0.0f64; cap as usize + 1]; k + 1];
    ways[0][0] = 1.0;
    for &rank in doubled_ranks {
        for j in (0..k).rev() {
            for s in (0..=cap.saturating_sub(rank)).rev() {
                let add = ways[j][s as usize];
                if add > 0.0 {
                    ways[j + 1][(s + rank) as usize] += add;
                }
            }
        }
    }

    let counts = &ways[k];
    let total_ways: f64 = counts.iter().sum();
    let le: f64 = counts.iter().take(observed as usize + 1).sum();
    let ge: f64 = counts.iter().skip(observed as usize).sum();
    (2.0 * (le.min(ge)) / total_ways).min(1.0)
}

/// Normal approximation with tie correction and continuity correction.
fn approx_two_sided_p(n_a: usize, n_b: usize, tie_sizes: &[usize], u: f64) -> f64 {
    let n_a = n_a as f64;
    let n_b = n_b as f64;
    let total = n_a + n_b;
    let mean = n_a * n_b / 2.0;
    let tie_term: f64 = tie_sizes
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let variance = n_a * n_b / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if variance <= 0.0 {
        // Every pooled value is identical; the data cannot distinguish the
        // groups.
        return 1.0;
    }
    let distance = (u - mean).abs();
    let z = (distance - 0.5).max(0.0) / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("unit normal parameters are valid");
    (2.0 * (1.0 - normal.cdf(z))).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(actual: f64, expected: f64, tolerance: f64) {
        assert!(
            (actual - expected).abs() <= tolerance,
            "{actual} differs from {expected} by more than {tolerance}"
        );
    }

    #[test]
    fn summary_of_known_sample() {
        let summary = summarize(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap();
        assert_eq!(summary.count, 8);
        assert_close(summary.mean, 5.0, 1e-12);
        assert_close(summary.std, (32.0f64 / 7.0).sqrt(), 1e-12);
    }

    #[test]
    fn summary_edge_cases() {
        assert!(matches!(summarize(&[]), Err(Error::EmptySample)));
        assert!(matches!(
            summarize(&[1.0, f64::NAN]),
            Err(Error::NonFiniteSample)
        ));
        let single = summarize(&[3.5]).unwrap();
        assert_eq!(single.std, 0.0);
    }

    #[test]
    fn fully_separated_small_samples() {
        let (u, p) = mann_whitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(u, 0.0);
        assert_close(p, 0.1, 1e-12);
        // The mirror image gives the complementary U and the same p.
        let (u, p_rev) = mann_whitney_u(&[4.0, 5.0, 6.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(u, 9.0);
        assert_eq!(p, p_rev);
    }

    #[test]
    fn identical_samples_carry_no_evidence() {
        let sample = vec![5.0; 25];
        let (u, p) = mann_whitney_u(&sample, &sample).unwrap();
        assert_eq!(u, 25.0 * 25.0 / 2.0);
        assert_eq!(p, 1.0);

        let tiny = [1.0, 2.0];
        let (u, p) = mann_whitney_u(&tiny, &tiny).unwrap();
        assert_eq!(u, 2.0);
        assert_eq!(p, 1.0);
    }

    #[test]
    fn separated_large_samples_are_significant() {
        let a: Vec<f64> = (1..=25).map(f64::from).collect();
        let b: Vec<f64> = (26..=50).map(f64::from).collect();
        let (u, p) = mann_whitney_u(&a, &b).unwrap();
        assert_eq!(u, 0.0);
        assert!(p < 1e-6, "p = {p}");
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(matches!(
            mann_whitney_u(&[], &[1.0]),
            Err(Error::EmptySample)
        ));
        assert!(matches!(
            mann_whitney_u(&[1.0], &[]),
            Err(Error::EmptySample)
        ));
    }

    /// Brute-force reference: enumerate every assignment of pooled positions
    /// to group a and read the two-sided p off the U distribution.
    fn brute_force_p(a: &[f64], b: &[f64]) -> f64 {
        let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
        let total = pooled.len();
        let mut order: Vec<usize> = (0..total).collect();
        order.sort_by(|&x, &y| pooled[x].partial_cmp(&pooled[y]).unwrap());
        let mut doubled_ranks = vec![0u64; total];
        let mut start = 0;
        while start < total {
            let mut end = start + 1;
            while end < total && pooled[order[end]] == pooled[order[start]] {
                end += 1;
            }
            for &idx in &order[start..end] {
                doubled_ranks[idx] = (start + end + 1) as u64;
            }
            start = end;
        }
        let observed: u64 = doubled_ranks[..a.len()].iter().sum();

        let mut le = 0u64;
        let mut ge = 0u64;
        let mut count = 0u64;
        for mask in 0u32..1 << total {
            if mask.count_ones() as usize != a.len() {
                continue;
            }
            let sum: u64 = (0..total)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| doubled_ranks[i])
                .sum();
            count += 1;
            if sum <= observed {
                le += 1;
            }
            if sum >= observed {
                ge += 1;
            }
        }
        (2.0 * (le.min(ge) as f64) / count as f64).min(1.0)
    }

    #[test]
    fn exact_path_matches_brute_force_enumeration_with_ties() {
        let cases: [(&[f64], &[f64]); 4] = [
            (&[1.0, 2.0, 2.0], &[2.0, 3.0, 4.0, 5.0]),
            (&[7.0, 7.0, 7.0], &[7.0, 7.0, 8.0]),
            (&[1.0, 5.0, 9.0, 13.0], &[2.0, 5.0, 9.0, 14.0]),
            (&[10.0, 20.0], &[5.0, 15.0, 25.0, 35.0, 45.0]),
        ];
        for (a, b) in cases {
            let (_, p) = mann_whitney_u(a, b).unwrap();
            assert_close(p, brute_force_p(a, b), 1e-9);
        }
    }

    #[test]
    fn exact_and_approximate_paths_agree_near_the_threshold() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for case in 0..20 {
            let n_a = rng.random_range(20..=30);
            let n_b = rng.random_range(20..=30);
            // Integer-valued samples force plenty of ties.
            let a: Vec<f64> = (0..n_a).map(|_| rng.random_range(0..15) as f64).collect();
            let b: Vec<f64> = (0..n_b).map(|_| rng.random_range(3..18) as f64).collect();

            let mut pooled: Vec<(f64, bool)> = a
                .iter()
                .map(|&v| (v, true))
                .chain(b.iter().map(|&v| (v, false)))
                .collect();
            pooled.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            let total = pooled.len();
            let mut doubled_ranks = vec![0u64; total];
            let mut tie_sizes = Vec::new();
            let mut start = 0;
            while start < total {
                let mut end = start + 1;
                while end < total && pooled[end].0 == pooled[start].0 {
                    end += 1;
                }
                for rank in doubled_ranks.iter_mut().take(end).skip(start) {
                    *rank = (start + end + 1) as u64;
                }
                tie_sizes.push(end - start);
                start = end;
            }
            let sum_a: u64 = pooled
                .iter()
                .zip(&doubled_ranks)
                .filter(|((_, from_a), _)| *from_a)
                .map(|(_, &r)| r)
                .sum();
            let u = sum_a as f64 / 2.0 - (n_a * (n_a + 1)) as f64 / 2.0;

            let exact = exact_two_sided_p(&doubled_ranks, n_a, sum_a);
            let approx = approx_two_sided_p(n_a, n_b, &tie_sizes, u);
            assert!(
                (exact - approx).abs() <= 0.02,
                "case {case}: exact {exact} vs approximate {approx}"
            );
        }
    }

    #[test]
    fn u_statistics_of_both_orderings_partition_the_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let a: Vec<f64> = (0..12).map(|_| rng.random_range(0..8) as f64).collect();
            let b: Vec<f64> = (0..9).map(|_| rng.random_range(0..8) as f64).collect();
            let (u_ab, p_ab) = mann_whitney_u(&a, &b).unwrap();
            let (u_ba, p_ba) = mann_whitney_u(&b, &a).unwrap();
            assert_close(u_ab + u_ba, (a.len() * b.len()) as f64, 1e-9);
            assert_close(p_ab, p_ba, 1e-12);
        }
    }
}
