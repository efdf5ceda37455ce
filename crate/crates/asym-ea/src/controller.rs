//! Self-adjustment of the asymmetric mutation strengths.
//!
//! The controller maintains a pair of strengths `(r0, r1)` with `r0 + r1 = 1`,
//! where `r0` weights flips of zero-bits and `r1` flips of one-bits. Time is
//! split into phases of a fixed even length. Within a phase the controller
//! alternates between probing a slightly lower and a slightly higher `r0`
//! (odd iterations use `((r0 - alpha) / zeros, (r1 + alpha) / ones)`, even
//! ones `((r0 + alpha) / zeros, (r1 - alpha) / ones)`), and a balance counter
//! records which variant produced more strict improvements. At each phase
//! boundary `r0` moves one step of size `alpha` toward the better variant,
//! with a fair coin breaking ties, and the counter resets.
//!
//! `r0` lives on the grid `2 alpha, 3 alpha, ...` capped at `1 - 2 alpha`, so
//! every probed numerator stays within `[alpha, 1 - alpha]` and every per-bit
//! probability stays valid.

use std::fmt;

use rand::Rng;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::mutation::ProbabilityPair;

/// Direction chosen for `r0` at a phase boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrengthMove {
    /// `r0` steps down by `alpha` (clamped at `2 alpha`).
    Down,
    /// `r0` steps up by `alpha` (clamped at `1 - 2 alpha`).
    Up,
}

impl fmt::Display for StrengthMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrengthMove::Down => "down",
            StrengthMove::Up => "up",
        })
    }
}

/// State of the self-adjusting strength controller.
#[derive(Clone, Debug)]
pub struct ControllerState {
    alpha: f64,
    phase_length: u64,
    /// Iterations recorded so far; the next iteration has index `t + 1`.
    t: u64,
    /// Strict improvements on even iterations minus those on odd iterations
    /// within the current phase.
    b: i64,
    /// Grid index of the current `r0`.
    k: usize,
    /// Highest grid index; that point is clamped to exactly `1 - 2 alpha`.
    top: usize,
}

impl ControllerState {
    /// Creates a controller with `r0` started at the grid point nearest 1/2
    /// (ties toward the smaller value).
    ///
    /// `alpha` must lie strictly between 0 and 1/4 and `phase_length` must be
    /// an even integer of at least 2, so that both probe variants get equal
    /// time within each phase.
    pub fn new(alpha: f64, phase_length: u64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 0.25 {
            return Err(Error::InvalidAlpha { value: alpha });
        }
        if phase_length < 2 || phase_length % 2 != 0 {
            return Err(Error::InvalidPhaseLength {
                value: phase_length,
            });
        }
        let top = ((1.0 - 4.0 * alpha) / alpha).ceil() as usize;
        let mut state = ControllerState {
            alpha,
            phase_length,
            t: 0,
            b: 0,
            k: 0,
            top,
        };
        state.k = (0..=top)
            .min_by(|&a, &b| {
                let da = (state.grid_value(a) - 0.5).abs();
                let db = (state.grid_value(b) - 0.5).abs();
                da.partial_cmp(&db).expect("grid values are finite")
            })
            .expect("grid is non-empty");
        Ok(state)
    }

    fn grid_value(&self, k: usize) -> f64 {
        if k == self.top {
            1.0 - 2.0 * self.alpha
        } else {
            self.alpha * (k + 2) as f64
        }
    }

    /// The adaptation rate.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The phase length.
    pub fn phase_length(&self) -> u64 {
        self.phase_length
    }

    /// Iterations recorded so far.
    pub fn iterations(&self) -> u64 {
        self.t
    }

    /// Completed phases.
    pub fn phase_index(&self) -> u64 {
        self.t / self.phase_length
    }

    /// Balance of strict improvements in the current phase: even iterations
    /// count +1, odd iterations -1.
    pub fn improvement_balance(&self) -> i64 {
        self.b
    }

    /// Current zero-bit strength.
    pub fn r0(&self) -> f64 {
        self.grid_value(self.k)
    }

    /// Current one-bit strength, exactly `1 - r0`.
    pub fn r1(&self) -> f64 {
        1.0 - self.r0()
    }

    /// All strengths the controller can represent, in increasing order.
    pub fn grid(&self) -> Vec<f64> {
        (0..=self.top).map(|k| self.grid_value(k)).collect()
    }

    /// The probe pair for the upcoming iteration, given the current parent.
    ///
    /// Odd iterations probe `((r0 - alpha) / zeros, (r1 + alpha) / ones)`,
    /// even iterations `((r0 + alpha) / zeros, (r1 - alpha) / ones)`. An empty
    /// bit class gets probability 0.
    pub fn current_pair(&self, x: &BitString) -> ProbabilityPair {
        let next_is_odd = (self.t + 1) % 2 == 1;
        let (num0, num1) = if next_is_odd {
            (self.r0() - self.alpha, self.r1() + self.alpha)
        } else {
            (self.r0() + self.alpha, self.r1() - self.alpha)
        };
        let zeros = x.count_zeros();
        let ones = x.count_ones();
        let p0 = if zeros == 0 { 0.0 } else { num0 / zeros as f64 };
        let p1 = if ones == 0 { 0.0 } else { num1 / ones as f64 };
        ProbabilityPair::new(p0, p1).expect("probe numerators stay within [alpha, 1 - alpha]")
    }

    /// Records the outcome of the iteration whose pair was just probed. A
    /// strict improvement credits the variant that produced it.
    pub fn record_outcome(&mut self, strict_improvement: bool) {
        self.t += 1;
        if strict_improvement {
            if self.t % 2 == 1 {
                self.b -= 1;
            } else {
                self.b += 1;
            }
        }
    }

    /// True when a phase just completed and the strength must be updated.
    pub fn at_phase_boundary(&self) -> bool {
        self.t > 0 && self.t % self.phase_length == 0
    }

    /// Steps `r0` at a phase boundary: toward the variant with the better
    /// balance, or a fair coin flip on a tie. Resets the balance. Errors when
    /// called anywhere other than directly after a completed phase.
    pub fn phase_boundary_update<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<StrengthMove> {
        if !self.at_phase_boundary() {
            return Err(Error::NotPhaseBoundary {
                t: self.t,
                phase_length: self.phase_length,
            });
        }
        let direction = match self.b.cmp(&0) {
            std::cmp::Ordering::Less => StrengthMove::Down,
            std::cmp::Ordering::Greater => StrengthMove::Up,
            std::cmp::Ordering::Equal => {
                if rng.random_bool(0.5) {
                    StrengthMove::Down
                } else {
                    StrengthMove::Up
                }
            }
        };
        match direction {
            StrengthMove::Down => self.k = self.k.saturating_sub(1),
            StrengthMove::Up => self.k = (self.k + 1).min(self.top),
        }
        self.b = 0;
        Ok(direction)
    }
}
