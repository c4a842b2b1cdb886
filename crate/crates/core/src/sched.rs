//! Learning-rate schedules and snapshot-capture predicates.
//!
//! Four kinds are supported:
//!
//! * `sse_cosine` — shifted cosine restarted every cycle; the rate anneals
//!   from `lr_max` toward zero and jumps back at each cycle boundary.
//! * `fge_triangular` — symmetric triangle per cycle: linear descent from
//!   `lr_max` to `lr_min` over the first half, linear ascent back over the
//!   second half.
//! * `swa_const` — `lr_max` during burn-in, then a constant `lr_min`;
//!   weights are captured at cycle (epoch) boundaries past burn-in.
//! * `step_decay` — plain staircase baseline, no capture points.
//!
//! Schedules are pure functions of `(spec, t)` where `t` counts optimizer
//! iterations from 0.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScheduleSpec {
    SseCosine {
        lr_max: f64,
        cycle_len: u64,
        total_iters: u64,
    },
    FgeTriangular {
        lr_max: f64,
        lr_min: f64,
        cycle_len: u64,
        total_iters: u64,
    },
    SwaConst {
        lr_max: f64,
        lr_min: f64,
        /// Iterations between capture points (one epoch, in practice).
        cycle_len: u64,
        burn_in: u64,
        total_iters: u64,
    },
    StepDecay {
        lr_max: f64,
        decay_factor: f64,
        decay_every: u64,
        total_iters: u64,
    },
}

impl ScheduleSpec {
    pub fn total_iters(&self) -> u64 {
        match *self {
            ScheduleSpec::SseCosine { total_iters, .. }
            | ScheduleSpec::FgeTriangular { total_iters, .. }
            | ScheduleSpec::SwaConst { total_iters, .. }
            | ScheduleSpec::StepDecay { total_iters, .. } => total_iters,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(
            self,
            ScheduleSpec::SseCosine { .. } | ScheduleSpec::FgeTriangular { .. }
        )
    }

    pub fn lr_bounds(&self) -> (f64, f64) {
        match *self {
            ScheduleSpec::SseCosine { lr_max, .. } => (0.0, lr_max),
            ScheduleSpec::FgeTriangular { lr_max, lr_min, .. }
            | ScheduleSpec::SwaConst { lr_max, lr_min, .. } => (lr_min, lr_max),
            ScheduleSpec::StepDecay { lr_max, .. } => (0.0, lr_max),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(CoreError::Config(msg));
        let (lr_min, lr_max) = self.lr_bounds();
        if !(lr_max > 0.0 && lr_max.is_finite()) {
            return err(format!("lr_max must be positive and finite, got {lr_max}"));
        }
        if !(lr_min >= 0.0 && lr_min <= lr_max) {
            return err(format!("need 0 <= lr_min <= lr_max, got lr_min {lr_min}"));
        }
        if self.total_iters() == 0 {
            return err("total_iters must be positive".into());
        }
        match *self {
            ScheduleSpec::SseCosine {
                cycle_len,
                total_iters,
                ..
            } => {
                if cycle_len == 0 {
                    return err("sse_cosine cycle_len must be positive".into());
                }
                if cycle_len > total_iters {
                    return err(format!(
                        "sse_cosine cycle_len {cycle_len} exceeds total_iters {total_iters}"
                    ));
                }
            }
            ScheduleSpec::FgeTriangular {
                cycle_len,
                total_iters,
                ..
            } => {
                if cycle_len < 2 {
                    return err("fge_triangular cycle_len must be at least 2".into());
                }
                if cycle_len > total_iters {
                    return err(format!(
                        "fge_triangular cycle_len {cycle_len} exceeds total_iters {total_iters}"
                    ));
                }
            }
            ScheduleSpec::SwaConst {
                cycle_len,
                burn_in,
                total_iters,
                ..
            } => {
                if cycle_len == 0 {
                    return err("swa_const cycle_len must be positive".into());
                }
                if burn_in >= total_iters {
                    return err(format!(
                        "swa_const burn_in {burn_in} must be below total_iters {total_iters}"
                    ));
                }
            }
            ScheduleSpec::StepDecay {
                decay_factor,
                decay_every,
                ..
            } => {
                if !(decay_factor > 0.0 && decay_factor <= 1.0) {
                    return err(format!("decay_factor must be in (0, 1], got {decay_factor}"));
                }
                if decay_every == 0 {
                    return err("decay_every must be positive".into());
                }
            }
        }
        Ok(())
    }

    fn check_in_range(&self, t: u64) -> Result<()> {
        if t >= self.total_iters() {
            return Err(CoreError::Domain(format!(
                "iteration {t} out of schedule range 0..{}",
                self.total_iters()
            )));
        }
        Ok(())
    }

    /// Learning rate at iteration `t` (0-based).
    pub fn lr_at(&self, t: u64) -> Result<f64> {
        self.check_in_range(t)?;
        Ok(match *self {
            ScheduleSpec::SseCosine {
                lr_max, cycle_len, ..
            } => {
                // Anchor values are exact: cos(pi/2) computed in floating
                // point misses zero by ~6e-17, so cycle starts and midpoints
                // are returned directly.
                let pos = t % cycle_len;
                if pos == 0 {
                    lr_max
                } else if 2 * pos == cycle_len {
                    lr_max / 2.0
                } else {
                    let frac = pos as f64 / cycle_len as f64;
                    lr_max / 2.0 * ((std::f64::consts::PI * frac).cos() + 1.0)
                }
            }
            ScheduleSpec::FgeTriangular {
                lr_max,
                lr_min,
                cycle_len,
                ..
            } => {
                let pos = t % cycle_len;
                let half = cycle_len / 2;
                if pos == 0 {
                    lr_max
                } else if pos == half {
                    lr_min
                } else if pos < half {
                    lr_max - (lr_max - lr_min) * pos as f64 / half as f64
                } else {
                    lr_min + (lr_max - lr_min) * (pos - half) as f64 / (cycle_len - half) as f64
                }
            }
            ScheduleSpec::SwaConst {
                lr_max,
                lr_min,
                burn_in,
                ..
            } => {
                if t < burn_in {
                    lr_max
                } else {
                    lr_min
                }
            }
            ScheduleSpec::StepDecay {
                lr_max,
                decay_factor,
                decay_every,
                ..
            } => lr_max * decay_factor.powi((t / decay_every) as i32),
        })
    }

    /// True when the weights at the end of iteration `t` should be captured.
    ///
    /// Cyclic kinds capture at the last iteration of each cycle; `swa_const`
    /// captures at each cycle boundary past burn-in; `step_decay` never
    /// captures (its final weights are the model).
    pub fn is_capture_point(&self, t: u64) -> Result<bool> {
        self.check_in_range(t)?;
        Ok(match *self {
            ScheduleSpec::SseCosine { cycle_len, .. }
            | ScheduleSpec::FgeTriangular { cycle_len, .. } => t % cycle_len == cycle_len - 1,
            ScheduleSpec::SwaConst {
                cycle_len, burn_in, ..
            } => t >= burn_in && (t + 1) % cycle_len == 0,
            ScheduleSpec::StepDecay { .. } => false,
        })
    }

    /// Number of capture points over the whole schedule.
    pub fn capture_count(&self) -> u64 {
        (0..self.total_iters())
            .filter(|&t| self.is_capture_point(t).unwrap_or(false))
            .count() as u64
    }
}
