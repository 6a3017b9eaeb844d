// SPDX-License-Identifier: Apache-2.0

use super::{FockSpace, DEFAULT_MEMORY_BUDGET};
use crate::error::{Error, Result};

/// Largest single-mode cutoff the driver tries by default. Dense
/// diagonalization beyond this takes minutes on one core.
pub const DEFAULT_MAX_CUTOFF: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceOptions {
    pub start_cutoff: usize,
    /// Relative tolerance between successive doublings.
    pub tol: f64,
    pub max_cutoff: usize,
}

impl ConvergenceOptions {
    pub fn new(start_cutoff: usize, tol: f64) -> Self {
        Self {
            start_cutoff,
            tol,
            max_cutoff: DEFAULT_MAX_CUTOFF.min(FockSpace::max_cutoff(1, DEFAULT_MEMORY_BUDGET)),
        }
    }

    pub fn with_max_cutoff(mut self, max_cutoff: usize) -> Self {
        self.max_cutoff = max_cutoff;
        self
    }
}

/// A value together with the cutoff at which it was accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct Converged<T> {
    pub value: T,
    pub cutoff: usize,
    /// Relative change over the last doubling.
    pub delta: f64,
}

/// Double the cutoff from `start_cutoff` until two successive values agree to
/// `tol` (relative). `CutoffTooSmall` from `compute` counts as not yet
/// converged; every other error is returned as is.
pub fn converged<F>(compute: F, start_cutoff: usize, tol: f64) -> Result<Converged<f64>>
where
    F: FnMut(usize) -> Result<f64>,
{
    converged_with(compute, ConvergenceOptions::new(start_cutoff, tol))
}

pub fn converged_with<F>(compute: F, opts: ConvergenceOptions) -> Result<Converged<f64>>
where
    F: FnMut(usize) -> Result<f64>,
{
    drive(compute, opts, |a: &f64, b: &f64| relative_change(&[*a], &[*b]))
}

/// Series variant: the change is `max_i |a_i − b_i| / max_i |b_i|`.
pub fn converged_series<F>(compute: F, opts: ConvergenceOptions) -> Result<Converged<Vec<f64>>>
where
    F: FnMut(usize) -> Result<Vec<f64>>,
{
    drive(compute, opts, |a: &Vec<f64>, b: &Vec<f64>| relative_change(a, b))
}

fn relative_change(prev: &[f64], next: &[f64]) -> f64 {
    if prev.len() != next.len() {
        return f64::INFINITY;
    }
    let scale = next.iter().chain(prev).fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = prev.iter().zip(next).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    if diff == 0.0 {
        0.0
    } else if scale == 0.0 || !diff.is_finite() {
        f64::INFINITY
    } else {
        diff / scale
    }
}

fn drive<T, F, D>(mut compute: F, opts: ConvergenceOptions, change: D) -> Result<Converged<T>>
where
    F: FnMut(usize) -> Result<T>,
    D: Fn(&T, &T) -> f64,
{
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParams(format!("tolerance must be > 0, got {}", opts.tol)));
    }
    if opts.start_cutoff < 2 || opts.start_cutoff > opts.max_cutoff {
        return Err(Error::InvalidParams(format!(
            "start cutoff {} outside [2, {}]",
            opts.start_cutoff, opts.max_cutoff
        )));
    }
    let mut cutoff = opts.start_cutoff;
    let mut prev: Option<T> = None;
    let mut delta = f64::INFINITY;
    loop {
        match compute(cutoff) {
            Ok(value) => {
                if let Some(p) = &prev {
                    delta = change(p, &value);
                    if delta < opts.tol {
                        return Ok(Converged { value, cutoff, delta });
                    }
                }
                prev = Some(value);
            }
            Err(Error::CutoffTooSmall { .. }) => prev = None,
            Err(e) => return Err(e),
        }
        let next = cutoff * 2;
        if next > opts.max_cutoff {
            return Err(Error::NonConvergence {
                cutoff,
                delta,
                tolerance: opts.tol,
            });
        }
        cutoff = next;
    }
}
