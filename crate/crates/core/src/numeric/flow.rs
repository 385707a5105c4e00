//! Gradient flow of `‖μ - α‖²`.
//!
//! Explicit Euler with backtracking: a step that would raise the energy is
//! halved and retried, and the step doubles after five accepted steps in a
//! row. The recorded energy is therefore nonincreasing.

use alloc::vec::Vec;
use num_traits::{Float, Zero};

use super::moment::{energy, energy_gradient};
use crate::error::{Error, Result};
use crate::quiver::{CMatrix, Quiver, Representation, StabilityParameter, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowOptions {
    /// Budget of integrator iterations, rejected steps included.
    pub max_steps: usize,
    /// Converged once the gradient norm falls below this.
    pub tol: f64,
    /// Defaults to `1e-2 / (1 + ‖A0‖²_F)`.
    pub initial_step: Option<f64>,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            max_steps: 100_000,
            tol: 1e-9,
            initial_step: None,
        }
    }
}

/// One accepted point of the trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowSample {
    pub step: usize,
    pub time: f64,
    pub energy: f64,
    pub grad_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub final_rep: Representation,
    pub energy_trace: Vec<FlowSample>,
    pub converged: bool,
    pub iterations: usize,
}

impl FlowResult {
    pub fn final_energy(&self) -> f64 {
        self.energy_trace.last().map_or(f64::NAN, |s| s.energy)
    }
}

/// Integrates `dA/dt = -∇f(A)` from `start`. `alpha` must satisfy
/// `Σ α_j v_j = 0`.
pub fn flow(
    quiver: &Quiver,
    start: &Representation,
    alpha: &StabilityParameter,
    opts: &FlowOptions,
) -> Result<FlowResult> {
    if !alpha.pairing(start.dims()).is_zero() {
        return Err(Error::InvalidArgument(
            "flow needs a trace-free parameter; normalize it first".into(),
        ));
    }
    let alpha = alpha.to_f64();
    let mut rep = start.clone();
    let mut f = energy(quiver, &rep, &alpha)?;
    let mut grad = energy_gradient(quiver, &rep, &alpha)?;
    let mut gnorm = Float::sqrt(super::norm_squared(&grad));
    let mut step = opts
        .initial_step
        .unwrap_or_else(|| 1e-2 / (1.0 + start.norm_squared()));
    let mut time = 0.0;
    let mut clean = 0;
    let mut trace = alloc::vec![FlowSample {
        step: 0,
        time,
        energy: f,
        grad_norm: gnorm,
    }];
    let mut iterations = 0;

    while gnorm >= opts.tol && iterations < opts.max_steps {
        iterations += 1;
        let matrices: Vec<CMatrix> = rep
            .matrices()
            .iter()
            .zip(&grad)
            .map(|(a, g)| a - g * C64::from(step))
            .collect();
        let trial = rep.with_matrices(matrices);
        let trial_f = energy(quiver, &trial, &alpha)?;
        if trial_f > f {
            step *= 0.5;
            clean = 0;
            if step < f64::MIN_POSITIVE {
                break;
            }
            continue;
        }
        time += step;
        rep = trial;
        f = trial_f;
        grad = energy_gradient(quiver, &rep, &alpha)?;
        gnorm = Float::sqrt(super::norm_squared(&grad));
        trace.push(FlowSample {
            step: iterations,
            time,
            energy: f,
            grad_norm: gnorm,
        });
        clean += 1;
        if clean == 5 {
            step *= 2.0;
            clean = 0;
        }
    }

    Ok(FlowResult {
        final_rep: rep,
        energy_trace: trace,
        converged: gnorm < opts.tol,
        iterations,
    })
}
