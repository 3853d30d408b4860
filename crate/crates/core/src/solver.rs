//! Stationary iterations driven by proper splittings.
//!
//! Both schemes converge to the minimum-norm least-squares solution `A^+ b`
//! exactly when the spectral radius of their iteration matrix is below one.
//! Every iterate is recorded so non-convergent runs stay inspectable.
//!
//! On initial vectors: for the single scheme the classical statement requires
//! `x0` outside `N(V)` yet also claims convergence for every `x0`. Nothing is
//! enforced here; [`IterationTrace::x0_in_null_v`] reports which case applies.

use serde::Serialize;

use crate::double::ProperDoubleSplitting;
use crate::error::{Error, Result};
use crate::linalg::{pinv, Matrix, ToleranceConfig, Vector};
use crate::splitting::ProperSplitting;

/// Iterates whose step or norm exceed this are flagged as diverged.
pub const OVERFLOW_GUARD: f64 = 1e12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationTrace {
    /// Starting vectors followed by every computed iterate.
    pub iterates: Vec<Vec<f64>>,
    /// `|x[k+1] - x[k]|` for each computed iterate.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub diverged: bool,
    pub iterations_used: usize,
    pub limit: Vec<f64>,
    /// `A^+ b`
    pub reference_solution: Vec<f64>,
    pub distance_to_reference: f64,
    /// Whether `x0` lies in `N(V)` (single scheme only).
    pub x0_in_null_v: Option<bool>,
}

impl IterationTrace {
    pub fn final_residual(&self) -> Option<f64> {
        self.residual_history.last().copied()
    }
}

/// `A^+ b`, the least-squares solution of minimum Euclidean norm.
pub fn min_norm_lsq(a: &Matrix, b: &Vector, cfg: &ToleranceConfig) -> Result<Vector> {
    check_len(b, a.rows())?;
    Ok(pinv(a, cfg)?.mul_vec(b))
}

fn check_len(v: &Vector, expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::ShapeMismatch {
            expected: (expected, 1),
            found: (v.len(), 1),
        });
    }
    Ok(())
}

/// Shared driver: `step` maps the last two iterates to the next one.
struct Run<'a> {
    reference: Vector,
    cfg: &'a ToleranceConfig,
}

impl Run<'_> {
    fn execute(
        &self,
        start: Vec<Vector>,
        mut step: impl FnMut(&Vector, &Vector) -> Vector,
        x0_in_null_v: Option<bool>,
    ) -> IterationTrace {
        let cfg = self.cfg;
        let ref_norm = self.reference.norm();
        // Stop only once both the step and the distance to A^+ b are small; a
        // small step alone stalls early when the spectral radius is near 1.
        let stop_distance = cfg.solve_tol * (1.0 + ref_norm);
        let converged_distance = 10.0 * cfg.solve_tol * (1.0 + ref_norm);

        let mut iterates = start;
        let mut residual_history = Vec::new();
        let mut diverged = false;
        let mut converged = false;
        while residual_history.len() < cfg.max_iter {
            let len = iterates.len();
            let next = step(&iterates[len - 1], &iterates[len - 2]);
            let residual = (&next - &iterates[len - 1]).norm();
            let distance = (&next - &self.reference).norm();
            iterates.push(next);
            residual_history.push(residual);
            if !residual.is_finite()
                || residual > OVERFLOW_GUARD
                || !distance.is_finite()
                || distance > OVERFLOW_GUARD
            {
                diverged = true;
                break;
            }
            if residual <= cfg.solve_tol && distance <= stop_distance {
                break;
            }
        }

        let limit = iterates.last().expect("at least one start vector").clone();
        let distance_to_reference = (&limit - &self.reference).norm();
        if !diverged {
            let last = residual_history.last().copied().unwrap_or(f64::INFINITY);
            converged = last <= cfg.solve_tol && distance_to_reference <= converged_distance;
        }
        IterationTrace {
            iterates: iterates.iter().map(|v| v.as_slice().to_vec()).collect(),
            iterations_used: residual_history.len(),
            residual_history,
            converged,
            diverged,
            limit: limit.as_slice().to_vec(),
            reference_solution: self.reference.as_slice().to_vec(),
            distance_to_reference,
            x0_in_null_v,
        }
    }
}

/// Two-step scheme `x[k+1] = P^+ R x[k] - P^+ S x[k-1] + P^+ b`.
pub fn solve_double(
    d: &ProperDoubleSplitting,
    b: &Vector,
    x0: &Vector,
    x1: &Vector,
    cfg: &ToleranceConfig,
) -> Result<IterationTrace> {
    let (m, n) = d.a().shape();
    check_len(b, m)?;
    check_len(x0, n)?;
    check_len(x1, n)?;
    let g = d.p_pinv_r();
    let k = d.p_pinv_s();
    let c = d.p_pinv().mul_vec(b);
    let run = Run {
        reference: min_norm_lsq(d.a(), b, cfg)?,
        cfg,
    };
    Ok(run.execute(
        vec![x0.clone(), x1.clone()],
        |cur, prev| g.mul_vec(cur) - k.mul_vec(prev) + &c,
        None,
    ))
}

/// One-step scheme `x[k+1] = U^+ V x[k] + U^+ b`.
pub fn solve_single(
    s: &ProperSplitting,
    b: &Vector,
    x0: &Vector,
    cfg: &ToleranceConfig,
) -> Result<IterationTrace> {
    let (m, n) = s.a().shape();
    check_len(b, m)?;
    check_len(x0, n)?;
    let h = s.iteration_matrix();
    let c = s.u_pinv().mul_vec(b);
    let in_null_v = s.v().mul_vec(x0).norm() <= cfg.eq_abs_tol * (1.0 + x0.norm());
    let run = Run {
        reference: min_norm_lsq(s.a(), b, cfg)?,
        cfg,
    };
    // The driver works on pairs; seed the "previous" slot with x0 as well.
    let mut trace = run.execute(
        vec![x0.clone(), x0.clone()],
        |cur, _| h.mul_vec(cur) + &c,
        Some(in_null_v),
    );
    trace.iterates.remove(0);
    Ok(trace)
}
