//! Proper double splittings `A = P - R + S` and their companion iteration matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_nonneg, pinv, spectral_radius, Matrix, ToleranceConfig};
use crate::splitting::{check_proper, ProperSplitting};

/// Validated quadruple with `A = P - R + S`, `R(A) = R(P)` and `N(A) = N(P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProperDoubleSplitting {
    a: Matrix,
    p: Matrix,
    r: Matrix,
    s: Matrix,
    p_pinv: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DoubleSplittingClass {
    /// `P^+ >= 0`, `R >= 0`, `-S >= 0`.
    RegularProperDouble,
    /// `P^+ >= 0`, `P^+ R >= 0`, `-P^+ S >= 0`.
    WeakRegularProperDouble,
    ProperDoubleOnly,
}

impl DoubleSplittingClass {
    pub fn is_weak_regular(self) -> bool {
        self <= DoubleSplittingClass::WeakRegularProperDouble
    }

    pub fn is_regular(self) -> bool {
        self == DoubleSplittingClass::RegularProperDouble
    }
}

pub fn make_pds(
    a: &Matrix,
    p: &Matrix,
    r: &Matrix,
    s: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<ProperDoubleSplitting> {
    for m in [p, r, s] {
        m.ensure_shape(a.shape())?;
    }
    let residual = (p - r + s).max_abs_diff(a).expect("shapes checked");
    if residual > cfg.eq_abs_tol {
        return Err(Error::DecompositionMismatch { residual });
    }
    let p_pinv = check_proper(a, p, cfg)?;
    Ok(ProperDoubleSplitting {
        a: a.clone(),
        p: p.clone(),
        r: r.clone(),
        s: s.clone(),
        p_pinv,
    })
}

impl ProperDoubleSplitting {
    pub fn new(
        a: &Matrix,
        p: &Matrix,
        r: &Matrix,
        s: &Matrix,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        make_pds(a, p, r, s, cfg)
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn r(&self) -> &Matrix {
        &self.r
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn p_pinv(&self) -> &Matrix {
        &self.p_pinv
    }

    /// `P^+ R`
    pub fn p_pinv_r(&self) -> Matrix {
        &self.p_pinv * &self.r
    }

    /// `P^+ S`
    pub fn p_pinv_s(&self) -> Matrix {
        &self.p_pinv * &self.s
    }
}

pub fn classify_double(d: &ProperDoubleSplitting, cfg: &ToleranceConfig) -> DoubleSplittingClass {
    if !is_nonneg(&d.p_pinv, cfg) {
        return DoubleSplittingClass::ProperDoubleOnly;
    }
    if is_nonneg(&d.r, cfg) && is_nonneg(&-&d.s, cfg) {
        DoubleSplittingClass::RegularProperDouble
    } else if is_nonneg(&d.p_pinv_r(), cfg) && is_nonneg(&-d.p_pinv_s(), cfg) {
        DoubleSplittingClass::WeakRegularProperDouble
    } else {
        DoubleSplittingClass::ProperDoubleOnly
    }
}

/// `[[G, -K], [I, 0]]` for top blocks `G = P^+ R` and `K = P^+ S`.
pub(crate) fn companion(g: &Matrix, k: &Matrix) -> Matrix {
    let n = g.rows();
    Matrix::block2x2(g, &-k, &Matrix::identity(n), &Matrix::zeros(n, n))
}

/// The `2n x 2n` companion matrix `W = [[P^+ R, -P^+ S], [I, 0]]`.
pub fn iteration_matrix(d: &ProperDoubleSplitting) -> Matrix {
    companion(&d.p_pinv_r(), &d.p_pinv_s())
}

/// The single splitting `U = P`, `V = R - S`; proper-ness carries over from `P`.
pub fn induced_single(d: &ProperDoubleSplitting) -> ProperSplitting {
    ProperSplitting::from_parts(d.a.clone(), d.p.clone(), &d.r - &d.s, d.p_pinv.clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub class: DoubleSplittingClass,
    /// `rho(W)`
    pub rho_w: f64,
    /// `rho(P^+ (R - S))`
    pub rho_induced: f64,
    /// `rho(W) < 1` iff `rho(P^+(R - S)) < 1`; only asserted for weak regular splittings.
    /// `None` when the class does not license the claim.
    pub biconditional_holds: Option<bool>,
    pub pinv_a_nonneg: bool,
    /// `A^+ >= 0` together with weak regularity predicts `rho(W) < 1`.
    pub convergence_predicted: bool,
    pub convergence_observed: bool,
}

pub fn check_convergence(
    d: &ProperDoubleSplitting,
    cfg: &ToleranceConfig,
) -> Result<ConvergenceReport> {
    let class = classify_double(d, cfg);
    let rho_w = spectral_radius(&iteration_matrix(d), cfg)?;
    let rho_induced = spectral_radius(&induced_single(d).iteration_matrix(), cfg)?;
    let near_one = |rho: f64| (rho - 1.0).abs() <= cfg.spectral_tol;
    let biconditional_holds = class
        .is_weak_regular()
        .then(|| (rho_w < 1.0) == (rho_induced < 1.0) || near_one(rho_w) || near_one(rho_induced));
    let pinv_a_nonneg = is_nonneg(&pinv(&d.a, cfg)?, cfg);
    Ok(ConvergenceReport {
        class,
        rho_w,
        rho_induced,
        biconditional_holds,
        pinv_a_nonneg,
        convergence_predicted: pinv_a_nonneg && class.is_weak_regular(),
        convergence_observed: rho_w < 1.0,
    })
}
