//! Single proper splittings `A = U - V`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_nonneg, pinv, spectral_radius, Matrix, ToleranceConfig};

/// Validated triple with `A = U - V`, `R(A) = R(U)` and `N(A) = N(U)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProperSplitting {
    a: Matrix,
    u: Matrix,
    v: Matrix,
    u_pinv: Matrix,
}

/// Strongest class a proper splitting belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SplittingClass {
    /// `U^+ >= 0` and `V >= 0`.
    ProperRegular,
    /// `U^+ >= 0` and `U^+ V >= 0`.
    ProperWeakRegular,
    ProperOnly,
}

impl SplittingClass {
    pub fn is_weak_regular(self) -> bool {
        self <= SplittingClass::ProperWeakRegular
    }
}

/// Checks that `candidate` has the range and null space of `a`, returning `candidate^+`.
///
/// Range equality is tested through `A A^+ = U U^+`, null-space equality
/// through `A^+ A = U^+ U`; both residuals are reported on failure.
pub(crate) fn check_proper(
    a: &Matrix,
    candidate: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<Matrix> {
    candidate.ensure_shape(a.shape())?;
    let a_pinv = pinv(a, cfg)?;
    let c_pinv = pinv(candidate, cfg)?;
    let range_residual = (a * &a_pinv)
        .max_abs_diff(&(candidate * &c_pinv))
        .expect("square projectors of equal size");
    let null_residual = (&a_pinv * a)
        .max_abs_diff(&(&c_pinv * candidate))
        .expect("square projectors of equal size");
    if range_residual > cfg.eq_abs_tol || null_residual > cfg.eq_abs_tol {
        return Err(Error::NotProper {
            range_residual,
            null_residual,
        });
    }
    Ok(c_pinv)
}

/// Builds `V = U - A` and validates proper-ness.
pub fn make_proper_splitting(
    a: &Matrix,
    u: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<ProperSplitting> {
    let u_pinv = check_proper(a, u, cfg)?;
    Ok(ProperSplitting {
        a: a.clone(),
        u: u.clone(),
        v: u - a,
        u_pinv,
    })
}

impl ProperSplitting {
    pub fn new(a: &Matrix, u: &Matrix, cfg: &ToleranceConfig) -> Result<Self> {
        make_proper_splitting(a, u, cfg)
    }

    /// Assembles a splitting whose proper-ness the caller has already established.
    pub(crate) fn from_parts(a: Matrix, u: Matrix, v: Matrix, u_pinv: Matrix) -> Self {
        ProperSplitting { a, u, v, u_pinv }
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn u_pinv(&self) -> &Matrix {
        &self.u_pinv
    }

    /// The iteration matrix `U^+ V`.
    pub fn iteration_matrix(&self) -> Matrix {
        &self.u_pinv * &self.v
    }
}

pub fn classify_single(s: &ProperSplitting, cfg: &ToleranceConfig) -> SplittingClass {
    if !is_nonneg(&s.u_pinv, cfg) {
        return SplittingClass::ProperOnly;
    }
    if is_nonneg(&s.v, cfg) {
        SplittingClass::ProperRegular
    } else if is_nonneg(&s.iteration_matrix(), cfg) {
        SplittingClass::ProperWeakRegular
    } else {
        SplittingClass::ProperOnly
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectorIdentityReport {
    /// max-abs of `A A^+ - U U^+`
    pub range_residual: f64,
    /// max-abs of `A^+ A - U^+ U`
    pub null_residual: f64,
    pub passed: bool,
}

/// For a proper splitting, `A A^+ = U U^+` and `A^+ A = U^+ U`.
pub fn check_projector_identities(
    s: &ProperSplitting,
    cfg: &ToleranceConfig,
) -> Result<ProjectorIdentityReport> {
    let a_pinv = pinv(&s.a, cfg)?;
    let range_residual = (&s.a * &a_pinv)
        .max_abs_diff(&(&s.u * &s.u_pinv))
        .expect("same shape");
    let null_residual = (&a_pinv * &s.a)
        .max_abs_diff(&(&s.u_pinv * &s.u))
        .expect("same shape");
    Ok(ProjectorIdentityReport {
        range_residual,
        null_residual,
        passed: range_residual <= cfg.eq_abs_tol && null_residual <= cfg.eq_abs_tol,
    })
}

/// Evaluation of the three equivalent conditions for a proper weak regular splitting:
/// `A^+ >= 0`, `A^+ V >= 0` and `rho(U^+ V) < 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemimonotoneReport {
    pub pinv_a_nonneg: bool,
    pub pinv_a_v_nonneg: bool,
    pub rho_iteration: f64,
    pub rho_below_one: bool,
    /// `rho(U^+ V)` lies within `spectral_tol` of 1, where the strict test is not decisive.
    pub on_boundary: bool,
    pub all_agree: bool,
}

pub fn check_semimonotone_equivalence(
    s: &ProperSplitting,
    cfg: &ToleranceConfig,
) -> Result<SemimonotoneReport> {
    let class = classify_single(s, cfg);
    if !class.is_weak_regular() {
        return Err(Error::HypothesisUnmet(
            "splitting is not proper weak regular (needs U^+ >= 0 and U^+ V >= 0)".into(),
        ));
    }
    let a_pinv = pinv(&s.a, cfg)?;
    let pinv_a_nonneg = is_nonneg(&a_pinv, cfg);
    let pinv_a_v_nonneg = is_nonneg(&(&a_pinv * &s.v), cfg);
    let rho = spectral_radius(&s.iteration_matrix(), cfg)?;
    let rho_below_one = rho < 1.0;
    let on_boundary = (rho - 1.0).abs() <= cfg.spectral_tol;
    let agree = pinv_a_nonneg == pinv_a_v_nonneg && pinv_a_v_nonneg == rho_below_one;
    Ok(SemimonotoneReport {
        pinv_a_nonneg,
        pinv_a_v_nonneg,
        rho_iteration: rho,
        rho_below_one,
        on_boundary,
        all_agree: agree || on_boundary,
    })
}
