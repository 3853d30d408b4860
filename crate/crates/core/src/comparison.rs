//! Hypothesis and conclusion checkers for comparison theorems on pairs of
//! proper double splittings of the same matrix.
//!
//! Each checker evaluates the stated hypotheses one by one, computes
//! `rho(W1)` and `rho(W2)` directly, and reports whether the theorem predicts
//! `rho(W1) <= rho(W2) < 1` alongside whether that ordering is observed.

use std::fmt;

use serde::Serialize;

use crate::double::{companion, ProperDoubleSplitting};
use crate::error::{Error, Result};
use crate::linalg::{
    inverse, min_row_magnitude, nonneg_violation, pinv, spectral_radius, Matrix, ToleranceConfig,
    Vector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    /// `d1` regular, `d2` weak regular, `P1^+ >= P2^+`, `P1 P1^+ >= 0`.
    RegularVsWeak,
    /// `d1` weak regular, `d2` regular, `e` in `R(A)`, `P2^+` without zero rows.
    WeakVsRegular,
    /// Both weak regular, `P1^+ A >= P2^+ A`.
    WeakVsWeak,
}

impl TheoremId {
    pub const ALL: [TheoremId; 3] = [
        TheoremId::RegularVsWeak,
        TheoremId::WeakVsRegular,
        TheoremId::WeakVsWeak,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            TheoremId::RegularVsWeak => "regular-vs-weak",
            TheoremId::WeakVsRegular => "weak-vs-regular",
            TheoremId::WeakVsWeak => "weak-vs-weak",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// Which of the alternative conditions (i) `P1^+ R1 >= P2^+ R2` and
/// (ii) `P1^+ S1 >= P2^+ S2` hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    ConditionI,
    ConditionII,
    Both,
    Neither,
}

impl Branch {
    fn from_flags(i: bool, ii: bool) -> Self {
        match (i, ii) {
            (true, true) => Branch::Both,
            (true, false) => Branch::ConditionI,
            (false, true) => Branch::ConditionII,
            (false, false) => Branch::Neither,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::ConditionI => "condition_i",
            Branch::ConditionII => "condition_ii",
            Branch::Both => "both",
            Branch::Neither => "neither",
        }
    }
}

/// One row of the hypothesis table.
///
/// `residual` is the measured quantity behind the verdict: the most negative
/// entry's magnitude for entrywise inequalities, `|(I - A A^+) e|` for range
/// membership, and the smallest row magnitude for the no-zero-row test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisVerdict {
    pub label: &'static str,
    pub holds: bool,
    pub residual: f64,
}

/// Extra facts recorded when inverses replace pseudoinverses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareCorollaryNote {
    pub a_invertible: bool,
    /// `R1 >= R2`
    pub r1_geq_r2: bool,
    /// `P1^-1 >= P2^-1`, `R1 >= R2`, `R1 >= 0` and `P2^-1 >= 0` together give
    /// `P1^-1 R1 - P2^-1 R2 = (P1^-1 - P2^-1) R1 + P2^-1 (R1 - R2) >= 0`.
    pub branch_i_implied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub theorem: TheoremId,
    pub hypotheses: Vec<HypothesisVerdict>,
    pub branch_used: Branch,
    pub rho1: f64,
    pub rho2: f64,
    pub conclusion_predicted: bool,
    /// `rho1 <= rho2 + spectral_tol` and `rho2 < 1 - spectral_tol`
    pub conclusion_observed: bool,
    pub square_corollary: Option<SquareCorollaryNote>,
}

impl ComparisonReport {
    pub fn hypothesis(&self, label: &str) -> Option<&HypothesisVerdict> {
        self.hypotheses.iter().find(|h| h.label == label)
    }

    /// A predicted ordering that is not observed.
    pub fn is_counterexample(&self) -> bool {
        self.conclusion_predicted && !self.conclusion_observed
    }
}

pub fn compare_regular_vs_weak(
    d1: &ProperDoubleSplitting,
    d2: &ProperDoubleSplitting,
    cfg: &ToleranceConfig,
) -> Result<ComparisonReport> {
    compare(TheoremId::RegularVsWeak, d1, d2, cfg)
}

pub fn compare_weak_vs_regular(
    d1: &ProperDoubleSplitting,
    d2: &ProperDoubleSplitting,
    cfg: &ToleranceConfig,
) -> Result<ComparisonReport> {
    compare(TheoremId::WeakVsRegular, d1, d2, cfg)
}

pub fn compare_weak_vs_weak(
    d1: &ProperDoubleSplitting,
    d2: &ProperDoubleSplitting,
    cfg: &ToleranceConfig,
) -> Result<ComparisonReport> {
    compare(TheoremId::WeakVsWeak, d1, d2, cfg)
}

pub fn compare(
    theorem: TheoremId,
    d1: &ProperDoubleSplitting,
    d2: &ProperDoubleSplitting,
    cfg: &ToleranceConfig,
) -> Result<ComparisonReport> {
    check_same_a(d1, d2, cfg)?;
    let ops = Operands {
        a_inv: pinv(d1.a(), cfg)?,
        p1_inv: d1.p_pinv().clone(),
        p2_inv: d2.p_pinv().clone(),
    };
    evaluate(theorem, d1, d2, &ops, cfg, None)
}

/// The same checks with `A^-1`, `P1^-1`, `P2^-1` from LU in place of
/// pseudoinverses. Fails with `NotInvertible` unless `A` is square and nonsingular.
pub fn compare_square(
    theorem: TheoremId,
    d1: &ProperDoubleSplitting,
    d2: &ProperDoubleSplitting,
    cfg: &ToleranceConfig,
) -> Result<ComparisonReport> {
    check_same_a(d1, d2, cfg)?;
    let ops = Operands {
        a_inv: inverse(d1.a(), cfg)?,
        p1_inv: inverse(d1.p(), cfg)?,
        p2_inv: inverse(d2.p(), cfg)?,
    };
    let r1_geq_r2 = nonneg_violation(&(d1.r() - d2.r())) <= cfg.nonneg_slack;
    let p_order = nonneg_violation(&(&ops.p1_inv - &ops.p2_inv)) <= cfg.nonneg_slack;
    let note = SquareCorollaryNote {
        a_invertible: true,
        r1_geq_r2,
        branch_i_implied: p_order
            && r1_geq_r2
            && nonneg_violation(d1.r()) <= cfg.nonneg_slack
            && nonneg_violation(&ops.p2_inv) <= cfg.nonneg_slack,
    };
    evaluate(theorem, d1, d2, &ops, cfg, Some(note))
}

fn check_same_a(
    d1: &ProperDoubleSplitting,
    d2: &ProperDoubleSplitting,
    cfg: &ToleranceConfig,
) -> Result<()> {
    let difference = d1.a().max_abs_diff(d2.a()).unwrap_or(f64::INFINITY);
    if difference > cfg.eq_abs_tol {
        return Err(Error::DifferentA { difference });
    }
    Ok(())
}

/// Generalized inverses used throughout one evaluation.
struct Operands {
    a_inv: Matrix,
    p1_inv: Matrix,
    p2_inv: Matrix,
}

struct Table<'a> {
    rows: Vec<HypothesisVerdict>,
    cfg: &'a ToleranceConfig,
}

impl Table<'_> {
    fn push(&mut self, label: &'static str, holds: bool, residual: f64) -> bool {
        self.rows.push(HypothesisVerdict {
            label,
            holds,
            residual,
        });
        holds
    }

    fn nonneg(&mut self, label: &'static str, m: &Matrix) -> bool {
        let v = nonneg_violation(m);
        self.push(label, v <= self.cfg.nonneg_slack, v)
    }

    /// All listed matrices nonnegative; residual is the worst violation.
    fn all_nonneg(&mut self, label: &'static str, ms: &[Matrix]) -> bool {
        let v = ms.iter().map(nonneg_violation).fold(0.0, f64::max);
        self.push(label, v <= self.cfg.nonneg_slack, v)
    }
}

fn regular_parts(p_inv: &Matrix, d: &ProperDoubleSplitting) -> [Matrix; 3] {
    [p_inv.clone(), d.r().clone(), -d.s()]
}

fn weak_parts(p_inv: &Matrix, d: &ProperDoubleSplitting) -> [Matrix; 3] {
    [p_inv.clone(), p_inv * d.r(), -(p_inv * d.s())]
}

fn evaluate(
    theorem: TheoremId,
    d1: &ProperDoubleSplitting,
    d2: &ProperDoubleSplitting,
    ops: &Operands,
    cfg: &ToleranceConfig,
    square: Option<SquareCorollaryNote>,
) -> Result<ComparisonReport> {
    let a = d1.a();
    let (p1_inv, p2_inv) = (&ops.p1_inv, &ops.p2_inv);
    let g1 = p1_inv * d1.r();
    let k1 = p1_inv * d1.s();
    let g2 = p2_inv * d2.r();
    let k2 = p2_inv * d2.s();

    let mut t = Table {
        rows: Vec::new(),
        cfg,
    };
    let mut required = true;
    match theorem {
        TheoremId::RegularVsWeak => {
            required &= t.nonneg("pinv_a_nonneg", &ops.a_inv);
            required &= t.all_nonneg("d1_regular", &regular_parts(p1_inv, d1));
            required &= t.nonneg("p1_p1pinv_nonneg", &(d1.p() * p1_inv));
            required &= t.all_nonneg("d2_weak_regular", &weak_parts(p2_inv, d2));
            required &= t.nonneg("p1pinv_geq_p2pinv", &(p1_inv - p2_inv));
        }
        TheoremId::WeakVsRegular => {
            let m = a.rows();
            let e = Vector::from_element(m, 1.0);
            let off_range = (&e - (a * &ops.a_inv).mul_vec(&e)).norm();
            required &= t.push(
                "e_in_range_a",
                off_range <= cfg.eq_abs_tol * (m as f64).sqrt(),
                off_range,
            );
            required &= t.nonneg("pinv_a_nonneg", &ops.a_inv);
            required &= t.all_nonneg("d1_weak_regular", &weak_parts(p1_inv, d1));
            required &= t.all_nonneg("d2_regular", &regular_parts(p2_inv, d2));
            let min_row = min_row_magnitude(p2_inv);
            required &= t.push("p2pinv_no_zero_row", min_row > cfg.nonneg_slack, min_row);
            required &= t.nonneg("p2_p2pinv_nonneg", &(d2.p() * p2_inv));
            required &= t.nonneg("p1pinv_geq_p2pinv", &(p1_inv - p2_inv));
        }
        TheoremId::WeakVsWeak => {
            required &= t.nonneg("pinv_a_nonneg", &ops.a_inv);
            required &= t.all_nonneg("d1_weak_regular", &weak_parts(p1_inv, d1));
            required &= t.all_nonneg("d2_weak_regular", &weak_parts(p2_inv, d2));
            required &= t.nonneg("p1pinv_a_geq_p2pinv_a", &((p1_inv - p2_inv) * a));
        }
    }
    let branch_i = t.nonneg("branch_i", &(&g1 - &g2));
    let branch_ii = t.nonneg("branch_ii", &(&k1 - &k2));
    let branch_used = Branch::from_flags(branch_i, branch_ii);

    let rho1 = spectral_radius(&companion(&g1, &k1), cfg)?;
    let rho2 = spectral_radius(&companion(&g2, &k2), cfg)?;
    Ok(ComparisonReport {
        theorem,
        hypotheses: t.rows,
        branch_used,
        rho1,
        rho2,
        conclusion_predicted: required && branch_used != Branch::Neither,
        conclusion_observed: rho1 <= rho2 + cfg.spectral_tol && rho2 < 1.0 - cfg.spectral_tol,
        square_corollary: square,
    })
}
