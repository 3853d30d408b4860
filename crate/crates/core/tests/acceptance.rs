//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for each
//! and exits non-zero if any failed.

mod common;

use std::time::{Duration, Instant};

use common::{
    companion, dm, dump_double, gelfand_radius, gelfand_rho_w, mat, min_entry, penrose_max, Dm,
};
use psplit::comparison::{compare, Branch, TheoremId};
use psplit::double::{
    check_convergence, classify_double, iteration_matrix, make_pds, DoubleSplittingClass,
};
use psplit::generate::{Generator, SplittingKind};
use psplit::linalg::{geq, has_zero_row, is_nonneg, pinv, spectral_radius};
use psplit::solver::solve_double;
use psplit::splitting::{check_semimonotone_equivalence, classify_single};
use psplit::{Matrix, ToleranceConfig, Vector};

type Check = Result<String, String>;
/// Name, time limit in seconds, and the check itself.
type Criterion = (&'static str, Option<u64>, fn() -> Check);

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(got: &Matrix, want: &Matrix, tol: f64, what: &str) -> Result<(), String> {
    let diff = got
        .max_abs_diff(want)
        .ok_or_else(|| format!("{what}: shape {:?}", got.shape()))?;
    ensure(diff <= tol, || format!("{what}: max abs error {diff:.3e}"))
}

fn scaled(factor: f64, rows: &[&[f64]]) -> Matrix {
    mat(rows).scale(factor)
}

fn c1_converse_pair() -> Check {
    let cfg = cfg();
    let a = mat(&[&[3.0, -2.0, 0.0], &[-1.0, 1.0, 0.0]]);
    let p1 = mat(&[&[5.0, -1.0, 0.0], &[0.0, 1.0, 0.0]]);
    let r1 = mat(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
    let s1 = mat(&[&[-1.0, -1.0, 0.0], &[-1.0, 0.0, 0.0]]);
    let p2 = mat(&[&[3.0, 0.0, 0.0], &[0.0, 2.0, 0.0]]);
    let r2 = mat(&[&[0.0, 1.0, 0.0], &[0.0, 1.0, 0.0]]);
    let s2 = mat(&[&[0.0, -1.0, 0.0], &[-1.0, 0.0, 0.0]]);
    let d1 = make_pds(&a, &p1, &r1, &s1, &cfg).map_err(|e| e.to_string())?;
    let d2 = make_pds(&a, &p2, &r2, &s2, &cfg).map_err(|e| e.to_string())?;

    let fifth = 1.0 / 5.0;
    let sixth = 1.0 / 6.0;
    close(
        d1.p_pinv(),
        &scaled(fifth, &[&[1.0, 1.0], &[0.0, 5.0], &[0.0, 0.0]]),
        1e-9,
        "P1^+",
    )?;
    close(
        &d1.p_pinv_r(),
        &scaled(fifth, &[&[1.0, 0.0, 0.0], &[0.0; 3], &[0.0; 3]]),
        1e-9,
        "P1^+ R1",
    )?;
    close(
        &d1.p_pinv_s(),
        &scaled(fifth, &[&[-2.0, -1.0, 0.0], &[-5.0, 0.0, 0.0], &[0.0; 3]]),
        1e-9,
        "P1^+ S1",
    )?;
    close(
        d2.p_pinv(),
        &scaled(sixth, &[&[2.0, 0.0], &[0.0, 3.0], &[0.0, 0.0]]),
        1e-9,
        "P2^+",
    )?;
    close(
        &d2.p_pinv_r(),
        &scaled(sixth, &[&[0.0, 2.0, 0.0], &[0.0, 3.0, 0.0], &[0.0; 3]]),
        1e-9,
        "P2^+ R2",
    )?;
    close(
        &d2.p_pinv_s(),
        &scaled(sixth, &[&[0.0, -2.0, 0.0], &[-3.0, 0.0, 0.0], &[0.0; 3]]),
        1e-9,
        "P2^+ S2",
    )?;

    ensure(
        classify_double(&d1, &cfg) == DoubleSplittingClass::RegularProperDouble,
        || "d1 not regular".into(),
    )?;
    ensure(classify_double(&d2, &cfg).is_weak_regular(), || {
        "d2 not weak regular".into()
    })?;

    let rho1 = spectral_radius(&iteration_matrix(&d1), &cfg).map_err(|e| e.to_string())?;
    let rho2 = spectral_radius(&iteration_matrix(&d2), &cfg).map_err(|e| e.to_string())?;
    ensure((rho1 - 0.9079).abs() <= 5e-4, || {
        format!("rho(W1) = {rho1}")
    })?;
    ensure((rho2 - 0.9158).abs() <= 5e-4, || {
        format!("rho(W2) = {rho2}")
    })?;
    let (o1, o2) = (gelfand_rho_w(&d1), gelfand_rho_w(&d2));
    ensure(
        (o1 - rho1).abs() <= 1e-9 && (o2 - rho2).abs() <= 1e-9,
        || format!("oracle disagrees: {o1} vs {rho1}, {o2} vs {rho2}"),
    )?;

    // None of the ordering conditions hold, yet the radii are ordered.
    for (x, y, what) in [
        (d1.p_pinv().clone(), d2.p_pinv().clone(), "P1^+ >= P2^+"),
        (d1.p_pinv_r(), d2.p_pinv_r(), "P1^+ R1 >= P2^+ R2"),
        (d1.p_pinv_s(), d2.p_pinv_s(), "P1^+ S1 >= P2^+ S2"),
    ] {
        ensure(!geq(&x, &y, &cfg).unwrap(), || {
            format!("{what} unexpectedly holds")
        })?;
    }
    let report = compare(TheoremId::RegularVsWeak, &d1, &d2, &cfg).map_err(|e| e.to_string())?;
    ensure(
        report.branch_used == Branch::Neither && !report.conclusion_predicted,
        || format!("expected no prediction, got {:?}", report.branch_used),
    )?;
    ensure(report.conclusion_observed, || {
        "ordering not observed".into()
    })?;
    Ok(format!("rho(W1) = {rho1:.6}, rho(W2) = {rho2:.6}"))
}

fn c2_nested_pair() -> Check {
    let cfg = cfg();
    let a = mat(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]]);
    let p1 = a.scale(3.0);
    let r1 = mat(&[&[2.0, 0.0, 2.0], &[0.0, 1.0, 0.0]]);
    let s1 = mat(&[&[0.0, 0.0, 0.0], &[0.0, -1.0, 0.0]]);
    let p2 = a.scale(4.0);
    let r2 = mat(&[&[2.0, 0.0, 2.0], &[0.0, 0.0, 0.0]]);
    let s2 = mat(&[&[-1.0, 0.0, -1.0], &[0.0, -3.0, 0.0]]);
    let d1 = make_pds(&a, &p1, &r1, &s1, &cfg).map_err(|e| e.to_string())?;
    let d2 = make_pds(&a, &p2, &r2, &s2, &cfg).map_err(|e| e.to_string())?;

    let pattern: &[&[f64]] = &[&[1.0, 0.0], &[0.0, 2.0], &[1.0, 0.0]];
    close(&pinv(&a, &cfg).unwrap(), &scaled(0.5, pattern), 1e-9, "A^+")?;
    close(d1.p_pinv(), &scaled(1.0 / 6.0, pattern), 1e-9, "P1^+")?;
    close(d2.p_pinv(), &scaled(1.0 / 8.0, pattern), 1e-9, "P2^+")?;
    let z = [0.0; 3];
    close(
        &d1.p_pinv_r(),
        &scaled(
            1.0 / 6.0,
            &[&[2.0, 0.0, 2.0], &[0.0, 2.0, 0.0], &[2.0, 0.0, 2.0]],
        ),
        1e-9,
        "P1^+ R1",
    )?;
    close(
        &d1.p_pinv_s(),
        &scaled(1.0 / 6.0, &[&z, &[0.0, -2.0, 0.0], &z]),
        1e-9,
        "P1^+ S1",
    )?;
    close(
        &d2.p_pinv_r(),
        &scaled(1.0 / 8.0, &[&[2.0, 0.0, 2.0], &z, &[2.0, 0.0, 2.0]]),
        1e-9,
        "P2^+ R2",
    )?;
    close(
        &d2.p_pinv_s(),
        &scaled(
            1.0 / 8.0,
            &[&[-1.0, 0.0, -1.0], &[0.0, -6.0, 0.0], &[-1.0, 0.0, -1.0]],
        ),
        1e-9,
        "P2^+ S2",
    )?;

    ensure(classify_double(&d1, &cfg).is_weak_regular(), || {
        "d1 not weak regular".into()
    })?;
    ensure(
        classify_double(&d2, &cfg) == DoubleSplittingClass::RegularProperDouble,
        || "d2 not regular".into(),
    )?;

    let rho1 = spectral_radius(&iteration_matrix(&d1), &cfg).map_err(|e| e.to_string())?;
    let rho2 = spectral_radius(&iteration_matrix(&d2), &cfg).map_err(|e| e.to_string())?;
    // Characteristic polynomials of the nonzero blocks: 3 l^2 - l - 1 and 4 l^2 - 3.
    let want1 = (1.0 + 13f64.sqrt()) / 6.0;
    let want2 = 3f64.sqrt() / 2.0;
    ensure((rho1 - want1).abs() <= 1e-9, || {
        format!("rho(W1) = {rho1}, closed form {want1}")
    })?;
    ensure((rho2 - want2).abs() <= 1e-9, || {
        format!("rho(W2) = {rho2}, closed form {want2}")
    })?;
    ensure(
        (gelfand_rho_w(&d1) - rho1).abs() <= 1e-9 && (gelfand_rho_w(&d2) - rho2).abs() <= 1e-9,
        || "Gelfand oracle disagrees".into(),
    )?;
    ensure(rho2 < 1.0, || format!("rho(W2) = {rho2} >= 1"))?;
    ensure(rho1 <= rho2, || "rho(W1) > rho(W2)".into())?;

    let report = compare(TheoremId::WeakVsRegular, &d1, &d2, &cfg).map_err(|e| e.to_string())?;
    for label in [
        "e_in_range_a",
        "p2pinv_no_zero_row",
        "p2_p2pinv_nonneg",
        "p1pinv_geq_p2pinv",
        "branch_i",
    ] {
        let h = report
            .hypothesis(label)
            .ok_or_else(|| format!("missing row {label}"))?;
        ensure(h.holds, || {
            format!("{label} fails (residual {:.3e})", h.residual)
        })?;
    }
    // Independent spot checks of the same claims.
    ensure(!has_zero_row(d2.p_pinv(), &cfg), || {
        "P2^+ has a zero row".into()
    })?;
    ensure(is_nonneg(&(d2.p() * d2.p_pinv()), &cfg), || {
        "P2 P2^+ not >= 0".into()
    })?;
    ensure(
        min_entry(&(dm(&d1.p_pinv_r()) - dm(&d2.p_pinv_r()))) >= 0.0,
        || "P1^+ R1 < P2^+ R2".into(),
    )?;
    ensure(
        report.conclusion_predicted && report.conclusion_observed,
        || "table does not predict the ordering".into(),
    )?;
    Ok(format!(
        "rho(W1) = {rho1:.6}, rho(W2) = {rho2:.6} (closed forms (1 + sqrt 13)/6 and sqrt 3/2)"
    ))
}

fn c3_penrose() -> Check {
    let cfg = cfg();
    let mut gen = Generator::new(3);
    let mut worst = 0.0_f64;
    let mut worst_inv = 0.0_f64;
    for case in 0..500 {
        let m = gen.rng_range(1, 8);
        let n = gen.rng_range(1, 8);
        let r = gen.rng_range(0, m.min(n));
        let scale = 10f64.powf(gen.uniform(-1.0, 1.0));
        let a = gen.matrix_of_rank(m, n, r, scale);
        let x = pinv(&a, &cfg).map_err(|e| e.to_string())?;
        let bound = 1e-9 * (1.0 + a.norm());
        let res = penrose_max(&dm(&a), &dm(&x));
        worst = worst.max(res / bound);
        ensure(res <= bound, || {
            format!("case {case} ({m}x{n}, rank {r}): Penrose residual {res:.3e}")
        })?;
        let back = pinv(&x, &cfg).map_err(|e| e.to_string())?;
        let inv_err = back.max_abs_diff(&a).unwrap();
        worst_inv = worst_inv.max(inv_err);
        ensure(inv_err <= 1e-8, || {
            format!("case {case} ({m}x{n}, rank {r}): involution error {inv_err:.3e}")
        })?;
    }
    Ok(format!(
        "worst residual/bound {worst:.2e}, worst involution error {worst_inv:.2e}"
    ))
}

/// The 200 convergent instances shared by criteria 4 and 5.
fn convergent_instances() -> Vec<psplit::generate::GeneratedDouble> {
    let mut gen = Generator::new(4);
    (0..200)
        .map(|i| {
            let kind = if i % 2 == 0 {
                SplittingKind::Regular
            } else {
                SplittingKind::Weak
            };
            let target = gen.uniform(0.05, 0.95);
            gen.double_splitting(6, kind, target).expect("generator")
        })
        .collect()
}

fn c4_convergence() -> Check {
    let cfg = cfg();
    let mut gen = Generator::new(40);
    let mut max_rho = 0.0_f64;
    let mut max_dist = 0.0_f64;
    for (i, inst) in convergent_instances().iter().enumerate() {
        let d = &inst.splitting;
        let dump = || dump_double(&format!("instance {i}"), d);
        ensure(classify_double(d, &cfg).is_weak_regular(), || {
            format!("not weak regular\n{}", dump())
        })?;
        let a_pinv = pinv(d.a(), &cfg).map_err(|e| e.to_string())?;
        ensure(
            penrose_max(&dm(d.a()), &dm(&a_pinv)) <= 1e-9 * (1.0 + d.a().norm()),
            || "bad A^+".into(),
        )?;
        ensure(is_nonneg(&a_pinv, &cfg), || {
            format!("A^+ not >= 0\n{}", dump())
        })?;

        let rho = spectral_radius(&iteration_matrix(d), &cfg).map_err(|e| e.to_string())?;
        let oracle = gelfand_rho_w(d);
        max_rho = max_rho.max(rho.max(oracle));
        ensure(rho < 1.0 && oracle < 1.0, || {
            format!("rho(W) = {rho} (oracle {oracle})\n{}", dump())
        })?;

        let mut b = gen.range_vector(d.a());
        let scale = a_pinv.mul_vec(&b).norm();
        if scale > 0.0 {
            b /= scale;
        }
        let zero = Vector::zeros(d.a().cols());
        let trace = solve_double(d, &b, &zero, &zero, &cfg).map_err(|e| e.to_string())?;
        max_dist = max_dist.max(trace.distance_to_reference);
        ensure(
            trace.converged && trace.distance_to_reference <= 10.0 * cfg.solve_tol,
            || {
                format!(
                    "instance {i}: distance {:.3e} after {} iterations",
                    trace.distance_to_reference, trace.iterations_used
                )
            },
        )?;
    }
    Ok(format!(
        "max rho(W) {max_rho:.4}, max distance to A^+ b {max_dist:.2e}"
    ))
}

fn c5_biconditional() -> Check {
    let cfg = cfg();
    let band = 1e-8;
    let mut gen = Generator::new(5);
    let mut instances: Vec<_> = convergent_instances()
        .into_iter()
        .map(|g| g.splitting)
        .collect();
    for i in 0..50 {
        let kind = if i % 2 == 0 {
            SplittingKind::Regular
        } else {
            SplittingKind::Weak
        };
        let target = gen.uniform(1.1, 3.0);
        instances.push(
            gen.double_splitting(6, kind, target)
                .expect("generator")
                .splitting,
        );
    }
    let (mut below, mut above, mut skipped) = (0, 0, 0);
    for (i, d) in instances.iter().enumerate() {
        let report = check_convergence(d, &cfg).map_err(|e| e.to_string())?;
        let induced = dm(&d.p_pinv_r()) - dm(&d.p_pinv_s());
        let (ow, oi) = (gelfand_rho_w(d), gelfand_radius(&induced));
        for (lib, oracle, what) in [
            (report.rho_w, ow, "rho(W)"),
            (report.rho_induced, oi, "rho(P^+(R-S))"),
        ] {
            ensure((lib - oracle).abs() <= 1e-7 * (1.0 + oracle), || {
                format!("instance {i}: {what} {lib} vs oracle {oracle}")
            })?;
        }
        if (report.rho_w - 1.0).abs() <= band || (report.rho_induced - 1.0).abs() <= band {
            skipped += 1;
            continue;
        }
        let agree = (report.rho_w < 1.0) == (report.rho_induced < 1.0) && (ow < 1.0) == (oi < 1.0);
        ensure(agree, || {
            format!(
                "instance {i}: rho(W) = {}, rho(P^+(R-S)) = {}\n{}",
                report.rho_w,
                report.rho_induced,
                dump_double("instance", d)
            )
        })?;
        if report.rho_w < 1.0 {
            below += 1;
        } else {
            above += 1;
        }
    }
    ensure(above == 50, || {
        format!("expected 50 non-convergent instances, found {above}")
    })?;
    Ok(format!(
        "{below} convergent, {above} non-convergent, {skipped} inside the band"
    ))
}

fn c6_comparison() -> Check {
    let cfg = cfg();
    let mut gen = Generator::new(6);
    let mut margin = f64::INFINITY;
    for theorem in TheoremId::ALL {
        for i in 0..100 {
            let pair = gen
                .comparison_pair(theorem, Branch::Neither, 6)
                .map_err(|e| e.to_string())?;
            let report = compare(theorem, &pair.d1, &pair.d2, &cfg).map_err(|e| e.to_string())?;
            let dump = || {
                format!(
                    "{theorem} pair {i}: {report:?}\n{}{}",
                    dump_double("d1", &pair.d1),
                    dump_double("d2", &pair.d2)
                )
            };
            ensure(report.conclusion_predicted, || {
                format!("hypotheses not met\n{}", dump())
            })?;
            let (o1, o2) = (gelfand_rho_w(&pair.d1), gelfand_rho_w(&pair.d2));
            let sound = report.rho1 <= report.rho2 + 1e-8
                && report.rho2 < 1.0
                && o1 <= o2 + 1e-8
                && o2 < 1.0;
            ensure(sound && !report.is_counterexample(), || {
                format!("counterexample\n{}", dump())
            })?;
            margin = margin.min(o2 - o1);
        }
    }
    Ok(format!(
        "300 pairs, 0 counterexamples, smallest rho2 - rho1 = {margin:.2e}"
    ))
}

fn c7_block_lemma() -> Check {
    let cfg = cfg();
    let mut gen = Generator::new(7);
    let mut max_rho = 0.0_f64;
    for i in 0..200 {
        let n = gen.rng_range(1, 6);
        let target = gen.uniform(0.01, 0.999);
        let (b, c) = gen.block_pair(n, target);
        let (bd, cd) = (dm(&b), dm(&c));
        ensure(min_entry(&bd) >= 0.0 && min_entry(&cd) >= 0.0, || {
            "negative block".into()
        })?;
        let sum = gelfand_radius(&(&bd + &cd));
        ensure(sum < 1.0, || format!("case {i}: rho(B + C) = {sum}"))?;
        let block = Matrix::from_dmatrix(companion(&bd, &(-cd))).unwrap();
        let rho = spectral_radius(&block, &cfg).map_err(|e| e.to_string())?;
        let oracle = gelfand_radius(&dm(&block));
        max_rho = max_rho.max(rho.max(oracle));
        ensure(rho < 1.0 + 1e-8 && oracle < 1.0 + 1e-8, || {
            format!("case {i}: rho = {rho} (oracle {oracle})\nB\n{b:?}\nC\n{c:?}")
        })?;
    }
    Ok(format!("max rho([[B, C], [I, 0]]) = {max_rho:.6}"))
}

fn c8_companion() -> Check {
    let mut cfg = cfg();
    cfg.solve_tol = 0.0;
    cfg.max_iter = 100;
    let mut gen = Generator::new(8);
    let mut worst = 0.0_f64;
    for i in 0..50 {
        let d = gen.general_double(6).map_err(|e| e.to_string())?;
        let (m, n) = d.a().shape();
        let b = Vector::from_fn(m, |_, _| gen.uniform(-1.0, 1.0));
        let x0 = Vector::from_fn(n, |_, _| gen.uniform(-1.0, 1.0));
        let x1 = Vector::from_fn(n, |_, _| gen.uniform(-1.0, 1.0));
        let trace = solve_double(&d, &b, &x0, &x1, &cfg).map_err(|e| e.to_string())?;
        // With zero tolerance the solver only stops early at an exact fixed
        // point, after which the sequence is constant.
        let stopped = trace.iterations_used < 100;
        ensure(
            !stopped || (trace.final_residual() == Some(0.0) && !trace.diverged),
            || {
                format!(
                    "case {i}: stopped after {} iterations",
                    trace.iterations_used
                )
            },
        )?;

        let w = companion(&dm(&d.p_pinv_r()), &dm(&d.p_pinv_s()));
        let mut forcing = Dm::zeros(2 * n, 1);
        forcing
            .view_mut((0, 0), (n, 1))
            .copy_from(&(dm(d.p_pinv()) * &b));
        let mut x = Dm::zeros(2 * n, 1);
        x.view_mut((0, 0), (n, 1)).copy_from(&x1);
        x.view_mut((n, 0), (n, 1)).copy_from(&x0);
        for k in 0..100 {
            x = &w * &x + &forcing;
            let got = trace.iterates.get(k + 2).unwrap_or(&trace.limit);
            let err = (0..n).map(|j| (got[j] - x[j]).abs()).fold(0.0, f64::max);
            worst = worst.max(err);
            ensure(err <= 1e-12, || {
                format!("case {i}, step {}: drift {err:.3e}", k + 1)
            })?;
        }
    }
    Ok(format!("max per-step drift {worst:.2e}"))
}

fn c9_three_way() -> Check {
    let cfg = cfg();
    let mut gen = Generator::new(9);
    let (mut mono, mut non_mono) = (0, 0);
    for i in 0..100 {
        let target = if i % 2 == 0 {
            gen.uniform(0.2, 0.9)
        } else {
            gen.uniform(1.2, 3.0)
        };
        let s = gen.single_splitting(6, target).map_err(|e| e.to_string())?;
        ensure(classify_single(&s, &cfg).is_weak_regular(), || {
            format!("case {i}: not weak regular")
        })?;
        let report = check_semimonotone_equivalence(&s, &cfg).map_err(|e| e.to_string())?;
        let oracle_below = gelfand_radius(&dm(&s.iteration_matrix())) < 1.0;
        let agree = report.pinv_a_nonneg == report.pinv_a_v_nonneg
            && report.pinv_a_v_nonneg == report.rho_below_one
            && report.rho_below_one == oracle_below
            && oracle_below == (target < 1.0);
        ensure(agree, || {
            format!(
                "case {i} (target {target}): {report:?}\nA\n{:?}\nU\n{:?}",
                s.a(),
                s.u()
            )
        })?;
        if report.pinv_a_nonneg {
            mono += 1;
        } else {
            non_mono += 1;
        }
    }
    ensure(mono > 0 && non_mono > 0, || {
        "sample does not span both cases".into()
    })?;
    Ok(format!(
        "{mono} semi-monotone, {non_mono} not semi-monotone, all agree"
    ))
}

trait RangeExt {
    fn rng_range(&mut self, lo: usize, hi: usize) -> usize;
}

impl RangeExt for Generator {
    fn rng_range(&mut self, lo: usize, hi: usize) -> usize {
        use rand::Rng;
        self.rng().random_range(lo..=hi)
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("converse pair regression", Some(1), c1_converse_pair),
        ("nested pair regression", Some(1), c2_nested_pair),
        ("Penrose suite (500 matrices)", Some(10), c3_penrose),
        (
            "convergence theorem (200 splittings)",
            Some(60),
            c4_convergence,
        ),
        ("biconditional (250 splittings)", None, c5_biconditional),
        (
            "comparison soundness (3 x 100 pairs)",
            Some(120),
            c6_comparison,
        ),
        ("block lemma (200 instances)", None, c7_block_lemma),
        ("companion equivalence (50 x 100 steps)", None, c8_companion),
        ("three-way equivalence (100 splittings)", None, c9_three_way),
    ];
    let mut failed = 0;
    for (idx, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(secs) => Err(format!(
                "took {:.2} s, limit {secs} s",
                elapsed.as_secs_f64()
            )),
            (o, _) => o,
        };
        let limit = limit.map(|s| format!(", limit {s} s")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {}: {name}: {detail} [{:.2} s{limit}]",
                idx + 1,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL criterion {}: {name}: {detail} [{:.2} s{limit}]",
                    idx + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
