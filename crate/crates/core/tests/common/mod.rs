#![allow(dead_code)]

use nalgebra::DMatrix;
use psplit::double::ProperDoubleSplitting;
use psplit::matrix_file::format_matrix;
use psplit::Matrix;

pub type Dm = DMatrix<f64>;

pub fn dm(m: &Matrix) -> Dm {
    m.as_dmatrix().clone()
}

pub fn mat(rows: &[&[f64]]) -> Matrix {
    Matrix::from_rows(rows).unwrap()
}

/// `rho(M)` from the Gelfand formula: `|M^(2^j)|^(1/2^j)` by repeated
/// normalized squaring. Shares no code with the Schur route in the library.
pub fn gelfand_radius(m: &Dm) -> f64 {
    assert!(m.is_square());
    let mut x = m.clone();
    let mut log_scale = 0.0_f64;
    let mut power = 1.0_f64;
    for _ in 0..48 {
        let norm = x.norm();
        if norm == 0.0 {
            return 0.0;
        }
        x /= norm;
        log_scale += norm.ln() / power;
        x = &x * &x;
        power *= 2.0;
    }
    let norm = x.norm();
    if norm == 0.0 {
        return 0.0;
    }
    (log_scale + norm.ln() / power).exp()
}

/// `[[G, -K], [I, 0]]` assembled by hand.
pub fn companion(g: &Dm, k: &Dm) -> Dm {
    let n = g.nrows();
    let mut w = Dm::zeros(2 * n, 2 * n);
    w.view_mut((0, 0), (n, n)).copy_from(g);
    w.view_mut((0, n), (n, n)).copy_from(&(-k));
    w.view_mut((n, 0), (n, n)).fill_with_identity();
    w
}

/// `rho(W)` of a double splitting from `P^+ R` and `P^+ S`.
pub fn gelfand_rho_w(d: &ProperDoubleSplitting) -> f64 {
    gelfand_radius(&companion(&dm(&d.p_pinv_r()), &dm(&d.p_pinv_s())))
}

/// Largest absolute entry among the four Penrose residuals.
pub fn penrose_max(a: &Dm, x: &Dm) -> f64 {
    let ax = a * x;
    let xa = x * a;
    let r = [
        (&ax * a - a).amax(),
        (&xa * x - x).amax(),
        (ax.transpose() - &ax).amax(),
        (xa.transpose() - &xa).amax(),
    ];
    r.into_iter().fold(0.0, f64::max)
}

pub fn min_entry(m: &Dm) -> f64 {
    m.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn dump_double(tag: &str, d: &ProperDoubleSplitting) -> String {
    format!(
        "{tag} A\n{}{tag} P\n{}{tag} R\n{}{tag} S\n{}",
        format_matrix(d.a()),
        format_matrix(d.p()),
        format_matrix(d.r()),
        format_matrix(d.s())
    )
}
