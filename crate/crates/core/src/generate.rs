//! Seeded random instances for property tests, sweeps and the CLI.
//!
//! Splittings are built as `A = E M F` with partition factors `E` (each row has
//! at most one nonzero) and `F` (each column has at most one nonzero), both
//! nonnegative and of full rank `k`. Their pseudoinverses and the projectors
//! `E E^+`, `F^+ F` are then nonnegative, so entrywise statements about the
//! lifted matrices reduce to statements about the `k x k` core.
//!
//! A core is a triple `(Y, G, K)` with `Y` nonnegative and nonsingular and
//! `H = G + K`. It lifts to `P = E Y^-1 F`, `R = E Y^-1 G F`,
//! `S = -E Y^-1 K F`, giving `P^+ R = F^+ G F`, `-P^+ S = F^+ K F` and
//! `A^+ = F^+ (I - H)^-1 Y E^+`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comparison::{Branch, TheoremId};
use crate::double::{make_pds, ProperDoubleSplitting};
use crate::error::Result;
use crate::linalg::{spectral_radius, Matrix, ToleranceConfig};
use crate::splitting::{make_proper_splitting, ProperSplitting};

type Dm = DMatrix<f64>;

/// A generated double splitting together with `rho(P^+ (R - S))` of its core.
#[derive(Clone, Debug)]
pub struct GeneratedDouble {
    pub splitting: ProperDoubleSplitting,
    pub rho_induced: f64,
}

/// Two splittings of one matrix built to satisfy a comparison theorem's hypotheses.
#[derive(Clone, Debug)]
pub struct GeneratedPair {
    pub theorem: TheoremId,
    /// The alternative condition the construction targets.
    pub branch: Branch,
    pub d1: ProperDoubleSplitting,
    pub d2: ProperDoubleSplitting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingKind {
    /// `P^+ >= 0`, `R >= 0`, `-S >= 0`.
    Regular,
    /// `P^+ >= 0`, `P^+ R >= 0`, `-P^+ S >= 0`, and `R` carries a component
    /// orthogonal to `R(A)` whenever one exists.
    Weak,
}

struct Factors {
    e: Dm,
    f: Dm,
}

struct Core {
    y: Dm,
    g: Dm,
    k: Dm,
}

impl Core {
    fn h(&self) -> Dm {
        &self.g + &self.k
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
    cfg: ToleranceConfig,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cfg: ToleranceConfig::default(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Random `m x n` matrix of rank `r`: `Q1 diag(sigma) Q2^T` with random
    /// orthonormal `Q1`, `Q2` and singular values log-uniform in `[0.01, 1] * scale`.
    pub fn matrix_of_rank(&mut self, m: usize, n: usize, r: usize, scale: f64) -> Matrix {
        assert!(r <= m.min(n));
        if r == 0 {
            return Matrix::zeros(m, n);
        }
        let q1 = self.signed(m, r).qr().q();
        let q2 = self.signed(n, r).qr().q();
        let sigma = nalgebra::DVector::from_fn(r, |_, _| {
            scale * 10f64.powf(self.rng.random_range(-2.0..0.0))
        });
        Matrix::wrap(q1 * Dm::from_diagonal(&sigma) * q2.transpose())
    }

    /// Matrix with entries uniform in `[-1, 1)`.
    pub fn signed_matrix(&mut self, m: usize, n: usize) -> Matrix {
        Matrix::wrap(self.signed(m, n))
    }

    /// A vector in the range of `a`.
    pub fn range_vector(&mut self, a: &Matrix) -> crate::linalg::Vector {
        let z = self.signed(a.cols(), 1);
        a.mul_vec(&z.column(0).into_owned())
    }

    /// Nonnegative `B`, `C` with `rho(B + C) = target`.
    pub fn block_pair(&mut self, n: usize, target: f64) -> (Matrix, Matrix) {
        loop {
            let b = self.nonneg(n, n, 0.6);
            let c = self.nonneg(n, n, 0.6);
            let rho = radius(&(&b + &c));
            if rho > 1e-6 {
                let s = target / rho;
                return (Matrix::wrap(b * s), Matrix::wrap(c * s));
            }
        }
    }

    /// Weak regular (or regular) proper double splitting whose induced single
    /// splitting has spectral radius `target`. With `target < 1`, `A^+ >= 0`.
    /// Near `target = 1` the core of `A` is close to singular.
    pub fn double_splitting(
        &mut self,
        max_dim: usize,
        kind: SplittingKind,
        target: f64,
    ) -> Result<GeneratedDouble> {
        let (m, n, k) = self.dims(max_dim);
        let factors = self.factors(m, n, k, false);
        let core = self.core(k, kind, target);
        let a = lift_a(&factors, &core);
        let splitting = self.lift(&factors, &core, &a, kind)?;
        Ok(GeneratedDouble {
            splitting,
            rho_induced: radius(&core.h()),
        })
    }

    /// Proper double splitting with no sign structure but `rho(W) <= 0.95`.
    pub fn general_double(&mut self, max_dim: usize) -> Result<ProperDoubleSplitting> {
        let (m, n, k) = self.dims(max_dim);
        let factors = self.factors(m, n, k, false);
        loop {
            let y = self.y_matrix(k);
            let y_inv = y.clone().try_inverse().expect("diagonally dominant");
            let mut rm = self.signed(k, k);
            let mut sm = self.signed(k, k);
            let mut c = 1.0;
            let mut rho = companion_radius(&(&y * &rm), &(&y * &sm));
            while rho > 0.95 {
                c *= 0.7;
                rho = companion_radius(&(&y * &rm * c), &(&y * &sm * c));
            }
            rm *= c;
            sm *= c;
            let core_m = &y_inv - &rm + &sm;
            if min_singular(&core_m) < 0.05 {
                continue;
            }
            let a = Matrix::wrap(&factors.e * core_m * &factors.f);
            let p = Matrix::wrap(&factors.e * &y_inv * &factors.f);
            let r = Matrix::wrap(&factors.e * rm * &factors.f);
            let s = &a - &p + &r;
            return make_pds(&a, &p, &r, &s, &self.cfg);
        }
    }

    /// Weak regular proper single splitting `U = E Y^-1 F`, `V = E Y^-1 H F`
    /// with `rho(U^+ V) = target`.
    pub fn single_splitting(&mut self, max_dim: usize, target: f64) -> Result<ProperSplitting> {
        let (m, n, k) = self.dims(max_dim);
        let factors = self.factors(m, n, k, false);
        let core = self.core(k, SplittingKind::Weak, target);
        let a = lift_a(&factors, &core);
        let u = Matrix::wrap(&factors.e * inv(&core.y) * &factors.f);
        make_proper_splitting(&a, &u, &self.cfg)
    }

    /// A pair meeting every hypothesis of `theorem`, targeting `branch`
    /// (`ConditionI` or `ConditionII`; other values pick one at random).
    pub fn comparison_pair(
        &mut self,
        theorem: TheoremId,
        branch: Branch,
        max_dim: usize,
    ) -> Result<GeneratedPair> {
        let branch = match branch {
            Branch::ConditionI | Branch::ConditionII => branch,
            _ if self.rng.random_bool(0.5) => Branch::ConditionI,
            _ => Branch::ConditionII,
        };
        let (m, n, k) = self.dims(max_dim);
        let strict = theorem == TheoremId::WeakVsRegular;
        let factors = self.factors(m, n, k, strict);
        let target = self.uniform(0.05, 0.9);
        let (c1, c2, kind1, kind2) = match theorem {
            TheoremId::RegularVsWeak => {
                let c1 = self.core(k, SplittingKind::Regular, target);
                let c2 = self.shrink_core(&c1, branch);
                (c1, c2, SplittingKind::Regular, SplittingKind::Weak)
            }
            TheoremId::WeakVsRegular => {
                let c2 = self.core(k, SplittingKind::Regular, target);
                let c1 = self.grow_core(&c2, branch);
                (c1, c2, SplittingKind::Weak, SplittingKind::Regular)
            }
            TheoremId::WeakVsWeak => {
                let c2 = self.core(k, SplittingKind::Weak, target);
                let c1 = self.grow_core(&c2, branch);
                (c1, c2, SplittingKind::Weak, SplittingKind::Weak)
            }
        };
        let base = if kind1 == SplittingKind::Regular {
            &c1
        } else {
            &c2
        };
        let a = lift_a(&factors, base);
        let d1 = self.lift(&factors, &c1, &a, kind1)?;
        let d2 = self.lift(&factors, &c2, &a, kind2)?;
        Ok(GeneratedPair {
            theorem,
            branch,
            d1,
            d2,
        })
    }

    fn dims(&mut self, max_dim: usize) -> (usize, usize, usize) {
        let m = self.rng.random_range(1..=max_dim);
        let n = self.rng.random_range(1..=max_dim);
        let k = self.rng.random_range(1..=m.min(n));
        (m, n, k)
    }

    fn signed(&mut self, m: usize, n: usize) -> Dm {
        Dm::from_fn(m, n, |_, _| self.rng.random_range(-1.0..1.0))
    }

    fn nonneg(&mut self, m: usize, n: usize, density: f64) -> Dm {
        Dm::from_fn(m, n, |_, _| {
            if self.rng.random_bool(density) {
                self.rng.random_range(0.0..1.0)
            } else {
                0.0
            }
        })
    }

    /// Partition factors. `strict` forces `E` without zero rows and constant on
    /// each column (so the all-ones vector lies in `R(E)`) and `F` without zero
    /// columns.
    fn factors(&mut self, m: usize, n: usize, k: usize, strict: bool) -> Factors {
        let col_weight: Vec<f64> = (0..k).map(|_| self.rng.random_range(0.5..2.0)).collect();
        let rows = self.assignment(m, k, strict);
        let mut e = Dm::zeros(m, k);
        for (i, slot) in rows.into_iter().enumerate() {
            if let Some(a) = slot {
                e[(i, a)] = if strict {
                    col_weight[a]
                } else {
                    self.rng.random_range(0.5..2.0)
                };
            }
        }
        let cols = self.assignment(n, k, strict);
        let mut f = Dm::zeros(k, n);
        for (j, slot) in cols.into_iter().enumerate() {
            if let Some(b) = slot {
                f[(b, j)] = self.rng.random_range(0.5..2.0);
            }
        }
        Factors { e, f }
    }

    /// Maps each of `len` slots to one of `k` groups (or none), covering every group.
    fn assignment(&mut self, len: usize, k: usize, strict: bool) -> Vec<Option<usize>> {
        let mut order: Vec<usize> = (0..len).collect();
        for i in (1..len).rev() {
            let j = self.rng.random_range(0..=i);
            order.swap(i, j);
        }
        let mut out = vec![None; len];
        for (pos, &slot) in order.iter().enumerate() {
            out[slot] = if pos < k {
                Some(pos)
            } else if strict || self.rng.random_bool(0.7) {
                Some(self.rng.random_range(0..k))
            } else {
                None
            };
        }
        out
    }

    /// Nonnegative, strictly diagonally dominant.
    fn y_matrix(&mut self, k: usize) -> Dm {
        let off = 0.8 / k as f64;
        Dm::from_fn(k, k, |i, j| {
            if i == j {
                self.rng.random_range(1.0..2.0)
            } else if self.rng.random_bool(0.4) {
                self.rng.random_range(0.0..off)
            } else {
                0.0
            }
        })
    }

    /// Core with `rho(H) = target` and `I - H` comfortably nonsingular.
    fn core(&mut self, k: usize, kind: SplittingKind, target: f64) -> Core {
        // sigma_min(I - H) <= |1 - rho(H)|, so the floor must shrink near 1.
        let floor = 0.05_f64.min(0.5 * (1.0 - target).abs());
        loop {
            let y = self.y_matrix(k);
            let (g, kk) = match kind {
                // R_m, -S_m >= 0 directly, so G = Y R_m and K = -Y S_m are too
                SplittingKind::Regular => {
                    let rm = self.nonneg(k, k, 0.7);
                    let sm = self.nonneg(k, k, 0.5);
                    (&y * rm, &y * sm)
                }
                SplittingKind::Weak => (self.nonneg(k, k, 0.7), self.nonneg(k, k, 0.5)),
            };
            let rho = radius(&(&g + &kk));
            if rho < 1e-3 {
                continue;
            }
            let s = target / rho;
            let core = Core {
                y,
                g: g * s,
                k: kk * s,
            };
            if min_singular(&(Dm::identity(k, k) - core.h())) >= floor {
                return core;
            }
        }
    }

    /// Second core for a regular-vs-weak pair: `Y2 = (I - D) Y1 <= Y1`,
    /// `H2 = D + (I - D) H1`, keeping `Y2^-1 (I - H2) = Y1^-1 (I - H1)`.
    fn shrink_core(&mut self, c1: &Core, branch: Branch) -> Core {
        let k = c1.y.nrows();
        let h1 = c1.h();
        let mut d: Vec<f64> = (0..k)
            .map(|_| {
                if self.rng.random_bool(1.0 / 3.0) {
                    0.0
                } else {
                    self.rng.random_range(0.0..0.6)
                }
            })
            .collect();
        let build = |d: &[f64]| {
            let dd = Dm::from_diagonal(&nalgebra::DVector::from_column_slice(d));
            let keep = Dm::identity(k, k) - &dd;
            (&keep * &c1.y, &dd + &keep * &h1)
        };
        let (mut y2, mut h2) = build(&d);
        if branch == Branch::ConditionII && (&h2 - &c1.k).min() < 0.0 {
            d.iter_mut().for_each(|x| *x = 0.0);
            (y2, h2) = build(&d);
        }
        let beta = self.nonneg(k, k, 1.0);
        let (g2, k2) = match branch {
            Branch::ConditionI => {
                let g2 = beta.component_mul(&c1.g.zip_map(&h2, f64::min));
                let k2 = &h2 - &g2;
                (g2, k2)
            }
            _ => {
                let k2 = &c1.k + beta.component_mul(&(&h2 - &c1.k));
                let g2 = &h2 - &k2;
                (g2, k2)
            }
        };
        Core {
            y: y2,
            g: g2.map(|x| x.max(0.0)),
            k: k2.map(|x| x.max(0.0)),
        }
        .rebalanced(&h2)
    }

    /// First core for pairs built from `d2`: `Y1 = Y2 + T M^-1 >= Y2` with
    /// `M^-1 = (I - H2)^-1 Y2 >= 0` and `H1 = H2 - T`.
    fn grow_core(&mut self, c2: &Core, branch: Branch) -> Core {
        let k = c2.y.nrows();
        let h2 = c2.h();
        let m_inv = inv(&(Dm::identity(k, k) - &h2)) * &c2.y;
        loop {
            let tau = self.nonneg(k, k, 1.0) * 0.5;
            let beta = self.nonneg(k, k, 1.0);
            let (t, g1, k1) = match branch {
                Branch::ConditionI => {
                    let t = tau.component_mul(&c2.k);
                    let g1 = &c2.g + beta.component_mul(&(&c2.k - &t));
                    let k1 = &h2 - &t - &g1;
                    (t, g1, k1)
                }
                _ => {
                    let t = tau.component_mul(&h2);
                    let h1 = &h2 - &t;
                    let k1 = beta.component_mul(&c2.k.zip_map(&h1, f64::min));
                    let g1 = &h1 - &k1;
                    (t, g1, k1)
                }
            };
            let y1 = &c2.y + &t * &m_inv;
            if min_singular(&y1) < 0.05 {
                continue;
            }
            return Core {
                y: y1,
                g: g1.map(|x| x.max(0.0)),
                k: k1.map(|x| x.max(0.0)),
            }
            .rebalanced(&(&h2 - &t));
        }
    }

    /// Lifts a core onto `a`, taking `S = A - P + R` so the pair shares `A` exactly.
    fn lift(
        &mut self,
        f: &Factors,
        core: &Core,
        a: &Matrix,
        kind: SplittingKind,
    ) -> Result<ProperDoubleSplitting> {
        let y_inv = inv(&core.y);
        let p = Matrix::wrap(&f.e * &y_inv * &f.f);
        let mut r = &f.e * &y_inv * &core.g * &f.f;
        if kind == SplittingKind::Weak {
            // Columns orthogonal to R(E) are invisible to P^+ and to A.
            let e_pinv = inv(&(f.e.transpose() * &f.e)) * f.e.transpose();
            let proj = Dm::identity(f.e.nrows(), f.e.nrows()) - &f.e * e_pinv;
            r += proj * self.signed(f.e.nrows(), f.f.ncols());
        }
        let r = Matrix::wrap(r);
        let s = a - &p + &r;
        make_pds(a, &p, &r, &s, &self.cfg)
    }
}

impl Core {
    /// Clamping roundoff negatives may move `G + K` off the intended `H`;
    /// push any drift into `K` only when it stays nonnegative.
    fn rebalanced(mut self, h: &Dm) -> Core {
        let drift = h - &self.g - &self.k;
        let k = &self.k + &drift;
        if k.min() >= 0.0 {
            self.k = k;
        }
        self
    }
}

fn lift_a(f: &Factors, core: &Core) -> Matrix {
    let k = core.y.nrows();
    let m = inv(&core.y) * (Dm::identity(k, k) - core.h());
    Matrix::wrap(&f.e * m * &f.f)
}

fn inv(m: &Dm) -> Dm {
    m.clone()
        .try_inverse()
        .expect("generated core matrices are nonsingular")
}

fn radius(m: &Dm) -> f64 {
    spectral_radius(&Matrix::wrap(m.clone()), &ToleranceConfig::default())
        .expect("square finite matrix")
}

fn companion_radius(g: &Dm, k: &Dm) -> f64 {
    let n = g.nrows();
    let w = Matrix::block2x2(
        &Matrix::wrap(g.clone()),
        &Matrix::wrap(-k),
        &Matrix::identity(n),
        &Matrix::zeros(n, n),
    );
    spectral_radius(&w, &ToleranceConfig::default()).expect("square finite matrix")
}

fn min_singular(m: &Dm) -> f64 {
    m.clone().singular_values().min()
}
