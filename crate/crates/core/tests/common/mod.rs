//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};
use qsync::gaussian::{CovarianceMatrix, ModeLayout, TwoModeCm};
use qsync::model::{classical_rhs, ClassicalState, C64, SystemParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Symplectic matrix acting on modes `i`, `j` of an `n`-mode system with
/// the local 4×4 block `s` (ordering q_i, p_i, q_j, p_j).
fn embed(n: usize, i: usize, j: usize, s: &Matrix4<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::identity(2 * n, 2 * n);
    let idx = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1];
    for (a, &ra) in idx.iter().enumerate() {
        for (b, &rb) in idx.iter().enumerate() {
            m[(ra, rb)] = s[(a, b)];
        }
    }
    m
}

fn rot(t: f64) -> Matrix2<f64> {
    Matrix2::new(t.cos(), t.sin(), -t.sin(), t.cos())
}

fn block(a: Matrix2<f64>, b: Matrix2<f64>, c: Matrix2<f64>, d: Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&d);
    m
}

/// Random product of local squeezers, rotations, beam splitters and
/// two-mode squeezers on `n ≥ 2` modes.
pub fn random_symplectic(rng: &mut StdRng, n: usize, layers: usize) -> DMatrix<f64> {
    assert!(n >= 2);
    let mut s = DMatrix::identity(2 * n, 2 * n);
    for _ in 0..layers {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        let z = Matrix2::zeros();
        let op = match rng.random_range(0..4) {
            0 => {
                let r: f64 = rng.random_range(-0.8..0.8);
                let sq = Matrix2::new(r.exp(), 0.0, 0.0, (-r).exp());
                let t = rng.random_range(0.0..std::f64::consts::PI);
                block(rot(t) * sq * rot(-t), z, z, Matrix2::identity())
            }
            1 => block(rot(rng.random_range(0.0..6.3)), z, z, rot(rng.random_range(0.0..6.3))),
            2 => {
                let t: f64 = rng.random_range(0.0..std::f64::consts::PI);
                let (c, s) = (t.cos(), t.sin());
                block(Matrix2::identity() * c, Matrix2::identity() * s, -Matrix2::identity() * s, Matrix2::identity() * c)
            }
            _ => {
                let r: f64 = rng.random_range(-0.7..0.7);
                let zz = Matrix2::new(r.sinh(), 0.0, 0.0, -r.sinh());
                block(Matrix2::identity() * r.cosh(), zz, zz, Matrix2::identity() * r.cosh())
            }
        };
        s = embed(n, i, j, &op) * s;
    }
    s
}

/// `C = S·diag(ν)·Sᵀ / 2` with thermal symplectic eigenvalues `ν ≥ 1`
/// (vacuum-1 units), so the state is physical by construction.
pub fn random_physical_matrix(rng: &mut StdRng, n_modes: usize) -> DMatrix<f64> {
    let s = random_symplectic(rng, n_modes, 6 * n_modes);
    let mut d = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        let nu = 1.0 + rng.random_range(0.0..3.0) * rng.random::<f64>();
        d[(2 * k, 2 * k)] = nu;
        d[(2 * k + 1, 2 * k + 1)] = nu;
    }
    let c = &s * d * s.transpose() * 0.5;
    (&c + c.transpose()) * 0.5
}

pub fn random_pair(rng: &mut StdRng) -> TwoModeCm {
    TwoModeCm(Matrix4::from_iterator(random_physical_matrix(rng, 2).iter().copied()))
}

pub fn random_cm(rng: &mut StdRng, n_sites: usize) -> CovarianceMatrix {
    let m = random_physical_matrix(rng, 2 * n_sites);
    CovarianceMatrix::from_matrix(ModeLayout::new(n_sites).unwrap(), m).unwrap()
}

/// Symplectic eigenvalues from the spectrum of `Ω·M`, which is `±iν`.
pub fn symplectic_eigs(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows() / 2;
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    let mut nu: Vec<f64> = (omega * m)
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im > 0.0)
        .map(|z| z.im)
        .collect();
    nu.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nu
}

fn entropy(x: f64) -> f64 {
    let a = (x + 1.0) / 2.0;
    let b = (x - 1.0) / 2.0;
    a * a.ln() - if b > 0.0 { b * b.ln() } else { 0.0 }
}

/// Discord by direct minimization of the conditional entropy over
/// single-mode Gaussian measurements `R(θ)·diag(λ, 1/λ)·R(θ)ᵀ` on mode 2.
pub fn brute_force_discord(pair: &TwoModeCm) -> f64 {
    let sigma = pair.0 * 2.0;
    let a = sigma.fixed_view::<2, 2>(0, 0).into_owned();
    let b = sigma.fixed_view::<2, 2>(2, 2).into_owned();
    let c = sigma.fixed_view::<2, 2>(0, 2).into_owned();
    let cond = |theta: f64, s: f64| {
        let seed = rot(theta) * Matrix2::new(s.exp(), 0.0, 0.0, (-s).exp()) * rot(-theta);
        let inv = (b + seed).try_inverse().unwrap();
        (a - c * inv * c.transpose()).determinant()
    };
    let (mut best, mut bt, mut bs) = (f64::INFINITY, 0.0, 0.0);
    for i in 0..180 {
        for k in 0..=112 {
            let (t, s) = (i as f64 * std::f64::consts::PI / 180.0, -14.0 + k as f64 * 0.25);
            let v = cond(t, s);
            if v < best {
                (best, bt, bs) = (v, t, s);
            }
        }
    }
    let (mut dt, mut ds) = (0.02, 0.2);
    while dt > 1e-10 {
        let mut moved = false;
        for (et, es) in [(dt, 0.0), (-dt, 0.0), (0.0, ds), (0.0, -ds)] {
            let (t, s) = (bt + et, (bs + es).clamp(-14.0, 14.0));
            let v = cond(t, s);
            if v < best {
                (best, bt, bs, moved) = (v, t, s, true);
            }
        }
        if !moved {
            dt *= 0.5;
            ds *= 0.5;
        }
    }
    let full = DMatrix::from_iterator(4, 4, sigma.iter().copied());
    let nu = symplectic_eigs(&full);
    entropy(b.determinant().sqrt()) - entropy(nu[0]) - entropy(nu[1]) + entropy(best.max(1.0).sqrt())
}

pub fn random_state(rng: &mut StdRng, n: usize) -> ClassicalState {
    let mut s = ClassicalState::zeros(n);
    for j in 0..n {
        s.alpha[j] = C64::from_polar(rng.random_range(0.0..300.0), rng.random_range(0.0..6.3));
        s.beta[j] = C64::from_polar(rng.random_range(0.0..3000.0), rng.random_range(0.0..6.3));
    }
    s
}

/// Central-difference Jacobian of the classical vector field in quadrature
/// variables.
pub fn fd_jacobian(state: &ClassicalState, params: &SystemParams, h: f64) -> DMatrix<f64> {
    let x0 = state.to_quadratures();
    let n = x0.len();
    let f = |x: &DVector<f64>| classical_rhs(&ClassicalState::from_quadratures(x), params).to_quadratures();
    let mut j = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut xp = x0.clone();
        let mut xm = x0.clone();
        xp[k] += h;
        xm[k] -= h;
        j.set_column(k, &((f(&xp) - f(&xm)) / (2.0 * h)));
    }
    j
}
