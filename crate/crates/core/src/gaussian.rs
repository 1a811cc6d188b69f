//! Covariance-matrix algebra for multimode Gaussian fluctuation states.
//!
//! Everything here lives in the real quadrature basis
//! `X = (q_a1, p_a1, q_b1, p_b1, ..., q_aN, p_aN, q_bN, p_bN)` with
//! `q = (a + a†)/√2`, `p = (a − a†)/(i√2)` and `[q, p] = i`, so the vacuum
//! variance of every quadrature is 1/2. Each site contributes an optical
//! mode `a` followed by a mechanical mode `b`.

use std::fmt;

use nalgebra::{
    Complex, DMatrix, Dim, Matrix, Matrix2, Matrix4, StorageMut, SymmetricEigen,
};

use crate::error::{Error, Result};

/// Absolute tolerance on the smallest eigenvalue of `C + iΩ/2`.
pub const PHYSICALITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModeKind {
    Optical,
    Mechanical,
}

/// One bosonic mode of the register: the optical or mechanical mode of a site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModeId {
    pub site: usize,
    pub kind: ModeKind,
}

impl ModeId {
    pub const fn optical(site: usize) -> Self {
        ModeId {
            site,
            kind: ModeKind::Optical,
        }
    }

    pub const fn mechanical(site: usize) -> Self {
        ModeId {
            site,
            kind: ModeKind::Mechanical,
        }
    }

    /// Row of the `q` quadrature; `p` sits right after it.
    pub const fn q_index(self) -> usize {
        4 * self.site
            + match self.kind {
                ModeKind::Optical => 0,
                ModeKind::Mechanical => 2,
            }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            ModeKind::Optical => 'a',
            ModeKind::Mechanical => 'b',
        };
        write!(f, "{c}{}", self.site)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeLayout {
    n_sites: usize,
}

impl ModeLayout {
    pub fn new(n_sites: usize) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidParams("a layout needs at least one site".into()));
        }
        Ok(ModeLayout { n_sites })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Matrix dimension, `4 · n_sites`.
    pub fn dim(&self) -> usize {
        4 * self.n_sites
    }

    pub fn contains(&self, mode: ModeId) -> bool {
        mode.site < self.n_sites
    }

    fn check(&self, mode: ModeId) -> Result<()> {
        if self.contains(mode) {
            Ok(())
        } else {
            Err(Error::ModeOutOfRange {
                mode,
                n_sites: self.n_sites,
            })
        }
    }
}

/// Symmetrized second moments of the quadrature fluctuations.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    layout: ModeLayout,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wraps a matrix, symmetrizing away round-off. Asymmetry beyond
    /// `1e-9` relative to the largest entry is rejected.
    pub fn from_matrix(layout: ModeLayout, mut entries: DMatrix<f64>) -> Result<Self> {
        let n = layout.dim();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: entries.nrows().max(entries.ncols()),
            });
        }
        let scale = entries.amax().max(1.0);
        let asymmetry = (&entries - entries.transpose()).amax();
        if asymmetry > 1e-9 * scale {
            return Err(Error::Asymmetric { asymmetry });
        }
        symmetrize(&mut entries);
        Ok(CovarianceMatrix { layout, entries })
    }

    pub(crate) fn from_symmetric_unchecked(layout: ModeLayout, entries: DMatrix<f64>) -> Self {
        debug_assert_eq!(entries.nrows(), layout.dim());
        CovarianceMatrix { layout, entries }
    }

    pub fn layout(&self) -> ModeLayout {
        self.layout
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DMatrix<f64> {
        &mut self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    /// Smallest eigenvalue of the Hermitian matrix `C + iΩ/2`, computed on
    /// its real symmetric embedding `[[C, −Ω/2], [Ω/2, C]]`.
    pub fn min_physical_eigenvalue(&self) -> f64 {
        let n = self.layout.dim();
        let omega = symplectic_form(n);
        let mut embedded = DMatrix::zeros(2 * n, 2 * n);
        embedded.view_mut((0, 0), (n, n)).copy_from(&self.entries);
        embedded.view_mut((n, n), (n, n)).copy_from(&self.entries);
        embedded.view_mut((0, n), (n, n)).copy_from(&(-0.5 * &omega));
        embedded.view_mut((n, 0), (n, n)).copy_from(&(0.5 * &omega));
        SymmetricEigen::new(embedded).eigenvalues.min()
    }

    /// `true` iff `C + iΩ/2 + tol·I` admits a Cholesky factorization, i.e.
    /// the smallest eigenvalue of `C + iΩ/2` exceeds `−tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        let n = self.layout.dim();
        let h = DMatrix::from_fn(n, n, |i, j| {
            let re = self.entries[(i, j)] + if i == j { tol } else { 0.0 };
            Complex::new(re, 0.5 * omega_entry(i, j))
        });
        hermitian_cholesky_succeeds(h)
    }

    pub fn check_physical(&self, tol: f64) -> Result<()> {
        if self.is_physical(tol) {
            Ok(())
        } else {
            Err(Error::NonPhysical {
                min_eigenvalue: self.min_physical_eigenvalue(),
            })
        }
    }

    /// Covariance entry between two quadrature rows.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }
}

/// Initial/bath-matched state: vacuum optics, thermal mechanics.
pub fn vacuum_cm(layout: ModeLayout, mech_occupation: f64) -> CovarianceMatrix {
    let n = layout.dim();
    let mech = (2.0 * mech_occupation + 1.0) / 2.0;
    let diag = (0..n).map(|i| if i % 4 < 2 { 0.5 } else { mech });
    let entries = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, diag));
    CovarianceMatrix { layout, entries }
}

/// 4×4 principal submatrix on two modes, ordered `(q_i, p_i, q_j, p_j)`.
pub fn extract_pair(cm: &CovarianceMatrix, mode_i: ModeId, mode_j: ModeId) -> Result<TwoModeCm> {
    cm.layout.check(mode_i)?;
    cm.layout.check(mode_j)?;
    if mode_i == mode_j {
        return Err(Error::SameMode(mode_i));
    }
    let rows = [
        mode_i.q_index(),
        mode_i.q_index() + 1,
        mode_j.q_index(),
        mode_j.q_index() + 1,
    ];
    Ok(TwoModeCm(Matrix4::from_fn(|r, c| {
        cm.entries[(rows[r], rows[c])]
    })))
}

/// Rotates one mode in phase space: `q' = cosφ q + sinφ p`,
/// `p' = −sinφ q + cosφ p`, i.e. `a → a·e^{−iφ}`.
pub fn rotate_mode(cm: &CovarianceMatrix, mode: ModeId, phase: f64) -> Result<CovarianceMatrix> {
    cm.layout.check(mode)?;
    let mut out = cm.clone();
    rotate_quadratures(&mut out.entries, mode.q_index(), phase);
    Ok(out)
}

/// In-place `R C Rᵀ` on the quadrature pair starting at `q`.
pub(crate) fn rotate_quadratures<D, S>(m: &mut Matrix<f64, D, D, S>, q: usize, phase: f64)
where
    D: Dim,
    S: StorageMut<f64, D, D>,
{
    let (s, c) = phase.sin_cos();
    let n = m.nrows();
    let p = q + 1;
    for col in 0..n {
        let (x, y) = (m[(q, col)], m[(p, col)]);
        m[(q, col)] = c * x + s * y;
        m[(p, col)] = -s * x + c * y;
    }
    for row in 0..n {
        let (x, y) = (m[(row, q)], m[(row, p)]);
        m[(row, q)] = c * x + s * y;
        m[(row, p)] = -s * x + c * y;
    }
    let off = 0.5 * (m[(q, p)] + m[(p, q)]);
    m[(q, p)] = off;
    m[(p, q)] = off;
}

/// Two-mode reduction in the ordering `(q_1, p_1, q_2, p_2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoModeCm(pub Matrix4<f64>);

impl TwoModeCm {
    pub fn vacuum() -> Self {
        TwoModeCm(Matrix4::identity() * 0.5)
    }

    /// Uncorrelated thermal modes with occupations `n1`, `n2`.
    pub fn thermal(n1: f64, n2: f64) -> Self {
        let v1 = n1 + 0.5;
        let v2 = n2 + 0.5;
        TwoModeCm(Matrix4::from_diagonal(&nalgebra::Vector4::new(v1, v1, v2, v2)))
    }

    /// Two-mode squeezed vacuum with squeezing parameter `r`.
    pub fn two_mode_squeezed_vacuum(r: f64) -> Self {
        let ch = 0.5 * (2.0 * r).cosh();
        let sh = 0.5 * (2.0 * r).sinh();
        TwoModeCm(Matrix4::new(
            ch, 0.0, sh, 0.0, //
            0.0, ch, 0.0, -sh, //
            sh, 0.0, ch, 0.0, //
            0.0, -sh, 0.0, ch,
        ))
    }

    /// Product state of two single-mode covariance blocks.
    pub fn product(first: Matrix2<f64>, second: Matrix2<f64>) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&first);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&second);
        TwoModeCm(m)
    }

    pub fn first(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn second(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn cross(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Local rotation of mode `index` (0 or 1).
    pub fn rotate(&self, index: usize, phase: f64) -> Self {
        assert!(index < 2, "two-mode state has modes 0 and 1");
        let mut m = self.0;
        rotate_quadratures(&mut m, 2 * index, phase);
        TwoModeCm(m)
    }

    /// Exchanges the two modes.
    pub fn swapped(&self) -> Self {
        let perm = [2, 3, 0, 1];
        TwoModeCm(Matrix4::from_fn(|r, c| self.0[(perm[r], perm[c])]))
    }

    /// Partial transpose on the second mode (`p_2 → −p_2`).
    pub fn partial_transpose(&self) -> Self {
        let sign = [1.0, 1.0, 1.0, -1.0];
        TwoModeCm(Matrix4::from_fn(|r, c| sign[r] * sign[c] * self.0[(r, c)]))
    }

    /// Symplectic invariants `(det A, det B, det Cc, det C)`.
    pub fn invariants(&self) -> (f64, f64, f64, f64) {
        (
            self.first().determinant(),
            self.second().determinant(),
            self.cross().determinant(),
            self.0.determinant(),
        )
    }

    /// Symplectic spectrum without a physicality check: the singular values
    /// of the antisymmetric matrix `C^{1/2} Ω C^{1/2}`, which come in equal
    /// pairs. Negative eigenvalues of `C` are clamped to zero.
    pub(crate) fn symplectic_spectrum(&self) -> (f64, f64) {
        let eig = SymmetricEigen::new(self.0);
        let root = eig.eigenvectors
            * Matrix4::from_diagonal(&eig.eigenvalues.map(|v| v.max(0.0).sqrt()))
            * eig.eigenvectors.transpose();
        let omega = Matrix4::from_fn(omega_entry);
        let mut sv: Vec<f64> = (root * omega * root).singular_values().iter().copied().collect();
        sv.sort_by(|a, b| a.total_cmp(b));
        (0.5 * (sv[0] + sv[1]), 0.5 * (sv[2] + sv[3]))
    }

    pub fn min_physical_eigenvalue(&self) -> f64 {
        let cm = CovarianceMatrix::from_symmetric_unchecked(
            ModeLayout { n_sites: 1 },
            DMatrix::from_column_slice(4, 4, self.0.as_slice()),
        );
        cm.min_physical_eigenvalue()
    }

    /// Physicality: `C > 0` and `ν_− ≥ 1/2 − tol`.
    pub fn check_physical(&self, tol: f64) -> Result<()> {
        let (nu_minus, _) = self.symplectic_spectrum();
        if nu_minus < 0.5 - tol || self.0.determinant() <= 0.0 || self.0[(0, 0)] <= 0.0 {
            let min_eigenvalue = self.min_physical_eigenvalue();
            if min_eigenvalue < -tol {
                return Err(Error::NonPhysical { min_eigenvalue });
            }
        }
        Ok(())
    }
}

/// Symplectic eigenvalues `(ν_−, ν_+)` of a physical two-mode state.
pub fn symplectic_eigenvalues(cm: &TwoModeCm) -> Result<(f64, f64)> {
    let (nu_minus, nu_plus) = cm.symplectic_spectrum();
    if nu_minus < 0.5 - PHYSICALITY_TOL {
        return Err(Error::SubVacuumSymplectic { nu_minus });
    }
    Ok((nu_minus, nu_plus))
}

fn omega_entry(i: usize, j: usize) -> f64 {
    if i / 2 != j / 2 {
        0.0
    } else if i % 2 == 0 && j == i + 1 {
        1.0
    } else if i % 2 == 1 && j + 1 == i {
        -1.0
    } else {
        0.0
    }
}

/// Standard symplectic form with per-mode blocks `[[0, 1], [−1, 0]]`.
pub fn symplectic_form(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, omega_entry)
}

/// Cholesky on a Hermitian matrix, failing on the first non-positive pivot.
fn hermitian_cholesky_succeeds(mut h: DMatrix<Complex<f64>>) -> bool {
    let n = h.nrows();
    for j in 0..n {
        let mut pivot = h[(j, j)].re;
        for k in 0..j {
            pivot -= h[(j, k)].norm_sqr();
        }
        if !(pivot > 0.0) {
            return false;
        }
        let d = pivot.sqrt();
        h[(j, j)] = Complex::new(d, 0.0);
        for i in (j + 1)..n {
            let mut v = h[(i, j)];
            for k in 0..j {
                v -= h[(i, k)] * h[(j, k)].conj();
            }
            h[(i, j)] = v / d;
        }
    }
    true
}

pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

/// Reference states from the entanglement-versus-synchronization discussion.
pub mod fixtures {
    use super::*;

    /// Two coherent states riding identical mean trajectories: vacuum
    /// fluctuations on both modes, no correlations.
    pub fn coherent_pair() -> TwoModeCm {
        TwoModeCm::vacuum()
    }

    /// Two locally squeezed states ("clock hands") whose phase quadrature,
    /// taken relative to each mean phase `phases[k]`, has variance `epsilon`.
    /// The amplitude quadrature carries `1/(4ε)`, so each mode is pure.
    pub fn squeezed_clock_hands(epsilon: f64, phases: [f64; 2]) -> TwoModeCm {
        let local = Matrix2::new(0.25 / epsilon, 0.0, 0.0, epsilon);
        TwoModeCm::product(local, local)
            .rotate(0, -phases[0])
            .rotate(1, -phases[1])
    }
}
