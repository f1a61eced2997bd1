//! Hermitian eigensolvers.
//!
//! The fast path reduces to a real symmetric tridiagonal matrix with
//! Householder reflectors and a diagonal phase transform, then runs
//! implicit-shift QL. Cyclic complex Jacobi is kept as an independent
//! oracle.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math when std is not linked
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};

const QL_MAX_ITERATIONS: usize = 50;
const JACOBI_MAX_SWEEPS: usize = 30;
const JACOBI_TOL: f64 = 1e-14;
/// Relative window within which two components count as the same
/// magnitude when picking the phase reference.
const PHASE_TIE_TOL: f64 = 1e-9;

/// Non-decreasing list of real eigenvalues. Also the only representation of
/// characteristic polynomials: `p(λ) = ∏ (λ − λ_k)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Accepts an already sorted list of finite values.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(pos) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::UnsortedSpectrum { index: pos });
        }
        Ok(Self(values))
    }

    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        values.sort_by(f64::total_cmp);
        Ok(Self(values))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.0.get(i).copied()
    }

    /// `λ_max − λ_min`, zero for fewer than two values.
    pub fn spread(&self) -> f64 {
        match (self.0.first(), self.0.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// Largest absolute eigenvalue (the spectral norm of the matrix).
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Smallest distance from `values[i]` to any other value.
    pub fn gap(&self, i: usize) -> f64 {
        let v = &self.0;
        let left = if i > 0 { v[i] - v[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < v.len() { v[i + 1] - v[i] } else { f64::INFINITY };
        left.min(right)
    }

    pub fn min_gap(&self) -> f64 {
        self.0.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Real symmetric tridiagonal matrix: `diag` has `n` entries and `offdiag`
/// has `n − 1`, with `offdiag[k]` coupling rows `k` and `k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymmetricTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::DimensionTooSmall { n: 0 });
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch { expected: diag.len() - 1, found: offdiag.len() });
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(self.diag[i], 0.0);
        }
        for (k, &b) in self.offdiag.iter().enumerate() {
            m[(k, k + 1)] = Complex64::new(b, 0.0);
            m[(k + 1, k)] = Complex64::new(b, 0.0);
        }
        m
    }

    pub fn to_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrize(self.to_dense())
    }

    pub fn frobenius_norm(&self) -> f64 {
        let d: f64 = self.diag.iter().map(|x| x * x).sum();
        let o: f64 = self.offdiag.iter().map(|x| x * x).sum();
        (d + 2.0 * o).sqrt()
    }
}

/// Unitary matrix, `Q*Q = I` to round-off.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryFactor(ComplexMatrix);

impl UnitaryFactor {
    /// Wraps `q` after checking `‖Q*Q − I‖_max ≤ 1e-10`.
    pub fn new(q: ComplexMatrix) -> Result<Self> {
        let n = q.require_square()?;
        let dev = orthonormality_deviation(&q);
        if dev > 1e-10 {
            return Err(Error::NotUnitary { n, max_deviation: dev });
        }
        Ok(Self(q))
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

/// `max |(Q*Q − I)_{ij}|`.
pub fn orthonormality_deviation(q: &ComplexMatrix) -> f64 {
    let n = q.cols();
    let mut dev: f64 = 0.0;
    for a in 0..n {
        for b in a..n {
            let dot: Complex64 = (0..q.rows()).map(|r| q[(r, a)].conj() * q[(r, b)]).sum();
            let target = if a == b { 1.0 } else { 0.0 };
            dev = dev.max((dot - Complex64::new(target, 0.0)).norm());
        }
    }
    dev
}

/// Sorted spectrum with orthonormal eigenvector columns.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    spectrum: Spectrum,
    vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.spectrum.len()
    }

    /// Unit eigenvector `i`.
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    /// Component `j` of eigenvector `i`.
    pub fn component(&self, i: usize, j: usize) -> Complex64 {
        self.vectors[(j, i)]
    }

    /// `|v_{i,j}|²` indexed `[i][j]`.
    pub fn magnitudes(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.component(i, j).norm_sqr()).collect()).collect()
    }

    /// `max_i ‖A v_i − λ_i v_i‖₂`.
    pub fn max_residual(&self, a: &HermitianMatrix) -> f64 {
        (0..self.dim()).map(|i| residual_norm(a, self.spectrum.values()[i], &self.vector(i))).fold(0.0, f64::max)
    }

    pub fn orthonormality_deviation(&self) -> f64 {
        orthonormality_deviation(&self.vectors)
    }

    pub fn unitary(&self) -> UnitaryFactor {
        UnitaryFactor(self.vectors.clone())
    }
}

/// `‖A v − λ v‖₂`.
pub fn residual_norm(a: &HermitianMatrix, lambda: f64, v: &[Complex64]) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for r in 0..n {
        let av: Complex64 = (0..n).map(|c| a.get(r, c) * v[c]).sum();
        sum += (av - v[r] * lambda).norm_sqr();
    }
    sum.sqrt()
}

/// Householder reduction `Q* A Q = T` followed by a diagonal phase transform
/// that makes the off-diagonal real. Inputs that are already real tridiagonal
/// come back unchanged with `Q = I`.
pub fn tridiagonalize(a: &HermitianMatrix) -> (SymmetricTridiagonal, UnitaryFactor) {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut q = ComplexMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|r| m[(r, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].is_zero() { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let mut v = x;
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;

        // H·M on rows k+1..n
        for c in k..n {
            let s: Complex64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * m[(k + 1 + t, c)]).sum();
            for (t, vt) in v.iter().enumerate() {
                m[(k + 1 + t, c)] -= vt * s * tau;
            }
        }
        // (H·M)·H on columns k+1..n
        for r in k..n {
            let s: Complex64 = v.iter().enumerate().map(|(t, vt)| m[(r, k + 1 + t)] * vt).sum();
            for (t, vt) in v.iter().enumerate() {
                m[(r, k + 1 + t)] -= s * vt.conj() * tau;
            }
        }
        for r in k + 2..n {
            m[(r, k)] = Complex64::zero();
            m[(k, r)] = Complex64::zero();
        }
        // Q·H
        for r in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(t, vt)| q[(r, k + 1 + t)] * vt).sum();
            for (t, vt) in v.iter().enumerate() {
                q[(r, k + 1 + t)] -= s * vt.conj() * tau;
            }
        }
    }

    // D = diag(d_k) with conj(d_{k+1}) e_k d_k real.
    let mut d = vec![Complex64::new(1.0, 0.0); n];
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let e = m[(k + 1, k)];
        if e.im == 0.0 {
            d[k + 1] = d[k];
            offdiag.push(e.re);
        } else {
            d[k + 1] = d[k] * (e / e.norm());
            offdiag.push(e.norm());
        }
    }
    if d.iter().any(|z| z.im != 0.0 || z.re != 1.0) {
        for r in 0..n {
            for c in 0..n {
                q[(r, c)] *= d[c];
            }
        }
    }
    let diag = (0..n).map(|i| m[(i, i)].re).collect();
    (SymmetricTridiagonal { diag, offdiag }, UnitaryFactor(q))
}

/// Implicit-shift QL with Wilkinson shift. When `z` is given, the rotations
/// are accumulated into its columns (row-major `n×n`, real).
fn tridiagonal_ql(diag: &mut [f64], offdiag: &[f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = diag.len();
    let d = diag;
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(offdiag);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITERATIONS {
                return Err(Error::NoConvergence { algorithm: "implicit QL", iterations: QL_MAX_ITERATIONS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// All eigenvalues of `t`, sorted.
pub fn eigvals_tridiag(t: &SymmetricTridiagonal) -> Result<Spectrum> {
    let mut d = t.diag.clone();
    tridiagonal_ql(&mut d, &t.offdiag, None)?;
    d.sort_by(f64::total_cmp);
    Ok(Spectrum(d))
}

/// Eigenvalues and orthonormal eigenvectors of a real symmetric tridiagonal
/// matrix, sorted, with the same phase convention as [`eigh`].
pub fn eigh_tridiag(t: &SymmetricTridiagonal) -> Result<EigenDecomposition> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tridiagonal_ql(&mut d, &t.offdiag, Some(&mut z))?;
    let v = ComplexMatrix::from_fn(n, n, |r, c| Complex64::new(z[r * n + c], 0.0));
    Ok(sorted_decomposition(d, v))
}

/// Eigenvalues only (no vector accumulation).
pub fn eigvalsh(a: &HermitianMatrix) -> Result<Spectrum> {
    let (t, _) = tridiagonalize(a);
    eigvals_tridiag(&t)
}

/// Full eigendecomposition via tridiagonalization and implicit QL.
pub fn eigh(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let (t, q) = tridiagonalize(a);
    let mut d = t.diag.clone();
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tridiagonal_ql(&mut d, &t.offdiag, Some(&mut z))?;
    let q = q.0;
    // V = Q·Z with Z real
    let mut v = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for k in 0..n {
            let qrk = q[(r, k)];
            if qrk.is_zero() {
                continue;
            }
            for c in 0..n {
                v[(r, c)] += qrk * z[k * n + c];
            }
        }
    }
    Ok(sorted_decomposition(d, v))
}

/// Cyclic complex Jacobi rotations. Converges when the off-diagonal
/// Frobenius mass is at most `1e-14·‖A‖_F`.
pub fn eigh_jacobi(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let target = JACOBI_TOL * a.frobenius_norm();

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += m[(p, q)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (2.0 * b);
                let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + theta.hypot(1.0)) };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let ph = (apq / b).conj();
                // R = diag(1, e^{-iφ})·[[c, s], [−s, c]]
                let r_pp = Complex64::new(c, 0.0);
                let r_pq = Complex64::new(s, 0.0);
                let r_qp = ph * (-s);
                let r_qq = ph * c;
                for r in 0..n {
                    let (xp, xq) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = xp * r_pp + xq * r_qp;
                    m[(r, q)] = xp * r_pq + xq * r_qq;
                    let (vp, vq) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = vp * r_pp + vq * r_qp;
                    v[(r, q)] = vp * r_pq + vq * r_qq;
                }
                for col in 0..n {
                    let (xp, xq) = (m[(p, col)], m[(q, col)]);
                    m[(p, col)] = r_pp.conj() * xp + r_qp.conj() * xq;
                    m[(q, col)] = r_pq.conj() * xp + r_qq.conj() * xq;
                }
                m[(p, q)] = Complex64::zero();
                m[(q, p)] = Complex64::zero();
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
            }
        }
    }
    if !converged && off_norm(&m) > target {
        return Err(Error::NoConvergence { algorithm: "cyclic Jacobi", iterations: JACOBI_MAX_SWEEPS });
    }
    let d = (0..n).map(|i| m[(i, i)].re).collect();
    Ok(sorted_decomposition(d, v))
}

fn sorted_decomposition(values: Vec<f64>, vectors: ComplexMatrix) -> EigenDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut v = ComplexMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    for c in 0..n {
        canonicalize_phase(&mut v, c);
    }
    EigenDecomposition { spectrum: Spectrum(sorted), vectors: v }
}

/// Index of the largest-magnitude entry, ties (within a relative window)
/// going to the lowest index.
pub(crate) fn pivot_index(magnitudes: impl Iterator<Item = f64> + Clone) -> usize {
    let max = magnitudes.clone().fold(0.0, f64::max);
    magnitudes.into_iter().position(|m| m >= max * (1.0 - PHASE_TIE_TOL)).unwrap_or(0)
}

/// Scales column `c` so its largest-magnitude component is real positive.
fn canonicalize_phase(v: &mut ComplexMatrix, c: usize) {
    let n = v.rows();
    let k = pivot_index((0..n).map(|r| v[(r, c)].norm()));
    let z = v[(k, c)];
    if z.is_zero() {
        return;
    }
    let unit = z.conj() / z.norm();
    for r in 0..n {
        v[(r, c)] *= unit;
    }
    v[(k, c)] = Complex64::new(v[(k, c)].norm(), 0.0);
}
