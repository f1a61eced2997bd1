//! Dense complex matrices, Hermitian validation, minors, determinants,
//! adjugates and two-coordinate unitary rotations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)] // float math when std is not linked
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Default tolerance for accepting a matrix as Hermitian, relative to
/// `max(1, ‖A‖_F)`.
pub const DEFAULT_HERM_TOL: f64 = 1e-10;

const ROTATION_UNIT_TOL: f64 = 1e-14;

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidShape { rows, cols, len: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::InvalidShape { rows: n_rows, cols: n_cols, len: rows.iter().map(|r| r.len()).sum() });
        }
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0))).collect();
        Self::new(n_rows, n_cols, data)
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::InvalidShape { rows, cols, len: im.len() });
        }
        let data = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        Self::new(rows, cols, data)
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::zero(); rows * cols] }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(diag[i], 0.0) } else { Complex64::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// `self + c·I`.
    pub fn shift_diagonal(&self, c: Complex64) -> Result<Self> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] += c;
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest deviation from exact conjugate symmetry, including imaginary
    /// parts on the diagonal.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.rows.min(self.cols);
        let mut dev: f64 = 0.0;
        for j in 0..n {
            for k in j..n {
                dev = dev.max((self[(j, k)] - self[(k, j)].conj()).norm());
            }
        }
        dev
    }

    /// Keeps the listed rows and columns, in order.
    pub(crate) fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Returns `(A·P)` for the column permutation `perm` (column `k` of the
    /// result is column `perm[k]` of `self`), applied symmetrically to rows.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<Self> {
        let n = self.require_square()?;
        check_permutation(perm, n)?;
        Ok(Self::from_fn(n, n, |i, j| self[(perm[i], perm[j])]))
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::IndexOutOfRange { index: p, len: n });
        }
        seen[p] = true;
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Square matrix with exact conjugate symmetry and a real diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Validates with [`DEFAULT_HERM_TOL`].
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate_hermitian(m, DEFAULT_HERM_TOL)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::DimensionTooSmall { n: 0 });
        }
        Ok(Self(ComplexMatrix::from_diagonal(diag)))
    }

    /// Symmetrizes without a tolerance check. Callers guarantee the input
    /// is Hermitian up to round-off.
    pub(crate) fn symmetrize(mut m: ComplexMatrix) -> Self {
        let n = m.rows;
        for j in 0..n {
            m[(j, j)] = Complex64::new(m[(j, j)].re, 0.0);
            for k in j + 1..n {
                let avg = (m[(j, k)] + m[(k, j)].conj()) * 0.5;
                m[(j, k)] = avg;
                m[(k, j)] = avg.conj();
            }
        }
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn is_real(&self) -> bool {
        self.0.data.iter().all(|z| z.im == 0.0)
    }

    /// `A + c·I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..self.dim() {
            m[(i, i)].re += c;
        }
        Self(m)
    }

    /// `c·A` for real `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self(self.0.scale(Complex64::new(c, 0.0)))
    }

    /// `P A Pᵀ` where row `i` of the result is row `perm[i]` of `A`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Ok(Self(self.0.permute_symmetric(perm)?))
    }

    /// `D A D*` for the diagonal unitary `D = diag(e^{iθ_k})`.
    pub fn phase_conjugated(&self, phases: &[f64]) -> Result<Self> {
        let n = self.dim();
        if phases.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: phases.len() });
        }
        let d: Vec<Complex64> = phases.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        Ok(Self::symmetrize(ComplexMatrix::from_fn(n, n, |i, j| d[i] * self.0[(i, j)] * d[j].conj())))
    }

    /// Principal minor with row and column `j` removed.
    pub fn principal_minor(&self, j: usize) -> Result<Self> {
        Ok(Self(principal_minor(&self.0, j)?))
    }
}

/// Accepts `m` as Hermitian when every `|m[j][k] − conj(m[k][j])|` is at most
/// `herm_tol·max(1, ‖m‖_F)`, returning the symmetrized matrix `(m + m*)/2`.
pub fn validate_hermitian(m: ComplexMatrix, herm_tol: f64) -> Result<HermitianMatrix> {
    m.require_square()?;
    if !(herm_tol >= 0.0) || !herm_tol.is_finite() {
        return Err(Error::InvalidTolerance);
    }
    let tolerance = herm_tol * m.frobenius_norm().max(1.0);
    let max_deviation = m.hermitian_deviation();
    if max_deviation > tolerance {
        return Err(Error::NotHermitian { max_deviation, tolerance });
    }
    Ok(HermitianMatrix::symmetrize(m))
}

/// Sorted, distinct, non-empty set of indices into `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        Ok(Self(indices))
    }

    pub fn singleton(i: usize, n: usize) -> Result<Self> {
        Self::new(vec![i], n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Indices of `0..n` not in the set, in increasing order.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| !self.contains(i)).collect()
    }

    /// Sum of the members, used for cofactor signs.
    pub fn index_sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Unitary mixing of coordinates `j` and `k` with phase `omega`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationSpec {
    j: usize,
    k: usize,
    omega: Complex64,
}

impl RotationSpec {
    pub fn new(j: usize, k: usize, omega: Complex64) -> Result<Self> {
        if j == k {
            return Err(Error::InvalidRotation("indices must differ"));
        }
        if (omega.norm() - 1.0).abs() > ROTATION_UNIT_TOL {
            return Err(Error::InvalidRotation("omega must have unit modulus"));
        }
        Ok(Self { j, k, omega })
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn inverse(&self) -> Self {
        Self { j: self.j, k: self.k, omega: -self.omega }
    }

    /// The full `n×n` rotation matrix `G`.
    pub fn matrix(&self, n: usize) -> Result<ComplexMatrix> {
        self.check_range(n)?;
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let mut g = ComplexMatrix::identity(n);
        g[(self.j, self.j)] = Complex64::new(h, 0.0);
        g[(self.k, self.k)] = Complex64::new(h, 0.0);
        g[(self.j, self.k)] = self.omega * h;
        g[(self.k, self.j)] = -self.omega.conj() * h;
        Ok(g)
    }

    fn check_range(&self, n: usize) -> Result<()> {
        for idx in [self.j, self.k] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, len: n });
            }
        }
        Ok(())
    }
}

/// Principal minor of a square matrix with row and column `j` removed.
pub fn principal_minor(a: &ComplexMatrix, j: usize) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != j).collect();
    Ok(a.select(&keep, &keep))
}

/// Minor with the rows in `rows_removed` and the columns in `cols_removed`
/// deleted; the remaining indices keep their relative order.
pub fn general_minor(a: &ComplexMatrix, rows_removed: &IndexSet, cols_removed: &IndexSet) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    for set in [rows_removed, cols_removed] {
        if let Some(&bad) = set.as_slice().iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
    }
    if rows_removed.len() != cols_removed.len() {
        return Err(Error::CardinalityMismatch { rows: rows_removed.len(), cols: cols_removed.len() });
    }
    if rows_removed.len() >= n {
        return Err(Error::DimensionTooSmall { n });
    }
    Ok(a.select(&rows_removed.complement(n), &cols_removed.complement(n)))
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub(crate) struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub(crate) fn factor(a: &ComplexMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for col in 0..n {
            let (pivot_row, pivot_abs) =
                (col..n)
                    .map(|r| (r, lu[r * n + col].norm()))
                    .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs <= f64::MIN_POSITIVE {
                singular = true;
                continue;
            }
            if pivot_row != col {
                for c in 0..n {
                    lu.swap(col * n + c, pivot_row * n + c);
                }
                perm.swap(col, pivot_row);
                sign = -sign;
            }
            let pivot = lu[col * n + col];
            for r in col + 1..n {
                let factor = lu[r * n + col] / pivot;
                lu[r * n + col] = factor;
                if factor.is_zero() {
                    continue;
                }
                for c in col + 1..n {
                    let u = lu[col * n + c];
                    lu[r * n + c] -= factor * u;
                }
            }
        }
        Ok(Self { n, lu, perm, sign, singular })
    }

    pub(crate) fn determinant(&self) -> Complex64 {
        if self.singular {
            return Complex64::zero();
        }
        (0..self.n).fold(Complex64::new(self.sign, 0.0), |acc, i| acc * self.lu[i * self.n + i])
    }

    pub(crate) fn is_singular(&self) -> bool {
        self.singular
    }

    pub(crate) fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        if self.singular || b.len() != self.n {
            return None;
        }
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[i * n + k];
                let xk = x[k];
                x[i] -= l * xk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[i * n + k];
                let xk = x[k];
                x[i] -= u * xk;
            }
            x[i] /= self.lu[i * n + i];
        }
        Some(x)
    }
}

/// Cholesky solve for a Hermitian positive definite system. Returns `None`
/// when a non-positive pivot appears.
pub(crate) fn cholesky_solve(a: &ComplexMatrix, b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = a.rows;
    let mut l = vec![Complex64::zero(); n * n];
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if !(d > 0.0) {
            return None;
        }
        let djj = d.sqrt();
        l[j * n + j] = Complex64::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / djj;
        }
    }
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            let lik = l[i * n + k];
            let yk = y[k];
            y[i] -= lik * yk;
        }
        y[i] /= l[i * n + i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let lki = l[k * n + i].conj();
            let yk = y[k];
            y[i] -= lki * yk;
        }
        y[i] /= l[i * n + i];
    }
    Some(y)
}

/// Determinant by LU with partial pivoting. A pivot at or below the smallest
/// normal double yields exactly zero.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    Ok(Lu::factor(a)?.determinant())
}

/// Adjugate from cofactors: entry `(i, j)` is `(−1)^{i+j}·det(M_{ji})` where
/// `M_{ji}` drops row `j` and column `i`.
pub fn adjugate_cofactor(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    if n == 1 {
        return Ok(ComplexMatrix::identity(1));
    }
    let mut adj = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let keep_rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let keep_cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let det = determinant(&a.select(&keep_rows, &keep_cols))?;
            adj[(i, j)] = if (i + j) % 2 == 0 { det } else { -det };
        }
    }
    Ok(adj)
}

/// Returns `G A G*` for the rotation `G` described by `spec`.
pub fn rotate_pair(a: &HermitianMatrix, spec: &RotationSpec) -> Result<HermitianMatrix> {
    let n = a.dim();
    spec.check_range(n)?;
    let (j, k, w) = (spec.j, spec.k, spec.omega);
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut m = a.0.clone();
    // rows: G·A
    for c in 0..n {
        let (aj, ak) = (m[(j, c)], m[(k, c)]);
        m[(j, c)] = (aj + w * ak) * h;
        m[(k, c)] = (ak - w.conj() * aj) * h;
    }
    // columns: (G·A)·G*
    for r in 0..n {
        let (xj, xk) = (m[(r, j)], m[(r, k)]);
        m[(r, j)] = (xj + w.conj() * xk) * h;
        m[(r, k)] = (xk - w * xj) * h;
    }
    Ok(HermitianMatrix::symmetrize(m))
}
