//! Eigenvector component magnitudes from eigenvalues.
//!
//! For a Hermitian `A` with eigenvalues `λ_1 ≤ … ≤ λ_n` and principal minor
//! `M_j` with eigenvalues `ξ_1 ≤ … ≤ ξ_{n−1}`,
//!
//! ```text
//! |v_{i,j}|² · ∏_{k≠i} (λ_i − λ_k) = ∏_k (λ_i − ξ_k)
//! ```
//!
//! The main path evaluates this as a product of interlacing-paired factors,
//! each in `[0, 1]`:
//!
//! ```text
//! |v_{i,j}|² = ∏_{k<i} (λ_i − ξ_k)/(λ_i − λ_k) · ∏_{k≥i} (ξ_k − λ_i)/(λ_{k+1} − λ_i)
//! ```
//!
//! so it neither overflows nor cancels for large `n`. The naive quotient of
//! characteristic polynomials, the residue form for repeated eigenvalues,
//! the off-diagonal cofactor form, the resolvent form and the tridiagonal
//! three-term recurrence forms are provided alongside for cross-checking.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::eigensolve::{eigvalsh, Spectrum, SymmetricTridiagonal};
use crate::error::{Error, Result};
use crate::matrix::{self, cholesky_solve, ComplexMatrix, HermitianMatrix, IndexSet, Lu};
use crate::spectral::{self, default_tolerance, Group, MultiplicityGrouping};

/// Interlacing slack, as a multiple of the multiplicity tolerance.
const INTERLACING_SLACK_FACTOR: f64 = 10.0;
/// A raw (unclamped) magnitude outside `[−1e-6, 1 + 1e-6]` is treated as
/// bad input rather than round-off.
const CLAMP_VIOLATION: f64 = 1e-6;
/// A factor numerator below this (relative to the spectral scale) marks the
/// component as vanishing.
const ZERO_FACTOR_REL: f64 = 1e-13;

/// How a table entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryFlag {
    Computed,
    /// A minor eigenvalue coincides with `λ_i`; the component vanishes.
    ExactZero,
    /// `λ_i` is repeated. The entry holds the total mass of its group.
    DegenerateGroupMass,
}

/// Result of one paired-product evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagnitudeDetail {
    /// Clamped to `[0, 1]`.
    pub value: f64,
    /// Product of the unclamped factors.
    pub raw: f64,
    pub exact_zero: bool,
}

fn check_dims(s_a: &Spectrum, s_m: &Spectrum) -> Result<usize> {
    let n = s_a.len();
    if n == 0 {
        return Err(Error::DimensionTooSmall { n: 0 });
    }
    if s_m.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, found: s_m.len() });
    }
    Ok(n)
}

/// Checks `λ_k − slack ≤ ξ_k ≤ λ_{k+1} + slack` for every `k`.
pub(crate) fn require_interlacing(s_a: &Spectrum, s_m: &Spectrum, slack: f64) -> Result<()> {
    let (la, xi) = (s_a.values(), s_m.values());
    for (k, &x) in xi.iter().enumerate() {
        let below = la[k] - x;
        let above = x - la[k + 1];
        let deviation = below.max(above);
        if deviation > slack {
            return Err(Error::InterlacingViolation { index: k, deviation });
        }
    }
    Ok(())
}

fn zero_threshold(s_a: &Spectrum) -> f64 {
    ZERO_FACTOR_REL * s_a.max_abs().max(1.0)
}

/// Paired product over a minor spectrum `rest` against `s_a`, around the
/// value `center`. Entries of `rest` with position `< below` pair with
/// `λ_k`; the others pair with `λ_{k+skip}`.
fn paired_product(s_a: &Spectrum, rest: &[f64], center: f64, below: usize, skip: usize) -> Result<MagnitudeDetail> {
    let la = s_a.values();
    let zero_tol = zero_threshold(s_a);
    let mut value = 1.0;
    let mut raw = 1.0;
    let mut exact_zero = false;
    for (k, &xi) in rest.iter().enumerate() {
        let (num, den) = if k < below { (center - xi, center - la[k]) } else { (xi - center, la[k + skip] - center) };
        if num.abs() <= zero_tol {
            exact_zero = true;
        }
        let f = num / den;
        raw *= f;
        value *= f.clamp(0.0, 1.0);
    }
    if !(-CLAMP_VIOLATION..=1.0 + CLAMP_VIOLATION).contains(&raw) {
        return Err(Error::InterlacingViolation { index: below, deviation: if raw < 0.0 { -raw } else { raw - 1.0 } });
    }
    Ok(MagnitudeDetail { value: value.clamp(0.0, 1.0), raw, exact_zero })
}

fn require_simple(grouping: &MultiplicityGrouping, i: usize) -> Result<()> {
    match grouping.group_of(i) {
        Some(g) if g.is_simple() => Ok(()),
        Some(g) => Err(Error::DegenerateEigenvalue { index: i, multiplicity: g.len }),
        None => Err(Error::IndexOutOfRange { index: i, len: grouping.groups().last().map_or(0, Group::end) }),
    }
}

/// `|v_{i,j}|²` from the spectrum of `A` and of the minor `M_j`, with full
/// evaluation details.
pub fn magnitude_sq_detail(s_a: &Spectrum, s_mj: &Spectrum, i: usize, tol: f64) -> Result<MagnitudeDetail> {
    let n = check_dims(s_a, s_mj)?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let grouping = spectral::group_multiplicities(s_a, tol)?;
    require_interlacing(s_a, s_mj, INTERLACING_SLACK_FACTOR * tol)?;
    require_simple(&grouping, i)?;
    paired_product(s_a, s_mj.values(), s_a.values()[i], i, 1)
}

/// `|v_{i,j}|²` by interlacing-paired factors, clamped to `[0, 1]`.
///
/// `tol` is the multiplicity tolerance: `λ_i` must be simple under it, and
/// the spectra must interlace within `10·tol`.
pub fn magnitude_sq(s_a: &Spectrum, s_mj: &Spectrum, i: usize, tol: f64) -> Result<f64> {
    magnitude_sq_detail(s_a, s_mj, i, tol).map(|d| d.value)
}

/// `p_{M_j}(λ_i) / p'_A(λ_i)`, unclamped.
pub fn magnitude_sq_charpoly(s_a: &Spectrum, s_mj: &Spectrum, i: usize) -> Result<f64> {
    let n = check_dims(s_a, s_mj)?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let grouping = spectral::group_multiplicities(s_a, default_tolerance(s_a))?;
    require_simple(&grouping, i)?;
    let li = s_a.values()[i];
    Ok(spectral::char_poly_eval_real(s_mj, li) / spectral::char_poly_derivative_at(s_a, i)?)
}

/// Total mass `Σ_{i ∈ group} |v_{i,j}|²` of a multiplicity group.
///
/// Evaluated as the residue of `p_{M_j}/p_A` at the group value: `m` copies
/// are removed from the spectrum of `A`, the `m − 1` copies forced into the
/// minor spectrum by interlacing are removed from `s_mj`, and the remaining
/// factors are paired as in [`magnitude_sq`].
pub fn magnitude_group(s_a: &Spectrum, s_mj: &Spectrum, group: &Group, tol: f64) -> Result<f64> {
    magnitude_group_detail(s_a, s_mj, group, tol).map(|d| d.value)
}

pub fn magnitude_group_detail(s_a: &Spectrum, s_mj: &Spectrum, group: &Group, tol: f64) -> Result<MagnitudeDetail> {
    let n = check_dims(s_a, s_mj)?;
    if group.len == 0 || group.end() > n {
        return Err(Error::IndexOutOfRange { index: group.end(), len: n });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance);
    }
    let la = s_a.values();
    let (lo, hi) = (la[group.start], la[group.end() - 1]);
    let center = group.representative;
    let forced = group.len - 1;

    let mut near: Vec<usize> =
        s_mj.values().iter().enumerate().filter(|&(_, &x)| x >= lo - tol && x <= hi + tol).map(|(k, _)| k).collect();
    if near.len() < forced {
        return Err(Error::InterlacingViolation { index: group.start, deviation: (forced - near.len()) as f64 });
    }
    near.sort_by(|&a, &b| (s_mj.values()[a] - center).abs().total_cmp(&(s_mj.values()[b] - center).abs()));
    let mut removed = vec![false; s_mj.len()];
    for &k in near.iter().take(forced) {
        removed[k] = true;
    }
    let rest: Vec<f64> = s_mj.values().iter().zip(&removed).filter(|(_, &r)| !r).map(|(&x, _)| x).collect();
    paired_product(s_a, &rest, center, group.start, group.len)
}

/// One column `j` of a [`MagnitudeTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct MagnitudeColumn {
    pub values: Vec<f64>,
    pub flags: Vec<EntryFlag>,
}

/// Fills column `j` from the spectrum of `A` and of the minor `M_j`.
pub fn magnitude_column(s_a: &Spectrum, grouping: &MultiplicityGrouping, s_mj: &Spectrum) -> Result<MagnitudeColumn> {
    let n = check_dims(s_a, s_mj)?;
    let tol = grouping.tolerance();
    let mut values = vec![0.0; n];
    let mut flags = vec![EntryFlag::Computed; n];
    for group in grouping.groups() {
        if group.is_simple() {
            let d = magnitude_sq_detail(s_a, s_mj, group.start, tol)?;
            values[group.start] = d.value;
            if d.exact_zero {
                flags[group.start] = EntryFlag::ExactZero;
            }
        } else {
            let mass = magnitude_group(s_a, s_mj, group, tol)?;
            for i in group.indices() {
                values[i] = mass;
                flags[i] = EntryFlag::DegenerateGroupMass;
            }
        }
    }
    Ok(MagnitudeColumn { values, flags })
}

/// Spectra of all principal minors `M_1 … M_n`. For `n = 1` the single minor
/// is empty.
pub fn minor_spectra(a: &HermitianMatrix) -> Result<Vec<Spectrum>> {
    let n = a.dim();
    if n == 1 {
        return Ok(vec![Spectrum::empty()]);
    }
    (0..n).map(|j| minor_spectrum(a, j)).collect()
}

pub fn minor_spectrum(a: &HermitianMatrix, j: usize) -> Result<Spectrum> {
    if a.dim() == 1 {
        return if j == 0 { Ok(Spectrum::empty()) } else { Err(Error::IndexOutOfRange { index: j, len: 1 }) };
    }
    eigvalsh(&a.principal_minor(j)?)
}

/// `n×n` grid of `|v_{i,j}|²` values, indexed `[i][j]` (eigenvector `i`,
/// component `j`).
///
/// Rows of a repeated eigenvalue carry the group total in every member row,
/// flagged [`EntryFlag::DegenerateGroupMass`]; use [`Self::aggregated_rows`]
/// for sums.
#[derive(Clone, Debug, PartialEq)]
pub struct MagnitudeTable {
    n: usize,
    values: Vec<f64>,
    flags: Vec<EntryFlag>,
    spectrum: Spectrum,
    grouping: MultiplicityGrouping,
}

impl MagnitudeTable {
    pub fn from_columns(spectrum: Spectrum, grouping: MultiplicityGrouping, columns: Vec<MagnitudeColumn>) -> Result<Self> {
        let n = spectrum.len();
        if columns.len() != n || columns.iter().any(|c| c.values.len() != n || c.flags.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: columns.len() });
        }
        let mut values = vec![0.0; n * n];
        let mut flags = vec![EntryFlag::Computed; n * n];
        for (j, col) in columns.into_iter().enumerate() {
            for i in 0..n {
                values[i * n + j] = col.values[i];
                flags[i * n + j] = col.flags[i];
            }
        }
        Ok(Self { n, values, flags, spectrum, grouping })
    }

    /// Builds a table from explicit values (e.g. an eigensolver oracle),
    /// grouping with `tol`.
    pub fn from_values(spectrum: Spectrum, values: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        let n = spectrum.len();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: values.len() });
        }
        let grouping = spectral::group_multiplicities(&spectrum, tol)?;
        let mut flat = vec![0.0; n * n];
        let mut flags = vec![EntryFlag::Computed; n * n];
        for g in grouping.groups() {
            for j in 0..n {
                let mass: f64 = g.indices().map(|i| values[i][j]).sum();
                for i in g.indices() {
                    flat[i * n + j] = if g.is_simple() { values[i][j] } else { mass };
                    if !g.is_simple() {
                        flags[i * n + j] = EntryFlag::DegenerateGroupMass;
                    }
                }
            }
        }
        Ok(Self { n, values: flat, flags, spectrum, grouping })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Mutable access, used by tests that corrupt a table on purpose.
    pub fn set_value(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.n + j] = v;
    }

    pub fn flag(&self, i: usize, j: usize) -> EntryFlag {
        self.flags[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn grouping(&self) -> &MultiplicityGrouping {
        &self.grouping
    }

    /// One row per multiplicity group: the group and its per-column mass.
    pub fn aggregated_rows(&self) -> Vec<(Group, Vec<f64>)> {
        self.grouping.groups().iter().map(|g| (g.clone(), self.row(g.start).to_vec())).collect()
    }

    /// `(group value, mass)` pairs for column `j`.
    pub fn column_masses(&self, j: usize) -> Vec<(f64, f64)> {
        self.grouping.groups().iter().map(|g| (g.representative, self.value(g.start, j))).collect()
    }

    /// Row sums over aggregated rows; a group of multiplicity `m` should sum
    /// to `m`.
    pub fn row_sums(&self) -> Vec<(Group, f64)> {
        self.aggregated_rows().into_iter().map(|(g, r)| (g, r.iter().sum())).collect()
    }

    /// Column sums over aggregated rows; each should be 1.
    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.column_masses(j).iter().map(|&(_, m)| m).sum()).collect()
    }

    /// Largest entrywise difference to another table of the same size.
    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Table of all `|v_{i,j}|²` using the default multiplicity tolerance.
pub fn magnitude_table(a: &HermitianMatrix) -> Result<MagnitudeTable> {
    let s_a = eigvalsh(a)?;
    let tol = default_tolerance(&s_a);
    magnitude_table_with(a, s_a, tol)
}

/// Table with an explicit spectrum of `A` and multiplicity tolerance.
pub fn magnitude_table_with(a: &HermitianMatrix, s_a: Spectrum, tol: f64) -> Result<MagnitudeTable> {
    let grouping = spectral::group_multiplicities(&s_a, tol)?;
    let columns = minor_spectra(a)?.iter().map(|s_mj| magnitude_column(&s_a, &grouping, s_mj)).collect::<Result<Vec<_>>>()?;
    MagnitudeTable::from_columns(s_a, grouping, columns)
}

/// Estimate of `v_{i,j}·conj(v_{i,j'})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossTerm {
    pub i: usize,
    pub j: usize,
    pub j_prime: usize,
    pub value: Complex64,
}

/// `(−1)^{j+j'}·det(λ_i·(I)_{j'j} − M_{j'j}) / p'_A(λ_i)`, where the
/// subscript `j'j` removes row `j'` and column `j`.
pub fn cross_term(a: &HermitianMatrix, s_a: &Spectrum, i: usize, j: usize, j_prime: usize) -> Result<CrossTerm> {
    let n = a.dim();
    if s_a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s_a.len() });
    }
    for idx in [i, j, j_prime] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    let grouping = spectral::group_multiplicities(s_a, default_tolerance(s_a))?;
    require_simple(&grouping, i)?;
    if n == 1 {
        return Ok(CrossTerm { i, j, j_prime, value: Complex64::new(1.0, 0.0) });
    }
    let li = s_a.values()[i];
    let shifted = a.as_matrix().scale(Complex64::new(-1.0, 0.0)).shift_diagonal(Complex64::new(li, 0.0))?;
    let minor = matrix::general_minor(&shifted, &IndexSet::singleton(j_prime, n)?, &IndexSet::singleton(j, n)?)?;
    let det = matrix::determinant(&minor)?;
    let signed = if (j + j_prime).is_multiple_of(2) { det } else { -det };
    let mut value = signed / spectral::char_poly_derivative_at(s_a, i)?;
    if j == j_prime {
        value = Complex64::new(value.re.clamp(0.0, 1.0), 0.0);
    } else if value.norm() > 1.0 {
        value /= value.norm();
    }
    Ok(CrossTerm { i, j, j_prime, value })
}

/// `A` split around coordinate `j` as `[[a11, X*], [X, M]]`, with `M` the
/// principal minor `M_j` and `X` column `j` without its diagonal entry.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSplit {
    pub j: usize,
    pub a11: f64,
    pub x: Vec<Complex64>,
    pub m1: HermitianMatrix,
}

impl BlockSplit {
    pub fn new(a: &HermitianMatrix, j: usize) -> Result<Self> {
        let n = a.dim();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, len: n });
        }
        let m1 = a.principal_minor(j)?;
        let x = (0..n).filter(|&k| k != j).map(|k| a.get(k, j)).collect();
        Ok(Self { j, a11: a.get(j, j).re, x, m1 })
    }

    pub fn reassemble(&self) -> HermitianMatrix {
        let n = self.x.len() + 1;
        let j = self.j;
        let rest = |k: usize| if k < j { k } else { k - 1 };
        let m = ComplexMatrix::from_fn(n, n, |r, c| match (r == j, c == j) {
            (true, true) => Complex64::new(self.a11, 0.0),
            (false, true) => self.x[rest(r)],
            (true, false) => self.x[rest(c)].conj(),
            (false, false) => self.m1.get(rest(r), rest(c)),
        });
        HermitianMatrix::symmetrize(m)
    }
}

/// `1 / (1 + X*(λ I − M_j)^{−2} X)`, i.e. `1/(1 + ‖y‖²)` with
/// `(λ I − M_j) y = X`.
///
/// The shifted system is solved by Cholesky when it is definite (either
/// sign) and by pivoted LU otherwise.
pub fn magnitude_alternate(a: &HermitianMatrix, lambda: f64, j: usize) -> Result<f64> {
    if a.dim() == 1 {
        return if j == 0 { Ok(1.0) } else { Err(Error::IndexOutOfRange { index: j, len: 1 }) };
    }
    let split = BlockSplit::new(a, j)?;
    let xi = eigvalsh(&split.m1)?;
    let lo = xi.values()[0].min(lambda);
    let hi = xi.values()[xi.len() - 1].max(lambda);
    let tol = spectral::MULTIPLICITY_REL_TOL * (hi - lo).max(1.0);
    let gap = xi.values().iter().map(|x| (x - lambda).abs()).fold(f64::INFINITY, f64::min);
    if gap <= tol {
        return Err(Error::SingularShift { gap });
    }
    let shifted = split.m1.as_matrix().scale(Complex64::new(-1.0, 0.0)).shift_diagonal(Complex64::new(lambda, 0.0))?;
    let y = solve_hermitian(&shifted, &split.x).ok_or(Error::SingularShift { gap })?;
    let norm2: f64 = y.iter().map(|z| z.norm_sqr()).sum();
    Ok(1.0 / (1.0 + norm2))
}

/// Solves a Hermitian (possibly indefinite) system.
fn solve_hermitian(s: &ComplexMatrix, b: &[Complex64]) -> Option<Vec<Complex64>> {
    if let Some(y) = cholesky_solve(s, b) {
        return Some(y);
    }
    let neg = s.scale(Complex64::new(-1.0, 0.0));
    if let Some(y) = cholesky_solve(&neg, b) {
        return Some(y.into_iter().map(|z| -z).collect());
    }
    let lu = Lu::factor(s).ok()?;
    if lu.is_singular() {
        return None;
    }
    lu.solve(b)
}

/// Characteristic polynomial of the diagonal block spanning rows
/// `r_start..r_end` (0-based, half-open) of `t` at `λ`, by the three-term
/// recurrence `p_k = (λ − a_k) p_{k−1} − b_{k−1}² p_{k−2}`. An empty block
/// gives 1.
pub fn paige_char_recurrence(t: &SymmetricTridiagonal, r_start: usize, r_end: usize, lambda: f64) -> Result<f64> {
    let n = t.dim();
    if r_end > n || r_start > r_end {
        return Err(Error::IndexOutOfRange { index: r_end.max(r_start), len: n });
    }
    let (a, b) = (t.diag(), t.offdiag());
    let mut prev = 1.0;
    let mut cur = 1.0;
    for k in r_start..r_end {
        let next = if k == r_start { lambda - a[k] } else { (lambda - a[k]) * cur - b[k - 1] * b[k - 1] * prev };
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn paige_setup(t: &SymmetricTridiagonal, s_t: &Spectrum, i: usize, comps: &[usize]) -> Result<(f64, f64)> {
    let n = t.dim();
    if s_t.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s_t.len() });
    }
    for &idx in comps.iter().chain(core::iter::once(&i)) {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    let grouping = spectral::group_multiplicities(s_t, default_tolerance(s_t))?;
    require_simple(&grouping, i)?;
    Ok((s_t.values()[i], spectral::char_poly_derivative_at(s_t, i)?))
}

/// Squared component `r` of unit eigenvector `i` of a tridiagonal matrix:
/// `p_{0,r}(μ_i)·p_{r+1,n}(μ_i) / ∏_{k≠i}(μ_i − μ_k)`, clamped to `[0, 1]`.
pub fn paige_magnitude(t: &SymmetricTridiagonal, s_t: &Spectrum, i: usize, r: usize) -> Result<f64> {
    let (mu, f) = paige_setup(t, s_t, i, &[r])?;
    let lead = paige_char_recurrence(t, 0, r, mu)?;
    let trail = paige_char_recurrence(t, r + 1, t.dim(), mu)?;
    Ok((lead * trail / f).clamp(0.0, 1.0))
}

/// Signed product `y_r·y_s` (`r < s`) of components of unit eigenvector
/// `i`: `b_r⋯b_{s−1}·p_{0,r}(μ_i)·p_{s+1,n}(μ_i) / ∏_{k≠i}(μ_i − μ_k)`.
pub fn paige_cross(t: &SymmetricTridiagonal, s_t: &Spectrum, i: usize, r: usize, s: usize) -> Result<f64> {
    if r >= s {
        return Err(Error::IndexOutOfRange { index: r, len: s });
    }
    let (mu, f) = paige_setup(t, s_t, i, &[r, s])?;
    let couplings: f64 = t.offdiag()[r..s].iter().product();
    let lead = paige_char_recurrence(t, 0, r, mu)?;
    let trail = paige_char_recurrence(t, s + 1, t.dim(), mu)?;
    Ok(couplings * lead * trail / f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolve::{eigh, tridiagonalize};

    fn spectrum_of(v: &[f64]) -> Spectrum {
        Spectrum::from_unsorted(v.to_vec()).unwrap()
    }

    fn golden_a() -> HermitianMatrix {
        HermitianMatrix::from_real_rows(&[&[1.0, 1.0, -1.0], &[1.0, 3.0, 1.0], &[-1.0, 1.0, 3.0]]).unwrap()
    }

    const R2: f64 = core::f64::consts::SQRT_2;

    #[test]
    fn paired_magnitude_examples() {
        let sa = spectrum_of(&[0.0, 3.0, 4.0]);
        let sm1 = spectrum_of(&[2.0, 4.0]);
        assert!((magnitude_sq(&sa, &sm1, 0, 1e-8).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let d = magnitude_sq_detail(&sa, &sm1, 2, 1e-8).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(d.exact_zero);
        assert_eq!(magnitude_sq(&spectrum_of(&[1.0, 2.0, 3.0]), &spectrum_of(&[2.0, 3.0]), 0, 1e-8).unwrap(), 1.0);
        let sm2 = spectrum_of(&[2.0 - R2, 2.0 + R2]);
        assert!((magnitude_sq(&sa, &sm2, 1, 1e-8).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn paired_magnitude_errors() {
        let sa = spectrum_of(&[0.0, 3.0, 4.0]);
        assert!(matches!(magnitude_sq(&sa, &spectrum_of(&[5.0, 6.0]), 0, 1e-8), Err(Error::InterlacingViolation { .. })));
        assert!(matches!(magnitude_sq(&sa, &spectrum_of(&[2.0]), 0, 1e-8), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            magnitude_sq(&spectrum_of(&[1.0, 1.0, 2.0]), &spectrum_of(&[1.0, 2.0]), 0, 1e-8),
            Err(Error::DegenerateEigenvalue { index: 0, multiplicity: 2 })
        ));
    }

    #[test]
    fn charpoly_examples() {
        let sa = spectrum_of(&[0.0, 3.0, 4.0]);
        let sm1 = spectrum_of(&[2.0, 4.0]);
        let sm2 = spectrum_of(&[2.0 - R2, 2.0 + R2]);
        assert!((magnitude_sq_charpoly(&sa, &sm1, 0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((magnitude_sq_charpoly(&sa, &sm2, 0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        let d = spectrum_of(&[1.0, 2.0, 3.0]);
        for (j, minor) in [spectrum_of(&[2.0, 3.0]), spectrum_of(&[1.0, 3.0]), spectrum_of(&[1.0, 2.0])].iter().enumerate() {
            for i in 0..3 {
                let a = magnitude_sq_charpoly(&d, minor, i).unwrap();
                let b = magnitude_sq(&d, minor, i, 1e-8).unwrap();
                assert!((a - b).abs() < 1e-12);
                assert_eq!(b, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn group_mass_examples() {
        let sa = spectrum_of(&[1.0, 1.0, 2.0]);
        let g = spectral::group_multiplicities(&sa, 1e-8).unwrap();
        let mass = magnitude_group(&sa, &spectrum_of(&[1.0, 2.0]), &g.groups()[0], 1e-8).unwrap();
        assert!((mass - 1.0).abs() < 1e-15);
        // minor lacking the forced copy
        assert!(magnitude_group(&sa, &spectrum_of(&[1.5, 2.0]), &g.groups()[0], 1e-8).is_err());

        let sa = spectrum_of(&[0.0, 3.0, 4.0]);
        let sm = spectrum_of(&[2.0 - R2, 2.0 + R2]);
        let g = spectral::group_multiplicities(&sa, 1e-8).unwrap();
        for (i, grp) in g.groups().iter().enumerate() {
            let m = magnitude_group(&sa, &sm, grp, 1e-8).unwrap();
            assert!((m - magnitude_sq(&sa, &sm, i, 1e-8).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn golden_table() {
        let t = magnitude_table(&golden_a()).unwrap();
        let want = [[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0], [1.0 / 3.0; 3], [0.0, 0.5, 0.5]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((t.value(i, j) - want[i][j]).abs() < 1e-12, "({i},{j}) = {}", t.value(i, j));
            }
        }
        assert_eq!(t.flag(2, 0), EntryFlag::ExactZero);
        assert_eq!(t.flag(0, 0), EntryFlag::Computed);
    }

    #[test]
    fn identity_matrix_table_is_one_group() {
        let id = HermitianMatrix::from_diagonal(&[1.0, 1.0, 1.0]).unwrap();
        let t = magnitude_table(&id).unwrap();
        assert_eq!(t.grouping().groups().len(), 1);
        for j in 0..3 {
            assert_eq!(t.column_masses(j), vec![(1.0, 1.0)]);
            assert_eq!(t.flag(1, j), EntryFlag::DegenerateGroupMass);
        }
    }

    #[test]
    fn one_by_one() {
        let a = HermitianMatrix::from_diagonal(&[4.2]).unwrap();
        let t = magnitude_table(&a).unwrap();
        assert_eq!(t.value(0, 0), 1.0);
        let s = spectrum_of(&[4.2]);
        assert_eq!(cross_term(&a, &s, 0, 0, 0).unwrap().value, Complex64::new(1.0, 0.0));
        assert_eq!(magnitude_alternate(&a, 4.2, 0).unwrap(), 1.0);
    }

    #[test]
    fn cross_term_golden() {
        let a = golden_a();
        let s = spectrum_of(&[0.0, 3.0, 4.0]);
        let c = cross_term(&a, &s, 0, 0, 1).unwrap();
        assert!((c.value - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 1e-14);
        let d = cross_term(&a, &s, 0, 0, 0).unwrap();
        assert!((d.value.re - 2.0 / 3.0).abs() < 1e-14 && d.value.im == 0.0);
    }

    #[test]
    fn alternate_golden() {
        let a = golden_a();
        assert!((magnitude_alternate(&a, 0.0, 0).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!(matches!(magnitude_alternate(&a, 4.0, 0), Err(Error::SingularShift { .. })));
        // λ = 3 lies strictly inside the minor spectra: indefinite shift
        assert!((magnitude_alternate(&a, 3.0, 1).unwrap() - 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn block_split_roundtrip() {
        let a = golden_a();
        for j in 0..3 {
            let s = BlockSplit::new(&a, j).unwrap();
            assert_eq!(s.reassemble(), a);
        }
        let s = BlockSplit::new(&a, 0).unwrap();
        assert_eq!(s.x, vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn recurrence_examples() {
        let t = SymmetricTridiagonal::new(vec![0.0, 0.0], vec![1.0]).unwrap();
        assert_eq!(paige_char_recurrence(&t, 1, 1, 3.0).unwrap(), 1.0);
        assert_eq!(paige_char_recurrence(&t, 0, 2, 1.0).unwrap(), 0.0);
        assert!(paige_char_recurrence(&t, 0, 3, 1.0).is_err());
        let s = spectrum_of(&[-1.0, 1.0]);
        assert!((paige_magnitude(&t, &s, 1, 0).unwrap() - 0.5).abs() < 1e-15);
        assert!((paige_cross(&t, &s, 1, 0, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!((paige_cross(&t, &s, 0, 0, 1).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn paige_agrees_with_table_of_tridiagonalized_golden_matrix() {
        let (t, _) = tridiagonalize(&golden_a());
        let h = t.to_hermitian();
        let table = magnitude_table(&h).unwrap();
        let s = table.spectrum().clone();
        for i in 0..3 {
            let mut total = 0.0;
            for r in 0..3 {
                let p = paige_magnitude(&t, &s, i, r).unwrap();
                total += p;
                assert!((p - table.value(i, r)).abs() < 1e-10);
            }
            assert!((total - 1.0).abs() < 1e-8);
        }
        let e = eigh(&h).unwrap();
        for i in 0..3 {
            for r in 0..3 {
                for q in r + 1..3 {
                    let want = (e.component(i, r) * e.component(i, q).conj()).re;
                    assert!((paige_cross(&t, &s, i, r, q).unwrap() - want).abs() < 1e-10);
                }
            }
        }
    }
}
