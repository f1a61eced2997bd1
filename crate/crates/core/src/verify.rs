//! Numerical checks of the identity and its consequences.
//!
//! Every check returns a [`CheckReport`] with an absolute deviation and the
//! absolute tolerance it was held to. Tolerances are per-check constants
//! multiplied by the natural scale of the quantities compared.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math when std is not linked
use num_traits::Float;
use rand::Rng;

use crate::eigensolve::{eigh, eigh_jacobi, eigh_tridiag, eigvalsh, tridiagonalize, Spectrum, UnitaryFactor};
use crate::error::{Error, Result};
use crate::identity::{self, minor_spectra, MagnitudeTable};
use crate::matrix::{self, ComplexMatrix, HermitianMatrix, IndexSet};
use crate::phase;
use crate::sample;
use crate::spectral::{self, default_tolerance, group_multiplicities};

pub const INTERLACING_REL_TOL: f64 = 1e-9;
pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const JACOBI_REL_TOL: f64 = 1e-9;
pub const SYMMETRIC_POLY_REL_TOL: f64 = 1e-9;
pub const MOMENT_REL_TOL: f64 = 1e-8;
pub const RESOLVENT_REL_TOL: f64 = 1e-8;
/// Probes closer than this (relative to the spread) to an eigenvalue are
/// rejected.
pub const POLE_EXCLUSION: f64 = 1e-6;
pub const PERTURBATION_CONSTANT: f64 = 10.0;
pub const CAUCHY_BINET_REL_TOL: f64 = 1e-8;
pub const GENERALIZED_REL_TOL: f64 = 1e-7;
pub const DUALITY_TOL: f64 = 1e-9;
pub const PATH_AGREEMENT_TOL: f64 = 1e-7;
pub const METAMORPHIC_TOL: f64 = 1e-9;
pub const SOLVER_AGREEMENT_REL_TOL: f64 = 1e-10;
pub const RESIDUAL_REL_TOL: f64 = 1e-9;
pub const ORTHONORMALITY_TOL: f64 = 1e-10;
pub const PHASE_ORTHOGONALITY_TOL: f64 = 1e-6;
pub const RECONSTRUCTION_REL_TOL: f64 = 1e-7;
pub const PAIGE_TOL: f64 = 1e-8;
pub const DEGENERATE_NUMERATOR_REL_TOL: f64 = 1e-8;

/// Outcome of one check. `passed` holds exactly when
/// `max_abs_deviation ≤ tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check_name: String,
    pub passed: bool,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    /// Human-readable locations of failures, e.g. `"column 2"`.
    pub witnesses: Vec<String>,
}

impl CheckReport {
    pub fn new(check_name: impl Into<String>, max_abs_deviation: f64, tolerance: f64, witnesses: Vec<String>) -> Self {
        Self { check_name: check_name.into(), passed: max_abs_deviation <= tolerance, max_abs_deviation, tolerance, witnesses }
    }

    /// A check that could not run; `reason` goes into the witnesses.
    pub fn errored(check_name: impl Into<String>, reason: &Error) -> Self {
        Self {
            check_name: check_name.into(),
            passed: false,
            max_abs_deviation: f64::INFINITY,
            tolerance: 0.0,
            witnesses: vec![reason.to_string()],
        }
    }

    /// `deviation / tolerance`; values above 1 fail.
    pub fn ratio(&self) -> f64 {
        if self.max_abs_deviation == 0.0 {
            0.0
        } else if self.max_abs_deviation.is_nan() {
            f64::INFINITY
        } else {
            self.max_abs_deviation / self.tolerance
        }
    }

    /// Folds several reports into one under `check_name`, keeping the worst
    /// deviation-to-tolerance ratio and every witness.
    pub fn merge(check_name: impl Into<String>, reports: Vec<CheckReport>) -> Self {
        let name = check_name.into();
        let mut worst: Option<CheckReport> = None;
        let mut witnesses = Vec::new();
        for r in reports {
            witnesses.extend(r.witnesses.iter().cloned());
            if worst.as_ref().is_none_or(|w| r.ratio() > w.ratio()) {
                worst = Some(r);
            }
        }
        match worst {
            Some(w) => Self { check_name: name, witnesses, ..w },
            None => Self::new(name, 0.0, 0.0, witnesses),
        }
    }
}

fn scaled_tol(rel: f64, scale: f64) -> f64 {
    rel * scale
}

/// `λ_k − slack ≤ ξ_k ≤ λ_{k+1} + slack` with
/// `slack = 1e-9·max(spread, max|λ|, 1)`.
pub fn check_interlacing(s_a: &Spectrum, s_mj: &Spectrum) -> Result<CheckReport> {
    if s_mj.len() + 1 != s_a.len() {
        return Err(Error::DimensionMismatch { expected: s_a.len().saturating_sub(1), found: s_mj.len() });
    }
    let slack = INTERLACING_REL_TOL * s_a.spread().max(s_a.max_abs()).max(1.0);
    let (la, xi) = (s_a.values(), s_mj.values());
    let mut worst: f64 = 0.0;
    let mut witnesses = Vec::new();
    for (k, &x) in xi.iter().enumerate() {
        let dev = (la[k] - x).max(x - la[k + 1]).max(0.0);
        if dev > slack {
            witnesses.push(format!("minor eigenvalue {k}"));
        }
        worst = worst.max(dev);
    }
    Ok(CheckReport::new("interlacing", worst, slack, witnesses))
}

/// Aggregated row sums equal the group multiplicity and column sums equal
/// 1, within `1e-8·n`.
pub fn check_normalization(table: &MagnitudeTable) -> CheckReport {
    let n = table.dim();
    let tol = NORMALIZATION_TOL * n as f64;
    let mut worst: f64 = 0.0;
    let mut witnesses = Vec::new();
    for (g, sum) in table.row_sums() {
        let dev = (sum - g.len as f64).abs();
        if !(dev <= tol) {
            witnesses.push(format!("row {}", g.start));
        }
        worst = worst.max(dev);
    }
    for (j, sum) in table.column_sums().into_iter().enumerate() {
        let dev = (sum - 1.0).abs();
        if !(dev <= tol) {
            witnesses.push(format!("column {j}"));
        }
        worst = worst.max(dev);
    }
    CheckReport::new("normalization", worst, tol, witnesses)
}

fn check_minor_count(s_a: &Spectrum, minors: &[Spectrum]) -> Result<()> {
    let n = s_a.len();
    if minors.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: minors.len() });
    }
    if let Some(m) = minors.iter().find(|m| m.len() + 1 != n) {
        return Err(Error::DimensionMismatch { expected: n.saturating_sub(1), found: m.len() });
    }
    Ok(())
}

/// `p'_A(λ) = Σ_j p_{M_j}(λ)` at the probe `λ`, relative to
/// `Σ_i |∏_{k≠i}(λ − λ_k)|`.
pub fn check_jacobi_formula(s_a: &Spectrum, minors: &[Spectrum], lambda: Complex64) -> Result<CheckReport> {
    check_minor_count(s_a, minors)?;
    let terms = spectral::derivative_terms(s_a, lambda);
    let lhs: Complex64 = terms.iter().sum();
    let rhs: Complex64 = minors.iter().map(|m| spectral::char_poly_eval(m, lambda)).sum();
    let scale: f64 = terms.iter().map(|t| t.norm()).sum::<f64>()
        + minors.iter().map(|m| spectral::char_poly_eval(m, lambda).norm()).sum::<f64>();
    let dev = (lhs - rhs).norm();
    let tol = scaled_tol(JACOBI_REL_TOL, scale);
    let witnesses = if dev <= tol { vec![] } else { vec![format!("probe {lambda}")] };
    Ok(CheckReport::new("jacobi_formula", dev, tol, witnesses))
}

/// `(n − k)·S_k(A) = Σ_j S_k(M_j)` for `1 ≤ k ≤ n − 1`.
pub fn check_symmetric_poly_relation(s_a: &Spectrum, minors: &[Spectrum], k: usize) -> Result<CheckReport> {
    let n = s_a.len();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    check_minor_count(s_a, minors)?;
    let weight = (n - k) as f64;
    let lhs = weight * spectral::elementary_symmetric(s_a, k)?;
    let mut rhs = 0.0;
    let mut scale = weight * spectral::elementary_symmetric_abs(s_a, k);
    for m in minors {
        rhs += spectral::elementary_symmetric(m, k)?;
        scale += spectral::elementary_symmetric_abs(m, k);
    }
    let dev = (lhs - rhs).abs();
    let tol = scaled_tol(SYMMETRIC_POLY_REL_TOL, scale);
    let witnesses = if dev <= tol { vec![] } else { vec![format!("k = {k}")] };
    Ok(CheckReport::new("symmetric_poly", dev, tol, witnesses))
}

/// `(A^m)_{jj} = Σ λ^m·mass` over the multiplicity groups of the table,
/// within `1e-8·‖A‖₂^m`.
pub fn check_moment_identity(a: &HermitianMatrix, table: &MagnitudeTable, m: usize) -> Result<CheckReport> {
    let n = a.dim();
    if table.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: table.dim() });
    }
    if m >= n.max(1) && m != 0 {
        return Err(Error::IndexOutOfRange { index: m, len: n });
    }
    let mut power = ComplexMatrix::identity(n);
    for _ in 0..m {
        power = power.matmul(a.as_matrix())?;
    }
    let norm = table.spectrum().max_abs();
    let tol = scaled_tol(MOMENT_REL_TOL, norm.powi(m as i32));
    let mut worst: f64 = 0.0;
    let mut witnesses = Vec::new();
    for j in 0..n {
        let rhs: f64 = table.column_masses(j).iter().map(|&(l, mass)| l.powi(m as i32) * mass).sum();
        let dev = (power[(j, j)] - rhs).norm();
        if !(dev <= tol) {
            witnesses.push(format!("m = {m}, diagonal {j}"));
        }
        worst = worst.max(dev);
    }
    Ok(CheckReport::new("moment", worst, tol, witnesses))
}

fn pole_distance(s_a: &Spectrum, lambda: Complex64) -> f64 {
    s_a.values().iter().map(|&l| (lambda - l).norm()).fold(f64::INFINITY, f64::min)
}

/// `∏(λ − ξ_k) / ∏(λ − λ_k) = Σ mass/(λ − λ*)` at the probe, and at each
/// minor eigenvalue away from the poles the weighted sum vanishes.
pub fn check_resolvent_identity(
    s_a: &Spectrum,
    s_mj: &Spectrum,
    table: &MagnitudeTable,
    j: usize,
    lambda: Complex64,
) -> Result<CheckReport> {
    if s_mj.len() + 1 != s_a.len() || table.dim() != s_a.len() {
        return Err(Error::DimensionMismatch { expected: s_a.len().saturating_sub(1), found: s_mj.len() });
    }
    if j >= s_a.len() {
        return Err(Error::IndexOutOfRange { index: j, len: s_a.len() });
    }
    let radius = POLE_EXCLUSION * s_a.spread();
    let distance = pole_distance(s_a, lambda);
    if distance <= radius || distance == 0.0 {
        return Err(Error::ProbeTooCloseToPole { distance });
    }
    let masses = table.column_masses(j);
    let weighted = |z: Complex64| -> (Complex64, f64) {
        masses.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(sum, abs), &(l, mass)| {
            let t = mass / (z - l);
            (sum + t, abs + t.norm())
        })
    };

    let lhs = spectral::char_poly_eval(s_mj, lambda) / spectral::char_poly_eval(s_a, lambda);
    let (rhs, rhs_abs) = weighted(lambda);
    let mut reports = vec![{
        let dev = (lhs - rhs).norm();
        let tol = scaled_tol(RESOLVENT_REL_TOL, lhs.norm().max(rhs_abs));
        let w = if dev <= tol { vec![] } else { vec![format!("column {j}, probe {lambda}")] };
        CheckReport::new("resolvent", dev, tol, w)
    }];
    let exclusion = POLE_EXCLUSION * s_a.spread().max(1.0);
    for (k, &xi) in s_mj.values().iter().enumerate() {
        let z = Complex64::new(xi, 0.0);
        if pole_distance(s_a, z) <= exclusion {
            continue;
        }
        let (sum, abs) = weighted(z);
        let dev = sum.norm();
        let tol = scaled_tol(RESOLVENT_REL_TOL, abs);
        let w = if dev <= tol { vec![] } else { vec![format!("column {j}, minor eigenvalue {k}")] };
        reports.push(CheckReport::new("resolvent", dev, tol, w));
    }
    Ok(CheckReport::merge("resolvent", reports))
}

/// Default step `1e-5·‖A‖_F` (or `1e-5` for the zero matrix).
pub fn default_perturbation_step(a: &HermitianMatrix) -> f64 {
    let norm = a.frobenius_norm();
    1e-5 * if norm == 0.0 { 1.0 } else { norm }
}

/// Finite-difference slope `(λ_i(A + ε·e_j e_j*) − λ_i(A))/ε` against
/// `|v_{i,j}|²`, within `10·‖A‖_F·ε/gap²` plus a round-off floor.
pub fn check_perturbation(a: &HermitianMatrix, i: usize, j: usize, eps: f64) -> Result<CheckReport> {
    let n = a.dim();
    for idx in [i, j] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    if !(eps != 0.0 && eps.is_finite()) {
        return Err(Error::InvalidTolerance);
    }
    let s_a = eigvalsh(a)?;
    let grouping = group_multiplicities(&s_a, default_tolerance(&s_a))?;
    if let Some(g) = grouping.group_of(i).filter(|g| !g.is_simple()) {
        return Err(Error::DegenerateEigenvalue { index: i, multiplicity: g.len });
    }
    let mut bumped = a.as_matrix().clone();
    bumped[(j, j)].re += eps;
    let s_b = eigvalsh(&HermitianMatrix::new(bumped)?)?;
    let slope = (s_b.values()[i] - s_a.values()[i]) / eps;
    let mag = identity::magnitude_sq(&s_a, &identity::minor_spectrum(a, j)?, i, default_tolerance(&s_a))?;
    let norm = a.frobenius_norm();
    let gap = s_a.gap(i);
    let truncation = if gap.is_finite() { PERTURBATION_CONSTANT * norm * eps.abs() / (gap * gap) } else { 0.0 };
    let roundoff = 100.0 * n as f64 * f64::EPSILON * norm.max(1.0) / eps.abs();
    let tol = truncation + roundoff;
    let dev = (slope - mag).abs();
    let w = if dev <= tol { vec![] } else { vec![format!("eigenvalue {i}, component {j}")] };
    Ok(CheckReport::new("perturbation", dev, tol, w))
}

/// `det(B*·A·B) = (−1)^{n−1}·p'_A(0)·|det(B | v)|²` for `A` with a simple
/// zero eigenvalue and null vector `v`.
pub fn check_cauchy_binet(a: &HermitianMatrix, b: &ComplexMatrix, v: &[Complex64]) -> Result<CheckReport> {
    let n = a.dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    if b.rows() != n || b.cols() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, found: b.cols() });
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    let s = eigvalsh(a)?;
    let (i0, nearest) =
        s.values().iter().enumerate().map(|(k, &l)| (k, l)).min_by(|x, y| x.1.abs().total_cmp(&y.1.abs())).expect("n ≥ 2");
    let norm2 = s.max_abs();
    if nearest.abs() > 1e-8 * norm2.max(1.0) {
        return Err(Error::NoZeroEigenvalue { nearest });
    }
    let grouping = group_multiplicities(&s, default_tolerance(&s))?;
    if let Some(g) = grouping.group_of(i0).filter(|g| !g.is_simple()) {
        return Err(Error::DegenerateEigenvalue { index: i0, multiplicity: g.len });
    }
    let lhs = matrix::determinant(&b.adjoint().matmul(a.as_matrix())?.matmul(b)?)?;
    let dp = spectral::char_poly_derivative_at(&s, i0)?;
    let augmented = ComplexMatrix::from_fn(n, n, |r, c| if c < n - 1 { b[(r, c)] } else { v[r] });
    let det_bv = matrix::determinant(&augmented)?;
    let sign = if (n - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = sign * dp * det_bv.norm_sqr();
    let columns: f64 = (0..n - 1).map(|c| (0..n).map(|r| b[(r, c)].norm_sqr()).sum::<f64>()).product();
    let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let scale = norm2.powi(n as i32 - 1).max(dp.abs()) * columns * vnorm.max(1.0);
    let dev = (lhs - rhs).norm();
    let tol = scaled_tol(CAUCHY_BINET_REL_TOL, scale);
    let w = if dev <= tol { vec![] } else { vec![format!("null index {i0}")] };
    Ok(CheckReport::new("cauchy_binet", dev, tol, w))
}

fn index_sum(s: &IndexSet) -> usize {
    s.index_sum()
}

fn sign_of(parity: usize) -> f64 {
    if parity.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(−1)^{ΣJ+ΣK}·conj(det U[J,I])·det U[K,I]·∏_{i∈I, j∉I}(λ_j − λ_i)
/// = det M_{J,K}(∏_{i∈I}(A − λ_i)`), where `U[R,C]` keeps rows `R` and
/// columns `C`, `M_{J,K}` removes rows `J` and columns `K`, and `U` holds
/// the eigenvectors as columns.
pub fn check_generalized_identity(
    a: &HermitianMatrix,
    i_set: &IndexSet,
    j_set: &IndexSet,
    k_set: &IndexSet,
) -> Result<CheckReport> {
    let n = a.dim();
    let m = i_set.len();
    for s in [j_set, k_set] {
        if s.len() != m {
            return Err(Error::CardinalityMismatch { rows: m, cols: s.len() });
        }
    }
    if m >= n {
        return Err(Error::DimensionTooSmall { n });
    }
    for s in [i_set, j_set, k_set] {
        if let Some(&bad) = s.as_slice().iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
    }
    let e = eigh(a)?;
    let u = e.vectors();
    let lam = e.spectrum().values();
    let det_j = matrix::determinant(&u.select(j_set.as_slice(), i_set.as_slice()))?;
    let det_k = matrix::determinant(&u.select(k_set.as_slice(), i_set.as_slice()))?;
    let outside = i_set.complement(n);
    let gaps: f64 = i_set.as_slice().iter().flat_map(|&i| outside.iter().map(move |&j| lam[j] - lam[i])).product();
    let lhs = det_j.conj() * det_k * gaps * sign_of(index_sum(j_set) + index_sum(k_set));

    let mut product = ComplexMatrix::identity(n);
    for &i in i_set.as_slice() {
        product = product.matmul(&a.shifted(-lam[i]).into_matrix())?;
    }
    let rhs = matrix::determinant(&matrix::general_minor(&product, j_set, k_set)?)?;
    let scale: f64 = i_set
        .as_slice()
        .iter()
        .map(|&i| lam.iter().map(|&l| (l - lam[i]).abs()).fold(0.0, f64::max).powi((n - m) as i32))
        .product();
    let dev = (lhs - rhs).norm();
    let tol = scaled_tol(GENERALIZED_REL_TOL, scale);
    let w = if dev <= tol {
        vec![]
    } else {
        vec![format!("I = {:?}, J = {:?}, K = {:?}", i_set.as_slice(), j_set.as_slice(), k_set.as_slice())]
    };
    Ok(CheckReport::new("generalized_identity", dev, tol, w))
}

/// `det M_{J,I}(U) = (−1)^{ΣI+ΣJ}·conj(det U[J,I])·det U` for unitary `U`.
pub fn check_minor_duality(u: &UnitaryFactor, i_set: &IndexSet, j_set: &IndexSet) -> Result<CheckReport> {
    let n = u.dim();
    if i_set.len() != j_set.len() {
        return Err(Error::CardinalityMismatch { rows: j_set.len(), cols: i_set.len() });
    }
    for s in [i_set, j_set] {
        if let Some(&bad) = s.as_slice().iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
    }
    let q = u.as_matrix();
    let lhs = det_or_one(&q.select(&j_set.complement(n), &i_set.complement(n)))?;
    let kept = matrix::determinant(&q.select(j_set.as_slice(), i_set.as_slice()))?;
    let rhs = kept.conj() * matrix::determinant(q)? * sign_of(index_sum(i_set) + index_sum(j_set));
    let dev = (lhs - rhs).norm();
    let w = if dev <= DUALITY_TOL { vec![] } else { vec![format!("I = {:?}, J = {:?}", i_set.as_slice(), j_set.as_slice())] };
    Ok(CheckReport::new("minor_duality", dev, DUALITY_TOL, w))
}

fn det_or_one(m: &ComplexMatrix) -> Result<Complex64> {
    if m.rows() == 0 {
        Ok(Complex64::new(1.0, 0.0))
    } else {
        matrix::determinant(m)
    }
}

/// Probe points in `[λ_min − spread, λ_max + spread]`, at least
/// `1e-6·max(spread, 1)` from every eigenvalue.
pub fn probe_points(rng: &mut impl Rng, s_a: &Spectrum, count: usize) -> Vec<f64> {
    let width = s_a.spread().max(1.0);
    let (lo, hi) = match (s_a.values().first(), s_a.values().last()) {
        (Some(&lo), Some(&hi)) => (lo - width, hi + width),
        _ => (-1.0, 1.0),
    };
    let exclusion = POLE_EXCLUSION * width;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.random_range(lo..hi);
        if s_a.values().iter().all(|&l| (x - l).abs() > exclusion) {
            out.push(x);
        }
    }
    out
}

fn entrywise(name: &str, got: &MagnitudeTable, want: impl Fn(usize, usize) -> f64, tol: f64) -> CheckReport {
    let n = got.dim();
    let mut worst: f64 = 0.0;
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let dev = (got.value(i, j) - want(i, j)).abs();
            if !(dev <= tol) {
                witnesses.push(format!("({i}, {j})"));
            }
            worst = worst.max(dev);
        }
    }
    CheckReport::new(name, worst, tol, witnesses)
}

fn run(name: &str, f: impl FnOnce() -> Result<CheckReport>) -> CheckReport {
    f().unwrap_or_else(|e| CheckReport::errored(name, &e))
}

/// Runs every applicable check on `A`; probes, random index sets and
/// metamorphic parameters come from `seed`. Checks whose preconditions do
/// not hold (e.g. phase recovery on a repeated spectrum) are left out.
pub fn run_full_suite(a: &HermitianMatrix, seed: u64) -> Result<Vec<CheckReport>> {
    let mut rng = sample::rng(seed);
    let n = a.dim();
    let decomposition = eigh(a)?;
    let s_a = decomposition.spectrum().clone();
    let tol = default_tolerance(&s_a);
    let grouping = group_multiplicities(&s_a, tol)?;
    let minors = minor_spectra(a)?;
    let table = identity::magnitude_table_with(a, s_a.clone(), tol)?;
    let oracle = MagnitudeTable::from_values(s_a.clone(), decomposition.magnitudes(), tol)?;
    let norm_f = a.frobenius_norm();
    let simple: Vec<usize> = (0..n).filter(|&i| grouping.is_simple(i)).collect();
    let mut reports = Vec::new();

    reports.push(CheckReport::merge(
        "interlacing",
        minors.iter().map(|m| run("interlacing", || check_interlacing(&s_a, m))).collect(),
    ));
    reports.push(check_normalization(&table));

    let probes = probe_points(&mut rng, &s_a, 5);
    reports.push(CheckReport::merge(
        "jacobi_formula",
        probes.iter().map(|&p| run("jacobi_formula", || check_jacobi_formula(&s_a, &minors, Complex64::new(p, 0.0)))).collect(),
    ));
    if n >= 2 {
        reports.push(CheckReport::merge(
            "symmetric_poly",
            (1..n).map(|k| run("symmetric_poly", || check_symmetric_poly_relation(&s_a, &minors, k))).collect(),
        ));
    }
    reports.push(CheckReport::merge("moment", (0..n).map(|m| run("moment", || check_moment_identity(a, &table, m))).collect()));
    reports.push(CheckReport::merge(
        "resolvent",
        (0..n)
            .flat_map(|j| probes.iter().take(3).map(move |&p| (j, p)))
            .map(|(j, p)| run("resolvent", || check_resolvent_identity(&s_a, &minors[j], &table, j, Complex64::new(p, 0.0))))
            .collect(),
    ));
    if !simple.is_empty() {
        let eps = default_perturbation_step(a);
        reports.push(CheckReport::merge(
            "perturbation",
            simple
                .iter()
                .flat_map(|&i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| run("perturbation", || check_perturbation(a, i, j, eps)))
                .collect(),
        ));
    }

    if n >= 2 {
        if let Some(&i) = simple.first() {
            let shifted = a.shifted(-s_a.values()[i]);
            let b = sample::complex_matrix(&mut rng, n, n - 1, true);
            let v = decomposition.vector(i);
            reports.push(run("cauchy_binet", || check_cauchy_binet(&shifted, &b, &v)));
        }
        let mut generalized = Vec::new();
        for m in 1..n.min(3) {
            let sets: Result<Vec<IndexSet>> = (0..3).map(|_| sample::index_set(&mut rng, n, m)).collect();
            generalized.push(run("generalized_identity", || {
                let sets = sets?;
                check_generalized_identity(a, &sets[0], &sets[1], &sets[2])
            }));
        }
        reports.push(CheckReport::merge("generalized_identity", generalized));
        let unitary = decomposition.unitary();
        let mut duality = Vec::new();
        for m in 1..=n {
            let sets: Result<Vec<IndexSet>> = (0..2).map(|_| sample::index_set(&mut rng, n, m)).collect();
            duality.push(run("minor_duality", || {
                let sets = sets?;
                check_minor_duality(&unitary, &sets[0], &sets[1])
            }));
        }
        reports.push(CheckReport::merge("minor_duality", duality));
    }

    reports.push(entrywise("path_oracle", &table, |i, j| oracle.value(i, j), PATH_AGREEMENT_TOL));
    reports.extend(simple_path_reports(a, &s_a, &minors, &table, &simple));
    reports.extend(degenerate_reports(&s_a, &minors, &grouping));
    reports.extend(metamorphic_reports(&mut rng, a, &table));
    reports.extend(solver_reports(a, &decomposition, norm_f));
    reports.extend(phase_reports(a, &s_a, &simple, norm_f));
    reports.push(run("paige", || paige_report(a)));
    Ok(reports)
}

fn simple_path_reports(
    a: &HermitianMatrix,
    s_a: &Spectrum,
    minors: &[Spectrum],
    table: &MagnitudeTable,
    simple: &[usize],
) -> Vec<CheckReport> {
    if simple.is_empty() {
        return Vec::new();
    }
    let n = a.dim();
    let pairs = || simple.iter().flat_map(|&i| (0..n).map(move |j| (i, j)));
    // `None` marks a pair where the path does not apply.
    let compare = |name: &'static str, f: &dyn Fn(usize, usize) -> Result<Option<f64>>| {
        CheckReport::merge(
            name,
            pairs()
                .map(|(i, j)| {
                    run(name, || {
                        let dev = f(i, j)?.map_or(0.0, |v| (v - table.value(i, j)).abs());
                        let w = if dev <= PATH_AGREEMENT_TOL { vec![] } else { vec![format!("({i}, {j})")] };
                        Ok(CheckReport::new(name, dev, PATH_AGREEMENT_TOL, w))
                    })
                })
                .collect(),
        )
    };
    vec![
        compare("path_charpoly", &|i, j| identity::magnitude_sq_charpoly(s_a, &minors[j], i).map(Some)),
        compare("path_alternate", &|i, j| match identity::magnitude_alternate(a, s_a.values()[i], j) {
            Err(Error::SingularShift { .. }) => Ok(None),
            other => other.map(Some),
        }),
        compare("path_cross_term", &|i, j| Ok(Some(identity::cross_term(a, s_a, i, j, j)?.value.re))),
    ]
}

fn degenerate_reports(s_a: &Spectrum, minors: &[Spectrum], grouping: &spectral::MultiplicityGrouping) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let tol = grouping.tolerance();
    let scale = s_a.spread().max(1.0).powi(s_a.len() as i32 - 1);
    let mut numerators = Vec::new();
    for (j, m) in minors.iter().enumerate() {
        for (i, &l) in s_a.values().iter().enumerate() {
            if m.values().iter().any(|&x| (x - l).abs() <= tol) {
                let dev = spectral::char_poly_eval_real(m, l).abs();
                let limit = DEGENERATE_NUMERATOR_REL_TOL * scale;
                let w = if dev <= limit { vec![] } else { vec![format!("({i}, {j})")] };
                numerators.push(CheckReport::new("degenerate_numerator", dev, limit, w));
            }
        }
    }
    if !numerators.is_empty() {
        out.push(CheckReport::merge("degenerate_numerator", numerators));
    }
    if grouping.has_repeats() {
        let mut rejected = Vec::new();
        for g in grouping.groups().iter().filter(|g| !g.is_simple()) {
            for (j, m) in minors.iter().enumerate() {
                let ok = matches!(identity::magnitude_sq(s_a, m, g.start, tol), Err(Error::DegenerateEigenvalue { .. }));
                let w = if ok { vec![] } else { vec![format!("group at {}, column {j}", g.start)] };
                rejected.push(CheckReport::new("degenerate_rejection", if ok { 0.0 } else { 1.0 }, 0.0, w));
            }
        }
        out.push(CheckReport::merge("degenerate_rejection", rejected));
    }
    out
}

fn metamorphic_reports(rng: &mut impl Rng, a: &HermitianMatrix, table: &MagnitudeTable) -> Vec<CheckReport> {
    let n = a.dim();
    let norm = a.frobenius_norm().max(1.0);
    let shift = rng.random_range(-2.0..2.0) * norm;
    let factor = rng.random_range(0.5..4.0);
    let perm = sample::permutation(rng, n);
    let phases = sample::phases(rng, n);
    let table_of = |m: Result<HermitianMatrix>| -> Result<MagnitudeTable> { identity::magnitude_table(&m?) };
    let compare = |name: &'static str, other: Result<MagnitudeTable>, map: &dyn Fn(usize) -> usize| {
        run(name, || {
            let other = other?;
            if other.grouping().groups().len() != table.grouping().groups().len() {
                return Ok(CheckReport::new(name, f64::INFINITY, METAMORPHIC_TOL, vec!["grouping changed".to_string()]));
            }
            Ok(entrywise(name, &other, |i, j| table.value(i, map(j)), METAMORPHIC_TOL))
        })
    };
    vec![
        compare("metamorphic_shift", table_of(Ok(a.shifted(shift))), &|j| j),
        compare("metamorphic_scale", table_of(Ok(a.scaled(factor))), &|j| j),
        compare("metamorphic_permutation", table_of(a.permuted(&perm)), &|j| perm[j]),
        compare("metamorphic_phase", table_of(a.phase_conjugated(&phases)), &|j| j),
    ]
}

fn solver_reports(a: &HermitianMatrix, d: &crate::eigensolve::EigenDecomposition, norm_f: f64) -> Vec<CheckReport> {
    let jacobi = run("solver_agreement", || {
        let other = eigh_jacobi(a)?;
        let dev = d.spectrum().values().iter().zip(other.spectrum().values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let tol = SOLVER_AGREEMENT_REL_TOL * norm_f;
        Ok(CheckReport::new("solver_agreement", dev, tol, if dev <= tol { vec![] } else { vec!["spectrum".to_string()] }))
    });
    let residual = d.max_residual(a);
    let res_tol = RESIDUAL_REL_TOL * norm_f;
    let ortho = d.orthonormality_deviation();
    vec![
        jacobi,
        CheckReport::new(
            "eigen_residual",
            residual,
            res_tol,
            if residual <= res_tol { vec![] } else { vec!["eigh".to_string()] },
        ),
        CheckReport::new(
            "orthonormality",
            ortho,
            ORTHONORMALITY_TOL,
            if ortho <= ORTHONORMALITY_TOL { vec![] } else { vec!["eigh".to_string()] },
        ),
    ]
}

fn phase_reports(a: &HermitianMatrix, s_a: &Spectrum, simple: &[usize], norm_f: f64) -> Vec<CheckReport> {
    let n = a.dim();
    let mut out = Vec::new();
    if n >= 2 && simple.len() == n {
        out.push(run("phase_orthogonality", || {
            let mut sum = Complex64::new(0.0, 0.0);
            for i in 0..n {
                sum += phase::pair_product_unchecked(a, s_a, i, 0, 1)?;
            }
            let dev = sum.norm();
            let w = if dev <= PHASE_ORTHOGONALITY_TOL { vec![] } else { vec!["components 0, 1".to_string()] };
            Ok(CheckReport::new("phase_orthogonality", dev, PHASE_ORTHOGONALITY_TOL, w))
        }));
    }
    if !simple.is_empty() {
        let picks: Vec<usize> = {
            let mut p = vec![simple[0], simple[simple.len() / 2], simple[simple.len() - 1]];
            p.dedup();
            p
        };
        let tol = RECONSTRUCTION_REL_TOL * norm_f.max(f64::MIN_POSITIVE);
        out.push(CheckReport::merge(
            "reconstruction_residual",
            picks
                .into_iter()
                .map(|i| {
                    run("reconstruction_residual", || {
                        let r = phase::reconstruct_with_spectrum(a, s_a, i)?;
                        let dev = crate::eigensolve::residual_norm(a, s_a.values()[i], &r.components);
                        let w = if dev <= tol { vec![] } else { vec![format!("eigenvector {i}")] };
                        Ok(CheckReport::new("reconstruction_residual", dev, tol, w))
                    })
                })
                .collect(),
        ));
    }
    out
}

fn paige_report(a: &HermitianMatrix) -> Result<CheckReport> {
    let (t, _) = tridiagonalize(a);
    let e = eigh_tridiag(&t)?;
    let s = e.spectrum();
    let n = t.dim();
    let grouping = group_multiplicities(s, default_tolerance(s))?;
    let mut worst: f64 = 0.0;
    let mut witnesses = Vec::new();
    for i in (0..n).filter(|&i| grouping.is_simple(i)) {
        for r in 0..n {
            let dev = (identity::paige_magnitude(&t, s, i, r)? - e.component(i, r).norm_sqr()).abs();
            if !(dev <= PAIGE_TOL) {
                witnesses.push(format!("({i}, {r})"));
            }
            worst = worst.max(dev);
            for q in r + 1..n {
                let want = (e.component(i, r) * e.component(i, q).conj()).re;
                let dev = (identity::paige_cross(&t, s, i, r, q)? - want).abs();
                if !(dev <= PAIGE_TOL) {
                    witnesses.push(format!("({i}, {r}, {q})"));
                }
                worst = worst.max(dev);
            }
        }
    }
    Ok(CheckReport::new("paige", worst, PAIGE_TOL, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum_of(v: &[f64]) -> Spectrum {
        Spectrum::from_unsorted(v.to_vec()).unwrap()
    }

    fn golden_a() -> HermitianMatrix {
        HermitianMatrix::from_real_rows(&[&[1.0, 1.0, -1.0], &[1.0, 3.0, 1.0], &[-1.0, 1.0, 3.0]]).unwrap()
    }

    const R2: f64 = core::f64::consts::SQRT_2;

    fn golden_minors() -> Vec<Spectrum> {
        vec![spectrum_of(&[2.0, 4.0]), spectrum_of(&[2.0 - R2, 2.0 + R2]), spectrum_of(&[2.0 - R2, 2.0 + R2])]
    }

    #[test]
    fn report_invariant_and_merge() {
        let ok = CheckReport::new("a", 1.0, 2.0, vec![]);
        let bad = CheckReport::new("b", 3.0, 1.0, vec!["x".into()]);
        assert!(ok.passed && !bad.passed);
        let m = CheckReport::merge("m", vec![ok.clone(), bad]);
        assert!(!m.passed);
        assert_eq!(m.max_abs_deviation, 3.0);
        assert_eq!(m.witnesses, vec!["x".to_string()]);
        assert!(CheckReport::merge("m", vec![ok]).passed);
        let nan = CheckReport::new("n", f64::NAN, 1.0, vec![]);
        assert!(!nan.passed);
    }

    #[test]
    fn interlacing_examples() {
        let sa = spectrum_of(&[0.0, 3.0, 4.0]);
        assert!(check_interlacing(&sa, &spectrum_of(&[2.0, 4.0])).unwrap().passed);
        let r = check_interlacing(&sa, &spectrum_of(&[5.0, 6.0])).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witnesses[0], "minor eigenvalue 0");
        assert!(check_interlacing(&sa, &spectrum_of(&[1.0])).is_err());
    }

    #[test]
    fn jacobi_and_symmetric_examples() {
        let sa = spectrum_of(&[0.0, 3.0, 4.0]);
        let r = check_jacobi_formula(&sa, &golden_minors(), Complex64::new(1.0, 0.0)).unwrap();
        assert!(r.passed && r.max_abs_deviation < 1e-14);
        let one = check_jacobi_formula(&spectrum_of(&[2.5]), &[Spectrum::empty()], Complex64::new(7.0, 0.0)).unwrap();
        assert!(one.passed && one.max_abs_deviation == 0.0);
        for k in 1..3 {
            let r = check_symmetric_poly_relation(&sa, &golden_minors(), k).unwrap();
            assert!(r.passed && r.max_abs_deviation < 1e-12, "{r:?}");
        }
        assert!(check_symmetric_poly_relation(&sa, &golden_minors(), 3).is_err());
    }

    #[test]
    fn moment_and_resolvent_examples() {
        let a = golden_a();
        let t = identity::magnitude_table(&a).unwrap();
        for m in 0..3 {
            assert!(check_moment_identity(&a, &t, m).unwrap().passed);
        }
        let sa = spectrum_of(&[0.0, 3.0, 4.0]);
        let r = check_resolvent_identity(&sa, &spectrum_of(&[2.0, 4.0]), &t, 0, Complex64::new(1.0, 0.0)).unwrap();
        assert!(r.passed && r.max_abs_deviation < 1e-12, "{r:?}");
        assert!(matches!(
            check_resolvent_identity(&sa, &spectrum_of(&[2.0, 4.0]), &t, 0, Complex64::new(3.0, 0.0)),
            Err(Error::ProbeTooCloseToPole { .. })
        ));
    }

    #[test]
    fn normalization_detects_corruption() {
        let mut t = identity::magnitude_table(&golden_a()).unwrap();
        assert!(check_normalization(&t).passed);
        t.set_value(0, 0, 0.0);
        let r = check_normalization(&t);
        assert!(!r.passed);
        assert!(r.witnesses.contains(&"row 0".to_string()) && r.witnesses.contains(&"column 0".to_string()));
    }

    #[test]
    fn perturbation_examples() {
        let a = golden_a();
        let r = check_perturbation(&a, 0, 0, 1e-5).unwrap();
        assert!(r.passed && r.max_abs_deviation < 1e-4, "{r:?}");
        assert!(check_perturbation(&a, 2, 0, 1e-5).unwrap().passed);
    }

    #[test]
    fn cauchy_binet_examples() {
        let a = HermitianMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[0.0], &[1.0]]).unwrap();
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let r = check_cauchy_binet(&a, &b, &v).unwrap();
        assert!(r.passed && r.max_abs_deviation < 1e-15);
        let e = eigh(&golden_a()).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[2.0, 2.0], &[0.5, 0.5]]).unwrap();
        assert!(check_cauchy_binet(&golden_a(), &b, &e.vector(0)).unwrap().passed);
        assert!(check_cauchy_binet(&a.shifted(1.0), &b, &v).is_err());
    }

    #[test]
    fn generalized_and_duality_examples() {
        let d = HermitianMatrix::from_diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let s = IndexSet::new(vec![0, 1], 3).unwrap();
        let r = check_generalized_identity(&d, &s, &s, &s).unwrap();
        assert!(r.passed && r.max_abs_deviation < 1e-14);
        let a = golden_a();
        for i in 0..3 {
            for j in 0..3 {
                let (si, sj) = (IndexSet::singleton(i, 3).unwrap(), IndexSet::singleton(j, 3).unwrap());
                assert!(check_generalized_identity(&a, &si, &sj, &sj).unwrap().passed);
            }
        }
        let (c, s) = (0.6, 0.8);
        let u = UnitaryFactor::new(ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap()).unwrap();
        let r = check_minor_duality(&u, &IndexSet::singleton(0, 2).unwrap(), &IndexSet::singleton(1, 2).unwrap()).unwrap();
        assert!(r.passed && r.max_abs_deviation < 1e-15, "{r:?}");
        let id = UnitaryFactor::new(ComplexMatrix::identity(3)).unwrap();
        let s = IndexSet::new(vec![0, 1], 3).unwrap();
        assert!(check_minor_duality(&id, &s, &s).unwrap().passed);
        let bad = IndexSet::singleton(0, 3).unwrap();
        assert!(matches!(check_minor_duality(&id, &s, &bad), Err(Error::CardinalityMismatch { .. })));
    }

    #[test]
    fn full_suite_golden_matrix() {
        let reports = run_full_suite(&golden_a(), 1).unwrap();
        for r in &reports {
            assert!(r.passed, "{r:?}");
            assert!(r.max_abs_deviation < 1e-10 || r.check_name == "perturbation", "{r:?}");
        }
        assert!(reports.iter().any(|r| r.check_name == "reconstruction_residual"));
    }

    #[test]
    fn full_suite_identity_matrix() {
        let id = HermitianMatrix::from_diagonal(&[1.0, 1.0, 1.0]).unwrap();
        let reports = run_full_suite(&id, 5).unwrap();
        for r in &reports {
            assert!(r.passed, "{r:?}");
        }
        assert!(reports.iter().any(|r| r.check_name == "degenerate_rejection"));
        assert!(!reports.iter().any(|r| r.check_name == "perturbation"));
    }

    #[test]
    fn full_suite_is_deterministic() {
        let a = sample::hermitian(&mut sample::rng(4), 5, true);
        assert_eq!(run_full_suite(&a, 9).unwrap(), run_full_suite(&a, 9).unwrap());
    }
}
