//! Relative phases from magnitudes in rotated bases.
//!
//! Rotating coordinates `j, k` by `G` (see [`RotationSpec`]) leaves the
//! spectrum unchanged and maps component `j` of eigenvector `v_i` to
//! `(v_{i,j} + ω·v_{i,k})/√2`. Its squared modulus is
//! `(m_j + m_k)/2 + Re(conj(ω)·v_{i,j}·conj(v_{i,k}))`, so the rotations
//! `ω = 1` and `ω = i` give the real and imaginary parts of
//! `v_{i,j}·conj(v_{i,k})`, each from one extra minor spectrum.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math when std is not linked
use num_traits::Float;

use crate::eigensolve::{eigvalsh, pivot_index, Spectrum};
use crate::error::{Error, Result};
use crate::identity::{magnitude_sq, magnitude_sq_detail, minor_spectrum, MagnitudeDetail};
use crate::matrix::{rotate_pair, HermitianMatrix, RotationSpec};
use crate::spectral::{default_tolerance, group_multiplicities};

/// Below `|v_j|·|v_k| = PHASE_FLOOR` the relative phase is reported as
/// undefined.
pub const PHASE_FLOOR: f64 = 1e-6;

/// Per-component status of a reconstructed eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentFlag {
    Defined,
    /// Magnitude is known but too small for a reliable phase; the entry
    /// holds the (real) magnitude.
    UndefinedPhase,
    /// The component vanishes identically.
    ExactZero,
}

/// Unit eigenvector rebuilt from magnitude data, with component `pivot`
/// real and non-negative.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructedVector {
    pub i: usize,
    pub components: Vec<Complex64>,
    pub pivot: usize,
    pub flags: Vec<ComponentFlag>,
}

impl ReconstructedVector {
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Signs of a real eigenvector relative to its pivot component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVector {
    pub i: usize,
    pub pivot: usize,
    /// Entries in `{−1, 0, 1}`; the pivot entry is 1.
    pub signs: Vec<i8>,
}

struct Context<'a> {
    a: &'a HermitianMatrix,
    s_a: &'a Spectrum,
    tol: f64,
    i: usize,
}

impl<'a> Context<'a> {
    fn new(a: &'a HermitianMatrix, s_a: &'a Spectrum, i: usize) -> Result<Self> {
        let n = a.dim();
        if s_a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: s_a.len() });
        }
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let tol = default_tolerance(s_a);
        let grouping = group_multiplicities(s_a, tol)?;
        if let Some(g) = grouping.group_of(i).filter(|g| !g.is_simple()) {
            return Err(Error::DegenerateEigenvalue { index: i, multiplicity: g.len });
        }
        Ok(Self { a, s_a, tol, i })
    }

    fn magnitude(&self, j: usize) -> Result<MagnitudeDetail> {
        magnitude_sq_detail(self.s_a, &minor_spectrum(self.a, j)?, self.i, self.tol)
    }

    /// `|(G v_i)_j|²` for the rotation `(j, k, ω)`. The spectrum of the
    /// rotated matrix is `s_a` itself; only its minor is re-solved.
    fn rotated(&self, j: usize, k: usize, omega: Complex64) -> Result<f64> {
        let b = rotate_pair(self.a, &RotationSpec::new(j, k, omega)?)?;
        magnitude_sq(self.s_a, &minor_spectrum(&b, j)?, self.i, self.tol)
    }

    fn real_part(&self, j: usize, k: usize, mj: f64, mk: f64) -> Result<f64> {
        Ok(self.rotated(j, k, Complex64::new(1.0, 0.0))? - 0.5 * (mj + mk))
    }

    fn product(&self, j: usize, k: usize, mj: f64, mk: f64) -> Result<Complex64> {
        let re = self.real_part(j, k, mj, mk)?;
        let im = self.rotated(j, k, Complex64::new(0.0, 1.0))? - 0.5 * (mj + mk);
        Ok(Complex64::new(re, im))
    }
}

fn check_pair(n: usize, j: usize, k: usize) -> Result<()> {
    if j == k {
        return Err(Error::InvalidRotation("indices must differ"));
    }
    for idx in [j, k] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    Ok(())
}

/// `v_{i,j}·conj(v_{i,k})` from the magnitudes `m_j`, `m_k` and the two
/// rotated magnitudes.
pub fn pair_product(a: &HermitianMatrix, s_a: &Spectrum, i: usize, j: usize, k: usize) -> Result<Complex64> {
    let ctx = Context::new(a, s_a, i)?;
    check_pair(a.dim(), j, k)?;
    let (mj, mk) = (ctx.magnitude(j)?.value, ctx.magnitude(k)?.value);
    let product = mj * mk;
    if product < PHASE_FLOOR * PHASE_FLOOR {
        return Err(Error::IllConditioned { product });
    }
    ctx.product(j, k, mj, mk)
}

/// Same as [`pair_product`] without the conditioning floor.
pub fn pair_product_unchecked(a: &HermitianMatrix, s_a: &Spectrum, i: usize, j: usize, k: usize) -> Result<Complex64> {
    let ctx = Context::new(a, s_a, i)?;
    check_pair(a.dim(), j, k)?;
    let (mj, mk) = (ctx.magnitude(j)?.value, ctx.magnitude(k)?.value);
    ctx.product(j, k, mj, mk)
}

/// Rebuilds eigenvector `i` up to its global phase.
///
/// Costs `2(n − 1)` extra minor eigensolves on top of the `n` needed for the
/// magnitudes.
pub fn reconstruct_eigenvector(a: &HermitianMatrix, i: usize) -> Result<ReconstructedVector> {
    let s_a = eigvalsh(a)?;
    reconstruct_with_spectrum(a, &s_a, i)
}

/// [`reconstruct_eigenvector`] with a precomputed spectrum of `A`.
pub fn reconstruct_with_spectrum(a: &HermitianMatrix, s_a: &Spectrum, i: usize) -> Result<ReconstructedVector> {
    let ctx = Context::new(a, s_a, i)?;
    let n = a.dim();
    if n == 1 {
        return Ok(ReconstructedVector {
            i,
            components: vec![Complex64::new(1.0, 0.0)],
            pivot: 0,
            flags: vec![ComponentFlag::Defined],
        });
    }
    let mags = (0..n).map(|j| ctx.magnitude(j)).collect::<Result<Vec<_>>>()?;
    let pivot = pivot_index(mags.iter().map(|d| d.value));
    let mp = mags[pivot].value;
    let root = mp.sqrt();
    let mut components = vec![Complex64::new(0.0, 0.0); n];
    let mut flags = vec![ComponentFlag::Defined; n];
    components[pivot] = Complex64::new(root, 0.0);
    for k in (0..n).filter(|&k| k != pivot) {
        let mk = mags[k].value;
        if mags[k].exact_zero {
            flags[k] = ComponentFlag::ExactZero;
        } else if mp * mk < PHASE_FLOOR * PHASE_FLOOR {
            components[k] = Complex64::new(mk.sqrt(), 0.0);
            flags[k] = ComponentFlag::UndefinedPhase;
        } else {
            components[k] = ctx.product(pivot, k, mp, mk)?.conj() / root;
        }
    }
    Ok(ReconstructedVector { i, components, pivot, flags })
}

/// Signs of eigenvector `i` of a real symmetric matrix relative to its
/// pivot, using only the `ω = 1` rotation.
pub fn real_symmetric_signs(a: &HermitianMatrix, i: usize) -> Result<SignVector> {
    if !a.is_real() {
        return Err(Error::NotReal);
    }
    let s_a = eigvalsh(a)?;
    let ctx = Context::new(a, &s_a, i)?;
    let n = a.dim();
    let mags = (0..n).map(|j| ctx.magnitude(j)).collect::<Result<Vec<_>>>()?;
    let pivot = pivot_index(mags.iter().map(|d| d.value));
    let mp = mags[pivot].value;
    let mut signs = vec![0i8; n];
    signs[pivot] = 1;
    for k in (0..n).filter(|&k| k != pivot) {
        let mk = mags[k].value;
        if mags[k].exact_zero || mp * mk < PHASE_FLOOR * PHASE_FLOOR {
            continue;
        }
        signs[k] = if ctx.real_part(pivot, k, mp, mk)? < 0.0 { -1 } else { 1 };
    }
    Ok(SignVector { i, pivot, signs })
}
