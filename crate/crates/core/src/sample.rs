//! Seeded random test matrices.
//!
//! Everything here is driven by a [`ChaCha8Rng`], so a seed fixes the output
//! on every platform.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigensolve::{eigh, eigvalsh, Spectrum, SymmetricTridiagonal, UnitaryFactor};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, IndexSet};

/// Attempts before [`hermitian_with_gap`] gives up.
const MAX_RESAMPLES: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(rng: &mut impl Rng) -> f64 {
    rng.random_range(-1.0..1.0)
}

/// Dense matrix with entries uniform in the unit square (real and
/// imaginary parts each in `[−1, 1)`), or real entries if `complex` is false.
pub fn complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize, complex: bool) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| Complex64::new(uniform(rng), if complex { uniform(rng) } else { 0.0 })).collect();
    ComplexMatrix::new(rows, cols, data).expect("finite by construction")
}

/// `(B + B*)/2` for a random `B`.
pub fn hermitian(rng: &mut impl Rng, n: usize, complex: bool) -> HermitianMatrix {
    HermitianMatrix::symmetrize(complex_matrix(rng, n, n, complex))
}

/// Random Hermitian matrix whose eigenvalue gaps all exceed
/// `rel_gap·spread`, by rejection.
pub fn hermitian_with_gap(rng: &mut impl Rng, n: usize, complex: bool, rel_gap: f64) -> Result<HermitianMatrix> {
    for _ in 0..MAX_RESAMPLES {
        let a = hermitian(rng, n, complex);
        let s = eigvalsh(&a)?;
        if n < 2 || s.min_gap() > rel_gap * s.spread() {
            return Ok(a);
        }
    }
    Err(Error::NoConvergence { algorithm: "gap resampling", iterations: MAX_RESAMPLES })
}

/// Haar-like unitary: the eigenvectors of a random Hermitian matrix.
pub fn unitary(rng: &mut impl Rng, n: usize, complex: bool) -> Result<UnitaryFactor> {
    Ok(eigh(&hermitian(rng, n, complex))?.unitary())
}

/// `U·diag(values)·U*` for a random unitary `U`.
pub fn planted(rng: &mut impl Rng, values: &[f64], complex: bool) -> Result<HermitianMatrix> {
    let n = values.len();
    let u = unitary(rng, n, complex)?.into_matrix();
    let d = ComplexMatrix::from_diagonal(values);
    Ok(HermitianMatrix::symmetrize(u.matmul(&d)?.matmul(&u.adjoint())?))
}

/// Sorted spectrum with a double eigenvalue at index `at` (and `at + 1`),
/// all other gaps at least `min_gap`.
pub fn spectrum_with_double(rng: &mut impl Rng, n: usize, at: usize, min_gap: f64) -> Result<Spectrum> {
    if n < 2 || at + 1 >= n {
        return Err(Error::IndexOutOfRange { index: at + 1, len: n });
    }
    let mut values = Vec::with_capacity(n);
    let mut x = uniform(rng) * 2.0;
    for k in 0..n {
        values.push(x);
        if k != at {
            x += min_gap + rng.random_range(0.0..1.0);
        }
    }
    Spectrum::new(values)
}

/// Symmetric tridiagonal matrix with diagonal in `[−1, 1)` and
/// off-diagonal magnitudes in `[0.1, 1)` with random signs.
pub fn tridiagonal(rng: &mut impl Rng, n: usize) -> SymmetricTridiagonal {
    let diag = (0..n).map(|_| uniform(rng)).collect();
    let offdiag = (0..n.saturating_sub(1))
        .map(|_| {
            let m = rng.random_range(0.1..1.0);
            if rng.random_bool(0.5) {
                m
            } else {
                -m
            }
        })
        .collect();
    SymmetricTridiagonal::new(diag, offdiag).expect("consistent lengths")
}

/// Random tridiagonal matrix whose eigenvalue gaps exceed `rel_gap·spread`.
pub fn tridiagonal_with_gap(rng: &mut impl Rng, n: usize, rel_gap: f64) -> Result<SymmetricTridiagonal> {
    for _ in 0..MAX_RESAMPLES {
        let t = tridiagonal(rng, n);
        let s = crate::eigensolve::eigvals_tridiag(&t)?;
        if n < 2 || s.min_gap() > rel_gap * s.spread() {
            return Ok(t);
        }
    }
    Err(Error::NoConvergence { algorithm: "gap resampling", iterations: MAX_RESAMPLES })
}

/// Uniformly chosen `m`-element subset of `0..n`.
pub fn index_set(rng: &mut impl Rng, n: usize, m: usize) -> Result<IndexSet> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let mut chosen: Vec<usize> = all.into_iter().take(m).collect();
    chosen.sort_unstable();
    IndexSet::new(chosen, n)
}

pub fn permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Angles uniform in `[−π, π)`.
pub fn phases(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| uniform(rng) * core::f64::consts::PI).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = hermitian(&mut rng(7), 5, true);
        let b = hermitian(&mut rng(7), 5, true);
        assert_eq!(a, b);
        assert_ne!(a, hermitian(&mut rng(8), 5, true));
    }

    #[test]
    fn planted_spectrum_is_recovered() {
        let mut r = rng(3);
        let s = spectrum_with_double(&mut r, 6, 2, 0.1).unwrap();
        assert_eq!(s.values()[2], s.values()[3]);
        let a = planted(&mut r, s.values(), true).unwrap();
        let got = eigvalsh(&a).unwrap();
        for (x, y) in got.values().iter().zip(s.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn gap_resampling() {
        let a = hermitian_with_gap(&mut rng(1), 8, true, 1e-3).unwrap();
        let s = eigvalsh(&a).unwrap();
        assert!(s.min_gap() > 1e-3 * s.spread());
        let t = tridiagonal_with_gap(&mut rng(2), 12, 1e-3).unwrap();
        assert!(t.offdiag().iter().all(|b| b.abs() >= 0.1));
    }

    #[test]
    fn index_sets_are_valid() {
        let mut r = rng(11);
        for m in 1..5 {
            let s = index_set(&mut r, 5, m).unwrap();
            assert_eq!(s.len(), m);
        }
    }
}
