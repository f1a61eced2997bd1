//! Magnitude tables by each computation path, with the minor eigensolves
//! spread over the rayon pool.

use clap::ValueEnum;
use eigenid_core::eigensolve::{eigh, eigvalsh};
use eigenid_core::identity::{self, magnitude_column, minor_spectrum, MagnitudeTable};
use eigenid_core::spectral::{group_multiplicities, MultiplicityGrouping};
use eigenid_core::{Error, HermitianMatrix, Result, Spectrum};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Interlacing-paired products (stable).
    #[default]
    Identity,
    /// Quotient of characteristic polynomials.
    Charpoly,
    /// Resolvent of the minor, one linear solve per entry.
    Alternate,
    /// Squared moduli of eigh eigenvectors.
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Identity, Method::Charpoly, Method::Alternate, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Identity => "identity",
            Method::Charpoly => "charpoly",
            Method::Alternate => "alternate",
            Method::Oracle => "oracle",
        }
    }
}

fn require_simple(grouping: &MultiplicityGrouping) -> Result<()> {
    match grouping.groups().iter().find(|g| !g.is_simple()) {
        Some(g) => Err(Error::DegenerateEigenvalue { index: g.start, multiplicity: g.len }),
        None => Ok(()),
    }
}

/// Same result as [`identity::magnitude_table_with`], bit for bit, with the
/// columns computed in parallel.
pub fn identity_table(a: &HermitianMatrix, s_a: Spectrum, tol: f64) -> Result<MagnitudeTable> {
    let grouping = group_multiplicities(&s_a, tol)?;
    let columns = (0..a.dim())
        .into_par_iter()
        .map(|j| magnitude_column(&s_a, &grouping, &minor_spectrum(a, j)?))
        .collect::<Result<Vec<_>>>()?;
    MagnitudeTable::from_columns(s_a, grouping, columns)
}

/// Entry grid `[i][j]` from a per-column closure, in parallel over `j`.
fn columns(n: usize, f: impl Fn(usize) -> Result<Vec<f64>> + Sync + Send) -> Result<Vec<Vec<f64>>> {
    let cols = (0..n).into_par_iter().map(f).collect::<Result<Vec<_>>>()?;
    Ok((0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

/// Magnitude table by `method`. `tol` is the multiplicity tolerance.
///
/// `charpoly` and `alternate` need a simple spectrum and fail with
/// [`Error::DegenerateEigenvalue`] otherwise; `alternate` also fails with
/// [`Error::SingularShift`] when an eigenvalue of `A` is also one of a minor.
pub fn compute(a: &HermitianMatrix, method: Method, tol: f64) -> Result<MagnitudeTable> {
    let n = a.dim();
    match method {
        Method::Identity => identity_table(a, eigvalsh(a)?, tol),
        Method::Oracle => {
            let e = eigh(a)?;
            MagnitudeTable::from_values(e.spectrum().clone(), e.magnitudes(), tol)
        }
        Method::Charpoly => {
            let s = eigvalsh(a)?;
            require_simple(&group_multiplicities(&s, tol)?)?;
            let values = columns(n, |j| {
                let m = minor_spectrum(a, j)?;
                (0..n).map(|i| identity::magnitude_sq_charpoly(&s, &m, i)).collect()
            })?;
            MagnitudeTable::from_values(s, values, tol)
        }
        Method::Alternate => {
            let s = eigvalsh(a)?;
            require_simple(&group_multiplicities(&s, tol)?)?;
            let values = columns(n, |j| (0..n).map(|i| identity::magnitude_alternate(a, s.values()[i], j)).collect())?;
            MagnitudeTable::from_values(s, values, tol)
        }
    }
}

/// Like [`compute`], but entries where the path does not apply are `None`
/// instead of failing the whole table: rows of repeated eigenvalues for
/// `charpoly` and `alternate`, and singular shifts for `alternate`.
pub fn compute_partial(a: &HermitianMatrix, method: Method, tol: f64) -> Result<Vec<Vec<Option<f64>>>> {
    let n = a.dim();
    let full = |t: MagnitudeTable| (0..n).map(|i| (0..n).map(|j| Some(t.value(i, j))).collect()).collect();
    match method {
        Method::Identity | Method::Oracle => Ok(full(compute(a, method, tol)?)),
        Method::Charpoly | Method::Alternate => {
            let s = eigvalsh(a)?;
            let grouping = group_multiplicities(&s, tol)?;
            let cols = (0..n)
                .into_par_iter()
                .map(|j| {
                    let m = minor_spectrum(a, j)?;
                    (0..n)
                        .map(|i| {
                            if !grouping.is_simple(i) {
                                return Ok(None);
                            }
                            let r = match method {
                                Method::Charpoly => identity::magnitude_sq_charpoly(&s, &m, i),
                                _ => identity::magnitude_alternate(a, s.values()[i], j),
                            };
                            match r {
                                Ok(v) => Ok(Some(v)),
                                Err(Error::SingularShift { .. }) => Ok(None),
                                Err(e) => Err(e),
                            }
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eigenid_core::spectral::default_tolerance;

    fn golden_a() -> HermitianMatrix {
        HermitianMatrix::from_real_rows(&[&[1.0, 1.0, -1.0], &[1.0, 3.0, 1.0], &[-1.0, 1.0, 3.0]]).unwrap()
    }

    #[test]
    fn parallel_table_is_bitwise_sequential() {
        let a = golden_a();
        let s = eigvalsh(&a).unwrap();
        let tol = default_tolerance(&s);
        let seq = identity::magnitude_table_with(&a, s.clone(), tol).unwrap();
        let par = identity_table(&a, s, tol).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn method_preconditions() {
        let a = golden_a();
        assert!(matches!(compute(&a, Method::Alternate, 1e-8), Err(Error::SingularShift { .. })));
        let partial = compute_partial(&a, Method::Alternate, 1e-8).unwrap();
        assert_eq!(partial[2][0], None);
        assert!((partial[0][0].unwrap() - 2.0 / 3.0).abs() < 1e-12);
        let id = HermitianMatrix::from_diagonal(&[1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(compute(&id, Method::Charpoly, 1e-8), Err(Error::DegenerateEigenvalue { .. })));
        assert!(compute_partial(&id, Method::Charpoly, 1e-8).unwrap().iter().flatten().all(Option::is_none));
    }

    #[test]
    fn paths_agree_on_golden_matrix() {
        let a = golden_a();
        let base = compute(&a, Method::Identity, 1e-8).unwrap();
        for m in [Method::Charpoly, Method::Oracle] {
            assert!(compute(&a, m, 1e-8).unwrap().max_abs_difference(&base) < 1e-12);
        }
    }
}
