//! Functions of a spectrum: characteristic polynomials in product form,
//! their derivatives, elementary symmetric polynomials and multiplicity
//! grouping.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::One;

use crate::eigensolve::Spectrum;
use crate::error::{Error, Result};

/// Relative multiplicity tolerance; see [`default_tolerance`].
pub const MULTIPLICITY_REL_TOL: f64 = 1e-8;

/// `1e-8·max(1, λ_max − λ_min)`.
pub fn default_tolerance(s: &Spectrum) -> f64 {
    MULTIPLICITY_REL_TOL * s.spread().max(1.0)
}

/// `p(λ) = ∏_k (λ − λ_k)`. The empty spectrum gives 1.
pub fn char_poly_eval(s: &Spectrum, lambda: Complex64) -> Complex64 {
    s.values().iter().fold(Complex64::one(), |acc, &v| acc * (lambda - v))
}

/// Real-argument form of [`char_poly_eval`].
pub fn char_poly_eval_real(s: &Spectrum, lambda: f64) -> f64 {
    s.values().iter().fold(1.0, |acc, &v| acc * (lambda - v))
}

/// `p'(λ_i) = ∏_{k≠i} (λ_i − λ_k)`, zero when `λ_i` is repeated exactly.
pub fn char_poly_derivative_at(s: &Spectrum, i: usize) -> Result<f64> {
    let v = s.values();
    let li = *v.get(i).ok_or(Error::IndexOutOfRange { index: i, len: v.len() })?;
    Ok(v.iter().enumerate().filter(|&(k, _)| k != i).fold(1.0, |acc, (_, &lk)| acc * (li - lk)))
}

/// `p'(λ) = Σ_i ∏_{k≠i} (λ − λ_k)` at an arbitrary point.
pub fn char_poly_derivative_eval(s: &Spectrum, lambda: Complex64) -> Complex64 {
    derivative_terms(s, lambda).into_iter().sum()
}

/// The individual terms `∏_{k≠i} (λ − λ_k)` summed by
/// [`char_poly_derivative_eval`].
pub fn derivative_terms(s: &Spectrum, lambda: Complex64) -> Vec<Complex64> {
    let v = s.values();
    (0..v.len())
        .map(|i| v.iter().enumerate().filter(|&(k, _)| k != i).fold(Complex64::one(), |acc, (_, &lk)| acc * (lambda - lk)))
        .collect()
}

/// Coefficients `[S_0, S_1, …, S_n]` of `∏ (x + λ_i)`.
pub fn elementary_symmetric_all(s: &Spectrum) -> Vec<f64> {
    let n = s.len();
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for (j, &lambda) in s.values().iter().enumerate() {
        for k in (1..=j + 1).rev() {
            e[k] += lambda * e[k - 1];
        }
    }
    e
}

/// `k`-th elementary symmetric polynomial of the spectrum, `S_0 = 1`.
pub fn elementary_symmetric(s: &Spectrum, k: usize) -> Result<f64> {
    if k > s.len() {
        return Err(Error::IndexOutOfRange { index: k, len: s.len() + 1 });
    }
    Ok(elementary_symmetric_all(s)[k])
}

/// Same recurrence applied to `|λ_i|`; bounds the magnitude of `S_k`.
pub(crate) fn elementary_symmetric_abs(s: &Spectrum, k: usize) -> f64 {
    let abs = Spectrum::from_unsorted(s.values().iter().map(|v| v.abs()).collect()).unwrap_or_default();
    elementary_symmetric_all(&abs).get(k).copied().unwrap_or(0.0)
}

/// A maximal run of numerically coincident eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    pub start: usize,
    pub len: usize,
    /// Arithmetic mean of the members.
    pub representative: f64,
}

impl Group {
    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn indices(&self) -> core::ops::Range<usize> {
        self.start..self.end()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices().contains(&i)
    }

    pub fn is_simple(&self) -> bool {
        self.len == 1
    }
}

/// Partition of spectrum indices into contiguous multiplicity groups.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityGrouping {
    groups: Vec<Group>,
    owner: Vec<usize>,
    tol: f64,
}

impl MultiplicityGrouping {
    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// The group holding spectrum index `i`.
    pub fn group_of(&self, i: usize) -> Option<&Group> {
        self.owner.get(i).map(|&g| &self.groups[g])
    }

    pub fn is_simple(&self, i: usize) -> bool {
        self.group_of(i).is_some_and(Group::is_simple)
    }

    pub fn has_repeats(&self) -> bool {
        self.groups.iter().any(|g| !g.is_simple())
    }
}

/// Greedy left-to-right chaining: consecutive values within `tol` of each
/// other share a group.
pub fn group_multiplicities(s: &Spectrum, tol: f64) -> Result<MultiplicityGrouping> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTolerance);
    }
    let v = s.values();
    let mut groups: Vec<Group> = Vec::new();
    let mut owner = Vec::with_capacity(v.len());
    let mut start = 0;
    for i in 0..v.len() {
        let closes = i + 1 == v.len() || v[i + 1] - v[i] > tol;
        owner.push(groups.len());
        if closes {
            let len = i + 1 - start;
            let representative = v[start..=i].iter().sum::<f64>() / len as f64;
            groups.push(Group { start, len, representative });
            start = i + 1;
        }
    }
    Ok(MultiplicityGrouping { groups, owner, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spectrum_of(v: &[f64]) -> Spectrum {
        Spectrum::from_unsorted(v.to_vec()).unwrap()
    }

    fn subset_sum_oracle(v: &[f64], k: usize) -> f64 {
        let n = v.len();
        (0u32..(1 << n))
            .filter(|mask| mask.count_ones() as usize == k)
            .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| v[i]).product::<f64>())
            .sum()
    }

    #[test]
    fn char_poly_examples() {
        let z = Complex64::new(0.0, 0.0);
        assert!((char_poly_eval(&spectrum_of(&[2.0, 4.0]), z) - 8.0).norm() < 1e-15);
        let r = 2f64.sqrt();
        assert!((char_poly_eval(&spectrum_of(&[2.0 - r, 2.0 + r]), z) - 2.0).norm() < 1e-14);
        assert_eq!(char_poly_eval(&Spectrum::empty(), Complex64::new(3.0, -1.0)), Complex64::one());
    }

    #[test]
    fn derivative_examples() {
        let s = spectrum_of(&[0.0, 3.0, 4.0]);
        assert_eq!(char_poly_derivative_at(&s, 0).unwrap(), 12.0);
        // p'(λ) = 3λ² − 14λ + 12
        for lambda in [0.0, 1.0, 2.5, -3.0] {
            let got = char_poly_derivative_eval(&s, Complex64::new(lambda, 0.0)).re;
            assert!((got - (3.0 * lambda * lambda - 14.0 * lambda + 12.0)).abs() < 1e-12);
        }
        assert_eq!(char_poly_derivative_at(&spectrum_of(&[1.0, 1.0, 2.0]), 0).unwrap(), 0.0);
        assert_eq!(char_poly_derivative_at(&s, 3), Err(Error::IndexOutOfRange { index: 3, len: 3 }));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let s = spectrum_of(&[-1.3, -0.2, 0.45, 1.1, 2.7, 3.05]);
        let h = 1e-6 * s.spread();
        for i in 0..s.len() {
            let li = s.values()[i];
            let fd = (char_poly_eval_real(&s, li + h) - char_poly_eval_real(&s, li - h)) / (2.0 * h);
            let exact = char_poly_derivative_at(&s, i).unwrap();
            assert!((fd - exact).abs() <= 1e-4 * exact.abs(), "i={i}: {fd} vs {exact}");
        }
    }

    #[test]
    fn elementary_symmetric_examples() {
        let s = spectrum_of(&[0.0, 3.0, 4.0]);
        assert_eq!(elementary_symmetric(&s, 0).unwrap(), 1.0);
        assert_eq!(elementary_symmetric(&s, 1).unwrap(), 7.0);
        assert_eq!(elementary_symmetric(&s, 2).unwrap(), 12.0);
        assert_eq!(elementary_symmetric(&s, 3).unwrap(), 0.0);
        assert!(elementary_symmetric(&s, 4).is_err());
        assert_eq!(elementary_symmetric(&spectrum_of(&[2.5]), 1).unwrap(), 2.5);
    }

    #[test]
    fn elementary_symmetric_matches_subset_enumeration() {
        let v = [-1.7, -0.9, -0.3, 0.1, 0.4, 0.8, 1.2, 1.9, 2.2, 2.8, 3.3, 4.1];
        let s = spectrum_of(&v);
        for k in 0..=v.len() {
            let oracle = subset_sum_oracle(s.values(), k);
            let got = elementary_symmetric(&s, k).unwrap();
            assert!((got - oracle).abs() <= 1e-10 * (1.0 + elementary_symmetric_abs(&s, k)), "k={k}");
        }
    }

    #[test]
    fn grouping_examples() {
        let g = group_multiplicities(&spectrum_of(&[0.0, 3.0, 4.0]), 1e-8).unwrap();
        assert_eq!(g.groups().len(), 3);
        assert!((0..3).all(|i| g.is_simple(i)));

        let g = group_multiplicities(&spectrum_of(&[1.0, 1.0, 2.0]), 1e-8).unwrap();
        assert_eq!(
            g.groups(),
            &[Group { start: 0, len: 2, representative: 1.0 }, Group { start: 2, len: 1, representative: 2.0 }]
        );

        let g = group_multiplicities(&spectrum_of(&[0.0, 5e-9, 1.0]), 1e-8).unwrap();
        assert_eq!(g.groups()[0].len, 2);
        assert!((g.groups()[0].representative - 2.5e-9).abs() < 1e-24);
        assert!(!g.is_simple(1) && g.is_simple(2));

        assert_eq!(group_multiplicities(&spectrum_of(&[1.0]), 0.0), Err(Error::InvalidTolerance));
        assert!(group_multiplicities(&Spectrum::empty(), 1e-8).unwrap().groups().is_empty());
    }

    #[test]
    fn repeated_group_is_a_zero_of_matching_order() {
        let s = spectrum_of(&[0.5, 1.0, 1.0 + 1e-12, 1.0 + 2e-12, 3.0]);
        let g = group_multiplicities(&s, 1e-8).unwrap();
        let grp = &g.groups()[1];
        assert_eq!(grp.len, 3);
        let val = char_poly_eval_real(&s, grp.representative).abs();
        assert!(val <= (1e-8 * 5.0 * 3.0f64).powi(3) * 10.0);
    }

    proptest! {
        #[test]
        fn signed_symmetric_polys_are_monic_coefficients(v in prop::collection::vec(-5.0f64..5.0, 0..9)) {
            let s = Spectrum::from_unsorted(v).unwrap();
            // ∏ (x − λ_i) by convolution; coefficient of x^{n−k} at index k
            let mut c = vec![1.0];
            for &l in s.values() {
                let mut next = vec![0.0; c.len() + 1];
                for (k, &ck) in c.iter().enumerate() {
                    next[k] += ck;
                    next[k + 1] -= l * ck;
                }
                c = next;
            }
            let e = elementary_symmetric_all(&s);
            for k in 0..e.len() {
                let signed = if k % 2 == 0 { e[k] } else { -e[k] };
                prop_assert!((signed - c[k]).abs() <= 1e-12 * (1.0 + elementary_symmetric_abs(&s, k)));
            }
        }

        #[test]
        fn char_poly_is_real_on_real_axis(v in prop::collection::vec(-5.0f64..5.0, 0..9), x in -6.0f64..6.0) {
            let s = Spectrum::from_unsorted(v).unwrap();
            let p = char_poly_eval(&s, Complex64::new(x, 0.0));
            prop_assert!(p.im.abs() <= 1e-12 * p.norm());
        }

        #[test]
        fn groups_partition_contiguously(v in prop::collection::vec(-3.0f64..3.0, 1..12), tol in 1e-6f64..0.5) {
            let s = Spectrum::from_unsorted(v).unwrap();
            let g = group_multiplicities(&s, tol).unwrap();
            let mut next = 0;
            for (idx, grp) in g.groups().iter().enumerate() {
                prop_assert_eq!(grp.start, next);
                next = grp.end();
                for w in s.values()[grp.indices()].windows(2) {
                    prop_assert!(w[1] - w[0] <= tol);
                }
                if idx + 1 < g.groups().len() {
                    prop_assert!(s.values()[grp.end()] - s.values()[grp.end() - 1] > tol);
                }
            }
            prop_assert_eq!(next, s.len());
        }
    }
}
