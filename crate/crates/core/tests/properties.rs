use eigenid_core::eigensolve::{eigh, eigh_jacobi, eigh_tridiag, eigvalsh};
use eigenid_core::identity::{self, magnitude_table, EntryFlag};
use eigenid_core::matrix::{determinant, HermitianMatrix};
use eigenid_core::spectral::{default_tolerance, group_multiplicities, Group};
use eigenid_core::{phase, sample, verify, Complex64, Error};
use proptest::prelude::*;

fn gapped(seed: u64, n: usize, complex: bool) -> HermitianMatrix {
    sample::hermitian_with_gap(&mut sample::rng(seed), n, complex, 1e-3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn table_matches_oracle(seed in any::<u64>(), n in 2usize..9, complex in any::<bool>()) {
        let a = gapped(seed, n, complex);
        let t = magnitude_table(&a).unwrap();
        let oracle = eigh(&a).unwrap().magnitudes();
        for i in 0..n {
            for j in 0..n {
                prop_assert!((t.value(i, j) - oracle[i][j]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn all_paths_agree(seed in any::<u64>(), n in 2usize..8) {
        let a = gapped(seed, n, true);
        let s = eigvalsh(&a).unwrap();
        let tol = default_tolerance(&s);
        let minors = identity::minor_spectra(&a).unwrap();
        for i in 0..n {
            for j in 0..n {
                let d = identity::magnitude_sq_detail(&s, &minors[j], i, tol).unwrap();
                prop_assert!(d.raw >= -1e-7 && d.raw <= 1.0 + 1e-7);
                let cp = identity::magnitude_sq_charpoly(&s, &minors[j], i).unwrap();
                prop_assert!((cp - d.value).abs() < 1e-7);
                let ct = identity::cross_term(&a, &s, i, j, j).unwrap();
                prop_assert!((ct.value.re - d.value).abs() < 1e-7);
                let alt = identity::magnitude_alternate(&a, s.values()[i], j).unwrap();
                prop_assert!((alt - d.value).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn cross_terms_match_products(seed in any::<u64>(), n in 2usize..7) {
        let a = gapped(seed, n, true);
        let e = eigh(&a).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = identity::cross_term(&a, e.spectrum(), i, j, k).unwrap().value;
                    let back = identity::cross_term(&a, e.spectrum(), i, k, j).unwrap().value;
                    prop_assert!((c - back.conj()).norm() < 1e-10);
                    let want = e.component(i, j) * e.component(i, k).conj();
                    prop_assert!((c - want).norm() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn group_mass_matches_cluster(seed in any::<u64>(), n in 3usize..8, at in 0usize..6) {
        let at = at % (n - 1);
        let mut rng = sample::rng(seed);
        let planted = sample::spectrum_with_double(&mut rng, n, at, 0.05).unwrap();
        let a = sample::planted(&mut rng, planted.values(), true).unwrap();
        let e = eigh(&a).unwrap();
        let s = e.spectrum();
        let grouping = group_multiplicities(s, default_tolerance(s)).unwrap();
        let group = grouping.group_of(at).unwrap().clone();
        prop_assert_eq!(group.len, 2);
        let oracle = e.magnitudes();
        for j in 0..n {
            let minor = identity::minor_spectrum(&a, j).unwrap();
            let mass = identity::magnitude_group(s, &minor, &group, grouping.tolerance()).unwrap();
            let want = oracle[at][j] + oracle[at + 1][j];
            prop_assert!((mass - want).abs() < 1e-7);
            let simple = identity::magnitude_sq(s, &minor, at, grouping.tolerance());
            let rejected = matches!(simple, Err(Error::DegenerateEigenvalue { multiplicity: 2, .. }));
            prop_assert!(rejected);
        }
        let table = magnitude_table(&a).unwrap();
        prop_assert_eq!(table.flag(at, 0), EntryFlag::DegenerateGroupMass);
        prop_assert!(verify::check_normalization(&table).passed);
    }

    #[test]
    fn metamorphic_invariance(seed in any::<u64>(), n in 2usize..8, shift in -5.0f64..5.0, scale in 0.1f64..10.0) {
        let mut rng = sample::rng(seed);
        let a = sample::hermitian_with_gap(&mut rng, n, true, 1e-3).unwrap();
        let base = magnitude_table(&a).unwrap();
        let perm = sample::permutation(&mut rng, n);
        let phases = sample::phases(&mut rng, n);
        let shifted = magnitude_table(&a.shifted(shift)).unwrap();
        let scaled = magnitude_table(&a.scaled(scale)).unwrap();
        let permuted = magnitude_table(&a.permuted(&perm).unwrap()).unwrap();
        let rephased = magnitude_table(&a.phase_conjugated(&phases).unwrap()).unwrap();
        for i in 0..n {
            for j in 0..n {
                let v = base.value(i, j);
                prop_assert!((shifted.value(i, j) - v).abs() < 1e-9);
                prop_assert!((scaled.value(i, j) - v).abs() < 1e-9);
                prop_assert!((permuted.value(i, j) - base.value(i, perm[j])).abs() < 1e-9);
                prop_assert!((rephased.value(i, j) - v).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn reconstruction_is_an_eigenvector(seed in any::<u64>(), n in 2usize..7) {
        let a = gapped(seed, n, true);
        let e = eigh(&a).unwrap();
        for i in 0..n {
            let r = phase::reconstruct_eigenvector(&a, i).unwrap();
            prop_assert!((r.norm() - 1.0).abs() < 1e-8);
            let overlap: Complex64 = e.vector(i).iter().zip(&r.components).map(|(u, v)| u.conj() * v).sum();
            prop_assert!(overlap.norm() >= 1.0 - 1e-7);
            let res = eigenid_core::eigensolve::residual_norm(&a, e.spectrum().values()[i], &r.components);
            prop_assert!(res <= 1e-7 * a.frobenius_norm());
        }
    }

    #[test]
    fn pair_products_are_orthogonal(seed in any::<u64>(), n in 2usize..7) {
        let a = gapped(seed, n, true);
        let s = eigvalsh(&a).unwrap();
        let sum: Complex64 = (0..n).map(|i| phase::pair_product_unchecked(&a, &s, i, 0, n - 1).unwrap()).sum();
        prop_assert!(sum.norm() < 1e-6);
    }

    #[test]
    fn paige_matches_dense_oracle(seed in any::<u64>(), n in 1usize..31) {
        let t = sample::tridiagonal_with_gap(&mut sample::rng(seed), n, 1e-4).unwrap();
        let e = eigh_tridiag(&t).unwrap();
        let dense = eigh(&t.to_hermitian()).unwrap();
        prop_assert!(e.spectrum().values().iter().zip(dense.spectrum().values()).all(|(x, y)| (x - y).abs() < 1e-10));
        for i in 0..n {
            let mut total = 0.0;
            for r in 0..n {
                let m = identity::paige_magnitude(&t, e.spectrum(), i, r).unwrap();
                total += m;
                prop_assert!((m - dense.component(i, r).norm_sqr()).abs() < 1e-8);
                for q in r + 1..n {
                    let c = identity::paige_cross(&t, e.spectrum(), i, r, q).unwrap();
                    let want = (dense.component(i, r) * dense.component(i, q).conj()).re;
                    prop_assert!((c - want).abs() < 1e-8);
                }
            }
            prop_assert!((total - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn recurrence_matches_determinant(seed in any::<u64>(), n in 1usize..12, lambda in -3.0f64..3.0) {
        let t = sample::tridiagonal(&mut sample::rng(seed), n);
        let p = identity::paige_char_recurrence(&t, 0, n, lambda).unwrap();
        let shifted = t.to_hermitian().scaled(-1.0).shifted(lambda);
        let det = determinant(shifted.as_matrix()).unwrap().re;
        prop_assert!((p - det).abs() <= 1e-9 * det.abs().max(1.0));
    }

    #[test]
    fn solvers_agree(seed in any::<u64>(), n in 1usize..30) {
        let a = sample::hermitian(&mut sample::rng(seed), n, true);
        let (x, y) = (eigh(&a).unwrap(), eigh_jacobi(&a).unwrap());
        let norm = a.frobenius_norm();
        for (p, q) in x.spectrum().values().iter().zip(y.spectrum().values()) {
            prop_assert!((p - q).abs() <= 1e-10 * norm);
        }
        for d in [&x, &y] {
            prop_assert!(d.max_residual(&a) <= 1e-9 * norm);
            prop_assert!(d.orthonormality_deviation() <= 1e-10);
        }
        prop_assert!((x.spectrum().sum() - a.trace()).abs() <= 1e-10 * n as f64 * norm.max(1.0));
    }

    #[test]
    fn full_suite_passes_on_random_input(seed in any::<u64>(), n in 1usize..7, complex in any::<bool>()) {
        let a = gapped(seed, n, complex);
        for r in verify::run_full_suite(&a, seed).unwrap() {
            prop_assert_eq!(r.passed, r.max_abs_deviation <= r.tolerance);
            prop_assert!(r.passed, "{:?}", r);
        }
    }
}

#[test]
fn group_struct_covers_identity() {
    let id = HermitianMatrix::from_diagonal(&[2.0; 4]).unwrap();
    let s = eigvalsh(&id).unwrap();
    let g = group_multiplicities(&s, default_tolerance(&s)).unwrap();
    assert_eq!(g.groups(), &[Group { start: 0, len: 4, representative: 2.0 }]);
}
