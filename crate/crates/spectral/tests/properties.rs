//! Structural invariants of the dyadic calculus: reconstruction, Bernstein
//! shell bounds, scale invariance of product-law constants, Hermitian
//! symmetry under every operator.

use mhdlab_spectral::besov::{besov, besov_norm, BesovParams};
use mhdlab_spectral::dyadic::{dyadic_block, DyadicDecomposition, Mollifier};
use mhdlab_spectral::field::{mul_scalar, SpectralField};
use mhdlab_spectral::ops;
use mhdlab_spectral::synth::random_band;
use mhdlab_spectral::Grid;
use proptest::prelude::*;

fn random_field(grid: Grid, ncomp: usize, seed: u64) -> SpectralField {
    // content across several shells, including up to the dealias edge
    let (lo, hi) = Mollifier::Sharp.shell_bounds(&grid);
    random_band(grid, ncomp, lo, hi, seed, false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reconstruction_within_tolerance(seed in 0u64..1_000_000, d in 2usize..=3, smooth in proptest::bool::ANY) {
        let grid = Grid::unit_torus(d, 16).unwrap();
        let mut f = random_field(grid, 1, seed);
        f.set_mean(0, mhdlab_spectral::Complex64::new(0.3, 0.0));
        let moll = if smooth { Mollifier::Smooth } else { Mollifier::Sharp };
        let dec = DyadicDecomposition::new(&f, moll);
        let err = dec.reconstruct().sub(&f).l2_norm();
        prop_assert!(err <= 1e-12 * f.l2_norm());
    }

    #[test]
    fn hermitian_preserved_by_operations(seed in 0u64..1_000_000) {
        let grid = Grid::unit_torus(2, 16).unwrap();
        let u = random_field(grid, 2, seed);
        let s = random_field(grid, 1, seed ^ 0xabcd);
        let tol = 1e-13;
        prop_assert!(ops::leray(&u).unwrap().0.hermitian_error() < tol);
        prop_assert!(ops::leray(&u).unwrap().1.hermitian_error() < tol);
        prop_assert!(ops::grad(&s).unwrap().hermitian_error() < tol);
        prop_assert!(ops::div(&u).unwrap().hermitian_error() < tol);
        prop_assert!(ops::heat_flow(&s, 0.3, 0.5).unwrap().hermitian_error() < tol);
        prop_assert!(ops::friedrichs(&s, 4).hermitian_error() < tol);
        prop_assert!(dyadic_block(&s, 2, Mollifier::Smooth).hermitian_error() < tol);
        prop_assert!(mul_scalar(&s, &s).unwrap().hermitian_error() < tol);
        prop_assert!(mhdlab_spectral::bony::paraproduct(&s, &s, Mollifier::Sharp).unwrap().hermitian_error() < tol);
    }
}

#[test]
fn bernstein_shell_bounds_hold() {
    // 100 random fields, both dimensions; the L² derivative ratio of every
    // sharp shell block is a weighted mean of |k| over the shell.
    let mut violations = 0usize;
    for trial in 0..100u64 {
        let d = if trial % 2 == 0 { 2 } else { 3 };
        let n = if d == 2 { 32 } else { 16 };
        let grid = Grid::unit_torus(d, n).unwrap();
        let f = random_field(grid, 1, 1000 + trial);
        let (lo, hi) = Mollifier::Sharp.shell_bounds(&grid);
        for j in lo..=hi {
            let block = dyadic_block(&f, j, Mollifier::Sharp);
            let bn = block.l2_norm();
            if bn == 0.0 {
                continue;
            }
            let gn = ops::grad_norm(&block);
            let ratio = gn / bn;
            // lattice |k| extremes inside the shell
            let (mut kmin, mut kmax) = (f64::INFINITY, 0.0f64);
            grid.for_each_mode(|_, k| {
                let kn = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                if kn > 0.0 && mhdlab_spectral::dyadic::shell_index(kn) == j {
                    kmin = kmin.min(kn);
                    kmax = kmax.max(kn);
                }
            });
            if !(ratio >= kmin * (1.0 - 1e-12) && ratio <= kmax * (1.0 + 1e-12)) {
                violations += 1;
            }
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn product_law_constant_is_scale_invariant() {
    // ‖uv‖_{Ḃ^{s1+s2-d/2}} / (‖u‖_{Ḃ^{s1}}‖v‖_{Ḃ^{s2}}): dyadic rescaling of
    // both inputs must leave the ratio unchanged to 1e-8 relative.
    let grid = Grid::unit_torus(2, 32).unwrap();
    let (s1, s2) = (0.8, 0.6);
    let target = s1 + s2 - 1.0;
    for seed in 0..100u64 {
        let u = random_band(grid, 1, 0, 2, 2000 + seed, false);
        let v = random_band(grid, 1, 0, 2, 3000 + seed, false);
        let base = besov(&mul_scalar(&u, &v).unwrap(), target) / (besov(&u, s1) * besov(&v, s2));
        let (ur, vr) = (u.rescale_dyadic(1), v.rescale_dyadic(1));
        let scaled =
            besov(&mul_scalar(&ur, &vr).unwrap(), target) / (besov(&ur, s1) * besov(&vr, s2));
        assert!(
            (scaled / base - 1.0).abs() <= 1e-8,
            "seed {seed}: ratio drifted {base} -> {scaled}"
        );
        assert!(base.is_finite() && base > 0.0);
    }
}

#[test]
fn linf_besov_matches_grid_max_for_single_shell() {
    let grid = Grid::unit_torus(2, 32).unwrap();
    let f = random_band(grid, 1, 2, 2, 77, false);
    let block = dyadic_block(&f, 2, Mollifier::Sharp);
    let direct = block.linf_norm();
    let nrm = besov_norm(&f, BesovParams::linf(0.0), Mollifier::Sharp);
    assert!((nrm - direct).abs() < 1e-12 * direct.max(1.0));
}
