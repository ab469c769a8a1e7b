//! Homogeneous Besov norms `Ḃ^s_{p,1}` (p ∈ {2, ∞}) and the hybrid norms
//! whose shell weights switch behavior at frequency `~1/ε`.
//!
//! Homogeneous means modulo the mean: the zero mode never contributes.
//! `L²` shell norms are evaluated in Fourier space by Parseval; `L^∞` shell
//! norms by inverse transform and grid max (no super-resolution).

use crate::dyadic::{dyadic_block, Mollifier};
use crate::field::SpectralField;

/// Integrability exponent of the shell norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrability {
    #[default]
    L2,
    LInf,
}

/// Parameters of `Ḃ^s_{p,1}` (the summation exponent is fixed to 1).
#[derive(Debug, Clone, Copy)]
pub struct BesovParams {
    pub s: f64,
    pub p: Integrability,
}

impl BesovParams {
    pub fn l2(s: f64) -> Self {
        Self { s, p: Integrability::L2 }
    }

    pub fn linf(s: f64) -> Self {
        Self { s, p: Integrability::LInf }
    }
}

/// Parameters of the hybrid norm
/// `Σ_q 2^{qs} max{ε, 2^{-q}}^{1-2/r} ‖Δ̇_q u‖_{L²}`.
///
/// `r = 2` recovers `Ḃ^s_{2,1}` (the weight degenerates to 1); `r = ∞`
/// weights low frequencies by `2^{-q}` and high ones by `ε`.
#[derive(Debug, Clone, Copy)]
pub struct HybridBesovParams {
    pub s: f64,
    /// Summation tilt `r ∈ [1, ∞]`; pass `f64::INFINITY` for `r = ∞`.
    pub r: f64,
    /// Frequency threshold `ε > 0`.
    pub eps: f64,
}

impl HybridBesovParams {
    pub fn new(s: f64, r: f64, eps: f64) -> Self {
        assert!(r >= 1.0, "hybrid exponent r must be >= 1");
        assert!(eps > 0.0, "hybrid threshold must be positive");
        Self { s, r, eps }
    }

    /// Shell index where the weight switches branch: `q_ε = ⌈-log₂ ε⌉`.
    pub fn split_shell(&self) -> i32 {
        (-self.eps.log2()).ceil() as i32
    }

    fn weight(&self, q: i32) -> f64 {
        let exponent = 1.0 - if self.r.is_infinite() { 0.0 } else { 2.0 / self.r };
        self.eps.max(2f64.powi(-q)).powf(exponent)
    }
}

/// `L^p` norm of a single shell block (all components combined).
pub fn shell_lp_norm(block: &SpectralField, p: Integrability) -> f64 {
    match p {
        Integrability::L2 => block.l2_norm(),
        Integrability::LInf => block.linf_norm(),
    }
}

/// `‖f‖_{Ḃ^s_{p,1}} = Σ_j 2^{js} ‖Δ̇_j f‖_{L^p}`, mean part excluded.
pub fn besov_norm(f: &SpectralField, prm: BesovParams, moll: Mollifier) -> f64 {
    let (lo, hi) = moll.shell_bounds(f.grid());
    match (moll, prm.p) {
        // Fast path: sharp shells are disjoint in Fourier space, so one pass
        // over the lattice accumulates every shell's Parseval sum.
        (Mollifier::Sharp, Integrability::L2) => {
            let sums = sharp_shell_l2_sums(f, lo, hi);
            let vol = f.grid().volume();
            sums.iter()
                .enumerate()
                .map(|(off, &s)| 2f64.powi(lo + off as i32).powf(prm.s) * (vol * s).sqrt())
                .sum()
        }
        _ => (lo..=hi)
            .map(|j| {
                let block = dyadic_block(f, j, moll);
                2f64.powi(j).powf(prm.s) * shell_lp_norm(&block, prm.p)
            })
            .sum(),
    }
}

/// Convenience: `Ḃ^s_{2,1}` with sharp shells.
pub fn besov(f: &SpectralField, s: f64) -> f64 {
    besov_norm(f, BesovParams::l2(s), Mollifier::Sharp)
}

/// Hybrid norm of Besov type with threshold-switching weights.
pub fn hybrid_besov_norm(f: &SpectralField, prm: HybridBesovParams, moll: Mollifier) -> f64 {
    let (lo, hi) = moll.shell_bounds(f.grid());
    match moll {
        Mollifier::Sharp => {
            let sums = sharp_shell_l2_sums(f, lo, hi);
            let vol = f.grid().volume();
            sums.iter()
                .enumerate()
                .map(|(off, &s)| {
                    let q = lo + off as i32;
                    2f64.powi(q).powf(prm.s) * prm.weight(q) * (vol * s).sqrt()
                })
                .sum()
        }
        Mollifier::Smooth => (lo..=hi)
            .map(|q| {
                let block = dyadic_block(f, q, moll);
                2f64.powi(q).powf(prm.s) * prm.weight(q) * block.l2_norm()
            })
            .sum(),
    }
}

/// Per-shell `Σ_{k∈shell} |f̂_k|²` for all sharp shells in `[lo, hi]`.
fn sharp_shell_l2_sums(f: &SpectralField, lo: i32, hi: i32) -> Vec<f64> {
    let nshells = (hi - lo + 1) as usize;
    let mut sums = vec![0.0f64; nshells];
    let grid = *f.grid();
    for c in 0..f.ncomp() {
        let slice = f.comp_slice(c);
        grid.for_each_mode(|flat, k| {
            let knorm2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            if knorm2 > 0.0 {
                let j = crate::dyadic::shell_index(knorm2.sqrt());
                if j >= lo && j <= hi {
                    sums[(j - lo) as usize] += slice[flat].norm_sqr();
                }
            }
        });
    }
    sums
}

/// Per-shell `L²` norms `‖Δ̇_j f‖_{L²}` (sharp shells), returned with their
/// shell indices. This is the raw material of the lifespan shell sums.
pub fn sharp_shell_l2_norms(f: &SpectralField) -> Vec<(i32, f64)> {
    let (lo, hi) = Mollifier::Sharp.shell_bounds(f.grid());
    let sums = sharp_shell_l2_sums(f, lo, hi);
    let vol = f.grid().volume();
    sums.iter()
        .enumerate()
        .map(|(off, &s)| (lo + off as i32, (vol * s).sqrt()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use num_complex::Complex64;

    fn cos_mode(grid: Grid, m: [i64; 3], amp: f64) -> SpectralField {
        let mut f = SpectralField::scalar_zeros(grid);
        f.set_mode(0, m, Complex64::new(amp / 2.0, 0.0));
        f
    }

    #[test]
    fn single_mode_closed_form() {
        // ‖cos 4x‖_{Ḃ^1_{2,1}} on [0,2π)² = 2^{2·1}·π√2
        let grid = Grid::unit_torus(2, 32).unwrap();
        let f = cos_mode(grid, [4, 0, 0], 1.0);
        let expected = 4.0 * std::f64::consts::PI * 2f64.sqrt();
        let got = besov(&f, 1.0);
        assert!((got - expected).abs() < 1e-12 * expected, "{got} vs {expected}");
    }

    #[test]
    fn zero_field_zero_norm() {
        let grid = Grid::unit_torus(2, 16).unwrap();
        let f = SpectralField::scalar_zeros(grid);
        assert_eq!(besov(&f, 0.5), 0.0);
        assert_eq!(
            besov_norm(&f, BesovParams::linf(-1.0), Mollifier::Sharp),
            0.0
        );
    }

    #[test]
    fn mean_part_excluded() {
        let grid = Grid::unit_torus(2, 16).unwrap();
        let mut f = cos_mode(grid, [2, 0, 0], 1.0);
        let before = besov(&f, 0.7);
        f.set_mean(0, Complex64::new(100.0, 0.0));
        assert_eq!(besov(&f, 0.7), before);
    }

    #[test]
    fn two_mode_direct_summation_oracle() {
        // Oracle: sum 2^{js}·(Σ_{k∈shell}|f̂_k|²·vol)^{1/2} by direct shell
        // enumeration over the coefficient lattice.
        let grid = Grid::unit_torus(2, 64).unwrap();
        let mut f = cos_mode(grid, [2, 0, 0], 1.0);
        f.set_mode(0, [16, 0, 0], Complex64::new(0.5, 0.0));
        let s = 0.5;

        let mut per_shell: std::collections::BTreeMap<i32, f64> = Default::default();
        let g = *f.grid();
        let slice = f.comp_slice(0).to_vec();
        g.for_each_mode(|flat, k| {
            let kn = (k[0] * k[0] + k[1] * k[1]).sqrt();
            if kn > 0.0 {
                *per_shell.entry(crate::dyadic::shell_index(kn)).or_default() +=
                    slice[flat].norm_sqr();
            }
        });
        let oracle: f64 = per_shell
            .iter()
            .map(|(&j, &sum)| 2f64.powi(j).powf(s) * (g.volume() * sum).sqrt())
            .sum();

        let pi_sqrt2 = std::f64::consts::PI * 2f64.sqrt();
        let closed_form = 2f64.powf(0.5) * pi_sqrt2 + 4.0 * pi_sqrt2;
        assert!((oracle - closed_form).abs() < 1e-12 * closed_form);
        let got = besov(&f, s);
        assert!((got - oracle).abs() < 1e-12 * oracle);
    }

    #[test]
    fn linf_norm_of_cosine() {
        // ‖Δ̇_2 cos(4x)‖_{L^∞} = 1, so Ḃ^s_{∞,1} = 2^{2s}
        let grid = Grid::unit_torus(2, 32).unwrap();
        let f = cos_mode(grid, [4, 0, 0], 1.0);
        let got = besov_norm(&f, BesovParams::linf(0.25), Mollifier::Sharp);
        let expected = 2f64.powf(0.5);
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn hybrid_single_mode_branches() {
        let grid = Grid::unit_torus(2, 64).unwrap();
        // low-frequency mode |k|=1 -> shell 0, 2^{-0}=1 ≥ ε: weight 2^{-q} = 1
        let f_low = cos_mode(grid, [1, 0, 0], 1.0);
        let eps = 0.3;
        let s = 1.2;
        let prm = HybridBesovParams::new(s, f64::INFINITY, eps);
        let l2 = f_low.l2_norm();
        let got = hybrid_besov_norm(&f_low, prm, Mollifier::Sharp);
        // value = 2^{q(s-1)}·‖Δ̇_q f‖ with q = 0
        assert!((got - l2).abs() < 1e-12 * l2);

        // high-frequency mode |k|=16 -> shell 4, 2^{-4} < ε: weight ε
        let f_high = cos_mode(grid, [16, 0, 0], 1.0);
        let got_h = hybrid_besov_norm(&f_high, prm, Mollifier::Sharp);
        let expected_h = eps * 2f64.powi(4).powf(s) * f_high.l2_norm();
        assert!((got_h - expected_h).abs() < 1e-12 * expected_h);

        // two-mode straddle equals the sum of branch values
        let mut both = f_low.clone();
        both.set_mode(0, [16, 0, 0], Complex64::new(0.5, 0.0));
        let got_b = hybrid_besov_norm(&both, prm, Mollifier::Sharp);
        assert!((got_b - (got + got_h)).abs() < 1e-12 * got_b);
    }

    #[test]
    fn hybrid_r2_equals_besov() {
        let grid = Grid::unit_torus(2, 32).unwrap();
        let mut f = cos_mode(grid, [3, 1, 0], 0.8);
        f.set_mode(0, [9, -4, 0], Complex64::new(0.21, 0.13));
        let s = 0.9;
        for eps in [0.02, 0.5, 3.0] {
            let h = hybrid_besov_norm(&f, HybridBesovParams::new(s, 2.0, eps), Mollifier::Sharp);
            let b = besov(&f, s);
            assert!((h - b).abs() < 1e-13 * b);
        }
    }

    #[test]
    fn hybrid_equivalence_remark_bounds() {
        // For r ≥ 2 the hybrid norm is equivalent to
        // ‖u‖_{Ḃ^{s+2/r-1}} + ε^{1-2/r}‖u‖_{Ḃ^s}; with sharp shells each
        // shell's weight satisfies max{a,b} ≤ a+b ≤ 2·max{a,b}.
        let grid = Grid::unit_torus(2, 64).unwrap();
        let mut f = cos_mode(grid, [1, 0, 0], 1.0);
        f.set_mode(0, [6, 2, 0], Complex64::new(0.4, 0.0));
        f.set_mode(0, [17, 0, 0], Complex64::new(0.15, -0.2));
        let (s, r, eps) = (0.8, 4.0, 0.1);
        let h = hybrid_besov_norm(&f, HybridBesovParams::new(s, r, eps), Mollifier::Sharp);
        let theta = 1.0 - 2.0 / r;
        let upper = besov(&f, s + 2.0 / r - 1.0) + eps.powf(theta) * besov(&f, s);
        assert!(h <= upper * (1.0 + 1e-12));
        assert!(h >= 0.5 * upper * (1.0 - 1e-12));
    }

    #[test]
    fn scaling_identity_exact() {
        // single-shell u, λ = 2^m: ratio is exactly 2^{m(s-d/2)}
        let grid = Grid::unit_torus(2, 64).unwrap();
        let mut f = SpectralField::scalar_zeros(grid);
        f.set_mode(0, [2, 1, 0], Complex64::new(0.3, 0.1));
        f.set_mode(0, [3, 0, 0], Complex64::new(-0.2, 0.0));
        for s in [-0.5, 0.0, 1.0, 1.7] {
            let base = besov(&f, s);
            for m in 1..=3 {
                let scaled = besov(&f.rescale_dyadic(m), s);
                let expected = 2f64.powi(m).powf(s - 1.0) * base; // d/2 = 1
                assert!(
                    (scaled - expected).abs() <= 1e-14 * expected.abs(),
                    "s={s} m={m}: {scaled} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn interpolation_identity_exact() {
        let grid = Grid::unit_torus(2, 32).unwrap();
        let mut f = SpectralField::scalar_zeros(grid);
        // single shell (both modes in shell 2)
        f.set_mode(0, [4, 0, 0], Complex64::new(0.5, 0.0));
        f.set_mode(0, [5, 2, 0], Complex64::new(0.1, 0.3));
        let (s1, s2, theta) = (2.0, -1.0, 0.25);
        let lhs = besov(&f, theta * s1 + (1.0 - theta) * s2);
        let rhs = besov(&f, s1).powf(theta) * besov(&f, s2).powf(1.0 - theta);
        assert!((lhs - rhs).abs() < 1e-12 * rhs);
    }
}
