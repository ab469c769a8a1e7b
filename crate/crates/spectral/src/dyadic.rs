//! Littlewood-Paley dyadic decomposition on the periodic lattice.
//!
//! Shell `j` collects wavenumbers with `|k| ~ 2^j`. Two mollifiers are
//! provided:
//!
//! * `Sharp` — the exact annulus indicator `[2^j, 2^{j+1})`. Shells partition
//!   the nonzero lattice, so reconstruction and single-mode norm values are
//!   exact; this is the default everywhere.
//! * `Smooth` — the classical `C^∞` bump `φ̂(ξ) = χ(ξ) - χ(2ξ)` built from the
//!   `exp(-1/x)` cutoff, supported on `[2^{j-1}, 2^{j+1}]`. Adjacent shells
//!   overlap; the family still sums to one, so reconstruction stays exact.
//!
//! The zero mode never belongs to a shell. Cumulative low-passes `Ṡ_j`
//! include it, which keeps `Ṡ_j c = c` for constants and makes the Bony
//! paraproduct of a constant exact.

use num_complex::Complex64;

use crate::field::SpectralField;
use crate::grid::Grid;

/// Shell symbol family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mollifier {
    #[default]
    Sharp,
    Smooth,
}

fn cutoff_theta(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth ramp: 0 for `t ≤ 0`, 1 for `t ≥ 1`.
fn ramp(t: f64) -> f64 {
    let a = cutoff_theta(t);
    let b = cutoff_theta(1.0 - t);
    if a == 0.0 {
        0.0
    } else if b == 0.0 {
        1.0
    } else {
        a / (a + b)
    }
}

/// Radial cutoff: 1 on `|ξ| ≤ 1`, 0 on `|ξ| ≥ 2`.
fn chi(r: f64) -> f64 {
    1.0 - ramp(r - 1.0)
}

/// Index `j` of the sharp shell containing `|k|`: `2^j ≤ |k| < 2^{j+1}`.
/// Exact at dyadic boundaries.
pub fn shell_index(knorm: f64) -> i32 {
    debug_assert!(knorm > 0.0);
    let mut j = knorm.log2().floor() as i32;
    while 2f64.powi(j + 1) <= knorm {
        j += 1;
    }
    while 2f64.powi(j) > knorm {
        j -= 1;
    }
    j
}

impl Mollifier {
    /// Symbol of the dyadic block `Δ̇_j` at wavenumber magnitude `knorm > 0`.
    pub fn shell_weight(&self, j: i32, knorm: f64) -> f64 {
        match self {
            Mollifier::Sharp => {
                if shell_index(knorm) == j {
                    1.0
                } else {
                    0.0
                }
            }
            Mollifier::Smooth => {
                let s = 2f64.powi(-j) * knorm;
                chi(s) - chi(2.0 * s)
            }
        }
    }

    /// Symbol of the cumulative low-pass `Ṡ_j = mean + Σ_{j' ≤ j-1} Δ̇_{j'}`
    /// at `knorm > 0` (the mean is handled by the caller).
    pub fn lowpass_weight(&self, j: i32, knorm: f64) -> f64 {
        match self {
            Mollifier::Sharp => {
                if knorm < 2f64.powi(j) {
                    1.0
                } else {
                    0.0
                }
            }
            Mollifier::Smooth => chi(2f64.powi(1 - j) * knorm),
        }
    }

    /// Shell indices that can be nonzero on `grid` (full lattice, Nyquist
    /// included).
    pub fn shell_bounds(&self, grid: &Grid) -> (i32, i32) {
        let kmin = grid.k_fundamental();
        let kmax = grid.k_max();
        let (lo, hi) = (shell_index(kmin), shell_index(kmax));
        match self {
            Mollifier::Sharp => (lo, hi),
            Mollifier::Smooth => (lo, hi + 1),
        }
    }
}

/// `Δ̇_j f`. Modes outside the shell's support are zeroed, the mean always.
pub fn dyadic_block(f: &SpectralField, j: i32, moll: Mollifier) -> SpectralField {
    let mut out = f.clone();
    out.apply_multiplier(|k| {
        let knorm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        if knorm == 0.0 {
            0.0
        } else {
            moll.shell_weight(j, knorm)
        }
    });
    out
}

/// `Δ̇_j f` plus an out-of-range flag: `true` means `j` lies outside the
/// representable shell range of the grid and the block is identically zero.
pub fn dyadic_block_flagged(f: &SpectralField, j: i32, moll: Mollifier) -> (SpectralField, bool) {
    let (lo, hi) = moll.shell_bounds(f.grid());
    let out_of_range = j < lo || j > hi;
    if out_of_range {
        (SpectralField::zeros(*f.grid(), f.ncomp()), true)
    } else {
        (dyadic_block(f, j, moll), false)
    }
}

/// `Ṡ_j f = mean + Σ_{j' ≤ j-1} Δ̇_{j'} f`. Monotone in `j`; the mean passes.
pub fn low_pass(f: &SpectralField, j: i32, moll: Mollifier) -> SpectralField {
    let mut out = f.clone();
    out.apply_multiplier(|k| {
        let knorm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        if knorm == 0.0 {
            1.0
        } else {
            moll.lowpass_weight(j, knorm)
        }
    });
    out
}

/// One shell of a decomposition, with its index and emptiness flag.
#[derive(Debug, Clone)]
pub struct ShellBlock {
    pub j: i32,
    pub block: SpectralField,
    /// L² mass of the block; zero shells carry no information.
    pub l2: f64,
}

/// Ordered set of shell fields `Δ̇_j f` plus the separated mean part.
///
/// Summing the shells and adding the mean reconstructs the field: exactly for
/// sharp shells (lattice partition), to the rounding of the telescoping `χ`
/// sums for smooth ones.
#[derive(Debug, Clone)]
pub struct DyadicDecomposition {
    pub shells: Vec<ShellBlock>,
    pub mean_part: Vec<Complex64>,
    pub mollifier: Mollifier,
    grid: Grid,
    ncomp: usize,
}

impl DyadicDecomposition {
    pub fn new(f: &SpectralField, moll: Mollifier) -> Self {
        let (lo, hi) = moll.shell_bounds(f.grid());
        let shells = (lo..=hi)
            .map(|j| {
                let block = dyadic_block(f, j, moll);
                let l2 = block.l2_norm();
                ShellBlock { j, block, l2 }
            })
            .collect();
        Self {
            shells,
            mean_part: (0..f.ncomp()).map(|c| f.mean(c)).collect(),
            mollifier: moll,
            grid: *f.grid(),
            ncomp: f.ncomp(),
        }
    }

    pub fn reconstruct(&self) -> SpectralField {
        let mut out = SpectralField::zeros(self.grid, self.ncomp);
        for shell in &self.shells {
            out.add_assign(&shell.block);
        }
        for (c, &m) in self.mean_part.iter().enumerate() {
            out.set_mean(c, m);
        }
        out
    }
}

/// High/low frequency split at threshold `ε`: low part collects shells
/// `q ≤ ⌊-log₂ ε⌋` (sharp classification, so the two spectra are disjoint and
/// `low + high + mean = f` exactly).
pub fn highlow_split(f: &SpectralField, eps: f64) -> (SpectralField, SpectralField) {
    assert!(eps > 0.0, "split threshold must be positive");
    let q_split = (-eps.log2()).floor() as i32;
    let boundary = 2f64.powi(q_split + 1);
    let mut low = f.clone();
    low.zero_mean();
    let mut high = low.clone();
    low.apply_multiplier(|k| {
        let knorm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        if knorm > 0.0 && knorm < boundary {
            1.0
        } else {
            0.0
        }
    });
    high.apply_multiplier(|k| {
        let knorm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        if knorm >= boundary {
            1.0
        } else {
            0.0
        }
    });
    (low, high)
}
