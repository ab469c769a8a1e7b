//! Seeded synthetic fields: random band-limited data and the analytic
//! profiles used as initial-data recipes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::SpectralField;
use crate::grid::Grid;
use crate::ops;

/// Random real field with spectrum supported on sharp shells
/// `jmin ≤ j ≤ jmax` (within the dealiased lattice). Deterministic in `seed`:
/// modes are visited in row-major order and only the canonical half-lattice
/// draws, so the Hermitian partner is fixed by symmetry.
pub fn random_band(
    grid: Grid,
    ncomp: usize,
    jmin: i32,
    jmax: i32,
    seed: u64,
    solenoidal: bool,
) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(grid, ncomp);
    let d = grid.dim();
    let k0 = grid.k_fundamental();
    let cutoff = grid.dealias_cutoff();
    let mut targets: Vec<[i64; 3]> = Vec::new();
    grid.for_each_index(|_, m| {
        if !is_canonical(m) {
            return;
        }
        if (0..d).any(|ax| m[ax].abs() > cutoff) {
            return;
        }
        let kn = k0 * ((m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) as f64).sqrt();
        if kn == 0.0 {
            return;
        }
        let j = crate::dyadic::shell_index(kn);
        if j >= jmin && j <= jmax {
            targets.push(m);
        }
    });
    for m in targets {
        for c in 0..ncomp {
            let re: f64 = rng.random_range(-1.0..1.0);
            let im: f64 = rng.random_range(-1.0..1.0);
            f.set_mode(c, m, Complex64::new(re, im));
        }
    }
    if solenoidal && ncomp == d {
        f = ops::leray(&f).expect("vector field").0;
    }
    f
}

fn is_canonical(m: [i64; 3]) -> bool {
    if m[0] != 0 {
        return m[0] > 0;
    }
    if m[1] != 0 {
        return m[1] > 0;
    }
    m[2] > 0
}

/// Scales the field so its `L²` norm equals `target`.
pub fn normalize_l2(f: &mut SpectralField, target: f64) {
    let n = f.l2_norm();
    if n > 0.0 {
        f.scale(target / n);
    }
}

/// The 2-d Taylor-Green vortex `v = (sin x cos y, -cos x sin y)`; with
/// `B = 0` it decays exactly as `e^{-2μt}` under the incompressible flow.
pub fn taylor_green(grid: Grid) -> SpectralField {
    assert_eq!(grid.dim(), 2, "taylor-green profile is 2-d");
    SpectralField::from_physical_fn(grid, 2, |x, c| match c {
        0 => x[0].sin() * x[1].cos(),
        _ => -(x[0].cos()) * x[1].sin(),
    })
}

/// Radial `C^∞` bump of unit height and support radius `width`, centered at
/// the box midpoint. Compactly supported: `exp(1 - 1/(1-(r/w)²))` inside.
pub fn radial_pulse(grid: Grid, width: f64) -> SpectralField {
    let half = grid.box_length() / 2.0;
    SpectralField::from_physical_fn(grid, 1, |x, _| {
        let mut r2 = 0.0;
        for ax in 0..grid.dim() {
            let dx = x[ax] - half;
            r2 += dx * dx;
        }
        let s = r2 / (width * width);
        if s >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - s)).exp()
        }
    })
}
