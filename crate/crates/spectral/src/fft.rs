//! d-dimensional FFT built from 1-D transforms along each lattice axis.
//!
//! Convention: `from_physical` produces coefficients `û_m` such that
//! `u(x) = Σ_m û_m e^{i k_m · x}`, i.e. the forward transform is normalized
//! by `1/N^d` and the inverse is unnormalized.

use std::cell::RefCell;
use std::sync::Arc;

use ndarray::{ArrayD, Axis};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::Grid;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if forward {
            p.plan_fft_forward(n)
        } else {
            p.plan_fft_inverse(n)
        }
    })
}

fn transform_axes(data: &mut ArrayD<Complex64>, n: usize, forward: bool) {
    let fft = plan(n, forward);
    let mut lane = vec![Complex64::default(); n];
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    for ax in 0..data.ndim() {
        for mut l in data.lanes_mut(Axis(ax)) {
            for (dst, src) in lane.iter_mut().zip(l.iter()) {
                *dst = *src;
            }
            fft.process_with_scratch(&mut lane, &mut scratch);
            for (dst, src) in l.iter_mut().zip(lane.iter()) {
                *dst = *src;
            }
        }
    }
}

/// Physical samples -> normalized spectral coefficients.
pub fn forward(grid: &Grid, physical: &ArrayD<f64>) -> ArrayD<Complex64> {
    let mut data = physical.mapv(|v| Complex64::new(v, 0.0));
    transform_axes(&mut data, grid.points_per_axis(), true);
    let scale = 1.0 / grid.num_points() as f64;
    data.mapv_inplace(|v| v * scale);
    data
}

/// Spectral coefficients -> physical samples (real part; Hermitian input
/// leaves only rounding in the imaginary part).
pub fn inverse(grid: &Grid, spectral: &ArrayD<Complex64>) -> ArrayD<f64> {
    let mut data = spectral.clone();
    transform_axes(&mut data, grid.points_per_axis(), false);
    data.mapv(|v| v.re)
}

/// Unnormalized complex inverse, for callers that need the imaginary residue.
pub fn inverse_complex(grid: &Grid, spectral: &ArrayD<Complex64>) -> ArrayD<Complex64> {
    let mut data = spectral.clone();
    transform_axes(&mut data, grid.points_per_axis(), false);
    data
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::IxDyn;

    #[test]
    fn round_trip_is_identity() {
        let grid = Grid::unit_torus(2, 16).unwrap();
        let mut phys = ArrayD::<f64>::zeros(IxDyn(&grid.shape()));
        let h = grid.spacing();
        for (idx, v) in phys.indexed_iter_mut() {
            let x = idx[0] as f64 * h;
            let y = idx[1] as f64 * h;
            *v = (3.0 * x).cos() * (2.0 * y).sin() + 0.25;
        }
        let spec = forward(&grid, &phys);
        let back = inverse(&grid, &spec);
        let err = phys
            .iter()
            .zip(back.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(err < 1e-12, "round trip error {err}");
    }

    #[test]
    fn single_mode_coefficient() {
        let grid = Grid::unit_torus(2, 16).unwrap();
        let mut phys = ArrayD::<f64>::zeros(IxDyn(&grid.shape()));
        let h = grid.spacing();
        for (idx, v) in phys.indexed_iter_mut() {
            *v = (4.0 * (idx[0] as f64 * h)).cos();
        }
        let spec = forward(&grid, &phys);
        let at = spec[IxDyn(&[4, 0])];
        assert!((at - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        let neg = spec[IxDyn(&[12, 0])];
        assert!((neg - Complex64::new(0.5, 0.0)).norm() < 1e-13);
    }
}
