//! The universal field representation: Fourier coefficients of one scalar or
//! vector quantity on a periodic box.

use ndarray::{ArrayD, IxDyn};
use num_complex::Complex64;

use crate::error::SpectralError;
use crate::fft;
use crate::grid::Grid;

/// A real-valued field stored as complex Fourier coefficients, one array per
/// component (1 for scalars, `d` for vectors). Hermitian symmetry
/// `û(-m) = conj û(m)` is the standing invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    comps: Vec<ArrayD<Complex64>>,
}

impl SpectralField {
    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        let shape = IxDyn(&grid.shape());
        Self {
            grid,
            comps: (0..ncomp).map(|_| ArrayD::zeros(shape.clone())).collect(),
        }
    }

    pub fn scalar_zeros(grid: Grid) -> Self {
        Self::zeros(grid, 1)
    }

    pub fn vector_zeros(grid: Grid) -> Self {
        Self::zeros(grid, grid.dim())
    }

    /// Builds a field by sampling `f(x, component)` on the collocation grid.
    pub fn from_physical_fn(grid: Grid, ncomp: usize, mut f: impl FnMut([f64; 3], usize) -> f64) -> Self {
        let shape = IxDyn(&grid.shape());
        let comps = (0..ncomp)
            .map(|c| {
                let mut phys = ArrayD::<f64>::zeros(shape.clone());
                let slice = phys.as_slice_mut().expect("row-major");
                for (flat, v) in slice.iter_mut().enumerate() {
                    *v = f(grid.point_of_flat(flat), c);
                }
                fft::forward(&grid, &phys)
            })
            .collect();
        Self { grid, comps }
    }

    pub fn from_physical(grid: Grid, phys: &[ArrayD<f64>]) -> Self {
        Self {
            grid,
            comps: phys.iter().map(|p| fft::forward(&grid, p)).collect(),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.comps.len()
    }

    pub fn is_scalar(&self) -> bool {
        self.comps.len() == 1
    }

    pub fn is_vector(&self) -> bool {
        self.comps.len() == self.grid.dim()
    }

    pub fn comp(&self, c: usize) -> &ArrayD<Complex64> {
        &self.comps[c]
    }

    pub fn comp_mut(&mut self, c: usize) -> &mut ArrayD<Complex64> {
        &mut self.comps[c]
    }

    pub fn comp_slice(&self, c: usize) -> &[Complex64] {
        self.comps[c].as_slice().expect("row-major")
    }

    pub fn comp_slice_mut(&mut self, c: usize) -> &mut [Complex64] {
        self.comps[c].as_slice_mut().expect("row-major")
    }

    /// Extracts component `c` as a scalar field.
    pub fn component(&self, c: usize) -> SpectralField {
        SpectralField {
            grid: self.grid,
            comps: vec![self.comps[c].clone()],
        }
    }

    pub fn from_components(comps: Vec<SpectralField>) -> Self {
        let grid = comps[0].grid;
        Self {
            grid,
            comps: comps.into_iter().flat_map(|f| f.comps).collect(),
        }
    }

    pub fn to_physical(&self, c: usize) -> ArrayD<f64> {
        fft::inverse(&self.grid, &self.comps[c])
    }

    pub fn to_physical_all(&self) -> Vec<ArrayD<f64>> {
        (0..self.ncomp()).map(|c| self.to_physical(c)).collect()
    }

    /// Sets the coefficient at signed lattice index `m` together with the
    /// Hermitian partner at `-m`.
    pub fn set_mode(&mut self, c: usize, m: [i64; 3], value: Complex64) {
        let flat = self.grid.flat_of_index(m);
        let neg = self.grid.flat_of_index([-m[0], -m[1], -m[2]]);
        let slice = self.comp_slice_mut(c);
        slice[flat] = value;
        if neg != flat {
            slice[neg] = value.conj();
        } else {
            slice[flat] = Complex64::new(value.re, 0.0);
        }
    }

    pub fn mode(&self, c: usize, m: [i64; 3]) -> Complex64 {
        self.comp_slice(c)[self.grid.flat_of_index(m)]
    }

    /// Mean (zero-mode) per component.
    pub fn mean(&self, c: usize) -> Complex64 {
        self.comp_slice(c)[0]
    }

    pub fn set_mean(&mut self, c: usize, value: Complex64) {
        self.comp_slice_mut(c)[0] = value;
    }

    pub fn zero_mean(&mut self) {
        for c in 0..self.ncomp() {
            self.comp_slice_mut(c)[0] = Complex64::default();
        }
    }

    /// Applies the 2/3 rule: every mode with an axis index beyond `N/3` is
    /// zeroed, Nyquist planes included.
    pub fn dealias(&mut self) {
        let cutoff = self.grid.dealias_cutoff();
        let grid = self.grid;
        for c in 0..self.ncomp() {
            let slice = self.comp_slice_mut(c);
            grid.for_each_index(|flat, m| {
                if (0..grid.dim()).any(|ax| m[ax].abs() > cutoff) {
                    slice[flat] = Complex64::default();
                }
            });
        }
    }

    pub fn dealiased(mut self) -> Self {
        self.dealias();
        self
    }

    /// Multiplies every coefficient by `w(k)` (same weight for all components).
    pub fn apply_multiplier(&mut self, mut w: impl FnMut([f64; 3]) -> f64) {
        let grid = self.grid;
        // Evaluate once per mode, reuse across components.
        let npts = grid.num_points();
        let mut weights = vec![0.0f64; npts];
        grid.for_each_mode(|flat, k| weights[flat] = w(k));
        for c in 0..self.ncomp() {
            let slice = self.comp_slice_mut(c);
            for (v, &wk) in slice.iter_mut().zip(weights.iter()) {
                *v *= wk;
            }
        }
    }

    /// Same with a complex symbol.
    pub fn apply_multiplier_complex(&mut self, mut w: impl FnMut([f64; 3]) -> Complex64) {
        let grid = self.grid;
        let npts = grid.num_points();
        let mut weights = vec![Complex64::default(); npts];
        grid.for_each_mode(|flat, k| weights[flat] = w(k));
        for c in 0..self.ncomp() {
            let slice = self.comp_slice_mut(c);
            for (v, &wk) in slice.iter_mut().zip(weights.iter()) {
                *v *= wk;
            }
        }
    }

    pub fn scale(&mut self, a: f64) {
        for c in 0..self.ncomp() {
            for v in self.comp_slice_mut(c) {
                *v *= a;
            }
        }
    }

    pub fn scaled(mut self, a: f64) -> Self {
        self.scale(a);
        self
    }

    pub fn add_assign(&mut self, other: &SpectralField) {
        self.add_scaled(other, 1.0);
    }

    pub fn sub_assign(&mut self, other: &SpectralField) {
        self.add_scaled(other, -1.0);
    }

    /// `self += a·other`.
    pub fn add_scaled(&mut self, other: &SpectralField, a: f64) {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        assert_eq!(self.ncomp(), other.ncomp(), "component mismatch");
        for c in 0..self.ncomp() {
            let src = other.comp_slice(c);
            for (dst, s) in self.comps[c]
                .as_slice_mut()
                .expect("row-major")
                .iter_mut()
                .zip(src.iter())
            {
                *dst += a * s;
            }
        }
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// `L²` norm over the box, all components combined.
    pub fn l2_norm(&self) -> f64 {
        let vol = self.grid.volume();
        let mut sum = 0.0;
        for c in 0..self.ncomp() {
            for v in self.comp_slice(c) {
                sum += v.norm_sqr();
            }
        }
        (vol * sum).sqrt()
    }

    /// Grid max of the pointwise Euclidean magnitude.
    pub fn linf_norm(&self) -> f64 {
        let phys = self.to_physical_all();
        let npts = self.grid.num_points();
        let mut maxv = 0.0f64;
        for flat in 0..npts {
            let mut mag2 = 0.0;
            for p in &phys {
                let v = p.as_slice().expect("row-major")[flat];
                mag2 += v * v;
            }
            maxv = maxv.max(mag2);
        }
        maxv.sqrt()
    }

    /// Pointwise minimum of component `c` on the collocation grid.
    pub fn phys_min(&self, c: usize) -> f64 {
        self.to_physical(c).iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest Hermitian-symmetry violation `|û(m) - conj û(-m)|`.
    pub fn hermitian_error(&self) -> f64 {
        let grid = self.grid;
        let mut err = 0.0f64;
        for c in 0..self.ncomp() {
            let slice = self.comp_slice(c);
            grid.for_each_index(|flat, m| {
                let neg = grid.flat_of_index([-m[0], -m[1], -m[2]]);
                err = err.max((slice[flat] - slice[neg].conj()).norm());
            });
        }
        err
    }

    pub fn has_nan(&self) -> bool {
        self.comps
            .iter()
            .any(|c| c.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()))
    }

    pub fn check_same_grid(&self, other: &SpectralField) -> Result<(), SpectralError> {
        if self.grid != other.grid {
            return Err(SpectralError::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    /// Reinterprets the same coefficients on a box shrunk by `2^m`, i.e. the
    /// dyadic rescaling `u(x) -> u(2^m x)` with the domain refined alongside.
    /// Every wavenumber doubles `m` times; `L²` mass drops by `2^{-md/2}`.
    pub fn rescale_dyadic(&self, m: i32) -> SpectralField {
        let factor = 2f64.powi(m);
        let grid = Grid::new(self.grid.dim(), self.grid.points_per_axis(), self.grid.box_length() / factor)
            .expect("rescaled grid");
        SpectralField {
            grid,
            comps: self.comps.clone(),
        }
    }
}

/// Pointwise physical-space product of two scalar fields, dealiased.
pub fn mul_scalar(a: &SpectralField, b: &SpectralField) -> Result<SpectralField, SpectralError> {
    a.check_same_grid(b)?;
    if !a.is_scalar() || !b.is_scalar() {
        return Err(SpectralError::ComponentMismatch(
            "mul_scalar expects scalar fields".into(),
        ));
    }
    let pa = a.to_physical(0);
    let pb = b.to_physical(0);
    let prod = &pa * &pb;
    Ok(SpectralField::from_physical(*a.grid(), &[prod]).dealiased())
}
