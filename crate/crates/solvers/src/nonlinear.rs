//! Pseudo-spectral assembly of the nonlinear terms: everything is formed in
//! physical space; the 2/3 mask is applied on the way back unless a caller
//! explicitly disables dealiasing.

use mhdlab_spectral::{grad, Grid, SpectralField};
use ndarray::ArrayD;

/// Physical-space copy of a field, one real array per component.
pub struct Physical {
    pub comps: Vec<ArrayD<f64>>,
    pub grid: Grid,
}

impl Physical {
    pub fn of(f: &SpectralField) -> Self {
        Self { comps: f.to_physical_all(), grid: *f.grid() }
    }

    pub fn slice(&self, c: usize) -> &[f64] {
        self.comps[c].as_slice().expect("row-major")
    }
}

fn back_to_spectral(grid: Grid, phys: &[ArrayD<f64>], dealias: bool) -> SpectralField {
    let f = SpectralField::from_physical(grid, phys);
    if dealias {
        f.dealiased()
    } else {
        f
    }
}

/// `(v·∇)f` for vector `v` and scalar or vector `f`.
pub fn advect(v: &Physical, f: &SpectralField, dealias: bool) -> SpectralField {
    let grid = v.grid;
    let d = grid.dim();
    let nc = f.ncomp();
    let mut out_phys: Vec<ArrayD<f64>> = Vec::with_capacity(nc);
    for c in 0..nc {
        let dfc = Physical::of(&grad(&f.component(c)).expect("scalar component"));
        let mut acc = ArrayD::<f64>::zeros(ndarray::IxDyn(&grid.shape()));
        {
            let acc = acc.as_slice_mut().expect("row-major");
            for ax in 0..d {
                let va = v.slice(ax);
                let da = dfc.slice(ax);
                for (o, (a, b)) in acc.iter_mut().zip(va.iter().zip(da.iter())) {
                    *o += a * b;
                }
            }
        }
        out_phys.push(acc);
    }
    back_to_spectral(grid, &out_phys, dealias)
}

/// Pointwise product of a physical scalar factor with a spectral field.
pub fn scale_pointwise(factor: &[f64], f: &SpectralField, dealias: bool) -> SpectralField {
    let grid = *f.grid();
    let phys: Vec<ArrayD<f64>> = (0..f.ncomp())
        .map(|c| {
            let mut p = f.to_physical(c);
            for (v, s) in p.as_slice_mut().expect("row-major").iter_mut().zip(factor.iter()) {
                *v *= s;
            }
            p
        })
        .collect();
    back_to_spectral(grid, &phys, dealias)
}

/// Builds a scalar field from pointwise values on the collocation grid.
pub fn from_pointwise(grid: &Grid, f: impl Fn(usize) -> f64, dealias: bool) -> SpectralField {
    let mut phys = ArrayD::<f64>::zeros(ndarray::IxDyn(&grid.shape()));
    for (flat, v) in phys.as_slice_mut().unwrap().iter_mut().enumerate() {
        *v = f(flat);
    }
    back_to_spectral(*grid, &[phys], dealias)
}

/// Lorentz force `H·∇H - ½∇(|H|²)` assembled pseudo-spectrally.
pub fn lorentz(h: &SpectralField, dealias: bool) -> SpectralField {
    let grid = *h.grid();
    let hp = Physical::of(h);
    let mut out = advect(&hp, h, dealias);
    let mut h2 = ArrayD::<f64>::zeros(ndarray::IxDyn(&grid.shape()));
    {
        let h2 = h2.as_slice_mut().expect("row-major");
        for c in 0..h.ncomp() {
            let hc = hp.slice(c);
            for (o, v) in h2.iter_mut().zip(hc.iter()) {
                *o += 0.5 * v * v;
            }
        }
    }
    let grad_h2 = grad(&back_to_spectral(grid, &[h2], dealias)).expect("scalar");
    out.sub_assign(&grad_h2);
    out
}
