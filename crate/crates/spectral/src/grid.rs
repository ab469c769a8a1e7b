//! Periodic-box lattice: dimensions, wavenumbers and the dealiasing mask.

use crate::error::SpectralError;

/// A periodic box `[0, L)^d` sampled on `N` collocation points per axis.
///
/// Spectral coefficients live on the integer lattice `m ∈ {-N/2+1, ..., N/2}^d`
/// with physical wavenumber `k = (2π/L)·m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    d: usize,
    n: usize,
    len: f64,
}

impl Grid {
    /// `d ∈ {2,3}`, `n` a power of two with `n ≥ 8`, `len > 0`.
    pub fn new(d: usize, n: usize, len: f64) -> Result<Self, SpectralError> {
        if d != 2 && d != 3 {
            return Err(SpectralError::InvalidGrid(format!("dimension must be 2 or 3, got {d}")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(SpectralError::InvalidGrid(format!(
                "points per axis must be a power of two >= 8, got {n}"
            )));
        }
        if !(len > 0.0) || !len.is_finite() {
            return Err(SpectralError::InvalidGrid(format!("box length must be positive, got {len}")));
        }
        Ok(Self { d, n, len })
    }

    /// The `2π`-periodic box with integer wavenumbers.
    pub fn unit_torus(d: usize, n: usize) -> Result<Self, SpectralError> {
        Self::new(d, n, std::f64::consts::TAU)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.len
    }

    pub fn num_points(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.n; self.d]
    }

    /// Volume `L^d` of the box.
    pub fn volume(&self) -> f64 {
        self.len.powi(self.d as i32)
    }

    /// Collocation spacing `L/N`.
    pub fn spacing(&self) -> f64 {
        self.len / self.n as f64
    }

    /// Fundamental wavenumber `2π/L`.
    pub fn k_fundamental(&self) -> f64 {
        std::f64::consts::TAU / self.len
    }

    /// Signed integer index of FFT bin `i` (Nyquist mapped to `+N/2`).
    pub fn signed_index(&self, i: usize) -> i64 {
        if i <= self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Per-axis wavenumber table `k[i] = (2π/L)·signed(i)`.
    pub fn axis_wavenumbers(&self) -> Vec<f64> {
        let k0 = self.k_fundamental();
        (0..self.n).map(|i| k0 * self.signed_index(i) as f64).collect()
    }

    /// Largest integer index kept by the 2/3 dealiasing rule.
    pub fn dealias_cutoff(&self) -> i64 {
        (self.n / 3) as i64
    }

    /// Largest `|k|` representable on the full lattice (corner of the cube).
    pub fn k_max(&self) -> f64 {
        self.k_fundamental() * (self.n as f64 / 2.0) * (self.d as f64).sqrt()
    }

    /// Largest `|k|` surviving dealiasing.
    pub fn k_max_dealiased(&self) -> f64 {
        self.k_fundamental() * self.dealias_cutoff() as f64 * (self.d as f64).sqrt()
    }

    /// Visits every lattice site in row-major order with its flat offset and
    /// physical wavenumber (unused axes are zero).
    pub fn for_each_mode(&self, mut f: impl FnMut(usize, [f64; 3])) {
        let kt = self.axis_wavenumbers();
        let n = self.n;
        let mut flat = 0usize;
        match self.d {
            2 => {
                for i0 in 0..n {
                    let k0 = kt[i0];
                    for i1 in 0..n {
                        f(flat, [k0, kt[i1], 0.0]);
                        flat += 1;
                    }
                }
            }
            3 => {
                for i0 in 0..n {
                    let k0 = kt[i0];
                    for i1 in 0..n {
                        let k1 = kt[i1];
                        for i2 in 0..n {
                            f(flat, [k0, k1, kt[i2]]);
                            flat += 1;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    /// Same traversal with the signed integer lattice index.
    pub fn for_each_index(&self, mut f: impl FnMut(usize, [i64; 3])) {
        let n = self.n;
        let signed: Vec<i64> = (0..n).map(|i| self.signed_index(i)).collect();
        let mut flat = 0usize;
        match self.d {
            2 => {
                for i0 in 0..n {
                    for i1 in 0..n {
                        f(flat, [signed[i0], signed[i1], 0]);
                        flat += 1;
                    }
                }
            }
            3 => {
                for i0 in 0..n {
                    for i1 in 0..n {
                        for i2 in 0..n {
                            f(flat, [signed[i0], signed[i1], signed[i2]]);
                            flat += 1;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    /// Flat offset of the coefficient at signed lattice index `m`.
    pub fn flat_of_index(&self, m: [i64; 3]) -> usize {
        let n = self.n as i64;
        let mut flat = 0usize;
        for ax in 0..self.d {
            let i = m[ax].rem_euclid(n) as usize;
            flat = flat * self.n + i;
        }
        flat
    }

    /// Physical coordinates of collocation point with flat offset `flat`.
    pub fn point_of_flat(&self, flat: usize) -> [f64; 3] {
        let h = self.spacing();
        let mut idx = [0usize; 3];
        let mut rem = flat;
        for ax in (0..self.d).rev() {
            idx[ax] = rem % self.n;
            rem /= self.n;
        }
        let mut x = [0.0; 3];
        for ax in 0..self.d {
            x[ax] = idx[ax] as f64 * h;
        }
        x
    }

    /// True when the signed index passes the 2/3 rule on every axis.
    pub fn index_kept(&self, m: [i64; 3]) -> bool {
        let c = self.dealias_cutoff();
        (0..self.d).all(|ax| m[ax].abs() <= c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(1, 32, 1.0).is_err());
        assert!(Grid::new(2, 4, 1.0).is_err());
        assert!(Grid::new(2, 33, 1.0).is_err());
        assert!(Grid::new(2, 32, 0.0).is_err());
        assert!(Grid::new(2, 32, -1.0).is_err());
        assert!(Grid::new(3, 8, 2.0).is_ok());
    }

    #[test]
    fn signed_indices_cover_lattice() {
        let g = Grid::unit_torus(2, 8).unwrap();
        let signed: Vec<i64> = (0..8).map(|i| g.signed_index(i)).collect();
        assert_eq!(signed, vec![0, 1, 2, 3, 4, -3, -2, -1]);
    }

    #[test]
    fn flat_of_index_round_trip() {
        let g = Grid::unit_torus(3, 8).unwrap();
        let mut seen = vec![false; g.num_points()];
        g.for_each_index(|flat, m| {
            assert_eq!(g.flat_of_index(m), flat);
            seen[flat] = true;
        });
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn nyquist_is_cut() {
        let g = Grid::unit_torus(2, 16).unwrap();
        assert!(!g.index_kept([8, 0, 0]));
        assert!(g.index_kept([5, -5, 0]));
        assert!(!g.index_kept([6, 0, 0]));
    }
}
