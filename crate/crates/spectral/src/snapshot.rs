//! Binary snapshot format for spectral fields.
//!
//! Layout: header `{magic "MHDF", version u32, d u32, N per axis (d × u32),
//! L f64, component count u32}`, then little-endian f64 interleaved (re, im)
//! coefficients in row-major lattice order, one component after another.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::SpectralError;
use crate::field::SpectralField;
use crate::grid::Grid;

const MAGIC: &[u8; 4] = b"MHDF";
const VERSION: u32 = 1;

pub fn write_snapshot(path: &Path, f: &SpectralField) -> Result<(), SpectralError> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_to(&mut w, f)
}

pub fn write_to(w: &mut impl Write, f: &SpectralField) -> Result<(), SpectralError> {
    let grid = f.grid();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(grid.dim() as u32).to_le_bytes())?;
    for _ in 0..grid.dim() {
        w.write_all(&(grid.points_per_axis() as u32).to_le_bytes())?;
    }
    w.write_all(&grid.box_length().to_le_bytes())?;
    w.write_all(&(f.ncomp() as u32).to_le_bytes())?;
    for c in 0..f.ncomp() {
        for v in f.comp_slice(c) {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<SpectralField, SpectralError> {
    let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
    read_from(&mut r)
}

pub fn read_from(r: &mut impl Read) -> Result<SpectralField, SpectralError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(SpectralError::SnapshotFormat(format!(
            "bad magic {magic:?}, expected {MAGIC:?}"
        )));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(SpectralError::SnapshotFormat(format!(
            "unsupported version {version}"
        )));
    }
    let d = read_u32(r)? as usize;
    if d != 2 && d != 3 {
        return Err(SpectralError::SnapshotFormat(format!("bad dimension {d}")));
    }
    let mut n = 0usize;
    for ax in 0..d {
        let ni = read_u32(r)? as usize;
        if ax == 0 {
            n = ni;
        } else if ni != n {
            return Err(SpectralError::SnapshotFormat(
                "anisotropic grids are not supported".into(),
            ));
        }
    }
    let len = read_f64(r)?;
    let ncomp = read_u32(r)? as usize;
    if ncomp == 0 || ncomp > 3 {
        return Err(SpectralError::SnapshotFormat(format!(
            "bad component count {ncomp}"
        )));
    }
    let grid = Grid::new(d, n, len).map_err(|e| SpectralError::SnapshotFormat(e.to_string()))?;
    let mut f = SpectralField::zeros(grid, ncomp);
    for c in 0..ncomp {
        for v in f.comp_slice_mut(c) {
            let re = read_f64(r)?;
            let im = read_f64(r)?;
            *v = Complex64::new(re, im);
        }
    }
    Ok(f)
}

fn read_u32(r: &mut impl Read) -> Result<u32, SpectralError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64(r: &mut impl Read) -> Result<f64, SpectralError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}
