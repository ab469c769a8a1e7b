//! Bony paraproduct decomposition: low-high (`Ṫ_u v`), high-low (`Ṫ_v u`)
//! and resonant (`Ṙ(u,v)`) frequency interactions.
//!
//! With sharp shells the three pieces tile the set of shell pairs exactly, so
//! `Ṫ_u v + Ṫ_v u + Ṙ(u,v) = dealias(uv)` up to rounding — modulo the product
//! of the two means, which the homogeneous calculus drops (on the box the
//! classical "modulo polynomials" is modulo constants).

use crate::dyadic::{dyadic_block, low_pass, Mollifier};
use crate::error::SpectralError;
use crate::field::SpectralField;

fn physical_product(a: &SpectralField, b: &SpectralField) -> SpectralField {
    let pa = a.to_physical(0);
    let pb = b.to_physical(0);
    SpectralField::from_physical(*a.grid(), &[&pa * &pb]).dealiased()
}

/// `Ṫ_u v = Σ_q Ṡ_{q-1}u · Δ̇_q v`, products formed in physical space and
/// dealiased. Scalar fields on a shared grid.
pub fn paraproduct(u: &SpectralField, v: &SpectralField, moll: Mollifier) -> Result<SpectralField, SpectralError> {
    u.check_same_grid(v)?;
    expect_scalar(u, "paraproduct")?;
    expect_scalar(v, "paraproduct")?;
    let (lo, hi) = moll.shell_bounds(v.grid());
    let mut out = SpectralField::scalar_zeros(*u.grid());
    for q in lo..=hi {
        let sv = dyadic_block(v, q, moll);
        if sv.l2_norm() == 0.0 {
            continue;
        }
        let su = low_pass(u, q - 1, moll);
        out.add_assign(&physical_product(&su, &sv));
    }
    out.dealias();
    Ok(out)
}

/// `Ṙ(u,v) = Σ_q Δ̇_q u · Δ̃̇_q v` with `Δ̃̇_q = Δ̇_{q-1} + Δ̇_q + Δ̇_{q+1}`.
pub fn remainder(u: &SpectralField, v: &SpectralField, moll: Mollifier) -> Result<SpectralField, SpectralError> {
    u.check_same_grid(v)?;
    expect_scalar(u, "remainder")?;
    expect_scalar(v, "remainder")?;
    let (lo, hi) = moll.shell_bounds(u.grid());
    let mut out = SpectralField::scalar_zeros(*u.grid());
    for q in lo..=hi {
        let bu = dyadic_block(u, q, moll);
        if bu.l2_norm() == 0.0 {
            continue;
        }
        let mut tv = dyadic_block(v, q, moll);
        if q - 1 >= lo {
            tv.add_assign(&dyadic_block(v, q - 1, moll));
        }
        if q + 1 <= hi {
            tv.add_assign(&dyadic_block(v, q + 1, moll));
        }
        out.add_assign(&physical_product(&bu, &tv));
    }
    out.dealias();
    Ok(out)
}

fn expect_scalar(f: &SpectralField, what: &str) -> Result<(), SpectralError> {
    if !f.is_scalar() {
        return Err(SpectralError::ComponentMismatch(format!(
            "{what} expects scalar fields, got {} components",
            f.ncomp()
        )));
    }
    Ok(())
}
