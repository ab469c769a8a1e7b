//! Explicit advection step for the linear transport equation
//! `∂_t a + v·∇a = f` with frozen coefficients.

use mhdlab_spectral::SpectralField;

use crate::error::SolverError;
use crate::nonlinear::{advect, Physical};

/// One classical RK4 step with dealiased products. `v` and `f` are held
/// fixed over the step. Enforces the advective CFL `dt·max|v|/Δx ≤ 1`.
pub fn transport_step(
    a: &SpectralField,
    v: &SpectralField,
    f: &SpectralField,
    dt: f64,
) -> Result<SpectralField, SolverError> {
    a.check_same_grid(v).map_err(SolverError::Spectral)?;
    a.check_same_grid(f).map_err(SolverError::Spectral)?;
    if !(dt > 0.0) {
        return Err(SolverError::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    let vmax = v.linf_norm();
    let dx = a.grid().spacing();
    if dt * vmax / dx > 1.0 {
        return Err(SolverError::CflViolation { dt, suggested: 0.9 * dx / vmax });
    }
    let vp = Physical::of(v);
    let rhs = |state: &SpectralField| {
        let mut t = advect(&vp, state, true);
        t.scale(-1.0);
        t.add_assign(f);
        t
    };
    let k1 = rhs(a);
    let mut s = a.clone();
    s.add_scaled(&k1, 0.5 * dt);
    let k2 = rhs(&s);
    let mut s = a.clone();
    s.add_scaled(&k2, 0.5 * dt);
    let k3 = rhs(&s);
    let mut s = a.clone();
    s.add_scaled(&k3, dt);
    let k4 = rhs(&s);
    let mut out = a.clone();
    out.add_scaled(&k1, dt / 6.0);
    out.add_scaled(&k2, dt / 3.0);
    out.add_scaled(&k3, dt / 3.0);
    out.add_scaled(&k4, dt / 6.0);
    Ok(out)
}
