//! The reduced acoustic system: per-mode rotation of `(b, Ψ)` at angular
//! rate `|k|/ε`, integrated exactly, with exact Duhamel for constant-in-time
//! forcing.
//!
//! The pair `(b^ε, d^ε := Λ^{-1}div 𝒫⊥u^ε)` of the scaled MHD system solves
//! exactly this flow once the nonlinearities are moved to the forcing slot.

use mhdlab_spectral::{Complex64, SpectralField};

use crate::error::SolverError;

/// Mean-free acoustic pair and its Mach number. Means are projected away at
/// construction: the homogeneous calculus carries no zero mode and the free
/// flow leaves it invariant anyway.
#[derive(Debug, Clone)]
pub struct AcousticState {
    pub b: SpectralField,
    pub psi: SpectralField,
    pub eps: f64,
}

impl AcousticState {
    pub fn new(mut b: SpectralField, mut psi: SpectralField, eps: f64) -> Result<Self, SolverError> {
        if !(eps > 0.0) {
            return Err(SolverError::NonPositiveMach(eps));
        }
        b.check_same_grid(&psi).map_err(SolverError::Spectral)?;
        b.zero_mean();
        psi.zero_mean();
        Ok(Self { b, psi, eps })
    }

    /// Acoustic energy `‖b‖² + ‖Ψ‖²`, conserved exactly by the free flow.
    pub fn energy(&self) -> f64 {
        let nb = self.b.l2_norm();
        let np = self.psi.l2_norm();
        nb * nb + np * np
    }
}

/// Advances the acoustic state by `t`. The free flow is the exact per-mode
/// rotation `b̂(t) = b̂₀cos θ - Ψ̂₀sin θ`, `Ψ̂(t) = Ψ̂₀cos θ + b̂₀sin θ` with
/// `θ = |k|t/ε`; a constant forcing pair `(F, G)` is folded in by exact
/// Duhamel per mode. Time-varying forcing is handled by composing sub-steps.
pub fn acoustic_flow(
    st: &AcousticState,
    t: f64,
    forcing: Option<(&SpectralField, &SpectralField)>,
) -> Result<AcousticState, SolverError> {
    if t < 0.0 {
        return Err(SolverError::Spectral(
            mhdlab_spectral::SpectralError::NegativeTime(t),
        ));
    }
    let grid = *st.b.grid();
    if let Some((f, g)) = forcing {
        st.b.check_same_grid(f).map_err(SolverError::Spectral)?;
        st.b.check_same_grid(g).map_err(SolverError::Spectral)?;
    }
    let mut out = st.clone();
    {
        let b0 = st.b.comp_slice(0);
        let p0 = st.psi.comp_slice(0);
        let fg = forcing.map(|(f, g)| (f.comp_slice(0), g.comp_slice(0)));
        let (bs, ps) = (&mut out.b, &mut out.psi);
        let mut bnew = vec![Complex64::default(); grid.num_points()];
        let mut pnew = vec![Complex64::default(); grid.num_points()];
        grid.for_each_mode(|flat, k| {
            let knorm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
            if knorm == 0.0 {
                return;
            }
            let omega = knorm / st.eps;
            let theta = omega * t;
            let (s, c) = theta.sin_cos();
            let (b, p) = (b0[flat], p0[flat]);
            let mut bn = c * b - s * p;
            let mut pn = c * p + s * b;
            if let Some((fs, gs)) = fg {
                // y' = A y + f with A = [[0, -ω], [ω, 0]]:
                // ∫₀ᵗ e^{A(t-τ)} f dτ = (1/ω)[[sinθ, cosθ-1], [1-cosθ, sinθ]] f
                let (fv, gv) = (fs[flat], gs[flat]);
                bn += (s * fv + (c - 1.0) * gv) / omega;
                pn += ((1.0 - c) * fv + s * gv) / omega;
            }
            bnew[flat] = bn;
            pnew[flat] = pn;
        });
        bs.comp_slice_mut(0).copy_from_slice(&bnew);
        ps.comp_slice_mut(0).copy_from_slice(&pnew);
    }
    Ok(out)
}
