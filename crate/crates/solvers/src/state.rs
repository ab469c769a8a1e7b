//! Bundled MHD state: density variable, velocity and magnetic field, tagged
//! by the regime it evolves under.

use mhdlab_spectral::{div, leray, Grid, SpectralField};

use crate::error::SolverError;

/// Which system the state belongs to. The scaled regime carries its Mach
/// number; the density variable is `a = ρ - 1` (compressible) or `b` with
/// `ρ = 1 + εb` (scaled), and absent for incompressible flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    Compressible,
    Scaled { eps: f64 },
    Incompressible,
}

#[derive(Debug, Clone)]
pub struct MHDState {
    pub regime: Regime,
    /// `a` or `b^ε`; `None` in the incompressible regime.
    pub density: Option<SpectralField>,
    pub u: SpectralField,
    pub h: SpectralField,
    pub time: f64,
}

impl MHDState {
    pub fn compressible(a: SpectralField, u: SpectralField, h: SpectralField) -> Self {
        Self { regime: Regime::Compressible, density: Some(a), u, h, time: 0.0 }
    }

    pub fn scaled(b: SpectralField, u: SpectralField, h: SpectralField, eps: f64) -> Self {
        Self { regime: Regime::Scaled { eps }, density: Some(b), u, h, time: 0.0 }
    }

    pub fn incompressible(v: SpectralField, b: SpectralField) -> Self {
        Self { regime: Regime::Incompressible, density: None, u: v, h: b, time: 0.0 }
    }

    pub fn grid(&self) -> &Grid {
        self.u.grid()
    }

    /// Pointwise density `1 + a` (or `1 + εb`) minimum over the grid; `1.0`
    /// for incompressible states.
    pub fn min_density(&self) -> f64 {
        match (&self.density, self.regime) {
            (Some(a), Regime::Compressible) => 1.0 + a.phys_min(0),
            (Some(b), Regime::Scaled { eps }) => {
                let phys = b.to_physical(0);
                phys.iter().map(|&v| 1.0 + eps * v).fold(f64::INFINITY, f64::min)
            }
            _ => 1.0,
        }
    }

    /// `‖div H‖_{L²}` (and `‖div u‖` for incompressible states via
    /// [`MHDState::div_u_residual`]).
    pub fn div_h_residual(&self) -> f64 {
        div(&self.h).map(|d| d.l2_norm()).unwrap_or(f64::NAN)
    }

    pub fn div_u_residual(&self) -> f64 {
        div(&self.u).map(|d| d.l2_norm()).unwrap_or(f64::NAN)
    }

    /// Checks the structural invariants: solenoidal `H` (and `u` when
    /// incompressible), vacuum floor in the compressible regimes.
    pub fn validate(&self, vacuum_floor: f64) -> Result<(), SolverError> {
        let scale = 1.0 + self.h.l2_norm();
        if self.div_h_residual() > 1e-10 * scale {
            return Err(SolverError::NonSolenoidal { residual: self.div_h_residual() });
        }
        if self.regime == Regime::Incompressible {
            let uscale = 1.0 + self.u.l2_norm();
            if self.div_u_residual() > 1e-10 * uscale {
                return Err(SolverError::NonSolenoidal { residual: self.div_u_residual() });
            }
        }
        if self.density.is_some() {
            let min_density = self.min_density();
            if min_density < vacuum_floor {
                return Err(SolverError::VacuumApproach { min_density, floor: vacuum_floor });
            }
        }
        Ok(())
    }

    /// Re-projects `H` (and `u` for incompressible states) onto solenoidal
    /// fields; discrete nonlinearities drift off the constraint slightly.
    pub fn project_solenoidal(&mut self) {
        self.h = leray(&self.h).expect("vector H").0;
        if self.regime == Regime::Incompressible {
            self.u = leray(&self.u).expect("vector u").0;
        }
    }

    pub fn has_nan(&self) -> bool {
        self.u.has_nan()
            || self.h.has_nan()
            || self.density.as_ref().map(|d| d.has_nan()).unwrap_or(false)
    }

    /// Mach number of the scaled regime.
    pub fn eps(&self) -> Option<f64> {
        match self.regime {
            Regime::Scaled { eps } => Some(eps),
            _ => None,
        }
    }
}
