//! Physical parameters and the constitutive functions of the pressure law.

use crate::error::SolverError;

/// Viscosities, magnetic diffusivity and the isentropic pressure law
/// `P(ρ) = A ρ^γ`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhysicalParams {
    /// Shear viscosity, `μ > 0`.
    pub mu: f64,
    /// Bulk viscosity; only `2μ + λ > 0` is required.
    pub lambda: f64,
    /// Magnetic diffusivity, `ν > 0`.
    pub nu: f64,
    /// Pressure amplitude `A > 0`.
    pub pressure_a: f64,
    /// Adiabatic exponent `γ > 1`.
    pub gamma: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            mu: 0.1,
            lambda: 0.0,
            nu: 0.1,
            pressure_a: 1.0,
            gamma: 1.4,
        }
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.mu > 0.0) {
            return Err(SolverError::InvalidParameter(format!("mu must be positive, got {}", self.mu)));
        }
        if !(2.0 * self.mu + self.lambda > 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "2*mu + lambda must be positive, got {}",
                2.0 * self.mu + self.lambda
            )));
        }
        if !(self.nu > 0.0) {
            return Err(SolverError::InvalidParameter(format!("nu must be positive, got {}", self.nu)));
        }
        if !(self.pressure_a > 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "pressure amplitude must be positive, got {}",
                self.pressure_a
            )));
        }
        if !(self.gamma > 1.0) {
            return Err(SolverError::InvalidParameter(format!(
                "pressure law requires gamma > 1, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// Longitudinal viscosity `ν̄ = λ + 2μ`.
    pub fn nu_bar(&self) -> f64 {
        self.lambda + 2.0 * self.mu
    }

    /// `ν̲ = min{μ, ν}`.
    pub fn nu_lower(&self) -> f64 {
        self.mu.min(self.nu)
    }

    pub fn pressure(&self, rho: f64) -> f64 {
        self.pressure_a * rho.powf(self.gamma)
    }

    /// `P'(ρ) = Aγρ^{γ-1}`, positive on `ρ > 0`.
    pub fn pressure_prime(&self, rho: f64) -> f64 {
        self.pressure_a * self.gamma * rho.powf(self.gamma - 1.0)
    }

    /// Squared sound speed at the background state, `P'(1) = Aγ`.
    pub fn sound_speed_sq(&self) -> f64 {
        self.pressure_a * self.gamma
    }

    /// Pressure potential `Π(ρ) = A ρ^γ/(γ-1)` relative to the background:
    /// `Π(ρ) - Π(1) - Π'(1)(ρ-1)`, the convex part of the energy.
    pub fn pressure_potential_rel(&self, rho: f64) -> f64 {
        let g = self.gamma;
        let pi = |r: f64| self.pressure_a * r.powf(g) / (g - 1.0);
        let pi_prime_1 = self.pressure_a * g / (g - 1.0);
        pi(rho) - pi(1.0) - pi_prime_1 * (rho - 1.0)
    }
}

/// Constitutive functions of the density variable. `G` enters only through
/// its gradient; `I` and `K` vanish at zero so their contributions are
/// genuinely nonlinear.
#[derive(Debug, Clone, Copy)]
pub struct ConstitutiveFns {
    prm: PhysicalParams,
}

impl ConstitutiveFns {
    pub fn new(prm: PhysicalParams) -> Self {
        Self { prm }
    }

    /// `∇G(a) = (1/(1+a))∇P(1+a)` as the pointwise factor multiplying `∇a`:
    /// `P'(1+a)/(1+a)`.
    pub fn grad_g_factor(&self, a: f64) -> f64 {
        self.prm.pressure_prime(1.0 + a) / (1.0 + a)
    }

    /// `I(a) = a/(1+a)`; `I(0) = 0`.
    pub fn i_of(&self, a: f64) -> f64 {
        a / (1.0 + a)
    }

    /// `K(z) = P'(1+z)/(1+z) - P'(1)`, i.e. the pressure-gradient factor
    /// relative to its background value, so `K(0) = 0` for any admissible
    /// pressure law.
    pub fn k_of(&self, z: f64) -> f64 {
        self.grad_g_factor(z) - self.prm.sound_speed_sq()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        PhysicalParams::default().validate().unwrap();
    }

    #[test]
    fn constraint_violations_detected() {
        let mut p = PhysicalParams::default();
        p.lambda = -0.5;
        assert!(p.validate().is_err()); // 2μ+λ = -0.3
        let mut q = PhysicalParams::default();
        q.gamma = 0.5;
        assert!(q.validate().is_err());
    }

    #[test]
    fn constitutive_zeros() {
        let c = ConstitutiveFns::new(PhysicalParams::default());
        assert_eq!(c.i_of(0.0), 0.0);
        assert!(c.k_of(0.0).abs() < 1e-15);
        // P'(ρ) > 0
        assert!(PhysicalParams::default().pressure_prime(0.5) > 0.0);
    }

    #[test]
    fn pressure_potential_is_convex_at_background() {
        let p = PhysicalParams::default();
        assert_eq!(p.pressure_potential_rel(1.0), 0.0);
        assert!(p.pressure_potential_rel(1.2) > 0.0);
        assert!(p.pressure_potential_rel(0.8) > 0.0);
    }
}
