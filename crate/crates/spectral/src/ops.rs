//! Fourier-multiplier operators: Leray splitting, fractional Laplacian
//! powers, heat semigroups, Friedrichs projection and exact spectral
//! differentiation.
//!
//! Zero-mode conventions: the Leray projector `𝒫` keeps the mean, `𝒫⊥` and
//! `Λ^σ` annihilate it (`Λ^{-σ}` of a field with nonzero mean is an error).

use num_complex::Complex64;

use crate::error::SpectralError;
use crate::field::SpectralField;

/// Catalog of the diagonal (or d×d block-diagonal) multipliers used by the
/// solvers. `apply` dispatches to the free functions below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MultiplierOp {
    Leray,
    LerayPerp,
    LambdaPower(f64),
    Heat { nu: f64, t: f64 },
    Friedrichs(u32),
    Grad,
    Div,
    Curl,
    Laplacian,
    /// The viscosity operator `μΔ + (λ+μ)∇div`.
    ViscosityA { mu: f64, lambda: f64 },
}

impl MultiplierOp {
    pub fn apply(&self, f: &SpectralField) -> Result<SpectralField, SpectralError> {
        match *self {
            MultiplierOp::Leray => Ok(leray(f)?.0),
            MultiplierOp::LerayPerp => Ok(leray(f)?.1),
            MultiplierOp::LambdaPower(sigma) => lambda_power(f, sigma),
            MultiplierOp::Heat { nu, t } => heat_flow(f, nu, t),
            MultiplierOp::Friedrichs(n) => Ok(friedrichs(f, n)),
            MultiplierOp::Grad => grad(f),
            MultiplierOp::Div => div(f),
            MultiplierOp::Curl => curl(f),
            MultiplierOp::Laplacian => Ok(laplacian(f)),
            MultiplierOp::ViscosityA { mu, lambda } => viscosity_a(f, mu, lambda),
        }
    }
}

fn knorm2(k: [f64; 3]) -> f64 {
    k[0] * k[0] + k[1] * k[1] + k[2] * k[2]
}

/// Helmholtz/Leray splitting `u = 𝒫u + 𝒫⊥u`: per mode
/// `û ↦ (I - kkᵀ/|k|²)û`. The mean mode belongs entirely to `𝒫u`.
pub fn leray(u: &SpectralField) -> Result<(SpectralField, SpectralField), SpectralError> {
    let grid = *u.grid();
    let d = grid.dim();
    if u.ncomp() != d {
        return Err(SpectralError::ComponentMismatch(format!(
            "leray expects a {d}-vector field, got {} components",
            u.ncomp()
        )));
    }
    let mut sol = u.clone();
    let mut pot = SpectralField::vector_zeros(grid);
    let npts = grid.num_points();
    let mut kdotu = vec![Complex64::default(); npts];
    for c in 0..d {
        let slice = u.comp_slice(c);
        grid.for_each_mode(|flat, k| {
            kdotu[flat] += k[c] * slice[flat];
        });
    }
    for c in 0..d {
        let pslice = pot.comp_slice_mut(c);
        grid.for_each_mode(|flat, k| {
            let k2 = knorm2(k);
            if k2 > 0.0 {
                pslice[flat] = k[c] * kdotu[flat] / k2;
            }
        });
        let pslice = pot.comp_slice(c).to_vec();
        for (s, p) in sol.comp_slice_mut(c).iter_mut().zip(pslice) {
            *s -= p;
        }
    }
    Ok((sol, pot))
}

/// `Λ^σ = (-Δ)^{σ/2}`: multiplier `|k|^σ`. The zero mode maps to zero; for
/// `σ < 0` a nonzero mean is rejected.
pub fn lambda_power(f: &SpectralField, sigma: f64) -> Result<SpectralField, SpectralError> {
    if sigma == 0.0 {
        return Ok(f.clone());
    }
    if sigma < 0.0 {
        let mean_mag: f64 = (0..f.ncomp()).map(|c| f.mean(c).norm()).sum();
        if mean_mag > 1e-14 * (1.0 + f.l2_norm()) {
            return Err(SpectralError::LambdaInverseMean);
        }
    }
    let mut out = f.clone();
    out.apply_multiplier(|k| {
        let k2 = knorm2(k);
        if k2 > 0.0 {
            k2.sqrt().powf(sigma)
        } else {
            0.0
        }
    });
    Ok(out)
}

/// Heat semigroup `e^{νtΔ}`: per-mode factor `e^{-ν|k|²t}`.
pub fn heat_flow(f: &SpectralField, nu: f64, t: f64) -> Result<SpectralField, SpectralError> {
    if t < 0.0 {
        return Err(SpectralError::NegativeTime(t));
    }
    let mut out = f.clone();
    out.apply_multiplier(|k| (-nu * knorm2(k) * t).exp());
    Ok(out)
}

/// Semigroup of the viscosity operator `𝒜 = μΔ + (λ+μ)∇div` on vector
/// fields: `e^{-μ|k|²t}` on the solenoidal part, `e^{-(2μ+λ)|k|²t}` on the
/// potential part.
pub fn viscous_heat_flow(
    u: &SpectralField,
    mu: f64,
    lambda: f64,
    t: f64,
) -> Result<SpectralField, SpectralError> {
    if t < 0.0 {
        return Err(SpectralError::NegativeTime(t));
    }
    let (sol, pot) = leray(u)?;
    let mut out = heat_flow(&sol, mu, t)?;
    out.add_assign(&heat_flow(&pot, 2.0 * mu + lambda, t)?);
    Ok(out)
}

/// Friedrichs spectral truncation `Ė_n`: zeroes every mode with `|k| < 1/n`
/// or `|k| > n` (the mean included). Idempotent.
pub fn friedrichs(f: &SpectralField, n: u32) -> SpectralField {
    assert!(n >= 1, "friedrichs parameter must be >= 1");
    let lo = 1.0 / n as f64;
    let hi = n as f64;
    let mut out = f.clone();
    out.apply_multiplier(|k| {
        let kn = knorm2(k).sqrt();
        if kn >= lo && kn <= hi {
            1.0
        } else {
            0.0
        }
    });
    out
}

/// `∇f` of a scalar: multiplier `ik` per component.
pub fn grad(f: &SpectralField) -> Result<SpectralField, SpectralError> {
    if !f.is_scalar() {
        return Err(SpectralError::ComponentMismatch(
            "grad expects a scalar field".into(),
        ));
    }
    let grid = *f.grid();
    let d = grid.dim();
    let mut out = SpectralField::zeros(grid, d);
    let src = f.comp_slice(0).to_vec();
    for c in 0..d {
        let dst = out.comp_slice_mut(c);
        grid.for_each_mode(|flat, k| {
            dst[flat] = Complex64::new(0.0, k[c]) * src[flat];
        });
    }
    Ok(out)
}

/// `div u` of a vector: `Σ_c ik_c û_c`.
pub fn div(u: &SpectralField) -> Result<SpectralField, SpectralError> {
    let grid = *u.grid();
    let d = grid.dim();
    if u.ncomp() != d {
        return Err(SpectralError::ComponentMismatch(format!(
            "div expects a {d}-vector field, got {} components",
            u.ncomp()
        )));
    }
    let mut out = SpectralField::scalar_zeros(grid);
    for c in 0..d {
        let src = u.comp_slice(c).to_vec();
        let dst = out.comp_slice_mut(0);
        grid.for_each_mode(|flat, k| {
            dst[flat] += Complex64::new(0.0, k[c]) * src[flat];
        });
    }
    Ok(out)
}

/// Curl: in 3-d a vector field maps to `ik × û`; in 2-d a vector maps to the
/// scalar vorticity `∂_x u_y - ∂_y u_x`.
pub fn curl(u: &SpectralField) -> Result<SpectralField, SpectralError> {
    let grid = *u.grid();
    let d = grid.dim();
    if u.ncomp() != d {
        return Err(SpectralError::ComponentMismatch(format!(
            "curl expects a {d}-vector field, got {} components",
            u.ncomp()
        )));
    }
    match d {
        2 => {
            let mut out = SpectralField::scalar_zeros(grid);
            let ux = u.comp_slice(0).to_vec();
            let uy = u.comp_slice(1).to_vec();
            let dst = out.comp_slice_mut(0);
            grid.for_each_mode(|flat, k| {
                dst[flat] = Complex64::new(0.0, k[0]) * uy[flat] - Complex64::new(0.0, k[1]) * ux[flat];
            });
            Ok(out)
        }
        3 => {
            let mut out = SpectralField::vector_zeros(grid);
            let comps: Vec<Vec<Complex64>> = (0..3).map(|c| u.comp_slice(c).to_vec()).collect();
            for c in 0..3 {
                let (a, b) = ((c + 1) % 3, (c + 2) % 3);
                let dst = out.comp_slice_mut(c);
                grid.for_each_mode(|flat, k| {
                    dst[flat] = Complex64::new(0.0, k[a]) * comps[b][flat]
                        - Complex64::new(0.0, k[b]) * comps[a][flat];
                });
            }
            Ok(out)
        }
        _ => unreachable!(),
    }
}

/// `Δf`: multiplier `-|k|²`, any component count.
pub fn laplacian(f: &SpectralField) -> SpectralField {
    let mut out = f.clone();
    out.apply_multiplier(|k| -knorm2(k));
    out
}

/// The viscosity operator `𝒜u = μΔu + (λ+μ)∇div u` as a tendency.
pub fn viscosity_a(u: &SpectralField, mu: f64, lambda: f64) -> Result<SpectralField, SpectralError> {
    let mut out = laplacian(u).scaled(mu);
    out.add_scaled(&grad(&div(u)?)?, lambda + mu);
    Ok(out)
}

/// `‖∇f‖_{L²} = (Σ_k |k|²|f̂_k|²·vol)^{1/2}`, all components combined.
pub fn grad_norm(f: &SpectralField) -> f64 {
    let grid = *f.grid();
    let mut sum = 0.0;
    for c in 0..f.ncomp() {
        let slice = f.comp_slice(c);
        grid.for_each_mode(|flat, k| {
            sum += knorm2(k) * slice[flat].norm_sqr();
        });
    }
    (grid.volume() * sum).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::synth;

    #[test]
    fn gradient_field_is_pure_potential() {
        let grid = Grid::unit_torus(2, 32).unwrap();
        let mut psi = SpectralField::scalar_zeros(grid);
        psi.set_mode(0, [1, 0, 0], Complex64::new(0.0, -0.5)); // sin x
        let u = grad(&psi).unwrap();
        let (p, q) = leray(&u).unwrap();
        assert!(p.l2_norm() < 1e-13 * u.l2_norm());
        assert!(q.sub(&u).l2_norm() < 1e-13 * u.l2_norm());
    }

    #[test]
    fn stream_function_field_is_solenoidal() {
        let grid = Grid::unit_torus(2, 32).unwrap();
        // ψ = sin x sin y, u = (-∂_y ψ, ∂_x ψ)
        let psi = SpectralField::from_physical_fn(grid, 1, |x, _| x[0].sin() * x[1].sin());
        let gpsi = grad(&psi).unwrap();
        let mut u = SpectralField::vector_zeros(grid);
        u.comp_mut(0).assign(&gpsi.comp(1).mapv(|v| -v));
        u.comp_mut(1).assign(gpsi.comp(0));
        let (p, q) = leray(&u).unwrap();
        assert!(q.l2_norm() < 1e-13 * u.l2_norm());
        assert!(p.sub(&u).l2_norm() < 1e-13 * u.l2_norm());
    }

    #[test]
    fn leray_identities_random() {
        for d in [2usize, 3] {
            let grid = Grid::unit_torus(d, 16).unwrap();
            let u = synth::random_band(grid, d, 0, 2, 5, false);
            let (p, q) = leray(&u).unwrap();
            let norm = u.l2_norm();
            assert!(p.add(&q).sub(&u).l2_norm() <= 1e-12 * norm);
            assert!(div(&p).unwrap().l2_norm() <= 1e-12 * norm);
            if d == 3 {
                assert!(curl(&q).unwrap().l2_norm() <= 1e-12 * norm);
            } else {
                assert!(curl(&q).unwrap().l2_norm() <= 1e-12 * norm);
            }
            // idempotence
            let (pp, pq) = leray(&p).unwrap();
            assert!(pp.sub(&p).l2_norm() <= 1e-12 * norm);
            assert!(pq.l2_norm() <= 1e-12 * norm);
            // orthogonality
            let dot: f64 = (0..d)
                .map(|c| {
                    p.comp_slice(c)
                        .iter()
                        .zip(q.comp_slice(c))
                        .map(|(a, b)| (a * b.conj()).re)
                        .sum::<f64>()
                })
                .sum::<f64>()
                * grid.volume();
            assert!(dot.abs() <= 1e-12 * norm * norm);
        }
    }

    #[test]
    fn lambda_power_examples() {
        let grid = Grid::unit_torus(2, 32).unwrap();
        let mut f = SpectralField::scalar_zeros(grid);
        f.set_mode(0, [3, 0, 0], Complex64::new(0.5, 0.0)); // cos 3x
        let g = lambda_power(&f, 2.0).unwrap();
        assert!(g.sub(&f.clone().scaled(9.0)).l2_norm() < 1e-13);
        // σ = 0 is the identity
        let id = lambda_power(&f, 0.0).unwrap();
        assert_eq!(id, f);
        // round trip on mean-free fields
        let rt = lambda_power(&lambda_power(&f, -1.0).unwrap(), 1.0).unwrap();
        assert!(rt.sub(&f).l2_norm() < 1e-13);
        // nonzero mean rejected for negative powers
        let mut g2 = f.clone();
        g2.set_mean(0, Complex64::new(1.0, 0.0));
        assert!(matches!(
            lambda_power(&g2, -1.0),
            Err(SpectralError::LambdaInverseMean)
        ));
    }

    #[test]
    fn heat_flow_examples() {
        let grid = Grid::unit_torus(2, 32).unwrap();
        let mut f = SpectralField::scalar_zeros(grid);
        f.set_mode(0, [3, 0, 0], Complex64::new(0.5, 0.0));
        let g = heat_flow(&f, 0.1, 2.0).unwrap();
        let factor = (-1.8f64).exp();
        assert!((g.mode(0, [3, 0, 0]).re - 0.5 * factor).abs() < 1e-15);
        // constants unchanged
        let mut c = SpectralField::scalar_zeros(grid);
        c.set_mean(0, Complex64::new(4.2, 0.0));
        assert_eq!(heat_flow(&c, 1.0, 3.0).unwrap().mean(0).re, 4.2);
        // semigroup property
        let one = heat_flow(&heat_flow(&f, 0.3, 0.7).unwrap(), 0.3, 0.55).unwrap();
        let two = heat_flow(&f, 0.3, 1.25).unwrap();
        assert!(one.sub(&two).l2_norm() < 1e-13 * f.l2_norm());
        // energy never grows
        assert!(g.l2_norm() <= f.l2_norm());
        assert!(heat_flow(&f, 0.1, -1.0).is_err());
    }

    #[test]
    fn friedrichs_truncation() {
        let grid = Grid::unit_torus(2, 32).unwrap();
        let mut f = SpectralField::scalar_zeros(grid);
        f.set_mode(0, [4, 0, 0], Complex64::new(0.5, 0.0));
        assert_eq!(friedrichs(&f, 2).l2_norm(), 0.0);
        assert!((friedrichs(&f, 8).l2_norm() - f.l2_norm()).abs() < 1e-15);
        let g = synth::random_band(grid, 1, 0, 3, 9, false);
        let once = friedrichs(&g, 3);
        let twice = friedrichs(&once, 3);
        assert_eq!(once, twice);
    }

    #[test]
    fn differential_identities() {
        let grid3 = Grid::unit_torus(3, 16).unwrap();
        let h = synth::random_band(grid3, 3, 0, 2, 17, false);
        let norm = h.l2_norm();
        // div curl = 0
        assert!(div(&curl(&h).unwrap()).unwrap().l2_norm() <= 1e-12 * norm);
        // curl grad = 0
        let s = synth::random_band(grid3, 1, 0, 2, 18, false);
        assert!(curl(&grad(&s).unwrap()).unwrap().l2_norm() <= 1e-12 * s.l2_norm());
        // div grad = laplacian
        let dg = div(&grad(&s).unwrap()).unwrap();
        assert!(dg.sub(&laplacian(&s)).l2_norm() <= 1e-12 * s.l2_norm());
        // curl curl H = grad div H - ΔH
        let cc = curl(&curl(&h).unwrap()).unwrap();
        let mut rhs = grad(&div(&h).unwrap()).unwrap();
        rhs.sub_assign(&laplacian(&h));
        assert!(cc.sub(&rhs).l2_norm() <= 1e-12 * norm);
        // grad(sin x) = cos x e_x
        let grid2 = Grid::unit_torus(2, 16).unwrap();
        let sinx = SpectralField::from_physical_fn(grid2, 1, |x, _| x[0].sin());
        let g = grad(&sinx).unwrap();
        let cosx = SpectralField::from_physical_fn(grid2, 1, |x, _| x[0].cos());
        assert!(g.component(0).sub(&cosx).l2_norm() < 1e-13);
        assert!(g.component(1).l2_norm() < 1e-15);
        // component mismatch errors
        assert!(grad(&h).is_err());
        assert!(div(&s).is_err());
        assert!(curl(&s).is_err());
    }

    #[test]
    fn viscous_flow_splits_parts() {
        let grid = Grid::unit_torus(2, 16).unwrap();
        let u = synth::random_band(grid, 2, 0, 2, 23, false);
        let (sol, pot) = leray(&u).unwrap();
        let (mu, lambda, t) = (0.2, 0.05, 0.8);
        let flowed = viscous_heat_flow(&u, mu, lambda, t).unwrap();
        let expected = heat_flow(&sol, mu, t)
            .unwrap()
            .add(&heat_flow(&pot, 2.0 * mu + lambda, t).unwrap());
        assert!(flowed.sub(&expected).l2_norm() <= 1e-13 * u.l2_norm());
    }
}
