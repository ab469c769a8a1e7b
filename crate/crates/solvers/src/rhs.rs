//! Right-hand sides of the three MHD systems, assembled pseudo-spectrally
//! with dealiased products.
//!
//! The stiff/nonstiff split used by the steppers is exact: the stiff slot
//! holds the constant-coefficient linear terms (the `ε^{-1}` acoustic
//! coupling about the background state and all diffusion), the nonstiff slot
//! holds everything else, and stiff + nonstiff reproduces the written
//! equations identically.

use mhdlab_spectral::{div, grad, laplacian, leray, viscosity_a, Complex64, Grid, SpectralField};

use crate::error::SolverError;
use crate::nonlinear::{advect, from_pointwise, lorentz, scale_pointwise, Physical};
use crate::params::{ConstitutiveFns, PhysicalParams};
use crate::state::{MHDState, Regime};

/// Tendency bundle; `density` is `None` in the incompressible regime.
#[derive(Debug, Clone)]
pub struct Tendencies {
    pub density: Option<SpectralField>,
    pub u: SpectralField,
    pub h: SpectralField,
}

impl Tendencies {
    pub fn add_scaled(&mut self, other: &Tendencies, a: f64) {
        if let (Some(d), Some(od)) = (self.density.as_mut(), other.density.as_ref()) {
            d.add_scaled(od, a);
        }
        self.u.add_scaled(&other.u, a);
        self.h.add_scaled(&other.h, a);
    }
}

/// Stiff linear part and nonstiff nonlinear remainder.
#[derive(Debug, Clone)]
pub struct SplitTendencies {
    pub stiff: Tendencies,
    pub nonstiff: Tendencies,
}

/// Evaluation options shared by the RHS assemblers.
#[derive(Debug, Clone, Copy)]
pub struct RhsOptions {
    /// Lower bound demanded of the pointwise density `1 + a` (or `1 + εb`).
    pub vacuum_floor: f64,
    /// Apply the 2/3 rule after every physical-space product.
    pub dealias: bool,
}

impl Default for RhsOptions {
    fn default() -> Self {
        Self { vacuum_floor: 0.1, dealias: true }
    }
}

fn check_density_floor(st: &MHDState, floor: f64) -> Result<(), SolverError> {
    let min_density = st.min_density();
    if min_density < floor {
        return Err(SolverError::VacuumApproach { min_density, floor });
    }
    Ok(())
}

/// The full tendencies of the compressible system
/// `∂_t a = -u·∇a - (1+a)div u`,
/// `∂_t u = -u·∇u + 𝒜u/(1+a) - ∇G(a) + (H·∇H - ½∇|H|²)/(1+a)`,
/// `∂_t H = H·∇u - u·∇H - (div u)H + νΔH`.
pub fn rhs_compressible(
    st: &MHDState,
    prm: &PhysicalParams,
    opts: &RhsOptions,
) -> Result<Tendencies, SolverError> {
    if st.regime != Regime::Compressible {
        return Err(SolverError::InvalidParameter("state is not in the compressible regime".into()));
    }
    check_density_floor(st, opts.vacuum_floor)?;
    let dl = opts.dealias;
    let cons = ConstitutiveFns::new(*prm);
    let a = st.density.as_ref().unwrap();
    let a_phys = a.to_physical(0);
    let a_slice = a_phys.as_slice().unwrap();
    let inv_rho: Vec<f64> = a_slice.iter().map(|&av| 1.0 / (1.0 + av)).collect();
    let up = Physical::of(&st.u);
    let hp = Physical::of(&st.h);
    let div_u = div(&st.u)?;
    let div_u_phys = div_u.to_physical(0);
    let div_u_slice = div_u_phys.as_slice().unwrap();

    // density: -u·∇a - (1+a)div u; the zero mode of the conservative form
    // vanishes identically, enforced exactly.
    let mut da = advect(&up, a, dl);
    da.scale(-1.0);
    da.sub_assign(&from_pointwise(st.grid(), |flat| (1.0 + a_slice[flat]) * div_u_slice[flat], dl));
    da.set_mean(0, Complex64::default());

    // velocity
    let mut du = advect(&up, &st.u, dl);
    du.scale(-1.0);
    let visc = viscosity_a(&st.u, prm.mu, prm.lambda)?;
    du.add_assign(&scale_pointwise(&inv_rho, &visc, dl));
    let grad_g_factor: Vec<f64> = a_slice.iter().map(|&av| cons.grad_g_factor(av)).collect();
    du.sub_assign(&scale_pointwise(&grad_g_factor, &grad(a)?, dl));
    du.add_assign(&scale_pointwise(&inv_rho, &lorentz(&st.h, dl), dl));

    // magnetic field: H·∇u - u·∇H - (div u)H + νΔH
    let mut dh = advect(&hp, &st.u, dl);
    dh.sub_assign(&advect(&up, &st.h, dl));
    dh.sub_assign(&scale_pointwise(div_u_slice, &st.h, dl));
    dh.add_assign(&laplacian(&st.h).scaled(prm.nu));

    Ok(Tendencies { density: Some(da), u: du, h: dh })
}

/// Tendencies of the Mach-scaled system split into the stiff linear part
/// `{-div u/ε, -P'(1)∇b/ε + 𝒜u, νΔH}` and the nonstiff remainder (which
/// carries `K(εb)∇b/ε`, an `O(1)` term since `K(εb) = O(εb)`).
pub fn rhs_scaled(
    st: &MHDState,
    prm: &PhysicalParams,
    opts: &RhsOptions,
) -> Result<SplitTendencies, SolverError> {
    let eps = match st.regime {
        Regime::Scaled { eps } => eps,
        _ => return Err(SolverError::InvalidParameter("state is not in the scaled regime".into())),
    };
    if !(eps > 0.0) {
        return Err(SolverError::NonPositiveMach(eps));
    }
    check_density_floor(st, opts.vacuum_floor)?;
    let b = st.density.as_ref().unwrap();
    let stiff = Tendencies {
        density: Some(div(&st.u)?.scaled(-1.0 / eps)),
        u: {
            let mut t = grad(b)?.scaled(-prm.sound_speed_sq() / eps);
            t.add_assign(&viscosity_a(&st.u, prm.mu, prm.lambda)?);
            t
        },
        h: laplacian(&st.h).scaled(prm.nu),
    };
    let nonstiff = nonstiff_scaled_like(st, prm, opts, eps)?;
    Ok(SplitTendencies { stiff, nonstiff })
}

/// Tendencies of the incompressible system
/// `∂_t v = 𝒫(-v·∇v + B·∇B) + μΔv`, `∂_t B = 𝒫(-v·∇B + B·∇v) + νΔB`.
pub fn rhs_incompressible(
    st: &MHDState,
    prm: &PhysicalParams,
    opts: &RhsOptions,
) -> Result<Tendencies, SolverError> {
    if st.regime != Regime::Incompressible {
        return Err(SolverError::InvalidParameter("state is not in the incompressible regime".into()));
    }
    let tol = 1e-8 * (1.0 + st.u.l2_norm() + st.h.l2_norm());
    let res = st.div_u_residual().max(st.div_h_residual());
    if res > tol {
        return Err(SolverError::NonSolenoidal { residual: res });
    }
    let mut t = nonstiff_incompressible(st, opts)?;
    t.u.add_assign(&laplacian(&st.u).scaled(prm.mu));
    t.h.add_assign(&laplacian(&st.h).scaled(prm.nu));
    Ok(t)
}

/// Nonstiff (projected advective) part of the incompressible system.
pub(crate) fn nonstiff_incompressible(
    st: &MHDState,
    opts: &RhsOptions,
) -> Result<Tendencies, SolverError> {
    let dl = opts.dealias;
    let up = Physical::of(&st.u);
    let hp = Physical::of(&st.h);
    let mut nu_t = advect(&up, &st.u, dl);
    nu_t.scale(-1.0);
    nu_t.add_assign(&advect(&hp, &st.h, dl));
    let mut nh_t = advect(&up, &st.h, dl);
    nh_t.scale(-1.0);
    nh_t.add_assign(&advect(&hp, &st.u, dl));
    Ok(Tendencies {
        density: None,
        u: leray(&nu_t)?.0,
        h: leray(&nh_t)?.0,
    })
}

/// Nonstiff remainder shared by the compressible (`ε = 1`, `b = a`) and
/// scaled regimes:
/// `δb = -div(bu)` (conservative) or `-u·∇a - a·div u`,
/// `δu = -u·∇u - I(εb)𝒜u - K(εb)∇b/ε + (H·∇H - ½∇|H|²)/(1+εb)`,
/// `δH = H·∇u - u·∇H - (div u)H`.
pub(crate) fn nonstiff_scaled_like(
    st: &MHDState,
    prm: &PhysicalParams,
    opts: &RhsOptions,
    eps: f64,
) -> Result<Tendencies, SolverError> {
    let dl = opts.dealias;
    let cons = ConstitutiveFns::new(*prm);
    let b = st.density.as_ref().unwrap();
    let up = Physical::of(&st.u);
    let hp = Physical::of(&st.h);
    let div_u = div(&st.u)?;
    let div_u_phys = div_u.to_physical(0);
    let div_u_slice = div_u_phys.as_slice().unwrap();
    let b_phys = b.to_physical(0);
    let b_slice = b_phys.as_slice().unwrap();

    let mut db = match st.regime {
        Regime::Compressible => {
            let mut t = advect(&up, b, dl);
            t.scale(-1.0);
            t.sub_assign(&from_pointwise(st.grid(), |flat| b_slice[flat] * div_u_slice[flat], dl));
            t
        }
        _ => div(&scale_pointwise(b_slice, &st.u, dl))?.scaled(-1.0),
    };
    db.set_mean(0, Complex64::default());

    let i_factor: Vec<f64> = b_slice.iter().map(|&bv| cons.i_of(eps * bv)).collect();
    let k_over_eps: Vec<f64> = b_slice.iter().map(|&bv| cons.k_of(eps * bv) / eps).collect();
    let inv_rho: Vec<f64> = b_slice.iter().map(|&bv| 1.0 / (1.0 + eps * bv)).collect();

    let mut du = advect(&up, &st.u, dl);
    du.scale(-1.0);
    du.sub_assign(&scale_pointwise(&i_factor, &viscosity_a(&st.u, prm.mu, prm.lambda)?, dl));
    du.sub_assign(&scale_pointwise(&k_over_eps, &grad(b)?, dl));
    du.add_assign(&scale_pointwise(&inv_rho, &lorentz(&st.h, dl), dl));

    let mut dh = advect(&hp, &st.u, dl);
    dh.sub_assign(&advect(&up, &st.h, dl));
    dh.sub_assign(&scale_pointwise(div_u_slice, &st.h, dl));

    Ok(Tendencies { density: Some(db), u: du, h: dh })
}

/// Numerically extracted per-mode matrix of the compressible system's
/// linearization about `(a,u,H) = (0,0,0)`, ordered `(a, u_1..u_d, H_1..H_d)`.
/// Each column is read off `rhs_compressible` applied to a small single-mode
/// perturbation; the linearization is diagonal in `k` and complex-linear.
pub fn linearized_mode_matrix(
    grid: &Grid,
    prm: &PhysicalParams,
    m: [i64; 3],
) -> Result<Vec<Vec<Complex64>>, SolverError> {
    let d = grid.dim();
    let nvar = 2 * d + 1;
    let h = 1e-5;
    let opts = RhsOptions::default();
    let read = |t: &Tendencies, slot: usize| -> Complex64 {
        if slot == 0 {
            t.density.as_ref().unwrap().mode(0, m)
        } else if slot <= d {
            t.u.mode(slot - 1, m)
        } else {
            t.h.mode(slot - 1 - d, m)
        }
    };
    let mut matrix = vec![vec![Complex64::default(); nvar]; nvar];
    for j in 0..nvar {
        let mut a = SpectralField::scalar_zeros(*grid);
        let mut u = SpectralField::vector_zeros(*grid);
        let mut hf = SpectralField::vector_zeros(*grid);
        if j == 0 {
            a.set_mode(0, m, Complex64::new(h, 0.0));
        } else if j <= d {
            u.set_mode(j - 1, m, Complex64::new(h, 0.0));
        } else {
            hf.set_mode(j - 1 - d, m, Complex64::new(h, 0.0));
        }
        let st = MHDState::compressible(a, u, hf);
        let t = rhs_compressible(&st, prm, &opts)?;
        for (i, row) in matrix.iter_mut().enumerate() {
            row[j] = read(&t, i) / h;
        }
    }
    Ok(matrix)
}
