//! Time integration with the stiff linear dynamics removed exactly.
//!
//! Diffusion and the `ε^{-1}` acoustic coupling are integrated per mode by
//! the matrix exponential of the 2×2 rotation-damping block
//!
//! ```text
//!   d/dt [ b̂ ]   [    0        -|k|/ε  ] [ b̂ ]
//!        [ d̂ ] = [ c₀²|k|/ε   -ν̄|k|²  ] [ d̂ ]       d̂ := Λ^{-1} div û
//! ```
//!
//! so the step size is limited by the advective CFL only, independent of ε.
//! The nonstiff remainder is advanced by classical RK4 between two half
//! applications of the exact flow (Strang), or by ETDRK2.

use mhdlab_spectral::{Complex64, SpectralField};
use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::params::PhysicalParams;
use crate::rhs::{nonstiff_incompressible, nonstiff_scaled_like, RhsOptions, Tendencies};
use crate::state::{MHDState, Regime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    StrangRk4,
    EtdRk2,
}

/// Stepper configuration. Stiff linear parts are always exact per mode, so
/// `dt` needs to satisfy the advective CFL only.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StepperConfig {
    pub scheme: Scheme,
    pub dt: f64,
    /// Friedrichs truncation parameter `n` applied to the nonlinear
    /// tendencies; `None` leaves the dealiased lattice as the only cutoff.
    pub truncation: Option<u32>,
    pub dealias: bool,
    pub vacuum_floor: f64,
    /// Record diagnostics every this many steps.
    pub save_stride: usize,
}

impl Default for StepperConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::StrangRk4,
            dt: 1e-3,
            truncation: None,
            dealias: true,
            vacuum_floor: 0.1,
            save_stride: 10,
        }
    }
}

impl StepperConfig {
    pub fn rhs_options(&self) -> RhsOptions {
        RhsOptions { vacuum_floor: self.vacuum_floor, dealias: self.dealias }
    }

    pub fn check_cfl(&self, st: &MHDState) -> Result<(), SolverError> {
        let vmax = st.u.linf_norm();
        let dx = st.grid().spacing();
        if self.dt * vmax / dx > 1.0 {
            return Err(SolverError::CflViolation { dt: self.dt, suggested: 0.9 * dx / vmax });
        }
        Ok(())
    }
}

/// 2×2 real matrix helpers for the rotation-damping block.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn apply(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    fn add(&self, o: &Mat2) -> Mat2 {
        Mat2 { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c, d: self.d + o.d }
    }

    fn scale(&self, s: f64) -> Mat2 {
        Mat2 { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    fn solve(&self, rhs: &Mat2) -> Mat2 {
        // self · X = rhs
        let det = self.det();
        let inv = Mat2 { a: self.d / det, b: -self.b / det, c: -self.c / det, d: self.a / det };
        inv.mul(rhs)
    }
}

/// `exp(M t)` for 2×2 `M` via the trace/traceless decomposition:
/// `M = hI + N`, `N² = D·I`, so the exponential is a cosh/sinh (or cos/sin)
/// combination; stable through the oscillatory and overdamped branches.
pub(crate) fn expm2(m: &Mat2, t: f64) -> Mat2 {
    let h = 0.5 * (m.a + m.d);
    let n = Mat2 { a: m.a - h, b: m.b, c: m.c, d: m.d - h };
    let disc = h * h - m.det(); // N² = disc·I
    let (cosh_term, sinh_over) = cosh_sinh_ratio(disc, t);
    let e = (h * t).exp();
    Mat2::IDENTITY.scale(cosh_term).add(&n.scale(sinh_over * t)).scale(e)
}

/// Returns `(cosh(√D t), sinh(√D t)/(√D t))` with the trigonometric branch
/// for `D < 0` and a series fallback near zero.
fn cosh_sinh_ratio(disc: f64, t: f64) -> (f64, f64) {
    let z = disc * t * t;
    if z.abs() < 1e-12 {
        (1.0 + z / 2.0 + z * z / 24.0, 1.0 + z / 6.0 + z * z / 120.0)
    } else if disc > 0.0 {
        let s = disc.sqrt() * t.abs();
        (s.cosh(), s.sinh() / s)
    } else {
        let s = (-disc).sqrt() * t.abs();
        (s.cos(), s.sin() / s)
    }
}

/// `φ₁(Mt) = (Mt)^{-1}(e^{Mt} - I)` and `φ₂(Mt) = (Mt)^{-1}(φ₁ - I)`;
/// series fallback when `‖Mt‖` is tiny.
pub(crate) fn phi12(m: &Mat2, t: f64) -> (Mat2, Mat2) {
    let mt = m.scale(t);
    let norm = mt.a.abs() + mt.b.abs() + mt.c.abs() + mt.d.abs();
    if norm < 1e-4 {
        // φ₁ ≈ I + X/2 + X²/6 + X³/24, φ₂ ≈ I/2 + X/6 + X²/24 + X³/120
        let x2 = mt.mul(&mt);
        let x3 = x2.mul(&mt);
        let phi1 = Mat2::IDENTITY
            .add(&mt.scale(0.5))
            .add(&x2.scale(1.0 / 6.0))
            .add(&x3.scale(1.0 / 24.0));
        let phi2 = Mat2::IDENTITY
            .scale(0.5)
            .add(&mt.scale(1.0 / 6.0))
            .add(&x2.scale(1.0 / 24.0))
            .add(&x3.scale(1.0 / 120.0));
        return (phi1, phi2);
    }
    let e = expm2(m, t);
    let em1 = e.add(&Mat2::IDENTITY.scale(-1.0));
    let phi1 = mt.solve(&em1);
    let phi2 = mt.solve(&phi1.add(&Mat2::IDENTITY.scale(-1.0)));
    (phi1, phi2)
}

fn scalar_phi(z: f64) -> (f64, f64, f64) {
    // (e^z, φ₁(z), φ₂(z))
    let ez = z.exp();
    if z.abs() < 1e-7 {
        (ez, 1.0 + z / 2.0 + z * z / 6.0, 0.5 + z / 6.0 + z * z / 24.0)
    } else {
        let phi1 = z.exp_m1() / z;
        (ez, phi1, (phi1 - 1.0) / z)
    }
}

/// Which function of the stiff generator to apply.
#[derive(Clone, Copy, PartialEq)]
enum StiffFn {
    Exp,
    Phi1,
    Phi2,
}

/// Applies `f(L·t)` to the state fields, where `L` is the regime's stiff
/// generator: per-mode 2×2 acoustic-damping block on `(density, d̂)`, scalar
/// heat factors on the solenoidal velocity and on `H`.
fn apply_stiff(
    st: &mut MHDState,
    prm: &PhysicalParams,
    t: f64,
    which: StiffFn,
) -> Result<(), SolverError> {
    let grid = *st.grid();
    let d = grid.dim();
    match st.regime {
        Regime::Incompressible => {
            let scal = |nu: f64, f: &mut SpectralField| {
                f.apply_multiplier(|k| {
                    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                    let (e, p1, p2) = scalar_phi(-nu * k2 * t);
                    match which {
                        StiffFn::Exp => e,
                        StiffFn::Phi1 => p1,
                        StiffFn::Phi2 => p2,
                    }
                });
            };
            scal(prm.mu, &mut st.u);
            scal(prm.nu, &mut st.h);
            Ok(())
        }
        Regime::Compressible | Regime::Scaled { .. } => {
            let eps = st.eps().unwrap_or(1.0);
            let c0sq = prm.sound_speed_sq();
            let nu_bar = prm.nu_bar();
            // magnetic diffusion
            st.h.apply_multiplier(|k| {
                let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                let (e, p1, p2) = scalar_phi(-prm.nu * k2 * t);
                match which {
                    StiffFn::Exp => e,
                    StiffFn::Phi1 => p1,
                    StiffFn::Phi2 => p2,
                }
            });
            // coupled (density, potential-velocity) block + solenoidal heat
            let density = st.density.as_mut().expect("compressible regime");
            let npts = grid.num_points();
            let mut new_density = vec![Complex64::default(); npts];
            let mut new_u: Vec<Vec<Complex64>> = (0..d).map(|_| vec![Complex64::default(); npts]).collect();
            {
                let b0 = density.comp_slice(0);
                let u_slices: Vec<&[Complex64]> = (0..d).map(|c| st.u.comp_slice(c)).collect();
                grid.for_each_mode(|flat, k| {
                    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                    if k2 == 0.0 {
                        let f = match which {
                            StiffFn::Exp => 1.0,
                            StiffFn::Phi1 => 1.0,
                            StiffFn::Phi2 => 0.5,
                        };
                        new_density[flat] = f * b0[flat];
                        for c in 0..d {
                            new_u[c][flat] = f * u_slices[c][flat];
                        }
                        return;
                    }
                    let knorm = k2.sqrt();
                    // d̂ = i k·û / |k|; the potential part is -i d̂ k/|k|
                    let mut kdotu = Complex64::default();
                    for c in 0..d {
                        kdotu += k[c] * u_slices[c][flat];
                    }
                    let dval = Complex64::i() * kdotu / knorm;
                    let block = Mat2 {
                        a: 0.0,
                        b: -knorm / eps,
                        c: c0sq * knorm / eps,
                        d: -nu_bar * k2,
                    };
                    let mat = match which {
                        StiffFn::Exp => expm2(&block, t),
                        StiffFn::Phi1 => phi12(&block, t).0,
                        StiffFn::Phi2 => phi12(&block, t).1,
                    };
                    let (bn, dn) = mat.apply(b0[flat], dval);
                    new_density[flat] = bn;
                    // solenoidal part decays with the shear factor
                    let (e, p1, p2) = scalar_phi(-prm.mu * k2 * t);
                    let shear = match which {
                        StiffFn::Exp => e,
                        StiffFn::Phi1 => p1,
                        StiffFn::Phi2 => p2,
                    };
                    for c in 0..d {
                        let pot_c = k[c] * kdotu / k2; // (kkᵀ/|k|²)û
                        let sol_c = u_slices[c][flat] - pot_c;
                        let pot_new = -Complex64::i() * dn * k[c] / knorm;
                        new_u[c][flat] = shear * sol_c + pot_new;
                    }
                });
            }
            density.comp_slice_mut(0).copy_from_slice(&new_density);
            for c in 0..d {
                st.u.comp_slice_mut(c).copy_from_slice(&new_u[c]);
            }
            Ok(())
        }
    }
}

/// Nonstiff tendencies of the state's regime, with optional Friedrichs
/// truncation applied to the result.
fn nonstiff(st: &MHDState, prm: &PhysicalParams, cfg: &StepperConfig) -> Result<Tendencies, SolverError> {
    let opts = cfg.rhs_options();
    let mut t = match st.regime {
        Regime::Incompressible => nonstiff_incompressible(st, &opts)?,
        Regime::Compressible => nonstiff_scaled_like(st, prm, &opts, 1.0)?,
        Regime::Scaled { eps } => nonstiff_scaled_like(st, prm, &opts, eps)?,
    };
    if let Some(n) = cfg.truncation {
        if let Some(dd) = t.density.as_mut() {
            *dd = mhdlab_spectral::friedrichs(dd, n);
        }
        t.u = mhdlab_spectral::friedrichs(&t.u, n);
        t.h = mhdlab_spectral::friedrichs(&t.h, n);
        // truncation zeroes the density mean along with all |k| < 1/n modes,
        // which is exactly the conservation the zero mode needs
    }
    Ok(t)
}

fn add_tendencies(st: &mut MHDState, t: &Tendencies, dt: f64) {
    if let (Some(d), Some(td)) = (st.density.as_mut(), t.density.as_ref()) {
        d.add_scaled(td, dt);
    }
    st.u.add_scaled(&t.u, dt);
    st.h.add_scaled(&t.h, dt);
}

/// Advances the state by one step of `cfg.dt`. `H` is re-projected onto
/// solenoidal fields afterwards (dealiased discrete products drift off the
/// constraint), and the density mean is conserved exactly.
pub fn step(st: &MHDState, prm: &PhysicalParams, cfg: &StepperConfig) -> Result<MHDState, SolverError> {
    cfg.check_cfl(st)?;
    let dt = cfg.dt;
    let mut out = match cfg.scheme {
        Scheme::StrangRk4 => {
            let mut s = st.clone();
            apply_stiff(&mut s, prm, 0.5 * dt, StiffFn::Exp)?;
            // RK4 on the nonstiff remainder
            let k1 = nonstiff(&s, prm, cfg)?;
            let mut s2 = s.clone();
            add_tendencies(&mut s2, &k1, 0.5 * dt);
            let k2 = nonstiff(&s2, prm, cfg)?;
            let mut s3 = s.clone();
            add_tendencies(&mut s3, &k2, 0.5 * dt);
            let k3 = nonstiff(&s3, prm, cfg)?;
            let mut s4 = s.clone();
            add_tendencies(&mut s4, &k3, dt);
            let k4 = nonstiff(&s4, prm, cfg)?;
            add_tendencies(&mut s, &k1, dt / 6.0);
            add_tendencies(&mut s, &k2, dt / 3.0);
            add_tendencies(&mut s, &k3, dt / 3.0);
            add_tendencies(&mut s, &k4, dt / 6.0);
            apply_stiff(&mut s, prm, 0.5 * dt, StiffFn::Exp)?;
            s
        }
        Scheme::EtdRk2 => {
            // a = e^{Ldt}u + dt·φ₁(Ldt)N(u)
            // u⁺ = a + dt·φ₂(Ldt)(N(a) - N(u))
            let n0 = nonstiff(st, prm, cfg)?;
            let mut a = st.clone();
            apply_stiff(&mut a, prm, dt, StiffFn::Exp)?;
            let mut n0_prop = tendency_state(st, &n0);
            apply_stiff(&mut n0_prop, prm, dt, StiffFn::Phi1)?;
            add_state(&mut a, &n0_prop, dt);
            let n1 = nonstiff(&a, prm, cfg)?;
            let mut diff = tendency_state(st, &n1);
            sub_tendencies(&mut diff, &n0);
            apply_stiff(&mut diff, prm, dt, StiffFn::Phi2)?;
            add_state(&mut a, &diff, dt);
            a
        }
    };
    out.project_solenoidal();
    out.time = st.time + dt;
    if out.has_nan() {
        return Err(SolverError::NumericalBlowup { t: out.time });
    }
    Ok(out)
}

/// Wraps tendencies in a state shell so the stiff propagators can act on
/// them (they are linear, so acting on tendencies is legitimate).
fn tendency_state(st: &MHDState, t: &Tendencies) -> MHDState {
    MHDState {
        regime: st.regime,
        density: t.density.clone(),
        u: t.u.clone(),
        h: t.h.clone(),
        time: st.time,
    }
}

fn add_state(st: &mut MHDState, other: &MHDState, dt: f64) {
    if let (Some(d), Some(od)) = (st.density.as_mut(), other.density.as_ref()) {
        d.add_scaled(od, dt);
    }
    st.u.add_scaled(&other.u, dt);
    st.h.add_scaled(&other.h, dt);
}

fn sub_tendencies(st: &mut MHDState, t: &Tendencies) {
    if let (Some(d), Some(td)) = (st.density.as_mut(), t.density.as_ref()) {
        d.add_scaled(td, -1.0);
    }
    st.u.add_scaled(&t.u, -1.0);
    st.h.add_scaled(&t.h, -1.0);
}
