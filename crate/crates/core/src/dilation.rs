//! Hermitian dilation of the non-Hermitian Bloch evolution.
//!
//! A single-qubit non-Hermitian evolution U(k,t) = exp[-i H(k) t] can be
//! embedded in a two-qubit Hermitian one: with a metric operator
//! M(t) = m0 [U^{-1}(t)]^dag U^{-1}(t) and omega(t) = sqrt(M(t) - 1), the
//! dilated Hamiltonian
//!
//!   H'(t) = Lambda(t) (x) sigma_0 + Gamma(t) (x) sigma_z
//!
//! with
//!
//!   Lambda = { H + [i d(omega)/dt + omega H] omega } M^{-1}
//!   Gamma  = i [H omega - omega H - i d(omega)/dt] M^{-1}
//!
//! is Hermitian, and evolving |Omega(0)> = |psi0>|-> + omega(0)|psi0>|+>
//! under H' followed by postselecting the ancilla on |-> reproduces
//! U(t)|psi0> exactly. The ancilla states |-> = (1, -i)/sqrt(2) and
//! |+> = (-i, 1)/sqrt(2) are the sigma_y eigenstates.

use crate::bloch::ChiralTwoBandModel;
use crate::error::{Error, Result};
use crate::mat2::{Matrix2C, Matrix4C, I};
use num_complex::Complex64;
use serde::Serialize;

/// Hermiticity tolerance for the dilated Hamiltonian.
pub const HERM_TOL: f64 = 1e-8;

/// Relative norm drift allowed over the full RK4 integration.
pub const NORM_DRIFT_TOL: f64 = 1e-6;

const MAX_M0_DOUBLINGS: u32 = 3;

/// Parameters of a dilation run at a single momentum.
#[derive(Debug, Clone, Serialize)]
pub struct DilationConfig {
    /// Metric scale; must exceed 1 so that omega(0) = sqrt(m0 - 1) exists.
    pub m0: f64,
    pub t_max: f64,
    pub n_steps: usize,
    pub k: f64,
    /// Initial system state (unnormalized input is accepted).
    pub psi0: [Complex64; 2],
}

impl Default for DilationConfig {
    fn default() -> Self {
        Self {
            m0: 20.0,
            t_max: 3.0,
            n_steps: 3000,
            k: 0.0,
            psi0: [Complex64::ONE, Complex64::ZERO],
        }
    }
}

/// Ancilla eigenstate of sigma_y with eigenvalue -1, the postselection
/// target.
pub fn ancilla_minus() -> [Complex64; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [Complex64::new(r, 0.0), Complex64::new(0.0, -r)]
}

/// Ancilla eigenstate of sigma_y with eigenvalue +1.
pub fn ancilla_plus() -> [Complex64; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [Complex64::new(0.0, -r), Complex64::new(r, 0.0)]
}

/// M(t) = m0 [U^{-1}]^dag U^{-1}, symmetrized to suppress rounding noise.
pub fn metric(model: &ChiralTwoBandModel, k: f64, t: f64, m0: f64) -> Result<Matrix2C> {
    if m0 <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "m0 must exceed 1, got {m0}"
        )));
    }
    let u = model.evolution_operator(k, t);
    let uinv = u
        .inverse()
        .ok_or_else(|| Error::SingularEvolution(u.det().norm()))?;
    let m = (uinv.adjoint() * uinv).scale(Complex64::new(m0, 0.0));
    Ok((m + m.adjoint()).scale(Complex64::new(0.5, 0.0)))
}

/// omega(t) = sqrt(M(t) - 1). Fails when M - 1 loses positivity, i.e. the
/// evolution window has outgrown the chosen metric scale; the error carries
/// the smallest m0 that would still work at this time.
pub fn omega(model: &ChiralTwoBandModel, k: f64, t: f64, m0: f64) -> Result<Matrix2C> {
    let m = metric(model, k, t, m0)?;
    let (lo, _) = m.hermitian_eigenvalues();
    if lo < 1.0 - 1e-12 {
        return Err(Error::WindowExceeded {
            m0,
            min_m0: m0 / lo,
        });
    }
    let shifted = m - Matrix2C::identity();
    Ok(shifted.hermitian_sqrt())
}

/// Dilated Hamiltonian at one instant, with its Pauli decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct DilatedHamiltonian {
    /// Pauli coefficients of Lambda: A_i = Tr[Lambda sigma_i] / 2.
    pub a: [f64; 4],
    /// Pauli coefficients of Gamma: B_i = Tr[Gamma sigma_i] / 2.
    pub b: [f64; 4],
    pub herm_residual: f64,
    #[serde(skip)]
    pub matrix: Matrix4C,
}

fn pauli_coeffs(m: &Matrix2C) -> [f64; 4] {
    let basis = [
        Matrix2C::identity(),
        Matrix2C::sigma_x(),
        Matrix2C::sigma_y(),
        Matrix2C::sigma_z(),
    ];
    let mut out = [0.0; 4];
    for (i, s) in basis.iter().enumerate() {
        out[i] = 0.5 * (*s * *m).trace().re;
    }
    out
}

/// H'(t) = Lambda (x) sigma_0 + Gamma (x) sigma_z at momentum k, with the
/// time derivative of omega taken by a centered difference.
pub fn dilated_hamiltonian(
    model: &ChiralTwoBandModel,
    k: f64,
    t: f64,
    m0: f64,
    t_max: f64,
) -> Result<DilatedHamiltonian> {
    let h_fd = 1e-6 * t_max.max(1.0);
    let om = omega(model, k, t, m0)?;
    let om_dot = {
        let fwd = omega(model, k, t + h_fd, m0)?;
        let bwd = omega(model, k, t - h_fd, m0)?;
        (fwd - bwd).scale(Complex64::new(0.5 / h_fd, 0.0))
    };
    let m = metric(model, k, t, m0)?;
    let minv = m
        .inverse()
        .ok_or_else(|| Error::SingularEvolution(m.det().norm()))?;
    let h = model.hamiltonian(k);

    let lambda = (h + (om_dot.scale(I) + om * h) * om) * minv;
    let gamma = (h * om - om * h - om_dot.scale(I)).scale(I) * minv;

    // the construction only guarantees Hermiticity up to the accuracy of
    // the finite-difference omega_dot; check the residual as a guard, then
    // project onto the Hermitian part so the emitted operator is exact
    let herm_residual = lambda.hermiticity_residual().max(gamma.hermiticity_residual());
    if herm_residual > HERM_TOL {
        return Err(Error::HermiticityViolation {
            residual: herm_residual,
            tol: HERM_TOL,
        });
    }
    let half = Complex64::new(0.5, 0.0);
    let lambda = (lambda + lambda.adjoint()).scale(half);
    let gamma = (gamma + gamma.adjoint()).scale(half);
    let matrix = Matrix4C::kron(&lambda, &Matrix2C::identity())
        .add(&Matrix4C::kron(&gamma, &Matrix2C::sigma_z()));
    Ok(DilatedHamiltonian {
        a: pauli_coeffs(&lambda),
        b: pauli_coeffs(&gamma),
        herm_residual,
        matrix,
    })
}

/// One recorded sample of a dilated-evolution run.
#[derive(Debug, Clone, Serialize)]
pub struct DilationSample {
    pub t: f64,
    /// 1 - |<target|postselected>|^2 between normalized states.
    pub infidelity: f64,
    /// Residual of the |+> ancilla component against omega(t) times the
    /// |-> component.
    pub plus_residual: f64,
    pub herm_residual: f64,
    pub a: [f64; 4],
    pub b: [f64; 4],
}

/// Full record of a dilated run, including the metric scale actually used
/// (it is doubled automatically when the requested window outgrows it).
#[derive(Debug, Clone, Serialize)]
pub struct DilationRun {
    pub config: DilationConfig,
    pub m0_used: f64,
    pub samples: Vec<DilationSample>,
    pub max_infidelity: f64,
    pub norm_drift: f64,
}

fn norm4(v: &[Complex64; 4]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Integrate i d|Omega>/dt = H'(t)|Omega> with classical RK4 and compare
/// the postselected ancilla-|-> component against the direct non-Hermitian
/// evolution at every step.
pub fn simulate_dilated(model: &ChiralTwoBandModel, config: &DilationConfig) -> Result<DilationRun> {
    if config.n_steps < 16 {
        return Err(Error::InvalidArgument(format!(
            "n_steps must be >= 16, got {}",
            config.n_steps
        )));
    }
    let mut m0 = config.m0;
    for attempt in 0..=MAX_M0_DOUBLINGS {
        match run_once(model, config, m0) {
            Err(Error::WindowExceeded { min_m0, .. }) if attempt < MAX_M0_DOUBLINGS => {
                m0 = (2.0 * m0).max(1.1 * min_m0);
            }
            other => return other,
        }
    }
    unreachable!()
}

fn run_once(model: &ChiralTwoBandModel, config: &DilationConfig, m0: f64) -> Result<DilationRun> {
    let k = config.k;
    let n = config.n_steps;
    let dt = config.t_max / n as f64;
    let minus = ancilla_minus();
    let plus = ancilla_plus();

    // check the whole window up front so the metric scale can be raised
    // before any integration work
    omega(model, k, config.t_max, m0)?;

    let psi_norm = (config.psi0[0].norm_sqr() + config.psi0[1].norm_sqr()).sqrt();
    let psi0 = [config.psi0[0] / psi_norm, config.psi0[1] / psi_norm];

    let om0 = omega(model, k, 0.0, m0)?;
    let om0_psi = om0.mul_vec(psi0);
    let mut state = [Complex64::ZERO; 4];
    for s in 0..2 {
        for a in 0..2 {
            state[2 * s + a] = psi0[s] * minus[a] + om0_psi[s] * plus[a];
        }
    }
    let norm0 = norm4(&state);

    let deriv = |t: f64, v: &[Complex64; 4]| -> Result<[Complex64; 4]> {
        let hp = dilated_hamiltonian(model, k, t, m0, config.t_max)?;
        let hv = hp.matrix.mul_vec(v);
        Ok([-I * hv[0], -I * hv[1], -I * hv[2], -I * hv[3]])
    };
    let axpy = |v: &[Complex64; 4], s: f64, d: &[Complex64; 4]| -> [Complex64; 4] {
        let mut out = *v;
        for i in 0..4 {
            out[i] += d[i] * s;
        }
        out
    };

    let mut samples = Vec::with_capacity(n + 1);
    let mut max_infidelity: f64 = 0.0;
    let mut max_drift: f64 = 0.0;
    for step in 0..=n {
        let t = step as f64 * dt;

        let hp = dilated_hamiltonian(model, k, t, m0, config.t_max)?;
        let om = omega(model, k, t, m0)?;

        // postselect the ancilla on |->, and collect the |+> component
        let mut sys_minus = [Complex64::ZERO; 2];
        let mut sys_plus = [Complex64::ZERO; 2];
        for s in 0..2 {
            for a in 0..2 {
                sys_minus[s] += minus[a].conj() * state[2 * s + a];
                sys_plus[s] += plus[a].conj() * state[2 * s + a];
            }
        }

        // target: the direct non-Hermitian evolution, normalized
        let target = model.evolution_operator(k, t).mul_vec(psi0);
        let tn = (target[0].norm_sqr() + target[1].norm_sqr()).sqrt();
        let pn = (sys_minus[0].norm_sqr() + sys_minus[1].norm_sqr()).sqrt();
        let overlap = (target[0].conj() * sys_minus[0] + target[1].conj() * sys_minus[1]).norm()
            / (tn * pn);
        let infidelity = (1.0 - overlap * overlap).max(0.0);

        let om_minus = om.mul_vec(sys_minus);
        let plus_residual = ((sys_plus[0] - om_minus[0]).norm_sqr()
            + (sys_plus[1] - om_minus[1]).norm_sqr())
        .sqrt();

        max_infidelity = max_infidelity.max(infidelity);
        let drift = (norm4(&state) - norm0).abs() / norm0;
        max_drift = max_drift.max(drift);
        if drift > NORM_DRIFT_TOL {
            return Err(Error::StepSize(drift));
        }

        samples.push(DilationSample {
            t,
            infidelity,
            plus_residual,
            herm_residual: hp.herm_residual,
            a: hp.a,
            b: hp.b,
        });

        if step < n {
            let k1 = deriv(t, &state)?;
            let k2 = deriv(t + 0.5 * dt, &axpy(&state, 0.5 * dt, &k1))?;
            let k3 = deriv(t + 0.5 * dt, &axpy(&state, 0.5 * dt, &k2))?;
            let k4 = deriv(t + dt, &axpy(&state, dt, &k3))?;
            for i in 0..4 {
                state[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
            }
        }
    }

    Ok(DilationRun {
        config: config.clone(),
        m0_used: m0,
        samples,
        max_infidelity,
        norm_drift: max_drift,
    })
}
