//! Phase decomposition of the return amplitude and the dynamical
//! topological order parameter (DTOP).
//!
//! The total phase Phi = arg G splits into a dynamical part Phi_D, defined
//! through the biorthogonal expectation value of H along the evolution, and
//! a geometric remainder Phi_G = Phi - Phi_D. The winding of Phi_G across
//! the Brillouin zone is quantized between critical times and jumps by an
//! integer at each of them.

use crate::bloch::{ChiralTwoBandModel, ModelTag, EPS_E};
use crate::error::{Error, Result};
use crate::mat2::Matrix2C;
use crate::quench::{self, pairwise_sum, return_amplitude};
use crate::topology::wrap_angle;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// |G| below this is treated as an exact zero with undefined phase.
pub const PHASE_EPS: f64 = 1e-14;

/// The DTOP is rejected within this distance of a critical time.
pub const CRITICAL_TIME_TOL: f64 = 1e-6;

const MAX_DTOP_DOUBLINGS: u32 = 2;

/// Phi(k,t) = arg cos[E(k)t], in (-pi, pi].
pub fn total_phase(model: &ChiralTwoBandModel, k: f64, t: f64) -> Result<f64> {
    let g = return_amplitude(model, k, t);
    if g.norm() <= PHASE_EPS {
        return Err(Error::UndefinedPhase(g.norm()));
    }
    Ok(g.arg())
}

/// ln cosh(x), stable against overflow for large |x|.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    if a > 20.0 {
        a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
    } else {
        a.cosh().ln()
    }
}

/// ln cosh(x) / x, continued through x = 0 by its Taylor series.
fn ln_cosh_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        // ln cosh(x) = x^2/2 - x^4/12 + x^6/45 - ...
        x * (0.5 - x * x / 12.0 + x * x * x * x / 45.0)
    } else {
        ln_cosh(x) / x
    }
}

/// Closed form Phi_D(k,t) = -Re E * ln cosh(2 Im E t) / (2 Im E), continued
/// to Im E = 0 (where it reduces to -Re E * t ... * 0, i.e. zero only when
/// written against the series; the Hermitian limit gives -Re E * t * 0 = 0
/// is wrong -- the correct limit of ln cosh(x)/x as x -> 0 is 0, giving
/// Phi_D -> 0 at Im E = 0 for fixed t, consistent with a purely real
/// spectrum contributing no amplitude growth).
pub fn dynamical_phase_closed(model: &ChiralTwoBandModel, k: f64, t: f64) -> f64 {
    let e = model.dispersion(k);
    -e.re * t * ln_cosh_over_x(2.0 * e.im * t)
}

/// Phi_G = Phi - Phi_D, using the closed-form dynamical phase. Not wrapped.
pub fn geometric_phase(model: &ChiralTwoBandModel, k: f64, t: f64) -> Result<f64> {
    Ok(total_phase(model, k, t)? - dynamical_phase_closed(model, k, t))
}

/// Biorthogonal eigensystem of H(k): right vectors |psi_s> and left
/// vectors |psi~_s> with <psi~_s|psi_s'> = delta_{ss'}. Index 0 is the
/// +E branch, index 1 is -E.
#[derive(Debug, Clone)]
pub struct Biorthogonal {
    pub energies: [Complex64; 2],
    pub right: [[Complex64; 2]; 2],
    pub left: [[Complex64; 2]; 2],
}

/// Eigenvectors of the traceless H = [[alpha, beta], [gamma, -alpha]].
/// Fails with an exceptional-point error when |E| is below the degeneracy
/// threshold and the two branches coalesce.
pub fn biorthogonal_decompose(model: &ChiralTwoBandModel, k: f64) -> Result<Biorthogonal> {
    let e = model.dispersion(k);
    if e.norm() <= EPS_E {
        return Err(Error::EpDegeneracy(e.norm()));
    }
    let h = model.hamiltonian(k);
    let alpha = h.e[0];
    let beta = h.e[1];
    let gamma = h.e[2];

    // two algebraically equivalent eigenvector forms; take the better
    // conditioned one for each branch
    let pick = |es: Complex64| -> [Complex64; 2] {
        let v1 = [beta, es - alpha];
        let v2 = [es + alpha, gamma];
        let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
        let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
        if n1 >= n2 {
            v1
        } else {
            v2
        }
    };
    let r_plus = pick(e);
    let r_minus = pick(-e);

    // rows of R^{-1} give the dual (left) basis: ell_s . r_{s'} = delta
    let r_mat = Matrix2C::new(r_plus[0], r_minus[0], r_plus[1], r_minus[1]);
    let l_mat = r_mat
        .inverse()
        .ok_or_else(|| Error::EpDegeneracy(e.norm()))?;
    // |psi~_s> is the conjugate of the dual row, so that <psi~_s| = ell_s
    let l_plus = [l_mat.e[0].conj(), l_mat.e[1].conj()];
    let l_minus = [l_mat.e[2].conj(), l_mat.e[3].conj()];

    Ok(Biorthogonal {
        energies: [e, -e],
        right: [r_plus, r_minus],
        left: [l_plus, l_minus],
    })
}

fn outer(ket: &[Complex64; 2], bra: &[Complex64; 2]) -> Matrix2C {
    Matrix2C::new(
        ket[0] * bra[0].conj(),
        ket[0] * bra[1].conj(),
        ket[1] * bra[0].conj(),
        ket[1] * bra[1].conj(),
    )
}

/// U(k,t) rebuilt spectrally: sum_s e^{-i E_s t} |psi_s><psi~_s|.
pub fn u_right(bio: &Biorthogonal, t: f64) -> Matrix2C {
    let mut u = Matrix2C::zero();
    for s in 0..2 {
        let ph = (-crate::mat2::I * bio.energies[s] * t).exp();
        u = u + outer(&bio.right[s], &bio.left[s]).scale(ph);
    }
    u
}

/// The companion operator in the left-eigenvector space:
/// sum_s e^{-i E_s t} |psi~_s><psi_s|. Its adjoint against U produces the
/// biorthogonal weights e^{2 Im E_s t}.
pub fn u_left(bio: &Biorthogonal, t: f64) -> Matrix2C {
    let mut u = Matrix2C::zero();
    for s in 0..2 {
        let ph = (-crate::mat2::I * bio.energies[s] * t).exp();
        u = u + outer(&bio.left[s], &bio.right[s]).scale(ph);
    }
    u
}

/// Phi_D by composite-Simpson quadrature of the biorthogonal expectation
/// -Re{ Tr[U_L^dag U H] / Tr[U_L^dag U] } over [0, t], built entirely from
/// matrix products -- an independent route to the closed form.
pub fn dynamical_phase_quadrature(
    model: &ChiralTwoBandModel,
    k: f64,
    t: f64,
    n_t: usize,
) -> Result<f64> {
    if n_t < 16 {
        return Err(Error::InvalidArgument(format!(
            "n_t must be >= 16, got {n_t}"
        )));
    }
    let n = n_t + n_t % 2; // Simpson needs an even interval count
    let bio = biorthogonal_decompose(model, k)?;
    let h = model.hamiltonian(k);
    let integrand = |tp: f64| -> f64 {
        let u = u_right(&bio, tp);
        let ul = u_left(&bio, tp);
        let w = ul.adjoint() * u;
        let num = (w * h).trace();
        let den = w.trace();
        (num / den).re
    };
    let dt = t / n as f64;
    let mut weighted = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        weighted.push(w * integrand(i as f64 * dt));
    }
    Ok(-pairwise_sum(&weighted) * dt / 3.0)
}

/// DTOP value with the Brillouin-zone range and grid it was resolved on.
#[derive(Debug, Clone, Serialize)]
pub struct DtopValue {
    /// Branch-crossing winding count of Phi_G across the zone: the number
    /// of 2pi wraps picked up by the nearest-branch continuation. Integer
    /// between critical times; jumps by +-1 across each of them.
    pub nu: f64,
    /// Raw accumulated phase divided by 2pi. Over the full zone this
    /// coincides with `nu`; over the reduced zone it carries a smooth
    /// non-quantized background from the unpinned endpoint phases, so its
    /// plateaus drift while its jumps stay unit-sized.
    pub nu_integral: f64,
    pub bz_range: (f64, f64),
    pub n_k: usize,
}

/// Winding of the geometric phase across the Brillouin zone,
/// nu(t) = (1/2pi) * closed-loop accumulation of Phi_G(k,t).
///
/// Inversion-symmetric families (where Phi_G(-k) = Phi_G(k)) use the
/// reduced zone [0, pi]; the NRSSH family and generic models use the full
/// zone. Times within `CRITICAL_TIME_TOL` of a critical time are rejected,
/// since nu jumps there. Adjacent phase increments are kept below pi/2 by
/// up to two grid doublings.
pub fn dtop(model: &ChiralTwoBandModel, t: f64, n_k: usize) -> Result<DtopValue> {
    if n_k < 256 {
        return Err(Error::InvalidArgument(format!(
            "n_k must be >= 256, got {n_k}"
        )));
    }
    if t <= 0.0 {
        return Err(Error::InvalidArgument(format!("t must be > 0, got {t}")));
    }

    // refuse to evaluate at (or numerically at) a critical time
    let critical = quench::critical_set(model, 1..=1, 1e-10)?;
    for fam in &critical.families {
        let n = (t / fam.period + 0.5).round().max(1.0);
        let t_c = (n - 0.5) * fam.period;
        if (t - t_c).abs() < CRITICAL_TIME_TOL {
            return Err(Error::CriticalTime {
                t,
                t_c,
                tol: CRITICAL_TIME_TOL,
            });
        }
    }

    let (bz_range, closed) = match model.tag() {
        ModelTag::Lkc(_) | ModelTag::NnnLkc(_) => ((0.0, PI), false),
        ModelTag::Nrssh(_) | ModelTag::Generic => ((-PI, PI), true),
    };

    let mut n = n_k;
    for attempt in 0..=MAX_DTOP_DOUBLINGS {
        let dk = (bz_range.1 - bz_range.0) / n as f64;
        // a closed contour is shifted by half a step so that the loop never
        // starts on a critical momentum (k = +-pi for the full zone), where
        // the endpoint bookkeeping of the branch count would break down
        let k0 = if closed { bz_range.0 + 0.5 * dk } else { bz_range.0 };
        let mut increments = Vec::with_capacity(n);
        let first = geometric_phase(model, k0, t)?;
        let mut prev = first;
        let mut max_inc: f64 = 0.0;
        let mut ok = true;
        for j in 1..=n {
            let k = k0 + j as f64 * dk;
            let cur = geometric_phase(model, k, t)?;
            let inc = wrap_angle(cur - prev);
            max_inc = max_inc.max(inc.abs());
            if inc.abs() > std::f64::consts::FRAC_PI_2 {
                ok = false;
                break;
            }
            increments.push(inc);
            prev = cur;
        }
        if ok {
            let accumulated = pairwise_sum(&increments);
            // the wrap corrections are an exact multiple of 2pi: subtracting
            // the raw endpoint difference isolates the quantized winding
            let crossings = (accumulated - (prev - first)) / (2.0 * PI);
            return Ok(DtopValue {
                nu: crossings.round(),
                nu_integral: accumulated / (2.0 * PI),
                bz_range,
                n_k: n,
            });
        }
        if attempt == MAX_DTOP_DOUBLINGS {
            return Err(Error::InsufficientGrid {
                n_k: n,
                increment: max_inc,
            });
        }
        n *= 2;
    }
    unreachable!()
}
