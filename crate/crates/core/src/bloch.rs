//! Chiral-symmetric two-band non-Hermitian Bloch Hamiltonians.
//!
//! Every model handled here has the form
//!
//!   H(k) = [h_a(k) - i g_a(k)] sigma_a + [h_b(k) - i g_b(k)] sigma_b,
//!
//! with real 2pi-periodic profiles h, g on two distinct Pauli axes. The
//! remaining axis sigma_c anticommutes with H(k) and realizes the chiral
//! (sublattice) symmetry. The dispersion is E_pm(k) = pm E(k) with
//! E^2 = (h_a - i g_a)^2 + (h_b - i g_b)^2, and the single-k evolution
//! operator has the closed form
//!
//!   U(k,t) = cos(E t) sigma_0 - i sin(E t)/E H(k).

use crate::error::{Error, Result};
use crate::mat2::{Matrix2C, I};
use num_complex::Complex64;
use serde::Serialize;

/// Below this |E| the evolution operator switches to the nilpotent limit
/// U = sigma_0 - i t H(k); sin(Et)/E is unstable underneath.
pub const EPS_E: f64 = 1e-12;

/// One of the three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub fn matrix(self) -> Matrix2C {
        match self {
            PauliAxis::X => Matrix2C::sigma_x(),
            PauliAxis::Y => Matrix2C::sigma_y(),
            PauliAxis::Z => Matrix2C::sigma_z(),
        }
    }

    /// The axis orthogonal to both `a` and `b`; carries the chiral operator.
    pub fn chiral_partner(a: PauliAxis, b: PauliAxis) -> PauliAxis {
        use PauliAxis::*;
        match (a, b) {
            (X, Y) | (Y, X) => Z,
            (Y, Z) | (Z, Y) => X,
            (Z, X) | (X, Z) => Y,
            _ => unreachable!("axes must differ"),
        }
    }
}

/// A real 2pi-periodic function of k as a truncated Fourier series,
///
///   f(k) = sum_n cos_coeffs[n] cos(n k) + sum_n sin_coeffs[n] sin(n k).
///
/// This covers all built-in models and any finite-range hopping extension.
#[derive(Debug, Clone, Default, Serialize)]
pub struct FourierSeries {
    pub cos_coeffs: Vec<f64>,
    pub sin_coeffs: Vec<f64>,
}

impl FourierSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self {
            cos_coeffs: vec![c],
            sin_coeffs: vec![],
        }
    }

    pub fn eval(&self, k: f64) -> f64 {
        let mut f = 0.0;
        for (n, c) in self.cos_coeffs.iter().enumerate() {
            f += c * (n as f64 * k).cos();
        }
        for (n, s) in self.sin_coeffs.iter().enumerate() {
            f += s * (n as f64 * k).sin();
        }
        f
    }

    /// True when the series has no k-dependent term.
    pub fn is_constant(&self) -> bool {
        self.cos_coeffs.iter().skip(1).all(|&c| c == 0.0)
            && self.sin_coeffs.iter().skip(1).all(|&s| s == 0.0)
    }

    pub fn constant_part(&self) -> f64 {
        self.cos_coeffs.first().copied().unwrap_or(0.0)
    }
}

/// Lossy Kitaev chain parameters: hopping J, pairing Delta, real chemical
/// potential u and onsite loss strength v.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelParamsLkc {
    pub j: f64,
    pub delta: f64,
    pub u: f64,
    pub v: f64,
}

/// Lossy Kitaev chain with next-nearest-neighbor hoppings and pairings.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelParamsNnnLkc {
    pub j1: f64,
    pub j2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub u: f64,
    pub v: f64,
}

/// Nonreciprocal SSH parameters. The intracell hoppings are J1 +- gamma;
/// J2 > 0 and gamma > 0 are enforced at construction.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelParamsNrssh {
    pub j1: f64,
    pub j2: f64,
    pub gamma: f64,
}

/// Identity of a model, carried for closed-form solvers and reports.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum ModelTag {
    Generic,
    Lkc(ModelParamsLkc),
    NnnLkc(ModelParamsNnnLkc),
    Nrssh(ModelParamsNrssh),
}

/// A chiral-symmetric two-band non-Hermitian Bloch Hamiltonian. Immutable
/// after construction and safe to share across workers.
#[derive(Debug, Clone, Serialize)]
pub struct ChiralTwoBandModel {
    axis_a: PauliAxis,
    axis_b: PauliAxis,
    h_a: FourierSeries,
    h_b: FourierSeries,
    g_a: FourierSeries,
    g_b: FourierSeries,
    tag: ModelTag,
}

impl ChiralTwoBandModel {
    /// A generic model from explicit Fourier profiles.
    pub fn generic(
        axis_a: PauliAxis,
        axis_b: PauliAxis,
        h_a: FourierSeries,
        h_b: FourierSeries,
        g_a: FourierSeries,
        g_b: FourierSeries,
    ) -> Result<Self> {
        if axis_a == axis_b {
            return Err(Error::ParamDomain("axis_a must differ from axis_b".into()));
        }
        Ok(Self {
            axis_a,
            axis_b,
            h_a,
            h_b,
            g_a,
            g_b,
            tag: ModelTag::Generic,
        })
    }

    pub fn axis_a(&self) -> PauliAxis {
        self.axis_a
    }

    pub fn axis_b(&self) -> PauliAxis {
        self.axis_b
    }

    /// The chiral axis c with sigma_c H(k) sigma_c = -H(k).
    pub fn chiral_axis(&self) -> PauliAxis {
        PauliAxis::chiral_partner(self.axis_a, self.axis_b)
    }

    pub fn tag(&self) -> &ModelTag {
        &self.tag
    }

    pub fn h_a(&self, k: f64) -> f64 {
        self.h_a.eval(k)
    }

    pub fn h_b(&self, k: f64) -> f64 {
        self.h_b.eval(k)
    }

    pub fn g_a(&self, k: f64) -> f64 {
        self.g_a.eval(k)
    }

    pub fn g_b(&self, k: f64) -> f64 {
        self.g_b.eval(k)
    }

    /// Complex component on axis a: d_a(k) = h_a(k) - i g_a(k).
    pub fn d_a(&self, k: f64) -> Complex64 {
        Complex64::new(self.h_a(k), -self.g_a(k))
    }

    /// Complex component on axis b: d_b(k) = h_b(k) - i g_b(k).
    pub fn d_b(&self, k: f64) -> Complex64 {
        Complex64::new(self.h_b(k), -self.g_b(k))
    }

    /// The constant loss vector (g_a, g_b), or `None` when either loss
    /// profile depends on k.
    pub fn constant_loss(&self) -> Option<(f64, f64)> {
        if self.g_a.is_constant() && self.g_b.is_constant() {
            Some((self.g_a.constant_part(), self.g_b.constant_part()))
        } else {
            None
        }
    }

    /// Assemble H(k) = d_a(k) sigma_a + d_b(k) sigma_b.
    pub fn hamiltonian(&self, k: f64) -> Matrix2C {
        self.axis_a.matrix().scale(self.d_a(k)) + self.axis_b.matrix().scale(self.d_b(k))
    }

    /// Branch-resolved dispersion E(k): principal square root of
    /// d_a^2 + d_b^2, normalized to Re E >= 0 with ties broken by Im E >= 0.
    pub fn dispersion(&self, k: f64) -> Complex64 {
        let da = self.d_a(k);
        let db = self.d_b(k);
        branch_sqrt(da * da + db * db)
    }

    /// Exact evolution operator U(k,t) = exp(-i H(k) t).
    pub fn evolution_operator(&self, k: f64, t: f64) -> Matrix2C {
        let h = self.hamiltonian(k);
        let e = self.dispersion(k);
        if e.norm() < EPS_E {
            // nilpotent limit: H^2 = 0, so the series terminates
            return Matrix2C::identity() + h.scale(-I * t);
        }
        let et = e * t;
        Matrix2C::identity().scale(et.cos()) + h.scale(-I * et.sin() / e)
    }
}

/// Apply the branch convention to sqrt(z): Re >= 0, tie broken by Im >= 0.
pub fn branch_sqrt(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.re < 0.0 || (r.re == 0.0 && r.im < 0.0) {
        -r
    } else {
        r
    }
}

/// Lossy Kitaev chain on axes (y, z):
/// h_y = Delta sin k, h_z = u + J cos k, g_z = v.
pub fn build_lkc(params: ModelParamsLkc) -> ChiralTwoBandModel {
    let ModelParamsLkc { j, delta, u, v } = params;
    ChiralTwoBandModel {
        axis_a: PauliAxis::Y,
        axis_b: PauliAxis::Z,
        h_a: FourierSeries {
            cos_coeffs: vec![],
            sin_coeffs: vec![0.0, delta],
        },
        h_b: FourierSeries {
            cos_coeffs: vec![u, j],
            sin_coeffs: vec![],
        },
        g_a: FourierSeries::zero(),
        g_b: FourierSeries::constant(v),
        tag: ModelTag::Lkc(params),
    }
}

/// LKC with next-nearest-neighbor terms on axes (y, z):
/// h_y = Delta1 sin k + Delta2 sin 2k, h_z = u + J1 cos k + J2 cos 2k.
pub fn build_nnn_lkc(params: ModelParamsNnnLkc) -> ChiralTwoBandModel {
    let ModelParamsNnnLkc {
        j1,
        j2,
        delta1,
        delta2,
        u,
        v,
    } = params;
    ChiralTwoBandModel {
        axis_a: PauliAxis::Y,
        axis_b: PauliAxis::Z,
        h_a: FourierSeries {
            cos_coeffs: vec![],
            sin_coeffs: vec![0.0, delta1, delta2],
        },
        h_b: FourierSeries {
            cos_coeffs: vec![u, j1, j2],
            sin_coeffs: vec![],
        },
        g_a: FourierSeries::zero(),
        g_b: FourierSeries::constant(v),
        tag: ModelTag::NnnLkc(params),
    }
}

/// Nonreciprocal SSH chain on axes (x, y):
/// h_x = J1 + J2 cos k, h_y = J2 sin k, g_y = gamma.
/// Requires J2 > 0 and gamma > 0.
pub fn build_nrssh(params: ModelParamsNrssh) -> Result<ChiralTwoBandModel> {
    let ModelParamsNrssh { j1, j2, gamma } = params;
    if j2 <= 0.0 {
        return Err(Error::ParamDomain(format!("J2 must be > 0, got {j2}")));
    }
    if gamma <= 0.0 {
        return Err(Error::ParamDomain(format!("gamma must be > 0, got {gamma}")));
    }
    Ok(ChiralTwoBandModel {
        axis_a: PauliAxis::X,
        axis_b: PauliAxis::Y,
        h_a: FourierSeries {
            cos_coeffs: vec![j1, j2],
            sin_coeffs: vec![],
        },
        h_b: FourierSeries {
            cos_coeffs: vec![],
            sin_coeffs: vec![0.0, j2],
        },
        g_a: FourierSeries::zero(),
        g_b: FourierSeries::constant(gamma),
        tag: ModelTag::Nrssh(params),
    })
}
