//! Dense 2x2 complex matrices and the Pauli basis.
//!
//! Everything in this crate lives in a two-band Bloch space, so a small
//! hand-rolled matrix type is all we need. Entries are stored row-major:
//! `[m00, m01, m10, m11]`.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A 2x2 complex matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2C {
    pub e: [Complex64; 4],
}

impl Matrix2C {
    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self {
            e: [m00, m01, m10, m11],
        }
    }

    pub fn zero() -> Self {
        Self {
            e: [Complex64::ZERO; 4],
        }
    }

    pub fn identity() -> Self {
        Self::new(
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ONE,
        )
    }

    pub fn sigma_x() -> Self {
        Self::new(
            Complex64::ZERO,
            Complex64::ONE,
            Complex64::ONE,
            Complex64::ZERO,
        )
    }

    pub fn sigma_y() -> Self {
        Self::new(Complex64::ZERO, -I, I, Complex64::ZERO)
    }

    pub fn sigma_z() -> Self {
        Self::new(
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            -Complex64::ONE,
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0] + self.e[3]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0] * self.e[3] - self.e[1] * self.e[2]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.e[0].conj(),
            self.e[2].conj(),
            self.e[1].conj(),
            self.e[3].conj(),
        )
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> Self {
        Self::new(self.e[0], self.e[2], self.e[1], self.e[3])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(
            self.e[0].conj(),
            self.e[1].conj(),
            self.e[2].conj(),
            self.e[3].conj(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            e: [self.e[0] * s, self.e[1] * s, self.e[2] * s, self.e[3] * s],
        }
    }

    /// Inverse via the adjugate; returns `None` when the determinant is
    /// numerically zero.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() < 1e-14 {
            return None;
        }
        let inv = Complex64::ONE / d;
        Some(Self::new(
            self.e[3] * inv,
            -self.e[1] * inv,
            -self.e[2] * inv,
            self.e[0] * inv,
        ))
    }

    /// Largest entrywise absolute value, used for residual checks.
    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Max entry of `self - self.adjoint()`.
    pub fn hermiticity_residual(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.e[0] * v[0] + self.e[1] * v[1],
            self.e[2] * v[0] + self.e[3] * v[1],
        ]
    }

    /// Eigenvalues of a Hermitian 2x2 matrix, ascending. The imaginary
    /// parts of the diagonal are ignored.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.e[0].re;
        let d = self.e[3].re;
        let b = self.e[1];
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean - r, mean + r)
    }

    /// Hermitian principal square root, valid for positive-semidefinite
    /// input. Uses the Cayley-Hamilton form sqrt(A) = (A + sqrt(det) I) /
    /// sqrt(tr + 2 sqrt(det)).
    pub fn hermitian_sqrt(&self) -> Self {
        let (lo, hi) = self.hermitian_eigenvalues();
        let lo = lo.max(0.0);
        let sd = (lo * hi).max(0.0).sqrt();
        let denom = (lo + hi + 2.0 * sd).sqrt();
        if denom < 1e-300 {
            return Self::zero();
        }
        let shift = Complex64::new(sd, 0.0);
        let mut m = *self;
        m.e[0] += shift;
        m.e[3] += shift;
        m.scale(Complex64::new(1.0 / denom, 0.0))
    }
}

impl Add for Matrix2C {
    type Output = Matrix2C;
    fn add(self, rhs: Matrix2C) -> Matrix2C {
        Matrix2C {
            e: [
                self.e[0] + rhs.e[0],
                self.e[1] + rhs.e[1],
                self.e[2] + rhs.e[2],
                self.e[3] + rhs.e[3],
            ],
        }
    }
}

impl Sub for Matrix2C {
    type Output = Matrix2C;
    fn sub(self, rhs: Matrix2C) -> Matrix2C {
        Matrix2C {
            e: [
                self.e[0] - rhs.e[0],
                self.e[1] - rhs.e[1],
                self.e[2] - rhs.e[2],
                self.e[3] - rhs.e[3],
            ],
        }
    }
}

impl Neg for Matrix2C {
    type Output = Matrix2C;
    fn neg(self) -> Matrix2C {
        self.scale(-Complex64::ONE)
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;
    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.e[0] * rhs.e[0] + self.e[1] * rhs.e[2],
            self.e[0] * rhs.e[1] + self.e[1] * rhs.e[3],
            self.e[2] * rhs.e[0] + self.e[3] * rhs.e[2],
            self.e[2] * rhs.e[1] + self.e[3] * rhs.e[3],
        )
    }
}

/// A 4x4 complex matrix, row-major. Only used for the dilated two-qubit
/// Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct Matrix4C {
    pub e: [Complex64; 16],
}

impl Matrix4C {
    pub fn zero() -> Self {
        Self {
            e: [Complex64::ZERO; 16],
        }
    }

    /// Kronecker product `a (x) b` with the first factor acting on the
    /// system qubit and the second on the ancilla.
    pub fn kron(a: &Matrix2C, b: &Matrix2C) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        m.e[(2 * i + p) * 4 + (2 * j + q)] = a.e[2 * i + j] * b.e[2 * p + q];
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..16 {
            m.e[i] = self.e[i] + rhs.e[i];
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.e[4 * i + j] = self.e[4 * j + i].conj();
            }
        }
        m
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let adj = self.adjoint();
        self.e
            .iter()
            .zip(adj.e.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.e[4 * i + j] * v[j];
            }
        }
        out
    }

    /// Tr[(a (x) b) M] / 4, the Pauli-basis projection coefficient.
    pub fn pauli_coefficient(&self, a: &Matrix2C, b: &Matrix2C) -> Complex64 {
        let op = Self::kron(a, b);
        let mut tr = Complex64::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                tr += op.e[4 * i + j] * self.e[4 * j + i];
            }
        }
        tr / 4.0
    }
}
