//! SU(2) polarization transformations on the two-mode N-photon manifold.
//!
//! The manifold carries spin j = N/2 through the Schwinger realization
//! Jx = (a†b + ab†)/2, Jy = (a†b − ab†)/2i, Jz = (a†a − b†b)/2, where mode a
//! is horizontal and mode b vertical. Basis vectors are |n, N−n⟩ with n the
//! horizontal photon count, so Jz is diagonal with entries n − N/2.
//!
//! Every transformation is the Euler product
//! U(β, θ, α) = e^{−iβJz} · e^{−iθJy} · e^{−iαJz}:
//! phase shifts about Jz and a geometric rotation about Jy.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Max allowed deviation of U†U from the identity.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

/// Euler angle triple (β, θ, α) for U(β,θ,α) = e^{−iβJz} e^{−iθJy} e^{−iαJz}.
///
/// Angles are taken as given and never wrapped; β and α are 2π-periodic up to
/// a global phase (exactly 4π-periodic for odd N), θ likewise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub beta: f64,
    pub theta: f64,
    pub alpha: f64,
}

impl EulerAngles {
    pub const IDENTITY: Self = Self {
        beta: 0.0,
        theta: 0.0,
        alpha: 0.0,
    };

    pub fn new(beta: f64, theta: f64, alpha: f64) -> Self {
        Self { beta, theta, alpha }
    }

    /// Fold into β, α ∈ [0, 2π), θ ∈ [0, π] without changing |⟨s|U|s⟩| for
    /// any state (the folded unitary differs at most by a global phase).
    ///
    /// Uses e^{−iπJz} e^{−iθJy} e^{iπJz} = e^{iθJy} and the 2π-periodicity of
    /// the rotation up to sign.
    pub fn canonicalized(self) -> Self {
        let tau = 2.0 * std::f64::consts::PI;
        let mut beta = self.beta;
        let mut theta = self.theta.rem_euclid(2.0 * tau);
        let mut alpha = self.alpha;
        if theta >= tau {
            theta -= 2.0 * tau; // now in [−2π, 2π)
        }
        if theta < 0.0 {
            theta = -theta;
            beta += std::f64::consts::PI;
            alpha -= std::f64::consts::PI;
        }
        if theta > std::f64::consts::PI {
            theta = tau - theta;
            beta += std::f64::consts::PI;
            alpha -= std::f64::consts::PI;
        }
        Self {
            beta: beta.rem_euclid(tau),
            theta,
            alpha: alpha.rem_euclid(tau),
        }
    }
}

/// The Schwinger angular-momentum matrices (Jx, Jy, Jz) on N photons.
///
/// Jz is diagonal with entries n − N/2; the off-diagonals follow from
/// a†b |n, N−n⟩ = √((n+1)(N−n)) |n+1, N−n−1⟩.
pub fn angular_momentum_matrices(n_photons: usize) -> (Array2<C64>, Array2<C64>, Array2<C64>) {
    let dim = n_photons + 1;
    let half = n_photons as f64 / 2.0;
    let mut jx = Array2::<C64>::zeros((dim, dim));
    let mut jy = Array2::<C64>::zeros((dim, dim));
    let mut jz = Array2::<C64>::zeros((dim, dim));
    for n in 0..dim {
        jz[(n, n)] = C64::new(n as f64 - half, 0.0);
    }
    for n in 0..n_photons {
        let w = ((n + 1) as f64 * (n_photons - n) as f64).sqrt() / 2.0;
        jx[(n + 1, n)] = C64::new(w, 0.0);
        jx[(n, n + 1)] = C64::new(w, 0.0);
        jy[(n + 1, n)] = C64::new(0.0, -w); // √((n+1)(N−n)) / 2i
        jy[(n, n + 1)] = C64::new(0.0, w);
    }
    (jx, jy, jz)
}

/// A validated (N+1)×(N+1) unitary acting on the N-photon manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    n_photons: usize,
    matrix: Array2<C64>,
}

impl UnitaryMatrix {
    /// Wrap a matrix, checking shape and unitarity (‖U†U − I‖_max ≤ 1e−12).
    pub fn from_matrix(n_photons: usize, matrix: Array2<C64>) -> Result<Self> {
        let dim = n_photons + 1;
        if matrix.shape() != [dim, dim] {
            return Err(Error::DimensionMismatch {
                operator: n_photons,
                operand: matrix.nrows().max(1) - 1,
            });
        }
        let gram = adjoint(&matrix).dot(&matrix);
        let mut deviation = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i == j {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                };
                deviation = deviation.max((gram[(i, j)] - expected).norm());
            }
        }
        if deviation > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { n_photons, matrix })
    }

    pub fn identity(n_photons: usize) -> Self {
        Self {
            n_photons,
            matrix: Array2::eye(n_photons + 1),
        }
    }

    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    /// Hermitian adjoint (which is also the inverse).
    pub fn adjoint(&self) -> Self {
        Self {
            n_photons: self.n_photons,
            matrix: adjoint(&self.matrix),
        }
    }

    /// Matrix product self · other.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n_photons != other.n_photons {
            return Err(Error::DimensionMismatch {
                operator: self.n_photons,
                operand: other.n_photons,
            });
        }
        Ok(Self {
            n_photons: self.n_photons,
            matrix: self.matrix.dot(&other.matrix),
        })
    }

    pub(crate) fn from_matrix_unchecked(n_photons: usize, matrix: Array2<C64>) -> Self {
        Self { n_photons, matrix }
    }
}

pub(crate) fn adjoint(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

/// exp(A) by scaling and squaring a Taylor series; adequate for the ≤ 21×21
/// skew-Hermitian generators used here.
pub(crate) fn expm(a: &Array2<C64>) -> Array2<C64> {
    let dim = a.nrows();
    // max column 1-norm bounds the spectral radius
    let mut norm = 0.0f64;
    for j in 0..dim {
        let col: f64 = (0..dim).map(|i| a[(i, j)].norm()).sum();
        norm = norm.max(col);
    }
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / 2f64.powi(squarings as i32));
    let mut result = Array2::<C64>::eye(dim);
    let mut term = Array2::<C64>::eye(dim);
    for k in 1..=40 {
        term = term.dot(&scaled).mapv(|z| z / k as f64);
        result += &term;
        if term.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Differential phase shift e^{−iαJz}: diagonal entries e^{−iα(n − N/2)}.
pub fn phase_shift_unitary(n_photons: usize, alpha: f64) -> UnitaryMatrix {
    let dim = n_photons + 1;
    let half = n_photons as f64 / 2.0;
    let mut m = Array2::<C64>::zeros((dim, dim));
    for n in 0..dim {
        m[(n, n)] = C64::from_polar(1.0, -alpha * (n as f64 - half));
    }
    UnitaryMatrix::from_matrix_unchecked(n_photons, m)
}

/// Geometric rotation e^{−iθJy}; entries are real.
pub fn rotation_unitary(n_photons: usize, theta: f64) -> UnitaryMatrix {
    UnitaryMatrix::from_matrix_unchecked(n_photons, rotation_matrix(n_photons, theta))
}

pub(crate) fn rotation_matrix(n_photons: usize, theta: f64) -> Array2<C64> {
    let (_, jy, _) = angular_momentum_matrices(n_photons);
    // −iθ·Jy has purely real entries, so the exponential stays exactly real
    expm(&jy.mapv(|z| z * C64::new(0.0, -theta)))
}

/// Full Euler transformation e^{−iβJz} e^{−iθJy} e^{−iαJz}.
pub fn euler_unitary(n_photons: usize, angles: EulerAngles) -> UnitaryMatrix {
    let dim = n_photons + 1;
    let half = n_photons as f64 / 2.0;
    let mut m = rotation_matrix(n_photons, angles.theta);
    for row in 0..dim {
        let pb = C64::from_polar(1.0, -angles.beta * (row as f64 - half));
        for col in 0..dim {
            let pa = C64::from_polar(1.0, -angles.alpha * (col as f64 - half));
            m[(row, col)] *= pb * pa;
        }
    }
    UnitaryMatrix::from_matrix_unchecked(n_photons, m)
}

/// The two-photon transition operator exp(ϑ(J₋² − J₊²)/2), which sweeps
/// sin ϑ|0,2⟩ + cos ϑ|2,0⟩ along its orbit parameter.
pub fn transition_unitary_two_photon(vartheta: f64) -> UnitaryMatrix {
    let (jx, jy, _) = angular_momentum_matrices(2);
    // J± = Jx ± iJy
    let i = C64::new(0.0, 1.0);
    let jp = &jx + &jy.mapv(|z| z * i);
    let jm = &jx - &jy.mapv(|z| z * i);
    let gen = (jm.dot(&jm) - jp.dot(&jp)).mapv(|z| z * vartheta / 2.0);
    UnitaryMatrix::from_matrix_unchecked(2, expm(&gen))
}

/// Legendre polynomial P_m(x) by the three-term recurrence.
pub fn legendre(m: usize, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = x;
    for k in 1..m {
        let next = ((2 * k + 1) as f64 * x * curr - k as f64 * prev) / (k + 1) as f64;
        prev = curr;
        curr = next;
    }
    curr
}

/// Derivative P′_m(x), valid away from x = ±1.
fn legendre_derivative(m: usize, x: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    m as f64 * (x * legendre(m, x) - legendre(m - 1, x)) / (x * x - 1.0)
}

/// All m zeros of P_m in ascending order, via Newton iteration from the
/// standard cosine initial guesses (tolerance 1e−14, at most 100 steps).
pub fn legendre_zeros(m: usize) -> Vec<f64> {
    let mut zeros = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (4 * i + 3) as f64 / (4 * m + 2) as f64).cos();
        for _ in 0..100 {
            let step = legendre(m, x) / legendre_derivative(m, x);
            x -= step;
            if step.abs() < 1e-14 {
                break;
            }
        }
        zeros.push(x);
    }
    zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
    zeros
}
