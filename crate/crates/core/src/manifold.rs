//! Pure and mixed states on the two-mode N-photon manifold.
//!
//! Amplitude vectors are indexed by the horizontal photon count: entry n is
//! the coefficient of |n, N−n⟩, so a state on N photons carries N+1 entries
//! ordered |0,N⟩, |1,N−1⟩, …, |N,0⟩.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::su2::{adjoint, UnitaryMatrix};

/// Largest norm deviation accepted from external input.
pub const INGEST_NORM_TOLERANCE: f64 = 1e-9;
/// Norm deviation maintained internally; inputs inside this band are kept
/// bit-for-bit so serialized states round-trip stably.
pub const INTERNAL_NORM_TOLERANCE: f64 = 1e-12;

/// A normalized pure state c_0|0,N⟩ + … + c_N|N,0⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_photons: usize,
    amplitudes: Array1<C64>,
}

impl PureState {
    /// Build a state from raw amplitudes.
    ///
    /// With `normalize` the vector is rescaled to unit norm (rejecting the
    /// zero vector); without it the norm must already be within 1e−9 of 1,
    /// and is then tightened to the internal tolerance.
    pub fn new(n_photons: usize, amplitudes: Vec<C64>, normalize: bool) -> Result<Self> {
        let expected = n_photons + 1;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                n_photons,
                expected,
                got: amplitudes.len(),
            });
        }
        let mut v = Array1::from(amplitudes);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if normalize {
            if norm == 0.0 {
                return Err(Error::ZeroVector);
            }
        } else if (norm - 1.0).abs() > INGEST_NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                norm,
                tolerance: INGEST_NORM_TOLERANCE,
            });
        }
        if (norm - 1.0).abs() > INTERNAL_NORM_TOLERANCE {
            v.mapv_inplace(|z| z / norm);
        }
        Ok(Self {
            n_photons,
            amplitudes: v,
        })
    }

    /// The Fock basis state |n, N−n⟩.
    pub fn fock(n_photons: usize, n: usize) -> Result<Self> {
        if n > n_photons {
            return Err(Error::IndexOutOfManifold {
                index: n,
                n_photons,
            });
        }
        let mut v = Array1::<C64>::zeros(n_photons + 1);
        v[n] = C64::new(1.0, 0.0);
        Ok(Self {
            n_photons,
            amplitudes: v,
        })
    }

    pub(crate) fn from_array_unchecked(n_photons: usize, amplitudes: Array1<C64>) -> Self {
        Self {
            n_photons,
            amplitudes,
        }
    }

    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.n_photons != other.n_photons {
            return Err(Error::ManifoldMismatch {
                left: self.n_photons,
                right: other.n_photons,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Rank-one density matrix |self⟩⟨self|.
    pub fn projector(&self) -> MixedState {
        let dim = self.n_photons + 1;
        let mut m = Array2::<C64>::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        MixedState {
            n_photons: self.n_photons,
            matrix: m,
        }
    }

    /// True when `other` equals `self` after removing one global phase.
    pub fn matches_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        if self.n_photons != other.n_photons {
            return false;
        }
        let ip: C64 = other.inner(self).unwrap();
        let phase = if ip.norm() > 0.0 {
            ip / ip.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .all(|(a, b)| (a - phase * b).norm() <= tol)
    }

    /// Max amplitude difference against an expected vector, global phase
    /// included.
    pub fn max_deviation(&self, expected: &[C64]) -> f64 {
        self.amplitudes
            .iter()
            .zip(expected.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// A density matrix on the N-photon manifold: Hermitian, unit trace,
/// positive semidefinite (all to 1e−12).
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    n_photons: usize,
    matrix: Array2<C64>,
}

impl MixedState {
    pub fn from_matrix(n_photons: usize, matrix: Array2<C64>) -> Result<Self> {
        let dim = n_photons + 1;
        if matrix.shape() != [dim, dim] {
            return Err(Error::DimensionMismatch {
                operator: n_photons,
                operand: matrix.nrows().max(1) - 1,
            });
        }
        let mut asym = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                asym = asym.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
            }
        }
        if asym > 1e-12 {
            return Err(Error::NotHermitian { deviation: asym });
        }
        let trace: C64 = (0..dim).map(|i| matrix[(i, i)]).sum();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        check_positive_semidefinite(&matrix)?;
        Ok(Self { n_photons, matrix })
    }

    /// The unique unpolarized state: 1/(N+1) times the identity.
    pub fn maximally_mixed(n_photons: usize) -> Self {
        let dim = n_photons + 1;
        Self {
            n_photons,
            matrix: Array2::eye(dim).mapv(|z: C64| z / dim as f64),
        }
    }

    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }
}

/// Cholesky factorization with tolerance: a Hermitian matrix is accepted as
/// positive semidefinite if no pivot falls below −1e−12.
fn check_positive_semidefinite(m: &Array2<C64>) -> Result<()> {
    let dim = m.nrows();
    let mut l = Array2::<C64>::zeros((dim, dim));
    for j in 0..dim {
        let mut pivot = m[(j, j)].re;
        for k in 0..j {
            pivot -= l[(j, k)].norm_sqr();
        }
        if pivot < -1e-12 {
            return Err(Error::NotPositiveSemidefinite { pivot });
        }
        if pivot <= 0.0 {
            continue; // numerically null direction; leave the column zero
        }
        let root = pivot.sqrt();
        l[(j, j)] = C64::new(root, 0.0);
        for i in (j + 1)..dim {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / root;
        }
    }
    Ok(())
}

/// Haar-like random state: i.i.d. standard complex Gaussian amplitudes
/// (Box–Muller), normalized.
pub(crate) fn random_state<R: rand::Rng>(n_photons: usize, rng: &mut R) -> PureState {
    let dim = n_photons + 1;
    let mut amps = Vec::with_capacity(dim);
    for _ in 0..dim {
        let u: f64 = 1.0 - rng.random::<f64>(); // (0,1]: keeps ln finite
        let v: f64 = rng.random();
        let r = (-2.0 * u.ln()).sqrt();
        let phi = 2.0 * std::f64::consts::PI * v;
        amps.push(C64::new(r * phi.cos(), r * phi.sin()));
    }
    PureState::new(n_photons, amps, true).expect("gaussian sample is nonzero")
}

/// U|s⟩.
pub fn apply_unitary(u: &UnitaryMatrix, s: &PureState) -> Result<PureState> {
    if u.n_photons() != s.n_photons() {
        return Err(Error::DimensionMismatch {
            operator: u.n_photons(),
            operand: s.n_photons(),
        });
    }
    Ok(PureState::from_array_unchecked(
        s.n_photons(),
        u.matrix().dot(s.amplitudes()),
    ))
}

/// UρU†.
pub fn conjugate_mixed(u: &UnitaryMatrix, rho: &MixedState) -> Result<MixedState> {
    if u.n_photons() != rho.n_photons() {
        return Err(Error::DimensionMismatch {
            operator: u.n_photons(),
            operand: rho.n_photons(),
        });
    }
    let m = u.matrix().dot(rho.matrix()).dot(&adjoint(u.matrix()));
    Ok(MixedState {
        n_photons: rho.n_photons(),
        matrix: m,
    })
}
