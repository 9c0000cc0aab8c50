//! Complete N-photon bases generated from equipartition states.
//!
//! A state whose components all have magnitude 1/√(N+1) in the eigenbasis of
//! Jz (or Jy) is "equipartition" on that axis. Cycling such a state through
//! the N+1 phase shifts (rotations) of step 2π/(N+1) produces a complete
//! orthonormal basis, so the whole basis lives on a single SU(2) orbit and is
//! generated by one kind of transformation only.
//!
//! The named constructors build the worked two- and three-photon examples
//! from fixed seeds and assert the resulting amplitude vectors — including
//! their global phases — against hard-coded fixtures, so any drift in the
//! rotation or phase-shift sign conventions fails loudly here.

use ndarray::Array1;
use num_complex::Complex64 as C64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::manifold::{apply_unitary, PureState};
use crate::orbits::psi_orbit_state;
use crate::su2::{
    adjoint, euler_unitary, phase_shift_unitary, rotation_unitary, EulerAngles, UnitaryMatrix,
};

/// Default magnitude tolerance for [`is_equipartition`].
pub const DEFAULT_EQUIPARTITION_TOLERANCE: f64 = 1e-10;
/// Largest Gram-matrix deviation an [`OrthonormalBasis`] accepts.
pub const GRAM_TOLERANCE: f64 = 1e-10;

/// Which one-parameter subgroup generates a basis: phase shifts (Jz) or
/// geometric rotations (Jy).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Z,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Z => "z",
            Axis::Y => "y",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" | "Z" => Ok(Axis::Z),
            "y" | "Y" => Ok(Axis::Y),
            _ => Err(Error::InvalidOptions("axis must be \"z\" or \"y\"")),
        }
    }
}

/// Seed for the three-photon constructions: ζ1 = (|0,3⟩+|3,0⟩)/√2 or
/// ζ2 = (|1,2⟩+|2,1⟩)/√2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreePhotonSeed {
    Zeta1,
    Zeta2,
}

impl fmt::Display for ThreePhotonSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreePhotonSeed::Zeta1 => "zeta1",
            ThreePhotonSeed::Zeta2 => "zeta2",
        })
    }
}

impl FromStr for ThreePhotonSeed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta1" => Ok(ThreePhotonSeed::Zeta1),
            "zeta2" => Ok(ThreePhotonSeed::Zeta2),
            _ => Err(Error::InvalidOptions("seed must be \"zeta1\" or \"zeta2\"")),
        }
    }
}

/// Selects θ₊ = arccos(1/√3) or θ₋ = arccos(−1/√3) in the three-photon
/// z-axis construction (the y-axis construction has a single operator and
/// ignores it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignChoice {
    Plus,
    Minus,
}

impl fmt::Display for SignChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignChoice::Plus => "+",
            SignChoice::Minus => "-",
        })
    }
}

impl FromStr for SignChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(SignChoice::Plus),
            "-" | "minus" => Ok(SignChoice::Minus),
            _ => Err(Error::InvalidOptions("sign must be \"+\" or \"-\"")),
        }
    }
}

impl SignChoice {
    fn value(self) -> f64 {
        match self {
            SignChoice::Plus => 1.0,
            SignChoice::Minus => -1.0,
        }
    }
}

/// Unitary whose columns are Jy eigenvectors, ordered by ascending
/// eigenvalue n − N/2 and gauged so the first significant component of each
/// column is real positive.
///
/// Built from Û(π/2, π/2, 0), which conjugates Jz into Jy; the gauge fixing
/// only multiplies columns by unit phases.
pub fn jy_eigenbasis(n_photons: usize) -> UnitaryMatrix {
    let w = euler_unitary(n_photons, EulerAngles::new(FRAC_PI_2, FRAC_PI_2, 0.0));
    let mut m = w.matrix().clone();
    let dim = n_photons + 1;
    for col in 0..dim {
        let mut phase = C64::new(1.0, 0.0);
        for row in 0..dim {
            let z = m[(row, col)];
            if z.norm() > 1e-8 {
                phase = z.conj() / z.norm();
                break;
            }
        }
        for row in 0..dim {
            m[(row, col)] *= phase;
        }
    }
    UnitaryMatrix::from_matrix(n_photons, m).expect("unit-phase column scaling keeps unitarity")
}

fn axis_components(s: &PureState, axis: Axis) -> Array1<C64> {
    match axis {
        Axis::Z => s.amplitudes().clone(),
        Axis::Y => {
            let w = jy_eigenbasis(s.n_photons());
            adjoint(w.matrix()).dot(s.amplitudes())
        }
    }
}

/// Largest deviation of any component magnitude from 1/√(N+1) in the chosen
/// eigenbasis.
pub fn equipartition_deviation(s: &PureState, axis: Axis) -> f64 {
    let target = 1.0 / ((s.n_photons() + 1) as f64).sqrt();
    axis_components(s, axis)
        .iter()
        .map(|z| (z.norm() - target).abs())
        .fold(0.0, f64::max)
}

/// True when every component magnitude in the chosen eigenbasis is within
/// `tol` of 1/√(N+1). Magnitudes do not depend on the eigenvector gauge.
pub fn is_equipartition(s: &PureState, axis: Axis, tol: f64) -> bool {
    equipartition_deviation(s, axis) < tol
}

/// N+1 mutually orthonormal states generated by a single one-parameter
/// subgroup.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    n_photons: usize,
    states: Vec<PureState>,
    generator_axis: Axis,
    seed_description: String,
}

impl OrthonormalBasis {
    /// Validates shape and the Gram matrix (identity within
    /// [`GRAM_TOLERANCE`]).
    pub fn new(
        n_photons: usize,
        states: Vec<PureState>,
        generator_axis: Axis,
        seed_description: impl Into<String>,
    ) -> Result<Self> {
        let expected = n_photons + 1;
        if states.len() != expected {
            return Err(Error::LengthMismatch {
                n_photons,
                expected,
                got: states.len(),
            });
        }
        for s in &states {
            if s.n_photons() != n_photons {
                return Err(Error::ManifoldMismatch {
                    left: n_photons,
                    right: s.n_photons(),
                });
            }
        }
        let deviation = gram_deviation(&states)?;
        if deviation > GRAM_TOLERANCE {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self {
            n_photons,
            states,
            generator_axis,
            seed_description: seed_description.into(),
        })
    }

    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn generator_axis(&self) -> Axis {
        self.generator_axis
    }

    pub fn seed_description(&self) -> &str {
        &self.seed_description
    }

    /// Max |⟨i|j⟩ − δ_ij| over all pairs.
    pub fn gram_deviation(&self) -> f64 {
        gram_deviation(&self.states).expect("members share one manifold")
    }

    /// Angle step of the generating subgroup: 2π/(N+1).
    pub fn step(&self) -> f64 {
        2.0 * PI / (self.n_photons + 1) as f64
    }
}

fn gram_deviation(states: &[PureState]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b)? - expected).norm());
        }
    }
    Ok(worst)
}

/// Generate the complete basis {exp(−i·(2πk/(N+1))·G)|s⟩ : k = 0..N} with
/// G = Jz or Jy. Requires the seed to be equipartition on that axis; the
/// orthonormality of the result is then verified, not assumed.
pub fn cyclic_basis(s: &PureState, axis: Axis) -> Result<OrthonormalBasis> {
    let deviation = equipartition_deviation(s, axis);
    if deviation >= DEFAULT_EQUIPARTITION_TOLERANCE {
        return Err(Error::NotEquipartition { deviation });
    }
    let n = s.n_photons();
    let step = 2.0 * PI / (n + 1) as f64;
    let mut states = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let u = match axis {
            Axis::Z => phase_shift_unitary(n, step * k as f64),
            Axis::Y => rotation_unitary(n, step * k as f64),
        };
        states.push(apply_unitary(&u, s).expect("same manifold"));
    }
    OrthonormalBasis::new(
        n,
        states,
        axis,
        format!("cyclic {axis}-axis family, step 2*pi/{}", n + 1),
    )
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn assert_fixture(state: &PureState, expected: &[C64], what: &str) {
    let deviation = state.max_deviation(expected);
    assert!(
        deviation < 1e-10,
        "{what} drifted from its fixture by {deviation:e}; \
         a rotation or phase-shift sign convention regressed"
    );
}

/// The three-state two-photon basis generated by phase shifts alone.
///
/// Seed: Û(0, π/2 − arccos(1/√3), π/2) applied to (|0,2⟩+|2,0⟩)/√2, which
/// equals (i/√3)(1, −1, −1); members then follow at phase steps ±2π/3.
pub fn two_photon_phase_basis() -> OrthonormalBasis {
    let theta_z = FRAC_PI_2 - (1.0 / 3f64.sqrt()).acos();
    let u = euler_unitary(2, EulerAngles::new(0.0, theta_z, FRAC_PI_2));
    let seed = apply_unitary(&u, &psi_orbit_state(FRAC_PI_4)).expect("same manifold");
    let w = 1.0 / 3f64.sqrt();
    assert_fixture(
        &seed,
        &[c(0.0, w), c(0.0, -w), c(0.0, -w)],
        "the two-photon phase-shift seed",
    );
    let mut basis = cyclic_basis(&seed, Axis::Z).expect("fixture seed is equipartition");
    basis.seed_description = "xi1".into();
    basis
}

/// The three-state two-photon basis generated by geometric rotations alone.
///
/// Seed: the phase shift α_y = arctan(1/√2) − π/2 applied to
/// (|0,2⟩+|2,0⟩)/√2, which equals (1/√6)(1−i√2, 0, 1+i√2); members follow at
/// rotation steps of 2π/3 (±60° geometrically).
pub fn two_photon_rotation_basis() -> OrthonormalBasis {
    let alpha_y = (1.0 / 2f64.sqrt()).atan() - FRAC_PI_2;
    let seed = apply_unitary(
        &phase_shift_unitary(2, alpha_y),
        &psi_orbit_state(FRAC_PI_4),
    )
    .expect("same manifold");
    let r6 = 6f64.sqrt();
    let r2 = 2f64.sqrt();
    assert_fixture(
        &seed,
        &[c(1.0 / r6, -r2 / r6), c(0.0, 0.0), c(1.0 / r6, r2 / r6)],
        "the two-photon rotation seed",
    );
    let mut basis = cyclic_basis(&seed, Axis::Y).expect("fixture seed is equipartition");
    basis.seed_description = "psi1".into();
    basis
}

/// Equipartition states on the three-photon manifold.
///
/// Axis z: Û(0, θ_±, π/2)|seed⟩ with θ_± = arccos(±1/√3) — all four Fock
/// amplitudes end up with magnitude 1/2. Axis y: Û(β_y, π/2, 0)|seed⟩ with
/// β_y = arccos(−√(2/3)), equipartition among the Jy eigenvectors; the sign
/// choice plays no role there.
///
/// Every branch is checked against its hard-coded amplitude fixture, global
/// phase included.
pub fn three_photon_equipartition(
    seed: ThreePhotonSeed,
    sign: SignChoice,
    axis: Axis,
) -> PureState {
    let w = 1.0 / 2f64.sqrt();
    let amps = match seed {
        ThreePhotonSeed::Zeta1 => vec![c(w, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(w, 0.0)],
        ThreePhotonSeed::Zeta2 => vec![c(0.0, 0.0), c(w, 0.0), c(w, 0.0), c(0.0, 0.0)],
    };
    let start = PureState::new(3, amps, true).expect("seed amplitudes are fixed");
    let angles = match axis {
        Axis::Z => EulerAngles::new(0.0, (sign.value() / 3f64.sqrt()).acos(), FRAC_PI_2),
        Axis::Y => EulerAngles::new((-(2.0f64 / 3.0).sqrt()).acos(), FRAC_PI_2, 0.0),
    };
    let out = apply_unitary(&euler_unitary(3, angles), &start).expect("same manifold");
    let expected = three_photon_fixture(seed, sign, axis);
    assert_fixture(&out, &expected, "a three-photon equipartition state");
    out
}

fn three_photon_fixture(seed: ThreePhotonSeed, sign: SignChoice, axis: Axis) -> Vec<C64> {
    let acs = (1.0f64 / 3.0).acos();
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let i = C64::new(0.0, 1.0);
    match axis {
        Axis::Z => {
            let s = sign.value();
            match seed {
                ThreePhotonSeed::Zeta1 => {
                    let phase = i * s * C64::from_polar(0.5, s * 0.75 * acs);
                    [
                        c(1.0, 0.0),
                        (i - s * r2) / r3,
                        (c(1.0, 0.0) + i * s * r2) / r3,
                        i,
                    ]
                    .iter()
                    .map(|z| phase * z)
                    .collect()
                }
                ThreePhotonSeed::Zeta2 => {
                    let phase = C64::from_polar(0.5, s * 0.25 * acs);
                    [
                        c(1.0, 0.0),
                        (-i + s * r2) / r3,
                        (c(-1.0, 0.0) - i * s * r2) / r3,
                        i,
                    ]
                    .iter()
                    .map(|z| phase * z)
                    .collect()
                }
            }
        }
        Axis::Y => {
            let phase = -i * C64::from_polar(0.5, -0.75 * acs);
            match seed {
                ThreePhotonSeed::Zeta1 => [
                    c(1.0, 0.0),
                    c(0.0, 0.0),
                    (c(1.0, 0.0) + i * 2.0 * r2) / r3,
                    c(0.0, 0.0),
                ]
                .iter()
                .map(|z| phase * z)
                .collect(),
                ThreePhotonSeed::Zeta2 => [
                    c(r3, 0.0),
                    c(0.0, 0.0),
                    -(c(1.0, 0.0) + i * 2.0 * r2) / 3.0,
                    c(0.0, 0.0),
                ]
                .iter()
                .map(|z| phase * z)
                .collect(),
            }
        }
    }
}

/// Complete four-state basis from a three-photon equipartition seed: phase
/// steps kπ/2 on the z axis, rotation steps kπ/2 on the y axis.
pub fn three_photon_basis(seed: ThreePhotonSeed, axis: Axis) -> OrthonormalBasis {
    let start = three_photon_equipartition(seed, SignChoice::Plus, axis);
    let mut basis = cyclic_basis(&start, axis).expect("fixture seed is equipartition");
    basis.seed_description = seed.to_string();
    basis
}
