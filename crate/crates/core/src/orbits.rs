//! SU(2) orbit classification of N-photon states.
//!
//! Two states are on the same orbit when some Û(β,θ,α) maps one onto the
//! other (up to phase). Orbits containing a Fock state |n,N−n⟩ have a
//! continuous stability group; since n and N−n label the same orbit (a π
//! rotation exchanges them), there are only ⌊N/2⌋+1 of those. Everything
//! else admits at most discrete symmetries and is classified here by
//! exclusion: an orbit is "type 2" when no Fock state is reachable within
//! optimizer tolerance.

use crate::error::Result;
use crate::manifold::PureState;
use crate::optim::{minimize_overlap, OverlapObjective};
use crate::polarization::OptimizerOptions;
use crate::su2::EulerAngles;
use num_complex::Complex64 as C64;

/// Best fidelity to a Fock state must exceed 1 − this to call an orbit
/// type 1.
pub const TYPE1_FIDELITY_MARGIN: f64 = 1e-8;

/// Classification outcome. The witness records where the best Fock-state
/// fidelity was found, so a type-2 call can be judged by its residual.
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitClass {
    /// The orbit of |label_n, N−label_n⟩, label_n ≤ ⌊N/2⌋.
    Type1 {
        label_n: usize,
        witness_fidelity: f64,
        witness_angles: EulerAngles,
    },
    /// No Fock state reachable within tolerance; only discrete symmetries.
    Type2 {
        witness_fidelity: f64,
        witness_angles: EulerAngles,
    },
}

impl OrbitClass {
    pub fn kind(&self) -> &'static str {
        match self {
            OrbitClass::Type1 { .. } => "Type1",
            OrbitClass::Type2 { .. } => "Type2",
        }
    }

    pub fn label_n(&self) -> Option<usize> {
        match self {
            OrbitClass::Type1 { label_n, .. } => Some(*label_n),
            OrbitClass::Type2 { .. } => None,
        }
    }

    pub fn witness_fidelity(&self) -> f64 {
        match self {
            OrbitClass::Type1 {
                witness_fidelity, ..
            }
            | OrbitClass::Type2 {
                witness_fidelity, ..
            } => *witness_fidelity,
        }
    }

    pub fn witness_angles(&self) -> EulerAngles {
        match self {
            OrbitClass::Type1 { witness_angles, .. } | OrbitClass::Type2 { witness_angles, .. } => {
                *witness_angles
            }
        }
    }
}

/// The two-photon orbit representative sin ϑ|0,2⟩ + cos ϑ|2,0⟩.
///
/// ϑ ∈ [0, π/4] covers every two-photon orbit exactly once: ϑ = 0 is the
/// Fock state |2,0⟩ and ϑ = π/4 the balanced superposition (on the orbit of
/// |1,1⟩). Values outside the canonical range are accepted as-is.
pub fn psi_orbit_state(vartheta: f64) -> PureState {
    PureState::new(
        2,
        vec![
            C64::new(vartheta.sin(), 0.0),
            C64::new(0.0, 0.0),
            C64::new(vartheta.cos(), 0.0),
        ],
        true,
    )
    .expect("family amplitudes are never the zero vector")
}

/// Decide which orbit a state lies on.
///
/// For each label n = 0..⌊N/2⌋ in ascending order, the overlap
/// |⟨n,N−n|Û|s⟩|² is maximized with the same grid-plus-simplex search used
/// for the polarization degree; the first label whose best fidelity exceeds
/// 1 − 1e−8 wins (so numerically coincident labels resolve to the smallest
/// n). If none qualifies the state is reported type 2 together with the best
/// witness encountered.
pub fn classify_orbit(s: &PureState, opts: &OptimizerOptions) -> Result<OrbitClass> {
    opts.validate()?;
    let n = s.n_photons();
    let mut best: Option<(f64, EulerAngles)> = None;
    for label in 0..=n / 2 {
        let target = PureState::fock(n, label).expect("label lies in the manifold");
        let obj = OverlapObjective::new(n, target.amplitudes(), s.amplitudes());
        let angles = minimize_overlap(&obj, |v| 1.0 - v, opts).canonicalized();
        let fidelity = obj
            .overlap([angles.beta, angles.theta, angles.alpha])
            .norm_sqr();
        if fidelity > 1.0 - TYPE1_FIDELITY_MARGIN {
            return Ok(OrbitClass::Type1 {
                label_n: label,
                witness_fidelity: fidelity,
                witness_angles: angles,
            });
        }
        let improves = best.map(|(f, _)| fidelity > f).unwrap_or(true);
        if improves {
            best = Some((fidelity, angles));
        }
    }
    let (witness_fidelity, witness_angles) =
        best.expect("at least the n = 0 label is always searched");
    Ok(OrbitClass::Type2 {
        witness_fidelity,
        witness_angles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{apply_unitary, random_state};
    use crate::su2::{euler_unitary, transition_unitary_two_photon};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn family_endpoints_are_the_expected_states() {
        let at_zero = psi_orbit_state(0.0);
        assert_eq!(at_zero.amplitudes()[2], C64::new(1.0, 0.0));
        assert_eq!(at_zero.amplitudes()[0], C64::new(0.0, 0.0));

        let balanced = psi_orbit_state(FRAC_PI_4);
        let w = 1.0 / 2f64.sqrt();
        assert!((balanced.amplitudes()[0].re - w).abs() < 1e-15);
        assert!((balanced.amplitudes()[2].re - w).abs() < 1e-15);
        assert_eq!(balanced.amplitudes()[1], C64::new(0.0, 0.0));

        let interior = psi_orbit_state(PI / 8.0);
        assert!((interior.amplitudes()[0].re - (PI / 8.0).sin()).abs() < 1e-15);
        assert!((interior.amplitudes()[2].re - (PI / 8.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn family_states_come_from_the_transition_operator() {
        let start = PureState::fock(2, 2).unwrap();
        for k in 0..10 {
            let vt = 0.17 * k as f64;
            let u = transition_unitary_two_photon(vt);
            let moved = apply_unitary(&u, &start).unwrap();
            assert!(
                moved.max_deviation(psi_orbit_state(vt).amplitudes().as_slice().unwrap()) < 1e-12
            );
        }
    }

    #[test]
    fn fock_states_classify_as_type1_with_reflected_labels() {
        let opts = OptimizerOptions::default();
        for n in 0..=4usize {
            for k in 0..=n {
                let class = classify_orbit(&PureState::fock(n, k).unwrap(), &opts).unwrap();
                assert_eq!(class.kind(), "Type1", "n={n}, k={k}");
                assert_eq!(class.label_n(), Some(k.min(n - k)), "n={n}, k={k}");
                assert!(class.witness_fidelity() > 1.0 - 1e-10);
            }
        }
    }

    #[test]
    fn balanced_family_state_reaches_the_middle_fock_state() {
        let class =
            classify_orbit(&psi_orbit_state(FRAC_PI_4), &OptimizerOptions::default()).unwrap();
        assert_eq!(class.kind(), "Type1");
        assert_eq!(class.label_n(), Some(1));
    }

    #[test]
    fn interior_family_state_is_type2_with_the_known_witness() {
        let class =
            classify_orbit(&psi_orbit_state(PI / 8.0), &OptimizerOptions::default()).unwrap();
        assert_eq!(class.kind(), "Type2");
        assert_eq!(class.label_n(), None);
        // max fidelity to either Fock orbit is (2+√2)/4
        let expected = (2.0 + 2f64.sqrt()) / 4.0;
        assert!(
            (class.witness_fidelity() - expected).abs() < 1e-6,
            "witness={}",
            class.witness_fidelity()
        );
    }

    #[test]
    fn classification_is_invariant_under_pre_transformation() {
        let opts = OptimizerOptions::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let subjects = [
            PureState::fock(3, 1).unwrap(),
            psi_orbit_state(FRAC_PI_4),
            psi_orbit_state(PI / 8.0),
        ];
        for s in &subjects {
            let base = classify_orbit(s, &opts).unwrap();
            let g = EulerAngles::new(
                2.0 * PI * rng.random::<f64>(),
                PI * rng.random::<f64>(),
                2.0 * PI * rng.random::<f64>(),
            );
            let moved = apply_unitary(&euler_unitary(s.n_photons(), g), s).unwrap();
            let class = classify_orbit(&moved, &opts).unwrap();
            assert_eq!(class.kind(), base.kind());
            assert_eq!(class.label_n(), base.label_n());
            assert!((class.witness_fidelity() - base.witness_fidelity()).abs() < 1e-6);
        }
    }

    #[test]
    fn random_states_report_a_witness_in_range() {
        let opts = OptimizerOptions::default();
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let s = random_state(3, &mut rng);
        let class = classify_orbit(&s, &opts).unwrap();
        let f = class.witness_fidelity();
        assert!((0.0..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn vacuum_is_trivially_type1() {
        let s = PureState::fock(0, 0).unwrap();
        let class = classify_orbit(&s, &OptimizerOptions::default()).unwrap();
        assert_eq!(class.label_n(), Some(0));
        assert!(class.witness_fidelity() > 1.0 - 1e-12);
    }
}
