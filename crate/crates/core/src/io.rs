//! JSON documents for states and bases.
//!
//! A state file is {"n_photons": N, "amplitudes": [[re, im], …]} with the
//! amplitudes in Fock order |0,N⟩ … |N,0⟩. Amplitudes already within the
//! internal norm tolerance are kept bit-for-bit, so write → read → write
//! round-trips byte-identically.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bases::OrthonormalBasis;
use crate::error::{Error, Result};
use crate::manifold::PureState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n_photons: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(s: &PureState) -> Self {
        Self {
            n_photons: s.n_photons(),
            amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Validate into a [`PureState`]; `normalize` rescaling semantics follow
    /// [`PureState::new`].
    pub fn into_state(self, normalize: bool) -> Result<PureState> {
        let amps = self
            .amplitudes
            .iter()
            .map(|[re, im]| C64::new(*re, *im))
            .collect();
        PureState::new(self.n_photons, amps, normalize)
    }
}

pub fn state_to_json(s: &PureState) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(s)).expect("state serializes")
}

pub fn state_from_json(text: &str, normalize: bool) -> Result<PureState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_state(normalize)
}

/// Basis export: the member states plus {axis, seed, step} metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisFile {
    pub n_photons: usize,
    pub axis: String,
    pub seed: String,
    pub step: f64,
    pub states: Vec<StateFile>,
}

impl BasisFile {
    pub fn from_basis(b: &OrthonormalBasis) -> Self {
        Self {
            n_photons: b.n_photons(),
            axis: b.generator_axis().to_string(),
            seed: b.seed_description().to_string(),
            step: b.step(),
            states: b.states().iter().map(StateFile::from_state).collect(),
        }
    }
}

pub fn basis_to_json(b: &OrthonormalBasis) -> String {
    serde_json::to_string_pretty(&BasisFile::from_basis(b)).expect("basis serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::two_photon_phase_basis;

    #[test]
    fn state_round_trip_is_byte_stable() {
        let s = PureState::new(1, vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)], false).unwrap();
        let first = state_to_json(&s);
        let back = state_from_json(&first, true).unwrap();
        let second = state_to_json(&back);
        assert_eq!(first, second);
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        assert!(matches!(
            state_from_json("{not json", true),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            state_from_json("{\"n_photons\": 1}", true),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn validation_errors_pass_through() {
        let text = r#"{"n_photons": 3, "amplitudes": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}"#;
        assert!(matches!(
            state_from_json(text, true),
            Err(Error::LengthMismatch {
                n_photons: 3,
                expected: 4,
                got: 3
            })
        ));
        let unnormalized = r#"{"n_photons": 0, "amplitudes": [[2.0, 0.0]]}"#;
        assert!(matches!(
            state_from_json(unnormalized, false),
            Err(Error::NotNormalized { .. })
        ));
        assert!(state_from_json(unnormalized, true).is_ok());
    }

    #[test]
    fn basis_export_carries_metadata_and_members() {
        let basis = two_photon_phase_basis();
        let file = BasisFile::from_basis(&basis);
        assert_eq!(file.n_photons, 2);
        assert_eq!(file.axis, "z");
        assert_eq!(file.seed, "xi1");
        assert!((file.step - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-15);
        assert_eq!(file.states.len(), 3);
        let text = basis_to_json(&basis);
        let parsed: BasisFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, file);
    }
}
