//! Polarization analysis for two-mode N-photon quantum states.

pub mod bases;
pub mod error;
pub mod io;
pub mod manifold;
mod optim;
pub mod orbits;
pub mod polarization;
pub mod su2;
pub mod verify;

pub use bases::{cyclic_basis, is_equipartition, Axis, OrthonormalBasis};
pub use error::{Error, Result};
pub use io::{state_from_json, state_to_json, BasisFile, StateFile};
pub use manifold::{apply_unitary, conjugate_mixed, MixedState, PureState};
pub use orbits::{classify_orbit, psi_orbit_state, OrbitClass};
pub use polarization::{
    degree_of_polarization, is_unpolarized, orthogonalize, OptimizerOptions, PolarizationResult,
};
pub use su2::{EulerAngles, UnitaryMatrix};
