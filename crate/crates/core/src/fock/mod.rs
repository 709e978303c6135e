//! Fock-space amplitudes of the stimulated down-conversion source, the 50/50
//! beam splitter acting on fixed-photon-number sectors, and NOON fidelities.

mod amplitudes;
mod beam_splitter;
mod component;
mod displacement;
mod fidelity;
mod oracle;
mod params;

pub use amplitudes::{displaced_tmsv_component, tmsv_coefficient};
pub use beam_splitter::{
    bs_inverse_transform, bs_transform, BeamSplitter, BsConvention, SectorUnitary,
};
pub use component::PhotonComponent;
pub use displacement::{displacement_matrix, displacement_matrix_element};
pub use fidelity::{noon_fidelity, noon_fidelity_at_phase, FidelityResult};
pub use oracle::{
    oracle_cutoff, truncated_state_oracle, TwoModeTable, ORACLE_MISSING_WEIGHT_TOLERANCE,
};
pub use params::{PairAmplitudeRatio, Regime, SourceParams};
