//! Geometric quantum coherence of single-mode Gaussian states.
//!
//! Coherence is one minus the largest root fidelity (Bures) or root affinity
//! (Hellinger) between a state and the thermal states, which are the only
//! incoherent single-mode Gaussian states. The closed-form metrics are
//! cross-checked against a truncated Fock-space oracle in [`fock`].
//!
//! ```
//! use gausscoh::{coherence, cts, ComplexAmplitude, Measure, OptimizerOptions};
//!
//! let state = cts(ComplexAmplitude::real(1.0), 0.0).unwrap();
//! let c = coherence(&state, Measure::Bures, &OptimizerOptions::default()).unwrap();
//! assert!((c.value - (1.0 - (-0.5f64).exp())).abs() < 1e-9);
//! ```

pub mod coherence;
pub mod error;
pub mod family;
pub mod fock;
mod golden;
pub mod metrics;
pub mod state;

pub use coherence::{
    asymptote, coherence, maximize_over_thermal, objective, threshold_search, Asymptote,
    CoherenceResult, Measure, OptimizerOptions, Threshold, DEFAULT_LADDER,
};
pub use error::{Error, Result};
pub use family::{Family, FamilyParams, Param};
pub use metrics::{
    affinity, bures_distance_sq, fidelity, fidelity_ingredients, hellinger_distance_sq,
    FidelityIngredients,
};
pub use state::{
    cts, from_params, is_incoherent, is_physical, sts, thermal_state, tss, ComplexAmplitude,
    CovarianceMatrix, GaussianState, PhaseSpaceVector, StateParams, SymplecticForm,
};
