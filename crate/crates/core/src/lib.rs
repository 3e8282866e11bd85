//! Asynchronous lp-energy minimization and Lipschitz learning dynamics on
//! finite connected graphs.
//!
//! A selected vertex replaces its opinion by the minimizer of the p-th-power
//! sum of gaps to its neighbours (the midrange of the extreme neighbours at
//! p = infinity), optionally with a boundary whose values never move. The
//! crate provides the update kernels, schedules and run engine, the exact
//! infinity-harmonic extension, the fragmentation dual oracle, rate
//! predictions, and the experiment harness behind the `lpdyn` CLI.

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod extension;
pub mod fragmentation;
pub mod generators;
pub mod graph;
pub mod io;
pub mod order_index;
pub mod presets;
pub mod profile;
pub mod rates;
pub mod schedule;
pub mod update;
pub mod verify;

pub use dynamics::{
    cover_count_for, modulus_bound, run, run_ensemble, EnsembleSummary, RunConfig, RunRecord,
    Sample, StopMode, Stopping,
};
pub use error::{Error, Result};
pub use extension::{extend, extend_with, verify_extension, ExtensionResult, TieBreak};
pub use fragmentation::{duality_check, fragment_step, mass_escape_bound, LineMass, MassMeasure};
pub use generators::GraphFamilySpec;
pub use graph::Graph;
pub use presets::{preset_profile, upper_envelope, Preset};
pub use profile::{
    energy, energy_delta_at, lex_potential, lp_distance, oscillation, Norm, Profile,
};
pub use rates::{predict, RatePrediction};
pub use schedule::{cover_times, Schedule};
pub use update::{
    infinity_laplacian, infinity_laplacian_l1, is_p_superharmonic_at, psi_derivative,
    update_value, PValue, SolverConfig,
};
