//! Regular operators on discrete ℓᵖ, positive Ritt_E ensembles and the
//! contractively regular experiment.

mod ensemble;
mod experiment;
mod regular;

pub use ensemble::{ensemble_phased, ensemble_positive_ritt, is_contractively_regular, permute, EnsembleConfig, PositiveSample};
pub use experiment::{
    regular_experiment, DegreeSeries, SampleRecord, StolzRecord, RegularExperimentConfig, RegularExperimentReport, STABILITY_TOL,
};
pub use regular::{
    regular_norm, semigroup_regular_check, RegularOperator, SemigroupEntry, SemigroupReport, CONTRACTIVE_TOL,
    DEFAULT_T_GRID, SEMIGROUP_TOL,
};
