//! Experiment specs, presets and the grid runner.

pub mod lower_bound;
pub mod presets;
pub mod runner;
pub mod spec;
pub mod summary;

pub use lower_bound::{lower_bound_demo, LowerBoundReport};
pub use presets::{preset, PRESET_NAMES};
pub use runner::{run_experiment, ExperimentResult, PartitionRecord, Records};
pub use spec::{Cell, ExperimentKind, ExperimentSpec, GraphKind, QValue};
