//! Completion, reduction candidates, the non-perfectness witness and named
//! bodies.

mod completion;
mod eggleston;
pub mod generate;
mod perfect;

pub use completion::{completion, reduction_candidate, Completion, Reduction, DEFAULT_MAX_ITER};
pub use eggleston::{
    eggleston_witness, facet_pair, facet_pair_scan, simplicity_check_3d, FacetPair, NonPerfectWitness, SimplicityReport,
};
pub use generate::{generate, GeneratorKind, GENERATOR_VERSION};
pub use perfect::{perfect_probe, perfect_probe_with, PerfectStatus, PerfectVerdict};
