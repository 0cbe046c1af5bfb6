//! Markov measures on `Σ_A`, the induced product measure `P_μ` on the
//! multiplicative shift, the entropy series `s(μ)` and its maximization.

mod entropy;
mod measure;
mod optimize;
mod sample;
mod telescoping;

pub use entropy::{
    binary_entropy, entropy_tail_bound, maximize_closed_form_golden, partition_entropies,
    partition_entropy, partition_entropy_capped, s_mu, s_mu_closed_form_golden, s_mu_to_depth,
    shannon_entropy, EntropySeries,
};
pub use measure::{
    cylinder_measure_multiplicative, cylinder_measure_sigma, log2_cylinder_measure_multiplicative,
    log2_cylinder_measure_sigma, MarkovMeasure,
};
pub use optimize::{
    optimize_markov, optimize_markov_with_starts, OptimizedMeasure, DEFAULT_STARTS,
};
pub use sample::{
    expected_local_dimension, local_dimension_stats, sample_sequence, seeded_rng, SampleBatch,
    Sampler,
};
pub use telescoping::{dyadic_local_dims, telescoping_average, telescoping_identity, IDENTITY_TOL};
