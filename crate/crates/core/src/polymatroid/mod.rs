//! Set functions on small labeled ground sets and the polymatroid algebra
//! built on them.

mod axioms;
mod convolution;
mod decomposition;
mod extension;
mod generators;
mod ground;
pub mod random;
mod set_function;

pub use axioms::{
    check_axioms, closure_of, is_modular, is_polymatroid, is_tight, AxiomReport, Witness,
    TOL_ENTROPIC, TOL_EXACT,
};
pub use convolution::{convolution, convolve_modular_iterative};
pub use decomposition::{modular_part, modular_weights, tight_part};
pub use extension::{
    contraction, parallel_extension, pe_contract, pe_contract_by_closure, principal_extension,
    principal_shift_bound,
};
pub use generators::{matroid_rank, modular_from};
pub use ground::{bits, submasks, GroundSet, Subset, MAX_GROUND};
pub use set_function::SetFunction;
