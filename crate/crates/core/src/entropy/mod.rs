//! Entropy functions of finite random vectors.

mod distribution;
mod families;
mod io;

pub use distribution::{
    entropy_function, kappa, EntropyKernel, JointDistribution, MASS_TOL, MAX_CELLS, ZERO_PROB,
};
pub use families::{
    exl_closed_form, exl_distribution, four_atom_distribution, four_atom_score, ExLParams,
    FourAtomParams, EXL_COLUMNS, EXL_TABLE,
};
pub use io::{
    distribution_from_json, distribution_to_json, read_distribution, read_distribution_csv,
    write_distribution_csv,
};
