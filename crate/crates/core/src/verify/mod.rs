//! Independent checks of the structural claims: symmetry equations,
//! irreducibility, conjugation and equivalence, the spherical-function
//! specialization, and what breaks outside the parameter window.

pub mod commutant;
pub mod equivalence;
pub mod gegenbauer;
pub mod suite;
pub mod symmetry;
pub mod window;

pub use commutant::{commutant, commutant_of, CommutantReport, DEFAULT_DEPTH};
pub use equivalence::{conjugate, equivalence_params, four_parameter_operator, reduce_four_parameter};
pub use gegenbauer::{
    gegenbauer_eigenvalue, gegenbauer_ladder_check, gegenbauer_operator_check, gegenbauer_params,
    gegenbauer_weight, gegenbauer_weight_check, GegenbauerWeightReport,
};
pub use suite::{CheckResult, Location};
pub use symmetry::{check_symmetry, check_symmetry_with, SymmetryReport};
pub use window::{window_probe, ProbeCheck, ProbeFailure};
