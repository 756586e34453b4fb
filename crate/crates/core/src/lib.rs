//! Symbolic engine for inverse semigroup actions, expansion schemes and the
//! descending-link complexes used to certify finiteness properties of
//! generalized Thompson groups.

pub mod complex_topology;
pub mod core_action;
pub mod expansion_scheme;
pub mod finiteness_engine;
pub mod gamma_group;
pub mod pseudovertex;
pub mod report;
pub mod s_structure;
pub mod sampling;
pub mod semigroups;
