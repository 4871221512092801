//! Growth of tensor powers in based algebras with nonnegative structure constants.
//!
//! A problem is a fusion graph presented by a neighbor oracle ([`algebra::FusionRule`]) and
//! expanded lazily. On top of it sit exact summand counts and return series ([`series`]),
//! eigenanalysis of finite cutoffs ([`spectral`]) and asymptotic models ([`asymptotics`]).

pub mod algebra;
pub mod asymptotics;
pub mod error;
pub mod families;
pub mod interchange;
pub mod series;
pub mod spectral;
pub mod weight;

pub use algebra::{
    expand_to_depth, truncation_matrix, FusionRule, GrowthOptions, GrowthProblem, SparseMatrix, Strategy, Truncation,
    VertexKey, WeightedEdge,
};
pub use error::{Error, Result};
pub use families::{build_family, load_explicit, FamilySpec};
pub use weight::ScalarWeight;
