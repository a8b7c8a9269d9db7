//! Inverse semigroups: inversive categories, inversive cones and inductive
//! groupoids.

pub mod groupoid;
pub mod inversive;

pub use groupoid::{
    category_to_groupoid, find_groupoid_isomorphism, groupoid_to_category, inductive_groupoid_of,
    is_groupoid_isomorphism, round_trip, InductiveGroupoid, RoundTrip,
};
pub use inversive::{
    classify_inversive, core_and_inversive_factorisation, homomorphism_functoriality, induced_functor,
    inversive_cone_semigroup, inversive_cone_semigroup_of, is_inversive_cone, retraction_closure_check, rho_iso_check,
    CoreReport, FunctorialityReport, InversiveReport, InversiveSemigroup, RhoIsoReport,
};
