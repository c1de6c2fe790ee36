//! Exact computations on numerical semigroups: exponent sequences of the
//! semigroup polynomial, factorizations and Betti elements, the order
//! `<=_S`, and complete intersections.

pub mod arith;
pub mod ci;
pub mod cyclotomic;
pub mod error;
pub mod factorization;
pub mod poly;
pub mod poset;
pub mod semigroup;
pub mod series;
pub mod union_find;
pub mod witt;

pub use ci::{gluing_decompose, is_complete_intersection, is_complete_intersection_with, k_polynomial, verify_ci_identities, GluingTree};
pub use cyclotomic::{cyclotomic_polynomial, factor_into_cyclotomics, is_cyclotomic, CyclotomicFactorization};
pub use error::{Error, Result};
pub use factorization::{
    betti_elements, denumerant, factorization_graph, factorizations, isolated_factorizations, minimal_presentation,
    restricted_factorizations, BettiCatalog, BettiEntry, Factorization, FactorizationGraph, MinimalPresentation,
};
pub use poly::Poly;
pub use poset::{
    classify, classify_with, e_set, leq, residual_coefficients, verify_theorems, AnalysisContext, CheckRecord, Classification, ESet,
    HasseDiagram, OrderedSubset,
};
pub use semigroup::{GeneratorSet, NumericalSemigroup};
pub use series::SeriesPrefix;
pub use witt::{exponent_sequence, power_sums, witt_expand_iterative, witt_expand_moebius, ExponentSequence};
