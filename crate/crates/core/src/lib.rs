//! Discreteness classification for two-generator Kleinian groups ⟨f,g⟩
//! with real parameters (β, β′, γ), f primitive elliptic and g hyperbolic
//! with coplanar axes.
//!
//! For each discrete group the library produces its presentation, an
//! orbifold descriptor (a labelled singular graph in a named ambient
//! space) and a matrix-level numerical certificate.
//!
//! Modules follow the pipeline: [`algebra`] handles Möbius arithmetic and
//! the parameter triple, [`indices`] the extended indices and the t(u)
//! encoding, [`classifier`] the family matching, [`presentations`] and
//! [`orbifolds`] the group-theoretic and topological output, [`geometry`]
//! the tetrahedron Gram matrices, and [`verify`] the numerical
//! certification of everything on realized matrices.

pub mod algebra;
pub mod classifier;
pub mod config;
pub mod geometry;
pub mod indices;
pub mod orbifolds;
pub mod presentations;
pub mod report;
pub mod verify;

pub use algebra::{
    axis_regime, classify_element, normalize_primitive, params_of_pair, ElementClass,
    MoebiusElement, ParameterTriple, Regime,
};
pub use classifier::{
    classify, classify_disjoint, classify_intersecting, default_spec, enumerate_family,
    EnumerationSpec, Family, FamilyMatch, IndexChoice, Verdict, ALL_FAMILIES,
};
pub use config::{Config, P11Convention};
pub use indices::{match_cosh2, t_of, ExtIndex, Parity, UPoint};
pub use presentations::{
    generator_words, presentation_of, Form, GeneratorWordTable, PresentationInstance, Schema,
};
pub use verify::{certify_geometry, certify_presentation, realize, sqrt_commutator, Certificate};
