//! Exact self-avoiding walk enumeration on lattice patches and the
//! generating-function relations satisfied under gadget substitution.
//!
//! The pieces:
//!
//! * [`graph`]: finite patches with boundary depth and 2-colourings;
//! * [`lattice`]: patches of cubic Archimedean lattices by type-vector;
//! * [`gadget`]: three-port gadgets, validation, standard families;
//! * [`poly`]: exact integer polynomials and a monotone root solver;
//! * [`enumerate`]: the parallel walk counter;
//! * [`transform`]: gadget substitution on patches;
//! * [`relations`]: connective-constant predictions and identity checks.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod gadget;
pub mod graph;
pub mod lattice;
pub mod poly;
pub mod relations;
pub mod transform;

pub use enumerate::{
    count_midedge_saws, count_saws_from_vertex, endpoint_moments, gadget_genfun,
    gadget_genfun_between, origin_edges, two_terminal_series, EdgeSteps, EndFilter, MidEdgeQuery,
    SawSeries, VertexQuery, VerticesVisited,
};
pub use error::{Error, Result};
pub use gadget::{
    automorphisms, complete_gadget, compose_gadgets, cycle_graph, fisher, generalized_fisher,
    kn_genfun_closed_form, path_graph, validate_gadget, Gadget, ValidationReport,
};
pub use graph::{build_patch, Colour, Depth, EdgeId, FinitePatch, MidEdgeWalk, VertexId};
pub use lattice::{classify, generate_lattice, FaceSize, Geometry, TypeVector};
pub use poly::{monotone_solve, CountPolynomial, DEFAULT_TOL};
pub use relations::{
    compose_chain, estimate_mu_from_series, fixed_point, iterate_mu, predict_mu_bipartite,
    predict_mu_transformed, verify_bipartite_substitution, verify_substitution, MuValue,
    Provenance, SeriesEstimate, VerificationReport, VerifyOptions,
};
pub use transform::{
    count_colour_refined, transform_all, transform_colour_class, ColourRefinedSeries,
    TransformedPatch,
};
