//! Combinatorics of toric origami manifolds in exact arithmetic.
//!
//! The pieces, bottom up:
//!
//! * [`lattice`] — integer vectors and matrices, determinants, Smith and
//!   Hermite normal forms, quotient groups of sublattices.
//! * [`multifan`] — simplicial multi-fans with weighted chambers: degree,
//!   completeness, projection, diamond, blow-up, connected sum, merge.
//! * [`polytope`] — Delzant polytopes in H-representation, their normal
//!   fans, corner chops and products.
//! * [`template`] — origami templates: fold axioms, the template graph, the
//!   multi-fan of a template, template-level surgery.
//! * [`invariants`] — `N_Δ`, `N/N_Δ` and fundamental-group reports.
//! * [`realize2d`] — unimodular sequences in `Z²` and their realization as
//!   origami templates.
//! * [`io`] — the versioned JSON documents used by the command-line tool.
//!
//! All arithmetic is exact: lattice data uses arbitrary-precision integers,
//! polytope offsets and vertices use exact rationals.

pub mod error;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod multifan;
pub mod polytope;
pub mod realize2d;
pub mod report;
pub mod template;

pub use malachite::{Integer, Natural, Rational};

pub use error::{Error, Result};
pub use invariants::{n_delta, pi1_report, NDelta, Pi1Report};
pub use lattice::{AbelianGroupSNF, IntegerMatrix, LatticeVector, SmithForm};
pub use multifan::{DegreeMethod, DegreeOptions, DegreeReport, GenericVector, MultiFan, WeightedChamber};
pub use polytope::{DelzantPolytope, DelzantReport, Facet, Orientation};
pub use realize2d::{RealizationCertificate, TraceStep, UnimodularSequence};
pub use report::{ValidationReport, Violation};
pub use template::{
    Classification, FacetRef, FoldEntry, OrigamiTemplate, TemplateGraph, TemplatePiece, VertexRef,
};
