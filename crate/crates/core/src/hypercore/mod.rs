//! Core data model: elements, measures, functions, the hypergroup handle with
//! its convolution/translation/Haar operations, and axiom verification.

mod axioms;
mod element;
mod hypergroup;
mod measure;
mod scaled;

pub use axioms::{verify_axioms, Axiom, AxiomOutcome, AxiomReport};
pub use element::{Element, HypergroupId, Payload};
pub use hypergroup::{FusionRule, Hypergroup};
pub(crate) use hypergroup::parse_tuple;
pub use measure::{FiniteFunction, Measure};
