//! Exact-arithmetic toolkit for discrete hypergroups.
//!
//! * [`hypercore`]: elements, measures, finitely supported functions,
//!   convolution, translation, Haar weights and axiom verification.
//! * [`catalog`]: duals of SU(2) and SU(3), multivariable Chebyshev
//!   hypergroups, conjugacy-class hypergroups of finite groups, products,
//!   and structure-constant cache files.
//! * [`amenability`]: Leptin, Følner and strong-Følner ratios, searches,
//!   summing sequences, Reiter deficiencies, approximate-identity
//!   certificates and the Haar level-set diagnostic.
//! * [`growth`]: generator balls, growth series, SU(3) closed forms and
//!   bounds, D-Leptin estimates and product combinations.

pub mod amenability;
pub mod catalog;
mod error;
pub mod growth;
pub mod hypercore;
pub mod rational;

pub use error::{CacheError, Error, Result};
pub use hypercore::{Element, FiniteFunction, FusionRule, Hypergroup, Measure, Payload};
pub use rational::Rational;
