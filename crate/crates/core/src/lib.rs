//! Finite higher-dimensional transition systems.
//!
//! A system has states, actions labelled by a label alphabet, and
//! n-transitions `(α, u1 .. un, β)`. The library checks the usual axioms
//! (multiset, patching, all actions used, intermediate state, CSA1, CSA2),
//! closes and reflects systems into the Cattani-Sassone class, computes
//! colimits, cylinders and path objects, and decides past-similarity,
//! fibrancy, weak equivalence and bisimilarity for small systems.

pub mod axioms;
pub mod bisim;
pub mod builders;
pub mod closure;
pub mod colimits;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod hom;
pub mod homotopy;
pub mod partition;
pub mod reflections;
pub mod similarity;
pub mod star;
pub mod system;
pub mod text;

pub use axioms::{classify, Classification, SystemClass};
pub use builders::Word;
pub use error::{Error, Result};
pub use partition::Partition;
pub use star::{PointedMap, PointedTs};
pub use system::{ActionId, Label, StateId, Transition, TransitionSystem, TsMap};
