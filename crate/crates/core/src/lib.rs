//! Canonical forms for the ideals generated from `FIN` by countable direct
//! sums and orthogonals, their realization as restrictions of the ideal of
//! well-founded trees, and the classification of such restrictions.
//!
//! The modules build on each other: [`ordinal`] gives ranks, [`ideal`]
//! normalizes expressions, [`tree`] compiles and classifies schemas,
//! [`membership`] decides queries against compiled carriers, [`scattered`]
//! handles the ideal of well-ordered subsets of ℚ, and [`oracle`] holds the
//! brute-force checks used by the tests.

pub mod error;
pub mod ideal;
pub mod membership;
pub mod oracle;
pub mod ordinal;
pub mod par;
pub mod scattered;
pub mod syntax;
pub mod tree;

pub use error::{Error, ParseError, Result};
pub use ideal::{b_rank, iso_check, normalize, perp_c, CanonicalForm, FormKind, IdealExpr};
pub use ordinal::Ordinal;
pub use par::Execution;
