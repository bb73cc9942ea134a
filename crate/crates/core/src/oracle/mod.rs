//! Independent reference computations: brute-force enumeration, an explicit
//! derivative on a finite quotient, witness checkers, seeded generators and
//! the law suite that ties them together.

mod check;
mod derivative;
mod enumerate;
pub mod gen;
mod laws;

pub use check::{check_branch, check_embedding, check_frechet, check_id_witness};
pub use derivative::explicit_derivative;
pub use enumerate::{enumerate_query, enumerate_schema, Budget};
pub use laws::{law_names, law_suite, LawReport};
