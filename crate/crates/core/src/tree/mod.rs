//! Tree schemas: finite terms for subsets of ℕ^{<ω}, the structural and
//! derivative classifiers of `I_wf` restrictions, and the compiler from
//! canonical forms.

mod branch;
mod classify;
mod derivative;
mod emit;
mod schema;
mod witness;

pub use branch::{dominating_branch, Branch};
pub use classify::{classify, in_id, in_wf, is_closed, scaffold, TreeClass};
pub use derivative::{classify_via_derivative, delta, tree_rank};
pub use emit::{to_dot, to_json};
pub use schema::{compile, compile_form, DiagKind, PathStep, SchemaSeq, Seq, TreeSchema};
pub use witness::{core_children, EmbeddingWitness};
