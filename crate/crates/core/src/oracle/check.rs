//! Independent checks of witnesses against budget enumerations.

use std::collections::HashSet;

use crate::ideal::IdealExpr;
use crate::membership::{q_in_id, schema_subset, subset_of, Containment, IdWitness, QueryTerm};
use crate::tree::{compile, Branch, EmbeddingWitness, Seq, TreeSchema};

use super::{enumerate_query, enumerate_schema, Budget};

/// Every enumerated element of `q` is dominated by `branch`.
pub fn check_branch(branch: &Branch, q: &QueryTerm, b: &Budget) -> bool {
    enumerate_query(q, b).iter().all(|e| branch.dominates(e))
}

pub fn check_id_witness(w: &IdWitness, q: &QueryTerm, b: &Budget) -> bool {
    match w {
        IdWitness::DominatingBranch(branch) => check_branch(branch, q, b),
        IdWitness::UnboundedFamily(family) => {
            let mut last = None;
            family.iter().take(b.count).all(|e| {
                let m = e.max_entry().unwrap_or(0);
                let ok = q.contains(&e) && last.is_none_or(|p| m > p);
                last = Some(m);
                ok
            })
        }
    }
}

/// `w` is an infinite subset of `q` inside the compiled target, and is
/// dominated by a branch, hence orthogonal to the ideal.
pub fn check_frechet(w: &QueryTerm, q: &QueryTerm, target: &IdealExpr, b: &Budget) -> bool {
    let Ok(carrier) = compile(target) else {
        return false;
    };
    if subset_of(w, &carrier) != Containment::Yes {
        return false;
    }
    let inside_q = match (w.as_schema(), q.as_schema()) {
        (Some(ws), Some(qs)) => schema_subset(&ws, &qs) == Containment::Yes,
        _ => enumerate_query(w, b).iter().all(|e| q.contains(e)),
    };
    if !inside_q || !w.is_infinite() {
        return false;
    }
    // Budgets are measured from the witness's least element: compiled
    // carriers of high rank hold nothing at small depths at all.
    let base = w.as_schema().and_then(|t| t.least()).map_or(0, |l| l.len());
    let near = Budget::new(base + b.depth / 2, b.width, b.count);
    let far = Budget::new(base + b.depth, b.width, b.count);
    let shallow = enumerate_query(w, &near);
    let deep = enumerate_query(w, &far);
    if deep.is_empty() || (deep.len() <= shallow.len() && deep.len() < b.count) {
        return false;
    }
    q_in_id(w)
        && match crate::membership::id_witness(w) {
            IdWitness::DominatingBranch(branch) => check_branch(&branch, w, &far),
            IdWitness::UnboundedFamily(_) => false,
        }
}

/// Injectivity on the enumerated domain, images inside the target, and
/// preservation of comparability in both directions on every pair.
pub fn check_embedding(w: &EmbeddingWitness, t: &TreeSchema, b: &Budget) -> bool {
    let domain = enumerate_schema(&TreeSchema::Full, b);
    let images: Vec<Seq> = domain.iter().map(|u| w.map(u)).collect();
    let distinct: HashSet<&Seq> = images.iter().collect();
    if distinct.len() != images.len() {
        return false;
    }
    if !images.iter().all(|v| w.target_contains(t, v)) {
        return false;
    }
    for (i, u) in domain.iter().enumerate() {
        for (j, v) in domain.iter().enumerate().skip(i + 1) {
            if u.comparable(v) != images[i].comparable(&images[j]) {
                return false;
            }
            if u.is_prefix_of(v) && !images[i].is_prefix_of(&images[j]) {
                return false;
            }
        }
    }
    true
}
