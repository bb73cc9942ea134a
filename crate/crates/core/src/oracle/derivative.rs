//! Brute-force iterated derivative on the block quotient of `⟨t⟩`: nodes
//! with equal cone schemas are merged, and each edge remembers whether the
//! child class occurs finitely or infinitely often.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::tree::{in_id, SchemaSeq, TreeSchema};

use super::Budget;

struct Quotient {
    reps: Vec<TreeSchema>,
    /// `(child, infinitely many)` per representative.
    edges: Vec<Vec<(usize, bool)>>,
}

fn child_classes(t: &TreeSchema, limit: usize) -> Result<Vec<(TreeSchema, bool)>> {
    let mut out: Vec<(TreeSchema, bool)> = Vec::new();
    let mut add = |c: TreeSchema, infinite: bool| {
        if c.is_empty() {
            return;
        }
        match out.iter_mut().find(|(x, _)| *x == c) {
            Some(e) => e.1 |= infinite,
            None => out.push((c, infinite)),
        }
    };
    match t {
        TreeSchema::Empty | TreeSchema::Eps => {}
        TreeSchema::Chain => add(t.child(0), false),
        TreeSchema::Full => add(TreeSchema::Full, true),
        TreeSchema::Rooted(x) => return child_classes(x, limit),
        TreeSchema::Fan(heads, tail) => {
            for i in 0..heads.len() {
                add(t.child(i as u64), false);
            }
            match tail {
                SchemaSeq::Const(_) => add(t.child(heads.len() as u64), true),
                // pairwise distinct cones at every index
                SchemaSeq::Diag { .. } => return Err(Error::QuotientOverflow { limit }),
            }
        }
        TreeSchema::Spine(..) => {
            add(t.child(0), false);
            add(t.child(1), false);
        }
    }
    Ok(out)
}

fn quotient(t: &TreeSchema, limit: usize) -> Result<Quotient> {
    let mut index: HashMap<TreeSchema, usize> = HashMap::new();
    let mut q = Quotient {
        reps: vec![t.clone()],
        edges: Vec::new(),
    };
    index.insert(t.clone(), 0);
    let mut next = 0;
    while next < q.reps.len() {
        let mut edges = Vec::new();
        for (c, infinite) in child_classes(&q.reps[next].clone(), limit)? {
            let id = match index.get(&c) {
                Some(&id) => id,
                None => {
                    if q.reps.len() >= limit {
                        return Err(Error::QuotientOverflow { limit });
                    }
                    q.reps.push(c.clone());
                    index.insert(c, q.reps.len() - 1);
                    q.reps.len() - 1
                }
            };
            edges.push((id, infinite));
        }
        q.edges.push(edges);
        next += 1;
    }
    Ok(q)
}

/// Fixpoint stage and core emptiness of the derivative on `⟨t⟩`.
pub fn explicit_derivative(t: &TreeSchema, b: &Budget) -> Result<(Ordinal, bool)> {
    if t.is_empty() {
        return Ok((Ordinal::zero(), true));
    }
    let q = quotient(t, b.count)?;
    let n = q.reps.len();
    // first stage: the exact domination test on every cone
    let mut alive: Vec<bool> = q.reps.iter().map(|r| !in_id(r)).collect();
    let mut stage = 0u64;
    if alive.iter().all(|&a| a) {
        return Ok((Ordinal::zero(), false));
    }
    loop {
        stage += 1;
        // A surviving subtree is undominated iff it has a node with
        // infinitely many surviving children.
        let branching: Vec<bool> = (0..n)
            .map(|v| alive[v] && q.edges[v].iter().any(|&(c, inf)| inf && alive[c]))
            .collect();
        let mut reach = branching;
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if alive[v] && !reach[v] && q.edges[v].iter().any(|&(c, _)| alive[c] && reach[c]) {
                    reach[v] = true;
                    changed = true;
                }
            }
        }
        if reach == alive {
            return Ok((stage.into(), !alive.iter().any(|&a| a)));
        }
        alive = reach;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tree_rank;

    fn run(t: &TreeSchema) -> (Ordinal, bool) {
        explicit_derivative(t, &Budget::new(8, 8, 64)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(run(&TreeSchema::Chain), (1.into(), true));
        assert_eq!(run(&TreeSchema::Full), (0.into(), false));
        let fan_chain = TreeSchema::fan(vec![], SchemaSeq::constant(TreeSchema::Chain));
        assert_eq!(run(&fan_chain), (2.into(), true));
    }

    #[test]
    fn agrees_on_mixed_core() {
        let t = TreeSchema::spine(
            vec![TreeSchema::Full, TreeSchema::Eps],
            SchemaSeq::constant(TreeSchema::Empty),
        );
        assert_eq!(run(&t), tree_rank(&t));
    }

    #[test]
    fn diag_overflows() {
        let t = TreeSchema::fan(
            vec![],
            SchemaSeq::diag(crate::tree::DiagKind::Q, Ordinal::omega()).unwrap(),
        );
        assert!(matches!(
            explicit_derivative(&t, &Budget::default()),
            Err(Error::QuotientOverflow { .. })
        ));
    }
}
