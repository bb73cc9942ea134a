use std::collections::VecDeque;

use serde::Serialize;

use super::schema::{PathStep, SchemaSeq, Seq, TreeSchema};

/// An injective map from ℕ^{<ω} into a schema that preserves both
/// comparability and incomparability, so it embeds `I_wf` into the restriction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum EmbeddingWitness {
    /// Translation of the identity on a `Full` sub-block reached through `path`.
    Structural { path: Vec<PathStep> },
    /// Descent through the derivative core of the generated tree `⟨tree⟩`.
    CoreDescent { tree: TreeSchema },
}

impl EmbeddingWitness {
    pub fn identity() -> Self {
        EmbeddingWitness::Structural { path: Vec::new() }
    }

    pub fn map(&self, u: &[u64]) -> Seq {
        match self {
            EmbeddingWitness::Structural { path } => {
                let mut v: Vec<u64> = path.iter().flat_map(|s| s.prefix()).collect();
                v.extend_from_slice(u);
                Seq(v)
            }
            EmbeddingWitness::CoreDescent { tree } => {
                let mut v = Seq::empty();
                let mut cone = tree.clone();
                for &n in u {
                    let (s, c) = branching_node(&v, &cone);
                    let a = nth_core_child(&c, n);
                    v = s.push(a);
                    cone = c.child(a);
                }
                v
            }
        }
    }

    /// Whether `v` lies in the set this witness maps into: the schema itself
    /// for structural witnesses, the generated tree for core descents.
    pub fn target_contains(&self, t: &TreeSchema, v: &[u64]) -> bool {
        match self {
            EmbeddingWitness::Structural { .. } => t.member(v),
            EmbeddingWitness::CoreDescent { .. } => t.in_closure(v),
        }
    }

    pub fn summary(&self) -> String {
        match self {
            EmbeddingWitness::Structural { path } if path.is_empty() => {
                "identity embedding of full".to_string()
            }
            EmbeddingWitness::Structural { path } => {
                let root: Vec<u64> = path.iter().flat_map(|s| s.prefix()).collect();
                format!("identity embedding of full translated under {}", Seq(root))
            }
            EmbeddingWitness::CoreDescent { tree } => {
                format!("core descent through the derivative fixpoint of <{tree}>")
            }
        }
    }
}

/// Indices `i` whose cone still contains a full subtree; `(finite, from)` where
/// every index `≥ from` also qualifies.
pub fn core_children(t: &TreeSchema) -> (Vec<u64>, Option<u64>) {
    match t {
        TreeSchema::Full => (Vec::new(), Some(0)),
        TreeSchema::Rooted(x) => core_children(x),
        TreeSchema::Fan(heads, tail) => {
            let finite = (0..heads.len() as u64)
                .filter(|&i| heads[i as usize].has_full())
                .collect();
            let from = match tail {
                SchemaSeq::Const(x) if x.has_full() => Some(heads.len() as u64),
                _ => None,
            };
            (finite, from)
        }
        TreeSchema::Spine(..) => {
            let mut finite = Vec::new();
            if t.spine_rest().has_full() {
                finite.push(0);
            }
            if t.part(0).has_full() {
                finite.push(1);
            }
            (finite, None)
        }
        _ => (Vec::new(), None),
    }
}

fn nth_core_child(t: &TreeSchema, n: u64) -> u64 {
    let (finite, from) = core_children(t);
    let from = from.expect("branching node has infinitely many core children");
    match finite.get(n as usize) {
        Some(&i) => i,
        None => from + (n - finite.len() as u64),
    }
}

/// Nearest core node at or below `v` with infinitely many core children.
fn branching_node(v: &Seq, cone: &TreeSchema) -> (Seq, TreeSchema) {
    let mut queue = VecDeque::from([(v.clone(), cone.clone())]);
    while let Some((s, c)) = queue.pop_front() {
        let (finite, from) = core_children(&c);
        if from.is_some() {
            return (s, c);
        }
        for i in finite {
            queue.push_back((s.push(i), c.child(i)));
        }
    }
    panic!("core descent started outside the derivative core")
}
