use serde::Serialize;

use super::schema::{PathStep, SchemaSeq, TreeSchema};
use super::witness::EmbeddingWitness;
use crate::error::{Error, Result};
use crate::ideal::{combine, CanonicalForm};

/// Classification of `I_wf` restricted to a schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "data")]
pub enum TreeClass {
    Borel(CanonicalForm),
    NonBorel(EmbeddingWitness),
}

impl TreeClass {
    pub fn form(&self) -> Option<&CanonicalForm> {
        match self {
            TreeClass::Borel(c) => Some(c),
            TreeClass::NonBorel(_) => None,
        }
    }

    pub fn is_borel(&self) -> bool {
        matches!(self, TreeClass::Borel(_))
    }
}

/// Class of a schema during structural recursion. Finite pieces carry no
/// class; they are absorbed by any infinite neighbour.
enum Cls {
    Finite,
    Borel(CanonicalForm),
    NonBorel(Vec<PathStep>),
}

fn add(acc: &mut Option<CanonicalForm>, c: CanonicalForm) {
    *acc = Some(match acc.take() {
        None => c,
        Some(a) => combine(&a, &c),
    });
}

fn under(step: PathStep, mut path: Vec<PathStep>) -> Cls {
    path.insert(0, step);
    Cls::NonBorel(path)
}

/// ⊕ of the compiled blocks along a diagonal tail. Their ranks are cofinal
/// in λ and never reach it, so the sum is `P(λ)` whichever of `P`, `Q` or
/// their orthogonals the blocks carry.
fn diag_family(tail: &SchemaSeq) -> Option<CanonicalForm> {
    match tail {
        SchemaSeq::Diag { limit, .. } => Some(CanonicalForm::p(limit.clone())),
        SchemaSeq::Const(_) => None,
    }
}

fn structural(t: &TreeSchema) -> Cls {
    match t {
        TreeSchema::Empty | TreeSchema::Eps => Cls::Finite,
        TreeSchema::Chain => Cls::Borel(CanonicalForm::fin()),
        TreeSchema::Full => Cls::NonBorel(Vec::new()),
        TreeSchema::Rooted(x) => structural(x),
        TreeSchema::Fan(heads, tail) => {
            let mut acc = None;
            for (i, x) in heads.iter().enumerate() {
                match structural(x) {
                    Cls::NonBorel(p) => return under(PathStep::FanBlock(i as u64), p),
                    Cls::Borel(c) => add(&mut acc, c),
                    Cls::Finite => {}
                }
            }
            match tail {
                SchemaSeq::Const(x) if x.is_empty() => {}
                SchemaSeq::Const(x) => match structural(x) {
                    Cls::NonBorel(p) => return under(PathStep::FanBlock(heads.len() as u64), p),
                    Cls::Finite => add(&mut acc, CanonicalForm::pow()),
                    Cls::Borel(c) => add(&mut acc, c.omega_sum()),
                },
                SchemaSeq::Diag { .. } => add(&mut acc, diag_family(tail).expect("diag")),
            }
            acc.map_or(Cls::Finite, Cls::Borel)
        }
        TreeSchema::Spine(heads, tail) => {
            let infinite = !tail.is_empty();
            let mut acc = None;
            for (n, x) in heads.iter().enumerate() {
                match structural(x) {
                    Cls::NonBorel(p) => return under(PathStep::SpineCopy(n as u64), p),
                    Cls::Borel(c) if infinite => add(&mut acc, c.perp()),
                    Cls::Borel(c) => add(&mut acc, c),
                    Cls::Finite => {}
                }
            }
            if !infinite {
                return acc.map_or(Cls::Finite, Cls::Borel);
            }
            match tail {
                SchemaSeq::Const(x) => match structural(x) {
                    Cls::NonBorel(p) => return under(PathStep::SpineCopy(heads.len() as u64), p),
                    Cls::Finite => add(&mut acc, CanonicalForm::pow()),
                    Cls::Borel(c) => add(&mut acc, c.perp().omega_sum()),
                },
                SchemaSeq::Diag { .. } => add(&mut acc, diag_family(tail).expect("diag")),
            }
            Cls::Borel(acc.expect("infinite tail contributes").perp())
        }
    }
}

/// Structural classification of `I_wf↾t`.
pub fn classify(t: &TreeSchema) -> Result<TreeClass> {
    match structural(t) {
        Cls::Finite => Err(Error::FiniteSchema),
        Cls::Borel(c) => Ok(TreeClass::Borel(c)),
        Cls::NonBorel(path) => Ok(TreeClass::NonBorel(EmbeddingWitness::Structural { path })),
    }
}

/// Is the denoted set contained in a well-founded tree?
pub fn in_wf(t: &TreeSchema) -> bool {
    match t {
        TreeSchema::Empty | TreeSchema::Eps => true,
        TreeSchema::Chain | TreeSchema::Full => false,
        TreeSchema::Rooted(x) => in_wf(x),
        TreeSchema::Fan(heads, tail) => {
            heads.iter().all(in_wf)
                && match tail {
                    SchemaSeq::Const(x) => in_wf(x),
                    // compile(X(β)) is well-founded only for X = P, β = 0, and
                    // every λ[n] is at least 1.
                    SchemaSeq::Diag { .. } => false,
                }
        }
        TreeSchema::Spine(heads, tail) => tail.is_empty() && heads.iter().all(in_wf),
    }
}

/// Is the denoted set dominated by a branch?
pub fn in_id(t: &TreeSchema) -> bool {
    match t {
        TreeSchema::Empty | TreeSchema::Eps | TreeSchema::Chain => true,
        TreeSchema::Full => false,
        TreeSchema::Rooted(x) => in_id(x),
        TreeSchema::Fan(heads, tail) => tail.is_empty() && heads.iter().all(in_id),
        TreeSchema::Spine(heads, tail) => {
            heads.iter().all(in_id)
                && match tail {
                    SchemaSeq::Const(x) => in_id(x),
                    // compile(X(β)) is dominated only for X = Q, β = 0.
                    SchemaSeq::Diag { .. } => false,
                }
        }
    }
}

/// True when the set is downward closed under prefixes.
pub fn is_closed(t: &TreeSchema) -> bool {
    t.is_empty() || (t.contains_root() && body_closed(t))
}

fn body_closed(t: &TreeSchema) -> bool {
    match t {
        TreeSchema::Empty | TreeSchema::Eps | TreeSchema::Chain | TreeSchema::Full => true,
        TreeSchema::Rooted(x) => body_closed(x),
        TreeSchema::Fan(heads, tail) => {
            heads.iter().all(is_closed)
                && match tail {
                    SchemaSeq::Const(x) => is_closed(x),
                    // compiled blocks never contain their own root
                    SchemaSeq::Diag { .. } => false,
                }
        }
        TreeSchema::Spine(..) => t.spine_rest().is_empty() && is_closed(&t.part(0)),
    }
}

/// Class of `⟨t⟩ ∖ t`, the nodes the generated tree adds; `None` when finite.
pub fn scaffold(t: &TreeSchema) -> Option<CanonicalForm> {
    match t {
        TreeSchema::Empty | TreeSchema::Eps | TreeSchema::Chain | TreeSchema::Full => None,
        TreeSchema::Rooted(x) => scaffold(x),
        TreeSchema::Fan(heads, tail) => {
            let mut acc = None;
            for x in heads {
                if let Some(c) = scaffold(x) {
                    add(&mut acc, c);
                }
            }
            match tail {
                SchemaSeq::Const(x) if x.is_empty() => {}
                SchemaSeq::Const(x) => match scaffold(x) {
                    Some(c) => add(&mut acc, c.omega_sum()),
                    None if !is_closed(x) => add(&mut acc, CanonicalForm::pow()),
                    None => {}
                },
                // the scaffolds of compiled blocks have ranks cofinal in λ
                SchemaSeq::Diag { .. } => add(&mut acc, diag_family(tail).expect("diag")),
            }
            acc
        }
        TreeSchema::Spine(heads, tail) => {
            if tail.is_empty() {
                let mut acc = None;
                for x in heads {
                    if let Some(c) = scaffold(x) {
                        add(&mut acc, c);
                    }
                }
                return acc;
            }
            // Block n is the spine node 0^{n+1} together with the scaffold of copy n;
            // infinitely many blocks each contribute one spine point.
            let mut acc = None;
            for x in heads {
                if let Some(c) = scaffold(x) {
                    add(&mut acc, c.perp());
                }
            }
            match tail {
                SchemaSeq::Const(x) => match scaffold(x) {
                    Some(c) => add(&mut acc, c.perp().omega_sum()),
                    None => add(&mut acc, CanonicalForm::pow()),
                },
                SchemaSeq::Diag { .. } => add(&mut acc, diag_family(tail).expect("diag")),
            }
            Some(acc.expect("infinite tail contributes").perp())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;
    use crate::tree::schema::{compile_form, DiagKind};
    use TreeSchema::*;

    fn eps_fan() -> TreeSchema {
        TreeSchema::fan(vec![], SchemaSeq::constant(Eps))
    }

    fn borel(t: &TreeSchema) -> CanonicalForm {
        classify(t).unwrap().form().cloned().unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(borel(&Chain), CanonicalForm::fin());
        let fan_chain = TreeSchema::fan(vec![], SchemaSeq::constant(Chain));
        assert_eq!(borel(&fan_chain), CanonicalForm::p(1.into()));
        let sp = TreeSchema::spine(vec![], SchemaSeq::constant(eps_fan()));
        assert_eq!(borel(&sp), CanonicalForm::q(1.into()));
        assert!(matches!(
            classify(&Full).unwrap(),
            TreeClass::NonBorel(EmbeddingWitness::Structural { ref path }) if path.is_empty()
        ));
        assert_eq!(classify(&Eps), Err(Error::FiniteSchema));
    }

    #[test]
    fn nonborel_witness_is_rerooted() {
        let t = TreeSchema::spine(vec![Chain, Full], SchemaSeq::empty());
        match classify(&t).unwrap() {
            TreeClass::NonBorel(EmbeddingWitness::Structural { path }) => {
                assert_eq!(path, vec![PathStep::SpineCopy(1)])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_heads_are_absorbed() {
        let t = TreeSchema::fan(vec![Eps, Chain], SchemaSeq::empty());
        assert_eq!(borel(&t), CanonicalForm::fin());
    }

    #[test]
    fn membership_rules() {
        assert!(in_wf(&eps_fan()));
        assert!(!in_wf(&Chain));
        assert!(!in_wf(&TreeSchema::spine(vec![], SchemaSeq::constant(Eps))));
        assert!(in_id(&Chain));
        assert!(!in_id(&eps_fan()));
        assert!(in_id(&TreeSchema::spine(
            vec![],
            SchemaSeq::constant(Chain)
        )));
    }

    #[test]
    fn diag_rules_match_first_blocks() {
        for kind in [DiagKind::P, DiagKind::Q] {
            let lim = Ordinal::omega_pow(2.into());
            for n in 0..4 {
                let b = compile_form(&kind.form(lim.fund(n).unwrap()));
                assert!(!in_wf(&b));
                assert!(!in_id(&b));
                assert!(!is_closed(&b));
            }
        }
    }

    #[test]
    fn scaffold_of_compiled_forms() {
        // ⟨compile(P(2))⟩ adds a finitely branching tree under every block
        let p2 = compile_form(&CanonicalForm::p(2.into()));
        assert_eq!(scaffold(&p2), Some(CanonicalForm::p(1.into())));
        assert_eq!(scaffold(&Chain), None);
        assert_eq!(scaffold(&eps_fan()), None);
        let sp = TreeSchema::spine(vec![], SchemaSeq::constant(Eps));
        assert_eq!(scaffold(&sp), Some(CanonicalForm::fin()));
    }

    #[test]
    fn closedness() {
        assert!(is_closed(&TreeSchema::rooted(Chain)));
        assert!(!is_closed(&Chain));
        assert!(is_closed(&Full));
        assert!(is_closed(&TreeSchema::rooted(eps_fan())));
        assert!(!is_closed(&TreeSchema::rooted(TreeSchema::spine(
            vec![Empty, Eps],
            SchemaSeq::empty()
        ))));
    }
}
