//! Iterated derivative on the generated tree `⟨t⟩`, where a node is removed
//! once its cone is dominated by a branch.
//!
//! `delta(t)` is the stage at which the root of `⟨t⟩` is removed, or `None`
//! when the root survives forever (the core is nonempty). At a node `a`,
//! `δ(a) = sup_{b ⪰ a} δ_b` where `δ_b` is the least `β` such that only
//! finitely many children `c` of `b` have `δ(c) ≥ β`.

use super::classify::TreeClass;
use super::schema::{SchemaSeq, TreeSchema};
use super::witness::EmbeddingWitness;
use crate::error::{Error, Result};
use crate::ideal::{combine, CanonicalForm};
use crate::ordinal::Ordinal;

fn max_into(acc: &mut Ordinal, x: Ordinal) {
    if x > *acc {
        *acc = x;
    }
}

/// Removal stage of the root of `⟨t⟩`; `t` must be nonempty.
pub fn delta(t: &TreeSchema) -> Option<Ordinal> {
    match t {
        TreeSchema::Empty | TreeSchema::Eps | TreeSchema::Chain => Some(Ordinal::zero()),
        TreeSchema::Full => None,
        TreeSchema::Rooted(x) if x.is_empty() => Some(Ordinal::zero()),
        TreeSchema::Rooted(x) => delta(x),
        TreeSchema::Fan(heads, tail) | TreeSchema::Spine(heads, tail) => {
            let is_fan = matches!(t, TreeSchema::Fan(..));
            let mut d = Ordinal::zero();
            for x in heads.iter().filter(|x| !x.is_empty()) {
                max_into(&mut d, delta(x)?);
            }
            match tail {
                SchemaSeq::Const(x) if x.is_empty() => {}
                SchemaSeq::Const(x) => {
                    let dx = delta(x)?;
                    // infinitely many fan children at stage dx keep the root one stage longer
                    max_into(&mut d, if is_fan { dx.succ() } else { dx });
                }
                // block stages are cofinal in λ
                SchemaSeq::Diag { limit, .. } => max_into(&mut d, limit.clone()),
            }
            Some(d)
        }
    }
}

/// Rank of `⟨t⟩` (first fixpoint stage of the derivative) and whether the
/// fixpoint is empty.
pub fn tree_rank(t: &TreeSchema) -> (Ordinal, bool) {
    if t.is_empty() {
        return (Ordinal::zero(), true);
    }
    match delta(t) {
        Some(d) => (d.succ(), true),
        None => (noncore_sup(t).unwrap_or_default(), false),
    }
}

/// Supremum of `δ+1` over the nodes of `⟨t⟩` outside the core.
fn noncore_sup(t: &TreeSchema) -> Option<Ordinal> {
    if let Some(d) = delta(t) {
        return Some(d.succ());
    }
    let mut acc: Option<Ordinal> = None;
    let mut push = |x: Option<Ordinal>| {
        if let Some(x) = x {
            if acc.as_ref().is_none_or(|a| x > *a) {
                acc = Some(x);
            }
        }
    };
    match t {
        TreeSchema::Rooted(x) => push(noncore_sup(x)),
        TreeSchema::Fan(heads, tail) | TreeSchema::Spine(heads, tail) => {
            for x in heads.iter().filter(|x| !x.is_empty()) {
                push(noncore_sup(x));
            }
            match tail {
                SchemaSeq::Const(x) if x.is_empty() => {}
                SchemaSeq::Const(x) => push(noncore_sup(x)),
                SchemaSeq::Diag { limit, .. } => push(Some(limit.clone())),
            }
            if matches!(t, TreeSchema::Spine(..)) {
                // spine nodes past the last copy containing a core node
                let tail_delta = match tail {
                    SchemaSeq::Const(x) if x.is_empty() => None,
                    SchemaSeq::Const(x) => Some(delta(x)),
                    SchemaSeq::Diag { limit, .. } => Some(Some(limit.clone())),
                };
                let mut after: Option<Ordinal> = match tail_delta {
                    Some(None) => return acc,
                    Some(Some(d)) => Some(d),
                    None => None,
                };
                for x in heads.iter().rev().filter(|x| !x.is_empty()) {
                    match delta(x) {
                        None => break,
                        Some(d) => {
                            after = Some(after.map_or(d.clone(), |a| a.max(d)));
                        }
                    }
                }
                push(after.map(|d| d.succ()));
            }
        }
        _ => {}
    }
    acc
}

/// Classification of `I_wf↾⟨t⟩` through the derivative: a nonempty core
/// yields an embedding of `I_wf`, otherwise the generated tree is split into
/// its maximal-rank nodes and the pieces hanging off them.
pub fn classify_via_derivative(t: &TreeSchema) -> Result<TreeClass> {
    if t.is_finite() {
        return Err(Error::FiniteSchema);
    }
    if delta(t).is_none() {
        return Ok(TreeClass::NonBorel(EmbeddingWitness::CoreDescent {
            tree: t.clone(),
        }));
    }
    Ok(TreeClass::Borel(
        closure_class(t).expect("infinite generated tree"),
    ))
}

/// Class of `I_wf↾⟨t⟩` for nonempty `t` with empty core; `None` when finite.
fn closure_class(t: &TreeSchema) -> Option<CanonicalForm> {
    if t.is_finite() {
        return None;
    }
    let d = delta(t).expect("core is empty");
    let mut h = Decomposition::default();
    collect(t, &d, Mult::One, &mut h);
    h.assemble()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mult {
    One,
    Infinite,
}

/// One hanging piece: its class (`None` for a finite piece) and multiplicity.
enum Piece {
    Cone(Option<CanonicalForm>, Mult),
    /// Cones of compiled diagonal blocks, one per index.
    Family(Ordinal),
}

/// Contribution of one node `s` of maximal rank: `J_s`, the ⊕ of its pieces.
enum Local {
    Finite,
    Class(CanonicalForm),
}

#[derive(Default)]
struct Decomposition {
    infinite: bool,
    locals: Vec<(Local, Mult)>,
    /// Infinitely many maximal-rank nodes whose `J_s` run through a diagonal family.
    families: Vec<Ordinal>,
}

impl Decomposition {
    fn node(&mut self, mult: Mult, pieces: Vec<Piece>) {
        if mult == Mult::Infinite {
            self.infinite = true;
        }
        if pieces.is_empty() {
            return;
        }
        let mut acc: Option<CanonicalForm> = None;
        let mut join = |c: CanonicalForm| {
            acc = Some(match acc.take() {
                None => c,
                Some(a) => combine(&a, &c),
            })
        };
        for p in pieces {
            match p {
                Piece::Cone(Some(c), Mult::One) => join(c),
                Piece::Cone(Some(c), Mult::Infinite) => join(c.omega_sum()),
                Piece::Cone(None, Mult::One) => {}
                Piece::Cone(None, Mult::Infinite) => join(CanonicalForm::pow()),
                Piece::Family(limit) => join(CanonicalForm::p(limit)),
            }
        }
        let local = acc.map_or(Local::Finite, Local::Class);
        self.locals.push((local, mult));
    }

    fn assemble(self) -> Option<CanonicalForm> {
        let mut acc: Option<CanonicalForm> = None;
        let mut join = |c: CanonicalForm| {
            acc = Some(match acc.take() {
                None => c,
                Some(a) => combine(&a, &c),
            })
        };
        if !self.infinite {
            for (local, _) in self.locals {
                if let Local::Class(c) = local {
                    join(c);
                }
            }
            return acc;
        }
        // (⊕_{s∈H} J_s^⊥)^⊥ ⊕ FIN
        for (local, mult) in self.locals {
            match (local, mult) {
                (Local::Class(c), Mult::One) => join(c.perp()),
                (Local::Class(c), Mult::Infinite) => join(c.perp().omega_sum()),
                (Local::Finite, Mult::One) => {}
                (Local::Finite, Mult::Infinite) => join(CanonicalForm::pow()),
            }
        }
        for limit in self.families {
            join(CanonicalForm::p(limit));
        }
        let fin = CanonicalForm::fin();
        Some(match acc {
            None => fin,
            Some(x) => combine(&fin, &x.perp()),
        })
    }
}

fn piece_of(t: &TreeSchema, mult: Mult) -> Piece {
    Piece::Cone(closure_class(t), mult)
}

/// Walks the maximal-rank nodes of `⟨t⟩`, whose root has stage `d`.
fn collect(t: &TreeSchema, d: &Ordinal, mult: Mult, h: &mut Decomposition) {
    match t {
        TreeSchema::Empty => {}
        TreeSchema::Eps => h.node(mult, Vec::new()),
        TreeSchema::Chain => {
            h.infinite = true;
        }
        TreeSchema::Full => unreachable!("core is empty"),
        TreeSchema::Rooted(x) if x.is_empty() => h.node(mult, Vec::new()),
        TreeSchema::Rooted(x) => collect(x, d, mult, h),
        TreeSchema::Fan(heads, tail) => {
            let mut pieces = Vec::new();
            for x in heads.iter().filter(|x| !x.is_empty()) {
                if delta(x).as_ref() == Some(d) {
                    collect(x, d, mult, h);
                } else {
                    pieces.push(piece_of(x, Mult::One));
                }
            }
            match tail {
                SchemaSeq::Const(x) if x.is_empty() => {}
                SchemaSeq::Const(x) => pieces.push(piece_of(x, Mult::Infinite)),
                SchemaSeq::Diag { limit, .. } => pieces.push(Piece::Family(limit.clone())),
            }
            h.node(mult, pieces);
        }
        TreeSchema::Spine(heads, tail) => collect_spine(heads, tail, d, mult, h),
    }
}

fn spine_from(heads: &[TreeSchema], tail: &SchemaSeq, m: usize) -> TreeSchema {
    if m <= heads.len() {
        TreeSchema::spine(heads[m..].to_vec(), tail.clone())
    } else {
        TreeSchema::spine(Vec::new(), tail.shift((m - heads.len()) as u64))
    }
}

fn collect_spine(
    heads: &[TreeSchema],
    tail: &SchemaSeq,
    d: &Ordinal,
    mult: Mult,
    h: &mut Decomposition,
) {
    let tail_delta = match tail {
        SchemaSeq::Const(x) if x.is_empty() => None,
        SchemaSeq::Const(x) => Some(delta(x).expect("core is empty")),
        SchemaSeq::Diag { limit, .. } => Some(limit.clone()),
    };
    // stage of the spine node 0^n
    let suffix = |n: usize| -> Option<Ordinal> {
        let mut acc = tail_delta.clone();
        for x in heads.iter().skip(n).filter(|x| !x.is_empty()) {
            let dx = delta(x).expect("core is empty");
            acc = Some(acc.map_or(dx.clone(), |a| a.max(dx)));
        }
        acc
    };
    let k = heads.len();
    let mut n = 0;
    while n < k {
        let mut pieces = Vec::new();
        let copy = &heads[n];
        if !copy.is_empty() {
            if delta(copy).as_ref() == Some(d) {
                collect(copy, d, mult, h);
            } else {
                pieces.push(piece_of(copy, Mult::One));
            }
        }
        match suffix(n + 1) {
            Some(s) if &s == d => {
                h.node(mult, pieces);
                n += 1;
            }
            Some(_) => {
                pieces.push(piece_of(&spine_from(heads, tail, n + 1), Mult::One));
                h.node(mult, pieces);
                return;
            }
            None => {
                h.node(mult, pieces);
                return;
            }
        }
    }
    // every spine node from 0^k on has maximal stage
    h.infinite = true;
    match tail {
        SchemaSeq::Const(x) if x.is_empty() => {}
        SchemaSeq::Const(x) => {
            if delta(x).as_ref() == Some(d) {
                collect(x, d, Mult::Infinite, h);
            } else {
                h.node(Mult::Infinite, vec![piece_of(x, Mult::One)]);
            }
        }
        SchemaSeq::Diag { limit, .. } => h.families.push(limit.clone()),
    }
}
