//! Membership of finitely presented sets in `I_wf↾S` and its orthogonal,
//! with checkable witnesses.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::IdealExpr;
use crate::tree::{compile, dominating_branch, in_id, in_wf, Branch, SchemaSeq, Seq, TreeSchema};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QueryTerm {
    Schema(TreeSchema),
    FinSet(Vec<Seq>),
    /// The shortest, lexicographically least element of each nonempty fan block.
    Transversal(TreeSchema),
    Union(Box<QueryTerm>, Box<QueryTerm>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Containment {
    Yes,
    No,
    Unknown,
}

impl Containment {
    fn and(self, other: Containment) -> Containment {
        use Containment::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Yes,
        }
    }
}

impl QueryTerm {
    pub fn finset(elements: Vec<Seq>) -> Result<Self> {
        let mut seen = HashSet::new();
        if let Some(dup) = elements.iter().find(|e| !seen.insert(*e)) {
            return Err(Error::Malformed(format!(
                "duplicate element {dup} in finset"
            )));
        }
        Ok(QueryTerm::FinSet(elements))
    }

    pub fn transversal(fan: TreeSchema) -> Result<Self> {
        match fan {
            TreeSchema::Fan(..) => Ok(QueryTerm::Transversal(fan)),
            other => Err(Error::Malformed(format!("transversal of non-fan {other}"))),
        }
    }

    pub fn union(a: QueryTerm, b: QueryTerm) -> Self {
        QueryTerm::Union(Box::new(a), Box::new(b))
    }

    pub fn contains(&self, u: &[u64]) -> bool {
        match self {
            QueryTerm::Schema(t) => t.member(u),
            QueryTerm::FinSet(es) => es.iter().any(|e| e.0 == u),
            QueryTerm::Transversal(fan) => match u.split_first() {
                None => false,
                Some((&i, rest)) => fan.part(i).least().is_some_and(|l| l.0 == rest),
            },
            QueryTerm::Union(a, b) => a.contains(u) || b.contains(u),
        }
    }

    pub fn is_infinite(&self) -> bool {
        match self {
            QueryTerm::Schema(t) => !t.is_finite(),
            QueryTerm::FinSet(_) => false,
            QueryTerm::Transversal(fan) => fan.has_infinite_tail(),
            QueryTerm::Union(a, b) => a.is_infinite() || b.is_infinite(),
        }
    }

    /// The query as a schema, when it has one.
    pub fn as_schema(&self) -> Option<TreeSchema> {
        match self {
            QueryTerm::Schema(t) => Some(t.clone()),
            QueryTerm::Transversal(TreeSchema::Fan(heads, SchemaSeq::Const(x))) => {
                let pick = |b: &TreeSchema| match b.least() {
                    Some(l) => TreeSchema::singleton(&l),
                    None => TreeSchema::Empty,
                };
                Some(TreeSchema::fan(
                    heads.iter().map(pick).collect(),
                    SchemaSeq::constant(pick(x)),
                ))
            }
            _ => None,
        }
    }
}

/// Conservative containment of a query in a schema.
pub fn subset_of(q: &QueryTerm, s: &TreeSchema) -> Containment {
    match q {
        QueryTerm::Schema(t) => schema_subset(t, s),
        QueryTerm::FinSet(es) => {
            if es.iter().all(|e| s.member(e)) {
                Containment::Yes
            } else {
                Containment::No
            }
        }
        QueryTerm::Union(a, b) => subset_of(a, s).and(subset_of(b, s)),
        QueryTerm::Transversal(fan) => {
            if let Some(t) = q.as_schema() {
                return schema_subset(&t, s);
            }
            // every pick lies in the fan itself
            if schema_subset(fan, s) == Containment::Yes {
                return Containment::Yes;
            }
            let k = match fan {
                TreeSchema::Fan(h, _) => h.len() as u64,
                _ => 0,
            };
            for i in 0..k + 8 {
                if let Some(l) = fan.part(i).least() {
                    if !s.member(&Seq(vec![i]).concat(&l)) {
                        return Containment::No;
                    }
                }
            }
            Containment::Unknown
        }
    }
}

/// Containment of schema denotations by matching constructors.
pub fn schema_subset(a: &TreeSchema, b: &TreeSchema) -> Containment {
    let mut assumed = Vec::new();
    subset_rec(a, b, &mut assumed, 0)
}

const SUBSET_DEPTH: usize = 48;

/// Blocks under each child of the root: the set minus its root, seen as a fan.
fn fan_view(t: &TreeSchema) -> (Vec<TreeSchema>, SchemaSeq) {
    match t {
        TreeSchema::Empty | TreeSchema::Eps => (Vec::new(), SchemaSeq::empty()),
        TreeSchema::Chain => (vec![t.child(0)], SchemaSeq::empty()),
        TreeSchema::Full => (Vec::new(), SchemaSeq::constant(TreeSchema::Full)),
        TreeSchema::Rooted(x) => fan_view(x),
        TreeSchema::Fan(h, tail) => (h.clone(), tail.clone()),
        TreeSchema::Spine(..) => (vec![t.child(0), t.child(1)], SchemaSeq::empty()),
    }
}

fn subset_rec(
    a: &TreeSchema,
    b: &TreeSchema,
    assumed: &mut Vec<(TreeSchema, TreeSchema)>,
    depth: usize,
) -> Containment {
    if a.is_empty() || a == b || *b == TreeSchema::Full {
        return Containment::Yes;
    }
    if let Some(l) = a.least() {
        if !b.member(&l) {
            return Containment::No;
        }
    }
    if a.contains_root() && !b.contains_root() {
        return Containment::No;
    }
    // Containment is the greatest fixpoint of the blockwise condition: a
    // counterexample is a finite sequence and would surface at finite depth.
    if assumed.iter().any(|(x, y)| x == a && y == b) {
        return Containment::Yes;
    }
    if depth > SUBSET_DEPTH {
        return Containment::Unknown;
    }
    assumed.push((a.clone(), b.clone()));
    let (ha, ta) = fan_view(a);
    let (hb, tb) = fan_view(b);
    let k = ha.len().max(hb.len());
    let part = |h: &[TreeSchema], t: &SchemaSeq, i: usize| match h.get(i) {
        Some(x) => x.clone(),
        None => t.at((i - h.len()) as u64),
    };
    let mut acc = Containment::Yes;
    for i in 0..k {
        let r = subset_rec(&part(&ha, &ta, i), &part(&hb, &tb, i), assumed, depth + 1);
        acc = acc.and(r);
        if acc == Containment::No {
            break;
        }
    }
    if acc != Containment::No {
        let sa = ta.shift((k - ha.len()) as u64);
        let sb = tb.shift((k - hb.len()) as u64);
        let r = match (&sa, &sb) {
            _ if sa.is_empty() => Containment::Yes,
            (SchemaSeq::Const(x), SchemaSeq::Const(y)) => subset_rec(x, y, assumed, depth + 1),
            _ if sa == sb => Containment::Yes,
            (_, SchemaSeq::Const(y)) if **y == TreeSchema::Full => Containment::Yes,
            _ => Containment::Unknown,
        };
        acc = acc.and(r);
    }
    assumed.pop();
    acc
}

pub fn q_in_wf(q: &QueryTerm) -> bool {
    match q {
        QueryTerm::Schema(t) => in_wf(t),
        QueryTerm::FinSet(_) => true,
        // picks under distinct first coordinates generate a tree of finite branches
        QueryTerm::Transversal(_) => true,
        QueryTerm::Union(a, b) => q_in_wf(a) && q_in_wf(b),
    }
}

pub fn q_in_id(q: &QueryTerm) -> bool {
    match q {
        QueryTerm::Schema(t) => in_id(t),
        QueryTerm::FinSet(_) => true,
        QueryTerm::Transversal(fan) => !fan.has_infinite_tail(),
        QueryTerm::Union(a, b) => q_in_id(a) && q_in_id(b),
    }
}

fn require_subset(q: &QueryTerm, target: &IdealExpr) -> Result<()> {
    match subset_of(q, &compile(target)?) {
        Containment::Yes => Ok(()),
        Containment::No => Err(Error::NotASubset),
        Containment::Unknown => Err(Error::UnknownContainment),
    }
}

/// Membership in `I_wf↾compile(target)`, a copy of the target ideal.
pub fn member_of(q: &QueryTerm, target: &IdealExpr) -> Result<bool> {
    require_subset(q, target)?;
    Ok(q_in_wf(q))
}

/// Membership in the orthogonal, `I_d↾compile(target)`.
pub fn member_perp(q: &QueryTerm, target: &IdealExpr) -> Result<bool> {
    require_subset(q, target)?;
    Ok(q_in_id(q))
}

/// An infinite subset of a positive query that is orthogonal to the ideal.
pub fn frechet_witness(q: &QueryTerm, target: &IdealExpr) -> Result<QueryTerm> {
    if member_of(q, target)? {
        return Err(Error::InIdeal);
    }
    Ok(frechet_query(q))
}

fn frechet_query(q: &QueryTerm) -> QueryTerm {
    match q {
        QueryTerm::Schema(t) => QueryTerm::Schema(frechet_schema(t)),
        QueryTerm::Union(a, b) => {
            if q_in_wf(a) {
                frechet_query(b)
            } else {
                frechet_query(a)
            }
        }
        QueryTerm::FinSet(_) | QueryTerm::Transversal(_) => {
            unreachable!("finite sets and transversals are well-founded")
        }
    }
}

fn only_at(k: usize, t: TreeSchema) -> Vec<TreeSchema> {
    let mut heads = vec![TreeSchema::Empty; k];
    heads.push(t);
    heads
}

/// Descends to the first block where `t` is positive; `t` must not be in `I_wf`.
fn frechet_schema(t: &TreeSchema) -> TreeSchema {
    match t {
        TreeSchema::Chain | TreeSchema::Full => TreeSchema::Chain,
        TreeSchema::Rooted(x) => frechet_schema(x),
        TreeSchema::Fan(heads, _) => {
            let i = (0..=heads.len())
                .find(|&i| !in_wf(&t.part(i as u64)))
                .expect("a positive block");
            TreeSchema::fan(
                only_at(i, frechet_schema(&t.part(i as u64))),
                SchemaSeq::empty(),
            )
        }
        TreeSchema::Spine(heads, tail) => {
            let k = heads.len();
            if let Some(n) =
                (0..=k).find(|&n| (n < k || !tail.is_empty()) && !in_wf(&t.part(n as u64)))
            {
                return TreeSchema::spine(
                    only_at(n, frechet_schema(&t.part(n as u64))),
                    SchemaSeq::empty(),
                );
            }
            // infinitely many well-founded copies: fix one point in each
            let pick = t.part(k as u64).least().expect("nonempty tail copy");
            TreeSchema::spine(
                vec![TreeSchema::Empty; k],
                SchemaSeq::constant(TreeSchema::singleton(&pick)),
            )
        }
        TreeSchema::Empty | TreeSchema::Eps => unreachable!("well-founded schema"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "data")]
pub enum IdWitness {
    DominatingBranch(Branch),
    UnboundedFamily(UnboundedFamily),
}

/// Elements `position ⌢ ⟨i⟩ ⌢ least(cone_i)` over the children `i` of a node
/// with infinitely many nonempty child cones, thinned to strictly increasing maxima.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnboundedFamily {
    pub position: Seq,
    #[serde(serialize_with = "display")]
    pub cone: TreeSchema,
}

fn display<S: Serializer>(t: &TreeSchema, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

impl UnboundedFamily {
    pub fn iter(&self) -> FamilyIter {
        FamilyIter {
            family: self.clone(),
            next: 0,
            last_max: None,
        }
    }
}

/// Single-consumer enumerator of an unbounded family.
pub struct FamilyIter {
    family: UnboundedFamily,
    next: u64,
    last_max: Option<u64>,
}

impl Iterator for FamilyIter {
    type Item = Seq;

    fn next(&mut self) -> Option<Seq> {
        loop {
            let i = self.next;
            self.next += 1;
            let Some(l) = self.family.cone.child(i).least() else {
                continue;
            };
            let e = self.family.position.push(i).concat(&l);
            let m = e.max_entry().unwrap_or(0);
            if self.last_max.is_none_or(|p| m > p) {
                self.last_max = Some(m);
                return Some(e);
            }
        }
    }
}

impl fmt::Display for IdWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdWitness::DominatingBranch(b) => write!(f, "dominating branch {b}"),
            IdWitness::UnboundedFamily(u) => {
                write!(f, "unbounded family below {} in {}", u.position, u.cone)
            }
        }
    }
}

pub fn id_witness(q: &QueryTerm) -> IdWitness {
    match query_branch(q) {
        Some(b) => IdWitness::DominatingBranch(b),
        None => IdWitness::UnboundedFamily(unbounded_family(q)),
    }
}

fn pointwise_max(elements: &[Seq]) -> Branch {
    let len = elements.iter().map(|e| e.len()).max().unwrap_or(0);
    let prefix = (0..len)
        .map(|i| {
            elements
                .iter()
                .filter_map(|e| e.get(i))
                .copied()
                .max()
                .unwrap_or(0)
        })
        .collect();
    Branch {
        prefix,
        cycle: vec![0],
    }
}

fn query_branch(q: &QueryTerm) -> Option<Branch> {
    match q {
        QueryTerm::Schema(t) => dominating_branch(t),
        QueryTerm::FinSet(es) => Some(pointwise_max(es)),
        QueryTerm::Transversal(fan) => {
            if fan.has_infinite_tail() {
                return None;
            }
            let picks: BTreeSet<Seq> = match fan {
                TreeSchema::Fan(h, _) => (0..h.len() as u64)
                    .filter_map(|i| Some(Seq(vec![i]).concat(&fan.part(i).least()?)))
                    .collect(),
                _ => BTreeSet::new(),
            };
            Some(pointwise_max(&picks.into_iter().collect::<Vec<_>>()))
        }
        QueryTerm::Union(a, b) => Some(query_branch(a)?.max(&query_branch(b)?)),
    }
}

fn unbounded_family(q: &QueryTerm) -> UnboundedFamily {
    match q {
        QueryTerm::Schema(t) => schema_family(t, Seq::empty()),
        QueryTerm::Transversal(fan) => UnboundedFamily {
            position: Seq::empty(),
            cone: transversal_cone(fan),
        },
        QueryTerm::Union(a, b) => {
            if q_in_id(a) {
                unbounded_family(b)
            } else {
                unbounded_family(a)
            }
        }
        QueryTerm::FinSet(_) => unreachable!("finite sets are dominated"),
    }
}

/// A fan whose child cones have the transversal picks as least elements.
fn transversal_cone(fan: &TreeSchema) -> TreeSchema {
    match fan {
        TreeSchema::Fan(h, tail) => {
            let pick = |b: &TreeSchema| match b.least() {
                Some(l) => TreeSchema::singleton(&l),
                None => TreeSchema::Empty,
            };
            let tail = match tail {
                SchemaSeq::Const(x) => SchemaSeq::constant(pick(x)),
                diag => diag.clone(),
            };
            TreeSchema::fan(h.iter().map(pick).collect(), tail)
        }
        other => other.clone(),
    }
}

fn schema_family(t: &TreeSchema, at: Seq) -> UnboundedFamily {
    let here = || UnboundedFamily {
        position: at.clone(),
        cone: t.clone(),
    };
    match t {
        TreeSchema::Full => here(),
        TreeSchema::Rooted(x) => schema_family(x, at),
        TreeSchema::Fan(heads, tail) => {
            if !tail.is_empty() {
                return here();
            }
            let i = heads
                .iter()
                .position(|x| !in_id(x))
                .expect("undominated head");
            schema_family(&heads[i], at.push(i as u64))
        }
        TreeSchema::Spine(heads, tail) => {
            let k = heads.len() as u64;
            let n = (0..=k)
                .find(|&n| (n < k || !tail.is_empty()) && !in_id(&t.part(n)))
                .expect("undominated copy");
            let mut pos = at.concat(&vec![0; n as usize]);
            pos.0.push(1);
            schema_family(&t.part(n), pos)
        }
        _ => unreachable!("dominated schema"),
    }
}
