use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{normalize, CanonicalForm, FormKind, IdealExpr};
use crate::ordinal::Ordinal;

/// A finite sequence of naturals, printed as `<0,3,1>`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Seq(pub Vec<u64>);

impl Seq {
    pub fn empty() -> Self {
        Seq(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        Seq(vec![0; n])
    }

    pub fn concat(&self, tail: &[u64]) -> Seq {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Seq(v)
    }

    pub fn push(&self, x: u64) -> Seq {
        self.concat(&[x])
    }

    /// `self ⪯ other`.
    pub fn is_prefix_of(&self, other: &Seq) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Seq) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn max_entry(&self) -> Option<u64> {
        self.0.iter().copied().max()
    }

    /// Orders by length first, then lexicographically.
    pub fn shortlex_cmp(&self, other: &Seq) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Deref for Seq {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for Seq {
    fn from(v: Vec<u64>) -> Self {
        Seq(v)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Seq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which compiled ideal a diagonal block sequence carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagKind {
    /// Block n is `compile(Q(λ[n]))`.
    Q,
    /// Block n is `compile(P(λ[n]))`.
    P,
}

impl DiagKind {
    pub fn form(self, rank: Ordinal) -> CanonicalForm {
        match self {
            DiagKind::Q => CanonicalForm::q(rank),
            DiagKind::P => CanonicalForm::p(rank),
        }
    }
}

/// The infinite tail of a fan or spine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SchemaSeq {
    Const(Box<TreeSchema>),
    /// Block i is the compiled `kind(limit[i + offset])`.
    Diag {
        kind: DiagKind,
        limit: Ordinal,
        offset: u64,
    },
}

impl SchemaSeq {
    pub fn constant(t: TreeSchema) -> Self {
        SchemaSeq::Const(Box::new(t))
    }

    pub fn empty() -> Self {
        Self::constant(TreeSchema::Empty)
    }

    pub fn diag(kind: DiagKind, limit: Ordinal) -> Result<Self> {
        Self::diag_from(kind, limit, 0)
    }

    pub fn diag_from(kind: DiagKind, limit: Ordinal, offset: u64) -> Result<Self> {
        if !limit.is_limit() {
            return Err(Error::NotLimit(limit));
        }
        Ok(SchemaSeq::Diag {
            kind,
            limit,
            offset,
        })
    }

    pub fn at(&self, i: u64) -> TreeSchema {
        match self {
            SchemaSeq::Const(t) => (**t).clone(),
            SchemaSeq::Diag {
                kind,
                limit,
                offset,
            } => {
                let rank = limit
                    .fund(i + offset)
                    .expect("diag limit checked at construction");
                compile_form(&kind.form(rank))
            }
        }
    }

    pub fn shift(&self, by: u64) -> SchemaSeq {
        match self {
            SchemaSeq::Const(_) => self.clone(),
            SchemaSeq::Diag {
                kind,
                limit,
                offset,
            } => SchemaSeq::Diag {
                kind: *kind,
                limit: limit.clone(),
                offset: offset + by,
            },
        }
    }

    /// True when every block is empty.
    pub fn is_empty(&self) -> bool {
        match self {
            SchemaSeq::Const(t) => t.is_empty(),
            SchemaSeq::Diag { .. } => false,
        }
    }

    fn size(&self) -> usize {
        match self {
            SchemaSeq::Const(t) => t.size(),
            SchemaSeq::Diag { .. } => 1,
        }
    }
}

/// A finite term denoting an infinite (or finite) subset of ℕ^{<ω}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeSchema {
    Empty,
    /// `{⟨⟩}`.
    Eps,
    /// `{0ⁿ : n ≥ 1}`.
    Chain,
    /// All of ℕ^{<ω}.
    Full,
    /// `{⟨⟩} ∪ t`; produced by re-rooting cones.
    Rooted(Box<TreeSchema>),
    /// Block n sits under `⟨n⟩`.
    Fan(Vec<TreeSchema>, SchemaSeq),
    /// Copy n sits under `0ⁿ⌢1`.
    Spine(Vec<TreeSchema>, SchemaSeq),
}

/// How an element of a fan or spine is reached from its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PathStep {
    FanBlock(u64),
    SpineCopy(u64),
}

impl PathStep {
    pub fn prefix(self) -> Vec<u64> {
        match self {
            PathStep::FanBlock(i) => vec![i],
            PathStep::SpineCopy(n) => {
                let mut v = vec![0; n as usize];
                v.push(1);
                v
            }
        }
    }
}

impl TreeSchema {
    pub fn fan(heads: Vec<TreeSchema>, tail: SchemaSeq) -> Self {
        TreeSchema::Fan(heads, tail)
    }

    pub fn spine(heads: Vec<TreeSchema>, tail: SchemaSeq) -> Self {
        TreeSchema::Spine(heads, tail)
    }

    pub fn rooted(t: TreeSchema) -> Self {
        match t {
            TreeSchema::Empty | TreeSchema::Eps => TreeSchema::Eps,
            TreeSchema::Full => TreeSchema::Full,
            TreeSchema::Rooted(x) => TreeSchema::Rooted(x),
            other => TreeSchema::Rooted(Box::new(other)),
        }
    }

    /// The schema denoting exactly `{u}`.
    pub fn singleton(u: &[u64]) -> Self {
        match u.split_first() {
            None => TreeSchema::Eps,
            Some((&a, rest)) => {
                let mut heads = vec![TreeSchema::Empty; a as usize];
                heads.push(Self::singleton(rest));
                TreeSchema::Fan(heads, SchemaSeq::empty())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            TreeSchema::Empty | TreeSchema::Eps | TreeSchema::Chain | TreeSchema::Full => 1,
            TreeSchema::Rooted(x) => 1 + x.size(),
            TreeSchema::Fan(h, t) | TreeSchema::Spine(h, t) => {
                1 + t.size() + h.iter().map(Self::size).sum::<usize>()
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            TreeSchema::Empty => true,
            TreeSchema::Eps | TreeSchema::Chain | TreeSchema::Full | TreeSchema::Rooted(_) => false,
            TreeSchema::Fan(h, t) | TreeSchema::Spine(h, t) => {
                h.iter().all(Self::is_empty) && t.is_empty()
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            TreeSchema::Empty | TreeSchema::Eps => true,
            TreeSchema::Chain | TreeSchema::Full => false,
            TreeSchema::Rooted(x) => x.is_finite(),
            TreeSchema::Fan(h, t) | TreeSchema::Spine(h, t) => {
                h.iter().all(Self::is_finite) && t.is_empty()
            }
        }
    }

    /// True when some `Full` occurs in a nonempty position.
    pub fn has_full(&self) -> bool {
        match self {
            TreeSchema::Full => true,
            TreeSchema::Rooted(x) => x.has_full(),
            TreeSchema::Fan(h, t) | TreeSchema::Spine(h, t) => {
                h.iter().any(Self::has_full) || matches!(t, SchemaSeq::Const(x) if x.has_full())
            }
            _ => false,
        }
    }

    /// Infinitely many nonempty blocks (fan) or copies (spine).
    pub fn has_infinite_tail(&self) -> bool {
        match self {
            TreeSchema::Fan(_, t) | TreeSchema::Spine(_, t) => !t.is_empty(),
            _ => false,
        }
    }

    /// Block `i` of a fan or copy `i` of a spine.
    pub fn part(&self, i: u64) -> TreeSchema {
        match self {
            TreeSchema::Fan(h, t) | TreeSchema::Spine(h, t) => match h.get(i as usize) {
                Some(x) => x.clone(),
                None => t.at(i - h.len() as u64),
            },
            _ => TreeSchema::Empty,
        }
    }

    /// The spine with its first copy removed, i.e. the cone at `⟨0⟩` of a spine.
    pub fn spine_rest(&self) -> TreeSchema {
        match self {
            TreeSchema::Spine(h, t) => {
                let rest = if h.is_empty() {
                    TreeSchema::Spine(Vec::new(), t.shift(1))
                } else {
                    TreeSchema::Spine(h[1..].to_vec(), t.clone())
                };
                if rest.is_empty() {
                    TreeSchema::Empty
                } else {
                    rest
                }
            }
            _ => TreeSchema::Empty,
        }
    }

    /// Cone at the one-element sequence `⟨i⟩`: `{v : ⟨i⟩⌢v ∈ self}`.
    pub fn child(&self, i: u64) -> TreeSchema {
        let c = match self {
            TreeSchema::Empty | TreeSchema::Eps => TreeSchema::Empty,
            TreeSchema::Chain => {
                if i == 0 {
                    TreeSchema::rooted(TreeSchema::Chain)
                } else {
                    TreeSchema::Empty
                }
            }
            TreeSchema::Full => TreeSchema::Full,
            TreeSchema::Rooted(x) => x.child(i),
            TreeSchema::Fan(..) => self.part(i),
            TreeSchema::Spine(..) => match i {
                0 => self.spine_rest(),
                1 => self.part(0),
                _ => TreeSchema::Empty,
            },
        };
        if c.is_empty() {
            TreeSchema::Empty
        } else {
            c
        }
    }

    /// `{v : u⌢v ∈ self}`, re-rooted at `u`.
    pub fn cone(&self, u: &[u64]) -> TreeSchema {
        let mut cur = self.clone();
        for &i in u {
            if matches!(cur, TreeSchema::Empty) {
                break;
            }
            cur = cur.child(i);
        }
        cur
    }

    pub fn contains_root(&self) -> bool {
        matches!(
            self,
            TreeSchema::Eps | TreeSchema::Full | TreeSchema::Rooted(_)
        )
    }

    pub fn member(&self, u: &[u64]) -> bool {
        self.cone(u).contains_root()
    }

    /// Membership in the generated tree `⟨self⟩`.
    pub fn in_closure(&self, u: &[u64]) -> bool {
        !self.cone(u).is_empty()
    }

    /// The shortest element, lexicographically least among the shortest.
    pub fn least(&self) -> Option<Seq> {
        match self {
            TreeSchema::Empty => None,
            TreeSchema::Eps | TreeSchema::Full | TreeSchema::Rooted(_) => Some(Seq::empty()),
            TreeSchema::Chain => Some(Seq(vec![0])),
            TreeSchema::Fan(h, t) | TreeSchema::Spine(h, t) => {
                // Along a diagonal tail the minimal length strictly increases
                // with the block index, so the first tail block is the only
                // tail candidate; for a constant tail this is immediate.
                let k = h.len() as u64;
                let last = if t.is_empty() { k } else { k + 1 };
                let is_fan = matches!(self, TreeSchema::Fan(..));
                (0..last)
                    .filter_map(|i| {
                        let inner = self.part(i).least()?;
                        let prefix = if is_fan {
                            PathStep::FanBlock(i).prefix()
                        } else {
                            PathStep::SpineCopy(i).prefix()
                        };
                        Some(Seq(prefix).concat(&inner))
                    })
                    .min_by(|a, b| a.shortlex_cmp(b))
            }
        }
    }

    /// Maximal element length, `None` when unbounded.
    pub fn max_len(&self) -> Option<usize> {
        match self {
            TreeSchema::Empty | TreeSchema::Eps => Some(0),
            TreeSchema::Chain | TreeSchema::Full => None,
            TreeSchema::Rooted(x) => x.max_len(),
            TreeSchema::Fan(h, t) => {
                let mut m = 0;
                for x in h {
                    if !x.is_empty() {
                        m = m.max(1 + x.max_len()?);
                    }
                }
                match t {
                    SchemaSeq::Const(x) if x.is_empty() => {}
                    SchemaSeq::Const(x) => m = m.max(1 + x.max_len()?),
                    SchemaSeq::Diag { .. } => return None,
                }
                Some(m)
            }
            TreeSchema::Spine(h, t) => {
                if !t.is_empty() {
                    return None;
                }
                let mut m = 0;
                for (n, x) in h.iter().enumerate() {
                    if !x.is_empty() {
                        m = m.max(n + 1 + x.max_len()?);
                    }
                }
                Some(m)
            }
        }
    }
}

fn compile_cache() -> &'static Mutex<HashMap<CanonicalForm, Arc<TreeSchema>>> {
    static CACHE: OnceLock<Mutex<HashMap<CanonicalForm, Arc<TreeSchema>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The schema whose `I_wf` restriction realizes the canonical form `c`.
pub fn compile_form(c: &CanonicalForm) -> TreeSchema {
    if let Some(t) = compile_cache().lock().expect("compile cache").get(c) {
        return (**t).clone();
    }
    let rank = &c.rank;
    let t = match c.kind {
        FormKind::P if rank.is_zero() => {
            TreeSchema::fan(Vec::new(), SchemaSeq::constant(TreeSchema::Eps))
        }
        FormKind::Q if rank.is_zero() => TreeSchema::Chain,
        FormKind::P => match rank.pred() {
            Some(mu) => TreeSchema::fan(
                Vec::new(),
                SchemaSeq::constant(compile_form(&CanonicalForm::q(mu))),
            ),
            None => TreeSchema::fan(
                Vec::new(),
                SchemaSeq::diag(DiagKind::Q, rank.clone()).expect("limit rank"),
            ),
        },
        FormKind::Q => match rank.pred() {
            Some(mu) => TreeSchema::spine(
                Vec::new(),
                SchemaSeq::constant(compile_form(&CanonicalForm::p(mu))),
            ),
            None => TreeSchema::spine(
                Vec::new(),
                SchemaSeq::diag(DiagKind::P, rank.clone()).expect("limit rank"),
            ),
        },
        FormKind::PQ => TreeSchema::fan(
            vec![
                compile_form(&CanonicalForm::p(rank.clone())),
                compile_form(&CanonicalForm::q(rank.clone())),
            ],
            SchemaSeq::empty(),
        ),
    };
    compile_cache()
        .lock()
        .expect("compile cache")
        .insert(c.clone(), Arc::new(t.clone()));
    t
}

pub fn compile(e: &IdealExpr) -> Result<TreeSchema> {
    Ok(compile_form(&normalize(e)?))
}

impl fmt::Display for TreeSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeSchema::Empty => write!(f, "empty"),
            TreeSchema::Eps => write!(f, "eps"),
            TreeSchema::Chain => write!(f, "chain"),
            TreeSchema::Full => write!(f, "full"),
            TreeSchema::Rooted(x) => write!(f, "root({x})"),
            TreeSchema::Fan(h, t) | TreeSchema::Spine(h, t) => {
                let name = if matches!(self, TreeSchema::Fan(..)) {
                    "fan"
                } else {
                    "spine"
                };
                write!(f, "{name}([")?;
                for (i, x) in h.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]; {t})")
            }
        }
    }
}

impl fmt::Display for SchemaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaSeq::Const(t) => write!(f, "const({t})"),
            SchemaSeq::Diag {
                kind,
                limit,
                offset,
            } => {
                let name = match kind {
                    DiagKind::Q => "qdiag",
                    DiagKind::P => "pdiag",
                };
                if *offset == 0 {
                    write!(f, "{name}({limit})")
                } else {
                    write!(f, "{name}({limit}, {offset})")
                }
            }
        }
    }
}

impl Serialize for TreeSchema {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
