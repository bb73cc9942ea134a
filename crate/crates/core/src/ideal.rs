//! Expressions over the family generated from `FIN` by countable direct sums
//! and orthogonals, and their normalizer to `P(α)`, `Q(α)` or `P(α)⊕Q(α)`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealExpr {
    Fin,
    Pow,
    P(Ordinal),
    Q(Ordinal),
    Perp(Box<IdealExpr>),
    SumFin(Vec<IdealExpr>),
    OmegaSum(Box<IdealExpr>),
    LimSum(Ordinal),
    /// Finitely many heads followed by an infinite tail (`OmegaSum` or `LimSum`).
    MixSum(Vec<IdealExpr>, Box<IdealExpr>),
}

impl IdealExpr {
    pub fn perp(e: IdealExpr) -> Self {
        IdealExpr::Perp(Box::new(e))
    }

    pub fn omega(e: IdealExpr) -> Self {
        IdealExpr::OmegaSum(Box::new(e))
    }

    pub fn sum(es: Vec<IdealExpr>) -> Result<Self> {
        if es.is_empty() {
            return Err(Error::Malformed("sum needs at least one summand".into()));
        }
        Ok(IdealExpr::SumFin(es))
    }

    pub fn mix(heads: Vec<IdealExpr>, tail: IdealExpr) -> Result<Self> {
        match tail {
            IdealExpr::OmegaSum(_) | IdealExpr::LimSum(_) => {
                Ok(IdealExpr::MixSum(heads, Box::new(tail)))
            }
            _ => Err(Error::Malformed(
                "mix tail must be omega(..) or limsum(..)".into(),
            )),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            IdealExpr::Fin | IdealExpr::Pow | IdealExpr::P(_) | IdealExpr::Q(_) => 1,
            IdealExpr::LimSum(_) => 1,
            IdealExpr::Perp(e) | IdealExpr::OmegaSum(e) => 1 + e.size(),
            IdealExpr::SumFin(es) => 1 + es.iter().map(Self::size).sum::<usize>(),
            IdealExpr::MixSum(hs, t) => 1 + t.size() + hs.iter().map(Self::size).sum::<usize>(),
        }
    }

    pub fn normalize(&self) -> Result<CanonicalForm> {
        normalize(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormKind {
    P,
    Q,
    PQ,
}

/// One of `P(α)`, `Q(α)` or `PQ(α) = P(α)⊕Q(α)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForm {
    pub kind: FormKind,
    pub rank: Ordinal,
}

impl CanonicalForm {
    pub fn new(kind: FormKind, rank: Ordinal) -> Self {
        CanonicalForm { kind, rank }
    }

    pub fn p(rank: Ordinal) -> Self {
        Self::new(FormKind::P, rank)
    }

    pub fn q(rank: Ordinal) -> Self {
        Self::new(FormKind::Q, rank)
    }

    pub fn pq(rank: Ordinal) -> Self {
        Self::new(FormKind::PQ, rank)
    }

    /// `POW`, the trivial ideal.
    pub fn pow() -> Self {
        Self::p(Ordinal::zero())
    }

    /// `FIN`.
    pub fn fin() -> Self {
        Self::q(Ordinal::zero())
    }

    pub fn combine(&self, other: &CanonicalForm) -> CanonicalForm {
        combine(self, other)
    }

    pub fn perp(&self) -> CanonicalForm {
        perp_c(self)
    }

    /// Normal form of the ω-sum of copies of this ideal.
    pub fn omega_sum(&self) -> CanonicalForm {
        match self.kind {
            FormKind::P => self.clone(),
            FormKind::Q | FormKind::PQ => CanonicalForm::p(self.rank.succ()),
        }
    }

    /// Expression that denotes exactly this form.
    pub fn to_expr(&self) -> IdealExpr {
        match self.kind {
            FormKind::P => IdealExpr::P(self.rank.clone()),
            FormKind::Q => IdealExpr::Q(self.rank.clone()),
            FormKind::PQ => IdealExpr::SumFin(vec![
                IdealExpr::P(self.rank.clone()),
                IdealExpr::Q(self.rank.clone()),
            ]),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.rank.is_zero()) {
            (FormKind::P, true) => write!(f, "POW"),
            (FormKind::Q, true) => write!(f, "FIN"),
            (FormKind::P, false) => write!(f, "P({})", self.rank),
            (FormKind::Q, false) => write!(f, "Q({})", self.rank),
            (FormKind::PQ, _) => write!(f, "PQ({})", self.rank),
        }
    }
}

/// Direct sum of two canonical forms: the higher rank absorbs the lower one,
/// and at equal rank kinds join (`P+Q = PQ`).
pub fn combine(a: &CanonicalForm, b: &CanonicalForm) -> CanonicalForm {
    match a.rank.cmp(&b.rank) {
        Ordering::Greater => a.clone(),
        Ordering::Less => b.clone(),
        Ordering::Equal => {
            let kind = if a.kind == b.kind {
                a.kind
            } else {
                FormKind::PQ
            };
            CanonicalForm::new(kind, a.rank.clone())
        }
    }
}

pub fn perp_c(c: &CanonicalForm) -> CanonicalForm {
    let kind = match c.kind {
        FormKind::P => FormKind::Q,
        FormKind::Q => FormKind::P,
        FormKind::PQ => FormKind::PQ,
    };
    CanonicalForm::new(kind, c.rank.clone())
}

/// Folds `combine` over an iterator; `None` for an empty sum.
pub fn combine_all<'a, I>(forms: I) -> Option<CanonicalForm>
where
    I: IntoIterator<Item = &'a CanonicalForm>,
{
    forms.into_iter().fold(None, |acc, c| match acc {
        None => Some(c.clone()),
        Some(a) => Some(combine(&a, c)),
    })
}

pub fn normalize(e: &IdealExpr) -> Result<CanonicalForm> {
    Ok(match e {
        IdealExpr::Fin => CanonicalForm::fin(),
        IdealExpr::Pow => CanonicalForm::pow(),
        IdealExpr::P(a) => CanonicalForm::p(a.clone()),
        IdealExpr::Q(a) => CanonicalForm::q(a.clone()),
        IdealExpr::Perp(x) => perp_c(&normalize(x)?),
        IdealExpr::SumFin(es) => {
            let forms = es.iter().map(normalize).collect::<Result<Vec<_>>>()?;
            combine_all(&forms).ok_or_else(|| Error::Malformed("empty sum".into()))?
        }
        IdealExpr::OmegaSum(x) => normalize(x)?.omega_sum(),
        IdealExpr::LimSum(a) => {
            if !a.is_limit() {
                return Err(Error::NotLimit(a.clone()));
            }
            CanonicalForm::p(a.clone())
        }
        IdealExpr::MixSum(heads, tail) => {
            let mut acc = normalize(tail)?;
            for h in heads {
                acc = combine(&acc, &normalize(h)?);
            }
            acc
        }
    })
}

pub fn b_rank(e: &IdealExpr) -> Result<Ordinal> {
    Ok(normalize(e)?.rank)
}

pub fn iso_check(a: &IdealExpr, b: &IdealExpr) -> Result<bool> {
    Ok(normalize(a)? == normalize(b)?)
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, es: &[IdealExpr]) -> fmt::Result {
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        }
        match self {
            IdealExpr::Fin => write!(f, "FIN"),
            IdealExpr::Pow => write!(f, "POW"),
            IdealExpr::P(a) => write!(f, "P({a})"),
            IdealExpr::Q(a) => write!(f, "Q({a})"),
            IdealExpr::Perp(e) => write!(f, "perp({e})"),
            IdealExpr::SumFin(es) => {
                write!(f, "sum(")?;
                list(f, es)?;
                write!(f, ")")
            }
            IdealExpr::OmegaSum(e) => write!(f, "omega({e})"),
            IdealExpr::LimSum(a) => write!(f, "limsum({a})"),
            IdealExpr::MixSum(hs, t) => {
                write!(f, "mix(")?;
                list(f, hs)?;
                write!(f, "; {t})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use IdealExpr::*;

    fn n(k: u64) -> Ordinal {
        Ordinal::nat(k)
    }

    fn perp(e: IdealExpr) -> IdealExpr {
        IdealExpr::perp(e)
    }

    fn omega(e: IdealExpr) -> IdealExpr {
        IdealExpr::omega(e)
    }

    #[test]
    fn combine_examples() {
        let w = Ordinal::omega();
        assert_eq!(
            combine(&CanonicalForm::p(w.clone()), &CanonicalForm::q(n(3))),
            CanonicalForm::p(w)
        );
        assert_eq!(
            combine(&CanonicalForm::p(n(2)), &CanonicalForm::q(n(2))),
            CanonicalForm::pq(n(2))
        );
        assert_eq!(
            combine(&CanonicalForm::q(n(1)), &CanonicalForm::q(n(1))),
            CanonicalForm::q(n(1))
        );
        assert_eq!(
            combine(&CanonicalForm::pq(n(1)), &CanonicalForm::p(n(1))),
            CanonicalForm::pq(n(1))
        );
    }

    #[test]
    fn perp_examples() {
        assert_eq!(perp_c(&CanonicalForm::p(n(5))), CanonicalForm::q(n(5)));
        assert_eq!(perp_c(&CanonicalForm::pq(n(2))), CanonicalForm::pq(n(2)));
        assert_eq!(perp_c(&CanonicalForm::fin()), CanonicalForm::pow());
    }

    #[test]
    fn pq_perp_matches_finite_sum_law() {
        // (P⊕Q)^⊥ = P^⊥ ⊕ Q^⊥ = Q ⊕ P
        let e = perp(SumFin(vec![P(n(2)), Q(n(2))]));
        let distributed = SumFin(vec![perp(P(n(2))), perp(Q(n(2)))]);
        assert_eq!(normalize(&e).unwrap(), CanonicalForm::pq(n(2)));
        assert_eq!(normalize(&distributed).unwrap(), CanonicalForm::pq(n(2)));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&omega(Fin)).unwrap(), CanonicalForm::p(n(1)));
        let p2 = omega(perp(omega(Fin)));
        assert_eq!(normalize(&p2).unwrap(), CanonicalForm::p(n(2)));
        assert_eq!(normalize(&perp(p2)).unwrap(), CanonicalForm::q(n(2)));
        assert_eq!(
            normalize(&LimSum(Ordinal::omega())).unwrap(),
            CanonicalForm::p(Ordinal::omega())
        );
        assert_eq!(
            normalize(&perp(perp(P(n(5))))).unwrap(),
            CanonicalForm::p(n(5))
        );
    }

    #[test]
    fn limsum_requires_limit() {
        assert_eq!(normalize(&LimSum(n(4))), Err(Error::NotLimit(n(4))));
        let m = IdealExpr::mix(vec![Fin], LimSum(n(2))).unwrap();
        assert!(matches!(normalize(&m), Err(Error::NotLimit(_))));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(b_rank(&Fin).unwrap(), n(0));
        assert_eq!(b_rank(&omega(Q(n(3)))).unwrap(), n(4));
        let w2 = Ordinal::monomial(Ordinal::one(), 2);
        assert_eq!(b_rank(&LimSum(w2.clone())).unwrap(), w2);
    }

    #[test]
    fn iso_examples() {
        assert!(!iso_check(&P(n(1)), &Q(n(1))).unwrap());
        assert!(iso_check(&SumFin(vec![P(n(2)), Q(n(1))]), &P(n(2))).unwrap());
        let e = perp(omega(Fin));
        assert!(iso_check(&e, &e).unwrap());
    }

    #[test]
    fn mix_sums() {
        let m = IdealExpr::mix(vec![Pow, Q(n(3))], omega(Fin)).unwrap();
        assert_eq!(normalize(&m).unwrap(), CanonicalForm::q(n(3)));
        assert!(IdealExpr::mix(vec![], Fin).is_err());
        assert!(IdealExpr::sum(vec![]).is_err());
    }

    #[test]
    fn display_aliases() {
        assert_eq!(CanonicalForm::pow().to_string(), "POW");
        assert_eq!(CanonicalForm::fin().to_string(), "FIN");
        assert_eq!(CanonicalForm::pq(n(0)).to_string(), "PQ(0)");
        assert_eq!(CanonicalForm::p(Ordinal::omega()).to_string(), "P(w)");
    }
}
