//! Countable ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is a finite list of `(exponent, coefficient)` pairs with
//! strictly decreasing exponents, each exponent itself an [`Ordinal`].
//! The empty list is zero.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdKind {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// ω^e.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal {
            terms: vec![(e, 1)],
        }
    }

    /// ω^e · c.
    pub fn monomial(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds an ordinal from CNF terms, rejecting lists that are not in normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(Error::Malformed("zero coefficient in CNF".into()));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::Malformed(
                "CNF exponents must strictly decrease".into(),
            ));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn kind(&self) -> OrdKind {
        match self.terms.last() {
            None => OrdKind::Zero,
            Some((e, _)) if e.is_zero() => OrdKind::Successor,
            Some(_) => OrdKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.kind() == OrdKind::Limit
    }

    /// The natural number this ordinal equals, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Immediate predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if self.kind() != OrdKind::Successor {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a term");
        last.1 -= 1;
        if last.1 == 0 {
            terms.pop();
        }
        Some(Ordinal { terms })
    }

    /// Ordinal addition; terms of `self` below the leading exponent of `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = *lead_c;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => merged += c,
                Ordering::Less => break,
            }
        }
        terms.push((lead.clone(), merged));
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    /// The canonical fundamental sequence of a limit ordinal:
    /// `(β+ω^{γ+1})[n] = β+ω^γ·(n+1)` and `(β+ω^λ)[n] = β+ω^{λ[n]}`.
    pub fn fund(&self, n: u64) -> Result<Ordinal> {
        if !self.is_limit() {
            return Err(Error::NotLimit(self.clone()));
        }
        let mut base = self.terms.clone();
        let (e, c) = base.pop().expect("limit has a term");
        if c > 1 {
            base.push((e.clone(), c - 1));
        }
        let base = Ordinal { terms: base };
        let step = match e.pred() {
            Some(g) => Ordinal::monomial(g, n + 1),
            None => Ordinal::omega_pow(e.fund(n)?),
        };
        Ok(base.add(&step))
    }

    /// Nesting depth of exponents; zero for naturals.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| if e.is_zero() { 0 } else { 1 + e.height() })
            .max()
            .unwrap_or(0)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if *e == Ordinal::one() {
                write!(f, "w")?;
            } else if e.as_nat().is_some() || *e == Ordinal::omega() {
                write!(f, "w^{e}")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
