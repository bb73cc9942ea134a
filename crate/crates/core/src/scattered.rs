//! Hausdorff terms for countable linear orders and the classification of
//! `WO(ℚ)` restricted to an order of each type.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ideal::{combine, CanonicalForm};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinTerm {
    /// ω.
    Nat,
    /// The reversed order.
    Rev(Box<LinTerm>),
    /// Finite concatenation.
    Cat(Vec<LinTerm>),
    /// ω-indexed concatenation: the heads, then the tail repeated forever.
    OmegaCat(Vec<LinTerm>, Box<LinTerm>),
    /// The rationals.
    RatQ,
}

impl LinTerm {
    pub fn rev(t: LinTerm) -> Self {
        LinTerm::Rev(Box::new(t))
    }

    pub fn omega_cat(heads: Vec<LinTerm>, tail: LinTerm) -> Self {
        LinTerm::OmegaCat(heads, Box::new(tail))
    }

    pub fn size(&self) -> usize {
        match self {
            LinTerm::Nat | LinTerm::RatQ => 1,
            LinTerm::Rev(t) => 1 + t.size(),
            LinTerm::Cat(ts) => 1 + ts.iter().map(Self::size).sum::<usize>(),
            LinTerm::OmegaCat(hs, t) => 1 + t.size() + hs.iter().map(Self::size).sum::<usize>(),
        }
    }

    /// Summand `n` of an ω-concatenation.
    fn block(&self, n: usize) -> &LinTerm {
        match self {
            LinTerm::OmegaCat(hs, t) => hs.get(n).unwrap_or(t),
            _ => self,
        }
    }
}

/// One step from a term to a subterm on the way to a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RouteStep {
    Rev,
    /// Summand of a concatenation or block of an ω-concatenation.
    Into(usize),
}

/// `x ↦ x` on a copy of ℚ inside the order, reached through `route`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QEmbedding {
    pub route: Vec<RouteStep>,
}

impl QEmbedding {
    pub fn point(&self, q: &BigRational) -> Point {
        self.route
            .iter()
            .rev()
            .fold(Point::Rat(q.clone()), |p, step| match step {
                RouteStep::Rev => p,
                RouteStep::Into(j) => Point::In(*j, Box::new(p)),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "data")]
pub enum WoClass {
    Scattered(CanonicalForm),
    NonScattered(QEmbedding),
}

pub fn scattered_check(t: &LinTerm) -> bool {
    rat_route(t).is_none()
}

fn rat_route(t: &LinTerm) -> Option<Vec<RouteStep>> {
    let within = |step: RouteStep, sub: &LinTerm| {
        rat_route(sub).map(|mut r| {
            r.insert(0, step);
            r
        })
    };
    match t {
        LinTerm::Nat => None,
        LinTerm::RatQ => Some(Vec::new()),
        LinTerm::Rev(x) => within(RouteStep::Rev, x),
        LinTerm::Cat(ts) => ts
            .iter()
            .enumerate()
            .find_map(|(j, x)| within(RouteStep::Into(j), x)),
        LinTerm::OmegaCat(hs, tail) => hs
            .iter()
            .chain(std::iter::once(&**tail))
            .enumerate()
            .find_map(|(j, x)| within(RouteStep::Into(j), x)),
    }
}

pub fn wo_classify(t: &LinTerm) -> WoClass {
    if let Some(route) = rat_route(t) {
        return WoClass::NonScattered(QEmbedding { route });
    }
    WoClass::Scattered(scattered_form(t))
}

fn scattered_form(t: &LinTerm) -> CanonicalForm {
    match t {
        LinTerm::Nat => CanonicalForm::pow(),
        LinTerm::Rev(x) => scattered_form(x).perp(),
        LinTerm::Cat(ts) => ts
            .iter()
            .map(scattered_form)
            .reduce(|a, b| combine(&a, &b))
            .expect("nonempty concatenation"),
        LinTerm::OmegaCat(hs, tail) => hs
            .iter()
            .map(scattered_form)
            .fold(scattered_form(tail).omega_sum(), |a, b| combine(&a, &b)),
        LinTerm::RatQ => unreachable!("scattered terms contain no copy of the rationals"),
    }
}

/// The reversed order with `rev` pushed inward as far as the grammar allows.
pub fn reverse(t: &LinTerm) -> LinTerm {
    match t {
        LinTerm::Nat | LinTerm::OmegaCat(..) => LinTerm::rev(t.clone()),
        LinTerm::Rev(x) => (**x).clone(),
        LinTerm::Cat(ts) => LinTerm::Cat(ts.iter().rev().map(reverse).collect()),
        LinTerm::RatQ => LinTerm::RatQ,
    }
}

/// The reversal `t*` together with the check that it classifies to the
/// orthogonal of `t`'s class (both non-scattered when `t` is).
pub fn wo_self_dual(t: &LinTerm) -> (LinTerm, bool) {
    let r = reverse(t);
    let holds = match (wo_classify(t), wo_classify(&r)) {
        (WoClass::Scattered(a), WoClass::Scattered(b)) => b == a.perp(),
        (WoClass::NonScattered(_), WoClass::NonScattered(_)) => true,
        _ => false,
    };
    (r, holds)
}

/// A point of an order term, addressed by the same route shape as [`RouteStep`]
/// with `Rev` left implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Point {
    Nat(u64),
    Rat(#[serde(serialize_with = "rat_str")] BigRational),
    In(usize, Box<Point>),
}

fn rat_str<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

/// The order of `t` on two of its points.
pub fn compare_points(t: &LinTerm, a: &Point, b: &Point) -> Ordering {
    match (t, a, b) {
        (LinTerm::Nat, Point::Nat(x), Point::Nat(y)) => x.cmp(y),
        (LinTerm::RatQ, Point::Rat(x), Point::Rat(y)) => x.cmp(y),
        (LinTerm::Rev(x), _, _) => compare_points(x, a, b).reverse(),
        (LinTerm::Cat(ts), Point::In(i, p), Point::In(j, q)) => {
            i.cmp(j).then_with(|| compare_points(&ts[*i], p, q))
        }
        (LinTerm::OmegaCat(..), Point::In(i, p), Point::In(j, q)) => {
            i.cmp(j).then_with(|| compare_points(t.block(*i), p, q))
        }
        _ => panic!("point does not belong to {t}"),
    }
}

fn unpair(i: u64) -> (u64, u64) {
    let mut w = 0u64;
    while (w + 1) * (w + 2) / 2 <= i {
        w += 1;
    }
    let j = i - w * (w + 1) / 2;
    (w - j, j)
}

/// Stern's diatomic sequence.
fn fusc(mut n: u64) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    while n > 0 {
        if n & 1 == 1 {
            b += a;
        } else {
            a += b;
        }
        n >>= 1;
    }
    b
}

/// A fixed enumeration of ℚ: 0, then ±q_k along the Calkin–Wilf sequence.
pub fn rational_at(i: u64) -> BigRational {
    if i == 0 {
        return BigRational::zero();
    }
    let k = i.div_ceil(2);
    let q = BigRational::new(BigInt::from(fusc(k)), BigInt::from(fusc(k + 1)));
    if i % 2 == 1 {
        q
    } else {
        -q
    }
}

/// The `i`-th point of `t` in a fixed enumeration of all its points.
pub fn point_at(t: &LinTerm, i: u64) -> Point {
    match t {
        LinTerm::Nat => Point::Nat(i),
        LinTerm::RatQ => Point::Rat(rational_at(i)),
        LinTerm::Rev(x) => point_at(x, i),
        LinTerm::Cat(ts) => {
            let m = ts.len() as u64;
            let j = (i % m) as usize;
            Point::In(j, Box::new(point_at(&ts[j], i / m)))
        }
        LinTerm::OmegaCat(..) => {
            let (n, j) = unpair(i);
            Point::In(n as usize, Box::new(point_at(t.block(n as usize), j)))
        }
    }
}

type End = Option<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2_inv(k: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// Cut `n` of an increasing sequence of cuts starting at `lo` inside `(lo, hi)`.
fn omega_cut(lo: &End, hi: &End, n: u64) -> End {
    if n == 0 {
        return lo.clone();
    }
    Some(match (lo, hi) {
        (Some(l), Some(h)) => l + (h - l) * (BigRational::one() - pow2_inv(n)),
        (Some(l), None) => l + rat(n as i64),
        (None, None) => rat(n as i64),
        (None, Some(h)) => h - BigRational::new(BigInt::one(), BigInt::from(n)),
    })
}

fn finite_cut(lo: &End, hi: &End, j: usize, m: usize) -> End {
    if j == 0 {
        return lo.clone();
    }
    if j == m {
        return hi.clone();
    }
    Some(match (lo, hi) {
        (Some(l), Some(h)) => l + (h - l) * BigRational::new(BigInt::from(j), BigInt::from(m)),
        (Some(l), None) => l + rat(j as i64),
        (None, None) => rat(j as i64),
        (None, Some(h)) => h - rat((m - j) as i64),
    })
}

/// Order-preserving map from ℚ onto a subset of `(0, ∞)`.
fn positive(q: &BigRational) -> BigRational {
    if q.is_negative() {
        (BigRational::one() - q).recip()
    } else {
        q + BigRational::one()
    }
}

fn place(t: &LinTerm, p: &Point, lo: &End, hi: &End) -> BigRational {
    match (t, p) {
        (LinTerm::Nat, Point::Nat(i)) => match (lo, hi) {
            (None, None) => rat(*i as i64),
            (Some(l), None) => l + rat(*i as i64 + 1),
            (None, Some(h)) => h - BigRational::new(BigInt::one(), BigInt::from(*i + 1)),
            (Some(l), Some(h)) => l + (h - l) * (BigRational::one() - pow2_inv(*i + 1)),
        },
        (LinTerm::RatQ, Point::Rat(q)) => match (lo, hi) {
            (None, None) => q.clone(),
            (Some(l), None) => l + positive(q),
            (None, Some(h)) => h - positive(&-q),
            (Some(l), Some(h)) => {
                let s = (BigRational::one() + q / (BigRational::one() + q.abs())) / rat(2);
                l + (h - l) * s
            }
        },
        (LinTerm::Rev(x), _) => {
            let neg = |e: &End| e.as_ref().map(|v| -v);
            -place(x, p, &neg(hi), &neg(lo))
        }
        (LinTerm::Cat(ts), Point::In(j, q)) => {
            let m = ts.len();
            place(
                &ts[*j],
                q,
                &finite_cut(lo, hi, *j, m),
                &finite_cut(lo, hi, j + 1, m),
            )
        }
        (LinTerm::OmegaCat(..), Point::In(n, q)) => {
            let n = *n as u64;
            place(
                t.block(n as usize),
                q,
                &omega_cut(lo, hi, n),
                &omega_cut(lo, hi, n + 1),
            )
        }
        _ => panic!("point does not belong to {t}"),
    }
}

/// The rational a point of `t` is sent to by the fixed embedding.
pub fn embed_point(t: &LinTerm, p: &Point) -> BigRational {
    place(t, p, &None, &None)
}

/// Images of the first `n` enumerated points; prefix-stable in `n`.
pub fn rationalize(t: &LinTerm, n: usize) -> Vec<BigRational> {
    (0..n as u64)
        .map(|i| embed_point(t, &point_at(t, i)))
        .collect()
}

impl fmt::Display for LinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, ts: &[LinTerm]| -> fmt::Result {
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
            Ok(())
        };
        match self {
            LinTerm::Nat => write!(f, "N"),
            LinTerm::RatQ => write!(f, "QQ"),
            LinTerm::Rev(t) => write!(f, "rev({t})"),
            LinTerm::Cat(ts) => {
                write!(f, "cat(")?;
                list(f, ts)?;
                write!(f, ")")
            }
            LinTerm::OmegaCat(hs, t) => {
                write!(f, "osum([")?;
                list(f, hs)?;
                write!(f, "]; {t})")
            }
        }
    }
}

impl Serialize for LinTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;
    use LinTerm::*;

    fn class(t: &LinTerm) -> CanonicalForm {
        match wo_classify(t) {
            WoClass::Scattered(c) => c,
            WoClass::NonScattered(_) => panic!("{t} is scattered"),
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(class(&Nat), CanonicalForm::pow());
        assert_eq!(class(&LinTerm::rev(Nat)), CanonicalForm::fin());
        let o = LinTerm::omega_cat(vec![], LinTerm::rev(Nat));
        assert_eq!(class(&o), CanonicalForm::p(Ordinal::one()));
        let c = Cat(vec![Nat, LinTerm::rev(Nat)]);
        assert_eq!(class(&c), CanonicalForm::pq(Ordinal::zero()));
        assert_eq!(
            wo_classify(&RatQ),
            WoClass::NonScattered(QEmbedding { route: vec![] })
        );
    }

    #[test]
    fn scattered_examples() {
        assert!(scattered_check(&LinTerm::rev(LinTerm::omega_cat(
            vec![],
            Nat
        ))));
        assert!(!scattered_check(&Cat(vec![Nat, RatQ])));
        assert!(scattered_check(&Nat));
    }

    #[test]
    fn self_dual_examples() {
        assert_eq!(wo_self_dual(&Nat), (LinTerm::rev(Nat), true));
        let o = LinTerm::omega_cat(vec![], LinTerm::rev(Nat));
        let (r, ok) = wo_self_dual(&o);
        assert!(ok);
        assert_eq!(class(&r), CanonicalForm::q(Ordinal::one()));
        assert_eq!(wo_self_dual(&RatQ), (RatQ, true));
    }

    #[test]
    fn rationalize_examples() {
        assert_eq!(rationalize(&Nat, 3), vec![rat(0), rat(1), rat(2)]);
        let r = rationalize(&LinTerm::rev(Nat), 3);
        assert!(r[0] > r[1] && r[1] > r[2]);
        let c = rationalize(&Cat(vec![Nat, LinTerm::rev(Nat)]), 4);
        // points alternate between the two summands
        assert!(c[0] < c[2] && c[2] < c[3] && c[3] < c[1]);
    }

    #[test]
    fn enumeration_of_rationals_starts_as_expected() {
        let first: Vec<String> = (0..7).map(|i| rational_at(i).to_string()).collect();
        assert_eq!(first, ["0", "1", "-1", "1/2", "-1/2", "2", "-2"]);
    }

    #[test]
    fn unpair_is_a_bijection_on_a_prefix() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..55 {
            assert!(seen.insert(unpair(i)));
        }
        assert!((0..10).all(|n| (0..10 - n).all(|j| seen.contains(&(n, j)))));
    }
}
