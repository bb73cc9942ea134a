//! Seeded random terms for the law suite and the acceptance tests.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ideal::{CanonicalForm, FormKind, IdealExpr};
use crate::membership::{subset_of, Containment, QueryTerm};
use crate::ordinal::Ordinal;
use crate::scattered::LinTerm;
use crate::tree::{compile, DiagKind, SchemaSeq, Seq, TreeSchema};

use super::{enumerate_schema, Budget};

/// `ω²·a + ω·b + c` with small coefficients.
pub fn ordinal_below_w3<R: Rng>(rng: &mut R) -> Ordinal {
    let mut terms = Vec::new();
    for e in [2u64, 1, 0] {
        let c = rng.gen_range(0..4);
        if c > 0 {
            terms.push((Ordinal::nat(e), c));
        }
    }
    Ordinal::from_terms(terms).expect("descending exponents")
}

/// A limit below `ω³`.
pub fn limit_below_w3<R: Rng>(rng: &mut R) -> Ordinal {
    let e = rng.gen_range(1..=2u64);
    let base = if e == 2 {
        Ordinal::monomial(Ordinal::nat(2), rng.gen_range(0..2))
    } else {
        Ordinal::monomial(Ordinal::nat(2), rng.gen_range(0..2))
            .add(&Ordinal::monomial(Ordinal::one(), rng.gen_range(0..3)))
    };
    base.add(&Ordinal::monomial(Ordinal::nat(e), rng.gen_range(1..3)))
}

/// A rank that keeps compiled schemas small: mostly finite, sometimes a limit.
fn small_rank<R: Rng>(rng: &mut R) -> Ordinal {
    match rng.gen_range(0..6) {
        0 => limit_below_w3(rng),
        1 => ordinal_below_w3(rng),
        _ => Ordinal::nat(rng.gen_range(0..4)),
    }
}

pub fn canonical_form<R: Rng>(rng: &mut R) -> CanonicalForm {
    let kind = *[FormKind::P, FormKind::Q, FormKind::PQ]
        .choose(rng)
        .expect("nonempty");
    CanonicalForm::new(kind, ordinal_below_w3(rng))
}

/// An expression with at most `size` constructor nodes (`size ≥ 1`).
pub fn ideal_expr<R: Rng>(rng: &mut R, size: usize) -> IdealExpr {
    let leaf = |rng: &mut R| match rng.gen_range(0..5) {
        0 => IdealExpr::Fin,
        1 => IdealExpr::Pow,
        2 => IdealExpr::P(small_rank(rng)),
        3 => IdealExpr::Q(small_rank(rng)),
        _ => IdealExpr::LimSum(limit_below_w3(rng)),
    };
    if size <= 1 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let room = size - 1;
    match rng.gen_range(0..4) {
        0 => IdealExpr::perp(ideal_expr(rng, room)),
        1 => IdealExpr::omega(ideal_expr(rng, room)),
        2 if room >= 2 => {
            let k = rng.gen_range(2..=room.min(3));
            let es = split(rng, room, k)
                .into_iter()
                .map(|s| ideal_expr(rng, s))
                .collect();
            IdealExpr::SumFin(es)
        }
        3 if room >= 2 => {
            let k = rng.gen_range(1..=room.min(3));
            let mut parts = split(rng, room, k);
            let tail_room = parts.pop().expect("k ≥ 1");
            let heads = parts.into_iter().map(|s| ideal_expr(rng, s)).collect();
            let tail = if tail_room >= 2 && rng.gen_bool(0.6) {
                IdealExpr::omega(ideal_expr(rng, tail_room - 1))
            } else {
                IdealExpr::LimSum(limit_below_w3(rng))
            };
            IdealExpr::MixSum(heads, Box::new(tail))
        }
        _ => IdealExpr::perp(ideal_expr(rng, room)),
    }
}

/// `total` split into `k` positive parts.
fn split<R: Rng>(rng: &mut R, total: usize, k: usize) -> Vec<usize> {
    let mut parts = vec![1; k];
    for _ in k..total {
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..k);
            parts[i] += 1;
        }
    }
    parts
}

fn leaf_schema<R: Rng>(rng: &mut R) -> TreeSchema {
    match rng.gen_range(0..8) {
        0 | 1 => TreeSchema::Empty,
        2 | 3 => TreeSchema::Eps,
        4..=6 => TreeSchema::Chain,
        _ => TreeSchema::Full,
    }
}

/// A schema with at most `size` nodes, possibly with a diagonal tail.
pub fn tree_schema<R: Rng>(rng: &mut R, size: usize) -> TreeSchema {
    if size <= 1 || rng.gen_bool(0.25) {
        return leaf_schema(rng);
    }
    let room = size - 1;
    if rng.gen_bool(0.15) {
        return TreeSchema::rooted(tree_schema(rng, room));
    }
    let k = rng.gen_range(1..=room.min(3));
    // k - 1 heads and a tail
    let mut parts = split(rng, room, k);
    let tail_room = parts.pop().expect("at least one part");
    let heads: Vec<TreeSchema> = parts.into_iter().map(|s| tree_schema(rng, s)).collect();
    let tail = if rng.gen_bool(0.1) {
        let kind = if rng.gen_bool(0.5) {
            DiagKind::P
        } else {
            DiagKind::Q
        };
        SchemaSeq::diag_from(kind, limit_below_w3(rng), rng.gen_range(0..3)).expect("limit ordinal")
    } else {
        SchemaSeq::constant(tree_schema(rng, tail_room))
    };
    if rng.gen_bool(0.5) {
        TreeSchema::fan(heads, tail)
    } else {
        TreeSchema::spine(heads, tail)
    }
}

/// Every schema with at most `size` nodes built from the four leaves,
/// `root`, and fans and spines with at most two heads and a constant tail.
pub fn exhaustive_schemas(size: usize) -> Vec<TreeSchema> {
    let mut by_size: Vec<Vec<TreeSchema>> = vec![Vec::new()];
    for n in 1..=size {
        let mut level = Vec::new();
        if n == 1 {
            level.extend([
                TreeSchema::Empty,
                TreeSchema::Eps,
                TreeSchema::Chain,
                TreeSchema::Full,
            ]);
        } else {
            for x in &by_size[n - 1] {
                level.push(TreeSchema::rooted(x.clone()));
            }
            // heads take `h` nodes in total, the tail the rest
            for h in 0..n - 1 {
                let tail_size = n - 1 - h;
                for heads in head_lists(&by_size, h) {
                    for tail in &by_size[tail_size] {
                        let seq = SchemaSeq::constant(tail.clone());
                        level.push(TreeSchema::Fan(heads.clone(), seq.clone()));
                        level.push(TreeSchema::Spine(heads.clone(), seq));
                    }
                }
            }
        }
        by_size.push(level);
    }
    let mut seen = HashSet::new();
    by_size
        .into_iter()
        .flatten()
        .filter(|t| seen.insert(t.clone()))
        .collect()
}

fn head_lists(by_size: &[Vec<TreeSchema>], total: usize) -> Vec<Vec<TreeSchema>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for x in &by_size[total] {
        out.push(vec![x.clone()]);
    }
    for a in 1..total {
        for x in &by_size[a] {
            for y in &by_size[total - a] {
                out.push(vec![x.clone(), y.clone()]);
            }
        }
    }
    out
}

/// A random subset of `t`, as a schema, that matches `t` constructor by
/// constructor and so is contained in it.
pub fn sub_schema<R: Rng>(rng: &mut R, t: &TreeSchema, depth: usize) -> TreeSchema {
    if depth == 0 || rng.gen_bool(0.15) {
        return if rng.gen_bool(0.5) {
            t.clone()
        } else {
            TreeSchema::Empty
        };
    }
    match t {
        TreeSchema::Empty | TreeSchema::Eps | TreeSchema::Chain => t.clone(),
        TreeSchema::Full => tree_schema(rng, 3),
        TreeSchema::Rooted(x) => {
            let inner = sub_schema(rng, x, depth - 1);
            if rng.gen_bool(0.5) {
                TreeSchema::rooted(inner)
            } else {
                inner
            }
        }
        TreeSchema::Fan(heads, tail) | TreeSchema::Spine(heads, tail) => {
            let sub_heads: Vec<TreeSchema> = heads
                .iter()
                .map(|x| sub_schema(rng, x, depth - 1))
                .collect();
            let sub_tail = match tail {
                SchemaSeq::Const(x) => SchemaSeq::constant(sub_schema(rng, x, depth - 1)),
                SchemaSeq::Diag { .. } => {
                    if rng.gen_bool(0.5) {
                        tail.clone()
                    } else {
                        SchemaSeq::empty()
                    }
                }
            };
            // a diagonal tail can also be cut to finitely many of its blocks
            let mut sub_heads = sub_heads;
            if matches!(tail, SchemaSeq::Diag { .. }) && sub_tail.is_empty() {
                for i in 0..rng.gen_range(0..3u64) {
                    sub_heads.push(sub_schema(rng, &tail.at(i), depth - 1));
                }
            }
            if matches!(t, TreeSchema::Fan(..)) {
                TreeSchema::fan(sub_heads, sub_tail)
            } else {
                TreeSchema::spine(sub_heads, sub_tail)
            }
        }
    }
}

/// A query contained in `compile(target)`, drawn from schemas, finite sets,
/// transversals and unions. Retries until containment is decided as `Yes`.
pub fn sub_query<R: Rng>(rng: &mut R, carrier: &TreeSchema) -> QueryTerm {
    loop {
        let q = sub_query_once(rng, carrier, 2);
        if subset_of(&q, carrier) == Containment::Yes {
            return q;
        }
    }
}

fn sub_query_once<R: Rng>(rng: &mut R, carrier: &TreeSchema, depth: usize) -> QueryTerm {
    match rng.gen_range(0..10) {
        0 | 1 => {
            let pool = enumerate_schema(carrier, &Budget::new(5, 4, 40));
            let k = rng.gen_range(0..=pool.len().min(4));
            let picks: Vec<Seq> = pool.choose_multiple(rng, k).cloned().collect();
            QueryTerm::finset(picks).expect("distinct picks")
        }
        2 => match sub_schema(rng, carrier, 4) {
            t @ TreeSchema::Fan(..) => QueryTerm::transversal(t).expect("fan"),
            t => QueryTerm::Schema(t),
        },
        3 if depth > 0 => QueryTerm::union(
            sub_query_once(rng, carrier, depth - 1),
            sub_query_once(rng, carrier, depth - 1),
        ),
        _ => QueryTerm::Schema(sub_schema(rng, carrier, 4)),
    }
}

/// A target expression whose compiled schema stays small.
pub fn small_target<R: Rng>(rng: &mut R) -> IdealExpr {
    ideal_expr(rng, 6)
}

/// A target together with a query inside its compiled schema.
pub fn target_and_query<R: Rng>(rng: &mut R) -> (IdealExpr, QueryTerm) {
    let e = small_target(rng);
    let carrier = compile(&e).expect("generated expressions normalize");
    let q = sub_query(rng, &carrier);
    (e, q)
}

/// A scattered order term of at most `size` nodes.
pub fn scattered_term<R: Rng>(rng: &mut R, size: usize) -> LinTerm {
    lin_term(rng, size, false)
}

/// An order term of at most `size` nodes containing at least one copy of ℚ.
pub fn rational_term<R: Rng>(rng: &mut R, size: usize) -> LinTerm {
    loop {
        let t = lin_term(rng, size, true);
        if !crate::scattered::scattered_check(&t) {
            return t;
        }
    }
}

fn lin_term<R: Rng>(rng: &mut R, size: usize, rationals: bool) -> LinTerm {
    let leaf = |rng: &mut R| {
        if rationals && rng.gen_bool(0.3) {
            LinTerm::RatQ
        } else {
            LinTerm::Nat
        }
    };
    if size <= 1 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let room = size - 1;
    match rng.gen_range(0..3) {
        0 => LinTerm::rev(lin_term(rng, room, rationals)),
        1 if room >= 2 => {
            let k = rng.gen_range(2..=room.min(3));
            LinTerm::Cat(
                split(rng, room, k)
                    .into_iter()
                    .map(|s| lin_term(rng, s, rationals))
                    .collect(),
            )
        }
        _ => {
            let k = rng.gen_range(1..=room.min(3));
            let mut parts = split(rng, room, k);
            let tail = parts.pop().expect("k ≥ 1");
            let heads = parts
                .into_iter()
                .map(|s| lin_term(rng, s, rationals))
                .collect();
            LinTerm::omega_cat(heads, lin_term(rng, tail, rationals))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_are_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            assert!(ideal_expr(&mut rng, 12).size() <= 12);
            assert!(tree_schema(&mut rng, 8).size() <= 8);
            assert!(scattered_term(&mut rng, 8).size() <= 8);
        }
    }

    #[test]
    fn ordinals_stay_below_w3() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w3 = Ordinal::omega_pow(Ordinal::nat(3));
        for _ in 0..200 {
            assert!(ordinal_below_w3(&mut rng) < w3);
            let l = limit_below_w3(&mut rng);
            assert!(l.is_limit() && l < w3);
        }
    }

    #[test]
    fn exhaustive_small_sizes() {
        assert_eq!(exhaustive_schemas(1).len(), 4);
        // root(chain) plus fans and spines over each of the four tails
        assert_eq!(exhaustive_schemas(2).len(), 4 + 1 + 8);
        assert!(exhaustive_schemas(6).len() >= 300);
    }

    #[test]
    fn queries_sit_inside_the_carrier() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (e, q) = target_and_query(&mut rng);
            assert_eq!(subset_of(&q, &compile(&e).unwrap()), Containment::Yes);
        }
    }
}
