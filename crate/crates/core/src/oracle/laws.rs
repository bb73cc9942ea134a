//! Seeded random checks of every algebraic and structural law the crate
//! relies on. Each trial draws from its own generator, keyed by the seed, the
//! law and the trial index, so reports do not depend on scheduling.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ideal::{combine, normalize, IdealExpr};
use crate::membership::{frechet_witness, id_witness, member_of, member_perp, q_in_wf, QueryTerm};
use crate::ordinal::Ordinal;
use crate::par::Execution;
use crate::scattered::{
    compare_points, point_at, rational_at, rationalize, reverse, wo_classify, LinTerm, WoClass,
};
use crate::syntax::{parse_ideal, parse_lin, parse_ordinal, parse_query, parse_schema};
use crate::tree::{
    classify, classify_via_derivative, compile, dominating_branch, in_id, in_wf, scaffold,
    tree_rank, Seq, TreeClass, TreeSchema,
};

use super::gen;
use super::{
    check_embedding, check_frechet, check_id_witness, enumerate_query, enumerate_schema,
    explicit_derivative, Budget,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LawReport {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// `None` when the law holds on this draw, else a description of the counterexample.
type Law = fn(&mut ChaCha8Rng) -> Option<String>;

fn fail(holds: bool, describe: impl FnOnce() -> String) -> Option<String> {
    if holds {
        None
    } else {
        Some(describe())
    }
}

const LAWS: &[(&str, Law)] = &[
    ("ord.total_order", ord_total_order),
    ("ord.fund_monotone", ord_fund_monotone),
    ("ord.add_assoc_identity", ord_add),
    ("ideal.idempotence", ideal_idempotence),
    ("ideal.frechet_involution", ideal_frechet),
    ("ideal.perp_finite_sum", ideal_perp_sum),
    ("ideal.combine_laws", ideal_combine),
    ("ideal.omega_regroup", ideal_omega_regroup),
    ("tree.round_trip", tree_round_trip),
    ("tree.two_path", tree_two_path),
    ("tree.trichotomy", tree_trichotomy),
    ("tree.domination_depth", tree_domination_depth),
    ("tree.embedding_families", tree_embedding_families),
    ("membership.orthogonality", membership_orthogonality),
    ("membership.frechet_soundness", membership_frechet),
    ("membership.not_both", membership_not_both),
    ("membership.restriction_coherence", membership_restriction),
    ("wo.duality", wo_duality),
    ("wo.sum_law", wo_sum_law),
    ("wo.rationalize_faithful", wo_rationalize),
    ("wo.nonscattered_dense", wo_dense),
    ("oracle.enumeration_monotone", oracle_enumeration),
    ("oracle.derivative_agreement", oracle_derivative),
    ("oracle.witnesses_check", oracle_witnesses),
    ("syntax.round_trip", syntax_round_trip),
];

pub fn law_names() -> Vec<&'static str> {
    LAWS.iter().map(|(name, _)| *name).collect()
}

fn trial_rng(seed: u64, law: usize, trial: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(law as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(trial as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Run `n` trials of every law. `n = 0` gives an empty report.
pub fn law_suite(seed: u64, n: usize, exec: Execution) -> Vec<LawReport> {
    if n == 0 {
        return Vec::new();
    }
    let jobs: Vec<(usize, usize)> = (0..LAWS.len())
        .flat_map(|l| (0..n).map(move |i| (l, i)))
        .collect();
    let outcomes = exec.map(jobs, |(l, i)| (LAWS[l].1)(&mut trial_rng(seed, l, i)));
    LAWS.iter()
        .zip(outcomes.chunks(n))
        .map(|((name, _), results)| LawReport {
            name,
            trials: n,
            failures: results.iter().filter(|r| r.is_some()).count(),
            first_counterexample: results.iter().flatten().next().cloned(),
        })
        .collect()
}

fn ord_total_order(rng: &mut ChaCha8Rng) -> Option<String> {
    let [a, b, c] = [(); 3].map(|_| gen::ordinal_below_w3(rng));
    let antisym = !(a <= b && b <= a) || a == b;
    let trans = !(a <= b && b <= c) || a <= c;
    let dual = a.cmp(&b) == b.cmp(&a).reverse();
    fail(antisym && trans && dual, || format!("{a}, {b}, {c}"))
}

fn ord_fund_monotone(rng: &mut ChaCha8Rng) -> Option<String> {
    let lambda = gen::limit_below_w3(rng);
    let m = rng.gen_range(0..64u64);
    let n = rng.gen_range(m + 1..=64);
    let (Ok(x), Ok(y)) = (lambda.fund(m), lambda.fund(n)) else {
        return Some(format!("fund failed on limit {lambda}"));
    };
    fail(x < y && y < lambda, || {
        format!("{lambda}[{m}] = {x}, {lambda}[{n}] = {y}")
    })
}

fn ord_add(rng: &mut ChaCha8Rng) -> Option<String> {
    let [a, b, c] = [(); 3].map(|_| gen::ordinal_below_w3(rng));
    let zero = Ordinal::zero();
    let assoc = a.add(&b).add(&c) == a.add(&b.add(&c));
    let ident = a.add(&zero) == a && zero.add(&a) == a;
    fail(assoc && ident, || format!("{a}, {b}, {c}"))
}

fn ideal_idempotence(rng: &mut ChaCha8Rng) -> Option<String> {
    let (x, y) = (gen::ordinal_below_w3(rng), gen::ordinal_below_w3(rng));
    let (alpha, beta) = if x >= y { (x, y) } else { (y, x) };
    let norm = |a: IdealExpr, b: IdealExpr| normalize(&IdealExpr::SumFin(vec![a, b])).ok();
    let p = |o: &Ordinal| IdealExpr::P(o.clone());
    let q = |o: &Ordinal| IdealExpr::Q(o.clone());
    let mut holds = norm(p(&alpha), p(&beta)) == normalize(&p(&alpha)).ok()
        && norm(q(&alpha), q(&beta)) == normalize(&q(&alpha)).ok();
    if beta < alpha {
        holds &= norm(p(&alpha), q(&beta)) == normalize(&p(&alpha)).ok()
            && norm(q(&alpha), p(&beta)) == normalize(&q(&alpha)).ok();
    }
    fail(holds, || format!("alpha = {alpha}, beta = {beta}"))
}

fn ideal_frechet(rng: &mut ChaCha8Rng) -> Option<String> {
    let e = gen::ideal_expr(rng, 12);
    let pp = IdealExpr::perp(IdealExpr::perp(e.clone()));
    fail(
        normalize(&e).is_ok() && normalize(&pp).ok() == normalize(&e).ok(),
        || e.to_string(),
    )
}

fn ideal_perp_sum(rng: &mut ChaCha8Rng) -> Option<String> {
    let (a, b) = (gen::ideal_expr(rng, 6), gen::ideal_expr(rng, 6));
    let lhs = IdealExpr::perp(IdealExpr::SumFin(vec![a.clone(), b.clone()]));
    let rhs = IdealExpr::SumFin(vec![IdealExpr::perp(a.clone()), IdealExpr::perp(b.clone())]);
    fail(normalize(&lhs).ok() == normalize(&rhs).ok(), || {
        format!("{a}, {b}")
    })
}

fn ideal_combine(rng: &mut ChaCha8Rng) -> Option<String> {
    let [a, b, c] = [(); 3].map(|_| gen::canonical_form(rng));
    let comm = combine(&a, &b) == combine(&b, &a);
    let assoc = combine(&combine(&a, &b), &c) == combine(&a, &combine(&b, &c));
    let absorb = combine(&a, &a) == a;
    fail(comm && assoc && absorb, || format!("{a}, {b}, {c}"))
}

fn ideal_omega_regroup(rng: &mut ChaCha8Rng) -> Option<String> {
    let e = gen::ideal_expr(rng, 10);
    let once = IdealExpr::omega(e.clone());
    let twice = IdealExpr::omega(once.clone());
    fail(normalize(&twice).ok() == normalize(&once).ok(), || {
        e.to_string()
    })
}

fn tree_round_trip(rng: &mut ChaCha8Rng) -> Option<String> {
    let e = gen::ideal_expr(rng, 10);
    let got = compile(&e).and_then(|t| classify(&t));
    let want = normalize(&e).map(TreeClass::Borel);
    fail(got.is_ok() && got.ok() == want.ok(), || e.to_string())
}

fn tree_two_path(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::tree_schema(rng, 8);
    let (a, b) = match (classify(&t), classify_via_derivative(&t)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(x), Err(y)) if x == y => return None,
        (a, b) => return Some(format!("{t}: {a:?} vs {b:?}")),
    };
    if a.is_borel() != b.is_borel() {
        return Some(format!("{t}: verdicts differ"));
    }
    let holds = match (a.form(), b.form()) {
        (Some(x), Some(y)) => {
            let closed = match scaffold(&t) {
                Some(s) => combine(x, &s),
                None => x.clone(),
            };
            closed == *y
        }
        _ => true,
    };
    fail(holds, || {
        format!("{t}: {a:?} with scaffold {:?} vs {b:?}", scaffold(&t))
    })
}

fn tree_trichotomy(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::tree_schema(rng, 8);
    let core_empty = tree_rank(&t).1;
    match classify(&t) {
        Ok(c) => fail(c.is_borel() == core_empty, || t.to_string()),
        Err(_) => fail(core_empty, || t.to_string()),
    }
}

/// Longest chain of pairwise comparable elements a well-founded schema can hold.
fn chain_bound(t: &TreeSchema) -> usize {
    match t {
        TreeSchema::Empty => 0,
        TreeSchema::Eps => 1,
        TreeSchema::Chain | TreeSchema::Full => usize::MAX,
        TreeSchema::Rooted(x) => 1 + chain_bound(x),
        TreeSchema::Fan(..) | TreeSchema::Spine(..) => {
            (0..8).map(|i| chain_bound(&t.part(i))).max().unwrap_or(0)
        }
    }
}

fn longest_chain(elements: &[Seq]) -> usize {
    // shortlex order lists every prefix before its extensions
    let mut best = vec![1usize; elements.len()];
    for j in 0..elements.len() {
        for i in 0..j {
            if elements[i].is_prefix_of(&elements[j]) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

fn tree_domination_depth(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::tree_schema(rng, 6);
    let b = Budget::new(8, 8, 200);
    let elements = enumerate_schema(&t, &b);
    if in_id(&t) {
        let Some(branch) = dominating_branch(&t) else {
            return Some(format!("{t}: no dominating branch"));
        };
        if let Some(e) = elements.iter().find(|e| !branch.dominates(e)) {
            return Some(format!("{t}: {branch} misses {e}"));
        }
    }
    if in_wf(&t) {
        let bound = chain_bound(&t);
        let got = longest_chain(&elements);
        return fail(got <= bound, || {
            format!("{t}: chain of {got} over bound {bound}")
        });
    }
    None
}

fn tree_embedding_families(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::tree_schema(rng, 8);
    let Ok(TreeClass::NonBorel(w)) = classify(&t) else {
        return None;
    };
    let domain = enumerate_schema(&TreeSchema::Full, &Budget::new(6, 4, 400));
    let k = rng.gen_range(2..=50usize.min(domain.len()));
    let family: Vec<&Seq> = (0..k)
        .map(|_| &domain[rng.gen_range(0..domain.len())])
        .collect();
    let image: Vec<Seq> = family.iter().map(|u| w.map(u)).collect();
    let pairs = |xs: &[&Seq], rel: &dyn Fn(&Seq, &Seq) -> bool| {
        xs.iter()
            .enumerate()
            .all(|(i, x)| xs[i + 1..].iter().all(|y| x == y || rel(x, y)))
    };
    let img: Vec<&Seq> = image.iter().collect();
    let antichain = pairs(&family, &|x, y| !x.comparable(y));
    let chain = pairs(&family, &|x, y| x.comparable(y));
    let ok = (!antichain || pairs(&img, &|x, y| !x.comparable(y)))
        && (!chain || pairs(&img, &|x, y| x.comparable(y)))
        && image.iter().all(|v| w.target_contains(&t, v));
    fail(ok, || format!("{t}: witness {}", w.summary()))
}

/// Elements of `q` also in `r` at increasing depths; `q` must be dominated.
fn stable_intersection(q: &QueryTerm, r: &QueryTerm) -> Result<(), String> {
    if !q.is_infinite() || !r.is_infinite() {
        return Ok(());
    }
    let width = match id_witness(q) {
        crate::membership::IdWitness::DominatingBranch(branch) => branch.sup(),
        _ => return Err("dominated query without a branch".into()),
    };
    let sizes: Vec<usize> = [12usize, 16]
        .iter()
        .map(|&d| {
            enumerate_query(q, &Budget::new(d, width, 100_000))
                .iter()
                .filter(|e| r.contains(e))
                .count()
        })
        .collect();
    if sizes[0] == sizes[1] {
        Ok(())
    } else {
        Err(format!("intersection grows: {sizes:?}"))
    }
}

fn membership_orthogonality(rng: &mut ChaCha8Rng) -> Option<String> {
    let q = loop {
        let t = gen::tree_schema(rng, 6);
        if in_id(&t) {
            break QueryTerm::Schema(t);
        }
    };
    let r = loop {
        let t = gen::tree_schema(rng, 6);
        if in_wf(&t) {
            break QueryTerm::Schema(t);
        }
    };
    stable_intersection(&q, &r)
        .err()
        .map(|e| format!("{q} and {r}: {e}"))
}

fn membership_frechet(rng: &mut ChaCha8Rng) -> Option<String> {
    let (e, q) = loop {
        let (e, q) = gen::target_and_query(rng);
        if !q_in_wf(&q) {
            break (e, q);
        }
    };
    match frechet_witness(&q, &e) {
        Ok(w) => fail(check_frechet(&w, &q, &e, &Budget::new(8, 8, 200)), || {
            format!("{q} in {e}: witness {w}")
        }),
        Err(err) => Some(format!("{q} in {e}: {err}")),
    }
}

fn membership_not_both(rng: &mut ChaCha8Rng) -> Option<String> {
    let (e, q) = gen::target_and_query(rng);
    if !q.is_infinite() {
        return None;
    }
    match (member_of(&q, &e), member_perp(&q, &e)) {
        (Ok(a), Ok(b)) => fail(!(a && b), || format!("{q} in {e}")),
        (a, b) => Some(format!("{q} in {e}: {a:?}, {b:?}")),
    }
}

fn membership_restriction(rng: &mut ChaCha8Rng) -> Option<String> {
    let e = gen::small_target(rng);
    let carrier = compile(&e).expect("generated expressions normalize");
    let q = loop {
        let q = gen::sub_query(rng, &carrier);
        if member_perp(&q, &e) == Ok(true) {
            break q;
        }
    };
    let r = loop {
        let r = gen::sub_query(rng, &carrier);
        if member_of(&r, &e) == Ok(true) {
            break r;
        }
    };
    stable_intersection(&q, &r)
        .err()
        .map(|err| format!("{q}, {r} in {e}: {err}"))
}

fn scattered_form(t: &LinTerm) -> Option<crate::ideal::CanonicalForm> {
    match wo_classify(t) {
        WoClass::Scattered(c) => Some(c),
        WoClass::NonScattered(_) => None,
    }
}

fn wo_duality(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::scattered_term(rng, 8);
    let c = scattered_form(&t).map(|c| c.perp());
    let holds = scattered_form(&LinTerm::rev(t.clone())) == c && scattered_form(&reverse(&t)) == c;
    fail(c.is_some() && holds, || t.to_string())
}

fn wo_sum_law(rng: &mut ChaCha8Rng) -> Option<String> {
    let (a, b) = (gen::scattered_term(rng, 5), gen::scattered_term(rng, 5));
    let cat = scattered_form(&LinTerm::Cat(vec![a.clone(), b.clone()]));
    let parts = scattered_form(&a)
        .zip(scattered_form(&b))
        .map(|(x, y)| combine(&x, &y));
    fail(cat.is_some() && cat == parts, || format!("{a}, {b}"))
}

fn wo_rationalize(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = if rng.gen_bool(0.5) {
        gen::scattered_term(rng, 7)
    } else {
        gen::rational_term(rng, 7)
    };
    let n = 24;
    let values = rationalize(&t, n);
    let points: Vec<_> = (0..n as u64).map(|i| point_at(&t, i)).collect();
    for i in 0..n {
        for j in 0..n {
            if compare_points(&t, &points[i], &points[j]) != values[i].cmp(&values[j]) {
                return Some(format!("{t}: positions {i} and {j}"));
            }
        }
    }
    None
}

fn wo_dense(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::rational_term(rng, 7);
    let WoClass::NonScattered(emb) = wo_classify(&t) else {
        return Some(format!("{t}: classified scattered"));
    };
    let sample: Vec<_> = (0..64).map(rational_at).collect();
    let images: Vec<_> = sample.iter().map(|q| emb.point(q)).collect();
    // monotone in one direction throughout (a reversal flips it)
    let mut direction = None;
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            let got = compare_points(&t, &images[i], &images[j]);
            let flip = got != sample[i].cmp(&sample[j]);
            if got == Ordering::Equal || *direction.get_or_insert(flip) != flip {
                return Some(format!(
                    "{t}: not an embedding at {} and {}",
                    sample[i], sample[j]
                ));
            }
        }
    }
    // a third point strictly between any two sampled images
    let x = &sample[rng.gen_range(0..sample.len())];
    let y = &sample[rng.gen_range(0..sample.len())];
    if x == y {
        return None;
    }
    let mid = (x + y) / num_rational::BigRational::from_integer(2.into());
    let between = |m: &_| {
        let [a, b, c] = [x, m, y].map(|q| emb.point(q));
        let ab = compare_points(&t, &a, &b);
        ab != Ordering::Equal && ab == compare_points(&t, &b, &c)
    };
    fail(between(&mid), || {
        format!("{t}: nothing between images of {x} and {y}")
    })
}

fn oracle_enumeration(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::tree_schema(rng, 6);
    let small = Budget::new(
        rng.gen_range(1..5),
        rng.gen_range(1..5),
        rng.gen_range(1..60),
    );
    let large = Budget::new(
        small.depth + rng.gen_range(0..3),
        small.width + rng.gen_range(0..3),
        small.count + rng.gen_range(0..600),
    );
    let big = enumerate_schema(&t, &large);
    if big.len() >= large.count {
        // the larger budget is itself truncated
        return None;
    }
    let missing = enumerate_schema(&t, &small)
        .into_iter()
        .find(|e| !big.contains(e));
    missing.map(|e| format!("{t}: {e} lost going from {small:?} to {large:?}"))
}

fn oracle_derivative(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::tree_schema(rng, 6);
    match explicit_derivative(&t, &Budget::new(8, 8, 64)) {
        Ok(got) => {
            let want = tree_rank(&t);
            fail(got == want, || {
                format!("{t}: oracle {got:?}, symbolic {want:?}")
            })
        }
        Err(crate::Error::QuotientOverflow { .. }) => None,
        Err(e) => Some(format!("{t}: {e}")),
    }
}

fn oracle_witnesses(rng: &mut ChaCha8Rng) -> Option<String> {
    let t = gen::tree_schema(rng, 8);
    let b = Budget::new(8, 8, 200);
    if let Ok(TreeClass::NonBorel(w)) = classify(&t) {
        if !check_embedding(&w, &t, &b) {
            return Some(format!("{t}: embedding {}", w.summary()));
        }
    }
    if let Ok(TreeClass::NonBorel(w)) = classify_via_derivative(&t) {
        if !check_embedding(&w, &t, &b) {
            return Some(format!("{t}: derivative embedding {}", w.summary()));
        }
    }
    let q = QueryTerm::Schema(t.clone());
    let w = id_witness(&q);
    fail(check_id_witness(&w, &q, &b), || format!("{t}: {w:?}"))
}

fn syntax_round_trip(rng: &mut ChaCha8Rng) -> Option<String> {
    let o = gen::ordinal_below_w3(rng);
    if parse_ordinal(&o.to_string()).ok() != Some(o.clone()) {
        return Some(format!("ordinal {o}"));
    }
    let e = gen::ideal_expr(rng, 12);
    if parse_ideal(&e.to_string()).ok() != Some(e.clone()) {
        return Some(format!("ideal {e}"));
    }
    let t = gen::tree_schema(rng, 8);
    if parse_schema(&t.to_string()).ok() != Some(t.clone()) {
        return Some(format!("schema {t}"));
    }
    let (_, q) = gen::target_and_query(rng);
    if parse_query(&q.to_string()).ok() != Some(q.clone()) {
        return Some(format!("query {q}"));
    }
    let l = gen::rational_term(rng, 8);
    fail(parse_lin(&l.to_string()).ok() == Some(l.clone()), || {
        format!("order {l}")
    })
}
