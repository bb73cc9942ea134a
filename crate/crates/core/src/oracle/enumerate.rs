use serde::Serialize;

use crate::membership::QueryTerm;
use crate::tree::{Seq, TreeSchema};

/// Enumeration limits: element length, largest entry, number of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub depth: usize,
    pub width: u64,
    pub count: usize,
}

impl Budget {
    pub fn new(depth: usize, width: u64, count: usize) -> Self {
        Budget {
            depth,
            width,
            count,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(6, 6, 200)
    }
}

/// Elements of `t` within the budget, ordered by length and then
/// lexicographically, truncated to `count`.
pub fn enumerate_schema(t: &TreeSchema, b: &Budget) -> Vec<Seq> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    for len in 0..=b.depth {
        if out.len() >= b.count {
            break;
        }
        level(t, &mut prefix, len, b, &mut out);
    }
    out.truncate(b.count);
    out
}

fn level(
    cone: &TreeSchema,
    prefix: &mut Vec<u64>,
    remaining: usize,
    b: &Budget,
    out: &mut Vec<Seq>,
) {
    if out.len() >= b.count {
        return;
    }
    if remaining == 0 {
        if cone.contains_root() {
            out.push(Seq(prefix.clone()));
        }
        return;
    }
    match cone.least() {
        Some(l) if l.len() <= remaining => {}
        _ => return,
    }
    for i in 0..=b.width {
        let c = cone.child(i);
        if c.is_empty() {
            continue;
        }
        prefix.push(i);
        level(&c, prefix, remaining - 1, b, out);
        prefix.pop();
        if out.len() >= b.count {
            return;
        }
    }
}

fn within(e: &Seq, b: &Budget) -> bool {
    e.len() <= b.depth && e.iter().all(|&x| x <= b.width)
}

fn finish(mut v: Vec<Seq>, b: &Budget) -> Vec<Seq> {
    v.sort_by(|x, y| x.shortlex_cmp(y));
    v.dedup();
    v.truncate(b.count);
    v
}

pub fn enumerate_query(q: &QueryTerm, b: &Budget) -> Vec<Seq> {
    match q {
        QueryTerm::Schema(t) => enumerate_schema(t, b),
        QueryTerm::FinSet(es) => finish(es.iter().filter(|e| within(e, b)).cloned().collect(), b),
        QueryTerm::Transversal(fan) => {
            let picks = (0..=b.width)
                .filter_map(|i| Some(Seq(vec![i]).concat(&fan.part(i).least()?)))
                .filter(|e| within(e, b))
                .collect();
            finish(picks, b)
        }
        QueryTerm::Union(x, y) => {
            let mut v = enumerate_query(x, b);
            v.extend(enumerate_query(y, b));
            finish(v, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::CanonicalForm;
    use crate::tree::{compile_form, SchemaSeq};

    fn seqs(v: &[&[u64]]) -> Vec<Seq> {
        v.iter().map(|s| Seq(s.to_vec())).collect()
    }

    #[test]
    fn chain_by_depth() {
        let got = enumerate_schema(&TreeSchema::Chain, &Budget::new(3, 6, 200));
        assert_eq!(got, seqs(&[&[0], &[0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn antichain_by_width() {
        let t = TreeSchema::fan(vec![], SchemaSeq::constant(TreeSchema::Eps));
        let got = enumerate_schema(&t, &Budget::new(6, 2, 200));
        assert_eq!(got, seqs(&[&[0], &[1], &[2]]));
    }

    #[test]
    fn compiled_p1() {
        let t = compile_form(&CanonicalForm::p(1.into()));
        let got = enumerate_schema(&t, &Budget::new(2, 1, 200));
        assert_eq!(got, seqs(&[&[0, 0], &[1, 0]]));
    }

    #[test]
    fn count_truncates_in_order() {
        let got = enumerate_schema(&TreeSchema::Full, &Budget::new(3, 2, 5));
        assert_eq!(got, seqs(&[&[], &[0], &[1], &[2], &[0, 0]]));
    }

    #[test]
    fn union_merges() {
        let q = QueryTerm::union(
            QueryTerm::Schema(TreeSchema::Chain),
            QueryTerm::finset(seqs(&[&[1], &[0]])).unwrap(),
        );
        let got = enumerate_query(&q, &Budget::new(2, 3, 200));
        assert_eq!(got, seqs(&[&[0], &[1], &[0, 0]]));
    }
}
