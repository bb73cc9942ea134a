//! Worked values for each public operation.

use bideal::ideal::{b_rank, combine, iso_check, normalize, perp_c, CanonicalForm, IdealExpr};
use bideal::membership::{
    frechet_witness, id_witness, member_of, member_perp, q_in_id, q_in_wf, subset_of, Containment,
    IdWitness, QueryTerm,
};
use bideal::oracle::{
    check_branch, check_embedding, enumerate_schema, explicit_derivative, law_suite, Budget,
};
use bideal::ordinal::OrdKind;
use bideal::scattered::{
    rationalize, reverse, scattered_check, wo_classify, wo_self_dual, LinTerm, WoClass,
};
use bideal::syntax::{parse_ideal, parse_ordinal, parse_schema};
use bideal::tree::{
    classify, classify_via_derivative, compile, in_id, in_wf, tree_rank, Branch, EmbeddingWitness,
    SchemaSeq, Seq, TreeClass, TreeSchema,
};
use bideal::{Execution, Ordinal};
use num_rational::BigRational;

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

fn e(s: &str) -> IdealExpr {
    parse_ideal(s).unwrap()
}

fn t(s: &str) -> TreeSchema {
    parse_schema(s).unwrap()
}

fn seqs(v: &[&[u64]]) -> Vec<Seq> {
    v.iter().map(|x| Seq(x.to_vec())).collect()
}

#[test]
fn ordinal_values() {
    assert!(o("w") > o("5"));
    assert_eq!(o("w+1"), o("w+1"));
    assert!(o("w*2") < o("w^2"));
    assert_eq!(o("w+1").add(&o("w")), o("w*2"));
    assert_eq!(o("0").add(&o("w^2")), o("w^2"));
    assert_eq!(o("w^2").add(&o("w*3+4")), o("w^2+w*3+4"));
    assert_eq!(o("0").kind(), OrdKind::Zero);
    assert_eq!(o("w^2+3").kind(), OrdKind::Successor);
    assert_eq!(o("w*5").kind(), OrdKind::Limit);
    assert_eq!(o("w").fund(3).unwrap(), o("4"));
    assert_eq!(o("w*2").fund(2).unwrap(), o("w+3"));
    assert_eq!(o("w^2").fund(1).unwrap(), o("w*2"));
}

#[test]
fn canonical_form_values() {
    let c = |s: &str| normalize(&e(s)).unwrap();
    assert_eq!(combine(&c("P(w)"), &c("Q(3)")), c("P(w)"));
    assert_eq!(combine(&c("P(2)"), &c("Q(2)")), CanonicalForm::pq(o("2")));
    assert_eq!(combine(&c("Q(1)"), &c("Q(1)")), c("Q(1)"));
    assert_eq!(perp_c(&c("P(5)")), c("Q(5)"));
    assert_eq!(
        perp_c(&CanonicalForm::pq(o("2"))),
        CanonicalForm::pq(o("2"))
    );
    assert_eq!(perp_c(&c("Q(0)")), c("P(0)"));
    assert_eq!(c("omega(FIN)"), CanonicalForm::p(o("1")));
    assert_eq!(c("omega(perp(omega(FIN)))"), CanonicalForm::p(o("2")));
    assert_eq!(c("limsum(w)"), CanonicalForm::p(o("w")));
    assert_eq!(c("perp(perp(P(5)))"), CanonicalForm::p(o("5")));
    assert_eq!(b_rank(&e("FIN")).unwrap(), o("0"));
    assert_eq!(b_rank(&e("omega(Q(3))")).unwrap(), o("4"));
    assert_eq!(b_rank(&e("limsum(w*2)")).unwrap(), o("w*2"));
    assert!(!iso_check(&e("P(1)"), &e("Q(1)")).unwrap());
    assert!(iso_check(&e("sum(P(2),Q(1))"), &e("P(2)")).unwrap());
    assert!(iso_check(&e("mix(FIN; omega(Q(w)))"), &e("mix(FIN; omega(Q(w)))")).unwrap());
    assert!(normalize(&e("limsum(3)")).is_err());
}

#[test]
fn schema_membership_and_cones() {
    assert!(TreeSchema::Chain.member(&[0, 0]));
    assert!(t("fan([]; const(eps))").member(&[3]));
    assert!(t("spine([]; const(eps))").member(&[1]));
    assert_eq!(
        TreeSchema::Chain.cone(&[0, 0]),
        TreeSchema::rooted(TreeSchema::Chain)
    );
    assert_eq!(TreeSchema::Full.cone(&[4, 1, 7]), TreeSchema::Full);
    assert_eq!(t("fan([]; const(eps))").cone(&[5]), TreeSchema::Eps);
}

#[test]
fn wf_and_id_values() {
    assert!(in_wf(&t("fan([]; const(eps))")));
    assert!(!in_wf(&TreeSchema::Chain));
    assert!(!in_wf(&t("spine([]; const(eps))")));
    assert!(in_id(&TreeSchema::Chain));
    assert!(!in_id(&t("fan([]; const(eps))")));
    assert!(in_id(&t("spine([]; const(chain))")));
}

#[test]
fn classification_values() {
    let borel = |c: CanonicalForm| Ok(TreeClass::Borel(c));
    assert_eq!(
        classify(&TreeSchema::Chain),
        borel(CanonicalForm::q(o("0")))
    );
    assert_eq!(
        classify(&t("fan([]; const(chain))")),
        borel(CanonicalForm::p(o("1")))
    );
    assert_eq!(
        classify(&t("spine([]; const(fan([]; const(eps))))")),
        borel(CanonicalForm::q(o("1")))
    );
    assert_eq!(
        classify(&TreeSchema::Full),
        Ok(TreeClass::NonBorel(EmbeddingWitness::identity()))
    );
    assert_eq!(tree_rank(&TreeSchema::Full), (o("0"), false));
    assert_eq!(tree_rank(&TreeSchema::Chain), (o("1"), true));
    assert_eq!(tree_rank(&t("fan([]; const(chain))")), (o("2"), true));
    assert!(!classify_via_derivative(&TreeSchema::Full)
        .unwrap()
        .is_borel());
    assert_eq!(
        classify_via_derivative(&TreeSchema::Chain),
        borel(CanonicalForm::q(o("0")))
    );
    assert_eq!(
        classify_via_derivative(&t("spine([]; const(fan([]; const(eps))))")),
        borel(CanonicalForm::q(o("1")))
    );
    assert_eq!(
        classify(&t("fan([eps]; const(empty))")),
        Err(bideal::Error::FiniteSchema)
    );
}

#[test]
fn compile_values() {
    assert_eq!(compile(&e("FIN")).unwrap(), TreeSchema::Chain);
    assert_eq!(compile(&e("P(1)")).unwrap(), t("fan([]; const(chain))"));
    assert_eq!(
        compile(&e("PQ(0)")).unwrap(),
        t("fan([fan([]; const(eps)),chain]; const(empty))")
    );
}

#[test]
fn witness_map_values() {
    let id = EmbeddingWitness::identity();
    assert_eq!(id.map(&[2, 7]), Seq(vec![2, 7]));
    let under = classify(&t("fan([full]; const(empty))")).unwrap();
    let TreeClass::NonBorel(w) = under else {
        panic!("full block is non-Borel")
    };
    assert_eq!(w.map(&[]), Seq(vec![0]));
    let spine_full = t("spine([]; const(full))");
    let TreeClass::NonBorel(w) = classify_via_derivative(&spine_full).unwrap() else {
        panic!("core is nonempty")
    };
    for u in enumerate_schema(&TreeSchema::Full, &Budget::new(3, 3, 40)) {
        assert!(w.map(&u).len() >= u.len());
    }
}

#[test]
fn query_values() {
    let fs = |v: &[&[u64]]| QueryTerm::finset(seqs(v)).unwrap();
    assert_eq!(
        subset_of(&fs(&[&[0, 0]]), &TreeSchema::Chain),
        Containment::Yes
    );
    assert_eq!(
        subset_of(&QueryTerm::Schema(TreeSchema::Chain), &TreeSchema::Full),
        Containment::Yes
    );
    assert_eq!(
        subset_of(
            &QueryTerm::Schema(TreeSchema::Chain),
            &t("fan([]; const(eps))")
        ),
        Containment::No
    );
    let nine = fs(&[&[9, 9, 9]]);
    assert_eq!((q_in_wf(&nine), q_in_id(&nine)), (true, true));
    let tr = QueryTerm::transversal(t("fan([]; const(chain))")).unwrap();
    assert_eq!((q_in_wf(&tr), q_in_id(&tr)), (true, false));
    let u = QueryTerm::union(QueryTerm::Schema(TreeSchema::Chain), fs(&[&[1]]));
    assert_eq!((q_in_wf(&u), q_in_id(&u)), (false, true));
}

#[test]
fn standard_copy_values() {
    let p1 = e("P(1)");
    let block0 = QueryTerm::Schema(t("fan([chain]; const(empty))"));
    assert_eq!(member_of(&block0, &p1), Ok(false));
    assert_eq!(member_perp(&block0, &p1), Ok(true));
    let tr = QueryTerm::transversal(compile(&p1).unwrap()).unwrap();
    assert_eq!(member_of(&tr, &p1), Ok(true));
    assert_eq!(member_perp(&tr, &p1), Ok(false));
    let three = QueryTerm::finset(seqs(&[&[0], &[0, 0], &[0, 0, 0]])).unwrap();
    assert_eq!(member_of(&three, &e("Q(0)")), Ok(true));
    assert_eq!(
        member_of(&QueryTerm::Schema(TreeSchema::Full), &p1),
        Err(bideal::Error::NotASubset)
    );
}

#[test]
fn frechet_values() {
    let p1 = e("P(1)");
    let block0 = QueryTerm::Schema(t("fan([chain]; const(empty))"));
    assert_eq!(frechet_witness(&block0, &p1).unwrap(), block0);
    let two = QueryTerm::union(
        QueryTerm::Schema(t("fan([empty,chain]; const(empty))")),
        QueryTerm::Schema(t("fan([empty,empty,chain]; const(empty))")),
    );
    assert_eq!(
        frechet_witness(&two, &p1).unwrap(),
        QueryTerm::Schema(t("fan([empty,chain]; const(empty))"))
    );
    let whole = QueryTerm::Schema(compile(&p1).unwrap());
    assert_eq!(
        frechet_witness(&whole, &p1).unwrap(),
        QueryTerm::Schema(t("fan([chain]; const(empty))"))
    );
    let tr = QueryTerm::transversal(compile(&p1).unwrap()).unwrap();
    assert_eq!(frechet_witness(&tr, &p1), Err(bideal::Error::InIdeal));
}

#[test]
fn id_witness_values() {
    let w = id_witness(&QueryTerm::Schema(TreeSchema::Chain));
    assert_eq!(w, IdWitness::DominatingBranch(Branch::zeros()));
    let w = id_witness(&QueryTerm::Schema(t("spine([]; const(chain))")));
    assert_eq!(w, IdWitness::DominatingBranch(Branch::constant(1)));
    let IdWitness::UnboundedFamily(f) = id_witness(&QueryTerm::Schema(t("fan([]; const(eps))")))
    else {
        panic!("first coordinates are unbounded")
    };
    let first: Vec<Seq> = f.iter().take(4).collect();
    assert_eq!(first, seqs(&[&[0], &[1], &[2], &[3]]));
}

#[test]
fn order_values() {
    let nat = LinTerm::Nat;
    let rev = LinTerm::rev(LinTerm::Nat);
    assert_eq!(
        wo_classify(&nat),
        WoClass::Scattered(CanonicalForm::p(o("0")))
    );
    assert_eq!(
        wo_classify(&LinTerm::omega_cat(vec![], rev.clone())),
        WoClass::Scattered(CanonicalForm::p(o("1")))
    );
    assert_eq!(
        wo_classify(&LinTerm::Cat(vec![nat.clone(), rev.clone()])),
        WoClass::Scattered(CanonicalForm::pq(o("0")))
    );
    assert!(matches!(wo_classify(&LinTerm::RatQ), WoClass::NonScattered(e) if e.route.is_empty()));
    assert!(scattered_check(&LinTerm::rev(LinTerm::omega_cat(
        vec![],
        LinTerm::Nat
    ))));
    assert!(!scattered_check(&LinTerm::Cat(vec![
        nat.clone(),
        LinTerm::RatQ
    ])));
    assert!(scattered_check(&nat));
    assert_eq!(wo_self_dual(&nat), (rev.clone(), true));
    let (r, holds) = wo_self_dual(&LinTerm::omega_cat(vec![], rev.clone()));
    assert!(holds);
    assert_eq!(
        wo_classify(&r),
        WoClass::Scattered(CanonicalForm::q(o("1")))
    );
    assert_eq!(reverse(&LinTerm::RatQ), LinTerm::RatQ);
}

#[test]
fn rationalize_values() {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    assert_eq!(
        rationalize(&LinTerm::Nat, 3),
        vec![q(0, 1), q(1, 1), q(2, 1)]
    );
    let r = rationalize(&LinTerm::rev(LinTerm::Nat), 3);
    assert!(r[0] > r[1] && r[1] > r[2]);
    // points alternate between the two summands
    let r = rationalize(
        &LinTerm::Cat(vec![LinTerm::Nat, LinTerm::rev(LinTerm::Nat)]),
        4,
    );
    assert!(r[0] < r[2] && r[2] < r[3] && r[3] < r[1]);
}

#[test]
fn enumeration_values() {
    assert_eq!(
        enumerate_schema(&TreeSchema::Chain, &Budget::new(3, 6, 200)),
        seqs(&[&[0], &[0, 0], &[0, 0, 0]])
    );
    assert_eq!(
        enumerate_schema(&t("fan([]; const(eps))"), &Budget::new(6, 2, 200)),
        seqs(&[&[0], &[1], &[2]])
    );
    assert_eq!(
        enumerate_schema(&compile(&e("P(1)")).unwrap(), &Budget::new(2, 1, 200)),
        seqs(&[&[0, 0], &[1, 0]])
    );
}

#[test]
fn oracle_values() {
    let b = Budget::new(8, 8, 200);
    assert_eq!(
        explicit_derivative(&TreeSchema::Chain, &b).unwrap(),
        (o("1"), true)
    );
    assert_eq!(
        explicit_derivative(&TreeSchema::Full, &b).unwrap(),
        (o("0"), false)
    );
    assert_eq!(
        explicit_derivative(&t("fan([]; const(chain))"), &b).unwrap(),
        (o("2"), true)
    );
    let spine_chain = QueryTerm::Schema(t("spine([]; const(chain))"));
    assert!(check_branch(&Branch::constant(1), &spine_chain, &b));
    let eps_fan = QueryTerm::Schema(t("fan([]; const(eps))"));
    assert!(!check_branch(&Branch::zeros(), &eps_fan, &b));
    assert!(check_embedding(
        &EmbeddingWitness::identity(),
        &TreeSchema::Full,
        &b
    ));
    assert!(explicit_derivative(&t("fan([]; qdiag(w))"), &b).is_err());
}

#[test]
fn law_suite_contract() {
    assert!(law_suite(11, 0, Execution::Parallel).is_empty());
    let a = law_suite(7, 20, Execution::Parallel);
    assert!(a.iter().all(|r| r.passed()), "{a:?}");
    assert_eq!(a, law_suite(7, 20, Execution::Sequential));
}

#[test]
fn diag_tails_are_checked() {
    assert!(SchemaSeq::diag(bideal::tree::DiagKind::Q, o("w+1")).is_err());
    assert!(SchemaSeq::diag(bideal::tree::DiagKind::Q, o("w*2")).is_ok());
}
