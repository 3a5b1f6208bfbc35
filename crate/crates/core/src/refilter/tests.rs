use super::*;
use crate::field::Scalar;
use crate::presets::{broken_three_generator, quantum_affine_generic, quantum_plane, quantum_weyl, uq_sl2};

fn si(v: &[i64]) -> SignedIndex {
    SignedIndex::new(v.to_vec())
}

#[test]
fn c_sets_of_presets() {
    let expected: BTreeSet<_> = [si(&[0, 0]), si(&[-1, -1])].into_iter().collect();
    assert_eq!(build_c_set(&uq_sl2().unwrap()).unwrap().points(), &expected);
    assert_eq!(build_c_set(&quantum_weyl(Scalar::q()).unwrap()).unwrap().points(), &expected);
    let plane = build_c_set(&quantum_plane(Scalar::q()).unwrap()).unwrap();
    assert_eq!(plane.points().len(), 1);
}

#[test]
fn weight_vectors_for_examples() {
    let c = CSet::from_points(2, [si(&[-1, -1])]).unwrap();
    let w = find_weight_vector(&c).unwrap();
    assert_eq!(w.entries(), &[1, 1]);
    assert_eq!(w.pairing(&si(&[-1, -1])), -2);

    assert_eq!(find_weight_vector(&CSet::new(3)).unwrap().entries(), &[1, 1, 1]);

    let bad = CSet::from_points(2, [si(&[1, 0])]).unwrap();
    assert!(matches!(find_weight_vector(&bad), Err(RefilterError::Precondition { .. })));
}

#[test]
fn weight_vector_respects_mixed_signs() {
    // needs 2·w_2 < w_1 < 3·w_2, which has no solution with w_2 = 1
    let c = CSet::from_points(2, [si(&[-1, 2]), si(&[1, -3])]).unwrap();
    let w = find_weight_vector(&c).unwrap();
    assert!(w.verify(&c));
    assert!(verify_exact(&w, &c));
    assert!(w.entries()[1] > 1);
}

#[test]
fn ordered_precondition() {
    // (2, −1) has a positive w-pairing for w = (1, 1) but is below 0 in lex
    // with the second coordinate first
    let order = AdmissibleOrder::Lex { priority: vec![1, 0] };
    let ok = CSet::from_points(2, [si(&[2, -1])]).unwrap().with_order(order.clone());
    assert!(find_weight_vector(&ok).unwrap().verify(&ok));
    let bad = CSet::from_points(2, [si(&[-2, 1])]).unwrap().with_order(order);
    assert!(find_weight_vector(&bad).is_err());
}

#[test]
fn uq_sl2_certificate() {
    let p = uq_sl2().unwrap();
    let cert = refilter(&p).unwrap();
    assert!(cert.valid);
    assert_eq!(cert.weight_vector.entries(), &[1, 1]);
    assert_eq!(cert.relation_slack.len(), 1);
    let row = &cert.relation_slack[0];
    assert_eq!((row.j, row.i), (1, 0));
    assert_eq!(row.exponent, MultiIndex::zero(2));
    assert_eq!((row.w_degree, row.bound), (0, 2));
    assert!(verify_certificate(&cert));
    assert!(certificate_matches(&p, &cert));
    assert_eq!(cert.gr_data, gr_structure(&p));
    assert_eq!(cert.base_slack, vec![Vec::<SlackRow>::new(); 2]);
}

#[test]
fn scaled_certificate_still_verifies() {
    let mut cert = refilter(&uq_sl2().unwrap()).unwrap();
    let w = cert.weight_vector.scaled(3).unwrap();
    for row in &mut cert.relation_slack {
        row.w_degree = w.degree(&row.exponent);
        row.bound = w.entries()[row.i] + w.entries()[row.j];
    }
    cert.weight_vector = w;
    assert!(verify_certificate(&cert));
}

#[test]
fn tampered_certificate_fails() {
    let mut cert = refilter(&uq_sl2().unwrap()).unwrap();
    cert.relation_slack[0].bound = 0;
    assert!(!verify_certificate(&cert));
}

#[test]
fn affine_certificate_has_no_slack() {
    let cert = refilter(&quantum_affine_generic(3).unwrap()).unwrap();
    assert!(cert.valid);
    assert_eq!(cert.weight_vector.entries(), &[1, 1, 1]);
    assert!(cert.relation_slack.is_empty());
}

#[test]
fn broken_presentation_is_refused() {
    let err = refilter(&broken_three_generator().unwrap()).unwrap_err();
    assert_eq!(
        err,
        RefilterError::PbwFailed {
            overlaps: vec!["x3 x2 x1".into()]
        }
    );
}

#[test]
fn reports() {
    let good = regularity_report(uq_sl2().unwrap().data());
    assert!(good.all_pass());
    assert!(good.conclusion.is_some());
    assert_eq!(good.trusted_hypotheses.len(), TRUSTED_HYPOTHESES.len());

    let broken = regularity_report(broken_three_generator().unwrap().data());
    assert!(!broken.checks["pbw_pass"]);
    assert!(broken.conclusion.is_none());

    let mut zero_q = quantum_plane(Scalar::q()).unwrap().into_data();
    zero_q.q.insert((1, 0), Scalar::zero());
    let r = regularity_report(&zero_q);
    assert!(!r.checks["q_units"]);
    assert!(r.conclusion.is_none());
}

#[test]
fn json_keys() {
    let cert = refilter(&uq_sl2().unwrap()).unwrap().to_json();
    assert_eq!(cert["weight_vector"], json!([1, 1]));
    assert_eq!(cert["c_set"], json!([[-1, -1], [0, 0]]));
    assert_eq!(cert["relation_slack"][0]["bound"], json!(2));
    assert_eq!(cert["gr_data"]["sigma"], json!([["q^2"], ["1/q^2"]]));
    let report = regularity_report(uq_sl2().unwrap().data()).to_json();
    for key in ["checks", "conclusion", "trusted_hypotheses"] {
        assert!(report.get(key).is_some(), "{key}");
    }
}
