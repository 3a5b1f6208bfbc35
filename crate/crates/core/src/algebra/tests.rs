use super::*;
use crate::presets::{quantum_plane, quantum_weyl, uq_sl2};

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

fn q() -> Scalar {
    Scalar::q()
}

fn x_monomial(pres: &Presentation, gamma: &[u32], c: Scalar) -> Element {
    Element::monomial(mi(gamma), BaseElement::constant(pres.t, c))
}

#[test]
fn quantum_plane_is_valid() {
    let p = quantum_plane(q()).unwrap();
    assert_eq!(p.q_value(1, 0), q());
    assert!(p.tails.is_empty());
}

#[test]
fn tail_on_the_bound_is_rejected() {
    let data = PresentationData::new(FieldKind::RationalFunction, 0, 2, 2)
        .with_q(1, 0, q())
        .with_tail(1, 0, Element::monomial(mi(&[1, 1]), BaseElement::one(0)));
    match make_presentation(data) {
        Err(AlgebraError::TailBound { exponent, .. }) => assert_eq!(exponent, mi(&[1, 1])),
        other => panic!("expected a tail bound error, got {other:?}"),
    }
}

#[test]
fn zero_unit_is_rejected() {
    let data = PresentationData::new(FieldKind::RationalFunction, 0, 2, 2).with_q(1, 0, Scalar::zero());
    assert_eq!(make_presentation(data), Err(AlgebraError::ZeroUnit { j: 2, i: 1 }));
    let data = PresentationData::new(FieldKind::RationalFunction, 1, 2, 2).with_comm(0, 0, Scalar::zero());
    assert_eq!(make_presentation(data), Err(AlgebraError::ZeroCommutation { i: 1, j: 1 }));
}

#[test]
fn wrong_index_order_is_rejected() {
    let data = PresentationData::new(FieldKind::RationalFunction, 0, 2, 2).with_q(0, 1, q());
    assert_eq!(make_presentation(data), Err(AlgebraError::IndexOrder { j: 1, i: 2 }));
}

#[test]
fn rational_field_rejects_q() {
    let data = PresentationData::new(FieldKind::Rational, 0, 2, 2).with_q(1, 0, q());
    assert!(matches!(make_presentation(data), Err(AlgebraError::FieldMismatch { .. })));
}

#[test]
fn normal_form_quantum_plane() {
    let p = quantum_plane(q()).unwrap();
    let nf = p.normal_form(&Word::gens(&[1, 0]));
    assert_eq!(nf, x_monomial(&p, &[1, 1], q()));
    assert_eq!(p.render(&nf), "q*x1*x2");
}

#[test]
fn normal_form_quantum_weyl() {
    // x2 x1 x1 = q² x1² x2 + (q+1) x1
    let p = quantum_weyl(q()).unwrap();
    let nf = p.normal_form(&Word::gens(&[1, 0, 0]));
    let expected = x_monomial(&p, &[2, 1], q().pow(2).unwrap())
        .add(&x_monomial(&p, &[1, 0], &q() + &Scalar::one()));
    assert_eq!(nf, expected);
}

#[test]
fn normal_form_uq_sl2_defining_relation() {
    let p = uq_sl2().unwrap();
    let nf = p.normal_form(&Word::gens(&[1, 0]));
    let expected = p.generator(0);
    let expected = p.multiply(&expected, &p.generator(1)).add(&p.tails[&(1, 0)]);
    assert_eq!(nf, expected);
    assert_eq!(nf.coefficient(&mi(&[1, 1])), BaseElement::one(1));
}

#[test]
fn multiply_uq_sl2_e_f_squared() {
    // E·F² = F²E + ((q²+1)K − (q⁻²+1)K⁻¹)/(q − q⁻¹) · F, coefficients on the left
    let p = uq_sl2().unwrap();
    let f = p.generator(0);
    let e = p.generator(1);
    let lhs = p.multiply(&e, &p.multiply(&f, &f));
    let denom = (&q() - &Scalar::q_pow(-1)).inv().unwrap();
    let k = BaseElement::variable_power(1, 0, 1);
    let kinv = BaseElement::variable_power(1, 0, -1);
    let coeff = k
        .scale(&(&Scalar::q_pow(2) + &Scalar::one()))
        .sub(&kinv.scale(&(&Scalar::q_pow(-2) + &Scalar::one())))
        .scale(&denom);
    let expected = Element::monomial(mi(&[2, 1]), BaseElement::one(1))
        .add(&Element::monomial(mi(&[1, 0]), coeff));
    assert_eq!(lhs, expected);
}

#[test]
fn multiply_quantum_plane_degree() {
    let p = quantum_plane(q()).unwrap();
    let prod = p.multiply(&p.generator(1), &p.generator(0));
    assert_eq!(prod, x_monomial(&p, &[1, 1], q()));
    let bound = p.mdeg(&p.generator(1)).unwrap().add(&p.mdeg(&p.generator(0)).unwrap());
    assert_ne!(p.order.compare(&p.mdeg(&prod).unwrap(), &bound).unwrap(), Ordering::Greater);
    assert!(p.multiply(&prod, &p.zero()).is_zero());
}

#[test]
fn mdeg_examples() {
    let p = quantum_plane(q()).unwrap();
    let e = x_monomial(&p, &[1, 2], Scalar::from_int(3)).add(&x_monomial(&p, &[1, 0], Scalar::one()));
    assert_eq!(p.mdeg(&e).unwrap(), mi(&[1, 2]));
    assert_eq!(p.mdeg(&p.zero()), Err(AlgebraError::ZeroElement));

    let u = uq_sl2().unwrap();
    assert_eq!(u.mdeg(&u.tails[&(1, 0)]).unwrap(), mi(&[0, 0]));

    // rows (1,1),(0,2): γ = (2,1) ↦ 2·(1,1) + (0,2) = (2,4)
    let data = PresentationData::new(FieldKind::Rational, 0, 2, 2)
        .with_degrees(vec![mi(&[1, 1]), mi(&[0, 2])]);
    let m = make_presentation(data).unwrap();
    let e = Element::monomial(mi(&[2, 1]), BaseElement::one(0));
    assert_eq!(m.mdeg(&e).unwrap(), mi(&[2, 4]));
}

#[test]
fn filtration_examples() {
    let p = quantum_plane(q()).unwrap();
    assert!(p.filtration_contains(&p.zero(), &mi(&[0, 0])).unwrap());
    assert!(!p.filtration_contains(&x_monomial(&p, &[2, 0], Scalar::one()), &mi(&[1, 0])).unwrap());
    assert!(p.filtration_contains(&x_monomial(&p, &[1, 1], q()), &mi(&[1, 1])).unwrap());
    assert!(p.filtration_contains(&p.one(), &mi(&[0, 0])).unwrap());
    assert!(p.filtration_contains(&p.one(), &mi(&[0])).is_err());
}

#[test]
fn base_factors_move_left_with_sigma() {
    // F·K = q² K·F in U_q(sl2)
    let p = uq_sl2().unwrap();
    let k = BaseElement::variable_power(1, 0, 1);
    let w = Word::new(Scalar::one(), vec![Atom::Gen(0), Atom::Base(k.clone())]);
    let nf = p.normal_form(&w);
    assert_eq!(nf, Element::monomial(mi(&[1, 0]), k.scale(&Scalar::q_pow(2))));
    assert_eq!(p.render(&nf), "q^2*z1*x1");
}

#[test]
fn normal_form_fixes_standard_elements() {
    let p = uq_sl2().unwrap();
    let k = BaseElement::variable_power(1, 0, -1).scale(&q());
    let w = Word::new(Scalar::from_int(2), vec![Atom::Base(k.clone()), Atom::Gen(0), Atom::Gen(0), Atom::Gen(1)]);
    assert_eq!(p.normal_form(&w), Element::monomial(mi(&[2, 1]), k.scale(&Scalar::from_int(2))));
}

#[test]
fn render_orders_terms_ascending() {
    let p = quantum_weyl(q()).unwrap();
    let nf = p.normal_form(&Word::gens(&[1, 0, 0]));
    assert_eq!(p.render(&nf), "(1 + q)*x1 + q^2*x1^2*x2");
    let u = uq_sl2().unwrap();
    assert_eq!(
        u.render(&u.tails[&(1, 0)]),
        "(-q/(-1 + q^2))*z1^-1 + (q/(-1 + q^2))*z1"
    );
}
