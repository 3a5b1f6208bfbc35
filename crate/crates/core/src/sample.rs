//! Seeded random scalars, base elements, elements and words for the
//! randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Atom, Element, Presentation, Word};
use crate::base::BaseElement;
use crate::field::{FieldKind, Scalar};
use crate::order::{MultiIndex, SignedIndex};

/// A small nonzero scalar. Over ℚ(q) this is `c · q^k` or occasionally
/// `c · (1 + q)`, which keeps normalization cheap.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldKind) -> Scalar {
    let c = *[-2i64, -1, 1, 1, 2, 3].choose(rng).unwrap();
    let c = Scalar::from_int(c);
    match field {
        FieldKind::Rational => {
            if rng.gen_bool(0.2) {
                c.checked_div(&Scalar::from_int(rng.gen_range(2..5))).unwrap()
            } else {
                c
            }
        }
        FieldKind::RationalFunction => {
            let k = rng.gen_range(-2..=2);
            let mut s = &c * &Scalar::q_pow(k);
            if rng.gen_bool(0.15) {
                s = &s * &(&Scalar::one() + &Scalar::q());
            }
            s
        }
    }
}

pub fn random_laurent_exponent<R: Rng + ?Sized>(rng: &mut R, t: usize, max_abs: i64) -> SignedIndex {
    SignedIndex::new((0..t).map(|_| rng.gen_range(-max_abs..=max_abs)).collect())
}

/// A base element with up to `max_terms` terms and exponents in
/// `[-2, 2]`; may be zero only if `max_terms` is zero.
pub fn random_base_element<R: Rng + ?Sized>(
    rng: &mut R,
    t: usize,
    field: FieldKind,
    max_terms: usize,
) -> BaseElement {
    let mut out = BaseElement::zero(t);
    let count = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..count {
        let e = random_laurent_exponent(rng, t, 2);
        out = out.add(&BaseElement::monomial(e, random_scalar(rng, field)));
    }
    if out.is_zero() {
        BaseElement::constant(t, random_scalar(rng, field))
    } else {
        out
    }
}

/// A nonzero element with up to `max_terms` x-monomials of total degree at
/// most `max_degree`.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    pres: &Presentation,
    max_terms: usize,
    max_degree: u32,
) -> Element {
    let mut out = pres.zero();
    while out.is_zero() {
        for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
            let mut gamma = vec![0u32; pres.s];
            let deg = rng.gen_range(0..=max_degree);
            for _ in 0..deg {
                if pres.s > 0 {
                    gamma[rng.gen_range(0..pres.s)] += 1;
                }
            }
            let a = random_base_element(rng, pres.t, pres.field, 2);
            out.add_term(MultiIndex::new(gamma), a);
        }
    }
    out
}

/// A word of length at most `max_len` mixing generators and (when `t > 0`)
/// Laurent monomials.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, pres: &Presentation, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut atoms = Vec::with_capacity(len);
    for _ in 0..len {
        if pres.t > 0 && rng.gen_bool(0.3) {
            let e = random_laurent_exponent(rng, pres.t, 1);
            atoms.push(Atom::Base(BaseElement::monomial(e, random_scalar(rng, pres.field))));
        } else if pres.s > 0 {
            atoms.push(Atom::Gen(rng.gen_range(0..pres.s)));
        }
    }
    Word::new(random_scalar(rng, pres.field), atoms)
}
