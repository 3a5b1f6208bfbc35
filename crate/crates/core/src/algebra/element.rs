use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::base::BaseElement;
use crate::field::Scalar;
use crate::order::MultiIndex;

/// An element in standard representation `Σ a_γ x^γ`, coefficients on the
/// left, keyed by the x-exponent `γ ∈ ℕˢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    t: usize,
    s: usize,
    terms: BTreeMap<MultiIndex, BaseElement>,
}

impl Element {
    pub fn zero(t: usize, s: usize) -> Self {
        Element {
            t,
            s,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(t: usize, s: usize) -> Self {
        Self::from_base(s, BaseElement::one(t))
    }

    pub fn from_base(s: usize, a: BaseElement) -> Self {
        Self::monomial(MultiIndex::zero(s), a)
    }

    pub fn scalar(t: usize, s: usize, c: Scalar) -> Self {
        Self::from_base(s, BaseElement::constant(t, c))
    }

    /// `a · x^γ`.
    pub fn monomial(exponent: MultiIndex, a: BaseElement) -> Self {
        let mut e = Element::zero(a.rank(), exponent.rank());
        e.add_term(exponent, a);
        e
    }

    /// The generator `x_i` (0-based).
    pub fn generator(t: usize, s: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(s, i), BaseElement::one(t))
    }

    pub fn base_rank(&self) -> usize {
        self.t
    }

    pub fn gen_count(&self) -> usize {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BaseElement)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    pub fn coefficient(&self, exponent: &MultiIndex) -> BaseElement {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(|| BaseElement::zero(self.t))
    }

    pub fn add_term(&mut self, exponent: MultiIndex, a: BaseElement) {
        if a.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Vacant(v) => {
                v.insert(a);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&a);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (e, a) in &other.terms {
            self.add_term(e.clone(), a.clone());
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            t: self.t,
            s: self.s,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero(self.t, self.s);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.scale(c));
        }
        out
    }

    /// Left multiplication by a base element; needs no commutation.
    pub fn left_mul_base(&self, b: &BaseElement) -> Element {
        let mut out = Element::zero(self.t, self.s);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), b.mul(a));
        }
        out
    }

    /// True when only `x^0` carries a coefficient.
    pub fn is_pure_base(&self) -> bool {
        self.terms.keys().all(MultiIndex::is_zero)
    }
}

/// One factor of an unnormalized word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Base(BaseElement),
    /// Generator `x_i`, 0-based.
    Gen(usize),
}

/// A scalar times a product of base elements and generators in written
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub prefactor: Scalar,
    pub atoms: Vec<Atom>,
}

impl Word {
    pub fn new(prefactor: Scalar, atoms: Vec<Atom>) -> Self {
        Word { prefactor, atoms }
    }

    pub fn scalar(c: Scalar) -> Self {
        Word {
            prefactor: c,
            atoms: Vec::new(),
        }
    }

    /// A product of generators with unit prefactor.
    pub fn gens(indices: &[usize]) -> Self {
        Word {
            prefactor: Scalar::one(),
            atoms: indices.iter().map(|&i| Atom::Gen(i)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Word {
            prefactor: &self.prefactor * &other.prefactor,
            atoms,
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_pure_base(&self) -> bool {
        self.atoms.iter().all(|a| matches!(a, Atom::Base(_)))
    }
}

/// Expands `x^γ` into its generator sequence `x_1^{γ_1} ⋯ x_s^{γ_s}`.
pub fn expand_exponent(exponent: &MultiIndex) -> Vec<usize> {
    let mut out = Vec::with_capacity(exponent.total_degree() as usize);
    for (i, &k) in exponent.entries().iter().enumerate() {
        out.extend(std::iter::repeat(i).take(k as usize));
    }
    out
}
