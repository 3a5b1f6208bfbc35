//! The degree-zero ring Λ = k[z₁^{±1}, …, z_t^{±1}] and its monomial
//! automorphisms.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldError, Scalar};
use crate::order::SignedIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("Laurent rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("automorphism scale for z{index} is zero")]
    ZeroScale { index: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A Laurent polynomial: finite map from exponents in ℤᵗ to nonzero scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseElement {
    t: usize,
    terms: BTreeMap<SignedIndex, Scalar>,
}

impl BaseElement {
    pub fn zero(t: usize) -> Self {
        BaseElement {
            t,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(t: usize, c: Scalar) -> Self {
        Self::monomial(SignedIndex::zero(t), c)
    }

    pub fn one(t: usize) -> Self {
        Self::constant(t, Scalar::one())
    }

    pub fn monomial(exponent: SignedIndex, c: Scalar) -> Self {
        let t = exponent.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        BaseElement { t, terms }
    }

    /// `z_j^k` (0-based `j`).
    pub fn variable_power(t: usize, j: usize, k: i64) -> Self {
        let mut e = vec![0; t];
        e[j] = k;
        Self::monomial(SignedIndex::new(e), Scalar::one())
    }

    pub fn rank(&self) -> usize {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    /// The coefficient when this is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: &SignedIndex) -> Scalar {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exponent: SignedIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &BaseElement) -> BaseElement {
        debug_assert_eq!(self.t, other.t);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &BaseElement) {
        debug_assert_eq!(self.t, other.t);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> BaseElement {
        BaseElement {
            t: self.t,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &BaseElement) -> BaseElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> BaseElement {
        if c.is_zero() {
            return BaseElement::zero(self.t);
        }
        BaseElement {
            t: self.t,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Commutative product. Panics on rank mismatch; see [`base_mul`] for
    /// the checked form.
    pub fn mul(&self, other: &BaseElement) -> BaseElement {
        assert_eq!(self.t, other.t, "Laurent rank mismatch");
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = BaseElement::zero(self.t);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    /// Standard degree `max |β|₁` over the support; `None` encodes −∞.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(SignedIndex::abs_sum).max()
    }

    pub fn apply(&self, auto: &BaseAutomorphism) -> BaseElement {
        debug_assert_eq!(auto.rank(), self.t);
        BaseElement {
            t: self.t,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * &auto.factor(e)))
                .collect(),
        }
    }
}

pub fn base_mul(a: &BaseElement, b: &BaseElement) -> Result<BaseElement, BaseError> {
    if a.rank() != b.rank() {
        return Err(BaseError::RankMismatch {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    Ok(a.mul(b))
}

pub fn base_apply(auto: &BaseAutomorphism, a: &BaseElement) -> Result<BaseElement, BaseError> {
    if auto.rank() != a.rank() {
        return Err(BaseError::RankMismatch {
            expected: auto.rank(),
            found: a.rank(),
        });
    }
    Ok(a.apply(auto))
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let term = render_term(c, &laurent_factors(e), &[]);
            write_joined(f, &term, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Factor strings `z1^-2`, `z3` for a Laurent exponent.
pub(crate) fn laurent_factors(e: &SignedIndex) -> Vec<String> {
    e.entries()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(j, &k)| {
            if k == 1 {
                format!("z{}", j + 1)
            } else {
                format!("z{}^{}", j + 1, k)
            }
        })
        .collect()
}

/// Renders `c * f1 * f2 * ...`, omitting a unit coefficient and
/// parenthesizing compound ones.
pub(crate) fn render_term(c: &Scalar, base: &[String], gens: &[String]) -> String {
    let factors: Vec<&String> = base.iter().chain(gens).collect();
    let joined = factors
        .iter()
        .map(|s| s.as_str())
        .collect::<Vec<_>>()
        .join("*");
    if factors.is_empty() {
        return if c.is_compound() {
            format!("({c})")
        } else {
            c.to_string()
        };
    }
    if c.is_one() {
        return joined;
    }
    if *c == Scalar::from_int(-1) {
        return format!("-{joined}");
    }
    if c.is_compound() {
        format!("({c})*{joined}")
    } else {
        format!("{c}*{joined}")
    }
}

pub(crate) fn write_joined(f: &mut impl fmt::Write, term: &str, first: bool) -> fmt::Result {
    if first {
        write!(f, "{term}")
    } else if let Some(rest) = term.strip_prefix('-') {
        write!(f, " - {rest}")
    } else {
        write!(f, " + {term}")
    }
}

/// The monomial automorphism `z_j ↦ scale_j · z_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BaseAutomorphism {
    scale: Vec<Scalar>,
}

impl BaseAutomorphism {
    pub fn new(scale: Vec<Scalar>) -> Result<Self, BaseError> {
        if let Some(index) = scale.iter().position(Scalar::is_zero) {
            return Err(BaseError::ZeroScale { index: index + 1 });
        }
        Ok(BaseAutomorphism { scale })
    }

    /// Skips the nonzero check. Used for raw presentation data that is
    /// validated separately.
    pub fn new_unchecked(scale: Vec<Scalar>) -> Self {
        BaseAutomorphism { scale }
    }

    pub fn identity(t: usize) -> Self {
        BaseAutomorphism {
            scale: vec![Scalar::one(); t],
        }
    }

    pub fn rank(&self) -> usize {
        self.scale.len()
    }

    pub fn scales(&self) -> &[Scalar] {
        &self.scale
    }

    pub fn is_automorphism(&self) -> bool {
        self.scale.iter().all(|s| !s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.scale.iter().all(Scalar::is_one)
    }

    /// `∏_j scale_j^{β_j}`, the factor picked up by `z^β`.
    pub fn factor(&self, exponent: &SignedIndex) -> Scalar {
        let mut acc = Scalar::one();
        for (s, &k) in self.scale.iter().zip(exponent.entries()) {
            if k != 0 {
                acc = &acc * &s.pow(k).expect("automorphism scale is nonzero");
            }
        }
        acc
    }

    /// `self ∘ other`; monomial automorphisms commute.
    pub fn compose(&self, other: &BaseAutomorphism) -> BaseAutomorphism {
        BaseAutomorphism {
            scale: self.scale.iter().zip(&other.scale).map(|(a, b)| a * b).collect(),
        }
    }
}
