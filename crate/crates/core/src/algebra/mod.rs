//! Bounded-extension presentations and the standard-representation engine.
//!
//! A presentation describes an algebra generated over the Laurent ring Λ by
//! `x_1, …, x_s` subject to
//!
//! * `x_i z_j = λ_ij z_j x_i` (so `x_i a = σ_i(a) x_i` for `a ∈ Λ`), and
//! * `x_j x_i = q_ji x_i x_j + t_ji` for `j > i`,
//!
//! where every tail exponent `γ` satisfies `γM ≺ α_i + α_j`, `α_i` being the
//! `i`-th row of the degree matrix `M`. Normal forms are computed by moving
//! base factors to the left and then bubble-sorting the generator word,
//! substituting tails as they appear. The strict degree bound makes this
//! terminate for any presentation, confluent or not.

mod element;

pub use element::{expand_exponent, Atom, Element, Word};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::Deref;

use thiserror::Error;

use crate::base::{BaseAutomorphism, BaseElement, BaseError};
use crate::field::{FieldKind, Scalar};
use crate::order::{AdmissibleOrder, Comparator, MultiIndex, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("rank mismatch: {0}")]
    Rank(String),
    #[error("relation q x{j} x{i} expects j > i")]
    IndexOrder { j: usize, i: usize },
    #[error("generator index x{0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("base index z{0} out of range")]
    BaseOutOfRange(usize),
    #[error("q x{j} x{i} is zero; commutation scalars must be units")]
    ZeroUnit { j: usize, i: usize },
    #[error("comm x{i} z{j} is zero; commutation scalars must be units")]
    ZeroCommutation { i: usize, j: usize },
    #[error(
        "tail x{j} x{i} violates the degree bound: exponent {exponent} has degree {degree}, \
         which is not strictly below {bound}"
    )]
    TailBound {
        j: usize,
        i: usize,
        exponent: MultiIndex,
        degree: MultiIndex,
        bound: MultiIndex,
    },
    #[error("{what} uses q but the field is rational")]
    FieldMismatch { what: String },
    #[error("the zero element has no multi-degree")]
    ZeroElement,
}

/// Raw presentation data, possibly invalid. Indices are 0-based; error
/// messages and the text format use 1-based names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationData {
    pub field: FieldKind,
    /// Laurent rank of Λ.
    pub t: usize,
    /// Number of generators.
    pub s: usize,
    /// Grading rank.
    pub n: usize,
    pub order: AdmissibleOrder,
    /// Rows `α_i` of the degree matrix `M`.
    pub degrees: Vec<MultiIndex>,
    /// `q_ji` keyed by `(j, i)` with `j > i`.
    pub q: BTreeMap<(usize, usize), Scalar>,
    /// `λ_ij` as `comm[i][j]`.
    pub comm: Vec<Vec<Scalar>>,
    /// `t_ji` keyed by `(j, i)` with `j > i`; absent means zero.
    pub tails: BTreeMap<(usize, usize), Element>,
}

impl PresentationData {
    /// Defaults: every `q_ji = 1`, every `λ_ij = 1`, no tails, deglex on ℕⁿ,
    /// and `α_i = ε_i` (which needs `n = s`; otherwise rows start at zero).
    pub fn new(field: FieldKind, t: usize, s: usize, n: usize) -> Self {
        let degrees = (0..s)
            .map(|i| {
                if n == s {
                    MultiIndex::unit(n, i)
                } else {
                    MultiIndex::zero(n)
                }
            })
            .collect();
        let mut q = BTreeMap::new();
        for j in 0..s {
            for i in 0..j {
                q.insert((j, i), Scalar::one());
            }
        }
        PresentationData {
            field,
            t,
            s,
            n,
            order: AdmissibleOrder::deglex(n),
            degrees,
            q,
            comm: vec![vec![Scalar::one(); t]; s],
            tails: BTreeMap::new(),
        }
    }

    pub fn with_q(mut self, j: usize, i: usize, value: Scalar) -> Self {
        self.q.insert((j, i), value);
        self
    }

    pub fn with_comm(mut self, i: usize, j: usize, value: Scalar) -> Self {
        self.comm[i][j] = value;
        self
    }

    pub fn with_tail(mut self, j: usize, i: usize, tail: Element) -> Self {
        self.tails.insert((j, i), tail);
        self
    }

    pub fn with_order(mut self, order: AdmissibleOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_degrees(mut self, degrees: Vec<MultiIndex>) -> Self {
        self.degrees = degrees;
        self
    }

    pub fn q_value(&self, j: usize, i: usize) -> Scalar {
        self.q.get(&(j, i)).cloned().unwrap_or_else(Scalar::one)
    }

    /// `ψ(γ) = γM`.
    pub fn psi(&self, exponent: &MultiIndex) -> MultiIndex {
        let mut out = vec![0u32; self.n];
        for (k, &g) in exponent.entries().iter().enumerate() {
            if g == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.degrees[k].entries()) {
                *o += g * a;
            }
        }
        MultiIndex::new(out)
    }

    /// The order `⪯′` on ℕˢ: compare `γM` under the presentation order,
    /// then plain lex on `γ`.
    pub fn exponent_order(&self) -> AdmissibleOrder {
        AdmissibleOrder::matrix_then_lex(
            self.degrees
                .iter()
                .map(|r| r.entries().iter().map(|&e| i64::from(e)).collect())
                .collect(),
            self.order.clone(),
        )
    }

    /// Every violated tail degree bound, as `(j, i, γ, γM, α_i + α_j)`.
    pub fn tail_bound_violations(&self) -> Vec<(usize, usize, MultiIndex, MultiIndex, MultiIndex)> {
        let mut out = Vec::new();
        for (&(j, i), tail) in &self.tails {
            let bound = self.degrees[i].add(&self.degrees[j]);
            for gamma in tail.support() {
                let degree = self.psi(gamma);
                let strict = self
                    .order
                    .compare(&degree, &bound)
                    .map(|o| o == Ordering::Less)
                    .unwrap_or(false);
                if !strict {
                    out.push((j, i, gamma.clone(), degree, bound.clone()));
                }
            }
        }
        out
    }

    fn scalars(&self) -> impl Iterator<Item = (String, &Scalar)> {
        let q = self
            .q
            .iter()
            .map(|(&(j, i), v)| (format!("q x{} x{}", j + 1, i + 1), v));
        let comm = self.comm.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (format!("comm x{} z{}", i + 1, j + 1), v))
        });
        q.chain(comm)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        self.order.validate()?;
        if self.order.rank() != self.n {
            return Err(AlgebraError::Rank(format!(
                "order has rank {}, grading rank is {}",
                self.order.rank(),
                self.n
            )));
        }
        if self.degrees.len() != self.s {
            return Err(AlgebraError::Rank(format!(
                "{} degree rows for {} generators",
                self.degrees.len(),
                self.s
            )));
        }
        if let Some((i, d)) = self.degrees.iter().enumerate().find(|(_, d)| d.rank() != self.n) {
            return Err(AlgebraError::Rank(format!(
                "deg x{} = {} has rank {}, expected {}",
                i + 1,
                d,
                d.rank(),
                self.n
            )));
        }
        for (&(j, i), v) in &self.q {
            if j <= i {
                return Err(AlgebraError::IndexOrder { j: j + 1, i: i + 1 });
            }
            if j >= self.s {
                return Err(AlgebraError::GeneratorOutOfRange(j + 1));
            }
            if v.is_zero() {
                return Err(AlgebraError::ZeroUnit { j: j + 1, i: i + 1 });
            }
        }
        if self.comm.len() != self.s || self.comm.iter().any(|r| r.len() != self.t) {
            return Err(AlgebraError::Rank(format!(
                "commutation table must be {}×{}",
                self.s, self.t
            )));
        }
        for (i, row) in self.comm.iter().enumerate() {
            if let Some(j) = row.iter().position(Scalar::is_zero) {
                return Err(AlgebraError::ZeroCommutation { i: i + 1, j: j + 1 });
            }
        }
        for (&(j, i), tail) in &self.tails {
            if j <= i {
                return Err(AlgebraError::IndexOrder { j: j + 1, i: i + 1 });
            }
            if j >= self.s {
                return Err(AlgebraError::GeneratorOutOfRange(j + 1));
            }
            if tail.base_rank() != self.t || tail.gen_count() != self.s {
                return Err(AlgebraError::Rank(format!(
                    "tail x{} x{} lives in a different algebra",
                    j + 1,
                    i + 1
                )));
            }
        }
        if let Some((j, i, exponent, degree, bound)) =
            self.tail_bound_violations().into_iter().next()
        {
            return Err(AlgebraError::TailBound {
                j: j + 1,
                i: i + 1,
                exponent,
                degree,
                bound,
            });
        }
        if self.field == FieldKind::Rational {
            if let Some((what, _)) = self
                .scalars()
                .find(|(_, v)| v.kind() == FieldKind::RationalFunction)
            {
                return Err(AlgebraError::FieldMismatch { what });
            }
            for (&(j, i), tail) in &self.tails {
                let uses_q = tail.terms().any(|(_, a)| {
                    a.terms()
                        .any(|(_, c)| c.kind() == FieldKind::RationalFunction)
                });
                if uses_q {
                    return Err(AlgebraError::FieldMismatch {
                        what: format!("tail x{} x{}", j + 1, i + 1),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A validated presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    data: PresentationData,
    sigma: Vec<BaseAutomorphism>,
    exponent_order: AdmissibleOrder,
}

impl Deref for Presentation {
    type Target = PresentationData;

    fn deref(&self) -> &PresentationData {
        &self.data
    }
}

/// Validates raw data; zero tails are dropped.
pub fn make_presentation(mut data: PresentationData) -> Result<Presentation, AlgebraError> {
    data.tails.retain(|_, t| !t.is_zero());
    data.validate()?;
    let sigma = data
        .comm
        .iter()
        .map(|row| BaseAutomorphism::new(row.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let exponent_order = data.exponent_order();
    Ok(Presentation {
        data,
        sigma,
        exponent_order,
    })
}

impl Presentation {
    pub fn data(&self) -> &PresentationData {
        &self.data
    }

    pub fn into_data(self) -> PresentationData {
        self.data
    }

    pub fn sigma(&self, i: usize) -> &BaseAutomorphism {
        &self.sigma[i]
    }

    pub fn sigmas(&self) -> &[BaseAutomorphism] {
        &self.sigma
    }

    pub fn exponent_order(&self) -> &AdmissibleOrder {
        &self.exponent_order
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.t, self.s)
    }

    pub fn one(&self) -> Element {
        Element::one(self.t, self.s)
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.t, self.s, i)
    }

    pub fn base_element(&self, a: BaseElement) -> Element {
        Element::from_base(self.s, a)
    }

    /// `σ^γ = σ_1^{γ_1} ∘ ⋯ ∘ σ_s^{γ_s}`, so that `x^γ a = σ^γ(a) x^γ`.
    pub fn sigma_power(&self, exponent: &MultiIndex) -> BaseAutomorphism {
        let mut scales = vec![Scalar::one(); self.t];
        for (i, &g) in exponent.entries().iter().enumerate() {
            if g == 0 {
                continue;
            }
            for (acc, s) in scales.iter_mut().zip(self.sigma[i].scales()) {
                *acc = &*acc * &s.pow(i64::from(g)).expect("nonzero scale");
            }
        }
        BaseAutomorphism::new_unchecked(scales)
    }

    fn sigma_of_letters(&self, letters: &[usize]) -> BaseAutomorphism {
        let mut counts = vec![0u32; self.s];
        for &l in letters {
            counts[l] += 1;
        }
        self.sigma_power(&MultiIndex::new(counts))
    }

    fn exponent_of(&self, sorted: &[usize]) -> MultiIndex {
        let mut counts = vec![0u32; self.s];
        for &l in sorted {
            counts[l] += 1;
        }
        MultiIndex::new(counts)
    }

    /// Exhaustive generator sorting. Each pass rewrites the leftmost descent
    /// of every pending word once; words that meet in the same pass are
    /// merged.
    fn reduce_pool(&self, mut pool: BTreeMap<Vec<usize>, BaseElement>) -> Element {
        let mut result = self.zero();
        while !pool.is_empty() {
            let mut next: BTreeMap<Vec<usize>, BaseElement> = BTreeMap::new();
            for (word, coeff) in pool {
                let Some(p) = word.windows(2).position(|w| w[0] > w[1]) else {
                    result.add_term(self.exponent_of(&word), coeff);
                    continue;
                };
                let (j, i) = (word[p], word[p + 1]);
                let mut swapped = word.clone();
                swapped.swap(p, p + 1);
                push_pool(&mut next, swapped, coeff.scale(&self.q_value(j, i)));
                if let Some(tail) = self.tails.get(&(j, i)) {
                    let prefix_sigma = (self.t > 0).then(|| self.sigma_of_letters(&word[..p]));
                    for (gamma, a) in tail.terms() {
                        let moved = match &prefix_sigma {
                            Some(sg) => a.apply(sg),
                            None => a.clone(),
                        };
                        let mut w = word[..p].to_vec();
                        w.extend(expand_exponent(gamma));
                        w.extend_from_slice(&word[p + 2..]);
                        push_pool(&mut next, w, coeff.mul(&moved));
                    }
                }
            }
            pool = next;
        }
        result
    }

    /// Standard representation of a word: base factors are carried to the
    /// left first, then the generator word is sorted.
    pub fn normal_form(&self, word: &Word) -> Element {
        let mut coeff = BaseElement::constant(self.t, word.prefactor.clone());
        let mut gens: Vec<usize> = Vec::new();
        for atom in &word.atoms {
            match atom {
                Atom::Gen(i) => gens.push(*i),
                Atom::Base(b) => {
                    let moved = if gens.is_empty() || self.t == 0 {
                        b.clone()
                    } else {
                        b.apply(&self.sigma_of_letters(&gens))
                    };
                    coeff = coeff.mul(&moved);
                }
            }
        }
        let mut pool = BTreeMap::new();
        push_pool(&mut pool, gens, coeff);
        self.reduce_pool(pool)
    }

    pub fn normal_form_sum(&self, words: &[Word]) -> Element {
        let mut out = self.zero();
        for w in words {
            out.add_assign(&self.normal_form(w));
        }
        out
    }

    /// `a · b` in standard representation.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut pool = BTreeMap::new();
        for (gamma, ag) in a.terms() {
            let sg = self.sigma_power(gamma);
            let mut prefix = expand_exponent(gamma);
            let plen = prefix.len();
            for (delta, bd) in b.terms() {
                let coeff = ag.mul(&bd.apply(&sg));
                prefix.truncate(plen);
                prefix.extend(expand_exponent(delta));
                push_pool(&mut pool, prefix.clone(), coeff);
            }
        }
        self.reduce_pool(pool)
    }

    /// Multi-degree: the largest `γM` over the support.
    pub fn mdeg(&self, e: &Element) -> Result<MultiIndex, AlgebraError> {
        e.support()
            .map(|g| self.psi(g))
            .max_by(|a, b| self.order.compare_indices(a, b))
            .ok_or(AlgebraError::ZeroElement)
    }

    /// `e ∈ F_α`: every support exponent has `γM ⪯ α`.
    pub fn filtration_contains(&self, e: &Element, alpha: &MultiIndex) -> Result<bool, AlgebraError> {
        if alpha.rank() != self.n {
            return Err(AlgebraError::Rank(format!(
                "filtration index {} has rank {}, expected {}",
                alpha,
                alpha.rank(),
                self.n
            )));
        }
        Ok(e.support()
            .all(|g| self.order.compare(&self.psi(g), alpha) != Ok(Ordering::Greater)))
    }

    /// Leading term under `⪯′`.
    pub fn leading_term<'a>(&self, e: &'a Element) -> Option<(&'a MultiIndex, &'a BaseElement)> {
        e.terms()
            .max_by(|(a, _), (b, _)| self.exponent_order.compare_indices(a, b))
    }

    /// Canonical text: exponents ascending under `⪯′`, Laurent exponents
    /// lexicographic within each coefficient.
    pub fn render(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&MultiIndex, &BaseElement)> = e.terms().collect();
        terms.sort_by(|(a, _), (b, _)| self.exponent_order.compare_indices(a, b));
        let mut out = String::new();
        let mut first = true;
        for (gamma, coeff) in terms {
            let gens = gen_factors(gamma);
            for (beta, c) in coeff.terms() {
                let term = crate::base::render_term(c, &crate::base::laurent_factors(beta), &gens);
                crate::base::write_joined(&mut out, &term, first).expect("write to string");
                first = false;
            }
        }
        out
    }
}

fn gen_factors(gamma: &MultiIndex) -> Vec<String> {
    gamma
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect()
}

fn push_pool(pool: &mut BTreeMap<Vec<usize>, BaseElement>, word: Vec<usize>, coeff: BaseElement) {
    if coeff.is_zero() {
        return;
    }
    match pool.entry(word) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            o.get_mut().add_assign(&coeff);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests;
