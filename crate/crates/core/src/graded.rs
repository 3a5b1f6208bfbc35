//! Associated graded data and confluence checking.
//!
//! Tails have strictly smaller degree than the monomial they correct, so the
//! associated graded algebra is the iterated Ore extension obtained by
//! deleting them. Uniqueness of standard representations is decided by
//! resolving the overlaps of the rewriting system: the generator triples
//! `x_k x_j x_i` (`k > j > i`) and the pairs `x_j x_i · z_l`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{make_presentation, Atom, Element, Presentation, Word};
use crate::base::{BaseAutomorphism, BaseElement};
use crate::order::MultiIndex;
use crate::sample::random_base_element;

/// The associated graded presentation: the source with every tail deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrPresentation {
    pub presentation: Presentation,
    /// Degrees of the homogeneous generators `y_i` (rows of `M`).
    pub generator_degrees: Vec<MultiIndex>,
}

impl GrPresentation {
    pub fn sigmas(&self) -> &[BaseAutomorphism] {
        self.presentation.sigmas()
    }
}

pub fn gr_structure(pres: &Presentation) -> GrPresentation {
    let mut data = pres.data().clone();
    data.tails.clear();
    let presentation = make_presentation(data).expect("deleting tails keeps a presentation valid");
    GrPresentation {
        generator_degrees: presentation.degrees.clone(),
        presentation,
    }
}

/// Where two reductions of the same word start.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overlap {
    /// `x_k x_j x_i` with `k > j > i` (0-based).
    Triple(usize, usize, usize),
    /// `x_j x_i · z_l` (0-based).
    BasePair { j: usize, i: usize, z: usize },
}

impl Overlap {
    /// 1-based label, e.g. `x3 x2 x1` or `x2 x1 z1`.
    pub fn label(&self) -> String {
        match self {
            Overlap::Triple(k, j, i) => format!("x{} x{} x{}", k + 1, j + 1, i + 1),
            Overlap::BasePair { j, i, z } => format!("x{} x{} z{}", j + 1, i + 1, z + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapWitness {
    pub overlap: Overlap,
    pub path_a: Element,
    pub path_b: Element,
    /// `path_a − path_b`, nonzero.
    pub difference: Element,
}

/// A tail exponent that does not sit strictly below its bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub j: usize,
    pub i: usize,
    pub exponent: MultiIndex,
    pub degree: MultiIndex,
    pub bound: MultiIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    pub pass: bool,
    pub witnesses: Vec<OverlapWitness>,
    pub bound_violations: Vec<BoundViolation>,
    pub overlaps_checked: usize,
}

fn tail_words(pres: &Presentation, j: usize, i: usize) -> Vec<Word> {
    match pres.tails.get(&(j, i)) {
        None => Vec::new(),
        Some(tail) => tail
            .terms()
            .map(|(gamma, a)| {
                let mut atoms = vec![Atom::Base(a.clone())];
                atoms.extend(crate::algebra::expand_exponent(gamma).into_iter().map(Atom::Gen));
                Word::new(crate::field::Scalar::one(), atoms)
            })
            .collect(),
    }
}

/// Applies the relation for `x_j x_i` once, then reduces `prefix · (…) · suffix`.
fn rewrite_then_reduce(pres: &Presentation, prefix: &[Atom], j: usize, i: usize, suffix: &[Atom]) -> Element {
    let around = |middle: Word| {
        let mut atoms = prefix.to_vec();
        atoms.extend(middle.atoms);
        atoms.extend_from_slice(suffix);
        Word::new(middle.prefactor, atoms)
    };
    let swapped = Word::new(pres.q_value(j, i), vec![Atom::Gen(i), Atom::Gen(j)]);
    let mut out = pres.normal_form(&around(swapped));
    for w in tail_words(pres, j, i) {
        out.add_assign(&pres.normal_form(&around(w)));
    }
    out
}

fn check_overlap(pres: &Presentation, overlap: Overlap) -> Option<OverlapWitness> {
    let (path_a, path_b) = match overlap {
        Overlap::Triple(k, j, i) => {
            let a = rewrite_then_reduce(pres, &[], k, j, &[Atom::Gen(i)]);
            let b = rewrite_then_reduce(pres, &[Atom::Gen(k)], j, i, &[]);
            (a, b)
        }
        Overlap::BasePair { j, i, z } => {
            let zl = BaseElement::variable_power(pres.t, z, 1);
            let a = rewrite_then_reduce(pres, &[], j, i, &[Atom::Base(zl.clone())]);
            // x_i z_l = λ_il z_l x_i first
            let moved = zl.apply(pres.sigma(i));
            let b = pres.normal_form(&Word::new(
                crate::field::Scalar::one(),
                vec![Atom::Gen(j), Atom::Base(moved), Atom::Gen(i)],
            ));
            (a, b)
        }
    };
    let difference = path_a.sub(&path_b);
    (!difference.is_zero()).then_some(OverlapWitness {
        overlap,
        path_a,
        path_b,
        difference,
    })
}

/// Resolves every overlap and re-checks the tail degree bounds.
pub fn pbw_check(pres: &Presentation) -> PbwReport {
    let mut overlaps = Vec::new();
    for k in 0..pres.s {
        for j in 0..k {
            for i in 0..j {
                overlaps.push(Overlap::Triple(k, j, i));
            }
        }
    }
    for j in 0..pres.s {
        for i in 0..j {
            for z in 0..pres.t {
                overlaps.push(Overlap::BasePair { j, i, z });
            }
        }
    }
    let overlaps_checked = overlaps.len();
    let mut witnesses: Vec<OverlapWitness> = overlaps
        .into_iter()
        .filter_map(|o| check_overlap(pres, o))
        .collect();
    witnesses.sort_by(|a, b| a.overlap.cmp(&b.overlap));
    let bound_violations: Vec<BoundViolation> = pres
        .tail_bound_violations()
        .into_iter()
        .map(|(j, i, exponent, degree, bound)| BoundViolation {
            j,
            i,
            exponent,
            degree,
            bound,
        })
        .collect();
    PbwReport {
        pass: witnesses.is_empty() && bound_violations.is_empty(),
        witnesses,
        bound_violations,
        overlaps_checked,
    }
}

/// Checks on a seeded sample that every pure base word normalizes to
/// itself at x-exponent 0, i.e. no base element acquires a representation
/// of smaller degree.
pub fn gr_injectivity_evidence(pres: &Presentation, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fixed = |a: BaseElement| {
        let nf = pres.normal_form(&Word::new(crate::field::Scalar::one(), vec![Atom::Base(a.clone())]));
        nf.is_pure_base() && nf == pres.base_element(a)
    };
    if !fixed(BaseElement::one(pres.t)) {
        return false;
    }
    (0..samples).all(|_| fixed(random_base_element(&mut rng, pres.t, pres.field, 4)))
}
