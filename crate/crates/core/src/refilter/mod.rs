//! Re-filtration by a single weight vector.
//!
//! Tail exponents of the relations give the set
//! `C = {0} ∪ { γ − ε_i − ε_j : γ ∈ supp t_ji }`. A strictly positive
//! integer vector `w` with `⟨w, c⟩ < 0` on `C \ {0}` turns the ℕⁿ-filtration
//! into the ℕ-filtration `R_n = Σ_{⟨w,γ⟩ ≤ n} Λ x^γ` with the same
//! associated graded algebra.

pub mod fm;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{make_presentation, Presentation, PresentationData};
use crate::base::BaseElement;
use crate::graded::{gr_structure, pbw_check, GrPresentation};
use crate::order::{AdmissibleOrder, MultiIndex, SignedIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefilterError {
    #[error("C-set point {point} is not below 0 in the exponent order")]
    Precondition { point: SignedIndex },
    #[error("weight vector system is infeasible; remaining constraints: {}", constraints.join("; "))]
    Infeasible { constraints: Vec<String> },
    #[error("rank mismatch: C-set has rank {expected}, point {point} has rank {found}")]
    Rank {
        expected: usize,
        found: usize,
        point: SignedIndex,
    },
    #[error("PBW precondition failed on overlaps: {}", overlaps.join(", "))]
    PbwFailed { overlaps: Vec<String> },
}

/// A finite subset of ℤˢ containing 0, optionally tagged with the order
/// under which 0 must be its maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSet {
    s: usize,
    points: BTreeSet<SignedIndex>,
    order: Option<AdmissibleOrder>,
}

impl CSet {
    pub fn new(s: usize) -> Self {
        let mut points = BTreeSet::new();
        points.insert(SignedIndex::zero(s));
        CSet {
            s,
            points,
            order: None,
        }
    }

    pub fn with_order(mut self, order: AdmissibleOrder) -> Self {
        self.order = Some(order);
        self
    }

    pub fn insert(&mut self, point: SignedIndex) -> Result<(), RefilterError> {
        if point.rank() != self.s {
            return Err(RefilterError::Rank {
                expected: self.s,
                found: point.rank(),
                point,
            });
        }
        self.points.insert(point);
        Ok(())
    }

    pub fn from_points(
        s: usize,
        points: impl IntoIterator<Item = SignedIndex>,
    ) -> Result<Self, RefilterError> {
        let mut c = CSet::new(s);
        for p in points {
            c.insert(p)?;
        }
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.s
    }

    pub fn points(&self) -> &BTreeSet<SignedIndex> {
        &self.points
    }

    pub fn order(&self) -> Option<&AdmissibleOrder> {
        self.order.as_ref()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &SignedIndex> {
        self.points.iter().filter(|p| !p.is_zero())
    }

    /// The first nonzero point that is not strictly below 0. Without an
    /// attached order only the order-independent test applies: a nonzero
    /// point with no negative entry can never be negative under a positive
    /// weight.
    pub fn precondition_violation(&self) -> Option<&SignedIndex> {
        let zero = SignedIndex::zero(self.s);
        self.nonzero().find(|c| match &self.order {
            Some(order) => order.compare_signed(c.entries(), zero.entries()) != Ordering::Less,
            None => c.entries().iter().all(|&e| e >= 0),
        })
    }
}

/// A strictly positive integer weight vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    /// Returns `None` if some entry is 0.
    pub fn new(w: Vec<u64>) -> Option<Self> {
        w.iter().all(|&x| x >= 1).then_some(WeightVector(w))
    }

    pub fn ones(s: usize) -> Self {
        WeightVector(vec![1; s])
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, k: u64) -> Option<Self> {
        WeightVector::new(self.0.iter().map(|&x| x * k).collect())
    }

    pub fn pairing(&self, c: &SignedIndex) -> i64 {
        c.dot(&self.0)
    }

    pub fn degree(&self, gamma: &MultiIndex) -> u64 {
        gamma
            .entries()
            .iter()
            .zip(&self.0)
            .map(|(&g, &w)| u64::from(g) * w)
            .sum()
    }

    /// `⟨w, c⟩ < 0` for every nonzero point.
    pub fn verify(&self, c: &CSet) -> bool {
        self.rank() == c.rank() && c.nonzero().all(|p| self.pairing(p) < 0)
    }
}

pub fn build_c_set(pres: &Presentation) -> Result<CSet, RefilterError> {
    let mut c = CSet::new(pres.s).with_order(pres.exponent_order().clone());
    for (&(j, i), tail) in &pres.tails {
        let shift = MultiIndex::unit(pres.s, i)
            .add(&MultiIndex::unit(pres.s, j))
            .to_signed();
        for gamma in tail.support() {
            c.insert(gamma.to_signed().sub(&shift))?;
        }
    }
    match c.precondition_violation() {
        Some(p) => Err(RefilterError::Precondition { point: p.clone() }),
        None => Ok(c),
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Solves `⟨w, c⟩ ≤ −1` (c ∈ C \ {0}), `w_k ≥ 1` exactly, then clears
/// denominators and re-verifies the strict inequalities.
pub fn find_weight_vector(c: &CSet) -> Result<WeightVector, RefilterError> {
    if let Some(p) = c.precondition_violation() {
        return Err(RefilterError::Precondition { point: p.clone() });
    }
    let s = c.rank();
    let mut system = Vec::new();
    for k in 0..s {
        let mut coeffs = vec![BigRational::zero(); s];
        coeffs[k] = rational(-1);
        system.push(fm::Inequality::new(coeffs, rational(-1)));
    }
    for p in c.nonzero() {
        let coeffs = p.entries().iter().map(|&e| rational(e)).collect();
        system.push(fm::Inequality::new(coeffs, rational(-1)));
    }
    let infeasible = |constraints: Vec<fm::Inequality>| RefilterError::Infeasible {
        constraints: constraints.iter().map(ToString::to_string).collect(),
    };
    let point = fm::solve(&system, s).map_err(|e| infeasible(e.constraints))?;
    let lcm = BigRational::from_integer(fm::denominator_lcm(&point));
    let entries: Option<Vec<u64>> = point
        .iter()
        .map(|x| (x * &lcm).to_integer().to_u64())
        .collect();
    let w = entries
        .and_then(WeightVector::new)
        .ok_or_else(|| infeasible(system.clone()))?;
    if w.verify(c) {
        Ok(w)
    } else {
        Err(infeasible(system))
    }
}

/// One tail exponent of one relation with its w-degree and bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackRow {
    /// 0-based generator indices, `j > i`.
    pub j: usize,
    pub i: usize,
    pub exponent: MultiIndex,
    pub w_degree: u64,
    pub bound: u64,
}

impl SlackRow {
    pub fn holds(&self) -> bool {
        self.w_degree < self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefiltrationCertificate {
    pub weight_vector: WeightVector,
    pub c_set: CSet,
    pub relation_slack: Vec<SlackRow>,
    /// Per-generator slack for tails of `x_i a`; empty for this class of
    /// presentations.
    pub base_slack: Vec<Vec<SlackRow>>,
    pub gr_data: GrPresentation,
    pub valid: bool,
    /// `R_0 = Λ`.
    pub degree_zero_is_base: bool,
    /// Each `R_n` is a finitely generated Λ-module.
    pub finitely_generated: bool,
}

impl RefiltrationCertificate {
    pub fn to_json(&self) -> Value {
        let gr = &self.gr_data.presentation;
        let q: BTreeMap<String, String> = (0..gr.s)
            .flat_map(|j| (0..j).map(move |i| (j, i)))
            .map(|(j, i)| (format!("x{} x{}", j + 1, i + 1), gr.q_value(j, i).to_string()))
            .collect();
        let sigma: Vec<Vec<String>> = gr
            .sigmas()
            .iter()
            .map(|s| s.scales().iter().map(ToString::to_string).collect())
            .collect();
        json!({
            "weight_vector": self.weight_vector.entries(),
            "c_set": self.c_set.points().iter().map(|p| p.entries().to_vec()).collect::<Vec<_>>(),
            "relation_slack": self.relation_slack.iter().map(slack_json).collect::<Vec<_>>(),
            "base_slack": self.base_slack.iter()
                .map(|rows| rows.iter().map(slack_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "gr_data": {
                "generator_degrees": self.gr_data.generator_degrees.iter()
                    .map(|d| d.entries().to_vec()).collect::<Vec<_>>(),
                "q": q,
                "sigma": sigma,
            },
            "valid": self.valid,
            "degree_zero_is_base": self.degree_zero_is_base,
            "finitely_generated": self.finitely_generated,
        })
    }
}

fn slack_json(row: &SlackRow) -> Value {
    json!({
        "relation": [row.j + 1, row.i + 1],
        "exponent": row.exponent.entries(),
        "w_degree": row.w_degree,
        "bound": row.bound,
    })
}

fn slack_rows(pres: &Presentation, w: &WeightVector) -> Vec<SlackRow> {
    let mut rows = Vec::new();
    for (&(j, i), tail) in &pres.tails {
        let bound = w.entries()[i] + w.entries()[j];
        for gamma in tail.support() {
            rows.push(SlackRow {
                j,
                i,
                exponent: gamma.clone(),
                w_degree: w.degree(gamma),
                bound,
            });
        }
    }
    rows
}

pub fn refilter(pres: &Presentation) -> Result<RefiltrationCertificate, RefilterError> {
    let report = pbw_check(pres);
    if !report.pass {
        let mut overlaps: Vec<String> = report.witnesses.iter().map(|w| w.overlap.label()).collect();
        overlaps.extend(
            report
                .bound_violations
                .iter()
                .map(|v| format!("tail x{} x{} at {}", v.j + 1, v.i + 1, v.exponent)),
        );
        return Err(RefilterError::PbwFailed { overlaps });
    }
    let c_set = build_c_set(pres)?;
    let weight_vector = find_weight_vector(&c_set)?;
    let relation_slack = slack_rows(pres, &weight_vector);
    let mut cert = RefiltrationCertificate {
        weight_vector,
        c_set,
        relation_slack,
        base_slack: vec![Vec::new(); pres.s],
        gr_data: gr_structure(pres),
        valid: false,
        degree_zero_is_base: true,
        finitely_generated: true,
    };
    cert.valid = verify_certificate(&cert);
    Ok(cert)
}

/// Re-checks a certificate from its own contents: positivity of `w`, the
/// strict inequalities on `C`, and every slack row recomputed from `w`.
pub fn verify_certificate(cert: &RefiltrationCertificate) -> bool {
    let w = &cert.weight_vector;
    let rows_ok = |rows: &[SlackRow]| {
        rows.iter().all(|r| {
            r.i < r.j
                && r.j < w.rank()
                && r.exponent.rank() == w.rank()
                && r.w_degree == w.degree(&r.exponent)
                && r.bound == w.entries()[r.i] + w.entries()[r.j]
                && r.holds()
        })
    };
    w.entries().iter().all(|&x| x >= 1)
        && w.verify(&cert.c_set)
        && rows_ok(&cert.relation_slack)
        && cert.base_slack.iter().all(|rows| rows_ok(rows))
}

/// Checks that a certificate was issued for `pres`: same C-set, same slack
/// table, same graded data, and it verifies.
pub fn certificate_matches(pres: &Presentation, cert: &RefiltrationCertificate) -> bool {
    let same_c = build_c_set(pres)
        .map(|c| c.points() == cert.c_set.points())
        .unwrap_or(false);
    same_c
        && slack_rows(pres, &cert.weight_vector) == cert.relation_slack
        && gr_structure(pres) == cert.gr_data
        && verify_certificate(cert)
}

pub const CHECK_NAMES: [&str; 6] = [
    "q_units",
    "sigma_automorphisms",
    "base_noetherian",
    "sigma_degree_preserving",
    "pbw_pass",
    "refiltration_valid",
];

pub const CONCLUSION: &str = "R is Auslander-regular and Cohen-Macaulay: R carries an N-filtration \
with R_0 = Λ and gr(R) ≅ Λ[y_1; σ_1]…[y_s; σ_s] over the commutative Laurent ring Λ";

pub const TRUSTED_HYPOTHESES: [&str; 2] = [
    "gr(Λ) and the graded iterated Ore extension gr(Λ)[y_1; σ_1]…[y_s; σ_s] are Auslander-regular and Cohen-Macaulay (not computed)",
    "Auslander regularity and the Cohen-Macaulay property lift from gr(R) to R along the N-filtration (not computed)",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub checks: BTreeMap<&'static str, bool>,
    pub conclusion: Option<String>,
    pub trusted_hypotheses: Vec<String>,
    pub certificate: Option<RefiltrationCertificate>,
}

impl RegularityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.checks,
            "conclusion": self.conclusion,
            "trusted_hypotheses": self.trusted_hypotheses,
            "weight_vector": self.certificate.as_ref().map(|c| c.weight_vector.entries().to_vec()),
        })
    }
}

/// Evaluates every computable hypothesis on raw data, so that invalid
/// scalars show up as failed checks rather than errors.
pub fn regularity_report(data: &PresentationData) -> RegularityReport {
    let q_units = data.q.values().all(|v| !v.is_zero());
    let sigma_automorphisms = data.comm.iter().flatten().all(|v| !v.is_zero());
    // σ_i(z_l^{±1}) is a scalar multiple of z_l^{±1}
    let sigma_degree_preserving = sigma_automorphisms
        && data.comm.iter().all(|row| {
            let auto = crate::base::BaseAutomorphism::new_unchecked(row.clone());
            (0..data.t).all(|l| {
                [1, -1].iter().all(|&k| {
                    BaseElement::variable_power(data.t, l, k)
                        .apply(&auto)
                        .degree()
                        .is_some_and(|d| d <= 1)
                })
            })
        });
    let pres = make_presentation(data.clone()).ok();
    let pbw_pass = pres.as_ref().is_some_and(|p| pbw_check(p).pass);
    let certificate = pres
        .as_ref()
        .filter(|_| pbw_pass)
        .and_then(|p| refilter(p).ok());
    let refiltration_valid = certificate.as_ref().is_some_and(|c| c.valid);

    let checks: BTreeMap<&'static str, bool> = CHECK_NAMES
        .iter()
        .copied()
        .zip([
            q_units,
            sigma_automorphisms,
            true,
            sigma_degree_preserving,
            pbw_pass,
            refiltration_valid,
        ])
        .collect();
    let pass = checks.values().all(|&b| b);
    RegularityReport {
        checks,
        conclusion: pass.then(|| CONCLUSION.to_string()),
        trusted_hypotheses: if pass {
            TRUSTED_HYPOTHESES.iter().map(|s| s.to_string()).collect()
        } else {
            Vec::new()
        },
        certificate,
    }
}

/// `⟨w, c⟩` as an exact rational, for callers that verify outside `i64`.
pub fn exact_pairing(w: &WeightVector, c: &SignedIndex) -> BigRational {
    c.entries()
        .iter()
        .zip(w.entries())
        .map(|(&x, &y)| rational(x) * BigRational::from_integer(BigInt::from(y)))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// True if `⟨w, c⟩ < 0` holds exactly for every nonzero point.
pub fn verify_exact(w: &WeightVector, c: &CSet) -> bool {
    w.entries().iter().all(|&x| x >= 1)
        && c.nonzero().all(|p| exact_pairing(w, p).is_negative())
}

#[cfg(test)]
mod tests;
