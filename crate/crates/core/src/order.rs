//! Multi-indices in ℕⁿ and ℤⁿ together with the admissible monomial orders
//! used throughout the crate.
//!
//! Every order variant is a total group order on ℤⁿ whose restriction to ℕⁿ
//! is admissible: total, translation invariant, and with `0` as its minimum.
//! Comparison therefore works on signed vectors as well, which is what the
//! weight-vector synthesis needs when it compares points of a C-set with 0.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("lex priority {0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("matrix row {row} has length {found}, inner order has rank {expected}")]
    MatrixShape { row: usize, expected: usize, found: usize },
    #[error("matrix row {row} maps a unit vector below zero")]
    NegativeUnitImage { row: usize },
}

/// Exponent vector in ℕⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(rank: usize) -> Self {
        MultiIndex(vec![0; rank])
    }

    /// The unit vector ε_i.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Componentwise sum. Panics on rank mismatch.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.rank(), other.rank(), "multi-index rank mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self ≥ other` componentwise.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Coordinates with a nonzero entry.
    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_signed(&self) -> SignedIndex {
        SignedIndex(self.0.iter().map(|&e| i64::from(e)).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Exponent vector in ℤⁿ (Laurent exponents, C-set points).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedIndex(Vec<i64>);

impl SignedIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        SignedIndex(entries)
    }

    pub fn zero(rank: usize) -> Self {
        SignedIndex(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &SignedIndex) -> SignedIndex {
        assert_eq!(self.rank(), other.rank(), "signed index rank mismatch");
        SignedIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &SignedIndex) -> SignedIndex {
        assert_eq!(self.rank(), other.rank(), "signed index rank mismatch");
        SignedIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> SignedIndex {
        SignedIndex(self.0.iter().map(|a| -a).collect())
    }

    /// ℓ¹ norm, the standard degree of a Laurent monomial.
    pub fn abs_sum(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn dot(&self, weights: &[u64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&a, &w)| a * w as i64)
            .sum()
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The shipped families of admissible orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdmissibleOrder {
    /// Lexicographic; `priority[0]` is the coordinate compared first.
    Lex { priority: Vec<usize> },
    /// Weighted degree, ties broken by plain lex.
    DegThenLex { weights: Vec<u64> },
    /// Compare images `αM` (M has one row per coordinate) under `inner`,
    /// ties broken by plain lex on `α` itself.
    MatrixThenLex {
        matrix: Vec<Vec<i64>>,
        inner: Box<AdmissibleOrder>,
    },
    /// Split `(λ, ν)` with `λ` of rank `inner.rank()`; compare `ν` under
    /// `outer` first and `λ` under `inner` on ties.
    PairProduct {
        inner: Box<AdmissibleOrder>,
        outer: Box<AdmissibleOrder>,
    },
}

impl AdmissibleOrder {
    pub fn lex(rank: usize) -> Self {
        AdmissibleOrder::Lex {
            priority: (0..rank).collect(),
        }
    }

    pub fn deglex(rank: usize) -> Self {
        AdmissibleOrder::DegThenLex {
            weights: vec![1; rank],
        }
    }

    /// `α ⪯ β ⇔ αM ≺ βM under inner, or αM = βM and α ≤lex β`.
    pub fn matrix_then_lex(matrix: Vec<Vec<i64>>, inner: AdmissibleOrder) -> Self {
        AdmissibleOrder::MatrixThenLex {
            matrix,
            inner: Box::new(inner),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            AdmissibleOrder::Lex { priority } => priority.len(),
            AdmissibleOrder::DegThenLex { weights } => weights.len(),
            AdmissibleOrder::MatrixThenLex { matrix, .. } => matrix.len(),
            AdmissibleOrder::PairProduct { inner, outer } => inner.rank() + outer.rank(),
        }
    }

    /// Checks the structural conditions that make the variant admissible.
    pub fn validate(&self) -> Result<(), OrderError> {
        match self {
            AdmissibleOrder::Lex { priority } => {
                let mut seen = vec![false; priority.len()];
                for &p in priority {
                    if p >= seen.len() || seen[p] {
                        return Err(OrderError::NotAPermutation(priority.clone()));
                    }
                    seen[p] = true;
                }
                Ok(())
            }
            AdmissibleOrder::DegThenLex { .. } => Ok(()),
            AdmissibleOrder::MatrixThenLex { matrix, inner } => {
                inner.validate()?;
                let zero = vec![0; inner.rank()];
                for (row, r) in matrix.iter().enumerate() {
                    if r.len() != inner.rank() {
                        return Err(OrderError::MatrixShape {
                            row,
                            expected: inner.rank(),
                            found: r.len(),
                        });
                    }
                    if inner.compare_signed(r, &zero) == Ordering::Less {
                        return Err(OrderError::NegativeUnitImage { row });
                    }
                }
                Ok(())
            }
            AdmissibleOrder::PairProduct { inner, outer } => {
                inner.validate()?;
                outer.validate()
            }
        }
    }

    /// Compares two signed vectors of the order's rank. The caller is
    /// responsible for the lengths.
    pub fn compare_signed(&self, a: &[i64], b: &[i64]) -> Ordering {
        match self {
            AdmissibleOrder::Lex { priority } => priority
                .iter()
                .map(|&k| a[k].cmp(&b[k]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
            AdmissibleOrder::DegThenLex { weights } => {
                let wa: i128 = a.iter().zip(weights).map(|(&x, &w)| x as i128 * w as i128).sum();
                let wb: i128 = b.iter().zip(weights).map(|(&x, &w)| x as i128 * w as i128).sum();
                wa.cmp(&wb).then_with(|| a.cmp(b))
            }
            AdmissibleOrder::MatrixThenLex { matrix, inner } => {
                let ia = apply_matrix(matrix, a, inner.rank());
                let ib = apply_matrix(matrix, b, inner.rank());
                inner.compare_signed(&ia, &ib).then_with(|| a.cmp(b))
            }
            AdmissibleOrder::PairProduct { inner, outer } => {
                let split = inner.rank();
                outer
                    .compare_signed(&a[split..], &b[split..])
                    .then_with(|| inner.compare_signed(&a[..split], &b[..split]))
            }
        }
    }

    pub fn compare(&self, a: &MultiIndex, b: &MultiIndex) -> Result<Ordering, OrderError> {
        for x in [a, b] {
            if x.rank() != self.rank() {
                return Err(OrderError::RankMismatch {
                    expected: self.rank(),
                    found: x.rank(),
                });
            }
        }
        Ok(self.compare_signed(&a.to_signed().0, &b.to_signed().0))
    }

    pub fn compare_signed_index(
        &self,
        a: &SignedIndex,
        b: &SignedIndex,
    ) -> Result<Ordering, OrderError> {
        for x in [a, b] {
            if x.rank() != self.rank() {
                return Err(OrderError::RankMismatch {
                    expected: self.rank(),
                    found: x.rank(),
                });
            }
        }
        Ok(self.compare_signed(&a.0, &b.0))
    }
}

/// Row vector times matrix: `Σ_k v_k · matrix[k]`.
pub fn apply_matrix(matrix: &[Vec<i64>], v: &[i64], cols: usize) -> Vec<i64> {
    let mut out = vec![0i64; cols];
    for (k, row) in matrix.iter().enumerate() {
        let c = v[k];
        if c == 0 {
            continue;
        }
        for (o, &m) in out.iter_mut().zip(row) {
            *o += c * m;
        }
    }
    out
}

/// Anything that compares multi-indices of a fixed rank. Implemented by the
/// shipped orders and by closures, so ill-behaved comparators can be probed.
pub trait Comparator {
    fn compare_indices(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering;
}

impl Comparator for AdmissibleOrder {
    fn compare_indices(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        self.compare_signed(&a.to_signed().0, &b.to_signed().0)
    }
}

impl<F> Comparator for F
where
    F: Fn(&MultiIndex, &MultiIndex) -> Ordering,
{
    fn compare_indices(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        self(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Distinct indices compared equal.
    NotTotal { a: MultiIndex, b: MultiIndex },
    /// `compare(a, b)` is not the reverse of `compare(b, a)`.
    NotAntisymmetric { a: MultiIndex, b: MultiIndex },
    /// `a ≺ b` but not `a + c ≺ b + c`.
    NotTranslationInvariant {
        a: MultiIndex,
        b: MultiIndex,
        c: MultiIndex,
    },
    /// `a ≺ 0`.
    ZeroNotMinimal { a: MultiIndex },
    /// `a ≺ b ≺ c` but not `a ≺ c`.
    NotTransitive {
        a: MultiIndex,
        b: MultiIndex,
        c: MultiIndex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub pass: bool,
    pub samples: usize,
    pub witness: Option<Violation>,
}

fn check_pair<C: Comparator + ?Sized>(
    order: &C,
    a: &MultiIndex,
    b: &MultiIndex,
) -> Option<Violation> {
    let ab = order.compare_indices(a, b);
    if ab == Ordering::Equal && a != b {
        return Some(Violation::NotTotal {
            a: a.clone(),
            b: b.clone(),
        });
    }
    if ab != order.compare_indices(b, a).reverse() {
        return Some(Violation::NotAntisymmetric {
            a: a.clone(),
            b: b.clone(),
        });
    }
    None
}

fn check_triple<C: Comparator + ?Sized>(
    order: &C,
    a: &MultiIndex,
    b: &MultiIndex,
    c: &MultiIndex,
) -> Option<Violation> {
    let zero = MultiIndex::zero(a.rank());
    for x in [a, b, c] {
        if order.compare_indices(x, &zero) == Ordering::Less {
            return Some(Violation::ZeroNotMinimal { a: x.clone() });
        }
    }
    if let Some(v) = check_pair(order, a, b) {
        return Some(v);
    }
    let ab = order.compare_indices(a, b);
    if ab != Ordering::Equal && order.compare_indices(&a.add(c), &b.add(c)) != ab {
        return Some(Violation::NotTranslationInvariant {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        });
    }
    let bc = order.compare_indices(b, c);
    if ab == Ordering::Less && bc == Ordering::Less && order.compare_indices(a, c) != Ordering::Less
    {
        return Some(Violation::NotTransitive {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        });
    }
    None
}

/// Probes totality, translation invariance, zero minimality and
/// transitivity. The unit vectors are checked exhaustively first, then
/// `sample_count` seeded random triples with small entries.
pub fn admissibility_probe<C: Comparator + ?Sized>(
    order: &C,
    sample_count: usize,
    rank: usize,
    seed: u64,
) -> ProbeReport {
    let zero = MultiIndex::zero(rank);
    let units: Vec<MultiIndex> = (0..rank).map(|i| MultiIndex::unit(rank, i)).collect();
    for (i, a) in units.iter().enumerate() {
        if order.compare_indices(a, &zero) != Ordering::Greater {
            let witness = if order.compare_indices(a, &zero) == Ordering::Equal {
                Violation::NotTotal {
                    a: a.clone(),
                    b: zero.clone(),
                }
            } else {
                Violation::ZeroNotMinimal { a: a.clone() }
            };
            return ProbeReport {
                pass: false,
                samples: 0,
                witness: Some(witness),
            };
        }
        for b in &units[i + 1..] {
            if let Some(w) = check_pair(order, a, b) {
                return ProbeReport {
                    pass: false,
                    samples: 0,
                    witness: Some(w),
                };
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        MultiIndex::new(
            (0..rank)
                .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..6) })
                .collect(),
        )
    };
    for k in 0..sample_count {
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let c = draw(&mut rng);
        if let Some(w) = check_triple(order, &a, &b, &c) {
            return ProbeReport {
                pass: false,
                samples: k + 1,
                witness: Some(w),
            };
        }
    }
    ProbeReport {
        pass: true,
        samples: sample_count,
        witness: None,
    }
}

/// Minimal elements under componentwise ≤, sorted and deduplicated.
pub fn dickson_minimals(points: &[MultiIndex]) -> Vec<MultiIndex> {
    let mut sorted: Vec<&MultiIndex> = points.iter().collect();
    sorted.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut minimal: Vec<MultiIndex> = Vec::new();
    for p in sorted {
        // anything dominating p has total degree ≥ deg(p), so it comes later
        if !minimal.iter().any(|m| p.dominates(m)) {
            minimal.push(p.clone());
        }
    }
    minimal.sort();
    minimal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn compare_examples() {
        let lex = AdmissibleOrder::lex(2);
        assert_eq!(lex.compare(&mi(&[0, 2]), &mi(&[1, 0])).unwrap(), Ordering::Less);
        let deg = AdmissibleOrder::deglex(2);
        assert_eq!(deg.compare(&mi(&[1, 0]), &mi(&[0, 2])).unwrap(), Ordering::Less);
        let column = AdmissibleOrder::matrix_then_lex(vec![vec![1], vec![1]], AdmissibleOrder::lex(1));
        assert_eq!(column.compare(&mi(&[1, 1]), &mi(&[2, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn compare_rank_mismatch() {
        let lex = AdmissibleOrder::lex(2);
        assert_eq!(
            lex.compare(&mi(&[0, 2, 1]), &mi(&[1, 0])),
            Err(OrderError::RankMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn lex_priority_permutes() {
        let lex = AdmissibleOrder::Lex { priority: vec![1, 0] };
        assert_eq!(lex.compare(&mi(&[0, 2]), &mi(&[1, 0])).unwrap(), Ordering::Greater);
        assert!(AdmissibleOrder::Lex { priority: vec![0, 0] }.validate().is_err());
    }

    #[test]
    fn pair_product_compares_outer_first() {
        let order = AdmissibleOrder::PairProduct {
            inner: Box::new(AdmissibleOrder::lex(1)),
            outer: Box::new(AdmissibleOrder::deglex(2)),
        };
        // (λ; ν) = (5; 0,1) vs (0; 1,0): outer deglex says (0,1) < (1,0)
        assert_eq!(order.compare(&mi(&[5, 0, 1]), &mi(&[0, 1, 0])).unwrap(), Ordering::Less);
        assert_eq!(order.compare(&mi(&[0, 1, 0]), &mi(&[2, 1, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn probe_accepts_shipped_orders() {
        let orders = [
            AdmissibleOrder::lex(3),
            AdmissibleOrder::deglex(3),
            AdmissibleOrder::DegThenLex { weights: vec![2, 0, 5] },
            AdmissibleOrder::matrix_then_lex(
                vec![vec![1, 0], vec![1, 1], vec![0, 2]],
                AdmissibleOrder::deglex(2),
            ),
        ];
        for o in &orders {
            let r = admissibility_probe(o, 2_000, 3, 7);
            assert!(r.pass, "{o:?}: {:?}", r.witness);
        }
    }

    #[test]
    fn probe_rejects_reversed_comparator() {
        let deg = AdmissibleOrder::deglex(2);
        let reversed = |a: &MultiIndex, b: &MultiIndex| deg.compare_indices(b, a);
        let r = admissibility_probe(&reversed, 100, 2, 1);
        assert!(!r.pass);
        match r.witness {
            Some(Violation::ZeroNotMinimal { a }) => {
                assert_eq!(reversed(&a, &MultiIndex::zero(2)), Ordering::Less)
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn probe_rejects_untied_zero_weight() {
        let flat = |a: &MultiIndex, b: &MultiIndex| {
            let w = [0u32, 0];
            let da: u32 = a.entries().iter().zip(&w).map(|(x, y)| x * y).sum();
            let db: u32 = b.entries().iter().zip(&w).map(|(x, y)| x * y).sum();
            da.cmp(&db)
        };
        let r = admissibility_probe(&flat, 100, 2, 1);
        assert!(!r.pass);
        match r.witness {
            Some(Violation::NotTotal { a, b }) => {
                assert_ne!(a, b);
                assert_eq!(flat(&a, &b), Ordering::Equal);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn dickson_examples() {
        let pts = vec![mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 3]), mi(&[3, 1])];
        assert_eq!(dickson_minimals(&pts), vec![mi(&[0, 3]), mi(&[1, 1]), mi(&[2, 0])]);
        assert!(dickson_minimals(&[]).is_empty());
        assert_eq!(dickson_minimals(&[mi(&[0, 0]), mi(&[5, 7])]), vec![mi(&[0, 0])]);
    }

    #[test]
    fn support_examples() {
        assert_eq!(mi(&[0, 3, 0]).support(), BTreeSet::from([1]));
        assert!(mi(&[0, 0]).support().is_empty());
        assert_eq!(mi(&[1, 1]).support(), BTreeSet::from([0, 1]));
    }

    #[test]
    fn matrix_validation_rejects_negative_unit_image() {
        let bad = AdmissibleOrder::matrix_then_lex(vec![vec![-1, 0], vec![0, 1]], AdmissibleOrder::lex(2));
        assert_eq!(bad.validate(), Err(OrderError::NegativeUnitImage { row: 0 }));
        // degrevlex-style rows are fine: (1,1),(0,-1) transposed
        let ok = AdmissibleOrder::matrix_then_lex(vec![vec![1, 0], vec![1, -1]], AdmissibleOrder::lex(2));
        assert!(ok.validate().is_ok());
    }
}
