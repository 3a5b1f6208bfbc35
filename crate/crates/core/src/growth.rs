//! Hilbert functions of the re-filtration and growth degree.
//!
//! The standard monomials `z^β x^γ` form a basis, so
//! `dim R_n = #{(β, γ) ∈ ℤᵗ × ℕˢ : |β|₁ + ⟨w, γ⟩ ≤ n}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::Presentation;
use crate::graded::{gr_structure, pbw_check};
use crate::refilter::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("weight vector has {found} entries, presentation has {expected} generators")]
    Rank { expected: usize, found: usize },
    #[error("n_max must be at least {min}, got {found}")]
    TooFewTerms { min: usize, found: usize },
}

fn check_rank(pres: &Presentation, w: &WeightVector) -> Result<(), GrowthError> {
    if w.rank() != pres.s {
        return Err(GrowthError::Rank {
            expected: pres.s,
            found: w.rank(),
        });
    }
    Ok(())
}

fn convolve(a: &[u128], b: &[u128]) -> Vec<u128> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|d| (0..=d).map(|k| a[k] * b[d - k]).sum())
        .collect()
}

/// `out[d] = #{(β, γ) : |β|₁ + ⟨w, γ⟩ = d}` for `d ≤ n_max`.
fn layer_counts(t: usize, weights: &[u64], n_max: usize) -> Vec<u128> {
    let len = n_max + 1;
    let mut out = vec![0u128; len];
    out[0] = 1;
    let laurent: Vec<u128> = (0..len).map(|d| if d == 0 { 1 } else { 2 }).collect();
    for _ in 0..t {
        out = convolve(&out, &laurent);
    }
    for &w in weights {
        let step = w as usize;
        let series: Vec<u128> = (0..len).map(|d| u128::from(d % step == 0)).collect();
        out = convolve(&out, &series);
    }
    out
}

fn cumulative(layers: &[u128]) -> Vec<u128> {
    layers
        .iter()
        .scan(0u128, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

pub fn hilbert_count(pres: &Presentation, w: &WeightVector, n: usize) -> Result<u128, GrowthError> {
    Ok(*hilbert_counts(pres, w, n)?.last().expect("n + 1 entries"))
}

/// `h(0), …, h(n_max)`.
pub fn hilbert_counts(pres: &Presentation, w: &WeightVector, n_max: usize) -> Result<Vec<u128>, GrowthError> {
    check_rank(pres, w)?;
    Ok(cumulative(&layer_counts(pres.t, w.entries(), n_max)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    /// Finite differences vanish from some index on.
    Exact,
    /// Log-ratio estimate; differences never stabilized.
    Estimate,
}

/// A polynomial in `n` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<BigRational>);

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    fn trimmed(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    /// Newton interpolation: `Σ_k Δ^k h(n0) · C(n − n0, k)`.
    fn from_differences(leading: &[BigRational], n0: i64) -> Self {
        let mut total = vec![BigRational::zero()];
        // binom holds C(n − n0, k) in the monomial basis
        let mut binom = vec![BigRational::one()];
        for (k, d) in leading.iter().enumerate() {
            if total.len() < binom.len() {
                total.resize(binom.len(), BigRational::zero());
            }
            for (t, b) in total.iter_mut().zip(&binom) {
                *t += d * b;
            }
            // C(n − n0, k + 1) = C(n − n0, k) · (n − n0 − k) / (k + 1)
            let shift = BigRational::from_integer(BigInt::from(-(n0 + k as i64)));
            let denom = BigRational::from_integer(BigInt::from(k as i64 + 1));
            let mut next = vec![BigRational::zero(); binom.len() + 1];
            for (e, b) in binom.iter().enumerate() {
                next[e + 1] += b / &denom;
                next[e] += b * &shift / &denom;
            }
            binom = next;
        }
        Polynomial::trimmed(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "n")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTable {
    pub counts: Vec<u128>,
    pub w: WeightVector,
    pub estimated_degree: BigRational,
    pub kind: DegreeKind,
    pub exact_fit: Option<Polynomial>,
    /// First `n` from which `exact_fit` reproduces the counts.
    pub fit_from: Option<usize>,
}

impl GrowthTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,h\n");
        for (n, h) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{h}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "counts": self.counts.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            "weight_vector": self.w.entries(),
            "estimated_degree": self.estimated_degree.to_string(),
            "degree_kind": match self.kind {
                DegreeKind::Exact => "exact",
                DegreeKind::Estimate => "estimate",
            },
            "exact_fit": self.exact_fit.as_ref().map(ToString::to_string),
            "fit_from": self.fit_from,
        })
    }
}

pub const MIN_TERMS: usize = 8;

/// Smallest `d` such that the `(d+1)`-st differences vanish on a suffix
/// covering at least half of their indices, with the Newton fit from the
/// start of that suffix; otherwise `log₂(h(n_max) / h(n_max / 2))`.
pub fn growth_degree(counts: &[u128]) -> (BigRational, DegreeKind, Option<Polynomial>, Option<usize>) {
    let mut rows: Vec<Vec<BigRational>> = vec![counts
        .iter()
        .map(|&h| BigRational::from_integer(BigInt::from(h)))
        .collect()];
    loop {
        let last = rows.last().expect("nonempty");
        if last.len() < 4 {
            break;
        }
        let next: Vec<BigRational> = last.windows(2).map(|p| &p[1] - &p[0]).collect();
        let zero_suffix = next.iter().rev().take_while(|x| x.is_zero()).count();
        if zero_suffix * 2 >= next.len() && zero_suffix > 0 {
            let d = rows.len() - 1;
            let n0 = next.len() - zero_suffix;
            let leading: Vec<BigRational> = rows.iter().map(|r| r[n0].clone()).collect();
            let fit = Polynomial::from_differences(&leading, n0 as i64);
            return (
                BigRational::from_integer(BigInt::from(d)),
                DegreeKind::Exact,
                Some(fit),
                Some(n0),
            );
        }
        rows.push(next);
    }
    let n_max = counts.len() - 1;
    let ratio = counts[n_max] as f64 / counts[n_max / 2].max(1) as f64;
    let estimate = ratio.log2() / ((n_max as f64) / ((n_max / 2).max(1) as f64)).log2();
    let milli = (estimate * 1000.0).round().to_i64().unwrap_or(0).max(0);
    (
        BigRational::new(BigInt::from(milli), BigInt::from(1000)),
        DegreeKind::Estimate,
        None,
        None,
    )
}

pub fn gk_estimate(pres: &Presentation, w: &WeightVector, n_max: usize) -> Result<GrowthTable, GrowthError> {
    if n_max < MIN_TERMS {
        return Err(GrowthError::TooFewTerms {
            min: MIN_TERMS,
            found: n_max,
        });
    }
    let counts = hilbert_counts(pres, w, n_max)?;
    let (estimated_degree, kind, exact_fit, fit_from) = growth_degree(&counts);
    Ok(GrowthTable {
        counts,
        w: w.clone(),
        estimated_degree,
        kind,
        exact_fit,
        fit_from,
    })
}

/// Counts for `pres` under `w` against counts for `other` under `w_other`.
pub fn graded_dim_compare_weights(
    pres: &Presentation,
    w: &WeightVector,
    other: &Presentation,
    w_other: &WeightVector,
    n_max: usize,
) -> bool {
    if !pbw_check(pres).pass || !pbw_check(other).pass {
        return false;
    }
    match (hilbert_counts(pres, w, n_max), hilbert_counts(other, w_other, n_max)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// `dim R_n = dim gr(R)_{≤n}` for every `n ≤ n_max`.
pub fn graded_dim_compare(pres: &Presentation, w: &WeightVector, n_max: usize) -> bool {
    let gr = gr_structure(pres);
    graded_dim_compare_weights(pres, w, &gr.presentation, w, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use crate::presets::{quantum_affine_generic, quantum_plane, quantum_weyl, uq_sl2};

    fn ones(s: usize) -> WeightVector {
        WeightVector::ones(s)
    }

    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn examples() {
        let plane = quantum_plane(Scalar::q()).unwrap();
        assert_eq!(hilbert_count(&plane, &ones(2), 4).unwrap(), 15);
        assert_eq!(hilbert_count(&plane, &ones(2), 0).unwrap(), 1);
        let sl2 = uq_sl2().unwrap();
        assert_eq!(hilbert_count(&sl2, &ones(2), 2).unwrap(), 14);
        assert_eq!(hilbert_count(&sl2, &ones(2), 0).unwrap(), 1);
    }

    #[test]
    fn weighted_count() {
        // a + 2b ≤ 3 with a, b ≥ 0: (0..=3, 0), (0..=1, 1) → 6
        let plane = quantum_plane(Scalar::q()).unwrap();
        let w = WeightVector::new(vec![1, 2]).unwrap();
        assert_eq!(hilbert_count(&plane, &w, 3).unwrap(), 6);
    }

    #[test]
    fn degrees() {
        for s in 1..=3 {
            let t = gk_estimate(&quantum_affine_generic(s).unwrap(), &ones(s), 30).unwrap();
            assert_eq!(t.kind, DegreeKind::Exact);
            assert_eq!(t.estimated_degree, BigRational::from_integer(BigInt::from(s)));
            for (n, &h) in t.counts.iter().enumerate() {
                assert_eq!(h, binom(n as u128 + s as u128, s as u128));
            }
        }
        let t = gk_estimate(&uq_sl2().unwrap(), &ones(2), 60).unwrap();
        assert_eq!(t.estimated_degree, BigRational::from_integer(3.into()));
        let fit = t.exact_fit.unwrap();
        for n in 0..=60u128 {
            let expected = binom(n + 2, 2) + 2 * binom(n + 2, 3);
            assert_eq!(fit.eval(n as i64), BigRational::from_integer(BigInt::from(expected)));
        }
        assert_eq!(t.fit_from, Some(0));
    }

    #[test]
    fn fit_display() {
        let t = gk_estimate(&quantum_affine_generic(2).unwrap(), &ones(2), 10).unwrap();
        assert_eq!(t.exact_fit.unwrap().to_string(), "1 + 3/2*n + 1/2*n^2");
    }

    #[test]
    fn exponential_counts_fall_back() {
        let counts: Vec<u128> = (0..20).map(|n| 1u128 << n).collect();
        let (_, kind, fit, _) = growth_degree(&counts);
        assert_eq!(kind, DegreeKind::Estimate);
        assert!(fit.is_none());
    }

    #[test]
    fn short_tables_rejected() {
        assert!(gk_estimate(&uq_sl2().unwrap(), &ones(2), 5).is_err());
    }

    #[test]
    fn graded_comparison() {
        let sl2 = uq_sl2().unwrap();
        assert!(graded_dim_compare(&sl2, &ones(2), 30));
        let weyl = quantum_weyl(Scalar::q()).unwrap();
        let plane = quantum_plane(Scalar::q()).unwrap();
        assert!(graded_dim_compare_weights(&weyl, &ones(2), &plane, &ones(2), 30));
        let skew = WeightVector::new(vec![1, 2]).unwrap();
        assert!(!graded_dim_compare_weights(&weyl, &ones(2), &plane, &skew, 30));
    }

    #[test]
    fn csv() {
        let t = gk_estimate(&quantum_plane(Scalar::q()).unwrap(), &ones(2), 8).unwrap();
        assert!(t.to_csv().starts_with("n,h\n0,1\n1,3\n2,6\n"));
    }
}
