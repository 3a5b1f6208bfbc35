//! Exact Fourier–Motzkin elimination for systems `Σ a_k x_k ≤ b` over ℚ.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `Σ coeffs[k] · x_k ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Inequality { coeffs, rhs }.normalized()
    }

    /// Scales so the largest absolute coefficient (or |rhs| when all
    /// coefficients vanish) is 1; makes duplicates syntactically equal.
    fn normalized(self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .filter(|m| !m.is_zero())
            .or_else(|| Some(self.rhs.abs()).filter(|m| !m.is_zero()));
        match scale {
            Some(m) => Inequality {
                coeffs: self.coeffs.iter().map(|c| c / &m).collect(),
                rhs: &self.rhs / &m,
            },
            None => self,
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn holds(&self, point: &[BigRational]) -> bool {
        let lhs: BigRational = self
            .coeffs
            .iter()
            .zip(point)
            .map(|(a, x)| a * x)
            .fold(BigRational::zero(), |acc, v| acc + v);
        lhs <= self.rhs
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*w{}", c, k + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " <= {}", self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasible {
    /// The constraints left when a contradiction `0 ≤ b < 0` appeared.
    pub constraints: Vec<Inequality>,
}

/// Solves the system and returns a rational point. Variables are
/// eliminated from last to first; back-substitution then picks, for each
/// variable in turn, the smallest integer inside its bounds if one exists
/// and the exact lower bound otherwise.
pub fn solve(system: &[Inequality], vars: usize) -> Result<Vec<BigRational>, Infeasible> {
    // stages[k] holds the system in variables 0..=k
    let mut stages: Vec<Vec<Inequality>> = vec![Vec::new(); vars];
    let mut current: BTreeSet<Inequality> = system.iter().cloned().collect();
    for k in (0..vars).rev() {
        check_trivial(&current)?;
        stages[k] = current.iter().cloned().collect();
        current = eliminate(&current, k);
    }
    check_trivial(&current)?;

    let mut point = vec![BigRational::zero(); vars];
    for k in 0..vars {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for ineq in &stages[k] {
            let a = &ineq.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let partial: BigRational = (0..k)
                .map(|m| &ineq.coeffs[m] * &point[m])
                .fold(BigRational::zero(), |acc, v| acc + v);
            let bound = (&ineq.rhs - partial) / a;
            if a.is_positive() {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            } else {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        let lo = lower.unwrap_or_else(BigRational::zero);
        let candidate = BigRational::from_integer(lo.ceil().to_integer());
        point[k] = match &upper {
            Some(u) if candidate > *u => lo,
            _ => candidate,
        };
        if let Some(u) = &upper {
            if point[k] > *u {
                return Err(Infeasible {
                    constraints: stages[k].clone(),
                });
            }
        }
    }
    Ok(point)
}

fn check_trivial(system: &BTreeSet<Inequality>) -> Result<(), Infeasible> {
    if system
        .iter()
        .any(|i| i.is_trivial() && i.rhs.is_negative())
    {
        return Err(Infeasible {
            constraints: system.iter().cloned().collect(),
        });
    }
    Ok(())
}

fn eliminate(system: &BTreeSet<Inequality>, k: usize) -> BTreeSet<Inequality> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = BTreeSet::new();
    for ineq in system {
        let a = &ineq.coeffs[k];
        if a.is_positive() {
            pos.push(ineq);
        } else if a.is_negative() {
            neg.push(ineq);
        } else if !(ineq.is_trivial() && !ineq.rhs.is_negative()) {
            out.insert(ineq.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let ap = &p.coeffs[k];
            let an = -&n.coeffs[k];
            let coeffs: Vec<BigRational> = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| x * &an + y * ap)
                .collect();
            let rhs = &p.rhs * &an + &n.rhs * ap;
            let combined = Inequality::new(coeffs, rhs);
            if !(combined.is_trivial() && !combined.rhs.is_negative()) {
                out.insert(combined);
            }
        }
    }
    out
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(point: &[BigRational]) -> BigInt {
    point
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ineq(c: &[i64], b: i64) -> Inequality {
        Inequality::new(c.iter().map(|&x| r(x)).collect(), r(b))
    }

    #[test]
    fn feasible_point_satisfies_system() {
        let sys = vec![ineq(&[-1, 0], -1), ineq(&[0, -1], -1), ineq(&[-1, -1], -1), ineq(&[1, -3], -1)];
        let p = solve(&sys, 2).unwrap();
        assert!(sys.iter().all(|i| i.holds(&p)));
        assert_eq!(p, vec![r(1), r(1)]);
    }

    #[test]
    fn contradiction_is_reported() {
        // x ≥ 1 and x ≤ 0
        let sys = vec![ineq(&[-1], -1), ineq(&[1], 0)];
        let err = solve(&sys, 1).unwrap_err();
        assert!(!err.constraints.is_empty());
    }

    #[test]
    fn fractional_upper_bound_falls_back_to_lower() {
        // x ≥ 1, y ≥ 1, 2y - x ≤ 0.5 (after fixing x = 1, y ∈ [1, 0.75] is empty for integers)
        let sys = vec![
            ineq(&[-1, 0], -1),
            ineq(&[0, -1], -1),
            Inequality::new(vec![r(-1), r(2)], BigRational::new(1.into(), 2.into())),
        ];
        let p = solve(&sys, 2).unwrap();
        assert!(sys.iter().all(|i| i.holds(&p)));
    }
}
