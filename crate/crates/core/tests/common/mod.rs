//! Reference rewriters that share nothing with the engine except the
//! scalar field and the relation tables.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use refilt::algebra::{Atom, Element, Presentation, Word};
use refilt::field::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    /// A Laurent monomial with unit coefficient; never the zero exponent.
    Z(Vec<i64>),
    X(usize),
}

/// `(z-exponent, x-exponent) -> coefficient`.
pub type Flat = BTreeMap<(Vec<i64>, Vec<u32>), Scalar>;

pub struct Oracle {
    t: usize,
    s: usize,
    q: BTreeMap<(usize, usize), Scalar>,
    lambda: Vec<Vec<Scalar>>,
    tails: BTreeMap<(usize, usize), Vec<(Scalar, Vec<i64>, Vec<u32>)>>,
}

fn z_letter(e: Vec<i64>) -> Option<Letter> {
    e.iter().any(|&k| k != 0).then_some(Letter::Z(e))
}

impl Oracle {
    pub fn new(p: &Presentation) -> Self {
        let mut q = BTreeMap::new();
        for j in 0..p.s {
            for i in 0..j {
                q.insert((j, i), p.q_value(j, i));
            }
        }
        let tails = p
            .tails
            .iter()
            .map(|(&k, tail)| {
                let terms = tail
                    .terms()
                    .flat_map(|(gamma, a)| {
                        a.terms()
                            .map(|(beta, c)| (c.clone(), beta.entries().to_vec(), gamma.entries().to_vec()))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                (k, terms)
            })
            .collect();
        Oracle {
            t: p.t,
            s: p.s,
            q,
            lambda: p.comm.clone(),
            tails,
        }
    }

    /// Positions `k` where letters `k, k+1` can be rewritten.
    fn redexes(word: &[Letter]) -> Vec<usize> {
        (0..word.len().saturating_sub(1))
            .filter(|&k| match (&word[k], &word[k + 1]) {
                (Letter::Z(_), Letter::Z(_)) => true,
                (Letter::X(_), Letter::Z(_)) => true,
                (Letter::X(j), Letter::X(i)) => j > i,
                (Letter::Z(_), Letter::X(_)) => false,
            })
            .collect()
    }

    /// One rewrite at position `k`.
    fn step(&self, coeff: &Scalar, word: &[Letter], k: usize) -> Vec<(Scalar, Vec<Letter>)> {
        let prefix = &word[..k];
        let suffix = &word[k + 2..];
        let build = |c: Scalar, middle: Vec<Letter>| {
            let mut w = prefix.to_vec();
            w.extend(middle);
            w.extend_from_slice(suffix);
            (c, w)
        };
        match (&word[k], &word[k + 1]) {
            (Letter::Z(a), Letter::Z(b)) => {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                vec![build(coeff.clone(), z_letter(sum).into_iter().collect())]
            }
            (Letter::X(i), Letter::Z(b)) => {
                let mut c = coeff.clone();
                for (l, &e) in b.iter().enumerate() {
                    c = &c * &self.lambda[*i][l].pow(e).expect("λ is a unit");
                }
                vec![build(c, vec![Letter::Z(b.clone()), Letter::X(*i)])]
            }
            (Letter::X(j), Letter::X(i)) => {
                let mut out = vec![build(coeff * &self.q[&(*j, *i)], vec![Letter::X(*i), Letter::X(*j)])];
                for (c, beta, gamma) in self.tails.get(&(*j, *i)).into_iter().flatten() {
                    let mut middle: Vec<Letter> = z_letter(beta.clone()).into_iter().collect();
                    for (g, &count) in gamma.iter().enumerate() {
                        middle.extend(std::iter::repeat(Letter::X(g)).take(count as usize));
                    }
                    out.push(build(coeff * c, middle));
                }
                out
            }
            _ => unreachable!("not a redex"),
        }
    }

    fn flatten(&self, word: &[Letter]) -> (Vec<i64>, Vec<u32>) {
        let mut beta = vec![0i64; self.t];
        let mut gamma = vec![0u32; self.s];
        for l in word {
            match l {
                Letter::Z(e) => beta.iter_mut().zip(e).for_each(|(b, x)| *b += x),
                Letter::X(i) => gamma[*i] += 1,
            }
        }
        (beta, gamma)
    }

    /// Rewrites to standard form, each round choosing a random redex of
    /// every pending word.
    pub fn reduce<R: Rng>(&self, start: Vec<(Scalar, Vec<Letter>)>, rng: &mut R) -> Flat {
        self.reduce_with(start, |redexes| *redexes.choose(rng).expect("nonempty"))
    }

    /// Rewrites to standard form, always at the leftmost redex.
    pub fn reduce_leftmost(&self, start: Vec<(Scalar, Vec<Letter>)>) -> Flat {
        self.reduce_with(start, |redexes| redexes[0])
    }

    fn reduce_with(&self, start: Vec<(Scalar, Vec<Letter>)>, mut pick: impl FnMut(&[usize]) -> usize) -> Flat {
        let mut pending: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
        let add = |map: &mut BTreeMap<Vec<Letter>, Scalar>, c: Scalar, w: Vec<Letter>| {
            let entry = map.entry(w).or_insert_with(Scalar::zero);
            *entry = &*entry + &c;
        };
        for (c, w) in start {
            add(&mut pending, c, w);
        }
        let mut done = Flat::new();
        while !pending.is_empty() {
            let mut next = BTreeMap::new();
            for (w, c) in pending {
                if c.is_zero() {
                    continue;
                }
                let redexes = Self::redexes(&w);
                if redexes.is_empty() {
                    let key = self.flatten(&w);
                    let entry = done.entry(key).or_insert_with(Scalar::zero);
                    *entry = &*entry + &c;
                } else {
                    for (c2, w2) in self.step(&c, &w, pick(&redexes)) {
                        add(&mut next, c2, w2);
                    }
                }
            }
            pending = next;
        }
        done.retain(|_, c| !c.is_zero());
        done
    }

    /// Expands an engine word (whose base atoms may be sums) into terms.
    pub fn terms_of(&self, word: &Word) -> Vec<(Scalar, Vec<Letter>)> {
        let mut out = vec![(word.prefactor.clone(), Vec::new())];
        for atom in &word.atoms {
            out = match atom {
                Atom::Gen(i) => out
                    .into_iter()
                    .map(|(c, mut w)| {
                        w.push(Letter::X(*i));
                        (c, w)
                    })
                    .collect(),
                Atom::Base(b) => out
                    .into_iter()
                    .flat_map(|(c, w)| {
                        b.terms()
                            .map(|(e, k)| {
                                let mut w2 = w.clone();
                                w2.extend(z_letter(e.entries().to_vec()));
                                (&c * k, w2)
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect(),
            };
        }
        out
    }
}

pub fn flat_of(e: &Element) -> Flat {
    let mut out = Flat::new();
    for (gamma, a) in e.terms() {
        for (beta, c) in a.terms() {
            out.insert((beta.entries().to_vec(), gamma.entries().to_vec()), c.clone());
        }
    }
    out
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

/// `[m]_q = (q^m − q^{−m}) / (q − q^{−1})`.
pub fn q_integer(m: i64) -> Scalar {
    let num = &Scalar::q_pow(m) - &Scalar::q_pow(-m);
    let den = &Scalar::q() - &Scalar::q_pow(-1);
    num.checked_div(&den).expect("q − 1/q ≠ 0")
}

/// The closed form `F^m E + [m]_q F^{m−1}(q^{−(m−1)}K − q^{m−1}K^{−1})/(q−q^{−1})`
/// written with `F^{m−1}` on the left of `K^{±1}`, as oracle input.
pub fn ladder_closed_form(m: usize) -> Vec<(Scalar, Vec<Letter>)> {
    let f = Letter::X(0);
    let e = Letter::X(1);
    let mut lead = vec![f.clone(); m];
    lead.push(e);
    let scale = q_integer(m as i64)
        .checked_div(&(&Scalar::q() - &Scalar::q_pow(-1)))
        .expect("nonzero");
    let shift = m as i64 - 1;
    let mut with_k = vec![f.clone(); m - 1];
    with_k.push(Letter::Z(vec![1]));
    let mut with_kinv = vec![f; m - 1];
    with_kinv.push(Letter::Z(vec![-1]));
    vec![
        (Scalar::one(), lead),
        (&scale * &Scalar::q_pow(-shift), with_k),
        (-(&scale * &Scalar::q_pow(shift)), with_kinv),
    ]
}

/// `E · F^m` as oracle input.
pub fn ladder_word(m: usize) -> Vec<Letter> {
    let mut w = vec![Letter::X(1)];
    w.extend(std::iter::repeat(Letter::X(0)).take(m));
    w
}
