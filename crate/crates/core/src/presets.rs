//! Canonical presentations: quantum affine spaces, a mixed Laurent slice,
//! the quantized Weyl algebra and U_q(sl2).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{make_presentation, AlgebraError, Element, Presentation, PresentationData};
use crate::base::BaseElement;
use crate::field::{FieldKind, Scalar};
use crate::order::MultiIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("unknown preset `{0}`")]
    UnknownName(String),
    #[error("malformed parameter `{0}`")]
    MalformedParameter(String),
    #[error("preset `{preset}` does not take parameter `{key}`")]
    UnknownParameter { preset: &'static str, key: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    QuantumPlane,
    QuantumAffine,
    QuantumTorusMixed,
    QuantumWeyl,
    UqSl2,
}

impl PresetName {
    pub const ALL: [PresetName; 5] = [
        PresetName::QuantumPlane,
        PresetName::QuantumAffine,
        PresetName::QuantumTorusMixed,
        PresetName::QuantumWeyl,
        PresetName::UqSl2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::QuantumPlane => "quantum_plane",
            PresetName::QuantumAffine => "quantum_affine",
            PresetName::QuantumTorusMixed => "quantum_torus_mixed",
            PresetName::QuantumWeyl => "quantum_weyl",
            PresetName::UqSl2 => "uq_sl2",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = PresetError;

    fn from_str(s: &str) -> Result<Self, PresetError> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| PresetError::UnknownName(s.to_string()))
    }
}

/// A preset name plus its parameters.
///
/// * `quantum_plane`, `quantum_weyl`: `qhat` (default `q`).
/// * `quantum_affine`: `s` (default 3), `q_<j>_<i>` overrides (1-based,
///   `j > i`); unset entries are the generic powers `q^k`, `k = 1, 2, …`
///   in the order (2,1), (3,1), (3,2), (4,1), ….
/// * `quantum_torus_mixed`: `t` (default 1), `s` (default 2), `q_<j>_<i>`
///   as above, `l_<i>_<j>` for `λ_ij` (default `q^(i+j-1)`).
/// * `uq_sl2`: none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresetSpec {
    pub name: PresetName,
    pub params: BTreeMap<String, Scalar>,
    pub sizes: BTreeMap<String, usize>,
}

impl PresetSpec {
    pub fn new(name: PresetName) -> Self {
        PresetSpec {
            name,
            params: BTreeMap::new(),
            sizes: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: Scalar) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_size(mut self, key: &str, value: usize) -> Self {
        self.sizes.insert(key.to_string(), value);
        self
    }

    fn size(&self, key: &str, default: usize) -> usize {
        self.sizes.get(key).copied().unwrap_or(default)
    }

    fn param(&self, key: &str) -> Option<Scalar> {
        self.params.get(key).cloned()
    }

    fn check_keys(&self, allowed: &dyn Fn(&str) -> bool, sizes: &[&str]) -> Result<(), PresetError> {
        for k in self.params.keys() {
            if !allowed(k) {
                return Err(PresetError::UnknownParameter {
                    preset: self.name.as_str(),
                    key: k.clone(),
                });
            }
        }
        for k in self.sizes.keys() {
            if !sizes.contains(&k.as_str()) {
                return Err(PresetError::UnknownParameter {
                    preset: self.name.as_str(),
                    key: k.clone(),
                });
            }
        }
        Ok(())
    }
}

fn field_of<'a>(scalars: impl IntoIterator<Item = &'a Scalar>) -> FieldKind {
    if scalars
        .into_iter()
        .any(|s| s.kind() == FieldKind::RationalFunction)
    {
        FieldKind::RationalFunction
    } else {
        FieldKind::Rational
    }
}

fn is_indexed(key: &str, prefix: &str) -> bool {
    index_pair(key, prefix).is_some_and(|(a, b)| a >= 1 && b >= 1)
}

/// The generic `q_ji = q^k` with `k` enumerating pairs (2,1), (3,1), (3,2), ….
pub fn generic_q_power(j: usize, i: usize) -> i64 {
    (j * (j - 1) / 2 + i + 1) as i64
}

fn index_pair(key: &str, prefix: &str) -> Option<(usize, usize)> {
    let rest = key.strip_prefix(prefix)?;
    let (a, b) = rest.split_once('_')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn q_table(spec: &PresetSpec, s: usize) -> Result<BTreeMap<(usize, usize), Scalar>, PresetError> {
    for key in spec.params.keys() {
        if let Some((j, i)) = index_pair(key, "q_") {
            if j <= i {
                return Err(AlgebraError::IndexOrder { j, i }.into());
            }
            if j > s {
                return Err(AlgebraError::GeneratorOutOfRange(j).into());
            }
        }
    }
    let mut q = BTreeMap::new();
    for j in 0..s {
        for i in 0..j {
            let key = format!("q_{}_{}", j + 1, i + 1);
            let v = spec
                .param(&key)
                .unwrap_or_else(|| Scalar::q_pow(generic_q_power(j, i)));
            q.insert((j, i), v);
        }
    }
    Ok(q)
}

pub fn quantum_plane(qhat: Scalar) -> Result<Presentation, AlgebraError> {
    let field = field_of([&qhat]);
    make_presentation(PresentationData::new(field, 0, 2, 2).with_q(1, 0, qhat))
}

pub fn quantum_affine(s: usize, q: BTreeMap<(usize, usize), Scalar>) -> Result<Presentation, AlgebraError> {
    let mut data = PresentationData::new(field_of(q.values()), 0, s, s);
    for ((j, i), v) in q {
        data = data.with_q(j, i, v);
    }
    make_presentation(data)
}

/// Quantum affine `s`-space with the generic q-powers.
pub fn quantum_affine_generic(s: usize) -> Result<Presentation, AlgebraError> {
    let q = q_table(&PresetSpec::new(PresetName::QuantumAffine), s).expect("no overrides");
    quantum_affine(s, q)
}

pub fn quantum_weyl(qhat: Scalar) -> Result<Presentation, AlgebraError> {
    let field = field_of([&qhat]);
    let one = Element::one(0, 2);
    make_presentation(
        PresentationData::new(field, 0, 2, 2)
            .with_q(1, 0, qhat)
            .with_tail(1, 0, one),
    )
}

/// U_q(sl2) with `x1 = F`, `x2 = E`, `z1 = K`: `FK = q²KF`, `EK = q⁻²KE`,
/// `EF = FE + (K − K⁻¹)/(q − q⁻¹)`.
pub fn uq_sl2() -> Result<Presentation, AlgebraError> {
    let q = Scalar::q();
    let q_minus_qinv = &q - &Scalar::q_pow(-1);
    let k = BaseElement::variable_power(1, 0, 1);
    let kinv = BaseElement::variable_power(1, 0, -1);
    let coeff = q_minus_qinv.inv().expect("q - 1/q is nonzero");
    let tail = Element::from_base(2, k.sub(&kinv).scale(&coeff));
    make_presentation(
        PresentationData::new(FieldKind::RationalFunction, 1, 2, 2)
            .with_comm(0, 0, Scalar::q_pow(2))
            .with_comm(1, 0, Scalar::q_pow(-2))
            .with_q(1, 0, Scalar::one())
            .with_tail(1, 0, tail),
    )
}

pub fn quantum_torus_mixed(
    t: usize,
    s: usize,
    comm: Vec<Vec<Scalar>>,
    q: BTreeMap<(usize, usize), Scalar>,
) -> Result<Presentation, AlgebraError> {
    let field = field_of(q.values().chain(comm.iter().flatten()));
    let mut data = PresentationData::new(field, t, s, s);
    data.comm = comm;
    for ((j, i), v) in q {
        data = data.with_q(j, i, v);
    }
    make_presentation(data)
}

pub fn load_preset(spec: &PresetSpec) -> Result<Presentation, PresetError> {
    let qhat = || spec.param("qhat").unwrap_or_else(Scalar::q);
    let p = match spec.name {
        PresetName::QuantumPlane => {
            spec.check_keys(&|k| k == "qhat", &[])?;
            quantum_plane(qhat())?
        }
        PresetName::QuantumWeyl => {
            spec.check_keys(&|k| k == "qhat", &[])?;
            quantum_weyl(qhat())?
        }
        PresetName::QuantumAffine => {
            spec.check_keys(&|k| is_indexed(k, "q_"), &["s"])?;
            let s = spec.size("s", 3);
            quantum_affine(s, q_table(spec, s)?)?
        }
        PresetName::QuantumTorusMixed => {
            spec.check_keys(&|k| is_indexed(k, "q_") || is_indexed(k, "l_"), &["s", "t"])?;
            let s = spec.size("s", 2);
            let t = spec.size("t", 1);
            let comm = (0..s)
                .map(|i| {
                    (0..t)
                        .map(|j| {
                            spec.param(&format!("l_{}_{}", i + 1, j + 1))
                                .unwrap_or_else(|| Scalar::q_pow((i + j + 1) as i64))
                        })
                        .collect()
                })
                .collect();
            quantum_torus_mixed(t, s, comm, q_table(spec, s)?)?
        }
        PresetName::UqSl2 => {
            spec.check_keys(&|_| false, &[])?;
            uq_sl2()?
        }
    };
    Ok(p)
}

/// Every preset with default parameters.
pub fn all_default_presets() -> Vec<(PresetName, Presentation)> {
    PresetName::ALL
        .into_iter()
        .map(|n| (n, load_preset(&PresetSpec::new(n)).expect("default presets are valid")))
        .collect()
}

/// The three-generator presentation whose overlap `x3 x2 x1` fails to
/// resolve: `q_21 = q`, `q_31 = q_32 = 1`, `t_31 = x2`.
pub fn broken_three_generator() -> Result<Presentation, AlgebraError> {
    let tail = Element::monomial(MultiIndex::unit(3, 1), BaseElement::one(0));
    make_presentation(
        PresentationData::new(FieldKind::RationalFunction, 0, 3, 3)
            .with_q(1, 0, Scalar::q())
            .with_tail(2, 0, tail),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in PresetName::ALL {
            assert_eq!(n.as_str().parse::<PresetName>().unwrap(), n);
        }
        assert!("uq_sl3".parse::<PresetName>().is_err());
    }

    #[test]
    fn generic_powers_are_distinct() {
        let mut seen = std::collections::BTreeSet::new();
        for j in 0..6 {
            for i in 0..j {
                assert!(seen.insert(generic_q_power(j, i)));
            }
        }
    }

    #[test]
    fn rejects_unknown_parameters() {
        let spec = PresetSpec::new(PresetName::UqSl2).with_param("qhat", Scalar::q());
        assert!(matches!(load_preset(&spec), Err(PresetError::UnknownParameter { .. })));
        let spec = PresetSpec::new(PresetName::QuantumAffine).with_param("q_1_2", Scalar::q());
        // q_1_2 parses as an index pair but is rejected by validation (j > i)
        assert!(load_preset(&spec).is_err());
    }

    #[test]
    fn rational_parameter_gives_rational_field() {
        let p = load_preset(&PresetSpec::new(PresetName::QuantumPlane).with_param("qhat", Scalar::from_int(2)))
            .unwrap();
        assert_eq!(p.field, FieldKind::Rational);
    }

    #[test]
    fn uq_sl2_tail_degree_is_strictly_below_bound() {
        let p = uq_sl2().unwrap();
        let tail = &p.tails[&(1, 0)];
        assert_eq!(p.mdeg(tail).unwrap(), MultiIndex::new(vec![0, 0]));
        assert!(p.tail_bound_violations().is_empty());
    }
}
