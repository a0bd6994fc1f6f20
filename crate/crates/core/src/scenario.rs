//! The example rings with their valuations, seeded coefficients and
//! catalog entries.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogEntry};
use crate::exactring::{
    derive_branch_coefficients, vars, CurveRelation, ExactError, Poly, Series, Vars,
};
use crate::jets::JetSpace;
use crate::rational::Q;
use crate::valgroup::{GroupElement, GroupError};
use crate::valuation::{Certification, Embedding, ValuationSpec};

/// Number of seeded coefficients `c_1, c_2, …` drawn per scenario.
pub const COEFFICIENT_COUNT: usize = 160;
pub const MAX_TRUNCATION: u32 = 16;
pub const DEFAULT_MAX_PRECISION: u32 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("unknown scenario '{0}'")]
    Unknown(String),
    #[error("truncation {0} outside 2..={MAX_TRUNCATION}")]
    Truncation(u32),
    #[error("value bound {0} does not belong to the scenario's value group")]
    BoundShape(String),
    #[error("max precision must be positive")]
    Precision,
    #[error("unknown element '{0}'")]
    Element(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioName {
    Example22,
    Example29,
    Example41,
    Example42,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 4] = [
        ScenarioName::Example22,
        ScenarioName::Example29,
        ScenarioName::Example41,
        ScenarioName::Example42,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioName::Example22 => "example_2_2",
            ScenarioName::Example29 => "example_2_9",
            ScenarioName::Example41 => "example_4_1",
            ScenarioName::Example42 => "example_4_2",
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = ScenarioError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| ScenarioError::Unknown(s.to_string()))
    }
}

impl Serialize for ScenarioName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Ex22,
    Ex29Source,
    Ex29Target,
    Ex41,
    Ex42,
}

/// Seeded nonzero coefficients `c_1, …, c_count` (entry `i - 1` is `c_i`),
/// with numerator and denominator in `1..=97` and a random sign.
pub fn seeded_coefficients(seed: u64, count: usize) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n: i64 = rng.gen_range(1..=97);
            let d: i64 = rng.gen_range(1..=97);
            let c = Q::new(n.into(), d.into());
            if rng.gen_bool(0.5) {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// A monomial valuation on a power series ring together with an embedding
/// into it; used to compute `{f : deg f < D, ν(f) ≥ β}` by linear algebra.
#[derive(Debug, Clone)]
pub struct MonomialOracle {
    pub embedding: Embedding,
    pub target: Vars,
    pub weights: Vec<GroupElement>,
}

#[derive(Debug, Clone)]
pub struct ValuedRing {
    pub kind: RingKind,
    pub label: String,
    pub vars: Vars,
    pub curve: Option<CurveRelation>,
    pub valuation: ValuationSpec,
    pub oracle: Option<MonomialOracle>,
    /// `c_i` (entry `i - 1`), or the branch coefficients `a_i` (entry `i - 2`).
    pub coefficients: Arc<Vec<Q>>,
    pub max_precision: u32,
}

fn series_in(target: &Vars, var: usize, coeffs: &[Q], p: u32) -> Poly {
    let mut out = Poly::zero(target);
    for (i, c) in coeffs.iter().enumerate().take(p.saturating_sub(1) as usize) {
        let mut e = vec![0; target.len()];
        e[var] = i as u32 + 1;
        out.add_term(e, c.clone());
    }
    out
}

fn lex_weights(rows: &[&[i64]]) -> Vec<GroupElement> {
    rows.iter().map(|r| GroupElement::lex(r)).collect()
}

impl ValuedRing {
    fn ex22(c: Arc<Vec<Q>>, max_precision: u32) -> Self {
        let source = vars(&["u", "v"]);
        let t = vars(&["t"]);
        let cc = c.clone();
        let tt = t.clone();
        let embedding = Embedding {
            label: "v -> t, u -> sum c_i t^i".into(),
            source: source.clone(),
            images: Arc::new(move |p| {
                vec![
                    Series::new(series_in(&tt, 0, &cc, p), p),
                    Series::new(Poly::var(&tt, 0), p),
                ]
            }),
        };
        let weights = lex_weights(&[&[1]]);
        ValuedRing {
            kind: RingKind::Ex22,
            label: "R".into(),
            vars: source,
            curve: None,
            valuation: ValuationSpec::SeriesEmbedding {
                embedding: embedding.clone(),
                target: weights.clone(),
                certification: Certification::Degree,
            },
            oracle: Some(MonomialOracle {
                embedding,
                target: t,
                weights,
            }),
            coefficients: c,
            max_precision,
        }
    }

    fn ex29(c: Arc<Vec<Q>>, max_precision: u32, target_ring: bool) -> Self {
        let (label, source) = if target_ring {
            ("R'", vars(&["z'", "y'", "x'"]))
        } else {
            ("R", vars(&["z", "y", "x"]))
        };
        let t = vars(&["t1", "t2"]);
        let cc = c.clone();
        let tt = t.clone();
        let embedding = Embedding {
            label: if target_ring {
                "x' -> t2, y' -> t1, z' -> sum c_i t1^i".into()
            } else {
                "x -> t2, y -> t1*t2, z -> sum c_i t1^i".into()
            },
            source: source.clone(),
            images: Arc::new(move |p| {
                let s = Series::new(series_in(&tt, 0, &cc, p), p);
                let t1 = Poly::var(&tt, 0);
                let t2 = Poly::var(&tt, 1);
                let y = if target_ring { t1 } else { &t1 * &t2 };
                vec![s, Series::new(y, p), Series::new(t2, p)]
            }),
        };
        let weights = vec![GroupElement::quad_int(1, 0), GroupElement::quad_int(0, 1)];
        ValuedRing {
            kind: if target_ring {
                RingKind::Ex29Target
            } else {
                RingKind::Ex29Source
            },
            label: label.into(),
            vars: source,
            curve: None,
            valuation: ValuationSpec::SeriesEmbedding {
                embedding: embedding.clone(),
                target: weights.clone(),
                certification: Certification::Degree,
            },
            oracle: Some(MonomialOracle {
                embedding,
                target: t,
                weights,
            }),
            coefficients: c,
            max_precision,
        }
    }

    fn ex41(c: Arc<Vec<Q>>, max_precision: u32) -> Self {
        let source = vars(&["z", "y", "x"]);
        let t = vars(&["u", "v"]);
        let make = |graded: bool| {
            let cc = c.clone();
            let tt = t.clone();
            Embedding {
                label: "x -> v, y -> u, z -> sum c_j u^j".into(),
                source: source.clone(),
                images: Arc::new(move |p| {
                    let imgs = [
                        series_in(&tt, 0, &cc, p),
                        Poly::var(&tt, 0),
                        Poly::var(&tt, 1),
                    ];
                    let grading: Arc<[u32]> = if graded {
                        vec![1, 0].into()
                    } else {
                        vec![1, 1].into()
                    };
                    imgs.into_iter()
                        .map(|f| Series::with_grading(f, grading.clone(), p))
                        .collect()
                }),
            }
        };
        let weights = lex_weights(&[&[1, 0], &[0, 1]]);
        ValuedRing {
            kind: RingKind::Ex41,
            label: "R".into(),
            vars: source.clone(),
            curve: None,
            valuation: ValuationSpec::SeriesEmbedding {
                embedding: make(true),
                target: weights.clone(),
                certification: Certification::Leading,
            },
            oracle: Some(MonomialOracle {
                embedding: make(false),
                target: t,
                weights,
            }),
            coefficients: c,
            max_precision,
        }
    }

    fn ex42(a: Arc<Vec<Q>>, max_precision: u32) -> Self {
        let source = vars(&["z", "y", "x"]);
        let t = vars(&["t"]);
        let aa = a.clone();
        let branch = Embedding {
            label: "x -> t, y -> -t - sum a_i t^i".into(),
            source: source.clone(),
            images: Arc::new(move |p| {
                let mut y = Poly::monomial(&t, vec![1], -Q::one());
                for (k, ai) in aa.iter().enumerate() {
                    let i = k as u32 + 2;
                    if i >= p {
                        break;
                    }
                    y.add_term(vec![i], -ai.clone());
                }
                vec![
                    Series::zero(&t, p),
                    Series::new(y, p),
                    Series::new(Poly::var(&t, 0), p),
                ]
            }),
        };
        let curve = CurveRelation { x: 2, y: 1 };
        ValuedRing {
            kind: RingKind::Ex42,
            label: "R".into(),
            vars: source,
            curve: Some(curve),
            valuation: ValuationSpec::Composite {
                z: 0,
                curve: Some(curve),
                residue: Box::new(ValuationSpec::CurveBranch { embedding: branch }),
            },
            oracle: None,
            coefficients: a,
            max_precision,
        }
    }

    pub fn jet_space(&self, n: u32) -> Arc<JetSpace> {
        JetSpace::new(&self.vars, n, self.curve)
    }

    pub fn zero_value(&self) -> GroupElement {
        match self.kind {
            RingKind::Ex22 => GroupElement::lex(&[0]),
            RingKind::Ex29Source | RingKind::Ex29Target => GroupElement::quad_int(0, 0),
            RingKind::Ex41 | RingKind::Ex42 => GroupElement::lex(&[0, 0]),
        }
    }

    /// `c_i`, one-based.
    pub fn c(&self, i: usize) -> Q {
        self.coefficients[i - 1].clone()
    }

    /// The approximating element of index `a`: the series generator with
    /// its first `a - 1` terms removed, or `f_a` on the curve.
    pub fn w(&self, a: u32) -> Result<Poly, ScenarioError> {
        let v = &self.vars;
        let (lead, var) = match self.kind {
            RingKind::Ex22 => (0, 1),
            RingKind::Ex29Target | RingKind::Ex41 => (0, 1),
            RingKind::Ex42 => return Ok(self.branch_factor(a, true)),
            RingKind::Ex29Source => return Err(ScenarioError::Element(format!("w:{a}"))),
        };
        let mut p = Poly::var(v, lead);
        for j in 1..a as usize {
            let mut e = vec![0; v.len()];
            e[var] = j as u32;
            p.add_term(e, -self.c(j));
        }
        Ok(p)
    }

    /// `y ± (x + Σ_{i=2}^{b-1} a_i x^i)`: `f_b` for `plus`, `g_b` otherwise.
    pub fn branch_factor(&self, b: u32, plus: bool) -> Poly {
        let v = &self.vars;
        let s = if plus { Q::one() } else { -Q::one() };
        let mut p = Poly::var(v, 1);
        p.add_term(vec![0, 0, 1], s.clone());
        for i in 2..b {
            p.add_term(vec![0, 0, i], &s * &self.coefficients[i as usize - 2]);
        }
        p
    }

    /// Parses catalog element text; `N` in an index stands for `n`.
    pub fn element(&self, text: &str, n: u32) -> Result<Poly, ScenarioError> {
        if let Some((kind, idx)) = text.split_once(':') {
            let idx: u32 = if idx == "N" {
                n
            } else {
                idx.parse()
                    .map_err(|_| ScenarioError::Element(text.into()))?
            };
            return match (kind, self.kind) {
                ("w", _) => self.w(idx),
                ("f", RingKind::Ex42) => Ok(self.branch_factor(idx, true)),
                ("g", RingKind::Ex42) => Ok(self.branch_factor(idx, false)),
                _ => Err(ScenarioError::Element(text.into())),
            };
        }
        Ok(Poly::parse(&self.vars, text)?)
    }

    pub fn value(
        &self,
        f: &Poly,
    ) -> Result<crate::valuation::ValueResult, crate::valuation::ValuationError> {
        self.valuation.value(f, self.max_precision)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScenarioConfig {
    pub truncation: Option<u32>,
    pub value_bound: Option<GroupElement>,
    pub max_precision: Option<u32>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: ScenarioName,
    pub truncation: u32,
    pub value_bound: GroupElement,
    pub max_precision: u32,
    pub seed: u64,
    pub coefficients: Arc<Vec<Q>>,
    pub rings: Vec<ValuedRing>,
    pub catalog: &'static CatalogEntry,
}

impl Scenario {
    pub fn new(name: ScenarioName, config: &ScenarioConfig) -> Result<Self, ScenarioError> {
        let catalog = catalog::entry(name.as_str())
            .ok_or_else(|| ScenarioError::Unknown(name.to_string()))?;
        let truncation = config.truncation.unwrap_or(catalog.default_truncation);
        if !(2..=MAX_TRUNCATION).contains(&truncation) {
            return Err(ScenarioError::Truncation(truncation));
        }
        let max_precision = config.max_precision.unwrap_or(DEFAULT_MAX_PRECISION);
        if max_precision == 0 {
            return Err(ScenarioError::Precision);
        }
        let c = Arc::new(seeded_coefficients(config.seed, COEFFICIENT_COUNT));
        let rings = match name {
            ScenarioName::Example22 => vec![ValuedRing::ex22(c.clone(), max_precision)],
            ScenarioName::Example29 => vec![
                ValuedRing::ex29(c.clone(), max_precision, false),
                ValuedRing::ex29(c.clone(), max_precision, true),
            ],
            ScenarioName::Example41 => vec![ValuedRing::ex41(c.clone(), max_precision)],
            ScenarioName::Example42 => {
                let a = Arc::new(derive_branch_coefficients(COEFFICIENT_COUNT as u32 + 2));
                vec![ValuedRing::ex42(a, max_precision)]
            }
        };
        let value_bound = match &config.value_bound {
            Some(b) => b.clone(),
            None => GroupElement::parse(&catalog.default_value_bound)?,
        };
        if value_bound.try_cmp(&rings[0].zero_value()).is_err() {
            return Err(ScenarioError::BoundShape(value_bound.to_string()));
        }
        Ok(Scenario {
            name,
            truncation,
            value_bound,
            max_precision,
            seed: config.seed,
            coefficients: c,
            rings,
            catalog,
        })
    }

    pub fn ring(&self, label: &str) -> Option<&ValuedRing> {
        self.rings.iter().find(|r| r.label == label)
    }

    pub fn primary(&self) -> &ValuedRing {
        self.rings.last().expect("scenario has a ring")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::ValueResult;

    fn fin(g: GroupElement) -> ValueResult {
        ValueResult::Finite(g)
    }

    #[test]
    fn coefficients_are_seeded_and_nonzero() {
        let a = seeded_coefficients(7, 50);
        assert_eq!(a, seeded_coefficients(7, 50));
        assert_ne!(a, seeded_coefficients(8, 50));
        assert!(a.iter().all(|c| !num_traits::Zero::is_zero(c)));
    }

    #[test]
    fn catalog_values_reproduce() {
        for name in ScenarioName::ALL {
            let s = Scenario::new(name, &ScenarioConfig::default()).unwrap();
            for v in &s.catalog.values {
                let ring = s.ring(&v.ring).unwrap();
                let f = ring.element(&v.element, s.truncation).unwrap();
                let expected = GroupElement::parse(&v.value).unwrap();
                assert_eq!(
                    ring.value(&f).unwrap(),
                    fin(expected),
                    "{name} {}",
                    v.element
                );
            }
        }
    }

    #[test]
    fn unknown_names_and_bad_truncation() {
        assert!("example_9_9".parse::<ScenarioName>().is_err());
        let cfg = ScenarioConfig {
            truncation: Some(40),
            ..Default::default()
        };
        assert_eq!(
            Scenario::new(ScenarioName::Example22, &cfg).unwrap_err(),
            ScenarioError::Truncation(40)
        );
        let cfg = ScenarioConfig {
            value_bound: Some(GroupElement::lex(&[1, 2])),
            ..Default::default()
        };
        assert!(matches!(
            Scenario::new(ScenarioName::Example22, &cfg),
            Err(ScenarioError::BoundShape(_))
        ));
    }

    #[test]
    fn composite_matches_first_component_z_order() {
        let s = Scenario::new(ScenarioName::Example42, &ScenarioConfig::default()).unwrap();
        let r = s.primary();
        let f = r.element("z^2*x + z^3", 12).unwrap();
        assert_eq!(r.value(&f).unwrap(), fin(GroupElement::lex(&[2, 1])));
        let fg = &r.branch_factor(12, true) * &r.branch_factor(12, false);
        let nf = r.curve.unwrap().normal_form(&fg);
        assert!(nf.order().unwrap() >= 12);
    }
}
