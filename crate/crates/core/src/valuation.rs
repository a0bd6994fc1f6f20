//! Valuations on the example rings and their extensions to completions.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::Serialize;
use thiserror::Error;

use crate::exactring::{CurveRelation, ExactError, Poly, Series, Vars};
use crate::jets::{Jet, JetError, JetSubspace};
use crate::rational::Q;
use crate::valgroup::{GroupElement, GroupError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValuationError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("rewrite failed: {0}")]
    Rewrite(String),
    #[error("value bound exhausted: element lies in every listed ideal up to {0} but not in the support")]
    BoundExhausted(GroupElement),
    #[error("value is not finite")]
    NotFinite,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValueResult {
    Finite(GroupElement),
    Infinity,
    /// The value is at least the carried bound; nothing more is certified.
    BoundedBelow(GroupElement),
}

impl ValueResult {
    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            ValueResult::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, ValueResult::BoundedBelow(_))
    }
}

impl fmt::Display for ValueResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueResult::Finite(g) => write!(f, "{g}"),
            ValueResult::Infinity => write!(f, "inf"),
            ValueResult::BoundedBelow(g) => write!(f, ">= {g}"),
        }
    }
}

impl Serialize for ValueResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        match self {
            ValueResult::Finite(g) => m.serialize_entry("finite", g)?,
            ValueResult::Infinity => m.serialize_entry("infinity", &true)?,
            ValueResult::BoundedBelow(g) => m.serialize_entry("bounded_below", g)?,
        }
        m.end()
    }
}

/// Images of the source variables, computed at a requested precision.
pub type ImageFn = Arc<dyn Fn(u32) -> Vec<Series> + Send + Sync>;

#[derive(Clone)]
pub struct Embedding {
    pub label: String,
    pub source: Vars,
    pub images: ImageFn,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({})", self.label)
    }
}

/// How unknown high-order terms of a substituted series are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    /// Grading is total degree; unknown terms have value `>= P · min weight`.
    Degree,
    /// Grading counts only the variable carrying the leading lex component;
    /// unknown terms have value `>= (P, 0, …)`.
    Leading,
}

#[derive(Debug, Clone)]
pub enum ValuationSpec {
    Monomial {
        vars: Vars,
        weights: Vec<GroupElement>,
    },
    SeriesEmbedding {
        embedding: Embedding,
        target: Vec<GroupElement>,
        certification: Certification,
    },
    /// Order in `z` first, then the residue valuation of the lowest coefficient.
    Composite {
        z: usize,
        curve: Option<CurveRelation>,
        residue: Box<ValuationSpec>,
    },
    /// Order in `t` of a formal branch.
    CurveBranch { embedding: Embedding },
    /// Monomial weights after rewriting `z = w + Σ c_j y^j`.
    CompletionExtension {
        vars: Vars,
        z: usize,
        y: usize,
        rewrite: Vec<Q>,
        weights: Vec<GroupElement>,
    },
}

pub const START_PRECISION: u32 = 8;

fn min_of(
    values: impl IntoIterator<Item = GroupElement>,
) -> Result<Option<GroupElement>, GroupError> {
    let mut best: Option<GroupElement> = None;
    for v in values {
        best = match best {
            Some(b) if b.try_cmp(&v)? != Ordering::Greater => Some(b),
            _ => Some(v),
        };
    }
    Ok(best)
}

/// Minimum of `Σ e_i·w_i` over the terms of `f`; `None` for zero.
pub fn monomial_value(
    weights: &[GroupElement],
    f: &Poly,
) -> Result<Option<GroupElement>, GroupError> {
    let zero = weights[0].zero_like();
    min_of(f.terms().keys().map(|e| {
        e.iter()
            .zip(weights)
            .fold(zero.clone(), |acc, (k, w)| acc.plus(&w.times(*k)))
    }))
}

fn embedded_value(
    emb: &Embedding,
    target: &[GroupElement],
    cert: Certification,
    f: &Poly,
    max_precision: u32,
) -> Result<ValueResult, ValuationError> {
    let floor = match cert {
        Certification::Degree => min_of(target.iter().cloned())?.expect("target weights"),
        Certification::Leading => {
            let mut unit = vec![0; target[0].rank()];
            unit[0] = 1;
            GroupElement::lex(&unit)
        }
    };
    let mut p = START_PRECISION.min(max_precision).max(1);
    loop {
        let images = (emb.images)(p);
        let s = Series::substitute(f, &images)?;
        let bound = floor.times(s.precision());
        let known = monomial_value(target, s.poly())?;
        if let Some(m) = &known {
            if m.try_cmp(&bound)? != Ordering::Greater {
                return Ok(ValueResult::Finite(m.clone()));
            }
        }
        if p >= max_precision {
            return Ok(ValueResult::BoundedBelow(bound));
        }
        p = (2 * p).min(max_precision);
    }
}

impl ValuationSpec {
    /// Value of a ring element, given by a polynomial representative.
    pub fn value(&self, f: &Poly, max_precision: u32) -> Result<ValueResult, ValuationError> {
        if f.is_zero() {
            return Ok(ValueResult::Infinity);
        }
        match self {
            ValuationSpec::Monomial { weights, .. } => Ok(ValueResult::Finite(
                monomial_value(weights, f)?.expect("nonzero"),
            )),
            ValuationSpec::SeriesEmbedding {
                embedding,
                target,
                certification,
            } => embedded_value(embedding, target, *certification, f, max_precision),
            ValuationSpec::CurveBranch { embedding } => embedded_value(
                embedding,
                &[GroupElement::lex(&[1])],
                Certification::Degree,
                f,
                max_precision,
            ),
            ValuationSpec::Composite { z, curve, residue } => {
                let nf = match curve {
                    Some(c) => c.normal_form(f),
                    None => f.clone(),
                };
                if nf.is_zero() {
                    return Ok(ValueResult::Infinity);
                }
                let a = nf.terms().keys().map(|e| e[*z]).min().expect("nonzero");
                let mut coeff = Poly::zero(nf.vars());
                for (e, c) in nf.terms() {
                    if e[*z] == a {
                        let mut ne = e.clone();
                        ne[*z] = 0;
                        coeff.add_term(ne, c.clone());
                    }
                }
                let prepend = |g: &GroupElement| match g {
                    GroupElement::Lex(c) => {
                        let mut v = vec![a as i64];
                        v.extend(c);
                        Ok(GroupElement::Lex(v))
                    }
                    _ => Err(GroupError::Unsupported),
                };
                Ok(match residue.value(&coeff, max_precision)? {
                    ValueResult::Finite(g) => ValueResult::Finite(prepend(&g)?),
                    ValueResult::BoundedBelow(g) => ValueResult::BoundedBelow(prepend(&g)?),
                    ValueResult::Infinity => ValueResult::Infinity,
                })
            }
            ValuationSpec::CompletionExtension { .. } => Err(ValuationError::Rewrite(
                "completion valuations act on jets".into(),
            )),
        }
    }

    /// Value of a jet under a completion extension, reading the jet as an
    /// exact representative.
    pub fn value_nu_hat(&self, jet: &Jet) -> Result<ValueResult, ValuationError> {
        let ValuationSpec::CompletionExtension {
            vars,
            z,
            y,
            rewrite,
            weights,
        } = self
        else {
            return Err(ValuationError::Rewrite("not a completion extension".into()));
        };
        let space = jet.space();
        if space.vars() != vars {
            return Err(ValuationError::Rewrite(
                "jet variables differ from rewrite basis".into(),
            ));
        }
        let n = space.order();
        if rewrite.len() + 1 < n as usize {
            return Err(ValuationError::Rewrite(format!(
                "rewrite known to degree {}, need {n}",
                rewrite.len() + 1
            )));
        }
        // z = w + Σ c_j y^j, with w taking the slot of z
        let mut images: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(vars, i)).collect();
        for (j, c) in rewrite.iter().enumerate().take(n as usize - 1) {
            let mut e = vec![0; vars.len()];
            e[*y] = j as u32 + 1;
            images[*z].add_term(e, c.clone());
        }
        let rewritten = jet.to_poly().compose(&images)?.truncate(n);
        match monomial_value(weights, &rewritten)? {
            Some(g) => Ok(ValueResult::Finite(g)),
            None => {
                let floor = min_of(weights.iter().cloned())?.expect("weights");
                Ok(ValueResult::BoundedBelow(floor.times(n)))
            }
        }
    }
}

/// The unique `β` with `x ∈ P_β R̂ ∖ P_β⁺ R̂`, scanning an enumerated value list.
///
/// `ideal(i)` is the extension of `P_{phi[i]}`; `phi` is sorted and starts at 0.
pub fn value_nu_hat_minus(
    x: &Jet,
    h: &JetSubspace,
    phi: &[GroupElement],
    ideal: impl Fn(usize) -> Result<JetSubspace, ValuationError>,
) -> Result<ValueResult, ValuationError> {
    if h.member(x)? {
        return Ok(ValueResult::Infinity);
    }
    // membership is monotone in β: binary search for the last index inside
    let (mut lo, mut hi) = (0usize, phi.len());
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ideal(mid)?.member(x)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi == phi.len() {
        return Err(ValuationError::BoundExhausted(phi[lo].clone()));
    }
    Ok(ValueResult::Finite(phi[lo].clone()))
}

/// Degree and class of `f` in the graded piece `P_β/P_β⁺`.
pub fn initial_form(
    value: &ValueResult,
    jet: &Jet,
    p_plus: &JetSubspace,
) -> Result<(GroupElement, Jet), ValuationError> {
    match value {
        ValueResult::Finite(g) => Ok((g.clone(), p_plus.remainder(jet)?)),
        _ => Err(ValuationError::NotFinite),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::vars;
    use crate::jets::JetSpace;
    use crate::rational::{q, q_frac};

    fn t_embedding() -> Embedding {
        // u ↦ t + t^2 + t^3 + …, v ↦ t
        let src = vars(&["u", "v"]);
        let t = vars(&["t"]);
        Embedding {
            label: "test".into(),
            source: src,
            images: Arc::new(move |p| {
                let s = Poly::from_terms(&t, (1..p).map(|i| (vec![i], q(1))));
                vec![Series::new(s, p), Series::new(Poly::var(&t, 0), p)]
            }),
        }
    }

    fn embedded() -> ValuationSpec {
        ValuationSpec::SeriesEmbedding {
            embedding: t_embedding(),
            target: vec![GroupElement::lex(&[1])],
            certification: Certification::Degree,
        }
    }

    #[test]
    fn units_have_value_zero() {
        let v = vars(&["u", "v"]);
        let r = embedded().value(&Poly::one(&v), 64).unwrap();
        assert_eq!(r, ValueResult::Finite(GroupElement::lex(&[0])));
    }

    #[test]
    fn cancellation_raises_value() {
        let v = vars(&["u", "v"]);
        let f = Poly::parse(&v, "u - v - v^2").unwrap();
        assert_eq!(
            embedded().value(&f, 64).unwrap(),
            ValueResult::Finite(GroupElement::lex(&[3]))
        );
    }

    #[test]
    fn exact_relation_is_bounded_below() {
        // u·(1 - v) - v vanishes on the embedding
        let v = vars(&["u", "v"]);
        let f = Poly::parse(&v, "u - u*v - v").unwrap();
        assert_eq!(
            embedded().value(&f, 32).unwrap(),
            ValueResult::BoundedBelow(GroupElement::lex(&[32]))
        );
    }

    #[test]
    fn monomial_with_quadratic_weights() {
        let v = vars(&["a", "b"]);
        let spec = ValuationSpec::Monomial {
            vars: v.clone(),
            weights: vec![GroupElement::quad_int(1, 0), GroupElement::quad_int(0, 1)],
        };
        let f = Poly::parse(&v, "a^2 + b").unwrap();
        assert_eq!(
            spec.value(&f, 8).unwrap(),
            ValueResult::Finite(GroupElement::quad_int(0, 1))
        );
    }

    #[test]
    fn completion_rewrite() {
        let v = vars(&["z", "y", "x"]);
        let spec = ValuationSpec::CompletionExtension {
            vars: v.clone(),
            z: 0,
            y: 1,
            rewrite: vec![q(2), q_frac(1, 3), q(-1)],
            weights: vec![
                GroupElement::lex(&[1, 0, 0]),
                GroupElement::lex(&[0, 1, 0]),
                GroupElement::lex(&[0, 0, 1]),
            ],
        };
        let sp = JetSpace::new(&v, 4, None);
        let val = |s: &str| {
            spec.value_nu_hat(&Jet::from_poly(&sp, &Poly::parse(&v, s).unwrap()).unwrap())
                .unwrap()
        };
        assert_eq!(val("z"), ValueResult::Finite(GroupElement::lex(&[0, 1, 0])));
        assert_eq!(
            val("z - 2*y - 1/3*y^2 + y^3"),
            ValueResult::Finite(GroupElement::lex(&[1, 0, 0]))
        );
        assert_eq!(
            val("x*y"),
            ValueResult::Finite(GroupElement::lex(&[0, 1, 1]))
        );
        assert_eq!(
            val("0"),
            ValueResult::BoundedBelow(GroupElement::lex(&[0, 0, 4]))
        );
    }

    #[test]
    fn serializes_tagged() {
        let s = serde_json::to_string(&ValueResult::Infinity).unwrap();
        assert_eq!(s, r#"{"infinity":true}"#);
    }
}
