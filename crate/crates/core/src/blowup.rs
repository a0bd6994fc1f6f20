//! Single-step ν-extensions given by polynomial substitutions, and the
//! contraction and height comparisons along them.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactring::{ExactError, Poly, Series, Vars};
use crate::implicit::ImplicitResult;
use crate::jets::{kernel_of_substitution, JetError, JetSpace, JetSubspace, SubspaceDigest};
use crate::scenario::ValuedRing;
use crate::valgroup::GroupElement;
use crate::valideal::{p_beta_subspace, IdealError};
use crate::valuation::ValuationError;

#[derive(Debug, Error)]
pub enum BlowupError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error("map has {images} images for {vars} source variables")]
    Arity { images: usize, vars: usize },
    #[error("image of {0} is not in the maximal ideal")]
    NotLocal(String),
    #[error("target truncation {target_order} exceeds source truncation {source_order}; the jet map is not defined")]
    Precision {
        source_order: u32,
        target_order: u32,
    },
    #[error("implicit ideal {0} has not stabilized")]
    NotStabilized(String),
}

fn mismatch(a: &Vars, b: &Vars) -> BlowupError {
    ExactError::VariableMismatch(a.join(","), b.join(",")).into()
}

/// A local map `R → R'` sending each source variable to a polynomial in
/// the target variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionMap {
    source: Vars,
    target: Vars,
    substitution: Vec<Poly>,
}

impl ExtensionMap {
    pub fn new(source: &Vars, target: &Vars, substitution: Vec<Poly>) -> Result<Self, BlowupError> {
        if substitution.len() != source.len() {
            return Err(BlowupError::Arity {
                images: substitution.len(),
                vars: source.len(),
            });
        }
        for (name, p) in source.iter().zip(&substitution) {
            if p.vars() != target {
                return Err(mismatch(p.vars(), target));
            }
            if !p.coeff(&vec![0; target.len()]).is_zero() {
                return Err(BlowupError::NotLocal(name.to_string()));
            }
        }
        Ok(ExtensionMap {
            source: source.clone(),
            target: target.clone(),
            substitution,
        })
    }

    pub fn parse(source: &Vars, target: &Vars, texts: &[String]) -> Result<Self, BlowupError> {
        let subs: Result<Vec<Poly>, ExactError> =
            texts.iter().map(|t| Poly::parse(target, t)).collect();
        Self::new(source, target, subs?)
    }

    pub fn identity(vars: &Vars) -> Self {
        let subs = (0..vars.len()).map(|i| Poly::var(vars, i)).collect();
        ExtensionMap {
            source: vars.clone(),
            target: vars.clone(),
            substitution: subs,
        }
    }

    pub fn source(&self) -> &Vars {
        &self.source
    }

    pub fn target(&self) -> &Vars {
        &self.target
    }

    pub fn substitution(&self) -> &[Poly] {
        &self.substitution
    }

    pub fn texts(&self) -> Vec<String> {
        self.substitution.iter().map(Poly::to_text).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ExtensionMap) -> Result<ExtensionMap, BlowupError> {
        if next.source != self.target {
            return Err(mismatch(&self.target, &next.source));
        }
        let subs: Result<Vec<Poly>, ExactError> = self
            .substitution
            .iter()
            .map(|p| p.compose(&next.substitution))
            .collect();
        ExtensionMap::new(&self.source, &next.target, subs?)
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly, BlowupError> {
        Ok(f.compose(&self.substitution)?)
    }

    fn images(&self, precision: u32) -> Vec<Series> {
        self.substitution
            .iter()
            .map(|p| Series::new(p.truncate(precision), precision))
            .collect()
    }

    /// `{j : map(j) ∈ target}` as a subspace of `source`.
    ///
    /// Every image lies in the maximal ideal, so `m^N` goes into `m'^N` and
    /// the jet map is defined exactly when the target truncation is at most
    /// the source truncation.
    pub fn contract(
        &self,
        source: &Arc<JetSpace>,
        target: &JetSubspace,
    ) -> Result<JetSubspace, BlowupError> {
        let (ns, nt) = (source.order(), target.space().order());
        if nt > ns {
            return Err(BlowupError::Precision {
                source_order: ns,
                target_order: nt,
            });
        }
        Ok(kernel_of_substitution(&self.images(nt), source, target)?)
    }

    /// Injectivity on polynomials of degree below the source truncation,
    /// with images kept exactly.
    pub fn injective_at(&self, source: &Arc<JetSpace>) -> Result<bool, BlowupError> {
        let deg = self
            .substitution
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(1);
        let order = source.order().saturating_sub(1) * deg + 1;
        let tspace = JetSpace::new(&self.target, order, None);
        let k = kernel_of_substitution(&self.images(order), source, &JetSubspace::zero(&tspace))?;
        Ok(k.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionReport {
    pub equal: bool,
    pub kernel: SubspaceDigest,
    pub expected: SubspaceDigest,
    /// Elements in one side but not the other.
    pub witnesses: Vec<String>,
}

fn compare(kernel: &JetSubspace, expected: &JetSubspace) -> Result<ContractionReport, BlowupError> {
    let mut witnesses = Vec::new();
    for (a, b) in [(kernel, expected), (expected, kernel)] {
        for row in a.row_polys() {
            let j = crate::jets::Jet::from_poly(b.space(), &row)?;
            if !b.member(&j)? && witnesses.len() < 4 {
                witnesses.push(row.to_text());
            }
        }
    }
    Ok(ContractionReport {
        equal: witnesses.is_empty() && kernel == expected,
        kernel: kernel.digest(),
        expected: expected.digest(),
        witnesses,
    })
}

/// `H' ∩ R̂` computed along the map, against the source ring's own `H`.
pub fn contraction_check_h(
    map: &ExtensionMap,
    h_source: &ImplicitResult,
    h_target: &ImplicitResult,
) -> Result<ContractionReport, BlowupError> {
    let kernel = map.contract(h_source.subspace.space(), &h_target.subspace)?;
    compare(&kernel, &h_source.subspace)
}

/// `P'_β R̂' ∩ R̂` against `P_β R̂`, both at truncation `n`.
pub fn contraction_check_pbeta(
    map: &ExtensionMap,
    source: &ValuedRing,
    target: &ValuedRing,
    beta: &GroupElement,
    n: u32,
) -> Result<ContractionReport, BlowupError> {
    let sspace = source.jet_space(n);
    let tspace = target.jet_space(n);
    let p_target = p_beta_subspace(target, beta, &tspace)?;
    let p_source = p_beta_subspace(source, beta, &sspace)?;
    compare(&map.contract(&sspace, &p_target)?, &p_source)
}

pub const HEIGHT_LABEL: &str = "proxy at truncation";

/// Detected generator counts standing in for heights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightReport {
    pub label: &'static str,
    pub source: usize,
    pub target: usize,
    pub holds: bool,
    pub strict: bool,
}

pub fn height_report(
    h_source: &ImplicitResult,
    h_target: &ImplicitResult,
) -> Result<HeightReport, BlowupError> {
    for h in [h_source, h_target] {
        if !h.stabilization.stable {
            return Err(BlowupError::NotStabilized(h.label.clone()));
        }
    }
    let source = h_source.generators.generators.len();
    let target = h_target.generators.generators.len();
    Ok(HeightReport {
        label: HEIGHT_LABEL,
        source,
        target,
        holds: source <= target,
        strict: source < target,
    })
}

/// `ν'(map(f)) = ν(f)`.
pub fn value_compatible(
    map: &ExtensionMap,
    source: &ValuedRing,
    target: &ValuedRing,
    f: &Poly,
) -> Result<bool, BlowupError> {
    Ok(source.value(f)? == target.value(&map.apply(f)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::implicit::compute_h;
    use crate::scenario::{Scenario, ScenarioConfig, ScenarioName};
    use crate::valgroup::IsolatedLevel;

    fn ex29() -> Scenario {
        Scenario::new(ScenarioName::Example29, &ScenarioConfig::default()).unwrap()
    }

    fn blowup(s: &Scenario) -> ExtensionMap {
        let (r, rp) = (s.ring("R").unwrap(), s.ring("R'").unwrap());
        ExtensionMap::parse(&r.vars, &rp.vars, &s.catalog.extension_map).unwrap()
    }

    #[test]
    fn identity_contracts_to_itself() {
        let s = ex29();
        let rp = s.ring("R'").unwrap();
        let h = compute_h(rp, IsolatedLevel(0), 4, None).unwrap();
        let id = ExtensionMap::identity(&rp.vars);
        let rep = contraction_check_h(&id, &h, &h).unwrap();
        assert!(rep.equal);
        let hr = height_report(&h, &h).unwrap();
        assert!(hr.holds && !hr.strict);
    }

    #[test]
    fn full_target_is_reported_unequal() {
        let s = ex29();
        let map = blowup(&s);
        let sp = s.ring("R").unwrap().jet_space(3);
        let full = JetSubspace::full(&s.ring("R'").unwrap().jet_space(3));
        let k = map.contract(&sp, &full).unwrap();
        assert!(k.is_full());
        assert!(!compare(&k, &JetSubspace::zero(&sp)).unwrap().equal);
    }

    #[test]
    fn longer_target_truncation_is_refused() {
        let s = ex29();
        let map = blowup(&s);
        let sp = s.ring("R").unwrap().jet_space(3);
        let tgt = JetSubspace::zero(&s.ring("R'").unwrap().jet_space(5));
        assert!(matches!(
            map.contract(&sp, &tgt),
            Err(BlowupError::Precision { .. })
        ));
    }

    #[test]
    fn blowup_is_injective_and_preserves_values() {
        let s = ex29();
        let map = blowup(&s);
        let (r, rp) = (s.ring("R").unwrap(), s.ring("R'").unwrap());
        assert!(map.injective_at(&r.jet_space(4)).unwrap());
        for t in ["x", "y", "z", "x*z - y", "z^2 + x*y", "y^2 - 3*x^3"] {
            let f = Poly::parse(&r.vars, t).unwrap();
            assert!(value_compatible(&map, r, rp, &f).unwrap(), "{t}");
        }
    }

    #[test]
    fn pbeta_contracts() {
        let s = ex29();
        let map = blowup(&s);
        let (r, rp) = (s.ring("R").unwrap(), s.ring("R'").unwrap());
        for b in [
            GroupElement::quad_int(0, 0),
            GroupElement::quad_int(1, 0),
            GroupElement::quad_int(0, 1),
        ] {
            let rep = contraction_check_pbeta(&map, r, rp, &b, 4).unwrap();
            assert!(rep.equal, "{b}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn implicit_ideal_contracts() {
        let s = ex29();
        let map = blowup(&s);
        let (r, rp) = (s.ring("R").unwrap(), s.ring("R'").unwrap());
        let hs = compute_h(r, IsolatedLevel(0), 4, None).unwrap();
        let ht = compute_h(rp, IsolatedLevel(0), 4, None).unwrap();
        let rep = contraction_check_h(&map, &hs, &ht).unwrap();
        assert!(rep.equal, "{:?}", rep.witnesses);
        assert!(!hs.subspace.is_zero());
        let hr = height_report(&hs, &ht).unwrap();
        assert_eq!((hr.source, hr.target), (1, 1));
    }

    #[test]
    fn contraction_is_functorial() {
        let s = ex29();
        let map = blowup(&s);
        let (r, rp) = (s.ring("R").unwrap(), s.ring("R'").unwrap());
        let id = ExtensionMap::identity(&rp.vars);
        let composed = map.then(&id).unwrap();
        assert_eq!(composed, map);
        let ht = compute_h(rp, IsolatedLevel(0), 4, None).unwrap();
        let sp = r.jet_space(4);
        let once = map.contract(&sp, &ht.subspace).unwrap();
        let twice = map
            .contract(&sp, &id.contract(&rp.jet_space(4), &ht.subspace).unwrap())
            .unwrap();
        assert_eq!(once, twice);
        assert_eq!(composed.contract(&sp, &ht.subspace).unwrap(), once);
    }
}
